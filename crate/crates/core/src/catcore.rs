//! The category layer: morphisms with source and target, partial
//! composition, identities, enumeration of two-step factorizations,
//! non-degenerate decompositions, length, and the local-finiteness and
//! Möbius checkers.
//!
//! Every instance implements [`Category`]. Infinite categories expose a
//! size-bounded [`Category::fragment`]; checkers only certify what they see,
//! and their reports name the fragment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Debug, Display};

use crate::error::{Error, Result};
use crate::report::{Check, Report, Tally};

/// Upper bound on the length search used when an instance does not declare one.
pub const DEFAULT_LENGTH_BOUND: usize = 64;

pub trait Category {
    type Obj: Clone + Ord + Debug + Display;
    type Mor: Clone + Ord + Debug + Display;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;

    /// `a ∘ b`, defined iff `source(a) == target(b)`.
    fn compose(&self, a: &Self::Mor, b: &Self::Mor) -> Result<Self::Mor>;

    /// All pairs `(a, b)` with `a ∘ b = f`, duplicate-free.
    fn n2(&self, f: &Self::Mor) -> Result<Vec<(Self::Mor, Self::Mor)>>;

    /// Morphisms of the finite fragment of size at most `size`. The meaning of
    /// `size` is instance-specific (word length, vertex count, ...).
    fn fragment(&self, size: usize) -> Vec<Self::Mor>;

    /// Whether `f` belongs to `fragment(size)`.
    fn in_fragment(&self, f: &Self::Mor, size: usize) -> bool;

    /// Human-readable description of `fragment(size)`.
    fn describe_fragment(&self, size: usize) -> String {
        format!("fragment of size <= {size}")
    }

    /// Decided structurally, never through length.
    fn is_identity(&self, f: &Self::Mor) -> bool {
        let s = self.source(f);
        s == self.target(f) && *f == self.identity(&s)
    }

    /// Bound on the length of `f` beyond which the length search reports divergence.
    fn length_bound(&self, _f: &Self::Mor) -> usize {
        DEFAULT_LENGTH_BOUND
    }
}

/// Standard non-composable error for `a ∘ b`.
pub fn non_composable<C: Category + ?Sized>(cat: &C, a: &C::Mor, b: &C::Mor) -> Error {
    Error::NonComposable {
        left: a.to_string(),
        left_source: cat.source(a).to_string(),
        right: b.to_string(),
        right_target: cat.target(b).to_string(),
    }
}

/// Composes a non-empty chain `a1 ∘ a2 ∘ ... ∘ an`.
pub fn compose_chain<C: Category + ?Sized>(cat: &C, chain: &[C::Mor]) -> Result<C::Mor> {
    let (last, rest) = chain
        .split_last()
        .ok_or_else(|| Error::Precondition("empty chain".into()))?;
    rest.iter()
        .rev()
        .try_fold(last.clone(), |acc, a| cat.compose(a, &acc))
}

/// `N̂_n(f)`: n-tuples of non-identity morphisms composing to `f`.
///
/// Built as `a ∘ rest` over `(a, b) ∈ N₂(f)` with `a` non-identity and
/// `rest ∈ N̂_{n-1}(b)`; `b` itself may be an identity when the category has
/// nontrivial isomorphisms.
pub fn nhat<C: Category + ?Sized>(cat: &C, f: &C::Mor, n: usize) -> Result<Vec<Vec<C::Mor>>> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if n == 1 {
        return Ok(if cat.is_identity(f) {
            Vec::new()
        } else {
            vec![vec![f.clone()]]
        });
    }
    let mut out = Vec::new();
    for (a, b) in cat.n2(f)? {
        if cat.is_identity(&a) {
            continue;
        }
        for mut tail in nhat(cat, &b, n - 1)? {
            tail.insert(0, a.clone());
            out.push(tail);
        }
    }
    Ok(out)
}

/// `ℓ(f) = sup{n : N̂_n(f) ≠ ∅}` (0 when no such n exists), computed by
/// `ℓ(f) = max([f ∉ Id], 1 + ℓ(b))` over `(a, b) ∈ N₂(f)` with `a` non-identity
/// and `ℓ(b) ≥ 1`.
///
/// Fails with [`Error::Divergence`] when the recursion exceeds the
/// instance's length bound, which is how infinite length surfaces.
pub fn length<C: Category + ?Sized>(cat: &C, f: &C::Mor) -> Result<usize> {
    let bound = cat.length_bound(f);
    let mut memo = BTreeMap::new();
    let mut stack = BTreeSet::new();
    length_rec(cat, f, bound, f, &mut memo, &mut stack)
}

fn length_rec<C: Category + ?Sized>(
    cat: &C,
    f: &C::Mor,
    bound: usize,
    root: &C::Mor,
    memo: &mut BTreeMap<C::Mor, usize>,
    stack: &mut BTreeSet<C::Mor>,
) -> Result<usize> {
    if let Some(&l) = memo.get(f) {
        return Ok(l);
    }
    let diverged = || Error::Divergence {
        morphism: root.to_string(),
        bound,
    };
    // Revisiting f on the current path means f = a1 ∘ ... ∘ ak ∘ f with
    // non-identity ai, so the chain can be pumped indefinitely.
    if stack.len() >= bound || !stack.insert(f.clone()) {
        return Err(diverged());
    }
    let mut best = usize::from(!cat.is_identity(f));
    for (a, b) in cat.n2(f)? {
        if cat.is_identity(&a) || (cat.is_identity(&b) && cat.n2(&b)?.len() == 1) {
            continue;
        }
        let l = length_rec(cat, &b, bound, root, memo, stack)?;
        if l >= 1 {
            best = best.max(l + 1);
        }
        if best > bound {
            return Err(diverged());
        }
    }
    stack.remove(f);
    memo.insert(f.clone(), best);
    Ok(best)
}

/// Brute-force `N₂(f)` over a candidate set: every pair of candidates that
/// composes to `f`. Independent of the instance's enumerator; used as the
/// oracle on finite fragments.
pub fn brute_force_n2<C: Category + ?Sized>(
    cat: &C,
    candidates: &[C::Mor],
    f: &C::Mor,
) -> Vec<(C::Mor, C::Mor)> {
    let src = cat.source(f);
    let tgt = cat.target(f);
    let mut lower: BTreeMap<C::Obj, Vec<&C::Mor>> = BTreeMap::new();
    for b in candidates.iter().filter(|b| cat.source(b) == src) {
        lower.entry(cat.target(b)).or_default().push(b);
    }
    let mut out = BTreeSet::new();
    for a in candidates.iter().filter(|a| cat.target(a) == tgt) {
        let Some(below) = lower.get(&cat.source(a)) else {
            continue;
        };
        for b in below {
            if let Ok(c) = cat.compose(a, b) {
                if c == *f {
                    out.insert((a.clone(), (*b).clone()));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Compares `n2` with [`brute_force_n2`] on each sampled morphism.
pub fn check_n2_oracle<C: Category + ?Sized>(
    cat: &C,
    sample: &[C::Mor],
    candidates: &[C::Mor],
) -> Check {
    let mut tally = Tally::new("n2 agrees with brute-force oracle");
    for f in sample {
        let fast: Result<BTreeSet<_>> = cat.n2(f).map(|v| v.into_iter().collect());
        let slow: BTreeSet<_> = brute_force_n2(cat, candidates, f).into_iter().collect();
        match fast {
            Ok(fast) => tally.record(fast == slow, || {
                format!(
                    "{f}: enumerator found {}, oracle found {}",
                    fast.len(),
                    slow.len()
                )
            }),
            Err(e) => tally.fail_with(format!("{f}: {e}")),
        }
    }
    tally.finish()
}

/// Structural sanity of the enumerator: soundness, the two degenerate
/// decompositions, and no duplicates.
pub fn check_n2_sound<C: Category + ?Sized>(cat: &C, sample: &[C::Mor]) -> Check {
    let mut tally = Tally::new("n2 sound and contains degenerate factorizations");
    for f in sample {
        let pairs = match cat.n2(f) {
            Ok(p) => p,
            Err(e) => {
                tally.fail_with(format!("{f}: {e}"));
                continue;
            }
        };
        let unique: BTreeSet<_> = pairs.iter().collect();
        let sound = pairs.iter().all(|(a, b)| {
            cat.compose(a, b).map(|c| c == *f).unwrap_or(false)
                && cat.source(b) == cat.source(f)
                && cat.target(a) == cat.target(f)
        });
        let left = (cat.identity(&cat.target(f)), f.clone());
        let right = (f.clone(), cat.identity(&cat.source(f)));
        let degenerate = unique.contains(&left) && unique.contains(&right);
        tally.record(unique.len() == pairs.len() && sound && degenerate, || {
            format!("{f}")
        });
    }
    tally.finish()
}

/// Local finiteness on the sample: `N₂(f)` enumerates, and its size is reported.
pub fn check_locally_finite<C: Category + ?Sized>(cat: &C, sample: &[C::Mor]) -> Report {
    let mut report = Report::new("locally finite", format!("{} sampled morphisms", sample.len()));
    let mut tally = Tally::new("|N2(f)| finite");
    for f in sample {
        match cat.n2(f) {
            Ok(pairs) => {
                tally.record(true, String::new);
                tally.detail(format!("{f}: |N2| = {}", pairs.len()));
            }
            Err(e) => tally.fail_with(format!("{f}: {e}")),
        }
    }
    if !sample.is_empty() {
        report.push(tally.finish());
    }
    report
}

/// Möbius check on the sample: locally finite, finite length, no nontrivial
/// isomorphism (detected as an extra pair in `N₂` of an identity) and no
/// nontrivial idempotent.
pub fn check_mobius<C: Category + ?Sized>(cat: &C, sample: &[C::Mor]) -> Report {
    let mut report = Report::new("Möbius", format!("{} sampled morphisms", sample.len()));
    if sample.is_empty() {
        return report;
    }
    report.extend(check_locally_finite(cat, sample));

    let mut lengths = Tally::new("finite length");
    for f in sample {
        match length(cat, f) {
            Ok(_) => lengths.record(true, String::new),
            Err(e) => lengths.fail_with(format!("{f}: {e}")),
        }
    }
    report.push(lengths.finish());

    let objects: BTreeSet<C::Obj> = sample
        .iter()
        .flat_map(|f| [cat.source(f), cat.target(f)])
        .collect();
    let mut isos = Tally::new("no nontrivial isomorphisms");
    for x in &objects {
        let id = cat.identity(x);
        match cat.n2(&id) {
            Ok(pairs) => {
                let extra = pairs.iter().find(|(a, _)| !cat.is_identity(a));
                isos.record(extra.is_none(), || {
                    let (a, b) = extra.unwrap();
                    format!("{a} is an isomorphism with inverse {b}")
                });
            }
            Err(e) => isos.fail_with(format!("{id}: {e}")),
        }
    }
    report.push(isos.finish());

    let mut idem = Tally::new("no nontrivial idempotents");
    for f in sample {
        let is_idem = !cat.is_identity(f)
            && cat.source(f) == cat.target(f)
            && cat.compose(f, f).map(|g| g == *f).unwrap_or(false);
        idem.record(!is_idem, || format!("{f} ∘ {f} = {f}"));
    }
    report.push(idem.finish());

    let mut one_way = Tally::new("strongly one-way (length 0 only on identities)");
    for f in sample {
        if let Ok(l) = length(cat, f) {
            one_way.record((l == 0) == cat.is_identity(f), || format!("{f}: length {l}"));
        }
    }
    report.push(one_way.finish());
    report
}

/// Length filtration is a coalgebra filtration: `ℓ(a) + ℓ(b) ≤ ℓ(f)` for
/// every `(a, b) ∈ N₂(f)`.
pub fn check_length_filtration<C: Category + ?Sized>(cat: &C, sample: &[C::Mor]) -> Check {
    let mut tally = Tally::new("pointedness: l(a) + l(b) <= l(f)");
    for f in sample {
        let run = || -> Result<Option<String>> {
            let lf = length(cat, f)?;
            for (a, b) in cat.n2(f)? {
                let (la, lb) = (length(cat, &a)?, length(cat, &b)?);
                if la + lb > lf {
                    return Ok(Some(format!("{f} = {a} ∘ {b}: {la} + {lb} > {lf}")));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(w) => tally.record(w.is_none(), || w.unwrap()),
            Err(e) => tally.fail_with(format!("{f}: {e}")),
        }
    }
    tally.finish()
}

/// Associativity and identity laws on composable triples from the sample.
pub fn check_category_laws<C: Category + ?Sized>(cat: &C, sample: &[C::Mor]) -> Vec<Check> {
    let mut unit = Tally::new("identity laws");
    for f in sample {
        let l = cat.compose(&cat.identity(&cat.target(f)), f);
        let r = cat.compose(f, &cat.identity(&cat.source(f)));
        unit.record(l.as_ref() == Ok(f) && r.as_ref() == Ok(f), || f.to_string());
    }
    let mut assoc = Tally::new("composition associative");
    let mut by_source: BTreeMap<C::Obj, Vec<&C::Mor>> = BTreeMap::new();
    for f in sample {
        by_source.entry(cat.source(f)).or_default().push(f);
    }
    let after = |f: &C::Mor| by_source.get(&cat.target(f)).cloned().unwrap_or_default();
    for c in sample {
        for b in after(c) {
            let Ok(bc) = cat.compose(b, c) else {
                assoc.fail_with(format!("{b} ∘ {c} undefined"));
                continue;
            };
            for a in after(b) {
                let lhs = cat.compose(a, b).and_then(|ab| cat.compose(&ab, c));
                let rhs = cat.compose(a, &bc);
                assoc.record(lhs.is_ok() && lhs == rhs, || format!("({a}, {b}, {c})"));
            }
        }
    }
    vec![unit.finish(), assoc.finish()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nhat_and_length_on_a_chain() {
        let c = Wrapped;
        let f = W((0, 2));
        assert_eq!(nhat(&c, &W((1, 1)), 1).unwrap().len(), 0);
        assert_eq!(nhat(&c, &f, 1).unwrap(), vec![vec![f]]);
        assert_eq!(nhat(&c, &f, 2).unwrap().len(), 1);
        assert!(nhat(&c, &f, 3).unwrap().is_empty());
        assert_eq!(length(&c, &f).unwrap(), 2);
        assert_eq!(length(&c, &W((1, 1))).unwrap(), 0);
        assert_eq!(length(&c, &W((1, 2))).unwrap(), 1);
    }

    #[test]
    fn checkers_on_a_chain() {
        let c = Wrapped;
        let sample = c.fragment(3);
        assert!(check_mobius(&c, &sample).passed());
        assert!(check_n2_sound(&c, &sample).passed);
        assert!(check_n2_oracle(&c, &sample, &sample).passed);
        assert!(check_length_filtration(&c, &sample).passed);
        assert!(check_category_laws(&c, &sample).iter().all(|c| c.passed));
        assert!(check_locally_finite(&c, &[]).checks.is_empty());
    }

    #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
    struct W((u8, u8));

    impl std::fmt::Display for W {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            write!(f, "({},{})", self.0 .0, self.0 .1)
        }
    }

    /// The poset 0 < 1 < 2 as a category; `W((lo, hi))`: lo -> hi.
    struct Wrapped;

    impl Category for Wrapped {
        type Obj = u8;
        type Mor = W;
        fn source(&self, f: &W) -> u8 {
            f.0 .0
        }
        fn target(&self, f: &W) -> u8 {
            f.0 .1
        }
        fn identity(&self, x: &u8) -> W {
            W((*x, *x))
        }
        fn compose(&self, a: &W, b: &W) -> Result<W> {
            if a.0 .0 != b.0 .1 {
                return Err(non_composable(self, a, b));
            }
            Ok(W((b.0 .0, a.0 .1)))
        }
        fn n2(&self, f: &W) -> Result<Vec<(W, W)>> {
            let (lo, hi) = f.0;
            Ok((lo..=hi).map(|m| (W((m, hi)), W((lo, m)))).collect())
        }
        fn fragment(&self, _size: usize) -> Vec<W> {
            (0..3).flat_map(|a| (a..3).map(move |b| W((a, b)))).collect()
        }
        fn in_fragment(&self, _f: &W, _size: usize) -> bool {
            true
        }
    }
}
