//! Strict monoidal structure on a category: the product of objects and
//! morphisms, the interchange law, and the n-to-one lifting of
//! factorizations (nLF) verifier.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::catcore::{check_mobius, Category};
use crate::error::{Error, Result};
use crate::report::{Check, Report, Tally};

pub trait Monoidal: Category {
    fn unit(&self) -> Self::Obj;
    fn oproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn mproduct(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    /// Two-sided inverse under `oproduct`, when one exists.
    fn object_inverse(&self, _x: &Self::Obj) -> Option<Self::Obj> {
        None
    }

    /// Whether `(Ob C, ·, 1)` is a group. Exact for finite object sets;
    /// declared by the instance otherwise.
    fn objects_form_group(&self) -> bool;

    fn unit_identity(&self) -> Self::Mor {
        self.identity(&self.unit())
    }

    /// Representative of `f` modulo the ideal generated by all `i_x - i_1`,
    /// i.e. `f` with its identity tensor factors removed. The default only
    /// sends identities to `i_1`; instances with free object monoids
    /// override it.
    fn strip_identity_factors(&self, f: &Self::Mor) -> Self::Mor {
        if self.is_identity(f) {
            self.unit_identity()
        } else {
            f.clone()
        }
    }
}

/// `(f ∘ h)·(g ∘ k) == (f·g) ∘ (h·k)`.
pub fn check_interchange<C: Monoidal + ?Sized>(
    inst: &C,
    f: &C::Mor,
    g: &C::Mor,
    h: &C::Mor,
    k: &C::Mor,
) -> Result<bool> {
    let lhs = inst.mproduct(&inst.compose(f, h)?, &inst.compose(g, k)?);
    let rhs = inst.compose(&inst.mproduct(f, g), &inst.mproduct(h, k))?;
    Ok(lhs == rhs)
}

/// Fiber statistics of the lift map `N₂(f) × N₂(g) → N₂(f·g)`,
/// `((a, b), (c, d)) ↦ (a·c, b·d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub f: String,
    pub g: String,
    pub n2_f: usize,
    pub n2_g: usize,
    pub n2_fg: usize,
    /// `|N₂(f)| · |N₂(g)|`.
    pub domain: usize,
    pub codomain: usize,
    /// fiber size -> number of codomain elements with that fiber size
    pub fiber_histogram: BTreeMap<usize, usize>,
    pub surjective: bool,
    /// The common fiber size when every fiber has the same size.
    pub constant: Option<usize>,
    /// A codomain element with a non-constant or empty fiber.
    pub witness: Option<String>,
}

impl LiftReport {
    /// The map is an n-to-one surjection.
    pub fn is_nlf(&self, n: usize) -> bool {
        self.surjective && self.constant == Some(n)
    }

    pub fn is_ulf(&self) -> bool {
        self.is_nlf(1)
    }
}

impl fmt::Display for LiftReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lift map for f = {}, g = {}", self.f, self.g)?;
        writeln!(f, "  |N2(f)|   = {}", self.n2_f)?;
        writeln!(f, "  |N2(g)|   = {}", self.n2_g)?;
        writeln!(f, "  |N2(f·g)| = {}", self.n2_fg)?;
        writeln!(f, "  domain {} -> codomain {}", self.domain, self.codomain)?;
        let hist: Vec<String> = self
            .fiber_histogram
            .iter()
            .map(|(size, count)| format!("{count}x{size}"))
            .collect();
        writeln!(f, "  fibers: {}", hist.join(", "))?;
        if let Some(w) = &self.witness {
            writeln!(f, "  witness: {w}")?;
        }
        let verdict = match (self.surjective, self.constant) {
            (true, Some(1)) => "ULF".to_string(),
            (true, Some(n)) => format!("{n}LF"),
            _ => "not nLF".to_string(),
        };
        write!(f, "  verdict: {verdict}")
    }
}

pub fn check_nlf<C: Monoidal + ?Sized>(inst: &C, f: &C::Mor, g: &C::Mor) -> Result<LiftReport> {
    let nf = inst.n2(f)?;
    let ng = inst.n2(g)?;
    let fg = inst.mproduct(f, g);
    let nfg = inst.n2(&fg)?;
    let mut fibers: BTreeMap<(C::Mor, C::Mor), usize> =
        nfg.iter().cloned().map(|p| (p, 0)).collect();
    for (a, b) in &nf {
        for (c, d) in &ng {
            let image = (inst.mproduct(a, c), inst.mproduct(b, d));
            match fibers.get_mut(&image) {
                Some(n) => *n += 1,
                None => {
                    return Err(Error::Invariant(format!(
                        "lift of ({a}, {b}) and ({c}, {d}) is not a factorization of {fg}"
                    )))
                }
            }
        }
    }
    let mut histogram = BTreeMap::new();
    for n in fibers.values() {
        *histogram.entry(*n).or_insert(0) += 1;
    }
    let surjective = !histogram.contains_key(&0);
    let constant = if histogram.len() == 1 {
        histogram.keys().next().copied()
    } else {
        None
    };
    let witness = if surjective && constant.is_some() {
        None
    } else {
        let modal = histogram
            .iter()
            .max_by_key(|(size, count)| (**count, std::cmp::Reverse(**size)))
            .map(|(size, _)| *size);
        fibers
            .iter()
            .find(|(_, n)| Some(**n) != modal || **n == 0)
            .map(|((x, y), n)| format!("({x}, {y}) has fiber size {n}"))
    };
    Ok(LiftReport {
        f: f.to_string(),
        g: g.to_string(),
        n2_f: nf.len(),
        n2_g: ng.len(),
        n2_fg: nfg.len(),
        domain: nf.len() * ng.len(),
        codomain: nfg.len(),
        fiber_histogram: histogram,
        surjective,
        constant,
        witness,
    })
}

/// Pairs from the sample whose product stays in the fragment.
pub fn fragment_pairs<'a, C: Monoidal + ?Sized>(
    inst: &C,
    sample: &'a [C::Mor],
    size: usize,
) -> Vec<(&'a C::Mor, &'a C::Mor)> {
    let mut out = Vec::new();
    for f in sample {
        for g in sample {
            if inst.in_fragment(&inst.mproduct(f, g), size) {
                out.push((f, g));
            }
        }
    }
    out
}

/// Strict associativity and unitality, functoriality on identities, and
/// the interchange law on composable quadruples whose composite stays in the
/// fragment.
pub fn check_monoidal_laws<C: Monoidal + ?Sized>(
    inst: &C,
    sample: &[C::Mor],
    size: usize,
) -> Vec<Check> {
    let one = inst.unit_identity();
    let mut unit = Tally::new("monoidal unit laws");
    for f in sample {
        unit.record(
            inst.mproduct(&one, f) == *f && inst.mproduct(f, &one) == *f,
            || f.to_string(),
        );
    }

    let pairs = fragment_pairs(inst, sample, size);
    let mut ends = Tally::new("source/target of products");
    let mut functorial = Tally::new("product of identities is an identity");
    for (f, g) in &pairs {
        let fg = inst.mproduct(f, g);
        ends.record(
            inst.source(&fg) == inst.oproduct(&inst.source(f), &inst.source(g))
                && inst.target(&fg) == inst.oproduct(&inst.target(f), &inst.target(g)),
            || format!("{f} · {g}"),
        );
        if inst.is_identity(f) && inst.is_identity(g) {
            let xy = inst.oproduct(&inst.source(f), &inst.source(g));
            functorial.record(fg == inst.identity(&xy), || format!("{f} · {g}"));
        }
    }

    let mut assoc = Tally::new("monoidal product associative");
    for (f, g) in &pairs {
        let fg = inst.mproduct(f, g);
        for h in sample {
            let lhs = inst.mproduct(&fg, h);
            if !inst.in_fragment(&lhs, size) {
                continue;
            }
            let rhs = inst.mproduct(f, &inst.mproduct(g, h));
            assoc.record(lhs == rhs, || format!("({f}, {g}, {h})"));
        }
    }

    let mut interchange = Tally::new("interchange law");
    let by_target = group_by(sample, |m| inst.target(m));
    for (f, g) in &pairs {
        let fg = inst.mproduct(f, g);
        let (Some(hs), Some(ks)) = (
            by_target.get(&inst.source(f)),
            by_target.get(&inst.source(g)),
        ) else {
            continue;
        };
        if !inst.in_fragment(&fg, size) {
            continue;
        }
        for h in hs {
            for k in ks {
                match check_interchange(inst, f, g, h, k) {
                    Ok(ok) => interchange.record(ok, || format!("f={f}, g={g}, h={h}, k={k}")),
                    Err(e) => interchange.fail_with(format!("f={f}, g={g}, h={h}, k={k}: {e}")),
                }
            }
        }
    }
    vec![
        unit.finish(),
        ends.finish(),
        functorial.finish(),
        assoc.finish(),
        interchange.finish(),
    ]
}

fn group_by<'a, T, K: Ord>(items: &'a [T], key: impl Fn(&T) -> K) -> BTreeMap<K, Vec<&'a T>> {
    let mut out: BTreeMap<K, Vec<&T>> = BTreeMap::new();
    for it in items {
        out.entry(key(it)).or_default().push(it);
    }
    out
}

/// nLF on every fragment pair, reported as one check with the fiber sizes seen.
pub fn check_nlf_on_fragment<C: Monoidal + ?Sized>(
    inst: &C,
    sample: &[C::Mor],
    size: usize,
    n: usize,
) -> Check {
    let name = if n == 1 {
        "ULF lifting of factorizations".to_string()
    } else {
        format!("{n}LF lifting of factorizations")
    };
    let mut tally = Tally::new(name);
    let mut seen = BTreeSet::new();
    for (f, g) in fragment_pairs(inst, sample, size) {
        match check_nlf(inst, f, g) {
            Ok(rep) => {
                seen.extend(rep.fiber_histogram.keys().copied());
                let ok = rep.is_nlf(n);
                tally.record(ok, || {
                    format!(
                        "f={f}, g={g}: domain {} -> codomain {}; {}",
                        rep.domain,
                        rep.codomain,
                        rep.witness.clone().unwrap_or_default()
                    )
                });
            }
            Err(e) => tally.fail_with(format!("f={f}, g={g}: {e}")),
        }
    }
    let sizes: Vec<String> = seen.iter().map(|s| s.to_string()).collect();
    tally.detail(format!("fiber sizes observed: {{{}}}", sizes.join(", ")));
    tally.finish()
}

/// `f·g` is an identity only when both `f` and `g` are.
pub fn check_unit_reflection<C: Monoidal + ?Sized>(
    inst: &C,
    sample: &[C::Mor],
    size: usize,
) -> Check {
    let mut tally = Tally::new("product reflects identities");
    for (f, g) in fragment_pairs(inst, sample, size) {
        let fg = inst.mproduct(f, g);
        let ok = !inst.is_identity(&fg) || (inst.is_identity(f) && inst.is_identity(g));
        tally.record(ok, || format!("{f} · {g} = {fg} is an identity"));
    }
    tally.finish()
}

/// Combinatorial category on the fragment: Möbius, ULF and unit reflection.
pub fn check_combinatorial<C: Monoidal + ?Sized>(inst: &C, size: usize) -> Report {
    let sample = inst.fragment(size);
    let mut report = Report::new("combinatorial category", inst.describe_fragment(size));
    report.extend(check_mobius(inst, &sample));
    report.push(check_nlf_on_fragment(inst, &sample, size, 1));
    report.push(check_unit_reflection(inst, &sample, size));
    report
}
