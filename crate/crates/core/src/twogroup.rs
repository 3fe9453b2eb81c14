//! Crossed modules and the strict 2-groups they present.
//!
//! A crossed module `(G, H, τ, α)` gives the monoidal groupoid with objects
//! `G` and morphisms `(h, g): g → τ(h)g`. Composition is
//! `(h', τ(h)g) ∘ (h, g) = (h'h, g)` and the product is
//! `(h,g)·(h',g') = (h·α(g,h'), gg')`. Every `N₂(f)` has exactly `|S|`
//! elements, `S` being the morphisms out of the unit object, so the
//! incidence coalgebra is taken with scale `λ = |S|`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, ToPrimitive};
use serde::Serialize;

use crate::catcore::{non_composable, Category};
use crate::error::{Error, Result};
use crate::exactlin::{int, FreeVec, FreeVec2, Pair, Rational};
use crate::group::{Elem, FiniteMonoid};
use crate::incidence::{IncidenceConfig, WeakHopfData};
use crate::monoidal::Monoidal;
use crate::report::{Check, Report, Tally};

#[derive(Clone, Debug)]
pub struct CrossedModule {
    pub g: FiniteMonoid,
    pub h: FiniteMonoid,
    /// `τ: H → G` as an image list.
    pub tau: Vec<usize>,
    /// `alpha[g][h] = α(g, h)`.
    pub alpha: Vec<Vec<usize>>,
}

fn violation(axiom: &str, witness: String) -> Error {
    Error::Invariant(format!("{axiom} fails at {witness}"))
}

/// Checks every crossed-module axiom exhaustively.
pub fn validate_crossed_module(
    g: FiniteMonoid,
    h: FiniteMonoid,
    tau: Vec<usize>,
    alpha: Vec<Vec<usize>>,
) -> Result<CrossedModule> {
    if !g.is_group() || !h.is_group() {
        return Err(Error::Precondition("G and H must be groups".into()));
    }
    if tau.len() != h.size() || tau.iter().any(|&t| t >= g.size()) {
        return Err(Error::Precondition("tau must map H into G".into()));
    }
    if alpha.len() != g.size()
        || alpha.iter().any(|row| row.len() != h.size() || row.iter().any(|&x| x >= h.size()))
    {
        return Err(Error::Precondition("alpha must be a |G| x |H| table into H".into()));
    }
    if !h.is_hom_to(&g, &tau) {
        return Err(Error::Invariant("tau is not a homomorphism".into()));
    }
    let (gn, hn) = (|x: usize| g.name(x).to_string(), |x: usize| h.name(x).to_string());
    for a in g.elements() {
        let row = &alpha[a];
        if !h.is_hom_to(&h, row) || row.iter().collect::<BTreeSet<_>>().len() != h.size() {
            return Err(violation("α(g,-) is an automorphism", format!("g = {}", gn(a))));
        }
    }
    for x in h.elements() {
        if alpha[g.unit()][x] != x {
            return Err(violation("α(e,h) = h", format!("h = {}", hn(x))));
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            for x in h.elements() {
                if alpha[g.mul(a, b)][x] != alpha[a][alpha[b][x]] {
                    return Err(violation(
                        "α(ab,h) = α(a,α(b,h))",
                        format!("({}, {}, {})", gn(a), gn(b), hn(x)),
                    ));
                }
            }
        }
    }
    for a in g.elements() {
        for x in h.elements() {
            let lhs = tau[alpha[a][x]];
            let rhs = g.mul(g.mul(a, tau[x]), g.inv(a));
            if lhs != rhs {
                return Err(violation(
                    "τ(α(g,h)) = gτ(h)g⁻¹",
                    format!("({}, {})", gn(a), hn(x)),
                ));
            }
        }
    }
    for x in h.elements() {
        for y in h.elements() {
            if alpha[tau[x]][y] != h.mul(h.mul(x, y), h.inv(x)) {
                return Err(violation(
                    "α(τ(h),h') = hh'h⁻¹",
                    format!("({}, {})", hn(x), hn(y)),
                ));
            }
        }
    }
    Ok(CrossedModule { g, h, tau, alpha })
}

impl CrossedModule {
    pub fn discrete(g: FiniteMonoid) -> Result<Self> {
        let h = FiniteMonoid::trivial();
        let alpha = vec![vec![0]; g.size()];
        let tau = vec![g.unit()];
        validate_crossed_module(g, h, tau, alpha)
    }
}

/// `(G, N, inclusion, conjugation)` for a normal subgroup `N`.
pub fn normal_subgroup_xmod(g: &FiniteMonoid, n: &BTreeSet<usize>) -> Result<CrossedModule> {
    if !g.is_subgroup(n) {
        return Err(Error::Precondition("N is not a subgroup".into()));
    }
    if !g.is_normal(n) {
        return Err(Error::Precondition("N is not normal".into()));
    }
    let (h, embed) = g.restrict(n)?;
    let back: BTreeMap<usize, usize> = embed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let alpha = g
        .elements()
        .map(|a| {
            embed
                .iter()
                .map(|&x| back[&g.mul(g.mul(a, x), g.inv(a))])
                .collect()
        })
        .collect();
    validate_crossed_module(g.clone(), h, embed, alpha)
}

/// The automorphism group of `g` under composition; element 0 is the identity.
pub fn aut_group(g: &FiniteMonoid) -> (FiniteMonoid, Vec<Vec<usize>>) {
    let auts = g.automorphisms();
    let index: BTreeMap<&Vec<usize>, usize> = auts.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let table = auts
        .iter()
        .map(|p| {
            auts.iter()
                .map(|q| index[&q.iter().map(|&x| p[x]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    let names = (0..auts.len())
        .map(|i| if i == 0 { "id".to_string() } else { format!("φ{i}") })
        .collect();
    let group = FiniteMonoid::new_group(names, table).expect("automorphisms form a group");
    (group, auts)
}

/// The crossed module `Inn(G) → Aut(G)` presenting `AUT(G)`: objects are
/// automorphisms, and morphisms out of the identity are inner automorphisms.
pub fn aut_two_group(g: &FiniteMonoid) -> Result<CrossedModule> {
    let (aut, maps) = aut_group(g);
    let index: BTreeMap<&Vec<usize>, usize> = maps.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let inner: BTreeSet<usize> = g.elements().map(|x| index[&g.conjugation(x)]).collect();
    normal_subgroup_xmod(&aut, &inner)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwoGroupMor {
    pub h: Elem,
    pub g: Elem,
}

impl fmt::Display for TwoGroupMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.g)
    }
}

/// The strict 2-group of a crossed module.
#[derive(Clone, Debug)]
pub struct TwoGroup {
    pub xm: CrossedModule,
}

pub fn two_group_from_xmod(xm: CrossedModule) -> TwoGroup {
    TwoGroup { xm }
}

impl TwoGroup {
    pub fn mor(&self, h: usize, g: usize) -> TwoGroupMor {
        TwoGroupMor { h: self.xm.h.elem(h), g: self.xm.g.elem(g) }
    }

    pub fn morphisms(&self) -> Vec<TwoGroupMor> {
        let xm = &self.xm;
        xm.h.elements()
            .flat_map(|h| xm.g.elements().map(move |g| (h, g)))
            .map(|(h, g)| self.mor(h, g))
            .collect()
    }

    /// Composition inverse `f⁻¹`.
    pub fn comp_inverse(&self, f: &TwoGroupMor) -> TwoGroupMor {
        let t = self.target(f);
        self.mor(self.xm.h.inv(f.h.idx), t.idx)
    }

    /// Literal `(h,g)` with element names; names may contain parentheses.
    pub fn parse(&self, s: &str) -> Result<TwoGroupMor> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "expected (h,g)"))?;
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        let i = split.ok_or_else(|| Error::parse(1, "expected a top-level comma"))?;
        let (a, b) = (inner[..i].trim(), inner[i + 1..].trim());
        let h = self
            .xm
            .h
            .index_of(a)
            .ok_or_else(|| Error::UndefinedKey(format!("element {a} of H")))?;
        let g = self
            .xm
            .g
            .index_of(b)
            .ok_or_else(|| Error::UndefinedKey(format!("element {b} of G")))?;
        Ok(self.mor(h, g))
    }
}

impl Category for TwoGroup {
    type Obj = Elem;
    type Mor = TwoGroupMor;

    fn source(&self, f: &TwoGroupMor) -> Elem {
        f.g.clone()
    }

    fn target(&self, f: &TwoGroupMor) -> Elem {
        let g = &self.xm.g;
        g.elem(g.mul(self.xm.tau[f.h.idx], f.g.idx))
    }

    fn identity(&self, x: &Elem) -> TwoGroupMor {
        self.mor(self.xm.h.unit(), x.idx)
    }

    fn compose(&self, a: &TwoGroupMor, b: &TwoGroupMor) -> Result<TwoGroupMor> {
        if self.source(a) != self.target(b) {
            return Err(non_composable(self, a, b));
        }
        Ok(self.mor(self.xm.h.mul(a.h.idx, b.h.idx), b.g.idx))
    }

    fn n2(&self, f: &TwoGroupMor) -> Result<Vec<(TwoGroupMor, TwoGroupMor)>> {
        let (h, g) = (&self.xm.h, &self.xm.g);
        Ok(h.elements()
            .map(|lo| {
                let b = self.mor(lo, f.g.idx);
                let a = self.mor(h.mul(f.h.idx, h.inv(lo)), g.mul(self.xm.tau[lo], f.g.idx));
                (a, b)
            })
            .collect())
    }

    fn fragment(&self, _size: usize) -> Vec<TwoGroupMor> {
        self.morphisms()
    }

    fn in_fragment(&self, _f: &TwoGroupMor, _size: usize) -> bool {
        true
    }

    fn describe_fragment(&self, _size: usize) -> String {
        format!(
            "all {} morphisms (|G| = {}, |H| = {})",
            self.xm.g.size() * self.xm.h.size(),
            self.xm.g.size(),
            self.xm.h.size()
        )
    }
}

impl Monoidal for TwoGroup {
    fn unit(&self) -> Elem {
        self.xm.g.elem(self.xm.g.unit())
    }

    fn oproduct(&self, x: &Elem, y: &Elem) -> Elem {
        self.xm.g.elem(self.xm.g.mul(x.idx, y.idx))
    }

    /// `(h,g)·(h',g') = (h·α(g,h'), gg')`.
    fn mproduct(&self, f: &TwoGroupMor, g: &TwoGroupMor) -> TwoGroupMor {
        let xm = &self.xm;
        self.mor(
            xm.h.mul(f.h.idx, xm.alpha[f.g.idx][g.h.idx]),
            xm.g.mul(f.g.idx, g.g.idx),
        )
    }

    fn object_inverse(&self, x: &Elem) -> Option<Elem> {
        self.xm.g.inverse(x.idx).map(|i| self.xm.g.elem(i))
    }

    fn objects_form_group(&self) -> bool {
        true
    }
}

/// `S`: the morphisms with source the unit object.
pub fn source_subgroup(tg: &TwoGroup) -> Vec<TwoGroupMor> {
    let one = tg.unit();
    tg.morphisms()
        .into_iter()
        .filter(|f| tg.source(f) == one)
        .collect()
}

/// `f̄ = i_{t(f)⁻¹} · f⁻¹ · i_{s(f)⁻¹}`.
pub fn monoidal_inverse(tg: &TwoGroup, f: &TwoGroupMor) -> TwoGroupMor {
    let inv = |x: &Elem| tg.object_inverse(x).expect("objects form a group");
    let left = tg.identity(&inv(&tg.target(f)));
    let right = tg.identity(&inv(&tg.source(f)));
    tg.mproduct(&tg.mproduct(&left, &tg.comp_inverse(f)), &right)
}

/// The antipode `S(f) = f̄⁻¹`.
pub fn antipode(tg: &TwoGroup, f: &TwoGroupMor) -> TwoGroupMor {
    tg.comp_inverse(&monoidal_inverse(tg, f))
}

/// The closed form `(α(g⁻¹,h⁻¹)⁻¹, g⁻¹)`. It coincides with `f̄⁻¹` exactly
/// when `τ(h) = e`: `f̄⁻¹` has source `g⁻¹τ(h)⁻¹`.
pub fn closed_form_antipode(tg: &TwoGroup, f: &TwoGroupMor) -> TwoGroupMor {
    let xm = &tg.xm;
    let gi = xm.g.inv(f.g.idx);
    let a = xm.alpha[gi][xm.h.inv(f.h.idx)];
    tg.mor(xm.h.inv(a), gi)
}

/// `Σ_{h'h''=h} (h'', τ(h')g) ⊗ (h', g)`, unscaled, in the index order of
/// the closed-form display.
pub fn closed_form_coproduct(tg: &TwoGroup, f: &TwoGroupMor) -> FreeVec2<TwoGroupMor> {
    let xm = &tg.xm;
    let mut out = FreeVec::zero();
    for h1 in xm.h.elements() {
        for h2 in xm.h.elements() {
            if xm.h.mul(h1, h2) != f.h.idx {
                continue;
            }
            let a = tg.mor(h2, xm.g.mul(xm.tau[h1], f.g.idx));
            let b = tg.mor(h1, f.g.idx);
            out.add_term(Pair(a, b), Rational::one());
        }
    }
    out
}

/// The weak Hopf structure: scale `|S|` and antipode `f̄⁻¹`.
pub fn weak_hopf_structure(tg: &TwoGroup) -> WeakHopfData<'_, TwoGroup> {
    let lambda = int(source_subgroup(tg).len() as i64);
    let config = IncidenceConfig::scaled(tg, lambda).expect("S is nonempty");
    WeakHopfData {
        config,
        antipode: Box::new(move |f| antipode(tg, f)),
    }
}

/// Same data with the closed-form antipode, for comparison.
pub fn closed_form_weak_hopf_structure(tg: &TwoGroup) -> WeakHopfData<'_, TwoGroup> {
    let lambda = int(source_subgroup(tg).len() as i64);
    let config = IncidenceConfig::scaled(tg, lambda).expect("S is nonempty");
    WeakHopfData {
        config,
        antipode: Box::new(move |f| closed_form_antipode(tg, f)),
    }
}

/// The crossed module read back from a 2-group: `G = Ob`, `H = S`,
/// `τ = t`, `α(g,s) = i_g · s · i_{g⁻¹}`. Also returns the elements of `S`
/// in the order used for `H`.
pub fn xmod_from_two_group(tg: &TwoGroup) -> Result<(CrossedModule, Vec<TwoGroupMor>)> {
    let s = source_subgroup(tg);
    let index: BTreeMap<&TwoGroupMor, usize> = s.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let lookup = |m: &TwoGroupMor| {
        index
            .get(m)
            .copied()
            .ok_or_else(|| Error::Invariant(format!("{m} is not in S")))
    };
    let mut table = Vec::with_capacity(s.len());
    for a in &s {
        let row: Result<Vec<usize>> = s.iter().map(|b| lookup(&tg.mproduct(a, b))).collect();
        table.push(row?);
    }
    let names = s.iter().map(|m| m.to_string()).collect();
    let h = FiniteMonoid::new_group(names, table)?;
    let g = tg.xm.g.clone();
    let tau = s.iter().map(|m| tg.target(m).idx).collect();
    let mut alpha = Vec::with_capacity(g.size());
    for x in g.elements() {
        let ix = tg.identity(&g.elem(x));
        let ixi = tg.identity(&g.elem(g.inv(x)));
        let row: Result<Vec<usize>> = s
            .iter()
            .map(|m| lookup(&tg.mproduct(&tg.mproduct(&ix, m), &ixi)))
            .collect();
        alpha.push(row?);
    }
    Ok((validate_crossed_module(g, h, tau, alpha)?, s))
}

/// Structural checks of the 2-group and the crossed-module correspondence.
pub fn check_two_group(tg: &TwoGroup) -> Report {
    let all = tg.morphisms();
    let mut report = Report::new("2-group structure", tg.describe_fragment(0));

    let mut inv = Tally::new("every morphism invertible under composition");
    for f in &all {
        let fi = tg.comp_inverse(f);
        let ok = tg.compose(&fi, f).ok() == Some(tg.identity(&tg.source(f)))
            && tg.compose(f, &fi).ok() == Some(tg.identity(&tg.target(f)));
        inv.record(ok, || f.to_string());
    }
    report.push(inv.finish());

    let one = tg.unit_identity();
    let mut bar = Tally::new("f̄·f = i₁ = f·f̄ and f̄̄ = f");
    for f in &all {
        let fb = monoidal_inverse(tg, f);
        let ok = tg.mproduct(&fb, f) == one
            && tg.mproduct(f, &fb) == one
            && monoidal_inverse(tg, &fb) == *f;
        bar.record(ok, || f.to_string());
    }
    report.push(bar.finish());

    let s = source_subgroup(tg);
    let sset: BTreeSet<&TwoGroupMor> = s.iter().collect();
    let mut sub = Tally::new("S is a normal subgroup of (C, ·)");
    for a in &s {
        for b in &s {
            sub.record(sset.contains(&tg.mproduct(a, b)), || format!("{a} · {b}"));
        }
        sub.record(sset.contains(&monoidal_inverse(tg, a)), || format!("inverse of {a}"));
    }
    for f in &all {
        let fb = monoidal_inverse(tg, f);
        for a in &s {
            let c = tg.mproduct(&tg.mproduct(f, a), &fb);
            sub.record(sset.contains(&c), || format!("{f} · {a} · f̄"));
        }
    }
    sub.detail(format!("|S| = {}", s.len()));
    report.push(sub.finish());

    let mut lf = Tally::new("|N2(f)| = |S|");
    for f in &all {
        let n = tg.n2(f).map(|v| v.len()).unwrap_or(0);
        lf.record(n == s.len(), || format!("{f}: |N2| = {n}"));
    }
    report.push(lf.finish());

    report.push(check_round_trip(tg));
    report
}

/// `xmod_from_two_group ∘ two_group_from_xmod` is isomorphic to the
/// identity via `h ↦ (h, e)`.
pub fn check_round_trip(tg: &TwoGroup) -> Check {
    let name = "crossed module round trip";
    let (back, s) = match xmod_from_two_group(tg) {
        Ok(x) => x,
        Err(e) => return Check::fail(name, 1, e.to_string()),
    };
    let xm = &tg.xm;
    let e = xm.g.unit();
    // position of (h, e) in S, for each h
    let phi: Vec<Option<usize>> = xm
        .h
        .elements()
        .map(|h| s.iter().position(|m| *m == tg.mor(h, e)))
        .collect();
    let Some(phi) = phi.into_iter().collect::<Option<Vec<usize>>>() else {
        return Check::fail(name, 1, "some (h, e) missing from S");
    };
    let mut tally = Tally::new(name);
    for a in xm.h.elements() {
        tally.record(back.tau[phi[a]] == xm.tau[a], || format!("τ at {}", xm.h.name(a)));
        for b in xm.h.elements() {
            tally.record(back.h.mul(phi[a], phi[b]) == phi[xm.h.mul(a, b)], || {
                format!("product at ({}, {})", xm.h.name(a), xm.h.name(b))
            });
        }
        for g in xm.g.elements() {
            tally.record(back.alpha[g][phi[a]] == phi[xm.alpha[g][a]], || {
                format!("α at ({}, {})", xm.g.name(g), xm.h.name(a))
            });
        }
    }
    tally.finish()
}

/// Termwise comparison of the closed-form coproduct with `λ·Δ`.
pub fn check_closed_form_coproduct(tg: &TwoGroup) -> Check {
    let data = weak_hopf_structure(tg);
    let lambda = data.config.scale.clone();
    let mut tally = Tally::new("closed-form coproduct equals λ·Δ");
    for f in tg.morphisms() {
        match data.config.coproduct(&f) {
            Ok(d) => {
                let closed = closed_form_coproduct(tg, &f);
                tally.record(d.scale(&lambda) == closed, || {
                    format!("{f}: λ·Δ = {}, closed form = {closed}", d.scale(&lambda))
                });
            }
            Err(e) => tally.fail_with(format!("{f}: {e}")),
        }
    }
    tally.finish()
}

/// Pointwise comparison of the closed-form antipode with `f̄⁻¹`.
pub fn check_closed_form_antipode(tg: &TwoGroup) -> Check {
    let mut tally = Tally::new("closed-form antipode equals f̄⁻¹");
    let mut agree = 0usize;
    let all = tg.morphisms();
    for f in &all {
        let (a, b) = (closed_form_antipode(tg, f), antipode(tg, f));
        if a == b {
            agree += 1;
        }
        tally.record(a == b, || format!("{f}: closed form {a}, f̄⁻¹ = {b}"));
    }
    tally.detail(format!("agree on {agree} of {}", all.len()));
    tally.finish()
}

/// For a normal subgroup, `Δ(f)` runs over the coset of the source:
/// the middle objects are exactly `τ(H)·s(f)`.
pub fn check_coset_coproduct(tg: &TwoGroup) -> Check {
    let xm = &tg.xm;
    let mut tally = Tally::new("Δ runs through the coset of the source");
    for f in tg.morphisms() {
        let mids: BTreeSet<usize> = match tg.n2(&f) {
            Ok(v) => v.iter().map(|(a, _)| tg.source(a).idx).collect(),
            Err(e) => {
                tally.fail_with(format!("{f}: {e}"));
                continue;
            }
        };
        let coset: BTreeSet<usize> = xm
            .h
            .elements()
            .map(|h| xm.g.mul(xm.tau[h], f.g.idx))
            .collect();
        tally.record(mids == coset, || f.to_string());
    }
    tally.finish()
}

/// `|S|` as a plain count.
pub fn scale_of(tg: &TwoGroup) -> usize {
    weak_hopf_structure(tg).config.scale.to_integer().to_usize().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::check_weak_hopf;
    use crate::monoidal::check_nlf;

    fn s3_a3() -> TwoGroup {
        let s3 = FiniteMonoid::symmetric(3);
        let a3: BTreeSet<usize> = ["e", "(012)", "(021)"]
            .iter()
            .map(|n| s3.index_of(n).unwrap())
            .collect();
        two_group_from_xmod(normal_subgroup_xmod(&s3, &a3).unwrap())
    }

    #[test]
    fn broken_action_rejected() {
        let g = FiniteMonoid::cyclic(2);
        let h = FiniteMonoid::cyclic(3);
        // a constant map is not an automorphism
        let alpha = vec![vec![0, 1, 2], vec![0, 0, 0]];
        let err = validate_crossed_module(g, h, vec![0, 0, 0], alpha).unwrap_err();
        assert!(err.to_string().contains("automorphism"), "{err}");
    }

    #[test]
    fn equivariance_violation_rejected() {
        // swapping a and b does not commute with τ(a) = 1, τ(b) = 0
        let v4 = FiniteMonoid::new_group(
            ["e", "a", "b", "c"].iter().map(|s| s.to_string()).collect(),
            vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]],
        )
        .unwrap();
        let g = FiniteMonoid::cyclic(2);
        let alpha = vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]];
        let tau = vec![0, 1, 0, 1];
        let err = validate_crossed_module(g, v4, tau, alpha).unwrap_err();
        assert!(err.to_string().contains("τ(α(g,h))"), "{err}");
    }

    #[test]
    fn running_instance() {
        let tg = s3_a3();
        assert_eq!(tg.morphisms().len(), 18);
        assert_eq!(source_subgroup(&tg).len(), 3);
        let r = check_two_group(&tg);
        assert!(r.passed(), "{r}");
        let f = tg.parse("((012),(01))").unwrap();
        let rep = check_nlf(&tg, &f, &f).unwrap();
        assert_eq!(rep.constant, Some(3));
        assert!(check_coset_coproduct(&tg).passed);
        assert!(check_closed_form_coproduct(&tg).passed);
    }

    #[test]
    fn identity_antipode() {
        let tg = s3_a3();
        for g in tg.xm.g.elements() {
            let f = tg.mor(tg.xm.h.unit(), g);
            let gi = tg.mor(tg.xm.h.unit(), tg.xm.g.inv(g));
            assert_eq!(closed_form_antipode(&tg, &f), gi);
            assert_eq!(antipode(&tg, &f), gi);
            assert_eq!(monoidal_inverse(&tg, &f), gi);
        }
    }

    #[test]
    fn weak_hopf_on_s3_a3() {
        let tg = s3_a3();
        let r = check_weak_hopf(&weak_hopf_structure(&tg), 0);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn closed_form_antipode_differs_off_kernel() {
        let tg = s3_a3();
        for f in tg.morphisms() {
            let same = closed_form_antipode(&tg, &f) == antipode(&tg, &f);
            assert_eq!(same, tg.xm.tau[f.h.idx] == tg.xm.g.unit(), "{f}");
        }
    }

    #[test]
    fn discrete_and_trivial_normal() {
        let tg = two_group_from_xmod(CrossedModule::discrete(FiniteMonoid::cyclic(3)).unwrap());
        assert_eq!(source_subgroup(&tg).len(), 1);
        assert!(check_two_group(&tg).passed());
        let s3 = FiniteMonoid::symmetric(3);
        let not_normal: BTreeSet<usize> = [0, s3.index_of("(01)").unwrap()].into();
        assert!(normal_subgroup_xmod(&s3, &not_normal).is_err());
    }

    #[test]
    fn aut_groups() {
        let z2 = aut_two_group(&FiniteMonoid::cyclic(2)).unwrap();
        assert_eq!((z2.g.size(), z2.h.size()), (1, 1));
        let z3 = aut_two_group(&FiniteMonoid::cyclic(3)).unwrap();
        assert_eq!((z3.g.size(), z3.h.size()), (2, 1));
        let s3 = aut_two_group(&FiniteMonoid::symmetric(3)).unwrap();
        assert_eq!((s3.g.size(), s3.h.size()), (6, 6));
    }

    #[test]
    fn round_trip_non_abelian_h() {
        let s3 = FiniteMonoid::symmetric(3);
        let all: BTreeSet<usize> = s3.elements().collect();
        let tg = two_group_from_xmod(normal_subgroup_xmod(&s3, &all).unwrap());
        assert!(check_round_trip(&tg).passed);
        // the closed-form index order is not the factorization order when H is non-abelian
        assert!(!check_closed_form_coproduct(&tg).passed);
    }
}
