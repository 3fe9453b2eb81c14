//! Operadic planar rooted forests as a PROP. A forest is a list of planar
//! trees in term form `W | B(t, ..., t)`: `W` is a white leaf, `B` a black
//! internal vertex, and every tree hangs from an implicit white root. A
//! forest with `m` white leaves and `n` trees is a morphism `m → n`;
//! composition grafts the roots of the lower forest onto the leaves of the
//! upper one, and the monoidal product is the ordered sum.
//!
//! `N₂(f)` is complete: in any factorization `f = g ∘ h` the internal
//! vertices of `g` form a parent-closed set `U` of internal vertices of `f`,
//! and `U` determines `g` and `h`. The enumerator runs over all such `U`.
//!
//! The core of a forest forgets the white vertices. Core-equivalent forests
//! span a bialgebra ideal and the quotient is the planar Connes–Kreimer
//! Hopf algebra of rooted forests.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catcore::{non_composable, Category};
use crate::error::{Error, Result};
use crate::exactlin::{FreeVec, FreeVec2, Pair};
use crate::incidence::IncidenceConfig;
use crate::monoidal::Monoidal;
use crate::report::{Check, Report, Tally};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tree {
    W,
    B(Vec<Tree>),
}

impl Tree {
    pub fn leaves(&self) -> usize {
        match self {
            Tree::W => 1,
            Tree::B(ch) => ch.iter().map(Tree::leaves).sum(),
        }
    }

    pub fn internal(&self) -> usize {
        match self {
            Tree::W => 0,
            Tree::B(ch) => 1 + ch.iter().map(Tree::internal).sum::<usize>(),
        }
    }

    fn core(&self) -> Option<CoreTree> {
        match self {
            Tree::W => None,
            Tree::B(ch) => Some(CoreTree(ch.iter().filter_map(Tree::core).collect())),
        }
    }

    /// Every way to split at a parent-closed vertex set: the upper part
    /// (with `W` at the cuts) and the hanging subtrees in order.
    fn cuts(&self) -> Vec<(Tree, Vec<Tree>)> {
        let mut out = vec![(Tree::W, vec![self.clone()])];
        if let Tree::B(ch) = self {
            for (tops, bottoms) in forest_cuts(ch) {
                out.push((Tree::B(tops), bottoms));
            }
        }
        out
    }
}

fn forest_cuts(trees: &[Tree]) -> Vec<(Vec<Tree>, Vec<Tree>)> {
    let mut acc: Vec<(Vec<Tree>, Vec<Tree>)> = vec![(Vec::new(), Vec::new())];
    for t in trees {
        let options = match t {
            Tree::W => vec![(Tree::W, vec![Tree::W])],
            _ => t.cuts(),
        };
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for (tops, bottoms) in &acc {
            for (top, bottom) in &options {
                let mut tops = tops.clone();
                tops.push(top.clone());
                let mut bottoms = bottoms.clone();
                bottoms.extend(bottom.iter().cloned());
                next.push((tops, bottoms));
            }
        }
        acc = next;
    }
    acc
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::W => f.write_str("W"),
            Tree::B(ch) => {
                f.write_str("B(")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// An operadic planar rooted forest: `leaves → roots`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OpForest(pub Vec<Tree>);

impl OpForest {
    pub fn identity(n: usize) -> Self {
        OpForest(vec![Tree::W; n])
    }

    pub fn leaves(&self) -> usize {
        self.0.iter().map(Tree::leaves).sum()
    }

    pub fn roots(&self) -> usize {
        self.0.len()
    }

    pub fn internal(&self) -> usize {
        self.0.iter().map(Tree::internal).sum()
    }

    /// Literal `[tree, ...]` with `tree ::= W | B(tree*)`, or `id(n)`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        p.skip_ws();
        let out = if p.eat("id(") {
            let n = p.number()?;
            p.expect(")")?;
            OpForest::identity(n)
        } else {
            p.expect("[")?;
            let mut trees = Vec::new();
            p.skip_ws();
            if !p.eat("]") {
                loop {
                    trees.push(p.tree()?);
                    p.skip_ws();
                    if p.eat("]") {
                        break;
                    }
                    p.expect(",")?;
                }
            }
            OpForest(trees)
        };
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected {tok:?}")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(start, "expected a number"))
    }

    fn tree(&mut self) -> Result<Tree> {
        if self.eat("W") {
            return Ok(Tree::W);
        }
        self.expect("B(")?;
        let mut ch = Vec::new();
        if self.eat(")") {
            return Ok(Tree::B(ch));
        }
        loop {
            ch.push(self.tree()?);
            if self.eat(")") {
                return Ok(Tree::B(ch));
            }
            self.expect(",")?;
        }
    }
}

impl fmt::Display for OpForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

/// `(|L(f)|, |R(f)|)`.
pub fn interfaces(f: &OpForest) -> (usize, usize) {
    (f.leaves(), f.roots())
}

/// `f1 ∘ f2`: the k-th root of `f2` replaces the k-th leaf of `f1`.
pub fn graft(f1: &OpForest, f2: &OpForest) -> Result<OpForest> {
    if f1.leaves() != f2.roots() {
        return Err(Error::InterfaceMismatch(format!(
            "{f1} has {} leaves but {f2} has {} roots",
            f1.leaves(),
            f2.roots()
        )));
    }
    let mut supply = f2.0.iter();
    fn go<'a>(t: &Tree, supply: &mut impl Iterator<Item = &'a Tree>) -> Tree {
        match t {
            Tree::W => supply.next().expect("leaf count checked").clone(),
            Tree::B(ch) => Tree::B(ch.iter().map(|c| go(c, supply)).collect()),
        }
    }
    Ok(OpForest(f1.0.iter().map(|t| go(t, &mut supply)).collect()))
}

pub fn osum(f1: &OpForest, f2: &OpForest) -> OpForest {
    OpForest(f1.0.iter().chain(&f2.0).cloned().collect())
}

/// All `(g, h)` with `graft(g, h) = f`.
pub fn n2_forest(f: &OpForest) -> Vec<(OpForest, OpForest)> {
    forest_cuts(&f.0)
        .into_iter()
        .map(|(g, h)| (OpForest(g), OpForest(h)))
        .collect()
}

/// A planar rooted tree on internal vertices only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CoreTree(pub Vec<CoreTree>);

impl CoreTree {
    pub fn vertices(&self) -> usize {
        1 + self.0.iter().map(CoreTree::vertices).sum::<usize>()
    }

    fn lift(&self) -> Tree {
        Tree::B(self.0.iter().map(CoreTree::lift).collect())
    }
}

impl fmt::Display for CoreTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("•")?;
        if !self.0.is_empty() {
            f.write_str("(")?;
            for c in &self.0 {
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A planar forest of core trees; the empty forest is the unit `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Default)]
pub struct CoreForest(pub Vec<CoreTree>);

impl CoreForest {
    pub fn empty() -> Self {
        CoreForest(Vec::new())
    }

    /// The one-vertex tree `•`.
    pub fn dot() -> Self {
        CoreForest(vec![CoreTree(Vec::new())])
    }

    /// A chain of `n` vertices.
    pub fn chain(n: usize) -> Self {
        if n == 0 {
            return CoreForest::empty();
        }
        let mut t = CoreTree(Vec::new());
        for _ in 1..n {
            t = CoreTree(vec![t]);
        }
        CoreForest(vec![t])
    }

    pub fn vertices(&self) -> usize {
        self.0.iter().map(CoreTree::vertices).sum()
    }

    pub fn concat(&self, other: &CoreForest) -> CoreForest {
        CoreForest(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Canonical lift: one white root above each tree and no white leaves.
    pub fn lift(&self) -> OpForest {
        OpForest(self.0.iter().map(CoreTree::lift).collect())
    }

    /// Literal such as `•(••)•`; `o` may stand for `•` and `1` is the empty forest.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
        if chars == ['1'] {
            return Ok(CoreForest::empty());
        }
        let mut pos = 0;
        let trees = parse_core_trees(&chars, &mut pos)?;
        if pos < chars.len() {
            return Err(Error::parse(pos, format!("unexpected {:?}", chars[pos])));
        }
        if trees.is_empty() {
            return Err(Error::parse(0, "expected a vertex"));
        }
        Ok(CoreForest(trees))
    }

    /// Every planar forest with exactly `n` vertices.
    pub fn all_with(n: usize) -> Vec<CoreForest> {
        let mut memo = BTreeMap::new();
        core_forests(n, &mut memo)
            .into_iter()
            .map(CoreForest)
            .collect()
    }
}

fn parse_core_trees(chars: &[char], pos: &mut usize) -> Result<Vec<CoreTree>> {
    let mut out = Vec::new();
    while let Some(&c) = chars.get(*pos) {
        if c != '•' && c != 'o' {
            break;
        }
        *pos += 1;
        let mut children = Vec::new();
        if chars.get(*pos) == Some(&'(') {
            *pos += 1;
            children = parse_core_trees(chars, pos)?;
            if children.is_empty() || chars.get(*pos) != Some(&')') {
                return Err(Error::parse(*pos, "expected children and a closing parenthesis"));
            }
            *pos += 1;
        }
        out.push(CoreTree(children));
    }
    Ok(out)
}

fn core_forests(n: usize, memo: &mut BTreeMap<usize, Vec<Vec<CoreTree>>>) -> Vec<Vec<CoreTree>> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        for first in 1..=n {
            let trees: Vec<CoreTree> = core_forests(first - 1, memo)
                .into_iter()
                .map(CoreTree)
                .collect();
            for rest in core_forests(n - first, memo) {
                for t in &trees {
                    let mut f = vec![t.clone()];
                    f.extend(rest.iter().cloned());
                    out.push(f);
                }
            }
        }
    }
    memo.insert(n, out.clone());
    out
}

impl fmt::Display for CoreForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn core(f: &OpForest) -> CoreForest {
    CoreForest(f.0.iter().filter_map(Tree::core).collect())
}

/// Every forest with exactly `internal` internal vertices, `leaves` leaves
/// and `roots` trees.
pub fn forests_with(internal: usize, leaves: usize, roots: usize) -> Vec<OpForest> {
    let mut gen = Gen::default();
    gen.forests(internal, leaves, roots)
        .into_iter()
        .map(OpForest)
        .collect()
}

#[derive(Default)]
struct Gen {
    trees: BTreeMap<(usize, usize), Vec<Tree>>,
    forests: BTreeMap<(usize, usize, usize), Vec<Vec<Tree>>>,
}

impl Gen {
    fn trees(&mut self, i: usize, l: usize) -> Vec<Tree> {
        if let Some(v) = self.trees.get(&(i, l)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if i == 0 {
            if l == 1 {
                out.push(Tree::W);
            }
        } else {
            // children of the top vertex: at most one tree per remaining
            // internal vertex or leaf
            for r in 0..=(i - 1 + l) {
                for ch in self.forests(i - 1, l, r) {
                    out.push(Tree::B(ch));
                }
            }
        }
        self.trees.insert((i, l), out.clone());
        out
    }

    fn forests(&mut self, i: usize, l: usize, r: usize) -> Vec<Vec<Tree>> {
        if let Some(v) = self.forests.get(&(i, l, r)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if r == 0 {
            if i == 0 && l == 0 {
                out.push(Vec::new());
            }
        } else {
            for i1 in 0..=i {
                for l1 in 0..=l {
                    let firsts = self.trees(i1, l1);
                    if firsts.is_empty() {
                        continue;
                    }
                    let rests = self.forests(i - i1, l - l1, r - 1);
                    for t in &firsts {
                        for rest in &rests {
                            let mut f = vec![t.clone()];
                            f.extend(rest.iter().cloned());
                            out.push(f);
                        }
                    }
                }
            }
        }
        self.forests.insert((i, l, r), out.clone());
        out
    }
}

/// The PROP of operadic planar rooted forests. `fragment(k)` holds the
/// forests with at most `k` internal vertices and at most `max_interface`
/// leaves and roots.
#[derive(Clone, Copy, Debug)]
pub struct ForestCategory {
    pub max_interface: usize,
}

impl Default for ForestCategory {
    fn default() -> Self {
        ForestCategory { max_interface: 2 }
    }
}

impl ForestCategory {
    /// Candidates large enough to contain every factor of `f`: the middle
    /// interface of a factorization has at most `leaves + internal` edges.
    pub fn oracle_candidates(&self, f: &OpForest) -> Vec<OpForest> {
        let k = f.internal();
        let bound = f.leaves() + k;
        let mut out = Vec::new();
        for i in 0..=k {
            for l in 0..=bound {
                for r in 0..=bound.max(f.roots()) {
                    out.extend(forests_with(i, l, r));
                }
            }
        }
        out
    }
}

impl Category for ForestCategory {
    type Obj = usize;
    type Mor = OpForest;

    fn source(&self, f: &OpForest) -> usize {
        f.leaves()
    }

    fn target(&self, f: &OpForest) -> usize {
        f.roots()
    }

    fn identity(&self, x: &usize) -> OpForest {
        OpForest::identity(*x)
    }

    fn compose(&self, a: &OpForest, b: &OpForest) -> Result<OpForest> {
        graft(a, b).map_err(|_| non_composable(self, a, b))
    }

    fn n2(&self, f: &OpForest) -> Result<Vec<(OpForest, OpForest)>> {
        Ok(n2_forest(f))
    }

    fn fragment(&self, size: usize) -> Vec<OpForest> {
        let mut out = Vec::new();
        for i in 0..=size {
            for l in 0..=self.max_interface {
                for r in 0..=self.max_interface {
                    out.extend(forests_with(i, l, r));
                }
            }
        }
        out
    }

    fn in_fragment(&self, f: &OpForest, size: usize) -> bool {
        f.internal() <= size && f.leaves() <= self.max_interface && f.roots() <= self.max_interface
    }

    fn describe_fragment(&self, size: usize) -> String {
        format!(
            "forests with <= {size} internal vertices and <= {} leaves and roots",
            self.max_interface
        )
    }
}

impl Monoidal for ForestCategory {
    fn unit(&self) -> usize {
        0
    }

    fn oproduct(&self, x: &usize, y: &usize) -> usize {
        x + y
    }

    fn mproduct(&self, f: &OpForest, g: &OpForest) -> OpForest {
        osum(f, g)
    }

    fn object_inverse(&self, x: &usize) -> Option<usize> {
        (*x == 0).then_some(0)
    }

    fn objects_form_group(&self) -> bool {
        false
    }

    /// Removes the bare-edge trees, the factors `i₁` of the ordered sum.
    fn strip_identity_factors(&self, f: &OpForest) -> OpForest {
        OpForest(f.0.iter().filter(|t| **t != Tree::W).cloned().collect())
    }
}

/// `(core⊗core)Δ(σ(t))` for the canonical lift `σ`.
pub fn ck_coproduct(t: &CoreForest) -> FreeVec2<CoreForest> {
    core_coproduct(&t.lift())
}

/// `(core⊗core)Δ(f)` for any operadic forest.
pub fn core_coproduct(f: &OpForest) -> FreeVec2<CoreForest> {
    FreeVec::from_terms(
        n2_forest(f)
            .into_iter()
            .map(|(a, b)| (Pair(core(&a), core(&b)), num::One::one())),
    )
}

pub fn ck_product(u: &FreeVec<CoreForest>, v: &FreeVec<CoreForest>) -> FreeVec<CoreForest> {
    u.bilinear(v, CoreForest::concat)
}

/// Antipode of the Connes–Kreimer quotient: the antipode of the forest
/// bialgebra modulo identities, computed on the canonical lift and mapped
/// through `core`.
pub fn ck_antipode(t: &CoreForest) -> Result<FreeVec<CoreForest>> {
    let cat = ForestCategory::default();
    let cfg = IncidenceConfig::unscaled(&cat);
    let s = cfg.antipode_collapsed(&t.lift())?;
    Ok(s.map_keys(core))
}

/// The Connes–Kreimer antipode by its own recursion
/// `S(t) = -Σ S(a)·b` over the terms of `Δ(t)` other than `t⊗1`.
pub fn ck_antipode_direct(t: &CoreForest) -> FreeVec<CoreForest> {
    let mut memo = BTreeMap::new();
    ck_direct(t, &mut memo)
}

fn ck_direct(
    t: &CoreForest,
    memo: &mut BTreeMap<CoreForest, FreeVec<CoreForest>>,
) -> FreeVec<CoreForest> {
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let out = if t.0.is_empty() {
        FreeVec::basis(CoreForest::empty())
    } else {
        let mut acc = FreeVec::zero();
        for (Pair(a, b), c) in ck_coproduct(t).iter() {
            if *a == *t && b.0.is_empty() {
                continue;
            }
            let sa = ck_direct(a, memo);
            acc.add_scaled(c, &ck_product(&sa, &FreeVec::basis(b.clone())));
        }
        acc.neg()
    };
    memo.insert(t.clone(), out.clone());
    out
}

/// Core equivalence respects the bialgebra structure on the fragment:
/// equal cores give equal `(core⊗core)Δ`, and `core(f·h)` depends only on
/// `core(f)`.
pub fn check_core_well_defined(cat: &ForestCategory, size: usize) -> Report {
    let sample = cat.fragment(size);
    let mut report = Report::new("core equivalence is a bialgebra ideal", cat.describe_fragment(size));
    let mut classes: BTreeMap<CoreForest, Vec<&OpForest>> = BTreeMap::new();
    for f in &sample {
        classes.entry(core(f)).or_default().push(f);
    }
    let mut delta = Tally::new("(core⊗core)Δ constant on core classes");
    let mut prod = Tally::new("core(f·h) constant on core classes");
    for (c, members) in &classes {
        let expected = ck_coproduct(c);
        for f in members {
            delta.record(core_coproduct(f) == expected, || format!("{f} vs lift of {c}"));
            for h in &sample {
                let lhs = core(&osum(f, h));
                let rhs = c.concat(&core(h));
                prod.record(lhs == rhs, || format!("{f} · {h}"));
            }
        }
    }
    delta.detail(format!("{} core classes", classes.len()));
    report.push(delta.finish());
    report.push(prod.finish());
    report
}

/// `(S*id)(t) = ε(t)1 = (id*S)(t)` in the quotient for every planar forest
/// with at most `max_vertices` vertices.
pub fn check_ck_antipode(max_vertices: usize) -> Check {
    let mut tally = Tally::new("CK antipode: S * id = uε = id * S");
    for n in 0..=max_vertices {
        for t in CoreForest::all_with(n) {
            let expected = if n == 0 {
                FreeVec::basis(CoreForest::empty())
            } else {
                FreeVec::zero()
            };
            let mut left = FreeVec::zero();
            let mut right = FreeVec::zero();
            let mut failed = None;
            for (Pair(a, b), c) in ck_coproduct(&t).iter() {
                match (ck_antipode(a), ck_antipode(b)) {
                    (Ok(sa), Ok(sb)) => {
                        left.add_scaled(c, &ck_product(&sa, &FreeVec::basis(b.clone())));
                        right.add_scaled(c, &ck_product(&FreeVec::basis(a.clone()), &sb));
                    }
                    (Err(e), _) | (_, Err(e)) => failed = Some(e),
                }
            }
            match failed {
                Some(e) => tally.fail_with(format!("{t}: {e}")),
                None => tally.record(left == expected && right == expected, || {
                    format!("{t}: S*id = {left}, id*S = {right}")
                }),
            }
        }
    }
    tally.finish()
}
