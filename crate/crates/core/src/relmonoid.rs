//! Categories `C_M` of a reflexive, transitive relation `≼` on a monoid `M`
//! that is compatible with the product (`x ≼ y`, `z ≼ t` imply
//! `xz ≼ yt`).
//!
//! A related pair `(x, y)` with `x ≼ y` is the unique morphism `y → x`;
//! `(x, y) ∘ (y, z) = (x, z)` and `(x, y)·(z, t) = (xz, yt)`. Identities are
//! `(x, x)`.
//!
//! Completeness of `N₂`: `(a, b) ∈ N₂((x, z))` forces `a = (x, y)` and
//! `b = (y, z)` for some `y` with `x ≼ y ≼ z`, so enumerating the interval
//! `[x, z]` lists every factorization exactly once.

use std::collections::BTreeSet;
use std::fmt::{self, Debug, Display};

use serde::Serialize;

use crate::catcore::{non_composable, Category};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteMonoid};
use crate::monoidal::Monoidal;
use crate::report::{Check, Report, Tally};

/// A monoid with a compatible preorder, as needed to build `C_M`.
pub trait MonoidRelation {
    type Elem: Clone + Ord + Debug + Display;

    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `x ≼ y`.
    fn related(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    /// `[x, y]` in a fixed order; only called when `x ≼ y`.
    fn interval_unchecked(&self, x: &Self::Elem, y: &Self::Elem) -> Vec<Self::Elem>;
    /// Elements of the finite fragment of size at most `size`.
    fn elements(&self, size: usize) -> Vec<Self::Elem>;
    fn in_fragment(&self, x: &Self::Elem, size: usize) -> bool;
    fn describe_fragment(&self, size: usize) -> String;
    fn inverse(&self, x: &Self::Elem) -> Option<Self::Elem>;
    fn is_group(&self) -> bool;

    /// Representative of `(lower, upper)` modulo `(x, x) ~ (1, 1)`.
    fn strip(&self, lower: &Self::Elem, upper: &Self::Elem) -> (Self::Elem, Self::Elem) {
        if lower == upper {
            (self.one(), self.one())
        } else {
            (lower.clone(), upper.clone())
        }
    }
}

/// The morphism `(lower, upper)`: `upper → lower`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RelMor<E> {
    pub lower: E,
    pub upper: E,
}

impl<E: Display> Display for RelMor<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lower, self.upper)
    }
}

/// `C_M` for a monoid relation.
#[derive(Clone, Debug)]
pub struct RelCategory<R> {
    pub rel: R,
}

impl<R: MonoidRelation> RelCategory<R> {
    pub fn new(rel: R) -> Self {
        RelCategory { rel }
    }

    /// The morphism `(x, y)`, if `x ≼ y`.
    pub fn mor(&self, x: R::Elem, y: R::Elem) -> Result<RelMor<R::Elem>> {
        if !self.rel.related(&x, &y) {
            return Err(Error::NotRelated(format!("{x} is not below {y}")));
        }
        Ok(RelMor { lower: x, upper: y })
    }

    pub fn interval(&self, x: &R::Elem, y: &R::Elem) -> Result<Vec<R::Elem>> {
        if !self.rel.related(x, y) {
            return Err(Error::NotRelated(format!("{x} is not below {y}")));
        }
        Ok(self.rel.interval_unchecked(x, y))
    }
}

impl<R: MonoidRelation> Category for RelCategory<R> {
    type Obj = R::Elem;
    type Mor = RelMor<R::Elem>;

    fn source(&self, f: &Self::Mor) -> R::Elem {
        f.upper.clone()
    }

    fn target(&self, f: &Self::Mor) -> R::Elem {
        f.lower.clone()
    }

    fn identity(&self, x: &R::Elem) -> Self::Mor {
        RelMor {
            lower: x.clone(),
            upper: x.clone(),
        }
    }

    fn compose(&self, a: &Self::Mor, b: &Self::Mor) -> Result<Self::Mor> {
        if a.upper != b.lower {
            return Err(non_composable(self, a, b));
        }
        Ok(RelMor {
            lower: a.lower.clone(),
            upper: b.upper.clone(),
        })
    }

    fn n2(&self, f: &Self::Mor) -> Result<Vec<(Self::Mor, Self::Mor)>> {
        Ok(self
            .interval(&f.lower, &f.upper)?
            .into_iter()
            .map(|y| {
                (
                    RelMor {
                        lower: f.lower.clone(),
                        upper: y.clone(),
                    },
                    RelMor {
                        lower: y,
                        upper: f.upper.clone(),
                    },
                )
            })
            .collect())
    }

    fn fragment(&self, size: usize) -> Vec<Self::Mor> {
        let elems = self.rel.elements(size);
        let mut out = Vec::new();
        for x in &elems {
            for y in &elems {
                if self.rel.related(x, y) {
                    out.push(RelMor {
                        lower: x.clone(),
                        upper: y.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    fn in_fragment(&self, f: &Self::Mor, size: usize) -> bool {
        self.rel.in_fragment(&f.lower, size) && self.rel.in_fragment(&f.upper, size)
    }

    fn describe_fragment(&self, size: usize) -> String {
        self.rel.describe_fragment(size)
    }
}

impl<R: MonoidRelation> Monoidal for RelCategory<R> {
    fn unit(&self) -> R::Elem {
        self.rel.one()
    }

    fn oproduct(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        self.rel.mul(x, y)
    }

    fn mproduct(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        RelMor {
            lower: self.rel.mul(&f.lower, &g.lower),
            upper: self.rel.mul(&f.upper, &g.upper),
        }
    }

    fn object_inverse(&self, x: &R::Elem) -> Option<R::Elem> {
        self.rel.inverse(x)
    }

    fn objects_form_group(&self) -> bool {
        self.rel.is_group()
    }

    fn strip_identity_factors(&self, f: &Self::Mor) -> Self::Mor {
        let (lower, upper) = self.rel.strip(&f.lower, &f.upper);
        RelMor { lower, upper }
    }
}

/// A relation on a finite monoid given by its full list of pairs.
#[derive(Clone, Debug)]
pub struct TableRelation {
    pub monoid: FiniteMonoid,
    /// `le[x][y]` iff `x ≼ y`.
    le: Vec<Vec<bool>>,
}

impl TableRelation {
    /// Checks reflexivity, transitivity and compatibility exhaustively.
    pub fn new(monoid: FiniteMonoid, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = monoid.size();
        let mut le = vec![vec![false; n]; n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::Invariant(format!("pair ({x}, {y}) out of range")));
            }
            le[x][y] = true;
        }
        let name = |i: usize| monoid.name(i).to_string();
        for x in 0..n {
            if !le[x][x] {
                return Err(Error::Invariant(format!("not reflexive at {}", name(x))));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if le[x][y] && le[y][z] && !le[x][z] {
                        return Err(Error::Invariant(format!(
                            "not transitive at ({}, {}, {})",
                            name(x),
                            name(y),
                            name(z)
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            for y in (0..n).filter(|&y| le[x][y]) {
                for z in 0..n {
                    for t in (0..n).filter(|&t| le[z][t]) {
                        if !le[monoid.mul(x, z)][monoid.mul(y, t)] {
                            return Err(Error::Invariant(format!(
                                "not compatible: {} ≼ {} and {} ≼ {} but not {} ≼ {}",
                                name(x),
                                name(y),
                                name(z),
                                name(t),
                                name(monoid.mul(x, z)),
                                name(monoid.mul(y, t))
                            )));
                        }
                    }
                }
            }
        }
        Ok(TableRelation { monoid, le })
    }

    pub fn equality(monoid: FiniteMonoid) -> Self {
        let pairs: Vec<(usize, usize)> = monoid.elements().map(|x| (x, x)).collect();
        TableRelation::new(monoid, &pairs).expect("equality is a compatible preorder")
    }

    /// The reflexive transitive closure of the given pairs.
    pub fn from_covers(monoid: FiniteMonoid, covers: &[(usize, usize)]) -> Result<Self> {
        let n = monoid.size();
        let mut le = vec![vec![false; n]; n];
        for (x, row) in le.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in covers {
            if x >= n || y >= n {
                return Err(Error::Invariant(format!("pair ({x}, {y}) out of range")));
            }
            le[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| le[x][y])
            .collect();
        TableRelation::new(monoid, &pairs)
    }

    /// The chain `0 ≤ 1 ≤ ... ≤ n-1` with the monoid product `max`.
    pub fn max_chain(n: usize) -> Self {
        assert!(n > 0, "empty chain");
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        let monoid = FiniteMonoid::new(names, table).expect("max is a monoid");
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        TableRelation::from_covers(monoid, &covers).expect("max chain is compatible")
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x][y]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.monoid.size();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.le[x][y])
            .collect()
    }
}

impl MonoidRelation for TableRelation {
    type Elem = Elem;

    fn one(&self) -> Elem {
        self.monoid.elem(self.monoid.unit())
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.monoid.elem(self.monoid.mul(a.idx, b.idx))
    }

    fn related(&self, x: &Elem, y: &Elem) -> bool {
        self.le[x.idx][y.idx]
    }

    fn interval_unchecked(&self, x: &Elem, y: &Elem) -> Vec<Elem> {
        self.monoid
            .elements()
            .filter(|&z| self.le[x.idx][z] && self.le[z][y.idx])
            .map(|z| self.monoid.elem(z))
            .collect()
    }

    fn elements(&self, _size: usize) -> Vec<Elem> {
        self.monoid.elements().map(|i| self.monoid.elem(i)).collect()
    }

    fn in_fragment(&self, _x: &Elem, _size: usize) -> bool {
        true
    }

    fn describe_fragment(&self, _size: usize) -> String {
        format!(
            "all {} related pairs of a monoid of order {}",
            self.pairs().len(),
            self.monoid.size()
        )
    }

    fn inverse(&self, x: &Elem) -> Option<Elem> {
        self.monoid.inverse(x.idx).map(|i| self.monoid.elem(i))
    }

    fn is_group(&self) -> bool {
        self.monoid.is_group()
    }
}

/// A word in a free monoid; the empty word renders as `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word(pub String);

impl Word {
    pub fn empty() -> Self {
        Word(String::new())
    }

    pub fn len(&self) -> usize {
        self.0.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&self.0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeRel {
    /// Words are related iff they have the same length.
    EqualLength,
    Equality,
}

/// The free monoid on a finite alphabet with one of two relations.
#[derive(Clone, Debug)]
pub struct FreeRelation {
    pub alphabet: Vec<char>,
    pub kind: FreeRel,
}

impl FreeRelation {
    pub fn new(alphabet: Vec<char>, kind: FreeRel) -> Result<Self> {
        let distinct: BTreeSet<char> = alphabet.iter().copied().collect();
        if alphabet.is_empty() || distinct.len() != alphabet.len() {
            return Err(Error::Invariant(
                "the alphabet must be non-empty and without repeats".into(),
            ));
        }
        if alphabet.iter().any(|c| !c.is_alphanumeric() || *c == '1') {
            return Err(Error::Invariant(
                "letters must be alphanumeric and differ from 1".into(),
            ));
        }
        let mut alphabet = alphabet;
        alphabet.sort();
        Ok(FreeRelation { alphabet, kind })
    }

    /// Every word of length `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let mut out = vec![String::new()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| self.alphabet.iter().map(move |c| format!("{w}{c}")))
                .collect();
        }
        out.into_iter().map(Word).collect()
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        if s == "1" {
            return Ok(Word::empty());
        }
        for (i, c) in s.chars().enumerate() {
            if !self.alphabet.contains(&c) {
                return Err(Error::parse(i, format!("letter {c:?} is not in the alphabet")));
            }
        }
        Ok(Word(s.to_string()))
    }
}

impl MonoidRelation for FreeRelation {
    type Elem = Word;

    fn one(&self) -> Word {
        Word::empty()
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        Word(format!("{}{}", a.0, b.0))
    }

    fn related(&self, x: &Word, y: &Word) -> bool {
        match self.kind {
            FreeRel::EqualLength => x.len() == y.len(),
            FreeRel::Equality => x == y,
        }
    }

    fn interval_unchecked(&self, x: &Word, _y: &Word) -> Vec<Word> {
        match self.kind {
            FreeRel::EqualLength => self.words_of_length(x.len()),
            FreeRel::Equality => vec![x.clone()],
        }
    }

    fn elements(&self, size: usize) -> Vec<Word> {
        (0..=size).flat_map(|n| self.words_of_length(n)).collect()
    }

    fn in_fragment(&self, x: &Word, size: usize) -> bool {
        x.len() <= size
    }

    fn describe_fragment(&self, size: usize) -> String {
        let alphabet: String = self.alphabet.iter().collect();
        let rel = match self.kind {
            FreeRel::EqualLength => "equal-length pairs",
            FreeRel::Equality => "diagonal pairs",
        };
        format!("{rel} of words of length <= {size} over {{{alphabet}}}")
    }

    fn inverse(&self, x: &Word) -> Option<Word> {
        x.is_empty().then(Word::empty)
    }

    fn is_group(&self) -> bool {
        false
    }

    /// Removes the positions where the two words agree: these are the
    /// identity letters `(c, c)` of the free monoid on pairs of letters.
    fn strip(&self, lower: &Word, upper: &Word) -> (Word, Word) {
        match self.kind {
            FreeRel::EqualLength => {
                let (mut l, mut u) = (String::new(), String::new());
                for (a, b) in lower.0.chars().zip(upper.0.chars()) {
                    if a != b {
                        l.push(a);
                        u.push(b);
                    }
                }
                (Word(l), Word(u))
            }
            FreeRel::Equality => (Word::empty(), Word::empty()),
        }
    }
}

pub type MonexCategory = RelCategory<FreeRelation>;

/// The free monoid on `{x, y}` with words related iff they have equal
/// length: morphisms are pairs of equal-length words, and the incidence
/// bialgebra is the free algebra on `α = (x,x)`, `β = (x,y)`, `γ = (y,x)`,
/// `δ = (y,y)`.
pub fn monex_instance() -> MonexCategory {
    RelCategory::new(FreeRelation::new(vec!['x', 'y'], FreeRel::EqualLength).expect("alphabet"))
}

impl MonexCategory {
    /// `(u,w)` literal with words over the alphabet, `1` for the empty word.
    pub fn parse_mor(&self, s: &str) -> Result<RelMor<Word>> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "expected (lower,upper)"))?;
        let (l, u) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(1, "expected a comma"))?;
        let lower = self
            .rel
            .parse_word(l.trim())
            .map_err(|e| shift(e, 1))?;
        let upper = self
            .rel
            .parse_word(u.trim())
            .map_err(|e| shift(e, l.len() + 2))?;
        self.mor(lower, upper)
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

impl RelCategory<TableRelation> {
    pub fn parse_mor(&self, s: &str) -> Result<RelMor<Elem>> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "expected (lower,upper)"))?;
        let (l, u) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(1, "expected a comma"))?;
        let m = &self.rel.monoid;
        let find = |name: &str, pos: usize| {
            m.index_of(name.trim())
                .map(|i| m.elem(i))
                .ok_or_else(|| Error::parse(pos, format!("unknown element {:?}", name.trim())))
        };
        let lower = find(l, 1)?;
        let upper = find(u, l.len() + 2)?;
        self.mor(lower, upper)
    }
}

/// The three criteria for `C_M`: finite intervals (local finiteness),
/// bounded strict chains (Möbius), and bijectivity of
/// `[x,y] × [z,t] → [xz, yt]` (ULF), each on the fragment.
pub fn check_interval_criteria<R: MonoidRelation>(cat: &RelCategory<R>, size: usize) -> Report {
    let rel = &cat.rel;
    let elems = rel.elements(size);
    let mut report = Report::new("relation criteria", rel.describe_fragment(size));
    let related: Vec<(&R::Elem, &R::Elem)> = elems
        .iter()
        .flat_map(|x| elems.iter().map(move |y| (x, y)))
        .filter(|(x, y)| rel.related(x, y))
        .collect();

    let mut finite = Tally::new("intervals finite");
    for (x, y) in &related {
        finite.record(true, String::new);
        finite.detail(format!("[{x},{y}]: {} elements", rel.interval_unchecked(x, y).len()));
    }
    let mut finite = finite.finish();
    // Listing every interval size is noisy on large fragments.
    finite.details.truncate(16);
    report.push(finite);

    // Strict chains are unbounded exactly when two distinct elements are
    // related both ways (z ≼ w ≼ z can be repeated forever).
    let mut chains = Tally::new("strict chains bounded (antisymmetry)");
    for (x, y) in &related {
        chains.record(x == y || !rel.related(y, x), || {
            format!("{x} ≼ {y} ≼ {x} with {x} ≠ {y}")
        });
    }
    report.push(chains.finish());

    let mut biject = Tally::new("interval products biject");
    for (x, y) in &related {
        for (z, t) in &related {
            let xz = rel.mul(x, z);
            let yt = rel.mul(y, t);
            if !rel.in_fragment(&xz, size) || !rel.in_fragment(&yt, size) {
                continue;
            }
            let left = rel.interval_unchecked(x, y);
            let right = rel.interval_unchecked(z, t);
            let target: BTreeSet<R::Elem> = rel.interval_unchecked(&xz, &yt).into_iter().collect();
            let mut image = BTreeSet::new();
            let mut injective = true;
            let mut inside = true;
            for u in &left {
                for v in &right {
                    let uv = rel.mul(u, v);
                    inside &= target.contains(&uv);
                    injective &= image.insert(uv);
                }
            }
            biject.record(injective && inside && image.len() == target.len(), || {
                format!("[{x},{y}] × [{z},{t}] → [{xz},{yt}]")
            });
        }
    }
    report.push(biject.finish());
    report
}

/// For an equivalence relation: every class `K` spans a matrix coalgebra,
/// `Δ((x,y)) = Σ_{z ∈ K} (x,z)⊗(z,y)` with `|K|` terms, all inside `K × K`.
pub fn check_matrix_coalgebra<R: MonoidRelation>(cat: &RelCategory<R>, size: usize) -> Check {
    let rel = &cat.rel;
    let mut tally = Tally::new("equivalence classes span matrix coalgebras");
    let elems = rel.elements(size);
    for x in &elems {
        for y in &elems {
            if !rel.related(x, y) {
                continue;
            }
            if !rel.related(y, x) {
                tally.fail_with(format!("{x} ≼ {y} but not {y} ≼ {x}: not an equivalence"));
                continue;
            }
            let class: BTreeSet<R::Elem> = rel.interval_unchecked(x, x).into_iter().collect();
            let f = RelMor {
                lower: x.clone(),
                upper: y.clone(),
            };
            let ok = match cat.n2(&f) {
                Ok(pairs) => {
                    pairs.len() == class.len()
                        && pairs.iter().all(|(a, b)| {
                            a.lower == *x
                                && b.upper == *y
                                && a.upper == b.lower
                                && class.contains(&a.upper)
                        })
                }
                Err(_) => false,
            };
            tally.record(ok, || f.to_string());
        }
    }
    tally.finish()
}
