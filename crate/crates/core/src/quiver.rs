//! Monoidal path categories over a group of vertices. Either there are no
//! arrows, and the category is the discrete group, or there is a central
//! element `z` and exactly one arrow `f_a: a → z·a` at each vertex. A path
//! is then determined by its start and its number of steps.

use std::fmt;

use serde::Serialize;

use crate::catcore::{length, non_composable, Category};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteMonoid};
use crate::monoidal::{check_nlf, fragment_pairs, LiftReport, Monoidal};
use crate::report::{Report, Tally};

#[derive(Clone, Debug)]
pub struct QuiverSpec {
    pub group: FiniteMonoid,
    pub z: Option<usize>,
}

impl QuiverSpec {
    pub fn new(group: FiniteMonoid, z: Option<usize>) -> Result<Self> {
        if !group.is_group() {
            return Err(Error::Precondition("the vertex monoid must be a group".into()));
        }
        if let Some(z) = z {
            if z >= group.size() {
                return Err(Error::UndefinedKey(format!("element index {z}")));
            }
            if !group.is_central(z) {
                return Err(Error::Precondition(format!(
                    "{} is not central in the vertex group",
                    group.name(z)
                )));
            }
        }
        Ok(QuiverSpec { group, z })
    }
}

/// The path of `steps` arrows starting at `base`: `base → z^steps · base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuiverPath {
    pub base: Elem,
    pub steps: usize,
}

impl fmt::Display for QuiverPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.base, self.steps)
    }
}

#[derive(Clone, Debug)]
pub struct QuiverCategory {
    pub spec: QuiverSpec,
}

pub fn build_quiver_instance(spec: QuiverSpec) -> QuiverCategory {
    QuiverCategory { spec }
}

impl QuiverCategory {
    fn g(&self) -> &FiniteMonoid {
        &self.spec.group
    }

    /// `z^n · a`; with no arrows only `n = 0` occurs.
    fn shift(&self, a: usize, n: usize) -> usize {
        match self.spec.z {
            Some(z) => self.g().mul(self.g().pow(z, n), a),
            None => a,
        }
    }

    pub fn path(&self, base: usize, steps: usize) -> Result<QuiverPath> {
        if base >= self.g().size() {
            return Err(Error::UndefinedKey(format!("vertex index {base}")));
        }
        if steps > 0 && self.spec.z.is_none() {
            return Err(Error::Precondition("the quiver has no arrows".into()));
        }
        Ok(QuiverPath { base: self.g().elem(base), steps })
    }

    /// The single arrow `f_a`.
    pub fn arrow(&self, base: usize) -> Result<QuiverPath> {
        self.path(base, 1)
    }

    /// Literal `(a,n)` with `a` a vertex name.
    pub fn parse(&self, s: &str) -> Result<QuiverPath> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "expected (vertex,steps)"))?;
        let (a, n) = inner
            .rsplit_once(',')
            .ok_or_else(|| Error::parse(1, "expected a comma"))?;
        let base = self
            .g()
            .index_of(a.trim())
            .ok_or_else(|| Error::UndefinedKey(format!("vertex {}", a.trim())))?;
        let steps = n
            .trim()
            .parse()
            .map_err(|_| Error::parse(2 + a.len(), "expected a step count"))?;
        self.path(base, steps)
    }
}

impl Category for QuiverCategory {
    type Obj = Elem;
    type Mor = QuiverPath;

    fn source(&self, f: &QuiverPath) -> Elem {
        f.base.clone()
    }

    fn target(&self, f: &QuiverPath) -> Elem {
        self.g().elem(self.shift(f.base.idx, f.steps))
    }

    fn identity(&self, x: &Elem) -> QuiverPath {
        QuiverPath { base: x.clone(), steps: 0 }
    }

    fn compose(&self, a: &QuiverPath, b: &QuiverPath) -> Result<QuiverPath> {
        if self.source(a) != self.target(b) {
            return Err(non_composable(self, a, b));
        }
        Ok(QuiverPath { base: b.base.clone(), steps: a.steps + b.steps })
    }

    fn n2(&self, f: &QuiverPath) -> Result<Vec<(QuiverPath, QuiverPath)>> {
        Ok((0..=f.steps)
            .map(|k| {
                let mid = self.g().elem(self.shift(f.base.idx, k));
                (
                    QuiverPath { base: mid, steps: f.steps - k },
                    QuiverPath { base: f.base.clone(), steps: k },
                )
            })
            .collect())
    }

    fn fragment(&self, size: usize) -> Vec<QuiverPath> {
        let max = if self.spec.z.is_some() { size } else { 0 };
        self.g()
            .elements()
            .flat_map(|a| (0..=max).map(move |n| (a, n)))
            .map(|(a, n)| QuiverPath { base: self.g().elem(a), steps: n })
            .collect()
    }

    fn in_fragment(&self, f: &QuiverPath, size: usize) -> bool {
        f.steps <= size
    }

    fn describe_fragment(&self, size: usize) -> String {
        match self.spec.z {
            Some(z) => format!(
                "paths of <= {size} steps over {} vertices, z = {}",
                self.g().size(),
                self.g().name(z)
            ),
            None => format!("{} vertices, no arrows", self.g().size()),
        }
    }
}

impl Monoidal for QuiverCategory {
    fn unit(&self) -> Elem {
        self.g().elem(self.g().unit())
    }

    fn oproduct(&self, x: &Elem, y: &Elem) -> Elem {
        self.g().elem(self.g().mul(x.idx, y.idx))
    }

    /// `(a,n)·(b,l) = (ab, n+l)`.
    fn mproduct(&self, f: &QuiverPath, g: &QuiverPath) -> QuiverPath {
        QuiverPath {
            base: self.oproduct(&f.base, &g.base),
            steps: f.steps + g.steps,
        }
    }

    fn object_inverse(&self, x: &Elem) -> Option<Elem> {
        self.g().inverse(x.idx).map(|i| self.g().elem(i))
    }

    fn objects_form_group(&self) -> bool {
        true
    }
}

/// The lift map for the product of two single arrows at the unit vertex.
pub fn quiver_ulf_failure(cat: &QuiverCategory) -> Result<LiftReport> {
    let e = cat.g().unit();
    let f = cat.arrow(e)?;
    check_nlf(cat, &f, &f)
}

/// Length is additive under both the product and composition.
pub fn check_length_grading(cat: &QuiverCategory, size: usize) -> Report {
    let sample = cat.fragment(size);
    let mut report = Report::new("length grading", cat.describe_fragment(size));
    let mut steps = Tally::new("length equals step count");
    for f in &sample {
        steps.record(length(cat, f).ok() == Some(f.steps), || f.to_string());
    }
    let mut prod = Tally::new("l(f·g) = l(f) + l(g)");
    for (f, g) in fragment_pairs(cat, &sample, size) {
        let fg = cat.mproduct(f, g);
        let ok = match (length(cat, &fg), length(cat, f), length(cat, g)) {
            (Ok(a), Ok(b), Ok(c)) => a == b + c,
            _ => false,
        };
        prod.record(ok, || format!("{f} · {g}"));
    }
    let mut comp = Tally::new("l(f∘g) = l(f) + l(g)");
    for f in &sample {
        for g in &sample {
            let Ok(fg) = cat.compose(f, g) else { continue };
            if !cat.in_fragment(&fg, size) {
                continue;
            }
            let ok = match (length(cat, &fg), length(cat, f), length(cat, g)) {
                (Ok(a), Ok(b), Ok(c)) => a == b + c,
                _ => false,
            };
            comp.record(ok, || format!("{f} ∘ {g}"));
        }
    }
    report.push(steps.finish());
    report.push(prod.finish());
    report.push(comp.finish());
    report
}
