//! The category of skew shapes. Objects are 0/1 paths; a skew shape
//! `(q, p)` is a morphism `q → p` between paths of equal length and height
//! with `p` dominating `q`. Composition glues along a shared middle path and
//! the monoidal product concatenates.
//!
//! `N₂((r, p))` is complete: any factorization is `(q, p) ∘ (r, q)` for a
//! path `q` with `r ≤ q ≤ p`, and the enumerator scans every path of the
//! right length and height.

use std::fmt;

use serde::Serialize;

use crate::catcore::{non_composable, Category};
use crate::error::{Error, Result};
use crate::monoidal::Monoidal;

/// A word over `{0, 1}`; `1` is a step in the height direction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePath(pub Vec<bool>);

impl LatticePath {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "ε" {
            return Ok(LatticePath(Vec::new()));
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(i, format!("expected 0 or 1, found {c:?}"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(LatticePath)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn width(&self) -> usize {
        self.len() - self.height()
    }

    /// `Σ_{j ≤ i} p_j` for `i = 1..=n`.
    pub fn partial_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, b| {
                *acc += usize::from(*b);
                Some(*acc)
            })
            .collect()
    }

    pub fn concat(&self, other: &LatticePath) -> LatticePath {
        LatticePath(self.0.iter().chain(&other.0).copied().collect())
    }

    /// All paths of length `n` and height `h`, in lexicographic order.
    pub fn all_with(n: usize, h: usize) -> Vec<LatticePath> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fill(n, h, &mut cur, &mut out);
        out
    }
}

fn fill(n: usize, h: usize, cur: &mut Vec<bool>, out: &mut Vec<LatticePath>) {
    let ones = cur.iter().filter(|b| **b).count();
    let left = n - cur.len();
    if ones > h || ones + left < h {
        return;
    }
    if left == 0 {
        out.push(LatticePath(cur.clone()));
        return;
    }
    for b in [false, true] {
        cur.push(b);
        fill(n, h, cur, out);
        cur.pop();
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `(height, width)`.
pub fn path_stats(p: &LatticePath) -> (usize, usize) {
    (p.height(), p.width())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dominance {
    NotComparable,
    /// `q ≤ p`: every prefix sum of `p` is at least that of `q`.
    Leq,
    /// `q ≤ p`, `q ≠ p`, with strict inequality at every proper prefix.
    Lt,
}

pub fn dominates(q: &LatticePath, p: &LatticePath) -> Result<Dominance> {
    if q.len() != p.len() || q.height() != p.height() {
        return Err(Error::InterfaceMismatch(format!(
            "{q} and {p} differ in length or height"
        )));
    }
    let (sq, sp) = (q.partial_sums(), p.partial_sums());
    if sq.iter().zip(&sp).any(|(a, b)| a > b) {
        return Ok(Dominance::NotComparable);
    }
    let n = p.len();
    let strict = (0..n.saturating_sub(1)).all(|i| sp[i] > sq[i]);
    Ok(if strict && q != p {
        Dominance::Lt
    } else {
        Dominance::Leq
    })
}

/// A skew shape `(lower, upper)`: the morphism `lower → upper`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SkewShape {
    pub lower: LatticePath,
    pub upper: LatticePath,
}

impl SkewShape {
    pub fn new(lower: LatticePath, upper: LatticePath) -> Result<Self> {
        match dominates(&lower, &upper)? {
            Dominance::NotComparable => Err(Error::Invariant(format!(
                "{upper} does not dominate {lower}"
            ))),
            _ => Ok(SkewShape { lower, upper }),
        }
    }

    /// Literal `skew(q,p)`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix("skew(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "expected skew(q,p)"))?;
        let (q, p) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(5, "expected a comma"))?;
        let lower = LatticePath::parse(q.trim()).map_err(|e| shift(e, 5))?;
        let upper = LatticePath::parse(p.trim()).map_err(|e| shift(e, 6 + q.len()))?;
        SkewShape::new(lower, upper)
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    /// Connected: a single generator of length one, or strict dominance at
    /// every proper prefix.
    pub fn is_connected(&self) -> bool {
        match self.len() {
            0 => false,
            1 => true,
            _ => dominates(&self.lower, &self.upper) == Ok(Dominance::Lt),
        }
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "skew({},{})", self.lower, self.upper)
    }
}

pub fn compose_shapes(a: &SkewShape, b: &SkewShape) -> Result<SkewShape> {
    if a.lower != b.upper {
        return Err(Error::InterfaceMismatch(format!(
            "middle paths differ: {} vs {}",
            a.lower, b.upper
        )));
    }
    Ok(SkewShape {
        lower: b.lower.clone(),
        upper: a.upper.clone(),
    })
}

pub fn product_shapes(a: &SkewShape, b: &SkewShape) -> SkewShape {
    SkewShape {
        lower: a.lower.concat(&b.lower),
        upper: a.upper.concat(&b.upper),
    }
}

/// Cuts at every proper index where the prefix sums of both paths agree.
/// Each factor is connected and the factors concatenate back to `a`.
pub fn connected_factorization(a: &SkewShape) -> Vec<SkewShape> {
    let (sq, sp) = (a.lower.partial_sums(), a.upper.partial_sums());
    let n = a.len();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || sq[i - 1] == sp[i - 1] {
            out.push(SkewShape {
                lower: LatticePath(a.lower.0[start..i].to_vec()),
                upper: LatticePath(a.upper.0[start..i].to_vec()),
            });
            start = i;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SkewCategory;

impl Category for SkewCategory {
    type Obj = LatticePath;
    type Mor = SkewShape;

    fn source(&self, f: &SkewShape) -> LatticePath {
        f.lower.clone()
    }

    fn target(&self, f: &SkewShape) -> LatticePath {
        f.upper.clone()
    }

    fn identity(&self, x: &LatticePath) -> SkewShape {
        SkewShape {
            lower: x.clone(),
            upper: x.clone(),
        }
    }

    fn compose(&self, a: &SkewShape, b: &SkewShape) -> Result<SkewShape> {
        compose_shapes(a, b).map_err(|_| non_composable(self, a, b))
    }

    fn n2(&self, f: &SkewShape) -> Result<Vec<(SkewShape, SkewShape)>> {
        let mut out = Vec::new();
        for q in LatticePath::all_with(f.len(), f.upper.height()) {
            let below = dominates(&f.lower, &q)? != Dominance::NotComparable;
            let above = dominates(&q, &f.upper)? != Dominance::NotComparable;
            if below && above {
                out.push((
                    SkewShape {
                        lower: q.clone(),
                        upper: f.upper.clone(),
                    },
                    SkewShape {
                        lower: f.lower.clone(),
                        upper: q,
                    },
                ));
            }
        }
        Ok(out)
    }

    fn fragment(&self, size: usize) -> Vec<SkewShape> {
        let mut out = Vec::new();
        for n in 0..=size {
            for h in 0..=n {
                let paths = LatticePath::all_with(n, h);
                for q in &paths {
                    for p in &paths {
                        if let Ok(s) = SkewShape::new(q.clone(), p.clone()) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    fn in_fragment(&self, f: &SkewShape, size: usize) -> bool {
        f.len() <= size
    }

    fn describe_fragment(&self, size: usize) -> String {
        format!("skew shapes of length <= {size}")
    }
}

impl Monoidal for SkewCategory {
    fn unit(&self) -> LatticePath {
        LatticePath(Vec::new())
    }

    fn oproduct(&self, x: &LatticePath, y: &LatticePath) -> LatticePath {
        x.concat(y)
    }

    fn mproduct(&self, f: &SkewShape, g: &SkewShape) -> SkewShape {
        product_shapes(f, g)
    }

    fn object_inverse(&self, x: &LatticePath) -> Option<LatticePath> {
        x.is_empty().then(|| x.clone())
    }

    fn objects_form_group(&self) -> bool {
        false
    }

    /// Drops the length-one identity factors of the connected factorization.
    fn strip_identity_factors(&self, f: &SkewShape) -> SkewShape {
        connected_factorization(f)
            .into_iter()
            .filter(|g| g.lower != g.upper)
            .fold(SkewShape { lower: self.unit(), upper: self.unit() }, |acc, g| {
                product_shapes(&acc, &g)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        LatticePath::parse(s).unwrap()
    }

    fn sh(q: &str, pp: &str) -> SkewShape {
        SkewShape::new(p(q), p(pp)).unwrap()
    }

    #[test]
    fn stats() {
        assert_eq!(path_stats(&p("10100")), (2, 3));
        assert_eq!(path_stats(&p("")), (0, 0));
        assert_eq!(path_stats(&p("111")), (3, 0));
    }

    #[test]
    fn dominance() {
        // prefix sums 0,1,1,2 against 1,1,2,2: equal at i = 2
        assert_eq!(dominates(&p("01010"), &p("10100")).unwrap(), Dominance::Leq);
        assert_eq!(dominates(&p("10100"), &p("10100")).unwrap(), Dominance::Leq);
        assert_eq!(dominates(&p("00101"), &p("10100")).unwrap(), Dominance::Lt);
        assert_eq!(
            dominates(&p("10100"), &p("00101")).unwrap(),
            Dominance::NotComparable
        );
        assert!(dominates(&p("10"), &p("100")).is_err());
    }

    #[test]
    fn worked_example() {
        let (r, q, pp) = ("00101", "01010", "10100");
        assert_eq!(
            compose_shapes(&sh(q, pp), &sh(r, q)).unwrap(),
            sh(r, pp)
        );
        let prod = product_shapes(&sh(q, pp), &sh(r, q));
        assert_eq!(prod, sh("0101000101", "1010001010"));
        assert_eq!(connected_factorization(&sh(r, pp)).len(), 1);
        assert_eq!(connected_factorization(&sh(q, pp)).len(), 3);
        assert_eq!(connected_factorization(&sh(r, q)).len(), 3);
        assert_eq!(connected_factorization(&prod).len(), 6);
    }

    #[test]
    fn factorization_is_unique_and_connected() {
        for s in SkewCategory.fragment(5) {
            let parts = connected_factorization(&s);
            assert!(parts.iter().all(SkewShape::is_connected), "{s}");
            let back = parts
                .iter()
                .fold(SkewCategory.identity(&LatticePath(vec![])), |acc, g| {
                    product_shapes(&acc, g)
                });
            assert_eq!(back, s);
            for g in &parts {
                assert_eq!(connected_factorization(g).len(), 1);
            }
        }
    }

    #[test]
    fn literals() {
        let s = SkewShape::parse("skew(00101,10100)").unwrap();
        assert_eq!(s.to_string(), "skew(00101,10100)");
        assert!(SkewShape::parse("skew(10100,00101)").is_err());
        match SkewShape::parse("skew(0a1,101)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strip_keeps_connected_nonidentity_factors() {
        let s = sh("0101", "1001");
        // factors: skew(01,10), skew(0,0), skew(1,1)
        assert_eq!(SkewCategory.strip_identity_factors(&s), sh("01", "10"));
    }
}
