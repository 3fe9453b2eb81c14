//! Exact rational scalars and free modules over ordered basis keys.
//!
//! [`FreeVec<K>`] is a finite formal sum `Σ c_k · k` with nonzero rational
//! coefficients. Tensor powers are the same type keyed by [`Pair`] or
//! [`Triple`], so `kC ⊗ kC` is `FreeVec<Pair<M, M>>`.
//!
//! Terms are kept in a `BTreeMap`, so iteration and rendering follow the
//! key order and are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};
use serde::Serialize;

use crate::error::Error;

/// Exact scalar field. Always normalized (lowest terms, positive denominator).
pub type Rational = num::BigRational;

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a coefficient as `p` or `p/q`.
pub fn render_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Basis key of a rank-two tensor, rendered `a⊗b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pair<A, B>(pub A, pub B);

/// Basis key of a rank-three tensor, rendered `a⊗b⊗c`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple<A, B, C>(pub A, pub B, pub C);

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Pair<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
}

impl<A: fmt::Display, B: fmt::Display, C: fmt::Display> fmt::Display for Triple<A, B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}⊗{}", self.0, self.1, self.2)
    }
}

/// A finite linear combination of basis keys with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeVec<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

pub type FreeVec2<K> = FreeVec<Pair<K, K>>;
pub type FreeVec3<K> = FreeVec<Triple<K, K, K>>;

impl<K: Ord> Default for FreeVec<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> FreeVec<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `1·k`.
    pub fn basis(k: K) -> Self {
        let mut v = Self::zero();
        v.add_term(k, Rational::one());
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    /// Adds `c·k` in place, dropping the key if its coefficient cancels.
    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Adds `c·v` in place.
    pub fn add_scaled(&mut self, c: &Rational, v: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &v.terms {
            self.add_term(k.clone(), c * x);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (k.clone(), c * x)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Linear extension of a map on keys: `Σ c_k · [f(k)]`.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> FreeVec<L> {
        FreeVec::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Linear extension `Σ a[k] · f(k)`; fails on the first key where `f` is undefined.
    pub fn apply_linear<L: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Option<FreeVec<L>>,
    ) -> Result<FreeVec<L>, Error>
    where
        K: fmt::Debug,
    {
        let mut out = FreeVec::zero();
        for (k, c) in &self.terms {
            let image = f(k).ok_or_else(|| Error::UndefinedKey(format!("{k:?}")))?;
            out.add_scaled(c, &image);
        }
        Ok(out)
    }

    /// Like [`FreeVec::apply_linear`] for maps that cannot be undefined but may fail.
    pub fn try_apply<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<FreeVec<L>, E>,
    ) -> Result<FreeVec<L>, E> {
        let mut out = FreeVec::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k)?);
        }
        Ok(out)
    }

    /// Bilinear tensor product: the coefficient of `(a, b)` is `self[a]·other[b]`.
    pub fn tensor<L: Ord + Clone>(&self, other: &FreeVec<L>) -> FreeVec<Pair<K, L>> {
        let mut out = FreeVec::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(Pair(a.clone(), b.clone()), x * y);
            }
        }
        out
    }

    /// Applies a bilinear operation on keys to every pair of terms.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone>(
        &self,
        other: &FreeVec<L>,
        mut op: impl FnMut(&K, &L) -> M,
    ) -> FreeVec<M> {
        let mut out = FreeVec::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(op(a, b), x * y);
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for FreeVec<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

/// Addition on the tensor square, handy for building `FreeVec2` sums.
pub fn fm_add<K: Ord + Clone>(a: &FreeVec<K>, b: &FreeVec<K>) -> FreeVec<K> {
    a.add(b)
}

pub fn fm_scale<K: Ord + Clone>(c: &Rational, a: &FreeVec<K>) -> FreeVec<K> {
    a.scale(c)
}

pub fn tensor<K: Ord + Clone, L: Ord + Clone>(
    a: &FreeVec<K>,
    b: &FreeVec<L>,
) -> FreeVec<Pair<K, L>> {
    a.tensor(b)
}

impl<K: Ord + fmt::Display> fmt::Display for FreeVec<K> {
    /// `c*key + c*key ...`, sorted by key; the zero vector renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", render_rational(c), k)?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Debug for FreeVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
