//! Finite monoids and groups given by multiplication tables, with
//! constructors for cyclic, symmetric and alternating groups and for groups
//! generated by permutations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of a [`FiniteMonoid`]: its index and display name. Ordered by
/// index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Elem {
    pub idx: usize,
    pub name: String,
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A finite monoid on the indices `0..n` with named elements.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid{{{}}}", self.names.join(", "))
    }
}

impl FiniteMonoid {
    /// Validates the table (square, in range, associative, with a two-sided unit).
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Invariant("a monoid has at least one element".into()));
        }
        if names.len() != n {
            return Err(Error::Invariant(format!(
                "{} names for a table of size {n}",
                names.len()
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::Invariant("element names must be distinct".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Invariant(format!("row {i} of the table is malformed")));
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invariant("the table has no two-sided unit".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invariant(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteMonoid { names, table, unit })
    }

    /// Like [`FiniteMonoid::new`], and additionally requires inverses.
    pub fn new_group(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = Self::new(names, table)?;
        if let Some(x) = (0..m.size()).find(|&x| m.inverse(x).is_none()) {
            return Err(Error::Invariant(format!("{} has no inverse", m.names[x])));
        }
        Ok(m)
    }

    /// `Z/n` with elements named `0..n-1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid::new(names, table).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        FiniteMonoid::new(vec!["e".into()], vec![vec![0]]).expect("trivial monoid")
    }

    /// The group generated by permutations of `0..degree`, with elements in
    /// lexicographic order of their image lists (so the identity comes first)
    /// and named in cycle notation.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        let (perms, table) = close_permutations(degree, generators)?;
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        FiniteMonoid::new(names, table)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteMonoid::from_permutations(n, &gens).expect("symmetric group")
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        FiniteMonoid::from_permutations(n, &gens).expect("alternating group")
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elem(&self, a: usize) -> Elem {
        Elem {
            idx: a,
            name: self.names[a].clone(),
        }
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size()).find(|&b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
    }

    /// Inverse in a group; panics on a non-invertible element.
    pub fn inv(&self, a: usize) -> usize {
        self.inverse(a)
            .unwrap_or_else(|| panic!("{} is not invertible", self.names[a]))
    }

    pub fn is_group(&self) -> bool {
        (0..self.size()).all(|a| self.inverse(a).is_some())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size()).all(|a| (0..self.size()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.size()).all(|a| self.mul(a, z) == self.mul(z, a))
    }

    pub fn pow(&self, a: usize, n: usize) -> usize {
        (0..n).fold(self.unit, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn is_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&self.unit)
            && set.iter().all(|&a| {
                self.inverse(a).is_some_and(|b| set.contains(&b))
                    && set.iter().all(|&b| set.contains(&self.mul(a, b)))
            })
    }

    pub fn is_normal(&self, set: &BTreeSet<usize>) -> bool {
        self.is_subgroup(set)
            && self.elements().all(|g| {
                let gi = self.inv(g);
                set.iter().all(|&n| set.contains(&self.mul(self.mul(g, n), gi)))
            })
    }

    pub fn center(&self) -> BTreeSet<usize> {
        self.elements().filter(|&z| self.is_central(z)).collect()
    }

    /// The subgroup (or submonoid) `{elements}` as a standalone monoid, with
    /// the embedding `new index -> old index`.
    pub fn restrict(&self, set: &BTreeSet<usize>) -> Result<(FiniteMonoid, Vec<usize>)> {
        let embed: Vec<usize> = set.iter().copied().collect();
        let pos: BTreeMap<usize, usize> = embed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = Vec::with_capacity(embed.len());
        for &a in &embed {
            let mut row = Vec::with_capacity(embed.len());
            for &b in &embed {
                let ab = self.mul(a, b);
                row.push(*pos.get(&ab).ok_or_else(|| {
                    Error::Invariant(format!(
                        "{} * {} leaves the subset",
                        self.names[a], self.names[b]
                    ))
                })?);
            }
            table.push(row);
        }
        let names = embed.iter().map(|&a| self.names[a].clone()).collect();
        Ok((FiniteMonoid::new(names, table)?, embed))
    }

    /// Checks that `map` is a monoid homomorphism `self -> other`.
    pub fn is_hom_to(&self, other: &FiniteMonoid, map: &[usize]) -> bool {
        map.len() == self.size()
            && map.iter().all(|&x| x < other.size())
            && map[self.unit] == other.unit
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b]))
            })
    }

    /// A small generating set, found greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = [self.unit].into();
        for a in self.elements() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Submonoid generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = [self.unit].into();
        let mut queue: VecDeque<usize> = [self.unit].into();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// All automorphisms, each as the full image list `a ↦ φ(a)`, in
    /// lexicographic order (identity first). Found by extending every
    /// assignment of generator images.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        self.search_autos(&gens, 0, &mut images, &mut out);
        out.sort();
        out
    }

    fn search_autos(
        &self,
        gens: &[usize],
        i: usize,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == gens.len() {
            if let Some(map) = self.extend_hom(gens, images) {
                let distinct: BTreeSet<usize> = map.iter().copied().collect();
                if distinct.len() == self.size() {
                    out.push(map);
                }
            }
            return;
        }
        for x in self.elements() {
            images[i] = x;
            self.search_autos(gens, i + 1, images, out);
        }
    }

    /// The unique endomorphism sending `gens[i] ↦ images[i]`, if one exists.
    fn extend_hom(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map: Vec<Option<usize>> = vec![None; self.size()];
        map[self.unit] = Some(self.unit);
        let mut queue: VecDeque<usize> = [self.unit].into();
        while let Some(x) = queue.pop_front() {
            let fx = map[x]?;
            for (g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, *g);
                let fy = self.mul(fx, img);
                match map[y] {
                    None => {
                        map[y] = Some(fy);
                        queue.push_back(y);
                    }
                    Some(v) if v != fy => return None,
                    Some(_) => {}
                }
            }
        }
        let map: Vec<usize> = map.into_iter().collect::<Option<_>>()?;
        self.is_hom_to(self, &map).then_some(map)
    }

    /// Conjugation `x ↦ g x g⁻¹` as an image list.
    pub fn conjugation(&self, g: usize) -> Vec<usize> {
        let gi = self.inv(g);
        self.elements().map(|x| self.mul(self.mul(g, x), gi)).collect()
    }
}

/// Closes a set of permutations under composition. Returns the elements in
/// lexicographic order and the table of `(p * q)(i) = p(q(i))`.
pub fn close_permutations(
    degree: usize,
    generators: &[Vec<usize>],
) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    for g in generators {
        let mut sorted = g.clone();
        sorted.sort();
        if g.len() != degree || sorted != (0..degree).collect::<Vec<_>>() {
            return Err(Error::Invariant(format!(
                "{g:?} is not a permutation of 0..{degree}"
            )));
        }
    }
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: BTreeSet<Vec<usize>> = [id.clone()].into();
    let mut queue: VecDeque<Vec<usize>> = [id].into();
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = compose(&p, g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let perms: Vec<Vec<usize>> = seen.into_iter().collect();
    let index: BTreeMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| index[&compose(p, q)]).collect())
        .collect();
    Ok((perms, table))
}

/// `e` for the identity, otherwise the non-trivial cycles, e.g. `(012)(34)`.
/// Points above 9 are separated by spaces.
pub fn cycle_notation(p: &[usize]) -> String {
    let wide = p.len() > 10;
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i.to_string());
            i = p[i];
        }
        let sep = if wide { " " } else { "" };
        out.push_str(&format!("({})", cycle.join(sep)));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}
