//! A toy category of bigraphs with private names, taken up to support
//! equivalence (renaming vertices and ports).
//!
//! Objects are interfaces `⟨places, names⟩`. A bigraph `⟨m,x⟩ → ⟨n,y⟩` has a
//! place graph (a forest of vertices hanging from `n` ordered roots, with `m`
//! ordered sites as leaves) and a link graph (a partition of ports, inner
//! names and outer names into classes). Composition plugs sites into roots and
//! joins link classes through the shared names; the product is the ordered
//! disjoint union.
//!
//! Values are stored in canonical form: ports are not named but recorded, per
//! class, as the multiset of vertices carrying them, and vertices are
//! renumbered to the lexicographically least presentation. Two bigraphs are
//! support equivalent iff their canonical forms are equal.
//!
//! Factorizations are enumerated under the reduction rule: no two middle
//! names are linked both below and above the cut. Without it, parallel middle
//! names give infinitely many factorizations of any morphism with a link
//! crossing the cut.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::catcore::{non_composable, Category};
use crate::error::{Error, Result};
use crate::exactlin::{int, FreeVec, FreeVec2, Pair};
use crate::monoidal::Monoidal;
use crate::incidence::{check_multiplicative, IncidenceConfig};
use crate::report::{Check, Report, Tally};

/// A parent in the place graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Place {
    Root(usize),
    Vertex(usize),
}

/// A link class: ports (as the vertices carrying them), inner and outer names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Default)]
pub struct Class {
    pub ports: Vec<usize>,
    pub inner: Vec<usize>,
    pub outer: Vec<usize>,
}

impl Class {
    fn size(&self) -> usize {
        self.ports.len() + self.inner.len() + self.outer.len()
    }

    fn normalize(&mut self) {
        self.ports.sort_unstable();
        self.inner.sort_unstable();
        self.outer.sort_unstable();
    }
}

/// An interface `⟨places, names⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Iface {
    pub places: usize,
    pub names: usize,
}

impl Iface {
    pub fn new(places: usize, names: usize) -> Self {
        Iface { places, names }
    }
}

impl fmt::Display for Iface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.places, self.names)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Bigraph {
    pub roots: usize,
    pub sites: usize,
    pub inner: usize,
    pub outer: usize,
    /// One entry per vertex.
    pub labels: Vec<Option<char>>,
    pub vprnt: Vec<Place>,
    pub sprnt: Vec<Place>,
    /// Sorted.
    pub classes: Vec<Class>,
}

impl Bigraph {
    pub fn vertices(&self) -> usize {
        self.vprnt.len()
    }

    pub fn ports(&self) -> usize {
        self.classes.iter().map(|c| c.ports.len()).sum()
    }

    pub fn inner_iface(&self) -> Iface {
        Iface::new(self.sites, self.inner)
    }

    pub fn outer_iface(&self) -> Iface {
        Iface::new(self.roots, self.outer)
    }

    pub fn identity(i: Iface) -> Bigraph {
        Bigraph {
            roots: i.places,
            sites: i.places,
            inner: i.names,
            outer: i.names,
            labels: Vec::new(),
            vprnt: Vec::new(),
            sprnt: (0..i.places).map(Place::Root).collect(),
            classes: (0..i.names)
                .map(|k| Class { ports: Vec::new(), inner: vec![k], outer: vec![k] })
                .collect(),
        }
    }

    /// `merge_i`: `i` sites under one root, names passed through.
    pub fn merge(places: usize, names: usize) -> Result<Bigraph> {
        let mut b = Bigraph::identity(Iface::new(places, names));
        b.roots = 1;
        b.sprnt = vec![Place::Root(0); places];
        b.validate()?;
        Ok(b)
    }

    /// Root of `p` under iterated parents, or `None` on a cycle.
    fn root_of(&self, mut p: Place) -> Option<usize> {
        for _ in 0..=self.vertices() {
            match p {
                Place::Root(r) => return Some(r),
                Place::Vertex(v) => p = self.vprnt[v],
            }
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invariant(m));
        let k = self.vertices();
        if self.labels.len() != k || self.sprnt.len() != self.sites {
            return bad("vertex or site data has the wrong length".into());
        }
        let in_range = |p: &Place| match *p {
            Place::Root(r) => r < self.roots,
            Place::Vertex(v) => v < k,
        };
        if !self.vprnt.iter().chain(&self.sprnt).all(in_range) {
            return bad("parent out of range".into());
        }
        let mut covered = vec![false; self.roots];
        for p in self.vprnt.iter().chain(&self.sprnt) {
            if let Place::Root(r) = p {
                covered[*r] = true;
            }
        }
        if let Some(r) = covered.iter().position(|c| !c) {
            return bad(format!("root r{r} has no children"));
        }
        for v in 0..k {
            if self.root_of(Place::Vertex(v)).is_none() {
                return bad(format!("vertex v{v} lies on a parent cycle"));
            }
        }
        let site_roots: Vec<usize> = self
            .sprnt
            .iter()
            .map(|p| self.root_of(*p).unwrap_or(usize::MAX))
            .collect();
        if site_roots.windows(2).any(|w| w[0] > w[1]) {
            return bad("sites are not mapped monotonically to roots".into());
        }
        let mut inner_seen = vec![0usize; self.inner];
        let mut outer_seen = vec![0usize; self.outer];
        for c in &self.classes {
            if c.size() < 2 {
                return bad("a link class has fewer than two elements".into());
            }
            if c.ports.is_empty() && c.outer.is_empty() {
                return bad("a link class lies inside the inner names".into());
            }
            if c.ports.is_empty() && c.inner.is_empty() {
                return bad("a link class lies inside the outer names".into());
            }
            if c.ports.iter().any(|&v| v >= k) {
                return bad("port on a missing vertex".into());
            }
            for &x in &c.inner {
                if x >= self.inner {
                    return bad(format!("inner name x{x} out of range"));
                }
                inner_seen[x] += 1;
            }
            for &y in &c.outer {
                if y >= self.outer {
                    return bad(format!("outer name y{y} out of range"));
                }
                outer_seen[y] += 1;
            }
        }
        if inner_seen.iter().chain(&outer_seen).any(|&n| n != 1) {
            return bad("names must lie in exactly one class".into());
        }
        Ok(())
    }

    fn permuted(&self, perm: &[usize]) -> Bigraph {
        let k = self.vertices();
        let map = |p: Place| match p {
            Place::Vertex(v) => Place::Vertex(perm[v]),
            r => r,
        };
        let mut labels = vec![None; k];
        let mut vprnt = vec![Place::Root(0); k];
        for v in 0..k {
            labels[perm[v]] = self.labels[v];
            vprnt[perm[v]] = map(self.vprnt[v]);
        }
        let mut classes: Vec<Class> = self
            .classes
            .iter()
            .map(|c| {
                let mut c = Class {
                    ports: c.ports.iter().map(|&v| perm[v]).collect(),
                    inner: c.inner.clone(),
                    outer: c.outer.clone(),
                };
                c.normalize();
                c
            })
            .collect();
        classes.sort();
        Bigraph {
            roots: self.roots,
            sites: self.sites,
            inner: self.inner,
            outer: self.outer,
            labels,
            vprnt,
            sprnt: self.sprnt.iter().map(|p| map(*p)).collect(),
            classes,
        }
    }

    /// The least presentation over all vertex renumberings that respect an
    /// isomorphism-invariant colouring of the vertices.
    pub fn canonical(&self) -> Bigraph {
        let k = self.vertices();
        let colors = self.vertex_colors();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&v| colors[v]);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match groups.last_mut() {
                Some(g) if colors[g[0]] == colors[v] => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut best: Option<Bigraph> = None;
        let mut locals: Vec<Vec<usize>> = groups.iter().map(|g| (0..g.len()).collect()).collect();
        let mut perm = vec![0; k];
        loop {
            let mut start = 0;
            for (g, local) in groups.iter().zip(&locals) {
                for (i, &v) in g.iter().enumerate() {
                    perm[v] = start + local[i];
                }
                start += g.len();
            }
            let cand = self.permuted(&perm);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            // odometer over the per-group permutations
            let mut i = 0;
            while i < locals.len() && !next_permutation(&mut locals[i]) {
                locals[i].sort_unstable();
                i += 1;
            }
            if i == locals.len() {
                break;
            }
        }
        best.expect("at least one permutation")
    }

    /// Colour refinement on vertices: label, position and linkage, iterated
    /// through parents, children and shared link classes until stable.
    fn vertex_colors(&self) -> Vec<usize> {
        let k = self.vertices();
        type Key = (usize, Vec<usize>, Vec<usize>, Vec<Vec<usize>>);
        let relabel = |keys: Vec<Key>| -> Vec<usize> {
            let distinct: BTreeSet<&Key> = keys.iter().collect();
            let rank: BTreeMap<&Key, usize> = distinct.into_iter().enumerate().map(|(i, x)| (x, i)).collect();
            keys.iter().map(|x| rank[x]).collect()
        };
        let place_code = |p: Place, colors: &[usize]| match p {
            Place::Root(r) => r,
            Place::Vertex(v) => 1000 + colors[v],
        };
        let mut colors: Vec<usize> = relabel(
            (0..k)
                .map(|v| {
                    let label = self.labels[v].map_or(0, |c| c as usize + 1);
                    let sites: Vec<usize> = (0..self.sites)
                        .filter(|&s| self.sprnt[s] == Place::Vertex(v))
                        .collect();
                    let links: Vec<Vec<usize>> = self
                        .classes
                        .iter()
                        .filter(|c| c.ports.contains(&v))
                        .map(|c| {
                            let mut sig = vec![c.ports.iter().filter(|&&u| u == v).count(), usize::MAX];
                            sig.extend(&c.inner);
                            sig.push(usize::MAX);
                            sig.extend(&c.outer);
                            sig
                        })
                        .collect();
                    let mut links = links;
                    links.sort();
                    (label, vec![self.depth(v)], sites, links)
                })
                .collect(),
        );
        loop {
            let distinct = colors.iter().collect::<BTreeSet<_>>().len();
            let keys: Vec<Key> = (0..k)
                .map(|v| {
                    let mut children: Vec<usize> = (0..k)
                        .filter(|&u| self.vprnt[u] == Place::Vertex(v))
                        .map(|u| colors[u])
                        .collect();
                    children.sort_unstable();
                    let mut links: Vec<Vec<usize>> = self
                        .classes
                        .iter()
                        .filter(|c| c.ports.contains(&v))
                        .map(|c| {
                            let mut others: Vec<usize> = c.ports.iter().map(|&u| colors[u]).collect();
                            others.sort_unstable();
                            others
                        })
                        .collect();
                    links.sort();
                    (colors[v], vec![place_code(self.vprnt[v], &colors)], children, links)
                })
                .collect();
            let next = relabel(keys);
            if next.iter().collect::<BTreeSet<_>>().len() == distinct {
                return colors;
            }
            colors = next;
        }
    }

    /// Support equivalence by exhaustive search over vertex bijections.
    pub fn isomorphic_by_search(&self, other: &Bigraph) -> bool {
        let k = self.vertices();
        if k != other.vertices() {
            return false;
        }
        let target = other.permuted(&(0..k).collect::<Vec<_>>());
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            if self.permuted(&perm) == target {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    /// Canonical key; equal exactly for support-equivalent bigraphs.
    pub fn canonical_form(&self) -> String {
        self.canonical().to_string()
    }

    pub fn depth(&self, v: usize) -> usize {
        let mut d = 1;
        let mut p = self.vprnt[v];
        while let Place::Vertex(u) = p {
            d += 1;
            p = self.vprnt[u];
        }
        d
    }

    pub fn with_labels(mut self, labels: Vec<Option<char>>) -> Result<Bigraph> {
        if labels.len() != self.vertices() {
            return Err(Error::Precondition("one label per vertex".into()));
        }
        self.labels = labels;
        Ok(self.canonical())
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl fmt::Display for Bigraph {
    /// `roots=..; sites=..; inner=..; outer=..; vertices=..; prnt=..; rho=..; classes=..`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "roots={}; sites={}; inner={}; outer={}; vertices=",
            self.roots, self.sites, self.inner, self.outer
        )?;
        let verts: Vec<String> = self
            .labels
            .iter()
            .enumerate()
            .map(|(v, l)| match l {
                Some(c) => format!("v{v}:{c}"),
                None => format!("v{v}"),
            })
            .collect();
        f.write_str(&verts.join(","))?;
        let place = |p: &Place| match p {
            Place::Root(r) => format!("r{r}"),
            Place::Vertex(v) => format!("v{v}"),
        };
        let mut prnt: Vec<String> = self
            .vprnt
            .iter()
            .enumerate()
            .map(|(v, p)| format!("v{v}:{}", place(p)))
            .collect();
        prnt.extend(self.sprnt.iter().enumerate().map(|(s, p)| format!("s{s}:{}", place(p))));
        write!(f, "; prnt={}", prnt.join(","))?;
        let mut rho = Vec::new();
        let mut classes = Vec::new();
        let mut port = 0;
        for c in &self.classes {
            let mut members = Vec::new();
            for &v in &c.ports {
                rho.push(format!("p{port}:v{v}"));
                members.push(format!("p{port}"));
                port += 1;
            }
            members.extend(c.inner.iter().map(|x| format!("x{x}")));
            members.extend(c.outer.iter().map(|y| format!("y{y}")));
            classes.push(format!("{{{}}}", members.join(",")));
        }
        write!(f, "; rho={}; classes={}", rho.join(","), classes.join(","))
    }
}

/// Parses the record syntax printed by `Display`. Vertex and port names are
/// free identifiers; roots, sites, inner and outer names are `rN`, `sN`,
/// `xN`, `yN`. Missing fields default to empty.
pub fn parse_bigraph(s: &str) -> Result<Bigraph> {
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut offset = 0;
    for part in s.split(';') {
        let pos = offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::parse(pos, "expected key=value"))?;
        let key = k.trim();
        const KEYS: [&str; 9] = [
            "roots", "sites", "inner", "outer", "vertices", "prnt", "ports", "rho", "classes",
        ];
        if !KEYS.contains(&key) {
            return Err(Error::parse(pos, format!("unknown field {key:?}")));
        }
        fields.insert(key, (pos + k.len() + 1, v.trim()));
    }
    let count = |key: &str| -> Result<usize> {
        match fields.get(key) {
            None => Ok(0),
            Some((pos, v)) => v
                .parse()
                .map_err(|_| Error::parse(*pos, format!("{key} must be a number"))),
        }
    };
    let list = |key: &str| -> Vec<(usize, String)> {
        match fields.get(key) {
            None => Vec::new(),
            Some((pos, v)) => split_top(v)
                .into_iter()
                .map(|t| (*pos, t))
                .filter(|(_, t)| !t.is_empty())
                .collect(),
        }
    };
    let (roots, sites, inner, outer) =
        (count("roots")?, count("sites")?, count("inner")?, count("outer")?);

    let mut vidx: BTreeMap<String, usize> = BTreeMap::new();
    let mut labels = Vec::new();
    for (pos, item) in list("vertices") {
        let (name, label) = match item.split_once(':') {
            Some((n, l)) => {
                let mut cs = l.trim().chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => (n.trim().to_string(), Some(c)),
                    _ => return Err(Error::parse(pos, "labels are single characters")),
                }
            }
            None => (item.clone(), None),
        };
        if vidx.insert(name, labels.len()).is_some() {
            return Err(Error::parse(pos, "duplicate vertex"));
        }
        labels.push(label);
    }
    let index = |name: &str, prefix: char, bound: usize, pos: usize| -> Result<usize> {
        name.strip_prefix(prefix)
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i < bound)
            .ok_or_else(|| Error::parse(pos, format!("bad reference {name:?}")))
    };
    let place = |name: &str, pos: usize| -> Result<Place> {
        if let Some(&v) = vidx.get(name) {
            return Ok(Place::Vertex(v));
        }
        index(name, 'r', roots, pos).map(Place::Root)
    };
    let k = labels.len();
    let mut vprnt = vec![None; k];
    let mut sprnt = vec![None; sites];
    for (pos, item) in list("prnt") {
        let (child, parent) = item
            .split_once(':')
            .ok_or_else(|| Error::parse(pos, "expected child:parent"))?;
        let (child, parent) = (child.trim(), place(parent.trim(), pos)?);
        let slot = if let Some(&v) = vidx.get(child) {
            &mut vprnt[v]
        } else {
            &mut sprnt[index(child, 's', sites, pos)?]
        };
        if slot.replace(parent).is_some() {
            return Err(Error::parse(pos, format!("{child} has two parents")));
        }
    }
    let vprnt: Vec<Place> = vprnt
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::parse(0, "every vertex needs a parent"))?;
    let sprnt: Vec<Place> = sprnt
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::parse(0, "every site needs a parent"))?;

    let mut rho: BTreeMap<String, usize> = BTreeMap::new();
    for (pos, item) in list("rho") {
        let (p, v) = item
            .split_once(':')
            .ok_or_else(|| Error::parse(pos, "expected port:vertex"))?;
        let v = *vidx
            .get(v.trim())
            .ok_or_else(|| Error::parse(pos, format!("unknown vertex {:?}", v.trim())))?;
        if rho.insert(p.trim().to_string(), v).is_some() {
            return Err(Error::parse(pos, "duplicate port"));
        }
    }
    let declared: Vec<(usize, String)> = list("ports");
    if !declared.is_empty() {
        let names: BTreeSet<&String> = declared.iter().map(|(_, n)| n).collect();
        if names != rho.keys().collect() {
            return Err(Error::parse(0, "ports and rho disagree"));
        }
    }
    let mut used = BTreeSet::new();
    let mut classes = Vec::new();
    for (pos, item) in list("classes") {
        let body = item
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::parse(pos, "classes are written {a,b,...}"))?;
        let mut c = Class::default();
        for m in body.split(',').map(str::trim).filter(|m| !m.is_empty()) {
            if !used.insert(m.to_string()) {
                return Err(Error::parse(pos, format!("{m} appears in two classes")));
            }
            if let Some(&v) = rho.get(m) {
                c.ports.push(v);
            } else if m.starts_with('x') {
                c.inner.push(index(m, 'x', inner, pos)?);
            } else {
                c.outer.push(index(m, 'y', outer, pos)?);
            }
        }
        c.normalize();
        classes.push(c);
    }
    if let Some(p) = rho.keys().find(|p| !used.contains(*p)) {
        return Err(Error::parse(0, format!("port {p} is in no class")));
    }
    classes.sort();
    let b = Bigraph { roots, sites, inner, outer, labels, vprnt, sprnt, classes };
    b.validate()?;
    Ok(b.canonical())
}

/// Splits on commas outside braces.
fn split_top(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur.trim().to_string());
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// `g ∘ f`, without canonicalizing.
fn compose_raw(g: &Bigraph, f: &Bigraph) -> Result<Bigraph> {
    if g.inner_iface() != f.outer_iface() {
        return Err(Error::InterfaceMismatch(format!(
            "inner interface {} of the upper bigraph vs outer interface {} of the lower",
            g.inner_iface(),
            f.outer_iface()
        )));
    }
    let kf = f.vertices();
    let lift = |p: Place| match p {
        Place::Vertex(v) => Place::Vertex(v + kf),
        r => r,
    };
    let through = |p: Place| match p {
        Place::Root(r) => lift(g.sprnt[r]),
        v => v,
    };
    let mut labels = f.labels.clone();
    labels.extend(g.labels.iter().copied());
    let mut vprnt: Vec<Place> = f.vprnt.iter().map(|p| through(*p)).collect();
    vprnt.extend(g.vprnt.iter().map(|p| lift(*p)));
    let sprnt = f.sprnt.iter().map(|p| through(*p)).collect();

    let nf = f.classes.len();
    let mut uf = UnionFind::new(nf + g.classes.len());
    let mut upper_of_name = vec![0; g.inner];
    for (i, c) in g.classes.iter().enumerate() {
        for &x in &c.inner {
            upper_of_name[x] = nf + i;
        }
    }
    for (i, c) in f.classes.iter().enumerate() {
        for &y in &c.outer {
            uf.union(i, upper_of_name[y]);
        }
    }
    let mut merged: BTreeMap<usize, Class> = BTreeMap::new();
    for (i, c) in f.classes.iter().enumerate() {
        let e = merged.entry(uf.find(i)).or_default();
        e.ports.extend(&c.ports);
        e.inner.extend(&c.inner);
    }
    for (i, c) in g.classes.iter().enumerate() {
        let e = merged.entry(uf.find(nf + i)).or_default();
        e.ports.extend(c.ports.iter().map(|v| v + kf));
        e.outer.extend(&c.outer);
    }
    let mut classes: Vec<Class> = merged.into_values().collect();
    classes.iter_mut().for_each(Class::normalize);
    classes.sort();
    Ok(Bigraph {
        roots: g.roots,
        sites: f.sites,
        inner: f.inner,
        outer: g.outer,
        labels,
        vprnt,
        sprnt,
        classes,
    })
}

/// `g ∘ f` in canonical form.
pub fn compose_bigraph(g: &Bigraph, f: &Bigraph) -> Result<Bigraph> {
    Ok(compose_raw(g, f)?.canonical())
}

/// Identity and associativity laws over every composable triple of `sample`.
/// Both bracketings of a raw composite number vertices bottom-up, so they are
/// compared directly and canonicalized only when the presentations differ.
pub fn check_composition_laws(sample: &[Bigraph]) -> Vec<Check> {
    let mut unit = Tally::new("identity laws");
    for f in sample {
        let l = compose_bigraph(&Bigraph::identity(f.outer_iface()), f);
        let r = compose_bigraph(f, &Bigraph::identity(f.inner_iface()));
        unit.record(l.as_ref() == Ok(f) && r.as_ref() == Ok(f), || f.to_string());
    }
    let mut by_inner: BTreeMap<Iface, Vec<&Bigraph>> = BTreeMap::new();
    for f in sample {
        by_inner.entry(f.inner_iface()).or_default().push(f);
    }
    let none = Vec::new();
    let above = |f: &Bigraph| by_inner.get(&f.outer_iface()).unwrap_or(&none);
    let mut assoc = Tally::new("composition associative");
    for c in sample {
        for b in above(c) {
            let Ok(bc) = compose_raw(b, c) else {
                assoc.fail_with(format!("{b} ∘ {c} undefined"));
                continue;
            };
            for a in above(b) {
                let lhs = compose_raw(a, b).and_then(|ab| compose_raw(&ab, c));
                let rhs = compose_raw(a, &bc);
                let ok = match (lhs, rhs) {
                    (Ok(l), Ok(r)) => l == r || l.canonical() == r.canonical(),
                    _ => false,
                };
                assoc.record(ok, || format!("({a}, {b}, {c})"));
            }
        }
    }
    vec![unit.finish(), assoc.finish()]
}

/// Coassociativity and both counit laws of the unscaled coproduct on each
/// sampled bigraph. Every coefficient of `Δ` is 1, so the two iterated
/// coproducts are compared as multisets of triples, with factors interned to
/// integers; no coproduct of a factor is retained across morphisms.
pub fn check_coalgebra_streaming(sample: &[Bigraph]) -> Vec<Check> {
    let mut coassoc = Tally::new("coassociativity");
    let mut counit = Tally::new("counit laws");
    for f in sample {
        let run = || -> Result<(bool, bool)> {
            let pairs = n2_bigraph(f)?;
            let mut ids: HashMap<Bigraph, u32> = HashMap::new();
            let mut id = |b: Bigraph| {
                let n = ids.len() as u32;
                *ids.entry(b).or_insert(n)
            };
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (x, y) in &pairs {
                let (xi, yi) = (id(x.clone()), id(y.clone()));
                for (a, b) in n2_bigraph(x)? {
                    left.push((id(a), id(b), yi));
                }
                for (b, c) in n2_bigraph(y)? {
                    right.push((xi, id(b), id(c)));
                }
            }
            left.sort_unstable();
            right.sort_unstable();
            let is_id = |b: &Bigraph| *b == Bigraph::identity(b.inner_iface());
            let mut lhs = FreeVec::zero();
            let mut rhs = FreeVec::zero();
            for (x, y) in &pairs {
                if is_id(x) {
                    lhs.add_term(y.clone(), int(1));
                }
                if is_id(y) {
                    rhs.add_term(x.clone(), int(1));
                }
            }
            let fv = FreeVec::basis(f.clone());
            Ok((left == right, lhs == fv && rhs == fv))
        };
        match run() {
            Ok((a, u)) => {
                coassoc.record(a, || f.to_string());
                counit.record(u, || f.to_string());
            }
            Err(e) => {
                coassoc.fail_with(format!("{f}: {e}"));
                counit.fail_with(format!("{f}: {e}"));
            }
        }
    }
    vec![coassoc.finish(), counit.finish()]
}

/// Bialgebra axioms on the fragment: the streaming coalgebra laws, then
/// multiplicativity of `Δ` and `ε` and `Δ(i₁) = i₁⊗i₁`.
pub fn check_bigraph_bialgebra(cat: &BigraphCategory, size: usize) -> Report {
    let sample = cat.fragment(size);
    let mut report = Report::new("bialgebra", cat.describe_fragment(size));
    for c in check_coalgebra_streaming(&sample) {
        report.push(c);
    }
    let cfg = IncidenceConfig::unscaled(cat);
    for c in check_multiplicative(&cfg, &sample, size) {
        report.push(c);
    }
    report
}

/// `f · g`: ordered disjoint union.
pub fn product_bigraph(f: &Bigraph, g: &Bigraph) -> Bigraph {
    let kf = f.vertices();
    let shift = |p: Place| match p {
        Place::Vertex(v) => Place::Vertex(v + kf),
        Place::Root(r) => Place::Root(r + f.roots),
    };
    let mut labels = f.labels.clone();
    labels.extend(g.labels.iter().copied());
    let mut vprnt = f.vprnt.clone();
    vprnt.extend(g.vprnt.iter().map(|p| shift(*p)));
    let mut sprnt = f.sprnt.clone();
    sprnt.extend(g.sprnt.iter().map(|p| shift(*p)));
    let mut classes = f.classes.clone();
    classes.extend(g.classes.iter().map(|c| Class {
        ports: c.ports.iter().map(|v| v + kf).collect(),
        inner: c.inner.iter().map(|x| x + f.inner).collect(),
        outer: c.outer.iter().map(|y| y + f.outer).collect(),
    }));
    classes.sort();
    Bigraph {
        roots: f.roots + g.roots,
        sites: f.sites + g.sites,
        inner: f.inner + g.inner,
        outer: f.outer + g.outer,
        labels,
        vprnt,
        sprnt,
        classes,
    }
    .canonical()
}

/// All set partitions of `0..n` as block lists, blocks in order of least element.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    fn go(i: usize, blocks: usize, assign: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == assign.len() {
            let mut bs = vec![Vec::new(); blocks];
            for (e, &b) in assign.iter().enumerate() {
                bs[b].push(e);
            }
            out.push(bs);
            return;
        }
        for b in 0..=blocks {
            assign[i] = b;
            go(i + 1, blocks.max(b + 1), assign, out);
        }
    }
    go(0, 0, &mut assign, &mut out);
    out
}

/// Edge sets of a connected simple bipartite graph on `a + b` blocks using
/// every block.
fn connected_bipartite(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << all.len()) {
        let edges: Vec<(usize, usize)> = all
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        if edges.len() + 1 < a + b {
            continue;
        }
        let mut uf = UnionFind::new(a + b);
        for &(i, j) in &edges {
            uf.union(i, a + j);
        }
        let r = uf.find(0);
        if (0..a + b).all(|x| uf.find(x) == r) {
            out.push(edges);
        }
    }
    out
}

/// An element of a link class during a cut: a port at a vertex, or a name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Elt {
    Port(usize),
    Inner(usize),
    Outer(usize),
}

/// How one class of `f` is split by a cut.
#[derive(Clone, Debug)]
struct ClassCut {
    lower: Vec<Vec<Elt>>,
    upper: Vec<Vec<Elt>>,
    edges: Vec<(usize, usize)>,
}

fn class_cuts(lower: &[Elt], upper: &[Elt]) -> Vec<ClassCut> {
    let pick = |items: &[Elt], blocks: &[Vec<usize>]| -> Vec<Vec<Elt>> {
        blocks.iter().map(|b| b.iter().map(|&i| items[i]).collect()).collect()
    };
    if upper.is_empty() || lower.is_empty() {
        return vec![ClassCut {
            lower: if lower.is_empty() { vec![] } else { vec![lower.to_vec()] },
            upper: if upper.is_empty() { vec![] } else { vec![upper.to_vec()] },
            edges: Vec::new(),
        }];
    }
    let mut out = Vec::new();
    for pl in set_partitions(lower.len()) {
        for pu in set_partitions(upper.len()) {
            for edges in connected_bipartite(pl.len(), pu.len()) {
                out.push(ClassCut { lower: pick(lower, &pl), upper: pick(upper, &pu), edges });
            }
        }
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for opts in choices {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for o in opts {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// The place part of a cut: lower vertex set and the ordered middle roots,
/// each a block of items (lower vertices or sites) with a common upper parent.
struct PlaceCut {
    upper: Vec<bool>,
    blocks: Vec<(Place, Vec<Place>)>,
}

/// Items are written as `Place::Vertex(v)` for vertices and `Place::Root(s)`
/// for site `s`.
fn place_cuts(f: &Bigraph) -> Vec<PlaceCut> {
    let k = f.vertices();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << k) {
        let upper: Vec<bool> = (0..k).map(|v| mask >> v & 1 == 1).collect();
        let closed = (0..k).all(|v| {
            !upper[v] || matches!(f.vprnt[v], Place::Root(_))
                || matches!(f.vprnt[v], Place::Vertex(p) if upper[p])
        });
        if !closed {
            continue;
        }
        let in_upper = |p: &Place| match p {
            Place::Root(_) => true,
            Place::Vertex(v) => upper[*v],
        };
        let mut hanging: BTreeMap<Place, Vec<Place>> = BTreeMap::new();
        for v in 0..k {
            if !upper[v] && in_upper(&f.vprnt[v]) {
                hanging.entry(f.vprnt[v]).or_default().push(Place::Vertex(v));
            }
        }
        for (s, p) in f.sprnt.iter().enumerate() {
            if in_upper(p) {
                hanging.entry(*p).or_default().push(Place::Root(s));
            }
        }
        let per_parent: Vec<Vec<Vec<(Place, Vec<Place>)>>> = hanging
            .iter()
            .map(|(p, items)| {
                set_partitions(items.len())
                    .into_iter()
                    .map(|bs| {
                        bs.into_iter()
                            .map(|b| (*p, b.into_iter().map(|i| items[i]).collect()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        for choice in cartesian(&per_parent) {
            let blocks: Vec<(Place, Vec<Place>)> = choice.into_iter().flatten().collect();
            for order in permutations(blocks.len()) {
                out.push(PlaceCut {
                    upper: upper.clone(),
                    blocks: order.iter().map(|&i| blocks[i].clone()).collect(),
                });
            }
        }
    }
    out
}

/// All reduced factorizations `(g, h)` with `g ∘ h = f`, up to support
/// equivalence of each factor.
pub fn n2_bigraph(f: &Bigraph) -> Result<Vec<(Bigraph, Bigraph)>> {
    let k = f.vertices();
    let mut out = BTreeSet::new();
    for pc in place_cuts(f) {
        let upper = &pc.upper;
        // vertex renumbering inside each factor
        let mut lo_idx = vec![usize::MAX; k];
        let mut up_idx = vec![usize::MAX; k];
        let (mut nl, mut nu) = (0, 0);
        for v in 0..k {
            if upper[v] {
                up_idx[v] = nu;
                nu += 1;
            } else {
                lo_idx[v] = nl;
                nl += 1;
            }
        }
        let mut middle_of: BTreeMap<Place, usize> = BTreeMap::new();
        for (i, (_, items)) in pc.blocks.iter().enumerate() {
            for it in items {
                middle_of.insert(*it, i);
            }
        }
        let lower_place = |p: Place, item: Place| -> Place {
            match p {
                Place::Vertex(u) if !upper[u] => Place::Vertex(lo_idx[u]),
                _ => Place::Root(middle_of[&item]),
            }
        };
        let upper_place = |p: Place| -> Place {
            match p {
                Place::Vertex(u) => Place::Vertex(up_idx[u]),
                r => r,
            }
        };
        let mut h_vprnt = vec![Place::Root(0); nl];
        let mut h_labels = vec![None; nl];
        let mut g_vprnt = vec![Place::Root(0); nu];
        let mut g_labels = vec![None; nu];
        for v in 0..k {
            if upper[v] {
                g_vprnt[up_idx[v]] = upper_place(f.vprnt[v]);
                g_labels[up_idx[v]] = f.labels[v];
            } else {
                h_vprnt[lo_idx[v]] = lower_place(f.vprnt[v], Place::Vertex(v));
                h_labels[lo_idx[v]] = f.labels[v];
            }
        }
        let h_sprnt: Vec<Place> = f
            .sprnt
            .iter()
            .enumerate()
            .map(|(s, p)| lower_place(*p, Place::Root(s)))
            .collect();
        let g_sprnt: Vec<Place> = pc.blocks.iter().map(|(p, _)| upper_place(*p)).collect();

        let per_class: Vec<Vec<ClassCut>> = f
            .classes
            .iter()
            .map(|c| {
                let mut lower = Vec::new();
                let mut up = Vec::new();
                for &v in &c.ports {
                    if upper[v] {
                        up.push(Elt::Port(up_idx[v]));
                    } else {
                        lower.push(Elt::Port(lo_idx[v]));
                    }
                }
                lower.extend(c.inner.iter().map(|&x| Elt::Inner(x)));
                up.extend(c.outer.iter().map(|&y| Elt::Outer(y)));
                class_cuts(&lower, &up)
            })
            .collect();
        for cuts in cartesian(&per_class) {
            let edges: usize = cuts.iter().map(|c| c.edges.len()).sum();
            for order in permutations(edges) {
                let mut name = order.into_iter();
                let mut h_classes = Vec::new();
                let mut g_classes = Vec::new();
                for cut in &cuts {
                    let mut lower: Vec<Class> = cut.lower.iter().map(|b| to_class(b)).collect();
                    let mut up: Vec<Class> = cut.upper.iter().map(|b| to_class(b)).collect();
                    for &(i, j) in &cut.edges {
                        let y = name.next().expect("one name per edge");
                        lower[i].outer.push(y);
                        up[j].inner.push(y);
                    }
                    h_classes.extend(lower);
                    g_classes.extend(up);
                }
                h_classes.iter_mut().for_each(Class::normalize);
                g_classes.iter_mut().for_each(Class::normalize);
                h_classes.sort();
                g_classes.sort();
                let h = Bigraph {
                    roots: pc.blocks.len(),
                    sites: f.sites,
                    inner: f.inner,
                    outer: edges,
                    labels: h_labels.clone(),
                    vprnt: h_vprnt.clone(),
                    sprnt: h_sprnt.clone(),
                    classes: h_classes,
                };
                let g = Bigraph {
                    roots: f.roots,
                    sites: pc.blocks.len(),
                    inner: edges,
                    outer: f.outer,
                    labels: g_labels.clone(),
                    vprnt: g_vprnt.clone(),
                    sprnt: g_sprnt.clone(),
                    classes: g_classes,
                };
                if h.validate().is_err() || g.validate().is_err() {
                    continue;
                }
                out.insert((g.canonical(), h.canonical()));
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn to_class(block: &[Elt]) -> Class {
    let mut c = Class::default();
    for e in block {
        match *e {
            Elt::Port(v) => c.ports.push(v),
            Elt::Inner(x) => c.inner.push(x),
            Elt::Outer(y) => c.outer.push(y),
        }
    }
    c
}

/// Whether the factorization `g ∘ h` obeys the reduction rule: no two middle
/// names share a class in `h` and a class in `g`.
pub fn is_reduced(g: &Bigraph, h: &Bigraph) -> bool {
    let class_of = |classes: &[Class], n: usize, outer: bool| -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            for &y in if outer { &c.outer } else { &c.inner } {
                out[y] = i;
            }
        }
        out
    };
    let below = class_of(&h.classes, h.outer, true);
    let above = class_of(&g.classes, g.inner, false);
    let pairs: BTreeSet<(usize, usize)> = below.iter().copied().zip(above.iter().copied()).collect();
    pairs.len() == h.outer
}

/// Fragment bounds besides the vertex count: total ports, and the number of
/// components (places plus names) of each interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BigraphBounds {
    pub ports: usize,
    pub interface: usize,
}

impl Default for BigraphBounds {
    fn default() -> Self {
        BigraphBounds { ports: 2, interface: 2 }
    }
}

impl BigraphBounds {
    /// All interfaces with at most `interface` components.
    pub fn interfaces(&self) -> Vec<Iface> {
        (0..=self.interface)
            .flat_map(|p| (0..=self.interface - p).map(move |n| Iface::new(p, n)))
            .collect()
    }

    pub fn admits(&self, i: Iface) -> bool {
        i.places + i.names <= self.interface
    }
}

/// Every unlabelled bigraph with exactly the given counts, canonical and
/// without duplicates.
pub fn bigraphs_with(
    vertices: usize,
    ports: usize,
    outer: Iface,
    inner: Iface,
) -> Vec<Bigraph> {
    let (n, m) = (outer.places, inner.places);
    let mut out = BTreeSet::new();
    let parents: Vec<Place> = (0..n)
        .map(Place::Root)
        .chain((0..vertices).map(Place::Vertex))
        .collect();
    if parents.is_empty() && vertices + m > 0 {
        return Vec::new();
    }
    let slots = vertices + m;
    let total = parents.len().pow(slots as u32);
    let mut places = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut assign = Vec::with_capacity(slots);
        for _ in 0..slots {
            assign.push(parents[c % parents.len()]);
            c /= parents.len();
        }
        if assign[..vertices]
            .iter()
            .enumerate()
            .any(|(v, p)| *p == Place::Vertex(v))
        {
            continue;
        }
        let b = Bigraph {
            roots: n,
            sites: m,
            inner: 0,
            outer: 0,
            labels: vec![None; vertices],
            vprnt: assign[..vertices].to_vec(),
            sprnt: assign[vertices..].to_vec(),
            classes: Vec::new(),
        };
        if b.validate().is_ok() {
            places.push(b);
        }
    }
    let port_maps = multisets(vertices, ports);
    let npoints = ports + inner.names + outer.names;
    let partitions = set_partitions(npoints);
    for place in &places {
        for pm in &port_maps {
            let point = |i: usize| -> Elt {
                if i < ports {
                    Elt::Port(pm[i])
                } else if i < ports + inner.names {
                    Elt::Inner(i - ports)
                } else {
                    Elt::Outer(i - ports - inner.names)
                }
            };
            for part in &partitions {
                let mut classes: Vec<Class> = part
                    .iter()
                    .map(|b| {
                        let mut c = to_class(&b.iter().map(|&i| point(i)).collect::<Vec<_>>());
                        c.normalize();
                        c
                    })
                    .collect();
                classes.sort();
                let b = Bigraph {
                    inner: inner.names,
                    outer: outer.names,
                    classes,
                    ..place.clone()
                };
                if b.validate().is_ok() {
                    out.insert(b.canonical());
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Non-decreasing sequences of length `len` over `0..k`.
fn multisets(k: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rest in multisets(k, len - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for v in lo..k {
            let mut s = rest.clone();
            s.push(v);
            out.push(s);
        }
    }
    out
}

/// The toy bigraph category. `fragment(k)`: at most `k` vertices, with the
/// port and interface bounds of `bounds`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BigraphCategory {
    pub bounds: BigraphBounds,
}

impl BigraphCategory {
    /// Candidate factors for the brute-force oracle: every bigraph with at
    /// most as many vertices and ports as `f`, with interfaces up to the
    /// largest middle interface a reduced factorization of `f` can have.
    pub fn oracle_candidates(&self, f: &Bigraph) -> Vec<Bigraph> {
        let k = f.vertices();
        let p = f.ports();
        let max_places = (k + f.sites).max(f.roots);
        // a reduced cut has at most |lower| * |upper| names per class
        let max_names = f
            .classes
            .iter()
            .map(|c| {
                let half = (c.size() + 1) / 2;
                half * (c.size() - half)
            })
            .sum::<usize>()
            .max(f.inner)
            .max(f.outer);
        let mut out = Vec::new();
        for v in 0..=k {
            for q in 0..=p {
                for mid_p in 0..=max_places {
                    for mid_n in 0..=max_names {
                        let mid = Iface::new(mid_p, mid_n);
                        out.extend(bigraphs_with(v, q, mid, f.inner_iface()));
                        out.extend(bigraphs_with(v, q, f.outer_iface(), mid));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Brute-force reduced factorizations over [`Self::oracle_candidates`].
    /// Pairs are only composed when their vertex and port counts add up to
    /// those of `f`, which every composite satisfies.
    pub fn oracle_n2(&self, f: &Bigraph) -> Vec<(Bigraph, Bigraph)> {
        let candidates = self.oracle_candidates(f);
        let mut lower: HashMap<(Iface, usize, usize), Vec<&Bigraph>> = HashMap::new();
        for b in candidates.iter().filter(|b| b.inner_iface() == f.inner_iface()) {
            lower
                .entry((b.outer_iface(), b.vertices(), b.ports()))
                .or_default()
                .push(b);
        }
        let mut out = BTreeSet::new();
        for a in candidates.iter().filter(|a| a.outer_iface() == f.outer_iface()) {
            let (Some(v), Some(p)) = (
                f.vertices().checked_sub(a.vertices()),
                f.ports().checked_sub(a.ports()),
            ) else {
                continue;
            };
            for b in lower.get(&(a.inner_iface(), v, p)).into_iter().flatten() {
                if compose_bigraph(a, b).is_ok_and(|c| c == *f) && is_reduced(a, b) {
                    out.insert((a.clone(), (*b).clone()));
                }
            }
        }
        out.into_iter().collect()
    }
}

impl Category for BigraphCategory {
    type Obj = Iface;
    type Mor = Bigraph;

    fn source(&self, f: &Bigraph) -> Iface {
        f.inner_iface()
    }

    fn target(&self, f: &Bigraph) -> Iface {
        f.outer_iface()
    }

    fn identity(&self, x: &Iface) -> Bigraph {
        Bigraph::identity(*x)
    }

    fn compose(&self, a: &Bigraph, b: &Bigraph) -> Result<Bigraph> {
        compose_bigraph(a, b).map_err(|_| non_composable(self, a, b))
    }

    fn n2(&self, f: &Bigraph) -> Result<Vec<(Bigraph, Bigraph)>> {
        n2_bigraph(f)
    }

    fn fragment(&self, size: usize) -> Vec<Bigraph> {
        let b = self.bounds;
        let ifaces = b.interfaces();
        let mut out = Vec::new();
        for v in 0..=size {
            for p in 0..=b.ports {
                for outer in &ifaces {
                    for inner in &ifaces {
                        out.extend(bigraphs_with(v, p, *outer, *inner));
                    }
                }
            }
        }
        out
    }

    fn in_fragment(&self, f: &Bigraph, size: usize) -> bool {
        let b = self.bounds;
        f.vertices() <= size
            && f.ports() <= b.ports
            && b.admits(f.inner_iface())
            && b.admits(f.outer_iface())
            && f.labels.iter().all(Option::is_none)
    }

    fn describe_fragment(&self, size: usize) -> String {
        let b = self.bounds;
        format!(
            "bigraphs with <= {size} vertices, <= {} ports, interfaces with <= {} places and names in total",
            b.ports, b.interface
        )
    }
}

impl Monoidal for BigraphCategory {
    fn unit(&self) -> Iface {
        Iface::new(0, 0)
    }

    fn oproduct(&self, x: &Iface, y: &Iface) -> Iface {
        Iface::new(x.places + y.places, x.names + y.names)
    }

    fn mproduct(&self, f: &Bigraph, g: &Bigraph) -> Bigraph {
        product_bigraph(f, g)
    }

    fn object_inverse(&self, x: &Iface) -> Option<Iface> {
        (*x == Iface::new(0, 0)).then_some(*x)
    }

    fn objects_form_group(&self) -> bool {
        false
    }
}

/// A reaction rule on labelled bigraphs: an `a`-vertex and a `b`-vertex that
/// are siblings directly under the same root merge into one `c`-vertex
/// carrying the children and ports of both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReactionRule {
    pub a: char,
    pub b: char,
    pub c: char,
}

impl Default for ReactionRule {
    fn default() -> Self {
        ReactionRule { a: 'A', b: 'B', c: 'C' }
    }
}

/// `r(g)`: rewrites the first root-level match, or returns `g` unchanged.
pub fn apply_rule(r: &ReactionRule, g: &Bigraph) -> Bigraph {
    let k = g.vertices();
    let found = (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .find(|&(x, y)| {
            x != y
                && g.labels[x] == Some(r.a)
                && g.labels[y] == Some(r.b)
                && g.vprnt[x] == g.vprnt[y]
                && matches!(g.vprnt[x], Place::Root(_))
        });
    let Some((x, y)) = found else {
        return g.clone();
    };
    // y is deleted; indices above it shift down
    let re = |v: usize| if v == y { x } else { v };
    let idx = |v: usize| {
        let v = re(v);
        if v > y {
            v - 1
        } else {
            v
        }
    };
    let place = |p: Place| match p {
        Place::Vertex(v) => Place::Vertex(idx(v)),
        r => r,
    };
    let mut labels = Vec::new();
    let mut vprnt = Vec::new();
    for v in (0..k).filter(|&v| v != y) {
        labels.push(if v == x { Some(r.c) } else { g.labels[v] });
        vprnt.push(place(g.vprnt[v]));
    }
    let classes = g
        .classes
        .iter()
        .map(|c| {
            let mut c = Class {
                ports: c.ports.iter().map(|&v| idx(v)).collect(),
                ..c.clone()
            };
            c.normalize();
            c
        })
        .collect();
    Bigraph {
        labels,
        vprnt,
        sprnt: g.sprnt.iter().map(|p| place(*p)).collect(),
        classes,
        ..g.clone()
    }
    .canonical()
}

/// The blocked-reaction summands of `(id ⊗ r∘M∘)Δ(g)`: for each `(a, b)` in
/// `Δ(g)` and each merge context `M_i` (`i ≤ depth`) composable after `b`,
/// the term `a ⊗ r(M_i ∘ b)` whenever `r` changes `M_i ∘ b`.
pub fn blocked_reactions(r: &ReactionRule, g: &Bigraph, depth: usize) -> Result<FreeVec2<Bigraph>> {
    let mut out = FreeVec::zero();
    for (a, b) in n2_bigraph(g)? {
        if b.roots == 0 || b.roots > depth {
            continue;
        }
        let m = Bigraph::merge(b.roots, b.outer)?;
        let mb = compose_bigraph(&m, &b)?;
        let rb = apply_rule(r, &mb);
        if rb != mb {
            out.add_term(Pair(a, rb), num::One::one());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::brute_force_n2;

    fn bg(s: &str) -> Bigraph {
        parse_bigraph(s).unwrap()
    }

    fn one_vertex() -> Bigraph {
        bg("roots=1; vertices=v; prnt=v:r0")
    }

    #[test]
    fn paper_shaped_example_parses() {
        let b = bg("roots=1; sites=2; inner=2; outer=0; vertices=v0; \
                    prnt=v0:r0,s0:r0,s1:v0; rho=p0:v0,p1:v0; classes={x0,p0},{x1,p1}");
        assert_eq!(b.inner_iface(), Iface::new(2, 2));
        assert_eq!(b.outer_iface(), Iface::new(1, 0));
        assert_eq!(b.ports(), 2);
        assert_eq!(parse_bigraph(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn invalid_literals_rejected() {
        // a root with no children
        assert!(parse_bigraph("roots=2; vertices=v; prnt=v:r0").is_err());
        // a class inside the inner names
        assert!(parse_bigraph("inner=2; classes={x0,x1}").is_err());
        // sites out of order
        assert!(parse_bigraph("roots=2; sites=2; prnt=s0:r1,s1:r0").is_err());
    }

    #[test]
    fn identities_and_generators() {
        let i01 = Bigraph::identity(Iface::new(0, 1));
        let i10 = Bigraph::identity(Iface::new(1, 0));
        assert_eq!(product_bigraph(&i10, &i01), Bigraph::identity(Iface::new(1, 1)));
        let f = one_vertex();
        let cat = BigraphCategory::default();
        assert_eq!(compose_bigraph(&f, &cat.identity(&cat.source(&f))).unwrap(), f);
        assert_eq!(compose_bigraph(&cat.identity(&cat.target(&f)), &f).unwrap(), f);
    }

    #[test]
    fn stacking_two_vertices_gives_a_chain() {
        let upper = bg("roots=1; sites=1; vertices=v; prnt=v:r0,s0:v");
        let chain = compose_bigraph(&upper, &one_vertex()).unwrap();
        assert_eq!(chain, bg("roots=1; vertices=a,b; prnt=a:r0,b:a"));
    }

    #[test]
    fn middle_name_elimination() {
        let lower = bg("roots=1; outer=1; vertices=v; prnt=v:r0; rho=p:v; classes={p,y0}");
        let upper = bg("roots=1; sites=1; inner=1; vertices=w; prnt=w:r0,s0:r0; rho=q:w; classes={x0,q}");
        let c = compose_bigraph(&upper, &lower).unwrap();
        assert_eq!(c, bg("roots=1; vertices=v,w; prnt=v:r0,w:r0; rho=p:v,q:w; classes={p,q}"));
    }

    #[test]
    fn canonical_form_invariance() {
        let a = bg("roots=1; vertices=a,b; prnt=a:r0,b:r0; rho=p:a; ports=p; outer=1; classes={p,y0}");
        let b = bg("roots=1; vertices=b,a; prnt=a:r0,b:r0; rho=p:b; outer=1; classes={p,y0}");
        assert_eq!(a.canonical_form(), b.canonical_form());
        let c = bg("roots=1; vertices=a,b; prnt=a:r0,b:a; rho=p:a; outer=1; classes={p,y0}");
        let d = bg("roots=1; vertices=a,b; prnt=a:r0,b:a; rho=p:b; outer=1; classes={p,y0}");
        assert_ne!(c.canonical_form(), d.canonical_form());
    }

    #[test]
    fn canonical_form_agrees_with_isomorphism_search() {
        let cat = BigraphCategory::default();
        let frag = cat.fragment(2);
        let mut by_iface: BTreeMap<(Iface, Iface, usize), Vec<&Bigraph>> = BTreeMap::new();
        for b in &frag {
            by_iface.entry((b.inner_iface(), b.outer_iface(), b.vertices())).or_default().push(b);
        }
        for group in by_iface.values() {
            for (i, a) in group.iter().enumerate() {
                for b in &group[i..] {
                    assert_eq!(a == b, a.isomorphic_by_search(b), "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn identity_factorizations_include_crossings() {
        let id = Bigraph::identity(Iface::new(0, 2));
        let pairs = n2_bigraph(&id).unwrap();
        let cross = bg("inner=2; outer=2; classes={x0,y1},{x1,y0}");
        assert!(pairs.contains(&(id.clone(), id.clone())));
        assert!(pairs.contains(&(cross.clone(), cross)));
    }

    #[test]
    fn single_vertex_factorizations_match_oracle() {
        let cat = BigraphCategory::default();
        let f = one_vertex();
        let fast: BTreeSet<_> = n2_bigraph(&f).unwrap().into_iter().collect();
        let slow: BTreeSet<_> = cat.oracle_n2(&f).into_iter().collect();
        assert_eq!(fast, slow);
        let cands = cat.oracle_candidates(&f);
        assert_eq!(brute_force_n2(&cat, &cands, &f).len(), fast.len());
    }

    #[test]
    fn reactions() {
        let rule = ReactionRule::default();
        let siblings = bg("roots=1; vertices=a:A,b:B; prnt=a:r0,b:r0");
        let merged = bg("roots=1; vertices=c:C; prnt=c:r0");
        assert_eq!(apply_rule(&rule, &siblings), merged);
        let nested = bg("roots=1; vertices=a:A,x,b:B; prnt=a:r0,x:r0,b:x");
        assert_eq!(apply_rule(&rule, &nested), nested);
        let plain = one_vertex();
        assert!(blocked_reactions(&rule, &plain, 3).unwrap().is_empty());

        let direct = blocked_reactions(&rule, &siblings, 3).unwrap();
        let id = Bigraph::identity(Iface::new(1, 0));
        assert_eq!(direct.coeff(&Pair(id, merged)), num::One::one());

        let blocked = blocked_reactions(&rule, &nested, 3).unwrap();
        assert!(!blocked.is_empty());
        // the cut above the A vertex and the B vertex, in both middle orders
        let reacted = bg("roots=1; vertices=c:C; prnt=c:r0");
        let expected = FreeVec::from_terms(
            [
                "roots=1; sites=2; vertices=x; prnt=x:r0,s0:r0,s1:x",
                "roots=1; sites=2; vertices=x; prnt=x:r0,s0:x,s1:r0",
            ]
            .map(|u| (Pair(bg(u), reacted.clone()), num::One::one())),
        );
        assert_eq!(blocked, expected);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn three_vertex_samples() -> Vec<Bigraph> {
        let mut out = bigraphs_with(3, 2, Iface::new(1, 1), Iface::new(1, 0));
        out.extend(bigraphs_with(3, 1, Iface::new(2, 0), Iface::new(1, 1)));
        out
    }

    proptest! {
        #[test]
        fn canonical_is_invariant_under_renumbering(seed in 0usize..10_000, shuffle in 0usize..6) {
            let samples = three_vertex_samples();
            let b = &samples[seed % samples.len()];
            let mut perm: Vec<usize> = (0..b.vertices()).collect();
            for _ in 0..shuffle {
                next_permutation(&mut perm);
            }
            prop_assert_eq!(b.permuted(&perm).canonical(), b.clone());
        }
    }
}
