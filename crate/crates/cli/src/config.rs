//! Instance configuration files.
//!
//! A config is a TOML document with a `kind` tag and a kind-specific payload:
//!
//! ```toml
//! kind = "xmod"
//! g = "S3"
//! h = { names = ["e", "(012)", "(021)"], table = [[...], ...] }
//! tau = ["e", "(012)", "(021)"]
//! alpha = [["e", "(012)", "(021)"], ...]   # alpha[g][h], rows in G order
//! ```
//!
//! Groups are written as a preset (`"Z/4"`, `"S3"`, `"A4"`, `"trivial"`), as
//! a permutation group `{ degree = 3, generators = [[1, 0, 2]] }`, or as a
//! multiplication table `{ names = [...], table = [[name, ...], ...] }`.
//! Optional top-level keys: `max_size` (fragment bound) and `scale`
//! (coproduct scale, a rational such as `"1/3"`).

use std::collections::BTreeSet;
use std::fmt;

use incidence_core::bigraph::{BigraphBounds, BigraphCategory};
use incidence_core::exactlin::Rational;
use incidence_core::forest::ForestCategory;
use incidence_core::group::FiniteMonoid;
use incidence_core::quiver::{build_quiver_instance, QuiverCategory, QuiverSpec};
use incidence_core::relmonoid::{
    FreeRel, FreeRelation, MonexCategory, RelCategory, TableRelation,
};
use incidence_core::skew::SkewCategory;
use incidence_core::twogroup::{
    aut_two_group, normal_subgroup_xmod, two_group_from_xmod, validate_crossed_module, TwoGroup,
};
use serde::Deserialize;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<incidence_core::error::Error> for ConfigError {
    fn from(e: incidence_core::error::Error) -> Self {
        ConfigError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Deserialize)]
pub struct InstanceConfig {
    #[serde(flatten)]
    pub spec: InstanceSpec,
    pub max_size: Option<usize>,
    pub scale: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceSpec {
    Relmonoid {
        monoid: Option<GroupSpec>,
        relation: RelationSpec,
    },
    Monex {
        #[serde(default = "default_alphabet")]
        alphabet: String,
        #[serde(default)]
        relation: WordRelation,
    },
    Skew {},
    Forest {
        max_interface: Option<usize>,
    },
    Bigraph {
        ports: Option<usize>,
        interface: Option<usize>,
    },
    Quiver {
        group: GroupSpec,
        z: Option<String>,
    },
    Xmod {
        g: GroupSpec,
        h: GroupSpec,
        tau: Vec<String>,
        alpha: Vec<Vec<String>>,
    },
    Normal {
        g: GroupSpec,
        n: Vec<String>,
    },
    Aut {
        g: GroupSpec,
    },
}

fn default_alphabet() -> String {
    "xy".into()
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Preset(String),
    Perms { degree: usize, generators: Vec<Vec<usize>> },
    Table { names: Vec<String>, table: Vec<Vec<String>> },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RelationSpec {
    /// `"equality"`.
    Named(String),
    Pairs { pairs: Vec<(String, String)> },
    Covers { covers: Vec<(String, String)> },
    /// `{0..n-1}` ordered by `≤` with `max` as product.
    Chain { max_chain: usize },
}

#[derive(Debug, Default, Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
pub enum WordRelation {
    #[default]
    EqualLength,
    Equality,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteMonoid> {
        match self {
            GroupSpec::Preset(name) => preset_group(name),
            GroupSpec::Perms { degree, generators } => {
                Ok(FiniteMonoid::from_permutations(*degree, generators)?)
            }
            GroupSpec::Table { names, table } => {
                let index = |s: &String| {
                    names
                        .iter()
                        .position(|n| n == s)
                        .ok_or_else(|| ConfigError(format!("unknown element {s:?} in table")))
                };
                let rows = table
                    .iter()
                    .map(|row| row.iter().map(index).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(FiniteMonoid::new(names.clone(), rows)?)
            }
        }
    }
}

fn preset_group(name: &str) -> Result<FiniteMonoid> {
    let n = name.trim();
    let order = |s: &str| {
        s.trim_start_matches('_')
            .parse::<usize>()
            .ok()
            .filter(|&k| k > 0 && k <= 7)
            .ok_or_else(|| ConfigError(format!("bad group order in {n:?}")))
    };
    if n == "trivial" || n == "1" {
        Ok(FiniteMonoid::trivial())
    } else if let Some(k) = n.strip_prefix("Z/") {
        Ok(FiniteMonoid::cyclic(order(k)?))
    } else if let Some(k) = n.strip_prefix('S') {
        Ok(FiniteMonoid::symmetric(order(k)?))
    } else if let Some(k) = n.strip_prefix('A') {
        Ok(FiniteMonoid::alternating(order(k)?))
    } else {
        Err(ConfigError(format!(
            "unknown group {n:?}; use Z/n, Sn, An, trivial, a permutation group or a table"
        )))
    }
}

fn element(g: &FiniteMonoid, name: &str, what: &str) -> Result<usize> {
    g.index_of(name.trim())
        .ok_or_else(|| ConfigError(format!("{name:?} is not an element of {what}")))
}

/// A constructed instance, ready for the drivers.
pub enum Instance {
    Relmonoid(RelCategory<TableRelation>),
    Monex(MonexCategory),
    Skew(SkewCategory),
    Forest(ForestCategory),
    Bigraph(BigraphCategory),
    Quiver(QuiverCategory),
    TwoGroup(TwoGroup),
}

pub struct Loaded {
    pub kind: &'static str,
    pub instance: Instance,
    pub max_size: Option<usize>,
    pub scale: Option<Rational>,
}

pub fn parse_config(text: &str) -> Result<InstanceConfig> {
    toml::from_str(text).map_err(|e| ConfigError(format!("invalid config: {e}")))
}

pub fn load(text: &str) -> Result<Loaded> {
    let cfg = parse_config(text)?;
    if cfg.max_size == Some(0) {
        return Err(ConfigError("max_size must be positive".into()));
    }
    let scale = match &cfg.scale {
        None => None,
        Some(s) => {
            let q: Rational = s
                .trim()
                .parse()
                .map_err(|_| ConfigError(format!("scale {s:?} is not a rational number")))?;
            if q == Rational::from_integer(0.into()) {
                return Err(ConfigError("scale must be nonzero".into()));
            }
            Some(q)
        }
    };
    let (kind, instance) = build(&cfg.spec)?;
    Ok(Loaded { kind, instance, max_size: cfg.max_size, scale })
}

fn build(spec: &InstanceSpec) -> Result<(&'static str, Instance)> {
    Ok(match spec {
        InstanceSpec::Relmonoid { monoid, relation } => {
            let rel = match relation {
                RelationSpec::Chain { max_chain } => {
                    if monoid.is_some() {
                        return Err(ConfigError("max_chain defines its own monoid".into()));
                    }
                    if *max_chain == 0 {
                        return Err(ConfigError("max_chain must be positive".into()));
                    }
                    TableRelation::max_chain(*max_chain)
                }
                other => {
                    let m = monoid
                        .as_ref()
                        .ok_or_else(|| ConfigError("relmonoid needs a monoid".into()))?
                        .build()?;
                    let pairs = |ps: &[(String, String)]| -> Result<Vec<(usize, usize)>> {
                        ps.iter()
                            .map(|(a, b)| Ok((element(&m, a, "M")?, element(&m, b, "M")?)))
                            .collect()
                    };
                    match other {
                        RelationSpec::Named(n) if n == "equality" => TableRelation::equality(m.clone()),
                        RelationSpec::Named(n) => {
                            return Err(ConfigError(format!("unknown relation {n:?}")))
                        }
                        RelationSpec::Pairs { pairs: ps } => TableRelation::new(m.clone(), &pairs(ps)?)?,
                        RelationSpec::Covers { covers } => {
                            TableRelation::from_covers(m.clone(), &pairs(covers)?)?
                        }
                        RelationSpec::Chain { .. } => unreachable!(),
                    }
                }
            };
            ("relmonoid", Instance::Relmonoid(RelCategory::new(rel)))
        }
        InstanceSpec::Monex { alphabet, relation } => {
            let kind = match relation {
                WordRelation::EqualLength => FreeRel::EqualLength,
                WordRelation::Equality => FreeRel::Equality,
            };
            let rel = FreeRelation::new(alphabet.chars().collect(), kind)?;
            ("monex", Instance::Monex(RelCategory::new(rel)))
        }
        InstanceSpec::Skew {} => ("skew", Instance::Skew(SkewCategory)),
        InstanceSpec::Forest { max_interface } => {
            let mut cat = ForestCategory::default();
            if let Some(m) = max_interface {
                cat.max_interface = *m;
            }
            ("forest", Instance::Forest(cat))
        }
        InstanceSpec::Bigraph { ports, interface } => {
            let mut bounds = BigraphBounds::default();
            if let Some(p) = ports {
                bounds.ports = *p;
            }
            if let Some(i) = interface {
                bounds.interface = *i;
            }
            ("bigraph", Instance::Bigraph(BigraphCategory { bounds }))
        }
        InstanceSpec::Quiver { group, z } => {
            let g = group.build()?;
            let z = z.as_deref().map(|n| element(&g, n, "the vertex group")).transpose()?;
            let spec = QuiverSpec::new(g, z)?;
            ("quiver", Instance::Quiver(build_quiver_instance(spec)))
        }
        InstanceSpec::Xmod { g, h, tau, alpha } => {
            let (g, h) = (g.build()?, h.build()?);
            let tau = tau
                .iter()
                .map(|x| element(&g, x, "G"))
                .collect::<Result<Vec<_>>>()?;
            let alpha = alpha
                .iter()
                .map(|row| row.iter().map(|x| element(&h, x, "H")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let xm = validate_crossed_module(g, h, tau, alpha)?;
            ("xmod", Instance::TwoGroup(two_group_from_xmod(xm)))
        }
        InstanceSpec::Normal { g, n } => {
            let g = g.build()?;
            let set = n
                .iter()
                .map(|x| element(&g, x, "G"))
                .collect::<Result<BTreeSet<_>>>()?;
            let xm = normal_subgroup_xmod(&g, &set)?;
            ("normal", Instance::TwoGroup(two_group_from_xmod(xm)))
        }
        InstanceSpec::Aut { g } => {
            let xm = aut_two_group(&g.build()?)?;
            ("aut", Instance::TwoGroup(two_group_from_xmod(xm)))
        }
    })
}
