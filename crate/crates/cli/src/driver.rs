//! Suites and queries over a loaded instance.

use clap::ValueEnum;
use incidence_core::bigraph::{
    check_bigraph_bialgebra, check_coalgebra_streaming, check_composition_laws, parse_bigraph,
    BigraphCategory,
};
use incidence_core::catcore::{check_category_laws, Category};
use incidence_core::error::Result as CoreResult;
use incidence_core::exactlin::{int, FreeVec, Rational};
use incidence_core::forest::{ck_antipode, core, CoreForest, ForestCategory, OpForest};
use incidence_core::incidence::{
    check_bialgebra, check_weak_hopf, coalgebra_report, IncidenceConfig, WeakHopfData,
};
use incidence_core::monoidal::{check_combinatorial, check_monoidal_laws, Monoidal};
use incidence_core::quiver::{quiver_ulf_failure, QuiverCategory};
use incidence_core::relmonoid::{MonexCategory, RelCategory, TableRelation};
use incidence_core::report::{Check, Report};
use incidence_core::skew::{SkewCategory, SkewShape};
use incidence_core::twogroup::{antipode, check_two_group, scale_of, TwoGroup};

use crate::config::{Instance, Loaded};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Coalgebra,
    Bialgebra,
    Weakhopf,
    Combinatorial,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Coalgebra => "coalgebra",
            Suite::Bialgebra => "bialgebra",
            Suite::Weakhopf => "weakhopf",
            Suite::Combinatorial => "combinatorial",
            Suite::All => "all",
        }
    }
}

/// A request the instance cannot serve, or a malformed literal.
#[derive(Debug)]
pub struct Unsupported(pub String);

impl From<incidence_core::error::Error> for Unsupported {
    fn from(e: incidence_core::error::Error) -> Self {
        Unsupported(e.to_string())
    }
}

type Result<T> = std::result::Result<T, Unsupported>;

/// Per-instance behaviour on top of the generic suites.
trait Hooks: Monoidal + Sized {
    const DEFAULT_SIZE: usize;

    fn parse_mor(&self, s: &str) -> CoreResult<Self::Mor>;

    fn default_scale(&self) -> Rational {
        int(1)
    }

    fn is_two_group(&self) -> bool {
        false
    }

    fn laws(&self, size: usize) -> Vec<Check> {
        let sample = self.fragment(size);
        let mut out = check_category_laws(self, &sample);
        out.extend(check_monoidal_laws(self, &sample, size));
        out
    }

    fn coalgebra(&self, cfg: &IncidenceConfig<Self>, size: usize) -> Report {
        coalgebra_report(cfg, size)
    }

    fn bialgebra(&self, cfg: &IncidenceConfig<Self>, size: usize) -> Report {
        check_bialgebra(cfg, size)
    }

    fn combinatorial(&self, size: usize) -> Report {
        check_combinatorial(self, size)
    }

    fn weak_hopf(&self, _scale: &Rational, _size: usize) -> Result<Vec<Report>> {
        Err(Unsupported(
            "the weak Hopf suite needs a 2-group instance (xmod, normal or aut)".into(),
        ))
    }

    fn antipode_literal(&self, cfg: &IncidenceConfig<Self>, lit: &str) -> Result<String> {
        if !self.objects_form_group() {
            return Err(Unsupported(
                "the objects do not form a group, so the incidence bialgebra is not a Hopf algebra"
                    .into(),
            ));
        }
        let f = self.parse_mor(lit)?;
        Ok(cfg.antipode_combinatorial(&f)?.to_string())
    }
}

impl Hooks for MonexCategory {
    const DEFAULT_SIZE: usize = 3;

    fn parse_mor(&self, s: &str) -> CoreResult<Self::Mor> {
        MonexCategory::parse_mor(self, s)
    }
}

impl Hooks for RelCategory<TableRelation> {
    const DEFAULT_SIZE: usize = 3;

    fn parse_mor(&self, s: &str) -> CoreResult<Self::Mor> {
        RelCategory::<TableRelation>::parse_mor(self, s)
    }
}

impl Hooks for SkewCategory {
    const DEFAULT_SIZE: usize = 5;

    fn parse_mor(&self, s: &str) -> CoreResult<Self::Mor> {
        SkewShape::parse(s)
    }
}

impl Hooks for ForestCategory {
    const DEFAULT_SIZE: usize = 4;

    fn parse_mor(&self, s: &str) -> CoreResult<Self::Mor> {
        OpForest::parse(s)
    }

    /// The Connes–Kreimer antipode of the core of the literal; planar
    /// forests such as `•(•)•` are accepted directly.
    fn antipode_literal(&self, _cfg: &IncidenceConfig<Self>, lit: &str) -> Result<String> {
        let t = match CoreForest::parse(lit) {
            Ok(t) => t,
            Err(_) => core(&OpForest::parse(lit)?),
        };
        Ok(ck_antipode(&t)?.to_string())
    }
}

impl Hooks for BigraphCategory {
    const DEFAULT_SIZE: usize = 2;

    fn parse_mor(&self, s: &str) -> CoreResult<Self::Mor> {
        parse_bigraph(s)
    }

    fn laws(&self, size: usize) -> Vec<Check> {
        let sample = self.fragment(size);
        let mut out = check_composition_laws(&sample);
        out.extend(check_monoidal_laws(self, &sample, size));
        out
    }

    fn coalgebra(&self, cfg: &IncidenceConfig<Self>, size: usize) -> Report {
        if cfg.scale != int(1) {
            return coalgebra_report(cfg, size);
        }
        let mut report = Report::new("incidence coalgebra (scale 1)", self.describe_fragment(size));
        for c in check_coalgebra_streaming(&self.fragment(size)) {
            report.push(c);
        }
        report
    }

    fn bialgebra(&self, cfg: &IncidenceConfig<Self>, size: usize) -> Report {
        if cfg.scale != int(1) {
            return check_bialgebra(cfg, size);
        }
        check_bigraph_bialgebra(self, size)
    }
}

impl Hooks for QuiverCategory {
    const DEFAULT_SIZE: usize = 3;

    fn parse_mor(&self, s: &str) -> CoreResult<Self::Mor> {
        self.parse(s)
    }

    /// Adds the lift map of two composable arrows, the obstruction to ULF.
    fn combinatorial(&self, size: usize) -> Report {
        let mut report = check_combinatorial(self, size);
        if self.spec.z.is_some() {
            let name = "lift map for two arrows is injective";
            report.push(match quiver_ulf_failure(self) {
                Ok(lift) if lift.domain <= lift.codomain && lift.is_ulf() => Check::pass(name, 1),
                Ok(lift) => Check::fail(
                    name,
                    1,
                    format!("domain {} -> codomain {}", lift.domain, lift.codomain),
                )
                .with_details(lift.to_string().lines().map(str::to_string).collect()),
                Err(e) => Check::fail(name, 1, e.to_string()),
            });
        }
        report
    }
}

impl Hooks for TwoGroup {
    const DEFAULT_SIZE: usize = 1;

    fn parse_mor(&self, s: &str) -> CoreResult<Self::Mor> {
        self.parse(s)
    }

    fn default_scale(&self) -> Rational {
        int(scale_of(self) as i64)
    }

    fn is_two_group(&self) -> bool {
        true
    }

    fn weak_hopf(&self, scale: &Rational, size: usize) -> Result<Vec<Report>> {
        let data = WeakHopfData {
            config: IncidenceConfig::scaled(self, scale.clone())?,
            antipode: Box::new(move |f| antipode(self, f)),
        };
        Ok(vec![check_two_group(self), check_weak_hopf(&data, size)])
    }

    fn antipode_literal(&self, _cfg: &IncidenceConfig<Self>, lit: &str) -> Result<String> {
        let f = self.parse_mor(lit)?;
        Ok(FreeVec::basis(antipode(self, &f)).to_string())
    }
}

/// The outcome of `verify`.
pub struct Verification {
    pub description: String,
    pub size: usize,
    pub fragment_morphisms: usize,
    pub scale: Rational,
    pub reports: Vec<Report>,
}

fn verify_with<C: Hooks>(cat: &C, loaded: &Loaded, suite: Suite, size: Option<usize>) -> Result<Verification> {
    let size = size.or(loaded.max_size).unwrap_or(C::DEFAULT_SIZE);
    let scale = loaded.scale.clone().unwrap_or_else(|| cat.default_scale());
    let cfg = IncidenceConfig::scaled(cat, scale.clone())?;
    let mut reports = Vec::new();
    match suite {
        Suite::Coalgebra => reports.push(cat.coalgebra(&cfg, size)),
        Suite::Bialgebra => reports.push(cat.bialgebra(&cfg, size)),
        Suite::Combinatorial => reports.push(cat.combinatorial(size)),
        Suite::Weakhopf => reports.extend(cat.weak_hopf(&scale, size)?),
        Suite::All => {
            let mut laws = Report::new("category and monoidal laws", cat.describe_fragment(size));
            for c in cat.laws(size) {
                laws.push(c);
            }
            reports.push(laws);
            reports.push(cat.coalgebra(&cfg, size));
            if cat.is_two_group() {
                reports.extend(cat.weak_hopf(&scale, size)?);
            } else {
                reports.push(cat.bialgebra(&cfg, size));
                reports.push(cat.combinatorial(size));
            }
        }
    }
    Ok(Verification {
        description: cat.describe_fragment(size),
        size,
        fragment_morphisms: cat.fragment(size).len(),
        scale,
        reports,
    })
}

fn coproduct_with<C: Hooks>(cat: &C, loaded: &Loaded, lit: &str) -> Result<String> {
    let scale = loaded.scale.clone().unwrap_or_else(|| cat.default_scale());
    let cfg = IncidenceConfig::scaled(cat, scale)?;
    let f = cat.parse_mor(lit)?;
    Ok(cfg.coproduct(&f)?.to_string())
}

fn antipode_with<C: Hooks>(cat: &C, loaded: &Loaded, lit: &str) -> Result<String> {
    let scale = loaded.scale.clone().unwrap_or_else(|| cat.default_scale());
    let cfg = IncidenceConfig::scaled(cat, scale)?;
    cat.antipode_literal(&cfg, lit)
}

macro_rules! dispatch {
    ($loaded:expr, $cat:ident => $body:expr) => {
        match &$loaded.instance {
            Instance::Relmonoid($cat) => $body,
            Instance::Monex($cat) => $body,
            Instance::Skew($cat) => $body,
            Instance::Forest($cat) => $body,
            Instance::Bigraph($cat) => $body,
            Instance::Quiver($cat) => $body,
            Instance::TwoGroup($cat) => $body,
        }
    };
}

pub fn verify(loaded: &Loaded, suite: Suite, size: Option<usize>) -> Result<Verification> {
    dispatch!(loaded, cat => verify_with(cat, loaded, suite, size))
}

pub fn coproduct(loaded: &Loaded, lit: &str) -> Result<String> {
    dispatch!(loaded, cat => coproduct_with(cat, loaded, lit))
}

pub fn antipode_of(loaded: &Loaded, lit: &str) -> Result<String> {
    dispatch!(loaded, cat => antipode_with(cat, loaded, lit))
}
