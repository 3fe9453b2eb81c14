//! Named end-to-end walkthroughs with deterministic output.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::ValueEnum;
use incidence_core::bigraph::{apply_rule, blocked_reactions, parse_bigraph, ReactionRule};
use incidence_core::catcore::Category;
use incidence_core::error::Result;
use incidence_core::forest::{ck_antipode, ck_coproduct, check_ck_antipode, CoreForest};
use incidence_core::group::FiniteMonoid;
use incidence_core::incidence::{check_weak_hopf, IncidenceConfig};
use incidence_core::monoidal::{check_combinatorial, check_nlf, Monoidal};
use incidence_core::quiver::{build_quiver_instance, quiver_ulf_failure, QuiverSpec};
use incidence_core::relmonoid::monex_instance;
use incidence_core::skew::{compose_shapes, connected_factorization, product_shapes, SkewShape};
use incidence_core::twogroup::{
    antipode, closed_form_antipode, normal_subgroup_xmod, source_subgroup, two_group_from_xmod,
    weak_hopf_structure,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Monex,
    Skew,
    ForestCk,
    BigraphReact,
    QuiverFail,
    XmodS3,
}

pub fn run(demo: Demo) -> Result<String> {
    match demo {
        Demo::Monex => monex(),
        Demo::Skew => skew(),
        Demo::ForestCk => forest_ck(),
        Demo::BigraphReact => bigraph_react(),
        Demo::QuiverFail => quiver_fail(),
        Demo::XmodS3 => xmod_s3(),
    }
}

fn monex() -> Result<String> {
    let cat = monex_instance();
    let cfg = IncidenceConfig::unscaled(&cat);
    let mut out = String::new();
    writeln!(out, "free monoid on {{x, y}}, words related iff of equal length").unwrap();
    writeln!(out, "alpha = (x,x), beta = (x,y), gamma = (y,x), delta = (y,y)").unwrap();
    for (name, lit) in [("alpha", "(x,x)"), ("beta", "(x,y)"), ("gamma", "(y,x)"), ("delta", "(y,y)")] {
        let f = cat.parse_mor(lit)?;
        writeln!(out, "Δ({name}) = {}", cfg.coproduct(&f)?).unwrap();
    }
    for lit in ["(x,x)", "(x,y)", "(y,x)", "(y,y)", "(1,1)"] {
        let f = cat.parse_mor(lit)?;
        writeln!(out, "ε{lit} = {}", cfg.counit(&f)).unwrap();
    }
    Ok(out)
}

fn skew() -> Result<String> {
    let sh = |l: &str, u: &str| SkewShape::parse(&format!("skew({l},{u})"));
    let (r, q, p) = ("00101", "01010", "10100");
    let qp = sh(q, p)?;
    let rq = sh(r, q)?;
    let comp = compose_shapes(&qp, &rq)?;
    let prod = product_shapes(&qp, &rq);
    let mut out = String::new();
    writeln!(out, "r = {r}, q = {q}, p = {p}").unwrap();
    writeln!(out, "(q,p) ∘ (r,q) = {comp}").unwrap();
    writeln!(out, "(q,p) · (r,q) = {prod}").unwrap();
    for (label, s) in [("(r,p)", &comp), ("(q,p)", &qp), ("(r,q)", &rq), ("(qr,pq)", &prod)] {
        let parts = connected_factorization(s);
        let shown: Vec<String> = parts.iter().map(ToString::to_string).collect();
        writeln!(out, "{label}: {} connected components: {}", parts.len(), shown.join(" · ")).unwrap();
    }
    Ok(out)
}

fn forest_ck() -> Result<String> {
    let mut out = String::new();
    writeln!(out, "planar Connes–Kreimer quotient of operadic forests").unwrap();
    for lit in ["•", "••", "•(•)", "•(••)", "•(•(•))"] {
        let t = CoreForest::parse(lit)?;
        writeln!(out, "Δ({t}) = {}", ck_coproduct(&t)).unwrap();
        writeln!(out, "S({t}) = {}", ck_antipode(&t)?).unwrap();
    }
    let check = check_ck_antipode(4);
    writeln!(
        out,
        "{} on all planar forests with <= 4 vertices: {} ({} cases)",
        check.name,
        if check.passed { "PASS" } else { "FAIL" },
        check.cases
    )
    .unwrap();
    Ok(out)
}

fn bigraph_react() -> Result<String> {
    let rule = ReactionRule::default();
    let mut out = String::new();
    writeln!(out, "rule: sibling {} and {} under one root merge into {}", rule.a, rule.b, rule.c).unwrap();
    let siblings = parse_bigraph("roots=1; vertices=a:A,b:B; prnt=a:r0,b:r0")?;
    let nested = parse_bigraph("roots=1; vertices=a:A,x,b:B; prnt=a:r0,x:r0,b:x")?;
    for (name, g) in [("siblings", &siblings), ("nested", &nested)] {
        let r = apply_rule(&rule, g);
        writeln!(out, "{name}: g = {g}").unwrap();
        writeln!(out, "  r(g) = {r}").unwrap();
        writeln!(out, "  r(g) = g: {}", r == *g).unwrap();
        let blocked = blocked_reactions(&rule, g, 3)?;
        writeln!(out, "  blocked-reaction summands: {}", blocked.len()).unwrap();
        for (term, c) in blocked.iter() {
            writeln!(out, "    {c} * [{}] ⊗ [{}]", term.0, term.1).unwrap();
        }
    }
    Ok(out)
}

fn quiver_fail() -> Result<String> {
    let g = FiniteMonoid::cyclic(2);
    let mut out = String::new();
    for z in [Some(1), None] {
        let cat = build_quiver_instance(QuiverSpec::new(g.clone(), z)?);
        writeln!(out, "{}", cat.describe_fragment(3)).unwrap();
        if z.is_some() {
            writeln!(out, "{}", quiver_ulf_failure(&cat)?).unwrap();
        }
        let rep = check_combinatorial(&cat, 3);
        writeln!(out, "combinatorial: {}", if rep.passed() { "PASS" } else { "FAIL" }).unwrap();
        for c in rep.failures() {
            writeln!(out, "  failed: {} ({})", c.name, c.witness.as_deref().unwrap_or("")).unwrap();
        }
    }
    Ok(out)
}

fn xmod_s3() -> Result<String> {
    let s3 = FiniteMonoid::symmetric(3);
    let a3: BTreeSet<usize> = ["e", "(012)", "(021)"]
        .iter()
        .filter_map(|n| s3.index_of(n))
        .collect();
    let tg = two_group_from_xmod(normal_subgroup_xmod(&s3, &a3)?);
    let morphisms = tg.morphisms();
    let s = source_subgroup(&tg);
    let mut out = String::new();
    writeln!(out, "crossed module (S3, A3, inclusion, conjugation)").unwrap();
    writeln!(out, "objects: {}, morphisms: {}, |S| = {}", s3.size(), morphisms.len(), s.len()).unwrap();
    let sizes: BTreeSet<usize> = morphisms
        .iter()
        .map(|f| tg.n2(f).map(|v| v.len()).unwrap_or(0))
        .collect();
    writeln!(out, "|N2(f)| over all morphisms: {sizes:?}").unwrap();
    let f = tg.mor(1, 1);
    writeln!(out, "{}", check_nlf(&tg, &f, &f)?).unwrap();
    let data = weak_hopf_structure(&tg);
    let one = tg.unit_identity();
    writeln!(out, "Δ(i_e) = {}", data.config.coproduct(&one)?).unwrap();
    let rep = check_weak_hopf(&data, 1);
    for c in &rep.checks {
        writeln!(out, "[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name).unwrap();
    }
    let agree = morphisms
        .iter()
        .filter(|f| antipode(&tg, f) == closed_form_antipode(&tg, f))
        .count();
    writeln!(
        out,
        "closed form (α(g⁻¹,h⁻¹)⁻¹, g⁻¹) equals f̄⁻¹ on {agree} of {} morphisms",
        morphisms.len()
    )
    .unwrap();
    let (same, differ): (Vec<_>, Vec<_>) = morphisms
        .iter()
        .partition(|f| antipode(&tg, f) == closed_form_antipode(&tg, f));
    for f in same.iter().take(2).chain(differ.iter().take(2)) {
        writeln!(out, "  S{f} = {}   closed form {}", antipode(&tg, f), closed_form_antipode(&tg, f)).unwrap();
    }
    Ok(out)
}
