//! Acceptance criteria 1–10. Each criterion prints one verdict line followed
//! by its sub-checks; the process exits non-zero if any criterion fails.
//!
//! All comparisons are exact equalities over ℚ; the only tolerances are the
//! wall-clock limits stated per criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use incidence_core::bigraph::{
    apply_rule, blocked_reactions, check_bigraph_bialgebra, check_composition_laws, parse_bigraph,
    Bigraph, BigraphCategory, ReactionRule,
};
use incidence_core::catcore::{check_mobius, check_n2_oracle, Category};
use incidence_core::exactlin::{int, rat, FreeVec, Pair};
use incidence_core::forest::{
    check_ck_antipode, check_core_well_defined, ck_antipode, ck_antipode_direct, CoreForest,
    ForestCategory,
};
use incidence_core::group::FiniteMonoid;
use incidence_core::incidence::{check_antipode, check_bialgebra, check_weak_hopf, IncidenceConfig};
use incidence_core::monoidal::{
    check_combinatorial, check_monoidal_laws, check_nlf_on_fragment,
};
use incidence_core::quiver::{build_quiver_instance, quiver_ulf_failure, QuiverSpec};
use incidence_core::relmonoid::{monex_instance, MonexCategory, RelCategory, TableRelation};

type Mor = <MonexCategory as Category>::Mor;
use incidence_core::report::{Check, Report};
use incidence_core::skew::{compose_shapes, connected_factorization, product_shapes, SkewCategory, SkewShape};
use incidence_core::twogroup::{
    antipode, aut_two_group, closed_form_antipode, normal_subgroup_xmod, source_subgroup,
    two_group_from_xmod, validate_crossed_module, weak_hopf_structure, TwoGroup,
};

/// One named sub-check of a criterion.
struct Item {
    name: String,
    ok: bool,
    note: String,
}

fn item(name: impl Into<String>, ok: bool, note: impl Into<String>) -> Item {
    Item { name: name.into(), ok, note: note.into() }
}

fn from_report(prefix: &str, r: &Report) -> Vec<Item> {
    r.checks.iter().map(|c| from_check(prefix, c)).collect()
}

fn from_check(prefix: &str, c: &Check) -> Item {
    let note = match &c.witness {
        None => format!("{} cases", c.cases),
        Some(w) => format!("{} of {} cases fail; witness {}", c.failures, c.cases, clip(w)),
    };
    item(format!("{prefix}{}", c.name), c.passed, note)
}

fn clip(s: &str) -> String {
    if s.chars().count() > 240 {
        format!("{}…", s.chars().take(240).collect::<String>())
    } else {
        s.to_string()
    }
}

fn within(name: &str, elapsed: Duration, limit: Duration) -> Item {
    item(
        format!("{name} runtime < {} s", limit.as_secs_f64()),
        elapsed < limit,
        format!("{:.3} s", elapsed.as_secs_f64()),
    )
}

fn conclude(n: usize, title: &str, items: Vec<Item>) -> bool {
    let passed = items.iter().all(|i| i.ok);
    println!("criterion {n:>2}: {} - {title}", if passed { "PASS" } else { "FAIL" });
    for i in &items {
        println!("    [{}] {}: {}", if i.ok { "ok" } else { "FAIL" }, i.name, i.note);
    }
    passed
}

fn s3_a3() -> TwoGroup {
    let s3 = FiniteMonoid::symmetric(3);
    let a3: BTreeSet<usize> = ["e", "(012)", "(021)"]
        .iter()
        .map(|n| s3.index_of(n).unwrap())
        .collect();
    two_group_from_xmod(normal_subgroup_xmod(&s3, &a3).unwrap())
}

fn criterion_01_monex_golden() -> bool {
    let start = Instant::now();
    let cat = monex_instance();
    let cfg = IncidenceConfig::unscaled(&cat);
    let m = |s: &str| cat.parse_mor(s).unwrap();
    let (a, b, c, d) = (m("(x,x)"), m("(x,y)"), m("(y,x)"), m("(y,y)"));
    let sum = |terms: &[(&Mor, &Mor)]| {
        FreeVec::from_terms(terms.iter().map(|&(l, r)| (Pair(l.clone(), r.clone()), int(1))))
    };
    // the four displayed coproducts, term by term
    let expected = [
        ("Δ(α) = α⊗α + β⊗γ", &a, sum(&[(&a, &a), (&b, &c)])),
        ("Δ(β) = α⊗β + β⊗δ", &b, sum(&[(&a, &b), (&b, &d)])),
        ("Δ(γ) = γ⊗α + δ⊗γ", &c, sum(&[(&c, &a), (&d, &c)])),
        ("Δ(δ) = γ⊗β + δ⊗δ", &d, sum(&[(&c, &b), (&d, &d)])),
    ];
    let mut items = Vec::new();
    for (name, f, want) in expected {
        let got = cfg.coproduct(f).unwrap();
        items.push(item(name, got == want, got.to_string()));
    }
    let counits = [&a, &b, &c, &d].map(|f| cfg.counit(f));
    items.push(item(
        "ε(α) = ε(δ) = 1, ε(β) = ε(γ) = 0",
        counits == [int(1), int(0), int(0), int(1)],
        counits.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
    ));
    let off_identity = cat
        .fragment(3)
        .iter()
        .filter(|f| !cat.is_identity(f))
        .all(|f| cfg.counit(f) == int(0));
    items.push(item("ε vanishes off identities (words <= 3)", off_identity, ""));
    items.push(within("criterion 1", start.elapsed(), Duration::from_secs(1)));
    conclude(1, "monex coproduct displays", items)
}

fn criterion_02_skew_golden() -> bool {
    let start = Instant::now();
    let sh = |l: &str, u: &str| SkewShape::parse(&format!("skew({l},{u})")).unwrap();
    let (r, q, p) = ("00101", "01010", "10100");
    let (qp, rq, rp) = (sh(q, p), sh(r, q), sh(r, p));
    let comp = compose_shapes(&qp, &rq).unwrap();
    let prod = product_shapes(&qp, &rq);
    let qr = format!("{q}{r}");
    let pq = format!("{p}{q}");
    let counts = [&rp, &qp, &rq, &prod].map(|s| connected_factorization(s).len());
    let items = vec![
        item("(q,p)∘(r,q) = (r,p)", comp == rp, comp.to_string()),
        item("(q,p)·(r,q) = (qr,pq)", prod == sh(&qr, &pq), prod.to_string()),
        item("component counts 1, 3, 3, 6", counts == [1, 3, 3, 6], format!("{counts:?}")),
        within("criterion 2", start.elapsed(), Duration::from_secs(1)),
    ];
    conclude(2, "skew shape example", items)
}

fn criterion_03_combinatorial_suites() -> bool {
    let mut items = Vec::new();
    let start = Instant::now();
    let r = check_combinatorial(&monex_instance(), 3);
    items.extend(from_report("monex (words <= 3): ", &r));
    items.push(within("monex suite", start.elapsed(), Duration::from_secs(30)));
    let start = Instant::now();
    let r = check_combinatorial(&SkewCategory, 5);
    items.extend(from_report("skew (length <= 5): ", &r));
    items.push(within("skew suite", start.elapsed(), Duration::from_secs(30)));
    let start = Instant::now();
    let r = check_combinatorial(&ForestCategory::default(), 4);
    items.extend(from_report("forests (<= 4 internal): ", &r));
    items.push(within("forest suite", start.elapsed(), Duration::from_secs(30)));
    conclude(3, "combinatorial categories", items)
}

fn criterion_04_bialgebra_suites() -> bool {
    let mut items = Vec::new();
    let monex = monex_instance();
    items.extend(from_report("monex: ", &check_bialgebra(&IncidenceConfig::unscaled(&monex), 3)));
    items.extend(from_report("skew: ", &check_bialgebra(&IncidenceConfig::unscaled(&SkewCategory), 5)));
    let forests = ForestCategory::default();
    items.extend(from_report("forests: ", &check_bialgebra(&IncidenceConfig::unscaled(&forests), 4)));
    conclude(4, "bialgebra axioms and pointedness", items)
}

fn criterion_05_quiver() -> bool {
    let z2 = FiniteMonoid::cyclic(2);
    let arrows = build_quiver_instance(QuiverSpec::new(z2.clone(), Some(1)).unwrap());
    let lift = quiver_ulf_failure(&arrows).unwrap();
    let mut items = vec![
        item(
            "lift map for two arrows: domain 4, codomain 3",
            (lift.domain, lift.codomain) == (4, 3),
            format!("{} -> {}", lift.domain, lift.codomain),
        ),
        item("lift map is not injective", lift.domain > lift.codomain && !lift.is_ulf(), ""),
    ];
    let comb = check_combinatorial(&arrows, 3);
    let ulf = comb.check("ULF lifting of factorizations").unwrap();
    items.push(item(
        "check_combinatorial fails with the 4 -> 3 witness",
        !comb.passed() && ulf.witness.as_deref().is_some_and(|w| w.contains("domain 4 -> codomain 3")),
        ulf.witness.clone().unwrap_or_default(),
    ));

    let discrete = build_quiver_instance(QuiverSpec::new(z2.clone(), None).unwrap());
    let cfg = IncidenceConfig::unscaled(&discrete);
    let sample = discrete.fragment(3);
    let mut laws = check_monoidal_laws(&discrete, &sample, 3);
    laws.extend(incidence_core::catcore::check_category_laws(&discrete, &sample));
    items.extend(laws.iter().map(|c| from_check("no arrows: ", c)));
    items.extend(from_report("no arrows: ", &check_combinatorial(&discrete, 3)));
    items.extend(from_report("no arrows: ", &check_bialgebra(&cfg, 3)));
    items.extend(from_report("no arrows: ", &check_antipode(&cfg, 3)));
    let grouplike = z2.elements().all(|g| {
        let ig = discrete.identity(&z2.elem(g));
        cfg.coproduct(&ig).unwrap() == FreeVec::basis(Pair(ig.clone(), ig))
    });
    items.push(item("no arrows: Δ(i_g) = i_g⊗i_g", grouplike, ""));
    let table = z2.elements().all(|a| {
        z2.elements().all(|b| {
            let (ia, ib) = (discrete.identity(&z2.elem(a)), discrete.identity(&z2.elem(b)));
            cfg.product(&ia, &ib) == FreeVec::basis(discrete.identity(&z2.elem(z2.mul(a, b))))
        })
    });
    items.push(item("no arrows: product table = group table", table, ""));
    conclude(5, "quiver non-example", items)
}

fn criterion_06_two_group() -> bool {
    let start = Instant::now();
    let tg = s3_a3();
    let all = tg.morphisms();
    let s = source_subgroup(&tg);
    let mut items = vec![
        item("18 morphisms", all.len() == 18, all.len().to_string()),
        item("|S| = 3", s.len() == 3, s.len().to_string()),
    ];
    let sizes: BTreeSet<usize> = all.iter().map(|f| tg.n2(f).unwrap().len()).collect();
    items.push(item("|N2(f)| = 3 for all 18 morphisms", sizes == BTreeSet::from([3]), format!("{sizes:?}")));
    let nlf = check_nlf_on_fragment(&tg, &all, 1, 3);
    items.push(from_check("", &nlf));
    let data = weak_hopf_structure(&tg);
    items.push(item("λ = 3", data.config.scale == int(3), data.config.scale.to_string()));
    items.extend(from_report("", &check_weak_hopf(&data, 1)));
    let agree = all.iter().filter(|f| antipode(&tg, f) == closed_form_antipode(&tg, f)).count();
    let first_diff = all
        .iter()
        .find(|f| antipode(&tg, f) != closed_form_antipode(&tg, f))
        .map(|f| {
            format!(
                "; first difference at {f}: f̄⁻¹ = {}, closed form {}",
                antipode(&tg, f),
                closed_form_antipode(&tg, f)
            )
        })
        .unwrap_or_default();
    items.push(item(
        "S(h,g) = (α(g⁻¹,h⁻¹)⁻¹, g⁻¹) agrees pointwise with f̄⁻¹",
        agree == all.len(),
        format!("agrees on {agree} of {}{first_diff}", all.len()),
    ));
    items.push(within("criterion 6", start.elapsed(), Duration::from_secs(30)));
    conclude(6, "2-group of (S3, A3, incl, conj)", items)
}

fn criterion_07_aut_two_group() -> bool {
    let s3 = FiniteMonoid::symmetric(3);
    let xm = aut_two_group(&s3).unwrap();
    let revalidated = validate_crossed_module(xm.g.clone(), xm.h.clone(), xm.tau.clone(), xm.alpha.clone());
    let tg = two_group_from_xmod(xm);
    let objects = tg.xm.g.size();
    let s = source_subgroup(&tg).len();
    let data = weak_hopf_structure(&tg);
    let mut items = vec![
        item("valid crossed module", revalidated.is_ok(), ""),
        item("|Ob| = 6", objects == 6, objects.to_string()),
        item("|S| = 6", s == 6, s.to_string()),
        item("λ = 6", data.config.scale == int(6), data.config.scale.to_string()),
    ];
    items.extend(from_report("", &check_weak_hopf(&data, 1)));
    conclude(7, "AUT(S3)", items)
}

fn criterion_08_connes_kreimer() -> bool {
    let cat = ForestCategory::default();
    let mut items = from_report("", &check_core_well_defined(&cat, 3));
    items.push(from_check("", &check_ck_antipode(4)));
    let s_dot = ck_antipode(&CoreForest::dot()).unwrap();
    let minus_dot = FreeVec::from_terms([(CoreForest::dot(), rat(-1, 1))]);
    items.push(item("S(•) = −•", s_dot == minus_dot, s_dot.to_string()));
    let direct = (0..=4)
        .flat_map(CoreForest::all_with)
        .all(|t| ck_antipode(&t).unwrap() == ck_antipode_direct(&t));
    items.push(item("antipode equals the direct recursion (<= 4 vertices)", direct, ""));
    conclude(8, "Connes–Kreimer quotient", items)
}

fn criterion_09_bigraphs() -> bool {
    let cat = BigraphCategory::default();
    let sample = cat.fragment(2);
    let mut items = vec![item("fragment size", true, format!("{} bigraphs", sample.len()))];
    items.extend(check_composition_laws(&sample).iter().map(|c| from_check("", c)));
    items.extend(
        check_monoidal_laws(&cat, &sample, 2)
            .iter()
            .map(|c| from_check("", c)),
    );
    items.extend(from_report("", &check_bigraph_bialgebra(&cat, 2)));

    let mobius = check_mobius(&cat, &sample);
    let iso = mobius.check("no nontrivial isomorphisms").unwrap();
    let crossing = parse_bigraph("inner=2; outer=2; classes={x0,y1},{x1,y0}").unwrap();
    items.push(item(
        "check_mobius reports failure via the crossing wiring",
        !mobius.passed()
            && !iso.passed
            && iso.witness.as_deref().is_some_and(|w| w.starts_with(&crossing.to_string())),
        iso.witness.clone().unwrap_or_default(),
    ));

    let rule = ReactionRule::default();
    let nested = parse_bigraph("roots=1; vertices=a:A,x,b:B; prnt=a:r0,x:r0,b:x").unwrap();
    let blocked = blocked_reactions(&rule, &nested, 3).unwrap();
    let id = Bigraph::identity(nested.outer_iface());
    let at_non_identity = blocked.iter().any(|(Pair(ctx, _), c)| *ctx != id && *c != int(0));
    items.push(item("nested A, B: r(g) = g", apply_rule(&rule, &nested) == nested, ""));
    items.push(item(
        "nested A, B: nonzero blocked summand at a non-identity context",
        at_non_identity,
        format!("{} summands", blocked.len()),
    ));
    conclude(9, "bigraph fragment", items)
}

fn criterion_10_oracles() -> bool {
    let mut items = Vec::new();
    let monex = monex_instance();
    let frag = monex.fragment(3);
    items.push(from_check("monex (words <= 3): ", &check_n2_oracle(&monex, &frag, &frag)));

    let poset = RelCategory::new(
        TableRelation::from_covers(FiniteMonoid::cyclic(3), &[]).unwrap(),
    );
    let frag = poset.fragment(3);
    items.push(from_check("relmonoid (Z/3, equality): ", &check_n2_oracle(&poset, &frag, &frag)));
    let chain = RelCategory::new(TableRelation::max_chain(4));
    let frag = chain.fragment(0);
    items.push(from_check("relmonoid (chain of 4, max): ", &check_n2_oracle(&chain, &frag, &frag)));

    let frag = SkewCategory.fragment(5);
    items.push(from_check("skew (length <= 5): ", &check_n2_oracle(&SkewCategory, &frag, &frag)));

    let forests = ForestCategory::default();
    let mut tally = (0usize, 0usize, String::new());
    for f in forests.fragment(4) {
        let c = check_n2_oracle(&forests, std::slice::from_ref(&f), &forests.oracle_candidates(&f));
        tally.0 += 1;
        if !c.passed {
            tally.1 += 1;
            if tally.2.is_empty() {
                tally.2 = c.witness.unwrap_or_default();
            }
        }
    }
    items.push(item(
        "forests (<= 4 internal): n2 agrees with brute-force oracle",
        tally.1 == 0,
        format!("{} forests, {} discrepancies {}", tally.0, tally.1, tally.2),
    ));

    for z in [Some(1), None] {
        let q = build_quiver_instance(QuiverSpec::new(FiniteMonoid::cyclic(2), z).unwrap());
        let frag = q.fragment(4);
        items.push(from_check(&format!("quiver Z/2, z = {z:?}: "), &check_n2_oracle(&q, &frag, &frag)));
    }

    for (name, tg) in [
        ("(S3, A3)", s3_a3()),
        ("AUT(S3)", two_group_from_xmod(aut_two_group(&FiniteMonoid::symmetric(3)).unwrap())),
    ] {
        let all = tg.morphisms();
        items.push(from_check(&format!("2-group {name}: "), &check_n2_oracle(&tg, &all, &all)));
    }

    let cat = BigraphCategory::default();
    let mut tally = (0usize, 0usize, String::new());
    for f in cat.fragment(2) {
        let fast: BTreeSet<_> = cat.n2(&f).unwrap().into_iter().collect();
        let slow: BTreeSet<_> = cat.oracle_n2(&f).into_iter().collect();
        tally.0 += 1;
        if fast != slow {
            tally.1 += 1;
            if tally.2.is_empty() {
                tally.2 = format!("{f}: enumerator {}, oracle {}", fast.len(), slow.len());
            }
        }
    }
    items.push(item(
        "bigraphs (<= 2 vertices): reduced n2 agrees with brute-force oracle",
        tally.1 == 0,
        format!("{} bigraphs, {} discrepancies {}", tally.0, tally.1, tally.2),
    ));
    conclude(10, "n2 enumerators against brute force", items)
}

fn main() {
    let criteria: [fn() -> bool; 10] = [
        criterion_01_monex_golden,
        criterion_02_skew_golden,
        criterion_03_combinatorial_suites,
        criterion_04_bialgebra_suites,
        criterion_05_quiver,
        criterion_06_two_group,
        criterion_07_aut_two_group,
        criterion_08_connes_kreimer,
        criterion_09_bigraphs,
        criterion_10_oracles,
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = Vec::new();
    for (i, run) in criteria.iter().enumerate() {
        let n = i + 1;
        if !only.is_empty() && !only.iter().any(|a| a == &n.to_string()) {
            continue;
        }
        let passed = std::panic::catch_unwind(run).unwrap_or_else(|_| {
            println!("criterion {n:>2}: FAIL - panicked");
            false
        });
        if !passed {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: criteria {failed:?} fail");
        std::process::exit(1);
    }
}
