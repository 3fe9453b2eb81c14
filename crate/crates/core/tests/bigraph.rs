use std::collections::BTreeSet;
use std::sync::OnceLock;

use incidence_core::bigraph::*;
use incidence_core::catcore::{brute_force_n2, check_mobius, Category};
use incidence_core::incidence::{check_coalgebra, IncidenceConfig};
use incidence_core::monoidal::{check_monoidal_laws, Monoidal};
use proptest::prelude::*;

fn bg(s: &str) -> Bigraph {
    parse_bigraph(s).unwrap()
}

#[test]
fn fragment_sizes() {
    let cat = BigraphCategory::default();
    assert_eq!(cat.fragment(2).len(), 633);
    let one = cat.fragment(1);
    assert!(one.iter().all(|b| b.vertices() <= 1));
    assert!(one.len() < 633);
}

#[test]
fn laws_on_one_vertex() {
    let cat = BigraphCategory::default();
    let sample = cat.fragment(1);
    for c in check_composition_laws(&sample) {
        assert!(c.passed, "{c:?}");
    }
    for c in check_monoidal_laws(&cat, &sample, 1) {
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn streaming_coalgebra_agrees_with_generic() {
    let cat = BigraphCategory::default();
    let sample = cat.fragment(1);
    let cfg = IncidenceConfig::unscaled(&cat);
    let generic = check_coalgebra(&cfg, &sample);
    let streaming = check_coalgebra_streaming(&sample);
    assert_eq!(generic.len(), streaming.len());
    for (g, s) in generic.iter().zip(&streaming) {
        assert_eq!((g.passed, g.cases), (s.passed, s.cases), "{} vs {}", g.name, s.name);
    }
}

#[test]
fn total_merge_breaks_coassociativity() {
    let cat = BigraphCategory::default();
    let cfg = IncidenceConfig::unscaled(&cat);
    let merge = bg("inner=2; outer=2; classes={x0,x1,y0,y1}");
    let checks = check_coalgebra(&cfg, std::slice::from_ref(&merge));
    let coassoc = checks.iter().find(|c| c.name == "coassociativity").unwrap();
    assert!(!coassoc.passed);
    let counit = checks.iter().find(|c| c.name == "counit laws").unwrap();
    assert!(counit.passed);
}

#[test]
fn crossing_breaks_multiplicativity_of_identities() {
    let i01 = Bigraph::identity(Iface::new(0, 1));
    let i02 = Bigraph::identity(Iface::new(0, 2));
    let one = n2_bigraph(&i01).unwrap();
    let products: BTreeSet<(Bigraph, Bigraph)> = one
        .iter()
        .flat_map(|(a, b)| {
            one.iter()
                .map(move |(c, d)| (product_bigraph(a, c), product_bigraph(b, d)))
        })
        .collect();
    let direct: BTreeSet<(Bigraph, Bigraph)> = n2_bigraph(&i02).unwrap().into_iter().collect();
    let cross = bg("inner=2; outer=2; classes={x0,y1},{x1,y0}");
    let extra: Vec<_> = direct.difference(&products).cloned().collect();
    assert!(extra.contains(&(cross.clone(), cross)));
    assert!(products.is_subset(&direct));
}

#[test]
fn mobius_witnesses() {
    let cat = BigraphCategory::default();
    let r = check_mobius(&cat, &cat.fragment(1));
    assert!(!r.passed());
    let iso = r.check("no nontrivial isomorphisms").unwrap();
    let cross = bg("inner=2; outer=2; classes={x0,y1},{x1,y0}");
    assert!(iso.witness.as_deref().unwrap().starts_with(&cross.to_string()));
    let idem = r.check("no nontrivial idempotents").unwrap();
    assert!(!idem.passed);
}

#[test]
fn oracle_on_one_vertex() {
    let cat = BigraphCategory::default();
    for f in cat.fragment(1) {
        let fast: BTreeSet<_> = n2_bigraph(&f).unwrap().into_iter().collect();
        let slow: BTreeSet<_> = cat.oracle_n2(&f).into_iter().collect();
        assert_eq!(fast, slow, "{f}");
        let unreduced = brute_force_n2(&cat, &cat.oracle_candidates(&f), &f);
        assert!(slow.iter().all(|p| unreduced.contains(p)));
    }
}

#[test]
fn factorizations_are_reduced_and_compose_back() {
    let cat = BigraphCategory::default();
    for f in cat.fragment(1) {
        for (a, b) in n2_bigraph(&f).unwrap() {
            assert!(is_reduced(&a, &b));
            assert_eq!(compose_bigraph(&a, &b).unwrap(), f);
        }
    }
}

#[test]
fn display_round_trips() {
    for f in BigraphCategory::default().fragment(2) {
        assert_eq!(parse_bigraph(&f.to_string()).unwrap(), f);
    }
}

#[test]
fn nested_reaction_is_blocked() {
    let rule = ReactionRule::default();
    let nested = bg("roots=1; vertices=a:A,x,b:B; prnt=a:r0,x:r0,b:x");
    assert_eq!(apply_rule(&rule, &nested), nested);
    let blocked = blocked_reactions(&rule, &nested, 3).unwrap();
    let id = Bigraph::identity(nested.outer_iface());
    assert!(blocked.iter().any(|(pair, _)| pair.0 != id));
}

fn one_vertex_sample() -> &'static [Bigraph] {
    static SAMPLE: OnceLock<Vec<Bigraph>> = OnceLock::new();
    SAMPLE.get_or_init(|| BigraphCategory::default().fragment(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_is_associative(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let s = one_vertex_sample();
        let (a, b, c) = (&s[i % s.len()], &s[j % s.len()], &s[k % s.len()]);
        prop_assert_eq!(
            product_bigraph(&product_bigraph(a, b), c),
            product_bigraph(a, &product_bigraph(b, c))
        );
    }

    #[test]
    fn product_respects_interfaces(i in 0usize..10_000, j in 0usize..10_000) {
        let cat = BigraphCategory::default();
        let s = one_vertex_sample();
        let (a, b) = (&s[i % s.len()], &s[j % s.len()]);
        let p = cat.mproduct(a, b);
        prop_assert_eq!(cat.source(&p), cat.oproduct(&cat.source(a), &cat.source(b)));
        prop_assert_eq!(cat.target(&p), cat.oproduct(&cat.target(a), &cat.target(b)));
        prop_assert_eq!(p.vertices(), a.vertices() + b.vertices());
    }

    #[test]
    fn canonical_is_idempotent(i in 0usize..10_000) {
        let s = one_vertex_sample();
        let a = &s[i % s.len()];
        prop_assert_eq!(a.canonical(), a.clone());
        prop_assert_eq!(a.canonical().canonical_form(), a.canonical_form());
    }
}
