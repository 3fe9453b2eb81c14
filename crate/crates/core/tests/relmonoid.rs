use incidence_core::catcore::{check_n2_oracle, Category};
use incidence_core::exactlin::{int, FreeVec, Pair};
use incidence_core::group::FiniteMonoid;
use incidence_core::incidence::{check_antipode, check_bialgebra, IncidenceConfig};
use incidence_core::monoidal::{check_combinatorial, Monoidal};
use incidence_core::relmonoid::*;
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('x'), Just('y')], 0..=max)
        .prop_map(|cs| cs.into_iter().collect())
}

fn monex_mor(max: usize) -> impl Strategy<Value = String> {
    (0..=max).prop_flat_map(|n| {
        let w = proptest::collection::vec(prop_oneof![Just('x'), Just('y')], n);
        (w.clone(), w).prop_map(|(a, b)| {
            let a: String = a.into_iter().collect();
            let b: String = b.into_iter().collect();
            let show = |s: String| if s.is_empty() { "1".to_string() } else { s };
            format!("({},{})", show(a), show(b))
        })
    })
}

#[test]
fn free_equality_is_the_monoid_algebra() {
    let cat = RelCategory::new(FreeRelation::new(vec!['x', 'y'], FreeRel::Equality).unwrap());
    let cfg = IncidenceConfig::unscaled(&cat);
    assert!(check_combinatorial(&cat, 3).passed());
    assert!(check_bialgebra(&cfg, 3).passed());
    for f in cat.fragment(3) {
        assert_eq!(cfg.coproduct(&f).unwrap(), FreeVec::basis(Pair(f.clone(), f)));
    }
    assert!(!cat.objects_form_group());
}

#[test]
fn group_equality_has_the_inverse_antipode() {
    let cat = RelCategory::new(TableRelation::equality(FiniteMonoid::symmetric(3)));
    let cfg = IncidenceConfig::unscaled(&cat);
    assert!(cat.objects_form_group());
    assert!(check_antipode(&cfg, 0).passed());
    assert!(check_combinatorial(&cat, 0).passed());
}

#[test]
fn table_relations_match_the_oracle() {
    let chain = RelCategory::new(TableRelation::max_chain(4));
    let all = chain.fragment(0);
    assert_eq!(all.len(), 10);
    assert!(check_n2_oracle(&chain, &all, &all).passed);
    let z4 = RelCategory::new(TableRelation::equality(FiniteMonoid::cyclic(4)));
    let all = z4.fragment(0);
    assert!(check_n2_oracle(&z4, &all, &all).passed);
}

#[test]
fn max_chain_is_not_ulf() {
    let chain = RelCategory::new(TableRelation::max_chain(3));
    let r = check_combinatorial(&chain, 0);
    assert!(!r.passed());
    assert!(r.check("no nontrivial isomorphisms").unwrap().passed);
}

#[test]
fn word_literals() {
    let cat = monex_instance();
    assert_eq!(cat.parse_mor("(1,1)").unwrap(), cat.unit_identity());
    assert!(cat.parse_mor("(x,xy)").is_err());
    assert!(cat.parse_mor("(xz,xy)").is_err());
    assert!(cat.parse_mor("x,y").is_err());
}

proptest! {
    #[test]
    fn factorizations_of_equal_length_pairs(lit in monex_mor(5)) {
        let cat = monex_instance();
        let f = cat.parse_mor(&lit).unwrap();
        let pairs = cat.n2(&f).unwrap();
        prop_assert_eq!(pairs.len(), 1usize << f.lower.len());
        for (a, b) in pairs {
            prop_assert_eq!(cat.compose(&a, &b).unwrap(), f.clone());
        }
    }

    #[test]
    fn coproduct_is_multiplicative(f in monex_mor(3), g in monex_mor(3)) {
        let cat = monex_instance();
        let cfg = IncidenceConfig::unscaled(&cat);
        let (f, g) = (cat.parse_mor(&f).unwrap(), cat.parse_mor(&g).unwrap());
        let lhs = cfg.coproduct(&cat.mproduct(&f, &g)).unwrap();
        let rhs = cfg.product2(&cfg.coproduct(&f).unwrap(), &cfg.coproduct(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_detects_identities(lit in monex_mor(4)) {
        let cat = monex_instance();
        let cfg = IncidenceConfig::unscaled(&cat);
        let f = cat.parse_mor(&lit).unwrap();
        let expected = if f.lower == f.upper { int(1) } else { int(0) };
        prop_assert_eq!(cfg.counit(&f), expected);
    }

    #[test]
    fn words_concatenate(a in word(4), b in word(4)) {
        let rel = FreeRelation::new(vec!['y', 'x'], FreeRel::EqualLength).unwrap();
        let (wa, wb) = (Word(a.clone()), Word(b.clone()));
        prop_assert_eq!(rel.mul(&wa, &wb).0, format!("{a}{b}"));
        prop_assert!(rel.related(&rel.mul(&wa, &wb), &rel.mul(&wb, &wa)));
    }
}
