use incidence_core::catcore::{check_category_laws, check_n2_oracle, Category};
use incidence_core::exactlin::{FreeVec, Pair};
use incidence_core::group::FiniteMonoid;
use incidence_core::incidence::{check_antipode, check_bialgebra, IncidenceConfig};
use incidence_core::monoidal::{check_combinatorial, check_monoidal_laws, check_nlf};
use incidence_core::quiver::*;
use proptest::prelude::*;

fn with_arrows(n: usize, z: usize) -> QuiverCategory {
    build_quiver_instance(QuiverSpec::new(FiniteMonoid::cyclic(n), Some(z)).unwrap())
}

#[test]
fn discrete_groups_give_group_algebras() {
    for g in [FiniteMonoid::cyclic(3), FiniteMonoid::symmetric(3)] {
        let cat = build_quiver_instance(QuiverSpec::new(g.clone(), None).unwrap());
        let cfg = IncidenceConfig::unscaled(&cat);
        assert!(check_combinatorial(&cat, 2).passed());
        assert!(check_bialgebra(&cfg, 2).passed());
        assert!(check_antipode(&cfg, 2).passed());
        for f in cat.fragment(2) {
            assert_eq!(cfg.coproduct(&f).unwrap(), FreeVec::basis(Pair(f.clone(), f.clone())));
            let inv = cat.identity(&g.elem(g.inv(f.base.idx)));
            assert_eq!(cfg.antipode_combinatorial(&f).unwrap(), FreeVec::basis(inv));
        }
    }
}

#[test]
fn arrows_satisfy_the_laws_but_not_ulf() {
    let cat = with_arrows(2, 1);
    let sample = cat.fragment(3);
    for c in check_category_laws(&cat, &sample) {
        assert!(c.passed, "{c:?}");
    }
    for c in check_monoidal_laws(&cat, &sample, 3) {
        assert!(c.passed, "{c:?}");
    }
    assert!(check_n2_oracle(&cat, &sample, &sample).passed);
    assert!(check_length_grading(&cat, 3).passed());
    let r = check_combinatorial(&cat, 3);
    assert!(!r.check("ULF lifting of factorizations").unwrap().passed);
    assert!(r.check("finite length").unwrap().passed);
}

#[test]
fn non_central_z_is_rejected() {
    let s3 = FiniteMonoid::symmetric(3);
    let t = s3.index_of("(01)").unwrap();
    assert!(QuiverSpec::new(s3, Some(t)).is_err());
    assert!(QuiverSpec::new(FiniteMonoid::cyclic(2), Some(2)).is_err());
}

proptest! {
    #[test]
    fn lift_map_counts(n in 1usize..5, z in 0usize..5, base in 0usize..5, m in 0usize..4, l in 0usize..4) {
        let (z, base) = (z % n, base % n);
        let cat = with_arrows(n, z);
        let f = cat.path(base, m).unwrap();
        let g = cat.path(0, l).unwrap();
        let lift = check_nlf(&cat, &f, &g).unwrap();
        prop_assert_eq!(lift.domain, (m + 1) * (l + 1));
        prop_assert_eq!(lift.codomain, m + l + 1);
        prop_assert!(lift.surjective);
        prop_assert_eq!(lift.is_ulf(), m == 0 || l == 0);
    }

    #[test]
    fn factorizations_split_the_path(n in 1usize..5, z in 0usize..5, base in 0usize..5, steps in 0usize..6) {
        let cat = with_arrows(n, z % n);
        let f = cat.path(base % n, steps).unwrap();
        let pairs = cat.n2(&f).unwrap();
        prop_assert_eq!(pairs.len(), steps + 1);
        for (a, b) in pairs {
            prop_assert_eq!(cat.compose(&a, &b).unwrap(), f.clone());
        }
    }

    #[test]
    fn literals_round_trip(n in 1usize..5, base in 0usize..5, steps in 0usize..6) {
        let cat = with_arrows(n, 0);
        let f = cat.path(base % n, steps).unwrap();
        prop_assert_eq!(cat.parse(&f.to_string()).unwrap(), f);
    }
}
