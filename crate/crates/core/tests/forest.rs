use incidence_core::catcore::{check_category_laws, check_n2_oracle, Category};
use incidence_core::forest::*;
use incidence_core::incidence::{check_bialgebra, IncidenceConfig};
use incidence_core::monoidal::{check_combinatorial, check_monoidal_laws};

#[test]
fn combinatorial_on_four_vertices() {
    let cat = ForestCategory::default();
    assert_eq!(cat.fragment(4).len(), 530);
    let r = check_combinatorial(&cat, 4);
    assert!(r.passed(), "{r}");
}

#[test]
fn bialgebra_on_four_vertices() {
    let cat = ForestCategory::default();
    let cfg = IncidenceConfig::unscaled(&cat);
    let r = check_bialgebra(&cfg, 4);
    assert!(r.passed(), "{r}");
}

#[test]
fn laws_and_oracle_on_three_vertices() {
    let cat = ForestCategory::default();
    let sample = cat.fragment(3);
    for c in check_category_laws(&cat, &sample) {
        assert!(c.passed, "{c:?}");
    }
    for c in check_monoidal_laws(&cat, &sample, 3) {
        assert!(c.passed, "{c:?}");
    }
    for f in &sample {
        let cands = cat.oracle_candidates(f);
        let c = check_n2_oracle(&cat, std::slice::from_ref(f), &cands);
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn quotient_well_defined() {
    let cat = ForestCategory::default();
    let r = check_core_well_defined(&cat, 3);
    assert!(r.passed(), "{r}");
    assert!(check_ck_antipode(4).passed);
    for n in 0..=4 {
        for t in CoreForest::all_with(n) {
            assert_eq!(ck_antipode(&t).unwrap(), ck_antipode_direct(&t), "{t}");
        }
    }
}
