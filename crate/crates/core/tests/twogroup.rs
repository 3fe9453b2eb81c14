use std::collections::BTreeSet;

use incidence_core::catcore::{check_n2_oracle, Category};
use incidence_core::exactlin::int;
use incidence_core::group::FiniteMonoid;
use incidence_core::incidence::{check_weak_hopf, IncidenceConfig, WeakHopfData};
use incidence_core::monoidal::{check_nlf_on_fragment, Monoidal};
use incidence_core::twogroup::*;
use proptest::prelude::*;

fn subgroup(g: &FiniteMonoid, names: &[&str]) -> BTreeSet<usize> {
    names.iter().map(|n| g.index_of(n).unwrap()).collect()
}

fn instances() -> Vec<(&'static str, TwoGroup)> {
    let s3 = FiniteMonoid::symmetric(3);
    let z4 = FiniteMonoid::cyclic(4);
    let all_s3: BTreeSet<usize> = s3.elements().collect();
    let half: BTreeSet<usize> = [0, 2].into();
    vec![
        ("discrete Z/4", CrossedModule::discrete(z4.clone()).unwrap()),
        ("(Z/4, 2Z/4)", normal_subgroup_xmod(&z4, &half).unwrap()),
        ("(S3, A3)", normal_subgroup_xmod(&s3, &subgroup(&s3, &["e", "(012)", "(021)"])).unwrap()),
        ("(S3, S3)", normal_subgroup_xmod(&s3, &all_s3).unwrap()),
        ("AUT(Z/3)", aut_two_group(&FiniteMonoid::cyclic(3)).unwrap()),
        ("AUT(S3)", aut_two_group(&s3).unwrap()),
    ]
    .into_iter()
    .map(|(n, xm)| (n, two_group_from_xmod(xm)))
    .collect()
}

#[test]
fn every_instance_is_a_weak_hopf_algebra() {
    for (name, tg) in instances() {
        let s = source_subgroup(&tg).len();
        assert_eq!(s, tg.xm.h.size(), "{name}");
        assert_eq!(scale_of(&tg), s, "{name}");
        assert!(check_two_group(&tg).passed(), "{name}");
        assert!(check_round_trip(&tg).passed, "{name}");
        let data = weak_hopf_structure(&tg);
        assert_eq!(data.config.scale, int(s as i64));
        let r = check_weak_hopf(&data, 1);
        assert!(r.passed(), "{name}\n{r}");
    }
}

#[test]
fn factorizations_have_source_subgroup_size() {
    for (name, tg) in instances() {
        let all = tg.morphisms();
        let s = source_subgroup(&tg).len();
        assert!(all.iter().all(|f| tg.n2(f).unwrap().len() == s), "{name}");
        assert!(check_n2_oracle(&tg, &all, &all).passed, "{name}");
        let nlf = check_nlf_on_fragment(&tg, &all, 1, s);
        assert!(nlf.passed, "{name}: {nlf:?}");
    }
}

#[test]
fn unit_scale_breaks_the_counit_when_s_is_nontrivial() {
    let s3 = FiniteMonoid::symmetric(3);
    let tg = two_group_from_xmod(
        normal_subgroup_xmod(&s3, &subgroup(&s3, &["e", "(012)", "(021)"])).unwrap(),
    );
    let data = WeakHopfData {
        config: IncidenceConfig::unscaled(&tg),
        antipode: Box::new(|f| antipode(&tg, f)),
    };
    assert!(!check_weak_hopf(&data, 1).passed());
}

#[test]
fn scale_one_suffices_for_discrete_groups() {
    let tg = two_group_from_xmod(CrossedModule::discrete(FiniteMonoid::symmetric(3)).unwrap());
    assert_eq!(scale_of(&tg), 1);
    assert!(check_weak_hopf(&weak_hopf_structure(&tg), 1).passed());
}

#[test]
fn literals_round_trip() {
    for (_, tg) in instances() {
        for f in tg.morphisms() {
            assert_eq!(tg.parse(&f.to_string()).unwrap(), f);
        }
    }
}

proptest! {
    #[test]
    fn inverses_and_antipode(which in 0usize..6, i in 0usize..1000) {
        let (_, tg) = instances().swap_remove(which);
        let all = tg.morphisms();
        let f = &all[i % all.len()];
        let bar = monoidal_inverse(&tg, f);
        prop_assert_eq!(tg.mproduct(&bar, f), tg.unit_identity());
        prop_assert_eq!(tg.mproduct(f, &bar), tg.unit_identity());
        let inv = tg.comp_inverse(f);
        prop_assert!(tg.is_identity(&tg.compose(&inv, f).unwrap()));
        prop_assert_eq!(antipode(&tg, &antipode(&tg, f)), f.clone());
    }

    #[test]
    fn source_subgroup_is_normal(which in 0usize..6, i in 0usize..1000, j in 0usize..1000) {
        let (_, tg) = instances().swap_remove(which);
        let all = tg.morphisms();
        let s: BTreeSet<_> = source_subgroup(&tg).into_iter().collect();
        let f = &all[i % all.len()];
        let h = s.iter().nth(j % s.len()).unwrap();
        let conj = tg.mproduct(&tg.mproduct(f, h), &monoidal_inverse(&tg, f));
        prop_assert!(s.contains(&conj));
    }
}
