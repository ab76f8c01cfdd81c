use proptest::prelude::*;
use proptest::sample::Index;
use resgroupoid::algebra::{meets_given_by_division, satisfies_factor_condition};
use resgroupoid::construct::{
    basic_from_filter_involutions, basic_from_ideal_involutions, basic_of_groupoid, cpg_from_lrpg,
    filter_involutions_of_basic, groupoid_of_basic, lrpg_from_cpg,
};
use resgroupoid::fixtures;
use resgroupoid::io::parse_model;
use resgroupoid::laws::{catalog_law, check_formula, Interpretation};
use resgroupoid::order::dualize_involution_family;
use resgroupoid::search::{canonical_form, is_isomorphic, relabel_model, search_models, SearchClass, SearchSpec};
use resgroupoid::{check_lemma_rules, residuum_from_mult, BasicAlgebraModel, Elem, LeftResiduatedGroupoid, Model};
use std::sync::OnceLock;

fn holds(law: &str, m: &dyn Interpretation) -> bool {
    check_formula(&catalog_law(law).unwrap(), m).unwrap().holds
}

fn lrpgs(n: usize) -> Vec<LeftResiduatedGroupoid> {
    search_models(&SearchSpec::new(n, SearchClass::Lrpg).budget(None))
        .unwrap()
        .models
        .into_iter()
        .map(|f| match f.model {
            Model::Lrpg(g) => g,
            _ => unreachable!(),
        })
        .collect()
}

fn basics(n: usize) -> Vec<BasicAlgebraModel> {
    search_models(&SearchSpec::new(n, SearchClass::Basic))
        .unwrap()
        .models
        .into_iter()
        .map(|f| match f.model {
            Model::Basic(a) => a,
            _ => unreachable!(),
        })
        .collect()
}

/// Every left-residuated groupoid of size 2..=5.
fn small_lrpgs() -> &'static [LeftResiduatedGroupoid] {
    static ALL: OnceLock<Vec<LeftResiduatedGroupoid>> = OnceLock::new();
    ALL.get_or_init(|| (2..=5).flat_map(lrpgs).collect())
}

fn small_basics() -> Vec<BasicAlgebraModel> {
    (2..=5).flat_map(basics).collect()
}

#[test]
fn enumeration_sizes() {
    assert_eq!(lrpgs(2).len(), 1);
    assert_eq!(lrpgs(3).len(), 2);
    assert_eq!(
        (2..=5).map(|n| basics(n).len()).collect::<Vec<_>>(),
        [1, 1, 3, 4]
    );
}

#[test]
fn residuum_is_determined_by_multiplication() {
    for g in small_lrpgs() {
        assert_eq!(&residuum_from_mult(g.poset(), g.mult_table()).unwrap(), g.res_table());
    }
}

#[test]
fn lemma_rules_hold_everywhere() {
    for g in small_lrpgs() {
        let r = check_lemma_rules(g);
        assert!(r.all_hold(), "{r:?}");
    }
}

#[test]
fn divisibility_characterisations_coincide() {
    for g in small_lrpgs() {
        let div = holds("div", g);
        assert_eq!(div, satisfies_factor_condition(g));
        assert_eq!(div, meets_given_by_division(g));
    }
}

#[test]
fn jk_is_double_negation_with_cap() {
    for g in small_lrpgs() {
        assert_eq!(holds("jk", g), holds("dneg", g) && holds("cap", g));
    }
}

#[test]
fn commutative_groupoids() {
    for g in small_lrpgs().iter().filter(|g| g.is_commutative()) {
        let contra = holds("contraposition", g);
        assert_eq!(holds("jk", g), contra);
        assert_eq!(holds("skew_div", g), contra && holds("div", g));
    }
}

#[test]
fn basic_algebra_groupoids_satisfy_both_characterisations() {
    for a in small_basics() {
        let g = groupoid_of_basic(&a);
        for law in ["div", "jk", "dneg", "w"] {
            assert!(holds(law, &g), "{law}");
        }
        assert_eq!(basic_of_groupoid(&g).validate().unwrap(), a);
    }
}

#[test]
fn groupoids_satisfying_either_characterisation_come_from_basic_algebras() {
    for g in small_lrpgs() {
        let t1 = holds("div", g) && holds("jk", g);
        let t2 = holds("dneg", g) && holds("w", g);
        assert_eq!(t1, t2);
        if t1 {
            let a = basic_of_groupoid(g).validate().unwrap();
            assert_eq!(&groupoid_of_basic(&a), g);
        }
    }
}

#[test]
fn dneg_w_consequences() {
    for g in small_lrpgs().iter().filter(|g| holds("dneg", *g) && holds("w", *g)) {
        for law in ["lemma3_a", "lemma3_b", "lemma3_c", "lemma3_d", "lemma4_join", "lemma4_gamma"] {
            assert!(holds(law, g), "{law}");
        }
    }
}

#[test]
fn contrapositional_round_trip() {
    for g in small_lrpgs() {
        match cpg_from_lrpg(g) {
            Ok(c) => {
                assert!(holds("dneg", g));
                let back = lrpg_from_cpg(&c).unwrap();
                assert_eq!(&back, g);
                assert_eq!(cpg_from_lrpg(&back).unwrap(), c);
            }
            Err(_) => assert!(!holds("dneg", g)),
        }
    }
}

#[test]
fn filter_and_ideal_routes_agree() {
    for a in small_basics() {
        let f = filter_involutions_of_basic(&a);
        assert_eq!(basic_from_filter_involutions(&f).unwrap(), a);
        let d = dualize_involution_family(&f).unwrap();
        assert_eq!(basic_from_ideal_involutions(&d).unwrap(), a);
        assert_eq!(dualize_involution_family(&d).unwrap(), f);
    }
}

#[test]
fn search_results_survive_dump_and_reload() {
    for g in small_lrpgs() {
        let m = Model::Lrpg(g.clone());
        let back = parse_model(&m.to_text()).unwrap();
        assert_eq!(back, m);
        for law in ["div", "jk", "dneg", "w", "comm", "assoc"] {
            let Model::Lrpg(h) = &back else { unreachable!() };
            assert_eq!(holds(law, h), holds(law, g));
        }
    }
}

fn fixture_models() -> Vec<Model> {
    fixtures::FILES.iter().map(|(_, t)| parse_model(t).unwrap()).collect()
}

/// A permutation of `0..n` fixing `0` and `n - 1`, drawn from `seed`.
fn bounded_permutation(n: usize, seed: &[Index]) -> Vec<Elem> {
    let mut rest: Vec<Elem> = (1..n - 1).collect();
    let mut perm = vec![0];
    for s in seed.iter().take(n - 2) {
        perm.push(rest.remove(s.index(rest.len())));
    }
    perm.push(n - 1);
    perm
}

proptest! {
    #[test]
    fn canonical_form_is_a_relabelling_invariant(which in any::<Index>(), seed in prop::collection::vec(any::<Index>(), 8)) {
        let models = fixture_models();
        let m = &models[which.index(models.len())];
        let perm = bounded_permutation(m.size(), &seed);
        let r = relabel_model(m, &perm);
        prop_assert_eq!(canonical_form(&r), canonical_form(m));
        prop_assert!(is_isomorphic(&r, m).unwrap());
        prop_assert_eq!(parse_model(&r.to_text()).unwrap(), r.clone());
        prop_assert_eq!(r.to_text(), r.to_text());
    }

    #[test]
    fn different_search_results_are_not_isomorphic(i in any::<Index>(), j in any::<Index>(), seed in prop::collection::vec(any::<Index>(), 5)) {
        let all = small_lrpgs();
        let (a, b) = (&all[i.index(all.len())], &all[j.index(all.len())]);
        let (ma, mb) = (Model::Lrpg(a.clone()), Model::Lrpg(b.clone()));
        let mb = relabel_model(&mb, &bounded_permutation(mb.size(), &seed));
        prop_assert_eq!(is_isomorphic(&ma, &mb).unwrap(), std::ptr::eq(a, b));
    }

    #[test]
    fn relabelled_groupoids_keep_their_laws(which in any::<Index>(), seed in prop::collection::vec(any::<Index>(), 5)) {
        let all = small_lrpgs();
        let g = &all[which.index(all.len())];
        let Model::Lrpg(h) = relabel_model(&Model::Lrpg(g.clone()), &bounded_permutation(g.size(), &seed)) else {
            unreachable!()
        };
        for law in ["div", "jk", "dneg", "w", "cap", "comm", "assoc", "contraposition"] {
            prop_assert_eq!(holds(law, &h), holds(law, g));
        }
    }
}
