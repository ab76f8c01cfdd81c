use resgroupoid::construct::basic_of_groupoid;
use resgroupoid::fixtures;
use resgroupoid::io::parse_model;
use resgroupoid::laws::{catalog_law, check_formula, LawBook};
use resgroupoid::search::{
    canonical_form, enumerate_bounded_posets, search_models, CanonicalForm, SearchClass, SearchMode, SearchSpec,
    StopReason,
};
use resgroupoid::Model;
use std::collections::BTreeSet;
use std::time::Duration;

fn forms(spec: &SearchSpec) -> Vec<CanonicalForm> {
    let r = search_models(spec).unwrap();
    assert!(r.exhausted);
    r.forms()
}

fn lrpg(n: usize, require: &[&str]) -> SearchSpec {
    SearchSpec::new(n, SearchClass::Lrpg).require(require).unwrap()
}

#[test]
fn propagation_matches_brute_force() {
    let sets: [&[&str]; 7] = [&[], &["div"], &["dneg"], &["div", "jk"], &["dneg", "w"], &["comm"], &["jk"]];
    for n in 2..=4 {
        for req in sets {
            let fast = forms(&lrpg(n, req));
            let slow = forms(&lrpg(n, req).mode(SearchMode::Naive));
            assert_eq!(fast, slow, "n={n} require={req:?}");
        }
    }
    let counts: Vec<usize> = sets.iter().map(|r| forms(&lrpg(4, r)).len()).collect();
    assert_eq!(&counts[..6], [24, 15, 5, 3, 3, 8]);
}

#[test]
fn forbidden_laws_match_brute_force() {
    let spec = lrpg(4, &["div"]).forbid(&["comm"]).unwrap();
    assert_eq!(forms(&spec), forms(&spec.clone().mode(SearchMode::Naive)));
}

#[test]
fn basic_search_matches_brute_force() {
    for n in 2..=3 {
        let spec = SearchSpec::new(n, SearchClass::Basic);
        assert_eq!(forms(&spec), forms(&spec.clone().mode(SearchMode::Naive)));
    }
}

#[test]
fn involution_prefilter_loses_nothing_with_div() {
    for n in 2..=7 {
        for req in [&["div", "dneg"][..], &["div", "jk"]] {
            let spec = lrpg(n, req);
            let mut open = spec.clone();
            open.involution_prefilter = false;
            assert_eq!(forms(&spec), forms(&open), "n={n} {req:?}");
        }
    }
    let spec = lrpg(8, &["div", "dneg"]).forbid(&["jk"]).unwrap();
    let mut open = spec.clone();
    open.involution_prefilter = false;
    assert_eq!(forms(&spec), forms(&open));
}

#[test]
fn involution_prefilter_is_not_applied_without_div() {
    // Double negation alone admits orders without an antitone involution.
    let mut open = lrpg(5, &["dneg"]);
    open.involution_prefilter = false;
    assert_eq!(forms(&lrpg(5, &["dneg"])), forms(&open));
    assert_eq!(forms(&open).len(), 37);
}

#[test]
fn both_characterisations_give_the_basic_algebras() {
    for n in 2..=5 {
        let a = forms(&lrpg(n, &["div", "jk"]));
        let b = forms(&lrpg(n, &["dneg", "w"]));
        assert_eq!(a, b);
        let via: BTreeSet<CanonicalForm> = search_models(&lrpg(n, &["div", "jk"]))
            .unwrap()
            .models
            .iter()
            .map(|f| match &f.model {
                Model::Lrpg(g) => canonical_form(&Model::Basic(basic_of_groupoid(g).validate().unwrap())),
                _ => unreachable!(),
            })
            .collect();
        let direct: BTreeSet<CanonicalForm> = forms(&SearchSpec::new(n, SearchClass::Basic)).into_iter().collect();
        assert_eq!(via.len(), a.len());
        assert_eq!(via, direct);
    }
}

#[test]
fn smallest_cases() {
    assert_eq!(forms(&lrpg(2, &["div", "dneg", "jk"])).len(), 1);
    assert_eq!(forms(&SearchSpec::new(3, SearchClass::Basic)).len(), 1);
    let l3 = canonical_form(&Model::Basic(fixtures::l3()));
    assert_eq!(forms(&SearchSpec::new(3, SearchClass::Basic)), vec![l3]);
}

#[test]
fn non_jk_divisible_double_negation_models_first_appear_at_size_8() {
    for n in 2..=7 {
        assert!(forms(&lrpg(n, &["div", "dneg"]).forbid(&["jk"]).unwrap()).is_empty(), "n={n}");
    }
    let found = forms(&lrpg(8, &["div", "dneg"]).forbid(&["jk"]).unwrap());
    assert_eq!(found.len(), 15);
    assert!(found.contains(&canonical_form(&Model::Lrpg(fixtures::example1()))));
}

#[test]
fn emitted_models_satisfy_the_spec_and_lemma_rules() {
    let r = search_models(&lrpg(8, &["div", "dneg"]).forbid(&["jk"]).unwrap()).unwrap();
    for f in &r.models {
        let Model::Lrpg(g) = &f.model else { unreachable!() };
        assert!(resgroupoid::check_lemma_rules(g).all_hold());
        assert_eq!(canonical_form(&f.model), f.form);
        let back = parse_model(&f.model.to_text()).unwrap();
        assert_eq!(back, f.model);
        assert!(!check_formula(&catalog_law("jk").unwrap(), g).unwrap().holds);
    }
}

#[test]
fn parallel_search_gives_the_same_models() {
    let spec = lrpg(5, &[]);
    assert_eq!(forms(&spec), forms(&spec.clone().jobs(4)));
    assert_eq!(forms(&spec).len(), 1251);
}

#[test]
fn limits_and_budgets() {
    let mut spec = lrpg(5, &[]);
    spec.limit = Some(10);
    let r = search_models(&spec).unwrap();
    assert_eq!(r.models.len(), 10);
    assert_eq!(r.stop, Some(StopReason::Limit));
    assert!(!r.exhausted);

    let r = search_models(&lrpg(8, &[]).budget(Some(Duration::from_millis(50)))).unwrap();
    assert_eq!(r.stop, Some(StopReason::Budget));
    assert!(!r.exhausted);
}

#[test]
fn fixed_poset() {
    let mut spec = lrpg(8, &["div", "dneg"]).forbid(&["jk"]).unwrap();
    spec.poset = Some(fixtures::example1_poset());
    let found = forms(&spec);
    assert!(found.contains(&canonical_form(&Model::Lrpg(fixtures::example1()))));
    let chains = forms(&{
        let mut s = lrpg(4, &[]);
        s.poset = Some(resgroupoid::FinitePoset::chain(4));
        s
    });
    assert!(chains.len() < forms(&lrpg(4, &[])).len());
}

#[test]
fn spec_files_with_user_laws() {
    let book = LawBook::with_file("mydiv : (x/y)*y = (y/x)*x\n").unwrap();
    let spec = SearchSpec::parse("size = 4\nrequire = mydiv\n", &book, None).unwrap();
    assert_eq!(forms(&spec), forms(&lrpg(4, &["div"])));
}

#[test]
fn poset_enumeration_counts() {
    // Bounded posets on n points are posets on n - 2 points with a new
    // bottom and top.
    let counts: Vec<usize> = (2..=8).map(|n| enumerate_bounded_posets(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 2, 5, 16, 63, 318]);
}
