//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use resgroupoid::construct::{
    basic_from_oml, basic_of_groupoid, cpg_from_lrpg, groupoid_of_basic, lrpg_from_cpg, roundtrip_check,
    ConstructError, Structure,
};
use resgroupoid::continuum::{check_monotone_grid, witness_no_right_residuum, TOLERANCE};
use resgroupoid::fixtures;
use resgroupoid::laws::{catalog_law, check_formula, eval_term_at, failing_assignments, parse_term, Interpretation};
use resgroupoid::search::{canonical_form, search_models, CanonicalForm, SearchClass, SearchSpec};
use resgroupoid::{
    check_lemma_rules, dump_model, load_model, residuum_from_mult, BasicAlgebraModel, LeftResiduatedGroupoid, Model,
};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resgroupoid"))
        .args(args)
        .output()
        .expect("run resgroupoid")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn holds(law: &str, m: &dyn Interpretation) -> bool {
    check_formula(&catalog_law(law).expect("catalog law"), m).expect("signature").holds
}

fn lrpgs(n: usize, require: &[&str]) -> Vec<LeftResiduatedGroupoid> {
    let spec = SearchSpec::new(n, SearchClass::Lrpg).require(require).expect("catalog laws").budget(None);
    search_models(&spec)
        .expect("search")
        .models
        .into_iter()
        .map(|f| match f.model {
            Model::Lrpg(g) => g,
            _ => unreachable!(),
        })
        .collect()
}

// Element names of the 8-element fixture.
const B: usize = 2;
const C: usize = 3;
const E: usize = 5;

fn criterion1() -> Outcome {
    let file = fixture("example1.lrpg");
    let file = file.to_str().unwrap();
    let o = cli(&["validate", file]);
    ensure(o.status.code() == Some(0), || format!("validate exited {:?}: {}", o.status, stderr(&o)))?;
    let Model::Lrpg(g) = load_model(file).map_err(|e| e.to_string())? else {
        return Err("not an lrpg".into());
    };
    ensure(g.neg_table() == [7, 6, 5, 3, 4, 2, 1, 0], || format!("negation {:?}", g.neg_table()))?;

    for law in ["div", "dneg"] {
        let o = cli(&["check", file, "--law", law]);
        ensure(o.status.code() == Some(0), || format!("check {law}: {}", stdout(&o)))?;
    }
    let o = cli(&["check", file, "--law", "jk", "--all-witnesses"]);
    ensure(o.status.code() == Some(1), || format!("check jk exited {:?}", o.status))?;
    let out = stdout(&o);
    ensure(out.lines().any(|l| l.trim_start().trim_start_matches("jk: fails at ").starts_with("x=3 y=2")), || {
        format!("(c,b) not among jk failures:\n{out}")
    })?;
    ensure(g.mult(C, B) == 0, || "c*b != 0".into())?;
    ensure(g.neg(g.res(g.neg(C), B)) == B, || "n(n(c)/b) != b".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = dir.path().join("a.basic");
    let o = cli(&["construct", "a-of-g", file, "-o", a.to_str().unwrap()]);
    ensure(o.status.success(), || format!("construct: {}", stderr(&o)))?;
    let o = cli(&["validate", a.to_str().unwrap()]);
    ensure(o.status.code() == Some(1) && stderr(&o).contains("axiom (3)"), || {
        format!("validate A(G): {:?} {}", o.status, stderr(&o))
    })?;
    let o = cli(&["check", "--raw", a.to_str().unwrap(), "--law", "ba3", "--all-witnesses"]);
    let out = stdout(&o);
    ensure(out.contains("x=3 y=5"), || format!("(c,e) not among axiom (3) failures:\n{out}"))?;
    let t = basic_of_groupoid(&g);
    let lhs = eval_term_at(&parse_term("n(n(x) + y) + y").unwrap(), &t, &[("x", C), ("y", E)]).unwrap();
    let rhs = eval_term_at(&parse_term("n(n(y) + x) + x").unwrap(), &t, &[("x", C), ("y", E)]).unwrap();
    ensure((lhs, rhs) == (E, C), || format!("axiom (3) at (c,e) gives {lhs} vs {rhs}"))?;
    let first = failing_assignments(&catalog_law("jk").unwrap(), &g).unwrap()[0].values.clone();
    Ok(format!("jk first failure {first:?}, (c,b) also fails; axiom (3) at (c,e): e vs c"))
}

fn criterion2() -> Outcome {
    let g = fixtures::example1();
    let r = residuum_from_mult(g.poset(), g.mult_table()).map_err(|e| e.to_string())?;
    ensure(&r == g.res_table(), || "derived / differs from the stored table".into())?;
    ensure(r.get(C, B) == E, || format!("c/b = {}", r.get(C, B)))?;
    Ok("64 cells identical, c/b = e".into())
}

fn criterion3() -> Outcome {
    let corpus = fixtures::basic_corpus();
    for (name, a) in &corpus {
        let r = roundtrip_check(Structure::Basic(a)).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.laws.iter().all(|l| l.holds()), || format!("{name}: {:?}", r.laws))?;
        ensure(r.identical && r.orders_coincide, || format!("{name}: A(G(A)) != A"))?;
    }
    let mut groupoids: Vec<(String, LeftResiduatedGroupoid)> = vec![
        ("example1".into(), fixtures::example1()),
        ("heyting3".into(), fixtures::heyting3()),
        ("boolean2".into(), fixtures::boolean2_groupoid()),
        ("l3".into(), fixtures::l3_groupoid()),
    ];
    groupoids.extend(corpus.iter().map(|(n, a)| (format!("G({n})"), groupoid_of_basic(a))));
    let mut checked = 0;
    for (name, g) in &groupoids {
        if !(holds("div", g) && holds("jk", g)) {
            continue;
        }
        checked += 1;
        let r = roundtrip_check(Structure::Groupoid(g)).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.identical, || format!("{name}: G(A(G)) != G"))?;
    }
    Ok(format!("{} basic algebras, {checked} groupoids", corpus.len()))
}

fn criterion4() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=5 {
        let spec = |req: &[&str]| SearchSpec::new(n, SearchClass::Lrpg).require(req).unwrap();
        let a = search_models(&spec(&["div", "jk"])).map_err(|e| e.to_string())?;
        let b = search_models(&spec(&["dneg", "w"])).map_err(|e| e.to_string())?;
        ensure(a.exhausted && b.exhausted, || format!("n={n}: not exhaustive"))?;
        ensure(a.forms() == b.forms(), || format!("n={n}: canonical form sets differ"))?;
        let basic = search_models(&SearchSpec::new(n, SearchClass::Basic)).map_err(|e| e.to_string())?;
        let direct: BTreeSet<CanonicalForm> = basic.forms().into_iter().collect();
        let mut via = BTreeSet::new();
        for f in &a.models {
            let Model::Lrpg(g) = &f.model else { unreachable!() };
            let alg = basic_of_groupoid(g).validate().map_err(|e| format!("n={n}: A(G) invalid: {e}"))?;
            via.insert(canonical_form(&Model::Basic(alg)));
        }
        let back: BTreeSet<CanonicalForm> = basic
            .models
            .iter()
            .map(|f| match &f.model {
                Model::Basic(alg) => canonical_form(&Model::Lrpg(groupoid_of_basic(alg))),
                _ => unreachable!(),
            })
            .collect();
        ensure(via.len() == a.models.len() && via == direct, || format!("n={n}: A(-) is not a bijection"))?;
        ensure(back == a.forms().into_iter().collect(), || format!("n={n}: G(-) is not a bijection"))?;
        counts.push(a.models.len());
    }
    Ok(format!("models per size 2..5: {counts:?}"))
}

fn criterion5() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let o = cli(&[
        "search", "--size", "8", "--require", "div,dneg", "--forbid", "jk", "--budget", "600", "--jobs", "1", "-o",
        dir.path().to_str().unwrap(),
    ]);
    ensure(o.status.code() == Some(0), || format!("search exited {:?}: {}", o.status, stderr(&o)))?;
    let summary = stdout(&o);
    ensure(summary.contains("exhaustive yes"), || format!("search not exhaustive:\n{summary}"))?;
    let target = canonical_form(&Model::Lrpg(fixtures::example1()));
    let mut found = 0;
    let mut hit = false;
    for entry in std::fs::read_dir(dir.path()).map_err(|e| e.to_string())? {
        let p = entry.map_err(|e| e.to_string())?.path();
        if p.extension().is_some_and(|e| e == "lrpg") {
            found += 1;
            hit |= canonical_form(&load_model(&p).map_err(|e| e.to_string())?) == target;
        }
    }
    ensure(hit, || format!("example not among {found} models"))?;
    Ok(format!("{found} models, example among them"))
}

fn criterion6() -> Outcome {
    let mut scanned = 0;
    let mut corpus = vec![
        fixtures::example1(),
        fixtures::heyting3(),
        fixtures::boolean2_groupoid(),
        fixtures::l3_groupoid(),
    ];
    corpus.extend(fixtures::basic_corpus().iter().map(|(_, a)| groupoid_of_basic(a)));
    let mut emitted: Vec<LeftResiduatedGroupoid> = (2..=5).flat_map(|n| lrpgs(n, &[])).collect();
    let spec = SearchSpec::new(8, SearchClass::Lrpg)
        .require(&["div", "dneg"])
        .and_then(|s| s.forbid(&["jk"]))
        .map_err(|e| e.to_string())?;
    emitted.extend(search_models(&spec).map_err(|e| e.to_string())?.models.into_iter().map(|f| match f.model {
        Model::Lrpg(g) => g,
        _ => unreachable!(),
    }));
    for g in corpus.iter().chain(&emitted) {
        let r = check_lemma_rules(g);
        ensure(r.all_hold(), || format!("lemma rules fail: {r:?}"))?;
        scanned += 1;
    }
    let mut dw = 0;
    for n in 2..=5 {
        for g in lrpgs(n, &["dneg", "w"]) {
            for law in ["lemma3_a", "lemma3_b", "lemma3_c", "lemma3_d", "lemma4_join", "lemma4_gamma"] {
                ensure(holds(law, &g), || format!("{law} fails on a size-{n} model"))?;
            }
            dw += 1;
        }
    }
    Ok(format!("rules (a)-(i) on {scanned} groupoids; dneg and w consequences on {dw} models"))
}

fn criterion7() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        for g in lrpgs(n, &["dneg"]) {
            let c = cpg_from_lrpg(&g).map_err(|e| e.to_string())?;
            let back = lrpg_from_cpg(&c).map_err(|e| e.to_string())?;
            ensure(back == g, || format!("size {n}: lrpg round trip differs"))?;
            ensure(cpg_from_lrpg(&back).map_err(|e| e.to_string())? == c, || {
                format!("size {n}: cpg round trip differs")
            })?;
            count += 1;
        }
    }
    match cpg_from_lrpg(&fixtures::heyting3()) {
        Err(ConstructError::DoubleNegationFails(_)) => {}
        other => return Err(format!("heyting3: {other:?}")),
    }
    Ok(format!("{count} models; 3-chain Heyting groupoid rejected"))
}

fn criterion8() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        for g in lrpgs(n, &["comm"]) {
            let contra = holds("contraposition", &g);
            ensure(holds("jk", &g) == contra, || format!("size {n}: jk vs contraposition"))?;
            ensure(holds("skew_div", &g) == (contra && holds("div", &g)), || {
                format!("size {n}: skew_div vs contraposition and div")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} commutative models, zero exceptions"))
}

fn criterion9() -> Outcome {
    let mo2: BasicAlgebraModel = basic_from_oml(&fixtures::mo2_ortho()).map_err(|e| e.to_string())?;
    ensure(holds("oml_quasi", &mo2), || "oml_quasi fails on MO2".into())?;
    let b4 = basic_from_oml(&fixtures::boolean4_ortho()).map_err(|e| e.to_string())?;
    let n = b4.size();
    ensure(
        (0..n).all(|x| (0..n).all(|y| b4.oplus(x, y) == b4.lattice().join(x, y))),
        || "Boolean 2x2: + differs from join".into(),
    )?;
    match basic_from_oml(&fixtures::o6_ortho()) {
        Err(ConstructError::NotOrthomodular(w)) => Ok(format!("O6 rejected at {w:?}")),
        other => Err(format!("O6: {other:?}")),
    }
}

fn criterion10() -> Outcome {
    for k in 1..=9 {
        let x = k as f64 / 10.0;
        let w = witness_no_right_residuum(x, 0.01).map_err(|e| e.to_string())?;
        ensure(w.x_times_one > w.y, || format!("x={x}: x*1 <= y"))?;
        ensure(w.max_excess <= TOLERANCE, || format!("x={x}: excess {}", w.max_excess))?;
    }
    let r = check_monotone_grid(0.01).map_err(|e| e.to_string())?;
    ensure(r.violations == 0, || format!("{} violations, max {}", r.violations, r.max_violation))?;
    let o = cli(&["continuum", "--step", "0.01"]);
    ensure(o.status.code() == Some(0), || format!("continuum exited {:?}", o.status))?;
    Ok(format!("9 certificates; {} triples, max violation {:e}", r.triples, r.max_violation))
}

fn criterion11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (name, text) in fixtures::FILES {
        let on_disk = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
        ensure(on_disk == *text, || format!("{name}: bundled copy differs from file"))?;
        let m = load_model(fixture(name)).map_err(|e| format!("{name}: {e}"))?;
        let (p, q) = (dir.path().join("one"), dir.path().join("two"));
        dump_model(&m, &p).map_err(|e| e.to_string())?;
        dump_model(&m, &q).map_err(|e| e.to_string())?;
        let (a, b) = (std::fs::read(&p).unwrap(), std::fs::read(&q).unwrap());
        ensure(a == on_disk.as_bytes(), || format!("{name}: dump differs from the file"))?;
        ensure(a == b, || format!("{name}: two dumps differ"))?;
        ensure(load_model(&p).map_err(|e| e.to_string())? == m, || format!("{name}: reload differs"))?;
    }
    Ok(format!("{} fixtures", fixtures::FILES.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 11] = [
        ("8-element example", criterion1, Some(Duration::from_secs(1))),
        ("residuum derivation", criterion2, Some(Duration::from_secs(1))),
        ("round trips on the corpus", criterion3, Some(Duration::from_secs(1))),
        ("equivalence up to size 5", criterion4, Some(Duration::from_secs(120))),
        ("size-8 counterexample search", criterion5, Some(Duration::from_secs(600))),
        ("lemma suites", criterion6, None),
        ("contrapositional round trip", criterion7, None),
        ("commutative equivalences", criterion8, None),
        ("orthomodular lattices", criterion9, None),
        ("continuum example", criterion10, Some(Duration::from_secs(5))),
        ("format round trip", criterion11, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > *l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}; {took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({why}; {took:.2?})", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
