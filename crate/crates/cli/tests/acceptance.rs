//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use halg_cli::corpus::{self, Instance};
use halg_cli::run;
use halg_core::algcore::{gabriel_quiver, jacobson_radical, GroupAction};
use halg_core::conjcheck::{self, Extension, Outcome, Params, Report};
use halg_core::modhom::{
    direct_sum, ext_dims, ext_dims_via_injective, hom_dim, induce, restrict, twist, HomDim, Module, ModuleCategory,
    ModuleMap,
};
use serde_json::Value;

fn load(name: &str) -> Instance {
    corpus::load(name, 512).expect("corpus entry").expect("corpus entry builds")
}

fn acted() -> Vec<(String, Arc<GroupAction>)> {
    corpus::ACTED.iter().map(|n| (n.to_string(), load(n).action.expect("acted entry"))).collect()
}

fn cat(i: &Instance) -> ModuleCategory {
    ModuleCategory::new(&i.algebra, 0).unwrap()
}

/// Simples, indecomposable projectives and injectives.
fn test_modules(c: &ModuleCategory) -> Vec<Module> {
    let mut ms: Vec<Module> = c.simples().to_vec();
    ms.extend(c.projective_modules());
    ms.extend(c.injectives().iter().cloned());
    ms
}

fn homdim(v: &Value) -> HomDim {
    match v.get("finite") {
        Some(d) => HomDim::Finite(d.as_u64().unwrap() as usize),
        None => HomDim::AtLeast(v["at_least"].as_u64().unwrap() as usize),
    }
}

fn anomaly_check(r: &Report) {
    if let Some(b) = r.banner() {
        eprintln!("{b}");
        panic!("counterexample-candidate banner raised");
    }
}

fn criterion1() -> String {
    let inst = load("example2.8");
    assert_eq!(inst.algebra.dim(), 5);
    let skew = load("example2.8-skew");
    assert_eq!(skew.algebra.dim(), 10);
    let gq = gabriel_quiver(&skew.algebra, 0).unwrap();
    assert_eq!(gq.vertex_count(), 3);
    assert_eq!(gq.arrow_total(), 2);
    let targets: Vec<usize> = (0..3).filter(|&j| (0..3).any(|i| gq.arrow_counts[i][j] > 0)).collect();
    assert_eq!(targets.len(), 1, "both arrows share one target");
    let t = targets[0];
    assert_eq!((0..3).map(|i| gq.arrow_counts[i][t]).sum::<usize>(), 2);
    // oracle: dim ΛG/rad = Σ d_i² over three classes forces {1,1,2}
    let rad = jacobson_radical(&skew.algebra).unwrap().dim();
    let quotient = skew.algebra.dim() - rad;
    assert_eq!(quotient, 6);
    let mut dims = gq.simple_dims.clone();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 2]);
    assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), quotient);
    // the same shape through the command line
    let out = run(["halg", "gabriel-quiver", "--corpus", "example2.8-skew"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["vertex_count"], 3);
    assert_eq!(v["arrow_total"], 2);
    "example2.8: dims 5/10, Gabriel quiver of the skew algebra has 3 vertices and 2 arrows into one vertex, simple dims {1,1,2}".into()
}

fn criterion2() -> String {
    let cases: Vec<(&str, HomDim)> =
        vec![("dual-numbers", HomDim::Finite(0)), ("a2", HomDim::Finite(1)), ("example2.8", HomDim::Finite(1))];
    let mut runs = 0;
    for (name, expected) in cases {
        let inst = load(name);
        let mut exts = vec![Extension::Matrix(2), Extension::Matrix(3)];
        if let Some(a) = &inst.action {
            exts.push(Extension::Skew(a.clone()));
        }
        for ext in exts {
            let r = conjcheck::verify_lemma31(&inst.algebra, &ext, Params::new(10, 0)).unwrap();
            anomaly_check(&r);
            let (b, e) = (&r.evidence["base"], &r.evidence["extended"]);
            for side in ["left_id", "right_id"] {
                assert_eq!(homdim(&b[side]), expected, "{name} {side}");
                assert_eq!(homdim(&e[side]), homdim(&b[side]), "{name} {ext:?} {side}");
            }
            assert_eq!(b["self_injective"], e["self_injective"]);
            assert_eq!(b["self_injective"], expected == HomDim::Finite(0));
            assert_eq!(r.outcome, Outcome::HoldsDefinitively);
            runs += 1;
        }
    }
    format!("Self-injective dimensions: {runs} (algebra, extension) pairs agree structurally at cutoff 10, self-injectivity flags agree")
}

fn criterion3() -> String {
    let mut pairs = 0;
    for (name, action) in acted() {
        let ca = ModuleCategory::new(action.algebra(), 0).unwrap();
        let gamma = Arc::new(halg_core::algcore::skew_group_algebra(&action).unwrap());
        let cg = ModuleCategory::new(&gamma, 0).unwrap();
        for m in test_modules(&ca) {
            let fm = induce(&m, &gamma).unwrap();
            for n in test_modules(&cg) {
                let hn = restrict(&n).unwrap();
                assert_eq!(hom_dim(&fm, &n).unwrap(), hom_dim(&m, &hn).unwrap(), "{name}: (F,H)");
                assert_eq!(hom_dim(&n, &fm).unwrap(), hom_dim(&hn, &m).unwrap(), "{name}: (H,F)");
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 20);
    format!("Adjunction: both counts equal on {pairs} (M, N) pairs")
}

fn criterion4() -> String {
    let mut checked = 0;
    for (name, action) in acted() {
        let c = ModuleCategory::new(action.algebra(), 0).unwrap();
        let gamma = Arc::new(halg_core::algcore::skew_group_algebra(&action).unwrap());
        let mut ms: Vec<Module> = c.simples().to_vec();
        ms.extend(c.projective_modules());
        for m in ms {
            let r = conjcheck::verify_prop27(&m, &action, 0).unwrap();
            anomaly_check(&r);
            assert_eq!(r.outcome, Outcome::HoldsDefinitively, "{name}");
            // re-check every certificate without the verifier
            let hfm = restrict(&induce(&m, &gamma).unwrap()).unwrap();
            let twists: Vec<Module> = action.images().iter().map(|s| twist(&m, s).unwrap()).collect();
            let sum = direct_sum(action.algebra(), &twists).unwrap();
            let cert = |kind: &str| r.certificates.iter().find(|c| c.kind == kind).unwrap().matrix.clone();
            assert!(ModuleMap::new(&hfm, &sum, cert("isomorphism")).unwrap().is_isomorphism());
            let sec = ModuleMap::new(&m, &hfm, cert("section")).unwrap();
            let ret = ModuleMap::new(&hfm, &m, cert("retraction")).unwrap();
            assert!(ret.compose(&sec).matrix().is_identity());
            checked += 1;
        }
    }
    format!("Induce-restrict: HFM ≅ sum of twists with certificates and split mono for {checked} simples/projectives")
}

fn criterion5() -> String {
    let mut rows = 0;
    for name in ["example2.8", "dual-numbers"] {
        let inst = load(name);
        let action = inst.action.clone().unwrap();
        let g = action.order();
        let gamma = Arc::new(halg_core::algcore::skew_group_algebra(&action).unwrap());
        let (ca, cg) = (cat(&inst), ModuleCategory::new(&gamma, 0).unwrap());
        let reg = ca.regular();
        let freg = induce(&reg, &gamma).unwrap();
        for s in ca.simples() {
            let r = conjcheck::verify_prop35(s, &reg, &action, 5, 0).unwrap();
            anomaly_check(&r);
            assert_eq!(r.outcome, Outcome::HoldsDefinitively);
            // independent: both sides on the injective route
            let lower = ext_dims_via_injective(&ca, s, &reg, 5).unwrap();
            let upper = ext_dims_via_injective(&cg, &induce(s, &gamma).unwrap(), &freg, 5).unwrap();
            for i in 0..=5 {
                assert_eq!(upper[i], g * lower[i], "{name} degree {i}");
                assert_eq!(r.evidence["ext_base"][i], lower[i]);
                assert_eq!(r.evidence["ext_extended"][i], upper[i]);
            }
            rows += 6;
        }
    }
    format!("Ext transfer: dim Ext_ΛG(FM,FΛ) = |G|·dim Ext_Λ(M,Λ) in {rows} (simple, degree) cases")
}

fn criterion6() -> String {
    let mut cases = 0;
    for name in corpus::names() {
        let inst = load(&name);
        let c = cat(&inst);
        let mut ms = test_modules(&c);
        ms.push(c.regular());
        for m in &ms {
            for n in &ms {
                let a = ext_dims(&c, m, n, 5).unwrap();
                let b = ext_dims_via_injective(&c, m, n, 5).unwrap();
                assert_eq!(a, b, "{name}: projective vs injective route");
                cases += 6;
            }
        }
    }
    format!("Ext oracle: projective and injective routes agree on {cases} (M, N, i ≤ 5) cases over the corpus")
}

fn criterion7() -> String {
    let mut algebras = 0;
    for name in corpus::names() {
        let inst = load(&name);
        let c = cat(&inst);
        let p = Params::default();
        let nc = conjcheck::nakayama_condition(&c, p).unwrap();
        let agc = conjcheck::auslander_condition(&c, p).unwrap();
        let gsc = conjcheck::gsc_check(&c, p).unwrap();
        let gnc = conjcheck::gnc_probe(&c, p).unwrap();
        for r in [&nc, &agc, &gsc, &gnc] {
            anomaly_check(r);
        }
        assert_eq!(nc.outcome.holds(), nc.evidence["self_injective"] == true, "{name}: NC");
        if agc.outcome.holds() {
            assert_eq!(agc.evidence["gorenstein"], true, "{name}: AGC");
        }
        assert!(!gsc.outcome.is_violated(), "{name}: GSC");
        for s in gnc.evidence["simples"].as_array().unwrap() {
            let w = s["witness"].as_u64().unwrap_or(u64::MAX);
            assert!(w <= 2, "{name}: simple without a witness in degree <= 2");
        }
        for s in c.simples() {
            let r = conjcheck::snc_probe(&c, s, p).unwrap();
            assert!(r.evidence["witness"].as_u64().is_some_and(|w| w <= 2), "{name}: SNC");
        }
        algebras += 1;
    }
    format!("Checker sanity on {algebras} corpus algebras: NC ⟺ self-injective, AGC ⟹ Gorenstein, GSC never violated, SNC/GNC witnesses ≤ 2")
}

fn verb_invocations() -> Vec<Vec<&'static str>> {
    vec![
        vec!["build-path-algebra", "--corpus", "example2.8"],
        vec!["build-path-algebra", "--corpus", "a2", "--prime", "5"],
        vec!["matrix-ext", "--corpus", "a2", "--n", "3"],
        vec!["skew", "--corpus", "example2.8"],
        vec!["gabriel-quiver", "--corpus", "example2.8-skew"],
        vec!["resolve", "--corpus", "dual-numbers", "--pick", "simple:0"],
        vec!["resolve", "--corpus", "example2.8", "--direction", "injective"],
        vec!["check", "gsc", "--corpus", "a2"],
        vec!["check", "nc", "--corpus", "example2.8-skew"],
        vec!["check", "agc", "--corpus", "dual-numbers-m2"],
        vec!["probe", "snc", "--corpus", "a2"],
        vec!["probe", "gnc", "--corpus", "star-s3-skew"],
        vec!["probe", "arc", "--corpus", "dual-numbers"],
        vec!["probe", "findim", "--corpus", "a2"],
        vec!["verify", "lemma31", "--corpus", "example2.8", "--seed", "1"],
        vec!["verify", "prop27", "--corpus", "star-s3", "--seed", "3"],
        vec!["verify", "prop35", "--corpus", "example2.8"],
        vec!["verify", "thm36", "--corpus", "star-z3"],
        vec!["verify", "adjoint", "--corpus", "dual-numbers"],
        vec!["verify", "prop27", "--corpus", "example2.8", "--format", "text"],
    ]
}

fn criterion8() -> String {
    let verbs = verb_invocations();
    for args in &verbs {
        let argv: Vec<&str> = std::iter::once("halg").chain(args.iter().copied()).collect();
        let first = run(argv.clone());
        let second = run(argv);
        assert!(first.code != 2, "{args:?}: {}", first.stderr);
        assert_eq!(first, second, "{args:?} differs between runs");
        if args.contains(&"text") {
            continue;
        }
        // replay from the embedded command
        let v: Value = serde_json::from_str(&first.stdout).unwrap();
        let replay: Vec<String> = std::iter::once("halg".to_string())
            .chain(v["command"]["argv"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()))
            .collect();
        assert_eq!(run(replay), first, "{args:?} replay differs");
    }
    format!("Determinism: {} invocations covering every verb are byte-identical across runs and replays", verbs.len())
}

fn criterion9() -> String {
    let mut checked = 0;
    for (_, action) in acted() {
        let c = ModuleCategory::new(action.algebra(), 0).unwrap();
        let mut ms = test_modules(&c);
        ms.push(c.regular());
        for m in &ms {
            for s in 0..action.order() {
                let sigma = action.image(s);
                let inv = action.image(action.inverse_of(s));
                let back = twist(&twist(m, sigma).unwrap(), inv).unwrap();
                assert_eq!(&back, m);
                assert_eq!(back.actions(), m.actions());
                checked += 1;
            }
        }
    }
    format!("Twist involution: exact equality for {checked} (module, group element) pairs")
}

fn main() {
    let criteria: Vec<(usize, fn() -> String, Option<Duration>)> = vec![
        (1, criterion1, Some(Duration::from_secs(5))),
        (2, criterion2, Some(Duration::from_secs(60))),
        (3, criterion3, None),
        (4, criterion4, None),
        (5, criterion5, None),
        (6, criterion6, None),
        (7, criterion7, None),
        (8, criterion8, None),
        (9, criterion9, None),
    ];
    let quiet_panics = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        eprintln!("  panic: {info}");
        let _ = &quiet_panics;
    }));
    let mut failed = 0;
    for (n, f, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let over = limit.is_some_and(|l| took > l);
        match result {
            Ok(desc) if !over => println!("criterion {n}: PASS ({:.2}s) {desc}", took.as_secs_f64()),
            Ok(desc) => {
                failed += 1;
                println!("criterion {n}: FAIL ({:.2}s, limit {:?}) {desc}", took.as_secs_f64(), limit.unwrap());
            }
            Err(_) => {
                failed += 1;
                println!("criterion {n}: FAIL ({:.2}s) see panic above", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all 9 criteria passed");
}
