//! Acceptance suite. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use aqarith::aq::{eq_aq, let_in, parse, parse_aq, split_left, split_right, substitute};
use aqarith::fspec::{
    check, check_trace, normalize, normalize_with, prove, successor_chain_add, ProofOutcome,
    Strategy as Rewriting,
};
use aqarith::paradox::{
    run_bracket_paradox, run_paradox, run_script, run_space_paradox, EqLevel, Policy, PolicyMode,
    Script, Verdict,
};
use aqarith::semantics::{check_isomorphism, embed, from_normal_form, Backend, DecimalValue};
use aqarith::sign::{count_bracket_pairs, count_spaces};
use aqarith::{Aq, BracketedAq, Config, Sign};

use common::scripts::random_script;
use common::{noisy, open_aq, oracle, random_closed_aq, small_closed_aq};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run_bin(args: &[&str]) -> (String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_aqarith")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code())
}

fn within(t: Duration, limit: f64) -> Outcome {
    if t.as_secs_f64() < limit {
        Ok(String::new())
    } else {
        Err(format!("took {:.2}s, limit {limit}s", t.as_secs_f64()))
    }
}

fn paradox_reproduction() -> Outcome {
    let start = Instant::now();
    let (out, code) = run_bin(&["paradox", "--policy", "naive"]);
    let t = start.elapsed();
    ensure!(code == Some(0), "exit code {code:?}");
    ensure!(out == golden("paradox_naive"), "output differs from golden file:\n{out}");
    ensure!(out.contains("chain: 1 = l_s(1+2) = l_s(2+1) = 2\n"), "chain line missing");
    ensure!(out.contains("conclusion: 1 = 2\n"), "conclusion missing");
    within(t, 1.0)?;
    Ok("byte-exact naive trace, conclusion 1 = 2".into())
}

fn paradox_blocking() -> Outcome {
    let start = Instant::now();
    for (mode, file) in [
        ("sumterm", "paradox_sumterm"),
        ("foundational", "paradox_foundational"),
        ("no-split", "paradox_no_split"),
        ("fixed-signature", "paradox_fixed_signature"),
    ] {
        let (out, code) = run_bin(&["paradox", "--policy", mode]);
        ensure!(code == Some(0), "{mode}: exit code {code:?}");
        ensure!(out == golden(file), "{mode}: output differs from golden file:\n{out}");
        let policy = Policy::new(mode.parse::<PolicyMode>()?);
        let trace = run_paradox(&policy);
        ensure!(trace.conclusion().is_none(), "{mode} admits {:?}", trace.conclusion());
        ensure!(
            trace.admitted().iter().all(|c| c.to_string() != "1 = 2"),
            "{mode} admits 1 = 2"
        );
    }
    let sumterm = run_paradox(&Policy::new(PolicyMode::SumtermSolution));
    let rejected: Vec<usize> = sumterm
        .steps
        .iter()
        .filter(|s| matches!(s.decision, aqarith::paradox::Decision::Rejected(_)))
        .map(|s| s.index)
        .collect();
    ensure!(rejected == vec![3], "sumterm rejects steps {rejected:?}");
    ensure!(
        sumterm.verdict == Verdict::StepRejected(3, "1+2 not =_AQ 2+1".into()),
        "sumterm verdict {}",
        sumterm.verdict
    );
    within(start.elapsed(), 1.0)?;
    Ok("4 policies block 1 = 2; sumterm rejects step 3 only".into())
}

fn datum_suite() -> Outcome {
    let x = |s: &str| parse_aq(s).unwrap();
    let same = |a: &str, b: &str| eq_aq(&x(a), &x(b));
    let chains: [&[&str]; 2] = [&["0", "(0)", "((0))"], &["1+2", "1+(2)", "(1+2)", "((1)+2)"]];
    let mut n = 0;
    for chain in chains {
        for a in chain {
            for b in chain {
                ensure!(same(a, b), "{a} =_AQ {b} fails");
                n += 1;
            }
        }
    }
    for (a, b) in [("1+2", "2+1"), ("1+2+5", "(1+2)+5")] {
        ensure!(!same(a, b), "{a} =_AQ {b} holds");
        n += 1;
    }
    ensure!(eq_aq(&substitute(&x("3+X"), "X", &x("1+2")), &x("3+(1+2)")), "substitution example");
    let binding = parse(&Sign::new("1+2")).unwrap();
    ensure!(eq_aq(&let_in("x", &binding, &x("(3+x)")), &x("3+1+2")), "let example");
    Ok(format!("{} exact matches", n + 2))
}

fn soundness_and_completeness() -> Outcome {
    let start = Instant::now();
    let mut steps = 0usize;
    let mut proofs = 0usize;
    for m in 0..=200i128 {
        for n in 0..=200i128 {
            for (sm, sn) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let (a, b) = (sm * m, sn * n);
                let lhs = Aq::add(embed(&DecimalValue::from_i128(a)), embed(&DecimalValue::from_i128(b)));
                let rhs = embed(&DecimalValue::from_i128(a + b));
                match prove(&lhs, &rhs).map_err(|e| e.to_string())? {
                    ProofOutcome::Derived(d) => {
                        let report = check(&d);
                        ensure!(report.is_valid(), "{lhs} = {rhs}: {report}");
                        steps += report.steps_checked;
                    }
                    other => return Err(format!("{lhs} = {rhs}: {other:?}")),
                }
                proofs += 1;
            }
        }
    }
    within(start.elapsed(), 60.0)?;
    Ok(format!("{proofs} derivations checked, {steps} steps"))
}

fn value_of_normal_form(a: &Aq) -> Option<num_bigint::BigInt> {
    from_normal_form(a)?.to_string().parse().ok()
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut nodes = 0usize;
    for _ in 0..10_000 {
        let a = random_closed_aq(&mut rng, 1_000_000, 6);
        nodes += a.size();
        let nf = normalize(&a).map_err(|e| e.to_string())?.normal_form;
        ensure!(value_of_normal_form(&nf) == Some(oracle(&a)), "{a} normalizes to {nf}");
    }
    within(start.elapsed(), 30.0)?;
    Ok(format!("10000 terms, {nodes} nodes, zero mismatches"))
}

fn successor_cross_check() -> Outcome {
    let config = Config::default();
    for m in 0..=200i128 {
        for n in 0..=200i128 {
            let (dm, dn) = (DecimalValue::from_i128(m), DecimalValue::from_i128(n));
            let chain = successor_chain_add(&dm, &dn, &config).map_err(|e| e.to_string())?;
            let direct = normalize(&Aq::add(embed(&dm), embed(&dn))).map_err(|e| e.to_string())?;
            ensure!(chain.normal_form == direct.normal_form, "{m}+{n}: {} vs {}", chain.normal_form, direct.normal_form);
            ensure!(check_trace(&chain).is_valid(), "{m}+{n}: chain trace does not check");
        }
    }
    Ok("40401 pairs, zero mismatches".into())
}

fn isomorphism_harness() -> Outcome {
    let start = Instant::now();
    let config = Config::default();
    let b = |s: &str| s.parse::<Backend>().unwrap();
    let mut checks = 0;
    for (x, y, bound) in [
        ("decimal-nat", "peano-nat", 64),
        ("peano-nat", "ordinal-nat", 64),
        ("decimal-nat", "ordinal-nat", 64),
        ("decimal-int", "eqc-int", 200),
        ("eqc-int", "signed-int", 200),
        ("decimal-int", "signed-int", 200),
    ] {
        let report = check_isomorphism(b(x), b(y), bound, &config).map_err(|e| e.to_string())?;
        ensure!(report.is_isomorphic(), "{}", report.verdict());
        checks += report.lines.len();
    }
    within(start.elapsed(), 10.0)?;
    Ok(format!("6 backend pairs, {checks} checks, no counterexample"))
}

fn counting_suite() -> Outcome {
    let bp = count_bracket_pairs(&Sign::new("((1+2)+(2+0))+0")).map_err(|e| e.to_string())?;
    ensure!(bp == 3, "#_bp(((1+2)+(2+0))+0) = {bp}");
    ensure!(count_spaces(&Sign::new("1 + 2")) == 2, "#_sp(1 + 2)");
    ensure!(count_spaces(&Sign::new("1+2")) == 0, "#_sp(1+2)");

    let aq = run_bracket_paradox(EqLevel::Aq);
    let text = aq.render();
    let cong = text.find("#_bp(0) = #_bp((0))").ok_or("no #_bp congruence at aq")?;
    let concl = text.find("0 = 1").ok_or("no 0 = 1 at aq")?;
    ensure!(cong < concl, "congruence after conclusion");
    ensure!(aq.absurdities == vec!["0 = 1".to_string()], "absurdities {:?}", aq.absurdities);
    ensure!(text == golden("bracket_aq"), "bracket-aq trace differs from golden file");

    let bp = run_bracket_paradox(EqLevel::AqBp);
    ensure!(bp.is_consistent(), "aq_bp admits {:?}", bp.absurdities);
    ensure!(bp.verdict == Verdict::StepRejected(1, "0 not =_AQ^bp (0)".into()), "aq_bp verdict {}", bp.verdict);
    ensure!(bp.render() == golden("bracket_aq_bp"), "bracket-aq-bp trace differs from golden file");

    let sp = run_space_paradox();
    ensure!(!sp.is_consistent(), "space counting does not break aq_bp");
    ensure!(sp.render() == golden("spaces"), "spaces trace differs from golden file");
    Ok("#_bp = 3, #_sp = 2 and 0, 0 = 1 at aq, blocked at aq_bp, 2 = 0 via #_sp".into())
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = RunnerConfig {
        cases,
        failure_persistence: None,
        ..RunnerConfig::default()
    };
    TestRunner::new(config)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn reparse(text: &str) -> Aq {
    parse(&Sign::new(text)).unwrap().into_aq()
}

fn property_suites() -> Outcome {
    run_property("eq_aq equivalence", 1000, (open_aq(), open_aq(), any::<u64>()), |(a, b, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a1 = reparse(&noisy(&a, &mut rng));
        let a2 = reparse(&noisy(&a, &mut rng));
        prop_assert!(eq_aq(&a, &a));
        prop_assert!(eq_aq(&a, &a1) && eq_aq(&a1, &a) && eq_aq(&a1, &a2));
        for (x, y, z) in [(&a, &b, &a1), (&a1, &a, &b), (&b, &a2, &a)] {
            prop_assert_eq!(eq_aq(x, y), eq_aq(y, x));
            prop_assert!(!(eq_aq(x, y) && eq_aq(y, z)) || eq_aq(x, z));
        }
        Ok(())
    })?;
    run_property("split congruence", 1000, (open_aq(), any::<u64>()), |(a, seed)| {
        let b = reparse(&noisy(&a, &mut ChaCha8Rng::seed_from_u64(seed)));
        prop_assert!(eq_aq(&split_left(&a), &split_left(&b)));
        prop_assert!(eq_aq(&split_right(&a), &split_right(&b)));
        Ok(())
    })?;
    let vars = prop::sample::select(vec!["x", "y", "z"]);
    run_property("substitution and let", 1000, (open_aq(), vars, open_aq()), |(t, var, body)| {
        let s = substitute(&body, var, &t);
        let l = let_in(var, &BracketedAq::bracketed(t.clone()), &body);
        prop_assert!(eq_aq(&s, &l), "[{}/{}]{}: {} vs {}", t, var, body, s, l);
        Ok(())
    })?;
    let config = Config {
        unary_add_limit: 40,
        ..Config::default()
    };
    run_property(
        "ground confluence",
        1000,
        (small_closed_aq(), any::<u64>(), any::<u64>()),
        |(a, s1, s2)| {
            let x = normalize_with(&a, &config, Rewriting::randomized(s1)).unwrap();
            let y = normalize_with(&a, &config, Rewriting::randomized(s2)).unwrap();
            let z = normalize_with(&a, &config, Rewriting::canonical()).unwrap();
            prop_assert_eq!(&x.normal_form, &y.normal_form);
            prop_assert_eq!(&x.normal_form, &z.normal_form);
            Ok(())
        },
    )?;
    run_property("policy agreement", 1000, (any::<u64>(), 3usize..14), |(seed, len)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let script = Script::parse(&random_script(&mut rng, &[], len)).unwrap();
        let naive = run_script(&script, &Policy::new(PolicyMode::Naive)).admitted_indices();
        for m in PolicyMode::ALL {
            prop_assert_eq!(run_script(&script, &Policy::new(m)).admitted_indices(), naive.clone(), "{}", m);
        }
        Ok(())
    })?;
    Ok("5 suites, 1000 cases each, zero counterexamples".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("paradox reproduction", paradox_reproduction),
        ("paradox blocking", paradox_blocking),
        ("=_AQ datum suite", datum_suite),
        ("foundational soundness and completeness", soundness_and_completeness),
        ("oracle agreement", oracle_agreement),
        ("successor chain cross-check", successor_cross_check),
        ("isomorphism harness", isomorphism_harness),
        ("counting paradox suite", counting_suite),
        ("property suites", property_suites),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why}; {secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
