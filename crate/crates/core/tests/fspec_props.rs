mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use aqarith::fspec::{
    check, check_trace, derivation_from_lines, derivation_to_lines, is_normal_form, normalize,
    normalize_with, prove, redexes, successor_chain_add, trace_from_lines, trace_to_lines,
    ProofOutcome, Strategy,
};
use aqarith::semantics::{embed, from_normal_form, DecimalValue};
use aqarith::{Aq, Config};

use common::{closed_aq, oracle, random_closed_aq, small_closed_aq};

fn value_of_normal_form(a: &Aq) -> BigInt {
    let v = from_normal_form(a).unwrap_or_else(|| panic!("{a} is not in Z_d"));
    v.to_string().parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalize_agrees_with_the_oracle(a in closed_aq(1_000_000)) {
        let t = normalize(&a).unwrap();
        prop_assert!(is_normal_form(&t.normal_form));
        prop_assert!(redexes(&t.normal_form).is_empty());
        prop_assert_eq!(value_of_normal_form(&t.normal_form), oracle(&a));
    }

    #[test]
    fn every_trace_checks(a in small_closed_aq()) {
        let t = normalize(&a).unwrap();
        let report = check_trace(&t);
        prop_assert!(report.is_valid(), "{}: {}", a, report);
        prop_assert_eq!(report.steps_checked, t.steps.len());
    }

    #[test]
    fn traces_survive_serialization(a in small_closed_aq()) {
        let t = normalize(&a).unwrap();
        let text = trace_to_lines(&t).join("\n");
        let back = trace_from_lines(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(trace_to_lines(&back).join("\n"), text);
    }

    #[test]
    fn proofs_check_and_survive_serialization(a in small_closed_aq(), b in small_closed_aq()) {
        let equal = oracle(&a) == oracle(&b);
        match prove(&a, &b).unwrap() {
            ProofOutcome::Derived(d) => {
                prop_assert!(equal);
                prop_assert!(check(&d).is_valid(), "{} = {}: {}", a, b, check(&d));
                let text = derivation_to_lines(&d).join("\n");
                prop_assert_eq!(derivation_from_lines(&text).unwrap(), d);
            }
            ProofOutcome::NotDerivable { lhs_normal, rhs_normal } => {
                prop_assert!(!equal);
                prop_assert_ne!(lhs_normal, rhs_normal);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn two_strategies_reach_one_normal_form(a in small_closed_aq(), s1 in any::<u64>(), s2 in any::<u64>()) {
        // small enough that both unary and column additions occur
        let config = Config { unary_add_limit: 40, ..Config::default() };
        let x = normalize_with(&a, &config, Strategy::randomized(s1)).unwrap();
        let y = normalize_with(&a, &config, Strategy::randomized(s2)).unwrap();
        prop_assert_eq!(&x.normal_form, &y.normal_form);
        let z = normalize_with(&a, &config, Strategy::canonical()).unwrap();
        prop_assert_eq!(&x.normal_form, &z.normal_form);
    }
}

#[test]
fn oracle_agreement_on_fixed_random_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..3000 {
        let a = random_closed_aq(&mut rng, 1_000_000, 6);
        let nf = normalize(&a).unwrap().normal_form;
        assert_eq!(value_of_normal_form(&nf), oracle(&a), "{a}");
    }
}

#[test]
fn successor_chain_matches_normalize() {
    let config = Config::default();
    for m in (0..=200u64).step_by(7) {
        for n in 0..=200u64 {
            let (dm, dn) = (DecimalValue::from_i128(m as i128), DecimalValue::from_i128(n as i128));
            let chain = successor_chain_add(&dm, &dn, &config).unwrap();
            let direct = normalize(&Aq::add(embed(&dm), embed(&dn))).unwrap();
            assert_eq!(chain.normal_form, direct.normal_form, "{m}+{n}");
            assert!(check_trace(&chain).is_valid());
        }
    }
}

#[test]
fn successor_chain_refuses_large_and_negative_operands() {
    let config = Config {
        successor_bound: 50,
        ..Config::default()
    };
    let d = |v: i128| DecimalValue::from_i128(v);
    assert!(successor_chain_add(&d(3), &d(51), &config).is_err());
    assert!(successor_chain_add(&d(-3), &d(5), &config).is_err());
    assert!(successor_chain_add(&d(3), &d(50), &config).is_ok());
}

#[test]
fn completeness_for_true_identities_up_to_a_thousand() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    use rand::Rng;
    for _ in 0..200 {
        let m: i128 = rng.gen_range(-1000..=1000);
        let n: i128 = rng.gen_range(-1000..=1000);
        let (dm, dn) = (DecimalValue::from_i128(m), DecimalValue::from_i128(n));
        let lhs = Aq::add(embed(&dm), embed(&dn));
        let rhs = embed(&DecimalValue::from_i128(m + n));
        match prove(&lhs, &rhs).unwrap() {
            ProofOutcome::Derived(d) => assert!(check(&d).is_valid(), "{lhs} = {rhs}"),
            other => panic!("{lhs} = {rhs}: {other:?}"),
        }
    }
}
