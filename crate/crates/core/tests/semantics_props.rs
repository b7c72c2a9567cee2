mod common;

use proptest::prelude::*;

use aqarith::semantics::{
    eval_decimal, evaluate, iso_map, Backend, EqcInt, OrdinalValue, Value,
};
use aqarith::{Aq, Config};

use common::{closed_aq, oracle};

fn int_backends() -> Vec<Backend> {
    ["decimal-int", "eqc-int", "signed-int"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn nat_backends() -> Vec<Backend> {
    ["decimal-nat", "peano-nat", "ordinal-nat"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Closed AQs without opposites, for the nat backends.
fn nat_aq() -> impl Strategy<Value = Aq> {
    (0..=6u64).prop_map(Aq::num).prop_recursive(3, 12, 4, |inner| {
        prop::collection::vec(inner, 2..=4).prop_map(Aq::sum)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn int_backends_agree_through_the_iso_map(a in closed_aq(20)) {
        let bound = 200u64;
        prop_assume!(oracle(&a).magnitude() <= &bound.into());
        let config = Config::default();
        let bs = int_backends();
        for &b1 in &bs {
            for &b2 in &bs {
                let map = iso_map(b1, b2, bound, &config).unwrap();
                let v1 = evaluate(&a, b1, &config).unwrap();
                let v2 = evaluate(&a, b2, &config).unwrap();
                prop_assert_eq!(map.map(&v1), Some(&v2), "{} in {} and {}", a, b1, b2);
            }
        }
    }

    #[test]
    fn nat_backends_agree_through_the_iso_map(a in nat_aq()) {
        let config = Config::default();
        prop_assume!(oracle(&a) <= 64.into());
        let bs = nat_backends();
        for &b1 in &bs {
            for &b2 in &bs {
                let map = iso_map(b1, b2, 64, &config).unwrap();
                let v1 = evaluate(&a, b1, &config).unwrap();
                let v2 = evaluate(&a, b2, &config).unwrap();
                prop_assert_eq!(map.map(&v1), Some(&v2));
            }
        }
    }

    #[test]
    fn decimal_evaluation_matches_the_oracle(a in closed_aq(1_000_000)) {
        prop_assert_eq!(eval_decimal(&a).unwrap().to_string(), oracle(&a).to_string());
    }

    #[test]
    fn value_laws(x in closed_aq(1000), y in closed_aq(1000), z in closed_aq(1000)) {
        let v = |a: Aq| eval_decimal(&a).unwrap();
        prop_assert_eq!(v(Aq::add(x.clone(), y.clone())), v(Aq::add(y.clone(), x.clone())));
        prop_assert_eq!(
            v(Aq::add(Aq::add(x.clone(), y.clone()), z.clone())),
            v(Aq::add(x.clone(), Aq::add(y.clone(), z.clone())))
        );
        prop_assert_eq!(v(Aq::add(x.clone(), Aq::neg(x.clone()))), v(Aq::zero()));
    }

    #[test]
    fn eqc_canonical_is_an_idempotent_representative(a in 0u64..10_000, b in 0u64..10_000) {
        let e = EqcInt::new(a, b);
        let c = e.canonical();
        prop_assert_eq!(c, e);
        prop_assert_eq!(c.canonical().a, c.a);
        prop_assert_eq!(c.canonical().b, c.b);
        prop_assert_eq!(c.a.min(c.b), 0);
        // the defining relation: (a,b) ~ (c.a,c.b) iff a + c.b = b + c.a
        prop_assert_eq!(a + c.b, b + c.a);
    }
}

#[test]
fn ordinals_are_their_predecessors() {
    for n in 0..=64u64 {
        let o = OrdinalValue::from_index(n);
        let set = o.set();
        assert_eq!(set.len() as u64, n);
        assert!(set.is_transitive());
        for k in 0..n {
            assert!(set.contains(&OrdinalValue::from_index(k).set()), "{k} in {n}");
        }
    }
}

#[test]
fn nat_backends_refuse_opposites() {
    let config = Config::default();
    for b in nat_backends() {
        assert!(evaluate(&Aq::neg(Aq::num(1)), b, &config).is_err());
    }
    assert!(matches!(
        evaluate(&Aq::num(3), "ordinal".parse().unwrap(), &config),
        Ok(Value::Ordinal(_))
    ));
}
