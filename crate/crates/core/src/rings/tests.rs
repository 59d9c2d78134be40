use super::*;
use proptest::prelude::*;
use rand::SeedableRng;

fn z16() -> Ring {
    Ring::residue_u64(16)
}

#[test]
fn modular_addition_reduces() {
    let r = z16();
    assert_eq!(r.from_i64(9).add(&r.from_i64(9)), r.from_i64(2));
}

#[test]
fn integer_multiplication() {
    let r = Ring::integers();
    assert_eq!(r.from_i64(-3).mul(&r.from_i64(4)), r.from_i64(-12));
}

#[test]
fn rational_addition_reduces() {
    let r = Ring::rationals();
    let half = r.parse_element("1/2").unwrap();
    let third = r.parse_element("1/3").unwrap();
    assert_eq!(half.add(&third), r.parse_element("5/6").unwrap());
}

#[test]
fn inverse_of_one_mod_16() {
    let r = z16();
    assert_eq!(r.from_i64(1).inverse().unwrap(), r.from_i64(1));
}

#[test]
fn inverse_failure_carries_witness_gcd() {
    let r = z16();
    match r.from_i64(8).inverse() {
        Err(RingError::NotAUnit { gcd: Some(g) }) => assert_eq!(g, BigUint::from(8u32)),
        other => panic!("expected NotAUnit with gcd, got {other:?}"),
    }
}

#[test]
fn inverse_of_two_mod_15() {
    let r = Ring::residue_u64(15);
    assert_eq!(r.from_i64(2).inverse().unwrap(), r.from_i64(8));
}

#[test]
fn unit_ideal_examples() {
    let r = z16();
    let els = |vals: &[i64]| vals.iter().map(|&v| r.from_i64(v)).collect::<Vec<_>>();
    assert!(unit_ideal_test(&els(&[0, 0, 1])).unwrap());
    assert!(!unit_ideal_test(&els(&[4, 8, 12])).unwrap());
    let zz = Ring::integers();
    let zi = [zz.from_i64(6), zz.from_i64(10), zz.from_i64(15)];
    assert!(unit_ideal_test(&zi).unwrap());
}

#[test]
fn unit_ideal_rejects_polynomial_rings() {
    let r = Ring::polynomial(Ring::integers(), VarSet::new(&["x", "y"])).unwrap();
    let e = unit_ideal_test(&[r.one()]);
    assert!(matches!(e, Err(RingError::Capability { .. })));
}

#[test]
fn unit_ideal_rejects_mixed_rings() {
    let e = unit_ideal_test(&[Ring::integers().one(), z16().one()]);
    assert!(matches!(e, Err(RingError::Mismatch(_, _))));
}

#[test]
fn descriptor_strings_round_trip() {
    for d in [
        "zz",
        "qq",
        "zmod:16",
        "zmod:1009",
        "poly:zz:x,y",
        "poly:qq:t",
        "poly:zmod:7:u,v,w",
        "poly:poly:zz:y:x",
    ] {
        let r = Ring::parse(d).unwrap();
        assert_eq!(r.to_string(), d);
        assert_eq!(Ring::parse(&r.to_string()).unwrap(), r);
    }
    assert!(Ring::parse("zmod:1").is_err());
    assert!(Ring::parse("zzz").is_err());
    assert!(Ring::parse("poly:zz:x,x").is_err());
    // shadowing a base-ring variable would make element strings ambiguous
    assert!(Ring::parse("poly:poly:zz:x:x").is_err());
}

#[test]
fn element_strings_round_trip() {
    let cases = [
        ("zz", vec!["0", "-17", "123456789012345678901234567890"]),
        ("qq", vec!["0", "5/6", "-1/2", "7"]),
        ("zmod:16", vec!["0", "15", "9"]),
        ("poly:zz:x,y", vec!["0", "x^2 + x*y + 1", "-3*x + 2"]),
        ("poly:qq:t", vec!["1/2*t^2 - t + 3/4"]),
        ("poly:zmod:7:u", vec!["6*u^3 + u + 5"]),
    ];
    for (d, strings) in cases {
        let r = Ring::parse(d).unwrap();
        for s in strings {
            let e = r.parse_element(s).unwrap();
            assert_eq!(r.parse_element(&e.to_string()).unwrap(), e, "in {d}: {s}");
        }
    }
}

#[test]
fn nested_polynomial_element_round_trips() {
    let r = Ring::parse("poly:poly:zz:y:x").unwrap();
    let e = r.parse_element("(y + 1)*x^2 + (2*y)*x + 3").unwrap();
    assert_eq!(r.parse_element(&e.to_string()).unwrap(), e);
}

#[test]
fn polynomial_unit_with_nilpotent_part_inverts() {
    // 1 + 2x is a unit in Z/8[x]
    let r = Ring::parse("poly:zmod:8:x").unwrap();
    let p = r.parse_element("2*x + 1").unwrap();
    let inv = p.inverse().unwrap();
    assert_eq!(p.mul(&inv), r.one());
    // x itself is not a unit, nor is 2
    assert!(r.parse_element("x").unwrap().inverse().is_err());
    assert!(r.parse_element("2").unwrap().inverse().is_err());
    // over Z[x] only constant units invert
    let zx = Ring::parse("poly:zz:x").unwrap();
    assert!(zx.parse_element("x + 1").unwrap().inverse().is_err());
    assert_eq!(
        zx.parse_element("-1").unwrap().inverse().unwrap(),
        zx.from_i64(-1)
    );
}

#[test]
fn field_detection() {
    assert!(Ring::rationals().is_field());
    assert!(Ring::residue_u64(7).is_field());
    assert!(Ring::residue_u64(1009).is_field());
    assert!(!Ring::residue_u64(9).is_field());
    assert!(!Ring::residue_u64(15).is_field());
    assert!(!Ring::integers().is_field());
}

#[test]
fn primality_spot_checks() {
    for (n, want) in [
        (2u64, true),
        (3, true),
        (4, false),
        (1009, true),
        (1_000_003, true),
        (1_000_001, false),
        (341, false),  // Fermat pseudoprime base 2
        (561, false),  // Carmichael
    ] {
        assert_eq!(is_prime(&BigUint::from(n)), want, "n = {n}");
    }
}

fn sample_rings() -> Vec<Ring> {
    vec![
        Ring::integers(),
        Ring::rationals(),
        Ring::residue_u64(16),
        Ring::residue_u64(7),
        Ring::residue_u64(15),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_hold(seed in 0u64..1_000_000, ring_ix in 0usize..5) {
        let ring = sample_rings()[ring_ix].clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = ring.random_element(&mut rng);
        let b = ring.random_element(&mut rng);
        let c = ring.random_element(&mut rng);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&ring.zero()), a.clone());
        prop_assert_eq!(a.mul(&ring.one()), a.clone());
        prop_assert_eq!(a.add(&a.neg()), ring.zero());
    }

    #[test]
    fn inverse_iff_unit_ideal(seed in 0u64..1_000_000, ring_ix in 0usize..5) {
        let ring = sample_rings()[ring_ix].clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = ring.random_element(&mut rng);
        let inv = a.inverse();
        let gen = unit_ideal_test(std::slice::from_ref(&a)).unwrap();
        prop_assert_eq!(inv.is_ok(), gen);
        if let Ok(i) = inv {
            prop_assert_eq!(a.mul(&i), ring.one());
        }
    }

    #[test]
    fn element_round_trip(seed in 0u64..1_000_000, ring_ix in 0usize..5) {
        let ring = sample_rings()[ring_ix].clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = ring.random_element(&mut rng);
        prop_assert_eq!(ring.parse_element(&a.to_string()).unwrap(), a);
    }
}
