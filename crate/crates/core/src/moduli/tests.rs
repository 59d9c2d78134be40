use super::*;
use crate::curves::{enumerate_points, oracle_order};
use crate::mpoly::parse_poly;
use crate::rings::Ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn st(s: &str) -> MPoly {
    parse_poly::<num_bigint::BigInt>(&tate_vars(), &(), s).unwrap()
}

#[test]
fn psi_values_in_tate_coordinates() {
    let mut t = TateLadder::new();
    assert_eq!(t.psi_st(1), st("1"));
    assert_eq!(t.psi_st(2), st("t"));
    assert_eq!(t.psi_st(3), st("t^3"));
    assert_eq!(t.psi_st(4), st("s*t^5"));
}

#[test]
fn psi_st_agrees_with_generic_substitution_path() {
    // independent route: take the generic ladder, substitute
    // (a1,..,a6) -> (1+s,t,t,0,0) and (X,Y) -> (0,0)
    let mut t = TateLadder::new();
    let mut g = crate::divpoly::generic_ladder();
    let tv = tate_vars();
    for n in 1..=8u64 {
        let psi = g.psi(n as i64);
        let value = g.affine_ctx().value_poly(&psi);
        let images: Vec<MPoly> = g
            .affine_ctx()
            .vars()
            .names()
            .iter()
            .map(|name| match name.as_str() {
                "a1" => st("1 + s"),
                "a2" | "a3" => st("t"),
                _ => MPoly::zero(tv.clone(), ()),
            })
            .collect();
        let via_generic =
            value.substitute_map(&tv, &(), &|c: &num_bigint::BigInt| c.clone(), &images);
        assert_eq!(t.psi_st(n), via_generic, "psi_{n}");
    }
}

#[test]
fn f_values_and_exactness() {
    let mut t = TateLadder::new();
    assert_eq!(t.f_st(1).unwrap(), st("1"));
    assert_eq!(t.f_st(2).unwrap(), st("t"));
    assert_eq!(t.f_st(3).unwrap(), st("t^3"));
    assert_eq!(t.f_st(4).unwrap(), st("s*t^4"));
}

#[test]
fn product_of_f_over_divisors_is_psi() {
    let mut t = TateLadder::new();
    for n in 1..=8u64 {
        let mut prod = st("1");
        for d in 1..=n {
            if n % d == 0 {
                prod = prod.mul(&t.f_st(d).unwrap());
            }
        }
        assert_eq!(prod, t.psi_st(n), "n = {n}");
    }
}

#[test]
fn delta_factors_as_t_cubed_times_cofactor() {
    let delta = delta_st();
    let cof = st(
        "-((1+s)^2 + 4*t)^2 - 8*(1+s)^3 - 27*t + 9*(1+s)*((1+s)^2 + 4*t)",
    );
    assert_eq!(delta, st("t^3").mul(&cof));
}

#[test]
fn delta_matches_independent_b_invariant_expansion() {
    // hand-written route: b2 = (1+s)^2 + 4t, b4 = (1+s)t, b6 = t^2, b8 = t^3
    let b2 = st("(1+s)^2 + 4*t");
    let b4 = st("(1+s)*t");
    let b6 = st("t^2");
    let b8 = st("t^3");
    let expect = b2
        .mul(&b2)
        .mul(&b8)
        .neg()
        .sub(&b4.pow(3).scale_i64(8))
        .sub(&b6.mul(&b6).scale_i64(27))
        .add(&b2.mul(&b4).mul(&b6).scale_i64(9));
    assert_eq!(delta_st(), expect);
}

#[test]
fn tate_form_of_normal_curve_is_identity() {
    let ring = Ring::residue_u64(7);
    let s0 = ring.from_i64(3);
    let t0 = ring.from_i64(2);
    let c = tate_curve(&s0, &t0).unwrap();
    let p = c.point_i64([0, 0, 1]).unwrap();
    let tf = tate_normal_form(&c, &p).unwrap();
    assert!(tf.transform.is_identity());
    assert_eq!(tf.s, s0);
    assert_eq!(tf.t, t0);
    assert_eq!(tf.curve, c);
}

#[test]
fn order_three_point_obstructs() {
    // (0,1) on y^2 = x^3 + 1 over F_5 has order 3, so a2 fails to be a unit
    let ring = Ring::residue_u64(5);
    let c = crate::curves::WeierstrassCurve::from_i64(&ring, [0, 0, 0, 0, 1]);
    let p = c.point_i64([0, 1, 1]).unwrap();
    match tate_normal_form(&c, &p) {
        Err(ModuliError::OrderObstruction { which }) => {
            assert_eq!(which, Obstruction::A2NotUnit)
        }
        other => panic!("expected order obstruction, got {other:?}"),
    }
}

#[test]
fn order_two_point_obstructs_on_a3() {
    // (4,0) on y^2 = x^3 + 1 over F_5 is 2-torsion
    let ring = Ring::residue_u64(5);
    let c = crate::curves::WeierstrassCurve::from_i64(&ring, [0, 0, 0, 0, 1]);
    let p = c.point_i64([4, 0, 1]).unwrap();
    match tate_normal_form(&c, &p) {
        Err(ModuliError::OrderObstruction { which }) => {
            assert_eq!(which, Obstruction::A3NotUnit)
        }
        other => panic!("expected order obstruction, got {other:?}"),
    }
}

#[test]
fn tate_round_trip_on_sampled_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut found = 0;
    for p in [7u64, 11, 13] {
        let curves = crate::verify::sample_smooth_curves(p, 4, &mut rng);
        for c in curves {
            let pts = enumerate_points(&c).unwrap();
            for pt in pts {
                if c.is_zero_point(&pt).unwrap() {
                    continue;
                }
                let order = oracle_order(&c, &pt).unwrap();
                if order < 4 {
                    continue;
                }
                found += 1;
                let tf = tate_normal_form(&c, &pt).unwrap();
                // the normal form carries the marked point at (0:0:1) as a
                // Z/order-embedding
                let mut ops = crate::curves::CurveOps::new(&tf.curve).unwrap();
                let origin = tf.curve.point_i64([0, 0, 1]).unwrap();
                assert!(ops.is_zn_embedding(&origin, order).unwrap());
                // re-normalizing is the identity
                let tf2 = tate_normal_form(&tf.curve, &origin).unwrap();
                assert!(tf2.transform.is_identity());
                assert_eq!(tf2.s, tf.s);
                assert_eq!(tf2.t, tf.t);
                if found >= 25 {
                    return;
                }
            }
        }
    }
    assert!(found > 0, "no instances sampled");
}

#[test]
fn emit_rejects_small_n() {
    let mut t = TateLadder::new();
    assert!(matches!(emit_y1(&mut t, 3), Err(ModuliError::Usage(_))));
}

#[test]
fn emit_y1_4_and_report_note() {
    let mut t = TateLadder::new();
    let y1 = emit_y1(&mut t, 4).unwrap();
    assert_eq!(y1.f, st("s*t^4"));
    // p_4 = psi_1 psi_2 = t
    assert_eq!(y1.p_n, st("t"));
    let report = y1.text_report();
    assert!(report.contains("V(s)"), "report: {report}");
    let j = y1.to_json();
    assert_eq!(j.universal_curve.a1, "1+s");
    assert_eq!(j.universal_curve.a2, "t");
    assert_eq!(j.universal_curve.a4, "0");
}

#[test]
fn f5_roots_match_exact_order_five() {
    // sampled version of the moduli correspondence: over F_7, every (s0,t0)
    // with f_5 = 0 and delta != 0 gives (0:0:1) exact order 5, and conversely
    let mut t = TateLadder::new();
    let f5 = t.f_st(5).unwrap();
    let delta = delta_st();
    let ring = Ring::residue_u64(7);
    for s0 in 0..7i64 {
        for t0 in 0..7i64 {
            let to_ring = |c: &num_bigint::BigInt| ring.from_bigint(c);
            let vals = [ring.from_i64(s0), ring.from_i64(t0)];
            let fv = f5.eval(&ring, &to_ring, &vals);
            let dv = delta.eval(&ring, &to_ring, &vals);
            if dv.is_zero() {
                continue;
            }
            let c = tate_curve(&vals[0], &vals[1]).unwrap();
            let p = c.point_i64([0, 0, 1]).unwrap();
            let order = oracle_order(&c, &p).unwrap();
            assert_eq!(fv.is_zero(), order == 5, "s={s0} t={t0} order={order}");
        }
    }
}
