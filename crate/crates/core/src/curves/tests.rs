use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn z16_curve() -> WeierstrassCurve {
    // y^2 z = x^3 + z^3 over Z/16
    WeierstrassCurve::from_i64(&Ring::residue_u64(16), [0, 0, 0, 0, 1])
}

fn f5_curve() -> WeierstrassCurve {
    // y^2 = x^3 + 1 over F_5
    WeierstrassCurve::from_i64(&Ring::residue_u64(5), [0, 0, 0, 0, 1])
}

#[test]
fn membership_examples() {
    let c = z16_curve();
    let r = c.ring().clone();
    let p = |x: i64, y: i64, z: i64| [r.from_i64(x), r.from_i64(y), r.from_i64(z)];
    assert!(c.contains(&p(2, 1, 8)).unwrap());
    assert!(c.contains(&p(0, 1, 0)).unwrap());
    assert!(!c.contains(&p(1, 1, 1)).unwrap());
}

#[test]
fn smooth_point_examples() {
    let c = z16_curve();
    let p = c.point_i64([2, 1, 8]).unwrap();
    assert!(c.is_smooth_point(&p).unwrap());
    assert!(c.is_smooth_point(&c.zero_point()).unwrap());
    // the cusp of y^2 = x^3 over F_5 has all three partials vanishing
    let cusp_curve = WeierstrassCurve::from_i64(&Ring::residue_u64(5), [0, 0, 0, 0, 0]);
    let cusp = cusp_curve.point_i64([0, 0, 1]).unwrap();
    assert!(!cusp_curve.is_smooth_point(&cusp).unwrap());
}

#[test]
fn discriminant_values() {
    let q = Ring::rationals();
    let c = WeierstrassCurve::from_i64(&q, [0, 0, 0, 0, 1]);
    assert_eq!(c.discriminant(), q.from_i64(-432));
    assert!(c.is_smooth_curve());
    // -432 = 0 mod 16: singular curve, yet (2:1:8) is a smooth point
    let c16 = z16_curve();
    assert!(c16.discriminant().is_zero());
    assert!(!c16.is_smooth_curve());
    assert!(c16
        .is_smooth_point(&c16.point_i64([2, 1, 8]).unwrap())
        .unwrap());
    let degenerate = WeierstrassCurve::from_i64(&q, [0, 0, 0, 0, 0]);
    assert_eq!(degenerate.discriminant(), q.zero());
}

#[test]
fn oracle_identity_law() {
    let c = f5_curve();
    let p = c.point_i64([0, 1, 1]).unwrap();
    let sum = oracle_add(&c, &p, &c.zero_point()).unwrap();
    assert!(c.points_equal(&sum, &p).unwrap());
}

#[test]
fn oracle_small_group_of_order_six() {
    let c = f5_curve();
    let pts = enumerate_points(&c).unwrap();
    assert_eq!(pts.len(), 6);
    let p = c.point_i64([0, 1, 1]).unwrap();
    let doubled = oracle_add(&c, &p, &p).unwrap();
    assert!(c.points_equal(&doubled, &c.point_i64([0, 4, 1]).unwrap()).unwrap());
    let tripled = oracle_add(&c, &doubled, &p).unwrap();
    assert!(c.is_zero_point(&tripled).unwrap());
    assert_eq!(oracle_order(&c, &p).unwrap(), 3);
    let q = c.point_i64([2, 2, 1]).unwrap();
    let dq = oracle_add(&c, &q, &q).unwrap();
    assert!(c.points_equal(&dq, &c.point_i64([0, 4, 1]).unwrap()).unwrap());
}

#[test]
fn oracle_group_laws_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [5u64, 7, 11] {
        let curves = crate::verify::sample_smooth_curves(p, 3, &mut rng);
        for c in &curves {
            let pts = enumerate_points(c).unwrap();
            for _ in 0..20 {
                let a = &pts[rng.gen_range(0..pts.len())];
                let b = &pts[rng.gen_range(0..pts.len())];
                let d = &pts[rng.gen_range(0..pts.len())];
                let ab = oracle_add(c, a, b).unwrap();
                let ba = oracle_add(c, b, a).unwrap();
                assert!(c.points_equal(&ab, &ba).unwrap());
                let left = oracle_add(c, &ab, d).unwrap();
                let right = oracle_add(c, a, &oracle_add(c, b, d).unwrap()).unwrap();
                assert!(c.points_equal(&left, &right).unwrap());
            }
        }
    }
}

#[test]
fn oracle_requires_a_field() {
    let c = z16_curve();
    let p = c.point_i64([2, 1, 8]).unwrap();
    assert!(matches!(
        oracle_add(&c, &p, &p),
        Err(CurveError::NonField(_))
    ));
}

#[test]
fn mul_point_mod_16_chain() {
    let c = z16_curve();
    let mut ops = CurveOps::new(&c).unwrap();
    let p = c.point_i64([2, 1, 8]).unwrap();
    let two = ops.mul_point(&p, 2).unwrap();
    assert!(c.points_equal(&two, &c.point_i64([4, 1, 0]).unwrap()).unwrap());
    let four = ops.mul_point(&two, 2).unwrap();
    assert!(c.points_equal(&four, &c.point_i64([8, 1, 0]).unwrap()).unwrap());
    let eight = ops.mul_point(&four, 2).unwrap();
    assert!(c.is_zero_point(&eight).unwrap());
}

#[test]
fn mul_point_one_is_projective_identity() {
    let c = z16_curve();
    let p = c.point_i64([2, 1, 8]).unwrap();
    let q = c.mul_point(&p, 1).unwrap();
    assert!(c.points_equal(&p, &q).unwrap());
}

#[test]
fn mul_point_agrees_with_oracle_on_f5() {
    let c = f5_curve();
    let mut ops = CurveOps::new(&c).unwrap();
    let q = c.point_i64([2, 2, 1]).unwrap();
    let got = ops.mul_point(&q, 2).unwrap();
    assert!(c.points_equal(&got, &c.point_i64([0, 4, 1]).unwrap()).unwrap());
    for pt in enumerate_points(&c).unwrap() {
        for n in -6i64..=6 {
            let via_triples = ops.mul_point(&pt, n).unwrap();
            let via_oracle = oracle_mul(&c, &pt, n).unwrap();
            assert!(c.points_equal(&via_triples, &via_oracle).unwrap());
        }
    }
}

#[test]
fn mul_point_rejects_singular_points() {
    let cusp_curve = WeierstrassCurve::from_i64(&Ring::residue_u64(5), [0, 0, 0, 0, 0]);
    let cusp = cusp_curve.point_i64([0, 0, 1]).unwrap();
    assert!(matches!(
        cusp_curve.mul_point(&cusp, 2),
        Err(CurveError::SingularPoint)
    ));
}

#[test]
fn zn_embedding_examples() {
    let c = f5_curve();
    let mut ops = CurveOps::new(&c).unwrap();
    let p = c.point_i64([0, 1, 1]).unwrap();
    assert!(ops.is_zn_embedding(&p, 3).unwrap());
    assert!(!ops.is_zn_embedding(&p, 6).unwrap());
    assert!(!ops.is_zn_embedding(&c.zero_point(), 2).unwrap());
    assert!(!ops.is_zn_embedding(&c.zero_point(), 5).unwrap());
}

#[test]
fn projective_equality_is_equivalence_on_samples() {
    let c = f5_curve();
    let pts = enumerate_points(&c).unwrap();
    let r = c.ring().clone();
    for p in &pts {
        assert!(c.points_equal(p, p).unwrap());
        // scaled representative of the same class
        let u = r.from_i64(3);
        let scaled = [p.x.mul(&u), p.y.mul(&u), p.z.mul(&u)];
        let scaled = c.point(scaled).unwrap();
        assert!(c.points_equal(p, &scaled).unwrap());
        assert!(c.points_equal(&scaled, p).unwrap());
    }
    for p in &pts {
        for q in &pts {
            if !std::ptr::eq(p, q) {
                let eq1 = c.points_equal(p, q).unwrap();
                let eq2 = c.points_equal(q, p).unwrap();
                assert_eq!(eq1, eq2);
            }
        }
    }
}

#[test]
fn corollary_affine_formulas_agree_with_triples() {
    let c = f5_curve();
    let mut ops = CurveOps::new(&c).unwrap();
    for pt in enumerate_points(&c).unwrap() {
        if c.is_zero_point(&pt).unwrap() {
            continue;
        }
        let (x, y) = c.to_affine(&pt).unwrap();
        for n in 1..=6i64 {
            let np = oracle_mul(&c, &pt, n).unwrap();
            if c.is_zero_point(&np).unwrap() {
                continue;
            }
            let raw = ops.mul_affine_formulas(&x, &y, n).unwrap();
            let wrapped = c.point(raw.clone());
            assert!(wrapped.is_ok(), "affine formulas left the curve");
            assert!(c.proj_equal(&raw, &np.coords()).unwrap());
        }
    }
}

#[test]
fn integer_lift_backend_matches_direct_on_odd_moduli() {
    // same curve over Z/15 via the direct ladder and via integer lifts
    let ring = Ring::residue_u64(15);
    let c = WeierstrassCurve::from_i64(&ring, [1, 2, 3, 4, 5]);
    let mut direct = CurveOps::new(&c).unwrap();
    // force the lift path by building over zz and reducing
    let zz = Ring::integers();
    let lifted = WeierstrassCurve::from_i64(&zz, [1, 2, 3, 4, 5]);
    let mut lift_ops = CurveOps::new(&lifted).unwrap();
    for n in -5i64..=5 {
        let a = direct.triple(n).unwrap().clone();
        let b = crate::projmul::reduce_triple(lift_ops.triple(n).unwrap(), &ring).unwrap();
        assert_eq!(a, b, "n = {n}");
    }
}
