//! Tate normal form and explicit Y1(n) defining data.
//!
//! A curve with a marked point P satisfying 2P != 0 and 3P != 0 fiberwise has
//! a unique model y^2 z + (1+s) xyz + t y z^2 = x^3 + t x^2 z carrying P at
//! (0 : 0 : 1). Specializing the division polynomials along
//! (a1,..,a6) -> (1+s, t, t, 0, 0) and evaluating at (X,Y) = (0,0) yields
//! psi_n in Z[s,t]; the exact-order factors f_n satisfy
//! prod_{d | n} f_d = psi_n, and f_n together with the localized
//! discriminant delta cuts out Y1(n) over Z[1/n, delta^{-1}].

use crate::curves::{discriminant_generic, CurveError, ProjPoint, WeierstrassCurve};
use crate::divpoly::{DivPolyError, DivPolyLadder};
use crate::mpoly::{
    tate_affine_vars, tate_vars, MPoly, Monomial, PolyError, PolyJson,
};
use crate::rings::{RingElement, RingError};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

/// Which unit condition failed while normalizing; these are exactly the
/// "2P != 0" and "3P != 0" fiberwise hypotheses surfacing ring-theoretically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    A3NotUnit,
    A2NotUnit,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::A3NotUnit => write!(f, "a3 is not a unit (2P = 0 in some fiber)"),
            Obstruction::A2NotUnit => write!(f, "a2 is not a unit (3P = 0 in some fiber)"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ModuliError {
    #[error("order obstruction: {which}")]
    OrderObstruction { which: Obstruction },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    DivPoly(#[from] DivPolyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("usage: {0}")]
    Usage(String),
}

/// The coordinate change (translation, shear, scale) taking a curve with a
/// marked affine point to its Tate normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveTransform {
    /// Marked point's affine coordinates; the translation x -> x - x0,
    /// y -> y - y0 moves it to (0,0) and kills a6.
    pub x0: RingElement,
    pub y0: RingElement,
    /// Shear y -> y - lambda x killing the linear x-coefficient.
    pub lambda: RingElement,
    /// Scale x -> x/u^2, y -> y/u^3 forcing a2 = a3; always a unit.
    pub u: RingElement,
}

impl CurveTransform {
    pub fn identity(curve: &WeierstrassCurve) -> Self {
        let ring = curve.ring();
        CurveTransform {
            x0: ring.zero(),
            y0: ring.zero(),
            lambda: ring.zero(),
            u: ring.one(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x0.is_zero() && self.y0.is_zero() && self.lambda.is_zero() && self.u.is_one()
    }

    /// Image of the curve under the composite change of variables.
    pub fn apply_to_curve(&self, c: &WeierstrassCurve) -> Result<WeierstrassCurve, ModuliError> {
        let ring = c.ring().clone();
        let [a1, a2, a3, a4, a6] = c.coefficients().clone();
        // translate x = x' + x0, y = y' + y0
        let (r, t0) = (&self.x0, &self.y0);
        let two = ring.from_i64(2);
        let three = ring.from_i64(3);
        let b1 = a1.clone();
        let b2 = a2.add(&three.mul(r));
        let b3 = a3.add(&r.mul(&a1)).add(&two.mul(t0));
        let b4 = a4
            .add(&two.mul(r).mul(&a2))
            .sub(&t0.mul(&a1))
            .add(&three.mul(&r.mul(r)));
        let b6 = a6
            .add(&r.mul(&a4))
            .add(&r.mul(r).mul(&a2))
            .add(&r.pow(3))
            .sub(&t0.mul(&a3))
            .sub(&t0.mul(t0))
            .sub(&r.mul(t0).mul(&a1));
        // shear y = y' + lambda x'
        let s = &self.lambda;
        let c1 = b1.add(&two.mul(s));
        let c2 = b2.sub(&s.mul(&b1)).sub(&s.mul(s));
        let c3 = b3.clone();
        let c4 = b4.sub(&s.mul(&b3));
        let c6 = b6.clone();
        // scale x = u^2 x', y = u^3 y': a_i -> a_i / u^i
        let ui = self
            .u
            .inverse()
            .map_err(|_| ModuliError::Usage("scale factor must be a unit".into()))?;
        let d1 = c1.mul(&ui);
        let d2 = c2.mul(&ui.pow(2));
        let d3 = c3.mul(&ui.pow(3));
        let d4 = c4.mul(&ui.pow(4));
        let d6 = c6.mul(&ui.pow(6));
        Ok(WeierstrassCurve::new(ring, [d1, d2, d3, d4, d6])?)
    }

    /// Image of a point (affine part tracked through the three steps).
    pub fn apply_to_point(
        &self,
        c: &WeierstrassCurve,
        p: &ProjPoint,
        target: &WeierstrassCurve,
    ) -> Result<ProjPoint, ModuliError> {
        if c.points_equal(p, &c.zero_point())? {
            return Ok(target.zero_point());
        }
        let (x, y) = c.to_affine(p)?;
        let x1 = x.sub(&self.x0);
        let y1 = y.sub(&self.y0);
        let y2 = y1.sub(&self.lambda.mul(&x1));
        let ui = self
            .u
            .inverse()
            .map_err(|_| ModuliError::Usage("scale factor must be a unit".into()))?;
        let x3 = x1.mul(&ui.pow(2));
        let y3 = y2.mul(&ui.pow(3));
        Ok(target.point([x3, y3, c.ring().one()])?)
    }
}

/// A curve in Tate normal form: coefficients (1+s, t, t, 0, 0) with the
/// marked point at (0 : 0 : 1) and t a unit.
#[derive(Debug, Clone)]
pub struct TateForm {
    pub s: RingElement,
    pub t: RingElement,
    pub transform: CurveTransform,
    pub curve: WeierstrassCurve,
}

/// Normalize (curve, marked point). The checks `a3 unit after translation`
/// and `a2 unit after the shear` are precisely the conditions 2P != 0 and
/// 3P != 0 in every fiber; failures carry which one obstructed.
pub fn tate_normal_form(
    c: &WeierstrassCurve,
    p: &ProjPoint,
) -> Result<TateForm, ModuliError> {
    let ring = c.ring().clone();
    let (x0, y0) = c.to_affine(p)?;
    // After translation (known in closed form; recomputed via the transform
    // at the end as a consistency assertion).
    let [a1, a2, a3, a4, _a6] = c.coefficients().clone();
    let two = ring.from_i64(2);
    let three = ring.from_i64(3);
    let t_a1 = a1.clone();
    let t_a2 = a2.add(&three.mul(&x0));
    let t_a3 = a3.add(&x0.mul(&a1)).add(&two.mul(&y0));
    let t_a4 = a4
        .add(&two.mul(&x0).mul(&a2))
        .sub(&y0.mul(&a1))
        .add(&three.mul(&x0.mul(&x0)));
    let a3_inv = t_a3.inverse().map_err(|_| ModuliError::OrderObstruction {
        which: Obstruction::A3NotUnit,
    })?;
    let lambda = t_a4.mul(&a3_inv);
    // after shear
    let s_a2 = t_a2.sub(&lambda.mul(&t_a1)).sub(&lambda.mul(&lambda));
    let s_a3 = t_a3.clone();
    let a2_inv = s_a2.inverse().map_err(|_| ModuliError::OrderObstruction {
        which: Obstruction::A2NotUnit,
    })?;
    let u = s_a3.mul(&a2_inv);
    let transform = CurveTransform {
        x0,
        y0,
        lambda,
        u: u.clone(),
    };
    let normal = transform.apply_to_curve(c)?;
    // s and t read off the normalized model
    let [n1, n2, n3, n4, n6] = normal.coefficients().clone();
    let s_val = n1.sub(&ring.one());
    let t_val = n2.clone();
    if n3 != t_val || !n4.is_zero() || !n6.is_zero() {
        return Err(ModuliError::Usage(
            "normalization did not reach Tate form (internal error)".into(),
        ));
    }
    if !t_val.is_unit() {
        return Err(ModuliError::Usage(
            "normalized t is not a unit (internal error)".into(),
        ));
    }
    let mapped = transform.apply_to_point(c, p, &normal)?;
    let origin = normal.point([ring.zero(), ring.zero(), ring.one()])?;
    if !normal.points_equal(&mapped, &origin)? {
        return Err(ModuliError::Usage(
            "marked point did not land on (0:0:1) (internal error)".into(),
        ));
    }
    Ok(TateForm {
        s: s_val,
        t: t_val,
        transform,
        curve: normal,
    })
}

/// The Tate-form curve over a ring for given (s, t) values.
pub fn tate_curve(
    s: &RingElement,
    t: &RingElement,
) -> Result<WeierstrassCurve, ModuliError> {
    let ring = s.ring().clone();
    let one = ring.one();
    Ok(WeierstrassCurve::new(
        ring.clone(),
        [
            one.add(s),
            t.clone(),
            t.clone(),
            ring.zero(),
            ring.zero(),
        ],
    )?)
}

/// Ladder over Z[s,t] with (a1,..,a6) = (1+s, t, t, 0, 0); psi_n and f_n are
/// read off at (X,Y) = (0,0).
pub struct TateLadder {
    ladder: DivPolyLadder<BigInt>,
    psi_cache: HashMap<u64, MPoly>,
    f_cache: HashMap<u64, MPoly>,
}

impl Default for TateLadder {
    fn default() -> Self {
        Self::new()
    }
}

impl TateLadder {
    pub fn new() -> Self {
        let vars = tate_affine_vars();
        let v = |n: &str| MPoly::var(vars.clone(), (), n);
        let one = MPoly::one(vars.clone(), ());
        let zero = MPoly::zero(vars.clone(), ());
        let coeffs = [one.add(&v("s")), v("t"), v("t"), zero.clone(), zero];
        let ladder = DivPolyLadder::with_coefficients(vars, (), coeffs);
        TateLadder {
            ladder,
            psi_cache: HashMap::new(),
            f_cache: HashMap::new(),
        }
    }

    pub fn ladder(&mut self) -> &mut DivPolyLadder<BigInt> {
        &mut self.ladder
    }

    /// psi_n = Psi_n(0,0) in Z[s,t].
    pub fn psi_st(&mut self, n: u64) -> MPoly {
        if let Some(p) = self.psi_cache.get(&n) {
            return p.clone();
        }
        let psi = self.ladder.psi(n as i64);
        let value = self.ladder.affine_ctx().value_poly(&psi);
        let p = restrict_to_st(&value);
        self.psi_cache.insert(n, p.clone());
        p
    }

    /// f_1 = 1; f_n = psi_n / prod_{d | n, 0 < d < n} f_d, an exact division
    /// in Z[s,t]. Exactness is a theorem; failure is fatal.
    pub fn f_st(&mut self, n: u64) -> Result<MPoly, ModuliError> {
        if n == 0 {
            return Err(ModuliError::Usage("f_n needs n >= 1".into()));
        }
        if let Some(p) = self.f_cache.get(&n) {
            return Ok(p.clone());
        }
        let p = if n == 1 {
            MPoly::one(tate_vars(), ())
        } else {
            let mut denom = MPoly::one(tate_vars(), ());
            for d in 1..n {
                if n % d == 0 {
                    denom = denom.mul(&self.f_st(d)?);
                }
            }
            let psi = self.psi_st(n);
            psi.divexact(&denom).map_err(|e| {
                ModuliError::DivPoly(DivPolyError::ExactnessViolation(format!(
                    "psi_{n} not divisible by the product of proper f_d: {e}"
                )))
            })?
        };
        self.f_cache.insert(n, p.clone());
        Ok(p)
    }

    /// p_n = prod_{d | n, 0 < d < n} psi_d.
    pub fn p_st(&mut self, n: u64) -> MPoly {
        let mut prod = MPoly::one(tate_vars(), ());
        for d in 1..n {
            if n % d == 0 {
                prod = prod.mul(&self.psi_st(d));
            }
        }
        prod
    }
}

/// Drop the X and Y lanes of a [s,t,X,Y] polynomial constant in X and Y.
fn restrict_to_st(p: &MPoly) -> MPoly {
    let vars = p.vars();
    let ix = vars.index_of("X").unwrap();
    let iy = vars.index_of("Y").unwrap();
    let out = tate_vars();
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exponent(ix) == 0 && m.exponent(iy) == 0)
        .map(|(m, c)| {
            let e = [m.exponent(0) as u32, m.exponent(1) as u32];
            (Monomial::from_exponents(&e).unwrap(), c.clone())
        })
        .collect();
    MPoly::from_terms(out, (), terms)
}

/// delta = Delta(1+s, t, t, 0, 0) in Z[s,t], specialized from the generic
/// discriminant (single source of truth).
pub fn delta_st() -> MPoly {
    let out = tate_vars();
    let one = MPoly::one(out.clone(), ());
    let s = MPoly::var(out.clone(), (), "s");
    let t = MPoly::var(out.clone(), (), "t");
    let zero = MPoly::zero(out.clone(), ());
    let images = [one.add(&s), t.clone(), t, zero.clone(), zero];
    discriminant_generic().substitute_map(&out, &(), &|c: &BigInt| c.clone(), &images)
}

/// The defining data of Y1(n): f_n and delta in Z[s,t], the auxiliary
/// product p_n, and the universal curve coefficients (1+s, t, t, 0, 0).
#[derive(Debug, Clone)]
pub struct Y1Equation {
    pub n: u64,
    pub f: MPoly,
    pub delta: MPoly,
    pub p_n: MPoly,
}

/// Emit the Y1(n) data; Tate form needs 2P != 0 and 3P != 0, so n >= 4.
pub fn emit_y1(tate: &mut TateLadder, n: u64) -> Result<Y1Equation, ModuliError> {
    if n < 4 {
        return Err(ModuliError::Usage(format!(
            "Y1(n) emission needs n >= 4, got {n}"
        )));
    }
    Ok(Y1Equation {
        n,
        f: tate.f_st(n)?,
        delta: delta_st(),
        p_n: tate.p_st(n),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniversalCurveJson {
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    pub a6: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Y1Json {
    pub n: u64,
    pub f: PolyJson,
    pub delta: PolyJson,
    pub p_n: PolyJson,
    pub universal_curve: UniversalCurveJson,
}

impl Y1Equation {
    pub fn to_json(&self) -> Y1Json {
        Y1Json {
            n: self.n,
            f: self.f.to_json(),
            delta: self.delta.to_json(),
            p_n: self.p_n.to_json(),
            universal_curve: UniversalCurveJson {
                a1: "1+s".into(),
                a2: "t".into(),
                a3: "t".into(),
                a4: "0".into(),
                a6: "0".into(),
            },
        }
    }

    /// Human-readable report. When f_n = t^k * g, the note records that on
    /// D(delta) (where t is invertible, since t^3 divides delta) the curve
    /// Y1(n) is cut out by g alone.
    pub fn text_report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Y1({}) over Z[1/{}]", self.n, self.n);
        let _ = writeln!(out, "  f_{}   = {}", self.n, self.f);
        let _ = writeln!(out, "  delta = {}", self.delta);
        let _ = writeln!(out, "  p_{}   = {}", self.n, self.p_n);
        let _ = writeln!(
            out,
            "  universal curve: y^2z + (1+s)xyz + tyz^2 - x^3 - tx^2z, marked point (0:0:1)"
        );
        let _ = writeln!(
            out,
            "  Y1({}) = Spec Z[s,t,delta^-1,1/{}]/(f_{})",
            self.n, self.n, self.n
        );
        if let Some((k, g)) = strip_t_power(&self.f) {
            if k > 0 {
                let _ = writeln!(
                    out,
                    "  note: f_{} = t^{} * ({}); t is a unit on D(delta), so V(f_{}) \u{2229} D(delta) = V({})",
                    self.n, k, g, self.n, g
                );
            }
        }
        out
    }
}

/// Factor out the largest power of t: f = t^k * g.
fn strip_t_power(f: &MPoly) -> Option<(u16, MPoly)> {
    if f.is_zero() {
        return None;
    }
    let it = f.vars().index_of("t")?;
    let k = f.terms().iter().map(|(m, _)| m.exponent(it)).min()?;
    if k == 0 {
        return Some((0, f.clone()));
    }
    let tk = MPoly::from_terms(
        f.vars().clone(),
        (),
        vec![(Monomial::var(it, k), BigInt::from(1))],
    );
    let g = f.divexact(&tk).ok()?;
    Some((k, g))
}

#[cfg(test)]
mod tests;
