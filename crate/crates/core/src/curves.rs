//! Weierstrass curves and projective points over concrete rings.
//!
//! Over a field the classical chord-tangent group law is available as an
//! independent oracle. Over an arbitrary ring, point addition is not offered
//! at all (chords need inverses that may not exist); multiplication by n
//! goes through the homogeneous triples, which are total on the smooth
//! locus. That asymmetry is deliberate.

use crate::divpoly::{specialized_ladder, AffineElement, DivPolyLadder};
use crate::mpoly::{MPoly, VarSet};
use crate::projmul::{build_triple, eval_triple, reduce_triple, MulTriple, TripleError};
use crate::rings::{unit_ideal_test, Ring, RingElement, RingError, RingKind};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("point is not on the curve: W(P) = {w}")]
    NotOnCurve { w: String },
    #[error("coordinates ({x} : {y} : {z}) do not generate the unit ideal")]
    NotUnitIdeal { x: String, y: String, z: String },
    #[error("point lies in the singular locus")]
    SingularPoint,
    #[error("operation requires a field; {0} is not one")]
    NonField(String),
    #[error("point is not affine-normalizable: z = {z} is not a unit")]
    NotNormalizable { z: String },
    #[error("no coordinate is a unit; unit-ideal invariant violated upstream")]
    NoUnitCoordinate,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    DivPoly(#[from] crate::divpoly::DivPolyError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("usage: {0}")]
    Usage(String),
}

/// `[a1,a2,a3,a4,a6]` only, for coefficient-space polynomials.
fn avars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["a1", "a2", "a3", "a4", "a6"]))
        .clone()
}

/// The generic discriminant Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
/// over Z[a1..a6]; the single source of truth every concrete discriminant is
/// specialized from.
pub fn discriminant_generic() -> &'static MPoly {
    static D: OnceLock<MPoly> = OnceLock::new();
    D.get_or_init(|| {
        let vars = avars();
        let v = |n: &str| MPoly::var(vars.clone(), (), n);
        let a = [v("a1"), v("a2"), v("a3"), v("a4"), v("a6")];
        let b = crate::divpoly::BInvariants::from_coefficients(&a);
        b.b2.mul(&b.b2)
            .mul(&b.b8)
            .neg()
            .sub(&b.b4.pow(3).scale_i64(8))
            .sub(&b.b6.mul(&b.b6).scale_i64(27))
            .add(&b.b2.mul(&b.b4).mul(&b.b6).scale_i64(9))
    })
}

/// A Weierstrass curve y^2 z + a1 xyz + a3 y z^2 = x^3 + a2 x^2 z + a4 x z^2
/// + a6 z^3 over a concrete ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    ring: Ring,
    a: [RingElement; 5],
}

/// A projective point with unit-ideal coordinate triple, known to satisfy
/// W(x,y,z) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    pub x: RingElement,
    pub y: RingElement,
    pub z: RingElement,
}

impl ProjPoint {
    pub fn coords(&self) -> [RingElement; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} : {} : {})", self.x, self.y, self.z)
    }
}

impl WeierstrassCurve {
    /// `a = [a1,a2,a3,a4,a6]`, all in `ring`.
    pub fn new(ring: Ring, a: [RingElement; 5]) -> Result<Self, CurveError> {
        for c in &a {
            if c.ring() != &ring {
                return Err(RingError::Mismatch(ring.to_string(), c.ring().to_string()).into());
            }
        }
        Ok(WeierstrassCurve { ring, a })
    }

    pub fn from_i64(ring: &Ring, a: [i64; 5]) -> Self {
        WeierstrassCurve {
            ring: ring.clone(),
            a: a.map(|v| ring.from_i64(v)),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// a1,a2,a3,a4,a6 in that order.
    pub fn coefficients(&self) -> &[RingElement; 5] {
        &self.a
    }

    /// W(x,y,z) = y^2 z + a1 xyz + a3 y z^2 - x^3 - a2 x^2 z - a4 x z^2
    /// - a6 z^3.
    pub fn w_eval(&self, p: &[RingElement; 3]) -> RingElement {
        let [a1, a2, a3, a4, a6] = &self.a;
        let [x, y, z] = p;
        y.mul(y)
            .mul(z)
            .add(&a1.mul(x).mul(y).mul(z))
            .add(&a3.mul(y).mul(&z.mul(z)))
            .sub(&x.pow(3))
            .sub(&a2.mul(&x.mul(x)).mul(z))
            .sub(&a4.mul(x).mul(&z.mul(z)))
            .sub(&a6.mul(&z.pow(3)))
    }

    /// The three partial derivatives of W at p, in the order
    /// (dW/dx, dW/dy, dW/dz).
    pub fn partials(&self, p: &[RingElement; 3]) -> [RingElement; 3] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let [x, y, z] = p;
        let wx = a1
            .mul(y)
            .mul(z)
            .sub(&x.mul(x).mul(&self.ring.from_i64(3)))
            .sub(&a2.mul(x).mul(z).mul(&self.ring.from_i64(2)))
            .sub(&a4.mul(&z.mul(z)));
        let wy = y
            .mul(z)
            .mul(&self.ring.from_i64(2))
            .add(&a1.mul(x).mul(z))
            .add(&a3.mul(&z.mul(z)));
        let wz = y
            .mul(y)
            .add(&a1.mul(x).mul(y))
            .add(&a3.mul(y).mul(z).mul(&self.ring.from_i64(2)))
            .sub(&a2.mul(&x.mul(x)))
            .sub(&a4.mul(x).mul(z).mul(&self.ring.from_i64(2)))
            .sub(&a6.mul(&z.mul(z)).mul(&self.ring.from_i64(3)));
        [wx, wy, wz]
    }

    /// True iff W(p) = 0 and the coordinates generate the unit ideal.
    pub fn contains(&self, p: &[RingElement; 3]) -> Result<bool, CurveError> {
        for c in p {
            if c.ring() != &self.ring {
                return Err(
                    RingError::Mismatch(self.ring.to_string(), c.ring().to_string()).into(),
                );
            }
        }
        Ok(self.w_eval(p).is_zero() && unit_ideal_test(p)?)
    }

    /// Wrap coordinates as a point after checking membership.
    pub fn point(&self, p: [RingElement; 3]) -> Result<ProjPoint, CurveError> {
        let w = self.w_eval(&p);
        if !w.is_zero() {
            return Err(CurveError::NotOnCurve { w: w.to_string() });
        }
        if !unit_ideal_test(&p)? {
            let [x, y, z] = p;
            return Err(CurveError::NotUnitIdeal {
                x: x.to_string(),
                y: y.to_string(),
                z: z.to_string(),
            });
        }
        let [x, y, z] = p;
        Ok(ProjPoint { x, y, z })
    }

    pub fn point_i64(&self, p: [i64; 3]) -> Result<ProjPoint, CurveError> {
        self.point(p.map(|v| self.ring.from_i64(v)))
    }

    /// The zero section (0 : 1 : 0); smooth on every Weierstrass curve.
    pub fn zero_point(&self) -> ProjPoint {
        ProjPoint {
            x: self.ring.zero(),
            y: self.ring.one(),
            z: self.ring.zero(),
        }
    }

    /// True iff the partials at p generate the unit ideal.
    pub fn is_smooth_point(&self, p: &ProjPoint) -> Result<bool, CurveError> {
        Ok(unit_ideal_test(&self.partials(&p.coords()))?)
    }

    /// Delta, specialized from the generic discriminant polynomial.
    pub fn discriminant(&self) -> RingElement {
        let id = |c: &BigInt| self.ring.from_bigint(c);
        discriminant_generic().eval(&self.ring, &id, &self.a)
    }

    /// The curve is smooth iff Delta is a unit.
    pub fn is_smooth_curve(&self) -> bool {
        self.discriminant().is_unit()
    }

    /// Projective equality of coordinate triples: locate a unit coordinate
    /// of p, solve for the scalar u, and verify q = u p with u a unit.
    pub fn proj_equal(
        &self,
        p: &[RingElement; 3],
        q: &[RingElement; 3],
    ) -> Result<bool, CurveError> {
        let i = (0..3)
            .find(|&i| p[i].is_unit())
            .ok_or(CurveError::NoUnitCoordinate)?;
        let u = q[i].mul(&p[i].inverse().expect("checked unit"));
        if !u.is_unit() {
            return Ok(false);
        }
        Ok((0..3).all(|j| q[j] == u.mul(&p[j])))
    }

    pub fn points_equal(&self, p: &ProjPoint, q: &ProjPoint) -> Result<bool, CurveError> {
        self.proj_equal(&p.coords(), &q.coords())
    }

    pub fn is_zero_point(&self, p: &ProjPoint) -> Result<bool, CurveError> {
        self.points_equal(p, &self.zero_point())
    }

    /// Normalize an affine point to (x : y : 1); requires z a unit.
    pub fn to_affine(&self, p: &ProjPoint) -> Result<(RingElement, RingElement), CurveError> {
        let zi = p.z.inverse().map_err(|_| CurveError::NotNormalizable {
            z: p.z.to_string(),
        })?;
        Ok((p.x.mul(&zi), p.y.mul(&zi)))
    }

    /// One-shot multiplication by n; for repeated use build a `CurveOps`.
    pub fn mul_point(&self, p: &ProjPoint, n: i64) -> Result<ProjPoint, CurveError> {
        CurveOps::new(self)?.mul_point(p, n)
    }
}

// ---------------------------------------------------------------------------
// Chord-tangent oracle over fields.
// ---------------------------------------------------------------------------

/// Classified point for the affine-chart group law.
enum FieldPoint {
    Infinity,
    Affine(RingElement, RingElement),
}

fn classify(c: &WeierstrassCurve, p: &ProjPoint) -> Result<FieldPoint, CurveError> {
    if p.z.is_zero() {
        // On W with z = 0: x^3 = 0, so over a field x = 0 and y != 0.
        Ok(FieldPoint::Infinity)
    } else {
        let (x, y) = c.to_affine(p)?;
        Ok(FieldPoint::Affine(x, y))
    }
}

/// The chord-tangent sum with zero (0 : 1 : 0): the independent ground truth
/// for every symbolic claim. Requires a field and smooth inputs.
pub fn oracle_add(
    c: &WeierstrassCurve,
    p: &ProjPoint,
    q: &ProjPoint,
) -> Result<ProjPoint, CurveError> {
    if !c.ring().is_field() {
        return Err(CurveError::NonField(c.ring().to_string()));
    }
    if !c.is_smooth_point(p)? || !c.is_smooth_point(q)? {
        return Err(CurveError::SingularPoint);
    }
    let [a1, a2, a3, a4, _a6] = c.coefficients();
    let (x1, y1) = match classify(c, p)? {
        FieldPoint::Infinity => return Ok(q.clone()),
        FieldPoint::Affine(x, y) => (x, y),
    };
    let (x2, y2) = match classify(c, q)? {
        FieldPoint::Infinity => return Ok(p.clone()),
        FieldPoint::Affine(x, y) => (x, y),
    };
    let lambda = if x1 == x2 {
        // Either Q = -P (vertical chord) or Q = P (tangent).
        if y1.add(&y2).add(&a1.mul(&x2)).add(a3).is_zero() {
            return Ok(c.zero_point());
        }
        let num = x1
            .mul(&x1)
            .mul(&c.ring().from_i64(3))
            .add(&a2.mul(&x1).mul(&c.ring().from_i64(2)))
            .add(a4)
            .sub(&a1.mul(&y1));
        let den = y1
            .mul(&c.ring().from_i64(2))
            .add(&a1.mul(&x1))
            .add(a3);
        num.mul(&den.inverse().expect("nonzero by the vertical-chord case"))
    } else {
        let den = x2.sub(&x1);
        y2.sub(&y1).mul(&den.inverse().expect("x1 != x2 in a field"))
    };
    let nu = y1.sub(&lambda.mul(&x1));
    let x3 = lambda
        .mul(&lambda)
        .add(&a1.mul(&lambda))
        .sub(a2)
        .sub(&x1)
        .sub(&x2);
    let y3 = lambda.add(a1).mul(&x3).neg().sub(&nu).sub(a3);
    c.point([x3, y3, c.ring().one()])
        .map_err(|e| CurveError::Internal(format!("oracle sum left the curve: {e}")))
}

/// -P = (x : -y - a1 x - a3 z : z).
pub fn oracle_neg(c: &WeierstrassCurve, p: &ProjPoint) -> Result<ProjPoint, CurveError> {
    let [a1, _, a3, _, _] = c.coefficients();
    let y = p.y.neg().sub(&a1.mul(&p.x)).sub(&a3.mul(&p.z));
    c.point([p.x.clone(), y, p.z.clone()])
        .map_err(|e| CurveError::Internal(format!("negation left the curve: {e}")))
}

/// n * P by repeated chord-tangent addition; the oracle-side scalar multiple.
pub fn oracle_mul(c: &WeierstrassCurve, p: &ProjPoint, n: i64) -> Result<ProjPoint, CurveError> {
    let (base, k) = if n < 0 {
        (oracle_neg(c, p)?, n.unsigned_abs())
    } else {
        (p.clone(), n.unsigned_abs())
    };
    let mut acc = c.zero_point();
    for _ in 0..k {
        acc = oracle_add(c, &acc, &base)?;
    }
    Ok(acc)
}

/// Exact order of a point in the finite group C(F_p).
pub fn oracle_order(c: &WeierstrassCurve, p: &ProjPoint) -> Result<u64, CurveError> {
    let mut acc = p.clone();
    let mut k = 1u64;
    while !c.is_zero_point(&acc)? {
        acc = oracle_add(c, &acc, p)?;
        k += 1;
        if k > 1 << 32 {
            return Err(CurveError::Internal("order search did not terminate".into()));
        }
    }
    Ok(k)
}

/// Every point of C(Z/pZ) including (0 : 1 : 0), by scanning the affine
/// chart. Intended for small fields.
pub fn enumerate_points(c: &WeierstrassCurve) -> Result<Vec<ProjPoint>, CurveError> {
    let n = match c.ring().kind() {
        RingKind::Residue(n) => n.clone(),
        _ => {
            return Err(CurveError::Usage(
                "point enumeration needs a finite residue ring".into(),
            ))
        }
    };
    let n: u64 = num_traits::ToPrimitive::to_u64(&n)
        .ok_or_else(|| CurveError::Usage("modulus too large to enumerate".into()))?;
    let mut points = vec![c.zero_point()];
    let one = c.ring().one();
    for x in 0..n {
        let xe = c.ring().from_i64(x as i64);
        for y in 0..n {
            let ye = c.ring().from_i64(y as i64);
            let p = [xe.clone(), ye, one.clone()];
            if c.w_eval(&p).is_zero() {
                points.push(c.point(p)?);
            }
        }
    }
    Ok(points)
}

// ---------------------------------------------------------------------------
// Multiplication by n through the triples, over any ring.
// ---------------------------------------------------------------------------

/// How specialized triples are produced for a given curve. When exact
/// division by 2 exists in the ring the ladder runs there directly; over
/// Z/NZ with N even it runs over Z on canonical lifts and reduces, which
/// agrees because specialization is a ring morphism.
enum LadderBackend {
    Direct(DivPolyLadder<RingElement>),
    IntegerLift(DivPolyLadder<RingElement>),
}

/// Per-curve cache of specialized triples and ladders; the workhorse behind
/// `mul_point`, psi evaluation, and the embedding test.
pub struct CurveOps<'c> {
    curve: &'c WeierstrassCurve,
    backend: LadderBackend,
    triples: HashMap<i64, MulTriple<RingElement>>,
}

impl<'c> CurveOps<'c> {
    pub fn new(curve: &'c WeierstrassCurve) -> Result<Self, CurveError> {
        let backend = match specialized_ladder(curve.ring(), curve.coefficients()) {
            Ok(l) => LadderBackend::Direct(l),
            Err(_) => {
                let zz = Ring::integers();
                let lifted: [RingElement; 5] = curve
                    .coefficients()
                    .clone()
                    .map(|c| zz.from_bigint(&c.to_bigint_lift().expect("residue lifts to Z")));
                LadderBackend::IntegerLift(
                    specialized_ladder(&zz, &lifted).expect("Z supports exact division"),
                )
            }
        };
        Ok(CurveOps {
            curve,
            backend,
            triples: HashMap::new(),
        })
    }

    pub fn curve(&self) -> &WeierstrassCurve {
        self.curve
    }

    /// The multiplication-by-n triple specialized to this curve's ring.
    pub fn triple(&mut self, n: i64) -> Result<&MulTriple<RingElement>, CurveError> {
        if !self.triples.contains_key(&n) {
            let t = match &mut self.backend {
                LadderBackend::Direct(ladder) => build_triple(n, ladder)?,
                LadderBackend::IntegerLift(ladder) => {
                    let tz = build_triple(n, ladder)?;
                    reduce_triple(&tz, self.curve.ring())?
                }
            };
            self.triples.insert(n, t);
        }
        Ok(&self.triples[&n])
    }

    /// n * P = (alpha_n(P) : beta_n(P) : gamma_n(P)). Requires P in the
    /// smooth locus; the result is checked back onto the curve and against
    /// the unit-ideal invariant, both guaranteed, so a failure is fatal.
    pub fn mul_point(&mut self, p: &ProjPoint, n: i64) -> Result<ProjPoint, CurveError> {
        if !self.curve.is_smooth_point(p)? {
            return Err(CurveError::SingularPoint);
        }
        let t = self.triple(n)?;
        let v = eval_triple(t, &p.coords())?;
        if !unit_ideal_test(&v)? {
            return Err(CurveError::Internal(format!(
                "triple evaluation failed the unit-ideal invariant at {p} with n = {n}"
            )));
        }
        self.curve.point(v).map_err(|e| {
            CurveError::Internal(format!("triple evaluation left the curve: {e}"))
        })
    }

    /// Psi_n evaluated at affine coordinates, through whichever ladder
    /// backend this curve uses.
    pub fn psi_at(
        &mut self,
        n: i64,
        x: &RingElement,
        y: &RingElement,
    ) -> Result<RingElement, CurveError> {
        let ring = self.curve.ring().clone();
        match &mut self.backend {
            LadderBackend::Direct(ladder) => {
                let psi = ladder.psi(n);
                Ok(ladder.affine_ctx().eval(&psi, &[x.clone(), y.clone()]))
            }
            LadderBackend::IntegerLift(ladder) => {
                let zz = Ring::integers();
                let lift = |v: &RingElement| {
                    zz.from_bigint(&v.to_bigint_lift().expect("residue lifts to Z"))
                };
                let psi = ladder.psi(n);
                let v = ladder.affine_ctx().eval(&psi, &[lift(x), lift(y)]);
                Ok(ring.from_bigint(&v.to_bigint_lift().expect("value over Z")))
            }
        }
    }

    /// Whether P is a Z/nZ-embedding: P = (a : b : 1) with Psi_n(a,b) = 0
    /// and Psi_d(a,b) a unit for every proper divisor d of n. The zero
    /// section has order 1, so it is never one for n >= 2.
    pub fn is_zn_embedding(&mut self, p: &ProjPoint, n: u64) -> Result<bool, CurveError> {
        if n < 2 {
            return Err(CurveError::Usage("embedding test needs n >= 2".into()));
        }
        if self.curve.is_zero_point(p)? {
            return Ok(false);
        }
        let (x, y) = self.curve.to_affine(p)?;
        if !self.psi_at(n as i64, &x, &y)?.is_zero() {
            return Ok(false);
        }
        for d in 1..n {
            if n % d == 0 && !self.psi_at(d as i64, &x, &y)?.is_unit() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Affine multiplication through the dehomogenized formulas
    /// (Phi_n Psi_n : Omega_n : Psi_n^3) at (x, y); the path used to
    /// cross-check the homogeneous triples.
    pub fn mul_affine_formulas(
        &mut self,
        x: &RingElement,
        y: &RingElement,
        n: i64,
    ) -> Result<[RingElement; 3], CurveError> {
        let lift_needed = matches!(self.backend, LadderBackend::IntegerLift(_));
        let ring = self.curve.ring().clone();
        let ladder = match &mut self.backend {
            LadderBackend::Direct(l) | LadderBackend::IntegerLift(l) => l,
        };
        let coords: Vec<RingElement> = if lift_needed {
            let zz = Ring::integers();
            [x, y]
                .iter()
                .map(|v| zz.from_bigint(&v.to_bigint_lift().expect("residue lifts to Z")))
                .collect()
        } else {
            vec![x.clone(), y.clone()]
        };
        let phi_psi = ladder.phi_psi(n);
        let omega = ladder.omega(n)?;
        let psi3 = ladder.psi_cubed(n);
        let actx = ladder.affine_ctx();
        let vals = [
            actx.eval(&phi_psi, &coords),
            actx.eval(&omega, &coords),
            actx.eval(&psi3, &coords),
        ];
        if lift_needed {
            Ok(vals.map(|v| ring.from_bigint(&v.to_bigint_lift().expect("value over Z"))))
        } else {
            Ok(vals)
        }
    }

    /// Direct access to Phi/Psi/Omega residues when the backend runs in the
    /// curve ring (fields and odd moduli).
    pub fn ladder(&mut self) -> Option<&mut DivPolyLadder<RingElement>> {
        match &mut self.backend {
            LadderBackend::Direct(l) => Some(l),
            LadderBackend::IntegerLift(_) => None,
        }
    }
}

/// Specialized psi as a residue for downstream inspection (field rings).
pub fn psi_element(
    ops: &mut CurveOps<'_>,
    n: i64,
) -> Result<AffineElement<RingElement>, CurveError> {
    match ops.ladder() {
        Some(l) => Ok(l.psi(n)),
        None => Err(CurveError::Usage(
            "psi residues need a direct-ladder ring".into(),
        )),
    }
}

#[cfg(test)]
mod tests;
