//! The homogeneous degree-n^2 triples (alpha_n, beta_n, gamma_n) defining
//! multiplication by n projectively: alpha_n = A_n z^{n^2} and likewise for
//! beta, gamma, where A_n, B_n, C_n are the X-degree-at-most-2
//! representatives of Phi_n Psi_n, Omega_n, Psi_n^3.

use crate::divpoly::{AffineElement, DivPolyError, DivPolyLadder};
use crate::mpoly::{
    generic_vars, xyz_vars, Coeff, Monomial, PolyJson, SPoly, VarSet,
};
use crate::rings::{Ring, RingElement};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TripleError {
    /// Impossible by the degree bound on A_n, B_n, C_n; a fatal bug signal.
    #[error("negative z exponent while homogenizing (n^2 = {n2}, monomial X^{i} Y^{j})")]
    NegativeZExponent { n2: i64, i: u16, j: u16 },
    #[error("triple invariant violated: {0}")]
    InvariantViolated(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error(transparent)]
    DivPoly(#[from] DivPolyError),
    #[error("decode error: {0}")]
    Decode(String),
}

/// The triple (alpha_n, beta_n, gamma_n): generic over Z[a1..a6] in the
/// variables [a1..a6,x,y,z], or specialized over a concrete ring in [x,y,z].
/// The sign is fixed so the y^{n^2} coefficient of beta_n is +1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulTriple<C: Coeff> {
    n: i64,
    vars: Arc<VarSet>,
    alpha: SPoly<C>,
    beta: SPoly<C>,
    gamma: SPoly<C>,
}

impl<C: Coeff> MulTriple<C> {
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn alpha(&self) -> &SPoly<C> {
        &self.alpha
    }

    pub fn beta(&self) -> &SPoly<C> {
        &self.beta
    }

    pub fn gamma(&self) -> &SPoly<C> {
        &self.gamma
    }

    pub fn components(&self) -> [&SPoly<C>; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }
}

/// Exponent weights that see only x, y, z.
fn xyz_weights(vars: &VarSet) -> Vec<i64> {
    let proj = ["x", "y", "z"];
    vars.names()
        .iter()
        .map(|n| i64::from(proj.contains(&n.as_str())))
        .collect()
}

/// Check the three structural invariants: homogeneity of degree n^2 in
/// (x,y,z), membership of alpha and gamma in (x,z), and beta in
/// y^{n^2} + (x,z) with y^{n^2} coefficient exactly one.
pub fn check_triple_invariants<C: Coeff>(t: &MulTriple<C>) -> Result<(), TripleError> {
    let vars = &t.vars;
    let n2 = t.n * t.n;
    let weights = xyz_weights(vars);
    let ident = |name: &str| {
        vars.index_of(name)
            .unwrap_or_else(|| panic!("triple variables must include {name}"))
    };
    let (ix, iy, iz) = (ident("x"), ident("y"), ident("z"));
    for (label, p) in [("alpha", &t.alpha), ("beta", &t.beta), ("gamma", &t.gamma)] {
        if p.is_zero() {
            continue;
        }
        match p.homogeneous_degree(&weights) {
            Ok(d) if d == n2 => {}
            other => {
                return Err(TripleError::InvariantViolated(format!(
                    "{label} is not homogeneous of degree {n2}: {other:?}"
                )))
            }
        }
    }
    for (label, p) in [("alpha", &t.alpha), ("gamma", &t.gamma)] {
        for (m, _) in p.terms() {
            if m.exponent(ix) == 0 && m.exponent(iz) == 0 {
                return Err(TripleError::InvariantViolated(format!(
                    "{label} has a term outside the ideal (x,z)"
                )));
            }
        }
    }
    let one = C::one(t.alpha.ctx());
    let mut seen_lead = false;
    for (m, c) in t.beta.terms() {
        if m.exponent(ix) == 0 && m.exponent(iz) == 0 {
            let pure_y = (0..vars.len())
                .all(|k| k == iy || m.exponent(k) == 0);
            if !(pure_y && m.exponent(iy) as i64 == n2 && *c == one) {
                return Err(TripleError::InvariantViolated(
                    "beta - y^{n^2} has a term outside the ideal (x,z)".into(),
                ));
            }
            seen_lead = true;
        }
    }
    if !seen_lead {
        return Err(TripleError::InvariantViolated(
            "beta has no y^{n^2} term with coefficient 1".into(),
        ));
    }
    Ok(())
}

/// Build the multiplication-by-n triple from a ladder. For the generic
/// ladder the result lives in [a1..a6,x,y,z]; for a specialized ladder in
/// [x,y,z] over its ring.
pub fn build_triple<C: Coeff>(
    n: i64,
    ladder: &mut DivPolyLadder<C>,
) -> Result<MulTriple<C>, TripleError> {
    let [a_n, b_n, c_n] = ladder.triple_reps(n)?;
    let affine = ladder.affine_ctx().vars().clone();
    let ctx = ladder.affine_ctx().coeff_ctx().clone();
    let out_vars = if affine.index_of("a1").is_some() {
        generic_vars()
    } else {
        xyz_vars()
    };
    let homog = |e: &AffineElement<C>| homogenize(e, n, &affine, &out_vars, &ctx);
    let mut t = MulTriple {
        n,
        vars: out_vars.clone(),
        alpha: homog(&a_n)?,
        beta: homog(&b_n)?,
        gamma: homog(&c_n)?,
    };
    // The construction normalizes beta to leading coefficient +1 at
    // infinity; if a coefficient domain ever flips the common sign, fix it
    // here rather than fail.
    let n2 = n * n;
    let iy = out_vars.index_of("y").unwrap();
    let ylead = t.beta.coeff(&Monomial::var(iy, n2 as u16));
    if ylead == C::neg(&ctx, &C::one(&ctx)) {
        t.alpha = t.alpha.neg();
        t.beta = t.beta.neg();
        t.gamma = t.gamma.neg();
    }
    check_triple_invariants(&t)?;
    Ok(t)
}

/// Structural verification sized for very large n: builds each canonical
/// representative in turn, checks the triple invariants it induces directly
/// on the X-degree-at-most-2 form, and drops it before the next one. The
/// homogenized triple itself is never materialized.
///
/// Checks per component: the z-exponent n^2 - i - j is non-negative for
/// every stored monomial X^i Y^j (which makes the homogenization a
/// polynomial, homogeneous of degree n^2 by construction); alpha and gamma
/// lie in (x,z); beta lies in y^{n^2} + (x,z) with y^{n^2} coefficient
/// exactly one. Also verifies ord/leading-coefficient laws for Omega_n
/// through the B_n representative: ord = -3n^2 and leading coefficient 1.
pub fn verify_triple_structure<C: Coeff>(
    n: i64,
    ladder: &mut DivPolyLadder<C>,
) -> Result<(), TripleError> {
    let actx = ladder.affine_ctx().clone();
    let n2 = n * n;
    let iy = actx.y_index();
    let one = C::one(actx.coeff_ctx());
    let check = |comp: usize, rep: AffineElement<C>| -> Result<(), TripleError> {
        let parts: [&SPoly<C>; 3] = match &rep {
            AffineElement::XRep { q0, q1, q2 } => [q0, q1, q2],
            _ => unreachable!("triple representatives arrive in XREP"),
        };
        let label = ["alpha", "beta", "gamma"][comp];
        let mut beta_lead_seen = false;
        for (i, q) in parts.into_iter().enumerate() {
            for (m, c) in q.terms() {
                let j = m.exponent(iy);
                if n2 - (i as i64) - (j as i64) < 0 {
                    return Err(TripleError::NegativeZExponent {
                        n2,
                        i: i as u16,
                        j,
                    });
                }
                // Terms outside the ideal (x,z) have i = 0 and full z-degree
                // consumed: j = n^2.
                if i == 0 && j as i64 == n2 {
                    let a_trivial =
                        (0..actx.vars().len()).all(|v| v == iy || m.exponent(v) == 0);
                    if comp != 1 {
                        return Err(TripleError::InvariantViolated(format!(
                            "{label} has a term outside the ideal (x,z) (n = {n})"
                        )));
                    }
                    if !a_trivial || *c != one {
                        return Err(TripleError::InvariantViolated(format!(
                            "beta - y^(n^2) has a term outside (x,z) (n = {n})"
                        )));
                    }
                    beta_lead_seen = true;
                }
            }
        }
        if comp == 1 {
            if !beta_lead_seen {
                return Err(TripleError::InvariantViolated(format!(
                    "beta has no y^(n^2) term with coefficient 1 (n = {n})"
                )));
            }
            // B_n is the canonical representative of Omega_n.
            if n != 0 {
                match (actx.ord0(&rep), actx.leading_coeff(&rep)) {
                    (Some(ord), Some(lam)) => {
                        let expect =
                            SPoly::one(actx.vars().clone(), actx.coeff_ctx().clone());
                        if ord != -3 * n2 || lam != expect {
                            return Err(TripleError::InvariantViolated(format!(
                                "Omega_{n}: ord {ord} (want {}), leading {lam:?}",
                                -3 * n2
                            )));
                        }
                    }
                    _ => {
                        return Err(TripleError::InvariantViolated(format!(
                            "Omega_{n} representative is zero"
                        )))
                    }
                }
            }
        }
        Ok(())
    };
    ladder
        .visit_triple_reps(n, &mut |i, rep| check(i, rep))
        .map_err(|e| match e {
            crate::divpoly::TripleRepsError::Build(b) => TripleError::DivPoly(b),
            crate::divpoly::TripleRepsError::Visit(v) => v,
        })
}

/// Substitute X = x/z, Y = y/z and multiply through by z^{n^2}: the monomial
/// X^i Y^j becomes x^i y^j z^{n^2-i-j}. Any a-variables pass through.
fn homogenize<C: Coeff>(
    e: &AffineElement<C>,
    n: i64,
    affine: &Arc<VarSet>,
    out_vars: &Arc<VarSet>,
    ctx: &C::Ctx,
) -> Result<SPoly<C>, TripleError> {
    let n2 = n * n;
    let (q0, q1, q2) = match e {
        AffineElement::XRep { q0, q1, q2 } => (q0, q1, q2),
        _ => unreachable!("homogenize expects the canonical XREP"),
    };
    let a_ix = affine.index_of("X").unwrap();
    let a_iy = affine.index_of("Y").unwrap();
    let o_ix = out_vars.index_of("x").unwrap();
    let o_iy = out_vars.index_of("y").unwrap();
    let o_iz = out_vars.index_of("z").unwrap();
    let mut terms = Vec::new();
    for (i, q) in [q0, q1, q2].into_iter().enumerate() {
        let i = i as u16;
        for (m, c) in q.terms() {
            debug_assert_eq!(m.exponent(a_ix), 0);
            let j = m.exponent(a_iy);
            let k = n2 - i as i64 - j as i64;
            if k < 0 {
                return Err(TripleError::NegativeZExponent { n2, i, j });
            }
            let mut exps = vec![0u32; out_vars.len()];
            // a-variables occupy the same leading positions in both orders
            for v in 0..affine.len() {
                if v != a_ix && v != a_iy {
                    exps[v] = m.exponent(v) as u32;
                }
            }
            exps[o_ix] += i as u32;
            exps[o_iy] += j as u32;
            exps[o_iz] += k as u32;
            let mono = Monomial::from_exponents(&exps)
                .map_err(|_| TripleError::InvariantViolated("exponent overflow".into()))?;
            terms.push((mono, c.clone()));
        }
    }
    Ok(SPoly::from_terms(out_vars.clone(), ctx.clone(), terms))
}

/// Specialize a generic triple along the ring morphism sending a1..a6 to the
/// given ring values; the result lives in [x,y,z] over that ring.
pub fn specialize_triple(
    t: &MulTriple<BigInt>,
    ring: &Ring,
    coeffs: &[RingElement; 5],
) -> Result<MulTriple<RingElement>, TripleError> {
    for c in coeffs {
        if c.ring() != ring {
            return Err(TripleError::RingMismatch(format!(
                "coefficient in {} but curve ring is {}",
                c.ring(),
                ring
            )));
        }
    }
    let out = xyz_vars();
    let images: Vec<SPoly<RingElement>> = t
        .vars
        .names()
        .iter()
        .map(|name| match name.as_str() {
            "a1" => SPoly::constant(out.clone(), ring.clone(), coeffs[0].clone()),
            "a2" => SPoly::constant(out.clone(), ring.clone(), coeffs[1].clone()),
            "a3" => SPoly::constant(out.clone(), ring.clone(), coeffs[2].clone()),
            "a4" => SPoly::constant(out.clone(), ring.clone(), coeffs[3].clone()),
            "a6" => SPoly::constant(out.clone(), ring.clone(), coeffs[4].clone()),
            v => SPoly::var(out.clone(), ring.clone(), v),
        })
        .collect();
    let map = |c: &BigInt| ring.from_bigint(c);
    let spec = |p: &SPoly<BigInt>| p.substitute_map(&out, ring, &map, &images);
    let st = MulTriple {
        n: t.n,
        vars: out.clone(),
        alpha: spec(&t.alpha),
        beta: spec(&t.beta),
        gamma: spec(&t.gamma),
    };
    check_triple_invariants(&st)?;
    Ok(st)
}

/// Reduce a triple built over zz into another ring coefficient-wise.
pub fn reduce_triple(
    t: &MulTriple<RingElement>,
    ring: &Ring,
) -> Result<MulTriple<RingElement>, TripleError> {
    let map = |c: &RingElement| {
        let lift = c
            .to_bigint_lift()
            .expect("integer-ladder coefficients lift to Z");
        ring.from_bigint(&lift)
    };
    let rt = MulTriple {
        n: t.n,
        vars: t.vars.clone(),
        alpha: t.alpha.map_coeffs(ring.clone(), map),
        beta: t.beta.map_coeffs(ring.clone(), map),
        gamma: t.gamma.map_coeffs(ring.clone(), map),
    };
    check_triple_invariants(&rt)?;
    Ok(rt)
}

/// Evaluate a specialized triple at a point. Returns the raw coordinate
/// values with no normalization; projective interpretation is the caller's.
pub fn eval_triple(
    t: &MulTriple<RingElement>,
    point: &[RingElement; 3],
) -> Result<[RingElement; 3], TripleError> {
    let ring = t.alpha.ctx();
    for c in point {
        if c.ring() != ring {
            return Err(TripleError::RingMismatch(format!(
                "point in {} but triple over {}",
                c.ring(),
                ring
            )));
        }
    }
    let id = |c: &RingElement| c.clone();
    let values = point.clone();
    Ok([
        t.alpha.eval(ring, &id, &values),
        t.beta.eval(ring, &id, &values),
        t.gamma.eval(ring, &id, &values),
    ])
}

/// JSON envelope: `{"n": ..., "vars": [...], "alpha": ..., "beta": ...,
/// "gamma": ..., "sign_convention": "beta-monic"}`; specialized triples also
/// carry their ring descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleJson {
    pub n: i64,
    pub vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ring: Option<String>,
    pub alpha: PolyJson,
    pub beta: PolyJson,
    pub gamma: PolyJson,
    pub sign_convention: String,
}

pub const SIGN_CONVENTION: &str = "beta-monic";

impl MulTriple<BigInt> {
    pub fn to_json(&self) -> TripleJson {
        TripleJson {
            n: self.n,
            vars: self.vars.names().to_vec(),
            ring: None,
            alpha: self.alpha.to_json(),
            beta: self.beta.to_json(),
            gamma: self.gamma.to_json(),
            sign_convention: SIGN_CONVENTION.into(),
        }
    }

    pub fn from_json(j: &TripleJson) -> Result<Self, TripleError> {
        if j.sign_convention != SIGN_CONVENTION {
            return Err(TripleError::Decode(format!(
                "unknown sign convention {:?}",
                j.sign_convention
            )));
        }
        let vars = generic_vars();
        if j.vars != vars.names() {
            return Err(TripleError::Decode("unexpected variable list".into()));
        }
        let dec = |p: &PolyJson| {
            SPoly::<BigInt>::from_json_with_vars(p, &vars, &())
                .map_err(|e| TripleError::Decode(e.to_string()))
        };
        let t = MulTriple {
            n: j.n,
            vars: vars.clone(),
            alpha: dec(&j.alpha)?,
            beta: dec(&j.beta)?,
            gamma: dec(&j.gamma)?,
        };
        check_triple_invariants(&t)?;
        Ok(t)
    }
}

impl MulTriple<RingElement> {
    pub fn to_json(&self) -> TripleJson {
        TripleJson {
            n: self.n,
            vars: self.vars.names().to_vec(),
            ring: Some(self.alpha.ctx().to_string()),
            alpha: self.alpha.to_json(),
            beta: self.beta.to_json(),
            gamma: self.gamma.to_json(),
            sign_convention: SIGN_CONVENTION.into(),
        }
    }

    pub fn from_json(j: &TripleJson) -> Result<Self, TripleError> {
        let ring = Ring::parse(
            j.ring
                .as_deref()
                .ok_or_else(|| TripleError::Decode("missing ring".into()))?,
        )
        .map_err(|e| TripleError::Decode(e.to_string()))?;
        let vars = xyz_vars();
        if j.vars != vars.names() {
            return Err(TripleError::Decode("unexpected variable list".into()));
        }
        let dec = |p: &PolyJson| {
            SPoly::<RingElement>::from_json_with_vars(p, &vars, &ring)
                .map_err(|e| TripleError::Decode(e.to_string()))
        };
        let t = MulTriple {
            n: j.n,
            vars: vars.clone(),
            alpha: dec(&j.alpha)?,
            beta: dec(&j.beta)?,
            gamma: dec(&j.gamma)?,
        };
        check_triple_invariants(&t)?;
        Ok(t)
    }
}
