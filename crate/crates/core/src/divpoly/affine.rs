//! Residues in the affine coordinate ring A[X,Y]/(W'), where
//! W' = Y^2 + a1*XY + a3*Y - X^3 - a2*X^2 - a4*X - a6.
//!
//! Two canonical forms are kept:
//!   YREP: (p0, p1) for p0 + p1*Y with p0, p1 free of Y (rewrite
//!         Y^2 -> X^3 + a2 X^2 + a4 X + a6 - a1 XY - a3 Y);
//!   XREP: (q0, q1, q2) for q0 + q1*X + q2*X^2 with q_i free of X (rewrite
//!         X^3 -> Y^2 + a1 XY + a3 Y - a2 X^2 - a4 X - a6, iterated).
//! W' is monic in X and quadratic in Y with unit leading coefficient, so both
//! rewrites terminate and each residue has exactly one representative of each
//! form; equality is componentwise equality.
//!
//! The coefficients a1..a6 are arbitrary X,Y-free polynomials: variables for
//! the generic ring, constants for a ladder specialized to a concrete ring,
//! or Tate-form values like 1+s.

use crate::mpoly::{Coeff, Monomial, SPoly, VarSet};
use std::sync::Arc;

/// Shared context: variable indices and the Weierstrass coefficient values.
#[derive(Debug, Clone)]
pub struct AffineCtx<C: Coeff> {
    vars: Arc<VarSet>,
    ctx: C::Ctx,
    ix: usize,
    iy: usize,
    a: [SPoly<C>; 5],
    /// g = X^3 + a2 X^2 + a4 X + a6, so Y^2 = g - lin*Y.
    g: SPoly<C>,
    /// lin = a1 X + a3.
    lin: SPoly<C>,
    /// X^3 image in XREP components: (Y^2 + a3 Y - a6, a1 Y - a4, -a2).
    x3: [SPoly<C>; 3],
}

impl<C: Coeff> AffineCtx<C> {
    /// `a = [a1,a2,a3,a4,a6]` as X,Y-free polynomials over `vars`, which must
    /// declare variables named `X` and `Y`.
    pub fn new(vars: Arc<VarSet>, ctx: C::Ctx, a: [SPoly<C>; 5]) -> Self {
        let ix = vars.index_of("X").expect("affine variable X");
        let iy = vars.index_of("Y").expect("affine variable Y");
        for p in &a {
            assert!(p.vars() == &vars, "coefficients must live over vars");
            assert!(
                p.is_free_of(ix) && p.is_free_of(iy),
                "curve coefficients must be free of X and Y"
            );
        }
        let xv = |k: u16| SPoly::from_terms(
            vars.clone(),
            ctx.clone(),
            vec![(Monomial::var(ix, k), C::one(&ctx))],
        );
        let yv = SPoly::from_terms(
            vars.clone(),
            ctx.clone(),
            vec![(Monomial::var(iy, 1), C::one(&ctx))],
        );
        let g = xv(3)
            .add(&a[1].mul(&xv(2)))
            .add(&a[3].mul(&xv(1)))
            .add(&a[4]);
        let lin = a[0].mul(&xv(1)).add(&a[2]);
        let x3 = [
            yv.mul(&yv).add(&a[2].mul(&yv)).sub(&a[4]),
            a[0].mul(&yv).sub(&a[3]),
            a[1].neg(),
        ];
        AffineCtx {
            vars,
            ctx,
            ix,
            iy,
            a,
            g,
            lin,
            x3,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn coeff_ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn x_index(&self) -> usize {
        self.ix
    }

    pub fn y_index(&self) -> usize {
        self.iy
    }

    /// a1,a2,a3,a4,a6 in that order.
    pub fn a(&self, i: usize) -> &SPoly<C> {
        &self.a[i]
    }

    pub fn zero_poly(&self) -> SPoly<C> {
        SPoly::zero(self.vars.clone(), self.ctx.clone())
    }

    pub fn one_poly(&self) -> SPoly<C> {
        SPoly::one(self.vars.clone(), self.ctx.clone())
    }

    pub fn x_pow(&self, k: u16) -> SPoly<C> {
        SPoly::from_terms(
            self.vars.clone(),
            self.ctx.clone(),
            vec![(Monomial::var(self.ix, k), C::one(&self.ctx))],
        )
    }

    pub fn y_pow(&self, k: u16) -> SPoly<C> {
        SPoly::from_terms(
            self.vars.clone(),
            self.ctx.clone(),
            vec![(Monomial::var(self.iy, k), C::one(&self.ctx))],
        )
    }

    fn mul_y(&self, p: &SPoly<C>) -> SPoly<C> {
        p.mul_term(&Monomial::var(self.iy, 1), &C::one(&self.ctx))
    }

    /// Coefficient polynomials of `p` by the power of one variable, that
    /// variable removed; index k holds the coefficient of `var^k`.
    fn by_degree(&self, p: &SPoly<C>, var: usize) -> Vec<SPoly<C>> {
        let deg = p.degree_in(var) as usize;
        let mut slices: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in p.terms() {
            let k = m.exponent(var) as usize;
            let mut e: Vec<u32> = m
                .exponents(self.vars.len())
                .iter()
                .map(|&x| x as u32)
                .collect();
            e[var] = 0;
            slices[k].push((Monomial::from_exponents(&e).unwrap(), c.clone()));
        }
        slices
            .into_iter()
            .map(|terms| SPoly::from_terms(self.vars.clone(), self.ctx.clone(), terms))
            .collect()
    }

    pub fn yrep(&self, p0: SPoly<C>, p1: SPoly<C>) -> AffineElement<C> {
        debug_assert!(p0.is_free_of(self.iy) && p1.is_free_of(self.iy));
        AffineElement::YRep { p0, p1 }
    }

    pub fn xrep(&self, q0: SPoly<C>, q1: SPoly<C>, q2: SPoly<C>) -> AffineElement<C> {
        debug_assert!(
            q0.is_free_of(self.ix) && q1.is_free_of(self.ix) && q2.is_free_of(self.ix)
        );
        AffineElement::XRep { q0, q1, q2 }
    }

    pub fn from_pure_x(&self, p: SPoly<C>) -> AffineElement<C> {
        self.yrep(p, self.zero_poly())
    }

    /// Canonical YREP of an arbitrary polynomial in X and Y: Horner in Y with
    /// acc*Y reduced through Y^2 = g - lin*Y.
    pub fn reduce_to_yrep(&self, p: &SPoly<C>) -> AffineElement<C> {
        let coeffs = self.by_degree(p, self.iy);
        let mut acc0 = self.zero_poly();
        let mut acc1 = self.zero_poly();
        for c in coeffs.into_iter().rev() {
            let new0 = acc1.mul(&self.g).add(&c);
            let new1 = acc0.sub(&acc1.mul(&self.lin));
            acc0 = new0;
            acc1 = new1;
        }
        AffineElement::YRep { p0: acc0, p1: acc1 }
    }

    /// Canonical XREP of an arbitrary polynomial in X and Y: Horner in X with
    /// acc*X reduced through the X^3 image.
    pub fn reduce_to_xrep(&self, p: &SPoly<C>) -> AffineElement<C> {
        let coeffs = self.by_degree(p, self.ix);
        let mut acc = self.xt_zero();
        for c in coeffs.into_iter().rev() {
            acc = self.xt_shift(acc);
            acc[0] = std::mem::replace(&mut acc[0], self.zero_poly()).add_owned(c);
        }
        let [q0, q1, q2] = acc;
        AffineElement::XRep { q0, q1, q2 }
    }

    // ----- owned triple arithmetic on XREP components ---------------------
    // These keep long reduction chains allocation-lean; coefficients move
    // through merges instead of being cloned.

    pub(crate) fn xt_zero(&self) -> [SPoly<C>; 3] {
        [self.zero_poly(), self.zero_poly(), self.zero_poly()]
    }

    /// X * (q0 + q1 X + q2 X^2) reduced: (q2*c0, q0 + q2*c1, q1 + q2*c2)
    /// where X^3 = c0 + c1 X + c2 X^2.
    pub(crate) fn xt_shift(&self, e: [SPoly<C>; 3]) -> [SPoly<C>; 3] {
        let [q0, q1, q2] = e;
        [
            q2.mul(&self.x3[0]),
            q0.add_owned(q2.mul(&self.x3[1])),
            q1.add_owned(q2.mul(&self.x3[2])),
        ]
    }

    pub(crate) fn xt_add(&self, a: [SPoly<C>; 3], b: [SPoly<C>; 3]) -> [SPoly<C>; 3] {
        let [a0, a1, a2] = a;
        let [b0, b1, b2] = b;
        [a0.add_owned(b0), a1.add_owned(b1), a2.add_owned(b2)]
    }

    pub(crate) fn xt_sub(&self, a: [SPoly<C>; 3], b: [SPoly<C>; 3]) -> [SPoly<C>; 3] {
        let [a0, a1, a2] = a;
        let [b0, b1, b2] = b;
        [a0.sub_owned(b0), a1.sub_owned(b1), a2.sub_owned(b2)]
    }

    /// Componentwise product with an X-free polynomial.
    pub(crate) fn xt_mul_xfree(&self, e: &[SPoly<C>; 3], f: &SPoly<C>) -> [SPoly<C>; 3] {
        debug_assert!(f.is_free_of(self.ix));
        [e[0].mul(f), e[1].mul(f), e[2].mul(f)]
    }

    /// Product with an arbitrary (small) polynomial in X and Y: Horner over
    /// the X-slices of `f`, one shift per X-degree.
    pub(crate) fn xt_mul_small(&self, e: &[SPoly<C>; 3], f: &SPoly<C>) -> [SPoly<C>; 3] {
        let slices = self.by_degree(f, self.ix);
        let mut acc = self.xt_zero();
        for s in slices.into_iter().rev() {
            acc = self.xt_shift(acc);
            if !s.is_zero() {
                acc = self.xt_add(acc, self.xt_mul_xfree(e, &s));
            }
        }
        acc
    }

    /// Componentwise multiplication by Y (stays canonical: components are
    /// X-free and may hold any Y-degree).
    pub(crate) fn xt_mul_y(&self, e: &[SPoly<C>; 3]) -> [SPoly<C>; 3] {
        [self.mul_y(&e[0]), self.mul_y(&e[1]), self.mul_y(&e[2])]
    }

    pub(crate) fn xt_neg(&self, e: [SPoly<C>; 3]) -> [SPoly<C>; 3] {
        let [a0, a1, a2] = e;
        [a0.neg(), a1.neg(), a2.neg()]
    }

    pub(crate) fn xt_from_element(&self, e: &AffineElement<C>) -> [SPoly<C>; 3] {
        match self.to_xrep(e) {
            AffineElement::XRep { q0, q1, q2 } => [q0, q1, q2],
            _ => unreachable!(),
        }
    }

    pub(crate) fn xt_wrap(&self, e: [SPoly<C>; 3]) -> AffineElement<C> {
        let [q0, q1, q2] = e;
        AffineElement::XRep { q0, q1, q2 }
    }

    /// The plain polynomial carried by either representation.
    pub fn value_poly(&self, e: &AffineElement<C>) -> SPoly<C> {
        match e {
            AffineElement::YRep { p0, p1 } => p0.add(&self.mul_y(p1)),
            AffineElement::XRep { q0, q1, q2 } => q0
                .add(&q1.mul(&self.x_pow(1)))
                .add(&q2.mul(&self.x_pow(2))),
        }
    }

    pub fn to_yrep(&self, e: &AffineElement<C>) -> AffineElement<C> {
        match e {
            AffineElement::YRep { .. } => e.clone(),
            AffineElement::XRep { .. } => self.reduce_to_yrep(&self.value_poly(e)),
        }
    }

    pub fn to_xrep(&self, e: &AffineElement<C>) -> AffineElement<C> {
        match e {
            AffineElement::XRep { .. } => e.clone(),
            AffineElement::YRep { .. } => self.reduce_to_xrep(&self.value_poly(e)),
        }
    }

    /// Residue equality (canonical YREP comparison).
    pub fn residues_equal(&self, a: &AffineElement<C>, b: &AffineElement<C>) -> bool {
        self.to_yrep(a) == self.to_yrep(b)
    }

    pub fn add(&self, a: &AffineElement<C>, b: &AffineElement<C>) -> AffineElement<C> {
        match (self.to_yrep(a), self.to_yrep(b)) {
            (AffineElement::YRep { p0, p1 }, AffineElement::YRep { p0: r0, p1: r1 }) => {
                AffineElement::YRep {
                    p0: p0.add(&r0),
                    p1: p1.add(&r1),
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self, a: &AffineElement<C>) -> AffineElement<C> {
        match a {
            AffineElement::YRep { p0, p1 } => AffineElement::YRep {
                p0: p0.neg(),
                p1: p1.neg(),
            },
            AffineElement::XRep { q0, q1, q2 } => AffineElement::XRep {
                q0: q0.neg(),
                q1: q1.neg(),
                q2: q2.neg(),
            },
        }
    }

    /// Residue product, in YREP.
    pub fn mul(&self, a: &AffineElement<C>, b: &AffineElement<C>) -> AffineElement<C> {
        let (p0, p1) = match self.to_yrep(a) {
            AffineElement::YRep { p0, p1 } => (p0, p1),
            _ => unreachable!(),
        };
        let (r0, r1) = match self.to_yrep(b) {
            AffineElement::YRep { p0, p1 } => (p0, p1),
            _ => unreachable!(),
        };
        let p1r1 = p1.mul(&r1);
        AffineElement::YRep {
            p0: p0.mul(&r0).add(&p1r1.mul(&self.g)),
            p1: p0.mul(&r1).add(&p1.mul(&r0)).sub(&p1r1.mul(&self.lin)),
        }
    }

    /// Evaluate at scalar coordinates; `values` assigns every declared
    /// variable (for specialized work, exactly X and Y).
    pub fn eval(&self, e: &AffineElement<C>, values: &[C]) -> C {
        let id = |c: &C| c.clone();
        let v = self.value_poly(e);
        v.eval(&self.ctx, &id, values)
    }

    /// Order at the point at infinity of a nonzero XREP residue: the minimum
    /// of -(2i + 3j) over stored monomials X^i Y^j. Those orders are distinct
    /// for X-degree <= 2, so the minimum is attained exactly once.
    pub fn ord0(&self, e: &AffineElement<C>) -> Option<i64> {
        self.lead(e).map(|(ord, _)| ord)
    }

    /// Leading coefficient at infinity: the X,Y-free coefficient polynomial
    /// of the monomial attaining `ord0`.
    pub fn leading_coeff(&self, e: &AffineElement<C>) -> Option<SPoly<C>> {
        self.lead(e).map(|(_, c)| c)
    }

    fn lead(&self, e: &AffineElement<C>) -> Option<(i64, SPoly<C>)> {
        let (q0, q1, q2) = match self.to_xrep(e) {
            AffineElement::XRep { q0, q1, q2 } => (q0, q1, q2),
            _ => unreachable!(),
        };
        let mut best: Option<(i64, usize, u16)> = None;
        for (i, q) in [&q0, &q1, &q2].into_iter().enumerate() {
            for (m, _) in q.terms() {
                let j = m.exponent(self.iy);
                let ord = -(2 * i as i64 + 3 * j as i64);
                if best.map_or(true, |(b, _, _)| ord < b) {
                    best = Some((ord, i, j));
                }
            }
        }
        let (ord, i, j) = best?;
        let q = [&q0, &q1, &q2][i];
        let mut terms = Vec::new();
        for (m, c) in q.terms() {
            if m.exponent(self.iy) == j {
                let mut e: Vec<u32> = m
                    .exponents(self.vars.len())
                    .iter()
                    .map(|&x| x as u32)
                    .collect();
                e[self.iy] = 0;
                terms.push((Monomial::from_exponents(&e).unwrap(), c.clone()));
            }
        }
        Some((
            ord,
            SPoly::from_terms(self.vars.clone(), self.ctx.clone(), terms),
        ))
    }
}

/// A residue in one of its two canonical forms. All operations live on
/// `AffineCtx`, which knows the curve coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineElement<C: Coeff> {
    YRep { p0: SPoly<C>, p1: SPoly<C> },
    XRep {
        q0: SPoly<C>,
        q1: SPoly<C>,
        q2: SPoly<C>,
    },
}

impl<C: Coeff> AffineElement<C> {
    pub fn is_zero(&self) -> bool {
        match self {
            AffineElement::YRep { p0, p1 } => p0.is_zero() && p1.is_zero(),
            AffineElement::XRep { q0, q1, q2 } => {
                q0.is_zero() && q1.is_zero() && q2.is_zero()
            }
        }
    }

    pub fn form_name(&self) -> &'static str {
        match self {
            AffineElement::YRep { .. } => "yrep",
            AffineElement::XRep { .. } => "xrep",
        }
    }

    pub fn parts(&self) -> Vec<&SPoly<C>> {
        match self {
            AffineElement::YRep { p0, p1 } => vec![p0, p1],
            AffineElement::XRep { q0, q1, q2 } => vec![q0, q1, q2],
        }
    }
}
