//! Exact sparse multivariate polynomial arithmetic.
//!
//! `SPoly<C>` stores a polynomial as a sorted vector of `(Monomial, C)` terms
//! with no zero coefficients. The term order is graded lexicographic with ties
//! broken lexicographically on exponent vectors in the declared variable
//! order; in-memory the terms are kept ascending in that order, so the last
//! term is the leading term. Serialized forms (JSON and the pretty text form)
//! list terms descending, which makes output bytes deterministic.
//!
//! Coefficients are arbitrary-precision integers for all symbolic work
//! (`MPoly = SPoly<BigInt>`); the same engine runs with ring-element
//! coefficients for computations specialized to a concrete ring.

mod display;
mod fastmul;
mod json;
mod subst;

pub use display::parse_poly;
pub use json::{PolyJson, TermJson};

use num_bigint::BigInt;
use num_traits::Signed;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Hard cap on variables per polynomial; the widest set used anywhere is
/// `[a1,a2,a3,a4,a6,x,y,z]`.
pub const MAX_VARS: usize = 8;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("polynomials use different variable lists")]
    VarMismatch,
    #[error("not divisible: remainder has leading term {lead}")]
    NotDivisible { lead: String },
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not homogeneous for the given weights")]
    NotHomogeneous,
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("exponent overflow (exponents are limited to 16 bits)")]
    ExponentOverflow,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<VarSet> {
        assert!(
            !names.is_empty() && names.len() <= MAX_VARS,
            "variable list must have 1..={MAX_VARS} entries"
        );
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!n.is_empty(), "variable names must be nonempty");
            assert!(
                !names[..i].contains(n),
                "variable names must be distinct: {n}"
            );
        }
        Arc::new(VarSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// `[a1,a2,a3,a4,a6,x,y,z]`: the generic projective order.
pub fn generic_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["a1", "a2", "a3", "a4", "a6", "x", "y", "z"]))
        .clone()
}

/// `[a1,a2,a3,a4,a6,X,Y]`: the generic affine order.
pub fn affine_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["a1", "a2", "a3", "a4", "a6", "X", "Y"]))
        .clone()
}

/// `[s,t]`: the Tate normal form order.
pub fn tate_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["s", "t"])).clone()
}

/// `[s,t,X,Y]`: affine work over the Tate coefficient ring.
pub fn tate_affine_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["s", "t", "X", "Y"])).clone()
}

/// `[x,y,z]`: specialized projective polynomials.
pub fn xyz_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["x", "y", "z"])).clone()
}

/// `[X,Y]`: specialized affine polynomials.
pub fn xy_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["X", "Y"])).clone()
}

/// A packed exponent vector. Unused trailing lanes stay zero, so comparisons
/// and products are independent of the variable count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    e: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: [0; MAX_VARS] };

    pub fn from_exponents(exps: &[u32]) -> Result<Monomial, PolyError> {
        let mut e = [0u16; MAX_VARS];
        for (i, &x) in exps.iter().enumerate() {
            e[i] = u16::try_from(x).map_err(|_| PolyError::ExponentOverflow)?;
        }
        Ok(Monomial { e })
    }

    pub fn var(i: usize, exp: u16) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        e[i] = exp;
        Monomial { e }
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.e[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.e
            .iter()
            .zip(weights)
            .map(|(&x, &w)| x as i64 * w)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i].checked_add(other.e[i])?;
        }
        Some(Monomial { e })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure `self.divides(other)`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = other.e[i] - self.e[i];
        }
        Monomial { e }
    }

    fn pack(&self) -> u128 {
        let mut p: u128 = 0;
        for &x in &self.e {
            p = (p << 16) | x as u128;
        }
        p
    }
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u128(self.pack());
    }
}

impl Ord for Monomial {
    /// Graded lex: total degree first, ties by lex on the exponent vector.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.pack().cmp(&other.pack()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient arithmetic used by `SPoly`. The context carries whatever the
/// coefficient domain needs to produce constants (nothing for integers, the
/// ring for ring elements).
pub trait Coeff: Clone + PartialEq + Eq + std::fmt::Debug + Send + Sync {
    type Ctx: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(ctx: &Self::Ctx, a: &Self, b: &Self) -> Self;
    fn sub(ctx: &Self::Ctx, a: &Self, b: &Self) -> Self;
    fn neg(ctx: &Self::Ctx, a: &Self) -> Self;
    fn mul(ctx: &Self::Ctx, a: &Self, b: &Self) -> Self;
    fn add_assign(ctx: &Self::Ctx, a: &mut Self, b: &Self) {
        *a = Self::add(ctx, a, b);
    }
    /// Exact division: `Some(q)` with `q*b == a`, or `None`.
    fn try_div(ctx: &Self::Ctx, a: &Self, b: &Self) -> Option<Self>;
    /// Canonical string form, used by serialization.
    fn coeff_string(&self) -> String;
    fn parse_coeff(ctx: &Self::Ctx, s: &str) -> Result<Self, String>;
    /// Optional specialized full-product path (used by the integer domain
    /// for large isobaric products); `None` falls back to the generic path.
    fn mul_polys_hook(a: &SPoly<Self>, b: &SPoly<Self>) -> Option<SPoly<Self>>
    where
        Self: Sized,
    {
        let _ = (a, b);
        None
    }
}

impl Coeff for BigInt {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        BigInt::from(0)
    }
    fn one(_: &()) -> Self {
        BigInt::from(1)
    }
    fn from_i64(_: &(), v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(_: &(), a: &Self, b: &Self) -> Self {
        a + b
    }
    fn sub(_: &(), a: &Self, b: &Self) -> Self {
        a - b
    }
    fn neg(_: &(), a: &Self) -> Self {
        -a
    }
    fn mul(_: &(), a: &Self, b: &Self) -> Self {
        a * b
    }
    fn add_assign(_: &(), a: &mut Self, b: &Self) {
        *a += b;
    }
    fn try_div(_: &(), a: &Self, b: &Self) -> Option<Self> {
        if num_traits::Zero::is_zero(b) {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(a, b);
        if num_traits::Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn coeff_string(&self) -> String {
        self.to_string()
    }
    fn parse_coeff(_: &(), s: &str) -> Result<Self, String> {
        s.parse::<BigInt>().map_err(|e| e.to_string())
    }
    fn mul_polys_hook(a: &SPoly<Self>, b: &SPoly<Self>) -> Option<SPoly<Self>> {
        // only worth the table setup for genuinely large products
        if a.terms.len().min(b.terms.len()) < 128 {
            return None;
        }
        fastmul::try_mul_dense(a, b)
    }
}

/// Sparse multivariate polynomial; see the module docs for the invariants.
#[derive(Debug, Clone)]
pub struct SPoly<C: Coeff> {
    vars: Arc<VarSet>,
    ctx: C::Ctx,
    /// Ascending graded-lex order, no zero coefficients.
    terms: Vec<(Monomial, C)>,
}

/// The universal carrier of symbolic objects: integer coefficients.
pub type MPoly = SPoly<BigInt>;

impl<C: Coeff> PartialEq for SPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.ctx == other.ctx && self.terms == other.terms
    }
}

impl<C: Coeff> Eq for SPoly<C> {}

impl<C: Coeff> SPoly<C> {
    pub fn zero(vars: Arc<VarSet>, ctx: C::Ctx) -> Self {
        SPoly {
            vars,
            ctx,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: Arc<VarSet>, ctx: C::Ctx, c: C) -> Self {
        let mut p = SPoly::zero(vars, ctx);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn one(vars: Arc<VarSet>, ctx: C::Ctx) -> Self {
        let c = C::one(&ctx);
        SPoly::constant(vars, ctx, c)
    }

    pub fn from_i64(vars: Arc<VarSet>, ctx: C::Ctx, v: i64) -> Self {
        let c = C::from_i64(&ctx, v);
        SPoly::constant(vars, ctx, c)
    }

    /// The polynomial `name^exp` for a declared variable.
    pub fn var(vars: Arc<VarSet>, ctx: C::Ctx, name: &str) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let c = C::one(&ctx);
        SPoly {
            vars,
            ctx,
            terms: vec![(Monomial::var(i, 1), c)],
        }
    }

    pub fn from_terms(
        vars: Arc<VarSet>,
        ctx: C::Ctx,
        terms: Vec<(Monomial, C)>,
    ) -> Self {
        let mut p = SPoly { vars, ctx, terms };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => C::add_assign(&self.ctx, lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        self.terms = out;
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the canonical order.
    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.last()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant-term coefficient.
    pub fn constant_coeff(&self) -> C {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(&self.ctx),
        }
    }

    /// Coefficient of an exact monomial.
    pub fn coeff(&self, m: &Monomial) -> C {
        match self.terms.binary_search_by(|(tm, _)| tm.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(&self.ctx),
        }
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// True when no term involves the given variable.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.exponent(var) == 0)
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.vars == other.vars && self.ctx == other.ctx,
            "polynomials use different variable lists or coefficient rings"
        );
    }

    fn merged(&self, other: &Self, negate_other: bool) -> Self {
        self.assert_compatible(other);
        let ctx = &self.ctx;
        let mut out: Vec<(Monomial, C)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (am, ac) = &self.terms[i];
            let (bm, bc) = &other.terms[j];
            match am.cmp(bm) {
                Ordering::Less => {
                    out.push((*am, ac.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other {
                        C::neg(ctx, bc)
                    } else {
                        bc.clone()
                    };
                    out.push((*bm, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        C::sub(ctx, ac, bc)
                    } else {
                        C::add(ctx, ac, bc)
                    };
                    if !c.is_zero() {
                        out.push((*am, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (bm, bc) in &other.terms[j..] {
            let c = if negate_other {
                C::neg(ctx, bc)
            } else {
                bc.clone()
            };
            out.push((*bm, c));
        }
        SPoly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merged(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merged(other, true)
    }

    /// Consuming merge: coefficients are moved, not cloned. The workhorse of
    /// long reduction chains over big polynomials.
    pub fn add_owned(self, other: Self) -> Self {
        self.merged_owned(other, false)
    }

    pub fn sub_owned(self, other: Self) -> Self {
        self.merged_owned(other, true)
    }

    fn merged_owned(self, other: Self, negate_other: bool) -> Self {
        self.assert_compatible(&other);
        let SPoly { vars, ctx, terms } = self;
        let mut out: Vec<(Monomial, C)> =
            Vec::with_capacity(terms.len() + other.terms.len());
        let mut a = terms.into_iter().peekable();
        let mut b = other.terms.into_iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some((am, _)), Some((bm, _))) => am.cmp(bm),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => {
                    let (m, c) = b.next().unwrap();
                    let c = if negate_other { C::neg(&ctx, &c) } else { c };
                    out.push((m, c));
                }
                Ordering::Equal => {
                    let (m, ac) = a.next().unwrap();
                    let (_, bc) = b.next().unwrap();
                    let c = if negate_other {
                        C::sub(&ctx, &ac, &bc)
                    } else {
                        C::add(&ctx, &ac, &bc)
                    };
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
        }
        SPoly {
            vars,
            ctx,
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, C::neg(&self.ctx, c)))
            .collect();
        SPoly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return SPoly::zero(self.vars.clone(), self.ctx.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, C::mul(&self.ctx, c, k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SPoly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&C::from_i64(&self.ctx, k))
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return SPoly::zero(self.vars.clone(), self.ctx.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), C::mul(&self.ctx, tc, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SPoly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        if self.is_zero() || other.is_zero() {
            return SPoly::zero(self.vars.clone(), self.ctx.clone());
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        // A handful of terms on one side: sum of shifted copies by merging,
        // which keeps memory linear and avoids hashing.
        let few = 4;
        if self.terms.len().min(other.terms.len()) <= few {
            let (small, large) = if self.terms.len() <= other.terms.len() {
                (self, other)
            } else {
                (other, self)
            };
            let mut acc = SPoly::zero(self.vars.clone(), self.ctx.clone());
            for (m, c) in &small.terms {
                acc = acc.add(&large.mul_term(m, c));
            }
            return acc;
        }
        if let Some(r) = C::mul_polys_hook(self, other) {
            return r;
        }
        let ctx = &self.ctx;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (&self.terms, &other.terms)
        } else {
            (&other.terms, &self.terms)
        };
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(large.len() + large.len() / 2);
        for (am, ac) in small.iter() {
            for (bm, bc) in large.iter() {
                let m = am.mul(bm);
                let p = C::mul(ctx, ac, bc);
                match acc.get_mut(&m) {
                    Some(e) => C::add_assign(ctx, e, &p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, C)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        SPoly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = SPoly::one(self.vars.clone(), self.ctx.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Common weighted degree of all terms, or `NotHomogeneous`.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Result<i64, PolyError> {
        assert_eq!(weights.len(), self.vars.len(), "one weight per variable");
        let mut full = [0i64; MAX_VARS];
        full[..weights.len()].copy_from_slice(weights);
        let mut it = self.terms.iter();
        let first = it.next().ok_or(PolyError::ZeroPolynomial)?;
        let d = first.0.weighted_degree(&full);
        for (m, _) in it {
            if m.weighted_degree(&full) != d {
                return Err(PolyError::NotHomogeneous);
            }
        }
        Ok(d)
    }

    /// Map coefficients through a morphism, keeping monomials. Terms whose
    /// image vanishes are dropped.
    pub fn map_coeffs<D: Coeff>(
        &self,
        out_ctx: D::Ctx,
        f: impl Fn(&C) -> D,
    ) -> SPoly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SPoly {
            vars: self.vars.clone(),
            ctx: out_ctx,
            terms,
        }
    }
}

impl MPoly {
    /// Exact polynomial division. Divides by leading terms under the
    /// canonical order and verifies the quotient with one multiplication;
    /// reports `NotDivisible` with the offending leading term otherwise.
    pub fn divexact(&self, den: &MPoly) -> Result<MPoly, PolyError> {
        use std::collections::BTreeMap;
        self.assert_compatible(den);
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = den.leading().unwrap();
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut q_terms: Vec<(Monomial, BigInt)> = Vec::new();
        loop {
            let (lm, lc) = match rem.iter().next_back() {
                Some((m, c)) => (*m, c.clone()),
                None => break,
            };
            let not_div = || PolyError::NotDivisible {
                lead: display::term_string(&self.vars, &lm, &lc),
            };
            if !dm.divides(&lm) {
                return Err(not_div());
            }
            let qc = <BigInt as Coeff>::try_div(&(), &lc, dc).ok_or_else(not_div)?;
            let qm = dm.div_into(&lm);
            for (m, c) in &den.terms {
                let key = m.mul(&qm);
                let mut dead = false;
                match rem.get_mut(&key) {
                    Some(e) => {
                        *e -= c * &qc;
                        dead = num_traits::Zero::is_zero(e);
                    }
                    None => {
                        rem.insert(key, -(c * &qc));
                    }
                }
                if dead {
                    rem.remove(&key);
                }
            }
            q_terms.push((qm, qc));
        }
        q_terms.reverse();
        let q = MPoly {
            vars: self.vars.clone(),
            ctx: (),
            terms: q_terms,
        };
        // Unconditional re-multiplication check: exactness claims downstream
        // rely on it.
        if q.mul(den) != *self {
            return Err(PolyError::NotDivisible {
                lead: "internal division verification failed".into(),
            });
        }
        Ok(q)
    }

    /// Exact division by an integer scalar; `None` if any coefficient
    /// is not an exact multiple.
    pub fn divexact_i64(&self, k: i64) -> Option<MPoly> {
        let kb = BigInt::from(k);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (q, r) = num_integer::Integer::div_rem(c, &kb);
            if !num_traits::Zero::is_zero(&r) {
                return None;
            }
            terms.push((*m, q));
        }
        Some(MPoly {
            vars: self.vars.clone(),
            ctx: (),
            terms,
        })
    }

    /// Largest positive integer content (gcd of coefficients); zero poly -> 0.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::from(0);
        for (_, c) in &self.terms {
            g = num_integer::Integer::gcd(&g, c);
        }
        g.abs()
    }
}

#[cfg(test)]
mod tests;
