//! Coefficient rings: arbitrary-precision integers, rationals, residue rings
//! Z/NZ (N composite allowed), and polynomial rings over these.
//!
//! Every element is stored in a unique canonical form, so equality is
//! structural: residues as least non-negative representatives, rationals
//! reduced with positive denominator, polynomials in canonical term order.
//! All values are immutable and operations are pure.

use crate::mpoly::{parse_poly, Coeff, PolyError, SPoly, VarSet, MAX_VARS};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    /// The witness gcd is populated for Z/NZ, where a failed inversion
    /// exhibits a nontrivial factor of the modulus.
    #[error("element is not a unit{}", gcd_note(.gcd))]
    NotAUnit { gcd: Option<BigUint> },
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("unsupported over {ring}: {what}")]
    Capability { ring: String, what: String },
    #[error("invalid {what}: {detail}")]
    Invalid { what: String, detail: String },
}

fn gcd_note(g: &Option<BigUint>) -> String {
    match g {
        Some(g) => format!(" (witness gcd {g})"),
        None => String::new(),
    }
}

/// Descriptor of a supported coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Integers,
    Rationals,
    /// Z/NZ with N >= 2; N need not be prime.
    Residue(BigUint),
    Polynomial { base: Ring, vars: Arc<VarSet> },
}

/// A shared, cheaply clonable ring descriptor.
#[derive(Clone, PartialEq, Eq)]
pub struct Ring(Arc<RingKind>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "zz"),
            RingKind::Rationals => write!(f, "qq"),
            RingKind::Residue(n) => write!(f, "zmod:{n}"),
            RingKind::Polynomial { base, vars } => {
                write!(f, "poly:{base}:{}", vars.names().join(","))
            }
        }
    }
}

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingKind::Integers))
    }

    pub fn rationals() -> Ring {
        Ring(Arc::new(RingKind::Rationals))
    }

    pub fn residue(modulus: BigUint) -> Result<Ring, RingError> {
        if modulus < BigUint::from(2u32) {
            return Err(RingError::Invalid {
                what: "modulus".into(),
                detail: format!("{modulus} < 2"),
            });
        }
        Ok(Ring(Arc::new(RingKind::Residue(modulus))))
    }

    pub fn residue_u64(modulus: u64) -> Ring {
        Ring::residue(BigUint::from(modulus)).expect("modulus >= 2")
    }

    pub fn polynomial(base: Ring, vars: Arc<VarSet>) -> Result<Ring, RingError> {
        // Variable names must not shadow names at deeper levels, or element
        // strings would be ambiguous.
        let mut b = &base;
        loop {
            match b.kind() {
                RingKind::Polynomial {
                    base: inner,
                    vars: inner_vars,
                } => {
                    for n in vars.names() {
                        if inner_vars.index_of(n).is_some() {
                            return Err(RingError::Invalid {
                                what: "variable list".into(),
                                detail: format!("{n} shadows a base-ring variable"),
                            });
                        }
                    }
                    b = inner;
                }
                _ => break,
            }
        }
        Ok(Ring(Arc::new(RingKind::Polynomial { base, vars })))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// Parse the canonical descriptor form: `zz`, `qq`, `zmod:<N>`,
    /// `poly:<base>:<v1,v2,...>`.
    pub fn parse(text: &str) -> Result<Ring, RingError> {
        let (ring, rest) = Self::parse_prefix(text)?;
        if !rest.is_empty() {
            return Err(RingError::Invalid {
                what: "ring descriptor".into(),
                detail: format!("trailing input {rest:?} in {text:?}"),
            });
        }
        Ok(ring)
    }

    fn parse_prefix(text: &str) -> Result<(Ring, &str), RingError> {
        let invalid = |detail: String| RingError::Invalid {
            what: "ring descriptor".into(),
            detail,
        };
        if let Some(rest) = text.strip_prefix("zz") {
            Ok((Ring::integers(), rest))
        } else if let Some(rest) = text.strip_prefix("qq") {
            Ok((Ring::rationals(), rest))
        } else if let Some(rest) = text.strip_prefix("zmod:") {
            let end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let n: BigUint = rest[..end]
                .parse()
                .map_err(|_| invalid(format!("bad modulus in {text:?}")))?;
            Ok((Ring::residue(n)?, &rest[end..]))
        } else if let Some(rest) = text.strip_prefix("poly:") {
            let (base, rest) = Self::parse_prefix(rest)?;
            let rest = rest
                .strip_prefix(':')
                .ok_or_else(|| invalid(format!("missing variable list in {text:?}")))?;
            let end = rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == ','))
                .unwrap_or(rest.len());
            let names: Vec<&str> = rest[..end].split(',').collect();
            if names.iter().any(|n| n.is_empty()) || names.len() > MAX_VARS {
                return Err(invalid(format!("bad variable list in {text:?}")));
            }
            for (i, n) in names.iter().enumerate() {
                if names[..i].contains(n) {
                    return Err(invalid(format!("duplicate variable {n}")));
                }
                if !n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
                    return Err(invalid(format!("bad variable name {n}")));
                }
            }
            let vars = VarSet::new(&names);
            Ok((Ring::polynomial(base, vars)?, &rest[end..]))
        } else {
            Err(invalid(format!("unrecognized descriptor {text:?}")))
        }
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> RingElement {
        self.from_bigint(&BigInt::from(v))
    }

    /// Canonical image of an integer under the unique morphism Z -> R.
    pub fn from_bigint(&self, v: &BigInt) -> RingElement {
        let value = match self.kind() {
            RingKind::Integers => Value::Int(v.clone()),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(v.clone())),
            RingKind::Residue(n) => Value::Res(mod_reduce(v, n)),
            RingKind::Polynomial { base, vars } => Value::Poly(Box::new(SPoly::constant(
                vars.clone(),
                base.clone(),
                base.from_bigint(v),
            ))),
        };
        RingElement {
            ring: self.clone(),
            value,
        }
    }

    /// Parse a canonical element string.
    pub fn parse_element(&self, text: &str) -> Result<RingElement, RingError> {
        let text = text.trim();
        let invalid = |detail: String| RingError::Invalid {
            what: format!("element of {self}"),
            detail,
        };
        let value = match self.kind() {
            RingKind::Integers => Value::Int(
                text.parse::<BigInt>()
                    .map_err(|e| invalid(e.to_string()))?,
            ),
            RingKind::Rationals => {
                let r: BigRational = text.parse().map_err(|_| invalid(format!("{text:?}")))?;
                Value::Rat(r)
            }
            RingKind::Residue(n) => {
                let v: BigInt = text.parse().map_err(|e| invalid(format!("{e}")))?;
                Value::Res(mod_reduce(&v, n))
            }
            RingKind::Polynomial { base, vars } => {
                let p: SPoly<RingElement> =
                    parse_poly(vars, base, text).map_err(|e| invalid(e.to_string()))?;
                Value::Poly(Box::new(p))
            }
        };
        Ok(RingElement {
            ring: self.clone(),
            value,
        })
    }

    /// Fields are Q and Z/pZ for prime p.
    pub fn is_field(&self) -> bool {
        match self.kind() {
            RingKind::Rationals => true,
            RingKind::Residue(n) => is_prime(n),
            _ => false,
        }
    }

    pub fn residue_modulus(&self) -> Option<&BigUint> {
        match self.kind() {
            RingKind::Residue(n) => Some(n),
            _ => None,
        }
    }

    /// Uniform element for residue rings; small random values elsewhere.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> RingElement {
        match self.kind() {
            RingKind::Residue(n) => {
                let v = rng.gen_biguint_below(n);
                RingElement {
                    ring: self.clone(),
                    value: Value::Res(v),
                }
            }
            _ => self.from_i64(rng.gen_range(-50..=50)),
        }
    }

    fn mismatch(&self, other: &Ring) -> RingError {
        RingError::Mismatch(self.to_string(), other.to_string())
    }
}

/// Least non-negative residue of `v` mod `n`.
fn mod_reduce(v: &BigInt, n: &BigUint) -> BigUint {
    let nn = BigInt::from(n.clone());
    let r = v.mod_floor(&nn);
    r.to_biguint().expect("mod_floor is non-negative")
}

/// Miller-Rabin, deterministic for all inputs below 2^64.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(small);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Canonical value payload; the variant always matches the ring kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Res(BigUint),
    Poly(Box<SPoly<RingElement>>),
}

/// An element of a concrete ring, in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(v) => write!(f, "{v}"),
            Value::Rat(v) => write!(f, "{v}"),
            Value::Res(v) => write!(f, "{v}"),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(v) => num_traits::Zero::is_zero(v),
            Value::Rat(v) => v.is_zero(),
            Value::Res(v) => v.is_zero(),
            Value::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    fn assert_same_ring(&self, other: &RingElement) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        if self.ring != other.ring {
            return Err(self.ring.mismatch(&other.ring));
        }
        Ok(self.add(other))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        if self.ring != other.ring {
            return Err(self.ring.mismatch(&other.ring));
        }
        Ok(self.sub(other))
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        if self.ring != other.ring {
            return Err(self.ring.mismatch(&other.ring));
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        self.assert_same_ring(other);
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Res(a), Value::Res(b)) => {
                let n = self.ring.residue_modulus().unwrap();
                Value::Res((a + b) % n)
            }
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(Box::new(a.add(b))),
            _ => unreachable!("value variant matches ring kind"),
        };
        RingElement {
            ring: self.ring.clone(),
            value,
        }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Rat(a) => Value::Rat(-a),
            Value::Res(a) => {
                let n = self.ring.residue_modulus().unwrap();
                if a.is_zero() {
                    Value::Res(BigUint::zero())
                } else {
                    Value::Res(n - a)
                }
            }
            Value::Poly(a) => Value::Poly(Box::new(a.neg())),
        };
        RingElement {
            ring: self.ring.clone(),
            value,
        }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.assert_same_ring(other);
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Res(a), Value::Res(b)) => {
                let n = self.ring.residue_modulus().unwrap();
                Value::Res((a * b) % n)
            }
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(Box::new(a.mul(b))),
            _ => unreachable!("value variant matches ring kind"),
        };
        RingElement {
            ring: self.ring.clone(),
            value,
        }
    }

    pub fn pow(&self, mut k: u64) -> RingElement {
        let mut result = self.ring.one();
        let mut base = self.clone();
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

    /// Multiplicative inverse; for Z/NZ a failure exhibits the witness
    /// gcd(a, N) > 1, which is a nontrivial factor of N when a != 0.
    pub fn inverse(&self) -> Result<RingElement, RingError> {
        let value = match &self.value {
            Value::Int(a) => {
                if a.abs().is_one() {
                    Value::Int(a.clone())
                } else {
                    return Err(RingError::NotAUnit { gcd: None });
                }
            }
            Value::Rat(a) => {
                if a.is_zero() {
                    return Err(RingError::NotAUnit { gcd: None });
                }
                Value::Rat(a.recip())
            }
            Value::Res(a) => {
                let n = self.ring.residue_modulus().unwrap();
                let eg = BigInt::from(a.clone()).extended_gcd(&BigInt::from(n.clone()));
                if eg.gcd.is_one() {
                    Value::Res(mod_reduce(&eg.x, n))
                } else {
                    return Err(RingError::NotAUnit {
                        gcd: Some(eg.gcd.to_biguint().expect("gcd is non-negative")),
                    });
                }
            }
            Value::Poly(p) => {
                return self.poly_inverse(p);
            }
        };
        Ok(RingElement {
            ring: self.ring.clone(),
            value,
        })
    }

    /// A polynomial over a commutative ring is a unit iff its constant term
    /// is a unit and all other coefficients are nilpotent; the inverse is the
    /// geometric series, which terminates by nilpotency.
    fn poly_inverse(&self, p: &SPoly<RingElement>) -> Result<RingElement, RingError> {
        let c0 = p.constant_coeff();
        let c0_inv = c0.inverse()?;
        let vars = p.vars().clone();
        let base = p.ctx().clone();
        let c0_poly = SPoly::constant(vars.clone(), base.clone(), c0);
        let m = p.sub(&c0_poly);
        for (_, c) in m.terms() {
            if !c.is_nilpotent() {
                return Err(RingError::NotAUnit { gcd: None });
            }
        }
        // p = c0 (1 + c0^{-1} m); inverse = c0^{-1} sum (-c0^{-1} m)^k
        let step = m.scale(&c0_inv).neg();
        let mut sum = SPoly::one(vars.clone(), base.clone());
        let mut power = step.clone();
        while !power.is_zero() {
            sum = sum.add(&power);
            power = power.mul(&step);
        }
        Ok(RingElement {
            ring: self.ring.clone(),
            value: Value::Poly(Box::new(sum.scale(&c0_inv))),
        })
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn is_nilpotent(&self) -> bool {
        match &self.value {
            Value::Int(a) => num_traits::Zero::is_zero(a),
            Value::Rat(a) => a.is_zero(),
            Value::Res(a) => {
                let n = self.ring.residue_modulus().unwrap();
                let e = BigUint::from(n.bits());
                a.modpow(&e, n).is_zero()
            }
            Value::Poly(p) => p.terms().iter().all(|(_, c)| c.is_nilpotent()),
        }
    }

    /// Exact quotient `self / other`; `None` when the quotient does not
    /// exist or is not unique (non-unit divisor over Z/NZ).
    pub fn try_div(&self, other: &RingElement) -> Option<RingElement> {
        self.assert_same_ring(other);
        match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => {
                if num_traits::Zero::is_zero(b) {
                    return None;
                }
                let (q, r) = a.div_rem(b);
                if num_traits::Zero::is_zero(&r) {
                    Some(RingElement {
                        ring: self.ring.clone(),
                        value: Value::Int(q),
                    })
                } else {
                    None
                }
            }
            _ => other.inverse().ok().map(|inv| self.mul(&inv)),
        }
    }

    /// Canonical lift to an integer, when the value is an integer-like
    /// element (Z, Z/NZ, or an integral rational).
    pub fn to_bigint_lift(&self) -> Option<BigInt> {
        match &self.value {
            Value::Int(a) => Some(a.clone()),
            Value::Res(a) => Some(BigInt::from(a.clone())),
            Value::Rat(a) => a.is_integer().then(|| a.to_integer()),
            Value::Poly(_) => None,
        }
    }
}

/// True iff the listed elements generate the unit ideal. Decidable here for
/// Z (gcd), Z/NZ (gcd with N), and fields (any nonzero entry); polynomial
/// rings report a capability error, general ideal membership is out of scope.
pub fn unit_ideal_test(values: &[RingElement]) -> Result<bool, RingError> {
    let first = values.first().ok_or_else(|| RingError::Invalid {
        what: "unit ideal test".into(),
        detail: "empty value list".into(),
    })?;
    let ring = first.ring.clone();
    for v in values {
        if v.ring != ring {
            return Err(ring.mismatch(&v.ring));
        }
    }
    match ring.kind() {
        RingKind::Integers => {
            let mut g = BigInt::from(0);
            for v in values {
                if let Value::Int(a) = &v.value {
                    g = g.gcd(a);
                }
            }
            Ok(g.is_one())
        }
        RingKind::Rationals => Ok(values.iter().any(|v| !v.is_zero())),
        RingKind::Residue(n) => {
            let mut g = BigUint::from(n.clone());
            for v in values {
                if let Value::Res(a) = &v.value {
                    g = g.gcd(a);
                }
            }
            Ok(g.is_one())
        }
        RingKind::Polynomial { .. } => Err(RingError::Capability {
            ring: ring.to_string(),
            what: "unit ideal test (ideal membership)".into(),
        }),
    }
}

impl Coeff for RingElement {
    type Ctx = Ring;

    fn zero(ctx: &Ring) -> Self {
        ctx.zero()
    }
    fn one(ctx: &Ring) -> Self {
        ctx.one()
    }
    fn from_i64(ctx: &Ring, v: i64) -> Self {
        ctx.from_i64(v)
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn add(_: &Ring, a: &Self, b: &Self) -> Self {
        a.add(b)
    }
    fn sub(_: &Ring, a: &Self, b: &Self) -> Self {
        a.sub(b)
    }
    fn neg(_: &Ring, a: &Self) -> Self {
        a.neg()
    }
    fn mul(_: &Ring, a: &Self, b: &Self) -> Self {
        a.mul(b)
    }
    fn try_div(_: &Ring, a: &Self, b: &Self) -> Option<Self> {
        a.try_div(b)
    }
    fn coeff_string(&self) -> String {
        self.to_string()
    }
    fn parse_coeff(ctx: &Ring, s: &str) -> Result<Self, String> {
        ctx.parse_element(s).map_err(|e| e.to_string())
    }
}

/// Convert a `PolyError` into the ring-level error wrapper.
impl From<PolyError> for RingError {
    fn from(e: PolyError) -> Self {
        RingError::Invalid {
            what: "polynomial".into(),
            detail: e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests;
