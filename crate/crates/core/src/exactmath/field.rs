use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::arith::is_prime;
use super::fppoly::PrimeFieldPolynomial;
use super::intpoly::render_poly_in;
use crate::{Error, Result};

/// The finite field `F_p[t]/(f)` for a monic irreducible `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    modulus: PrimeFieldPolynomial,
}

impl FiniteField {
    /// Builds `F_p[t]/(f)`, rejecting a composite `p` or a reducible `f`.
    pub fn new(modulus: PrimeFieldPolynomial) -> Result<Arc<Self>> {
        let p = modulus.modulus();
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !modulus.is_irreducible() {
            return Err(Error::Reducible(p));
        }
        Ok(Arc::new(Self {
            p,
            modulus: modulus.monic(),
        }))
    }

    /// The prime field `F_p`, presented as `F_p[t]/(t)`.
    pub fn prime_field(p: u64) -> Result<Arc<Self>> {
        Self::new(PrimeFieldPolynomial::x(p))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus
            .degree()
            .expect("irreducible modulus has a degree")
    }

    pub fn modulus(&self) -> &PrimeFieldPolynomial {
        &self.modulus
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }
}

/// An element of a [`FiniteField`], stored reduced modulo the field polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Arc<FiniteField>,
    value: PrimeFieldPolynomial,
}

impl FieldElement {
    pub fn from_poly(field: &Arc<FiniteField>, poly: &PrimeFieldPolynomial) -> Self {
        assert_eq!(
            poly.modulus(),
            field.p,
            "polynomial over the wrong prime field"
        );
        let value = poly.rem(&field.modulus);
        Self {
            field: Arc::clone(field),
            value,
        }
    }

    pub fn zero(field: &Arc<FiniteField>) -> Self {
        Self {
            field: Arc::clone(field),
            value: PrimeFieldPolynomial::zero(field.p),
        }
    }

    pub fn one(field: &Arc<FiniteField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<FiniteField>, c: i64) -> Self {
        // constants are already reduced: the modulus has degree at least one
        let value = PrimeFieldPolynomial::from_i64s(field.p, &[c]);
        Self {
            field: Arc::clone(field),
            value,
        }
    }

    /// The class of `t`.
    pub fn generator(field: &Arc<FiniteField>) -> Self {
        Self::from_poly(field, &PrimeFieldPolynomial::x(field.p))
    }

    /// The `i`-th element in base-`p` digit order (`0 ≤ i < |F|`).
    pub fn from_index(field: &Arc<FiniteField>, mut i: u128) -> Self {
        let p = field.p as u128;
        let mut c = Vec::with_capacity(field.degree());
        for _ in 0..field.degree() {
            c.push((i % p) as u64);
            i /= p;
        }
        Self::from_poly(field, &PrimeFieldPolynomial::new(field.p, c))
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn value(&self) -> &PrimeFieldPolynomial {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p;
        // invariant: s_i * value ≡ r_i (mod f)
        let (mut r0, mut r1) = (self.field.modulus.clone(), self.value.clone());
        let (mut s0, mut s1) = (
            PrimeFieldPolynomial::zero(p),
            PrimeFieldPolynomial::constant(p, 1),
        );
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since f is irreducible
        let c = r0.coeff(0);
        let inv_c = super::arith::mod_inv(c, p).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_poly(&self.field, &s0.scale(inv_c)))
    }

    fn check(&self, other: &Self) {
        assert!(
            self.same_field(other),
            "field elements from different fields"
        );
    }
}

/// `a^{-1}` in its parent field.
pub fn field_inverse(a: &FieldElement) -> Result<FieldElement> {
    a.inverse()
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            value: self.value.add(&rhs.value),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            value: self.value.sub(&rhs.value),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            value: self.value.mul_mod(&rhs.value, &self.field.modulus),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            value: self.value.neg(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .value
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, c)| (k, false, c.to_string()))
            .collect();
        f.write_str(&render_poly_in("t", terms, false))
    }
}
