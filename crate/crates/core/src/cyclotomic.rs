//! Cyclotomic polynomials, the ring `Z[ξ_n]`, its primes above a rational
//! prime `p` and the residue maps `Z[ξ_n] → Z[ξ_n]/Q = F_p[x]/(f)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::exactmath::arith::{
    divisors, euler_phi, is_prime, multiplicative_order, split_prime_power,
};
use crate::exactmath::{
    factor_equal_degree_seeded, FieldElement, FiniteField, IntPolynomial, PrimeFieldPolynomial,
};
use crate::{Error, Result, DEFAULT_SEED};

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_n`, obtained by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> Result<Arc<IntPolynomial>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cyclotomic polynomial of index 0".into(),
        ));
    }
    if let Some(hit) = phi_cache().read().expect("cache lock").get(&n) {
        return Ok(Arc::clone(hit));
    }
    let mut quotient = &IntPolynomial::monomial(BigInt::one(), n as usize) - &IntPolynomial::one();
    for d in divisors(n) {
        if d < n {
            let phi_d = cyclotomic_polynomial(d)?;
            let (q, r) = quotient.div_rem_monic(&phi_d)?;
            debug_assert!(r.is_zero());
            quotient = q;
        }
    }
    let phi = Arc::new(quotient);
    phi_cache()
        .write()
        .expect("cache lock")
        .entry(n)
        .or_insert_with(|| Arc::clone(&phi));
    Ok(phi)
}

/// Arithmetic context of `Z[ξ_n]`: the power basis `1, ξ, …, ξ^(φ(n)-1)`
/// together with the nonzero lower coefficients of `Φ_n`.
#[derive(Debug)]
pub struct CyclotomicRing {
    n: u64,
    phi: usize,
    /// `(j, a_j)` with `a_j ≠ 0`, `j < φ(n)`.
    lower: Vec<(usize, i64)>,
}

impl CyclotomicRing {
    pub fn get(n: u64) -> Result<Arc<CyclotomicRing>> {
        static RINGS: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicRing>>>> = OnceLock::new();
        let rings = RINGS.get_or_init(Default::default);
        if let Some(r) = rings.read().expect("ring lock").get(&n) {
            return Ok(Arc::clone(r));
        }
        let poly = cyclotomic_polynomial(n)?;
        let coeffs = poly
            .to_i64s()
            .ok_or_else(|| Error::InvalidArgument(format!("Φ_{n} has huge coefficients")))?;
        let phi = coeffs.len() - 1;
        let lower = coeffs[..phi]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect();
        let ring = Arc::new(CyclotomicRing { n, phi, lower });
        Ok(Arc::clone(
            rings.write().expect("ring lock").entry(n).or_insert(ring),
        ))
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Reduces a polynomial in `ξ` of any length to the power basis, using
    /// `ξ^n = 1` first and then long division by `Φ_n`.
    fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        let n = self.n as usize;
        if v.len() > n {
            for k in n..v.len() {
                let c = v[k];
                if c != 0 {
                    v[k % n] = ck_add(v[k % n], c);
                }
            }
            v.truncate(n);
        }
        for k in (self.phi..v.len()).rev() {
            let c = v[k];
            if c == 0 {
                continue;
            }
            for &(j, a) in &self.lower {
                let idx = k - self.phi + j;
                v[idx] = ck_sub(v[idx], ck_mul(c, a));
            }
        }
        v.resize(self.phi, 0);
        v
    }
}

fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow in Z[ξ]")
}

fn ck_sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("coefficient overflow in Z[ξ]")
}

fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow in Z[ξ]")
}

/// An element `Σ c_k ξ^k` of `Z[ξ_n]` on the power basis.
#[derive(Clone)]
pub struct CyclotomicInt {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(n: u64) -> Result<Self> {
        let ring = CyclotomicRing::get(n)?;
        let coeffs = vec![0; ring.phi];
        Ok(Self { ring, coeffs })
    }

    pub fn from_int(n: u64, c: i64) -> Result<Self> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = c;
        Ok(z)
    }

    pub fn one(n: u64) -> Result<Self> {
        Self::from_int(n, 1)
    }

    /// `ξ_n^k` for any `k` (taken modulo `n`).
    pub fn xi_pow(n: u64, k: u64) -> Result<Self> {
        Self::from_terms(n, &[(k, 1)])
    }

    pub fn xi(n: u64) -> Result<Self> {
        Self::xi_pow(n, 1)
    }

    /// `Σ c ξ_n^k` over `(k, c)` pairs; exponents are arbitrary.
    pub fn from_terms(n: u64, terms: &[(u64, i64)]) -> Result<Self> {
        let ring = CyclotomicRing::get(n)?;
        let mut v = vec![0i64; (n as usize).max(ring.phi)];
        for &(k, c) in terms {
            let k = (k % n) as usize;
            v[k] = ck_add(v[k], c);
        }
        let coeffs = ring.reduce(v);
        Ok(Self { ring, coeffs })
    }

    /// Polynomial in `ξ` with `coeffs[k]` the coefficient of `ξ^k`.
    pub fn from_coeffs(n: u64, coeffs: Vec<i64>) -> Result<Self> {
        let ring = CyclotomicRing::get(n)?;
        let coeffs = ring.reduce(coeffs);
        Ok(Self { ring, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.ring.n
    }

    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then(|| self.coeffs[0])
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|&a| ck_mul(a, c)).collect(),
        }
    }

    /// Exact division by a rational integer, or `None` if some coefficient
    /// leaves a remainder.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if d == 0 || self.coeffs.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(Self {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.ring.n).expect("ring exists");
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

    /// The image under `ξ_n ↦ ξ_n^k` (a Galois automorphism when `gcd(k, n) = 1`).
    pub fn substitute_power(&self, k: u64) -> Self {
        let n = self.ring.n;
        let terms: Vec<(u64, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| ((j as u64 * k) % n, c))
            .collect();
        Self::from_terms(n, &terms).expect("ring exists")
    }

    /// Re-expresses this element of `Z[ξ_e]` inside `Z[ξ_m]` for `e | m`
    /// via `ξ_e = ξ_m^(m/e)`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        let e = self.ring.n;
        if !target.is_multiple_of(e) {
            return Err(Error::BadConductor {
                conductor: e,
                order: target,
            });
        }
        let step = target / e;
        let terms: Vec<(u64, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j as u64 * step, c))
            .collect();
        Self::from_terms(target, &terms)
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.ring.n, other.ring.n,
            "cyclotomic integers of different conductors"
        );
    }
}

/// Complex conjugation `ξ ↦ ξ^(n-1)`.
pub fn conjugate(a: &CyclotomicInt) -> CyclotomicInt {
    a.substitute_power(a.ring.n - 1)
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.n == other.ring.n && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicInt {}

impl Ord for CyclotomicInt {
    /// Conductor, then the power-basis coefficient vector lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .n
            .cmp(&other.ring.n)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for CyclotomicInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for CyclotomicInt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicInt(n={}, {})", self.ring.n, self)
    }
}

impl fmt::Display for CyclotomicInt {
    /// Polynomial in `w = ξ_n`, e.g. `w^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c < 0, c.unsigned_abs().to_string()))
            .collect();
        f.write_str(&crate::exactmath::render_poly_in("w", terms, false))
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check(rhs);
        CyclotomicInt {
            ring: Arc::clone(&self.ring),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| ck_add(a, b))
                .collect(),
        }
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check(rhs);
        CyclotomicInt {
            ring: Arc::clone(&self.ring),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| ck_sub(a, b))
                .collect(),
        }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        self.scale(-1)
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check(rhs);
        if let Some(c) = self.as_integer() {
            return rhs.scale(c);
        }
        if let Some(c) = rhs.as_integer() {
            return self.scale(c);
        }
        let phi = self.ring.phi;
        let mut prod = vec![0i64; 2 * phi - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    prod[i + j] = ck_add(prod[i + j], ck_mul(a, b));
                }
            }
        }
        CyclotomicInt {
            ring: Arc::clone(&self.ring),
            coeffs: self.ring.reduce(prod),
        }
    }
}

/// A nonzero prime `Q = (p, f(ξ))` of `Z[ξ_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicPrime {
    conductor: u64,
    p: u64,
    f: PrimeFieldPolynomial,
    ram_exponent: u64,
    field: Arc<FiniteField>,
}

impl CyclotomicPrime {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The monic irreducible factor `f` of `Φ_n mod p`.
    pub fn f(&self) -> &PrimeFieldPolynomial {
        &self.f
    }

    pub fn residue_degree(&self) -> usize {
        self.f.degree().expect("irreducible factor")
    }

    /// `φ(p^α)` where `p^α ∥ n`.
    pub fn ram_exponent(&self) -> u64 {
        self.ram_exponent
    }

    /// The residue field `F_p[x]/(f)`.
    pub fn residue_field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn is_ramified(&self) -> bool {
        self.ram_exponent > 1
    }
}

impl PartialOrd for CyclotomicPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclotomicPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.conductor, self.p, &self.f).cmp(&(other.conductor, other.p, &other.f))
    }
}

/// True iff `p | n` and either `p ≠ 2` or `4 | n`.
pub fn is_ramified(n: u64, p: u64) -> bool {
    n.is_multiple_of(p) && (p != 2 || n.is_multiple_of(4))
}

pub fn primes_above(n: u64, p: u64) -> Result<Vec<CyclotomicPrime>> {
    primes_above_seeded(n, p, DEFAULT_SEED)
}

/// The primes of `Z[ξ_n]` above `p`, sorted by their factor `f`.
///
/// With `n = p^α m`, `Φ_n ≡ Φ_m^φ(p^α) (mod p)` and `Φ_m` is squarefree mod `p`
/// with irreducible factors of degree `ord_m(p)`.
pub fn primes_above_seeded(n: u64, p: u64, seed: u64) -> Result<Vec<CyclotomicPrime>> {
    if n == 0 {
        return Err(Error::InvalidArgument("conductor 0".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (alpha, m) = split_prime_power(n, p);
    let ram_exponent = euler_phi(p.pow(alpha));
    let phi_m = PrimeFieldPolynomial::from_int_poly(cyclotomic_polynomial(m)?.as_ref(), p);
    let d = multiplicative_order(p % m.max(1), m) as usize;
    let factors = factor_equal_degree_seeded(&phi_m, d, seed)?;
    factors
        .into_iter()
        .map(|f| {
            let field = FiniteField::new(f.clone())?;
            Ok(CyclotomicPrime {
                conductor: n,
                p,
                f,
                ram_exponent,
                field,
            })
        })
        .collect()
}

/// The residue of `a` in `Z[ξ]/Q = F_p[x]/(f)`.
pub fn reduce_mod(a: &CyclotomicInt, q: &CyclotomicPrime) -> Result<FieldElement> {
    if a.conductor() != q.conductor {
        return Err(Error::ConductorMismatch(a.conductor(), q.conductor));
    }
    let poly = PrimeFieldPolynomial::from_i64s(q.p, &a.coeffs);
    Ok(FieldElement::from_poly(&q.field, &poly))
}

/// `Φ_n'(ζ)` in the residue field, `ζ` the class of `x`.
pub fn phi_derivative_at(q: &CyclotomicPrime) -> Result<FieldElement> {
    let deriv = cyclotomic_polynomial(q.conductor)?.derivative();
    let poly = PrimeFieldPolynomial::from_int_poly(&deriv, q.p);
    Ok(FieldElement::from_poly(&q.field, &poly))
}

/// Factorization shape of `Φ_n mod p` as `(f_1)^e ⋯ (f_r)^e`.
pub fn factorization_string(primes: &[CyclotomicPrime]) -> String {
    primes
        .iter()
        .map(|q| format!("({})^{}", q.f, q.ram_exponent))
        .collect::<Vec<_>>()
        .join(" ")
}
