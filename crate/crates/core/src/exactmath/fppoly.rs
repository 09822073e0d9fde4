use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arith::{is_prime, mod_inv, prime_divisors};
use super::intpoly::{render_poly, IntPolynomial};
use crate::{Error, Result, DEFAULT_SEED};

/// Dense polynomial over `F_p` with coefficients in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldPolynomial {
    p: u64,
    coeffs: Vec<u64>,
}

impl PrimeFieldPolynomial {
    /// Reduces every coefficient modulo `p` and trims. `p` is assumed prime.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Self {
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(p as i64) as u64)
                .collect(),
        )
    }

    pub fn from_int_poly(poly: &IntPolynomial, p: u64) -> Self {
        let modulus = num_bigint::BigInt::from(p);
        Self::new(
            p,
            poly.coeffs()
                .iter()
                .map(|c| {
                    let r = ((c % &modulus) + &modulus) % &modulus;
                    r.to_u64().expect("residue fits in u64")
                })
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        Self {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => {
                let inv = mod_inv(lc, self.p).expect("nonzero element of a prime field");
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&a| mulmod(a, c, p)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|k| (self.coeff(k) + rhs.coeff(k)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|k| (self.coeff(k) + self.p - rhs.coeff(k)) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.check(d);
        let dd = d.degree().expect("division by the zero polynomial");
        let p = self.p;
        let inv = mod_inv(d.leading(), p).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = mulmod(rem[k], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = (rem[k - dd + j] + p - mulmod(c, dj, p)) % p;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mulmod(c, k as u64 % p, p))
                .collect(),
        )
    }

    pub fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        self.mul(rhs).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::constant(self.p, 1).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    /// `self^(p^k) mod m` by iterated Frobenius.
    fn frobenius_mod(&self, k: usize, m: &Self) -> Self {
        let e = BigUint::from(self.p);
        let mut y = self.rem(m);
        for _ in 0..k {
            y = y.pow_mod(&e, m);
        }
        y
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_one()
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        let f = self.monic();
        let x = Self::x(self.p);
        for q in prime_divisors(n as u64) {
            let h = x.frobenius_mod(n / q as usize, &f).sub(&x.rem(&f));
            if !f.gcd(&h).is_one() {
                return false;
            }
        }
        x.frobenius_mod(n, &f) == x.rem(&f)
    }

    /// Evaluates at an element of `F_p`.
    pub fn eval(&self, at: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, at, self.p) + c) % self.p)
    }

    pub fn to_latex(&self) -> String {
        render_poly(self.terms_desc(), true)
    }

    fn terms_desc(&self) -> Vec<(usize, bool, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, c)| (k, false, c.to_string()))
            .collect()
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "polynomials over different prime fields");
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

impl Ord for PrimeFieldPolynomial {
    /// Degree first, then coefficients from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for PrimeFieldPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimeFieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(self.terms_desc(), false))
    }
}

/// Splits a squarefree polynomial whose irreducible factors all have degree
/// `d` into those monic factors, using [`DEFAULT_SEED`].
pub fn factor_equal_degree(
    g: &PrimeFieldPolynomial,
    d: usize,
) -> Result<Vec<PrimeFieldPolynomial>> {
    factor_equal_degree_seeded(g, d, DEFAULT_SEED)
}

/// Cantor–Zassenhaus equal-degree splitting driven by a seeded ChaCha stream.
/// The factors are returned sorted.
pub fn factor_equal_degree_seeded(
    g: &PrimeFieldPolynomial,
    d: usize,
    seed: u64,
) -> Result<Vec<PrimeFieldPolynomial>> {
    let p = g.modulus();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = match g.degree() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(Error::InvalidArgument(
                "cannot factor a constant polynomial".into(),
            ))
        }
    };
    if d == 0 || n % d != 0 {
        return Err(Error::InvalidArgument(format!(
            "degree {n} is not a multiple of the factor degree {d}"
        )));
    }
    if !g.is_squarefree() {
        return Err(Error::NotSquarefree(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n / d);
    let mut pending = vec![g.monic()];
    while let Some(h) = pending.pop() {
        if h.degree() == Some(d) {
            out.push(h);
            continue;
        }
        let (a, b) = split_once(&h, d, &mut rng);
        pending.push(a);
        pending.push(b);
    }
    out.sort();
    Ok(out)
}

/// One nontrivial split of a monic squarefree equal-degree product.
fn split_once(
    h: &PrimeFieldPolynomial,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> (PrimeFieldPolynomial, PrimeFieldPolynomial) {
    let p = h.modulus();
    let n = h.degree().expect("nonzero");
    let half = if p == 2 {
        None
    } else {
        Some((BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32))
    };
    loop {
        let a = PrimeFieldPolynomial::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let direct = h.gcd(&a);
        let candidate = if direct.degree() > Some(0) {
            direct
        } else {
            let b = match &half {
                Some(e) => a.pow_mod(e, h).sub(&PrimeFieldPolynomial::constant(p, 1)),
                None => {
                    // absolute trace a + a^2 + ... + a^(2^(d-1)) to F_2
                    let mut acc = PrimeFieldPolynomial::zero(2);
                    let mut t = a.rem(h);
                    for _ in 0..d {
                        acc = acc.add(&t);
                        t = t.mul_mod(&t, h);
                    }
                    acc
                }
            };
            h.gcd(&b)
        };
        if let Some(k) = candidate.degree() {
            if k > 0 && k < n {
                let other = h.div_rem(&candidate).0.monic();
                return (candidate, other);
            }
        }
    }
}
