use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Dense polynomial over `Z`; `coeffs[k]` is the coefficient of `x^k`.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients and
/// [`IntPolynomial::degree`] returns `None` for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Long division by a monic polynomial.
    pub fn div_rem_monic(&self, m: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dm = match m.degree() {
            Some(d) if d >= 1 && m.is_monic() => d,
            _ => return Err(Error::NonMonicModulus),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dm {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dm];
        for k in (dm..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.coeffs[..dm].iter().enumerate() {
                if !mj.is_zero() {
                    rem[k - dm + j] -= &c * mj;
                }
            }
            quot[k - dm] = c;
        }
        rem.truncate(dm);
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    pub fn rem_monic(&self, m: &IntPolynomial) -> Result<IntPolynomial> {
        self.div_rem_monic(m).map(|(_, r)| r)
    }

    pub fn to_latex(&self) -> String {
        render_poly(self.terms_desc(), true)
    }

    fn terms_desc(&self) -> Vec<(usize, bool, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.is_negative(), c.abs().to_string()))
            .collect()
    }
}

/// `a * b mod m` for a monic modulus `m` of degree at least one.
pub fn poly_mul_mod(
    a: &IntPolynomial,
    b: &IntPolynomial,
    m: &IntPolynomial,
) -> Result<IntPolynomial> {
    (a * b).rem_monic(m)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(self.terms_desc(), false))
    }
}

/// Renders `(degree, negative, |coefficient|)` terms in descending degree as
/// `x^4 - x^2 + 1`; the LaTeX form braces multi-digit exponents.
pub(crate) fn render_poly(terms: Vec<(usize, bool, String)>, latex: bool) -> String {
    render_poly_in("x", terms, latex)
}

pub(crate) fn render_poly_in(var: &str, terms: Vec<(usize, bool, String)>, latex: bool) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, neg, abs)) in terms.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if k == 0 || abs != "1" {
            out.push_str(&abs);
        }
        match k {
            0 => {}
            1 => out.push_str(var),
            _ if latex && k >= 10 => out.push_str(&format!("{var}^{{{k}}}")),
            _ => out.push_str(&format!("{var}^{k}")),
        }
    }
    out
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}
