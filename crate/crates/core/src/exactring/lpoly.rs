use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::series::TruncatedLSeries;
use crate::error::{Error, Result};

/// Integer polynomial in the Lefschetz class `L`.
///
/// Coefficients are stored densely, index `k` holding the coefficient of
/// `L^k`. The highest stored coefficient is always nonzero; the zero
/// polynomial has no stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LPolynomial {
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        LPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * L^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `L^k`.
    pub fn l_power(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    /// `1 + L^step + L^{2 step} + ... ` with `terms` summands.
    pub fn geometric_sum(step: usize, terms: usize) -> Self {
        if terms == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); step * (terms - 1) + 1];
        for i in 0..terms {
            coeffs[i * step] += 1;
        }
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Number of stored coefficients (`degree + 1`, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Returns a copy with `delta` added to the coefficient of `L^k`.
    pub fn with_coeff_added(&self, k: usize, delta: i64) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] += delta;
        Self::new(coeffs)
    }

    /// Multiplication by `L^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        LPolynomial { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_u64(&self, at: u64) -> BigInt {
        self.eval(&BigInt::from(at))
    }

    /// True iff the coefficients of `L^0 .. L^{k-1}` all vanish.
    pub fn divisible_by_l_power(&self, k: usize) -> bool {
        self.coeffs.iter().take(k).all(Zero::is_zero)
    }

    /// Exact quotient `self / divisor`.
    pub fn div_exact(&self, divisor: &LPolynomial) -> Result<LPolynomial> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let nd = self.coeffs.len() - 1;
        if nd < dd {
            return Err(Error::InexactDivision);
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * c;
            }
            quot[shift] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(quot))
    }

    /// Degree dilation `L^k -> z^{k * image_degree}`.
    pub fn substitute(&self, image_degree: usize) -> LPolynomial {
        assert!(image_degree > 0, "image degree must be positive");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * image_degree + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * image_degree] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Image in `Z[[L]] / L^order`.
    pub fn truncate(&self, order: usize) -> TruncatedLSeries {
        TruncatedLSeries::new(self.coeffs.clone(), order)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn pow(&self, e: u32) -> LPolynomial {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl From<i64> for LPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }
}

impl Add for &LPolynomial {
    type Output = LPolynomial;
    fn add(self, rhs: &LPolynomial) -> LPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &LPolynomial {
    type Output = LPolynomial;
    fn sub(self, rhs: &LPolynomial) -> LPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &LPolynomial {
    type Output = LPolynomial;
    fn mul(self, rhs: &LPolynomial) -> LPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LPolynomial::zero();
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
        LPolynomial::new(out)
    }
}

impl Neg for &LPolynomial {
    type Output = LPolynomial;
    fn neg(self) -> LPolynomial {
        LPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LPolynomial {
            type Output = LPolynomial;
            fn $m(self, rhs: LPolynomial) -> LPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LPolynomial> for LPolynomial {
            type Output = LPolynomial;
            fn $m(self, rhs: &LPolynomial) -> LPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LPolynomial {
    type Output = LPolynomial;
    fn neg(self) -> LPolynomial {
        -&self
    }
}

impl std::iter::Sum for LPolynomial {
    fn sum<I: Iterator<Item = LPolynomial>>(iter: I) -> Self {
        iter.fold(LPolynomial::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LPolynomial {
    fn product<I: Iterator<Item = LPolynomial>>(iter: I) -> Self {
        iter.fold(LPolynomial::one(), |acc, p| acc * p)
    }
}

impl std::fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&super::render::render_terms(&self.coeffs, "L"))
    }
}
