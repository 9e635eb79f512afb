use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LPolynomial;
use crate::error::{Error, Result};

/// Element of `Z[[L]]` known modulo `L^order`.
///
/// Exactly `order` coefficients are stored. Binary operations on series of
/// different orders return a series of the smaller order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedLSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl TruncatedLSeries {
    /// Reduces (or zero-pads) `coeffs` to exactly `order` entries.
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order, BigInt::zero());
        TruncatedLSeries { order, coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigInt::one()], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Projection to a lower precision. Asking for a higher order is a bug.
    pub fn reduce(&self, order: usize) -> Self {
        assert!(
            order <= self.order,
            "cannot raise precision {} -> {order}",
            self.order
        );
        Self::new(self.coeffs[..order].to_vec(), order)
    }

    /// The representative polynomial of degree below `order`.
    pub fn to_polynomial(&self) -> LPolynomial {
        LPolynomial::new(self.coeffs.clone())
    }

    /// Does `p` reduce to this series modulo `L^order`?
    pub fn agrees_with(&self, p: &LPolynomial) -> bool {
        p.truncate(self.order) == *self
    }

    pub fn with_coeff_added(&self, k: usize, delta: i64) -> Self {
        let mut s = self.clone();
        if k < s.order {
            s.coeffs[k] += delta;
        }
        s
    }

    /// Multiplication by `L^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k.min(self.order)];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, self.order)
    }

    /// Degree dilation `L^k -> z^{k * image_degree}`; the result is known
    /// modulo `z^{order * image_degree}`.
    pub fn substitute(&self, image_degree: usize) -> Self {
        assert!(image_degree > 0, "image degree must be positive");
        let order = self.order * image_degree;
        let mut coeffs = vec![BigInt::zero(); order];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * image_degree] = c.clone();
        }
        TruncatedLSeries { order, coeffs }
    }

    /// Inverse of `c` modulo `L^order`, where `c(0) = ±1`.
    pub fn geometric_inverse(c: &LPolynomial, order: usize) -> Result<Self> {
        let c0 = c.coeff(0);
        let unit = if c0.is_one() {
            BigInt::one()
        } else if c0 == -BigInt::one() {
            -BigInt::one()
        } else {
            return Err(Error::NotInvertible(c0.to_string()));
        };
        // s_k = unit * -(sum_{j=1}^k c_j s_{k-j}); unit is its own inverse.
        let mut s: Vec<BigInt> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = if k == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            for j in 1..=k.min(c.len().saturating_sub(1)) {
                acc -= c.coeff(j) * &s[k - j];
            }
            s.push(acc * &unit);
        }
        Ok(TruncatedLSeries { order, coeffs: s })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| c >= &BigInt::zero())
    }
}

impl Add for &TruncatedLSeries {
    type Output = TruncatedLSeries;
    fn add(self, rhs: &TruncatedLSeries) -> TruncatedLSeries {
        let order = self.order.min(rhs.order);
        TruncatedLSeries {
            order,
            coeffs: (0..order)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Sub for &TruncatedLSeries {
    type Output = TruncatedLSeries;
    fn sub(self, rhs: &TruncatedLSeries) -> TruncatedLSeries {
        let order = self.order.min(rhs.order);
        TruncatedLSeries {
            order,
            coeffs: (0..order)
                .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Mul for &TruncatedLSeries {
    type Output = TruncatedLSeries;
    fn mul(self, rhs: &TruncatedLSeries) -> TruncatedLSeries {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![BigInt::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedLSeries { order, coeffs }
    }
}

impl Mul<&LPolynomial> for &TruncatedLSeries {
    type Output = TruncatedLSeries;
    fn mul(self, rhs: &LPolynomial) -> TruncatedLSeries {
        self * &rhs.truncate(self.order)
    }
}

impl Neg for &TruncatedLSeries {
    type Output = TruncatedLSeries;
    fn neg(self) -> TruncatedLSeries {
        TruncatedLSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedLSeries {
            type Output = TruncatedLSeries;
            fn $m(self, rhs: TruncatedLSeries) -> TruncatedLSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TruncatedLSeries> for TruncatedLSeries {
            type Output = TruncatedLSeries;
            fn $m(self, rhs: &TruncatedLSeries) -> TruncatedLSeries {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::fmt::Display for TruncatedLSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render_in("L"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverses() {
        let one_minus_l = LPolynomial::from_i64s(&[1, -1]);
        assert_eq!(
            TruncatedLSeries::geometric_inverse(&one_minus_l, 4).unwrap(),
            TruncatedLSeries::from_i64s(&[1, 1, 1, 1], 4)
        );
        assert_eq!(
            TruncatedLSeries::geometric_inverse(&LPolynomial::one(), 6).unwrap(),
            TruncatedLSeries::one(6)
        );
        let one_minus_l2 = LPolynomial::from_i64s(&[1, 0, -1]);
        let inv = TruncatedLSeries::geometric_inverse(&one_minus_l2, 5).unwrap();
        assert_eq!(inv, TruncatedLSeries::from_i64s(&[1, 0, 1, 0, 1], 5));
        assert_eq!(&inv * &one_minus_l2, TruncatedLSeries::one(5));
    }

    #[test]
    fn negative_unit_constant_term() {
        let c = LPolynomial::from_i64s(&[-1, 1]);
        let inv = TruncatedLSeries::geometric_inverse(&c, 6).unwrap();
        assert_eq!(&inv * &c, TruncatedLSeries::one(6));
        assert_eq!(inv.coeff(3), BigInt::from(-1));
    }

    #[test]
    fn non_units_rejected() {
        let c = LPolynomial::from_i64s(&[2, 1]);
        assert!(matches!(
            TruncatedLSeries::geometric_inverse(&c, 3),
            Err(Error::NotInvertible(_))
        ));
        assert!(TruncatedLSeries::geometric_inverse(&LPolynomial::zero(), 3).is_err());
    }

    #[test]
    fn mixed_orders_combine_at_minimum() {
        let a = TruncatedLSeries::from_i64s(&[1, 2, 3], 3);
        let b = TruncatedLSeries::from_i64s(&[1, 1, 1, 1, 1], 5);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b), TruncatedLSeries::from_i64s(&[1, 3, 6], 3));
    }

    #[test]
    fn shifting_and_dilation() {
        let a = TruncatedLSeries::from_i64s(&[1, 1, 1], 3);
        assert_eq!(a.shift(2), TruncatedLSeries::from_i64s(&[0, 0, 1], 3));
        assert_eq!(a.shift(7), TruncatedLSeries::zero(3));
        let z = a.substitute(2);
        assert_eq!(z.order(), 6);
        assert_eq!(z, TruncatedLSeries::from_i64s(&[1, 0, 1, 0, 1, 0], 6));
    }
}
