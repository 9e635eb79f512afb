use std::collections::BTreeMap;

use super::TruncatedLSeries;
use crate::error::{Error, Result};

/// Exponent tuple `(e_1, ..., e_l)` of a monomial `t_1^{e_1} ... t_l^{e_l}`.
pub type Exponent = Vec<u32>;

/// Multivariate series in `t_1..t_l` with coefficients in `Z[[L]]/L^order`,
/// truncated in total `t`-degree: only monomials of total degree below
/// `degree_bound` are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTruncatedSeries {
    num_vars: usize,
    degree_bound: u32,
    order: usize,
    terms: BTreeMap<Exponent, TruncatedLSeries>,
}

fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl MultiTruncatedSeries {
    pub fn zero(num_vars: usize, degree_bound: u32, order: usize) -> Self {
        assert!(
            num_vars >= 1,
            "a multivariate series needs at least one variable"
        );
        MultiTruncatedSeries {
            num_vars,
            degree_bound,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize, degree_bound: u32, order: usize) -> Self {
        let mut s = Self::zero(num_vars, degree_bound, order);
        s.insert(vec![0; num_vars], TruncatedLSeries::one(order));
        s
    }

    /// `coeff * t^exponent`; vanishes if the monomial is beyond the bound.
    pub fn monomial(
        num_vars: usize,
        degree_bound: u32,
        exponent: Exponent,
        coeff: TruncatedLSeries,
    ) -> Result<Self> {
        if exponent.len() != num_vars {
            return Err(Error::VariableCountMismatch {
                left: num_vars,
                right: exponent.len(),
            });
        }
        let mut s = Self::zero(num_vars, degree_bound, coeff.order());
        s.insert(exponent, coeff);
        Ok(s)
    }

    /// Adds `coeff` into the coefficient of `exponent`, dropping the term if
    /// it becomes zero or lies outside the degree bound.
    fn insert(&mut self, exponent: Exponent, coeff: TruncatedLSeries) {
        if total_degree(&exponent) >= self.degree_bound {
            return;
        }
        let coeff = if coeff.order() > self.order {
            coeff.reduce(self.order)
        } else {
            coeff
        };
        let merged = match self.terms.remove(&exponent) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(exponent, merged);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &TruncatedLSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `t^exponent` (zero when absent).
    pub fn coefficient(&self, exponent: &[u32]) -> TruncatedLSeries {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(|| TruncatedLSeries::zero(self.order))
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VariableCountMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(
            self.num_vars,
            self.degree_bound.min(other.degree_bound),
            self.order.min(other.order),
        );
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let bound = self.degree_bound.min(other.degree_bound);
        let mut out = Self::zero(self.num_vars, bound, self.order.min(other.order));
        for (ea, ca) in &self.terms {
            let da = total_degree(ea);
            if da >= bound {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + total_degree(eb) >= bound {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Projection to smaller bounds.
    pub fn reduce(&self, degree_bound: u32, order: usize) -> Self {
        let mut out = Self::zero(
            self.num_vars,
            degree_bound.min(self.degree_bound),
            order.min(self.order),
        );
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    /// Adds `delta` to the `L^k` coefficient of the `t^exponent` term.
    pub fn with_coeff_added(&self, exponent: &[u32], k: usize, delta: i64) -> Self {
        let mut out = self.clone();
        let bump = TruncatedLSeries::zero(self.order).with_coeff_added(k, delta);
        out.insert(exponent.to_vec(), bump);
        out
    }
}
