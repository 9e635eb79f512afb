//! Motives of Grassmannians and flag varieties, at finite level and in the
//! `L`-adic limit.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exactring::{LPolynomial, TruncatedLSeries};
use crate::report::{hook_for_case, Perturbation, VerifyReport};

/// Ambient dimension of a flag: a finite `n`, or the stable limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Finite(usize),
    Stable,
}

/// Dimension vector `0 <= d_1 <= ... <= d_l` of a flag, with `d_0 = 0` and
/// `d_{l+1} = n` at finite level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagDimensions {
    dims: Vec<usize>,
    ambient: Ambient,
}

impl FlagDimensions {
    pub fn finite(dims: Vec<usize>, n: usize) -> Result<Self> {
        Self::validate(&dims)?;
        if let Some(&top) = dims.last() {
            if top > n {
                return Err(Error::InvalidFlag(format!("d_l = {top} exceeds n = {n}")));
            }
        }
        Ok(FlagDimensions {
            dims,
            ambient: Ambient::Finite(n),
        })
    }

    pub fn stable(dims: Vec<usize>) -> Result<Self> {
        Self::validate(&dims)?;
        Ok(FlagDimensions {
            dims,
            ambient: Ambient::Stable,
        })
    }

    fn validate(dims: &[usize]) -> Result<()> {
        if dims.is_empty() {
            return Err(Error::InvalidFlag(
                "at least one dimension is required".into(),
            ));
        }
        if dims.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidFlag(format!(
                "{dims:?} is not weakly increasing"
            )));
        }
        Ok(())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn top(&self) -> usize {
        *self.dims.last().expect("validated nonempty")
    }

    /// Gaps `m_j = d_{j+1} - d_j` for `j = 0..l-1`, and additionally
    /// `m_l = n - d_l` at finite level.
    pub fn gaps(&self) -> Vec<usize> {
        let mut prev = 0;
        let mut out: Vec<usize> = self
            .dims
            .iter()
            .map(|&d| {
                let m = d - prev;
                prev = d;
                m
            })
            .collect();
        if let Ambient::Finite(n) = self.ambient {
            out.push(n - prev);
        }
        out
    }

    /// `sum_{j<j'} m_j m_{j'}`, the dimension of the finite flag variety.
    pub fn variety_dimension(&self) -> usize {
        let gaps = self.gaps();
        let mut total = 0;
        for (i, a) in gaps.iter().enumerate() {
            for b in &gaps[i + 1..] {
                total += a * b;
            }
        }
        total
    }
}

/// Pascal-type table of `[Gr(j, m)]` for `j <= max_d`, `m <= max_n`, built
/// with `[Gr(j, m)] = [Gr(j-1, m-1)] + L^j [Gr(j, m-1)]`.
#[derive(Clone, Debug)]
pub struct GaussianTable {
    max_d: usize,
    rows: Vec<Vec<LPolynomial>>,
}

impl GaussianTable {
    pub fn new(max_d: usize, max_n: usize) -> Self {
        let mut rows: Vec<Vec<LPolynomial>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![LPolynomial::one()]);
        for m in 1..=max_n {
            let prev = &rows[m - 1];
            let width = m.min(max_d);
            let mut row = Vec::with_capacity(width + 1);
            row.push(LPolynomial::one());
            for j in 1..=width {
                let left = &prev[j - 1];
                let below = prev.get(j).map(|p| p.shift(j)).unwrap_or_default();
                row.push(left + &below);
            }
            rows.push(row);
        }
        GaussianTable { max_d, rows }
    }

    /// `[Gr(d, n)]`, zero when `d > n`.
    pub fn get(&self, d: usize, n: usize) -> LPolynomial {
        assert!(
            d <= self.max_d && n < self.rows.len(),
            "({d},{n}) outside the table"
        );
        self.rows[n].get(d).cloned().unwrap_or_default()
    }
}

/// `[Gr(d, n)]` by the `L`-binomial recursion; zero when `d > n`.
pub fn gaussian_binomial(d: usize, n: usize) -> LPolynomial {
    if d > n {
        return LPolynomial::zero();
    }
    let d = d.min(n - d);
    GaussianTable::new(d, n).get(d, n)
}

fn l_power_minus_one(k: usize) -> LPolynomial {
    LPolynomial::l_power(k).with_coeff_added(0, -1)
}

/// `[Gr(d, n)]` as `prod_{k=1}^{d} (L^{n-d+k} - 1) / (L^k - 1)`, by exact
/// division. Independent of the recursion in [`gaussian_binomial`].
pub fn gaussian_binomial_by_product(d: usize, n: usize) -> LPolynomial {
    if d > n {
        return LPolynomial::zero();
    }
    let num: LPolynomial = (1..=d).map(|k| l_power_minus_one(n - d + k)).product();
    let den: LPolynomial = (1..=d).map(l_power_minus_one).product();
    num.div_exact(&den)
        .expect("Gaussian binomial quotient is a polynomial")
}

/// `[Gr(d, oo)] = prod_{k=1}^{d} 1/(1 - L^k)` modulo `L^order`.
pub fn grassmannian_infinite(d: usize, order: usize) -> TruncatedLSeries {
    (1..=d).fold(TruncatedLSeries::one(order), |acc, k| {
        let factor = LPolynomial::one().with_coeff_added(k, -1);
        let inv = TruncatedLSeries::geometric_inverse(&factor, order).expect("1 - L^k is a unit");
        &acc * &inv
    })
}

/// `[Fl(d_1, ..., d_l, n)]` as the ratio
/// `prod_{k=1}^{n} (L^k - 1) / prod_j prod_{k=1}^{m_j} (L^k - 1)`.
pub fn flag_motive(f: &FlagDimensions) -> LPolynomial {
    let n = match f.ambient() {
        Ambient::Finite(n) => n,
        Ambient::Stable => panic!("flag_motive needs a finite ambient dimension"),
    };
    let num: LPolynomial = (1..=n).map(l_power_minus_one).product();
    let den: LPolynomial = f
        .gaps()
        .into_iter()
        .flat_map(|m| (1..=m).map(l_power_minus_one))
        .product();
    num.div_exact(&den)
        .expect("flag motive ratio is a polynomial")
}

/// `[Fl(d_1, ..., d_l, oo)] = prod_{j<l} [Gr(m_j, oo)]` modulo `L^order`.
pub fn flag_motive_infinite(f: &FlagDimensions, order: usize) -> TruncatedLSeries {
    let mut gaps = f.gaps();
    if let Ambient::Finite(_) = f.ambient() {
        gaps.pop();
    }
    gaps.into_iter()
        .fold(TruncatedLSeries::one(order), |acc, m| {
            &acc * &grassmannian_infinite(m, order)
        })
}

/// Checks `[Gr(d+1, n+1)] = [Gr(d, n)] + L^{d+1} [Gr(d+1, n)]` for all
/// `d <= d_max`, `n <= n_max`; the left side comes from the product formula,
/// the right side from the recursion table.
pub fn verify_lbinomial(d_max: usize, n_max: usize, hook: Option<Perturbation>) -> VerifyReport {
    let mut report = VerifyReport::new(
        "[Gr(d+1,n+1)] = [Gr(d,n)] + L^(d+1) [Gr(d+1,n)]",
        json!({ "d_max": d_max, "n_max": n_max }),
    );
    let table = GaussianTable::new(d_max + 1, n_max);
    let mut case = 0;
    for d in 0..=d_max {
        for n in 0..=n_max {
            let mut lhs = gaussian_binomial_by_product(d + 1, n + 1);
            if let Some(p) = hook_for_case(hook, case) {
                lhs = lhs.with_coeff_added(p.coeff, 1);
            }
            let rhs = &table.get(d, n) + &table.get(d + 1, n).shift(d + 1);
            report.check(
                lhs == rhs,
                || format!("(d={d}, n={n})"),
                || rhs.to_string(),
                || lhs.to_string(),
            );
            case += 1;
        }
    }
    report
}
