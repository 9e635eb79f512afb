//! Hilbert–Samuel combinatorics and motives of the linear locus of the
//! punctual Quot scheme `Quot^d(O^r)_0` on `A^n`, together with its
//! stable limit as `n -> oo`.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactring::{LPolynomial, TruncatedLSeries};
use crate::motives::{gaussian_binomial, grassmannian_infinite};
use crate::report::{hook_for_case, Perturbation, VerifyReport};

/// Hilbert–Samuel function `h = (h(0), ..., h(t))` of a finite-length module
/// supported at the origin. Trailing zeros are stripped, so `(d)` and
/// `(d, 0)` are the same function. The empty function is the zero module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HilbertSamuelFunction {
    values: Vec<u32>,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl HilbertSamuelFunction {
    pub fn new(mut values: Vec<u32>) -> Result<Self> {
        while values.last() == Some(&0) {
            values.pop();
        }
        if values.first() == Some(&0) {
            return Err(Error::InvalidHilbertSamuel(format!(
                "h(0) must be positive in {values:?}"
            )));
        }
        Ok(HilbertSamuelFunction { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, i: usize) -> u32 {
        self.values.get(i).copied().unwrap_or(0)
    }

    /// `|h| = sum h(i)`.
    pub fn size(&self) -> u32 {
        self.values.iter().sum()
    }

    /// `l(h)`: the largest index with `h(t) != 0` (0 for the empty function).
    pub fn length(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn is_linear(&self) -> bool {
        self.length() < 2
    }

    /// `h(l(h))`.
    pub fn last(&self) -> u32 {
        self.values.last().copied().unwrap_or(0)
    }

    /// `h(i) <= r * dim R_i` for every `i`, with `dim R_i = C(n-1+i, i)`.
    pub fn is_admissible(&self, n: u32, r: u32) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| {
            let graded = binomial(u64::from(n) - 1 + i as u64, i as u64);
            u64::from(v) <= u64::from(r) * graded
        })
    }

    /// All admissible functions of size `d` without internal zeros, in
    /// lexicographic order. These are the only candidates for nonempty
    /// strata of `Quot^d(O^r)_0`.
    pub fn all_of_size(d: u32, r: u32, n: u32) -> Vec<Self> {
        fn extend(
            prefix: &mut Vec<u32>,
            left: u32,
            r: u32,
            n: u32,
            out: &mut Vec<HilbertSamuelFunction>,
        ) {
            if left == 0 {
                out.push(HilbertSamuelFunction {
                    values: prefix.clone(),
                });
                return;
            }
            let i = prefix.len() as u64;
            let cap = u64::from(r) * binomial(u64::from(n) - 1 + i, i);
            let cap = cap.min(u64::from(left)) as u32;
            for v in 1..=cap {
                prefix.push(v);
                extend(prefix, left - v, r, n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if d == 0 {
            out.push(HilbertSamuelFunction { values: Vec::new() });
            return out;
        }
        extend(&mut Vec::new(), d, r, n, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for HilbertSamuelFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.values.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Linear Hilbert–Samuel functions `(i, d-i)` with nonempty stratum:
/// `i <= min(d, r)` and `d - i <= i n`.
pub fn enumerate_linear_hs(d: u32, r: u32, n: u32) -> Vec<HilbertSamuelFunction> {
    (1..=d.min(r))
        .filter(|&i| d - i <= i * n)
        .map(|i| HilbertSamuelFunction::new(vec![i, d - i]).expect("h(0) >= 1"))
        .collect()
}

/// `[H_h] = [Gr(h(0), r)] [Gr(h(1), h(0) n)] L^{h(1)(r - h(0))}` for a
/// linear Hilbert–Samuel function.
pub fn stratum_motive(h: &HilbertSamuelFunction, r: u32, n: u32) -> Result<LPolynomial> {
    if !h.is_linear() {
        return Err(Error::LengthTooLarge(h.to_string()));
    }
    let (h0, h1) = (h.get(0) as usize, h.get(1) as usize);
    let r = r as usize;
    if h0 > r {
        return Ok(LPolynomial::zero());
    }
    let base = gaussian_binomial(h0, r);
    let fibre = gaussian_binomial(h1, h0 * n as usize);
    Ok((&base * &fibre).shift(h1 * (r - h0)))
}

/// `[LQuot^d(O^r)] = sum_{i=1}^{d} [Gr(i,r)] [Gr(d-i, i n)] L^{(d-i)(r-i)}`.
pub fn lquot_motive(d: u32, r: u32, n: u32) -> LPolynomial {
    let (d, r, n) = (d as usize, r as usize, n as usize);
    (1..=d.min(r))
        .map(|i| {
            let term = &gaussian_binomial(i, r) * &gaussian_binomial(d - i, i * n);
            term.shift((d - i) * (r - i))
        })
        .sum()
}

/// Sum of [`stratum_motive`] over [`enumerate_linear_hs`]; must equal
/// [`lquot_motive`].
pub fn lquot_motive_by_strata(d: u32, r: u32, n: u32) -> LPolynomial {
    enumerate_linear_hs(d, r, n)
        .iter()
        .map(|h| stratum_motive(h, r, n).expect("linear"))
        .sum()
}

/// `P_i(d) = prod_{k=d-i+1}^{d-1} (1 - L^k)`, with `P_1(d) = 1`.
pub fn prelim_factor(i: usize, d: usize) -> LPolynomial {
    (d + 1 - i..d)
        .map(|k| LPolynomial::one().with_coeff_added(k, -1))
        .product()
}

/// `R(r, d) = sum_{i=1}^{d} P_i(d) [Gr(i, r)] L^{(d-i)(r-i)}`.
pub fn prelim_lhs(r: u32, d: u32) -> LPolynomial {
    let (r, d) = (r as usize, d as usize);
    (1..=d.min(r))
        .map(|i| (&prelim_factor(i, d) * &gaussian_binomial(i, r)).shift((d - i) * (r - i)))
        .sum()
}

/// Checks `R(r, d) = sum_{k=0}^{r-1} L^{dk}` and the step
/// `R(r+1, d) - R(r, d) = L^{dr}` for `1 <= r <= r_max`, `1 <= d <= d_max`.
pub fn verify_prelim(r_max: u32, d_max: u32, hook: Option<Perturbation>) -> VerifyReport {
    let mut report = VerifyReport::new(
        "R(r,d) = sum_{k=0}^{r-1} L^(dk); R(r+1,d) - R(r,d) = L^(dr)",
        json!({ "r_max": r_max, "d_max": d_max }),
    );
    let mut case = 0;
    for r in 1..=r_max {
        for d in 1..=d_max {
            let mut lhs = prelim_lhs(r, d);
            if let Some(p) = hook_for_case(hook, case) {
                lhs = lhs.with_coeff_added(p.coeff, 1);
            }
            case += 1;
            let rhs = LPolynomial::geometric_sum(d as usize, r as usize);
            report.check(
                lhs == rhs,
                || format!("(r={r}, d={d})"),
                || rhs.to_string(),
                || lhs.to_string(),
            );
            let step = &prelim_lhs(r + 1, d) - &lhs;
            let expected = LPolynomial::l_power((d * r) as usize);
            report.check(
                step == expected,
                || format!("step (r={r}, d={d})"),
                || expected.to_string(),
                || step.to_string(),
            );
        }
    }
    report
}

/// `[Quot^d(O^r)_0]` on `A^oo`: `[Gr(d-1, oo)] * sum_{i=0}^{r-1} L^{di}`.
pub fn quot_infinity_motive(d: u32, r: u32, order: usize) -> TruncatedLSeries {
    assert!(d >= 1, "d must be positive");
    let sum = LPolynomial::geometric_sum(d as usize, r as usize);
    &grassmannian_infinite(d as usize - 1, order) * &sum
}

/// The limit of [`lquot_motive`] term by term:
/// `sum_i [Gr(i, r)] [Gr(d-i, oo)] L^{(d-i)(r-i)}`.
pub fn quot_infinity_by_strata(d: u32, r: u32, order: usize) -> TruncatedLSeries {
    let (d, r) = (d as usize, r as usize);
    (1..=d.min(r)).fold(TruncatedLSeries::zero(order), |acc, i| {
        let term = (&grassmannian_infinite(d - i, order) * &gaussian_binomial(i, r))
            .shift((d - i) * (r - i));
        &acc + &term
    })
}

/// Compares [`quot_infinity_by_strata`] with the closed form for one `(d, r)`.
pub fn verify_stable_limit(
    d: u32,
    r: u32,
    order: usize,
    hook: Option<Perturbation>,
) -> VerifyReport {
    verify_stable_limit_impl(d..=d, r..=r, order, hook)
}

/// [`verify_stable_limit`] for all `1 <= d <= d_max`, `1 <= r <= r_max`.
pub fn verify_stable_limit_sweep(
    d_max: u32,
    r_max: u32,
    order: usize,
    hook: Option<Perturbation>,
) -> VerifyReport {
    verify_stable_limit_impl(1..=d_max, 1..=r_max, order, hook)
}

fn verify_stable_limit_impl(
    ds: std::ops::RangeInclusive<u32>,
    rs: std::ops::RangeInclusive<u32>,
    order: usize,
    hook: Option<Perturbation>,
) -> VerifyReport {
    let mut report = VerifyReport::new(
        "sum_i [Gr(i,r)][Gr(d-i,oo)] L^((d-i)(r-i)) = [Gr(d-1,oo)] sum_{i<r} L^(di)",
        json!({ "d": [ds.start(), ds.end()], "r": [rs.start(), rs.end()], "order": order }),
    );
    let mut case = 0;
    for d in ds {
        for r in rs.clone() {
            let mut strata = quot_infinity_by_strata(d, r, order);
            if let Some(p) = hook_for_case(hook, case) {
                strata = strata.with_coeff_added(p.coeff, 1);
            }
            case += 1;
            let closed = quot_infinity_motive(d, r, order);
            report.check(
                strata == closed,
                || format!("(d={d}, r={r})"),
                || closed.to_string(),
                || strata.to_string(),
            );
        }
    }
    report
}

/// Checks `lquot_motive(d, r, n) = quot_infinity_motive(d, r, N) mod L^N`
/// for `n` in `N + d ..= N + d + extra`.
pub fn verify_lquot_stabilisation(
    d_max: u32,
    r_max: u32,
    order: usize,
    extra: u32,
    hook: Option<Perturbation>,
) -> VerifyReport {
    let mut report = VerifyReport::new(
        "[LQuot^d(O^r) on A^n] = [Quot^d(O^r)_0 on A^oo] mod L^N for n >= N + d",
        json!({ "d_max": d_max, "r_max": r_max, "order": order, "extra": extra }),
    );
    let mut case = 0;
    for d in 1..=d_max {
        for r in 1..=r_max {
            let limit = quot_infinity_motive(d, r, order);
            let start = order as u32 + d;
            for n in start..=start + extra {
                let mut finite = lquot_motive(d, r, n);
                if let Some(p) = hook_for_case(hook, case) {
                    finite = finite.with_coeff_added(p.coeff, 1);
                }
                case += 1;
                report.check(
                    limit.agrees_with(&finite),
                    || format!("(d={d}, r={r}, n={n})"),
                    || limit.to_string(),
                    || finite.truncate(order).to_string(),
                );
            }
        }
    }
    report
}

/// `(r - h(0) + h(0) n - h(1)) * h(t)`: the power of `L` dividing the motive
/// of a nonlinear stratum.
pub fn nonlinear_divisibility_exponent(h: &HilbertSamuelFunction, r: u32, n: u32) -> Result<u64> {
    if h.is_linear() {
        return Err(Error::LengthTooSmall(h.to_string()));
    }
    let (h0, h1) = (i64::from(h.get(0)), i64::from(h.get(1)));
    let base = i64::from(r) - h0 + h0 * i64::from(n) - h1;
    if base < 0 {
        return Err(Error::InvalidHilbertSamuel(format!(
            "{h} is not admissible for r={r}, n={n}"
        )));
    }
    Ok(base as u64 * u64::from(h.last()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(v: &[u32]) -> HilbertSamuelFunction {
        HilbertSamuelFunction::new(v.to_vec()).unwrap()
    }

    fn p(c: &[i64]) -> LPolynomial {
        LPolynomial::from_i64s(c)
    }

    #[test]
    fn hs_normalisation() {
        assert_eq!(hs(&[2, 0, 0]), hs(&[2]));
        assert_eq!(hs(&[1, 1, 1]).length(), 2);
        assert_eq!(hs(&[3]).length(), 0);
        assert_eq!(hs(&[1, 2, 1]).size(), 4);
        assert!(HilbertSamuelFunction::new(vec![0, 1]).is_err());
        assert_eq!(hs(&[1, 2]).to_string(), "(1,2)");
    }

    #[test]
    fn admissibility_uses_non_strict_bound() {
        assert!(hs(&[2]).is_admissible(3, 2));
        assert!(!hs(&[3]).is_admissible(3, 2));
        assert!(hs(&[1, 2]).is_admissible(2, 1));
        assert!(!hs(&[1, 3]).is_admissible(2, 1));
        assert!(hs(&[1, 2, 3]).is_admissible(2, 1));
    }

    #[test]
    fn all_of_size_lists_compositions() {
        let all = HilbertSamuelFunction::all_of_size(3, 1, 2);
        assert_eq!(all, vec![hs(&[1, 1, 1]), hs(&[1, 2])]);
        let all = HilbertSamuelFunction::all_of_size(3, 2, 2);
        assert_eq!(all, vec![hs(&[1, 1, 1]), hs(&[1, 2]), hs(&[2, 1])]);
    }

    #[test]
    fn linear_hs_enumeration() {
        assert_eq!(enumerate_linear_hs(2, 1, 2), vec![hs(&[1, 1])]);
        assert_eq!(enumerate_linear_hs(3, 2, 2), vec![hs(&[1, 2]), hs(&[2, 1])]);
        assert_eq!(enumerate_linear_hs(1, 5, 9), vec![hs(&[1, 0])]);
    }

    #[test]
    fn linear_quot_motives() {
        assert_eq!(lquot_motive(2, 1, 2), p(&[1, 1]));
        assert_eq!(lquot_motive(3, 2, 2), p(&[1, 1, 2, 2]));
        assert_eq!(lquot_motive(3, 2, 2).eval_u64(2), 27.into());
        for r in 1..=6 {
            assert_eq!(lquot_motive(1, r, 4), gaussian_binomial(1, r as usize));
        }
    }

    #[test]
    fn strata_formula() {
        for d in 1..=6 {
            assert_eq!(
                stratum_motive(&hs(&[d]), 6, 3).unwrap(),
                gaussian_binomial(d as usize, 6)
            );
        }
        assert_eq!(stratum_motive(&hs(&[1, 1]), 1, 2).unwrap(), p(&[1, 1]));
        assert_eq!(
            stratum_motive(&hs(&[2, 1]), 2, 2).unwrap(),
            p(&[1, 1, 1, 1])
        );
        assert!(matches!(
            stratum_motive(&hs(&[1, 1, 1]), 1, 2),
            Err(Error::LengthTooLarge(_))
        ));
    }

    #[test]
    fn two_routes_to_the_linear_locus() {
        for d in 1..=8 {
            for r in 1..=8 {
                for n in 1..=8 {
                    let direct = lquot_motive(d, r, n);
                    assert_eq!(direct, lquot_motive_by_strata(d, r, n), "({d},{r},{n})");
                    assert!(direct.is_nonnegative());
                }
            }
        }
    }

    #[test]
    fn prelim_examples() {
        assert_eq!(prelim_lhs(2, 2), p(&[1, 0, 1]));
        for d in 1..=7 {
            assert_eq!(prelim_lhs(1, d), LPolynomial::one());
        }
        for r in 1..=6 {
            assert_eq!(prelim_lhs(r, 1), gaussian_binomial(1, r as usize));
        }
        assert_eq!(prelim_factor(1, 5), LPolynomial::one());
        assert_eq!(prelim_factor(2, 5), p(&[1, 0, 0, 0, -1]));
    }

    #[test]
    fn prelim_sweep_passes() {
        let r = verify_prelim(10, 10, None);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checked, 200);
    }

    #[test]
    fn prelim_negative_controls() {
        let r = verify_prelim(3, 3, Perturbation::at(0));
        assert!(!r.passed());
        assert_eq!(r.failures[0].witness, "(r=1, d=1)");
        // a perturbed P_i product: drop the last factor of P_2
        let broken = |r: usize, d: usize| -> LPolynomial {
            (1..=d.min(r))
                .map(|i| {
                    let f = if i == 2 {
                        prelim_factor(1, d)
                    } else {
                        prelim_factor(i, d)
                    };
                    (&f * &gaussian_binomial(i, r)).shift((d - i) * (r - i))
                })
                .sum()
        };
        assert_ne!(broken(2, 3), LPolynomial::geometric_sum(3, 2));
    }

    #[test]
    fn infinity_motives() {
        assert_eq!(
            quot_infinity_motive(1, 3, 6),
            TruncatedLSeries::from_i64s(&[1, 1, 1], 6)
        );
        assert_eq!(
            quot_infinity_motive(2, 1, 4),
            TruncatedLSeries::from_i64s(&[1, 1, 1, 1], 4)
        );
        for d in 1..=6 {
            assert_eq!(
                quot_infinity_motive(d, 1, 12),
                grassmannian_infinite(d as usize - 1, 12)
            );
        }
    }

    #[test]
    fn stable_limit_small_cases() {
        assert!(verify_stable_limit(1, 1, 8, None).passed());
        assert!(verify_stable_limit(2, 2, 6, None).passed());
        assert!(verify_stable_limit_sweep(6, 6, 16, None).passed());
        assert!(!verify_stable_limit_sweep(2, 2, 6, Perturbation::at(3)).passed());
    }

    #[test]
    fn stabilisation() {
        let r = verify_lquot_stabilisation(4, 4, 10, 2, None);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn divisibility_exponents() {
        assert_eq!(
            nonlinear_divisibility_exponent(&hs(&[1, 1, 1]), 1, 2).unwrap(),
            1
        );
        for n in 1..=6 {
            for d in 3..=6 {
                let ones = hs(&vec![1; d]);
                assert_eq!(
                    nonlinear_divisibility_exponent(&ones, 1, n).unwrap(),
                    u64::from(n - 1)
                );
            }
        }
        assert_eq!(
            nonlinear_divisibility_exponent(&hs(&[2, 2, 1]), 2, 4).unwrap(),
            6
        );
        assert!(matches!(
            nonlinear_divisibility_exponent(&hs(&[2, 1]), 2, 4),
            Err(Error::LengthTooSmall(_))
        ));
    }
}
