//! Poincaré polynomials and series obtained from Tate-type motives by
//! `L -> z^2`, plus Hilbert series of graded polynomial quotients.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exactring::{LPolynomial, TruncatedLSeries};
use crate::motives::{flag_motive_infinite, gaussian_binomial, Ambient, FlagDimensions};
use crate::quotmotives::{lquot_motive, quot_infinity_motive};
use crate::report::{hook_for_case, Perturbation, VerifyReport};

/// `Z[x_1..x_g] / (f_1..f_s)` with `deg x_i` and `deg f_j` given, each
/// relation assumed regular, so the Hilbert series is
/// `prod (1 - z^{deg f_j}) / prod (1 - z^{deg x_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolynomialQuotientPresentation {
    generator_degrees: Vec<usize>,
    relation_degrees: Vec<usize>,
}

impl GradedPolynomialQuotientPresentation {
    pub fn new(generator_degrees: Vec<usize>, relation_degrees: Vec<usize>) -> Result<Self> {
        let bad = generator_degrees
            .iter()
            .chain(&relation_degrees)
            .find(|&&g| g == 0 || g % 2 == 1);
        if let Some(g) = bad {
            return Err(Error::InvalidArgument(format!(
                "degree {g} is not a positive even integer"
            )));
        }
        Ok(GradedPolynomialQuotientPresentation {
            generator_degrees,
            relation_degrees,
        })
    }

    /// `Z[c_1, ..., c_d] / (c_d^r)` with `deg c_i = 2i`.
    pub fn chern_quotient(d: usize, r: usize) -> Self {
        Self::new((1..=d).map(|i| 2 * i).collect(), vec![2 * d * r]).expect("even degrees")
    }

    /// Free algebra on `c_1^{(j)}..c_{m_j}^{(j)}`, `deg c_k^{(j)} = 2k`, for
    /// each gap `m_j` of a stable flag.
    pub fn flag_cohomology(f: &FlagDimensions) -> Self {
        let mut gaps = f.gaps();
        if let Ambient::Finite(_) = f.ambient() {
            gaps.pop();
        }
        let gens = gaps
            .into_iter()
            .flat_map(|m| (1..=m).map(|k| 2 * k))
            .collect();
        Self::new(gens, Vec::new()).expect("even degrees")
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.generator_degrees
    }

    pub fn relation_degrees(&self) -> &[usize] {
        &self.relation_degrees
    }
}

fn one_minus_z_pow(k: usize) -> LPolynomial {
    LPolynomial::one().with_coeff_added(k, -1)
}

/// Hilbert series of `p` modulo `z^order`.
pub fn hilbert_series(p: &GradedPolynomialQuotientPresentation, order: usize) -> TruncatedLSeries {
    let numerator: LPolynomial = p
        .relation_degrees
        .iter()
        .map(|&e| one_minus_z_pow(e))
        .product();
    p.generator_degrees
        .iter()
        .fold(numerator.truncate(order), |acc, &g| {
            let inv =
                TruncatedLSeries::geometric_inverse(&one_minus_z_pow(g), order).expect("unit");
            &acc * &inv
        })
}

/// `P(Gr(d, n), z)`.
pub fn poincare_grassmannian(d: usize, n: usize) -> LPolynomial {
    gaussian_binomial(d, n).substitute(2)
}

/// Both routes to `P(LQuot^d(O^r) on A^n, z)`: the sum of Grassmannian
/// Poincaré polynomials, and the dilation of the motive.
pub fn poincare_lquot_routes(d: u32, r: u32, n: u32) -> (LPolynomial, LPolynomial) {
    let (du, ru, nu) = (d as usize, r as usize, n as usize);
    let by_sum: LPolynomial = (1..=du.min(ru))
        .map(|i| {
            (&poincare_grassmannian(i, ru) * &poincare_grassmannian(du - i, i * nu))
                .shift(2 * (du - i) * (ru - i))
        })
        .sum();
    (by_sum, lquot_motive(d, r, n).substitute(2))
}

/// `P(LQuot^d(O^r) on A^n, z)`, with both computation routes asserted equal.
pub fn poincare_lquot(d: u32, r: u32, n: u32) -> Result<LPolynomial> {
    let (a, b) = poincare_lquot_routes(d, r, n);
    if a != b {
        return Err(Error::InternalMismatch(format!(
            "P(LQuot^{d}(O^{r}), A^{n})"
        )));
    }
    Ok(a)
}

/// Both routes of [`poincare_lquot_routes`] for all `1 <= d, r, n <= max`.
pub fn verify_lquot_routes(max: u32, hook: Option<Perturbation>) -> VerifyReport {
    let mut report = VerifyReport::new(
        "sum_i P(Gr(i,r)) P(Gr(d-i,in)) z^(2(d-i)(r-i)) = [LQuot^d(O^r) on A^n](z^2)",
        json!({ "max": max }),
    );
    let mut case = 0;
    for d in 1..=max {
        for r in 1..=max {
            for n in 1..=max {
                let (mut by_sum, dilated) = poincare_lquot_routes(d, r, n);
                if let Some(p) = hook_for_case(hook, case) {
                    by_sum = by_sum.with_coeff_added(p.coeff, 1);
                }
                case += 1;
                report.check(
                    by_sum == dilated,
                    || format!("(d={d}, r={r}, n={n})"),
                    || dilated.render_in("z"),
                    || by_sum.render_in("z"),
                );
            }
        }
    }
    report
}

/// `(prod_{k=1}^{d-1} 1/(1 - z^{2k})) * sum_{i<r} z^{2di}` modulo `z^order`,
/// checked against the dilation of the stable motive.
pub fn poincare_quot_infinity(d: u32, r: u32, order: usize) -> Result<TruncatedLSeries> {
    let du = d as usize;
    let sum = LPolynomial::geometric_sum(2 * du, r as usize);
    let direct = (1..du).fold(sum.truncate(order), |acc, k| {
        let inv =
            TruncatedLSeries::geometric_inverse(&one_minus_z_pow(2 * k), order).expect("unit");
        &acc * &inv
    });
    let dilated = quot_infinity_motive(d, r, order.div_ceil(2))
        .substitute(2)
        .reduce(order);
    if direct != dilated {
        return Err(Error::InternalMismatch(format!(
            "P(Quot^{d}(O^{r}) on A^oo)"
        )));
    }
    Ok(direct)
}

/// Stable flag Poincaré series as the Hilbert series of the free algebra on
/// the Chern classes, checked against the dilated stable flag motive.
pub fn poincare_flag_infinity(f: &FlagDimensions, order: usize) -> Result<TruncatedLSeries> {
    let algebra = hilbert_series(
        &GradedPolynomialQuotientPresentation::flag_cohomology(f),
        order,
    );
    let dilated = flag_motive_infinite(f, order.div_ceil(2))
        .substitute(2)
        .reduce(order);
    if algebra != dilated {
        return Err(Error::InternalMismatch(format!(
            "P(Fl({:?}, oo))",
            f.dims()
        )));
    }
    Ok(algebra)
}

pub const CHERN_QUOTIENT_NOTE: &str =
    "Poincaré-series equality only; the graded ring isomorphism itself is not verified";

/// Hilbert series of `Z[c_1..c_d]/(c_d^r)` against the stable Quot Poincaré
/// series, for `1 <= d <= d_max`, `1 <= r <= r_max`, modulo `z^order`.
pub fn verify_chern_quotient_poincare(
    d_max: u32,
    r_max: u32,
    order: usize,
    hook: Option<Perturbation>,
) -> VerifyReport {
    let mut report = VerifyReport::new(
        "HilbertSeries(Z[c_1..c_d]/(c_d^r)) = P(Quot^d(O^r) on A^oo)",
        json!({ "d_max": d_max, "r_max": r_max, "order": order }),
    )
    .with_note(CHERN_QUOTIENT_NOTE);
    let mut case = 0;
    for d in 1..=d_max {
        for r in 1..=r_max {
            let mut hs = hilbert_series(
                &GradedPolynomialQuotientPresentation::chern_quotient(d as usize, r as usize),
                order,
            );
            if let Some(p) = hook_for_case(hook, case) {
                hs = hs.with_coeff_added(p.coeff, 1);
            }
            case += 1;
            match poincare_quot_infinity(d, r, order) {
                Ok(stable) => report.check(
                    hs == stable,
                    || format!("(d={d}, r={r})"),
                    || stable.render_in("z"),
                    || hs.render_in("z"),
                ),
                Err(e) => report.check(
                    false,
                    || format!("(d={d}, r={r})"),
                    String::new,
                    || e.to_string(),
                ),
            }
        }
    }
    report
}

/// `2(n + r - d)`, or `None` when `n + r < d` and no degree is covered.
pub fn restriction_iso_range(d: u32, r: u32, n: u32) -> Option<usize> {
    (n + r).checked_sub(d).map(|k| 2 * k as usize)
}

/// Checks that `P(LQuot^d(O^r) on A^n)` and the stable series agree in all
/// degrees up to [`restriction_iso_range`].
pub fn verify_restriction_range(
    d: u32,
    r: u32,
    n: u32,
    hook: Option<Perturbation>,
) -> Result<VerifyReport> {
    let range = restriction_iso_range(d, r, n);
    let mut report = VerifyReport::new(
        "P(LQuot^d(O^r) on A^n) = P(Quot^d(O^r) on A^oo) in degrees <= 2(n+r-d)",
        json!({ "d": d, "r": r, "n": n, "range": range }),
    );
    let Some(range) = range else {
        return Ok(report);
    };
    let mut finite = poincare_lquot(d, r, n)?;
    if let Some(p) = hook {
        finite = finite.with_coeff_added(p.coeff, 1);
    }
    let stable = poincare_quot_infinity(d, r, range + 1)?;
    let mismatch = (0..=range).find(|&k| finite.coeff(k) != stable.coeff(k));
    report.check(
        mismatch.is_none(),
        || format!("(d={d}, r={r}, n={n}) degree {}", mismatch.unwrap_or(0)),
        || stable.render_in("z"),
        || finite.truncate(range + 1).render_in("z"),
    );
    Ok(report)
}

/// Like [`verify_restriction_range`], returning the range or the first
/// mismatching degree.
pub fn checked_restriction_range(d: u32, r: u32, n: u32) -> Result<Option<usize>> {
    let range = restriction_iso_range(d, r, n);
    if let Some(range) = range {
        let finite = poincare_lquot(d, r, n)?;
        let stable = poincare_quot_infinity(d, r, range + 1)?;
        if let Some(degree) = (0..=range).find(|&k| finite.coeff(k) != stable.coeff(k)) {
            return Err(Error::RangeViolation { degree });
        }
    }
    Ok(range)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> LPolynomial {
        LPolynomial::from_i64s(c)
    }

    #[test]
    fn lquot_poincare_examples() {
        assert_eq!(poincare_lquot(2, 1, 2).unwrap(), z(&[1, 0, 1]));
        assert_eq!(poincare_lquot(3, 2, 2).unwrap(), z(&[1, 0, 1, 0, 2, 0, 2]));
        for r in 1..=5 {
            assert_eq!(
                poincare_lquot(1, r, 3).unwrap(),
                LPolynomial::geometric_sum(2, r as usize)
            );
        }
    }

    #[test]
    fn lquot_routes_agree() {
        for d in 1..=6 {
            for r in 1..=6 {
                for n in 1..=6 {
                    let (a, b) = poincare_lquot_routes(d, r, n);
                    assert_eq!(a, b, "({d},{r},{n})");
                    assert!(a.is_nonnegative());
                }
            }
        }
    }

    #[test]
    fn route_sweep_and_negative_control() {
        assert!(verify_lquot_routes(6, None).passed());
        let bad = verify_lquot_routes(2, Perturbation::at(3));
        assert_eq!(bad.failures.len(), 1);
        assert_eq!(bad.failures[0].witness, "(d=1, r=1, n=1)");
    }

    #[test]
    fn stable_quot_series() {
        assert_eq!(
            poincare_quot_infinity(1, 3, 10).unwrap(),
            z(&[1, 0, 1, 0, 1]).truncate(10)
        );
        assert_eq!(
            poincare_quot_infinity(2, 2, 8).unwrap(),
            z(&[1, 0, 1, 0, 2, 0, 2]).truncate(8)
        );
        // r = 1: stable punctual Hilbert scheme
        let hilb = poincare_quot_infinity(3, 1, 12).unwrap();
        let expected = hilbert_series(
            &GradedPolynomialQuotientPresentation::new(vec![2, 4], vec![]).unwrap(),
            12,
        );
        assert_eq!(hilb, expected);
        // odd orders are fine too
        assert_eq!(poincare_quot_infinity(2, 2, 7).unwrap().order(), 7);
    }

    #[test]
    fn hilbert_series_examples() {
        let p = GradedPolynomialQuotientPresentation::new(vec![2], vec![4]).unwrap();
        assert_eq!(hilbert_series(&p, 8), z(&[1, 0, 1]).truncate(8));
        let p = GradedPolynomialQuotientPresentation::new(vec![2, 4], vec![4]).unwrap();
        let inv = TruncatedLSeries::geometric_inverse(&z(&[1, 0, -1]), 10).unwrap();
        assert_eq!(hilbert_series(&p, 10), inv);
        assert!(GradedPolynomialQuotientPresentation::new(vec![3], vec![]).is_err());
        assert!(GradedPolynomialQuotientPresentation::new(vec![2], vec![0]).is_err());
    }

    #[test]
    fn chern_quotient_sweep() {
        let r = verify_chern_quotient_poincare(2, 6, 30, None);
        assert!(r.passed());
        assert_eq!(r.note.as_deref(), Some(CHERN_QUOTIENT_NOTE));
        assert!(verify_chern_quotient_poincare(8, 8, 48, None).passed());
    }

    #[test]
    fn wrong_relation_degree_is_caught() {
        for (d, r) in [(1usize, 2usize), (2, 2), (3, 4)] {
            let wrong = GradedPolynomialQuotientPresentation::new(
                (1..=d).map(|i| 2 * i).collect(),
                vec![2 * d * r - 2],
            )
            .unwrap();
            assert_ne!(
                hilbert_series(&wrong, 40),
                poincare_quot_infinity(d as u32, r as u32, 40).unwrap()
            );
        }
        assert!(!verify_chern_quotient_poincare(3, 3, 20, Perturbation::at(2)).passed());
    }

    #[test]
    fn restriction_ranges() {
        assert_eq!(checked_restriction_range(2, 1, 2).unwrap(), Some(2));
        assert_eq!(checked_restriction_range(1, 1, 1).unwrap(), Some(2));
        assert_eq!(restriction_iso_range(5, 1, 1), None);
        let r = verify_restriction_range(2, 1, 2, None).unwrap();
        assert!(r.passed());
        let bad = verify_restriction_range(2, 1, 2, Perturbation::at(2)).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn stabilised_n_covers_the_whole_polynomial() {
        // large n: lquot agrees with the limit through degree 2(n+r-d)
        for (d, r) in [(2, 2), (3, 2), (3, 3)] {
            assert!(checked_restriction_range(d, r, 30).is_ok());
        }
    }

    #[test]
    fn flag_series() {
        let single = FlagDimensions::stable(vec![1]).unwrap();
        let inv = TruncatedLSeries::geometric_inverse(&z(&[1, 0, -1]), 12).unwrap();
        assert_eq!(poincare_flag_infinity(&single, 12).unwrap(), inv);
        let pair = FlagDimensions::stable(vec![1, 2]).unwrap();
        assert_eq!(poincare_flag_infinity(&pair, 12).unwrap(), &inv * &inv);
        let two = FlagDimensions::stable(vec![2]).unwrap();
        let inv4 = TruncatedLSeries::geometric_inverse(&z(&[1, 0, 0, 0, -1]), 12).unwrap();
        assert_eq!(poincare_flag_infinity(&two, 12).unwrap(), &inv * &inv4);
    }

    #[test]
    fn grassmannian_poincare_is_palindromic() {
        for n in 0..=10 {
            for d in 0..=n {
                let p = poincare_grassmannian(d, n);
                let mut rev = p.coeffs().to_vec();
                rev.reverse();
                assert_eq!(p.coeffs(), &rev[..], "Gr({d},{n})");
            }
        }
    }
}
