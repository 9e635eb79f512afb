//! Nested punctual Hilbert schemes: congruence with flag varieties and the
//! multivariate generating function of the stable motives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactring::{LPolynomial, MultiTruncatedSeries, TruncatedLSeries};
use crate::fforacle::{count_punctual_nested, PrimeField};
use crate::motives::{flag_motive, flag_motive_infinite, Ambient, FlagDimensions};
use crate::report::{Perturbation, VerifyReport};

/// `n - d_l + 1`: the power of `L` modulo which the nested punctual Hilbert
/// scheme and the flag variety agree.
pub fn nested_congruence_modulus(f: &FlagDimensions) -> Result<usize> {
    match f.ambient() {
        Ambient::Finite(n) => Ok(n - f.top() + 1),
        Ambient::Stable => Err(Error::InvalidFlag(
            "congruence modulus needs a finite n".into(),
        )),
    }
}

/// `prod_{j=0}^{l-1} prod_{i>=0} 1 / (1 - L^i t_{j+1} ... t_l)`, truncated at
/// total `t`-degree `degree_bound` and `L`-order `order`. Factors with
/// `i >= order` are `1` at this precision and are skipped.
pub fn nested_generating_function(
    num_vars: usize,
    degree_bound: u32,
    order: usize,
) -> MultiTruncatedSeries {
    assert!(num_vars >= 1, "need at least one variable");
    let mut acc = MultiTruncatedSeries::one(num_vars, degree_bound, order);
    for j in 0..num_vars {
        let step: Vec<u32> = (0..num_vars).map(|v| u32::from(v >= j)).collect();
        let step_degree = (num_vars - j) as u32;
        for i in 0..order {
            // 1 / (1 - L^i q_j) = sum_m L^{im} q_j^m
            let mut factor = MultiTruncatedSeries::one(num_vars, degree_bound, order);
            let mut m = 1u32;
            while m * step_degree < degree_bound && (i == 0 || i * (m as usize) < order) {
                let exponent: Vec<u32> = step.iter().map(|s| s * m).collect();
                let coeff = LPolynomial::l_power(i * m as usize).truncate(order);
                let term = MultiTruncatedSeries::monomial(num_vars, degree_bound, exponent, coeff)
                    .expect("exponent length matches");
                factor = factor.add(&term).expect("same variables");
                m += 1;
            }
            acc = acc.mul(&factor).expect("same variables");
        }
    }
    acc
}

/// Weakly increasing tuples `0 <= d_1 <= ... <= d_l` with `sum d_i < bound`.
pub fn weakly_increasing_tuples(num_vars: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, min: u32, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        // the remaining `left` entries are all >= v
        let mut v = min;
        while v * left as u32 <= budget {
            prefix.push(v);
            rec(prefix, left - 1, v, budget - v, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    rec(&mut Vec::new(), num_vars, 0, bound - 1, &mut out);
    out
}

/// Compares [`nested_generating_function`] coefficientwise with the direct
/// sum of stable flag motives `sum [Fl(d_1..d_l, oo)] t^d`.
pub fn verify_nested_gf(
    num_vars: usize,
    degree_bound: u32,
    order: usize,
    hook: Option<Perturbation>,
) -> VerifyReport {
    let mut report = VerifyReport::new(
        "sum [Fl(d_1..d_l,oo)] t_1^d_1..t_l^d_l = prod_j prod_i 1/(1 - L^i t_(j+1)..t_l)",
        json!({ "l": num_vars, "tdeg": degree_bound, "order": order }),
    );
    let mut gf = nested_generating_function(num_vars, degree_bound, order);
    if let Some(p) = hook {
        gf = gf.with_coeff_added(&vec![0; num_vars], p.coeff, 1);
    }
    let tuples = weakly_increasing_tuples(num_vars, degree_bound);
    for t in &tuples {
        let dims: Vec<usize> = t.iter().map(|&x| x as usize).collect();
        let flag = FlagDimensions::stable(dims).expect("weakly increasing");
        let expected = flag_motive_infinite(&flag, order);
        let actual = gf.coefficient(t);
        report.check(
            expected == actual,
            || format!("t^{t:?}"),
            || expected.to_string(),
            || actual.to_string(),
        );
    }
    // nothing outside the flag exponents
    for (e, c) in gf.terms() {
        if e.windows(2).any(|w| w[0] > w[1]) {
            report.check(
                false,
                || format!("t^{e:?}"),
                || TruncatedLSeries::zero(order).to_string(),
                || c.to_string(),
            );
        }
    }
    report
}

/// `#Hilb^{d_1+1..d_l+1}(A^n)_0(F_q) = #Fl(d_1..d_l, n)(F_q) mod q^{n-d_l+1}`,
/// counting the left side with the finite-field oracle.
pub fn verify_nested_congruence(
    f: &FlagDimensions,
    q: u32,
    hook: Option<Perturbation>,
) -> Result<VerifyReport> {
    let n = match f.ambient() {
        Ambient::Finite(n) => n,
        Ambient::Stable => return Err(Error::InvalidFlag("congruence needs a finite n".into())),
    };
    let field = PrimeField::new(q)?;
    let modulus_exp = nested_congruence_modulus(f)?;
    let mut motive = flag_motive(f);
    if let Some(p) = hook {
        motive = motive.with_coeff_added(p.coeff, 1);
    }
    let count = count_punctual_nested(f.dims(), n, field)?;
    let flag_count = motive.eval_u64(u64::from(q));
    let modulus = BigInt::from(q).pow(modulus_exp as u32);
    let diff = BigInt::from(count) - &flag_count;
    let mut report = VerifyReport::new(
        "#Hilb^(d_1+1..d_l+1)(A^n)_0 = #Fl(d_1..d_l,n) mod q^(n-d_l+1)",
        json!({ "dims": f.dims(), "n": n, "q": q, "modulus": modulus.to_string(),
                "nested_count": count, "flag_count": flag_count.to_string() }),
    );
    report.check(
        diff.mod_floor(&modulus).is_zero(),
        || format!("(dims={:?}, n={n}, q={q})", f.dims()),
        || format!("{} mod {modulus}", flag_count.mod_floor(&modulus)),
        || format!("{} mod {modulus}", BigInt::from(count).mod_floor(&modulus)),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motives::grassmannian_infinite;

    #[test]
    fn modulus() {
        let m = |dims: Vec<usize>, n| {
            nested_congruence_modulus(&FlagDimensions::finite(dims, n).unwrap()).unwrap()
        };
        assert_eq!(m(vec![1], 2), 2);
        assert_eq!(m(vec![2], 2), 1);
        for d in 0..6 {
            assert_eq!(m(vec![d], d), 1);
        }
    }

    #[test]
    fn single_variable_series() {
        let gf = nested_generating_function(1, 2, 4);
        assert_eq!(gf.coefficient(&[0]), TruncatedLSeries::one(4));
        assert_eq!(
            gf.coefficient(&[1]),
            TruncatedLSeries::from_i64s(&[1, 1, 1, 1], 4)
        );
        assert_eq!(gf.len(), 2);
        let gf = nested_generating_function(1, 7, 10);
        for d in 0..7 {
            assert_eq!(gf.coefficient(&[d]), grassmannian_infinite(d as usize, 10));
        }
    }

    #[test]
    fn two_variable_coefficients() {
        let gf = nested_generating_function(2, 3, 6);
        let one_one = FlagDimensions::stable(vec![1, 1]).unwrap();
        assert_eq!(gf.coefficient(&[1, 1]), flag_motive_infinite(&one_one, 6));
        assert_eq!(gf.coefficient(&[0, 1]), grassmannian_infinite(1, 6));
        assert!(gf.coefficient(&[1, 0]).is_zero());
    }

    #[test]
    fn tuples() {
        assert_eq!(
            weakly_increasing_tuples(2, 3),
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1]]
        );
        assert_eq!(weakly_increasing_tuples(1, 3).len(), 3);
    }

    #[test]
    fn generating_function_identity() {
        assert!(verify_nested_gf(1, 6, 12, None).passed());
        assert!(verify_nested_gf(2, 6, 10, None).passed());
        let r = verify_nested_gf(3, 5, 10, None);
        assert!(r.passed(), "{:?}", r.failures);
        let bad = verify_nested_gf(2, 4, 6, Perturbation::at(1));
        assert_eq!(bad.failures.len(), 1);
        assert_eq!(bad.failures[0].witness, "t^[0, 0]");
    }

    #[test]
    fn refinement_is_monotone() {
        let small = nested_generating_function(2, 4, 6);
        let big = nested_generating_function(2, 7, 11);
        assert_eq!(big.reduce(4, 6), small);
    }
}
