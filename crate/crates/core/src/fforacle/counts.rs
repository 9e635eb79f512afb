use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::motives::gaussian_binomial;
use crate::quotmotives::{
    lquot_motive, nonlinear_divisibility_exponent, stratum_motive, HilbertSamuelFunction,
};
use crate::report::{hook_for_case, Perturbation, VerifyReport};

use super::ambient::build_ambient;
use super::enumerate::{enumerate_submodules, hs_function_of, stable_dual_levels};
use super::field::PrimeField;
use super::linalg::{
    combinations, for_each_subspace, free_entries, subspace_count_estimate, Subspace,
};

/// Cap on subspaces counted by echelon pattern.
pub const GRASSMANNIAN_LIMIT: f64 = 1e8;
/// Cap on subspaces materialised for flag counting.
pub const FLAG_LIMIT: f64 = 1e6;

/// Number of `d`-dimensional subspaces of `F_q^n`: the sum over reduced
/// echelon pivot patterns of `q^(free entries)`.
pub fn count_grassmannian_points(d: usize, n: usize, field: PrimeField) -> Result<u64> {
    let estimate = subspace_count_estimate(d, n, field.q());
    if estimate > GRASSMANNIAN_LIMIT {
        return Err(Error::infeasible(
            format!("Gr({d},{n})(F_{})", field.q()),
            format!("{estimate:.3e}"),
            GRASSMANNIAN_LIMIT,
        ));
    }
    Ok(combinations(n, d)
        .iter()
        .map(|p| u64::from(field.q()).pow(free_entries(p, n) as u32))
        .sum())
}

/// `#Gr(d, n)(F_q) = [Gr(d, n)](q)` for all `0 <= d <= n <= n_max`.
pub fn verify_grassmannian_counts(
    n_max: usize,
    field: PrimeField,
    hook: Option<Perturbation>,
) -> Result<VerifyReport> {
    let q = field.q();
    let mut report = VerifyReport::new(
        "#Gr(d,n)(F_q) = [Gr(d,n)](q)",
        json!({ "n_max": n_max, "q": q }),
    );
    let mut case = 0;
    for n in 0..=n_max {
        for d in 0..=n {
            let mut motive = gaussian_binomial(d, n);
            if let Some(p) = hook_for_case(hook, case) {
                motive = motive.with_coeff_added(p.coeff, 1);
            }
            case += 1;
            let expected = motive.eval_u64(u64::from(q));
            let count = count_grassmannian_points(d, n, field)?;
            report.check(
                expected == BigInt::from(count),
                || format!("Gr({d},{n}) over F_{q}"),
                || expected.to_string(),
                || count.to_string(),
            );
        }
    }
    Ok(report)
}

fn check_dims(dims: &[usize], n: usize) -> Result<()> {
    if dims.is_empty() || dims.windows(2).any(|w| w[0] > w[1]) || dims[dims.len() - 1] > n {
        return Err(Error::InvalidFlag(format!("{dims:?} in dimension {n}")));
    }
    Ok(())
}

/// Number of chains `S_1 ⊆ S_2 ⊆ ...` with `S_i` drawn from `levels[i]`.
fn count_chains(levels: &[&[Subspace]], field: PrimeField) -> u64 {
    let mut weights = vec![1u64; levels[0].len()];
    for pair in levels.windows(2) {
        let (below, above) = (pair[0], pair[1]);
        weights = above
            .iter()
            .map(|big| {
                below
                    .iter()
                    .zip(&weights)
                    .filter(|(small, _)| big.contains_subspace(small, field))
                    .map(|(_, w)| w)
                    .sum()
            })
            .collect();
    }
    weights.iter().sum()
}

/// Number of flags `V_1 ⊆ ... ⊆ V_l ⊆ F_q^n` with `dim V_i = dims[i]`.
pub fn count_flag_points(dims: &[usize], n: usize, field: PrimeField) -> Result<u64> {
    check_dims(dims, n)?;
    let mut distinct = dims.to_vec();
    distinct.dedup();
    let estimate: f64 = distinct
        .iter()
        .map(|&d| subspace_count_estimate(d, n, field.q()))
        .sum();
    if estimate > FLAG_LIMIT {
        return Err(Error::infeasible(
            format!("Fl({dims:?},{n})(F_{})", field.q()),
            format!("{estimate:.3e}"),
            FLAG_LIMIT,
        ));
    }
    let mut by_dim: BTreeMap<usize, Vec<Subspace>> = BTreeMap::new();
    for &d in &distinct {
        let mut all = Vec::new();
        for_each_subspace(d, n, field, |s| all.push(s));
        by_dim.insert(d, all);
    }
    let levels: Vec<&[Subspace]> = dims.iter().map(|d| by_dim[d].as_slice()).collect();
    Ok(count_chains(&levels, field))
}

/// `#Quot^d(O^r on A^n)_0(F_q)`: codimension-`d` submodules of `(R/m^d)^r`.
pub fn count_punctual_quot(d: u32, r: u32, n: u32, field: PrimeField) -> Result<u64> {
    let m = build_ambient(n as usize, r as usize, d as usize, field)?;
    Ok(enumerate_submodules(&m, d as usize)?.len() as u64)
}

/// Points of the Hilbert–Samuel stratum `H_h`, enumerated in `(R/m^k)^r`
/// with `k = l(h) + 1`.
pub fn count_stratum(h: &HilbertSamuelFunction, r: u32, n: u32, field: PrimeField) -> Result<u64> {
    let k = if h.values().is_empty() {
        0
    } else {
        h.length() + 1
    };
    let m = build_ambient(n as usize, r as usize, k, field)?;
    let witnesses = enumerate_submodules(&m, h.size() as usize)?;
    if h.values().is_empty() {
        return Ok(witnesses.len() as u64);
    }
    Ok(witnesses
        .iter()
        .filter(|w| hs_function_of(w, &m) == *h)
        .count() as u64)
}

/// `#Hilb^{d_1+1, ..., d_l+1}(A^n)_0(F_q)`: chains of ideals `I_l ⊆ ... ⊆ I_1`
/// of colengths `d_i + 1`, counted in `R/m^{d_l + 1}`.
pub fn count_punctual_nested(dims: &[usize], n: usize, field: PrimeField) -> Result<u64> {
    if dims.is_empty() || dims.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidFlag(format!("{dims:?}")));
    }
    let top = dims[dims.len() - 1] + 1;
    let m = build_ambient(n, 1, top, field)?;
    // annihilators grow along the chain: W_1 ⊆ ... ⊆ W_l with dim W_i = d_i + 1
    let levels = stable_dual_levels(&m, top)?;
    let chain: Vec<&[Subspace]> = dims.iter().map(|&d| levels[d + 1].as_slice()).collect();
    Ok(count_chains(&chain, field))
}

fn q_power(q: u32, e: u64) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

/// For every Hilbert–Samuel function `h` of size `d`: linear strata are
/// counted exactly by their motive, nonlinear strata are divisible by
/// `q^{(r - h(0) + h(0) n - h(1)) h(t)}`, and the strata partition
/// `Quot^d(O^r)_0`.
pub fn verify_stratum_motives(
    d: u32,
    r: u32,
    n: u32,
    field: PrimeField,
    hook: Option<Perturbation>,
) -> Result<VerifyReport> {
    let q = field.q();
    let mut report = VerifyReport::new(
        "#H_h(F_q) = [H_h](q) for linear h; q^e | #H_h(F_q) otherwise; sum_h #H_h = #Quot_0",
        json!({ "d": d, "r": r, "n": n, "q": q }),
    );
    let mut hook = hook;
    let mut sum = 0u64;
    let mut strata = BTreeMap::new();
    for h in HilbertSamuelFunction::all_of_size(d, r, n) {
        let count = count_stratum(&h, r, n, field)?;
        sum += count;
        strata.insert(h.to_string(), count);
        if h.is_linear() {
            let mut motive = stratum_motive(&h, r, n)?;
            if let Some(p) = hook.take() {
                motive = motive.with_coeff_added(p.coeff, 1);
            }
            let expected = motive.eval_u64(u64::from(q));
            report.check(
                expected == BigInt::from(count),
                || format!("h={h}"),
                || expected.to_string(),
                || count.to_string(),
            );
        } else {
            let e = nonlinear_divisibility_exponent(&h, r, n)?;
            let modulus = q_power(q, e);
            report.check(
                BigInt::from(count).mod_floor(&modulus).is_zero(),
                || format!("h={h}"),
                || format!("0 mod {modulus}"),
                || format!("{count}"),
            );
        }
    }
    let total = count_punctual_quot(d, r, n, field)?;
    let mut expected_total = BigInt::from(total);
    if let Some(p) = hook.take() {
        // no linear stratum to perturb
        expected_total += q_power(q, p.coeff as u64);
    }
    report.check(
        expected_total == BigInt::from(sum),
        || format!("sum over h (d={d}, r={r}, n={n}, q={q})"),
        || expected_total.to_string(),
        || sum.to_string(),
    );
    if let serde_json::Value::Object(range) = &mut report.range {
        range.insert("strata".into(), json!(strata));
        range.insert("total".into(), json!(total));
    }
    Ok(report)
}

/// `#Quot^d_0(F_q) = [LQuot^d](q) mod q^{n+r-d+1}`; trivial when the
/// exponent is not positive.
pub fn verify_global_congruence(
    d: u32,
    r: u32,
    n: u32,
    field: PrimeField,
    hook: Option<Perturbation>,
) -> Result<VerifyReport> {
    let q = field.q();
    let exponent = i64::from(n) + i64::from(r) - i64::from(d) + 1;
    let modulus = q_power(q, exponent.max(0) as u64);
    let count = count_punctual_quot(d, r, n, field)?;
    let mut motive = lquot_motive(d, r, n);
    if let Some(p) = hook {
        motive = motive.with_coeff_added(p.coeff, 1);
    }
    let linear = motive.eval_u64(u64::from(q));
    let mut report = VerifyReport::new(
        "#Quot^d_0(F_q) = [LQuot^d](q) mod q^(n+r-d+1)",
        json!({ "d": d, "r": r, "n": n, "q": q, "exponent": exponent,
                "count": count, "linear_count": linear.to_string() }),
    );
    let diff = BigInt::from(count) - &linear;
    let ok = diff.mod_floor(&modulus).is_zero();
    report.check(
        ok,
        || format!("(d={d}, r={r}, n={n}, q={q})"),
        || format!("{} mod {modulus}", linear.mod_floor(&modulus)),
        || format!("{} mod {modulus}", BigInt::from(count).mod_floor(&modulus)),
    );
    Ok(report)
}
