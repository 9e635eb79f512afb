//! The full verification battery behind `verify all`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomseries::{
    verify_chern_quotient_poincare, verify_lquot_routes, verify_restriction_range,
};
use crate::error::Result;
use crate::fforacle::{
    ambient_dimension, count_flag_points, count_punctual_nested, count_punctual_quot,
    count_stratum, verify_global_congruence, verify_grassmannian_counts, verify_stratum_motives,
    PrimeField,
};
use crate::motives::{flag_motive, grassmannian_infinite, verify_lbinomial, FlagDimensions};
use crate::nestedmotives::{
    nested_generating_function, verify_nested_congruence, verify_nested_gf,
};
use crate::quotmotives::{
    lquot_motive, verify_lquot_stabilisation, verify_prelim, verify_stable_limit_sweep,
    HilbertSamuelFunction,
};
use crate::report::{hook_for_case, CheckRecord, Perturbation, RunReport, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }

    /// Largest ambient dimension the oracle checks enumerate in.
    pub fn oracle_dimension_cap(self) -> usize {
        match self {
            Profile::Quick => 6,
            Profile::Full => crate::fforacle::MAX_AMBIENT_DIMENSION,
        }
    }
}

/// `(d, r, n, q)` tuples for the stratum and congruence checks.
pub const STRATUM_TUPLES: [(u32, u32, u32, u32); 6] = [
    (2, 1, 2, 2),
    (3, 1, 2, 2),
    (2, 2, 2, 2),
    (3, 1, 2, 3),
    (2, 1, 3, 2),
    (3, 2, 2, 2),
];

fn field(q: u32) -> PrimeField {
    PrimeField::new(q).expect("battery uses supported fields")
}

fn record(name: &str, report: Result<VerifyReport>) -> CheckRecord {
    match report {
        Ok(r) => CheckRecord::from_report(name, &r),
        Err(e) => CheckRecord::from_error(name, &e),
    }
}

/// Exact point counts the motive formulas must reproduce: the flag
/// `Fl(1,2;3)` and the punctual Hilbert scheme of two points in the plane.
pub fn verify_oracle_examples(hook: Option<Perturbation>) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "#X(F_q) = [X](q) for flag and linear-locus examples",
        json!({}),
    );
    let f2 = field(2);
    let mut flag = flag_motive(&FlagDimensions::finite(vec![1, 2], 3)?);
    if let Some(p) = hook_for_case(hook, 0) {
        flag = flag.with_coeff_added(p.coeff, 1);
    }
    let flag_value = flag.eval_u64(2);
    let flag_count = count_flag_points(&[1, 2], 3, f2)?;
    report.check(
        flag_value == BigInt::from(21) && flag_count == 21,
        || "Fl(1,2;3) over F_2".into(),
        || "21".into(),
        || format!("motive {flag_value}, count {flag_count}"),
    );
    let lquot = lquot_motive(2, 1, 2).eval_u64(2);
    let hilb = count_punctual_quot(2, 1, 2, f2)?;
    report.check(
        lquot == BigInt::from(3) && hilb == 3,
        || "Hilb^2(A^2)_0 over F_2".into(),
        || "3".into(),
        || format!("motive {lquot}, count {hilb}"),
    );
    Ok(report)
}

/// `count_stratum((1,1,1), 1, 2, 2) = 6`: divisible by `q` but not `q^2`.
pub fn verify_sharpness(hook: Option<Perturbation>) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "#H_(1,1,1)(F_2) = 6, divisible by 2, not by 4",
        json!({ "r": 1, "n": 2, "q": 2 }),
    );
    let h = HilbertSamuelFunction::new(vec![1, 1, 1])?;
    let mut count = count_stratum(&h, 1, 2, field(2))?;
    if let Some(p) = hook {
        count += 2u64.pow(p.coeff as u32);
    }
    report.check(
        count == 6 && count % 2 == 0 && count % 4 != 0,
        || "h=(1,1,1)".into(),
        || "6".into(),
        || count.to_string(),
    );
    Ok(report)
}

/// Coefficient of `t^d` in the single-variable nested series against
/// `[Gr(d, oo)]`, for `d <= d_max`.
pub fn verify_single_nested_coefficients(
    d_max: u32,
    order: usize,
    hook: Option<Perturbation>,
) -> VerifyReport {
    let mut report = VerifyReport::new(
        "[t^d] prod_i 1/(1 - L^i t) = [Gr(d,oo)]",
        json!({ "d_max": d_max, "order": order }),
    );
    let gf = nested_generating_function(1, d_max + 1, order);
    for d in 0..=d_max {
        let mut coeff = gf.coefficient(&[d]);
        if let Some(p) = hook_for_case(hook, d as usize) {
            coeff = coeff.with_coeff_added(p.coeff, 1);
        }
        let expected = grassmannian_infinite(d as usize, order);
        report.check(
            coeff == expected,
            || format!("t^{d}"),
            || expected.to_string(),
            || coeff.to_string(),
        );
    }
    report
}

/// The nested counts `(1) -> 3` matching `#P^1(F_2)` exactly, and the chain
/// count for `(1,2)` in the plane congruent to `21 = #Fl(1,2;3)(F_2)` mod 2.
pub fn verify_nested_examples(hook: Option<Perturbation>) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "#Hilb^2(A^2)_0(F_2) = #P^1(F_2); #Hilb^(2,3)(A^2)_0(F_2) = 21 mod 2",
        json!({ "n": 2, "q": 2 }),
    );
    let f2 = field(2);
    let single = count_punctual_nested(&[1], 2, f2)?;
    let mut p1 = flag_motive(&FlagDimensions::finite(vec![1], 2)?);
    if let Some(p) = hook {
        p1 = p1.with_coeff_added(p.coeff, 1);
    }
    let p1 = p1.eval_u64(2);
    report.check(
        BigInt::from(single) == p1 && single == 3,
        || "dims=(1)".into(),
        || p1.to_string(),
        || single.to_string(),
    );
    let chains = count_punctual_nested(&[1, 2], 2, f2)?;
    let flag = flag_motive(&FlagDimensions::finite(vec![1, 2], 3)?).eval_u64(2);
    report.check(
        (BigInt::from(chains) - &flag) % 2 == BigInt::from(0),
        || "dims=(1,2)".into(),
        || format!("{flag} mod 2"),
        || format!("{chains}"),
    );
    Ok(report)
}

/// Runs every check. `hook` is forwarded to each verifier.
pub fn run(profile: Profile, hook: Option<Perturbation>) -> RunReport {
    let mut params = BTreeMap::new();
    params.insert("profile".to_string(), Value::from(profile.name()));
    let mut run = RunReport::new("verify all", params);

    run.push(CheckRecord::from_report(
        "lbinomial",
        &verify_lbinomial(10, 10, hook),
    ));
    run.push(CheckRecord::from_report(
        "prelim",
        &verify_prelim(10, 10, hook),
    ));
    run.push(CheckRecord::from_report(
        "thm-a",
        &verify_stable_limit_sweep(6, 6, 16, hook),
    ));
    let extra = match profile {
        Profile::Quick => 2,
        Profile::Full => 8,
    };
    run.push(CheckRecord::from_report(
        "stabilisation",
        &verify_lquot_stabilisation(5, 5, 12, extra, hook),
    ));

    for q in [2, 3] {
        run.push(record(
            &format!("oracle-gr q={q}"),
            verify_grassmannian_counts(5, field(q), hook),
        ));
    }
    run.push(record("oracle-examples", verify_oracle_examples(hook)));

    let cap = profile.oracle_dimension_cap();
    let mut skipped = Vec::new();
    for (d, r, n, q) in STRATUM_TUPLES {
        let tag = format!("(d={d}, r={r}, n={n}, q={q})");
        if ambient_dimension(n as usize, r as usize, d as usize) > cap {
            skipped.push(Value::from(tag));
            continue;
        }
        run.push(record(
            &format!("strata {tag}"),
            verify_stratum_motives(d, r, n, field(q), hook),
        ));
        run.push(record(
            &format!("congruence {tag}"),
            verify_global_congruence(d, r, n, field(q), hook),
        ));
    }
    run.push(record("sharpness", verify_sharpness(hook)));

    run.push(CheckRecord::from_report(
        "question-1-1",
        &verify_chern_quotient_poincare(8, 8, 49, hook),
    ));
    run.push(CheckRecord::from_report(
        "lquot-routes",
        &verify_lquot_routes(6, hook),
    ));
    for (d, r, n) in [(2, 1, 2), (1, 1, 1), (3, 2, 2), (4, 3, 5)] {
        run.push(record(
            &format!("restriction-range (d={d}, r={r}, n={n})"),
            verify_restriction_range(d, r, n, hook),
        ));
    }

    for l in 1..=3 {
        run.push(CheckRecord::from_report(
            format!("nested-gf l={l}"),
            &verify_nested_gf(l, 5, 10, hook),
        ));
    }
    run.push(CheckRecord::from_report(
        "nested-gf t^d",
        &verify_single_nested_coefficients(4, 10, hook),
    ));
    for dims in [vec![1], vec![2], vec![1, 2]] {
        let name = format!("nested-congruence dims={dims:?}");
        let flag = FlagDimensions::finite(dims, 2);
        run.push(record(
            &name,
            flag.and_then(|f| verify_nested_congruence(&f, 2, hook)),
        ));
    }
    run.push(record("nested-examples", verify_nested_examples(hook)));

    if !skipped.is_empty() {
        run.params
            .insert("skipped".to_string(), Value::Array(skipped));
    }
    run
}
