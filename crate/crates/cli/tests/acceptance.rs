//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.
//! Runs without the libtest harness so the lines print in order.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::Value;

use quotstab::battery::{self, verify_single_nested_coefficients, Profile, STRATUM_TUPLES};
use quotstab::cohomseries::{verify_chern_quotient_poincare, verify_lquot_routes};
use quotstab::fforacle::{
    count_flag_points, count_grassmannian_points, count_punctual_nested, count_punctual_quot,
    count_stratum, verify_global_congruence, verify_stratum_motives,
};
use quotstab::motives::{flag_motive, gaussian_binomial};
use quotstab::nestedmotives::{verify_nested_congruence, verify_nested_gf};
use quotstab::quotmotives::{
    lquot_motive, verify_lquot_stabilisation, verify_prelim, verify_stable_limit_sweep,
};
use quotstab::{FlagDimensions, HilbertSamuelFunction, PrimeField, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn f(q: u32) -> PrimeField {
    PrimeField::new(q).expect("supported field")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prelim_identity() -> Outcome {
    let start = Instant::now();
    let report = verify_prelim(10, 10, None);
    let elapsed = start.elapsed();
    ensure(report.passed(), || format!("{:?}", report.failures.first()))?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} comparisons over 1 <= r, d <= 10 in {} ms",
        report.checked,
        elapsed.as_millis()
    ))
}

fn stable_limit() -> Outcome {
    let report = verify_stable_limit_sweep(6, 6, 16, None);
    ensure(report.passed(), || format!("{:?}", report.failures.first()))?;
    Ok(format!("{} pairs (d, r) <= 6 mod L^16", report.checked))
}

fn stabilisation_rate() -> Outcome {
    let report = verify_lquot_stabilisation(5, 5, 12, 8, None);
    ensure(report.passed(), || format!("{:?}", report.failures.first()))?;
    Ok(format!(
        "{} triples, n in N+d..=N+d+8, N = 12",
        report.checked
    ))
}

fn oracle_vs_motives() -> Outcome {
    let mut checked = 0;
    for q in [2u32, 3] {
        for n in 0..=5 {
            for d in 0..=n {
                let count = count_grassmannian_points(d, n, f(q)).map_err(|e| e.to_string())?;
                let motive = gaussian_binomial(d, n).eval_u64(u64::from(q));
                ensure(motive == BigInt::from(count), || {
                    format!("Gr({d},{n}) over F_{q}: {motive} vs {count}")
                })?;
                checked += 1;
            }
        }
    }
    let flag =
        flag_motive(&FlagDimensions::finite(vec![1, 2], 3).map_err(|e| e.to_string())?).eval_u64(2);
    let flag_count = count_flag_points(&[1, 2], 3, f(2)).map_err(|e| e.to_string())?;
    ensure(flag == BigInt::from(21) && flag_count == 21, || {
        format!("Fl(1,2;3): {flag}, {flag_count}")
    })?;
    let lquot = lquot_motive(2, 1, 2).eval_u64(2);
    let hilb = count_punctual_quot(2, 1, 2, f(2)).map_err(|e| e.to_string())?;
    ensure(lquot == BigInt::from(3) && hilb == 3, || {
        format!("LQuot(2,1,2): {lquot}, {hilb}")
    })?;
    let strata = verify_stratum_motives(3, 1, 2, f(2), None).map_err(|e| e.to_string())?;
    ensure(strata.passed(), || format!("{:?}", strata.failures))?;
    Ok(format!(
        "{checked} Grassmannians, Fl(1,2;3) = 21, LQuot(2,1,2)(2) = 3, strata (3,1,2,2)"
    ))
}

fn stratum_battery() -> Outcome {
    let start = Instant::now();
    for (d, r, n, q) in STRATUM_TUPLES {
        let report = verify_stratum_motives(d, r, n, f(q), None).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("({d},{r},{n},{q}): {:?}", report.failures)
        })?;
    }
    let h = HilbertSamuelFunction::new(vec![1, 1, 1]).map_err(|e| e.to_string())?;
    let sharp = count_stratum(&h, 1, 2, f(2)).map_err(|e| e.to_string())?;
    ensure(sharp == 6 && sharp % 2 == 0 && sharp % 4 != 0, || {
        format!("#H_(1,1,1) = {sharp}")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} tuples, #H_(1,1,1)(F_2) = 6, {} ms",
        STRATUM_TUPLES.len(),
        elapsed.as_millis()
    ))
}

fn global_congruence() -> Outcome {
    for (d, r, n, q) in STRATUM_TUPLES {
        let report = verify_global_congruence(d, r, n, f(q), None).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("({d},{r},{n},{q}): {:?}", report.failures)
        })?;
    }
    Ok(format!("{} tuples", STRATUM_TUPLES.len()))
}

fn chern_quotient_poincare() -> Outcome {
    let report = verify_chern_quotient_poincare(8, 8, 49, None);
    ensure(report.passed(), || format!("{:?}", report.failures.first()))?;
    Ok(format!("{} pairs (d, r) <= 8 through z^48", report.checked))
}

fn lquot_routes() -> Outcome {
    let report = verify_lquot_routes(6, None);
    ensure(report.passed(), || format!("{:?}", report.failures.first()))?;
    Ok(format!("{} triples d, r, n <= 6", report.checked))
}

fn nested_series() -> Outcome {
    let mut checked = 0;
    for l in 1..=3 {
        let report = verify_nested_gf(l, 5, 10, None);
        ensure(report.passed(), || {
            format!("l={l}: {:?}", report.failures.first())
        })?;
        checked += report.checked;
    }
    let single = verify_single_nested_coefficients(4, 10, None);
    ensure(single.passed(), || format!("{:?}", single.failures.first()))?;
    Ok(format!(
        "{checked} coefficients for l = 1, 2, 3; t^d = [Gr(d,oo)] for d <= 4"
    ))
}

fn nested_congruence() -> Outcome {
    let e = |e: quotstab::Error| e.to_string();
    let one = count_punctual_nested(&[1], 2, f(2)).map_err(e)?;
    let p1 = flag_motive(&FlagDimensions::finite(vec![1], 2).map_err(e)?).eval_u64(2);
    ensure(one == 3 && p1 == BigInt::from(3), || {
        format!("dims=(1): {one} vs {p1}")
    })?;
    let two = count_punctual_nested(&[2], 2, f(2)).map_err(e)?;
    ensure(two == 7 && two % 2 == 1, || format!("dims=(2): {two}"))?;
    let chains = count_punctual_nested(&[1, 2], 2, f(2)).map_err(e)?;
    ensure((chains as i64 - 21).rem_euclid(2) == 0, || {
        format!("dims=(1,2): {chains}")
    })?;
    for dims in [vec![1], vec![2], vec![1, 2]] {
        let flag = FlagDimensions::finite(dims.clone(), 2).map_err(e)?;
        let report = verify_nested_congruence(&flag, 2, None).map_err(e)?;
        ensure(report.passed(), || {
            format!("{dims:?}: {:?}", report.failures)
        })?;
    }
    Ok(format!(
        "(1) -> {one}, (2) -> {two}, (1,2) -> {chains} = 21 mod 2"
    ))
}

fn run_cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_quotstab"))
        .args(args)
        .output()
        .expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn first_witness(doc: &Value) -> Option<String> {
    doc["details"].as_array()?.iter().find_map(|d| {
        d["detail"]["failures"]
            .as_array()
            .and_then(|f| f.first())
            .and_then(|f| f["witness"].as_str())
            .map(str::to_string)
    })
}

fn negative_controls() -> Outcome {
    let verbs: &[&[&str]] = &[
        &["verify", "lbinomial"],
        &["verify", "prelim"],
        &["verify", "thm-a", "--order", "16"],
        &["verify", "stabilisation", "--order", "12"],
        &[
            "verify",
            "nested-gf",
            "--l",
            "2",
            "--tdeg",
            "5",
            "--order",
            "10",
        ],
        &[
            "verify",
            "nested-congruence",
            "--dims",
            "1",
            "--n",
            "2",
            "--q",
            "2",
        ],
        &["verify", "question-1-1", "--order", "48"],
        &["verify", "lquot-routes"],
        &["verify", "restriction-range", "2", "1", "2"],
        &["verify", "strata"],
        &["verify", "all", "--profile", "quick"],
        &["oracle", "verify-strata"],
    ];
    for verb in verbs {
        let (clean_code, _) = run_cli(&[verb, &["--json"][..]].concat());
        ensure(clean_code == 0, || {
            format!("{verb:?} unperturbed exited {clean_code}")
        })?;
        let (code, doc) = run_cli(&[verb, &["--json", "--perturb-coeff", "1"][..]].concat());
        ensure(code == 1, || format!("{verb:?} perturbed exited {code}"))?;
        ensure(doc["status"] == "fail", || {
            format!("{verb:?} status {}", doc["status"])
        })?;
        let witness = first_witness(&doc);
        ensure(witness.as_deref().is_some_and(|w| !w.is_empty()), || {
            format!("{verb:?} names no witness")
        })?;
    }
    let run = battery::run(Profile::Full, None);
    ensure(run.status == Status::Pass, || {
        "unperturbed full battery fails".into()
    })?;
    Ok(format!(
        "{} verify verbs exit 1 with a named witness",
        verbs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("prelim identity, 1 <= r, d <= 10", prelim_identity),
        (
            "stable Quot motive closed form, d, r <= 6 mod L^16",
            stable_limit,
        ),
        (
            "LQuot stabilisation mod L^12 for n >= 12 + d",
            stabilisation_rate,
        ),
        (
            "finite-field counts match motive formulas",
            oracle_vs_motives,
        ),
        ("Hilbert-Samuel stratum battery", stratum_battery),
        ("global congruence mod q^(n+r-d+1)", global_congruence),
        (
            "Chern quotient Hilbert series = stable Poincare series",
            chern_quotient_poincare,
        ),
        ("two routes to P(LQuot) agree, d, r, n <= 6", lquot_routes),
        ("nested generating function", nested_series),
        ("nested congruence via the oracle", nested_congruence),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
