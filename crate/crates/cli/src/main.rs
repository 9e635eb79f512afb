use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quotstab::battery;
use quotstab::cohomseries::{
    poincare_flag_infinity, poincare_lquot, poincare_quot_infinity, verify_chern_quotient_poincare,
    verify_lquot_routes, verify_restriction_range,
};
use quotstab::fforacle::{
    build_ambient, count_flag_points, count_grassmannian_points, count_punctual_nested,
    count_punctual_quot, count_stratum, enumerate_submodules, hs_function_of,
    verify_global_congruence, verify_stratum_motives,
};
use quotstab::motives::{
    flag_motive, flag_motive_infinite, gaussian_binomial, grassmannian_infinite, verify_lbinomial,
};
use quotstab::nestedmotives::{
    nested_generating_function, verify_nested_congruence, verify_nested_gf,
};
use quotstab::quotmotives::{
    lquot_motive, quot_infinity_motive, verify_lquot_stabilisation, verify_prelim,
    verify_stable_limit_sweep,
};
use quotstab::{
    CheckRecord, Error, FlagDimensions, HilbertSamuelFunction, Perturbation, PrimeField, Profile,
    RunReport, Status, VerifyReport,
};

mod output;

#[derive(Parser, Debug)]
#[command(
    name = "quotstab",
    version,
    about = "Motives of punctual Quot schemes, flag varieties and nested Hilbert schemes"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// L-adic (or z-adic) truncation order.
    #[arg(long, short = 'N', global = true, default_value_t = 32)]
    order: usize,
    /// Total t-degree bound for multivariate series.
    #[arg(long, short = 'D', global = true, default_value_t = 12)]
    tdeg: u32,
    /// Battery profile for `verify all`.
    #[arg(long, global = true, value_enum, default_value_t = ProfileArg::Quick)]
    profile: ProfileArg,
    /// Include wall-clock time in JSON output.
    #[arg(long, global = true)]
    timing: bool,
    /// Adds one to coefficient K of the computed side of every verifier.
    #[arg(long, global = true, hide = true)]
    perturb_coeff: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact motives.
    #[command(subcommand)]
    Motive(MotiveCmd),
    /// Stable limits as n goes to infinity.
    #[command(subcommand)]
    Limit(LimitCmd),
    /// Multivariate generating series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Poincaré polynomials and series.
    #[command(subcommand)]
    Poincare(PoincareCmd),
    /// Identity and congruence checks; exit 1 on violation.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Point counts over F_q by enumeration.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Args, Debug)]
struct FlagArgs {
    /// Flag dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum MotiveCmd {
    /// [Gr(d, n)].
    Gr { d: usize, n: usize },
    /// [Fl(d_1..d_l, n)].
    Flag {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long)]
        n: usize,
    },
    /// [Gr(d, oo)] modulo L^order.
    GrInf { d: usize },
    /// [Fl(d_1..d_l, oo)] modulo L^order.
    FlagInf {
        #[command(flatten)]
        flag: FlagArgs,
    },
    /// [LQuot^d(O^r)] on A^n.
    Lquot { d: u32, r: u32, n: u32 },
}

#[derive(Subcommand, Debug)]
enum LimitCmd {
    /// [Quot^d(O^r)_0] on A^oo modulo L^order.
    Quot { d: u32, r: u32 },
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    /// Generating series of stable nested punctual Hilbert schemes.
    Nested {
        #[arg(long, default_value_t = 2)]
        l: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PoincareCmd {
    /// P(LQuot^d(O^r) on A^n, z).
    Lquot { d: u32, r: u32, n: u32 },
    /// P(Quot^d(O^r) on A^oo, z) modulo z^order.
    QuotInf { d: u32, r: u32 },
    /// P(Fl(d_1..d_l, oo), z) modulo z^order.
    FlagInf {
        #[command(flatten)]
        flag: FlagArgs,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Pascal recursion for Gaussian binomials.
    Lbinomial {
        #[arg(long, default_value_t = 10)]
        dmax: usize,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// The sum over i of P_i(d) [Gr(i,r)] L^((d-i)(r-i)).
    Prelim {
        #[arg(long, default_value_t = 10)]
        rmax: u32,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
    },
    /// Stable Quot motive: strata sum against closed form.
    #[command(name = "thm-a")]
    StableLimit {
        #[arg(long, default_value_t = 6)]
        dmax: u32,
        #[arg(long, default_value_t = 6)]
        rmax: u32,
    },
    /// LQuot on A^n against the stable motive for n >= order + d.
    Stabilisation {
        #[arg(long, default_value_t = 5)]
        dmax: u32,
        #[arg(long, default_value_t = 5)]
        rmax: u32,
        #[arg(long, default_value_t = 4)]
        extra: u32,
    },
    /// Nested generating series against stable flag motives.
    NestedGf {
        #[arg(long, default_value_t = 2)]
        l: usize,
    },
    /// Nested punctual Hilbert scheme against the flag variety mod q^(n-d_l+1).
    NestedCongruence {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Hilbert series of Z[c_1..c_d]/(c_d^r) against the stable Poincaré series.
    #[command(name = "question-1-1")]
    ChernQuotient {
        #[arg(long, default_value_t = 8)]
        dmax: u32,
        #[arg(long, default_value_t = 8)]
        rmax: u32,
    },
    /// Both routes to P(LQuot) for all d, r, n <= max.
    LquotRoutes {
        #[arg(long, default_value_t = 6)]
        max: u32,
    },
    /// Agreement of P(LQuot) with the stable series in degrees <= 2(n+r-d).
    RestrictionRange { d: u32, r: u32, n: u32 },
    /// #Quot_0(F_q) = [LQuot](q) mod q^(n+r-d+1); default: the standard tuples.
    Strata(OracleTuple),
    /// The whole battery.
    All,
}

#[derive(Args, Debug, Clone, Copy)]
struct OracleTuple {
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// #Gr(d, n)(F_q).
    CountGr {
        d: usize,
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// #Fl(dims, n)(F_q).
    CountFlag {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// #Quot^d(O^r on A^n)_0(F_q).
    CountQuot {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Points of one Hilbert–Samuel stratum.
    CountStratum {
        /// Hilbert–Samuel function, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<u32>,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Chains of punctual ideals with colengths d_i + 1.
    CountNested {
        #[command(flatten)]
        flag: FlagArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Stable submodules of (R/m^k)^r with their Hilbert–Samuel functions.
    Submodules {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        codim: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Stratum-by-stratum check against the motive formulas.
    VerifyStrata(OracleTuple),
}

/// What a command produces: a JSON document, its text rendering, and the
/// exit code.
struct Outcome {
    json: Value,
    text: String,
    code: u8,
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::InfeasibleSize { .. }
        | Error::UnsupportedField(_)
        | Error::InvalidArgument(_)
        | Error::InvalidFlag(_)
        | Error::InvalidHilbertSamuel(_)
        | Error::LengthTooLarge(_)
        | Error::LengthTooSmall(_) => 2,
        _ => 1,
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn value_outcome(
    command: &str,
    params: BTreeMap<String, Value>,
    value: Value,
    text: String,
) -> Outcome {
    Outcome {
        json: json!({ "command": command, "params": params, "value": value }),
        text,
        code: 0,
    }
}

fn count_outcome(command: &str, params: BTreeMap<String, Value>, count: u64) -> Outcome {
    Outcome {
        json: json!({ "command": command, "params": params, "count": count }),
        text: count.to_string(),
        code: 0,
    }
}

fn run_outcome(run: RunReport) -> Outcome {
    let code = run.status.exit_code() as u8;
    Outcome {
        text: output::run_table(&run),
        json: run.to_json(),
        code,
    }
}

fn single_check(
    command: &str,
    params: BTreeMap<String, Value>,
    name: &str,
    report: Result<VerifyReport, Error>,
) -> Outcome {
    let mut run = RunReport::new(command, params);
    run.push(match report {
        Ok(r) => CheckRecord::from_report(name, &r),
        Err(e) => CheckRecord::from_error(name, &e),
    });
    run_outcome(run)
}

fn field(q: u32) -> Result<PrimeField, Error> {
    PrimeField::new(q)
}

fn tuples(t: OracleTuple) -> Vec<(u32, u32, u32, u32)> {
    match (t.d, t.r, t.n) {
        (Some(d), Some(r), Some(n)) => vec![(d, r, n, t.q.unwrap_or(2))],
        _ => battery::STRATUM_TUPLES
            .iter()
            .copied()
            .filter(|&(d, r, n, q)| {
                t.d.is_none_or(|x| x == d)
                    && t.r.is_none_or(|x| x == r)
                    && t.n.is_none_or(|x| x == n)
                    && t.q.is_none_or(|x| x == q)
            })
            .collect(),
    }
}

fn tuple_params(t: OracleTuple) -> BTreeMap<String, Value> {
    let mut p = BTreeMap::new();
    for (k, v) in [("d", t.d), ("r", t.r), ("n", t.n), ("q", t.q)] {
        if let Some(v) = v {
            p.insert(k.to_string(), Value::from(v));
        }
    }
    p
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let order = cli.order;
    let hook = cli.perturb_coeff.and_then(Perturbation::at);
    let out = match &cli.command {
        Command::Motive(m) => match m {
            MotiveCmd::Gr { d, n } => {
                let p = gaussian_binomial(*d, *n);
                value_outcome(
                    "motive gr",
                    params(&[("d", json!(d)), ("n", json!(n))]),
                    p.to_json(),
                    p.to_string(),
                )
            }
            MotiveCmd::Flag { flag, n } => {
                let p = flag_motive(&FlagDimensions::finite(flag.dims.clone(), *n)?);
                value_outcome(
                    "motive flag",
                    params(&[("dims", json!(flag.dims)), ("n", json!(n))]),
                    p.to_json(),
                    p.to_string(),
                )
            }
            MotiveCmd::GrInf { d } => {
                let s = grassmannian_infinite(*d, order);
                value_outcome(
                    "motive gr-inf",
                    params(&[("d", json!(d)), ("order", json!(order))]),
                    s.to_json(),
                    s.to_string(),
                )
            }
            MotiveCmd::FlagInf { flag } => {
                let s = flag_motive_infinite(&FlagDimensions::stable(flag.dims.clone())?, order);
                value_outcome(
                    "motive flag-inf",
                    params(&[("dims", json!(flag.dims)), ("order", json!(order))]),
                    s.to_json(),
                    s.to_string(),
                )
            }
            MotiveCmd::Lquot { d, r, n } => {
                let p = lquot_motive(*d, *r, *n);
                value_outcome(
                    "motive lquot",
                    params(&[("d", json!(d)), ("r", json!(r)), ("n", json!(n))]),
                    p.to_json(),
                    p.to_string(),
                )
            }
        },
        Command::Limit(LimitCmd::Quot { d, r }) => {
            if *d == 0 {
                return Err(Error::InvalidArgument("d must be positive".into()));
            }
            let s = quot_infinity_motive(*d, *r, order);
            value_outcome(
                "limit quot",
                params(&[("d", json!(d)), ("r", json!(r)), ("order", json!(order))]),
                s.to_json(),
                s.to_string(),
            )
        }
        Command::Series(SeriesCmd::Nested { l }) => {
            if *l == 0 {
                return Err(Error::InvalidArgument("l must be positive".into()));
            }
            let gf = nested_generating_function(*l, cli.tdeg, order);
            let terms: Vec<Value> = gf
                .terms()
                .map(|(e, c)| json!({ "exponent": e, "coeffs": c.to_json()["coeffs"], "order": c.order() }))
                .collect();
            let text = output::series_table(&gf);
            value_outcome(
                "series nested",
                params(&[
                    ("l", json!(l)),
                    ("tdeg", json!(cli.tdeg)),
                    ("order", json!(order)),
                ]),
                Value::Array(terms),
                text,
            )
        }
        Command::Poincare(p) => match p {
            PoincareCmd::Lquot { d, r, n } => {
                let z = poincare_lquot(*d, *r, *n)?;
                value_outcome(
                    "poincare lquot",
                    params(&[("d", json!(d)), ("r", json!(r)), ("n", json!(n))]),
                    z.to_json(),
                    z.render_in("z"),
                )
            }
            PoincareCmd::QuotInf { d, r } => {
                if *d == 0 {
                    return Err(Error::InvalidArgument("d must be positive".into()));
                }
                let z = poincare_quot_infinity(*d, *r, order)?;
                value_outcome(
                    "poincare quot-inf",
                    params(&[("d", json!(d)), ("r", json!(r)), ("order", json!(order))]),
                    z.to_json(),
                    z.render_in("z"),
                )
            }
            PoincareCmd::FlagInf { flag } => {
                let z = poincare_flag_infinity(&FlagDimensions::stable(flag.dims.clone())?, order)?;
                value_outcome(
                    "poincare flag-inf",
                    params(&[("dims", json!(flag.dims)), ("order", json!(order))]),
                    z.to_json(),
                    z.render_in("z"),
                )
            }
        },
        Command::Verify(v) => verify(cli, v, hook)?,
        Command::Oracle(o) => oracle(o, hook)?,
    };
    Ok(out)
}

fn verify(cli: &Cli, v: &VerifyCmd, hook: Option<Perturbation>) -> Result<Outcome, Error> {
    let order = cli.order;
    Ok(match v {
        VerifyCmd::Lbinomial { dmax, nmax } => single_check(
            "verify lbinomial",
            params(&[("dmax", json!(dmax)), ("nmax", json!(nmax))]),
            "lbinomial",
            Ok(verify_lbinomial(*dmax, *nmax, hook)),
        ),
        VerifyCmd::Prelim { rmax, dmax } => single_check(
            "verify prelim",
            params(&[("rmax", json!(rmax)), ("dmax", json!(dmax))]),
            "prelim",
            Ok(verify_prelim(*rmax, *dmax, hook)),
        ),
        VerifyCmd::StableLimit { dmax, rmax } => single_check(
            "verify thm-a",
            params(&[
                ("dmax", json!(dmax)),
                ("rmax", json!(rmax)),
                ("order", json!(order)),
            ]),
            "thm-a",
            Ok(verify_stable_limit_sweep(*dmax, *rmax, order, hook)),
        ),
        VerifyCmd::Stabilisation { dmax, rmax, extra } => single_check(
            "verify stabilisation",
            params(&[
                ("dmax", json!(dmax)),
                ("rmax", json!(rmax)),
                ("extra", json!(extra)),
                ("order", json!(order)),
            ]),
            "stabilisation",
            Ok(verify_lquot_stabilisation(
                *dmax, *rmax, order, *extra, hook,
            )),
        ),
        VerifyCmd::NestedGf { l } => {
            if *l == 0 {
                return Err(Error::InvalidArgument("l must be positive".into()));
            }
            single_check(
                "verify nested-gf",
                params(&[
                    ("l", json!(l)),
                    ("tdeg", json!(cli.tdeg)),
                    ("order", json!(order)),
                ]),
                "nested-gf",
                Ok(verify_nested_gf(*l, cli.tdeg, order, hook)),
            )
        }
        VerifyCmd::NestedCongruence { flag, n, q } => single_check(
            "verify nested-congruence",
            params(&[("dims", json!(flag.dims)), ("n", json!(n)), ("q", json!(q))]),
            "nested-congruence",
            FlagDimensions::finite(flag.dims.clone(), *n)
                .and_then(|f| verify_nested_congruence(&f, *q, hook)),
        ),
        VerifyCmd::ChernQuotient { dmax, rmax } => single_check(
            "verify question-1-1",
            params(&[
                ("dmax", json!(dmax)),
                ("rmax", json!(rmax)),
                ("order", json!(order)),
            ]),
            "question-1-1",
            Ok(verify_chern_quotient_poincare(*dmax, *rmax, order, hook)),
        ),
        VerifyCmd::LquotRoutes { max } => single_check(
            "verify lquot-routes",
            params(&[("max", json!(max))]),
            "lquot-routes",
            Ok(verify_lquot_routes(*max, hook)),
        ),
        VerifyCmd::RestrictionRange { d, r, n } => single_check(
            "verify restriction-range",
            params(&[("d", json!(d)), ("r", json!(r)), ("n", json!(n))]),
            "restriction-range",
            verify_restriction_range(*d, *r, *n, hook),
        ),
        VerifyCmd::Strata(t) => {
            let mut run = RunReport::new("verify strata", tuple_params(*t));
            for (d, r, n, q) in tuples(*t) {
                let name = format!("congruence (d={d}, r={r}, n={n}, q={q})");
                let report = field(q).and_then(|f| verify_global_congruence(d, r, n, f, hook));
                run.push(match report {
                    Ok(rep) => CheckRecord::from_report(name, &rep),
                    Err(e) => CheckRecord::from_error(name, &e),
                });
            }
            run_outcome(run)
        }
        VerifyCmd::All => {
            let profile = match cli.profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            run_outcome(battery::run(profile, hook))
        }
    })
}

fn oracle(o: &OracleCmd, hook: Option<Perturbation>) -> Result<Outcome, Error> {
    Ok(match o {
        OracleCmd::CountGr { d, n, q } => count_outcome(
            "oracle count-gr",
            params(&[("d", json!(d)), ("n", json!(n)), ("q", json!(q))]),
            count_grassmannian_points(*d, *n, field(*q)?)?,
        ),
        OracleCmd::CountFlag { flag, n, q } => count_outcome(
            "oracle count-flag",
            params(&[("dims", json!(flag.dims)), ("n", json!(n)), ("q", json!(q))]),
            count_flag_points(&flag.dims, *n, field(*q)?)?,
        ),
        OracleCmd::CountQuot { d, r, n, q } => count_outcome(
            "oracle count-quot",
            params(&[
                ("d", json!(d)),
                ("r", json!(r)),
                ("n", json!(n)),
                ("q", json!(q)),
            ]),
            count_punctual_quot(*d, *r, *n, field(*q)?)?,
        ),
        OracleCmd::CountStratum { h, r, n, q } => {
            let hs = HilbertSamuelFunction::new(h.clone())?;
            count_outcome(
                "oracle count-stratum",
                params(&[
                    ("h", json!(h)),
                    ("r", json!(r)),
                    ("n", json!(n)),
                    ("q", json!(q)),
                ]),
                count_stratum(&hs, *r, *n, field(*q)?)?,
            )
        }
        OracleCmd::CountNested { flag, n, q } => count_outcome(
            "oracle count-nested",
            params(&[("dims", json!(flag.dims)), ("n", json!(n)), ("q", json!(q))]),
            count_punctual_nested(&flag.dims, *n, field(*q)?)?,
        ),
        OracleCmd::Submodules { n, r, k, codim, q } => {
            let m = build_ambient(*n, *r, *k, field(*q)?)?;
            let witnesses = enumerate_submodules(&m, *codim)?;
            let rows: Vec<(String, String)> = witnesses
                .iter()
                .map(|w| {
                    let hs = if w.codim() == 0 {
                        "()".to_string()
                    } else {
                        hs_function_of(w, &m).to_string()
                    };
                    (output::basis_text(w.basis()), hs)
                })
                .collect();
            let json_rows: Vec<Value> = witnesses
                .iter()
                .zip(&rows)
                .map(|(w, (_, hs))| json!({ "basis": w.basis(), "hs": hs }))
                .collect();
            let text = output::submodule_table(&m.basis_labels(), &rows);
            Outcome {
                json: json!({
                    "command": "oracle submodules",
                    "params": params(&[("n", json!(n)), ("r", json!(r)), ("k", json!(k)), ("codim", json!(codim)), ("q", json!(q))]),
                    "basis": m.basis_labels(),
                    "count": witnesses.len(),
                    "witnesses": json_rows,
                }),
                text,
                code: 0,
            }
        }
        OracleCmd::VerifyStrata(t) => {
            let mut run = RunReport::new("oracle verify-strata", tuple_params(*t));
            for (d, r, n, q) in tuples(*t) {
                let name = format!("strata (d={d}, r={r}, n={n}, q={q})");
                let report = field(q).and_then(|f| verify_stratum_motives(d, r, n, f, hook));
                run.push(match report {
                    Ok(rep) => CheckRecord::from_report(name, &rep),
                    Err(e) => CheckRecord::from_error(name, &e),
                });
            }
            run_outcome(run)
        }
    })
}

// A closed pipe (`quotstab ... | head`) is not an error worth a panic.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = dispatch(&cli);
    let elapsed = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(mut out) => {
            if cli.json {
                if cli.timing {
                    if let Value::Object(map) = &mut out.json {
                        map.insert("elapsed_ms".into(), Value::from(elapsed));
                    }
                }
                emit(&serde_json::to_string_pretty(&out.json).expect("serialisable"));
            } else {
                emit(&out.text);
                if cli.timing {
                    eprintln!("elapsed: {elapsed} ms");
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = error_code(&e);
            if cli.json {
                let status = if matches!(e, Error::InfeasibleSize { .. }) {
                    Status::Infeasible
                } else {
                    Status::Fail
                };
                let doc = json!({ "status": status, "error": e.to_string() });
                emit(&serde_json::to_string_pretty(&doc).expect("serialisable"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
