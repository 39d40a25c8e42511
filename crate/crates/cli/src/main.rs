use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ihr_nef::families::{make_family, FamilyDescriptor, FamilyKind};
use ihr_nef::mixture::{
    build_plan, evaluate, feasibility_analytic, feasibility_numeric, FeasibilityReport, MixturePlan, Verdict,
};
use ihr_nef::numerics::ToleranceConfig;
use ihr_nef::verify::{check_hazard_monotone, run_suite, Suite};

/// Two-component NEF mixtures with increasing hazard rates.
#[derive(Parser, Debug)]
#[command(name = "ihr-nef", version)]
struct Cli {
    /// Relative tolerance for quadrature, root finding and minimization.
    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Absolute tolerance for quadrature, root finding and minimization.
    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = 1e-12)]
    abs_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the supported families with their descriptors.
    Families,
    /// Decide whether c*T(x) <= cosh(cx + d) holds on the whole support.
    Feasible {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        d: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Build a mixture plan and print it as JSON.
    Plan {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Also write the plan to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate density, survival and hazard of a plan.
    Hazard {
        #[command(flatten)]
        shape: OptionalShapeArgs,
        /// Read the plan from a file written by `plan --out`.
        #[arg(long, conflicts_with_all = ["family", "lambda_mid", "c", "d"])]
        plan: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        x_lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        x_hi: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate the Laplace transform L(lambda).
    Laplace {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Run the verification checks and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args, Debug)]
struct ShapeArgs {
    #[arg(long)]
    family: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda_mid: f64,
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, allow_hyphen_values = true)]
    d: f64,
}

#[derive(Args, Debug)]
struct OptionalShapeArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_mid: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum MethodArg {
    Analytic,
    Numeric,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Csv,
    Json,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Domain(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<ihr_nef::Error> for Failure {
    fn from(e: ihr_nef::Error) -> Self {
        Failure::Domain(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_family(spec: &str) -> Result<FamilyDescriptor<f64>, Failure> {
    let kind: FamilyKind<f64> = spec.parse().map_err(|e| usage(format!("--family: {e}")))?;
    Ok(make_family(kind)?)
}

fn check_shape(c: f64, d: f64) -> Result<(), Failure> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(usage(format!("--c must be positive and finite, got {c}")));
    }
    if !d.is_finite() {
        return Err(usage(format!("--d must be finite, got {d}")));
    }
    Ok(())
}

/// Plan parameters as stored by `plan --out`.
#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct PlanFile {
    family: String,
    lambda_mid: f64,
    c: f64,
    d: f64,
    lambda1: f64,
    lambda2: f64,
    p: f64,
    p1: f64,
    p2: f64,
    k1: f64,
    k2: f64,
}

impl PlanFile {
    fn from_plan(spec: &str, lambda_mid: f64, plan: &MixturePlan<f64>) -> Self {
        PlanFile {
            family: spec.to_string(),
            lambda_mid,
            c: plan.c,
            d: plan.d,
            lambda1: plan.lambda1,
            lambda2: plan.lambda2,
            p: plan.p,
            p1: plan.p1,
            p2: plan.p2,
            k1: plan.k1,
            k2: plan.k2,
        }
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    method: String,
    verdict: String,
    min_slack: f64,
    witness_x: f64,
    notes: &'a [String],
}

impl<'a> From<&'a FeasibilityReport<f64>> for ReportJson<'a> {
    fn from(r: &'a FeasibilityReport<f64>) -> Self {
        ReportJson {
            method: r.method.to_string(),
            verdict: r.verdict.to_string(),
            min_slack: r.min_slack,
            witness_x: r.witness_x,
            notes: &r.notes,
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(anyhow::Error::from)?;
    emit(&text)
}

fn emit(text: &str) -> Result<(), Failure> {
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// JSON has no infinities; write them as strings.
fn bound(x: f64) -> serde_json::Value {
    if x.is_finite() {
        x.into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn families() -> Outcome {
    let examples = ["normal:1", "gamma:2", "ig:1", "hc:1", "hc:2", "ressel:1", "kummer:1:-2"];
    let mut out = Vec::new();
    for spec in examples {
        let fd = parse_family(spec)?;
        out.push(serde_json::json!({
            "spec": spec,
            "tag": fd.kind.tag(),
            "support_left": bound(fd.support_left),
            "lambda_domain": [bound(fd.lambda_domain.lo), bound(fd.lambda_domain.hi)],
            "variance_function": fd.vf_text,
            "log_concavity": fd.log_concavity_note,
            "t_tail": {
                "exp_rate": fd.t_tail.exp_rate,
                "poly_degree": fd.t_tail.poly_degree,
                "certified": fd.t_tail.certified,
            },
        }));
    }
    print_json(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn feasible(family: &str, c: f64, d: f64, method: MethodArg, cfg: &ToleranceConfig<f64>) -> Outcome {
    let fd = parse_family(family)?;
    check_shape(c, d)?;
    let mut reports = Vec::new();
    if method != MethodArg::Numeric {
        reports.push(feasibility_analytic(&fd, c, d)?);
    }
    if method != MethodArg::Analytic {
        reports.push(feasibility_numeric(&fd, c, d, cfg)?);
    }
    // the first decisive verdict wins; analytic comes first
    let verdict = reports.iter().map(|r| r.verdict).find(|v| *v != Verdict::Unknown).unwrap_or(Verdict::Unknown);
    let mut notes: Vec<&String> = Vec::new();
    for n in reports.iter().flat_map(|r| &r.notes) {
        if !notes.contains(&n) {
            notes.push(n);
        }
    }
    let json: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
    print_json(&serde_json::json!({
        "family": family,
        "c": c,
        "d": d,
        "verdict": verdict.to_string(),
        "notes": notes,
        "reports": json,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn make_plan(shape: &ShapeArgs) -> Result<(MixturePlan<f64>, PlanFile), Failure> {
    let fd = parse_family(&shape.family)?;
    check_shape(shape.c, shape.d)?;
    if !shape.lambda_mid.is_finite() {
        return Err(usage("--lambda-mid must be finite"));
    }
    let plan = build_plan(&fd, shape.lambda_mid, shape.c, shape.d)?;
    let file = PlanFile::from_plan(&shape.family, shape.lambda_mid, &plan);
    Ok((plan, file))
}

fn plan_cmd(shape: &ShapeArgs, out: Option<&PathBuf>) -> Outcome {
    let (_, file) = make_plan(shape)?;
    let text = serde_json::to_string_pretty(&file).map_err(anyhow::Error::from)?;
    if let Some(path) = out {
        fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn load_plan(path: &PathBuf) -> Result<(MixturePlan<f64>, PlanFile), Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let stored: PlanFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("{} is not a plan file: {e}", path.display())))?;
    let shape = ShapeArgs { family: stored.family.clone(), lambda_mid: stored.lambda_mid, c: stored.c, d: stored.d };
    let (plan, rebuilt) = make_plan(&shape)?;
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    if !(close(rebuilt.p, stored.p) && close(rebuilt.lambda1, stored.lambda1) && close(rebuilt.lambda2, stored.lambda2)) {
        return Err(Failure::Domain(anyhow!(
            "plan file {} is inconsistent: stored p = {}, rebuilt p = {}",
            path.display(),
            stored.p,
            rebuilt.p
        )));
    }
    Ok((plan, rebuilt))
}

#[allow(clippy::too_many_arguments)]
fn hazard_cmd(
    shape: &OptionalShapeArgs,
    plan_path: Option<&PathBuf>,
    x_lo: f64,
    x_hi: f64,
    n: usize,
    format: Format,
    cfg: &ToleranceConfig<f64>,
) -> Outcome {
    let (plan, file) = match plan_path {
        Some(p) => load_plan(p)?,
        None => {
            let missing = || usage("hazard needs --plan or all of --family, --lambda-mid, --c, --d");
            let shape = ShapeArgs {
                family: shape.family.clone().ok_or_else(missing)?,
                lambda_mid: shape.lambda_mid.ok_or_else(missing)?,
                c: shape.c.ok_or_else(missing)?,
                d: shape.d.ok_or_else(missing)?,
            };
            make_plan(&shape)?
        }
    };
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi) {
        return Err(usage(format!("need finite --x-lo < --x-hi, got {x_lo}, {x_hi}")));
    }
    let xs: Vec<f64> = (0..n).map(|i| x_lo + (x_hi - x_lo) * (i as f64 / (n - 1) as f64)).collect();
    let values = xs.iter().map(|&x| evaluate(&plan, x, cfg)).collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Csv => {
            let stdout = io::stdout();
            let mut w = io::BufWriter::new(stdout.lock());
            let written = writeln!(w, "x,density,survival,hazard")
                .and_then(|_| {
                    values.iter().try_for_each(|v| {
                        writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e}", v.x, v.density, v.survival, v.hazard)
                    })
                })
                .and_then(|_| w.flush());
            match written {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
        Format::Json => {
            let monotone = if n >= 100 {
                let r = check_hazard_monotone(&plan, x_lo, x_hi, n, cfg)?;
                serde_json::json!({
                    "monotone": r.monotone,
                    "max_drop": r.max_drop,
                    "drop_location": r.drop_location,
                    "functional_min": r.functional_min,
                    "functional_location": r.functional_location,
                })
            } else {
                serde_json::Value::Null
            };
            print_json(&serde_json::json!({
                "plan": file,
                "x": xs,
                "density": values.iter().map(|v| v.density).collect::<Vec<_>>(),
                "survival": values.iter().map(|v| v.survival).collect::<Vec<_>>(),
                "hazard": values.iter().map(|v| v.hazard).collect::<Vec<_>>(),
                "monotonicity": monotone,
            }))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn laplace_cmd(family: &str, lambda: f64) -> Outcome {
    let fd = parse_family(family)?;
    emit(&format!("{:?}", fd.laplace(lambda)?))?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(suite: &str, cfg: &ToleranceConfig<f64>) -> Outcome {
    let suite: Suite = suite.parse().map_err(|e| usage(format!("--suite: {e}")))?;
    let outcomes = run_suite(suite, cfg);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let checks: Vec<_> = outcomes
        .iter()
        .map(|o| serde_json::json!({"suite": o.suite, "name": o.name, "passed": o.passed, "detail": o.detail}))
        .collect();
    print_json(&serde_json::json!({
        "suite": suite.to_string(),
        "passed": outcomes.len() - failed,
        "failed": failed,
        "checks": checks,
    }))?;
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Outcome {
    let cfg = ToleranceConfig::new(cli.rel_tol, cli.abs_tol).map_err(|e| usage(e.to_string()))?;
    match &cli.command {
        Command::Families => families(),
        Command::Feasible { family, c, d, method } => feasible(family, *c, *d, *method, &cfg),
        Command::Plan { shape, out } => plan_cmd(shape, out.as_ref()),
        Command::Hazard { shape, plan, x_lo, x_hi, n, format } => {
            hazard_cmd(shape, plan.as_ref(), *x_lo, *x_hi, *n, *format, &cfg)
        }
        Command::Laplace { family, lambda } => laplace_cmd(family, *lambda),
        Command::Verify { suite } => verify_cmd(suite, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
