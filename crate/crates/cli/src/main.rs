use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pto_core::cayham::char_poly;
use pto_core::discriminant::ideal_generators;
use pto_core::parse::parse_element;
use pto_core::poisson::{poisson_bracket, specialization_derivation};
use pto_core::qtorus::{center_lattice, ell_compatible, pi_degree, strict, AlgebraSpec, Element};
use pto_core::specfile::{CapsFile, SpecFile};
use pto_core::suites::{run_suite, SuiteOptions, TraceChoice};
use pto_core::trace::{tr_red, tr_reg, CentralSubalgebra, TraceForm};
use pto_core::Error;

#[derive(Parser)]
#[command(name = "pto", version, about = "Poisson trace orders on root-of-unity quantum tori")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled suites (overrides the one in the algebra file).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long = "cap-max-basis", global = true)]
    cap_max_basis: Option<u64>,
    #[arg(long = "cap-max-det", global = true)]
    cap_max_det: Option<usize>,
    #[arg(long = "cap-max-subsets", global = true)]
    cap_max_subsets: Option<usize>,
    #[arg(long = "cap-max-gb-steps", global = true)]
    cap_max_gb_steps: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize an algebra: Ω, center residues, PI degree, cluster checks.
    Info {
        /// Algebra file path or preset name (qp2, qp3, qtorus3, cluster-a2).
        spec: String,
    },
    /// Evaluate one of the constructions on an expression.
    Compute {
        spec: String,
        kind: ComputeKind,
        /// Element expressions, e.g. "x1^2" or "2*x1 x2 - e*x2^3".
        exprs: Vec<String>,
        #[command(flatten)]
        opts: TraceOpts,
        /// Use independent tuples (modified discriminant).
        #[arg(long)]
        modified: bool,
        /// Degree of the characteristic polynomial.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run a seeded verification suite; exit code 0 iff it passes.
    Verify {
        spec: String,
        /// pto-reg, pto-red, der-reg, derdet, poisson-ideal, cayley-hamilton, axioms, base-change
        suite: String,
        #[command(flatten)]
        opts: TraceOpts,
        /// Generator rows of the sublattice A as JSON, e.g. "[[4,0],[0,2]]".
        #[arg(long)]
        sublattice: Option<String>,
    },
}

#[derive(Args)]
struct TraceOpts {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = TraceArg::Reg)]
    trace: TraceArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceArg {
    Reg,
    Red,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeKind {
    TraceReg,
    TraceRed,
    Bracket,
    Derivation,
    Charpoly,
    Discriminant,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load(cli: &Cli, path: &str) -> Result<(SpecFile, AlgebraSpec), Failure> {
    let file = SpecFile::load(path)?;
    let overrides = CapsFile {
        max_basis: cli.cap_max_basis,
        max_det: cli.cap_max_det,
        max_subsets: cli.cap_max_subsets,
        max_gb_steps: cli.cap_max_gb_steps,
    };
    let spec = file.to_spec()?;
    let caps = overrides.apply(*spec.caps());
    Ok((file, spec.with_caps(caps)))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Info { spec } => info(cli, spec),
        Command::Compute {
            spec,
            kind,
            exprs,
            opts,
            modified,
            degree,
        } => compute(cli, spec, *kind, exprs, opts, *modified, *degree),
        Command::Verify {
            spec,
            suite,
            opts,
            sublattice,
        } => verify(cli, spec, suite, opts, sublattice.as_deref()),
    }
}

fn emit(cli: &Cli, value: Value, text: String) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn info(cli: &Cli, path: &str) -> Outcome {
    let (_, spec) = load(cli, path)?;
    let k = center_lattice(&spec)?;
    let n = pi_degree(&spec)?;
    let rank = spec.box_size()?;
    let mut value = json!({
        "N": spec.rank(),
        "ell": spec.ell(),
        "omega": spec.omega(),
        "invertible": spec.invertible(),
        "center_residues": k,
        "pi_degree": n,
        "rank": rank,
    });
    let mut text = format!(
        "N = {}\nell = {}\nOmega = {:?}\ninvertible = {:?}\ncenter residues K = {:?}\nPI degree n = {n}\nrank ell^N = {rank}",
        spec.rank(),
        spec.ell(),
        spec.omega(),
        spec.invertible(),
        k
    );
    if let Some(cluster) = spec.cluster() {
        let compat = ell_compatible(cluster, spec.omega(), spec.ell() as i64)?;
        let strict = strict(cluster, spec.lambda())?;
        value["ell_compatible"] = json!(compat);
        value["strict"] = json!(strict);
        text.push_str(&format!("\nell-compatible = {compat}\nstrict = {strict}"));
    }
    emit(cli, value, text);
    Ok(true)
}

fn expr(spec: &AlgebraSpec, exprs: &[String], i: usize, what: &str) -> Result<Element, Failure> {
    let src = exprs
        .get(i)
        .ok_or_else(|| Failure::Usage(format!("missing {what} expression")))?;
    Ok(parse_element(spec, src)?)
}

fn trace_for(spec: &AlgebraSpec, choice: TraceArg) -> Result<TraceForm, Failure> {
    Ok(match choice {
        TraceArg::Reg => TraceForm::regular(spec, &CentralSubalgebra::ell_powers(spec))?,
        TraceArg::Red => TraceForm::reduced(spec)?,
    })
}

fn element_value(e: &Element) -> Value {
    json!({ "text": e.to_string(), "terms": e.to_json() })
}

#[allow(clippy::too_many_arguments)]
fn compute(
    cli: &Cli,
    path: &str,
    kind: ComputeKind,
    exprs: &[String],
    opts: &TraceOpts,
    modified: bool,
    degree: Option<usize>,
) -> Outcome {
    let (_, spec) = load(cli, path)?;
    match kind {
        ComputeKind::TraceReg => {
            let r = expr(&spec, exprs, 0, "element")?;
            let t = tr_reg(&r, &CentralSubalgebra::ell_powers(&spec), &spec)?;
            emit(cli, element_value(&t), t.to_string());
        }
        ComputeKind::TraceRed => {
            let r = expr(&spec, exprs, 0, "element")?;
            let t = tr_red(&r, &spec)?;
            emit(cli, element_value(&t), t.to_string());
        }
        ComputeKind::Bracket => {
            let a = expr(&spec, exprs, 0, "first")?;
            let b = expr(&spec, exprs, 1, "second")?;
            let t = poisson_bracket(&a, &b, &spec)?;
            emit(cli, element_value(&t), t.to_string());
        }
        ComputeKind::Derivation => {
            let c = expr(&spec, exprs, 0, "central")?;
            let d = specialization_derivation(&c, &spec)?;
            let lines: Vec<String> = d
                .images()
                .iter()
                .enumerate()
                .map(|(i, e)| format!("d(x{}) = {e}", i + 1))
                .collect();
            let value = json!(d
                .images()
                .iter()
                .enumerate()
                .map(|(i, e)| json!({ "generator": format!("x{}", i + 1), "image": element_value(e) }))
                .collect::<Vec<_>>());
            emit(cli, value, lines.join("\n"));
        }
        ComputeKind::Charpoly => {
            let a = expr(&spec, exprs, 0, "element")?;
            let tr = trace_for(&spec, opts.trace)?;
            let d = match (degree, opts.trace) {
                (Some(d), _) => d,
                (None, TraceArg::Red) => pi_degree(&spec)? as usize,
                (None, TraceArg::Reg) => tr.frame().rank(),
            };
            let chi = char_poly(&a, d, &tr, &spec)?;
            emit(cli, serde_json::to_value(chi.to_json()).expect("serializable"), chi.to_string());
        }
        ComputeKind::Discriminant => {
            let tr = trace_for(&spec, opts.trace)?;
            let pool: Vec<Element> = tr
                .frame()
                .transversal()
                .iter()
                .map(|t| Element::x(&spec, t.clone()))
                .collect();
            let k = opts.k.unwrap_or(pool.len());
            let ideal = ideal_generators(k, &pool, &tr, &spec, modified)?;
            let j = ideal.to_json()?;
            let text = j.generators.join("\n");
            emit(cli, serde_json::to_value(&j).expect("serializable"), text);
        }
    }
    Ok(true)
}

fn verify(cli: &Cli, path: &str, suite: &str, opts: &TraceOpts, sublattice: Option<&str>) -> Outcome {
    let (file, spec) = load(cli, path)?;
    let sublattice = match sublattice {
        Some(src) => Some(
            serde_json::from_str::<Vec<Vec<i64>>>(src)
                .map_err(|e| Failure::Usage(format!("--sublattice must be a JSON integer matrix: {e}")))?,
        ),
        None => None,
    };
    let options = SuiteOptions {
        seed: cli.seed.or(file.seed).unwrap_or(SuiteOptions::default().seed),
        k: opts.k,
        trace: match opts.trace {
            TraceArg::Reg => TraceChoice::Regular,
            TraceArg::Red => TraceChoice::Reduced,
        },
        sublattice,
    };
    let report = run_suite(suite, &spec, &options)?;
    let mut text = format!(
        "{}: {} ({} cases)",
        report.check,
        if report.passed { "PASS" } else { "FAIL" },
        report.cases
    );
    for note in &report.notes {
        text.push_str(&format!("\n  {note}"));
    }
    for w in &report.witnesses {
        text.push_str(&format!(
            "\n  witness: {} | expected {} | actual {}",
            w.inputs.join("; "),
            w.expected,
            w.actual
        ));
    }
    emit(cli, serde_json::to_value(&report).expect("serializable"), text);
    Ok(report.passed)
}
