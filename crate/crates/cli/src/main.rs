mod text;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use onespec_core::catalog::{isotropy_check, make_named, rank1_span_dim, singular_set_is_subspace, SpaceKind};
use onespec_core::json::{LabelJson, MatrixJson, SubspaceJson};
use onespec_core::reduce::reduce;
use onespec_core::search::{
    classify_exhaustive_n3_char3, similar_bruteforce, verify_dimension_bound, Certificate, DEFAULT_BUDGET,
};
use onespec_core::subspace::{spectral_classify, Predicate};
use onespec_core::suite::{run_criterion, CRITERIA};
use onespec_core::{Error, FieldSpec, MatrixSubspace};

#[derive(Parser)]
#[command(
    name = "onespec",
    version,
    about = "Matrix spaces with a single eigenvalue over small finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral flags and similarity invariants of a space.
    Check(SpaceArgs),
    /// Print a named space as subspace JSON.
    Catalog(NamedArgs),
    /// Reduce a maximal 1̄-spec space (n = 3 in char 3, n = 4 in char 2) to its model.
    Reduce {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Decide similarity by exhausting GL_n(q).
    Similar {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
    },
    /// Check that no d-dimensional subspace of M_n(K) satisfies a predicate.
    VerifyBound {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_predicate)]
        predicate: Predicate,
        /// Node budget; ONESPEC_BUDGET overrides the default.
        #[arg(long, env = "ONESPEC_BUDGET", default_value_t = DEFAULT_BUDGET,
              value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Enumerate and classify the maximal 1̄-spec subspaces of M₃(F₃).
    Classify {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Run the acceptance criteria.
    Suite {
        /// Run only these criteria (repeatable).
        #[arg(long, value_name = "ID")]
        criterion: Vec<u8>,
    },
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
struct NamedArgs {
    /// UT1, F, G, H, H0, NT, SL or I.
    #[arg(long, value_parser = parse_kind)]
    catalog: SpaceKind,
    #[command(flatten)]
    field: FieldArgs,
    /// Matrix size; fixed for F, G, I (3) and H, H0 (4).
    #[arg(long)]
    n: Option<usize>,
    /// δ as an element code, for F and G.
    #[arg(long)]
    delta: Option<u32>,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(
        long = "in",
        value_name = "FILE",
        conflicts_with = "catalog",
        required_unless_present = "catalog"
    )]
    input: Option<PathBuf>,
    #[arg(long, value_parser = parse_kind)]
    catalog: Option<SpaceKind>,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    delta: Option<u32>,
}

fn parse_kind(s: &str) -> Result<SpaceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_predicate(s: &str) -> Result<Predicate, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced: a document and its exit status.
struct Outcome {
    value: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(value: Value, text: String) -> Outcome {
        Outcome { value, text, code: 0 }
    }

    fn certificate(cert: &Certificate) -> Outcome {
        Outcome {
            value: cert.to_json(),
            text: text::certificate(cert),
            code: if cert.holds() { 0 } else { 2 },
        }
    }
}

fn field(args: &FieldArgs) -> Result<FieldSpec, Error> {
    FieldSpec::new(args.p, args.k, None)
}

fn named(kind: SpaceKind, fa: &FieldArgs, n: Option<usize>, delta: Option<u32>) -> Result<MatrixSubspace, Error> {
    let f = field(fa)?;
    let fixed = match kind {
        SpaceKind::F | SpaceKind::G | SpaceKind::CalI => Some(3),
        SpaceKind::H | SpaceKind::H0 => Some(4),
        _ => None,
    };
    let n = n.or(fixed).ok_or_else(|| Error::Parse(format!("{kind} needs --n")))?;
    let delta = delta.map(|c| f.elem(c)).transpose()?;
    make_named(kind, &f, n, delta)
}

fn read_space(path: &Path) -> Result<MatrixSubspace, Error> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    onespec_core::json::subspace_from_str(&s)
}

fn optional<T>(r: Result<T, Error>) -> Value
where
    T: Into<Value>,
{
    r.map(Into::into).unwrap_or(Value::Null)
}

fn check(args: &SpaceArgs) -> Result<Outcome, Error> {
    let v = match (&args.input, args.catalog) {
        (Some(path), _) => read_space(path)?,
        (None, Some(kind)) => named(kind, &args.field, args.n, args.delta)?,
        (None, None) => unreachable!("clap requires one of --in and --catalog"),
    };
    let flags = spectral_classify(&v)?;
    let is_n3_char3 = v.n() == 3 && v.field().characteristic() == 3;
    let value = json!({
        "subspace": SubspaceJson::from_subspace(&v),
        "dim": v.dim(),
        "flags": {
            "one_spec": flags.one_spec,
            "onebar_spec": flags.onebar_spec,
            "trivial_spectrum": flags.trivial_spectrum,
            "nilpotent": flags.nilpotent,
            "singular_set_is_subspace": optional(singular_set_is_subspace(&v).map(|s| s.is_subspace)),
        },
        "invariants": {
            "rank1_span_dim": optional(rank1_span_dim(&v)),
            "isotropic": if is_n3_char3 { optional(isotropy_check(&v)) } else { Value::Null },
        },
    });
    let text = text::check(&v, &value);
    Ok(Outcome::ok(value, text))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Check(args) => check(args),
        Command::Catalog(args) => {
            let v = named(args.catalog, &args.field, args.n, args.delta)?;
            let value = serde_json::to_value(SubspaceJson::from_subspace(&v)).expect("plain data");
            Ok(Outcome::ok(value, text::subspace(&v)))
        }
        Command::Reduce { input } => {
            let v = read_space(input)?;
            let (label, trace) = reduce(&v)?;
            let value = json!({
                "label": LabelJson::from_label(&label),
                "witness": MatrixJson::from_matrix(&trace.accumulated),
                "steps": trace.steps.iter().map(|s| json!({
                    "description": s.description,
                    "conjugator": MatrixJson::from_matrix(&s.conjugator),
                })).collect::<Vec<_>>(),
                "params": trace.params.iter().map(|(k, x)| (k.clone(), json!(x.code()))).collect::<serde_json::Map<_, _>>(),
            });
            let text = text::reduction(&label, &trace);
            Ok(Outcome::ok(value, text))
        }
        Command::Similar { a, b } => {
            let cert = similar_bruteforce(&read_space(a)?, &read_space(b)?)?;
            Ok(Outcome::certificate(&cert))
        }
        Command::VerifyBound {
            n,
            field: fa,
            d,
            predicate,
            budget,
        } => {
            let f = field(fa)?;
            eprintln!("verify-bound: n = {n}, {f}, d = {d}, {predicate}, budget {budget} nodes");
            let cert = verify_dimension_bound(*n, &f, *d, *predicate, *budget)?;
            eprintln!("verify-bound: {} nodes in {} ms", cert.stats.nodes, cert.stats.ms);
            Ok(Outcome::certificate(&cert))
        }
        Command::Classify { field: fa } => {
            let f = field(fa)?;
            eprintln!("classify: enumerating maximal 1̄-spec subspaces of M_3 over {f}");
            let cert = classify_exhaustive_n3_char3(&f)?;
            eprintln!("classify: {} nodes in {} ms", cert.stats.nodes, cert.stats.ms);
            Ok(Outcome::certificate(&cert))
        }
        Command::Suite { criterion } => {
            let ids: Vec<u8> = if criterion.is_empty() {
                CRITERIA.iter().map(|c| c.0).collect()
            } else {
                criterion.clone()
            };
            let mut reports = Vec::with_capacity(ids.len());
            for id in ids {
                let r = run_criterion(id)?;
                eprintln!("{}", r.line());
                reports.push(r);
            }
            let passed = reports.iter().all(|r| r.passed);
            Ok(Outcome {
                value: Value::Array(reports.iter().map(|r| r.to_json()).collect()),
                text: reports.iter().map(|r| r.line() + "\n").collect(),
                code: if passed { 0 } else { 2 },
            })
        }
    }
}

/// Error class shown ahead of the message.
fn diagnostic(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) | Error::InvalidElement { .. } => "invalid input",
        Error::PreconditionViolated(_) => "precondition violated",
        Error::BudgetExceeded(_) => "budget exceeded (no verdict)",
        Error::GroupTooLarge { .. } | Error::TooLarge(_) => "search too large",
        _ => "error",
    }
}

fn main() -> ExitCode {
    // usage errors exit 1, keeping 2 for refuted verdicts
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w as usize)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{:#}", out.value),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("{}: {e}", diagnostic(&e));
            ExitCode::from(1)
        }
    }
}
