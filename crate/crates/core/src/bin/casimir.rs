//! Command-line front end: algebra dumps, lifted invariant matrices,
//! normalization traces, closed-form bases, verification reports, Casimir
//! certification and the acceptance suite.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::{One, Signed};
use serde_json::{json, Value};

use casimir_core::algebra::{build_algebra, AlgebraKind, AlgebraSpec};
use casimir_core::closed_form::{basis_for, symmetrize_t0};
use casimir_core::error::Error;
use casimir_core::lifted::lifted_invariant;
use casimir_core::normalization::{recombine, run_normalization_with_trace};
use casimir_core::render::{self, Format};
use casimir_core::sample::DEFAULT_SEED;
use casimir_core::suite;
use casimir_core::uea::casimir_check;
use casimir_core::verifier::{group_invariance_check, verify_basis};
use casimir_core::rational;

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Exact generalized Casimir operators of triangular Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the basis and nonzero brackets of an algebra.
    Algebra(AlgebraArgs),
    /// Print the lifted invariant matrix B*X*B^-1 or a single entry.
    Lifted(LiftedArgs),
    /// Run the normalization and print the solve trace and recombined basis.
    Normalize(NormalizeArgs),
    /// Emit the closed-form invariant basis.
    Basis(BasisArgs),
    /// Certify a basis and print a machine-readable report.
    Verify(VerifyArgs),
    /// Check that every symmetrized strict-family element is central.
    CasimirCheck(CasimirCheckArgs),
    /// Run the acceptance battery and print an aggregated JSON report.
    Suite(SuiteArgs),
}

fn parse_kind(s: &str) -> Result<AlgebraKind, String> {
    AlgebraKind::parse(s).ok_or_else(|| format!("unknown kind '{s}', expected t0, t or st"))
}

fn parse_n(s: &str) -> Result<u32, String> {
    let n: u32 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if n < 2 {
        return Err("n must be >= 2".into());
    }
    Ok(n)
}

fn parse_trials(s: &str) -> Result<u32, String> {
    let t: u32 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if t < 1 {
        return Err("trials must be >= 1".into());
    }
    Ok(t)
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::parse(s).ok_or_else(|| format!("unknown format '{s}', expected text, json or latex"))
}

#[derive(Args)]
struct AlgebraArgs {
    /// Algebra family: t0, t or st.
    #[arg(long, value_parser = parse_kind)]
    kind: AlgebraKind,
    /// Matrix size (>= 2).
    #[arg(long, value_parser = parse_n)]
    n: u32,
    /// Emit the JSON schema instead of text.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LiftedArgs {
    /// Algebra family: t0 or t.
    #[arg(long, value_parser = parse_kind)]
    kind: AlgebraKind,
    #[arg(long, value_parser = parse_n)]
    n: u32,
    /// Print only entry (i, j), one-based.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    entry: Option<Vec<u32>>,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NormalizeArgs {
    /// Algebra family: t0 or t.
    #[arg(long, value_parser = parse_kind)]
    kind: AlgebraKind,
    #[arg(long, value_parser = parse_n)]
    n: u32,
    /// Print every solved parameter, not just the subsystem summary.
    #[arg(long)]
    show_steps: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: AlgebraKind,
    #[arg(long, value_parser = parse_n)]
    n: u32,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: AlgebraKind,
    #[arg(long, value_parser = parse_n)]
    n: u32,
    /// Random group elements per basis element.
    #[arg(long, default_value = "20", value_parser = parse_trials)]
    trials: u32,
    /// PRNG seed; CASIMIR_SEED overrides the default when the flag is absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Skip the random-orbit trials, keep the symbolic criterion and ranks.
    #[arg(long)]
    symbolic_only: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CasimirCheckArgs {
    #[arg(long, value_parser = parse_n)]
    n: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    output: Option<PathBuf>,
}

enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidSize(_) | Error::UnsupportedKind(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
        // A closed pipe on the reading side is not our failure.
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("CASIMIR_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(DEFAULT_SEED)
}

fn emit(text: &str, output: Option<&Path>) -> io::Result<()> {
    use io::Write as _;
    match output {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => writeln!(io::stdout(), "{text}"),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Algebra(args) => {
            let alg = build_algebra(args.kind, args.n)?;
            let text = if args.json {
                pretty(&alg.to_json())
            } else {
                algebra_text(&alg)
            };
            emit(&text, args.output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lifted(args) => {
            let lifted = lifted_invariant(args.kind, args.n)?;
            let positions: Vec<(u32, u32)> = match &args.entry {
                Some(pair) => {
                    let (i, j) = (pair[0], pair[1]);
                    if i < 1 || j < 1 || i > args.n || j > args.n {
                        return Err(Error::VerificationFailure(format!(
                            "entry ({i}, {j}) is outside the {0}x{0} matrix",
                            args.n
                        ))
                        .into());
                    }
                    vec![(i, j)]
                }
                None => lifted.significant_positions(),
            };
            let text = match args.format {
                Format::Text => positions
                    .iter()
                    .map(|&(i, j)| format!("I_{i}{j} = {}", lifted.entry(i, j)))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Latex => positions
                    .iter()
                    .map(|&(i, j)| {
                        format!(
                            "I_{{{i}{j}}} = {}",
                            render::latex_ratexpr(lifted.entry(i, j))
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Json => pretty(&json!({
                    "kind": args.kind.as_str(),
                    "n": args.n,
                    "entries": positions
                        .iter()
                        .map(|&(i, j)| json!({"i": i, "j": j, "value": lifted.entry(i, j).to_json()}))
                        .collect::<Vec<_>>(),
                })),
            };
            emit(&text, args.output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Normalize(args) => {
            let (result, steps) = run_normalization_with_trace(args.kind, args.n)?;
            let mut lines = vec![format!(
                "normalization of {}({})",
                args.kind.as_str(),
                args.n
            )];
            for step in &steps {
                let solved: Vec<String> =
                    step.solutions.iter().map(|(v, _)| v.to_string()).collect();
                lines.push(format!("step {}: solves {}", step.name, solved.join(", ")));
                if args.show_steps {
                    for (v, e) in &step.solutions {
                        lines.push(format!("  {v} = {e}"));
                    }
                }
            }
            lines.push("raw invariant values:".into());
            for (idx, value) in result.invariants.iter().enumerate() {
                lines.push(format!("  [{}] {}", idx + 1, value));
            }
            lines.push("recombined basis:".into());
            for e in recombine(&result) {
                lines.push(format!("  {e}"));
            }
            lines.push("genericity assumptions (nonvanishing):".into());
            for g in &result.genericity {
                lines.push(format!("  {g}"));
            }
            emit(&lines.join("\n"), args.output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis(args) => {
            let basis = basis_for(args.kind, args.n)?;
            let text = match args.format {
                Format::Text => render::basis_text(&basis),
                Format::Json => pretty(&render::basis_json(&basis)),
                Format::Latex => render::latex_basis(args.kind, args.n)?.join("\n"),
            };
            emit(&text, args.output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let seed = resolve_seed(args.seed);
            let alg = build_algebra(args.kind, args.n)?;
            let basis = basis_for(args.kind, args.n)?;
            let (reports, cert) = match verify_basis(&alg, &basis) {
                Ok(pair) => pair,
                Err(e @ Error::VerificationFailure(_)) => {
                    let v = json!({
                        "kind": args.kind.as_str(),
                        "n": args.n,
                        "pass": false,
                        "error": e.to_string(),
                    });
                    emit(&pretty(&v), args.output.as_deref())?;
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e.into()),
            };
            let mut v = render::verify_json(args.kind, args.n, &reports, &cert);
            let mut pass = true;
            if !args.symbolic_only {
                let transported = args.kind == AlgebraKind::St;
                let map = suite::diagonal_substitution(args.n);
                for (i, el) in basis.elements.iter().enumerate() {
                    let (check_kind, f) = if transported {
                        (AlgebraKind::T, el.subst(&map)?)
                    } else {
                        (args.kind, el.clone())
                    };
                    let ok = group_invariance_check(check_kind, args.n, &f, args.trials, seed)?;
                    v["elements"][i]["orbit_pass"] = json!(ok);
                    pass &= ok;
                }
                v["orbit"] = json!({
                    "trials": args.trials,
                    "seed": seed,
                    "transported": transported,
                });
                if !pass {
                    v["pass"] = json!(false);
                }
            }
            emit(&pretty(&v), args.output.as_deref())?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::CasimirCheck(args) => {
            let alg = build_algebra(AlgebraKind::T0, args.n)?;
            let elements = symmetrize_t0(args.n)?;
            let mut lines = vec![
                format!("casimir check for t0({})", args.n),
                "element  terms  central".into(),
            ];
            let mut passed = 0usize;
            for (idx, c) in elements.iter().enumerate() {
                let ok = casimir_check(c, &alg)?;
                if ok {
                    passed += 1;
                }
                lines.push(format!(
                    "{:<7}  {:<5}  {}",
                    idx + 1,
                    c.num_terms(),
                    if ok { "pass" } else { "FAIL" }
                ));
            }
            lines.push(format!("total: {passed}/{} central", elements.len()));
            emit(&lines.join("\n"), args.output.as_deref())?;
            Ok(if passed == elements.len() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Suite(args) => {
            let mut outcomes = Vec::new();
            for id in 1..=suite::CRITERION_COUNT {
                let o = suite::run_criterion(id);
                eprintln!(
                    "[{}/{}] {} {} ({:.1}s)",
                    o.id,
                    suite::CRITERION_COUNT,
                    o.name,
                    if o.pass { "pass" } else { "FAIL" },
                    o.elapsed_secs
                );
                outcomes.push(o);
            }
            let all_pass = outcomes.iter().all(|o| o.pass);
            emit(&pretty(&suite::outcomes_json(&outcomes)), args.output.as_deref())?;
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn algebra_text(alg: &AlgebraSpec) -> String {
    let mut lines = vec![
        format!("{}({}): dim {}", alg.kind.as_str(), alg.n, alg.dim()),
        format!(
            "basis: {}",
            alg.basis
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
        format!(
            "dual coordinates: {}",
            (0..alg.dim())
                .map(|i| alg.dual_coordinate(i).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
    ];
    for (a, b, res) in alg.brackets_upper() {
        let mut rhs = String::new();
        for (pos, (c, coeff)) in res.iter().enumerate() {
            let label = alg.basis[*c].to_string();
            let mag = coeff.abs();
            let part = if mag.is_one() {
                label
            } else {
                format!("{}*{}", rational::to_string(&mag), label)
            };
            if pos == 0 {
                if coeff.is_negative() {
                    rhs.push('-');
                }
            } else {
                rhs.push_str(if coeff.is_negative() { " - " } else { " + " });
            }
            rhs.push_str(&part);
        }
        lines.push(format!("[{}, {}] = {rhs}", alg.basis[a], alg.basis[b]));
    }
    lines.join("\n")
}
