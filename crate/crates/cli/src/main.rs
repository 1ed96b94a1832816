//! `symmetrix`: batch front end for the symmetrization workbench.
//!
//! Exit codes: 0 when everything passes, 2 on a failed check or a rejected
//! non-homogeneous equation, 1 on usage and parse errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use symmetrix_core::dsl::{self, DslError, Script};
use symmetrix_core::engine::EngineError;
use symmetrix_core::field::RatFunc;
use symmetrix_core::maps::FieldMap;
use symmetrix_core::models::{ModelRegistry, Target};
use symmetrix_core::moments::{
    bell, build_quadratic_moment_family, check_closure, check_coordinate_independence, MomentError,
    MultiIndex,
};
use symmetrix_core::report::CheckReport;
use symmetrix_core::sampling::RatFuncSource;

#[derive(Parser)]
#[command(
    name = "symmetrix",
    version,
    about = "Symmetrization of functional equations and exact model checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Random tuples per check.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Script file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline script text.
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetrize every equation of a script at its degree.
    Symmetrize {
        #[command(flatten)]
        source: Source,
        /// Degree for equations without a `degree` directive.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        degree: Option<u32>,
    },
    /// Run the `specialize` directives of a script.
    Specialize {
        #[command(flatten)]
        source: Source,
    },
    /// Check a functional equation against a named model.
    Verify {
        /// One of mult, pi2, twisted, moment1, spadesuit, classical, order2, parallelogram.
        target: String,
        #[arg(long)]
        model: String,
    },
    /// Bell expansions and moment-family checks.
    Moments {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        rank: u64,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Second-order derivation used for every index: `d` or `dd`.
        #[arg(long, default_value = "d")]
        model: String,
    },
    /// Parse a script and print it canonically.
    Parse {
        #[command(flatten)]
        source: Source,
    },
}

enum Failure {
    Usage(String),
    Rejected(String),
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::NonHomogeneous { .. } => Failure::Rejected(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<dsl::ScriptError> for Failure {
    fn from(e: dsl::ScriptError) -> Self {
        match e {
            dsl::ScriptError::Engine(inner) => inner.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Output {
    format: Format,
    text: String,
    all_pass: bool,
}

impl Output {
    fn line(&mut self, text: impl std::fmt::Display, record: serde_json::Value) {
        match self.format {
            Format::Text => writeln!(self.text, "{text}"),
            Format::Json => writeln!(self.text, "{record}"),
        }
        .expect("writing to a String");
    }

    fn report(&mut self, r: &CheckReport) {
        self.all_pass &= r.passed();
        let record = serde_json::to_value(r).expect("reports serialize");
        self.line(r, record);
    }
}

fn render_error(origin: &str, src: &str, e: &DslError) -> String {
    let line = src.lines().nth(e.pos.line.saturating_sub(1)).unwrap_or("");
    let caret = " ".repeat(e.pos.column.saturating_sub(1));
    format!("{origin}:{e}\n  {line}\n  {caret}^")
}

fn load(source: &Source) -> Result<Script, Failure> {
    let (origin, text) = match (&source.input, &source.expr) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        (None, Some(text)) => ("<expr>".to_string(), text.clone()),
        (None, None) => {
            return Err(Failure::Usage(
                "one of --input or --expr is required".into(),
            ))
        }
    };
    dsl::parse(&text).map_err(|e| Failure::Usage(render_error(&origin, &text, &e)))
}

fn symmetrize(out: &mut Output, script: &mut Script, degree: Option<u32>) -> Result<(), Failure> {
    if script.equations.is_empty() {
        return Err(Failure::Usage("script declares no equation".into()));
    }
    let names: Vec<String> = script.equations.iter().map(|e| e.name.clone()).collect();
    for name in names {
        let n = match (script.degree(&name), degree) {
            (Some(n), _) => n,
            (None, Some(n)) => {
                script.degrees.push((name.clone(), n));
                n
            }
            (None, None) => {
                return Err(Failure::Usage(format!(
                    "equation {name} has no degree directive; pass --degree"
                )))
            }
        };
        let result = script.symmetrized(&name)?;
        out.line(
            format_args!("{name}: {result}"),
            json!({"equation": name, "degree": n, "result": result.to_string()}),
        );
    }
    Ok(())
}

fn specialize(out: &mut Output, script: &Script) -> Result<(), Failure> {
    if script.specializations.is_empty() {
        return Err(Failure::Usage("script has no specialize directive".into()));
    }
    for spec in &script.specializations {
        let result = script.run_specialization(spec)?;
        let at: Vec<String> = spec.at.iter().map(ToString::to_string).collect();
        let at = format!("({})", at.join(", "));
        out.line(
            format_args!("{} at {at}: {result}", spec.equation),
            json!({"equation": spec.equation, "at": at, "with": spec.with, "result": result.to_string()}),
        );
    }
    Ok(())
}

fn verify(
    out: &mut Output,
    target: &str,
    model: &str,
    samples: usize,
    seed: u64,
) -> Result<(), Failure> {
    let target: Target = target
        .parse()
        .map_err(|e: symmetrix_core::models::ModelError| Failure::Usage(e.to_string()))?;
    let reports = ModelRegistry::builtin()
        .verify(model, target, samples, seed)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    for r in &reports {
        out.report(r);
    }
    Ok(())
}

fn moments(
    out: &mut Output,
    rank: usize,
    bound: u32,
    model: &str,
    samples: usize,
    seed: u64,
) -> Result<(), Failure> {
    let d: FieldMap<RatFunc> = match model {
        "d" => FieldMap::FormalDerivative,
        "dd" => FieldMap::derivative_power(2),
        other => {
            return Err(Failure::Usage(format!(
                "unknown moment model `{other}` (available: d, dd)"
            )))
        }
    };
    let indices = MultiIndex::up_to(rank, bound);
    for alpha in &indices {
        let b = bell(alpha);
        out.line(
            &b,
            json!({"index": alpha.to_string(), "bell": b.expansion.to_string()}),
        );
    }
    for alpha in indices.iter().filter(|a| !a.is_zero()) {
        out.report(&check_coordinate_independence(alpha));
        out.report(&check_closure(alpha));
    }
    let mut source = RatFuncSource::seeded(seed);
    match build_quadratic_moment_family(rank, |_| d.clone(), bound, samples, &mut source) {
        Ok((_, reports)) => reports.iter().for_each(|r| out.report(r)),
        Err(MomentError::NotOrderTwo { index, witness }) => out.report(&CheckReport::fail(
            format!("order2 d_{index}"),
            samples,
            witness,
        )),
        Err(e) => return Err(Failure::Usage(e.to_string())),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let mut out = Output {
        format: cli.format,
        text: String::new(),
        all_pass: true,
    };
    let samples =
        usize::try_from(cli.samples).map_err(|_| Failure::Usage("--samples too large".into()))?;
    match cli.command {
        Command::Symmetrize { source, degree } => {
            symmetrize(&mut out, &mut load(&source)?, degree)?
        }
        Command::Specialize { source } => specialize(&mut out, &load(&source)?)?,
        Command::Verify { target, model } => verify(&mut out, &target, &model, samples, cli.seed)?,
        Command::Moments { rank, bound, model } => {
            moments(&mut out, rank as usize, bound, &model, samples, cli.seed)?
        }
        Command::Parse { source } => {
            let text = dsl::print(&load(&source)?);
            match out.format {
                Format::Text => out.text.push_str(&text),
                Format::Json => out.line("", json!({"script": text})),
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("rejected: {msg}");
            ExitCode::from(2)
        }
    }
}
