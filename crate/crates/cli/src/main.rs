use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lmkit_cli::checks::{run_suite, Suite};
use lmkit_cli::corpus::{self, chain_in, CorpusEntry};
use lmkit_cli::dot;
use lmkit_cli::spec::{self, AlgebraSpec, SpecError};
use lmkit_core::boolean::boolean_congruences;
use lmkit_core::congruence::{all_congruences, is_principal, principal_table, Mode};
use lmkit_core::duality::{chain_decomposition, validate_space};
use lmkit_core::{Dual, LmAlgebra};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "lmkit", version, about = "Finite LM_n-algebras, their duals and congruences")]
struct Cli {
    /// Write the main output here instead of stdout (a directory for `gen corpus`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest dual space for exhaustive subset scans.
    #[arg(long, global = true, default_value_t = 20)]
    max_space_size: usize,
    /// Seed for the order in which corpus algebras are visited.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit an algebra file, or the whole corpus.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Parse and validate an algebra.
    Validate { input: String },
    /// Print the dual space.
    Dual { input: String },
    /// List the congruences with dual subsets and principal witnesses.
    Con {
        input: String,
        #[arg(long)]
        theta: bool,
    },
    /// List the Boolean congruences.
    Boolean { input: String },
    /// Run the theorem checks on the corpus or on the given inputs.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        inputs: Vec<String>,
        /// Omit timings from the JSON report.
        #[arg(long)]
        no_timing: bool,
    },
    /// Graphviz output.
    Dot {
        input: String,
        #[arg(long, value_enum, default_value_t = DotTarget::Algebra)]
        what: DotTarget,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// The n-element chain.
    Chain { n: usize },
    /// The subalgebra of the n-element chain on the given levels.
    Subchain { n: usize, levels: Vec<usize> },
    /// Product of chains, smaller ones embedded in the largest.
    Product { sizes: Vec<usize> },
    /// Every corpus algebra, one file each.
    Corpus,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotTarget {
    Algebra,
    Space,
    Con,
}

#[derive(Debug, Error)]
enum AppError {
    #[error("{0}")]
    Validation(String),
    #[error("{0} theorem check failures")]
    Theorem(usize),
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    Input(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Validation(_) => 1,
            AppError::Theorem(_) | AppError::Check(_) => 2,
            AppError::Input(_) => 3,
        }
    }
}

impl From<SpecError> for AppError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Parse(_) => AppError::Input(e.to_string()),
            SpecError::Validation(_) => AppError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

/// A file path, or the name of a corpus algebra.
fn resolve(input: &str) -> Result<(String, LmAlgebra), AppError> {
    let path = Path::new(input);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return Ok((input.to_owned(), spec::load(&text)?));
    }
    match corpus::find(input) {
        Some(CorpusEntry {
            name,
            algebra: Ok(a),
        }) => Ok((name, a)),
        _ => Err(AppError::Input(format!(
            "`{input}` is neither a file nor a corpus algebra"
        ))),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), AppError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), AppError> {
    match &cli.command {
        Command::Gen { what } => gen(cli, what),
        Command::Validate { input } => {
            let (name, a) = resolve(input)?;
            let centre = a.boolean_elements().map_err(|e| AppError::Validation(e.to_string()))?;
            emit(
                cli,
                &format!(
                    "{name}: valid LM_{} algebra with {} elements, {} Boolean\n",
                    a.n(),
                    a.len(),
                    centre.len()
                ),
            )
        }
        Command::Dual { input } => {
            let (_, a) = resolve(input)?;
            emit(cli, &describe_dual(&Dual::new(a)))
        }
        Command::Con { input, theta } => {
            let (_, a) = resolve(input)?;
            let mode = if *theta { Mode::Theta } else { Mode::Lm };
            describe_con(cli, a, mode)
        }
        Command::Boolean { input } => {
            let (_, a) = resolve(input)?;
            let dual = Dual::new(a);
            let records = boolean_congruences(&dual).map_err(|e| AppError::Validation(e.to_string()))?;
            let mut out = String::new();
            let (alg, p) = (dual.algebra(), dual.space().poset());
            for r in records {
                writeln!(
                    out,
                    "generator {:<12} Y = {{{}}}  classes {}",
                    alg.name(r.generator),
                    p.names_of(r.dual_subset).join(","),
                    r.congruence.describe(alg)
                )
                .unwrap();
            }
            emit(cli, &out)
        }
        Command::Check {
            suite,
            inputs,
            no_timing,
        } => {
            let mut entries = if inputs.is_empty() {
                corpus::default_corpus()
            } else {
                inputs
                    .iter()
                    .map(|i| match resolve(i) {
                        Ok((name, a)) => CorpusEntry {
                            name,
                            algebra: Ok(a),
                        },
                        Err(e) => CorpusEntry {
                            name: i.clone(),
                            algebra: Err(e.to_string()),
                        },
                    })
                    .collect()
            };
            if let Some(seed) = cli.seed {
                corpus::shuffle(&mut entries, seed);
            }
            let mut report = run_suite(&entries, *suite, cli.max_space_size);
            if *no_timing {
                report = report.without_timing();
            }
            print!("{}", report.to_text());
            if let Some(path) = &cli.out {
                std::fs::write(path, report.to_json())?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(AppError::Theorem(report.total_failures))
            }
        }
        Command::Dot { input, what } => {
            let (name, a) = resolve(input)?;
            let text = match what {
                DotTarget::Algebra => dot::algebra_dot(&a, &name),
                DotTarget::Space => {
                    let dual = Dual::new(a);
                    dot::space_dot(dual.space(), &format!("X({name})"))
                }
                DotTarget::Con => {
                    let dual = Dual::new(a.clone());
                    let con = all_congruences(&dual, Mode::Lm, cli.max_space_size)
                        .map_err(|e| AppError::Check(e.to_string()))?;
                    dot::congruence_dot(&con, &a, &format!("Con({name})"))
                }
            };
            emit(cli, &text)
        }
    }
}

fn gen(cli: &Cli, what: &Gen) -> Result<(), AppError> {
    let spec = match what {
        Gen::Chain { n } => AlgebraSpec::Chain { n: *n },
        Gen::Subchain { n, levels } => AlgebraSpec::Subchain {
            n: *n,
            levels: levels.clone(),
        },
        Gen::Product { sizes } => {
            let n = sizes.iter().copied().max().unwrap_or(0);
            AlgebraSpec::Product {
                factors: sizes.iter().map(|&k| chain_in(k, n)).collect(),
            }
        }
        Gen::Corpus => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("corpus-out"));
            std::fs::create_dir_all(&dir)?;
            for (name, spec) in corpus::generated_specs() {
                std::fs::write(dir.join(format!("{name}.json")), spec::to_json(&spec) + "\n")?;
            }
            for (name, text) in corpus::HAND_WRITTEN {
                std::fs::write(dir.join(format!("{name}.json")), text)?;
            }
            println!("wrote corpus to {}", dir.display());
            return Ok(());
        }
    };
    spec::build(&spec)?;
    emit(cli, &(spec::to_json(&spec) + "\n"))
}

fn describe_dual(dual: &Dual) -> String {
    let (a, x) = (dual.algebra(), dual.space());
    let p = x.poset();
    let mut out = String::new();
    for (k, &f) in dual.spectrum().filters().iter().enumerate() {
        let images: Vec<String> = x
            .indices()
            .map(|i| format!("f{i}={}", p.name(x.f(i, k))))
            .collect();
        writeln!(
            out,
            "{} = {{{}}}  {}",
            p.name(k),
            a.poset().names_of(f).join(","),
            images.join(" ")
        )
        .unwrap();
    }
    for (lo, hi) in p.covers() {
        writeln!(out, "{} < {}", p.name(lo), p.name(hi)).unwrap();
    }
    let report = validate_space(x);
    writeln!(out, "axioms: {report}").unwrap();
    if let Ok(blocks) = chain_decomposition(x) {
        let parts: Vec<String> = blocks
            .iter()
            .map(|&b| format!("{{{}}}", p.names_of(b).join(",")))
            .collect();
        writeln!(out, "maximal chains: {}", parts.join(" ")).unwrap();
    }
    out
}

fn describe_con(cli: &Cli, a: LmAlgebra, mode: Mode) -> Result<(), AppError> {
    let dual = Dual::new(a);
    let con = all_congruences(&dual, mode, cli.max_space_size)
        .map_err(|e| AppError::Check(e.to_string()))?;
    let table = principal_table(dual.algebra(), mode);
    let (alg, p) = (dual.algebra(), dual.space().poset());
    let mut out = String::new();
    for (k, c) in con.congruences().iter().enumerate() {
        let witness = match is_principal(&dual, c, &table) {
            Some(w) => format!("Theta({}, {})", alg.name(w.a), alg.name(w.b)),
            None => "not principal".into(),
        };
        writeln!(
            out,
            "{:<8} Y = {{{}}}  {witness}  classes {}",
            con.order().name(k),
            p.names_of(con.dual_subset(k)).join(","),
            c.describe(alg)
        )
        .unwrap();
    }
    emit(cli, &out)
}
