//! `skein`: HOMFLYPT values of braid closures, coloured invariants and the
//! annulus recursion from the command line.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use skein_core::annulus::{build_psi, quantum_dimension, Gamma, Notation, Orientation, TensorElement};
use skein_core::coefficients::SkeinValue;
use skein_core::combinatorics::Partition;
use skein_core::homfly::{colored_evaluation, homfly_evaluation, BraidWord, ColoredEvaluation, Normalization};
use skein_core::ov::{partition_function, solve_kernel, Link, PartitionFunction};
use skein_core::verify::{run_all, Fixture, SuiteConfig, DEFAULT_SEED};
use skein_core::Error;

#[derive(Parser)]
#[command(name = "skein", version, about = "Exact HOMFLYPT skein computations")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Truncation degree.
    #[arg(long, global = true, default_value_t = 6)]
    degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = NormalizationArg::Framed)]
    normalization: NormalizationArg,
    /// Orientation used when closing off into the three-sphere.
    #[arg(long, global = true, value_enum, default_value_t = OrientationArg::Standard)]
    orientation: OrientationArg,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Plain ASCII tokens (O, gamma, W[2,1]) instead of Unicode.
    #[arg(long, global = true)]
    ascii: bool,
}

impl Config {
    fn notation(&self) -> Notation {
        if self.ascii {
            Notation::Ascii
        } else {
            Notation::Unicode
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Framed HOMFLYPT value of a braid closure.
    Homfly {
        /// Braid as `n=2; w=1,1` or `{"strands":2,"word":[1,1]}`.
        braid: String,
    },
    /// Coloured value of a braid closure, every component carrying one colour.
    Colored {
        braid: String,
        /// Colour as `[2]` or `[1,1]`; sizes 1 and 2 are supported.
        partition: String,
    },
    /// The annulus recursion.
    #[command(subcommand)]
    Ov(OvCommand),
}

#[derive(Subcommand)]
enum OvCommand {
    /// The diagonal solution `sum gamma^|l| W_l (x) W_l` up to the degree.
    Psi,
    /// Kernel of the operator on bidegree `(degree, degree)`.
    Kernel,
    /// Partition function of the unknot or the Hopf link.
    PartitionFunction {
        #[arg(long, default_value = "unknot")]
        link: String,
    },
    /// Run the verification suite; one JSON report per line.
    Verify {
        /// Include measured runtimes; reports are then no longer bit-identical.
        #[arg(long)]
        timings: bool,
        /// Corrupt one identity on purpose (negative control).
        #[arg(long, value_enum, hide = true)]
        fixture: Option<FixtureArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizationArg {
    Framed,
    Unframed,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Standard,
    Conjugated,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureArg {
    FlipContentSign,
    DropConjugate,
    UnitCauchyWeights,
    SwapIdempotentLabels,
    AbsoluteContent,
    MutateBraids,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Framed => Normalization::Framed,
            NormalizationArg::Unframed => Normalization::Unframed,
        }
    }
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Standard => Orientation::Standard,
            OrientationArg::Conjugated => Orientation::Conjugated,
        }
    }
}

impl From<FixtureArg> for Fixture {
    fn from(f: FixtureArg) -> Self {
        match f {
            FixtureArg::FlipContentSign => Fixture::FlipContentSign,
            FixtureArg::DropConjugate => Fixture::DropConjugate,
            FixtureArg::UnitCauchyWeights => Fixture::UnitCauchyWeights,
            FixtureArg::SwapIdempotentLabels => Fixture::SwapIdempotentLabels,
            FixtureArg::AbsoluteContent => Fixture::AbsoluteContent,
            FixtureArg::MutateBraids => Fixture::MutateBraids,
        }
    }
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    ChecksFailed,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

/// `O^k = value` when the value is a power of the unknot, otherwise the value.
fn render_value(v: &SkeinValue, max_power: usize, notation: Notation) -> String {
    let o = SkeinValue::unknot();
    let circle = notation.unknot();
    (1..=max_power as u32)
        .find(|&k| o.pow(k) == *v)
        .map(|k| match k {
            1 => format!("{circle} = {v}"),
            _ => format!("{circle}^{k} = {v}"),
        })
        .unwrap_or_else(|| v.to_string())
}

fn print_evaluation(out: &mut String, e: &ColoredEvaluation, strands: usize, cfg: &Config) -> Result<()> {
    match cfg.format.unwrap_or(Format::Text) {
        Format::Json => writeln!(out, "{}", e.to_json())?,
        Format::Csv => {
            writeln!(out, "value,framing_monomial,normalization")?;
            let n = e.to_json()["normalization"].as_str().unwrap_or_default().to_string();
            writeln!(out, "{}", csv_row(&[e.value.to_string(), e.framing_monomial.to_string(), n]))?;
        }
        Format::Text => {
            writeln!(out, "{}", render_value(&e.value, strands, cfg.notation()))?;
            let n = e.to_json()["normalization"].as_str().unwrap_or_default().to_string();
            writeln!(out, "framing monomial: {}", e.framing_monomial)?;
            writeln!(out, "normalization: {n}")?;
        }
    }
    Ok(())
}

fn parse_braid(s: &str) -> Result<BraidWord> {
    s.parse::<BraidWord>().with_context(|| format!("cannot read braid `{s}`"))
}

fn cmd_homfly(out: &mut String, braid: &str, cfg: &Config) -> Result<Status> {
    let b = parse_braid(braid)?;
    let e = homfly_evaluation(&b, cfg.normalization.into())?;
    print_evaluation(out, &e, b.strands(), cfg)?;
    Ok(Status::Ok)
}

fn cmd_colored(out: &mut String, braid: &str, partition: &str, cfg: &Config) -> Result<Status> {
    let b = parse_braid(braid)?;
    let lambda: Partition = partition.parse().with_context(|| format!("cannot read partition `{partition}`"))?;
    let e = colored_evaluation(&b, &lambda, cfg.normalization.into())?;
    print_evaluation(out, &e, 0, cfg)?;
    Ok(Status::Ok)
}

fn print_tensor(out: &mut String, x: &TensorElement, cfg: &Config) -> Result<()> {
    match cfg.format.unwrap_or(Format::Text) {
        Format::Text => writeln!(out, "{}", x.render(cfg.notation()))?,
        Format::Json => writeln!(out, "{}", x.to_json())?,
        Format::Csv => {
            writeln!(out, "left,right,coeff,a1,a2,gamma")?;
            for e in x.to_json().as_array().into_iter().flatten() {
                let fields: Vec<String> = ["left", "right", "coeff", "a1", "a2", "gamma"]
                    .iter()
                    .map(|k| match &e[*k] {
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                writeln!(out, "{}", csv_row(&fields))?;
            }
        }
    }
    Ok(())
}

fn cmd_kernel(out: &mut String, cfg: &Config) -> Result<Status> {
    let basis = solve_kernel(cfg.degree);
    match cfg.format.unwrap_or(Format::Text) {
        Format::Json => {
            let all: Vec<serde_json::Value> = basis.iter().map(TensorElement::to_json).collect();
            writeln!(out, "{}", serde_json::Value::Array(all))?;
        }
        Format::Csv => {
            writeln!(out, "vector,left,right,coeff")?;
            for (k, v) in basis.iter().enumerate() {
                for ((l, m), c) in v.terms() {
                    let c = c.render(cfg.notation());
                    writeln!(out, "{}", csv_row(&[k.to_string(), l.to_string(), m.to_string(), c]))?;
                }
            }
        }
        Format::Text => {
            writeln!(out, "kernel at bidegree ({0}, {0}): dimension {1}", cfg.degree, basis.len())?;
            for v in &basis {
                writeln!(out, "{}", v.render(cfg.notation()))?;
            }
        }
    }
    Ok(Status::Ok)
}

/// The unknot under the conjugated orientation is evaluated by the conjugated
/// product directly; the engine cross-check applies to the standard one.
fn oriented_partition_function(link: Link, cfg: &Config) -> Result<PartitionFunction> {
    let mut pf = partition_function(link, cfg.degree)?;
    match (Orientation::from(cfg.orientation), link) {
        (Orientation::Standard, _) => {}
        (Orientation::Conjugated, Link::Unknot) => {
            for (l, c) in pf.coefficients.iter_mut() {
                c.value = quantum_dimension(l, Orientation::Conjugated);
            }
        }
        (Orientation::Conjugated, Link::Hopf) => {
            anyhow::bail!("the conjugated orientation is only available for the unknot")
        }
    }
    Ok(pf)
}

fn cmd_partition_function(out: &mut String, link: &str, cfg: &Config) -> Result<Status> {
    let link: Link = link.parse()?;
    let pf = oriented_partition_function(link, cfg)?;
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => writeln!(out, "{}", pf.to_json())?,
        Format::Csv => {
            writeln!(out, "partition,value,framing_monomial")?;
            for (l, c) in &pf.coefficients {
                writeln!(out, "{}", csv_row(&[l.to_string(), c.value.to_string(), c.framing_monomial.to_string()]))?;
            }
        }
        Format::Text => {
            for (l, c) in &pf.coefficients {
                let w = cfg.notation().basis(l);
                writeln!(out, "P[{w}] = {} (framing monomial {})", c.value, c.framing_monomial)?;
            }
        }
    }
    Ok(Status::Ok)
}

fn cmd_verify(out: &mut String, timings: bool, fixture: Option<FixtureArg>, cfg: &Config) -> Result<Status> {
    let suite = SuiteConfig { seed: cfg.seed, fixture: fixture.map(Fixture::from), ..SuiteConfig::new(cfg.degree) };
    let reports = run_all(&suite)?;
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            for r in &reports {
                writeln!(out, "{}", r.to_json(timings))?;
            }
        }
        Format::Csv => {
            writeln!(out, "check,status,witness,detail,seed{}", if timings { ",runtime_ms" } else { "" })?;
            for r in &reports {
                let mut row = vec![
                    r.check.clone(),
                    if r.passed { "pass" } else { "fail" }.to_string(),
                    r.witness.clone().unwrap_or_default(),
                    r.detail.clone(),
                    r.seed.to_string(),
                ];
                if timings {
                    row.push(format!("{:.3}", r.runtime_ms));
                }
                writeln!(out, "{}", csv_row(&row))?;
            }
        }
        Format::Text => {
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let time = if timings { format!(" [{:.3} ms]", r.runtime_ms) } else { String::new() };
                writeln!(out, "{status} {}: {}{time}", r.check, r.detail)?;
                if let Some(w) = &r.witness {
                    writeln!(out, "     witness: {w}")?;
                }
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed) { Status::Ok } else { Status::ChecksFailed })
}

fn run(out: &mut String, cli: &Cli) -> Result<Status> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Homfly { braid } => cmd_homfly(out, braid, cfg),
        Command::Colored { braid, partition } => cmd_colored(out, braid, partition, cfg),
        Command::Ov(OvCommand::Psi) => {
            print_tensor(out, &build_psi(cfg.degree, Gamma::Formal), cfg)?;
            Ok(Status::Ok)
        }
        Command::Ov(OvCommand::Kernel) => cmd_kernel(out, cfg),
        Command::Ov(OvCommand::PartitionFunction { link }) => cmd_partition_function(out, link, cfg),
        Command::Ov(OvCommand::Verify { timings, fixture }) => cmd_verify(out, *timings, *fixture, cfg),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ColorScope(_) | Error::DegreeScope { .. } | Error::ReductionLimit { .. }) => 3,
        Some(
            Error::Parse { .. }
            | Error::InvalidBraid(_)
            | Error::InvalidPartition(_)
            | Error::UnsupportedLink(_),
        ) => 2,
        Some(_) => 1,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&mut out, &cli);
    // a closed pipe on stdout is not an error of the computation
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
