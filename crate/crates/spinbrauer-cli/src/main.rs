use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use spinbrauer::cellularity::{irreducible_indices, modmult_prediction, phi_ell};
use spinbrauer::diagram_core::{cell_decode, cell_encode, enumerate_basis, parse_diagram, render_ascii, PartitionLE2};
use spinbrauer::mult_engine::{evaluate_at, multiply_elements, spin_involution};
use spinbrauer::pin_realization::{realize_diagram, SpaceSpec};
use spinbrauer::verification::{self as v, CircuitType, InvolutionKind, MapKind, Mode, VerificationReport};
use spinbrauer::{AlgebraElement, SpinDiagram};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "spinbrauer", version, about = "Exact computations in the spin-Brauer algebra")]
struct Cli {
    /// TOML file with defaults for bounds, output format, seed and fixture directory.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Output {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// List the diagram basis on n strands.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Multiply two diagrams or elements, TOP stacked above BOTTOM.
    Multiply {
        top: String,
        bottom: String,
        /// Evaluate δ at this integer.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<i64>,
    },
    /// The matrix of a diagram acting on V^⊗n ⊗ Δ.
    Realize {
        diagram: String,
        #[arg(long = "N")]
        big_n: usize,
    },
    /// Run a verification check and print its report.
    Verify(VerifyArgs),
    /// Cellular structure.
    #[command(subcommand)]
    Cell(CellCommand),
    /// Labels of the irreducible representations.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        characteristic: usize,
        #[arg(long)]
        delta_zero: bool,
    },
    /// Apply the involution to a diagram.
    Involute {
        diagram: String,
        /// Also reverse the isolated-vertex order and normal order the result.
        #[arg(long)]
        spin: bool,
    },
    /// Cell encoding of a diagram, or decoding with --decode.
    Encode {
        input: String,
        #[arg(long)]
        decode: bool,
    },
}

#[derive(Subcommand)]
enum CellCommand {
    /// Evaluate φ_ℓ on (x,S) and (y,T); partitions are JSON block lists.
    Phi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        x: String,
        #[arg(long = "S")]
        s: String,
        #[arg(long)]
        y: String,
        #[arg(long = "T")]
        t: String,
    },
    /// The top-layer term of a product predicted by φ_ℓ.
    Modmult { top: String, bottom: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Homomorphism,
    Equivariance,
    CircuitScaling,
    ThroughString,
    Clifford,
    Rank,
    Brauer,
    Associativity,
    Identity,
    Filtration,
    Modmult,
    TauSymmetry,
    InvolutionCompatibility,
    AntiAutomorphism,
    StrategyIndependence,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Projection,
    Injection,
    Immersion,
    Contraction,
    Swap,
}

#[derive(Args)]
struct VerifyArgs {
    check: Check,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest N^n·2^m a matrix check may build.
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long, value_enum)]
    map: Option<MapArg>,
    /// Circuit type I to V.
    #[arg(long)]
    circuit: Option<String>,
    #[arg(long, default_value_t = 0)]
    arcs: usize,
    #[arg(long)]
    plain: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CliConfig {
    #[serde(default = "default_max_n")]
    max_n: usize,
    #[serde(default = "default_max_dimension")]
    max_dimension: usize,
    #[serde(default = "default_output")]
    output: Output,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    fixtures: Option<PathBuf>,
}

fn default_max_n() -> usize {
    spinbrauer::diagram_core::DEFAULT_MAX_N
}

fn default_max_dimension() -> usize {
    v::DEFAULT_DIMENSION_BOUND
}

fn default_output() -> Output {
    Output::Json
}

impl Default for CliConfig {
    fn default() -> Self {
        toml::from_str("").expect("empty config is valid")
    }
}

impl CliConfig {
    fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let c: CliConfig = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if c.max_n == 0 || c.max_dimension == 0 {
            bail!("bounds in {} must be positive", path.display());
        }
        Ok(c)
    }
}

/// Signals a failed check rather than bad input.
#[derive(Debug)]
struct CheckFailed;

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "check failed")
    }
}

impl std::error::Error for CheckFailed {}

struct Session {
    config: CliConfig,
    output: Output,
}

impl Session {
    /// Inline JSON, a path, or a path relative to the fixture directory.
    fn read_input(&self, arg: &str) -> anyhow::Result<String> {
        if arg.trim_start().starts_with('{') {
            return Ok(arg.to_string());
        }
        let direct = PathBuf::from(arg);
        let path = match (&self.config.fixtures, direct.exists()) {
            (Some(dir), false) => dir.join(arg),
            _ => direct,
        };
        std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))
    }

    fn diagram(&self, arg: &str) -> anyhow::Result<SpinDiagram> {
        Ok(parse_diagram(&self.read_input(arg)?)?)
    }

    /// A diagram, or an element with a "terms" list.
    fn element(&self, arg: &str) -> anyhow::Result<AlgebraElement> {
        let text = self.read_input(arg)?;
        let value: Value = serde_json::from_str(&text).map_err(|e| anyhow!("invalid JSON: {e}"))?;
        Ok(if value.get("terms").is_some() {
            AlgebraElement::from_json(&value)?
        } else {
            AlgebraElement::from_diagram(SpinDiagram::from_json(&value)?)
        })
    }

    fn check_n(&self, n: usize) -> anyhow::Result<()> {
        if n > self.config.max_n {
            bail!("n = {n} exceeds the configured max_n = {}", self.config.max_n);
        }
        Ok(())
    }

    fn emit(&self, out: &mut dyn Write, value: &Value) -> anyhow::Result<()> {
        match self.output {
            Output::Json => writeln!(out, "{value}")?,
            Output::Pretty => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        }
        Ok(())
    }

    fn emit_diagram(&self, out: &mut dyn Write, d: &SpinDiagram) -> anyhow::Result<()> {
        match self.output {
            Output::Json => writeln!(out, "{}", d.to_json_string())?,
            Output::Pretty => write!(out, "{}", render_ascii(d))?,
        }
        Ok(())
    }

    fn emit_element(&self, out: &mut dyn Write, e: &AlgebraElement) -> anyhow::Result<()> {
        if self.output == Output::Json {
            return self.emit(out, &e.to_json());
        }
        if e.is_empty() {
            writeln!(out, "0")?;
        }
        for (d, c) in e.terms() {
            writeln!(out, "coefficient {c}")?;
            write!(out, "{}", render_ascii(d))?;
        }
        Ok(())
    }
}

fn parse_blocks(n: usize, text: &str) -> anyhow::Result<PartitionLE2> {
    let v: Value = serde_json::from_str(text).map_err(|e| anyhow!("invalid partition {text:?}: {e}"))?;
    Ok(PartitionLE2::from_json(n, &v)?)
}

fn parse_list(text: &str) -> anyhow::Result<Vec<usize>> {
    serde_json::from_str(text).map_err(|e| anyhow!("invalid list {text:?}: {e}"))
}

fn need<T>(x: Option<T>, flag: &str) -> anyhow::Result<T> {
    x.ok_or_else(|| anyhow!("this check needs {flag}"))
}

fn verify(ctx: &Session, a: &VerifyArgs) -> anyhow::Result<VerificationReport> {
    let bound = a.bound.unwrap_or(ctx.config.max_dimension);
    let mode = match a.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Random => Mode::Random { samples: a.samples, seed: a.seed.unwrap_or(ctx.config.seed) },
    };
    let n = || -> anyhow::Result<usize> {
        let n = need(a.n, "--n")?;
        ctx.check_n(n)?;
        Ok(n)
    };
    let big_n = || need(a.big_n, "--N");
    Ok(match a.check {
        Check::Homomorphism => v::verify_homomorphism(n()?, big_n()?, mode, bound)?,
        Check::Equivariance => {
            let kind = match need(a.map, "--map")? {
                MapArg::Projection => MapKind::Projection,
                MapArg::Injection => MapKind::Injection,
                MapArg::Immersion => MapKind::Immersion,
                MapArg::Contraction => MapKind::Contraction,
                MapArg::Swap => MapKind::Swap,
            };
            v::verify_equivariance(big_n()?, kind)?
        }
        Check::CircuitScaling => {
            let name = need(a.circuit.as_deref(), "--circuit")?;
            let c = CircuitType::parse(name).ok_or_else(|| anyhow!("unknown circuit type {name:?}"))?;
            v::verify_circuit_scaling(big_n()?, c, a.arcs)?
        }
        Check::ThroughString => v::verify_through_string(big_n()?)?,
        Check::Clifford => v::verify_clifford_relation(big_n()?)?,
        Check::Rank => v::verify_rank(n()?, big_n()?, bound)?,
        Check::Brauer => v::verify_brauer_consistency(n()?)?,
        Check::Associativity => v::verify_associativity(n()?, mode)?,
        Check::Identity => v::verify_identity(n()?)?,
        Check::Filtration => v::verify_filtration(n()?)?,
        Check::Modmult => v::verify_modmult(n()?)?,
        Check::TauSymmetry => v::verify_tau_symmetry(n()?)?,
        Check::InvolutionCompatibility => v::verify_involution_compatibility(n()?)?,
        Check::AntiAutomorphism => {
            let kind = if a.plain { InvolutionKind::Plain } else { InvolutionKind::Spin };
            v::verify_anti_automorphism(n()?, kind)?
        }
        Check::StrategyIndependence => v::verify_strategy_independence(n()?)?,
    })
}

fn execute(ctx: &Session, command: &Command, out: &mut dyn Write) -> anyhow::Result<()> {
    match command {
        Command::Enumerate { n, count_only } => {
            let basis = enumerate_basis(*n, ctx.config.max_n)?;
            if *count_only {
                writeln!(out, "{}", basis.len())?;
            } else {
                for d in &basis {
                    ctx.emit_diagram(out, d)?;
                }
            }
        }
        Command::Multiply { top, bottom, delta } => {
            let mut p = multiply_elements(&ctx.element(top)?, &ctx.element(bottom)?)?;
            if let Some(k) = delta {
                p = evaluate_at(&p, *k);
            }
            ctx.emit_element(out, &p)?;
        }
        Command::Realize { diagram, big_n } => {
            let d = ctx.diagram(diagram)?;
            let s = SpaceSpec::new(*big_n, d.n())?;
            if s.dim() > ctx.config.max_dimension {
                bail!("dimension {} exceeds the configured max_dimension = {}", s.dim(), ctx.config.max_dimension);
            }
            let m = realize_diagram(&d, &s)?;
            ctx.emit(out, &json!({ "N": big_n, "n": d.n(), "dimension": s.dim(), "matrix": m.to_json() }))?;
        }
        Command::Verify(a) => {
            let report = verify(ctx, a)?;
            ctx.emit(out, &report.to_json())?;
            if !report.passed {
                return Err(CheckFailed.into());
            }
        }
        Command::Cell(CellCommand::Phi { n, ell, x, s, y, t }) => {
            let x = parse_blocks(*n, x)?;
            let y = parse_blocks(*n, y)?;
            let value = phi_ell(*ell, &x, &parse_list(s)?, &y, &parse_list(t)?)?;
            ctx.emit(out, &value.to_json())?;
        }
        Command::Cell(CellCommand::Modmult { top, bottom }) => {
            let (a, b) = (ctx.diagram(top)?, ctx.diagram(bottom)?);
            match modmult_prediction(&a, &b)? {
                Some(e) => ctx.emit_element(out, &e)?,
                None => bail!("the diagrams have different numbers of through strings"),
            }
        }
        Command::Classify { n, characteristic, delta_zero } => {
            let labels: Vec<Value> = irreducible_indices(*n, *characteristic, *delta_zero)
                .into_iter()
                .map(|(m, l)| json!({ "m": m, "lambda": l }))
                .collect();
            ctx.emit(out, &Value::Array(labels))?;
        }
        Command::Involute { diagram, spin } => {
            let d = ctx.diagram(diagram)?;
            if *spin {
                ctx.emit_element(out, &spin_involution(&d))?;
            } else {
                ctx.emit_diagram(out, &d.involution())?;
            }
        }
        Command::Encode { input, decode } => {
            if *decode {
                let v: Value = serde_json::from_str(&ctx.read_input(input)?)?;
                let d = cell_decode(&triple_from_json(&v)?)?;
                ctx.emit_diagram(out, &d)?;
            } else {
                ctx.emit(out, &cell_encode(&ctx.diagram(input)?).to_json())?;
            }
        }
    }
    Ok(())
}

fn triple_from_json(v: &Value) -> anyhow::Result<spinbrauer::diagram_core::CellTriple> {
    let field = |k: &str| v.get(k).ok_or_else(|| anyhow!("cell triple needs {k:?}"));
    let list = |k: &str| -> anyhow::Result<Vec<usize>> { Ok(serde_json::from_value(field(k)?.clone())?) };
    let x = field("x")?;
    let n: usize = x.as_array().map(|b| b.iter().filter_map(Value::as_array).map(Vec::len).sum()).unwrap_or(0);
    Ok(spinbrauer::diagram_core::CellTriple {
        ell: serde_json::from_value(field("ell")?.clone())?,
        x: PartitionLE2::from_json(n, x)?,
        s: list("S")?,
        y: PartitionLE2::from_json(n, field("y")?)?,
        t: list("T")?,
        sigma: list("sigma")?,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let config = match cli.config.as_deref().map(CliConfig::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let ctx = Session { output: cli.output.unwrap_or(config.output), config };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&ctx, &cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<CheckFailed>() => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
