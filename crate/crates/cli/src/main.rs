use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bimod_core::connection::Side;
use bimod_core::qalgebra::Window;
use bimod_core::scalar::{QField, RatFunc, Zeta3};
use bimod_core::textio::{christoffel_from_entries, metric_from_entries, parse_sections, Sections};
use bimod_core::verify::{self, VerificationResult, DEFAULT_SEED};
use bimod_core::Error;

#[derive(Parser)]
#[command(
    name = "bimod",
    version,
    about = "Exact checks for metrics and connections on a quantum-plane bimodule"
)]
struct Cli {
    /// Report encoding
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Generic,
    Zeta3,
}

#[derive(Subcommand)]
enum Command {
    /// Named verifications
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Constraint solves
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Connection constructions
    #[command(subcommand)]
    Connection(ConnectionCmd),
    /// Metric compatibility
    #[command(subcommand)]
    Compat(CompatCmd),
    /// The matrix-geometry model
    #[command(subcommand)]
    Matrixgeo(MatrixgeoCmd),
    /// Demonstrations
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Args)]
struct Seeded {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every verification
    All(Seeded),
    /// Centre of the algebra and of the 1-forms
    Center {
        #[arg(long, value_enum, default_value_t = CenterMode::Zeta3)]
        mode: CenterMode,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterMode {
    Zeta3,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Metrics with entries in an exponent window
    Metric(MetricArgs),
}

#[derive(Args)]
struct MetricArgs {
    /// Impose middle-linearity (required)
    #[arg(long, required = true)]
    middle_linear: bool,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Allow negative exponents
    #[arg(long)]
    laurent: bool,
    #[arg(long, allow_negative_numbers = true)]
    pmin: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pmax: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    rmin: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    rmax: Option<i64>,
    #[arg(long)]
    tau_symmetric: bool,
}

#[derive(Subcommand)]
enum ConnectionCmd {
    /// Right connection from an admissible left one at q^3 = 1
    RightFromLeft {
        /// File with a [gamma] section
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Whole-bimodule families
    WholeBimodule {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[command(flatten)]
        seed: Seeded,
    },
    /// Frame gauge transformation of the pure-gauge connection
    GaugeDemo,
}

#[derive(Subcommand)]
enum CompatCmd {
    /// Metric compatibility of a given triple
    Check {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        gammatilde: PathBuf,
        #[arg(long)]
        metric: PathBuf,
        /// Only test central 1-forms
        #[arg(long)]
        center_only: bool,
        #[arg(long, value_enum, default_value_t = Mode::Zeta3)]
        mode: Mode,
    },
    /// Central against full compatibility on random triples
    EquivalenceTest {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        seed: Seeded,
    },
}

#[derive(Subcommand)]
enum MatrixgeoCmd {
    Verify {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[command(flatten)]
        seed: Seeded,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// Compatible pairs against q^2 sigma
    RescaledSigma {
        #[arg(long, default_value_t = 4)]
        bound: i64,
    },
}

enum Failure {
    Usage(String),
    Input(String),
}

fn read_sections(path: &Path) -> Result<Sections, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_sections(&text).map_err(|e| input_error(path, e))
}

fn input_error(path: &Path, e: Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn window(args: &MetricArgs) -> Result<Window, Failure> {
    let (p0, p1, r0, r1) = if args.laurent {
        (-4, 0, 0, 6)
    } else {
        (0, 8, 0, 8)
    };
    let w = Window::new(
        args.pmin.unwrap_or(p0),
        args.pmax.unwrap_or(p1),
        args.rmin.unwrap_or(r0),
        args.rmax.unwrap_or(r1),
    );
    if w.is_empty() {
        return Err(Failure::Usage("exponent window is empty".into()));
    }
    if !args.laurent && (w.p_min < 0 || w.r_min < 0) {
        return Err(Failure::Usage("negative exponents need --laurent".into()));
    }
    Ok(w)
}

fn compat_from_files<F: QField>(
    gamma: &Path,
    gammatilde: &Path,
    metric: &Path,
    center_only: bool,
) -> Result<VerificationResult, Failure> {
    let load = |path: &Path, section: &str, side: Side| {
        let s = read_sections(path)?;
        let entries = s.require(section).map_err(|e| input_error(path, e))?;
        christoffel_from_entries::<F>(entries, side).map_err(|e| input_error(path, e))
    };
    let g = load(gamma, "gamma", Side::Left)?;
    let gt = load(gammatilde, "gammatilde", Side::Right)?;
    let s = read_sections(metric)?;
    let entries = s.require("metric").map_err(|e| input_error(metric, e))?;
    let m = metric_from_entries::<F>(entries).map_err(|e| input_error(metric, e))?;
    Ok(verify::compat_check(&g, &gt, &m, center_only))
}

fn execute(command: Command) -> Result<Vec<VerificationResult>, Failure> {
    Ok(match command {
        Command::Verify(VerifyCmd::All(s)) => verify::all(s.seed),
        Command::Verify(VerifyCmd::Center {
            mode: CenterMode::Zeta3,
            bound,
        }) => vec![verify::center(bound)],
        Command::Solve(SolveCmd::Metric(args)) => {
            let w = window(&args)?;
            vec![match args.mode {
                Mode::Generic => verify::metric_solve::<RatFunc>(&w, args.tau_symmetric),
                Mode::Zeta3 => verify::metric_solve::<Zeta3>(&w, args.tau_symmetric),
            }]
        }
        Command::Connection(ConnectionCmd::RightFromLeft { input }) => {
            let s = read_sections(&input)?;
            let entries = s.require("gamma").map_err(|e| input_error(&input, e))?;
            let g = christoffel_from_entries::<Zeta3>(entries, Side::Left)
                .map_err(|e| input_error(&input, e))?;
            vec![verify::right_from_left_input(&g)]
        }
        Command::Connection(ConnectionCmd::WholeBimodule { mode, trials, seed }) => {
            vec![match mode {
                Mode::Generic => verify::whole_bimodule_generic(),
                Mode::Zeta3 => verify::whole_bimodule_zeta3(seed.seed, trials),
            }]
        }
        Command::Connection(ConnectionCmd::GaugeDemo) => vec![verify::gauge_demo()],
        Command::Compat(CompatCmd::Check {
            gamma,
            gammatilde,
            metric,
            center_only,
            mode,
        }) => vec![match mode {
            Mode::Generic => {
                compat_from_files::<RatFunc>(&gamma, &gammatilde, &metric, center_only)?
            }
            Mode::Zeta3 => compat_from_files::<Zeta3>(&gamma, &gammatilde, &metric, center_only)?,
        }],
        Command::Compat(CompatCmd::EquivalenceTest { trials, seed }) => {
            vec![verify::compat_equivalence(seed.seed, trials)]
        }
        Command::Matrixgeo(MatrixgeoCmd::Verify { trials, seed }) => {
            vec![verify::matrixgeo(seed.seed, trials)]
        }
        Command::Demo(DemoCmd::RescaledSigma { bound }) => vec![verify::rescaled_sigma(bound)],
    })
}

fn print_value(v: &serde_json::Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                match v {
                    serde_json::Value::Object(_) => {
                        println!("{pad}{k}:");
                        print_value(v, indent + 2);
                    }
                    serde_json::Value::Array(items)
                        if items.iter().any(|i| i.is_object() || i.is_array()) =>
                    {
                        println!("{pad}{k}:");
                        for item in items {
                            println!("{pad}  - {item}");
                        }
                    }
                    serde_json::Value::Array(items) => {
                        let parts: Vec<String> = items.iter().map(scalar_text).collect();
                        println!("{pad}{k}: [{}]", parts.join(", "));
                    }
                    _ => println!("{pad}{k}: {}", scalar_text(v)),
                }
            }
        }
        other => println!("{pad}{}", scalar_text(other)),
    }
}

fn scalar_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn report(results: &[VerificationResult], format: Format) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(results).expect("results serialize")
            );
        }
        Format::Text => {
            for r in results {
                println!(
                    "{} {} ({} ms)",
                    r.name,
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.elapsed_ms
                );
                print_value(&r.details, 2);
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(results) => {
            report(&results, cli.format);
            if results.iter().all(VerificationResult::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
