//! `minkplane` — construct triangle geometry under a chosen plane norm,
//! verify the theorem suite over randomized scenes, and render SVG figures.
//!
//! Exit codes: 0 success, 1 theorem failure, 2 input error, 3 solver or
//! generation failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use minkplane::{builtin_norm_pool, run_suite, NormSpec, TheoremId};

mod figure;
mod scene_input;

use scene_input::{resolve_scene, ResolvedScene, SceneInput};

#[derive(Parser)]
#[command(name = "minkplane", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the orthocentric system and six-point circle of a scene.
    Construct {
        /// Scene JSON: {"norm":..., "triangle":[[x,y],..3], "p4":[x,y]?}
        input: PathBuf,
    },
    /// Run randomized theorem verification and emit a JSON report array.
    Verify {
        /// Comma-separated theorem ids, or "all".
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Scenes per (theorem, norm) pair.
        #[arg(long, default_value_t = 100)]
        trials: u32,
        /// Master seed for scene generation.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// "builtin" for the six-norm pool, or a path to a JSON array of
        /// norm specifications.
        #[arg(long, default_value = "builtin")]
        norms: String,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a scene as a standalone SVG figure.
    Figure {
        /// Scene JSON, as for `construct`.
        input: PathBuf,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated layers, or "all": triangle, antitriangle, medial,
        /// euler, feuerbach, circumcircle, unitball, system.
        #[arg(long, default_value = "all")]
        show: String,
    },
}

/// Process failure with the exit code the interface contract assigns.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
    fn solver(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<minkplane::Error> for Failure {
    fn from(e: minkplane::Error) -> Self {
        match e {
            minkplane::Error::NoWitness | minkplane::Error::GenerationFailed(_) => {
                Failure::solver(e.to_string())
            }
            other => Failure::input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Construct { input } => {
            let scene = load_scene(&input)?;
            let out = construct_output(&scene);
            println!("{}", serde_json::to_string(&out).expect("serializable"));
            Ok(0)
        }
        Command::Verify { theorems, trials, seed, norms, out } => {
            if trials == 0 {
                return Err(Failure::input("--trials must be at least 1"));
            }
            let ids = parse_theorems(&theorems)?;
            let pool = parse_norms(&norms)?;
            let suite = run_suite(&ids, trials, &pool, seed);
            let json =
                serde_json::to_string_pretty(&suite.reports).expect("serializable reports");
            match &out {
                Some(path) => std::fs::write(path, json.as_bytes())
                    .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
                None => println!("{json}"),
            }
            for r in &suite.reports {
                eprintln!(
                    "{:>6} {:>14}: {} trials, {} passes, {} inconclusive, {} failures, max residual {:.3e}",
                    r.theorem_id.to_string(),
                    r.norm.to_string(),
                    r.trials,
                    r.passes,
                    r.inconclusive,
                    r.failures.len(),
                    r.max_residual
                );
            }
            if !suite.all_passed() {
                Ok(1)
            } else if suite.generation_failures > 0 {
                Ok(3)
            } else {
                Ok(0)
            }
        }
        Command::Figure { input, out, show } => {
            let layers = figure::parse_layers(&show).map_err(Failure::input)?;
            let scene = load_scene(&input)?;
            let svg = figure::render(&scene, &layers);
            let mut file = std::fs::File::create(&out)
                .map_err(|e| Failure::input(format!("cannot create {}: {e}", out.display())))?;
            file.write_all(svg.as_bytes())
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", out.display())))?;
            Ok(0)
        }
    }
}

fn load_scene(path: &PathBuf) -> Result<ResolvedScene, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let input: SceneInput = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("malformed scene: {e}")))?;
    Ok(resolve_scene(input)?)
}

fn parse_theorems(arg: &str) -> Result<Vec<TheoremId>, Failure> {
    if arg == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    arg.split(',')
        .map(|s| s.trim().parse::<TheoremId>().map_err(|e| Failure::input(e.to_string())))
        .collect()
}

fn parse_norms(arg: &str) -> Result<Vec<NormSpec>, Failure> {
    if arg == "builtin" {
        return Ok(builtin_norm_pool());
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| Failure::input(format!("cannot read norm pool {arg}: {e}")))?;
    let pool: Vec<NormSpec> = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("malformed norm pool: {e}")))?;
    if pool.is_empty() {
        return Err(Failure::input("norm pool is empty"));
    }
    Ok(pool)
}

#[derive(serde::Serialize)]
struct ConstructOutput {
    p4: [f64; 2],
    q: [f64; 2],
    x4: [f64; 2],
    lambda: f64,
    medial: [[f64; 2]; 3],
    antitriangle: [[f64; 2]; 3],
    euler_points: [[f64; 2]; 3],
    feuerbach: FeuerbachOutput,
    barycenter: [f64; 2],
}

#[derive(serde::Serialize)]
struct FeuerbachOutput {
    center: [f64; 2],
    radius: f64,
}

fn construct_output(scene: &ResolvedScene) -> ConstructOutput {
    let sys = &scene.system();
    let b = &scene.bundle(sys);
    ConstructOutput {
        p4: sys.p4.into(),
        q: sys.q.into(),
        x4: sys.x4.into(),
        lambda: sys.lambda,
        medial: b.medial.vertices().map(Into::into),
        antitriangle: b.anti.vertices().map(Into::into),
        euler_points: b.euler_points.map(Into::into),
        feuerbach: FeuerbachOutput {
            center: b.feuerbach.center.into(),
            radius: b.feuerbach.radius,
        },
        barycenter: b.barycenter.into(),
    }
}
