//! `compalg`: build, analyze, canonicalize and compare real division algebras
//! stored as structure-constant JSON.

use clap::{Args, Parser, Subcommand, ValueEnum};
use compalg::algebra::{Algebra, Family};
use compalg::classify::{self, BlockKind, CanonicalForm, CanonicalParams, Verdict};
use compalg::numerics::{TolerancePolicy, DEFAULT_SEED};
use compalg::random;
use compalg::verify;
use serde_json::{json, Value};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "compalg",
    version,
    about = "Real division composition algebras with large derivation algebras"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Overrides every tolerance of the default policy.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Builds an algebra from a family and writes its JSON.
    Build {
        /// standard, octonions, quat4, lambda, j, k, okubo, p35 or g.
        #[arg(long)]
        family: String,
        /// Family parameters as inline JSON; quaternions are 4-arrays.
        #[arg(long, default_value = "{}")]
        params: String,
        /// Read `alpha` and `beta` in degrees.
        #[arg(long)]
        degrees: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Invariants and block of an algebra.
    Analyze { input: PathBuf },
    /// Invariants together with the canonical form when one is available.
    Classify { input: PathBuf },
    /// Canonical form of an algebra built from a family.
    Canon { input: PathBuf },
    /// Decides whether two algebras are isomorphic.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Writes the witness matrix (row-major) here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Streams canonical representatives of a block.
    Enumerate {
        /// D17, D8, D116, D134s, D134a, D1124, D11114, D35, D1133 or Quat4.
        #[arg(long)]
        block: String,
        #[arg(long, default_value_t = 4)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Runs the named numerical checks; exits 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Failure with its exit code: 2 for bad input, 1 otherwise.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn failed(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

impl From<compalg::error::Error> for Failure {
    fn from(e: compalg::error::Error) -> Failure {
        failed(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("compalg: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn policy(common: &Common) -> Result<TolerancePolicy, Failure> {
    match common.tol {
        None => Ok(TolerancePolicy::default()),
        Some(t) if t.is_finite() && t > 0.0 => Ok(TolerancePolicy::uniform(t)),
        Some(t) => Err(usage(format!("--tol must be positive, got {t}"))),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let tol = policy(&cli.common)?;
    let mut rng = random::seeded(cli.common.seed);
    match cli.command {
        Command::Build {
            family,
            params,
            degrees,
            output,
        } => {
            let fam = parse_family(&family, &params, degrees)?;
            let algebra = fam.build().map_err(|e| usage(e.to_string()))?;
            emit(output.as_deref(), &to_string(&algebra)?)?;
        }
        Command::Analyze { input } => {
            let report = classify::analyze(&read_algebra(&input)?, &mut rng, &tol)?;
            println!("{}", to_string(&report)?);
        }
        Command::Classify { input } => {
            let a = read_algebra(&input)?;
            let report = classify::analyze(&a, &mut rng, &tol)?;
            let canonical = match classify::canonical(&a, &tol) {
                Ok(c) => to_string(&c)?,
                Err(_) => "null".to_string(),
            };
            println!(
                "{{\"report\":{},\"canonical\":{canonical}}}",
                to_string(&report)?
            );
        }
        Command::Canon { input } => {
            let c = classify::canonical(&read_algebra(&input)?, &tol)?;
            println!("{}", to_string(&c)?);
        }
        Command::Iso {
            first,
            second,
            output,
        } => {
            let (a, b) = (read_algebra(&first)?, read_algebra(&second)?);
            let verdict = classify::isomorphic(&a, &b, &mut rng, &tol);
            match &verdict {
                Verdict::Yes { witness } => {
                    println!("isomorphic");
                    if let (Some(w), Some(path)) = (witness, output.as_deref()) {
                        emit(Some(path), &to_string(&w.matrix)?)?;
                    }
                }
                Verdict::No { reason } => println!("not isomorphic: {reason}"),
                Verdict::Unknown { reason } => println!("unknown: {reason}"),
            }
        }
        Command::Enumerate {
            block,
            grid,
            format,
        } => {
            let kind: BlockKind = block
                .parse()
                .map_err(|e: compalg::error::Error| usage(e.to_string()))?;
            if grid == 0 {
                return Err(usage("--grid must be at least 1"));
            }
            let items = classify::enumerate_block(kind, grid, tol.zero_tol)?;
            let mut out = io::stdout().lock();
            if let Format::Csv = format {
                writeln!(out, "block,double_sign,params").map_err(io_failure)?;
            }
            for item in &items {
                let line = match format {
                    Format::Json => to_string(item)?,
                    Format::Csv => csv_row(item),
                };
                writeln!(out, "{line}").map_err(io_failure)?;
            }
        }
        Command::Verify { format } => {
            let checks = verify::verify_suite(cli.common.seed, &tol);
            for c in &checks {
                match format {
                    Format::Json => println!("{}", to_string(c)?),
                    Format::Csv => {
                        println!("{},{},\"{}\"", c.name, c.passed, c.detail.replace('"', "'"))
                    }
                }
            }
            if checks.iter().any(|c| !c.passed) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn io_failure(e: io::Error) -> Failure {
    // A closed downstream pipe (`| head`) ends the stream normally.
    if e.kind() == io::ErrorKind::BrokenPipe {
        return Failure {
            code: 0,
            message: String::new(),
        };
    }
    failed(e.to_string())
}

fn to_string<T: serde::Serialize>(x: &T) -> Result<String, Failure> {
    serde_json::to_string(x).map_err(|e| failed(e.to_string()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, format!("{text}\n")).map_err(|e| failed(format!("{}: {e}", p.display())))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_algebra(path: &Path) -> Result<Algebra, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn csv_row(c: &CanonicalForm) -> String {
    let sign = c
        .block
        .double_sign
        .map(|s| format!("{s}"))
        .unwrap_or_default();
    let f = |xs: &[f64]| {
        xs.iter()
            .map(|x| format!("{x}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let params = match &c.params {
        CanonicalParams::None => String::new(),
        CanonicalParams::MPoint { a, b } => format!("a=[{}] b=[{}]", f(&a.0), f(&b.0)),
        CanonicalParams::NPoint { first, second } => format!(
            "a1=[{}] b1=[{}] a2=[{}] b2=[{}]",
            f(&first.a.0),
            f(&first.b.0),
            f(&second.a.0),
            f(&second.b.0)
        ),
        CanonicalParams::Region { alpha, beta, .. } => format!("alpha={alpha} beta={beta}"),
    };
    format!("{},{sign},{params}", c.block.kind)
}

const QUATERNION_KEYS: [&str; 6] = ["a", "b", "a1", "b1", "a2", "b2"];

/// Maps a CLI family name and inline parameters onto [`Family`].
fn parse_family(name: &str, params: &str, degrees: bool) -> Result<Family, Failure> {
    let mut p: Value = serde_json::from_str(params).map_err(|e| usage(format!("--params: {e}")))?;
    let obj = p
        .as_object_mut()
        .ok_or_else(|| usage("--params must be a JSON object"))?;
    for key in QUATERNION_KEYS {
        if let Some(Value::Array(xs)) = obj.get_mut(key) {
            if xs.len() == 4 {
                xs.extend(std::iter::repeat_n(json!(0.0), 4));
            }
        }
    }
    if degrees {
        for key in ["alpha", "beta"] {
            if let Some(v) = obj.get_mut(key) {
                let d = v
                    .as_f64()
                    .ok_or_else(|| usage(format!("{key} must be a number")))?;
                *v = json!(d.to_radians());
            }
        }
    }
    let tagged = match name {
        "octonions" => json!({ "name": "StandardIsotope", "params": { "i": 0, "j": 0 } }),
        "okubo" => json!({ "name": "Okubo" }),
        other => {
            let variant = match other {
                "standard" => "StandardIsotope",
                "quat4" => "Quat4",
                "lambda" => "LambdaFamily",
                "j" | "tau" => "TauFamily",
                "k" | "t" => "TFamily",
                "p35" => "P35",
                "g" => "GFamily",
                _ => return Err(usage(format!("unknown family {other}"))),
            };
            json!({ "name": variant, "params": p })
        }
    };
    serde_json::from_value(tagged).map_err(|e| usage(format!("--params for {name}: {e}")))
}
