use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use boxconvex::gadgets::{build_gadget, cubic_from_gadget, manifest, maxcut_to_interval};
use boxconvex::oracles::{gap_check, lemma_bound_check, max_cut_bruteforce, verify_reduction};
use boxconvex::{
    check_fast, check_general, check_interval_psd, rational, BoxDomain, ConvexityVerdict, Error, Graph,
    IntervalSymMatrix, Polynomial, SymMatrix,
};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;
const EXIT_GUARD: u8 = 5;

#[derive(Parser)]
#[command(name = "boxconvex", version, about = "Exact convexity checks over boxes and MAX-CUT gadgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build reduction instances from a graph.
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Decide convexity or interval positive semidefiniteness.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(clap::Args)]
struct GadgetArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Cubic f and box [-1, 1]^(2n+1): writes f.json and box.json.
    ToCubic(GadgetArgs),
    /// Interval family: writes interval.json.
    ToInterval(GadgetArgs),
    /// Pencil L(x): writes pencil.json.
    ToPencil(GadgetArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Fast,
}

#[derive(Subcommand)]
enum CheckCmd {
    Convex {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long = "box")]
        domain: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample budget for the negative-curvature search.
        #[arg(long, default_value_t = 2000)]
        budget: usize,
    },
    IntervalPsd {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Maxcut {
        #[arg(long)]
        graph: PathBuf,
    },
    VerifyReduction {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u64,
    },
    GapCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u64,
    },
    LemmaCheck {
        /// Symmetric 0/1 matrix.
        #[arg(long)]
        matrix: PathBuf,
        /// JSON array of rationals with |x_i| <= 1.
        #[arg(long)]
        point: PathBuf,
    },
}

enum Failure {
    Io(String),
    Parse(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) | Failure::Parse(_) => EXIT_PARSE,
            Failure::Lib(Error::TooLarge { .. }) => EXIT_GUARD,
            Failure::Lib(Error::BadK { .. } | Error::BadDegree(_) | Error::CutTooSmall { .. }) => EXIT_DOMAIN,
            Failure::Lib(_) => EXIT_PARSE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) | Failure::Parse(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), Failure> {
    let path = dir.join(name);
    let mut text = serde_json::to_string(value).map_err(|e| Failure::Parse(e.to_string()))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("report serializes"));
}

fn gadget(cmd: GadgetCmd) -> Result<u8, Failure> {
    let (args, kind) = match cmd {
        GadgetCmd::ToCubic(a) => (a, "cubic"),
        GadgetCmd::ToInterval(a) => (a, "interval"),
        GadgetCmd::ToPencil(a) => (a, "pencil"),
    };
    let g: Graph = read_json(&args.graph)?;
    let gad = build_gadget(&g, args.k)?;
    fs::create_dir_all(&args.out).map_err(|e| Failure::Io(format!("{}: {e}", args.out.display())))?;
    let mut files = Vec::new();
    match kind {
        "cubic" => {
            let cubic = cubic_from_gadget(&gad);
            write_json(&args.out, "f.json", &cubic.f)?;
            write_json(&args.out, "box.json", &cubic.domain)?;
            files.extend(["f.json", "box.json"]);
        }
        "interval" => {
            write_json(&args.out, "interval.json", &maxcut_to_interval(&g, args.k)?)?;
            files.push("interval.json");
        }
        _ => {
            write_json(&args.out, "pencil.json", gad.pencil())?;
            files.push("pencil.json");
        }
    }
    write_json(&args.out, "manifest.json", &manifest(&gad))?;
    files.push("manifest.json");
    emit(&serde_json::json!({ "out": args.out.display().to_string(), "files": files }));
    Ok(EXIT_YES)
}

fn interval_psd(matrix: &Path) -> Result<u8, Failure> {
    let family: IntervalSymMatrix = read_json(matrix)?;
    let r = check_interval_psd(&family);
    emit(&r);
    Ok(if r.all_psd { EXIT_YES } else { EXIT_NO })
}

fn check(cmd: CheckCmd) -> Result<u8, Failure> {
    match cmd {
        CheckCmd::Convex {
            poly,
            domain,
            mode,
            seed,
            budget,
        } => {
            let p: Polynomial = read_json(&poly)?;
            let b: BoxDomain = read_json(&domain)?;
            let verdict = match mode {
                Mode::Exact => check_general(&p, &b, budget, seed)?,
                Mode::Fast => check_fast(&p, &b, budget, seed)?,
            };
            emit(&verdict);
            Ok(match verdict {
                ConvexityVerdict::Convex { .. } => EXIT_YES,
                ConvexityVerdict::NotConvex { .. } => EXIT_NO,
                ConvexityVerdict::Unknown { .. } => EXIT_UNKNOWN,
            })
        }
        CheckCmd::IntervalPsd { matrix } => interval_psd(&matrix),
    }
}

fn oracle(cmd: OracleCmd) -> Result<u8, Failure> {
    match cmd {
        OracleCmd::Maxcut { graph } => {
            let g: Graph = read_json(&graph)?;
            emit(&max_cut_bruteforce(&g)?);
            Ok(EXIT_YES)
        }
        OracleCmd::VerifyReduction { graph, k } => {
            let g: Graph = read_json(&graph)?;
            let r = verify_reduction(&g, k)?;
            emit(&r);
            Ok(if r.iff_holds { EXIT_YES } else { EXIT_NO })
        }
        OracleCmd::GapCheck { graph, k } => {
            let g: Graph = read_json(&graph)?;
            let r = gap_check(&build_gadget(&g, k)?)?;
            emit(&r);
            Ok(if r.in_forbidden_band { EXIT_NO } else { EXIT_YES })
        }
        OracleCmd::LemmaCheck { matrix, point } => {
            let a: SymMatrix = read_json(&matrix)?;
            let raw: Vec<String> = read_json(&point)?;
            let x = rational::parse_vec(&raw)?;
            let holds = lemma_bound_check(&a, &x)?;
            emit(&serde_json::json!({ "holds": holds }));
            Ok(if holds { EXIT_YES } else { EXIT_NO })
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("BOXCONVEX_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { EXIT_YES });
        }
    };
    configure_threads();
    let outcome = match cli.command {
        Command::Gadget(c) => gadget(c),
        Command::Check(c) => check(c),
        Command::Oracle(c) => oracle(c),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
