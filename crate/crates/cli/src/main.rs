//! Command-line front end: parse surface and pants files, run the library
//! computations, and emit text or JSON reports. Exit codes: 0 on success,
//! 2 on malformed input or validation failure, 1 on internal errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pochhammer::homology::{
    betti_of_complex_with_reports, build_complex, class_is_nonzero, loop_cycle, symk_betti,
    vortex_betti, BettiVector, HomologyError,
};
use pochhammer::io::{alpha_from_json, graph_from_json, graph_to_json, IoError};
use pochhammer::linalg::RankReport;
use pochhammer::pants::{
    export_dot, make_fashionable, pochhammer_vectors, sewing_rank, FlipSpec, PantsError, PantsGraph,
};
use pochhammer::words::{Presentation, Twist, WordError};
use pochhammer::{Ranker, TwistedComplex};

#[derive(Parser)]
#[command(
    name = "pochh",
    version,
    about = "Twisted homology of surfaces and pants decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON with stable field names
    #[arg(long, global = true)]
    json: bool,
    /// Force the exact (fraction-free) rank backend
    #[arg(long, global = true)]
    exact: bool,
    /// Seed for the randomized rank backend (overrides POCHH_SEED; default 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of randomized rank trials
    #[arg(long, global = true, default_value_t = 2)]
    trials: u32,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Genus of the surface
    #[arg(long)]
    genus: usize,
    /// Number of punctures (0 for a closed surface)
    #[arg(long, default_value_t = 0)]
    punctures: usize,
    /// JSON file with the twist matrix (default: the abelianization map)
    #[arg(long)]
    alpha: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted Betti numbers of a surface with the Euler-characteristic check
    Betti(SurfaceArgs),
    /// The cycle carried by a loop and whether its homology class is nonzero
    Loop {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// The loop, e.g. `[a1,b1]`
        #[arg(long)]
        word: String,
    },
    /// Validate a pants file; report separating curves and fashionability
    PantsCheck { file: PathBuf },
    /// Make a decomposition fashionable by T-shirt flips
    PantsFashion {
        file: PathBuf,
        /// Where to write the fashioned graph
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pochhammer vectors of a decorated decomposition
    Pochhammer { file: PathBuf },
    /// Sewing rank of a subset of pants, e.g. --subset 0,2
    Sew {
        file: PathBuf,
        /// Comma-separated pants indices; empty for the empty subset
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// Betti numbers of the rank-r one-vortex moduli space
    Vortex {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Betti numbers of the k-vortex moduli space (symmetric product)
    Symk {
        #[arg(long)]
        genus: usize,
        #[arg(short)]
        k: usize,
    },
    /// DOT rendering of a pants file
    Dot { file: PathBuf },
}

enum CliError {
    /// Malformed input or failed validation: exit 2.
    Input(String),
    /// Internal failure: exit 1.
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PantsError> for CliError {
    fn from(e: PantsError) -> Self {
        match e {
            PantsError::Homology(inner) => CliError::from(inner),
            PantsError::Linalg(inner) => CliError::Internal(inner.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Linalg(inner) => CliError::Internal(inner.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn resolve_seed(cli: &Cli) -> u64 {
    if let Some(s) = cli.seed {
        return s;
    }
    if let Ok(text) = std::env::var("POCHH_SEED") {
        if let Ok(s) = text.parse() {
            return s;
        }
    }
    0
}

fn ranker(cli: &Cli) -> Ranker {
    if cli.exact {
        Ranker::exact()
    } else {
        Ranker::randomized(cli.trials.max(1), resolve_seed(cli))
    }
}

/// Escalations where the exact rank contradicted the randomized trials are
/// internal errors; both values are reported.
fn check_reports(reports: &[RankReport]) -> Result<(), CliError> {
    for r in reports {
        if r.escalated && r.trial_values.iter().max().copied() != Some(r.value) {
            return Err(CliError::Internal(format!(
                "randomized/exact rank disagreement: randomized trials {:?}, exact {}",
                r.trial_values, r.value
            )));
        }
    }
    Ok(())
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &PathBuf) -> Result<PantsGraph, CliError> {
    let text = read_file(path)?;
    let pg =
        graph_from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(pg)
}

fn surface_setup(args: &SurfaceArgs) -> Result<(Presentation, Twist), CliError> {
    let p = Presentation::surface(args.genus, args.punctures)?;
    let twist = match &args.alpha {
        None => Twist::hurewicz(&p),
        Some(path) => {
            let rows = alpha_from_json(&read_file(path)?)?;
            Twist::from_matrix(&p, rows)?
        }
    };
    Ok((p, twist))
}

/// Closed or punctured surface complex for a pants file, with the
/// abelianization twist the decorations are written against.
fn graph_complex(pg: &PantsGraph) -> Result<(Presentation, Twist, TwistedComplex), CliError> {
    let p = Presentation::surface(pg.genus(), pg.punctures())?;
    let twist = Twist::hurewicz(&p);
    let complex = build_complex(&p, &twist)?;
    Ok((p, twist, complex))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value)
        .map_err(|e| CliError::Internal(format!("json encoding failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Betti(args) => cmd_betti(&cli, args),
        Command::Loop { surface, word } => cmd_loop(&cli, surface, word),
        Command::PantsCheck { file } => cmd_pants_check(&cli, file),
        Command::PantsFashion { file, output } => cmd_pants_fashion(&cli, file, output),
        Command::Pochhammer { file } => cmd_pochhammer(&cli, file),
        Command::Sew { file, subset } => cmd_sew(&cli, file, subset),
        Command::Vortex { genus, rank } => cmd_closed_form(&cli, vortex_betti(*genus, *rank)),
        Command::Symk { genus, k } => cmd_closed_form(&cli, symk_betti(*genus, *k)),
        Command::Dot { file } => cmd_dot(file),
    }
}

#[derive(Serialize)]
struct BettiOut {
    betti: Vec<usize>,
    chi: i64,
    chi_ok: bool,
}

fn cmd_betti(cli: &Cli, args: &SurfaceArgs) -> Result<(), CliError> {
    let (p, twist) = surface_setup(args)?;
    let complex = build_complex(&p, &twist)?;
    let (betti, reports) = betti_of_complex_with_reports(&complex, &ranker(cli))?;
    check_reports(&reports)?;
    let chi = p.euler_characteristic();
    let chi_ok = betti.alternating_sum() == chi;
    if cli.json {
        print_json(&BettiOut {
            betti: betti.dims().to_vec(),
            chi,
            chi_ok,
        })?;
    } else {
        println!("b = {betti}");
        println!(
            "chi-check: {} = {chi} {}",
            betti.alternating_sum(),
            if chi_ok { "OK" } else { "MISMATCH" }
        );
    }
    if chi_ok {
        Ok(())
    } else {
        Err(CliError::Internal(
            "Euler characteristic check failed".to_string(),
        ))
    }
}

#[derive(Serialize)]
struct LoopOut {
    cycle: Vec<String>,
    nonzero: bool,
}

fn cmd_loop(cli: &Cli, args: &SurfaceArgs, word: &str) -> Result<(), CliError> {
    let (p, twist) = surface_setup(args)?;
    let complex = build_complex(&p, &twist)?;
    let w = p.parse_word(word)?;
    let cycle = loop_cycle(&w, &twist, &complex)?;
    let nonzero = class_is_nonzero(&cycle, &complex, &ranker(cli))?;
    let entries: Vec<String> = cycle.entries().iter().map(|e| e.to_string()).collect();
    if cli.json {
        print_json(&LoopOut {
            cycle: entries,
            nonzero,
        })?;
    } else {
        println!("cycle = ({})", entries.join(", "));
        println!("class-nonzero: {nonzero}");
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckOut {
    valid: bool,
    violations: Vec<String>,
    separating: Vec<String>,
    zero_class: Vec<String>,
    fashionable: bool,
}

fn cmd_pants_check(cli: &Cli, file: &PathBuf) -> Result<(), CliError> {
    let pg = load_graph(file)?;
    let violations: Vec<String> = pg.validate().iter().map(|v| v.to_string()).collect();
    if !violations.is_empty() {
        if cli.json {
            print_json(&CheckOut {
                valid: false,
                violations: violations.clone(),
                separating: vec![],
                zero_class: vec![],
                fashionable: false,
            })?;
        } else {
            for v in &violations {
                println!("violation: {v}");
            }
        }
        return Err(CliError::Input(format!("{} violations", violations.len())));
    }
    let mut separating = Vec::new();
    for ci in 0..pg.curves().len() {
        if pg.curve_is_separating(ci)? {
            separating.push(pg.curve_name(ci));
        }
    }
    let zero_class: Vec<String> = pg
        .zero_labeled_curves()
        .into_iter()
        .map(|c| pg.curve_name(c))
        .collect();
    let fashionable = pg.is_fashionable()?;
    if cli.json {
        print_json(&CheckOut {
            valid: true,
            violations,
            separating: separating.clone(),
            zero_class: zero_class.clone(),
            fashionable,
        })?;
    } else {
        println!("valid");
        println!(
            "separating: {}",
            if separating.is_empty() {
                "none".to_string()
            } else {
                separating.join(", ")
            }
        );
        if fashionable {
            println!("fashionable");
        } else {
            for name in &zero_class {
                let tag = if separating.contains(name) {
                    "separating"
                } else {
                    "not separating"
                };
                println!("unfashionable: curve {name} {tag}");
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FashionOut {
    flips: Vec<FlipSpec>,
    output: String,
}

fn cmd_pants_fashion(cli: &Cli, file: &PathBuf, output: &PathBuf) -> Result<(), CliError> {
    let pg = load_graph(file)?;
    let (fashioned, flips) = make_fashionable(&pg)?;
    let text = graph_to_json(&fashioned)?;
    fs::write(output, text)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", output.display())))?;
    if cli.json {
        print_json(&FashionOut {
            flips,
            output: output.display().to_string(),
        })?;
    } else {
        println!("fashioned in {} flip(s)", flips.len());
        for f in &flips {
            println!(
                "flip curve {}: sleeves {} | {}",
                pg.curve_name(f.curve),
                f.sleeve1,
                f.sleeve2
            );
        }
        println!("wrote {}", output.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct PochOut {
    vectors: Vec<PochVector>,
}

#[derive(Serialize)]
struct PochVector {
    pants: usize,
    cycle: Vec<String>,
    nonzero: bool,
}

fn cmd_pochhammer(cli: &Cli, file: &PathBuf) -> Result<(), CliError> {
    let pg = load_graph(file)?;
    let (_p, twist, complex) = graph_complex(&pg)?;
    let vectors = pochhammer_vectors(&pg, &twist, &complex)?;
    let rk = ranker(cli);
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let nonzero = class_is_nonzero(v, &complex, &rk)?;
        out.push(PochVector {
            pants: i,
            cycle: v.entries().iter().map(|e| e.to_string()).collect(),
            nonzero,
        });
    }
    if cli.json {
        print_json(&PochOut { vectors: out })?;
    } else {
        for v in &out {
            println!(
                "pants {}: ({}) nonzero: {}",
                v.pants,
                v.cycle.join(", "),
                v.nonzero
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SewOut {
    subset: Vec<usize>,
    rank: usize,
}

fn cmd_sew(cli: &Cli, file: &PathBuf, subset: &str) -> Result<(), CliError> {
    let pg = load_graph(file)?;
    let (_p, twist, complex) = graph_complex(&pg)?;
    let indices: Vec<usize> = subset
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad subset index {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    let vectors = pochhammer_vectors(&pg, &twist, &complex)?;
    let rank = sewing_rank(&vectors, &indices, &complex, &ranker(cli))?;
    if cli.json {
        print_json(&SewOut {
            subset: indices,
            rank,
        })?;
    } else {
        let shown: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
        println!("sewing rank of {{{}}} = {rank}", shown.join(", "));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClosedFormOut {
    betti: Vec<usize>,
}

fn cmd_closed_form(cli: &Cli, result: Result<BettiVector, HomologyError>) -> Result<(), CliError> {
    let betti = result?;
    if cli.json {
        print_json(&ClosedFormOut {
            betti: betti.dims().to_vec(),
        })?;
    } else {
        println!("b = {betti}");
    }
    Ok(())
}

fn cmd_dot(file: &PathBuf) -> Result<(), CliError> {
    let pg = load_graph(file)?;
    print!("{}", export_dot(&pg)?);
    Ok(())
}
