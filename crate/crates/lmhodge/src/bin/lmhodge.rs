use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lmhodge::corpus::{Window, CORPUS};
use lmhodge::document::{exit_code_for, run_timed, Kind, Options, ProblemDocument, RunOptions};
use lmhodge::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "lmhodge", version, about = "Exact checks for nilpotent cones, orbits and fans of mixed Hodge structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Range lo:hi of n for ℤ-indexed cone families.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<Window>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores). Reports do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Relative monodromy filtration of a {W, N} document.
    Rmf { input: PathBuf },
    /// Admissibility of a cone on (V, W).
    Admissible { input: PathBuf },
    /// Does (σ, F) generate a nilpotent orbit?
    OrbitCheck { input: PathBuf },
    /// Fan axioms and compatibility with a group.
    FanCheck { input: PathBuf },
    /// Search candidate flags for a violation of the weak-fan axiom.
    WeakfanFalsify { input: PathBuf },
    #[command(subcommand)]
    /// Néron-model fan constructions.
    Neron(Neron),
    #[command(subcommand)]
    /// Worked examples with their checked claims.
    Corpus(Corpus),
}

#[derive(Subcommand)]
enum Neron {
    /// The cone σ_{τ,υ} for a face τ of σ′ and a translation υ.
    SigmaUpsilon { input: PathBuf },
    /// Kummer type of Γ(σ_{τ,υ}) over Γ′(τ).
    Kummer { input: PathBuf },
    /// B₁ = {b : γ′b − b integral} modulo ℤⁿ.
    B1 { input: PathBuf },
    /// Build the relatively complete fan for two-weight data.
    BuildFan { input: PathBuf },
    /// Cover probe cones by members of the relatively complete fan.
    Probe { input: PathBuf },
}

#[derive(Subcommand)]
enum Corpus {
    /// Rebuild a worked example and check its claims.
    Run { name: String },
    /// List the example names.
    List,
}

fn read_input(p: &Path) -> Result<String, Error> {
    let mut s = String::new();
    if p == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Format(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(p).map_err(|e| Error::Format(format!("{}: {e}", p.display())))?;
    }
    Ok(s)
}

fn document(cmd: &Command, window: Option<Window>) -> Result<Option<ProblemDocument>, Error> {
    let (kind, input) = match cmd {
        Command::Rmf { input } => (Kind::Rmf, input),
        Command::Admissible { input } => (Kind::Admissible, input),
        Command::OrbitCheck { input } => (Kind::Orbit, input),
        Command::FanCheck { input } => (Kind::Fan, input),
        Command::WeakfanFalsify { input } => (Kind::Weakfan, input),
        Command::Neron(n) => match n {
            Neron::SigmaUpsilon { input } => (Kind::NeronSigmaUpsilon, input),
            Neron::Kummer { input } => (Kind::NeronKummer, input),
            Neron::B1 { input } => (Kind::NeronB1, input),
            Neron::BuildFan { input } => (Kind::NeronBuildFan, input),
            Neron::Probe { input } => (Kind::NeronProbe, input),
        },
        Command::Corpus(Corpus::Run { name }) => {
            let options = Options { window };
            return Ok(Some(ProblemDocument { kind: Kind::Corpus, payload: json!({ "name": name }), options }));
        }
        Command::Corpus(Corpus::List) => return Ok(None),
    };
    let mut doc = ProblemDocument::parse_as(&read_input(input)?, kind)?;
    if window.is_some() {
        doc.options.window = window;
    }
    Ok(Some(doc))
}

fn execute(cli: &Cli) -> Result<i32, Error> {
    let Some(doc) = document(&cli.command, cli.common.window)? else {
        println!("{}", CORPUS.join("\n"));
        return Ok(0);
    };
    let report = run_timed(&doc, RunOptions { timings: cli.common.timings })?;
    let text = report.to_json();
    match &cli.common.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| Error::Format(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    }
    match std::panic::catch_unwind(|| execute(&cli)) {
        Ok(Ok(code)) => ExitCode::from(code as u8),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
        Err(_) => ExitCode::from(4),
    }
}
