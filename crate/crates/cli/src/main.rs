use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use booltqft::covers::{voltage_cover, GraphMap, VoltageSpec};
use booltqft::oracle::{chain_map_sum, circle_map_sum};
use booltqft::{
    all_words, cyclic_cover, eval_circle, eval_interval, eval_nfa, eval_tautomaton, Diagram, Error, Matrix, Nfa,
    Semiring, TAutomaton, Word,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "booltqft", version, about = "Boolean 1D TQFTs from automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a diagram; closed diagrams print a single element.
    Eval(EvalArgs),
    /// Interval membership: prints 1 or 0.
    Member(WordArgs),
    /// Trace membership: prints 1 or 0.
    TraceMember(WordArgs),
    /// Interval membership for a T-automaton.
    TMember(TWordArgs),
    /// Trace membership for a T-automaton.
    TTrace(TWordArgs),
    /// Build or check covering automata.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Trim an automaton.
    Trim {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz DOT of the automaton graph.
    Dot {
        #[arg(long)]
        automaton: PathBuf,
    },
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum SemiringArg {
    Bool,
    Nat,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, required_unless_present = "tautomaton", conflicts_with = "tautomaton")]
    automaton: Option<PathBuf>,
    #[arg(long)]
    tautomaton: Option<PathBuf>,
    /// Slice text, or JSON if the file ends in `.json`.
    #[arg(long)]
    diagram: PathBuf,
    #[arg(long, value_enum, default_value = "bool")]
    semiring: SemiringArg,
}

#[derive(Args)]
struct WordArgs {
    #[arg(long)]
    automaton: PathBuf,
    /// Single-character letters, or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Args)]
struct TWordArgs {
    #[arg(long)]
    tautomaton: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Cyclic cover from a circular arrangement of the states.
    Cyclic {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the projection as a vertex map.
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Cover from permutation voltages on the edges.
    Voltage {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        voltages: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Check that a vertex map is a (weak) covering.
    Check {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        weak: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Compare matrix, diagram and path-sum evaluations on all short words.
    Sweep {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Core(Error),
    /// A check ran and reported a negative result.
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Core(Error::Type { .. }) => 3,
            Failure::Core(Error::Capacity(_)) => 4,
            Failure::Io(..) | Failure::Core(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Core(e) => e.to_string(),
            Failure::Negative(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_or_print(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Io(p.to_path_buf(), e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_nfa(path: &Path) -> CliResult<Nfa> {
    Ok(Nfa::from_json(&read(path)?)?)
}

fn load_tautomaton(path: &Path) -> CliResult<TAutomaton> {
    Ok(TAutomaton::from_json(&read(path)?)?)
}

fn load_diagram(path: &Path) -> CliResult<Diagram> {
    let text = read(path)?;
    let json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    Ok(if json { Diagram::from_json(&text)? } else { Diagram::parse(&text)? })
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn show<S: Semiring + std::fmt::Display>(m: &Matrix<S>, closed: bool) -> String {
    if closed {
        return m.get(0, 0).to_string();
    }
    (0..m.rows())
        .map(|r| m.row_slice(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn show_bool(m: &Matrix<bool>, closed: bool) -> String {
    show(&m.map(u64::from), closed)
}

fn eval(args: &EvalArgs) -> CliResult<String> {
    let d = load_diagram(&args.diagram)?;
    let closed = d.is_closed();
    if let Some(path) = &args.tautomaton {
        if matches!(args.semiring, SemiringArg::Nat) {
            return Err(Error::Unsupported("T-automata are evaluated over the Boolean semiring only".into()).into());
        }
        let t = load_tautomaton(path)?;
        return Ok(show_bool(&eval_tautomaton(&t, &d)?.matrix, closed));
    }
    let a = load_nfa(args.automaton.as_deref().expect("clap requires an automaton"))?;
    Ok(match args.semiring {
        SemiringArg::Bool => show_bool(&eval_nfa::<bool>(&a, &d)?.matrix, closed),
        SemiringArg::Nat => show(&eval_nfa::<u64>(&a, &d)?.matrix, closed),
    })
}

fn write_cover(cover: &booltqft::Cover, base: &Nfa, out: Option<&Path>, map_out: Option<&Path>) -> CliResult<()> {
    write_or_print(out, &cover.automaton.to_json())?;
    if let Some(p) = map_out {
        let spec = cover.projection.to_spec(&cover.automaton, base);
        let text = serde_json::to_string_pretty(&spec).map_err(Error::from)?;
        write_or_print(Some(p), &text)?;
    }
    Ok(())
}

fn cover(cmd: &CoverCommand) -> CliResult<String> {
    match cmd {
        CoverCommand::Cyclic {
            automaton,
            order,
            n,
            out,
            map_out,
        } => {
            let base = load_nfa(automaton)?;
            let c = cyclic_cover(&base, order, *n)?;
            write_cover(&c, &base, out.as_deref(), map_out.as_deref())?;
        }
        CoverCommand::Voltage {
            automaton,
            voltages,
            out,
            map_out,
        } => {
            let base = load_nfa(automaton)?;
            let spec: VoltageSpec = serde_json::from_str(&read(voltages)?).map_err(Error::from)?;
            let c = voltage_cover(&base, spec.n, &spec.resolve(&base)?)?;
            write_cover(&c, &base, out.as_deref(), map_out.as_deref())?;
        }
        CoverCommand::Check { map, cover, base, weak } => {
            let base = load_nfa(base)?;
            let cover = load_nfa(cover)?;
            let p = GraphMap::from_json(&read(map)?, &cover, &base)?;
            let kind = if *weak { "weak covering" } else { "covering" };
            return match p.check(&cover, &base, *weak) {
                Ok(()) => Ok(kind.to_string()),
                Err(reason) => Err(Failure::Negative(format!("not a {kind}: {reason}"))),
            };
        }
    }
    Ok(String::new())
}

fn sweep(path: &Path, max_len: usize) -> CliResult<String> {
    let a = load_nfa(path)?;
    let mut words = 0usize;
    let mut mismatches = Vec::new();
    for w in all_words(a.alphabet(), max_len) {
        words += 1;
        let interval = [
            a.interval_eval(&w)?,
            eval_interval(&a, &w)?,
            chain_map_sum::<bool>(&a, &w)?,
        ];
        let trace = [a.trace_eval(&w)?, eval_circle(&a, &w)?, circle_map_sum::<bool>(&a, &w)?];
        let counts = (a.interval_value::<u64>(&w)?, chain_map_sum::<u64>(&a, &w)?);
        if interval.iter().any(|&x| x != interval[0]) {
            mismatches.push(format!("interval {w}: matrix/diagram/paths = {interval:?}"));
        }
        if trace.iter().any(|&x| x != trace[0]) {
            mismatches.push(format!("trace {w}: matrix/diagram/paths = {trace:?}"));
        }
        if counts.0 != counts.1 {
            mismatches.push(format!("path count {w}: matrix {}, paths {}", counts.0, counts.1));
        }
    }
    for m in &mismatches {
        eprintln!("{m}");
    }
    let summary = format!("{words} words, {} mismatches", mismatches.len());
    if mismatches.is_empty() {
        Ok(summary)
    } else {
        Err(Failure::Negative(summary))
    }
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Eval(args) => eval(&args),
        Command::Member(args) => Ok(bit(load_nfa(&args.automaton)?.interval_eval(&Word::parse(&args.word))?).into()),
        Command::TraceMember(args) => Ok(bit(load_nfa(&args.automaton)?.trace_eval(&Word::parse(&args.word))?).into()),
        Command::TMember(args) => {
            Ok(bit(load_tautomaton(&args.tautomaton)?.interval_eval(&Word::parse(&args.word))?).into())
        }
        Command::TTrace(args) => Ok(bit(load_tautomaton(&args.tautomaton)?.trace_eval(&Word::parse(&args.word))?).into()),
        Command::Cover(cmd) => cover(&cmd),
        Command::Trim { automaton, out } => {
            write_or_print(out.as_deref(), &load_nfa(&automaton)?.trim().to_json())?;
            Ok(String::new())
        }
        Command::Dot { automaton } => Ok(load_nfa(&automaton)?.to_dot()),
        Command::Oracle(OracleCommand::Sweep { automaton, max_len }) => sweep(&automaton, max_len),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{}", out.trim_end());
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
