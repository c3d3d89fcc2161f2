use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sidcodes::bounds::{bounds_record, density_row};
use sidcodes::io::{density_csv, to_dot, CodeFile, SolveReport};
use sidcodes::solver::{self, Problem, PruningRule, SolveBudget};
use sidcodes::{construct, Check, Error, ProductGraph, Topology, VertexSet};

const EXIT_FAIL: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sidcodes",
    version,
    about = "Self-identifying codes in K_m x P_n and K_m x C_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct GraphArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "path")]
    topology: Topology,
}

impl GraphArgs {
    fn graph(&self) -> sidcodes::Result<ProductGraph> {
        ProductGraph::new(self.m, self.n, self.topology)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Sid,
    Id,
}

#[derive(Subcommand)]
enum Command {
    /// Build the explicit code for (m, n, topology).
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a code file; exit 1 if any requested check fails.
    Verify {
        input: PathBuf,
        /// Comma-separated: dominating, identifying, def1, def2, degree, sufficient, necessary.
        #[arg(long, default_value = "def1")]
        checks: String,
    },
    /// Exact minimum code by branch and bound.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "sid")]
        problem: ProblemArg,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
        #[arg(long)]
        no_symmetry: bool,
        /// Comma-separated rules, `all` or `none`.
        #[arg(long, default_value = "all")]
        pruning: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounds and construction densities over a grid, as CSV.
    Sweep {
        /// Single value or range such as `3..5`.
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "path")]
        topology: Topology,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering, optionally with a code overlay.
    ExportDot {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random vertex subsets as JSON lines, for testing.
    RandomSubsets {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<u8, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Dimension { .. }
        | Error::Unsupported { .. }
        | Error::Infeasible
        | Error::WrongTopology { .. }
        | Error::PatternRange { .. } => EXIT_UNSUPPORTED,
        Error::BudgetExceeded { .. } => EXIT_FAIL,
        Error::VertexOutOfRange { .. }
        | Error::RowOutOfRange { .. }
        | Error::ColumnOutOfRange { .. }
        | Error::DimensionMismatch(..)
        | Error::Parse(_)
        | Error::Io(_)
        | Error::Json(_) => EXIT_IO,
    }
}

fn emit(out: Option<&Path>, text: &str) -> sidcodes::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("invalid range '{s}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (a, b) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let v = num(s)?;
        (v, v)
    };
    Ok((a, b))
}

fn read_code_file(path: &Path) -> Result<CodeFile, Failure> {
    CodeFile::read(path).map_err(|e| match e {
        Error::Io(_) | Error::Parse(_) | Error::Json(_) => Failure::Lib(e),
        other => Failure::Lib(Error::Parse(other.to_string())),
    })
}

fn cmd_construct(graph: GraphArgs, out: Option<PathBuf>, format: Format) -> CmdResult {
    let g = graph.graph()?;
    let (code, plan) = construct(&g)?;
    let text = match format {
        Format::Json => CodeFile::from_code(&code, Some(&plan)).to_json(),
        Format::Dot => to_dot(&g, Some(code.members())),
    };
    emit(out.as_deref(), &text)?;
    let rec = bounds_record(g.m(), g.n(), g.topology())?;
    eprintln!(
        "size={} lower={} upper={} family={}",
        code.len(),
        rec.lower,
        rec.upper,
        plan.family.as_str()
    );
    Ok(0)
}

fn cmd_verify(input: PathBuf, checks: &str) -> CmdResult {
    let checks: Vec<Check> = checks
        .split(',')
        .filter(|c| !c.trim().is_empty())
        .map(str::parse)
        .collect::<sidcodes::Result<_>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let file = read_code_file(&input)?;
    let g = file.graph()?;
    let code = file.to_code(&g)?;
    let report = code.verify(&checks)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(Error::from)?
    );
    for (name, witnesses) in report.violations() {
        let list: Vec<String> = witnesses.iter().map(ToString::to_string).collect();
        eprintln!("violated: {name} at {}", list.join(" "));
    }
    Ok(if report.all_hold() { 0 } else { EXIT_FAIL })
}

fn parse_pruning(s: &str) -> Result<Vec<PruningRule>, Failure> {
    match s.trim() {
        "all" => Ok(PruningRule::ALL.to_vec()),
        "none" | "" => Ok(Vec::new()),
        list => list
            .split(',')
            .map(str::parse)
            .collect::<sidcodes::Result<_>>()
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    graph: GraphArgs,
    problem: ProblemArg,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
    no_symmetry: bool,
    pruning: &str,
    out: Option<PathBuf>,
) -> CmdResult {
    let mut budget = SolveBudget {
        allow_symmetry: !no_symmetry,
        pruning: parse_pruning(pruning)?,
        ..SolveBudget::default()
    };
    if let Some(n) = max_nodes {
        if n == 0 {
            return Err(Failure::Usage("--max-nodes must be at least 1".into()));
        }
        budget.max_nodes = n;
    }
    if let Some(s) = max_seconds {
        if s.is_nan() || s <= 0.0 {
            return Err(Failure::Usage("--max-seconds must be positive".into()));
        }
        budget.max_seconds = s;
    }
    let g = graph.graph()?;
    let problem = match problem {
        ProblemArg::Sid => Problem::SelfIdentifying,
        ProblemArg::Id => Problem::Identifying,
    };
    let result = solver::solve(&g, &budget, problem)?;
    let report = SolveReport::from(&result);
    let mut text = serde_json::to_string_pretty(&report).map_err(Error::from)?;
    text.push('\n');
    emit(out.as_deref(), &text)?;
    Ok(if result.certified { 0 } else { EXIT_FAIL })
}

fn cmd_sweep(m: &str, n: &str, topology: Topology, out: Option<PathBuf>) -> CmdResult {
    let (m0, m1) = parse_range(m)?;
    let (n0, n1) = parse_range(n)?;
    if m0 > m1 || n0 > n1 {
        eprintln!("empty range");
        return Ok(EXIT_UNSUPPORTED);
    }
    let mut rows = Vec::new();
    for m in m0..=m1 {
        for n in n0..=n1 {
            rows.push(density_row(m, n, topology)?);
        }
    }
    emit(out.as_deref(), &density_csv(&rows))?;
    Ok(0)
}

fn cmd_export_dot(graph: GraphArgs, code: Option<PathBuf>, out: Option<PathBuf>) -> CmdResult {
    let g = graph.graph()?;
    let members = match code {
        Some(path) => {
            let file = read_code_file(&path)?;
            if (file.m, file.n, file.topology) != (g.m(), g.n(), g.topology()) {
                return Err(Failure::Lib(Error::Parse(format!(
                    "code file is for {}x{} {}, not {}x{} {}",
                    file.m,
                    file.n,
                    file.topology,
                    g.m(),
                    g.n(),
                    g.topology()
                ))));
            }
            Some(file.members()?)
        }
        None => None,
    };
    emit(out.as_deref(), &to_dot(&g, members.as_ref()))?;
    Ok(0)
}

fn cmd_random_subsets(
    graph: GraphArgs,
    count: usize,
    density: f64,
    seed: u64,
    out: Option<PathBuf>,
) -> CmdResult {
    if !(0.0..=1.0).contains(&density) {
        return Err(Failure::Usage("--density must lie in [0, 1]".into()));
    }
    let g = graph.graph()?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut text = String::new();
    for _ in 0..count {
        let mut s = VertexSet::empty(g.m(), g.n());
        for idx in 0..g.order() {
            if rng.gen_bool(density) {
                s.insert_index(idx);
            }
        }
        let code = sidcodes::CodeSet::new(&g, s)?;
        let line = serde_json::to_string(&CodeFile::from_code(&code, None)).map_err(Error::from)?;
        text.push_str(&line);
        text.push('\n');
    }
    emit(out.as_deref(), &text)?;
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Construct { graph, out, format } => cmd_construct(graph, out, format),
        Command::Verify { input, checks } => cmd_verify(input, &checks),
        Command::Solve {
            graph,
            problem,
            max_nodes,
            max_seconds,
            no_symmetry,
            pruning,
            out,
        } => cmd_solve(
            graph,
            problem,
            max_nodes,
            max_seconds,
            no_symmetry,
            &pruning,
            out,
        ),
        Command::Sweep {
            m,
            n,
            topology,
            out,
        } => cmd_sweep(&m, &n, topology, out),
        Command::ExportDot { graph, code, out } => cmd_export_dot(graph, code, out),
        Command::RandomSubsets {
            graph,
            count,
            density,
            seed,
            out,
        } => cmd_random_subsets(graph, count, density, seed, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_UNSUPPORTED } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_UNSUPPORTED)
        }
    }
}
