//! `gff`: command-line front end for fractional `(g, f)`-factor checks.
//!
//! Exit codes: 0 feasible / holds / agree, 1 infeasible / fails / disagree,
//! 2 input, hypothesis or guard errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gf_factors::{
    all_factors_brute, check_all_including, check_exists, check_sufficient, parse_graph, parse_subgraph,
    parse_vertex_func, search_counterexample, solve_fractional_factor, solve_including, verify_equivalence,
    AllMode, Check, CheckOptions, EdgeSubgraph, Error, ExistsMode, Graph, Guards, Probability, Role, Route,
    SearchConfig, SolveOutcome, VertexFunc,
};

use crate::report::{CommandEcho, FactorOut, Report, Verdict, WitnessOut};

#[derive(Debug, Parser)]
#[command(name = "gff", version, about = "Fractional (g,f)-factor existence checks and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a fractional (g,f)-factor exists.
    Factor(FactorArgs),
    /// Decide whether all fractional (g,f)-factors including H exist.
    All(AllArgs),
    /// Pairwise degree-product sufficient test.
    Sufficient(InstanceArgs),
    /// Seeded search for discrepancies between checkers.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct InstanceArgs {
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
    #[arg(long = "func-g", value_name = "FILE")]
    func_g: PathBuf,
    #[arg(long = "func-f", value_name = "FILE")]
    func_f: PathBuf,
    /// Edges that must carry h = 1.
    #[arg(long, value_name = "FILE")]
    include: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FactorMethod {
    Flow,
    Thm1,
    Thm2,
}

#[derive(Debug, Args)]
struct FactorArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "flow")]
    method: FactorMethod,
    /// Refuse all-pairs enumeration beyond N pairs.
    #[arg(long = "max-pairs", value_name = "N")]
    max_pairs: Option<u128>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AllMethod {
    Thm4,
    Thm3,
    Brute,
    Verify,
}

#[derive(Debug, Args)]
struct AllArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "thm4")]
    method: AllMethod,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long = "n-min", default_value_t = 1)]
    n_min: usize,
    #[arg(long = "n-max", default_value_t = 6)]
    n_max: usize,
    /// Edge probability as NUM/DEN.
    #[arg(long, default_value = "1/2")]
    p: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated checks; all when omitted.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    #[command(flatten)]
    output: OutputArgs,
}

/// A failed command: a short machine-readable kind plus a message.
struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let kind = match &err {
            Error::Guard { .. } => "guard",
            Error::Hypothesis { .. } => "hypothesis",
            _ => "input",
        };
        Failure::new(kind, err.to_string())
    }
}

struct Instance {
    graph: Graph,
    g: VertexFunc,
    f: VertexFunc,
    sub: Option<EdgeSubgraph>,
}

impl Instance {
    fn sub(&self) -> EdgeSubgraph {
        self.sub.clone().unwrap_or_else(|| EdgeSubgraph::empty(&self.graph))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new("input", format!("{}: {e}", path.display())))
}

fn load(args: &InstanceArgs) -> Result<Instance, Failure> {
    let in_file = |path: &Path, err: gf_factors::ParseError| Failure::new("input", format!("{}: {err}", path.display()));
    let graph = parse_graph(&read(&args.graph)?).map_err(|e| in_file(&args.graph, e))?;
    let g = parse_vertex_func(&read(&args.func_g)?, &graph).map_err(|e| in_file(&args.func_g, e))?;
    let f = parse_vertex_func(&read(&args.func_f)?, &graph).map_err(|e| in_file(&args.func_f, e))?;
    let sub = match &args.include {
        Some(path) => Some(parse_subgraph(&read(path)?, &graph).map_err(|e| in_file(path, e))?),
        None => None,
    };
    Ok(Instance {
        graph,
        g: g.set_role(Role::G),
        f: f.set_role(Role::F),
        sub,
    })
}

fn options(max_pairs: Option<u128>) -> CheckOptions {
    let mut guards = Guards::default();
    if let Some(limit) = max_pairs {
        guards.max_pairs = limit;
    }
    CheckOptions {
        allow_zero: true,
        guards,
    }
}

fn cmd_factor(args: &FactorArgs, echo: CommandEcho) -> Result<Report, Failure> {
    let inst = load(&args.instance)?;
    let opts = options(args.max_pairs);
    if inst.sub.is_some() && inst.g.values() != inst.f.values() {
        return Err(Failure::new("input", "--include requires identical g and f (a single r)"));
    }
    let mut report = Report::new(echo, Verdict::Feasible);
    match (args.method, &inst.sub) {
        (FactorMethod::Flow, sub) => {
            let outcome = match sub {
                Some(sub) => solve_including(&inst.graph, &inst.g, sub, Route::Direct, &opts.guards)?,
                None => solve_fractional_factor(&inst.graph, &inst.g, &inst.f, &opts.guards)?,
            };
            match outcome {
                SolveOutcome::Factor(factor) => report.factor = Some(FactorOut::from(&factor)),
                SolveOutcome::Witness(witness) => {
                    report.verdict = Verdict::Infeasible;
                    report.witness = Some(WitnessOut::from(&witness));
                }
            }
        }
        (method, sub) => {
            let check = match (method, sub) {
                (FactorMethod::Thm1, None) => check_exists(&inst.graph, &inst.g, &inst.f, ExistsMode::Canonical, &opts)?,
                (_, None) => check_exists(&inst.graph, &inst.g, &inst.f, ExistsMode::Full, &opts)?,
                (FactorMethod::Thm1, Some(sub)) => {
                    check_all_including(&inst.graph, &inst.g, &inst.g, sub, AllMode::Canonical, &opts)?
                }
                (_, Some(sub)) => check_all_including(&inst.graph, &inst.g, &inst.g, sub, AllMode::Full, &opts)?,
            };
            report.stats.pairs_examined = Some(check.pairs_examined);
            if !check.holds {
                report.verdict = Verdict::Infeasible;
                report.witness = check.witness.as_ref().map(WitnessOut::from);
            }
        }
    }
    Ok(report)
}

fn cmd_all(args: &AllArgs, echo: CommandEcho) -> Result<Report, Failure> {
    let inst = load(&args.instance)?;
    let opts = options(None);
    let sub = inst.sub();
    let mut report = Report::new(echo, Verdict::Holds);
    match args.method {
        AllMethod::Thm4 | AllMethod::Thm3 => {
            let mode = match args.method {
                AllMethod::Thm3 => AllMode::CanonicalNoH,
                _ => AllMode::Full,
            };
            let check = check_all_including(&inst.graph, &inst.g, &inst.f, &sub, mode, &opts)?;
            report.stats.pairs_examined = Some(check.pairs_examined);
            if !check.holds {
                report.verdict = Verdict::Fails;
                report.witness = check.witness.as_ref().map(WitnessOut::from);
            }
        }
        AllMethod::Brute => {
            let brute = all_factors_brute(&inst.graph, &inst.g, &inst.f, &sub, &opts.guards)?;
            report.stats.r_functions_examined = Some(brute.r_examined);
            if let Some(failing) = &brute.failing {
                report.verdict = Verdict::Fails;
                report.failing_r = Some(failing.r.values().to_vec());
                report.witness = Some(WitnessOut::from(&failing.witness));
            }
        }
        AllMethod::Verify => {
            let check = verify_equivalence(&inst.graph, &inst.g, &inst.f, &sub, &opts)?;
            report.verdict = if check.agree { Verdict::Agree } else { Verdict::Disagree };
            report.failing_r = check.failing_r.map(|r| r.values().to_vec());
            report.stats.pairs_examined = Some(check.pairs_examined);
            report.stats.r_functions_examined = Some(check.r_examined);
        }
    }
    Ok(report)
}

fn cmd_sufficient(args: &InstanceArgs, echo: CommandEcho) -> Result<Report, Failure> {
    let inst = load(args)?;
    let check = check_sufficient(&inst.graph, &inst.g, &inst.f, &inst.sub())?;
    let mut report = Report::new(echo, if check.holds { Verdict::Holds } else { Verdict::Fails });
    report.witness = check.witness.as_ref().map(WitnessOut::from);
    report.stats.pairs_examined = Some(check.pairs_examined);
    Ok(report)
}

fn cmd_search(args: &SearchArgs, echo: CommandEcho) -> Result<Report, Failure> {
    let p: Probability = args.p.parse().map_err(|e: String| Failure::new("config", e))?;
    let checks = if args.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        args.checks
            .iter()
            .map(|name| name.parse::<Check>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::new("config", e))?
    };
    let config = SearchConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        p,
        trials: args.trials,
        seed: args.seed,
        checks,
        ..SearchConfig::default()
    };
    let search = search_counterexample(&config).map_err(|e| Failure::new("config", e))?;
    let verdict = if search.found() { Verdict::Disagree } else { Verdict::Agree };
    let mut report = Report::new(echo, verdict);
    report.search = Some(search);
    Ok(report)
}

fn emit(report: &Report, output: &OutputArgs) -> std::io::Result<()> {
    let text = if output.json { report.to_json() } else { report.to_text() };
    match &output.out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let args: Vec<String> = std::env::args().skip(2).collect();
    let (name, output) = match &cli.command {
        Command::Factor(a) => ("factor", &a.instance.output),
        Command::All(a) => ("all", &a.instance.output),
        Command::Sufficient(a) => ("sufficient", &a.output),
        Command::Search(a) => ("search", &a.output),
    };
    let echo = CommandEcho {
        name: name.to_string(),
        args,
    };
    let result = match &cli.command {
        Command::Factor(a) => cmd_factor(a, echo.clone()),
        Command::All(a) => cmd_all(a, echo.clone()),
        Command::Sufficient(a) => cmd_sufficient(a, echo.clone()),
        Command::Search(a) => cmd_search(a, echo.clone()),
    };
    let mut report = result.unwrap_or_else(|failure| {
        eprintln!("error: {}: {}", failure.kind, failure.message);
        let mut report = Report::new(echo, Verdict::Error);
        report.reason = Some(format!("{}: {}", failure.kind, failure.message));
        report
    });
    report.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    if let Err(err) = emit(&report, output) {
        eprintln!("error: output: {err}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.verdict.exit_code())
}
