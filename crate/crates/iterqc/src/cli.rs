//! Command-line front end. Exit status: 0 when the answer is optimal, 2 when a
//! time limit cut the search short, 1 on usage or input errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use iterqc_core::kplex::{PlexConfig, PlexSolver};
use iterqc_core::oracle::{brute_max_kplex_with, brute_max_qc_with, OracleLimit};
use iterqc_core::{gen, get_bounds, solve, Gamma, Graph, Mode, SolveOptions, VertexSet};

use crate::bench::{self, BenchConfig, Variant};
use crate::clock::WallClock;
use crate::io::{read_graph, write_edgelist, Format};
use crate::report::{labels, BoundsReport, PlexReport, SolveReport};

#[derive(Parser, Debug)]
#[command(name = "iterqc", version, about = "Exact maximum γ-quasi-clique search")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a maximum γ-quasi-clique.
    Solve(SolveArgs),
    /// Run graphs × γ × variants and write a CSV table.
    Bench(BenchArgs),
    /// Print the peeling lower and upper bounds.
    Bounds(BoundsArgs),
    /// Exhaustive search on a small graph.
    Oracle(OracleArgs),
    /// Generate a synthetic graph as an edge list.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Find a maximum k-plex.
    Kplex(KplexArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Graph file (edge list or METIS).
    path: PathBuf,
    /// Input format.
    #[arg(long, default_value = "auto")]
    format: Format,
}

impl Input {
    fn load(&self) -> Result<Graph, String> {
        read_graph(&self.path, self.format).map_err(|e| format!("{}: {e}", self.path.display()))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Basic,
    Improved,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: Input,
    /// Quasi-clique density in [0.5, 1], e.g. 0.75 or 3/4.
    #[arg(long)]
    gamma: String,
    #[arg(long, value_enum, default_value = "improved")]
    mode: ModeArg,
    /// Skip the peeling bounds and degree reduction.
    #[arg(long)]
    no_preprocess: bool,
    /// Use the heuristic size instead of the midpoint as the search floor.
    #[arg(long)]
    no_pseudo_lb: bool,
    /// Seconds before giving up with the best solution found so far.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// List the witness vertices.
    #[arg(long)]
    print_vertices: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Graph files, directories of graph files, or @list files.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value = "auto")]
    format: Format,
    /// Comma-separated γ values.
    #[arg(long, value_delimiter = ',', required = true)]
    gammas: Vec<String>,
    /// Comma-separated subset of iterqc,no-pp,no-plb,basic.
    #[arg(long, value_delimiter = ',', default_value = "iterqc,no-pp,no-plb")]
    variants: Vec<Variant>,
    /// Per-run limit in seconds (default: $QC_TIME_LIMIT, else 10800).
    #[arg(long)]
    timeout: Option<f64>,
    /// Concurrent runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output file (default: stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Comma-separated vertex fractions for scalability runs.
    #[arg(long, value_delimiter = ',')]
    scale: Vec<f64>,
    /// Seed for the vertex samples taken by --scale.
    #[arg(long, default_value_t = 0)]
    scale_seed: u64,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    gamma: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, required_unless_present = "kplex")]
    gamma: Option<String>,
    /// Report the maximum k-plex instead of the maximum quasi-clique.
    #[arg(long, value_name = "K")]
    kplex: Option<usize>,
    /// Refuse graphs with more vertices than this (at most 26).
    #[arg(long, default_value_t = 20)]
    max_n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Preferential attachment from a star on w vertices.
    Sf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Ring lattice of degree d with rewiring probability p.
    Sw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct KplexArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    k: usize,
    /// Report nothing unless the maximum has at least this many vertices.
    #[arg(long, default_value_t = 1)]
    floor: usize,
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    json: bool,
}

type CmdResult = Result<ExitCode, String>;

fn parse_gamma(text: &str) -> Result<Gamma, String> {
    let g = Gamma::parse(text).map_err(|e| format!("--gamma {text}: {e}"))?;
    if !g.in_solver_range() {
        return Err(format!("--gamma {text}: must lie in [0.5, 1]"));
    }
    Ok(g)
}

fn status(optimal: bool) -> ExitCode {
    if optimal {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn join(ids: &[u64]) -> String {
    ids.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_solve(a: SolveArgs) -> CmdResult {
    let gamma = parse_gamma(&a.gamma)?;
    let g = a.input.load()?;
    let opts = SolveOptions {
        use_pp: !a.no_preprocess,
        use_plb: !a.no_pseudo_lb,
        mode: match a.mode {
            ModeArg::Basic => Mode::Basic,
            ModeArg::Improved => Mode::Improved,
        },
        ..SolveOptions::default()
    };
    let clock = WallClock::from_secs(a.time_limit);
    let r = solve(&g, gamma, opts, &clock).map_err(|e| e.to_string())?;
    let report = SolveReport::from_result(&g, &r);
    if a.json {
        print_json(&report)?;
    } else {
        if r.optimal {
            println!("s*={}", r.s_star);
        } else {
            println!("timeout: best known lb={} (not proven optimal)", r.s_star);
        }
        let lb = report.lb.map_or("-".to_string(), |l| l.to_string());
        println!(
            "lb={lb} ub={} red_v={:.2}% red_e={:.2}% iterations={} time_ms={}",
            report.ub,
            report.red_v_pct,
            report.red_e_pct,
            report.trace.len(),
            report.total_ms
        );
        if a.print_vertices {
            println!("vertices: {}", join(&report.witness));
        }
    }
    Ok(status(r.optimal))
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let gammas = a.gammas.iter().map(|g| parse_gamma(g)).collect::<Result<Vec<_>, _>>()?;
    if a.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    if let Some(r) = a.scale.iter().find(|&&r| !(r > 0.0 && r <= 1.0)) {
        return Err(format!("--scale {r}: fractions must lie in (0, 1]"));
    }
    let cfg = BenchConfig {
        inputs: a.inputs,
        format: a.format,
        gammas,
        variants: a.variants,
        timeout: bench::resolve_timeout(a.timeout)?,
        jobs: a.jobs,
        scales: if a.scale.is_empty() { vec![1.0] } else { a.scale },
        scale_seed: a.scale_seed,
    };
    let rows = match &a.csv {
        Some(path) => {
            let file = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
            bench::run(&cfg, BufWriter::new(file))
        }
        None => bench::run(&cfg, io::stdout()),
    }
    .map_err(|e| e.to_string())?;
    let summary = bench::summarize(&rows);
    eprint!("{summary}");
    Ok(if summary.disagreements.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    let gamma = parse_gamma(&a.gamma)?;
    let g = a.input.load()?;
    let b = get_bounds(&g, gamma).map_err(|e| e.to_string())?;
    if a.json {
        print_json(&BoundsReport::new(&g, gamma, &b))?;
    } else {
        println!("lb={} ub={}", b.lb, b.ub);
        println!("max_core={} lb_witness: {}", b.max_core, join(&labels(&g, &b.lb_witness)));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    let limit = OracleLimit::new(a.max_n).map_err(|e| e.to_string())?;
    let g = a.input.load()?;
    let clock = WallClock::unlimited();
    if let Some(k) = a.kplex {
        let (size, set) = brute_max_kplex_with(&g, k, limit).map_err(|e| e.to_string())?;
        let report = PlexReport {
            k,
            floor: 1,
            size,
            witness: labels(&g, &set),
            optimal: true,
            total_ms: clock.elapsed().as_millis() as u64,
        };
        if a.json {
            print_json(&report)?;
        } else {
            println!("max {k}-plex size={size}");
            println!("vertices: {}", join(&report.witness));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let gamma = parse_gamma(a.gamma.as_deref().expect("clap enforces --gamma"))?;
    let (size, set) = brute_max_qc_with(&g, gamma, limit).map_err(|e| e.to_string())?;
    let report = SolveReport::from_oracle(&g, gamma, size, &set, clock.elapsed().as_millis() as u64);
    if a.json {
        print_json(&report)?;
    } else {
        println!("s*={size}");
        println!("vertices: {}", join(&report.witness));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(c: GenCommand) -> CmdResult {
    let (g, manifest, output) = match c {
        GenCommand::Sf { n, w, seed, output } => (
            gen::gen_sf(n, w, seed),
            format!("gen model=sf n={n} w={w} seed={seed}"),
            output,
        ),
        GenCommand::Sw { n, d, p, seed, output } => (
            gen::gen_sw(n, d, p, seed),
            format!("gen model=sw n={n} d={d} p={p} seed={seed}"),
            output,
        ),
    };
    let g = g.map_err(|e| e.to_string())?;
    let header = [manifest, format!("n={} m={}", g.n(), g.m())];
    let written = match &output {
        Some(path) => File::create(path)
            .and_then(|f| write_edgelist(&g, BufWriter::new(f), &header))
            .map_err(|e| format!("{}: {e}", path.display())),
        None => write_edgelist(&g, io::stdout().lock(), &header).map_err(|e| e.to_string()),
    };
    written?;
    if output.is_some() {
        eprintln!("wrote n={} m={}", g.n(), g.m());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kplex(a: KplexArgs) -> CmdResult {
    if a.k == 0 {
        return Err("--k must be at least 1".into());
    }
    if a.floor == 0 {
        return Err("--floor must be at least 1".into());
    }
    let g = a.input.load()?;
    let clock = WallClock::from_secs(a.time_limit);
    let mut solver = PlexSolver::new(PlexConfig::default(), &clock);
    let heu = solver.heuristic(&g, a.k);
    let (best, complete) = solver.exact(&g, a.k, a.floor, Some(heu));
    let set: VertexSet = best.into_iter().collect();
    let report = PlexReport {
        k: a.k,
        floor: a.floor,
        size: set.len(),
        witness: labels(&g, &set),
        optimal: complete,
        total_ms: clock.elapsed().as_millis() as u64,
    };
    if a.json {
        print_json(&report)?;
    } else {
        if complete {
            println!("size={}", report.size);
        } else {
            println!("timeout: best known size={} (not proven optimal)", report.size);
        }
        println!("vertices: {}", join(&report.witness));
    }
    Ok(status(complete))
}

/// Parses `std::env::args` and runs the chosen command.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Gen(c) => cmd_gen(c),
        Command::Kplex(a) => cmd_kplex(a),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
