//! Batch runs over graphs × γ × solver variants (× subgraph scales), one CSV
//! row per run.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use iterqc_core::gen::sample_subgraph;
use iterqc_core::{solve, Gamma, Graph, Mode, SolveOptions};

use crate::clock::WallClock;
use crate::io::{read_graph, Format};

/// Header of the CSV output.
pub const COLUMNS: [&str; 14] = [
    "graph", "n", "m", "gamma", "variant", "scale", "s_star", "optimal", "lb", "ub", "red_v_pct", "red_e_pct",
    "iters", "elapsed_ms",
];

/// Environment variable holding the default per-run timeout in seconds.
pub const TIME_LIMIT_ENV: &str = "QC_TIME_LIMIT";
pub const DEFAULT_TIMEOUT_SECS: f64 = 10800.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variant {
    /// Preprocessing, pseudo lower bound, improved iteration.
    IterQc,
    NoPp,
    NoPlb,
    Basic,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::IterQc, Variant::NoPp, Variant::NoPlb, Variant::Basic];

    pub fn options(self) -> SolveOptions {
        let base = SolveOptions::default();
        match self {
            Variant::IterQc => base,
            Variant::NoPp => SolveOptions { use_pp: false, ..base },
            Variant::NoPlb => SolveOptions { use_plb: false, ..base },
            Variant::Basic => SolveOptions { mode: Mode::Basic, ..base },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::IterQc => "iterqc",
            Variant::NoPp => "no-pp",
            Variant::NoPlb => "no-plb",
            Variant::Basic => "basic",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant {s:?} (expected iterqc, no-pp, no-plb or basic)"))
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub inputs: Vec<PathBuf>,
    pub format: Format,
    pub gammas: Vec<Gamma>,
    pub variants: Vec<Variant>,
    /// Per-run limit in seconds.
    pub timeout: f64,
    pub jobs: usize,
    /// Fractions of vertices to keep; `1.0` means the whole graph.
    pub scales: Vec<f64>,
    pub scale_seed: u64,
}

/// Outcome column of a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Timeout,
    Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub graph: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub gamma: Gamma,
    pub variant: Variant,
    pub scale: f64,
    /// Blank unless the run finished.
    pub s_star: Option<usize>,
    pub status: Status,
    pub lb: Option<usize>,
    pub ub: Option<usize>,
    pub red_v_pct: Option<f64>,
    pub red_e_pct: Option<f64>,
    pub iters: Option<usize>,
    pub elapsed_ms: u64,
}

impl BenchRow {
    fn record(&self) -> Vec<String> {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map_or(String::new(), |v| v.to_string())
        }
        vec![
            self.graph.clone(),
            opt(self.n),
            opt(self.m),
            self.gamma.to_string(),
            self.variant.to_string(),
            self.scale.to_string(),
            opt(self.s_star),
            match self.status {
                Status::Optimal => "true".into(),
                Status::Timeout => "TIMEOUT".into(),
                Status::Error => "ERROR".into(),
            },
            opt(self.lb),
            opt(self.ub),
            opt(self.red_v_pct.map(|p| format!("{p:.2}"))),
            opt(self.red_e_pct.map(|p| format!("{p:.2}"))),
            opt(self.iters),
            self.elapsed_ms.to_string(),
        ]
    }
}

/// Expands directories (sorted, hidden files skipped) and `@list` files (one
/// path per line, relative to the list file).
pub fn expand_inputs(inputs: &[PathBuf]) -> std::io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in inputs {
        let text = p.to_string_lossy();
        if let Some(list) = text.strip_prefix('@') {
            let list = Path::new(list);
            let base = list.parent().unwrap_or(Path::new("."));
            for line in fs::read_to_string(list)?.lines() {
                let line = line.trim();
                if !line.is_empty() && !line.starts_with('#') {
                    out.push(base.join(line));
                }
            }
        } else if p.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.is_file() && !f.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// `⌈r·n⌉`, clamped to `n`.
pub fn scaled_count(n: usize, r: f64) -> usize {
    ((r * n as f64).ceil() as usize).min(n)
}

struct Job {
    graph: usize,
    scale: usize,
    gamma: Gamma,
    variant: Variant,
}

/// Rows are written in job order as soon as every earlier row is done, so the
/// file is identical (up to timings) for any `jobs`.
struct OrderedSink<W: Write> {
    writer: csv::Writer<W>,
    slots: Vec<Option<BenchRow>>,
    next: usize,
}

impl<W: Write> OrderedSink<W> {
    fn put(&mut self, idx: usize, row: BenchRow) -> csv::Result<()> {
        self.slots[idx] = Some(row);
        while let Some(Some(row)) = self.slots.get(self.next) {
            self.writer.write_record(row.record())?;
            self.writer.flush()?;
            self.next += 1;
        }
        Ok(())
    }
}

/// Per-graph inputs, loaded and scaled once.
struct Instance {
    name: String,
    graphs: Vec<Result<Graph, String>>,
}

fn load(path: &Path, cfg: &BenchConfig) -> Instance {
    let name = path.display().to_string();
    let graphs = match read_graph(path, cfg.format) {
        Ok(g) => cfg
            .scales
            .iter()
            .map(|&r| {
                Ok(if r >= 1.0 {
                    g.clone()
                } else {
                    sample_subgraph(&g, scaled_count(g.n(), r), cfg.scale_seed)
                })
            })
            .collect(),
        Err(e) => {
            eprintln!("skipping {name}: {e}");
            cfg.scales.iter().map(|_| Err(e.to_string())).collect()
        }
    };
    Instance { name, graphs }
}

fn run_job(inst: &Instance, job: &Job, cfg: &BenchConfig) -> BenchRow {
    let scale = cfg.scales[job.scale];
    let mut row = BenchRow {
        graph: inst.name.clone(),
        n: None,
        m: None,
        gamma: job.gamma,
        variant: job.variant,
        scale,
        s_star: None,
        status: Status::Error,
        lb: None,
        ub: None,
        red_v_pct: None,
        red_e_pct: None,
        iters: None,
        elapsed_ms: 0,
    };
    let Ok(g) = &inst.graphs[job.scale] else {
        return row;
    };
    row.n = Some(g.n());
    row.m = Some(g.m());
    let clock = WallClock::new(Some(Duration::from_secs_f64(cfg.timeout)));
    match solve(g, job.gamma, job.variant.options(), &clock) {
        Ok(r) => {
            row.status = if r.optimal { Status::Optimal } else { Status::Timeout };
            row.s_star = r.optimal.then_some(r.s_star);
            row.lb = r.bounds.as_ref().map(|b| b.lb);
            row.ub = Some(r.ub);
            row.red_v_pct = Some(r.red_v_pct);
            row.red_e_pct = Some(r.red_e_pct);
            row.iters = Some(r.trace.len());
        }
        Err(e) => eprintln!("{}: {e}", inst.name),
    }
    row.elapsed_ms = clock.elapsed().as_millis() as u64;
    row
}

/// Runs every configured combination and writes CSV rows to `out`.
pub fn run<W: Write + Send>(cfg: &BenchConfig, out: W) -> Result<Vec<BenchRow>, Box<dyn std::error::Error>> {
    let paths = expand_inputs(&cfg.inputs)?;
    let instances: Vec<Instance> = paths.iter().map(|p| load(p, cfg)).collect();
    let mut jobs = Vec::new();
    for graph in 0..instances.len() {
        for scale in 0..cfg.scales.len() {
            for &gamma in &cfg.gammas {
                for &variant in &cfg.variants {
                    jobs.push(Job {
                        graph,
                        scale,
                        gamma,
                        variant,
                    });
                }
            }
        }
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(COLUMNS)?;
    writer.flush()?;
    let sink = Mutex::new(OrderedSink {
        writer,
        slots: vec![None; jobs.len()],
        next: 0,
    });
    let cursor = AtomicUsize::new(0);
    let failure: Mutex<Option<csv::Error>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..cfg.jobs.max(1).min(jobs.len().max(1)) {
            scope.spawn(|| loop {
                let idx = cursor.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(idx) else { break };
                let row = run_job(&instances[job.graph], job, cfg);
                if let Err(e) = sink.lock().expect("sink lock").put(idx, row) {
                    failure.lock().expect("failure lock").get_or_insert(e);
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().expect("failure lock") {
        return Err(e.into());
    }
    let sink = sink.into_inner().expect("sink lock");
    Ok(sink.slots.into_iter().map(|r| r.expect("every job ran")).collect())
}

/// Solved-within-limit counts per variant, and any (graph, γ, scale) whose
/// finished variants disagree on `s*`.
pub struct Summary {
    pub solved: BTreeMap<Variant, (usize, usize)>,
    pub disagreements: Vec<String>,
}

pub fn summarize(rows: &[BenchRow]) -> Summary {
    let mut solved: BTreeMap<Variant, (usize, usize)> = BTreeMap::new();
    let mut answers: BTreeMap<(String, String, String), Vec<(Variant, usize)>> = BTreeMap::new();
    for r in rows {
        let e = solved.entry(r.variant).or_default();
        e.1 += 1;
        if let Some(s) = r.s_star {
            e.0 += 1;
            answers
                .entry((r.graph.clone(), r.gamma.to_string(), r.scale.to_string()))
                .or_default()
                .push((r.variant, s));
        }
    }
    let disagreements = answers
        .into_iter()
        .filter(|(_, v)| v.iter().any(|&(_, s)| s != v[0].1))
        .map(|((g, gamma, scale), v)| {
            let detail: Vec<String> = v.iter().map(|(var, s)| format!("{var}={s}")).collect();
            format!("{g} gamma={gamma} scale={scale}: {}", detail.join(" "))
        })
        .collect();
    Summary { solved, disagreements }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, (ok, total)) in &self.solved {
            writeln!(f, "{v}: solved {ok}/{total}")?;
        }
        for d in &self.disagreements {
            writeln!(f, "DISAGREEMENT {d}")?;
        }
        Ok(())
    }
}

/// `--timeout` if given, else `$QC_TIME_LIMIT`, else three hours.
pub fn resolve_timeout(flag: Option<f64>) -> Result<f64, String> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(TIME_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{TIME_LIMIT_ENV}={v:?} is not a number of seconds")),
        Err(_) => Ok(DEFAULT_TIMEOUT_SECS),
    }
}
