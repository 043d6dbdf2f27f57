//! Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//!
//! Runs without the libtest harness so every line is printed even when an
//! earlier criterion fails. The process exits nonzero if any criterion fails.
//! Set `ITERQC_DIMACS_DIR` to a directory of graph files to enable criterion 9.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use iterqc::clock::WallClock;
use iterqc::core::gen::{gen_er, gen_sf, gen_sw};
use iterqc::core::graph::{is_kplex, is_quasi_clique};
use iterqc::core::kplex::pseudo_lb;
use iterqc::core::oracle::{brute_max_kplex, brute_max_qc};
use iterqc::core::{
    basic_iterate, get_bounds, get_k, improved_iter_search, plex_brb, reduce_graph, solve, Gamma, Graph,
    IterTraceEntry, Mode, SolveOptions, SolveResult, Unlimited,
};
use iterqc::io::{read_graph, Format};

const GAMMAS: [&str; 6] = ["0.5", "0.55", "0.6", "0.75", "0.9", "1"];

type Check = Result<String, String>;

fn gammas() -> Vec<Gamma> {
    GAMMAS.iter().map(|g| Gamma::parse(g).unwrap()).collect()
}

struct Case {
    name: String,
    graph: Graph,
}

/// 540 G(n, p) graphs covering every n in 1..=16 and p in 0.1..=0.9.
fn er_corpus() -> Vec<Case> {
    (0..540u64)
        .map(|i| {
            let n = 1 + (i % 16) as usize;
            let p = 0.1 * (1 + (i / 16) % 9) as f64;
            let seed = 1000 + i;
            Case {
                name: format!("er n={n} p={p:.1} seed={seed}"),
                graph: gen_er(n, p, seed).unwrap(),
            }
        })
        .collect()
}

fn variants() -> Vec<(String, SolveOptions)> {
    let mut out = Vec::new();
    for mode in [Mode::Improved, Mode::Basic] {
        for use_pp in [true, false] {
            for use_plb in [true, false] {
                let name = format!(
                    "{}{}{}",
                    if mode == Mode::Improved { "improved" } else { "basic" },
                    if use_pp { "+pp" } else { "-pp" },
                    if use_plb { "+plb" } else { "-plb" },
                );
                out.push((
                    name,
                    SolveOptions {
                        mode,
                        use_pp,
                        use_plb,
                        ..SolveOptions::default()
                    },
                ));
            }
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {:.1}s, limit {:.0}s", t.as_secs_f64(), limit.as_secs_f64()))
}

fn criterion_1(corpus: &[Case]) -> Check {
    let start = Instant::now();
    let mut runs = 0;
    for case in corpus {
        for gamma in gammas() {
            let (want, _) = brute_max_qc(&case.graph, gamma).map_err(|e| format!("{}: oracle: {e}", case.name))?;
            let r = solve(&case.graph, gamma, SolveOptions::default(), &Unlimited)
                .map_err(|e| format!("{} γ={gamma}: {e}", case.name))?;
            ensure(r.optimal && r.s_star == want, || {
                format!("{} γ={gamma}: solve {} vs oracle {want}", case.name, r.s_star)
            })?;
            ensure(r.witness.len() == want, || format!("{} γ={gamma}: witness size", case.name))?;
            ensure(is_quasi_clique(&case.graph, &r.witness, gamma) == Ok(true), || {
                format!("{} γ={gamma}: witness is not a quasi-clique", case.name)
            })?;
            runs += 1;
        }
    }
    within(start, Duration::from_secs(60), "oracle comparison")?;
    Ok(format!("{runs} solves match the oracle in {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_2(corpus: &[Case]) -> Check {
    let start = Instant::now();
    let mut runs = 0;
    for case in corpus {
        let g = &case.graph;
        for k in 1..=4 {
            let (want, _) = brute_max_kplex(g, k).map_err(|e| format!("{}: oracle: {e}", case.name))?;
            let got = plex_brb(g, k, 1).map_err(|e| format!("{} k={k}: {e}", case.name))?;
            ensure(got.len() == want, || format!("{} k={k}: brb {} vs oracle {want}", case.name, got.len()))?;
            ensure(want == 0 || is_kplex(g, &got, k) == Ok(true), || format!("{} k={k}: not a plex", case.name))?;
            // below or at the optimum the floor is met exactly; above it nothing qualifies
            for floor in 1..=want + 2 {
                let got = plex_brb(g, k, floor).map_err(|e| format!("{} k={k} floor={floor}: {e}", case.name))?;
                let expect = if floor <= want { want } else { 0 };
                ensure(got.len() == expect, || {
                    format!("{} k={k} floor={floor}: got {} expected {expect}", case.name, got.len())
                })?;
                runs += 1;
            }
        }
    }
    within(start, Duration::from_secs(60), "k-plex comparison")?;
    Ok(format!("{runs} floor runs match the oracle in {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_3(corpus: &[Case]) -> Check {
    let start = Instant::now();
    let variants = variants();
    let gamma = Gamma::parse("0.75").unwrap();
    let mut failures = Vec::new();

    for case in corpus {
        for gamma in gammas() {
            let sizes: Vec<usize> = variants
                .iter()
                .map(|(_, o)| solve(&case.graph, gamma, *o, &Unlimited).map(|r| r.s_star).unwrap_or(usize::MAX))
                .collect();
            if sizes.iter().any(|&s| s != sizes[0]) {
                failures.push(format!("{} γ={gamma}: {sizes:?}", case.name));
            }
        }
    }

    let mut generated = Vec::new();
    for seed in 1..=10 {
        generated.push((format!("sf seed={seed}"), gen_sf(2000, 10, seed).unwrap()));
    }
    for seed in 1..=10 {
        generated.push((format!("sw seed={seed}"), gen_sw(2000, 10, 0.2, seed).unwrap()));
    }
    // one core cannot afford unbounded runs here, so each is capped
    let per_run = Duration::from_secs(5);
    let mut certified = 0;
    // graphs grouped by the set of variants that ran out of time
    let mut late_groups: Vec<(Vec<String>, Vec<String>)> = Vec::new();
    for (name, g) in &generated {
        let mut sizes = Vec::new();
        let mut late = Vec::new();
        for (vname, o) in &variants {
            let clock = WallClock::new(Some(per_run));
            match solve(g, gamma, *o, &clock) {
                Ok(r) if r.optimal => sizes.push(r.s_star),
                Ok(_) => late.push(vname.clone()),
                Err(e) => failures.push(format!("{name} {vname}: {e}")),
            }
        }
        if sizes.iter().any(|&s| s != sizes[0]) {
            failures.push(format!("{name}: disagreement {sizes:?}"));
        } else if late.is_empty() {
            certified += 1;
        }
        if !late.is_empty() {
            match late_groups.iter_mut().find(|(l, _)| *l == late) {
                Some((_, names)) => names.push(name.clone()),
                None => late_groups.push((late, vec![name.clone()])),
            }
        }
    }
    for (late, names) in late_groups {
        failures.push(format!(
            "[{}] not certified within {}s by {}",
            names.join(", "),
            per_run.as_secs(),
            late.join(", ")
        ));
    }
    let total = start.elapsed();
    if total > Duration::from_secs(300) {
        failures.push(format!("total {:.0}s exceeds 300s", total.as_secs_f64()));
    }
    if failures.is_empty() {
        Ok(format!(
            "8 variants agree on {} ER cases and 20 generated graphs in {:.0}s",
            corpus.len() * GAMMAS.len(),
            total.as_secs_f64()
        ))
    } else {
        Err(format!(
            "{certified}/20 generated graphs certified by all variants; {}",
            failures.join("; ")
        ))
    }
}

fn check_chain(trace: &[IterTraceEntry], s0: usize, gamma: Gamma, s_star: usize, what: &str) -> Result<(), String> {
    let mut prev = s0;
    for e in trace {
        ensure(e.k == get_k(prev, gamma).unwrap(), || format!("{what}: k does not follow s"))?;
        ensure(e.s >= s_star, || format!("{what}: s_i={} below s*={s_star}", e.s))?;
        prev = e.s;
    }
    Ok(())
}

fn criterion_4(corpus: &[Case]) -> Check {
    let mut traces = 0;
    for case in corpus {
        let g = &case.graph;
        for gamma in gammas() {
            let what = format!("{} γ={gamma}", case.name);
            let (s_star, _) = brute_max_qc(g, gamma).map_err(|e| e.to_string())?;

            let (s, _, trace) = basic_iterate(g, gamma, &Unlimited).map_err(|e| format!("{what}: {e}"))?;
            ensure(s == s_star, || format!("{what}: basic {s} vs {s_star}"))?;
            check_chain(&trace, g.n(), gamma, s_star, &what)?;
            ensure(trace.len() <= g.n(), || format!("{what}: {} steps for n={}", trace.len(), g.n()))?;
            // strict up to the step before termination; the final size may repeat
            let mut sizes = vec![g.n()];
            sizes.extend(trace[..trace.len() - 1].iter().map(|e| e.s));
            ensure(sizes.windows(2).all(|w| w[1] < w[0]), || format!("{what}: basic sizes {sizes:?}"))?;

            let b = get_bounds(g, gamma).map_err(|e| format!("{what}: {e}"))?;
            ensure(b.lb <= s_star && s_star <= b.ub, || format!("{what}: bounds {}..{}", b.lb, b.ub))?;
            ensure(b.ub <= 1 + gamma.ceil_div(b.max_core), || format!("{what}: ub above core bound"))?;

            let (s, _, trace) = improved_iter_search(g, gamma, b.ub, &Unlimited).map_err(|e| format!("{what}: {e}"))?;
            ensure(s == s_star, || format!("{what}: improved {s} vs {s_star}"))?;
            check_chain(&trace, b.ub, gamma, s_star, &what)?;
            traces += 2;

            for (vname, o) in variants() {
                let r = solve(g, gamma, o, &Unlimited).map_err(|e| format!("{what} {vname}: {e}"))?;
                let s0 = match (o.mode, &r.bounds) {
                    (Mode::Improved, _) => r.ub,
                    (Mode::Basic, Some(b)) => reduce_graph(g, gamma, b.lb).unwrap().graph.n(),
                    (Mode::Basic, None) => g.n(),
                };
                check_chain(&r.trace, s0, gamma, s_star, &format!("{what} {vname}"))?;
                traces += 1;
            }
        }
    }
    Ok(format!("{traces} traces satisfy the chain, descent and bound properties"))
}

fn criterion_5() -> Check {
    let g = Gamma::parse("0.55").unwrap();
    let got = [
        get_k(8, g).unwrap(),
        get_k(7, g).unwrap(),
        get_k(6, g).unwrap(),
        pseudo_lb(3, 7),
        pseudo_lb(5, 3),
    ];
    ensure(got == [4, 3, 3, 5, 4], || format!("got {got:?}"))?;
    Ok("get_k(8,7,6)=4,3,3 at γ=0.55; pseudo_lb(3,7)=5, pseudo_lb(5,3)=4".into())
}

fn criterion_6() -> Check {
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            edges.push((u, v));
        }
    }
    edges.extend([(6, 7), (7, 8), (8, 9), (7, 10), (11, 12), (12, 13)]);
    let g = Graph::from_edges(14, edges).unwrap();
    let gamma = Gamma::parse("0.75").unwrap();
    let b = get_bounds(&g, gamma).map_err(|e| e.to_string())?;
    ensure(b.lb == 6 && b.ub == 6, || format!("bounds {}..{}", b.lb, b.ub))?;
    let r: SolveResult = solve(&g, gamma, SolveOptions::default(), &Unlimited).map_err(|e| e.to_string())?;
    ensure(r.optimal && r.s_star == 6, || format!("s*={}", r.s_star))?;
    ensure(r.stats.brb_calls == 0 && r.stats.heu_calls == 0, || {
        format!("brb_calls={} heu_calls={}", r.stats.brb_calls, r.stats.heu_calls)
    })?;
    ensure(r.witness.as_slice() == [0, 1, 2, 3, 4, 5], || format!("witness {:?}", r.witness))?;
    Ok("K6 plus trees at γ=0.75: lb=ub=6, zero plex calls".into())
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let sf = gen_sf(1000, 10, 42).map_err(|e| e.to_string())?;
    ensure(sf.m() == 9909, || format!("sf m={}", sf.m()))?;
    ensure(sf == gen_sf(1000, 10, 42).unwrap(), || "sf not reproducible".into())?;
    for p in [0.0, 0.2] {
        let sw = gen_sw(1000, 10, p, 42).map_err(|e| e.to_string())?;
        ensure(sw.m() == 5000, || format!("sw p={p} m={}", sw.m()))?;
        ensure(sw == gen_sw(1000, 10, p, 42).unwrap(), || format!("sw p={p} not reproducible"))?;
    }
    within(start, Duration::from_secs(5), "generation")?;
    Ok("sf m=9909, sw m=5000 for p in {0, 0.2}, seeds reproduce".into())
}

fn criterion_8() -> Check {
    let gamma = Gamma::parse("0.75").unwrap();
    let limit = Duration::from_secs(60);
    let timed = |g: &Graph, opts: SolveOptions| -> Result<(SolveResult, f64), String> {
        let clock = WallClock::new(Some(limit));
        let r = solve(g, gamma, opts, &clock).map_err(|e| e.to_string())?;
        Ok((r, clock.elapsed().as_secs_f64()))
    };
    let no_pp = SolveOptions {
        use_pp: false,
        ..SolveOptions::default()
    };

    let sf = gen_sf(100_000, 10, 1).map_err(|e| e.to_string())?;
    let (r, t_sf) = timed(&sf, SolveOptions::default())?;
    ensure(r.optimal, || format!("sf default not done in 60s (best {})", r.s_star))?;
    ensure(is_quasi_clique(&sf, &r.witness, gamma) == Ok(true), || "sf witness invalid".into())?;
    let sf_star = r.s_star;
    // a no-pp run cut off by the limit is at least as slow as the limit
    let (r, t_nopp) = timed(&sf, no_pp)?;
    if r.optimal {
        ensure(r.s_star == sf_star, || format!("sf no-pp {} vs default {sf_star}", r.s_star))?;
    }
    ensure(t_sf <= 1.1 * t_nopp, || format!("sf default {t_sf:.1}s vs no-pp {t_nopp:.1}s"))?;

    let sw = gen_sw(100_000, 10, 0.2, 1).map_err(|e| e.to_string())?;
    let (r, t_sw) = timed(&sw, SolveOptions::default())?;
    ensure(r.optimal, || format!("sw default not done in 60s (best {})", r.s_star))?;
    ensure(is_quasi_clique(&sw, &r.witness, gamma) == Ok(true), || "sw witness invalid".into())?;

    Ok(format!(
        "sf s*={sf_star} default {t_sf:.1}s vs no-pp {t_nopp:.1}s; sw s*={} in {t_sw:.1}s",
        r.s_star
    ))
}

/// OSM road graphs whose bounds meet at 5 for γ = 0.75.
fn known_optimum(path: &std::path::Path) -> Option<usize> {
    let stem = path.file_name()?.to_str()?.to_ascii_lowercase();
    let road = ["belgium", "great-britain", "europe"];
    (stem.contains("osm") && road.iter().any(|r| stem.contains(r))).then_some(5)
}

fn criterion_9() -> Option<Check> {
    let dir = PathBuf::from(std::env::var_os("ITERQC_DIMACS_DIR")?);
    let mut files: Vec<PathBuf> = match std::fs::read_dir(&dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
            .collect(),
        Err(e) => return Some(Err(format!("{}: {e}", dir.display()))),
    };
    if files.is_empty() {
        return None;
    }
    files.sort();
    files.truncate(5);
    let limit = std::env::var("ITERQC_DIMACS_LIMIT")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(600.0);
    let gamma = Gamma::parse("0.75").unwrap();
    let mut lines = Vec::new();
    let mut check = || -> Result<(), String> {
        for path in &files {
            let name = path.display().to_string();
            let g = read_graph(path, Format::Auto).map_err(|e| format!("{name}: {e}"))?;
            let mut certified = Vec::new();
            for (vname, o) in variants() {
                let r = solve(&g, gamma, o, &WallClock::from_secs(Some(limit))).map_err(|e| format!("{name}: {e}"))?;
                ensure(r.witness.is_empty() || is_quasi_clique(&g, &r.witness, gamma) == Ok(true), || {
                    format!("{name} {vname}: witness invalid")
                })?;
                ensure(r.witness.len() == r.s_star, || format!("{name} {vname}: witness size"))?;
                if r.optimal {
                    certified.push(r.s_star);
                }
            }
            ensure(certified.iter().all(|&s| s == certified[0]), || format!("{name}: {certified:?}"))?;
            if let (Some(want), Some(&got)) = (known_optimum(path), certified.first()) {
                ensure(got == want, || format!("{name}: s*={got}, expected {want}"))?;
            }
            lines.push(format!(
                "{} s*={:?} ({}/8 certified)",
                path.file_name().unwrap().to_string_lossy(),
                certified.first(),
                certified.len()
            ));
        }
        Ok(())
    };
    Some(check().map(|_| lines.join(", ")))
}

fn report(n: usize, check: Option<Check>, failed: &mut bool) {
    match check {
        Some(Ok(detail)) => println!("criterion {n}: PASS - {detail}"),
        Some(Err(detail)) => {
            *failed = true;
            println!("criterion {n}: FAIL - {detail}");
        }
        None => println!("criterion {n}: SKIP - set ITERQC_DIMACS_DIR to a directory of graph files"),
    }
}

fn main() {
    // `cargo test -- --list` and similar harness probes expect no work
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let corpus = er_corpus();
    let mut failed = false;
    report(1, Some(criterion_1(&corpus)), &mut failed);
    report(2, Some(criterion_2(&corpus)), &mut failed);
    report(3, Some(criterion_3(&corpus)), &mut failed);
    report(4, Some(criterion_4(&corpus)), &mut failed);
    report(5, Some(criterion_5()), &mut failed);
    report(6, Some(criterion_6()), &mut failed);
    report(7, Some(criterion_7()), &mut failed);
    report(8, Some(criterion_8()), &mut failed);
    report(9, criterion_9(), &mut failed);
    if failed {
        std::process::exit(1);
    }
}
