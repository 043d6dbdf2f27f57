//! Machine-readable results.

use serde::Serialize;

use iterqc_core::{BoundsResult, Gamma, Graph, SolveResult, VertexSet};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub i: usize,
    pub k: usize,
    pub s: usize,
    pub pseudo_lb: Option<usize>,
    pub pseudo_size: Option<usize>,
    pub ms: u64,
}

/// JSON shape shared by `solve` and `oracle`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    pub gamma: f64,
    pub s_star: usize,
    /// Original vertex ids.
    pub witness: Vec<u64>,
    pub optimal: bool,
    pub trace: Vec<TraceRow>,
    /// Absent when preprocessing was skipped.
    pub lb: Option<usize>,
    pub ub: usize,
    pub red_v_pct: f64,
    pub red_e_pct: f64,
    pub total_ms: u64,
}

pub fn labels(g: &Graph, s: &VertexSet) -> Vec<u64> {
    let mut out: Vec<u64> = s.iter().map(|v| g.label(v)).collect();
    out.sort_unstable();
    out
}

impl SolveReport {
    pub fn from_result(g: &Graph, r: &SolveResult) -> Self {
        SolveReport {
            method: None,
            gamma: r.gamma.as_f64(),
            s_star: r.s_star,
            witness: labels(g, &r.witness),
            optimal: r.optimal,
            trace: r
                .trace
                .iter()
                .map(|e| TraceRow {
                    i: e.i,
                    k: e.k,
                    s: e.s,
                    pseudo_lb: e.pseudo_lb,
                    pseudo_size: e.pseudo_size,
                    ms: e.elapsed_ms,
                })
                .collect(),
            lb: r.bounds.as_ref().map(|b| b.lb),
            ub: r.ub,
            red_v_pct: r.red_v_pct,
            red_e_pct: r.red_e_pct,
            total_ms: r.total_ms,
        }
    }

    /// Exhaustive answers are exact, so `lb = ub = s*`.
    pub fn from_oracle(g: &Graph, gamma: Gamma, size: usize, witness: &VertexSet, ms: u64) -> Self {
        SolveReport {
            method: Some("brute"),
            gamma: gamma.as_f64(),
            s_star: size,
            witness: labels(g, witness),
            optimal: true,
            trace: Vec::new(),
            lb: Some(size),
            ub: size,
            red_v_pct: 0.0,
            red_e_pct: 0.0,
            total_ms: ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub gamma: f64,
    pub lb: usize,
    pub ub: usize,
    pub max_core: usize,
    pub lb_witness: Vec<u64>,
}

impl BoundsReport {
    pub fn new(g: &Graph, gamma: Gamma, b: &BoundsResult) -> Self {
        BoundsReport {
            gamma: gamma.as_f64(),
            lb: b.lb,
            ub: b.ub,
            max_core: b.max_core,
            lb_witness: labels(g, &b.lb_witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlexReport {
    pub k: usize,
    pub floor: usize,
    pub size: usize,
    pub witness: Vec<u64>,
    pub optimal: bool,
    pub total_ms: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use iterqc_core::{solve, SolveOptions, Unlimited};

    #[test]
    fn json_shape() {
        let g = Graph::from_labeled_edges([(7, 8), (8, 9), (9, 7)]);
        let gamma = Gamma::parse("0.75").unwrap();
        let r = solve(&g, gamma, SolveOptions::default(), &Unlimited).unwrap();
        let v = serde_json::to_value(SolveReport::from_result(&g, &r)).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in ["gamma", "s_star", "witness", "optimal", "trace", "lb", "ub", "red_v_pct", "red_e_pct", "total_ms"] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert!(!keys.contains(&"method"));
        assert_eq!(v["witness"], serde_json::json!([7, 8, 9]));
        assert_eq!(v["gamma"], serde_json::json!(0.75));
        let o = SolveReport::from_oracle(&g, gamma, 3, &r.witness, 0);
        assert_eq!(serde_json::to_value(o).unwrap()["method"], "brute");
    }
}
