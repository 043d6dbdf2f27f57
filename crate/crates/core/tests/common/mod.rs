#![allow(dead_code)]

use iterqc_core::gen::gen_er;
use iterqc_core::{Gamma, Graph};

pub const GAMMAS: [&str; 6] = ["0.5", "0.55", "0.6", "0.75", "0.9", "1"];

pub fn gammas() -> Vec<Gamma> {
    GAMMAS.iter().map(|g| Gamma::parse(g).unwrap()).collect()
}

pub struct Case {
    pub name: String,
    pub graph: Graph,
}

/// 540 G(n, p) graphs covering every n in 1..=16 and p in 0.1..=0.9.
pub fn er_corpus() -> Vec<Case> {
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
