use iterqc_core::graph::{is_kplex, is_quasi_clique};
use iterqc_core::oracle::{brute_max_kplex, brute_max_qc};
use iterqc_core::{get_bounds, plex_brb, solve, Gamma, Graph, Mode, SolveOptions, Unlimited};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=12).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * (n - 1) / 2)
            .prop_map(move |edges| Graph::from_edges(n, edges.into_iter().filter(|(u, v)| u != v)).unwrap())
    })
}

fn gamma() -> impl Strategy<Value = Gamma> {
    (50u64..=100).prop_map(|pct| Gamma::new(pct, 100).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solve_is_exact(g in graph(), gamma in gamma(), basic in any::<bool>(), pp in any::<bool>(), plb in any::<bool>()) {
        let opts = SolveOptions {
            use_pp: pp,
            use_plb: plb,
            mode: if basic { Mode::Basic } else { Mode::Improved },
            ..SolveOptions::default()
        };
        let r = solve(&g, gamma, opts, &Unlimited).unwrap();
        let (want, _) = brute_max_qc(&g, gamma).unwrap();
        prop_assert_eq!(r.s_star, want);
        prop_assert!(is_quasi_clique(&g, &r.witness, gamma).unwrap());
        prop_assert!(r.ub >= want);
    }

    #[test]
    fn bounds_hold(g in graph(), gamma in gamma()) {
        let b = get_bounds(&g, gamma).unwrap();
        let (want, _) = brute_max_qc(&g, gamma).unwrap();
        prop_assert!(b.lb <= want && want <= b.ub);
    }

    #[test]
    fn exact_plex_is_maximum(g in graph(), k in 1usize..=5) {
        let s = plex_brb(&g, k, 1).unwrap();
        prop_assert!(is_kplex(&g, &s, k).unwrap());
        prop_assert_eq!(s.len(), brute_max_kplex(&g, k).unwrap().0);
    }

    #[test]
    fn relabeling_preserves_the_optimum(g in graph(), gamma in gamma(), shift in 0usize..5) {
        let n = g.n();
        let perm = |v: usize| (v + shift) % n;
        let h = Graph::from_edges(n, g.edges().map(|(u, v)| (perm(u), perm(v)))).unwrap();
        let a = solve(&g, gamma, SolveOptions::default(), &Unlimited).unwrap();
        let b = solve(&h, gamma, SolveOptions::default(), &Unlimited).unwrap();
        prop_assert_eq!(a.s_star, b.s_star);
    }
}
