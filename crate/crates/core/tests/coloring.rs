use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chromplane::coloring::{
    brute_force_edges, chromatic_number, cnf_edges, is_k_colorable, solve_edges, verify_coloring, Engine, SolverConfig,
    Verdict,
};
use chromplane::graph::{build_bicycle, build_point_graph};
use chromplane::{Interval, Norm, PlanePoint};

fn engines() -> [SolverConfig; 2] {
    [SolverConfig::default(), SolverConfig { engine: Engine::Dsatur, ..SolverConfig::default() }]
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<[usize; 2]> {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push([i, j]);
            }
        }
    }
    e
}

/// Smallest k admitted by a direct search over all k^n assignments.
fn exhaustive_chi(n: usize, edges: &[[usize; 2]]) -> usize {
    for k in 1..=n {
        let total = k.pow(n as u32);
        for mut code in 0..total {
            let mut colors = vec![0; n];
            for c in colors.iter_mut() {
                *c = code % k;
                code /= k;
            }
            if edges.iter().all(|&[a, b]| colors[a] != colors[b]) {
                return k;
            }
        }
    }
    n
}

#[test]
fn unit_triangle_and_pentagon() {
    let h = 3f64.sqrt() / 2.0;
    let tri = vec![PlanePoint::new(0.0, 0.0), PlanePoint::new(1.0, 0.0), PlanePoint::new(0.5, h)];
    let g = build_point_graph(tri, &Norm::euclidean(), Interval::new(0.99, 1.01).unwrap());
    for cfg in engines() {
        assert_eq!(is_k_colorable(&g, 2, &cfg).unwrap().verdict, Verdict::Unsat);
        let c = is_k_colorable(&g, 3, &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Sat);
        assert!(c.verified && verify_coloring(&g, c.coloring.as_ref().unwrap()).unwrap().proper);
    }
    let pent: Vec<PlanePoint> =
        (0..5).map(|i| PlanePoint::from_angle(std::f64::consts::TAU * i as f64 / 5.0)).collect();
    let side = (pent[0] - pent[1]).euclid();
    let g = build_point_graph(pent, &Norm::euclidean(), Interval::new(side * 0.999, side * 1.001).unwrap());
    assert_eq!(g.edges.len(), 5);
    for cfg in engines() {
        assert_eq!(chromatic_number(&g, 5, &cfg).unwrap(), Some(3));
    }
}

#[test]
fn random_graphs_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for trial in 0..30 {
        let n = 10;
        let density = rng.gen_range(0.2..0.8);
        let edges = random_edges(&mut rng, n, density);
        // The canonical enumeration is itself checked against `exhaustive_chi` below.
        let chi = brute_force_edges(n, &edges, n).unwrap().unwrap();
        for cfg in engines() {
            for k in 1..=n {
                let c = solve_edges(n, &edges, k, &cfg).unwrap();
                let expect = if k >= chi { Verdict::Sat } else { Verdict::Unsat };
                assert_eq!(c.verdict, expect, "trial {trial} k {k} {:?}", cfg.engine);
                if let Some(colors) = &c.coloring {
                    assert!(colors.iter().all(|&x| (1..=k as u8).contains(&x)));
                    assert!(edges.iter().all(|&[a, b]| colors[a] != colors[b]));
                }
            }
        }
    }
}

#[test]
fn exhaustive_oracle_agrees_on_tiny_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let n = rng.gen_range(1..8);
        let edges = random_edges(&mut rng, n, 0.5);
        assert_eq!(brute_force_edges(n, &edges, n).unwrap().unwrap(), exhaustive_chi(n, &edges));
    }
}

#[test]
fn colorability_is_monotone_in_k() {
    let g = build_bicycle(&Norm::euclidean(), 1.5, 200, Interval::around_unit(0.05).unwrap()).unwrap();
    for cfg in engines() {
        let verdicts: Vec<Verdict> = (1..=6).map(|k| is_k_colorable(&g, k, &cfg).unwrap().verdict).collect();
        let first_sat = verdicts.iter().position(|&v| v == Verdict::Sat).unwrap();
        assert!(verdicts[first_sat..].iter().all(|&v| v == Verdict::Sat), "{verdicts:?}");
        assert!(verdicts[..first_sat].iter().all(|&v| v == Verdict::Unsat), "{verdicts:?}");
    }
}

#[test]
fn certificates_are_deterministic() {
    let g = build_bicycle(&Norm::euclidean(), 1.5, 300, Interval::around_unit(0.05).unwrap()).unwrap();
    let cfg = SolverConfig { seed: Some(7), ..SolverConfig::default() };
    let render = |k| {
        let mut c = is_k_colorable(&g, k, &cfg).unwrap();
        c.stats.wall_secs = 0.0;
        serde_json::to_string(&c).unwrap()
    };
    for k in [3, 4] {
        assert_eq!(render(k), render(k));
    }
}

#[test]
fn cnf_has_direct_encoding_shape() {
    let edges = [[0, 1], [1, 2], [0, 2]];
    let text = cnf_edges(3, &edges, 2);
    let mut lines = text.lines();
    // 3 at-least-one, 3 at-most-one, 3 edges * 2 colors.
    assert_eq!(lines.next(), Some("p cnf 6 12"));
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), 12);
    assert!(body.iter().all(|l| l.ends_with(" 0")));
    assert!(body.contains(&"1 2 0") && body.contains(&"-1 -3 0"));
}

#[test]
fn budgets_give_indeterminate_without_coloring() {
    let g = build_bicycle(&Norm::euclidean(), 1.5, 400, Interval::around_unit(0.05).unwrap()).unwrap();
    for engine in [Engine::Cdcl, Engine::Dsatur] {
        let cfg = SolverConfig { engine, node_budget: Some(0), ..SolverConfig::default() };
        let c = is_k_colorable(&g, 4, &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Indeterminate, "{engine:?}");
        assert!(c.coloring.is_none() && !c.verified);
        let cfg = SolverConfig { engine, time_budget: Some(std::time::Duration::ZERO), ..SolverConfig::default() };
        assert_eq!(is_k_colorable(&g, 4, &cfg).unwrap().verdict, Verdict::Indeterminate, "{engine:?}");
    }
}
