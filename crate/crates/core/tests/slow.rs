//! Long runs; `cargo test --release -- --ignored`.

use chromplane::coloring::{is_k_colorable, verify_coloring, SolverConfig, Verdict};
use chromplane::graph::{build_bicycle, TAU_MARGIN};
use chromplane::sweep::required_count;
use chromplane::{Interval, Norm};

#[test]
#[ignore = "builds a 32768-vertex graph"]
fn narrow_interval_bicycle_needs_four_colors() {
    let norm = Norm::euclidean();
    let eps = 0.003;
    let count = 16_384;
    assert!(count >= required_count(&norm, eps).unwrap());
    let g = build_bicycle(&norm, 1.5, count, Interval::around_unit(eps).unwrap()).unwrap();
    let cfg = SolverConfig::default();
    assert_eq!(is_k_colorable(&g, 3, &cfg).unwrap().verdict, Verdict::Unsat);
    assert_eq!(is_k_colorable(&g.strict_subgraph(TAU_MARGIN), 3, &cfg).unwrap().verdict, Verdict::Unsat);
    let four = is_k_colorable(&g, 4, &cfg).unwrap();
    assert_eq!(four.verdict, Verdict::Sat);
    assert!(verify_coloring(&g, &four.coloring.unwrap()).unwrap().proper);
}
