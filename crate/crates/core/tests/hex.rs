use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chromplane::hex::{build_hex_tiling, build_rotated_hex_tiling, HexTiling};
use chromplane::hex_bound::{best_scale_for, max_epsilon, required_rings, verify_at_scale, verify_hex_coloring};
use chromplane::{Error, Interval, Norm, NormSpec, PlanePoint};

/// For Euclidean hexagons of diameter `d`, the tile diameter is `d` and the
/// nearest same-colored tiles are `d·√7/2` apart, so the best `eps` solves
/// `d = 1 - eps`, `d·√7/2 = 1 + eps`.
fn euclidean_max_eps() -> f64 {
    let g = 7f64.sqrt() / 2.0;
    (g - 1.0) / (g + 1.0)
}

/// Color of the tile containing `p`: the tile with the nearest center.
fn color_of(t: &HexTiling, p: PlanePoint) -> u8 {
    t.tiles
        .iter()
        .min_by(|a, b| (t.center(a.axial()) - p).euclid().total_cmp(&(t.center(b.axial()) - p).euclid()))
        .unwrap()
        .color
}

#[test]
fn euclidean_optimum_matches_closed_form() {
    let m = max_epsilon(&Norm::euclidean()).unwrap();
    assert!((m.eps - euclidean_max_eps()).abs() < 1e-6, "{} vs {}", m.eps, euclidean_max_eps());
    assert!((m.scale - (1.0 - euclidean_max_eps())).abs() < 1e-5);
    assert!((m.separation_ratio - 7f64.sqrt() / 2.0).abs() < 1e-12);
    assert!(m.certificate.pass);
    let over = Interval::around_unit(m.eps + 1e-4).unwrap();
    assert!(
        !verify_at_scale(best_scale_for(&Norm::euclidean(), over, 0.0).unwrap().0, &Norm::euclidean(), over)
            .unwrap()
            .pass
    );
}

#[test]
fn passing_is_monotone_in_eps() {
    let e = Norm::euclidean();
    let scale = 0.87;
    let verdicts: Vec<bool> = (1..=30)
        .map(|i| verify_at_scale(scale, &e, Interval::around_unit(0.005 * i as f64).unwrap()).unwrap().pass)
        .collect();
    let first_fail = verdicts.iter().position(|&p| !p).unwrap();
    assert!(first_fail > 0 && verdicts[first_fail..].iter().all(|&p| !p), "{verdicts:?}");
}

#[test]
fn pass_reproduces_from_serialized_tiling() {
    let e = Norm::euclidean();
    let interval = Interval::around_unit(0.1).unwrap();
    let rings = required_rings(0.88, &e, interval);
    let tiling = build_hex_tiling(0.88, rings).unwrap();
    let text = serde_json::to_string(&tiling).unwrap();
    let back: HexTiling = serde_json::from_str(&text).unwrap();
    assert_eq!(back, tiling);
    let a = verify_hex_coloring(&tiling, &e, interval).unwrap();
    let b = verify_hex_coloring(&back, &e, interval).unwrap();
    assert!(a.pass);
    assert_eq!(a, b);
    let small = build_hex_tiling(0.88, 1).unwrap();
    assert!(matches!(verify_hex_coloring(&small, &e, interval), Err(Error::Refused(_))));
}

#[test]
fn feasible_scale_has_no_sampled_violations() {
    let e = Norm::euclidean();
    let interval = Interval::around_unit(0.1).unwrap();
    let (scale, margin) = best_scale_for(&e, interval, 0.0).unwrap();
    assert!(margin > 0.0);
    let cert = verify_at_scale(scale, &e, interval).unwrap();
    assert!(cert.pass && cert.straddling.is_none());
    let t = build_hex_tiling(scale, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20_000 {
        let p = PlanePoint::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let q = p + PlanePoint::from_angle(rng.gen_range(0.0..std::f64::consts::TAU)) * rng.gen_range(0.9..1.1);
        assert_ne!(color_of(&t, p), color_of(&t, q), "{p:?} {q:?}");
    }
}

#[test]
fn failure_names_a_straddling_pair() {
    let e = Norm::euclidean();
    let cert = verify_at_scale(0.85, &e, Interval::around_unit(0.2).unwrap()).unwrap();
    assert!(!cert.pass && cert.margin < 0.0);
    // Diameter 0.85 is above lo = 0.8: the tile itself spans a forbidden distance.
    assert!(cert.tile_diameter > 0.8);
    let cert = verify_at_scale(0.7, &e, Interval::around_unit(0.2).unwrap()).unwrap();
    let pair = cert.straddling.unwrap();
    assert!(pair.min_dist < 1.2 && pair.max_dist > 0.8);
}

#[test]
fn rotation_fixes_the_square_norm() {
    let sq = Norm::new(NormSpec::square()).unwrap();
    let m = max_epsilon(&sq).unwrap();
    eprintln!("square: eps {} scale {} rotation {}", m.eps, m.scale, m.rotation);
    assert!(m.eps > 0.0 && m.certificate.pass);
    assert!(m.separation_ratio > 1.0);
    let t = build_rotated_hex_tiling(m.scale, 6, m.rotation).unwrap();
    let interval = Interval::around_unit(m.eps * 0.999).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..5_000 {
        let p = PlanePoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let dir = sq.unit_circle_point(PlanePoint::ORIGIN, rng.gen_range(0.0..std::f64::consts::TAU));
        let q = p + dir * rng.gen_range(interval.lo()..interval.hi());
        assert_ne!(color_of(&t, p), color_of(&t, q));
    }
}
