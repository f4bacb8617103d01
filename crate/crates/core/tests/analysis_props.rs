use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stiffcap::analysis::{
    basin_raster, bifurcation_scan, classify_point, cobweb_data, critical_point_of_g, find_sink_orbit,
    phase_trajectory, positive_root_of_g, BasinClass, BasinOptions, BasinSpec, ScanOptions, SinkOrbit,
};
use stiffcap::cap::SINK_POINTS;
use stiffcap::dynamics::{heun_map, restricted_map_g, restricted_poly, Point2, VectorFieldParams};

fn params() -> VectorFieldParams {
    VectorFieldParams::default()
}

fn g(x: f64) -> f64 {
    restricted_map_g(x, &params())
}

fn near_cycle(x: f64, orbit: &SinkOrbit, tol: f64) -> bool {
    orbit.points.iter().any(|p| (p - x).abs() < tol)
}

#[test]
fn sink_orbit_is_a_stable_cycle_in_image_order() {
    let orbit = find_sink_orbit(&params()).unwrap();
    assert_eq!(orbit.period(), 4);
    for i in 0..4 {
        let (p, next) = (orbit.points[i], orbit.points[(i + 1) % 4]);
        assert!((g(p) - next).abs() < 1e-9);
        let back = (0..4).fold(p, |y, _| g(y));
        assert!((back - p).abs() < 1e-12);
    }
    assert!(orbit.multiplier.abs() < 1.0);
    assert!(orbit.residual < 1e-12);
}

#[test]
fn listed_sink_points_are_consecutive_iterates_near_the_cycle() {
    for i in 0..3 {
        assert!((g(SINK_POINTS[i]) - SINK_POINTS[i + 1]).abs() < 1e-12);
    }
    // but the list does not close up: g(S4) misses S1 by ~5e-5
    let gap = (g(SINK_POINTS[3]) - SINK_POINTS[0]).abs();
    assert!(gap > 1e-5 && gap < 1e-4, "{gap}");
    let orbit = find_sink_orbit(&params()).unwrap();
    let dev = orbit.points.iter().zip(SINK_POINTS).map(|(p, s)| (p - s).abs()).fold(0.0, f64::max);
    assert!(dev < 2e-4, "{dev}");
}

#[test]
fn small_stiffness_has_a_fixed_point() {
    let orbit = find_sink_orbit(&VectorFieldParams::with_lambda(5.0)).unwrap();
    assert_eq!(orbit.period(), 1);
}

#[test]
fn critical_point_is_an_interior_maximum() {
    let p = params();
    let c = critical_point_of_g(&p).unwrap();
    let r = positive_root_of_g(&p).unwrap();
    let d2 = restricted_poly(&p).derivative().derivative();
    assert!(d2.eval(c) < 0.0);
    assert!(g(c) < r);
    assert!(g(r).abs() < 1e-8);
    assert!(g(r + 1e-6) < 0.0);
}

#[test]
fn basin_reference_cells() {
    let p = params();
    let sink = find_sink_orbit(&p).unwrap();
    let opts = BasinOptions::default();
    assert_eq!(classify_point(Point2::new(1.0, 1.0), &p, &sink, &opts), BasinClass::Sink);
    assert_eq!(classify_point(Point2::new(0.5, 0.0), &p, &sink, &opts), BasinClass::Origin);
    assert_eq!(classify_point(Point2::new(0.0, 0.001), &p, &sink, &opts), BasinClass::Sink);
    assert_eq!(classify_point(Point2::new(0.0, 0.0), &p, &sink, &opts), BasinClass::Origin);
}

#[test]
fn sink_cells_stay_captured() {
    let p = params();
    let sink = find_sink_orbit(&p).unwrap();
    let opts = BasinOptions::default();
    let spec = BasinSpec {
        nx: 24,
        ny: 24,
        ..Default::default()
    };
    let grid = basin_raster(&spec, &p, &sink, &opts).unwrap();
    let mut sinks = 0;
    for j in 0..spec.ny {
        for i in 0..spec.nx {
            if grid.get(i, j) != BasinClass::Sink {
                continue;
            }
            sinks += 1;
            let mut q = spec.cell_center(i, j);
            for _ in 0..opts.max_iter {
                q = heun_map(q, &p);
            }
            for _ in 0..4 * 8 {
                q = heun_map(q, &p);
                assert!(q.x1.abs() < opts.capture_radius && near_cycle(q.x2, &sink, opts.capture_radius));
            }
        }
    }
    assert!(sinks > 0);
}

#[test]
fn trajectory_from_one_one_settles_on_the_cycle() {
    let p = params();
    let orbit = find_sink_orbit(&p).unwrap();
    let t = phase_trajectory(Point2::new(1.0, 1.0), 100, &p);
    assert!(!t.escaped);
    for q in &t.points[90..] {
        assert!(q.x1.abs() < 1e-6 && near_cycle(q.x2, &orbit, 1e-6), "{q:?}");
    }
}

#[test]
fn cobweb_examples() {
    let p = params();
    let orbit = find_sink_orbit(&p).unwrap();
    let c = critical_point_of_g(&p).unwrap();
    let web = cobweb_data(c, 40, &p);
    assert_eq!(web.len(), 81);
    let (x, y) = web[web.len() - 1];
    assert!(near_cycle(x, &orbit, 1e-3) && near_cycle(y, &orbit, 1e-3));
    let (x, y) = web[web.len() - 2];
    assert!(near_cycle(x, &orbit, 1e-3) && near_cycle(y, &orbit, 1e-3));
    assert!(cobweb_data(0.0, 5, &p).iter().all(|&v| v == (0.0, 0.0)));
}

#[test]
fn periods_do_not_decrease_along_the_cascade() {
    let scan = bifurcation_scan(20.5, 30.3, 100, &params(), &ScanOptions::default()).unwrap();
    let prefix: Vec<usize> = scan.periods.iter().map_while(|p| *p).collect();
    assert!(prefix.windows(2).all(|w| w[0] <= w[1]), "{prefix:?}");
    // values right next to a doubling may be undecided; the rest still grow
    let decided: Vec<usize> = scan.periods.iter().flatten().copied().collect();
    assert!(decided.len() >= 95);
    assert!(decided.windows(2).all(|w| w[0] <= w[1]), "{decided:?}");
    assert_eq!(decided.first(), Some(&1));
    assert_eq!(decided.last(), Some(&8));
}

#[test]
fn one_stable_cycle_attracts_random_starts() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for lambda in [15.0, 25.0, 29.0, 30.0, 30.3] {
        let p = VectorFieldParams::with_lambda(lambda);
        let orbit = find_sink_orbit(&p).unwrap();
        let r = positive_root_of_g(&p).unwrap();
        for _ in 0..40 {
            let mut x: f64 = rng.gen_range(1e-3..r - 1e-3);
            for _ in 0..20_000 {
                x = restricted_map_g(x, &p);
            }
            assert!(near_cycle(x, &orbit, 1e-6), "lambda {lambda}: {x} not on {:?}", orbit.points);
        }
    }
}
