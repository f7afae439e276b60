//! Hyperbolic polygons are rebuilt in the hyperboloid model: walking the
//! sides with the prescribed turning angles must return to the start frame.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use proptest::prelude::*;
use systolic_atlas::hypgeom::{
    collar_width, epsilon0, pants_cuff_distance, solve_pentagon, square_data, PentagonData,
    DEFAULT_TOLERANCE,
};
use systolic_atlas::multigraph::named;
use systolic_atlas::surfaces::build_y_surface;

type M3 = [[f64; 3]; 3];

fn mul(a: &M3, b: &M3) -> M3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Boost along the current heading by `d`.
fn walk(d: f64) -> M3 {
    [
        [d.cosh(), 0.0, d.sinh()],
        [0.0, 1.0, 0.0],
        [d.sinh(), 0.0, d.cosh()],
    ]
}

fn turn(theta: f64) -> M3 {
    let (s, c) = theta.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

/// Distance from the identity after walking side `i` and turning by the
/// exterior angle at its end, for every side.
fn closure_error(sides: &[f64], interior_angles: &[f64]) -> f64 {
    let mut f = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for (&a, &phi) in sides.iter().zip(interior_angles) {
        f = mul(&f, &mul(&walk(a), &turn(PI - phi)));
    }
    let mut err: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            err = err.max((f[i][j] - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    err
}

#[test]
fn square_closes_up() {
    let sq = square_data();
    assert!(closure_error(&[sq.side; 4], &[FRAC_PI_4; 4]) < 1e-9);
    // the quarter: center, side midpoint, corner, side midpoint
    let quarter = [sq.t, sq.side_half, sq.side_half, sq.t];
    let angles = [FRAC_PI_2, FRAC_PI_4, FRAC_PI_2, FRAC_PI_2];
    assert!(closure_error(&quarter, &angles) < 1e-9);
}

#[test]
fn square_matches_triangulation() {
    let sq = square_data();
    // triangles from the center: apex π/2, base angles π/8
    let side = ((FRAC_PI_8.cos() / FRAC_PI_8.sin()).powi(2)).acosh();
    assert!((sq.side - side).abs() < 1e-9);
    // right triangle center, side midpoint, corner
    let t = (FRAC_PI_8.cos() / FRAC_PI_4.sin()).acosh();
    let half = (FRAC_PI_4.cos() / FRAC_PI_8.sin()).acosh();
    assert!((sq.t - t).abs() < 1e-9);
    assert!((sq.side_half - half).abs() < 1e-9);
    assert!((sq.t - 0.7643).abs() < 1e-3);
    assert_eq!(sq.systole_length, 2.0 * sq.side);
}

#[test]
fn pentagon_closes_up() {
    let p = solve_pentagon(DEFAULT_TOLERANCE).unwrap();
    assert!(closure_error(&p.sides, &[FRAC_PI_2; 5]) < 1e-9);
    assert!((p.c - p.s / 12.0).abs() < 1e-15);
    assert!(p.b / 2.0 < p.s && p.s < p.b);
    // a wrong s does not close
    let off = PentagonData::from_lengths(1.1 * p.s, p.b);
    assert!(closure_error(&off.sides, &[FRAC_PI_2; 5]) > 1e-3);
}

#[test]
fn pentagon_is_stable_across_tolerances() {
    let tight = solve_pentagon(1e-14).unwrap();
    for tol in [1e-6, 1e-9, 1e-12] {
        let p = solve_pentagon(tol).unwrap();
        assert!((p.s - tight.s).abs() < 1e-6);
        assert!(p.defining_residual() < 1e-9);
    }
}

fn hexagon_error(l: [f64; 3]) -> f64 {
    let d = |i: usize, j: usize, k: usize| pants_cuff_distance(l[i], l[j], l[k]).unwrap();
    let sides = [
        l[0] / 2.0,
        d(0, 1, 2),
        l[1] / 2.0,
        d(1, 2, 0),
        l[2] / 2.0,
        d(2, 0, 1),
    ];
    closure_error(&sides, &[FRAC_PI_2; 6])
}

#[test]
fn pants_hexagon_closes_up() {
    let p = solve_pentagon(DEFAULT_TOLERANCE).unwrap();
    assert!(hexagon_error([p.s, p.s, p.b]) < 1e-9);
    assert!(hexagon_error([1.0, 2.0, 3.0]) < 1e-9);
    let d = pants_cuff_distance(p.s, p.s, p.b).unwrap();
    assert!((d - p.s / 3.0).abs() < 1e-6);
}

fn d_cosh_d_dl3(l1: f64, l2: f64, l3: f64) -> f64 {
    let d = pants_cuff_distance(l1, l2, l3).unwrap();
    (0.5 * (l3 / 2.0).sinh() / ((l1 / 2.0).sinh() * (l2 / 2.0).sinh())) / d.sinh()
}

#[test]
fn cuff_distance_derivative() {
    let h = 1e-5;
    for (l1, l2, l3) in [
        (1.0, 1.0, 1.0),
        (4.4, 4.4, 7.8),
        (0.3, 2.0, 5.0),
        (2.0, 0.5, 0.5),
    ] {
        let fd = (pants_cuff_distance(l1, l2, l3 + h).unwrap()
            - pants_cuff_distance(l1, l2, l3 - h).unwrap())
            / (2.0 * h);
        assert!(
            (fd - d_cosh_d_dl3(l1, l2, l3)).abs() < 1e-6,
            "{l1} {l2} {l3}"
        );
    }
}

/// Half of the boundary-to-boundary arc around an `s` cuff cuts a hexagon
/// into a pentagon with sides `s/2, cuff_sb, x, q/2, y`.
#[test]
fn boundary_arc_pentagon_closes_up() {
    let m = build_y_surface(&named::heawood()).unwrap();
    let (s, b) = (m.pentagon.s, m.pentagon.b);
    let a = &m.arc_bounds;
    let half_q = a.q / 2.0;
    let x = ((s / 2.0).cosh() / half_q.sinh()).asinh();
    let y = (a.cuff_sb.cosh() / half_q.sinh()).asinh();
    assert!(closure_error(&[s / 2.0, a.cuff_sb, x, half_q, y], &[FRAC_PI_2; 5]) < 1e-9);

    // the same cut around the b cuff gives the shortest arc from an s cuff to itself
    let around_b = 2.0 * ((b / 2.0).sinh() * a.cuff_sb.sinh()).acosh();
    let half = around_b / 2.0;
    let x = ((b / 2.0).cosh() / half.sinh()).asinh();
    let y = (a.cuff_sb.cosh() / half.sinh()).asinh();
    assert!(closure_error(&[b / 2.0, a.cuff_sb, x, half, y], &[FRAC_PI_2; 5]) < 1e-9);
    assert!(around_b >= a.o);
}

#[test]
fn collar_and_epsilon() {
    let e = epsilon0();
    assert!(((e / 2.0).sinh() - 1.0).abs() < 1e-15);
    assert!((2.0 * collar_width(e).unwrap() - e).abs() < 1e-12);
    assert!(0.1 < e && e < 10.0);
}

proptest! {
    #[test]
    fn cuff_distance_symmetric_and_monotone(l1 in 0.05f64..10.0, l2 in 0.05f64..10.0, l3 in 0.05f64..10.0) {
        let a = pants_cuff_distance(l1, l2, l3).unwrap();
        let b = pants_cuff_distance(l2, l1, l3).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        prop_assert!(pants_cuff_distance(l1, l2, l3 + 0.01).unwrap() > a);
        prop_assert!(hexagon_error([l1, l2, l3]) < 1e-6);
    }

    #[test]
    fn collar_decreasing(l in 0.01f64..30.0, dl in 0.01f64..5.0) {
        prop_assert!(collar_width(l + dl).unwrap() < collar_width(l).unwrap());
        prop_assert!(collar_width(l).unwrap() > 0.0);
    }
}
