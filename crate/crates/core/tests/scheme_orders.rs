//! Truncation-order and conservation checks of the three schemes against
//! analytic flux-divergence oracles.

mod common;

use common::G;
use std::f64::consts::PI;
use swlab_core::reconstruction::WenoParams;
use swlab_core::scheme::{aweno_rhs, cu_rhs, rbm_step, RbmConfig};
use swlab_core::time_march::ssprk3_step;
use swlab_core::{Boundary, Grid1D, SwState};

/// Smooth 10-periodic manufactured profile with analytic flux divergence.
struct Manufactured;

impl Manufactured {
    fn h(x: f64) -> f64 {
        2.0 + 0.5 * (PI * x / 5.0).sin()
    }
    fn dh(x: f64) -> f64 {
        0.5 * PI / 5.0 * (PI * x / 5.0).cos()
    }
    fn u(x: f64) -> f64 {
        0.4 + 0.1 * (PI * x / 5.0).cos()
    }
    fn du(x: f64) -> f64 {
        -0.1 * PI / 5.0 * (PI * x / 5.0).sin()
    }
    fn state(x: f64) -> SwState {
        SwState::new(Self::h(x), Self::h(x) * Self::u(x))
    }
    /// d/dx of (q, q²/h + g h²/2).
    fn flux_divergence(x: f64) -> SwState {
        let (h, dh, u, du) = (Self::h(x), Self::dh(x), Self::u(x), Self::du(x));
        let dq = dh * u + h * du;
        let d2 = u * u * dh + 2.0 * h * u * du + G * h * dh;
        SwState::new(dq, d2)
    }
}

/// Exact cell averages via 4-point Gauss-Legendre (error far below the
/// scheme truncation orders under test).
fn cell_averages(m: usize) -> Vec<SwState> {
    let dx = 10.0 / m as f64;
    let nodes = [-0.861136311594053, -0.339981043584856, 0.339981043584856, 0.861136311594053];
    let weights = [0.347854845137454, 0.652145154862546, 0.652145154862546, 0.347854845137454];
    (0..m)
        .map(|k| {
            let xc = (k as f64 + 0.5) * dx;
            let mut acc = SwState::new(0.0, 0.0);
            for (n, w) in nodes.iter().zip(&weights) {
                acc = acc + Manufactured::state(xc + 0.5 * dx * n) * (0.5 * w);
            }
            acc
        })
        .collect()
}

#[test]
fn cu_rhs_second_order_on_smooth_data() {
    // Compare with the exact cell average of -F(U)_x, which is the exact
    // interface flux difference.
    let l1_error = |m: usize| -> f64 {
        let grid = Grid1D::new(0.0, 10.0, m).unwrap();
        let rhs = cu_rhs(&cell_averages(m), &grid, G, Boundary::Periodic).unwrap();
        let dx = grid.dx();
        (0..m)
            .map(|k| {
                let fl = swlab_core::swe::flux(Manufactured::state(grid.interface(k)), G).unwrap();
                let fr =
                    swlab_core::swe::flux(Manufactured::state(grid.interface(k + 1)), G).unwrap();
                let exact = (fl - fr) * (1.0 / dx);
                ((rhs.dvdt[k].h - exact.h).abs() + (rhs.dvdt[k].q - exact.q).abs()) * dx
            })
            .sum()
    };
    let order = (l1_error(100) / l1_error(200)).log2();
    assert!(order > 1.8, "CU RHS measured order {order}");
}

#[test]
fn aweno_rhs_fifth_order_on_smooth_data() {
    let l1_error = |m: usize| -> f64 {
        let grid = Grid1D::new(0.0, 10.0, m).unwrap();
        let points: Vec<SwState> = (0..m).map(|k| Manufactured::state(grid.center(k))).collect();
        let rhs = aweno_rhs(&points, &grid, G, &WenoParams::default(), Boundary::Periodic).unwrap();
        let dx = grid.dx();
        (0..m)
            .map(|k| {
                let exact = -Manufactured::flux_divergence(grid.center(k));
                ((rhs.dvdt[k].h - exact.h).abs() + (rhs.dvdt[k].q - exact.q).abs()) * dx
            })
            .sum()
    };
    let order = (l1_error(64) / l1_error(128)).log2();
    assert!(order > 4.5, "A-WENO RHS measured order {order}");
}

#[test]
fn one_full_step_conserves_for_all_three_schemes() {
    let m = 128;
    let grid = Grid1D::new(0.0, 10.0, m).unwrap();
    let averages = cell_averages(m);
    let points: Vec<SwState> = (0..m).map(|k| Manufactured::state(grid.center(k))).collect();
    let a0 = common::max_speed(&points);
    let dt = 0.4 * grid.dx() / a0;
    let totals = |f: &[SwState]| {
        f.iter()
            .fold((0.0, 0.0), |(h, q), v| (h + v.h, q + v.q))
    };

    // CU under SSP-RK3.
    let out = ssprk3_step(&averages, dt, |s, _| {
        cu_rhs(s, &grid, G, Boundary::Periodic).map(|r| r.dvdt)
    })
    .unwrap();
    let (h0, q0) = totals(&averages);
    let (h1, q1) = totals(&out);
    assert!((h1 - h0).abs() < 1e-12 * h0.abs());
    assert!((q1 - q0).abs() < 1e-12 * q0.abs().max(1.0));

    // A-WENO under SSP-RK3.
    let out = ssprk3_step(&points, dt, |s, _| {
        aweno_rhs(s, &grid, G, &WenoParams::default(), Boundary::Periodic).map(|r| r.dvdt)
    })
    .unwrap();
    let (h0, q0) = totals(&points);
    let (h1, q1) = totals(&out);
    assert!((h1 - h0).abs() < 1e-12 * h0.abs());
    assert!((q1 - q0).abs() < 1e-12 * q0.abs().max(1.0));

    // Fully discrete RBM.
    let out = rbm_step(&points, &grid, dt, G, &RbmConfig::default(), Boundary::Periodic).unwrap();
    let (h1, q1) = totals(&out);
    assert!((h1 - h0).abs() < 1e-12 * h0.abs());
    assert!((q1 - q0).abs() < 1e-12 * q0.abs().max(1.0));
}

#[test]
fn rbm_solution_third_order_on_smooth_wave() {
    // March the smooth simple wave to t = 0.25 with dt proportional to dx
    // and compare against the exact characteristic solution.
    let t_final = 0.25;
    let err = |m: usize| -> f64 {
        let grid = Grid1D::new(0.0, 10.0, m).unwrap();
        let mut field = common::wave_points(m, 0.0);
        let a0 = common::max_speed(&field);
        let steps = (t_final / (0.25 * grid.dx() / a0)).ceil() as usize;
        let dt = t_final / steps as f64;
        for _ in 0..steps {
            field = rbm_step(&field, &grid, dt, G, &RbmConfig::default(), Boundary::Periodic)
                .unwrap();
        }
        let exact = common::wave_points(m, t_final);
        field
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a.h - b.h).abs())
            .fold(0.0, f64::max)
    };
    let order = (err(100) / err(200)).log2();
    assert!(order > 2.6, "RBM solution measured order {order}");
}
