//! Shared fixtures: benchmark-style initial data and the exact simple-wave
//! solution it evolves into before breaking, used as an independent oracle.

#![allow(dead_code)]

use std::f64::consts::PI;
use swlab_core::SwState;

pub const G: f64 = 10.0;

/// Smooth 10-periodic velocity profile whose Riemann invariant u - 2c is
/// identically -10 for g = 10.
pub fn wave_u0(x: f64) -> f64 {
    2.0 * (PI * x / 5.0 + PI / 4.0).sin()
}

fn wave_du0(x: f64) -> f64 {
    2.0 * PI / 5.0 * (PI * x / 5.0 + PI / 4.0).cos()
}

pub fn wave_state0(x: f64) -> SwState {
    let u = wave_u0(x);
    let h = (u + 10.0) * (u + 10.0) / (4.0 * G);
    SwState::new(h, h * u)
}

/// Breaking time of the simple wave: -1 / min_x d(u+c)/dx at t = 0.
pub fn wave_breaking_time() -> f64 {
    5.0 / (3.0 * PI)
}

/// Exact simple-wave solution for t below the breaking time; each point
/// value rides its characteristic `x = xi + (3·u0(xi) + 10)/2 · t`,
/// resolved for the foot point by Newton iteration.
pub fn wave_state(x: f64, t: f64) -> SwState {
    assert!(
        t < wave_breaking_time(),
        "simple wave sampler only valid before breaking"
    );
    let speed = |u: f64| 1.5 * u + 5.0;
    let mut xi = x - speed(wave_u0(x)) * t;
    for _ in 0..100 {
        let f = xi + speed(wave_u0(xi)) * t - x;
        let fp = 1.0 + 1.5 * wave_du0(xi) * t;
        let step = f / fp;
        xi -= step;
        if step.abs() < 1e-14 * x.abs().max(1.0) {
            break;
        }
    }
    let u = wave_u0(xi);
    let h = (u + 10.0) * (u + 10.0) / (4.0 * G);
    SwState::new(h, h * u)
}

/// Point values of the simple wave at the cell centers of an m-cell grid
/// over [0, 10].
pub fn wave_points(m: usize, t: f64) -> Vec<SwState> {
    let dx = 10.0 / m as f64;
    (0..m)
        .map(|k| wave_state((k as f64 + 0.5) * dx, t))
        .collect()
}

/// Point values of the exact isolated-shock solution at cell centers.
pub fn shock_points(m: usize, t: f64) -> Vec<SwState> {
    let dx = 10.0 / m as f64;
    (0..m)
        .map(|k| swlab_core::swe::isolated_shock_exact((k as f64 + 0.5) * dx, t))
        .collect()
}

/// Largest |u| + c over a field.
pub fn max_speed(field: &[SwState]) -> f64 {
    field
        .iter()
        .map(|v| (v.q / v.h).abs() + (G * v.h).sqrt())
        .fold(0.0, f64::max)
}
