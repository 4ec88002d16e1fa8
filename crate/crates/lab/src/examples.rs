//! The six benchmark problems on [0, 10]: smooth one-shock data, smooth
//! two-shock data, and the isolated shock, each in a plain variant (1-3)
//! and a combined-scheme variant (4-6).

use crate::error::LabError;
use std::f64::consts::PI;
use swlab_core::swe::isolated_shock_exact;
use swlab_core::{Boundary, Grid1D, SwState};

pub const DOMAIN: (f64, f64) = (0.0, 10.0);

/// Which underlying initial data a benchmark uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialData {
    /// `u = 2 sin(pi x/5 + pi/4)`, `h = (u+10)²/(4g)`: one shock per period.
    OneShock,
    /// `h = 2 cos(pi x/5) + 3`, `q = 0`: two interacting shocks per period.
    TwoShocks,
    /// Rankine-Hugoniot jump at x = 5 travelling right with speed 1.
    IsolatedShock,
}

#[derive(Debug, Clone)]
pub struct ExampleSpec {
    pub id: u8,
    pub data: InitialData,
    pub bc: Boundary,
    pub default_times: Vec<f64>,
    /// Detector threshold tuned on a coarse mesh (combined examples).
    pub default_mu: Option<f64>,
    /// Default CFL ratio for fixed-step combined and convergence runs;
    /// discontinuous data leaves headroom for the RBM Gibbs transient.
    pub fixed_step_cfl: f64,
    /// An exact solution is available (isolated shock).
    pub has_exact: bool,
}

pub fn example_spec(id: u8) -> Result<ExampleSpec, LabError> {
    let spec = match id {
        1 | 4 => ExampleSpec {
            id,
            data: InitialData::OneShock,
            bc: Boundary::Periodic,
            default_times: vec![0.5, 1.0, 2.5],
            default_mu: (id == 4).then_some(0.2),
            fixed_step_cfl: 0.25,
            has_exact: false,
        },
        2 | 5 => ExampleSpec {
            id,
            data: InitialData::TwoShocks,
            bc: Boundary::Periodic,
            default_times: vec![0.5, 1.0, 2.5],
            default_mu: (id == 5).then_some(0.1),
            fixed_step_cfl: 0.25,
            has_exact: false,
        },
        3 | 6 => ExampleSpec {
            id,
            data: InitialData::IsolatedShock,
            bc: Boundary::Free,
            default_times: vec![1.0],
            default_mu: (id == 6).then_some(0.2),
            fixed_step_cfl: 0.125,
            has_exact: true,
        },
        _ => {
            return Err(LabError::config(format!(
                "example must be 1..=6 (got {id})"
            )))
        }
    };
    Ok(spec)
}

/// Whether the evolved unknowns are cell averages or point values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    CellAverage,
    PointValue,
}

fn one_shock_state(x: f64, g: f64) -> SwState {
    let u = 2.0 * (PI * x / 5.0 + PI / 4.0).sin();
    let h = (u + 10.0) * (u + 10.0) / (4.0 * g);
    SwState::new(h, h * u)
}

fn two_shocks_state(x: f64) -> SwState {
    SwState::new(2.0 * (PI * x / 5.0).cos() + 3.0, 0.0)
}

/// 4-point Gauss-Legendre average of `f` over `[xl, xr]`.
fn gauss4_average(xl: f64, xr: f64, f: impl Fn(f64) -> SwState) -> SwState {
    const NODES: [f64; 4] = [
        -0.8611363115940526,
        -0.33998104358485626,
        0.33998104358485626,
        0.8611363115940526,
    ];
    const WEIGHTS: [f64; 4] = [
        0.34785484513745385,
        0.6521451548625461,
        0.6521451548625461,
        0.34785484513745385,
    ];
    let xc = 0.5 * (xl + xr);
    let half = 0.5 * (xr - xl);
    let mut acc = SwState::new(0.0, 0.0);
    for (n, w) in NODES.iter().zip(&WEIGHTS) {
        acc = acc + f(xc + half * n) * (0.5 * w);
    }
    acc
}

/// Exact cell average of the isolated-shock initial data, splitting the
/// straddled cell at the jump.
fn isolated_shock_average(xl: f64, xr: f64) -> SwState {
    let left = isolated_shock_exact(0.0, 0.0);
    let right = isolated_shock_exact(10.0, 0.0);
    let dx = xr - xl;
    if xr <= 5.0 {
        left
    } else if xl >= 5.0 {
        right
    } else {
        (left * (5.0 - xl) + right * (xr - 5.0)) * (1.0 / dx)
    }
}

/// Initial field of a benchmark on `grid`, either as exact point values at
/// the cell centers or as cell averages (Gauss quadrature for the smooth
/// data, closed forms for the cosine depth and the jump).
pub fn make_initial(
    data: InitialData,
    grid: &Grid1D,
    repr: Representation,
    g: f64,
) -> Vec<SwState> {
    let m = grid.cells();
    (0..m)
        .map(|k| match (data, repr) {
            (InitialData::OneShock, Representation::PointValue) => {
                one_shock_state(grid.center(k), g)
            }
            (InitialData::OneShock, Representation::CellAverage) => {
                gauss4_average(grid.interface(k), grid.interface(k + 1), |x| {
                    one_shock_state(x, g)
                })
            }
            (InitialData::TwoShocks, Representation::PointValue) => {
                two_shocks_state(grid.center(k))
            }
            (InitialData::TwoShocks, Representation::CellAverage) => {
                // Exact average of 2 cos(pi x/5) + 3 over the cell.
                let (xl, xr) = (grid.interface(k), grid.interface(k + 1));
                let h = 3.0
                    + (10.0 / PI) * ((PI * xr / 5.0).sin() - (PI * xl / 5.0).sin()) / (xr - xl);
                SwState::new(h, 0.0)
            }
            (InitialData::IsolatedShock, Representation::PointValue) => {
                isolated_shock_exact(grid.center(k), 0.0)
            }
            (InitialData::IsolatedShock, Representation::CellAverage) => {
                isolated_shock_average(grid.interface(k), grid.interface(k + 1))
            }
        })
        .collect()
}

/// Exact water depth of the isolated-shock solution.
pub fn shock_exact_h(x: f64, t: f64) -> f64 {
    isolated_shock_exact(x, t).h
}

/// Exact anti-derivative of the isolated-shock depth from x = 0.
pub fn shock_exact_antiderivative_h(x: f64, t: f64) -> f64 {
    let jump = 5.0 + t;
    let h_right = isolated_shock_exact(jump + 1.0, t).h;
    x.min(jump) + (x - jump).max(0.0) * h_right
}

/// Simple-wave breaking time of the one-shock data:
/// `T = -1 / min_x d(u+c)/dx (x, 0) = 5/(3 pi)`.
pub fn one_shock_breaking_time() -> f64 {
    5.0 / (3.0 * PI)
}
