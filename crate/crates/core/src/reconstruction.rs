//! Interface-value reconstruction: minmod piecewise-linear slopes for the
//! CU scheme and fifth-order WENO-Z interpolation (optionally on local
//! characteristic variables) for the RBM and A-WENO point-value schemes.

use crate::error::{Error, Result};
use crate::float;
use crate::swe::{CharBasis, SwState};
use alloc::format;

/// `(sign(z1)+sign(z2))/2 · min(|z1|, |z2|)`: the common part of two slopes,
/// zero when they disagree in sign.
#[inline(always)]
pub fn minmod(z1: f64, z2: f64) -> f64 {
    if z1 > 0.0 && z2 > 0.0 {
        z1.min(z2)
    } else if z1 < 0.0 && z2 < 0.0 {
        z1.max(z2)
    } else {
        0.0
    }
}

#[inline(always)]
pub(crate) fn minmod_state(a: SwState, b: SwState) -> SwState {
    SwState::new(minmod(a.h, b.h), minmod(a.q, b.q))
}

/// One-sided values at a cell interface; `minus` is reconstructed from the
/// left cell, `plus` from the right cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceValues {
    pub minus: SwState,
    pub plus: SwState,
}

impl InterfaceValues {
    /// Mean of the two one-sided values, the point value used by the
    /// pointwise convergence measurements.
    pub fn average(&self) -> SwState {
        (self.minus + self.plus) * 0.5
    }
}

/// Minmod slope of cell `k` from the three cell averages `k-1, k, k+1`.
#[inline(always)]
pub(crate) fn minmod_slope(prev: SwState, cur: SwState, next: SwState, dx: f64) -> SwState {
    let inv = 1.0 / dx;
    minmod_state((cur - prev) * inv, (next - cur) * inv)
}

/// Piecewise-linear minmod reconstruction at interface `j` of a sequence of
/// cell averages (ghost cells included by the caller): interface `j` lies
/// between cells `j-1` and `j`, so cells `j-2 ..= j+1` must be present.
pub fn minmod_interface_values(
    cells: &[SwState],
    dx: f64,
    j: usize,
) -> Result<InterfaceValues> {
    if j < 2 || j + 2 > cells.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: cells.len().saturating_sub(2),
        });
    }
    let half = 0.5 * dx;
    let minus = cells[j - 1] + minmod_slope(cells[j - 2], cells[j - 1], cells[j], dx) * half;
    let plus = cells[j] - minmod_slope(cells[j - 1], cells[j], cells[j + 1], dx) * half;
    minus.check_depth("minmod reconstruction", Some(j))?;
    plus.check_depth("minmod reconstruction", Some(j))?;
    Ok(InterfaceValues { minus, plus })
}

/// Parameters of the WENO-Z weights: the power `p` in the alpha weights, the
/// regularization `eps`, and the linear weights `d` of the three parabolic
/// interpolants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WenoParams {
    pub p: i32,
    pub eps: f64,
    pub d: [f64; 3],
}

impl Default for WenoParams {
    fn default() -> Self {
        WenoParams {
            p: 2,
            eps: 1e-12,
            d: [1.0 / 16.0, 5.0 / 8.0, 5.0 / 16.0],
        }
    }
}

impl WenoParams {
    pub fn new(p: i32, eps: f64) -> Result<Self> {
        if p < 1 || !(eps > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "WENO-Z needs p >= 1 and eps > 0 (got p = {p}, eps = {eps})"
            )));
        }
        Ok(WenoParams {
            p,
            eps,
            ..WenoParams::default()
        })
    }
}

/// Which one-sided value to interpolate at the interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// Smoothness indicators of the three parabolic interpolants over the
/// left-biased five-point window `v[0..5]`.
pub fn smoothness_indicators(v: &[f64; 5]) -> [f64; 3] {
    let b0 = 13.0 / 12.0 * sq(v[0] - 2.0 * v[1] + v[2]) + 0.25 * sq(v[0] - 4.0 * v[1] + 3.0 * v[2]);
    let b1 = 13.0 / 12.0 * sq(v[1] - 2.0 * v[2] + v[3]) + 0.25 * sq(v[1] - v[3]);
    let b2 = 13.0 / 12.0 * sq(v[2] - 2.0 * v[3] + v[4]) + 0.25 * sq(3.0 * v[2] - 4.0 * v[3] + v[4]);
    [b0, b1, b2]
}

#[inline(always)]
fn sq(x: f64) -> f64 {
    x * x
}

/// Nonlinear WENO-Z weights for the minus-side stencil of `values`
/// (the plus side reflects the stencil first).
pub fn wenoz_weights(values: &[f64; 6], params: &WenoParams, side: Side) -> [f64; 3] {
    let v = oriented(values, side);
    let beta = smoothness_indicators(&[v[0], v[1], v[2], v[3], v[4]]);
    let tau5 = float::abs(beta[2] - beta[0]);
    let mut alpha = [0.0; 3];
    for k in 0..3 {
        alpha[k] = params.d[k] * (1.0 + float::powi(tau5 / (beta[k] + params.eps), params.p));
    }
    let sum = alpha[0] + alpha[1] + alpha[2];
    [alpha[0] / sum, alpha[1] / sum, alpha[2] / sum]
}

#[inline(always)]
fn oriented(values: &[f64; 6], side: Side) -> [f64; 6] {
    match side {
        Side::Minus => *values,
        Side::Plus => [
            values[5], values[4], values[3], values[2], values[1], values[0],
        ],
    }
}

/// Fifth-order WENO-Z interpolation of six point values (spaced one cell
/// apart, three on each side of the interface) to the interface itself.
pub fn wenoz_interpolate(values: &[f64; 6], params: &WenoParams, side: Side) -> f64 {
    let v = oriented(values, side);
    let w = wenoz_weights(values, params, side);
    // Parabolic interpolants evaluated at the interface.
    let p0 = 0.375 * v[0] - 1.25 * v[1] + 1.875 * v[2];
    let p1 = -0.125 * v[1] + 0.75 * v[2] + 0.375 * v[3];
    let p2 = 0.375 * v[2] + 0.75 * v[3] - 0.125 * v[4];
    w[0] * p0 + w[1] * p1 + w[2] * p2
}

/// WENO-Z interface values of a point-value field in the local
/// characteristic variables of the Roe average at interface `j`.
///
/// `points[k]` is the value at cell center `k`; interface `j` lies between
/// centers `j-1` and `j`, and centers `j-3 ..= j+2` must be present.
pub fn characteristic_interface_values(
    points: &[SwState],
    g: f64,
    j: usize,
    params: &WenoParams,
) -> Result<InterfaceValues> {
    if j < 3 || j + 3 > points.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: points.len().saturating_sub(3),
        });
    }
    let basis = CharBasis::roe(points[j - 1], points[j], g)?;
    let mut gamma0 = [0.0; 6];
    let mut gamma1 = [0.0; 6];
    for (i, p) in points[j - 3..j + 3].iter().enumerate() {
        let w = basis.to_characteristic(*p);
        gamma0[i] = w[0];
        gamma1[i] = w[1];
    }
    let minus = basis.from_characteristic([
        wenoz_interpolate(&gamma0, params, Side::Minus),
        wenoz_interpolate(&gamma1, params, Side::Minus),
    ]);
    let plus = basis.from_characteristic([
        wenoz_interpolate(&gamma0, params, Side::Plus),
        wenoz_interpolate(&gamma1, params, Side::Plus),
    ]);
    minus.check_depth("characteristic reconstruction", Some(j))?;
    plus.check_depth("characteristic reconstruction", Some(j))?;
    Ok(InterfaceValues { minus, plus })
}
