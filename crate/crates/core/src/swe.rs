//! Saint-Venant physics: flux, characteristic speeds, Roe-averaged
//! characteristic decomposition, one-sided local speeds, and the exact
//! isolated-shock solution.

use crate::error::{Error, Result};
use crate::float;
use core::ops::{Add, Mul, Neg, Sub};

/// Depths at or below this floor are treated as dry and rejected.
pub const DEPTH_FLOOR: f64 = 1e-12;

/// Conserved shallow-water state: depth `h` and discharge `q = h·u`.
///
/// The same two-slot layout is reused for fluxes and semi-discrete
/// time derivatives, whose components align with `(h, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwState {
    pub h: f64,
    pub q: f64,
}

impl SwState {
    pub const fn new(h: f64, q: f64) -> Self {
        SwState { h, q }
    }

    pub fn velocity(&self) -> f64 {
        self.q / self.h
    }

    pub(crate) fn check_depth(&self, context: &'static str, index: Option<usize>) -> Result<()> {
        if self.h > DEPTH_FLOOR && self.h.is_finite() {
            Ok(())
        } else {
            Err(Error::NonPositiveDepth {
                h: self.h,
                context,
                index,
            })
        }
    }
}

impl Add for SwState {
    type Output = SwState;
    fn add(self, rhs: SwState) -> SwState {
        SwState::new(self.h + rhs.h, self.q + rhs.q)
    }
}

impl Sub for SwState {
    type Output = SwState;
    fn sub(self, rhs: SwState) -> SwState {
        SwState::new(self.h - rhs.h, self.q - rhs.q)
    }
}

impl Mul<f64> for SwState {
    type Output = SwState;
    fn mul(self, s: f64) -> SwState {
        SwState::new(self.h * s, self.q * s)
    }
}

impl Mul<SwState> for f64 {
    type Output = SwState;
    fn mul(self, v: SwState) -> SwState {
        v * self
    }
}

impl Neg for SwState {
    type Output = SwState;
    fn neg(self) -> SwState {
        SwState::new(-self.h, -self.q)
    }
}

/// Flux `F(U) = (q, q²/h + g·h²/2)` of the Saint-Venant system.
pub fn flux(u: SwState, g: f64) -> Result<SwState> {
    u.check_depth("flux", None)?;
    Ok(flux_raw(u, g))
}

/// Flux without the depth guard; callers validate depths once per sweep.
#[inline(always)]
pub(crate) fn flux_raw(u: SwState, g: f64) -> SwState {
    SwState::new(u.q, u.q * u.q / u.h + 0.5 * g * u.h * u.h)
}

/// Eigenvalues `(u − c, u + c)` of the flux Jacobian, `c = sqrt(g·h)`.
pub fn eigenvalues(u: SwState, g: f64) -> Result<(f64, f64)> {
    u.check_depth("eigenvalues", None)?;
    let vel = u.velocity();
    let c = float::sqrt(g * u.h);
    Ok((vel - c, vel + c))
}

/// Largest signal speed `|u| + c` of a single state.
#[inline(always)]
pub(crate) fn max_abs_eigenvalue(u: SwState, g: f64) -> f64 {
    float::abs(u.velocity()) + float::sqrt(g * u.h)
}

/// Roe-averaged characteristic basis at a cell interface.
///
/// Built from `ĥ = (h⁻ + h⁺)/2`, the depth-weighted velocity average
/// `û = (√h⁻·u⁻ + √h⁺·u⁺)/(√h⁻ + √h⁺)`, and `ĉ = sqrt(g·ĥ)`. The columns of
/// `R` are the right eigenvectors `(1, û ∓ ĉ)` and `R⁻¹·A(Û)·R` is diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharBasis {
    pub h_hat: f64,
    pub u_hat: f64,
    pub c_hat: f64,
}

impl CharBasis {
    pub fn roe(left: SwState, right: SwState, g: f64) -> Result<Self> {
        left.check_depth("roe average", None)?;
        right.check_depth("roe average", None)?;
        let sl = float::sqrt(left.h);
        let sr = float::sqrt(right.h);
        let h_hat = 0.5 * (left.h + right.h);
        let u_hat = (sl * left.velocity() + sr * right.velocity()) / (sl + sr);
        let c_hat = float::sqrt(g * h_hat);
        if !(c_hat > 0.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "zero Roe sound speed (g = {g}): characteristic basis is singular"
            )));
        }
        Ok(CharBasis { h_hat, u_hat, c_hat })
    }

    /// Right-eigenvector matrix `R`.
    pub fn r(&self) -> [[f64; 2]; 2] {
        [
            [1.0, 1.0],
            [self.u_hat - self.c_hat, self.u_hat + self.c_hat],
        ]
    }

    /// Inverse `R⁻¹ = 1/(2ĉ) · [[ĉ+û, −1], [ĉ−û, 1]]`.
    pub fn r_inv(&self) -> [[f64; 2]; 2] {
        let s = 0.5 / self.c_hat;
        [
            [s * (self.c_hat + self.u_hat), -s],
            [s * (self.c_hat - self.u_hat), s],
        ]
    }

    /// Local characteristic variables `Γ = R⁻¹·V`.
    #[inline(always)]
    pub fn to_characteristic(&self, v: SwState) -> [f64; 2] {
        let s = 0.5 / self.c_hat;
        [
            s * ((self.c_hat + self.u_hat) * v.h - v.q),
            s * ((self.c_hat - self.u_hat) * v.h + v.q),
        ]
    }

    /// Back to conserved variables, `V = R·Γ`.
    #[inline(always)]
    pub fn from_characteristic(&self, w: [f64; 2]) -> SwState {
        SwState::new(
            w[0] + w[1],
            (self.u_hat - self.c_hat) * w[0] + (self.u_hat + self.c_hat) * w[1],
        )
    }
}

/// One-sided local propagation speeds at an interface, `a⁺ ≥ a⁻`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedPair {
    pub plus: f64,
    pub minus: f64,
}

/// Estimates the one-sided speeds from the two one-sided interface states.
///
/// `a⁺ = max(u⁻+c⁻, u⁺+c⁺)` and `a⁻ = min(u⁻−c⁻, u⁺−c⁺)`; with
/// `floor_at_zero` the max/min additionally include 0, which the CU and
/// A-WENO fluxes require so that `a⁺ − a⁻ > 0`.
pub fn local_speeds(
    minus_side: SwState,
    plus_side: SwState,
    g: f64,
    floor_at_zero: bool,
) -> Result<SpeedPair> {
    minus_side.check_depth("local speeds", None)?;
    plus_side.check_depth("local speeds", None)?;
    let (lm_minus, lp_minus) = {
        let vel = minus_side.velocity();
        let c = float::sqrt(g * minus_side.h);
        (vel - c, vel + c)
    };
    let (lm_plus, lp_plus) = {
        let vel = plus_side.velocity();
        let c = float::sqrt(g * plus_side.h);
        (vel - c, vel + c)
    };
    let mut plus = lp_minus.max(lp_plus);
    let mut minus = lm_minus.min(lm_plus);
    if floor_at_zero {
        plus = plus.max(0.0);
        minus = minus.min(0.0);
    }
    Ok(SpeedPair { plus, minus })
}

/// Left and right states of the isolated shock travelling with speed 1
/// (Rankine-Hugoniot pair for g = 10).
pub const SHOCK_LEFT: SwState = SwState::new(1.0, 0.0);
pub const SHOCK_RIGHT: SwState = SwState::new(0.170_820_393_249_936_9, -0.829_179_606_750_063_1);

/// Exact isolated-shock solution: the initial jump at x = 5 translated
/// right with unit speed. Valid for g = 10 only; the states satisfy the
/// Rankine-Hugoniot conditions for no other gravity value.
pub fn isolated_shock_exact(x: f64, t: f64) -> SwState {
    if x - t < 5.0 {
        SHOCK_LEFT
    } else {
        SHOCK_RIGHT
    }
}
