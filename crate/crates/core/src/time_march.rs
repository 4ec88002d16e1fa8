//! SSP-RK3 time integration, step-size policies, and the marching driver
//! shared by the three schemes.

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::reconstruction::WenoParams;
use crate::scheme::{aweno_rhs, cu_rhs, rbm_step, Boundary, RbmConfig};
use crate::swe::{self, SwState};
use crate::{float, Field};
use alloc::format;
use alloc::vec::Vec;

/// Time-step selection policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepPolicy {
    /// `dt = cfl·dx / aⁿ` from the instantaneous largest wave speed.
    Adaptive { cfl: f64 },
    /// Constant step.
    Fixed { dt: f64 },
    /// Constant step `dt = kappa·dx^exponent`, used to keep the temporal
    /// error of the fifth-order scheme below its spatial error.
    FixedPow { kappa: f64, exponent: f64 },
}

impl StepPolicy {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            StepPolicy::Adaptive { cfl } => cfl > 0.0 && cfl <= 1.0,
            StepPolicy::Fixed { dt } => dt > 0.0,
            StepPolicy::FixedPow { kappa, exponent } => kappa > 0.0 && exponent >= 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid step policy {self:?}")))
        }
    }
}

/// Which SSP-RK3 stage an operator evaluation belongs to; the stages sit at
/// times `t`, `t + dt`, and `t + dt/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SspStage {
    First,
    Second,
    Third,
}

/// One step of the three-stage third-order SSP Runge-Kutta method in
/// Shu-Osher form: forward-Euler predictors combined with the convex
/// weights 3/4 : 1/4 and 1/3 : 2/3.
pub fn ssprk3_step<F>(state: &[SwState], dt: f64, mut rhs: F) -> Result<Vec<SwState>>
where
    F: FnMut(&[SwState], SspStage) -> Result<Vec<SwState>>,
{
    let n = state.len();
    let check = |p: &Vec<SwState>| -> Result<()> {
        if p.len() != n {
            Err(Error::MismatchedLengths {
                expected: n,
                got: p.len(),
            })
        } else {
            Ok(())
        }
    };

    let p0 = rhs(state, SspStage::First)?;
    check(&p0)?;
    let w1: Vec<SwState> = (0..n).map(|i| state[i] + p0[i] * dt).collect();

    let p1 = rhs(&w1, SspStage::Second)?;
    check(&p1)?;
    let w2: Vec<SwState> = (0..n)
        .map(|i| state[i] * 0.75 + (w1[i] + p1[i] * dt) * 0.25)
        .collect();

    let p2 = rhs(&w2, SspStage::Third)?;
    check(&p2)?;
    Ok((0..n)
        .map(|i| state[i] * (1.0 / 3.0) + (w2[i] + p2[i] * dt) * (2.0 / 3.0))
        .collect())
}

/// Largest signal speed `max_j max(λ₂, −λ₁)` over a field.
pub fn max_char_speed(field: &[SwState], g: f64) -> Result<f64> {
    let mut a = 0.0_f64;
    for (k, v) in field.iter().enumerate() {
        v.check_depth("wave speed", Some(k))?;
        a = a.max(swe::max_abs_eigenvalue(*v, g));
    }
    Ok(a)
}

/// Step size for the current state, clipped so `t + dt` never overshoots
/// `t_final`.
pub fn choose_dt(
    state: &[SwState],
    grid: &Grid1D,
    g: f64,
    policy: StepPolicy,
    t: f64,
    t_final: f64,
) -> Result<f64> {
    policy.validate()?;
    let dt = match policy {
        StepPolicy::Adaptive { cfl } => {
            let a = max_char_speed(state, g)?;
            if a <= 0.0 {
                return Err(Error::StationaryField);
            }
            cfl * grid.dx() / a
        }
        StepPolicy::Fixed { dt } => dt,
        StepPolicy::FixedPow { kappa, exponent } => kappa * float::powf(grid.dx(), exponent),
    };
    Ok(dt.min(t_final - t))
}

/// Scheme selector for the marching driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Cu,
    Rbm,
    Aweno,
}

/// Physics and scheme parameters shared by a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub g: f64,
    pub rbm: RbmConfig,
    pub weno: WenoParams,
    pub policy: StepPolicy,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            g: 10.0,
            rbm: RbmConfig::default(),
            weno: WenoParams::default(),
            policy: StepPolicy::Adaptive { cfl: 0.5 },
        }
    }
}

/// Times visited by a run plus the solution copies taken at the requested
/// snapshot instants.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub snapshots: Vec<(f64, Field)>,
}

fn validate_snapshots(snapshot_times: &[f64], t_final: f64) -> Result<()> {
    let mut prev = -f64::INFINITY;
    for &s in snapshot_times {
        if !(s >= 0.0) || s > t_final * (1.0 + 1e-12) + 1e-300 {
            return Err(Error::InvalidParameter(format!(
                "snapshot time {s} outside [0, {t_final}]"
            )));
        }
        if s <= prev {
            return Err(Error::InvalidParameter(format!(
                "snapshot times must be strictly increasing (got {s} after {prev})"
            )));
        }
        prev = s;
    }
    Ok(())
}

/// Advances `initial` to `t_final`, recording snapshots at the requested
/// times exactly (the step is clipped to land on them).
pub fn march(
    initial: &[SwState],
    kind: SchemeKind,
    grid: &Grid1D,
    bc: Boundary,
    cfg: &SchemeConfig,
    t_final: f64,
    snapshot_times: &[f64],
) -> Result<TrajectoryRecord> {
    if !(t_final >= 0.0) {
        return Err(Error::InvalidParameter(format!("negative final time {t_final}")));
    }
    validate_snapshots(snapshot_times, t_final)?;

    let mut record = TrajectoryRecord {
        times: alloc::vec![0.0],
        snapshots: Vec::new(),
    };
    let mut pending = snapshot_times.iter().copied().peekable();
    if matches!(pending.peek(), Some(&s) if s == 0.0) {
        record.snapshots.push((0.0, initial.to_vec()));
        pending.next();
    }
    if t_final == 0.0 {
        if record.snapshots.is_empty() {
            record.snapshots.push((0.0, initial.to_vec()));
        }
        return Ok(record);
    }

    let mut state = initial.to_vec();
    let mut t = 0.0_f64;
    let tiny = 1e-13 * t_final.max(1.0);
    while t < t_final - tiny {
        let mut dt = choose_dt(&state, grid, cfg.g, cfg.policy, t, t_final)?;
        let mut landing = None;
        if let Some(&s) = pending.peek() {
            if t + dt >= s - tiny && s > t {
                dt = s - t;
                landing = Some(s);
            }
        }
        if landing.is_none() && t + dt >= t_final - tiny {
            dt = t_final - t;
            landing = Some(t_final);
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "non-positive step {dt} at t = {t}"
            )));
        }

        state = step_once(&state, kind, grid, bc, cfg, dt).map_err(|e| e.at_time(t))?;
        t = landing.unwrap_or(t + dt);
        record.times.push(t);

        if let Some(s) = landing {
            if matches!(pending.peek(), Some(&p) if p == s) {
                record.snapshots.push((s, state.clone()));
                pending.next();
            }
        }
    }
    Ok(record)
}

fn step_once(
    state: &[SwState],
    kind: SchemeKind,
    grid: &Grid1D,
    bc: Boundary,
    cfg: &SchemeConfig,
    dt: f64,
) -> Result<Vec<SwState>> {
    match kind {
        SchemeKind::Cu => ssprk3_step(state, dt, |s, _| {
            cu_rhs(s, grid, cfg.g, bc).map(|r| r.dvdt)
        }),
        SchemeKind::Aweno => ssprk3_step(state, dt, |s, _| {
            aweno_rhs(s, grid, cfg.g, &cfg.weno, bc).map(|r| r.dvdt)
        }),
        SchemeKind::Rbm => rbm_step(state, grid, dt, cfg.g, &cfg.rbm, bc),
    }
}
