//! Combined schemes: a basic RBM solution evolved on the whole domain,
//! a weak-local-residual (WLR) detector marking the "rough" set around
//! shocks, and a non-oscillatory internal scheme (CU or A-WENO) evolved
//! only there, fed with RBM boundary data. The internal scheme never
//! writes into the basic solution.

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::reconstruction::{characteristic_interface_values, minmod_slope, WenoParams};
use crate::scheme::{
    aweno_flux, cu_flux, fxx_stencil, fxxxx_stencil, rbm_step, rbm_step_region, Boundary,
    RbmConfig,
};
use crate::swe::{flux_raw, local_speeds, SwState};
use crate::time_march::{max_char_speed, ssprk3_step, SspStage};
use crate::{float, Field};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Weak local residual of three consecutive time levels: the component
/// vector `E` per grid point and the detector quantity `eps`, the running
/// three-point maximum of the depth component.
#[derive(Debug, Clone)]
pub struct WlrField {
    pub e: Vec<[f64; 2]>,
    pub eps: Vec<f64>,
}

/// Quadrature of the conservation-law residual over the space-time box
/// around each grid point, from the solution at `t-dt`, `t`, `t+dt`.
///
/// On smooth solution data the residual shrinks like `dx⁵` (steps tied to
/// `dx`), while near a shock it is only `O(dx)`; the gap is what the rough
/// detector exploits.
pub fn weak_local_residual(
    prev: &[SwState],
    now: &[SwState],
    next: &[SwState],
    dx: f64,
    dt: f64,
    g: f64,
    bc: Boundary,
) -> Result<WlrField> {
    let m = now.len();
    for level in [prev, next] {
        if level.len() != m {
            return Err(Error::MismatchedLengths {
                expected: m,
                got: level.len(),
            });
        }
    }
    for (k, v) in prev.iter().chain(now).chain(next).enumerate() {
        v.check_depth("weak local residual", Some(k % m.max(1)))?;
    }

    let pe = crate::scheme::extend(prev, 2, bc);
    let ne = crate::scheme::extend(now, 2, bc);
    let xe = crate::scheme::extend(next, 2, bc);
    let fp: Vec<SwState> = pe.iter().map(|&v| flux_raw(v, g)).collect();
    let fn_: Vec<SwState> = ne.iter().map(|&v| flux_raw(v, g)).collect();
    let fx: Vec<SwState> = xe.iter().map(|&v| flux_raw(v, g)).collect();

    // E at extended centers -1 ..= m; extended center c stands for physical
    // center c-1, whose three-point stencil occupies ext indices c..c+2.
    let e_at = |c: usize| -> [f64; 2] {
        let (l, c0, r) = (c, c + 1, c + 2);
        let dv = (xe[r] - pe[r]) + (xe[c0] - pe[c0]) * 4.0 + (xe[l] - pe[l]);
        let df = (fx[r] - fx[l]) + (fn_[r] - fn_[l]) * 4.0 + (fp[r] - fp[l]);
        let e = (dv * dx + df * dt) * (1.0 / 12.0);
        [e.h, e.q]
    };
    let e_ext: Vec<[f64; 2]> = (0..m + 2).map(e_at).collect();

    let e: Vec<[f64; 2]> = e_ext[1..m + 1].to_vec();
    let eps = (0..m)
        .map(|k| {
            float::abs(e_ext[k][0])
                .max(float::abs(e_ext[k + 1][0]))
                .max(float::abs(e_ext[k + 2][0]))
        })
        .collect();
    Ok(WlrField { e, eps })
}

/// Internal (shock-region) scheme of a combined run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InternalKind {
    Cu,
    Aweno,
}

impl InternalKind {
    /// Half-width of the spatial stencil of one right-hand-side evaluation.
    pub fn stencil_radius(self) -> usize {
        match self {
            InternalKind::Cu => 2,
            InternalKind::Aweno => 3,
        }
    }
}

/// Index sets of the detector: points above the threshold (`core`), the
/// core dilated by the internal stencil radius (`halo`), and the belt
/// `halo \ core` where the internal scheme reads basic RBM values.
#[derive(Debug, Clone, Default)]
pub struct RoughSet {
    pub core: Vec<usize>,
    pub halo: Vec<usize>,
    pub belt: Vec<usize>,
}

impl RoughSet {
    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }
}

fn dilate(mask: &[bool], radius: usize, bc: Boundary) -> Vec<bool> {
    let m = mask.len() as isize;
    let r = radius as isize;
    let mut out = vec![false; mask.len()];
    for (k, &on) in mask.iter().enumerate() {
        if !on {
            continue;
        }
        for i in k as isize - r..=k as isize + r {
            match bc {
                Boundary::Periodic => out[i.rem_euclid(m) as usize] = true,
                Boundary::Free => {
                    if i >= 0 && i < m {
                        out[i as usize] = true;
                    }
                }
            }
        }
    }
    out
}

fn mask_to_indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(k, &on)| on.then_some(k))
        .collect()
}

/// Thresholds the detector quantity at `mu·dx³` and dilates the resulting
/// core by the internal stencil radius.
pub fn detect_rough(
    wlr: &WlrField,
    mu: f64,
    dx: f64,
    stencil_radius: usize,
    bc: Boundary,
) -> RoughSet {
    let threshold = mu * dx * dx * dx;
    let core_mask: Vec<bool> = wlr.eps.iter().map(|&e| e > threshold).collect();
    let halo_mask = dilate(&core_mask, stencil_radius, bc);
    let belt: Vec<usize> = halo_mask
        .iter()
        .zip(&core_mask)
        .enumerate()
        .filter_map(|(k, (&h, &c))| (h && !c).then_some(k))
        .collect();
    RoughSet {
        core: mask_to_indices(&core_mask),
        halo: mask_to_indices(&halo_mask),
        belt,
    }
}

/// Parameters of a combined run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinedConfig {
    pub g: f64,
    /// Detector threshold coefficient in `eps > mu·dx³`.
    pub mu: f64,
    pub internal: InternalKind,
    pub rbm: RbmConfig,
    pub weno: WenoParams,
}

impl CombinedConfig {
    pub fn new(g: f64, mu: f64, internal: InternalKind) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "detector threshold mu must be positive (got {mu})"
            )));
        }
        Ok(CombinedConfig {
            g,
            mu,
            internal,
            rbm: RbmConfig::default(),
            weno: WenoParams::default(),
        })
    }
}

/// The immediate vicinity evolved by the local RBM half step is the halo
/// dilated by three RBM stencil radii, wide enough to feed every stage.
const HALF_STEP_MARGIN: usize = 9;

/// Driver of a combined run. Holds the basic RBM solution at the last two
/// time levels and the sparse internal solution on the current rough halo.
#[derive(Debug, Clone)]
pub struct CombinedRunner {
    grid: Grid1D,
    bc: Boundary,
    cfg: CombinedConfig,
    prev: Option<Field>,
    now: Field,
    internal: BTreeMap<usize, SwState>,
    rough: Option<RoughSet>,
    eps: Option<Vec<f64>>,
    t: f64,
}

impl CombinedRunner {
    pub fn new(
        initial: &[SwState],
        grid: &Grid1D,
        bc: Boundary,
        cfg: CombinedConfig,
    ) -> Result<Self> {
        if initial.len() != grid.cells() {
            return Err(Error::MismatchedLengths {
                expected: grid.cells(),
                got: initial.len(),
            });
        }
        if !(cfg.mu > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "detector threshold mu must be positive (got {})",
                cfg.mu
            )));
        }
        for (k, v) in initial.iter().enumerate() {
            v.check_depth("combined initial data", Some(k))?;
        }
        Ok(CombinedRunner {
            grid: *grid,
            bc,
            cfg,
            prev: None,
            now: initial.to_vec(),
            internal: BTreeMap::new(),
            rough: None,
            eps: None,
            t: 0.0,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// Basic RBM solution at the current time level; bit-identical to a
    /// pure RBM run with the same step sequence.
    pub fn basic(&self) -> &[SwState] {
        &self.now
    }

    /// Rough set detected during the most recent step, if any.
    pub fn rough(&self) -> Option<&RoughSet> {
        self.rough.as_ref()
    }

    /// Detector quantity `eps` of the most recent step, if any.
    pub fn detector_eps(&self) -> Option<&[f64]> {
        self.eps.as_deref()
    }

    /// Exported solution: basic values everywhere, internal values on the
    /// core of the rough set.
    pub fn export(&self) -> Field {
        let mut out = self.now.clone();
        for (&k, &v) in &self.internal {
            out[k] = v;
        }
        out
    }

    /// Advances one step of size `dt`:
    /// basic RBM step on the whole domain, WLR detection from the three
    /// basic levels, a local RBM half step around the rough halo, and the
    /// internal SSP-RK3 step on the halo with belt values taken from the
    /// basic solution at the matching stage times.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        let dx = self.grid.dx();
        let a = max_char_speed(&self.now, self.cfg.g).map_err(|e| e.at_time(self.t))?;
        if dt * a > 0.5 * dx * (1.0 + 1e-9) {
            return Err(Error::CflViolation {
                dt,
                limit: 0.5 * dx / a,
            }
            .at_time(self.t));
        }

        let next = rbm_step(&self.now, &self.grid, dt, self.cfg.g, &self.cfg.rbm, self.bc)
            .map_err(|e| e.at_time(self.t))?;

        let Some(prev) = self.prev.take() else {
            // Bootstrap: the detector needs three levels, so the first step
            // is pure RBM with no correction.
            self.prev = Some(core::mem::replace(&mut self.now, next));
            self.internal.clear();
            self.rough = None;
            self.eps = None;
            self.t += dt;
            return Ok(());
        };

        let wlr = weak_local_residual(&prev, &self.now, &next, dx, dt, self.cfg.g, self.bc)
            .map_err(|e| e.at_time(self.t))?;
        let rough = detect_rough(
            &wlr,
            self.cfg.mu,
            dx,
            self.cfg.internal.stencil_radius(),
            self.bc,
        );

        if rough.is_empty() {
            self.internal.clear();
        } else {
            let m = self.grid.cells();
            let mut halo_mask = vec![false; m];
            for &k in &rough.halo {
                halo_mask[k] = true;
            }
            let vicinity = mask_to_indices(&dilate(&halo_mask, HALF_STEP_MARGIN, self.bc));
            let half = rbm_step_region(
                &self.now,
                &self.grid,
                0.5 * dt,
                self.cfg.g,
                &self.cfg.rbm,
                self.bc,
                &vicinity,
            )
            .map_err(|e| e.at_time(self.t))?;

            // Internal solution on the core, seeded from the basic field at
            // points that just became rough.
            let w0: Vec<SwState> = rough
                .core
                .iter()
                .map(|&k| self.internal.get(&k).copied().unwrap_or(self.now[k]))
                .collect();

            let advanced = ssprk3_step(&w0, dt, |vals, stage| {
                let level = match stage {
                    SspStage::First => &self.now,
                    SspStage::Second => &next,
                    SspStage::Third => &half,
                };
                let mut overlay = level.clone();
                for (&k, &v) in rough.core.iter().zip(vals.iter()) {
                    overlay[k] = v;
                }
                rough
                    .core
                    .iter()
                    .map(|&k| {
                        internal_rhs_at(
                            self.cfg.internal,
                            &overlay,
                            dx,
                            self.cfg.g,
                            &self.cfg.weno,
                            self.bc,
                            k,
                        )
                    })
                    .collect()
            })
            .map_err(|e| e.at_time(self.t))?;

            self.internal = rough.core.iter().copied().zip(advanced).collect();
        }

        self.rough = Some(rough);
        self.eps = Some(wlr.eps);
        self.prev = Some(core::mem::replace(&mut self.now, next));
        self.t += dt;
        Ok(())
    }
}

/// Right-hand side of the internal scheme at a single point, evaluated
/// directly on the overlay field with boundary-aware index mapping. The CU
/// scheme is applied in its finite-difference reading here: the overlay
/// point values stand in for cell averages.
fn internal_rhs_at(
    kind: InternalKind,
    field: &[SwState],
    dx: f64,
    g: f64,
    weno: &WenoParams,
    bc: Boundary,
    k: usize,
) -> Result<SwState> {
    let m = field.len() as isize;
    let at = |i: isize| -> SwState {
        let idx = match bc {
            Boundary::Periodic => i.rem_euclid(m),
            Boundary::Free => i.clamp(0, m - 1),
        };
        field[idx as usize]
    };
    let ki = k as isize;
    match kind {
        InternalKind::Cu => {
            let h_at = |j: isize| -> Result<SwState> {
                let minus =
                    at(j - 1) + minmod_slope(at(j - 2), at(j - 1), at(j), dx) * (0.5 * dx);
                let plus = at(j) - minmod_slope(at(j - 1), at(j), at(j + 1), dx) * (0.5 * dx);
                minus.check_depth("combined CU reconstruction", Some(k))?;
                plus.check_depth("combined CU reconstruction", Some(k))?;
                let iv = crate::reconstruction::InterfaceValues { minus, plus };
                let s = local_speeds(minus, plus, g, true)?;
                Ok(cu_flux(&iv, s, g))
            };
            Ok((h_at(ki)? - h_at(ki + 1)?) * (1.0 / dx))
        }
        InternalKind::Aweno => {
            let six = |j: isize| -> [SwState; 6] {
                core::array::from_fn(|i| at(j - 3 + i as isize))
            };
            let h_at = |j: isize| -> Result<SwState> {
                let stencil = six(j);
                let iv = characteristic_interface_values(&stencil, g, 3, weno)?;
                let s = local_speeds(iv.minus, iv.plus, g, true)?;
                Ok(aweno_flux(&iv, s, g))
            };
            let fluxes = |j: isize| -> [SwState; 6] {
                let stencil = six(j);
                core::array::from_fn(|i| flux_raw(stencil[i], g))
            };
            let c2 = dx / 24.0;
            let c4 = 7.0 * dx * dx * dx / 5760.0;
            let f_lo = fluxes(ki);
            let f_hi = fluxes(ki + 1);
            Ok((h_at(ki)? - h_at(ki + 1)?) * (1.0 / dx)
                + (fxx_stencil(&f_hi, dx) - fxx_stencil(&f_lo, dx)) * c2
                - (fxxxx_stencil(&f_hi, dx) - fxxxx_stencil(&f_lo, dx)) * c4)
        }
    }
}
