//! Experimental convergence measurement on the imbedded grid triple:
//! pointwise Runge rates, windowed averages, anti-derivative (integral)
//! rates, and the global W⁻¹,¹ rate, plus their exact-solution variants.

use crate::error::{Error, Result};
use crate::float;
use crate::grid::ImbeddedTriple;
use crate::reconstruction::{
    characteristic_interface_values, minmod_interface_values, WenoParams,
};
use crate::scheme::{extend, Boundary};
use crate::swe::SwState;
use crate::time_march::SchemeKind;
use alloc::format;
use alloc::vec::Vec;

/// Default relative floor under which a Runge denominator makes the rate
/// undefined (constant regions give 0/0).
pub const RATE_DENOM_TOL: f64 = 1e-13;

/// Point value of the solution at a grid interface: the mean of the two
/// one-sided reconstructions.
///
/// The CU (cell-average) solution uses the minmod reconstruction; the RBM
/// and A-WENO point-value solutions use the characteristic WENO-Z
/// interpolant (for RBM purely as post-processing).
pub fn interface_point_value(
    field: &[SwState],
    kind: SchemeKind,
    g: f64,
    weno: &WenoParams,
    bc: Boundary,
    dx: f64,
    j: usize,
) -> Result<SwState> {
    let vals = interface_point_values(field, kind, g, weno, bc, dx, &[j])?;
    Ok(vals[0])
}

/// Batch form of [`interface_point_value`]; the ghost extension is built
/// once for all requested interfaces.
pub fn interface_point_values(
    field: &[SwState],
    kind: SchemeKind,
    g: f64,
    weno: &WenoParams,
    bc: Boundary,
    dx: f64,
    interfaces: &[usize],
) -> Result<Vec<SwState>> {
    let m = field.len();
    let width = match kind {
        SchemeKind::Cu => 2,
        SchemeKind::Rbm | SchemeKind::Aweno => 3,
    };
    let ext = extend(field, width, bc);
    let mut out = Vec::with_capacity(interfaces.len());
    for &j in interfaces {
        if j > m {
            return Err(Error::IndexOutOfRange { index: j, max: m });
        }
        let iv = match kind {
            SchemeKind::Cu => minmod_interface_values(&ext, dx, j + width)?,
            SchemeKind::Rbm | SchemeKind::Aweno => {
                characteristic_interface_values(&ext, g, j + width, weno)?
            }
        };
        out.push(iv.average());
    }
    Ok(out)
}

/// Depth samples of the three imbedded-grid solutions at the coincident
/// coarse endpoints `x_j`, `j = 0..=N`.
#[derive(Debug, Clone)]
pub struct TripleSample {
    pub coarse: Vec<f64>,
    pub mid: Vec<f64>,
    pub fine: Vec<f64>,
}

impl TripleSample {
    pub fn len(&self) -> usize {
        self.coarse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coarse.is_empty()
    }
}

/// Samples the water depth of the three solutions of an imbedded-grid run
/// at every coarse endpoint.
pub fn sample_interface_triple(
    triple: &ImbeddedTriple,
    coarse_field: &[SwState],
    mid_field: &[SwState],
    fine_field: &[SwState],
    kind: SchemeKind,
    g: f64,
    weno: &WenoParams,
    bc: Boundary,
) -> Result<TripleSample> {
    let n = triple.coarse().cells();
    for (field, grid) in [
        (coarse_field, triple.coarse()),
        (mid_field, triple.mid()),
        (fine_field, triple.fine()),
    ] {
        if field.len() != grid.cells() {
            return Err(Error::MismatchedLengths {
                expected: grid.cells(),
                got: field.len(),
            });
        }
    }
    let sample = |field: &[SwState], dx: f64, stride: usize| -> Result<Vec<f64>> {
        let ifaces: Vec<usize> = (0..=n).map(|j| j * stride).collect();
        let vals = interface_point_values(field, kind, g, weno, bc, dx, &ifaces)?;
        Ok(vals.iter().map(|v| v.h).collect())
    };
    Ok(TripleSample {
        coarse: sample(coarse_field, triple.coarse().dx(), 1)?,
        mid: sample(mid_field, triple.mid().dx(), 2)?,
        fine: sample(fine_field, triple.fine().dx(), 4)?,
    })
}

#[inline]
fn runge_entry(num: f64, den: f64, tol: f64) -> Option<f64> {
    if float::abs(den) < tol * float::abs(num).max(1.0) {
        return None;
    }
    let r = -float::log2(float::abs(num / den));
    r.is_finite().then_some(r)
}

fn runge_sequences(coarse: &[f64], mid: &[f64], fine: &[f64], tol: f64) -> Vec<Option<f64>> {
    coarse
        .iter()
        .zip(mid)
        .zip(fine)
        .map(|((&c, &m), &f)| runge_entry(m - f, c - m, tol))
        .collect()
}

/// Pointwise Runge rates `log_{1/2} |(V^{2N}−V^{4N})/(V^N−V^{2N})|` at the
/// coincident points; entries with a vanishing denominator are undefined.
pub fn runge_pointwise(sample: &TripleSample, tol: f64) -> Vec<Option<f64>> {
    runge_sequences(&sample.coarse, &sample.mid, &sample.fine, tol)
}

/// Rates against an exact solution sampled at the same points:
/// `log_{1/2} |(V^{2N}−V^exact)/(V^N−V^exact)|`.
pub fn runge_vs_exact(coarse: &[f64], mid: &[f64], exact: &[f64], tol: f64) -> Vec<Option<f64>> {
    coarse
        .iter()
        .zip(mid)
        .zip(exact)
        .map(|((&c, &m), &e)| runge_entry(m - e, c - e, tol))
        .collect()
}

/// Window policy of [`averaged_rate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowWrap {
    /// Indices wrap around the period (periodic solutions).
    Periodic,
    /// The window is clipped at the sequence ends.
    Clamped,
}

/// Mean of the rates over a sliding window of `2·half_width + 1` points
/// (25 by default), skipping undefined entries.
pub fn averaged_rate(
    rates: &[Option<f64>],
    half_width: usize,
    wrap: WindowWrap,
) -> Vec<Option<f64>> {
    let n = rates.len();
    if n == 0 {
        return Vec::new();
    }
    let hw = half_width as isize;
    (0..n)
        .map(|j| {
            let mut sum = 0.0;
            let mut count = 0usize;
            for i in -hw..=hw {
                let idx = match wrap {
                    WindowWrap::Periodic => {
                        // The first and last entries coincide on a periodic
                        // grid; wrap on the period n-1.
                        let period = (n - 1).max(1) as isize;
                        (j as isize + i).rem_euclid(period) as usize
                    }
                    WindowWrap::Clamped => {
                        let idx = j as isize + i;
                        if idx < 0 || idx >= n as isize {
                            continue;
                        }
                        idx as usize
                    }
                };
                if let Some(r) = rates[idx] {
                    sum += r;
                    count += 1;
                }
            }
            (count > 0).then(|| sum / count as f64)
        })
        .collect()
}

/// Sixth-order quadrature of one cell of width `dx` from five equispaced
/// point values centered on the cell: `dx/5760 · (−17, 308, 5178, 308, −17)`.
///
/// The symmetric end weights make the rule exact through degree 5.
pub fn quadrature_l(values: &[f64; 5], dx: f64) -> f64 {
    dx / 5760.0
        * (-17.0 * values[0] + 308.0 * values[1] + 5178.0 * values[2] + 308.0 * values[3]
            - 17.0 * values[4])
}

/// How a solution sequence represents the underlying function, which
/// selects the anti-derivative quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionRepr {
    /// Finite-volume cell averages: the cell integral is `dx·V̄` exactly.
    CellAverage,
    /// Finite-difference point values: the five-point quadrature
    /// [`quadrature_l`] integrates each cell.
    PointValue,
}

impl SolutionRepr {
    pub fn from_scheme(kind: SchemeKind) -> Self {
        match kind {
            SchemeKind::Cu => SolutionRepr::CellAverage,
            SchemeKind::Rbm | SchemeKind::Aweno => SolutionRepr::PointValue,
        }
    }
}

fn extend_scalar(values: &[f64], width: usize, bc: Boundary) -> Vec<f64> {
    let m = values.len() as isize;
    let w = width as isize;
    (-w..m + w)
        .map(|i| {
            let k = match bc {
                Boundary::Periodic => i.rem_euclid(m),
                Boundary::Free => i.clamp(0, m - 1),
            };
            values[k as usize]
        })
        .collect()
}

/// Approximate anti-derivative `I(x) = ∫_a^x u dξ` accumulated cell by cell
/// and sampled every `stride` cells (so a `4N`-cell fine grid sampled with
/// stride 4 lands on the `N+1` coarse endpoints).
pub fn antiderivative_sequence(
    values: &[f64],
    repr: SolutionRepr,
    dx: f64,
    bc: Boundary,
    stride: usize,
) -> Result<Vec<f64>> {
    let m = values.len();
    if stride == 0 || m % stride != 0 {
        return Err(Error::InvalidParameter(format!(
            "stride {stride} does not divide the cell count {m}"
        )));
    }
    let mut out = Vec::with_capacity(m / stride + 1);
    out.push(0.0);
    let mut acc = 0.0;
    match repr {
        SolutionRepr::CellAverage => {
            for (c, v) in values.iter().enumerate() {
                acc += dx * v;
                if (c + 1) % stride == 0 {
                    out.push(acc);
                }
            }
        }
        SolutionRepr::PointValue => {
            let ext = extend_scalar(values, 2, bc);
            for c in 0..m {
                acc += quadrature_l(ext[c..c + 5].try_into().unwrap(), dx);
                if (c + 1) % stride == 0 {
                    out.push(acc);
                }
            }
        }
    }
    Ok(out)
}

/// Integral (anti-derivative) Runge rates at the coincident points.
pub fn integral_rates(
    i_coarse: &[f64],
    i_mid: &[f64],
    i_fine: &[f64],
    tol: f64,
) -> Vec<Option<f64>> {
    runge_sequences(i_coarse, i_mid, i_fine, tol)
}

/// Discrete L¹ norm used by the W⁻¹,¹ rate: `coarse_dx · Σ_{j≥1} |ψ_j|`
/// over the coarse endpoints, index 0 excluded.
pub fn w11_l1_norm(psi: &[f64], coarse_dx: f64) -> f64 {
    coarse_dx * psi[1..].iter().map(|x| float::abs(*x)).sum::<f64>()
}

/// Global W⁻¹,¹ rate of an imbedded-grid run: the L¹ rate of the
/// anti-derivative differences, `log_{1/2}(‖I^{2N}−I^{4N}‖/‖I^N−I^{2N}‖)`.
///
/// Returns the rate (undefined on vanishing norms) and the two norms
/// `[‖I^N−I^{2N}‖, ‖I^{2N}−I^{4N}‖]`.
pub fn w11_rate(
    i_coarse: &[f64],
    i_mid: &[f64],
    i_fine: &[f64],
    coarse_dx: f64,
) -> (Option<f64>, [f64; 2]) {
    let diff = |a: &[f64], b: &[f64]| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };
    let e_cm = w11_l1_norm(&diff(i_coarse, i_mid), coarse_dx);
    let e_mf = w11_l1_norm(&diff(i_mid, i_fine), coarse_dx);
    let rate = if e_cm > 0.0 && e_mf > 0.0 {
        let r = float::log2(e_cm / e_mf);
        r.is_finite().then_some(r)
    } else {
        None
    };
    (rate, [e_cm, e_mf])
}

/// W⁻¹,¹ rate against exact anti-derivatives on two grids refined by a
/// factor of two: `log_{1/2}(‖I^{2N}−I^exact‖/‖I^N−I^exact‖)`.
pub fn w11_rate_vs_exact(err_coarse: f64, err_fine: f64) -> Option<f64> {
    if err_coarse > 0.0 && err_fine > 0.0 {
        let r = float::log2(err_coarse / err_fine);
        r.is_finite().then_some(r)
    } else {
        None
    }
}

/// Bundle of every rate family measured at one snapshot time.
#[derive(Debug, Clone)]
pub struct RateReport {
    pub pointwise: Vec<Option<f64>>,
    pub averaged: Vec<Option<f64>>,
    pub integral: Vec<Option<f64>>,
    pub w11_rate: Option<f64>,
    pub w11_errors: [f64; 2],
}
