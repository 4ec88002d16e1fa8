//! Drivers: single runs, reference error fields, combined runs, and the
//! three-imbedded-grid convergence studies. Pure computation; serialization
//! lives in `output`.

use crate::config::{DtMode, RunConfig, SchemeChoice};
use crate::error::LabError;
use crate::examples::{
    make_initial, shock_exact_antiderivative_h, shock_exact_h, ExampleSpec,
    Representation, DOMAIN,
};
use swlab_core::combined::{CombinedConfig, CombinedRunner, RoughSet};
use swlab_core::rates::{
    antiderivative_sequence, averaged_rate, integral_rates, interface_point_values,
    runge_pointwise, runge_vs_exact, sample_interface_triple, w11_l1_norm, w11_rate,
    w11_rate_vs_exact, RateReport, SolutionRepr, WindowWrap, RATE_DENOM_TOL,
};
use swlab_core::reconstruction::WenoParams;
use swlab_core::scheme::RbmConfig;
use swlab_core::time_march::{march, max_char_speed, SchemeConfig, SchemeKind, StepPolicy};
use swlab_core::{Boundary, Field, Grid1D, ImbeddedTriple, SwState};

/// Default fixed-step CFL ratio of convergence studies.
const CONVERGE_CFL: f64 = 0.25;
/// A-WENO fixed-pow steps are additionally capped at this CFL ratio.
const AWENO_CFL_CAP: f64 = 0.45;

pub fn weno_params(cfg: &RunConfig) -> Result<WenoParams, LabError> {
    Ok(WenoParams::new(cfg.weno_p, cfg.weno_eps)?)
}

/// RBM configuration whose step check sits just inside the stability bound
/// `z²(4-z²) <= C`; the operating CFL is controlled by the step policy.
pub fn rbm_config(cfg: &RunConfig) -> Result<RbmConfig, LabError> {
    if !(cfg.c_visc > 0.0 && cfg.c_visc <= 3.0) {
        return Err(LabError::config(format!(
            "RBM viscosity C must lie in (0, 3] (got {})",
            cfg.c_visc
        )));
    }
    let z_max = (2.0 - (4.0 - cfg.c_visc).sqrt()).sqrt();
    Ok(RbmConfig::new(cfg.c_visc, 0.999 * z_max)?)
}

fn scheme_config(cfg: &RunConfig, policy: StepPolicy) -> Result<SchemeConfig, LabError> {
    Ok(SchemeConfig {
        g: cfg.g,
        rbm: rbm_config(cfg)?,
        weno: weno_params(cfg)?,
        policy,
    })
}

fn representation(kind: SchemeKind) -> Representation {
    match kind {
        SchemeKind::Cu => Representation::CellAverage,
        SchemeKind::Rbm | SchemeKind::Aweno => Representation::PointValue,
    }
}

/// Largest snapshot-commensurate step not exceeding `target`: every
/// snapshot time (and `t_final`) must be an integer multiple of the
/// returned step so constant-step runs land on them exactly.
fn commensurate_unit(snapshots: &[f64], t_final: f64) -> Option<f64> {
    let mut times: Vec<f64> = snapshots.iter().copied().filter(|&t| t > 0.0).collect();
    times.push(t_final);
    let unit = times.iter().copied().fold(f64::INFINITY, f64::min);
    if !unit.is_finite() || unit <= 0.0 {
        return None;
    }
    for t in times {
        let ratio = t / unit;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
            return None;
        }
    }
    Some(unit)
}

fn fitted_dt(target: f64, unit: Option<f64>) -> f64 {
    match unit {
        Some(u) => u / (u / target).ceil().max(1.0),
        None => target,
    }
}

/// One marched solution plus its grid.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub grid: Grid1D,
    pub snapshots: Vec<(f64, Field)>,
    /// Final detector state of a combined run.
    pub final_rough: Option<RoughSet>,
    pub final_eps: Option<Vec<f64>>,
}

/// Drives a combined run at constant step `dt`, exporting at the requested
/// snapshot times (which must be integer multiples of `dt`).
pub fn run_combined(
    initial: &[SwState],
    grid: &Grid1D,
    bc: Boundary,
    ccfg: CombinedConfig,
    dt: f64,
    t_final: f64,
    snapshots: &[f64],
) -> Result<RunOutcome, LabError> {
    let mut runner = CombinedRunner::new(initial, grid, bc, ccfg)?;
    let total_steps = (t_final / dt).round() as usize;
    if ((total_steps as f64) * dt - t_final).abs() > 1e-9 * t_final.max(1.0) {
        return Err(LabError::config(format!(
            "combined runs need t_final divisible by dt (dt = {dt}, t_final = {t_final})"
        )));
    }
    let mut snap_steps: Vec<(usize, f64)> = Vec::new();
    for &s in snapshots {
        let k = (s / dt).round() as usize;
        if ((k as f64) * dt - s).abs() > 1e-9 * s.max(1.0) {
            return Err(LabError::config(format!(
                "snapshot {s} is not a multiple of the combined step {dt}"
            )));
        }
        snap_steps.push((k, s));
    }
    let mut out = RunOutcome {
        grid: *grid,
        snapshots: Vec::new(),
        final_rough: None,
        final_eps: None,
    };
    if let Some(&(0, s)) = snap_steps.first() {
        out.snapshots.push((s, initial.to_vec()));
    }
    for step in 1..=total_steps {
        runner.step(dt)?;
        if let Some(&(_, s)) = snap_steps.iter().find(|&&(k, _)| k == step) {
            out.snapshots.push((s, runner.export()));
        }
    }
    out.final_rough = runner.rough().cloned();
    out.final_eps = runner.detector_eps().map(|e| e.to_vec());
    Ok(out)
}

/// Runs one scheme on one grid per the configured step policy.
pub fn run_single(cfg: &RunConfig) -> Result<RunOutcome, LabError> {
    let spec = cfg.spec()?;
    let grid = Grid1D::new(DOMAIN.0, DOMAIN.1, cfg.cells)?;
    run_on_grid(cfg, &spec, &grid)
}

fn run_on_grid(
    cfg: &RunConfig,
    spec: &ExampleSpec,
    grid: &Grid1D,
) -> Result<RunOutcome, LabError> {
    let kind = cfg.scheme.marching_kind();
    let initial = make_initial(spec.data, grid, representation(kind), cfg.g);

    if let Some(internal) = cfg.scheme.internal() {
        let mu = cfg.mu.expect("resolve() guarantees mu for combined schemes");
        let mut ccfg = CombinedConfig::new(cfg.g, mu, internal)?;
        ccfg.rbm = rbm_config(cfg)?;
        ccfg.weno = weno_params(cfg)?;
        let a0 = max_char_speed(&initial, cfg.g)?;
        let target = match cfg.dt {
            Some(dt) => dt,
            None => cfg.cfl.unwrap_or(spec.fixed_step_cfl) * grid.dx() / a0,
        };
        let dt = fitted_dt(target, commensurate_unit(&cfg.snapshots, cfg.t_final));
        return run_combined(
            &initial,
            grid,
            spec.bc,
            ccfg,
            dt,
            cfg.t_final,
            &cfg.snapshots,
        );
    }

    let policy = match cfg.dt_mode {
        DtMode::Adaptive => StepPolicy::Adaptive {
            cfl: cfg.cfl.unwrap_or(0.5),
        },
        DtMode::Fixed => StepPolicy::Fixed {
            dt: cfg.dt.ok_or_else(|| {
                LabError::config("dt_mode=fixed needs an explicit dt")
            })?,
        },
        DtMode::FixedPow => StepPolicy::FixedPow {
            kappa: cfg.kappa,
            exponent: cfg.exponent,
        },
    };
    let score = scheme_config(cfg, policy)?;
    let record = march(
        &initial,
        kind,
        grid,
        spec.bc,
        &score,
        cfg.t_final,
        &cfg.snapshots,
    )?;
    Ok(RunOutcome {
        grid: *grid,
        snapshots: record.snapshots,
        final_rough: None,
        final_eps: None,
    })
}

/// Per-point log10 relative depth error against a reference or exact
/// solution at the coincident interfaces, floored at -16.
#[derive(Debug, Clone)]
pub struct ErrorField {
    pub xs: Vec<f64>,
    pub log10_rel: Vec<f64>,
}

const LOG_ERR_FLOOR: f64 = -16.0;

/// Runs the configured case and measures depth errors at every interface of
/// the run grid: against the exact solution when the example has one,
/// otherwise against the same scheme on a mesh refined by
/// `reference_multiplier`.
pub fn reference_error_field(
    cfg: &RunConfig,
) -> Result<(RunOutcome, Vec<(f64, ErrorField)>), LabError> {
    let spec = cfg.spec()?;
    let outcome = run_single(cfg)?;
    let grid = outcome.grid;
    let weno = weno_params(cfg)?;
    let sample_kind = sampling_kind(cfg.scheme);

    let mut fields = Vec::new();
    if spec.has_exact {
        for (t, field) in &outcome.snapshots {
            let interfaces: Vec<usize> = (0..=grid.cells()).collect();
            let vals = interface_point_values(
                field,
                sample_kind,
                cfg.g,
                &weno,
                spec.bc,
                grid.dx(),
                &interfaces,
            )?;
            let xs: Vec<f64> = interfaces.iter().map(|&j| grid.interface(j)).collect();
            let errs = xs
                .iter()
                .zip(&vals)
                .map(|(&x, v)| log10_rel_error(v.h, shock_exact_h(x, *t)))
                .collect();
            fields.push((*t, ErrorField { xs, log10_rel: errs }));
        }
        return Ok((outcome, fields));
    }

    let mult = cfg.reference_multiplier.ok_or_else(|| {
        LabError::config("examples without an exact solution need --reference-multiplier")
    })?;
    let ref_grid = Grid1D::new(DOMAIN.0, DOMAIN.1, cfg.cells * mult)?;
    let reference = run_on_grid(cfg, &spec, &ref_grid)?;
    for ((t, field), (tr, ref_field)) in outcome.snapshots.iter().zip(&reference.snapshots) {
        debug_assert_eq!(t, tr);
        let interfaces: Vec<usize> = (0..=grid.cells()).collect();
        let vals = interface_point_values(
            field,
            sample_kind,
            cfg.g,
            &weno,
            spec.bc,
            grid.dx(),
            &interfaces,
        )?;
        let ref_interfaces: Vec<usize> = interfaces.iter().map(|&j| j * mult).collect();
        let ref_vals = interface_point_values(
            ref_field,
            sample_kind,
            cfg.g,
            &weno,
            spec.bc,
            ref_grid.dx(),
            &ref_interfaces,
        )?;
        let xs: Vec<f64> = interfaces.iter().map(|&j| grid.interface(j)).collect();
        let errs = vals
            .iter()
            .zip(&ref_vals)
            .map(|(v, r)| log10_rel_error(v.h, r.h))
            .collect();
        fields.push((*t, ErrorField { xs, log10_rel: errs }));
    }
    Ok((outcome, fields))
}

fn log10_rel_error(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        return LOG_ERR_FLOOR;
    }
    let rel = ((value - reference) / reference).abs();
    if rel <= 0.0 {
        LOG_ERR_FLOOR
    } else {
        rel.log10().max(LOG_ERR_FLOOR)
    }
}

/// Reconstruction used when sampling solution values at interfaces:
/// combined exports are RBM-style point values.
pub fn sampling_kind(scheme: SchemeChoice) -> SchemeKind {
    match scheme {
        SchemeChoice::Cu => SchemeKind::Cu,
        SchemeChoice::Aweno => SchemeKind::Aweno,
        SchemeChoice::Rbm | SchemeChoice::RbmCu | SchemeChoice::RbmAweno => SchemeKind::Rbm,
    }
}

/// Rate families measured at one snapshot time of a convergence study.
#[derive(Debug, Clone)]
pub struct TimeRates {
    pub t: f64,
    /// Coarse endpoint positions the rates live at.
    pub xs: Vec<f64>,
    pub report: RateReport,
    /// Subsampling stride of the thinned-out rate views (about 51 points).
    pub sub_stride: usize,
}

#[derive(Debug, Clone)]
pub struct ConvergeOutcome {
    pub n: usize,
    pub per_time: Vec<TimeRates>,
    /// Coarse-grid solutions per snapshot, for optional solution output.
    pub coarse_snapshots: Vec<(f64, Field)>,
    /// Fixed steps used on the (coarse, mid, fine) grids.
    pub dts: [f64; 3],
}

/// Per-grid constant step for a convergence run: proportional to dx for CU,
/// RBM, and combined runs; `kappa·dx^(5/3)` (CFL-capped) for A-WENO.
fn convergence_dt(
    cfg: &RunConfig,
    spec: &ExampleSpec,
    grid: &Grid1D,
    a0: f64,
    unit: Option<f64>,
) -> f64 {
    let target = match cfg.scheme {
        SchemeChoice::Aweno => (cfg.kappa * grid.dx().powf(cfg.exponent))
            .min(AWENO_CFL_CAP * grid.dx() / a0),
        SchemeChoice::Cu | SchemeChoice::Rbm => {
            cfg.cfl.unwrap_or(CONVERGE_CFL) * grid.dx() / a0
        }
        SchemeChoice::RbmCu | SchemeChoice::RbmAweno => {
            cfg.cfl.unwrap_or(spec.fixed_step_cfl) * grid.dx() / a0
        }
    };
    fitted_dt(target, unit)
}

/// Runs the three imbedded grids (two when measuring against an exact
/// solution) and assembles every rate family at each snapshot time.
pub fn converge(cfg: &RunConfig) -> Result<ConvergeOutcome, LabError> {
    let spec = cfg.spec()?;
    let n = cfg.cells;
    let triple = ImbeddedTriple::build(DOMAIN.0, DOMAIN.1, n)?;
    let weno = weno_params(cfg)?;
    let wrap = match spec.bc {
        Boundary::Periodic => WindowWrap::Periodic,
        Boundary::Free => WindowWrap::Clamped,
    };

    // Shared wave-speed scale from the finest initial data.
    let fine_points = make_initial(spec.data, triple.fine(), Representation::PointValue, cfg.g);
    let a0 = max_char_speed(&fine_points, cfg.g)?;
    let unit = commensurate_unit(&cfg.snapshots, cfg.t_final);

    let exact_mode = spec.has_exact;
    let grids: Vec<&Grid1D> = if exact_mode {
        vec![triple.coarse(), triple.mid()]
    } else {
        vec![triple.coarse(), triple.mid(), triple.fine()]
    };
    let dts: Vec<f64> = grids
        .iter()
        .map(|g| convergence_dt(cfg, &spec, g, a0, unit))
        .collect();

    // The imbedded-grid runs are independent; run them concurrently.
    let mut results: Vec<Option<Result<RunOutcome, LabError>>> = Vec::new();
    results.resize_with(grids.len(), || None);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (grid, dt) in grids.iter().zip(&dts) {
            let mut grid_cfg = cfg.clone();
            grid_cfg.dt_mode = DtMode::Fixed;
            grid_cfg.dt = Some(*dt);
            grid_cfg.cells = grid.cells();
            let spec = spec.clone();
            handles.push(scope.spawn(move || run_on_grid(&grid_cfg, &spec, grid)));
        }
        for (slot, handle) in results.iter_mut().zip(handles) {
            *slot = Some(handle.join().expect("grid run thread panicked"));
        }
    });
    let mut runs: Vec<RunOutcome> = Vec::with_capacity(results.len());
    for r in results {
        runs.push(r.expect("slot filled")?);
    }

    let xs: Vec<f64> = (0..=n).map(|j| triple.coarse().interface(j)).collect();
    let sub_stride = (n / 50).max(1);
    let snap_count = runs[0].snapshots.len();
    let mut per_time = Vec::with_capacity(snap_count);
    for si in 0..snap_count {
        let t = runs[0].snapshots[si].0;
        let report = if exact_mode {
            rates_vs_exact_at(cfg, &spec, &triple, &runs, si, &weno, wrap)?
        } else {
            rates_imbedded_at(cfg, &spec, &triple, &runs, si, &weno, wrap)?
        };
        per_time.push(TimeRates {
            t,
            xs: xs.clone(),
            report,
            sub_stride,
        });
    }

    let mut dts_arr = [0.0; 3];
    for (slot, dt) in dts_arr.iter_mut().zip(&dts) {
        *slot = *dt;
    }
    Ok(ConvergeOutcome {
        n,
        per_time,
        coarse_snapshots: runs[0].snapshots.clone(),
        dts: dts_arr,
    })
}

fn rates_imbedded_at(
    cfg: &RunConfig,
    spec: &ExampleSpec,
    triple: &ImbeddedTriple,
    runs: &[RunOutcome],
    si: usize,
    weno: &WenoParams,
    wrap: WindowWrap,
) -> Result<RateReport, LabError> {
    let kind = sampling_kind(cfg.scheme);
    let repr = match kind {
        SchemeKind::Cu => SolutionRepr::CellAverage,
        _ => SolutionRepr::PointValue,
    };
    let (fc, fm, ff) = (
        &runs[0].snapshots[si].1,
        &runs[1].snapshots[si].1,
        &runs[2].snapshots[si].1,
    );
    let sample = sample_interface_triple(triple, fc, fm, ff, kind, cfg.g, weno, spec.bc)?;
    let pointwise = runge_pointwise(&sample, RATE_DENOM_TOL);
    let averaged = averaged_rate(&pointwise, 12, wrap);

    let h_of = |f: &Field| -> Vec<f64> { f.iter().map(|v| v.h).collect() };
    let i_c = antiderivative_sequence(&h_of(fc), repr, triple.coarse().dx(), spec.bc, 1)?;
    let i_m = antiderivative_sequence(&h_of(fm), repr, triple.mid().dx(), spec.bc, 2)?;
    let i_f = antiderivative_sequence(&h_of(ff), repr, triple.fine().dx(), spec.bc, 4)?;
    let integral = integral_rates(&i_c, &i_m, &i_f, RATE_DENOM_TOL);
    let (w11, w11_errors) = w11_rate(&i_c, &i_m, &i_f, triple.coarse().dx());
    Ok(RateReport {
        pointwise,
        averaged,
        integral,
        w11_rate: w11,
        w11_errors,
    })
}

fn rates_vs_exact_at(
    cfg: &RunConfig,
    spec: &ExampleSpec,
    triple: &ImbeddedTriple,
    runs: &[RunOutcome],
    si: usize,
    weno: &WenoParams,
    wrap: WindowWrap,
) -> Result<RateReport, LabError> {
    let kind = sampling_kind(cfg.scheme);
    let repr = match kind {
        SchemeKind::Cu => SolutionRepr::CellAverage,
        _ => SolutionRepr::PointValue,
    };
    let n = triple.coarse().cells();
    let (t, fc) = (&runs[0].snapshots[si].0, &runs[0].snapshots[si].1);
    let fm = &runs[1].snapshots[si].1;

    let coarse_ifaces: Vec<usize> = (0..=n).collect();
    let mid_ifaces: Vec<usize> = (0..=n).map(|j| 2 * j).collect();
    let vc = interface_point_values(
        fc,
        kind,
        cfg.g,
        weno,
        spec.bc,
        triple.coarse().dx(),
        &coarse_ifaces,
    )?;
    let vm = interface_point_values(
        fm,
        kind,
        cfg.g,
        weno,
        spec.bc,
        triple.mid().dx(),
        &mid_ifaces,
    )?;
    let hc: Vec<f64> = vc.iter().map(|v| v.h).collect();
    let hm: Vec<f64> = vm.iter().map(|v| v.h).collect();
    let hex: Vec<f64> = (0..=n)
        .map(|j| shock_exact_h(triple.coarse().interface(j), *t))
        .collect();
    let pointwise = runge_vs_exact(&hc, &hm, &hex, RATE_DENOM_TOL);
    let averaged = averaged_rate(&pointwise, 12, wrap);

    let h_of = |f: &Field| -> Vec<f64> { f.iter().map(|v| v.h).collect() };
    // Anti-derivatives at the shared coarse endpoints for the integral
    // rates, and on each grid's own endpoints for the W^-1,1 norms.
    let i_c = antiderivative_sequence(&h_of(fc), repr, triple.coarse().dx(), spec.bc, 1)?;
    let i_m2 = antiderivative_sequence(&h_of(fm), repr, triple.mid().dx(), spec.bc, 2)?;
    let i_ex: Vec<f64> = (0..=n)
        .map(|j| shock_exact_antiderivative_h(triple.coarse().interface(j), *t))
        .collect();
    let integral = runge_vs_exact(&i_c, &i_m2, &i_ex, RATE_DENOM_TOL);

    let i_m_own = antiderivative_sequence(&h_of(fm), repr, triple.mid().dx(), spec.bc, 1)?;
    let err = |i_num: &[f64], grid: &Grid1D| -> f64 {
        let diffs: Vec<f64> = i_num
            .iter()
            .enumerate()
            .map(|(j, v)| v - shock_exact_antiderivative_h(grid.interface(j), *t))
            .collect();
        w11_l1_norm(&diffs, grid.dx())
    };
    let e_coarse = err(&i_c, triple.coarse());
    let e_mid = err(&i_m_own, triple.mid());
    let w11 = w11_rate_vs_exact(e_coarse, e_mid);
    Ok(RateReport {
        pointwise,
        averaged,
        integral,
        w11_rate: w11,
        w11_errors: [e_coarse, e_mid],
    })
}

/// Total variation of the depth over a cell index span.
pub fn total_variation_h(field: &[SwState], lo: usize, hi: usize) -> f64 {
    field[lo..=hi]
        .windows(2)
        .map(|w| (w[1].h - w[0].h).abs())
        .sum()
}

/// Interface position of the steepest depth jump.
pub fn steepest_jump_position(field: &[SwState], grid: &Grid1D) -> f64 {
    let k = (0..field.len() - 1)
        .max_by(|&a, &b| {
            let da = (field[a + 1].h - field[a].h).abs();
            let db = (field[b + 1].h - field[b].h).abs();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap_or(0);
    grid.interface(k + 1)
}
