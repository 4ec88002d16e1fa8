//! Built-in oracle suite behind `swlab selftest`: quick analytic checks
//! that the numerical kernels satisfy their exactness identities.

use crate::examples;
use std::f64::consts::PI;
use swlab_core::rates::{quadrature_l, runge_pointwise, TripleSample, RATE_DENOM_TOL};
use swlab_core::reconstruction::{minmod, wenoz_interpolate, wenoz_weights, Side, WenoParams};
use swlab_core::swe::{flux, SHOCK_LEFT, SHOCK_RIGHT};
use swlab_core::time_march::ssprk3_step;
use swlab_core::{ImbeddedTriple, SwState};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

pub fn run_all() -> Vec<Check> {
    let mut checks = Vec::new();

    // Rankine-Hugoniot residual of the isolated-shock states (g = 10, s = 1).
    {
        let fl = flux(SHOCK_LEFT, 10.0).unwrap();
        let fr = flux(SHOCK_RIGHT, 10.0).unwrap();
        let res = ((SHOCK_RIGHT.h - SHOCK_LEFT.h) - (fr.h - fl.h))
            .abs()
            .max(((SHOCK_RIGHT.q - SHOCK_LEFT.q) - (fr.q - fl.q)).abs());
        checks.push(check(
            "rankine-hugoniot residual < 1e-12",
            res < 1e-12,
            format!("residual {res:e}"),
        ));
    }

    // Quadrature exact through degree 5.
    {
        let dx = 0.35;
        let xc = 1.2;
        let mut worst = 0.0_f64;
        for k in 0..=5usize {
            let v: [f64; 5] = core::array::from_fn(|i| (xc + (i as f64 - 2.0) * dx).powi(k as i32));
            let exact = ((xc + 0.5 * dx).powi(k as i32 + 1) - (xc - 0.5 * dx).powi(k as i32 + 1))
                / (k as f64 + 1.0);
            worst = worst.max((quadrature_l(&v, dx) - exact).abs());
        }
        checks.push(check(
            "quadrature exact on degree <= 5",
            worst < 1e-12,
            format!("worst defect {worst:e}"),
        ));
    }

    // WENO-Z: convex weights and quadratic reproduction.
    {
        let p = WenoParams::default();
        let v: [f64; 6] = core::array::from_fn(|i| {
            let x = (i as f64 - 2.5) * 0.3 + 0.7;
            2.0 - x + 3.0 * x * x
        });
        let w = wenoz_weights(&v, &p, Side::Minus);
        let sum_defect = (w[0] + w[1] + w[2] - 1.0).abs();
        let x0 = 0.7;
        let defect = (wenoz_interpolate(&v, &p, Side::Minus) - (2.0 - x0 + 3.0 * x0 * x0)).abs();
        checks.push(check(
            "weno-z weights sum to 1 and reproduce quadratics",
            w.iter().all(|&x| x >= 0.0) && sum_defect < 1e-14 && defect < 1e-12,
            format!("weight sum defect {sum_defect:e}, quadratic defect {defect:e}"),
        ));
    }

    // SSP-RK3 linear amplification factor.
    {
        let z = -0.64;
        let out = ssprk3_step(&[SwState::new(1.0, 0.0)], 1.0, |s, _| {
            Ok(vec![s[0] * z])
        })
        .unwrap();
        let expect = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
        let defect = (out[0].h - expect).abs();
        checks.push(check(
            "ssp-rk3 amplification 1 + z + z^2/2 + z^3/6",
            defect < 1e-14,
            format!("defect {defect:e}"),
        ));
    }

    // Minmod sign cases.
    {
        let ok = minmod(2.0, 3.0) == 2.0 && minmod(-1.0, 2.0) == 0.0 && minmod(-2.0, -3.0) == -2.0;
        checks.push(check("minmod sign cases", ok, String::new()));
    }

    // Runge estimator on synthetic exponents.
    {
        let mut worst = 0.0_f64;
        for p in [1.0, 2.0, 3.0, 5.0] {
            let level = |mult: f64| -> Vec<f64> {
                (0..=20).map(|j| (1.0 + 0.1 * j as f64) * (mult * 0.01f64).powf(p)).collect()
            };
            let sample = TripleSample {
                coarse: level(4.0),
                mid: level(2.0),
                fine: level(1.0),
            };
            for r in runge_pointwise(&sample, RATE_DENOM_TOL) {
                worst = worst.max((r.unwrap() - p).abs());
            }
        }
        checks.push(check(
            "runge estimator recovers exponents 1, 2, 3, 5",
            worst < 1e-10,
            format!("worst defect {worst:e}"),
        ));
    }

    // Simple-wave breaking time 5/(3 pi), consistent with t ~ 0.54.
    {
        let t = examples::one_shock_breaking_time();
        let defect = (t - 5.0 / (3.0 * PI)).abs();
        checks.push(check(
            "breaking time 5/(3 pi) in (0.5, 0.55)",
            defect < 1e-15 && t > 0.5 && t < 0.55,
            format!("T = {t}"),
        ));
    }

    // Imbedded-grid coincidence.
    {
        let triple = ImbeddedTriple::build(0.0, 10.0, 137).unwrap();
        let mut worst = 0.0_f64;
        for j in 0..=137 {
            let x = triple.coarse().interface(j);
            worst = worst
                .max((x - triple.mid().interface(2 * j)).abs())
                .max((x - triple.fine().interface(4 * j)).abs());
        }
        checks.push(check(
            "imbedded grids coincide at coarse endpoints",
            worst <= 64.0 * f64::EPSILON,
            format!("worst offset {worst:e}"),
        ));
    }

    checks
}
