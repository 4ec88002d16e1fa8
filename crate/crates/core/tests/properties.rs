//! Property suites: characteristic decomposition, limiter bounds, WENO-Z
//! weight behavior, and quadrature exactness on random inputs.

mod common;

use proptest::prelude::*;
use swlab_core::rates::quadrature_l;
use swlab_core::reconstruction::{
    minmod, minmod_interface_values, wenoz_interpolate, wenoz_weights, Side, WenoParams,
};
use swlab_core::swe::{local_speeds, CharBasis, SwState};

const G: f64 = 10.0;

fn state_strategy() -> impl Strategy<Value = SwState> {
    (0.1..5.0f64, -5.0..5.0f64).prop_map(|(h, u)| SwState::new(h, h * u))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn roe_basis_diagonalizes_the_roe_jacobian(left in state_strategy(), right in state_strategy()) {
        let b = CharBasis::roe(left, right, G).unwrap();
        let r = b.r();
        let ri = b.r_inv();
        // Jacobian at the Roe state: [[0, 1], [c² - u², 2u]].
        let a = [
            [0.0, 1.0],
            [b.c_hat * b.c_hat - b.u_hat * b.u_hat, 2.0 * b.u_hat],
        ];
        let mut d = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0.0;
                for k in 0..2 {
                    for l in 0..2 {
                        acc += ri[i][k] * a[k][l] * r[l][j];
                    }
                }
                d[i][j] = acc;
            }
        }
        let lam = [b.u_hat - b.c_hat, b.u_hat + b.c_hat];
        let scale = lam[0].abs().max(lam[1].abs()).max(1.0);
        prop_assert!((d[0][0] - lam[0]).abs() <= 1e-10 * scale);
        prop_assert!((d[1][1] - lam[1]).abs() <= 1e-10 * scale);
        prop_assert!(d[0][1].abs() <= 1e-10 * scale);
        prop_assert!(d[1][0].abs() <= 1e-10 * scale);

        // R⁻¹·R = I to 1e-12.
        for i in 0..2 {
            for j in 0..2 {
                let p = ri[i][0] * r[0][j] + ri[i][1] * r[1][j];
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((p - expect).abs() <= 1e-12);
            }
        }
    }
}

proptest! {
    #[test]
    fn minmod_magnitude_never_exceeds_either_argument(z1 in -1e6..1e6f64, z2 in -1e6..1e6f64) {
        let m = minmod(z1, z2);
        prop_assert!(m.abs() <= z1.abs() && m.abs() <= z2.abs());
        if z1 > 0.0 && z2 > 0.0 { prop_assert!(m > 0.0); }
        if z1.signum() != z2.signum() { prop_assert!(m == 0.0); }
    }

    #[test]
    fn minmod_interface_values_stay_between_adjacent_averages(
        cells in prop::collection::vec((0.1..5.0f64, -3.0..3.0f64), 6..16),
        j_rel in 0.0..1.0f64,
    ) {
        let cells: Vec<SwState> = cells.iter().map(|&(h, q)| SwState::new(h, q)).collect();
        let j = 2 + ((cells.len() - 4) as f64 * j_rel) as usize;
        let iv = minmod_interface_values(&cells, 0.1, j).unwrap();
        let between = |v: f64, a: f64, b: f64| v >= a.min(b) - 1e-12 && v <= a.max(b) + 1e-12;
        prop_assert!(between(iv.minus.h, cells[j - 1].h, (cells[j - 1].h + cells[j].h) / 2.0)
            || between(iv.minus.h, cells[j - 1].h, (cells[j - 1].h + cells[j - 2].h) / 2.0));
        // The looser componentwise statement: values bounded by the
        // neighboring cell averages.
        prop_assert!(between(iv.minus.h, cells[j - 2].h.min(cells[j - 1].h).min(cells[j].h),
                             cells[j - 2].h.max(cells[j - 1].h).max(cells[j].h)));
        prop_assert!(between(iv.plus.h, cells[j - 1].h.min(cells[j].h).min(cells[j + 1].h),
                             cells[j - 1].h.max(cells[j].h).max(cells[j + 1].h)));
        prop_assert!(between(iv.minus.q, cells[j - 2].q.min(cells[j - 1].q).min(cells[j].q),
                             cells[j - 2].q.max(cells[j - 1].q).max(cells[j].q)));
        prop_assert!(between(iv.plus.q, cells[j - 1].q.min(cells[j].q).min(cells[j + 1].q),
                             cells[j - 1].q.max(cells[j].q).max(cells[j + 1].q)));
    }

    #[test]
    fn wenoz_weights_form_a_convex_combination(v in prop::array::uniform6(-1e6..1e6f64)) {
        let p = WenoParams::default();
        for side in [Side::Minus, Side::Plus] {
            let w = wenoz_weights(&v, &p, side);
            for wk in w {
                prop_assert!(wk >= 0.0 && wk.is_finite());
            }
            prop_assert!((w[0] + w[1] + w[2] - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn wenoz_reproduces_random_quadratics(
        a in -10.0..10.0f64,
        b in -10.0..10.0f64,
        c in -10.0..10.0f64,
        dx in 0.01..1.0f64,
        x0 in -5.0..5.0f64,
    ) {
        let s = |x: f64| a + b * x + c * x * x;
        let v: [f64; 6] = core::array::from_fn(|i| s(x0 + (i as f64 - 2.5) * dx));
        let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let p = WenoParams::default();
        prop_assert!((wenoz_interpolate(&v, &p, Side::Minus) - s(x0)).abs() <= 1e-12 * scale);
        prop_assert!((wenoz_interpolate(&v, &p, Side::Plus) - s(x0)).abs() <= 1e-12 * scale);
    }

    #[test]
    fn quadrature_exact_through_degree_five(
        coeffs in prop::array::uniform6(-3.0..3.0f64),
        dx in 0.01..1.0f64,
        xc in -2.0..2.0f64,
    ) {
        let poly = |x: f64| {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * x.powi(k as i32))
                .sum::<f64>()
        };
        // Antiderivative with coefficients c_k/(k+1).
        let anti = |x: f64| {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * x.powi(k as i32 + 1) / (k as f64 + 1.0))
                .sum::<f64>()
        };
        let v: [f64; 5] = core::array::from_fn(|i| poly(xc + (i as f64 - 2.0) * dx));
        let exact = anti(xc + 0.5 * dx) - anti(xc - 0.5 * dx);
        let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs())) * dx;
        prop_assert!((quadrature_l(&v, dx) - exact).abs() <= 1e-12 * scale.max(1e-30));
    }

    #[test]
    fn local_speeds_are_ordered_and_bracket_zero_when_floored(
        left in state_strategy(),
        right in state_strategy(),
    ) {
        let s = local_speeds(left, right, G, true).unwrap();
        prop_assert!(s.plus >= 0.0 && s.minus <= 0.0 && s.plus >= s.minus);
        let s = local_speeds(left, right, G, false).unwrap();
        prop_assert!(s.plus >= s.minus);
    }
}
