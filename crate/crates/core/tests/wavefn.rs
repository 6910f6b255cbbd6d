mod common;

use common::{integrate_box, linspace, rat, real, simpson};
use deltawell::lattice::{self, interval, overline_nu, underline_nu, Location};
use deltawell::model::{nu_n, phi_mode};
use deltawell::spectrum::alpha_from_nu;
use deltawell::wavefn::{
    eval_normalized, eval_psi, eval_psi_derivative, limit_residual, rho, upsilon, upsilon_derivative, upsilon_hat,
    LimitPoint, Side,
};
use deltawell::Setup;
use proptest::prelude::*;

fn setups() -> Vec<Setup<f64>> {
    vec![rat(0, 1), rat(1, 4), rat(3, 4), real(1.0 / (10.0 * 2f64.sqrt())), real(0.3)]
}

fn next_up(x: f64) -> f64 {
    if x >= 0.0 {
        f64::from_bits(x.to_bits() + 1)
    } else {
        f64::from_bits(x.to_bits() - 1)
    }
}

fn sample_nu(s: &Setup<f64>, j: usize, t: f64) -> f64 {
    let iv = interval(s, j);
    let hi = iv.upper_nu();
    let lo = if iv.lower.is_some() { iv.lower_nu() } else { -4.0 * hi };
    lo + (hi - lo) * t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn continuous_at_x0(si in 0usize..5, j in 0usize..10, t in 0.01f64..0.99) {
        let s = &setups()[si];
        let nu = sample_nu(s, j, t);
        prop_assume!(matches!(lattice::locate(s, nu), Location::Interval(_)));
        let x0 = s.x0();
        let l = eval_normalized(s, nu, x0).unwrap();
        let r = eval_normalized(s, nu, next_up(x0)).unwrap();
        prop_assert!((l - r).abs() < 1e-12);
    }

    #[test]
    fn kink_direction_follows_alpha_psi(si in 0usize..5, j in 0usize..10, t in 0.01f64..0.99) {
        let s = &setups()[si];
        let nu = sample_nu(s, j, t);
        prop_assume!(matches!(lattice::locate(s, nu), Location::Interval(_)));
        let x0 = s.x0();
        let psi = eval_psi(s, nu, x0).unwrap();
        let alpha = alpha_from_nu(s, nu).unwrap();
        prop_assume!(alpha.abs() > 1e-9 && psi.abs() > 1e-12);
        let jump = eval_psi_derivative(s, nu, x0, false).unwrap() - eval_psi_derivative(s, nu, x0, true).unwrap();
        prop_assert_eq!(jump.signum(), (alpha * psi).signum());
    }

    #[test]
    fn positive_next_to_right_wall(si in 0usize..5, j in 0usize..10, t in 0.01f64..0.99) {
        let s = &setups()[si];
        let nu = sample_nu(s, j, t);
        prop_assume!(matches!(lattice::locate(s, nu), Location::Interval(_)));
        let x = s.l() / 2.0 - 1e-6 * s.l();
        prop_assert!(eval_normalized(s, nu, x).unwrap() > 0.0);
    }
}

#[test]
fn normalized_states_have_unit_norm() {
    for s in setups() {
        let nus = [-10.0, 0.3 * underline_nu(&s, 1), 0.0, nu_n(&s, 3)];
        for &nu in &nus {
            if matches!(lattice::locate(&s, nu), Location::Point(_)) {
                continue;
            }
            let q = integrate_box(&s, |x| eval_normalized(&s, nu, x).unwrap().powi(2), 2048);
            assert!((q - 1.0).abs() < 1e-8, "nu={nu} norm={q}");
        }
    }
}

#[test]
fn rho_matches_quadrature() {
    let s = rat(0, 1);
    let nu = nu_n(&s, 1);
    let q = integrate_box(&s, |x| eval_psi(&s, nu, x).unwrap().powi(2), 2048).sqrt();
    assert!((rho(&s, nu) - q).abs() < 1e-10);

    let s = rat(1, 4);
    let nu = -50.0;
    let q = integrate_box(&s, |x| eval_psi(&s, nu, x).unwrap().powi(2), 2048).sqrt();
    assert!((rho(&s, nu) - q).abs() < 1e-8 * q);
}

#[test]
fn bound_state_concentrates_at_x0() {
    for s in [rat(1, 4), rat(0, 1), real(0.2)] {
        let nu = -1e5;
        let x0 = s.x0();
        let eps = 0.01 * s.l();
        let f = |x: f64| eval_normalized(&s, nu, x).unwrap().powi(2);
        let outside = simpson(f, -s.l() / 2.0, x0 - eps, 4096) + simpson(f, x0 + eps, s.l() / 2.0, 4096);
        assert!(outside < 1e-6, "{outside}");
    }
}

#[test]
fn hat_limit_matches_nearby_states() {
    let s = rat(3, 4);
    let n = 16;
    let nh = nu_n(&s, n);
    for &sign in &[1.0, -1.0] {
        let nu = nh * (1.0 + sign * 1e-5);
        let sup = linspace(-0.5, 0.5, 4096)
            .into_iter()
            .map(|x| (eval_normalized(&s, nu, x).unwrap() - upsilon_hat(&s, n, x).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(sup < 1e-3, "{sup}");
    }
    // Peaks of Phi_16 at x = 1/2 - (j + 1/2)/16.
    let right = upsilon_hat(&s, n, 0.5 - 0.5 / 16.0).unwrap();
    let left = upsilon_hat(&s, n, 0.5 - 5.5 / 16.0).unwrap();
    assert!((right.abs() / left.abs() - 7.0).abs() < 1e-9);
}

#[test]
fn hat_derivatives_at_x0_scale_by_q() {
    for &(p, q, n) in &[(1u64, 4u64, 8u64), (3, 4, 16), (3, 5, 5), (0, 1, 4)] {
        let s = rat(p, q);
        let x0 = s.x0();
        let pt = LimitPoint::Hat(n);
        let dl = upsilon_derivative(&s, pt, x0, true).unwrap();
        let dr = upsilon_derivative(&s, pt, x0, false).unwrap();
        assert!((dl + s.q_ratio() * dr).abs() < 1e-12 * dl.abs().max(1.0));
        assert!(upsilon_hat(&s, n, x0).unwrap().abs() < 1e-12);
    }
}

#[test]
fn one_sided_limits_at_unshared_points() {
    let s = rat(1, 4);
    for k in [1u64, 2, 3, 4, 6] {
        let nl = underline_nu(&s, k);
        for (side, sign) in [(Side::Below, -1.0), (Side::Above, 1.0)] {
            let nu = nl * (1.0 + sign * 1e-7);
            for x in linspace(-0.5, 0.5, 200) {
                let d = eval_normalized(&s, nu, x).unwrap() - upsilon(&s, LimitPoint::Under(k, side), x).unwrap();
                assert!(d.abs() < 1e-4, "k={k} {side:?} x={x} {d}");
            }
        }
    }
    for l in [1u64, 2, 4] {
        let nl = overline_nu(&s, l);
        for sign in [-1.0, 1.0] {
            let nu = nl * (1.0 + sign * 1e-7);
            for x in linspace(-0.5, 0.5, 200) {
                let d = eval_normalized(&s, nu, x).unwrap() - upsilon(&s, LimitPoint::Over(l), x).unwrap();
                assert!(d.abs() < 1e-4, "l={l} x={x} {d}");
            }
        }
    }
}

#[test]
fn limit_functions_solve_the_limit_problem() {
    let s = rat(1, 4);
    let pts = [
        LimitPoint::Hat(8),
        LimitPoint::Hat(16),
        LimitPoint::Under(1, Side::Below),
        LimitPoint::Under(3, Side::Above),
        LimitPoint::Over(2),
    ];
    for pt in pts {
        let r = limit_residual(&s, pt, 8192).unwrap();
        assert!(r.ode < 1e-3, "{pt:?} {r:?}");
        assert!(r.jump_error() < 1e-9 * r.kappa_over_c.abs().max(1.0), "{pt:?} {r:?}");
        assert!(r.boundary < 1e-12);
        let norm = integrate_box(&s, |x| upsilon(&s, pt, x).unwrap().powi(2), 2048);
        assert!((norm - 1.0).abs() < 1e-9, "{pt:?} {norm}");
    }
}

#[test]
fn free_modes_off_the_lattice_are_unchanged() {
    let s = real(0.0707);
    for n in 1..=6 {
        let nu = nu_n(&s, n);
        for x in linspace(-0.5, 0.5, 50) {
            let d = eval_normalized(&s, nu, x).unwrap() - phi_mode(&s, n, x).unwrap();
            assert!(d.abs() < 1e-12);
        }
    }
}
