mod common;

use common::{linspace, rat, real};
use deltawell::fourier::{
    coeffs_general, coeffs_limit, coeffs_upsilon_hat, coeffs_upsilon_over, coeffs_upsilon_under, partial_sum,
    FourierExpansion,
};
use deltawell::lattice::{overline_nu, underline_nu};
use deltawell::model::{nu_n, phi_at_x0};
use deltawell::wavefn::{eval_normalized, upsilon, upsilon_hat, upsilon_under, LimitPoint, Side};
use deltawell::Setup;

fn sup_error(e: &FourierExpansion, f: impl Fn(f64) -> f64, xs: &[f64]) -> f64 {
    xs.iter().map(|&x| (partial_sum(e, x) - f(x)).abs()).fold(0.0, f64::max)
}

#[test]
fn partial_sums_match_smooth_states() {
    let s = rat(1, 4);
    let nu = 0.7 * underline_nu(&s, 1);
    let e = coeffs_general(&s, nu, 4096).unwrap();
    let xs = linspace(-0.5, 0.5, 63);
    let err = sup_error(&e, |x| eval_normalized(&s, nu, x).unwrap(), &xs);
    assert!(err < 5e-4, "{err}");
    assert!(e.parseval_defect() < 1e-3);
}

#[test]
fn partial_sums_match_hat_limit() {
    let s = rat(3, 4);
    let e = coeffs_upsilon_hat(&s, 16, 8192).unwrap();
    assert_eq!(e.coefficient(16), 0.0);
    let x0 = s.x0();
    let xs: Vec<f64> = linspace(-0.5, 0.5, 2000).into_iter().filter(|x| (x - x0).abs() > 1.0 / 64.0).collect();
    let err = sup_error(&e, |x| upsilon_hat(&s, 16, x).unwrap(), &xs);
    assert!(err < 2e-3, "{err}");
}

#[test]
fn hat_expansion_skips_modes_vanishing_at_x0() {
    for &(p, q, n) in &[(1u64, 4u64, 8u64), (3, 4, 16), (3, 5, 10), (0, 1, 2)] {
        let s = rat(p, q);
        let e = coeffs_upsilon_hat(&s, n, 512).unwrap();
        assert_eq!(e.coefficient(n as usize), 0.0);
        for m in 1..=512u64 {
            if phi_at_x0(&s, m) == 0.0 {
                assert_eq!(e.coefficient(m as usize), 0.0, "m={m}");
            }
        }
    }
}

#[test]
fn one_sided_expansions_have_unit_norm_and_support() {
    let s = rat(1, 4);
    for k in [1u64, 2, 3] {
        for side in [Side::Below, Side::Above] {
            let e = coeffs_upsilon_under(&s, k, side, 8192).unwrap();
            let n2 = e.sum_squares();
            assert!((n2 - 1.0).abs() < 1e-3, "{n2}");
            let zero_half = linspace(s.x0() + 1.0 / 32.0, 0.5, 400);
            let sup = zero_half.iter().map(|&x| partial_sum(&e, x).abs()).fold(0.0, f64::max);
            assert!(sup < 5e-3, "{sup}");
            let xs = linspace(-0.5, s.x0() - 1.0 / 64.0, 400);
            let err = sup_error(&e, |x| upsilon_under(&s, k, side, x).unwrap(), &xs);
            assert!(err < 2e-3, "{err}");
        }
    }
    for l in [1u64, 2] {
        let e = coeffs_upsilon_over(&s, l, 8192).unwrap();
        assert!((e.sum_squares() - 1.0).abs() < 1e-3);
        let xs: Vec<f64> = linspace(-0.5, 0.5, 800).into_iter().filter(|x| (x - s.x0()).abs() > 1.0 / 64.0).collect();
        let err = sup_error(&e, |x| upsilon(&s, LimitPoint::Over(l), x).unwrap(), &xs);
        assert!(err < 2e-3, "{err}");
    }
    assert!(coeffs_upsilon_under(&s, 5, Side::Below, 16).is_err());
    assert!(coeffs_upsilon_over(&s, 3, 16).is_err());
}

#[test]
fn parseval_defect_decays_like_one_over_m() {
    let cases: Vec<(Setup<f64>, f64)> =
        vec![(rat(1, 4), -20.0), (rat(1, 4), 0.0), (rat(1, 4), 7.0), (rat(3, 4), 40.0), (real(0.0707), 13.0)];
    for (s, nu) in cases {
        let mut last = f64::INFINITY;
        for m in [512usize, 1024, 2048, 4096] {
            let d = coeffs_general(&s, nu, m).unwrap().parseval_defect();
            assert!(d >= -1e-12 && d * m as f64 <= 2.0, "nu={nu} M={m} defect={d}");
            assert!(d < last);
            last = d;
        }
        assert!(last < 1e-3);
    }
    for pt in [LimitPoint::Hat(8), LimitPoint::Under(1, Side::Below), LimitPoint::Over(1)] {
        let d = coeffs_limit(&rat(1, 4), pt, 4096).unwrap().parseval_defect();
        assert!(d >= -1e-12 && d < 1e-3, "{pt:?} {d}");
    }
}

#[test]
fn refinement_halves_the_error() {
    let s = rat(1, 4);
    let nu = 0.7 * underline_nu(&s, 1);
    let xs = linspace(-0.5, 0.5, 256);
    let f = |x: f64| eval_normalized(&s, nu, x).unwrap();
    let e1 = sup_error(&coeffs_general(&s, nu, 1024).unwrap(), f, &xs);
    let e2 = sup_error(&coeffs_general(&s, nu, 2048).unwrap(), f, &xs);
    assert!(e1 / e2 >= 1.8, "{e1} {e2}");
}

/// Linear extrapolation of the coefficients to zero offset from the
/// offsets 1e-5 and 1e-6 (relative), with 1e-4 as a consistency check.
fn extrapolated(s: &Setup<f64>, nu0: f64, sign: f64, m: usize) -> Vec<f64> {
    let at = |d: f64| coeffs_general(s, nu0 * (1.0 + sign * d), m).unwrap().coefficients;
    let (a4, a5, a6) = (at(1e-4), at(1e-5), at(1e-6));
    a5.iter()
        .zip(&a6)
        .zip(&a4)
        .map(|((&x5, &x6), &x4)| {
            let lin = (10.0 * x6 - x5) / 9.0;
            assert!((x4 - x5).abs() >= (x5 - x6).abs() * 0.5 || (x4 - x6).abs() < 1e-12);
            lin
        })
        .collect()
}

#[test]
fn coefficients_converge_to_limit_expansions() {
    let s = rat(1, 4);
    let m = 64;
    let cases = [
        (LimitPoint::Hat(8), nu_n(&s, 8), -1.0),
        (LimitPoint::Hat(8), nu_n(&s, 8), 1.0),
        (LimitPoint::Hat(16), nu_n(&s, 16), 1.0),
        (LimitPoint::Under(1, Side::Below), underline_nu(&s, 1), -1.0),
        (LimitPoint::Under(1, Side::Above), underline_nu(&s, 1), 1.0),
        (LimitPoint::Under(4, Side::Below), underline_nu(&s, 4), -1.0),
        (LimitPoint::Over(2), overline_nu(&s, 2), -1.0),
        (LimitPoint::Over(2), overline_nu(&s, 2), 1.0),
    ];
    for (pt, nu0, sign) in cases {
        let lim = coeffs_limit(&s, pt, m).unwrap().coefficients;
        let ext = extrapolated(&s, nu0, sign, m);
        for (i, (a, b)) in ext.iter().zip(&lim).enumerate() {
            assert!((a - b).abs() < 1e-6, "{pt:?} side {sign} m={} {a} {b}", i + 1);
        }
    }
}

#[test]
fn near_free_mode_tends_to_one_hot() {
    let s = real(0.0707);
    let n = 5u64;
    for d in [1e-4, 1e-6, 1e-8] {
        let e = coeffs_general(&s, nu_n(&s, n) * (1.0 + d), 64).unwrap();
        assert!(e.prefactor.abs() < 1e3 * d);
        for m in 1..=64u64 {
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((e.coefficient(m as usize) - want).abs() < 1e3 * d, "d={d} m={m}");
        }
    }
}
