//! Expansions of the normalized states and of the limit functions in the
//! free-well basis Phi_m.

use crate::model::{nu_n, phi_at_x0};
use crate::special::{int, lit, one_minus_exp, sin_pi};
use crate::spectrum::check_regular;
use crate::wavefn::{
    branch_sign, hat_l, in_kappa, over_in_kappa, parity, rho_scaled, under_floor, under_in_kappa, LimitPoint,
    Side, WaveKind,
};
use crate::{Error, Real, Result, Setup};

/// Default truncation order.
pub const DEFAULT_MODES: usize = 4096;

/// Truncated sine series sum_{m <= M} a_m Phi_m(x).
#[derive(Debug, Clone, PartialEq)]
pub struct FourierExpansion<T = f64> {
    pub kind: WaveKind<T>,
    /// a_1, ..., a_M.
    pub coefficients: Vec<T>,
    /// The common constant in front of Phi_m(x0) / denominator.
    pub prefactor: T,
    /// Box length, needed to evaluate the basis.
    pub length: T,
}

impl<T: Real> FourierExpansion<T> {
    pub fn truncation(&self) -> usize {
        self.coefficients.len()
    }

    /// a_m for m >= 1 (zero beyond the truncation).
    pub fn coefficient(&self, m: usize) -> T {
        if m == 0 {
            return T::zero();
        }
        self.coefficients.get(m - 1).copied().unwrap_or(T::zero())
    }

    pub fn sum_squares(&self) -> T {
        self.coefficients.iter().fold(T::zero(), |s, &a| s + a * a)
    }

    /// 1 - sum a_m^2; the squared L2 distance between the state and the
    /// partial sum, since every expanded function has unit norm.
    pub fn parseval_defect(&self) -> T {
        T::one() - self.sum_squares()
    }

    /// L2 norm of the neglected tail.
    pub fn tail_bound(&self) -> T {
        self.parseval_defect().max(T::zero()).sqrt()
    }

    fn from_fn(kind: WaveKind<T>, prefactor: T, length: T, modes: usize, f: impl Fn(u64) -> T) -> Self {
        FourierExpansion { kind, coefficients: (1..=modes as u64).map(f).collect(), prefactor, length }
    }
}

/// Evaluates the partial sum with compensated summation.
pub fn partial_sum<T: Real>(expansion: &FourierExpansion<T>, x: T) -> T {
    let l = expansion.length;
    let u = (l / lit(2.0) - x) / l;
    let norm = (lit::<T>(2.0) / l).sqrt();
    let mut sum = T::zero();
    let mut comp = T::zero();
    for (i, &a) in expansion.coefficients.iter().enumerate() {
        if a == T::zero() {
            continue;
        }
        let term = a * sin_pi(int::<T>(i as u64 + 1) * u) - comp;
        let t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    norm * sum
}

/// Coefficients of Psi_nu / rho_nu for nu outside P, on any branch.
pub fn coeffs_general<T: Real>(setup: &Setup<T>, nu: T, modes: usize) -> Result<FourierExpansion<T>> {
    check_regular(setup, nu)?;
    let l = setup.l();
    let pi = T::PI();
    let two = lit::<T>(2.0);
    if nu > T::zero() {
        let n = (nu * l / (two * pi)).round().to_u64().unwrap_or(0).max(1);
        let nun = nu_n(setup, n);
        let delta = nu - nun;
        if delta == T::zero() {
            return Ok(FourierExpansion::from_fn(WaveKind::Trig(nu), T::zero(), l, modes, |m| {
                if m == n {
                    T::one()
                } else {
                    T::zero()
                }
            }));
        }
        let half = nu / two;
        let pre = branch_sign(setup, nu) * nu / (two * rho_scaled(setup, nu));
        // sin(nu L / 2) = (-1)^n sin(delta L / 2), stable near nu_n.
        let s = (delta * l / two).sin();
        let cn = pre * parity::<T>(n) * s;
        let sinc_ratio = if (delta * l / two).abs() < lit(1e-8) { l } else { s / (delta / two) };
        Ok(FourierExpansion::from_fn(WaveKind::Trig(nu), cn, l, modes, |m| {
            let km = int::<T>(m) * pi / l;
            if m == n {
                -pre * parity::<T>(n) * sinc_ratio * phi_at_x0(setup, m) / (km + half)
            } else {
                cn * phi_at_x0(setup, m) / ((km - half) * (km + half))
            }
        }))
    } else if nu == T::zero() {
        let c0 = lit::<T>(4.0) * lit::<T>(3.0).sqrt() * l * l * l.sqrt()
            / (pi * pi * lit::<T>(4.0) * setup.left_len() * setup.right_len());
        Ok(FourierExpansion::from_fn(WaveKind::Linear, c0, l, modes, |m| {
            let mf = int::<T>(m);
            c0 * phi_at_x0(setup, m) / (mf * mf)
        }))
    } else {
        let mu = -nu / two;
        let c = two * mu * one_minus_exp(two * mu * l) / rho_scaled(setup, nu);
        Ok(FourierExpansion::from_fn(WaveKind::Hyper(nu), c, l, modes, |m| {
            let km = int::<T>(m) * pi / l;
            c * phi_at_x0(setup, m) / (km * km + mu * mu)
        }))
    }
}

fn sqrt_l_minus<T: Real>(setup: &Setup<T>) -> T {
    (lit::<T>(2.0) * setup.right_len()).sqrt()
}

fn sqrt_l_plus<T: Real>(setup: &Setup<T>) -> T {
    (lit::<T>(2.0) * setup.left_len()).sqrt()
}

/// Coefficients of Upsilon_hat at nu_n in K; a_n = 0.
pub fn coeffs_upsilon_hat<T: Real>(setup: &Setup<T>, n: u64, modes: usize) -> Result<FourierExpansion<T>> {
    if !in_kappa(setup, n) {
        return Err(Error::NotInK(format!("nu_{n}")));
    }
    let l = setup.l();
    let pre = parity::<T>(hat_l(setup, n)) * lit::<T>(2.0) * lit::<T>(2.0).sqrt() * int::<T>(n) * l * l.sqrt()
        / (T::PI() * sqrt_l_plus(setup) * sqrt_l_minus(setup));
    let kind = WaveKind::Limit(LimitPoint::Hat(n));
    Ok(FourierExpansion::from_fn(kind, pre, l, modes, |m| {
        if m == n {
            return T::zero();
        }
        let d = m as i128 * m as i128 - n as i128 * n as i128;
        pre * phi_at_x0(setup, m) / lit(d as f64)
    }))
}

/// Coefficients of the one-sided limit at underline_nu_k outside K.
pub fn coeffs_upsilon_under<T: Real>(
    setup: &Setup<T>,
    k: u64,
    side: Side,
    modes: usize,
) -> Result<FourierExpansion<T>> {
    if k == 0 || under_in_kappa(setup, k) {
        return Err(Error::InK(format!("underline_nu_{k}")));
    }
    let l = setup.l();
    let sign = match side {
        Side::Below => T::one(),
        Side::Above => -T::one(),
    };
    let pre = sign * parity::<T>(1 + under_floor(setup, k)) * int::<T>(k) * l * l * sqrt_l_plus(setup) / T::PI();
    let kind = WaveKind::Limit(LimitPoint::Under(k, side));
    Ok(FourierExpansion::from_fn(kind, pre, l, modes, |m| {
        pre * phi_at_x0(setup, m) / lattice_denominator(setup, m, k, true)
    }))
}

/// Coefficients of the limit at overline_nu_l outside K.
pub fn coeffs_upsilon_over<T: Real>(setup: &Setup<T>, lo: u64, modes: usize) -> Result<FourierExpansion<T>> {
    if lo == 0 || over_in_kappa(setup, lo) {
        return Err(Error::InK(format!("overline_nu_{lo}")));
    }
    let l = setup.l();
    let pre = parity::<T>(lo) * int::<T>(lo) * l * l * sqrt_l_minus(setup) / T::PI();
    let kind = WaveKind::Limit(LimitPoint::Over(lo));
    Ok(FourierExpansion::from_fn(kind, pre, l, modes, |m| {
        pre * phi_at_x0(setup, m) / lattice_denominator(setup, m, lo, false)
    }))
}

/// (L/2 +- x0)^2 m^2 - L^2 j^2, in integers when x0 is rational.
fn lattice_denominator<T: Real>(setup: &Setup<T>, m: u64, j: u64, under: bool) -> T {
    let l = setup.l();
    match setup.rational() {
        Some((p, q)) => {
            let w = if under { q + p } else { q - p } as i128;
            let d = w * w * (m as i128) * (m as i128) - 4 * (q as i128) * (q as i128) * (j as i128) * (j as i128);
            l * l * lit::<T>(d as f64) / lit::<T>(4.0 * (q as f64) * (q as f64))
        }
        None => {
            let w = if under { setup.left_len() } else { setup.right_len() };
            let (mf, jf) = (int::<T>(m), int::<T>(j));
            w * w * mf * mf - l * l * jf * jf
        }
    }
}

/// Coefficients of any limit function.
pub fn coeffs_limit<T: Real>(setup: &Setup<T>, point: LimitPoint, modes: usize) -> Result<FourierExpansion<T>> {
    match point {
        LimitPoint::Hat(n) => coeffs_upsilon_hat(setup, n, modes),
        LimitPoint::Under(k, side) => coeffs_upsilon_under(setup, k, side, modes),
        LimitPoint::Over(l) => coeffs_upsilon_over(setup, l, modes),
    }
}
