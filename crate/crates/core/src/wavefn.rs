//! Eigenfunctions on every branch, their norms, the |alpha| -> infinity limit
//! functions and the constants of the limit equations.

use crate::lattice::{self, kappa_base, overline_nu, underline_nu};
use crate::model::{energy_from_nu, nu_n, phi_unchecked};
use crate::special::{exs, int, lit, one_minus_exp, one_minus_sinc, sin_pi};
use crate::spectrum::check_regular;
use crate::{Error, Real, Result, Setup};

/// Approach side for the one-sided limits at an under point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Below,
    Above,
}

/// The lattice point a limit function belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitPoint {
    /// nu_n in K.
    Hat(u64),
    /// underline_nu_k outside K, approached from one side.
    Under(u64, Side),
    /// overline_nu_l outside K.
    Over(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveKind<T = f64> {
    Trig(T),
    Linear,
    Hyper(T),
    Limit(LimitPoint),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample<T = f64> {
    pub x: T,
    pub value: T,
    pub kind: WaveKind<T>,
}

/// Relative distance to a point of K below which the normalized state is
/// replaced by its limit.
pub const KAPPA_WINDOW: f64 = 1e-8;

/// (-1)^floor(nu (L/2 + x0) / (2 pi)), read off the sign of sin(nu a / 2).
pub fn branch_sign<T: Real>(setup: &Setup<T>, nu: T) -> T {
    let s = (nu * setup.left_len() / lit(2.0)).sin();
    if s < T::zero() {
        -T::one()
    } else {
        T::one()
    }
}

/// Piecewise closed form of Psi_nu. The hyperbolic branch is stored scaled
/// by 4 e^{-mu L} so that it never overflows.
#[derive(Debug, Clone, Copy)]
enum Branch<T> {
    Trig { half: T, a_coef: T, b_coef: T },
    Linear,
    Hyper { mu: T, ea: T, eb: T },
}

impl<T: Real> Branch<T> {
    fn new(setup: &Setup<T>, nu: T) -> Self {
        let (a, b) = (setup.left_len(), setup.right_len());
        if nu > T::zero() {
            let half = nu / lit(2.0);
            let sa = (half * a).sin();
            let sgn = if sa < T::zero() { -T::one() } else { T::one() };
            Branch::Trig { half, a_coef: sgn * (half * b).sin(), b_coef: sa.abs() }
        } else if nu == T::zero() {
            Branch::Linear
        } else {
            let mu = -nu / lit(2.0);
            let two = lit::<T>(2.0);
            Branch::Hyper { mu, ea: one_minus_exp(two * mu * a), eb: one_minus_exp(two * mu * b) }
        }
    }

    fn value(&self, setup: &Setup<T>, x: T) -> T {
        let half_l = setup.l() / lit(2.0);
        let x0 = setup.x0();
        let left = x <= x0;
        match *self {
            Branch::Trig { half, a_coef, b_coef } => {
                if left {
                    a_coef * (half * (half_l + x)).sin()
                } else {
                    b_coef * (half * (half_l - x)).sin()
                }
            }
            Branch::Linear => {
                if left {
                    setup.right_len() * (half_l + x)
                } else {
                    setup.left_len() * (half_l - x)
                }
            }
            Branch::Hyper { mu, ea, eb } => {
                let two = lit::<T>(2.0);
                if left {
                    (-mu * (x0 - x)).exp() * eb * one_minus_exp(two * mu * (half_l + x))
                } else {
                    (-mu * (x - x0)).exp() * ea * one_minus_exp(two * mu * (half_l - x))
                }
            }
        }
    }

    fn derivative(&self, setup: &Setup<T>, x: T, left: bool) -> T {
        let half_l = setup.l() / lit(2.0);
        let x0 = setup.x0();
        match *self {
            Branch::Trig { half, a_coef, b_coef } => {
                if left {
                    a_coef * half * (half * (half_l + x)).cos()
                } else {
                    -b_coef * half * (half * (half_l - x)).cos()
                }
            }
            Branch::Linear => {
                if left {
                    setup.right_len()
                } else {
                    -setup.left_len()
                }
            }
            Branch::Hyper { mu, ea, eb } => {
                let two = lit::<T>(2.0);
                if left {
                    eb * mu * (-mu * (x0 - x)).exp() * (T::one() + (-two * mu * (half_l + x)).exp())
                } else {
                    -ea * mu * (-mu * (x - x0)).exp() * (T::one() + (-two * mu * (half_l - x)).exp())
                }
            }
        }
    }

    fn norm(&self, setup: &Setup<T>) -> T {
        let (a, b, l) = (setup.left_len(), setup.right_len(), setup.l());
        let two = lit::<T>(2.0);
        match *self {
            Branch::Trig { half, a_coef, b_coef } => {
                let nu = two * half;
                let r2 = (a * one_minus_sinc(nu * a) * a_coef * a_coef
                    + b * one_minus_sinc(nu * b) * b_coef * b_coef)
                    / two;
                r2.sqrt()
            }
            Branch::Linear => a * b * (l / lit(3.0)).sqrt(),
            Branch::Hyper { mu, ea, eb } => {
                let r2 = two * (a * eb * eb * exs(two * mu * a) + b * ea * ea * exs(two * mu * b));
                r2.sqrt()
            }
        }
    }

    /// Factor turning the stored representation into the paper's Psi_nu.
    fn scale(&self, setup: &Setup<T>) -> T {
        match *self {
            Branch::Hyper { mu, .. } => (mu * setup.l()).exp() / lit(4.0),
            _ => T::one(),
        }
    }

    fn kind(&self) -> WaveKind<T> {
        match *self {
            Branch::Trig { half, .. } => WaveKind::Trig(half * lit(2.0)),
            Branch::Linear => WaveKind::Linear,
            Branch::Hyper { mu, .. } => WaveKind::Hyper(-mu * lit(2.0)),
        }
    }
}

/// The unnormalized eigenfunction Psi_nu(x). For nu < 0 it grows like
/// e^{|nu| L/2} and overflows for very negative nu; use `eval_normalized`.
pub fn eval_psi<T: Real>(setup: &Setup<T>, nu: T, x: T) -> Result<T> {
    setup.check_x(x)?;
    check_regular(setup, nu)?;
    let br = Branch::new(setup, nu);
    Ok(br.value(setup, x) * br.scale(setup))
}

/// One-sided derivative of Psi_nu; `left` selects the piece on [-L/2, x0].
pub fn eval_psi_derivative<T: Real>(setup: &Setup<T>, nu: T, x: T, left: bool) -> Result<T> {
    setup.check_x(x)?;
    check_regular(setup, nu)?;
    let br = Branch::new(setup, nu);
    Ok(br.derivative(setup, x, left) * br.scale(setup))
}

/// rho_nu, the L2 norm of Psi_nu. Zero exactly on K.
pub fn rho<T: Real>(setup: &Setup<T>, nu: T) -> T {
    if on_kappa(setup, nu) {
        return T::zero();
    }
    let br = Branch::new(setup, nu);
    br.norm(setup) * br.scale(setup)
}

/// rho_nu in the overflow-free representation used internally (equal to
/// `rho` except for nu < 0, where it is multiplied by 4 e^{-|nu| L/2}).
pub fn rho_scaled<T: Real>(setup: &Setup<T>, nu: T) -> T {
    if on_kappa(setup, nu) {
        return T::zero();
    }
    Branch::new(setup, nu).norm(setup)
}

/// True when nu is exactly the floating-point value of a point of K.
pub(crate) fn on_kappa<T: Real>(setup: &Setup<T>, nu: T) -> bool {
    nu > T::zero() && lattice::nearest_kappa(setup, nu).is_some_and(|(n, _, _)| nu == nu_n(setup, n))
}

pub(crate) fn near_kappa<T: Real>(setup: &Setup<T>, nu: T) -> Option<u64> {
    if nu <= T::zero() {
        return None;
    }
    let (n, _, _) = lattice::nearest_kappa(setup, nu)?;
    let nh = nu_n(setup, n);
    ((nu - nh).abs() <= lit::<T>(KAPPA_WINDOW) * nh).then_some(n)
}

/// Psi_nu / rho_nu, continued onto K by the limit function Upsilon_hat.
pub fn eval_normalized<T: Real>(setup: &Setup<T>, nu: T, x: T) -> Result<T> {
    Ok(eval_normalized_kind(setup, nu, x)?.value)
}

fn eval_normalized_kind<T: Real>(setup: &Setup<T>, nu: T, x: T) -> Result<WaveSample<T>> {
    setup.check_x(x)?;
    if let Some(n) = near_kappa(setup, nu) {
        let value = upsilon_hat(setup, n, x)?;
        return Ok(WaveSample { x, value, kind: WaveKind::Limit(LimitPoint::Hat(n)) });
    }
    check_regular(setup, nu)?;
    let br = Branch::new(setup, nu);
    Ok(WaveSample { x, value: br.value(setup, x) / br.norm(setup), kind: br.kind() })
}

/// Uniform grid of `points` >= 2 abscissae covering the box, endpoints included.
pub fn grid<T: Real>(setup: &Setup<T>, points: usize) -> Vec<T> {
    let n = points.max(2) - 1;
    let half = setup.l() / lit(2.0);
    (0..=n)
        .map(|i| if i == n { half } else { -half + setup.l() * int::<T>(i as u64) / int::<T>(n as u64) })
        .collect()
}

/// Samples Psi_nu / rho_nu on a uniform grid.
pub fn sample_normalized<T: Real>(setup: &Setup<T>, nu: T, points: usize) -> Result<Vec<WaveSample<T>>> {
    grid(setup, points).into_iter().map(|x| eval_normalized_kind(setup, nu, x)).collect()
}

/// (Psi'(x0+) - Psi'(x0-)) / Psi(x0) from the one-sided derivatives.
pub fn jump_ratio<T: Real>(setup: &Setup<T>, nu: T) -> Result<T> {
    check_regular(setup, nu)?;
    let br = Branch::new(setup, nu);
    let x0 = setup.x0();
    let psi = br.value(setup, x0);
    if psi == T::zero() {
        return Err(Error::SingularPoint { nu: nu.to_f64().unwrap_or(f64::NAN) });
    }
    Ok((br.derivative(setup, x0, false) - br.derivative(setup, x0, true)) / psi)
}

pub(crate) fn in_kappa<T: Real>(setup: &Setup<T>, n: u64) -> bool {
    kappa_base(setup).is_some_and(|b| n >= 1 && n % b == 0)
}

pub(crate) fn under_in_kappa<T: Real>(setup: &Setup<T>, k: u64) -> bool {
    setup.rational().is_some_and(|(p, q)| (k * (q - p)) % (q + p) == 0)
}

pub(crate) fn over_in_kappa<T: Real>(setup: &Setup<T>, l: u64) -> bool {
    setup.rational().is_some_and(|(p, q)| (l * (q + p)) % (q - p) == 0)
}

/// floor(k (L/2 - x0) / (L/2 + x0)), exact for rational x0.
pub(crate) fn under_floor<T: Real>(setup: &Setup<T>, k: u64) -> u64 {
    match setup.rational() {
        Some((p, q)) => k * (q - p) / (q + p),
        None => (int::<T>(k) * setup.q_ratio()).floor().to_u64().unwrap_or(0),
    }
}

pub(crate) fn parity<T: Real>(e: u64) -> T {
    if e % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Number of half waves to the right of x0 for nu_n in K.
pub(crate) fn hat_l<T: Real>(setup: &Setup<T>, n: u64) -> u64 {
    let (p, q) = setup.rational().expect("K needs rational x0");
    n * (q - p) / (2 * q)
}

fn check_hat<T: Real>(setup: &Setup<T>, n: u64) -> Result<()> {
    if in_kappa(setup, n) {
        Ok(())
    } else {
        Err(Error::NotInK(format!("nu_{n}")))
    }
}

/// Limit of Psi_nu / rho_nu as nu -> nu_n in K: -sqrt(q) Phi_n left of x0
/// and Phi_n / sqrt(q) right of it.
pub fn upsilon_hat<T: Real>(setup: &Setup<T>, n: u64, x: T) -> Result<T> {
    setup.check_x(x)?;
    check_hat(setup, n)?;
    let sq = setup.q_ratio().sqrt();
    let phi = phi_unchecked(setup, n, x);
    Ok(if x <= setup.x0() { -sq * phi } else { phi / sq })
}

fn under_sign<T: Real>(setup: &Setup<T>, k: u64, side: Side) -> T {
    let s = parity::<T>(k - 1 + under_floor(setup, k));
    match side {
        Side::Below => s,
        Side::Above => -s,
    }
}

/// One-sided limit at underline_nu_k outside K; supported left of x0.
pub fn upsilon_under<T: Real>(setup: &Setup<T>, k: u64, side: Side, x: T) -> Result<T> {
    setup.check_x(x)?;
    if k == 0 || under_in_kappa(setup, k) {
        return Err(Error::InK(format!("underline_nu_{k}")));
    }
    if x > setup.x0() {
        return Ok(T::zero());
    }
    let a = setup.left_len();
    let amp = lit::<T>(2.0) / (lit::<T>(2.0) * a).sqrt();
    let t = int::<T>(k) * (setup.l() / lit(2.0) + x) / a;
    Ok(under_sign(setup, k, side) * amp * sin_pi(t))
}

/// Limit at overline_nu_l outside K; supported right of x0.
pub fn upsilon_over<T: Real>(setup: &Setup<T>, l: u64, x: T) -> Result<T> {
    setup.check_x(x)?;
    if l == 0 || over_in_kappa(setup, l) {
        return Err(Error::InK(format!("overline_nu_{l}")));
    }
    if x <= setup.x0() {
        return Ok(T::zero());
    }
    let b = setup.right_len();
    let amp = lit::<T>(2.0) / (lit::<T>(2.0) * b).sqrt();
    let t = int::<T>(l) * (setup.l() / lit(2.0) - x) / b;
    Ok(amp * sin_pi(t))
}

/// Any of the three limit functions.
pub fn upsilon<T: Real>(setup: &Setup<T>, point: LimitPoint, x: T) -> Result<T> {
    match point {
        LimitPoint::Hat(n) => upsilon_hat(setup, n, x),
        LimitPoint::Under(k, side) => upsilon_under(setup, k, side, x),
        LimitPoint::Over(l) => upsilon_over(setup, l, x),
    }
}

/// The value of nu at a limit point.
pub fn limit_nu<T: Real>(setup: &Setup<T>, point: LimitPoint) -> T {
    match point {
        LimitPoint::Hat(n) => nu_n(setup, n),
        LimitPoint::Under(k, _) => underline_nu(setup, k),
        LimitPoint::Over(l) => overline_nu(setup, l),
    }
}

fn check_point<T: Real>(setup: &Setup<T>, point: LimitPoint) -> Result<()> {
    let ok = match point {
        LimitPoint::Hat(n) => in_kappa(setup, n),
        LimitPoint::Under(k, _) => k >= 1 && !under_in_kappa(setup, k),
        LimitPoint::Over(l) => l >= 1 && !over_in_kappa(setup, l),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::MismatchedPoint(format!("{point:?}")))
    }
}

/// One-sided derivative of a limit function; `left` selects [-L/2, x0].
pub fn upsilon_derivative<T: Real>(setup: &Setup<T>, point: LimitPoint, x: T, left: bool) -> Result<T> {
    setup.check_x(x)?;
    check_point(setup, point)?;
    let half_l = setup.l() / lit(2.0);
    let two = lit::<T>(2.0);
    Ok(match point {
        LimitPoint::Hat(n) => {
            let nu = nu_n(setup, n);
            let dphi = -(two / setup.l()).sqrt() * (nu / two) * (nu / two * (half_l - x)).cos();
            let sq = setup.q_ratio().sqrt();
            if left {
                -sq * dphi
            } else {
                dphi / sq
            }
        }
        LimitPoint::Under(k, side) => {
            if !left {
                return Ok(T::zero());
            }
            let a = setup.left_len();
            let w = int::<T>(k) * T::PI() / a;
            under_sign(setup, k, side) * two / (two * a).sqrt() * w * (w * (half_l + x)).cos()
        }
        LimitPoint::Over(l) => {
            if left {
                return Ok(T::zero());
            }
            let b = setup.right_len();
            let w = int::<T>(l) * T::PI() / b;
            -two / (two * b).sqrt() * w * (w * (half_l - x)).cos()
        }
    })
}

/// The constant kappa of the limit equation, normalized so that the
/// derivative jump of the limit function at x0 equals kappa / c.
pub fn kappa_constant<T: Real>(setup: &Setup<T>, point: LimitPoint) -> Result<T> {
    check_point(setup, point)?;
    let c = setup.c();
    let nu = limit_nu(setup, point);
    Ok(match point {
        LimitPoint::Hat(n) => {
            let q = setup.q_ratio();
            let l = hat_l(setup, n);
            c / (lit::<T>(2.0) * setup.l()).sqrt() * (q + T::one()) / q.sqrt() * nu * parity::<T>(l + 1)
        }
        LimitPoint::Under(k, side) => {
            let base = c * nu * parity::<T>(under_floor(setup, k)) / (lit::<T>(2.0) * setup.left_len()).sqrt();
            match side {
                Side::Below => base,
                Side::Above => -base,
            }
        }
        LimitPoint::Over(l) => c * nu * parity::<T>(l + 1) / (lit::<T>(2.0) * setup.right_len()).sqrt(),
    })
}

/// Pointwise checks of the limit equation on a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitResidual<T = f64> {
    /// max |-c u'' - E u| / (E max|u|) over nodes whose stencil avoids x0.
    pub ode: T,
    /// Derivative jump at x0 from the analytic one-sided derivatives.
    pub jump: T,
    /// kappa / c.
    pub kappa_over_c: T,
    /// max(|u(-L/2)|, |u(L/2)|).
    pub boundary: T,
}

impl<T: Real> LimitResidual<T> {
    pub fn jump_error(&self) -> T {
        (self.jump - self.kappa_over_c).abs()
    }

    pub fn max(&self) -> T {
        self.ode.max(self.jump_error()).max(self.boundary)
    }
}

pub fn limit_residual<T: Real>(setup: &Setup<T>, point: LimitPoint, grid_n: usize) -> Result<LimitResidual<T>> {
    check_point(setup, point)?;
    let n = grid_n.max(4);
    let xs = grid(setup, n + 1);
    let h = setup.l() / int::<T>(n as u64);
    let u: Vec<T> = xs.iter().map(|&x| upsilon(setup, point, x)).collect::<Result<_>>()?;
    let e = energy_from_nu(setup, limit_nu(setup, point));
    let umax = u.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let x0 = setup.x0();
    let mut ode = T::zero();
    for i in 1..n {
        if xs[i - 1] <= x0 && xs[i + 1] >= x0 {
            continue;
        }
        let d2 = (u[i - 1] - lit::<T>(2.0) * u[i] + u[i + 1]) / (h * h);
        let r = (-setup.c() * d2 - e * u[i]).abs() / (e * umax);
        ode = ode.max(r);
    }
    let jump = upsilon_derivative(setup, point, x0, false)? - upsilon_derivative(setup, point, x0, true)?;
    Ok(LimitResidual {
        ode,
        jump,
        kappa_over_c: kappa_constant(setup, point)? / setup.c(),
        boundary: u[0].abs().max(u[n].abs()),
    })
}
