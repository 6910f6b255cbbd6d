//! Probability ratio between the two sides of x0, position expectation, and
//! the amplitude factor of the centred well.

use crate::lattice::{self, LatticePoint, Location, PointKind};
use crate::model::nu_n;
use crate::special::{bisect, exs, exw, int, lit, one_minus_exp, one_minus_sinc, w_trig};
use crate::wavefn::{in_kappa, near_kappa};
use crate::{Error, Real, Result, Setup};

/// r(nu) = P(x > x0) / P(x < x0). `r` is +inf at overline points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint<T = f64> {
    pub nu: T,
    pub r: T,
    pub at_lattice: Option<LatticePoint<T>>,
}

impl<T: Real> RatioPoint<T> {
    pub fn is_infinite(&self) -> bool {
        self.r.is_infinite()
    }
}

/// Squared weights (left, right) of the unnormalized state, up to a common
/// positive factor.
fn side_weights<T: Real>(setup: &Setup<T>, nu: T) -> (T, T) {
    let (a, b) = (setup.left_len(), setup.right_len());
    let two = lit::<T>(2.0);
    if nu > T::zero() {
        let sa = (nu * a / two).sin();
        let sb = (nu * b / two).sin();
        (a * one_minus_sinc(nu * a) * sb * sb, b * one_minus_sinc(nu * b) * sa * sa)
    } else if nu == T::zero() {
        (b * b * a * a * a, a * a * b * b * b)
    } else {
        let mu = -nu / two;
        let ea = one_minus_exp(two * mu * a);
        let eb = one_minus_exp(two * mu * b);
        (a * eb * eb * exs(two * mu * a), b * ea * ea * exs(two * mu * b))
    }
}

/// Probability ratio, extended by continuity to K; 0 and +inf at the
/// remaining lattice points.
pub fn prob_ratio<T: Real>(setup: &Setup<T>, nu: T) -> RatioPoint<T> {
    let at_kappa = |p| RatioPoint { nu, r: T::one() / setup.q_ratio(), at_lattice: p };
    if nu > T::zero() {
        if let Location::Point(p) = lattice::locate(setup, nu) {
            let r = match p.kind {
                PointKind::Both(..) => return at_kappa(Some(p)),
                PointKind::Under(_) => T::zero(),
                PointKind::Over(_) => T::infinity(),
            };
            return RatioPoint { nu, r, at_lattice: Some(p) };
        }
        if near_kappa(setup, nu).is_some() {
            return at_kappa(None);
        }
    }
    let (left, right) = side_weights(setup, nu);
    RatioPoint { nu, r: right / left, at_lattice: None }
}

/// r(nu_n) = (b/a) S(nu_n b) / S(nu_n a) for nu_n outside K.
pub fn prob_ratio_at_mode<T: Real>(setup: &Setup<T>, n: u64) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain("mode index must be >= 1".into()));
    }
    if in_kappa(setup, n) {
        return Err(Error::InK(format!("nu_{n}")));
    }
    let nu = nu_n(setup, n);
    let (a, b) = (setup.left_len(), setup.right_len());
    Ok(b * one_minus_sinc(nu * b) / (a * one_minus_sinc(nu * a)))
}

/// Position expectation of the normalized state; x0 on K.
pub fn expectation_x<T: Real>(setup: &Setup<T>, nu: T) -> Result<T> {
    let x0 = setup.x0();
    if nu > T::zero() {
        if let Location::Point(p) = lattice::locate(setup, nu) {
            return if p.is_both() { Ok(x0) } else { Err(Error::SingularPoint { nu: p.nu.to_f64().unwrap_or(f64::NAN) }) };
        }
        if near_kappa(setup, nu).is_some() {
            return Ok(x0);
        }
    }
    let (a, b, l) = (setup.left_len(), setup.right_len(), setup.l());
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    if nu == T::zero() {
        let num = (a * a - b * b) / four - l * (a - b) / lit(6.0);
        return Ok(num * lit(3.0) / l);
    }
    let (wl, wr, ml, mr) = if nu > T::zero() {
        let sa = (nu * a / two).sin();
        let sb = (nu * b / two).sin();
        let (sa2, sb2) = (sa * sa, sb * sb);
        (
            a * one_minus_sinc(nu * a) * sb2,
            b * one_minus_sinc(nu * b) * sa2,
            sb2 * (a * a / two * w_trig(nu * a) - l * a / four * one_minus_sinc(nu * a)),
            sa2 * (l * b / four * one_minus_sinc(nu * b) - b * b / two * w_trig(nu * b)),
        )
    } else {
        let t = -nu;
        let ea = one_minus_exp(t * a);
        let eb = one_minus_exp(t * b);
        let (ea2, eb2) = (ea * ea, eb * eb);
        (
            a * eb2 * exs(t * a),
            b * ea2 * exs(t * b),
            eb2 * (a * a / two * exw(t * a) - l * a / four * exs(t * a)),
            ea2 * (l * b / four * exs(t * b) - b * b / two * exw(t * b)),
        )
    };
    Ok((ml + mr) / ((wl + wr) / two))
}

/// Gamma(g) = 1 / sqrt(1 - sin g / g).
pub fn gamma_factor<T: Real>(g: T) -> Result<T> {
    if !(g >= lit(1e-3)) {
        return Err(Error::Domain(format!("gamma must be >= 1e-3, got {g}")));
    }
    Ok(T::one() / one_minus_sinc(g).sqrt())
}

/// sin(g/2) Gamma(g): amplitude of the centred well (x0 = 0) at x = 0 relative
/// to the free mode. Finite as g -> 0, where it tends to sqrt(3/2).
pub fn centre_amplitude<T: Real>(g: T) -> T {
    if g.abs() < lit(1e-3) {
        let g2 = g * g;
        return lit::<T>(1.5).sqrt() * (T::one() - g2 / lit(60.0));
    }
    (g / lit(2.0)).sin() / one_minus_sinc(g).sqrt()
}

/// A critical point of the amplitude along nu.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeExtremum<T = f64> {
    pub n: u64,
    pub gamma_crit: T,
    pub value: T,
    pub bracket: (T, T),
}

fn tan_root<T: Real>(m: T) -> Result<(T, (T, T))> {
    let base = m * T::PI();
    let lo = base - T::one() / (lit::<T>(3.0) * m);
    let hi = base - T::one() / (lit::<T>(4.0) * m);
    let g = bisect(lo, hi, |x: T| x * x.cos() - x.sin())
        .ok_or_else(|| Error::Bracket(format!("no root of tan g = g in ({lo}, {hi})")))?;
    Ok((g, (lo, hi)))
}

fn upper_value<T: Real>(g: T) -> T {
    T::one() / (T::one() - T::one() / (T::one() + g * g).sqrt()).sqrt()
}

fn lower_value<T: Real>(g: T) -> T {
    T::one() / (T::one() + T::one() / (T::one() + g * g).sqrt()).sqrt()
}

/// Maximum and minimum of the amplitude around the n-th odd mode, n >= 3.
pub fn amplitude_extrema<T: Real>(n: u64) -> Result<(AmplitudeExtremum<T>, AmplitudeExtremum<T>)> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Domain(format!("n must be odd and >= 3, got {n}")));
    }
    let half = lit::<T>(0.5);
    let (gmax, bmax) = tan_root(int::<T>(n) - half)?;
    let (gmin, bmin) = tan_root(int::<T>(n) + half)?;
    let max = AmplitudeExtremum { n, gamma_crit: gmax, value: upper_value(gmax), bracket: bmax };
    let min = AmplitudeExtremum { n, gamma_crit: gmin, value: lower_value(gmin), bracket: bmin };
    debug_assert!({
        let ((ul, uh), (ll, lh)) = swing_bounds::<T>(n);
        max.value > ul && max.value < uh && min.value > ll && min.value < lh
    });
    Ok((max, min))
}

/// n = 1: the maximum is the g -> 0 limit sqrt(3/2); the minimum comes from
/// the first positive root of tan g = g.
pub fn amplitude_n1<T: Real>() -> Result<(AmplitudeExtremum<T>, AmplitudeExtremum<T>)> {
    let max = AmplitudeExtremum { n: 1, gamma_crit: T::zero(), value: centre_amplitude(T::zero()), bracket: (T::zero(), T::zero()) };
    let lo = T::PI();
    let hi = lit::<T>(1.5) * T::PI() - lit(1e-6);
    let g = bisect(lo, hi, |x: T| x * x.cos() - x.sin())
        .ok_or_else(|| Error::Bracket("no root of tan g = g in (pi, 3pi/2)".into()))?;
    let min = AmplitudeExtremum { n: 1, gamma_crit: g, value: lower_value(g), bracket: (lo, hi) };
    Ok((max, min))
}

/// Amplitude extrema for any odd n >= 1.
pub fn amplitude<T: Real>(n: u64) -> Result<(AmplitudeExtremum<T>, AmplitudeExtremum<T>)> {
    if n == 1 {
        amplitude_n1()
    } else {
        amplitude_extrema(n)
    }
}

/// Open intervals ((lo, hi) for the maximum, (lo, hi) for the minimum) that
/// sandwich the amplitude extrema.
pub fn swing_bounds<T: Real>(n: u64) -> ((T, T), (T, T)) {
    let pi = T::PI();
    let one = T::one();
    let two = lit::<T>(2.0);
    let f = |m: u64, c: T| one / (two * int::<T>(m) * pi) * c;
    let g = |m: u64, d: T| one / (d * int::<T>(m) * int::<T>(m) * pi * pi);
    let three = lit::<T>(3.0);
    let upper = (one + f(n, one) + g(n, three), one + f(n - 1, one) + g(n - 1, two));
    let lower = (one - f(n, one) + g(n, three), one - f(n + 1, one) + g(n + 1, two));
    (upper, lower)
}
