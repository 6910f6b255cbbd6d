//! Elementary functions evaluated without cancellation near their removable
//! singularities, plus small conversion helpers.

use crate::Real;

#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable")
}

#[inline]
pub(crate) fn int<T: Real>(n: u64) -> T {
    T::from_u64(n).expect("integer representable")
}

/// Relative tolerance used for lattice guards and snapping: 1e-12 for f64,
/// a few ulps for narrower types.
#[inline]
pub fn guard<T: Real>() -> T {
    let e = T::epsilon() * lit(16.0);
    let g = lit(1e-12);
    if e > g {
        e
    } else {
        g
    }
}

/// sin(pi t) with exact zeros at integer t.
pub fn sin_pi<T: Real>(t: T) -> T {
    let two = lit::<T>(2.0);
    let mut r = t - two * (t / two).round();
    if r == r.round() {
        return T::zero();
    }
    let half = lit::<T>(0.5);
    if r > half {
        r = T::one() - r;
    } else if r < -half {
        r = -T::one() - r;
    }
    (T::PI() * r).sin()
}

/// sin(pi * num / den) with the reduction done in integers.
pub fn sin_pi_ratio<T: Real>(num: u128, den: u128) -> T {
    let n = num % (2 * den);
    if n % den == 0 {
        return T::zero();
    }
    let (n, sign) = if n > den { (n - den, -T::one()) } else { (n, T::one()) };
    // n in (0, den): sin(pi n/den) = sin(pi (den - n)/den)
    let m = if 2 * n > den { den - n } else { n };
    sign * (T::PI() * (int::<T>(m as u64) / int::<T>(den as u64))).sin()
}

fn poly<T: Real>(x: T, c: &[f64]) -> T {
    c.iter().rev().fold(T::zero(), |acc, &ci| acc * x + lit(ci))
}

const SMALL: f64 = 0.05;

/// y cot y, equal to 1 at y = 0.
pub fn ycot<T: Real>(y: T) -> T {
    if y.abs() < lit(SMALL) {
        let y2 = y * y;
        poly(y2, &[1.0, -1.0 / 3.0, -1.0 / 45.0, -2.0 / 945.0, -1.0 / 4725.0, -2.0 / 93555.0])
    } else {
        y * y.cos() / y.sin()
    }
}

/// d/dy (y cot y) = cot y - y / sin^2 y.
pub fn ycot_prime<T: Real>(y: T) -> T {
    if y.abs() < lit(SMALL) {
        let y2 = y * y;
        y * poly(y2, &[-2.0 / 3.0, -4.0 / 45.0, -12.0 / 945.0, -8.0 / 4725.0, -20.0 / 93555.0])
    } else {
        let s = y.sin();
        y.cos() / s - y / (s * s)
    }
}

/// y coth y, equal to 1 at y = 0.
pub fn ycoth<T: Real>(y: T) -> T {
    if y.abs() < lit(SMALL) {
        let y2 = y * y;
        poly(y2, &[1.0, 1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0, 2.0 / 93555.0])
    } else {
        y / y.tanh()
    }
}

/// d/dy (y coth y) = coth y - y / sinh^2 y.
pub fn ycoth_prime<T: Real>(y: T) -> T {
    if y.abs() < lit(SMALL) {
        let y2 = y * y;
        y * poly(y2, &[2.0 / 3.0, -4.0 / 45.0, 12.0 / 945.0, -8.0 / 4725.0, 20.0 / 93555.0])
    } else if y.abs() > lit(350.0) {
        y.signum()
    } else {
        let s = y.sinh();
        T::one() / y.tanh() - y / (s * s)
    }
}

const SERIES: f64 = 1.0;
const TERMS: usize = 14;

/// Taylor series sum_{k>=1} sgn^{k+1} c_k t^{2k} where c_k is produced by `coef`.
fn even_series<T: Real>(t: T, alternating: bool, coef: impl Fn(u64) -> f64) -> T {
    let t2 = t * t;
    let mut pow = t2;
    let mut sum = T::zero();
    for k in 1..=TERMS as u64 {
        let sgn = if alternating && k % 2 == 0 { -1.0 } else { 1.0 };
        sum = sum + pow * lit(sgn * coef(k));
        pow = pow * t2;
    }
    sum
}

fn fact(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// S(t) = 1 - sin t / t.
pub fn one_minus_sinc<T: Real>(t: T) -> T {
    if t.abs() < lit(SERIES) {
        even_series(t, true, |k| 1.0 / fact(2 * k + 1))
    } else {
        T::one() - t.sin() / t
    }
}

/// W(t) = 1/2 - sin t / t + (1 - cos t) / t^2.
pub fn w_trig<T: Real>(t: T) -> T {
    if t.abs() < lit(SERIES) {
        even_series(t, true, |k| (2 * k + 1) as f64 / fact(2 * k + 2))
    } else {
        lit::<T>(0.5) - t.sin() / t + (T::one() - t.cos()) / (t * t)
    }
}

/// e^{-t} (sinh t / t - 1), t >= 0.
pub fn exs<T: Real>(t: T) -> T {
    if t < lit(SERIES) {
        (-t).exp() * even_series(t, false, |k| 1.0 / fact(2 * k + 1))
    } else {
        -(-lit::<T>(2.0) * t).exp_m1() / (lit::<T>(2.0) * t) - (-t).exp()
    }
}

/// e^{-t} (sinh t / t - (cosh t - 1) / t^2 - 1/2), t >= 0.
pub fn exw<T: Real>(t: T) -> T {
    if t < lit(SERIES) {
        (-t).exp() * even_series(t, false, |k| (2 * k + 1) as f64 / fact(2 * k + 2))
    } else {
        let two = lit::<T>(2.0);
        let e1 = (-t).exp();
        let e2 = (-two * t).exp();
        -(-two * t).exp_m1() / (two * t) - (T::one() + e2 - two * e1) / (two * t * t)
            - lit::<T>(0.5) * e1
    }
}

/// 1 - e^{-x} for x >= 0.
#[inline]
pub fn one_minus_exp<T: Real>(x: T) -> T {
    -(-x).exp_m1()
}

/// Bisection for a sign change of `g` on [lo, hi], to full precision.
pub fn bisect<T: Real>(mut lo: T, mut hi: T, g: impl Fn(T) -> T) -> Option<T> {
    let mut glo = g(lo);
    let ghi = g(hi);
    if glo == T::zero() {
        return Some(lo);
    }
    if ghi == T::zero() {
        return Some(hi);
    }
    if (glo > T::zero()) == (ghi > T::zero()) {
        return None;
    }
    for _ in 0..300 {
        let mid = lo + (hi - lo) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == T::zero() {
            return Some(mid);
        }
        if (gm > T::zero()) == (glo > T::zero()) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Some(lo + (hi - lo) / lit(2.0))
}
