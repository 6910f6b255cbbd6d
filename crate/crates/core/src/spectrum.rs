//! The dispersion relation alpha(nu) on all three energy branches and its
//! inversion on each interval of the partition.

use crate::lattice::{self, IntervalDescriptor, Location, PointKind};
use crate::model::energy_from_nu;
use crate::special::{lit, ycot, ycot_prime, ycoth, ycoth_prime};
use crate::{Error, Real, Result, Setup};

/// The value 2g = alpha / c together with alpha itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionValue<T = f64> {
    pub two_g: T,
    pub alpha: T,
}

pub(crate) fn check_regular<T: Real>(setup: &Setup<T>, nu: T) -> Result<()> {
    if nu > T::zero() {
        if let Location::Point(p) = lattice::locate(setup, nu) {
            return Err(Error::SingularPoint { nu: p.nu.to_f64().unwrap_or(f64::NAN) });
        }
    }
    Ok(())
}

/// f(nu) = -(nu/2)(cot(nu b/2) + cot(nu a/2)) without the singularity check;
/// the coth form for nu < 0 and -L/(ab) at nu = 0.
pub(crate) fn dispersion_raw<T: Real>(setup: &Setup<T>, nu: T) -> T {
    let (a, b) = (setup.left_len(), setup.right_len());
    let half = nu / lit(2.0);
    if nu >= T::zero() {
        -ycot(half * b) / b - ycot(half * a) / a
    } else {
        -ycoth(-half * b) / b - ycoth(-half * a) / a
    }
}

pub(crate) fn dispersion_prime_raw<T: Real>(setup: &Setup<T>, nu: T) -> T {
    let (a, b) = (setup.left_len(), setup.right_len());
    let half = nu / lit(2.0);
    if nu >= T::zero() {
        -(ycot_prime(half * b) + ycot_prime(half * a)) / lit(2.0)
    } else {
        (ycoth_prime(-half * b) + ycoth_prime(-half * a)) / lit(2.0)
    }
}

/// The dispersion function f (nu > 0), 2 g_0 (nu = 0) or h (nu < 0), equal
/// to alpha / c.
pub fn dispersion<T: Real>(setup: &Setup<T>, nu: T) -> Result<T> {
    check_regular(setup, nu)?;
    Ok(dispersion_raw(setup, nu))
}

/// d/dnu of `dispersion`; strictly positive away from nu = 0.
pub fn dispersion_derivative<T: Real>(setup: &Setup<T>, nu: T) -> Result<T> {
    check_regular(setup, nu)?;
    Ok(dispersion_prime_raw(setup, nu))
}

pub fn dispersion_value<T: Real>(setup: &Setup<T>, nu: T) -> Result<DispersionValue<T>> {
    let two_g = dispersion(setup, nu)?;
    Ok(DispersionValue { two_g, alpha: setup.c() * two_g })
}

/// alpha = c f(nu).
pub fn alpha_from_nu<T: Real>(setup: &Setup<T>, nu: T) -> Result<T> {
    Ok(dispersion_value(setup, nu)?.alpha)
}

/// The unique nu in `interval` with alpha_from_nu(nu) = alpha.
pub fn solve_nu<T: Real>(setup: &Setup<T>, alpha: T, interval: &IntervalDescriptor<T>) -> Result<T> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha = {alpha} is not finite")));
    }
    let target = alpha / setup.c();
    let hi = interval.upper_nu();
    let (mut lo, mut hi) = match interval.lower {
        Some(p) => (p.nu, hi),
        None => {
            // h(nu) < nu for nu < 0 and f(0) < 0 give a finite lower bracket.
            let f0 = dispersion_raw(setup, T::zero());
            (if target >= f0 { T::zero() } else { target }, hi)
        }
    };
    if !(lo < hi) {
        return Err(Error::Bracket(format!("empty interval ({lo}, {hi})")));
    }
    if interval.lower.is_none() && dispersion_raw(setup, lo) == target {
        return Ok(lo);
    }
    let scale = lattice::underline_nu(setup, 1);
    let tiny = T::epsilon() * lit(4.0);
    let mid = |lo: T, hi: T| lo + (hi - lo) / lit(2.0);
    let mut x = mid(lo, hi);
    for _ in 0..200 {
        let fx = dispersion_raw(setup, x) - target;
        if fx == T::zero() {
            return Ok(x);
        }
        if fx < T::zero() {
            lo = x;
        } else {
            hi = x;
        }
        let d = dispersion_prime_raw(setup, x);
        let mut next = x - fx / d;
        let newton_ok = d > T::zero() && next > lo && next < hi && (next - x).abs() <= (hi - lo) / lit(2.0);
        if !newton_ok {
            next = mid(lo, hi);
        }
        let tol = tiny * x.abs().max(scale * lit(1e-3));
        if (next - x).abs() <= tol || hi - lo <= tol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Convergence(format!("solve_nu did not converge for alpha = {alpha}")))
}

/// Where an eigenvalue comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSource {
    /// The root of the dispersion relation in the interval with this index.
    Interval(usize),
    /// A mode nu_n in K, an eigenvalue for every alpha.
    Kappa(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level<T = f64> {
    pub nu: T,
    pub energy: T,
    pub source: LevelSource,
}

/// The lowest `count` eigenvalues for strength `alpha`, in ascending order.
pub fn levels<T: Real>(setup: &Setup<T>, alpha: T, count: usize) -> Result<Vec<Level<T>>> {
    let mut out = Vec::with_capacity(count);
    let mut j = 0;
    while out.len() < count {
        let iv = lattice::interval(setup, j);
        let nu = solve_nu(setup, alpha, &iv)?;
        out.push(Level { nu, energy: energy_from_nu(setup, nu), source: LevelSource::Interval(j) });
        if out.len() < count {
            if let PointKind::Both(k, l) = iv.upper.kind {
                let nu = iv.upper.nu;
                out.push(Level { nu, energy: energy_from_nu(setup, nu), source: LevelSource::Kappa(k + l) });
            }
        }
        j += 1;
    }
    Ok(out)
}
