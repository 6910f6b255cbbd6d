//! Physical configuration and the free-well mode functions.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

use crate::special::{int, lit, sin_pi, sin_pi_ratio};
use crate::{Error, Result};

/// Scalar type the library is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Position of the delta: either x0 = (p/q)(L/2) exactly, or an absolute length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum X0Spec<T = f64> {
    Rational { p: u64, q: u64 },
    Real { value: T },
}

/// A box [-L/2, L/2] with a delta at x0 and kinetic factor c = hbar^2/(2m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setup<T = f64> {
    l: T,
    c: T,
    x0: X0Spec<T>,
    x0_value: T,
    a: T,
    b: T,
    q_ratio: T,
}

impl<T: Real> Setup<T> {
    /// Builds a setup. Rational positions are reduced to lowest terms.
    pub fn new(l: T, x0: X0Spec<T>, c: T) -> Result<Self> {
        if !(l > T::zero()) || !l.is_finite() {
            return Err(Error::Domain(format!("L must be positive, got {l}")));
        }
        if !(c > T::zero()) || !c.is_finite() {
            return Err(Error::Domain(format!("c must be positive, got {c}")));
        }
        let half = l / lit(2.0);
        let (x0, x0_value, a, b) = match x0 {
            X0Spec::Rational { p, q } => {
                if q == 0 {
                    return Err(Error::Domain("q must be at least 1".into()));
                }
                let g = p.gcd(&q);
                let (p, q) = (p / g, q / g);
                if p >= q {
                    return Err(Error::Domain(format!("x0 = ({p}/{q}) L/2 is not below L/2")));
                }
                let qf = int::<T>(q);
                (
                    X0Spec::Rational { p, q },
                    half * int::<T>(p) / qf,
                    half * int::<T>(q + p) / qf,
                    half * int::<T>(q - p) / qf,
                )
            }
            X0Spec::Real { value } => {
                if !(value >= T::zero() && value < half) {
                    return Err(Error::Domain(format!("x0 = {value} outside [0, L/2)")));
                }
                (x0, value, half + value, half - value)
            }
        };
        let q_ratio = match x0 {
            X0Spec::Rational { p, q } => int::<T>(q - p) / int::<T>(q + p),
            X0Spec::Real { .. } => b / a,
        };
        Ok(Setup { l, c, x0, x0_value, a, b, q_ratio })
    }

    /// Dimensionless defaults L = 1, c = 1.
    pub fn unit(x0: X0Spec<T>) -> Result<Self> {
        Self::new(T::one(), x0, T::one())
    }

    pub fn l(&self) -> T {
        self.l
    }
    pub fn c(&self) -> T {
        self.c
    }
    pub fn x0_spec(&self) -> X0Spec<T> {
        self.x0
    }
    pub fn x0(&self) -> T {
        self.x0_value
    }
    /// Length of the left piece, L/2 + x0.
    pub fn left_len(&self) -> T {
        self.a
    }
    /// Length of the right piece, L/2 - x0.
    pub fn right_len(&self) -> T {
        self.b
    }
    /// q = (L/2 - x0)/(L/2 + x0).
    pub fn q_ratio(&self) -> T {
        self.q_ratio
    }
    /// Midpoint of (-L/2, x0).
    pub fn lbar(&self) -> T {
        (self.x0_value - self.l / lit(2.0)) / lit(2.0)
    }
    /// Midpoint of (x0, L/2).
    pub fn rbar(&self) -> T {
        (self.x0_value + self.l / lit(2.0)) / lit(2.0)
    }
    /// Reduced (p, q) when x0 is rational.
    pub fn rational(&self) -> Option<(u64, u64)> {
        match self.x0 {
            X0Spec::Rational { p, q } => Some((p, q)),
            X0Spec::Real { .. } => None,
        }
    }

    pub(crate) fn check_x(&self, x: T) -> Result<()> {
        let half = self.l / lit(2.0);
        if x >= -half && x <= half {
            Ok(())
        } else {
            Err(Error::Domain(format!("x = {x} outside the box")))
        }
    }
}

/// nu_n = 2 n pi / L.
pub fn nu_n<T: Real>(setup: &Setup<T>, n: u64) -> T {
    lit::<T>(2.0) * int::<T>(n) * T::PI() / setup.l()
}

/// Free-well mode sqrt(2/L) sin((nu_n/2)(L/2 - x)).
pub fn phi_mode<T: Real>(setup: &Setup<T>, n: u64, x: T) -> Result<T> {
    setup.check_x(x)?;
    Ok(phi_unchecked(setup, n, x))
}

pub(crate) fn phi_unchecked<T: Real>(setup: &Setup<T>, n: u64, x: T) -> T {
    let l = setup.l();
    let u = (l / lit(2.0) - x) / l;
    (lit::<T>(2.0) / l).sqrt() * sin_pi(int::<T>(n) * u)
}

/// Phi_n(x0), exactly zero when nu_n is in K.
pub fn phi_at_x0<T: Real>(setup: &Setup<T>, n: u64) -> T {
    match setup.rational() {
        Some((p, q)) => {
            (lit::<T>(2.0) / setup.l()).sqrt() * sin_pi_ratio(n as u128 * (q - p) as u128, 2 * q as u128)
        }
        None => phi_unchecked(setup, n, setup.x0()),
    }
}

/// E = c (nu/2)^2 for nu >= 0 and -c (nu/2)^2 for nu < 0.
pub fn energy_from_nu<T: Real>(setup: &Setup<T>, nu: T) -> T {
    let e = setup.c() * (nu / lit(2.0)) * (nu / lit(2.0));
    if nu < T::zero() {
        -e
    } else {
        e
    }
}

/// Inverse of `energy_from_nu`.
pub fn nu_from_energy<T: Real>(setup: &Setup<T>, e: T) -> T {
    let nu = lit::<T>(2.0) * (e.abs() / setup.c()).sqrt();
    if e < T::zero() {
        -nu
    } else {
        nu
    }
}
