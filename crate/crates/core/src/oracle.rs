//! Finite-difference check of the spectrum: the Dirichlet Laplacian on N
//! interior nodes with the point interaction lumped as alpha/dx on the node
//! at x0, solved with Sturm bisection and inverse iteration.

use crate::model::phi_unchecked;
use crate::special::{int, lit};
use crate::spectrum::{levels, LevelSource};
use crate::wavefn::eval_normalized;
use crate::{Error, Real, Result, Setup, X0Spec};

pub const MAX_COUNT: usize = 12;
const MAX_BISECTION: usize = 200;

/// Symmetric tridiagonal matrix on the interior nodes x_i = -L/2 + (i+1) dx.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal<T = f64> {
    pub diag: Vec<T>,
    pub offdiag: Vec<T>,
    pub dx: T,
    /// Index of the node carrying the delta weight.
    pub delta_node: usize,
    length: T,
}

impl<T: Real> Tridiagonal<T> {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn node(&self, i: usize) -> T {
        -self.length / lit(2.0) + int::<T>(i as u64 + 1) * self.dx
    }

    /// (lower, upper) Gershgorin bounds of the spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.n();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r = r + self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                r = r + self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn scale(&self) -> T {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn sturm_count(&self, lambda: T) -> usize {
        let tiny = T::epsilon() * T::epsilon() * self.scale();
        let mut count = 0;
        let mut d = T::one();
        for i in 0..self.n() {
            d = if i == 0 {
                self.diag[0] - lambda
            } else {
                let e = self.offdiag[i - 1];
                self.diag[i] - lambda - e * e / d
            };
            if d == T::zero() {
                d = -tiny;
            }
            if d < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// The k-th eigenvalue (0-based) by bisection on the Sturm count.
    pub fn eigenvalue(&self, k: usize) -> Result<T> {
        if k >= self.n() {
            return Err(Error::Domain(format!("eigenvalue index {k} out of range")));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let floor = T::epsilon() * self.scale();
        for _ in 0..MAX_BISECTION {
            let mid = lo + (hi - lo) / lit(2.0);
            if hi - lo <= lit::<T>(2.0) * T::epsilon() * lo.abs().max(hi.abs()) || hi - lo <= floor || mid == lo || mid == hi {
                return Ok(mid);
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Convergence(format!("bisection for eigenvalue {k} did not converge")))
    }

    /// Solves (T - shift) x = rhs by LU with partial pivoting.
    fn shifted_solve(&self, shift: T, rhs: &[T]) -> Vec<T> {
        let n = self.n();
        let tiny = T::epsilon() * self.scale();
        // Rows after pivoting have up to three nonzeros: u0 (diagonal), u1, u2.
        let mut u0 = vec![T::zero(); n];
        let mut u1 = vec![T::zero(); n];
        let mut u2 = vec![T::zero(); n];
        let mut mult = vec![T::zero(); n];
        let mut b = rhs.to_vec();
        let (mut cd, mut cu) = (self.diag[0] - shift, if n > 1 { self.offdiag[0] } else { T::zero() });
        let mut cw = T::zero();
        for i in 0..n {
            if i + 1 == n {
                u0[i] = if cd == T::zero() { tiny } else { cd };
                u1[i] = cu;
                u2[i] = cw;
                break;
            }
            let sub = self.offdiag[i];
            let nd = self.diag[i + 1] - shift;
            let nu_ = if i + 2 < n { self.offdiag[i + 1] } else { T::zero() };
            if sub.abs() > cd.abs() {
                // Swap rows i and i+1.
                b.swap(i, i + 1);
                u0[i] = sub;
                u1[i] = nd;
                u2[i] = nu_;
                let m = cd / sub;
                mult[i] = m;
                b[i + 1] = b[i + 1] - m * b[i];
                cd = cu - m * nd;
                cu = cw - m * nu_;
                cw = T::zero();
            } else {
                let piv = if cd == T::zero() { tiny } else { cd };
                u0[i] = piv;
                u1[i] = cu;
                u2[i] = cw;
                let m = sub / piv;
                mult[i] = m;
                b[i + 1] = b[i + 1] - m * b[i];
                cd = nd - m * cu;
                cu = nu_;
                cw = T::zero();
            }
        }
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s = s - u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s = s - u2[i] * x[i + 2];
            }
            x[i] = s / u0[i];
        }
        x
    }
}

/// Node index of x0: (N+1)(L/2 + x0)/L - 1.
pub fn delta_node<T: Real>(setup: &Setup<T>, n: usize, snap: bool) -> Result<usize> {
    let np1 = n as u64 + 1;
    match setup.x0_spec() {
        X0Spec::Rational { p, q } if !snap => {
            let num = np1 as u128 * (q + p) as u128;
            let den = 2 * q as u128;
            if num % den != 0 {
                return Err(Error::GridMismatch(format!(
                    "x0 = {p}/{q} (L/2) is not a node of the grid with N = {n}; use N + 1 divisible by {}",
                    den / num_integer::gcd(den, (q + p) as u128)
                )));
            }
            Ok((num / den) as usize - 1)
        }
        _ => {
            let pos = int::<T>(np1) * setup.left_len() / setup.l();
            let r = pos.round();
            if !snap && (pos - r).abs() > lit::<T>(1e-9) * pos.max(T::one()) {
                return Err(Error::GridMismatch(format!("x0 is off the grid with N = {n} (node {pos}); pass snap")));
            }
            let i = r.to_usize().unwrap_or(0);
            Ok(i.clamp(1, n) - 1)
        }
    }
}

/// -c u'' + (alpha/dx) [i = i0] u with Dirichlet walls.
pub fn build_hamiltonian<T: Real>(setup: &Setup<T>, alpha: T, n: usize, snap: bool) -> Result<Tridiagonal<T>> {
    if n < 16 {
        return Err(Error::Domain(format!("grid size must be >= 16, got {n}")));
    }
    let i0 = delta_node(setup, n, snap)?;
    let dx = setup.l() / int::<T>(n as u64 + 1);
    let c = setup.c();
    let mut diag = vec![lit::<T>(2.0) * c / (dx * dx); n];
    diag[i0] = diag[i0] + alpha / dx;
    let offdiag = vec![-c / (dx * dx); n - 1];
    Ok(Tridiagonal { diag, offdiag, dx, delta_node: i0, length: setup.l() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T = f64> {
    pub value: T,
    /// Normalized to sum v^2 dx = 1, positive next to the right wall.
    pub vector: Vec<T>,
}

/// The lowest `count` eigenpairs.
pub fn eig_lowest<T: Real>(t: &Tridiagonal<T>, count: usize) -> Result<Vec<EigenPair<T>>> {
    if count > MAX_COUNT || count > t.n() {
        return Err(Error::Domain(format!("count must be <= {MAX_COUNT}, got {count}")));
    }
    let n = t.n();
    let mut out: Vec<EigenPair<T>> = Vec::with_capacity(count);
    for k in 0..count {
        let value = t.eigenvalue(k)?;
        let mut v: Vec<T> = (0..n).map(|i| T::one() + lit::<T>(0.1) * int::<T>((i * 7919 + k * 31) as u64 % 97) / lit(97.0)).collect();
        for _ in 0..3 {
            orthogonalize(&mut v, &out);
            normalize(&mut v, T::one());
            v = t.shifted_solve(value, &v);
        }
        orthogonalize(&mut v, &out);
        normalize(&mut v, t.dx);
        if v[n - 1] < T::zero() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        out.push(EigenPair { value, vector: v });
    }
    Ok(out)
}

fn orthogonalize<T: Real>(v: &mut [T], basis: &[EigenPair<T>]) {
    for e in basis {
        let dot = v.iter().zip(&e.vector).fold(T::zero(), |s, (&a, &b)| s + a * b);
        let nrm = e.vector.iter().fold(T::zero(), |s, &a| s + a * a);
        let f = dot / nrm;
        v.iter_mut().zip(&e.vector).for_each(|(a, &b)| *a = *a - f * b);
    }
}

fn normalize<T: Real>(v: &mut [T], dx: T) {
    let s = (v.iter().fold(T::zero(), |s, &a| s + a * a) * dx).sqrt();
    v.iter_mut().for_each(|a| *a = *a / s);
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelComparison<T = f64> {
    pub index: usize,
    pub nu: T,
    pub analytic: T,
    pub oracle: T,
    /// |oracle - analytic| / |analytic| (absolute when analytic is 0).
    pub energy_error: T,
    /// Sup over nodes of |normalized analytic state - oracle eigenvector|.
    pub wave_error: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport<T = f64> {
    pub grid: usize,
    pub delta_node: usize,
    pub levels: Vec<LevelComparison<T>>,
}

impl<T: Real> OracleReport<T> {
    pub fn max_energy_error(&self) -> T {
        self.levels.iter().fold(T::zero(), |m, l| m.max(l.energy_error))
    }
    pub fn max_wave_error(&self) -> T {
        self.levels.iter().fold(T::zero(), |m, l| m.max(l.wave_error))
    }
}

/// Compares the lowest `count` analytic levels with the oracle.
pub fn compare<T: Real>(setup: &Setup<T>, alpha: T, n: usize, count: usize, snap: bool) -> Result<OracleReport<T>> {
    let t = build_hamiltonian(setup, alpha, n, snap)?;
    let pairs = eig_lowest(&t, count)?;
    let analytic = levels(setup, alpha, count)?;
    let mut out = Vec::with_capacity(count);
    for (i, (lv, ep)) in analytic.iter().zip(&pairs).enumerate() {
        let energy_error = if lv.energy == T::zero() {
            ep.value.abs()
        } else {
            ((ep.value - lv.energy) / lv.energy).abs()
        };
        let mut psi = Vec::with_capacity(n);
        for j in 0..n {
            let x = t.node(j);
            psi.push(match lv.source {
                LevelSource::Kappa(m) => phi_unchecked(setup, m, x),
                LevelSource::Interval(_) => eval_normalized(setup, lv.nu, x)?,
            });
        }
        let dot = psi.iter().zip(&ep.vector).fold(T::zero(), |s, (&a, &b)| s + a * b);
        let sign = if dot < T::zero() { -T::one() } else { T::one() };
        let wave_error = psi.iter().zip(&ep.vector).fold(T::zero(), |m, (&a, &b)| m.max((sign * a - b).abs()));
        out.push(LevelComparison { index: i, nu: lv.nu, analytic: lv.energy, oracle: ep.value, energy_error, wave_error });
    }
    Ok(OracleReport { grid: n, delta_node: t.delta_node, levels: out })
}
