#![allow(dead_code)]

use deltawell::{Setup, X0Spec};

pub fn rat(p: u64, q: u64) -> Setup<f64> {
    Setup::unit(X0Spec::Rational { p, q }).unwrap()
}

pub fn real(x0: f64) -> Setup<f64> {
    Setup::unit(X0Spec::Real { value: x0 }).unwrap()
}

/// Composite Simpson rule with `panels` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Integral over the box, split at x0 so each piece is smooth.
pub fn integrate_box(setup: &Setup<f64>, f: impl Fn(f64) -> f64, panels: usize) -> f64 {
    let h = setup.l() / 2.0;
    let x0 = setup.x0();
    simpson(&f, -h, x0, panels) + simpson(&f, x0, h, panels)
}

/// Integral over one side of x0.
pub fn integrate_side(setup: &Setup<f64>, f: impl Fn(f64) -> f64, left: bool, panels: usize) -> f64 {
    let h = setup.l() / 2.0;
    let x0 = setup.x0();
    if left {
        simpson(f, -h, x0, panels)
    } else {
        simpson(f, x0, h, panels)
    }
}

/// Uniform grid of n+1 points on [lo, hi].
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}
