//! The singular sets P = P_under ∪ P_over and K = P_under ∩ P_over, the
//! partition of the real line they induce, and the classification of the
//! free modes nu_n.

use std::cmp::Ordering;

use crate::model::nu_n;
use crate::special::{guard, int, lit};
use crate::{Real, Setup};

/// Which lattice a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    /// nu = 2 k pi / (L/2 + x0)
    Under(u64),
    /// nu = 2 l pi / (L/2 - x0)
    Over(u64),
    /// Both at once; then nu = nu_{k+l}.
    Both(u64, u64),
}

impl PointKind {
    pub fn under_index(&self) -> Option<u64> {
        match *self {
            PointKind::Under(k) | PointKind::Both(k, _) => Some(k),
            PointKind::Over(_) => None,
        }
    }

    pub fn over_index(&self) -> Option<u64> {
        match *self {
            PointKind::Over(l) | PointKind::Both(_, l) => Some(l),
            PointKind::Under(_) => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PointKind::Under(_) => "under",
            PointKind::Over(_) => "over",
            PointKind::Both(..) => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint<T = f64> {
    pub nu: T,
    pub kind: PointKind,
}

impl<T: Real> LatticePoint<T> {
    pub fn is_both(&self) -> bool {
        matches!(self.kind, PointKind::Both(..))
    }
}

/// Case labels for the open intervals between consecutive lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    G,
    A,
    B,
    C,
    D,
    E,
    F,
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::G => "G",
            CaseTag::A => "A",
            CaseTag::B => "B",
            CaseTag::C => "C",
            CaseTag::D => "D",
            CaseTag::E => "E",
            CaseTag::F => "F",
        }
    }

    fn from_bounds(lower: Option<PointKind>, upper: PointKind) -> CaseTag {
        use PointKind::*;
        match (lower, upper) {
            (None, _) => CaseTag::G,
            (Some(Under(_)), Under(_)) | (Some(Over(_)), Over(_)) => CaseTag::A,
            (Some(Under(_)), Over(_)) | (Some(Both(..)), Over(_)) => CaseTag::B,
            (Some(Over(_)), Under(_)) | (Some(Over(_)), Both(..)) => CaseTag::C,
            (Some(Both(..)), Both(..)) => CaseTag::D,
            (Some(Both(..)), Under(_)) => CaseTag::E,
            (Some(Under(_)), Both(..)) => CaseTag::F,
        }
    }
}

/// An open interval of R \ P. Interval 0 is (-inf, first point).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalDescriptor<T = f64> {
    pub index: usize,
    pub lower: Option<LatticePoint<T>>,
    pub upper: LatticePoint<T>,
    pub case_tag: CaseTag,
    pub contains_mode: Option<u64>,
}

impl<T: Real> IntervalDescriptor<T> {
    pub fn lower_nu(&self) -> T {
        self.lower.map_or(T::neg_infinity(), |p| p.nu)
    }

    pub fn upper_nu(&self) -> T {
        self.upper.nu
    }

    pub fn contains(&self, nu: T) -> bool {
        nu > self.lower_nu() && nu < self.upper_nu()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition<T = f64> {
    pub points: Vec<LatticePoint<T>>,
    pub intervals: Vec<IntervalDescriptor<T>>,
}

/// Result of `classify_mode`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeClass<T = f64> {
    /// nu_n = underline_nu_k = overline_nu_l.
    InK { k: u64, l: u64 },
    Interval(IntervalDescriptor<T>),
}

/// Where a value of nu sits relative to P.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location<T = f64> {
    Point(LatticePoint<T>),
    Interval(usize),
}

/// underline_nu_k = 2 k pi / (L/2 + x0).
pub fn underline_nu<T: Real>(setup: &Setup<T>, k: u64) -> T {
    match setup.rational() {
        Some((p, q)) => int::<T>(4 * k * q) / int::<T>(q + p) * T::PI() / setup.l(),
        None => lit::<T>(2.0) * int::<T>(k) * T::PI() / setup.left_len(),
    }
}

/// overline_nu_l = 2 l pi / (L/2 - x0).
pub fn overline_nu<T: Real>(setup: &Setup<T>, l: u64) -> T {
    match setup.rational() {
        Some((p, q)) => int::<T>(4 * l * q) / int::<T>(q - p) * T::PI() / setup.l(),
        None => lit::<T>(2.0) * int::<T>(l) * T::PI() / setup.right_len(),
    }
}

/// Base b with K = { m nu_b }, or None for a real (generic) x0.
pub fn kappa_base<T: Real>(setup: &Setup<T>) -> Option<u64> {
    let (p, q) = setup.rational()?;
    if p % 2 == 1 && q % 2 == 1 {
        Some(q)
    } else {
        Some(2 * q)
    }
}

/// Ascending, merged stream of lattice points.
struct Points<'a, T> {
    setup: &'a Setup<T>,
    k: u64,
    l: u64,
}

impl<'a, T: Real> Points<'a, T> {
    fn new(setup: &'a Setup<T>) -> Self {
        Points { setup, k: 1, l: 1 }
    }

    fn compare(&self) -> Ordering {
        match self.setup.rational() {
            Some((p, q)) => {
                let u = self.k as u128 * (q - p) as u128;
                let o = self.l as u128 * (q + p) as u128;
                u.cmp(&o)
            }
            None => {
                let u = underline_nu(self.setup, self.k);
                let o = overline_nu(self.setup, self.l);
                if (u - o).abs() <= lit::<T>(1e-9) * u {
                    Ordering::Equal
                } else if u < o {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

impl<'a, T: Real> Iterator for Points<'a, T> {
    type Item = LatticePoint<T>;

    fn next(&mut self) -> Option<LatticePoint<T>> {
        let s = self.setup;
        let point = match self.compare() {
            Ordering::Less => {
                let p = LatticePoint { nu: underline_nu(s, self.k), kind: PointKind::Under(self.k) };
                self.k += 1;
                p
            }
            Ordering::Greater => {
                let p = LatticePoint { nu: overline_nu(s, self.l), kind: PointKind::Over(self.l) };
                self.l += 1;
                p
            }
            Ordering::Equal => {
                let nu = match s.rational() {
                    Some(_) => nu_n(s, self.k + self.l),
                    None => (underline_nu(s, self.k) + overline_nu(s, self.l)) / lit(2.0),
                };
                let p = LatticePoint { nu, kind: PointKind::Both(self.k, self.l) };
                self.k += 1;
                self.l += 1;
                p
            }
        };
        Some(point)
    }
}

/// The i-th lattice point, counting from 1.
pub fn point<T: Real>(setup: &Setup<T>, i: usize) -> LatticePoint<T> {
    assert!(i >= 1, "lattice points are numbered from 1");
    Points::new(setup).nth(i - 1).expect("infinite stream")
}

fn mode_above<T: Real>(setup: &Setup<T>, lower: Option<&LatticePoint<T>>) -> u64 {
    let Some(lo) = lower else { return 1 };
    match (setup.rational(), lo.kind) {
        (_, PointKind::Both(k, l)) => k + l + 1,
        (Some((p, q)), PointKind::Under(k)) => (2 * k * q) / (q + p) + 1,
        (Some((p, q)), PointKind::Over(l)) => (2 * l * q) / (q - p) + 1,
        (None, _) => (lo.nu / nu_n(setup, 1)).floor().to_u64().unwrap_or(0) + 1,
    }
}

fn mode_below<T: Real>(setup: &Setup<T>, n: u64, upper: &LatticePoint<T>) -> bool {
    match (setup.rational(), upper.kind) {
        (_, PointKind::Both(k, l)) => n < k + l,
        (Some((p, q)), PointKind::Under(k)) => n * (q + p) < 2 * k * q,
        (Some((p, q)), PointKind::Over(l)) => n * (q - p) < 2 * l * q,
        (None, _) => nu_n(setup, n) < upper.nu,
    }
}

fn describe<T: Real>(
    setup: &Setup<T>,
    index: usize,
    lower: Option<LatticePoint<T>>,
    upper: LatticePoint<T>,
) -> IntervalDescriptor<T> {
    let n = mode_above(setup, lower.as_ref());
    let contains_mode = mode_below(setup, n, &upper).then_some(n);
    IntervalDescriptor {
        index,
        lower,
        upper,
        case_tag: CaseTag::from_bounds(lower.map(|p| p.kind), upper.kind),
        contains_mode,
    }
}

/// The interval with the given index.
pub fn interval<T: Real>(setup: &Setup<T>, index: usize) -> IntervalDescriptor<T> {
    let mut it = Points::new(setup);
    let lower = if index == 0 { None } else { it.nth(index - 1) };
    let upper = it.next().expect("infinite stream");
    describe(setup, index, lower, upper)
}

/// Lattice points up to `nu_max`, plus the first point above it so that the
/// last interval is closed, and the intervals they bound.
pub fn partition<T: Real>(setup: &Setup<T>, nu_max: T) -> Partition<T> {
    let mut points = Vec::new();
    for p in Points::new(setup) {
        let done = p.nu > nu_max;
        points.push(p);
        if done {
            break;
        }
    }
    let mut intervals = Vec::with_capacity(points.len());
    let mut lower = None;
    for (i, &upper) in points.iter().enumerate() {
        intervals.push(describe(setup, i, lower, upper));
        lower = Some(upper);
    }
    Partition { points, intervals }
}

/// Locates nu_n: either in K or inside a classified interval.
pub fn classify_mode<T: Real>(setup: &Setup<T>, n: u64) -> ModeClass<T> {
    assert!(n >= 1, "modes are numbered from 1");
    match setup.rational() {
        Some((p, q)) => {
            let (ku, lu, d) = (n * (q + p), n * (q - p), 2 * q);
            if ku % d == 0 {
                return ModeClass::InK { k: ku / d, l: lu / d };
            }
            let base = kappa_base(setup).expect("rational x0 has K");
            let index = (ku / d + lu / d - n / base) as usize;
            let iv = interval(setup, index);
            debug_assert_eq!(iv.contains_mode, Some(n));
            ModeClass::Interval(iv)
        }
        None => {
            let nu = nu_n(setup, n);
            let mut lower = None;
            for (i, pt) in Points::new(setup).enumerate() {
                if let PointKind::Both(k, l) = pt.kind {
                    if k + l == n {
                        return ModeClass::InK { k, l };
                    }
                }
                if pt.nu > nu {
                    return ModeClass::Interval(describe(setup, i, lower, pt));
                }
                lower = Some(pt);
            }
            unreachable!("infinite stream")
        }
    }
}

/// Finds the lattice point within the singular guard of `nu`, or the index
/// of the interval containing it.
pub fn locate<T: Real>(setup: &Setup<T>, nu: T) -> Location<T> {
    let tol = guard::<T>() * underline_nu(setup, 1);
    let two_pi = lit::<T>(2.0) * T::PI();
    if nu <= T::zero() {
        return Location::Interval(0);
    }
    let fk = (nu * setup.left_len() / two_pi).floor();
    let fl = (nu * setup.right_len() / two_pi).floor();
    let k0 = fk.to_u64().unwrap_or(0);
    let l0 = fl.to_u64().unwrap_or(0);
    let near_k = [k0, k0 + 1]
        .into_iter()
        .filter(|&k| k >= 1)
        .find(|&k| (underline_nu(setup, k) - nu).abs() <= tol);
    let near_l = [l0, l0 + 1]
        .into_iter()
        .filter(|&l| l >= 1)
        .find(|&l| (overline_nu(setup, l) - nu).abs() <= tol);
    if near_k.is_some() || near_l.is_some() {
        return Location::Point(exact_point(setup, near_k, near_l));
    }
    match setup.rational() {
        Some(_) => {
            let base = kappa_base(setup).expect("rational x0 has K");
            let both = (nu / nu_n(setup, base)).floor().to_u64().unwrap_or(0);
            Location::Interval((k0 + l0 - both) as usize)
        }
        None => {
            let count = Points::new(setup).take_while(|p| p.nu < nu).count();
            Location::Interval(count)
        }
    }
}

fn exact_point<T: Real>(setup: &Setup<T>, k: Option<u64>, l: Option<u64>) -> LatticePoint<T> {
    // Complete a near hit to the merged point it belongs to.
    let kind = match (k, l) {
        (Some(k), Some(l)) => PointKind::Both(k, l),
        (Some(k), None) => match setup.rational() {
            Some((p, q)) if (k * (q - p)) % (q + p) == 0 => PointKind::Both(k, k * (q - p) / (q + p)),
            Some(_) => PointKind::Under(k),
            None => merged_partner(setup, PointKind::Under(k)),
        },
        (None, Some(l)) => match setup.rational() {
            Some((p, q)) if (l * (q + p)) % (q - p) == 0 => PointKind::Both(l * (q + p) / (q - p), l),
            Some(_) => PointKind::Over(l),
            None => merged_partner(setup, PointKind::Over(l)),
        },
        (None, None) => unreachable!(),
    };
    let nu = match kind {
        PointKind::Under(k) => underline_nu(setup, k),
        PointKind::Over(l) => overline_nu(setup, l),
        PointKind::Both(k, l) => match setup.rational() {
            Some(_) => nu_n(setup, k + l),
            None => (underline_nu(setup, k) + overline_nu(setup, l)) / lit(2.0),
        },
    };
    LatticePoint { nu, kind }
}

fn merged_partner<T: Real>(setup: &Setup<T>, kind: PointKind) -> PointKind {
    let rel = lit::<T>(1e-9);
    match kind {
        PointKind::Under(k) => {
            let nu = underline_nu(setup, k);
            let l = (nu * setup.right_len() / (lit::<T>(2.0) * T::PI())).round();
            let l = l.to_u64().unwrap_or(0);
            if l >= 1 && (overline_nu(setup, l) - nu).abs() <= rel * nu {
                PointKind::Both(k, l)
            } else {
                kind
            }
        }
        PointKind::Over(l) => {
            let nu = overline_nu(setup, l);
            let k = (nu * setup.left_len() / (lit::<T>(2.0) * T::PI())).round();
            let k = k.to_u64().unwrap_or(0);
            if k >= 1 && (underline_nu(setup, k) - nu).abs() <= rel * nu {
                PointKind::Both(k, l)
            } else {
                kind
            }
        }
        PointKind::Both(..) => kind,
    }
}

/// The open interval containing `nu`, or None at a lattice point.
pub fn interval_of<T: Real>(setup: &Setup<T>, nu: T) -> Option<IntervalDescriptor<T>> {
    match locate(setup, nu) {
        Location::Interval(j) => Some(interval(setup, j)),
        Location::Point(_) => None,
    }
}

/// The point of K nearest to `nu`, when x0 is rational, as (mode n, k, l).
pub fn nearest_kappa<T: Real>(setup: &Setup<T>, nu: T) -> Option<(u64, u64, u64)> {
    let (p, q) = setup.rational()?;
    let base = kappa_base(setup)?;
    let step = nu_n(setup, base);
    let m = (nu / step).round().to_u64()?;
    if m == 0 {
        return None;
    }
    let n = m * base;
    Some((n, n * (q + p) / (2 * q), n * (q - p) / (2 * q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::X0Spec;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn rat(p: u64, q: u64) -> Setup<f64> {
        Setup::unit(X0Spec::Rational { p, q }).unwrap()
    }

    fn real(x: f64) -> Setup<f64> {
        Setup::unit(X0Spec::Real { value: x }).unwrap()
    }

    #[test]
    fn lattice_values() {
        let s = rat(1, 4);
        assert_relative_eq!(underline_nu(&s, 5), 16.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(overline_nu(&s, 3), 16.0 * PI, max_relative = 1e-15);
        let z = rat(0, 1);
        assert_relative_eq!(underline_nu(&z, 3), nu_n(&z, 6));
        assert_relative_eq!(overline_nu(&z, 3), nu_n(&z, 6));
        let r = real(3.0 / 16.0);
        assert_relative_eq!(underline_nu(&r, 1), 2.0 * PI / (11.0 / 16.0), max_relative = 1e-15);
        assert_relative_eq!(overline_nu(&rat(3, 4), 1), 16.0 * PI, max_relative = 1e-15);
    }

    #[test]
    fn kappa_base_examples() {
        assert_eq!(kappa_base(&rat(1, 4)), Some(8));
        assert_eq!(kappa_base(&rat(0, 1)), Some(2));
        assert_eq!(kappa_base(&rat(3, 4)), Some(8));
        assert_eq!(kappa_base(&rat(3, 5)), Some(5));
        assert_eq!(kappa_base(&real(0.1)), None);
    }

    #[test]
    fn partition_eighth() {
        let s = rat(1, 4);
        let part = partition(&s, nu_n(&s, 9));
        let kinds: Vec<_> = part.points.iter().map(|p| p.kind).collect();
        use PointKind::*;
        assert_eq!(
            kinds,
            vec![Under(1), Over(1), Under(2), Under(3), Over(2), Under(4), Both(5, 3), Under(6)]
        );
        let tags: Vec<_> = part.intervals.iter().map(|i| i.case_tag).collect();
        use CaseTag::*;
        assert_eq!(tags, vec![G, B, C, A, B, C, F, E]);
        let modes: Vec<_> = part.intervals.iter().map(|i| i.contains_mode).collect();
        assert_eq!(
            modes,
            vec![Some(1), Some(2), Some(3), Some(4), Some(5), Some(6), Some(7), Some(9)]
        );
    }

    #[test]
    fn partition_centre_is_all_both() {
        let s = rat(0, 1);
        let part = partition(&s, nu_n(&s, 7));
        assert!(part.points.iter().all(|p| p.is_both()));
        assert_eq!(part.points.len(), 4);
        for iv in &part.intervals[1..] {
            assert_eq!(iv.case_tag, CaseTag::D);
        }
    }

    #[test]
    fn partition_irrational() {
        let s = real(1.0 / (10.0 * 2f64.sqrt()));
        let part = partition(&s, nu_n(&s, 8));
        assert!(part.points.iter().all(|p| !p.is_both()));
        let o3 = overline_nu(&s, 3);
        let u4 = underline_nu(&s, 4);
        let n7 = nu_n(&s, 7);
        assert!(o3 < n7 && n7 < u4);
        assert!(part.points.iter().any(|p| p.kind == PointKind::Over(3)));
        assert!(part.points.iter().any(|p| p.kind == PointKind::Under(4)));
    }

    #[test]
    fn classify_examples() {
        let s = rat(1, 4);
        let ModeClass::Interval(iv) = classify_mode(&s, 7) else { panic!() };
        assert_eq!(iv.case_tag, CaseTag::F);
        assert_eq!(iv.lower.unwrap().kind, PointKind::Under(4));
        assert_eq!(iv.upper.kind, PointKind::Both(5, 3));
        let ModeClass::Interval(iv) = classify_mode(&s, 9) else { panic!() };
        assert_eq!(iv.case_tag, CaseTag::E);
        assert_eq!(iv.upper.kind, PointKind::Under(6));
        assert_eq!(classify_mode(&s, 8), ModeClass::InK { k: 5, l: 3 });
        let z = rat(0, 1);
        let ModeClass::Interval(iv) = classify_mode(&z, 5) else { panic!() };
        assert_eq!(iv.case_tag, CaseTag::D);
        assert_eq!(iv.lower.unwrap().kind, PointKind::Both(2, 2));
        assert_eq!(iv.upper.kind, PointKind::Both(3, 3));
        assert_eq!(classify_mode(&z, 4), ModeClass::InK { k: 2, l: 2 });
    }

    #[test]
    fn classify_agrees_with_partition() {
        for s in [rat(1, 4), rat(3, 4), rat(3, 5), rat(11, 13), real(0.0707), real(0.3)] {
            let part = partition(&s, nu_n(&s, 60));
            for n in 1..=55u64 {
                match classify_mode(&s, n) {
                    ModeClass::InK { k, l } => {
                        assert!(part.points.iter().any(|p| p.kind == PointKind::Both(k, l)));
                        assert_eq!(k + l, n);
                    }
                    ModeClass::Interval(iv) => {
                        assert_eq!(part.intervals[iv.index], iv);
                        assert_eq!(iv.contains_mode, Some(n));
                    }
                }
            }
        }
    }

    #[test]
    fn locate_points_and_intervals() {
        let s = rat(1, 4);
        let part = partition(&s, 200.0);
        for (i, iv) in part.intervals.iter().enumerate() {
            let lo = iv.lower_nu().max(-10.0);
            let mid = 0.5 * (lo + iv.upper_nu());
            assert_eq!(locate(&s, mid), Location::Interval(i));
            assert_eq!(interval(&s, i), *iv);
        }
        for p in &part.points {
            assert_eq!(locate(&s, p.nu), Location::Point(*p));
        }
        let r = real(0.3);
        let part = partition(&r, 200.0);
        for (i, iv) in part.intervals.iter().enumerate().skip(1) {
            let mid = 0.5 * (iv.lower_nu() + iv.upper_nu());
            assert_eq!(locate(&r, mid), Location::Interval(i));
        }
    }

    #[test]
    fn nearest_kappa_point() {
        let s = rat(1, 4);
        assert_eq!(nearest_kappa(&s, 16.0 * PI * 1.001), Some((8, 5, 3)));
        assert_eq!(nearest_kappa(&s, 1.0), None);
    }
}
