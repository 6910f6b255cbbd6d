mod common;

use common::{rat, real};
use deltawell::lattice::{self, classify_mode, kappa_base, overline_nu, partition, underline_nu, ModeClass};
use deltawell::model::nu_n;
use deltawell::{CaseTag, PointKind};
use std::collections::BTreeSet;
use std::f64::consts::PI;

fn brute_force_kappa(p: u64, q: u64, max: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for k in 1..=max {
        for l in 1..=max {
            // 2k pi / a = 2l pi / b  <=>  k (q - p) = l (q + p)
            if k * (q - p) == l * (q + p) {
                out.insert(k + l);
            }
        }
    }
    out
}

#[test]
fn kappa_is_the_multiples_of_its_base() {
    for &(p, q) in &[(1, 4), (3, 4), (1, 2), (3, 5), (11, 13), (0, 1)] {
        let s = rat(p, q);
        let base = kappa_base(&s).unwrap();
        let brute = brute_force_kappa(p, q, 200);
        let expected: BTreeSet<u64> = (1..)
            .map(|m| m * base)
            .take_while(|&n| n * (q + p) / (2 * q) <= 200)
            .filter(|&n| n * (q - p) / (2 * q) <= 200)
            .collect();
        assert_eq!(brute, expected, "p/q = {p}/{q}");
    }
    assert_eq!(kappa_base(&rat(1, 4)), Some(8));
    assert_eq!(kappa_base(&rat(3, 4)), Some(8));
    assert_eq!(kappa_base(&rat(0, 1)), Some(2));
    assert_eq!(kappa_base(&real(0.125)), None);
}

#[test]
fn both_points_sit_on_free_modes() {
    for &(p, q) in &[(1, 4), (3, 4), (3, 5), (11, 13)] {
        let s = rat(p, q);
        for pt in partition(&s, 400.0).points {
            if let PointKind::Both(k, l) = pt.kind {
                let nn = nu_n(&s, k + l);
                assert!((pt.nu - nn).abs() <= 4.0 * f64::EPSILON * nn, "{pt:?}");
            }
        }
    }
}

#[test]
fn centred_well_modes() {
    let s = rat(0, 1);
    for n in 1..=20u64 {
        match classify_mode(&s, n) {
            ModeClass::InK { .. } => assert_eq!(n % 2, 0),
            ModeClass::Interval(iv) => {
                assert_eq!(n % 2, 1);
                assert_eq!(iv.case_tag, if n == 1 { CaseTag::G } else { CaseTag::D });
            }
        }
    }
    let ModeClass::Interval(iv) = classify_mode(&s, 5) else { panic!() };
    assert!((iv.lower_nu() - nu_n(&s, 4)).abs() < 1e-12);
    assert!((iv.upper_nu() - nu_n(&s, 6)).abs() < 1e-12);
}

#[test]
fn integer_ratio_positions_align_every_overline_point() {
    for m in 2..=12u64 {
        // x0 = ((m-1)/(m+1)) L/2 makes b/a = 1/m.
        let s = rat(m - 1, m + 1);
        for l in 1..=20u64 {
            let k = m * l;
            assert!(matches!(lattice::locate(&s, overline_nu(&s, l)), lattice::Location::Point(p) if p.kind == PointKind::Both(k, l)));
            assert!((overline_nu(&s, l) - underline_nu(&s, k)).abs() < 1e-12 * overline_nu(&s, l));
        }
    }
}

#[test]
fn intervals_contain_no_lattice_points() {
    for s in [rat(1, 4), rat(3, 4), rat(0, 1), real(1.0 / (10.0 * 2f64.sqrt()))] {
        let part = partition(&s, 300.0);
        for iv in &part.intervals {
            for pt in &part.points {
                assert!(!iv.contains(pt.nu), "{iv:?} contains {pt:?}");
            }
            assert_eq!(iv.case_tag == CaseTag::G, iv.lower.is_none());
            if iv.lower.is_some() {
                for i in 1..50 {
                    let nu = iv.lower_nu() + (iv.upper_nu() - iv.lower_nu()) * i as f64 / 50.0;
                    assert!(matches!(lattice::locate(&s, nu), lattice::Location::Interval(j) if j == iv.index));
                }
            }
        }
    }
}

#[test]
fn eighth_of_the_box_layout() {
    let s = rat(1, 4);
    let kinds: Vec<PointKind> = partition(&s, nu_n(&s, 9)).points.iter().map(|p| p.kind).collect();
    use PointKind::*;
    assert_eq!(kinds, vec![Under(1), Over(1), Under(2), Under(3), Over(2), Under(4), Both(5, 3), Under(6)]);
    assert!((underline_nu(&s, 5) - 16.0 * PI).abs() < 1e-12);
    assert!((overline_nu(&s, 3) - 16.0 * PI).abs() < 1e-12);
    let ModeClass::Interval(iv) = classify_mode(&s, 7) else { panic!() };
    assert_eq!(iv.case_tag, CaseTag::F);
    assert_eq!(iv.lower.unwrap().kind, Under(4));
    let ModeClass::Interval(iv) = classify_mode(&s, 9) else { panic!() };
    assert_eq!(iv.case_tag, CaseTag::E);
    assert_eq!(iv.upper.kind, Under(6));
    assert!(matches!(classify_mode(&s, 8), ModeClass::InK { .. }));
}

#[test]
fn irrational_position_has_no_coincidences() {
    let s = real(1.0 / (10.0 * 2f64.sqrt()));
    let part = partition(&s, 400.0);
    assert!(part.points.iter().all(|p| !p.is_both()));
    let o3 = overline_nu(&s, 3);
    let u4 = underline_nu(&s, 4);
    assert!(o3 < nu_n(&s, 7) && nu_n(&s, 7) < u4);
}

#[test]
fn centred_partition_is_all_coincidences() {
    let s = rat(0, 1);
    let part = partition(&s, nu_n(&s, 7));
    assert!(part.points.iter().all(|p| p.is_both()));
    for (i, p) in part.points.iter().take(3).enumerate() {
        let k = i as u64 + 1;
        assert_eq!(p.kind, PointKind::Both(k, k));
        assert!((p.nu - nu_n(&s, 2 * k)).abs() < 1e-12);
    }
}
