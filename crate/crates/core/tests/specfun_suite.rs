mod support;

use diracdot::specfun::{bessel_j, bessel_y, evaluate, hankel, BesselFamily, FunctionKind, HankelKind, SpecFunError};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use support::{oracle, specfun_checks};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn assert_passed(name: &str, out: specfun_checks::CheckOutcome) {
    assert!(out.passed(), "{name}: {} checked, worst {:e}, violations {:#?}", out.checked, out.worst, out.violations);
}

#[test]
fn wronskian_on_real_axis() {
    assert_passed("wronskian", specfun_checks::wronskian());
}

#[test]
fn recurrence_residuals() {
    assert_passed("recurrence", specfun_checks::recurrence(500, 11));
}

#[test]
fn reflection_is_exact() {
    assert_passed("reflection", specfun_checks::reflection(500, 12));
}

#[test]
fn thousand_points_match_the_oracle() {
    assert_passed("oracle", specfun_checks::oracle_equivalence(1000, 13));
}

#[test]
fn hankel_matches_j_and_y() {
    assert_passed("hankel", specfun_checks::hankel_consistency(300, 14));
}

#[test]
fn first_zero_of_j2() {
    let zero = oracle::bessel_j_zero(2, 5.0, 5.3);
    assert!((zero - 5.135_622_301_840_683).abs() < 1e-12);
    assert!(bessel_j(2, c(5.135622, 0.0)).unwrap().norm() < 1e-6);
    assert!(bessel_j(2, c(zero, 0.0)).unwrap().norm() < 1e-14);
}

#[test]
fn j0_on_imaginary_axis_is_i0() {
    let reference = oracle::bessel_j(0, c(0.0, 1.0));
    let got = bessel_j(0, c(0.0, 1.0)).unwrap();
    assert!((got - reference.value).norm() < 1e-15);
    assert!((got.re - 1.266_065_877_752_008_4).abs() < 1e-15);
}

#[test]
fn y2_at_three_matches_oracle() {
    let reference = oracle::bessel_y(2, c(3.0, 0.0));
    let got = bessel_y(2, c(3.0, 0.0)).unwrap();
    assert!((got - reference.value).norm() <= 1e-12 * reference.value.norm());
}

#[test]
fn hankel_decays_up_the_imaginary_axis() {
    let up = hankel(HankelKind::First, 0, c(0.0, 3.0)).unwrap();
    let real = hankel(HankelKind::First, 0, c(3.0, 0.0)).unwrap();
    assert!(up.norm() < real.norm());
    // H0^(1)(3i) = (2/(pi i)) K0(3)
    let reference = 2.0 / (PI * Complex64::i()) * 0.034_739_504_386_279_99;
    assert!((up - reference).norm() < 1e-10 * reference.norm());
}

#[test]
fn hankel_is_definition_at_one() {
    let h = hankel(HankelKind::First, 0, c(1.0, 0.0)).unwrap();
    let j = bessel_j(0, c(1.0, 0.0)).unwrap();
    let y = bessel_y(0, c(1.0, 0.0)).unwrap();
    assert_eq!(h, j + Complex64::i() * y);
}

#[test]
fn hankel_matches_leading_asymptotics_far_out() {
    for &x in &[50.0, 75.0, 100.0] {
        for n in [0, 1, 5] {
            let h = hankel(HankelKind::First, n, c(x, 0.0)).unwrap();
            let phase = x - n as f64 * PI / 2.0 - PI / 4.0;
            let lead = (2.0 / (PI * x)).sqrt() * Complex64::from_polar(1.0, phase);
            let rel = (h - lead).norm() / h.norm();
            // leading term only: error is O(n^2 / x)
            assert!(rel <= 1e-6 + (4.0 * (n * n) as f64 + 1.0) / (8.0 * x), "n={n} x={x}: {rel:e}");
        }
    }
}

#[test]
fn y_is_singular_at_origin() {
    assert_eq!(bessel_y(0, c(0.0, 0.0)), Err(SpecFunError::SingularArgument));
    let tiny = bessel_y(0, c(1e-300, 0.0)).unwrap();
    assert!(tiny.re < -400.0);
}

#[test]
fn evaluate_dispatches_each_family() {
    let z = c(2.5, -0.75);
    for family in [BesselFamily::J, BesselFamily::Y, BesselFamily::H1, BesselFamily::H2] {
        let got = evaluate(FunctionKind { family, order: -3 }, z).unwrap();
        let want = match family {
            BesselFamily::J => bessel_j(-3, z),
            BesselFamily::Y => bessel_y(-3, z),
            BesselFamily::H1 => hankel(HankelKind::First, -3, z),
            BesselFamily::H2 => hankel(HankelKind::Second, -3, z),
        }
        .unwrap();
        assert_eq!(got, want);
    }
}

#[test]
fn large_real_arguments_stay_accurate() {
    // Values used by the high-energy phase limit.
    for &x in &[500.0, 1000.0, 1004.0] {
        let z = c(x, 0.0);
        for n in 0..4 {
            let jn = bessel_j(n, z).unwrap().re;
            let jn1 = bessel_j(n + 1, z).unwrap().re;
            let yn = bessel_y(n, z).unwrap().re;
            let yn1 = bessel_y(n + 1, z).unwrap().re;
            assert!((jn1 * yn - jn * yn1 - 2.0 / (PI * x)).abs() < 1e-15);
        }
    }
}

proptest! {
    #[test]
    fn conjugation_symmetry(re in -60.0f64..60.0, im in 0.01f64..30.0, n in -12i32..=12) {
        let z = c(re, im);
        let a = bessel_j(n, z).unwrap();
        let b = bessel_j(n, z.conj()).unwrap();
        prop_assert!((a.conj() - b).norm() <= 1e-13 * a.norm().max(1e-300));
    }

    #[test]
    fn j_is_odd_or_even(re in 0.01f64..80.0, im in -20.0f64..20.0, n in 0i32..=12) {
        let z = c(re, im);
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        let a = bessel_j(n, z).unwrap();
        let b = bessel_j(n, -z).unwrap();
        prop_assert!((s * a - b).norm() <= 1e-13 * a.norm().max(1e-300));
    }

    #[test]
    fn outputs_are_finite_in_range(r in 1e-6f64..100.0, theta in -3.1f64..3.1, n in -12i32..=12) {
        let z = Complex64::from_polar(r, theta);
        prop_assert!(bessel_j(n, z).unwrap().is_finite());
        prop_assert!(bessel_y(n, z).map(|v| v.is_finite()).unwrap_or(true));
    }
}
