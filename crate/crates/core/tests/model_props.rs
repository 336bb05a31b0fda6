use diracdot::model::{
    bound_function, channel, classify, from_natural_units, high_energy_tangent, phase_components, phase_shift_raw,
    radial_spinor, relative_residual, to_natural_units, Branch, Classification, DotParams, ModelError, NaturalValues,
    OuterCoefficients, PhysicalConstants, PhysicalValues, StateKind,
};
use diracdot::rootfind::{bracket_roots, refine_root};
use diracdot::scans::{bound_levels, capture_depths, find_resonances, SeedWindow};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn momentum_gaps(p: &DotParams, eps: Complex64, branch: Branch) -> (f64, f64) {
    let ch = channel(p, eps, branch).unwrap();
    let mu2 = p.mu * p.mu;
    let d = eps - p.v;
    let gi = (ch.p_i * ch.p_i - (d * d - mu2)).norm() / (1.0 + (d * d).norm());
    let go = (ch.p_o * ch.p_o - (eps * eps - mu2)).norm() / (1.0 + (eps * eps).norm());
    (gi, go)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn momenta_square_to_the_dispersion(
        mu in 0.0f64..4.0, v in -14.0f64..0.0, ell in 0i32..6,
        re in -15.0f64..15.0, im in -3.0f64..3.0,
    ) {
        let p = DotParams::new(mu, v, ell).unwrap();
        let eps = c(re, im);
        let branch = if re >= 0.0 { Branch::OutgoingRight } else { Branch::OutgoingLeft };
        let (gi, go) = momentum_gaps(&p, eps, branch);
        prop_assert!(gi < 1e-12 && go < 1e-12, "{gi:e} {go:e}");
    }

    #[test]
    fn real_branches_square_to_the_dispersion(mu in 0.1f64..4.0, v in -14.0f64..0.0, x in -0.999f64..0.999, y in 1.0f64..20.0) {
        let p = DotParams::new(mu, v, 1).unwrap();
        let (gi, go) = momentum_gaps(&p, c(x * mu, 0.0), Branch::BoundSearch);
        prop_assert!(gi < 1e-12 && go < 1e-12);
        let (gi, go) = momentum_gaps(&p, c(y * mu, 0.0), Branch::ScatteringReal);
        prop_assert!(gi < 1e-12 && go < 1e-12);
        let p_o = channel(&p, c(x * mu, 0.0), Branch::BoundSearch).unwrap().p_o;
        prop_assert!(p_o.im > 0.0 && p_o.re == 0.0);
    }

    #[test]
    fn bound_levels_sit_in_the_window(v in -14.0f64..-0.5, ell in 0i32..4) {
        let p = DotParams::new(2.0, v, ell).unwrap();
        for e in bound_levels(&p, 600).unwrap() {
            prop_assert!(e > -2.0 && e < 2.0);
            prop_assert_eq!(classify(2.0, c(e, 0.0)), Classification::Bound);
            prop_assert!(relative_residual(&p, c(e, 0.0), Branch::BoundSearch).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn bound_spinor_is_continuous(v in -14.0f64..-1.0, ell in 0i32..3) {
        let p = DotParams::new(2.0, v, ell).unwrap();
        for e in bound_levels(&p, 600).unwrap() {
            let eps = c(e, 0.0);
            let lo = radial_spinor(&p, eps, 1.0 - 1e-12, StateKind::Bound).unwrap();
            let hi = radial_spinor(&p, eps, 1.0 + 1e-12, StateKind::Bound).unwrap();
            let scale = 1.0 + lo.phi1.norm().max(lo.phi2.norm());
            prop_assert!((lo.phi1 - hi.phi1).norm() <= 1e-8 * scale);
            prop_assert!((lo.phi2 - hi.phi2).norm() <= 1e-8 * scale);
        }
    }

    #[test]
    fn scattering_spinor_is_continuous(mu in 0.0f64..3.0, v in -10.0f64..-0.5, ell in 0i32..4, de in 0.05f64..20.0) {
        let p = DotParams::new(mu, v, ell).unwrap();
        let eps = c(mu + de, 0.0);
        let lo = radial_spinor(&p, eps, 1.0 - 1e-13, StateKind::Scattering).unwrap();
        let hi = radial_spinor(&p, eps, 1.0 + 1e-13, StateKind::Scattering).unwrap();
        let scale = 1.0 + lo.phi1.norm().max(lo.phi2.norm());
        prop_assert!((lo.phi1 - hi.phi1).norm() <= 1e-8 * scale);
        prop_assert!((lo.phi2 - hi.phi2).norm() <= 1e-8 * scale);
    }

    #[test]
    fn raw_phase_is_principal(mu in 0.0f64..3.0, v in -10.0f64..-0.1, ell in 0i32..4, de in 0.05f64..50.0) {
        let p = DotParams::new(mu, v, ell).unwrap();
        match phase_shift_raw(&p, mu + de) {
            Ok(d) => prop_assert!(d > -std::f64::consts::FRAC_PI_2 && d <= std::f64::consts::FRAC_PI_2),
            Err(ModelError::IndeterminatePhase { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn unit_conversion_round_trips(
        e in -1e3f64..1e3, w in -1e3f64..1e3, m in 0.0f64..1e3,
        r in 1e-3f64..1e3, vf in 1e-3f64..1e3, h in 1e-3f64..1e3,
    ) {
        let k = PhysicalConstants::new(r, vf, h).unwrap();
        let x = PhysicalValues { energy: e, well_depth: w, mass: m };
        let back = from_natural_units(to_natural_units(x, k).unwrap(), k).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300);
        prop_assert!(close(back.energy, e) && close(back.well_depth, w) && close(back.mass, m));
    }
}

#[test]
fn unit_conversion_scaling() {
    let one = PhysicalConstants::new(1.0, 1.0, 1.0).unwrap();
    let x = PhysicalValues { energy: 1.5, well_depth: -2.0, mass: 0.25 };
    assert_eq!(to_natural_units(x, one).unwrap(), NaturalValues { eps: 1.5, v: -2.0, mu: 0.25 });
    let two = PhysicalConstants::new(2.0, 1.0, 1.0).unwrap();
    assert_eq!(to_natural_units(x, two).unwrap(), NaturalValues { eps: 3.0, v: -4.0, mu: 0.5 });
    assert!(PhysicalConstants::new(0.0, 1.0, 1.0).is_err());
}

#[test]
fn massless_bound_states_have_zero_energy() {
    for (ell, v) in [(2, -5.135622301840682), (0, -2.404825557695773), (1, -3.831705970207512)] {
        let p = DotParams::new(0.0, v, ell).unwrap();
        let found = find_resonances(&p, &SeedWindow::for_params(&p)).unwrap();
        for r in found.iter().filter(|r| r.classification == Classification::Bound) {
            assert!(r.eps.norm() <= 1e-10, "{r:?}");
        }
        let s = radial_spinor(&p, c(0.0, 0.0), 1.0, StateKind::MasslessBound).unwrap();
        assert!(s.mismatch < 1e-8);
        assert!(matches!(s.outer, OuterCoefficients::MasslessPower { .. }));
    }
}

#[test]
fn capture_spinors_are_continuous() {
    for d in capture_depths(2.0, 2, 3).unwrap() {
        let p = DotParams::new(2.0, d.v, 2).unwrap();
        let (kind, eps) = match d.kind {
            diracdot::model::DepthKind::Critical => (StateKind::Critical, c(2.0, 0.0)),
            _ => (StateKind::Supercritical, c(-2.0, 0.0)),
        };
        let lo = radial_spinor(&p, eps, 1.0 - 1e-13, kind).unwrap();
        let hi = radial_spinor(&p, eps, 1.0 + 1e-13, kind).unwrap();
        assert!((lo.phi1 - hi.phi1).norm() <= 1e-8 && (lo.phi2 - hi.phi2).norm() <= 1e-8, "{d:?}");
    }
    assert!(matches!(
        radial_spinor(&DotParams::new(2.0, -3.0, 2).unwrap(), c(2.0, 0.0), 0.5, StateKind::Critical),
        Err(ModelError::Match { .. })
    ));
}

#[test]
fn resonance_spinor_is_continuous() {
    let p = DotParams::new(2.0, -1.0, 2).unwrap();
    let r = find_resonances(&p, &SeedWindow::for_params(&p)).unwrap();
    let lead = r.iter().find(|r| r.classification == Classification::Resonance && r.eps.re > 2.0).unwrap();
    let s = radial_spinor(&p, lead.eps, 1.0, StateKind::Resonance).unwrap();
    assert!(s.mismatch < 1e-8, "{}", s.mismatch);
}

#[test]
fn numerator_zero_means_pure_j_wave() {
    let mut checked = 0;
    for (mu, v, ell) in [(2.0, -3.5, 2), (2.0, -2.0, 0), (2.0, -6.0, 1), (0.0, -4.0, 2), (0.0, -8.0, 0)] {
        let p = DotParams::new(mu, v, ell).unwrap();
        let num = |e: f64| phase_components(&p, e).map(|(n, _)| n);
        for b in bracket_roots(num, mu + 0.05, mu + 15.0, 600).unwrap() {
            checked += 1;
            let e = refine_root(num, b, 1e-14).unwrap();
            let s = radial_spinor(&p, c(e, 0.0), 1.5, StateKind::Scattering).unwrap();
            let OuterCoefficients::Scattering { a, b } = s.outer else { panic!("scattering coefficients") };
            assert!(b.norm() < 1e-9 * a.norm().max(1.0), "eps = {e}: A = {a}, B = {b}");
        }
    }
    assert!(checked >= 3, "only {checked} numerator zeros");
}

#[test]
fn high_energy_tangent_limit_improves() {
    for mu in [0.0, 2.0] {
        for ell in [0, 2] {
            for v in [-1.0, -2.0, -3.5] {
                let p = DotParams::new(mu, v, ell).unwrap();
                let gap = |e: f64| (phase_shift_raw(&p, e).unwrap().tan() - high_energy_tangent(v)).abs();
                assert!(gap(1000.0) < gap(100.0), "mu={mu} ell={ell} v={v}: {} vs {}", gap(1000.0), gap(100.0));
            }
        }
    }
}

#[test]
fn bound_function_changes_sign_at_levels() {
    let p = DotParams::new(2.0, -3.0, 0).unwrap();
    let levels = bound_levels(&p, 2000).unwrap();
    assert!(!levels.is_empty());
    for e in levels {
        let a = bound_function(&p, e - 1e-6).unwrap();
        let b = bound_function(&p, e + 1e-6).unwrap();
        assert!(a * b <= 0.0);
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(DotParams::new(-1.0, 0.0, 0), Err(ModelError::InvalidParameters(_))));
    assert!(matches!(DotParams::new(2.0, f64::NAN, 0), Err(ModelError::InvalidParameters(_))));
    assert!(matches!(DotParams::new(2.0, -1.0, -1), Err(ModelError::InvalidParameters(_))));
    assert!(DotParams::new(0.0, -1.0, -3).is_ok());
    let p = DotParams::new(2.0, -1.0, 0).unwrap();
    assert!(matches!(phase_components(&p, 1.0), Err(ModelError::Domain(_))));
    assert!(matches!(channel(&p, c(3.0, 0.0), Branch::BoundSearch), Err(ModelError::Branch(_))));
}
