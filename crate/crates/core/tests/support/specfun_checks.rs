//! Property checks for the special-function layer, shared by the specfun suite and
//! the acceptance target. Each check returns the list of violations it found.

use diracdot::specfun::{bessel_j, bessel_y, hankel, HankelKind};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use super::oracle;

pub const REL_TOL: f64 = 1e-10;
pub const ABS_TOL: f64 = 1e-12;

#[derive(Debug, Default)]
pub struct CheckOutcome {
    pub checked: usize,
    pub worst: f64,
    pub violations: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.checked > 0
    }

    fn record(&mut self, ok: bool, score: f64, describe: impl FnOnce() -> String) {
        self.checked += 1;
        self.worst = self.worst.max(score);
        if !ok && self.violations.len() < 20 {
            self.violations.push(describe());
        }
    }
}

/// `|J_{n+1}(x) Y_n(x) - J_n(x) Y_{n+1}(x) - 2/(pi x)| <= 1e-10` on `[0.1, 50]`.
pub fn wronskian() -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for i in 0..=499 {
        let x = 0.1 + 49.9 * i as f64 / 499.0;
        let z = Complex64::new(x, 0.0);
        for n in 0..12 {
            let jn = bessel_j(n, z).unwrap();
            let jn1 = bessel_j(n + 1, z).unwrap();
            let yn = bessel_y(n, z).unwrap();
            let yn1 = bessel_y(n + 1, z).unwrap();
            let err = (jn1 * yn - jn * yn1 - 2.0 / (PI * x)).norm();
            out.record(err <= 1e-10, err, || format!("n={n} x={x}: {err:e}"));
        }
    }
    out
}

fn sample_point(rng: &mut ChaCha8Rng, max_radius: f64) -> Complex64 {
    // Mix of uniform and log-uniform radii so small arguments are well covered.
    let r = if rng.random::<bool>() {
        max_radius * rng.random::<f64>()
    } else {
        (rng.random::<f64>() * (max_radius.ln() - (1e-3f64).ln()) + (1e-3f64).ln()).exp()
    };
    let theta = match rng.random_range(0..8) {
        0 => 0.0,
        1 => PI / 2.0,
        _ => rng.random_range(-PI..PI),
    };
    Complex64::from_polar(r.max(1e-3), theta)
}

/// Three-term recurrence residual for `J` and `Y`, `n <= 10`, `|z| <= 50`, off the cut.
pub fn recurrence(samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CheckOutcome::default();
    while out.checked < 2 * samples {
        let z = sample_point(&mut rng, 50.0);
        if z.re < 0.0 && z.im.abs() < 1e-3 {
            continue;
        }
        let n = rng.random_range(1..=10);
        for (label, f) in [
            ("J", bessel_j as fn(i32, Complex64) -> Result<Complex64, diracdot::specfun::SpecFunError>),
            ("Y", bessel_y as fn(i32, Complex64) -> Result<Complex64, diracdot::specfun::SpecFunError>),
        ] {
            let a = f(n - 1, z).unwrap();
            let b = f(n, z).unwrap();
            let c = f(n + 1, z).unwrap();
            let res = (a + c - 2.0 * n as f64 / z * b).norm();
            let bound = 1e-9 * b.norm().max(1.0);
            out.record(res <= bound, res / bound * 1e-9, || format!("{label} n={n} z={z}: {res:e}"));
        }
    }
    out
}

/// `f(-n, z) == (-1)^n f(n, z)` bit for bit.
pub fn reflection(samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CheckOutcome::default();
    for _ in 0..samples {
        let z = sample_point(&mut rng, 100.0);
        let n = rng.random_range(0..=12);
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        let j_ok = bessel_j(-n, z).unwrap() == s * bessel_j(n, z).unwrap();
        let y_ok = bessel_y(-n, z).unwrap() == s * bessel_y(n, z).unwrap();
        out.record(j_ok && y_ok, 0.0, || format!("n={n} z={z}"));
    }
    out
}

fn compare(value: Complex64, reference: oracle::Enclosure) -> (bool, f64) {
    let diff = (value - reference.value).norm();
    let scale = reference.value.norm();
    let rel = if scale > 0.0 { diff / scale } else { f64::INFINITY };
    let ok = rel <= REL_TOL || diff <= ABS_TOL;
    (ok, rel.min(diff / ABS_TOL * REL_TOL))
}

/// Random `(n, z)` points against the arbitrary-precision series, `J` and `Y`.
pub fn oracle_equivalence(samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CheckOutcome::default();
    for _ in 0..samples {
        let z = sample_point(&mut rng, 100.0);
        let n: i32 = rng.random_range(-12..=12);
        let refj = oracle::bessel_j_int(n, z);
        let refy = oracle::bessel_y_int(n, z);
        // The oracle must be at least 100x tighter than the contract it enforces.
        assert!(refj.abs_err <= 1e-2 * ABS_TOL.max(REL_TOL * refj.value.norm()), "oracle J bound too loose at n={n} z={z}");
        assert!(refy.abs_err <= 1e-2 * ABS_TOL.max(REL_TOL * refy.value.norm()), "oracle Y bound too loose at n={n} z={z}");
        let (ok, score) = compare(bessel_j(n, z).unwrap(), refj);
        out.record(ok, score, || format!("J n={n} z={z}: score {score:e}"));
        let (ok, score) = compare(bessel_y(n, z).unwrap(), refy);
        out.record(ok, score, || format!("Y n={n} z={z}: score {score:e}"));
    }
    out
}

/// `H1 = J + iY`, `H2 = J - iY` on random points.
pub fn hankel_consistency(samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CheckOutcome::default();
    for _ in 0..samples {
        let z = sample_point(&mut rng, 100.0);
        let n: i32 = rng.random_range(-12..=12);
        let j = bessel_j(n, z).unwrap();
        let y = bessel_y(n, z).unwrap();
        let scale = j.norm() + y.norm();
        for (kind, want) in [(HankelKind::First, j + Complex64::i() * y), (HankelKind::Second, j - Complex64::i() * y)] {
            let got = hankel(kind, n, z).unwrap();
            let err = (got - want).norm() / scale;
            out.record(err <= 4.0 * REL_TOL, err, || format!("{kind:?} n={n} z={z}: {err:e}"));
        }
    }
    out
}
