//! Arbitrary-precision ascending-series oracle for integer-order Bessel functions.
//!
//! Values are carried as complex fixed-point numbers (`BigInt` mantissas scaled by
//! `2^-bits`). The input argument is an `f64` pair, which is a dyadic rational and
//! converts exactly. Every series is summed until the remaining tail is provably
//! below one unit in the last fixed-point place, and each value is returned with a
//! bound on its absolute error.
//!
//! This module is deliberately independent of the library: it shares no code
//! with `diracdot::specfun`.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Clone, Debug)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

struct Ctx {
    bits: u64,
}

impl Ctx {
    fn for_argument(z: Complex64, order: u32) -> Self {
        // Terms peak near e^{|z|}; keep ~200 guard bits below the result scale.
        let bits = 256 + (2.0 * z.norm()) as u64 + 8 * order as u64;
        Ctx { bits }
    }

    fn zero(&self) -> Fixed {
        Fixed { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn from_f64(&self, x: f64) -> BigInt {
        if x == 0.0 {
            return BigInt::zero();
        }
        let bits = x.to_bits();
        let sign = if (bits >> 63) != 0 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let shift = e + self.bits as i64;
        let m = BigInt::from(mant) * sign;
        if shift >= 0 {
            m << (shift as usize)
        } else {
            m >> ((-shift) as usize)
        }
    }

    fn complex(&self, z: Complex64) -> Fixed {
        Fixed { re: self.from_f64(z.re), im: self.from_f64(z.im) }
    }

    fn one(&self) -> Fixed {
        Fixed { re: BigInt::one() << (self.bits as usize), im: BigInt::zero() }
    }

    fn mul(&self, a: &Fixed, b: &Fixed) -> Fixed {
        let re = (&a.re * &b.re - &a.im * &b.im) >> (self.bits as usize);
        let im = (&a.re * &b.im + &a.im * &b.re) >> (self.bits as usize);
        Fixed { re, im }
    }

    fn add(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed { re: &a.re + &b.re, im: &a.im + &b.im }
    }

    fn sub(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed { re: &a.re - &b.re, im: &a.im - &b.im }
    }

    fn scale_int(&self, a: &Fixed, k: i64) -> Fixed {
        Fixed { re: &a.re * k, im: &a.im * k }
    }

    fn div_int(&self, a: &Fixed, k: u64) -> Fixed {
        Fixed { re: &a.re / BigInt::from(k), im: &a.im / BigInt::from(k) }
    }

    fn mul_real(&self, a: &Fixed, r: &BigInt) -> Fixed {
        Fixed { re: (&a.re * r) >> (self.bits as usize), im: (&a.im * r) >> (self.bits as usize) }
    }

    /// `1/a` for nonzero `a`.
    fn recip(&self, a: &Fixed) -> Fixed {
        let norm = &a.re * &a.re + &a.im * &a.im;
        let shift = 2 * self.bits as usize;
        Fixed { re: (&a.re << shift) / &norm, im: -((&a.im << shift) / &norm) }
    }

    fn to_f64(&self, x: &BigInt) -> f64 {
        // Shift down so that the integer fits comfortably before converting.
        let len = x.bits() as i64;
        let keep = 80i64;
        let drop = (len - keep).max(0);
        let head = (x >> drop as usize).to_f64().unwrap_or(0.0);
        head * 2f64.powi((drop - self.bits as i64) as i32)
    }

    fn to_c64(&self, a: &Fixed) -> Complex64 {
        Complex64::new(self.to_f64(&a.re), self.to_f64(&a.im))
    }

    /// Crude magnitude bound in units of 2^-bits, as an f64 exponent-safe value.
    fn ulp(&self) -> f64 {
        2f64.powi(-(self.bits as i32))
    }
}

/// An oracle value with an absolute error bound.
#[derive(Clone, Copy, Debug)]
pub struct Enclosure {
    pub value: Complex64,
    pub abs_err: f64,
}

/// `(z/2)^n / n!` and the successive ratio `-z^2/4`.
fn leading_power(ctx: &Ctx, half_z: &Fixed, n: u32) -> Fixed {
    let mut acc = ctx.one();
    for k in 1..=n {
        acc = ctx.mul(&acc, half_z);
        acc = ctx.div_int(&acc, k as u64);
    }
    acc
}

fn magnitude_f64(ctx: &Ctx, a: &Fixed) -> f64 {
    ctx.to_c64(a).norm()
}

/// `J_n(z)` for `n >= 0` by its ascending series.
pub fn bessel_j(n: u32, z: Complex64) -> Enclosure {
    let ctx = Ctx::for_argument(z, n);
    let zz = ctx.complex(z);
    let half = ctx.div_int(&zz, 2);
    let q = {
        let sq = ctx.mul(&half, &half);
        Fixed { re: -sq.re, im: -sq.im }
    };
    let mut term = leading_power(&ctx, &half, n);
    let mut sum = term.clone();
    let qabs = z.norm_sqr() / 4.0;
    let mut k: u64 = 0;
    let mut ops = 0u64;
    loop {
        k += 1;
        term = ctx.mul(&term, &q);
        term = ctx.div_int(&term, k * (k + n as u64));
        sum = ctx.add(&sum, &term);
        ops += 3;
        let ratio = qabs / ((k + 1) as f64 * (k + 1 + n as u64) as f64);
        let tmag = magnitude_f64(&ctx, &term);
        if ratio < 0.5 && tmag < ctx.ulp() {
            break;
        }
    }
    // Tail below 2*|last term| < 2 ulp; each operation contributes at most ~2 ulp
    // amplified by the largest intermediate magnitude (bounded by e^{|z|}).
    let growth = (z.norm()).exp();
    let abs_err = (ops as f64 * 4.0 + 4.0) * ctx.ulp() * growth.max(1.0) + 4.0 * ctx.ulp();
    let value = ctx.to_c64(&sum);
    Enclosure { value, abs_err: abs_err + value.norm() * 4.0 * f64::EPSILON }
}

/// `Y_n(z)` for `n >= 0`, principal branch, by the ascending series
///
/// `Y_n = -(1/pi) (z/2)^{-n} sum_{k<n} (n-k-1)!/k! (z^2/4)^k
///        + (2/pi)(ln(z/2) + gamma) J_n
///        - (1/pi) (z/2)^n sum_k (H_k + H_{n+k}) (-z^2/4)^k / (k! (n+k)!)`.
pub fn bessel_y(n: u32, z: Complex64) -> Enclosure {
    assert!(z != Complex64::new(0.0, 0.0));
    let ctx = Ctx::for_argument(z, n);
    let zz = ctx.complex(z);
    let half = ctx.div_int(&zz, 2);
    let sq = ctx.mul(&half, &half);
    let q = Fixed { re: -sq.re.clone(), im: -sq.im.clone() };

    // Finite part (z/2)^{-n} sum_{k<n} (n-k-1)!/k! (z^2/4)^k, kept in fixed point
    // so it can cancel exactly against the harmonic series below.
    let mut finite = ctx.zero();
    if n > 0 {
        let mut fsum = ctx.zero();
        let mut pow = ctx.one();
        for k in 0..n {
            let mut num = BigInt::one();
            for j in 1..=(n - k - 1) {
                num *= j;
            }
            let mut den = BigInt::one();
            for j in 1..=k {
                den *= j;
            }
            let coeff = Fixed { re: &pow.re * &num / &den, im: &pow.im * &num / &den };
            fsum = ctx.add(&fsum, &coeff);
            pow = ctx.mul(&pow, &sq);
        }
        let inv_half = ctx.recip(&half);
        let mut inv_pow = ctx.one();
        for _ in 0..n {
            inv_pow = ctx.mul(&inv_pow, &inv_half);
        }
        finite = ctx.mul(&fsum, &inv_pow);
    }

    // Harmonic-number series.
    let one = ctx.one();
    let harmonic = |m: u64| -> BigInt {
        let mut h = BigInt::zero();
        for j in 1..=m {
            h += &one.re / BigInt::from(j);
        }
        h
    };
    let mut term = leading_power(&ctx, &half, n);
    let mut h_k = BigInt::zero();
    let mut h_nk = harmonic(n as u64);
    let mut series = ctx.mul_real(&term, &(&h_k + &h_nk));
    let qabs = z.norm_sqr() / 4.0;
    let mut k: u64 = 0;
    let mut ops = 0u64;
    loop {
        k += 1;
        term = ctx.mul(&term, &q);
        term = ctx.div_int(&term, k * (k + n as u64));
        h_k += &one.re / BigInt::from(k);
        h_nk += &one.re / BigInt::from(k + n as u64);
        let contrib = ctx.mul_real(&term, &(&h_k + &h_nk));
        series = ctx.add(&series, &contrib);
        ops += 5;
        let ratio = qabs / ((k + 1) as f64 * (k + 1 + n as u64) as f64);
        let cmag = magnitude_f64(&ctx, &contrib);
        if ratio < 0.25 && cmag < ctx.ulp() {
            break;
        }
    }
    let j = bessel_j(n, z);
    let algebraic = ctx.to_c64(&ctx.add(&finite, &series));
    let log_term = ((z / 2.0).ln() + EULER_GAMMA) * j.value;
    let pi = std::f64::consts::PI;
    let value = 2.0 / pi * log_term - algebraic / pi;

    // Fixed-point rounding is amplified at most by the largest intermediate,
    // which is below e^{|z|} times the size of the finite part's leading term.
    let mut growth = (z.norm()).exp().max(1.0);
    for j in 1..=n {
        growth *= j as f64 * (2.0 / z.norm()).max(1.0);
    }
    let fixed_err = (ops as f64 * 8.0 + 8.0 * n as f64 + 8.0) * ctx.ulp() * growth * (1.0 + k as f64);
    let combine_err = 8.0 * f64::EPSILON * (2.0 * log_term.norm() + algebraic.norm() + value.norm()) / pi;
    let abs_err = fixed_err + combine_err + 2.0 / pi * ((z / 2.0).ln() + EULER_GAMMA).norm() * j.abs_err;
    Enclosure { value, abs_err }
}

/// `J_n` for any integer order via `J_{-n} = (-1)^n J_n`.
pub fn bessel_j_int(n: i32, z: Complex64) -> Enclosure {
    let e = bessel_j(n.unsigned_abs(), z);
    if n < 0 && n % 2 != 0 {
        Enclosure { value: -e.value, abs_err: e.abs_err }
    } else {
        e
    }
}

/// `Y_n` for any integer order via `Y_{-n} = (-1)^n Y_n`.
pub fn bessel_y_int(n: i32, z: Complex64) -> Enclosure {
    let e = bessel_y(n.unsigned_abs(), z);
    if n < 0 && n % 2 != 0 {
        Enclosure { value: -e.value, abs_err: e.abs_err }
    } else {
        e
    }
}

/// Real zero of `J_n` in `[lo, hi]` by bisection on the oracle's sign.
///
/// The bracket must contain exactly one sign change.
pub fn bessel_j_zero(n: u32, lo: f64, hi: f64) -> f64 {
    let sign = |x: f64| bessel_j(n, Complex64::new(x, 0.0)).value.re.signum();
    let (mut a, mut b) = (lo, hi);
    let sa = sign(a);
    assert!(sa != sign(b), "no sign change in [{lo}, {hi}]");
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if sign(m) == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[allow(unused)]
fn is_negative(x: &BigInt) -> bool {
    x.is_negative()
}
