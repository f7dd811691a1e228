use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::real::BigReal;
use super::PrecisionContext;
use crate::arith::harmonic;
use crate::Rational;

static BERNOULLI: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// B₀ … B_upto as exact rationals (B₁ = −1/2), from
/// Σ_{k≤m} C(m+1, k)·B_k = 0. Results are cached across calls.
pub fn bernoulli_numbers(upto: usize) -> Vec<Rational> {
    let cache = BERNOULLI.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut b = cache.lock().expect("bernoulli cache");
    while b.len() <= upto {
        let m = b.len();
        if m > 1 && m % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        // binomials C(m+1, k) for k = 0..m
        let mut binom = BigInt::from(1);
        let mut sum = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                sum += &(bk * &Rational::from(num_rational::BigRational::from_integer(binom.clone())));
            }
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let next = -(&sum / &Rational::integer((m + 1) as i64));
        b.push(next);
    }
    b[..=upto].to_vec()
}

/// Euler's constant by the Brent–McMillan formula
///
/// ```text
/// γ ≈ U/V,  U = Σ_{k≤K} (nᵏ/k!)²·(H_k − ln n),  V = Σ_{k≤K} (nᵏ/k!)²
/// ```
///
/// with |γ − U/V| < π·e^(−4n) once K ≥ 3.6n.
pub fn euler_gamma(ctx: &PrecisionContext) -> BigReal {
    let wp = ctx.wp() + 16;
    let n = ((wp as f64 + 4.0) * std::f64::consts::LN_2 / 4.0).ceil() as u64 + 1;
    let k_max = 4 * n + 8;
    let n2 = BigReal::from_u64(n * n);
    let ln_n = BigReal::from_u64(n).ln(wp);
    let mut a = ln_n.neg();
    let mut b = BigReal::one();
    let mut u = a.clone();
    let mut v = b.clone();
    for k in 1..=k_max {
        let kk = BigReal::from_u64(k);
        b = b.mul(&n2, wp).div(&kk.mul(&kk, wp), wp);
        a = a.mul(&n2, wp).div(&kk, wp).add(&b, wp).div(&kk, wp);
        u = u.add(&a, wp);
        v = v.add(&b, wp);
    }
    // the terms past K shrink by n²/k² ≤ 1/16 each step
    let tail = 2.0 * (a.magnitude() + b.magnitude() * 2.0) / v.lower_abs();
    let trunc = std::f64::consts::PI * (-4.0 * n as f64).exp();
    u.div(&v, wp).widen(tail + trunc)
}

/// Generalized harmonic number H_n^(k) = Σ_{m≤n} m^(−k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicTable {
    pub n: u64,
    pub k: u32,
    pub value: Rational,
}

pub fn harmonic_table(n: u64, k: u32) -> HarmonicTable {
    HarmonicTable { n, k, value: harmonic(n, k) }
}
