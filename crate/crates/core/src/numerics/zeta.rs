use num_bigint::BigInt;

use super::constants::bernoulli_numbers;
use super::real::{bigint_to_float, BigReal};
use super::PrecisionContext;
use crate::arith::{mobius, prime_stream, thue_morse_sign};
use crate::catalog::CharacterTable;
use crate::error::{Error, Result};
use crate::Rational;

/// Largest number of terms a direct sum may use.
const DIRECT_LIMIT: u64 = 192;

/// `s` as an exact small integer, when it is one.
fn exact_integer(s: &BigReal) -> Option<i64> {
    if s.err() == 0.0 && s.value().is_int() {
        let f = s.to_f64();
        if f.abs() <= 100_000.0 {
            return Some(f as i64);
        }
    }
    None
}

/// base^(−s) for a positive rational base.
pub(crate) fn rational_pow_neg(base: &Rational, s: &BigReal, p: usize) -> BigReal {
    if base.is_one() {
        return BigReal::one();
    }
    match exact_integer(s) {
        Some(k) if k.unsigned_abs() <= 4096 => BigReal::from_rational(&base.pow(-(k as i32)), p),
        _ => BigReal::from_rational(base, p + 16).powr(&s.neg(), p),
    }
}

/// n^(−s).
pub(crate) fn pow_neg(n: u64, s: &BigReal, p: usize) -> BigReal {
    if n == 1 {
        return BigReal::one();
    }
    match exact_integer(s) {
        Some(k) if (1..=4096).contains(&k) => {
            let d: BigInt = BigInt::from(n).pow(k as u32);
            BigReal::exact(bigint_to_float(&d, p)).recip(p)
        }
        _ => BigReal::from_u64(n).powr(&s.neg(), p),
    }
}

/// Lower bound on the real enclosed by `s`.
fn lower(s: &BigReal) -> f64 {
    s.to_f64() - s.err() - f64::EPSILON * s.to_f64().abs()
}

/// Smallest N ≤ `DIRECT_LIMIT` with N^(1−s)/(s−1) ≤ 2^(−wp), if any.
fn direct_terms(s_lo: f64, wp: usize) -> Option<u64> {
    if s_lo <= 1.0 {
        return None;
    }
    let need = (wp as f64 + 2.0 - (s_lo - 1.0).log2().min(0.0)) / (s_lo - 1.0);
    if need > (DIRECT_LIMIT as f64).log2() {
        return None;
    }
    Some((2f64.powf(need).ceil() as u64).max(2))
}

/// Σ n^(−s) tail beyond N, bounded by the integral.
fn integral_tail(n: u64, s_lo: f64) -> f64 {
    ((1.0 - s_lo) * (n as f64).ln()).exp() / (s_lo - 1.0)
}

fn check_positive(s: &BigReal) -> Result<()> {
    if lower(s) <= 0.0 {
        return Err(Error::Unsupported(format!("argument {} is not positive", s.to_decimal(12))));
    }
    Ok(())
}

fn check_above_one(s: &BigReal, what: &str) -> Result<()> {
    let gap = s.add_i64(-1, s.value().precision().unwrap_or(64).max(64) + 64);
    if gap.is_negative() || gap.certain_sign().is_none() {
        return Err(Error::OutOfDomain(format!("{what} needs s > 1, got {}", s.to_decimal(12))));
    }
    Ok(())
}

/// Σ_{k≥0} (−1)ᵏ a_k by the Cohen–Rodriguez Villegas–Zagier scheme.
///
/// Valid when a_k are the moments of a positive measure on [0, 1] (true for
/// a_k = (αk+β)^(−s) with s > 0); the truncation error is then at most
/// 2·a₀/(3+√8)ⁿ.
fn alternating_sum(a: impl Fn(u64) -> BigReal, wp: usize) -> BigReal {
    let n = ((wp as f64 + 6.0) / (3.0 + 8f64.sqrt()).log2()).ceil() as u64 + 1;
    let p = wp + 16;
    // d = Tₙ(3), the Chebyshev value, an exact integer
    let (mut t0, mut t1) = (BigInt::from(1), BigInt::from(3));
    for _ in 1..n {
        let t2 = &t1 * 6 - &t0;
        t0 = t1;
        t1 = t2;
    }
    let d = BigReal::exact(bigint_to_float(&t1, p));
    let mut b = BigReal::from_i64(-1);
    let mut c = d.neg();
    let mut sum = BigReal::zero();
    let mut a0 = 0.0;
    for k in 0..n {
        c = b.sub(&c, p);
        let ak = a(k);
        if k == 0 {
            a0 = ak.upper_abs();
        }
        sum = sum.add(&c.mul(&ak, p), p);
        let (ki, ni) = (k as i64, n as i64);
        b = b.mul_i64(2 * (ki + ni) * (ki - ni), p).div(&BigReal::from_i64((2 * ki + 1) * (ki + 1)), p);
    }
    let trunc = 2.0 * a0 / (3.0 + 8f64.sqrt()).powf(n as f64);
    sum.div(&d, p).widen(trunc)
}

/// Riemann ζ(s) for real s > 0, s ≠ 1.
///
/// Large s: direct sum with the integral tail bound. Otherwise
/// ζ(s) = η(s)/(1 − 2^(1−s)), with η accelerated; near the pole the
/// working precision grows by −log₂|s−1| bits to absorb the cancellation
/// in the denominator.
pub fn zeta_real(s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_positive(s)?;
    let wp = ctx.wp();
    let s_minus_1 = s.add_i64(-1, wp + 64);
    if s_minus_1.certain_sign().is_none() {
        return Err(Error::PoleAt1);
    }
    Ok(zeta_unchecked(s, &s_minus_1, wp))
}

fn zeta_unchecked(s: &BigReal, s_minus_1: &BigReal, wp: usize) -> BigReal {
    let s_lo = lower(s);
    if let Some(n) = direct_terms(s_lo, wp) {
        let mut sum = BigReal::zero();
        for k in (1..=n).rev() {
            sum = sum.add(&pow_neg(k, s, wp), wp);
        }
        return sum.widen(integral_tail(n, s_lo));
    }
    let gap = s_minus_1.to_f64().abs();
    let extra = if gap < 1.0 { (-gap.log2()).ceil() as usize } else { 0 } + 8;
    let wl = wp + extra;
    let eta = eta_unchecked(s, wl);
    let ln2 = BigReal::ln2(wl);
    let two_pow = s_minus_1.neg().mul(&ln2, wl).exp(wl);
    let denom = BigReal::one().sub(&two_pow, wl);
    eta.div(&denom, wp)
}

fn eta_unchecked(s: &BigReal, wp: usize) -> BigReal {
    let s_lo = lower(s);
    let direct = ((wp as f64 + 2.0) / s_lo).exp2();
    if direct <= DIRECT_LIMIT as f64 {
        let n = direct.ceil() as u64;
        let mut sum = BigReal::zero();
        for k in (1..=n).rev() {
            let t = pow_neg(k, s, wp);
            sum = if k % 2 == 1 { sum.add(&t, wp) } else { sum.sub(&t, wp) };
        }
        // alternating tail is below the first omitted term
        return sum.widen(((n + 1) as f64).powf(-s_lo));
    }
    alternating_sum(|k| pow_neg(k + 1, s, wp + 8), wp)
}

/// Dirichlet η(s) = Σ (−1)^(n−1) n^(−s), s > 0.
pub fn eta_real(s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_positive(s)?;
    Ok(eta_unchecked(s, ctx.wp()))
}

/// Dirichlet λ(s) = Σ (2n+1)^(−s) = (1 − 2^(−s))·ζ(s), s > 1.
pub fn dirichlet_lambda_real(s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_above_one(s, "dirichlet lambda")?;
    let wp = ctx.wp();
    let z = zeta_real(s, ctx)?;
    let factor = BigReal::one().sub(&pow_neg(2, s, wp), wp);
    Ok(z.mul(&factor, wp))
}

/// Dirichlet β(s) = Σ (−1)ⁿ (2n+1)^(−s), s > 0.
pub fn beta_real(s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_positive(s)?;
    let wp = ctx.wp();
    let s_lo = lower(s);
    let direct = ((wp as f64 + 2.0) / s_lo).exp2() / 2.0;
    if direct <= DIRECT_LIMIT as f64 {
        let n = direct.ceil() as u64;
        let mut sum = BigReal::zero();
        for k in (0..=n).rev() {
            let t = pow_neg(2 * k + 1, s, wp);
            sum = if k % 2 == 0 { sum.add(&t, wp) } else { sum.sub(&t, wp) };
        }
        return Ok(sum.widen(((2 * n + 3) as f64).powf(-s_lo)));
    }
    Ok(alternating_sum(|k| pow_neg(2 * k + 1, s, wp + 8), wp))
}

/// Hurwitz ζ(s, q) = Σ_{n≥0} (q+n)^(−s) for s > 1, q > 0.
pub fn hurwitz_zeta_real(s: &BigReal, q: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    check_above_one(s, "hurwitz zeta")?;
    if !q.is_positive() {
        return Err(Error::OutOfDomain(format!("hurwitz shift {q} must be positive")));
    }
    Ok(hurwitz_unchecked(s, q, ctx.wp()))
}

fn hurwitz_unchecked(s: &BigReal, q: &Rational, wp: usize) -> BigReal {
    let s_lo = lower(s);
    let qf = q.to_f64();
    // direct summation when the terms die off fast enough
    let span = ((wp as f64 + 2.0 - (s_lo - 1.0).log2().min(0.0)) / (s_lo - 1.0)).exp2();
    if span <= DIRECT_LIMIT as f64 {
        let n = span.ceil() as u64 + 1;
        let mut sum = BigReal::zero();
        for k in (0..n).rev() {
            sum = sum.add(&rational_pow_neg(&(q + &Rational::integer(k as i64)), s, wp), wp);
        }
        // Σ_{k≥n} (q+k)^(−s) ≤ (q+n−1)^(1−s)/(s−1)
        let tail = ((1.0 - s_lo) * (qf + n as f64 - 1.0).ln()).exp() / (s_lo - 1.0);
        return sum.widen(tail);
    }
    euler_maclaurin(s, q, wp)
}

/// Euler–Maclaurin summation for ζ(s, q) with the rigorous remainder
///
/// ```text
/// |R| ≤ 4·(s)_{2M}/(2π)^{2M} · (q+N)^(−s−2M+1)/(s+2M−1)
/// ```
fn euler_maclaurin(s: &BigReal, q: &Rational, wp: usize) -> BigReal {
    let p = wp + 16;
    let sf = s.to_f64();
    let qf = q.to_f64();
    let m = wp / 6 + 4;
    let log_bound = |n: u64| -> f64 {
        let x = qf + n as f64;
        let rising: f64 = (0..2 * m).map(|i| (sf + i as f64).ln()).sum();
        4f64.ln() + rising - (2 * m) as f64 * (2.0 * std::f64::consts::PI).ln() + (1.0 - sf - (2 * m) as f64) * x.ln()
            - (sf + (2 * m) as f64 - 1.0).ln()
    };
    let target = -(wp as f64) * std::f64::consts::LN_2 - sf * qf.ln().max(0.0);
    let mut n = (m as u64).max(8);
    while log_bound(n) > target && n < 1 << 20 {
        n *= 2;
    }
    let mut sum = BigReal::zero();
    for k in (0..n).rev() {
        sum = sum.add(&rational_pow_neg(&(q + &Rational::integer(k as i64)), s, p), p);
    }
    let x_rat = q + &Rational::integer(n as i64);
    let x = BigReal::from_rational(&x_rat, p);
    let x_neg_s = rational_pow_neg(&x_rat, s, p);
    let s_minus_1 = s.add_i64(-1, p);
    sum = sum.add(&x_neg_s.mul(&x, p).div(&s_minus_1, p), p);
    sum = sum.add(&x_neg_s.div(&BigReal::from_i64(2), p), p);
    let bern = bernoulli_numbers(2 * m);
    let x2 = x.mul(&x, p);
    let mut rising = s.clone();
    let mut xpow = x_neg_s.div(&x, p);
    let mut fact = Rational::one();
    for j in 1..=m {
        let two_j = 2 * j as i64;
        fact = &fact * &Rational::integer((two_j - 1) * two_j);
        let coeff = BigReal::from_rational(&(&bern[2 * j] / &fact), p);
        sum = sum.add(&coeff.mul(&rising, p).mul(&xpow, p), p);
        rising = rising.mul(&s.add_i64(two_j - 1, p), p).mul(&s.add_i64(two_j, p), p);
        xpow = xpow.div(&x2, p);
    }
    sum.widen(log_bound(n).exp())
}

/// L(s, χ) = Σ χ(n)·n^(−s) for s > 1, via the Hurwitz decomposition
/// L = m^(−s)·Σ_r χ(r)·ζ(s, r/m) unless a direct sum is cheaper.
pub fn l_char_real(chi: &CharacterTable, s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_above_one(s, "dirichlet L-function")?;
    let wp = ctx.wp();
    let s_lo = lower(s);
    if let Some(n) = direct_terms(s_lo, wp) {
        let mut sum = BigReal::zero();
        for k in (1..=n).rev() {
            match chi.value(k) {
                0 => {}
                v if v > 0 => sum = sum.add(&pow_neg(k, s, wp), wp),
                _ => sum = sum.sub(&pow_neg(k, s, wp), wp),
            }
        }
        return Ok(sum.widen(integral_tail(n, s_lo)));
    }
    let m = chi.modulus;
    let mut sum = BigReal::zero();
    for r in 1..=m {
        let v = chi.value(r);
        if v == 0 {
            continue;
        }
        let h = hurwitz_unchecked(s, &Rational::new(r as i64, m as i64), wp + 8);
        sum = if v > 0 { sum.add(&h, wp + 8) } else { sum.sub(&h, wp + 8) };
    }
    Ok(sum.mul(&pow_neg(m, s, wp + 8), wp))
}

/// Prime zeta P(s) = Σ_p p^(−s) for s > 1.
///
/// Direct summation over primes for large s, otherwise
/// P(s) = Σ_k μ(k)/k · ln ζ(ks) truncated where the remaining terms are
/// below 3·2^(−ks).
pub fn prime_zeta_real(s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_above_one(s, "prime zeta")?;
    let wp = ctx.wp();
    let s_lo = lower(s);
    if let Some(n) = direct_terms(s_lo, wp) {
        let mut sum = BigReal::zero();
        let primes: Vec<u64> = prime_stream().take_while(|&p| p <= n).collect();
        for &p in primes.iter().rev() {
            sum = sum.add(&pow_neg(p, s, wp), wp);
        }
        return Ok(sum.widen(integral_tail(n, s_lo)));
    }
    let k_max = ((wp as f64 + 8.0) / s_lo).ceil() as u64 + 1;
    let mut sum = BigReal::zero();
    for k in 1..=k_max {
        let mu = mobius(k);
        if mu == 0 {
            continue;
        }
        let ks = s.mul_i64(k as i64, wp + 8);
        let ks_minus_1 = ks.add_i64(-1, wp + 64);
        let term = zeta_unchecked(&ks, &ks_minus_1, wp + 8).ln(wp + 8).div(&BigReal::from_u64(k), wp + 8);
        sum = if mu > 0 { sum.add(&term, wp + 8) } else { sum.sub(&term, wp + 8) };
    }
    let t = (k_max + 1) as f64 * s_lo;
    let tail = 3.0 * (-t * std::f64::consts::LN_2).exp() / (1.0 - (-s_lo * std::f64::consts::LN_2).exp());
    Ok(sum.widen(tail))
}

/// The two Thue–Morse Dirichlet series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThueMorseVariant {
    /// Υ(s) = Σ_{n∈A} n^(−s) − Σ_{m∈B} m^(−s), all ranks.
    Upsilon,
    /// Ξ(s) = 2^(−s) + the same sum restricted to ranks > 2.
    Xi,
}

/// Υ(s) or Ξ(s) for s > 1 by direct summation.
///
/// Consecutive ranks (2k+1, 2k+2) always carry opposite letters, so the
/// tail after an even N is at most s·(N+1)^(−s−1) + (N+1)^(−s)/2. For s
/// close to 1 that tail can exceed the context tolerance; the reported
/// error says so honestly.
pub fn thue_morse_series_real(variant: ThueMorseVariant, s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_above_one(s, "thue-morse series")?;
    let wp = ctx.wp();
    let s_lo = lower(s);
    let tail_at = |n: u64| {
        let x = (n + 1) as f64;
        s_lo * (-(s_lo + 1.0) * x.ln()).exp() + 0.5 * (-s_lo * x.ln()).exp()
    };
    let goal = (-(wp as f64) * std::f64::consts::LN_2).exp();
    let mut n = 2u64;
    while tail_at(n) > goal && n < 20 * DIRECT_LIMIT {
        n *= 2;
    }
    let mut sum = BigReal::zero();
    for k in (1..=n).rev() {
        if variant == ThueMorseVariant::Xi && k <= 2 {
            if k == 2 {
                sum = sum.add(&pow_neg(2, s, wp), wp);
            }
            continue;
        }
        let t = pow_neg(k, s, wp);
        sum = if thue_morse_sign(k) > 0 { sum.add(&t, wp) } else { sum.sub(&t, wp) };
    }
    Ok(sum.widen(tail_at(n)))
}
