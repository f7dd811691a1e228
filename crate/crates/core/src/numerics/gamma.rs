use serde::{Deserialize, Serialize};

use super::constants::{bernoulli_numbers, euler_gamma};
use super::real::BigReal;
use super::zeta::zeta_real;
use super::PrecisionContext;
use crate::arith::harmonic;
use crate::error::{Error, Result};
use crate::Rational;

/// ln|Γ(x)| together with the sign of Γ(x).
#[derive(Clone, Debug)]
pub struct LnGamma {
    pub ln_abs: BigReal,
    pub sign: i32,
}

/// ln|Γ(x)| for real x off the non-positive integers.
///
/// For x ≥ X₀ the Stirling series is summed until its terms fall below the
/// working precision; the first omitted term bounds the remainder. X₀ grows
/// with precision (the smallest Stirling term is about e^(−2πx)). Below X₀
/// the recurrence Γ(x) = Γ(x+m)/∏_{j<m}(x+j) shifts the argument up, and
/// the sign of the product gives the sign of Γ(x).
pub fn lngamma_real(x: &BigReal, ctx: &PrecisionContext) -> Result<LnGamma> {
    let wp = ctx.wp() + 16;
    let xf = x.to_f64();
    if xf <= 0.5 {
        let k = xf.round();
        if k <= 0.0 {
            let off = x.add_i64(-(k as i64), wp + 64);
            if off.certain_sign().is_none() {
                return Err(Error::PoleAtNonPositiveInteger(format!("{}", k as i64)));
            }
        }
    }
    let x0 = (0.12 * wp as f64 + 4.0).max(8.0);
    let shift = if xf < x0 { (x0 - xf).ceil() as i64 } else { 0 };
    let mut product = BigReal::one();
    for j in 0..shift {
        product = product.mul(&x.add_i64(j, wp + 64), wp);
    }
    let y = x.add_i64(shift, wp + 64);
    let sign = if shift == 0 {
        1
    } else {
        product
            .certain_sign()
            .ok_or_else(|| Error::PoleAtNonPositiveInteger(x.to_decimal(20)))?
    };
    let mut ln_abs = stirling(&y, wp);
    if shift > 0 {
        ln_abs = ln_abs.sub(&product.ln_abs(wp), wp);
    }
    Ok(LnGamma { ln_abs, sign })
}

fn stirling(y: &BigReal, wp: usize) -> BigReal {
    let half = BigReal::from_f64(0.5);
    let two_pi = BigReal::pi(wp).mul_i64(2, wp);
    let mut acc = y
        .sub(&half, wp)
        .mul(&y.ln(wp), wp)
        .sub(y, wp)
        .add(&two_pi.ln(wp).mul(&half, wp), wp);
    let goal = 2f64.powi(-(wp as i32));
    let y2 = y.mul(y, wp);
    let mut ypow = y.clone();
    let mut j = 1usize;
    let mut bern = bernoulli_numbers(64);
    loop {
        if bern.len() <= 2 * j + 2 {
            bern = bernoulli_numbers(2 * bern.len());
        }
        let denom = Rational::integer((2 * j * (2 * j - 1)) as i64);
        let coeff = BigReal::from_rational(&(&bern[2 * j] / &denom), wp);
        let term = coeff.div(&ypow, wp);
        acc = acc.add(&term, wp);
        ypow = ypow.mul(&y2, wp);
        let next_denom = Rational::integer(((2 * j + 2) * (2 * j + 1)) as i64);
        let next = BigReal::from_rational(&(&bern[2 * j + 2] / &next_denom), wp).div(&ypow, wp);
        if next.upper_abs() < goal || j > 4 * wp {
            return acc.widen(next.upper_abs());
        }
        j += 1;
    }
}

/// Γ(x) = sign·exp(ln|Γ(x)|).
pub fn gamma_real(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let lg = lngamma_real(x, ctx)?;
    let g = lg.ln_abs.exp(ctx.wp());
    Ok(if lg.sign < 0 { g.neg() } else { g })
}

/// Coefficient of xᵏ in the pole expansion: zeta_weight·ζ(k) + rational_part,
/// with ζ(1) read as Euler's constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleCoefficient {
    pub k: u32,
    pub zeta_weight: Rational,
    pub rational_part: Rational,
}

/// Structured expansion of lnΓ(−n + (−1)ⁿx) at x → 0⁺:
///
/// ```text
/// −ln x − ln n! + Σ_{k≥1} (−1)^((n+1)k) · (ζ(k) + (−1)ᵏ H_n^(k)) / k · xᵏ
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleSeries {
    pub n: u64,
    /// Coefficient of ln x (always −1).
    pub log_coefficient: i32,
    /// The constant is −ln(n!) for this n.
    pub factorial_of: u64,
    pub coefficients: Vec<PoleCoefficient>,
}

pub fn lngamma_pole_series(n: u64, k_max: u32) -> PoleSeries {
    let coefficients = (1..=k_max.max(1))
        .map(|k| {
            let outer = if ((n + 1) * k as u64) % 2 == 0 { 1 } else { -1 };
            let inner = if k % 2 == 0 { 1 } else { -1 };
            let kq = Rational::integer(k as i64);
            PoleCoefficient {
                k,
                zeta_weight: &Rational::integer(outer) / &kq,
                rational_part: &(&harmonic(n, k) * &Rational::integer(outer * inner)) / &kq,
            }
        })
        .collect();
    PoleSeries { n, log_coefficient: -1, factorial_of: n, coefficients }
}

impl PoleSeries {
    /// Numeric value of the k-th coefficient.
    pub fn coefficient_value(&self, c: &PoleCoefficient, ctx: &PrecisionContext) -> Result<BigReal> {
        let wp = ctx.wp();
        let z = if c.k == 1 { euler_gamma(ctx) } else { zeta_real(&BigReal::from_u64(c.k as u64), ctx)? };
        Ok(z
            .mul(&BigReal::from_rational(&c.zeta_weight, wp), wp)
            .add(&BigReal::from_rational(&c.rational_part, wp), wp))
    }

    /// Partial sum at offset x > 0 (no truncation bound attached).
    pub fn partial_sum(&self, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
        let wp = ctx.wp();
        let mut ln_fact = BigReal::zero();
        for j in 2..=self.factorial_of {
            ln_fact = ln_fact.add(&BigReal::from_u64(j).ln(wp), wp);
        }
        let mut acc = x.ln(wp).mul_i64(self.log_coefficient as i64, wp).sub(&ln_fact, wp);
        let mut xpow = BigReal::one();
        for c in &self.coefficients {
            xpow = xpow.mul(x, wp);
            acc = acc.add(&self.coefficient_value(c, ctx)?.mul(&xpow, wp), wp);
        }
        Ok(acc)
    }
}
