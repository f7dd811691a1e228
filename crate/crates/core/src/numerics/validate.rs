use serde_json::json;

use super::real::BigReal;
use super::zeta::{
    beta_real, dirichlet_lambda_real, eta_real, hurwitz_zeta_real, l_char_real, prime_zeta_real, rational_pow_neg,
    thue_morse_series_real, zeta_real, ThueMorseVariant,
};
use super::PrecisionContext;
use crate::catalog::{named_character, Orientation, SeriesId};
use crate::error::{Error, Result};
use crate::expansion::{reciprocal_expansion, Expansion, SeriesSpec};
use crate::Rational;

/// Outcome of comparing an expansion with the function it expands.
#[derive(Clone, Debug)]
pub struct Validation {
    pub series: String,
    pub s: BigReal,
    /// |1/F(s) − E(s)|.
    pub residual: BigReal,
    /// 2·θ̂ˢ for the first omitted base θ̂.
    pub bound: BigReal,
    pub pass: bool,
    /// Largest base of the full expansion below the threshold. When no such
    /// base turns up within the search window this is the threshold itself.
    pub first_omitted_base: Rational,
    pub first_omitted_coeff: Option<Rational>,
    /// 2·|ĉ|·θ̂ˢ, the bound scaled by the first omitted coefficient.
    pub term_bound: BigReal,
    pub term_pass: bool,
}

impl Validation {
    pub fn to_json(&self) -> serde_json::Value {
        let digits = 40;
        json!({
            "series": self.series,
            "s": self.s.to_decimal(digits),
            "residual": self.residual.to_decimal(digits),
            "bound": self.bound.to_decimal(digits),
            "pass": self.pass,
            "first_omitted_base": self.first_omitted_base.to_string(),
            "first_omitted_coeff": self.first_omitted_coeff.as_ref().map(|c| c.to_string()),
            "term_bound": self.term_bound.to_decimal(digits),
            "term_pass": self.term_pass,
        })
    }
}

/// F(s) through the special function behind a cataloged series, or exactly
/// for a finite Dirichlet polynomial.
pub fn evaluate_series(spec: &SeriesSpec, s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.wp();
    if spec.is_finite() {
        return Ok(finite_sum(spec, s, wp));
    }
    let id = spec
        .id()
        .ok_or_else(|| Error::OutOfDomain(format!("no evaluator for series {}", spec.name())))?;
    let one = BigReal::one();
    Ok(match id {
        SeriesId::ZetaMinus1 => zeta_real(s, ctx)?.sub(&one, wp),
        SeriesId::OneMinusEta => one.sub(&eta_real(s, ctx)?, wp),
        SeriesId::DirichletLambdaMinus1 => dirichlet_lambda_real(s, ctx)?.sub(&one, wp),
        SeriesId::OneMinusBeta => one.sub(&beta_real(s, ctx)?, wp),
        SeriesId::LogZeta => zeta_real(s, ctx)?.ln(wp),
        SeriesId::PrimeZeta => prime_zeta_real(s, ctx)?,
        SeriesId::MobiusComplement => one.sub(&zeta_real(s, ctx)?.recip(wp), wp),
        SeriesId::LiouvilleComplement => {
            let two_s = s.mul_i64(2, wp);
            one.sub(&zeta_real(&two_s, ctx)?.div(&zeta_real(s, ctx)?, wp), wp)
        }
        SeriesId::ThueMorseUpsilon => one.sub(&thue_morse_series_real(ThueMorseVariant::Upsilon, s, ctx)?, wp),
        SeriesId::ThueMorseXi => thue_morse_series_real(ThueMorseVariant::Xi, s, ctx)?,
        SeriesId::Char { character, orientation } => {
            let l = l_char_real(&named_character(character)?, s, ctx)?;
            match orientation {
                Orientation::LMinusOne => l.sub(&one, wp),
                Orientation::OneMinusL => one.sub(&l, wp),
            }
        }
        SeriesId::HurwitzZeta(q) => hurwitz_zeta_real(s, q, ctx)?,
        SeriesId::HurwitzLambda(q) => {
            let half = q / &Rational::integer(2);
            hurwitz_zeta_real(s, &half, ctx)?.mul(&rational_pow_neg(&Rational::integer(2), s, wp), wp)
        }
    })
}

fn finite_sum(spec: &SeriesSpec, s: &BigReal, wp: usize) -> BigReal {
    spec.stream()
        .fold(BigReal::zero(), |acc, (b, c)| acc.add(&rational_pow_neg(&b, s, wp).mul(&BigReal::from_rational(&c, wp), wp), wp))
}

/// F(s) summed straight from the coefficient stream.
///
/// Catalog streams have |c| ≤ 1 on bases spaced at least 1 apart, so the
/// tail past base B is at most B^(−s)·(1 + B/(s−1)). Summation stops once
/// that is below `goal`.
fn stream_sum(spec: &SeriesSpec, s: &BigReal, goal: f64, wp: usize) -> Result<BigReal> {
    if spec.is_finite() {
        return Ok(finite_sum(spec, s, wp));
    }
    if spec.id().is_none() || spec.known_through().is_some() {
        return Err(Error::OutOfDomain(format!("no tail bound for series {}", spec.name())));
    }
    let sf = s.to_f64() - s.err();
    if sf <= 1.0 {
        return Err(Error::OutOfDomain(format!("validation needs s > 1, got {}", s.to_decimal(12))));
    }
    let tail = |b: f64| (-sf * b.ln()).exp() * (1.0 + b / (sf - 1.0));
    let mut sum = BigReal::zero();
    for (count, (b, c)) in spec.stream().enumerate() {
        let bf = b.to_f64();
        if tail(bf) < goal {
            return Ok(sum.widen(tail(bf)));
        }
        if count > 1_000_000 {
            break;
        }
        sum = sum.add(&rational_pow_neg(&b, s, wp).mul(&BigReal::from_rational(&c, wp), wp), wp);
    }
    Err(Error::OutOfDomain(format!("s = {} is too small for direct summation", s.to_decimal(12))))
}

/// E(s) = Σ c·bˢ.
fn expansion_sum(e: &Expansion, s: &BigReal, wp: usize) -> BigReal {
    e.terms().iter().fold(BigReal::zero(), |acc, t| {
        let power = rational_pow_neg(&t.base.recip(), s, wp);
        acc.add(&power.mul(&BigReal::from_rational(&t.coeff, wp), wp), wp)
    })
}

/// The largest base strictly below the threshold carrying a nonzero
/// coefficient in the untruncated expansion, with that coefficient.
fn first_omitted(spec: &SeriesSpec, e: &Expansion) -> Option<(Rational, Rational)> {
    let theta = e.threshold();
    for ratio in [(9, 10), (3, 4), (1, 2), (1, 4)] {
        let deeper = theta * &Rational::new(ratio.0, ratio.1);
        let Ok(full) = reciprocal_expansion(spec, &deeper, 1 << 14) else {
            return None;
        };
        if let Some(t) = full.terms().iter().find(|t| &t.base < theta) {
            return Some((t.base.clone(), t.coeff.clone()));
        }
    }
    None
}

/// Compares 1/F(s) with the expansion E evaluated at s.
///
/// `pass` is the plain criterion residual ≤ 2·θ̂ˢ. `term_pass` uses
/// 2·|ĉ|·θ̂ˢ instead, which is what a first omitted term with coefficient ĉ
/// actually contributes.
pub fn validate_expansion(spec: &SeriesSpec, e: &Expansion, s: &BigReal, ctx: &PrecisionContext) -> Result<Validation> {
    let (b1, _) = spec.leading()?;
    let omitted = first_omitted(spec, e);
    let theta_hat = omitted.as_ref().map(|(b, _)| b.clone()).unwrap_or_else(|| e.threshold().clone());
    let sf = s.to_f64();
    let gap_bits = sf * (b1.log2_abs() - theta_hat.log2_abs()).max(0.0);
    let wp = ctx.wp().max((gap_bits + sf * b1.log2_abs().max(0.0)) as usize + 96);
    // err(1/F) ≈ err(F)·b1^(2s) must sit well below θ̂ˢ
    let goal_log2 = sf * theta_hat.log2_abs() - 2.0 * sf * b1.log2_abs() - 40.0;
    let goal = 2f64.powf(goal_log2.max(-1000.0));
    let f = stream_sum(spec, s, goal, wp)?;
    if f.certain_sign().is_none() {
        return Err(Error::OutOfDomain(format!("F({}) is not separated from 0", s.to_decimal(12))));
    }
    let residual = f.recip(wp).sub(&expansion_sum(e, s, wp), wp).abs();
    let base_pow = rational_pow_neg(&theta_hat.recip(), s, wp);
    let bound = base_pow.mul_i64(2, wp);
    let coeff_abs = omitted.as_ref().map(|(_, c)| c.abs()).unwrap_or_else(Rational::one);
    let term_bound = bound.mul(&BigReal::from_rational(&coeff_abs, wp), wp);
    let fits = |b: &BigReal| residual.upper_abs() <= b.lower_abs();
    Ok(Validation {
        series: e.series().to_string(),
        s: s.clone(),
        pass: fits(&bound),
        term_pass: fits(&term_bound),
        residual,
        bound,
        first_omitted_base: theta_hat,
        first_omitted_coeff: omitted.map(|(_, c)| c),
        term_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_series;
    use crate::rational::q;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn monomial_is_exact() {
        let spec = SeriesSpec::polynomial("two", vec![(q(2, 1), q(1, 1))]).unwrap();
        let e = reciprocal_expansion(&spec, &q(1, 5), 64).unwrap();
        let v = validate_expansion(&spec, &e, &BigReal::from_i64(10), &ctx()).unwrap();
        assert_eq!(v.residual.to_f64(), 0.0);
        assert!(v.pass && v.term_pass);
        assert_eq!(v.first_omitted_coeff, None);
    }

    #[test]
    fn zeta_first_omitted_term_dominates() {
        let spec = make_series(&SeriesId::ZetaMinus1).unwrap();
        let e = reciprocal_expansion(&spec, &q(1, 5), 512).unwrap();
        let v = validate_expansion(&spec, &e, &BigReal::from_i64(40), &ctx()).unwrap();
        assert_eq!(v.first_omitted_base, q(16, 81));
        assert_eq!(v.first_omitted_coeff, Some(q(-4, 1)));
        // residual ≈ 4·(16/81)^40, twice the plain bound
        let ratio = v.residual.to_f64() / v.bound.to_f64();
        assert!((ratio - 2.0).abs() < 0.5, "{ratio}");
        assert!(!v.pass);
        assert!(v.term_pass);
    }

    #[test]
    fn stream_sum_agrees_with_special_functions() {
        let s = BigReal::from_i64(10);
        for id in crate::catalog::default_catalog() {
            let spec = make_series(&id).unwrap();
            let a = evaluate_series(&spec, &s, &ctx()).unwrap();
            let b = stream_sum(&spec, &s, 1e-30, 320).unwrap();
            let gap = a.distance(&b, 320).to_f64();
            assert!(gap <= a.err() + b.err() + 1e-30, "{id}: {gap}");
        }
    }

    #[test]
    fn unknown_series_is_out_of_domain() {
        let spec = SeriesSpec::from_generator("anon", "", || (2u64..).map(|n| (Rational::integer(n), q(1, 1))));
        let e = reciprocal_expansion(&spec, &q(1, 2), 64).unwrap();
        let err = validate_expansion(&spec, &e, &BigReal::from_i64(40), &ctx()).unwrap_err();
        assert_eq!(err.name(), "OutOfDomain");
    }
}
