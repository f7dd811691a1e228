use std::collections::BTreeMap;

use super::{from_map, series_product, Expansion, PowerTerm, SeriesSpec};
use crate::error::{Error, Result};
use crate::Rational;

pub const DEFAULT_TERM_CAP: usize = 512;

/// Expansion of 1/F(s) at s → ∞ for F(s) = Σ cₖ·bₖ⁻ˢ.
///
/// With T(s) = Σ_{k≥2} (cₖ/c₁)(b₁/bₖ)ˢ,
///
/// ```text
/// 1/F(s) = (b₁ˢ/c₁) · Σ_{j≥0} (−T(s))ʲ
/// ```
///
/// Every factor of T has base at most b₁/b₂ < 1, so only finitely many
/// products stay at or above the threshold and the truncation is complete:
/// every term of the true expansion with base ≥ `threshold` is returned.
/// Only stream terms with bₖ ≤ b₁²/threshold can contribute.
pub fn reciprocal_expansion(spec: &SeriesSpec, threshold: &Rational, term_cap: usize) -> Result<Expansion> {
    if !threshold.is_positive() {
        return Err(Error::InvalidThreshold(threshold.to_string()));
    }
    let (b1, c1) = spec.leading()?;
    if threshold >= &b1 {
        return Err(Error::ThresholdTooHigh { threshold: threshold.to_string(), leading: b1.to_string() });
    }
    // ratios b₁/bₖ must stay ≥ threshold/b₁
    let floor = threshold / &b1;
    let bound = &(&b1 * &b1) / threshold;
    let stream = spec.terms_through(&bound)?;
    let c1_inv = c1.recip();

    let tail: Vec<PowerTerm> = from_map(
        stream
            .iter()
            .skip(1)
            .map(|(b, c)| (&b1 / b, c * &c1_inv))
            .filter(|(r, _)| r >= &floor)
            .fold(BTreeMap::new(), |mut m, (r, c)| {
                *m.entry(r).or_insert_with(Rational::zero) += &c;
                m
            }),
    );

    let work_cap = term_cap.saturating_mul(4);
    let mut total: BTreeMap<Rational, Rational> = BTreeMap::new();
    total.insert(Rational::one(), Rational::one());
    let mut power = vec![PowerTerm::new(Rational::one(), Rational::one())];
    let mut negate = false;
    loop {
        power = series_product(&power, &tail, &floor);
        if power.is_empty() {
            break;
        }
        if power.len() > work_cap {
            return Err(Error::TermCapExceeded { cap: term_cap });
        }
        negate = !negate;
        for t in &power {
            let entry = total.entry(t.base.clone()).or_insert_with(Rational::zero);
            if negate {
                *entry -= &t.coeff;
            } else {
                *entry += &t.coeff;
            }
        }
    }

    let terms: Vec<PowerTerm> = from_map(total)
        .into_iter()
        .map(|t| PowerTerm::new(&t.coeff * &c1_inv, &t.base * &b1))
        .collect();
    if terms.len() > term_cap {
        return Err(Error::TermCapExceeded { cap: term_cap });
    }
    Ok(Expansion { series: spec.name().to_string(), threshold: threshold.clone(), terms })
}

/// Smallest J with b₁·(b₁/b₂)^(J+1) < θ: no product of more than J tail
/// factors can reach the threshold.
pub fn truncation_depth(b1: &Rational, b2: &Rational, threshold: &Rational) -> usize {
    let ratio = b1 / b2;
    let mut j = 0usize;
    let mut value = b1 * &ratio;
    while &value >= threshold {
        j += 1;
        value = &value * &ratio;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn zeta_minus_one() -> SeriesSpec {
        SeriesSpec::from_generator("zeta_minus_1", "", || (2i64..).map(|n| (Rational::integer(n), Rational::one())))
    }

    fn coeffs(e: &Expansion) -> Vec<(Rational, Rational)> {
        e.terms().iter().map(|t| (t.base.clone(), t.coeff.clone())).collect()
    }

    #[test]
    fn zeta_leading_terms() {
        let e = reciprocal_expansion(&zeta_minus_one(), &q(3, 10), DEFAULT_TERM_CAP).unwrap();
        let expect = vec![
            (q(2, 1), q(1, 1)),
            (q(4, 3), q(-1, 1)),
            (q(1, 1), q(-1, 1)),
            (q(8, 9), q(1, 1)),
            (q(4, 5), q(-1, 1)),
            (q(2, 3), q(1, 1)),
        ];
        assert_eq!(&coeffs(&e)[..6], expect.as_slice());
    }

    #[test]
    fn monomial_reciprocal() {
        let spec = SeriesSpec::polynomial("mono", vec![(q(2, 1), q(1, 1))]).unwrap();
        let e = reciprocal_expansion(&spec, &q(1, 2), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(coeffs(&e), vec![(q(2, 1), q(1, 1))]);
    }

    #[test]
    fn four_ninths_is_minus_two() {
        let e = reciprocal_expansion(&zeta_minus_one(), &q(1, 4), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(e.coefficient(&q(4, 9)), Some(&q(-2, 1)));
        assert_eq!(e.coefficient(&q(8, 27)), Some(&q(3, 1)));
    }

    #[test]
    fn threshold_is_inclusive() {
        let e = reciprocal_expansion(&zeta_minus_one(), &q(1, 1), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(e.terms().last().unwrap().base, q(1, 1));
    }

    #[test]
    fn negative_leading_coefficient() {
        let spec = SeriesSpec::polynomial("neg", vec![(q(2, 1), q(-2, 1)), (q(3, 1), q(1, 1))]).unwrap();
        let e = reciprocal_expansion(&spec, &q(1, 2), DEFAULT_TERM_CAP).unwrap();
        // 1/(−2·2⁻ˢ + 3⁻ˢ) = −(1/2)·2ˢ·(1 + (1/2)(2/3)ˢ + …)
        assert_eq!(e.coefficient(&q(2, 1)), Some(&q(-1, 2)));
        assert_eq!(e.coefficient(&q(4, 3)), Some(&q(-1, 4)));
    }

    #[test]
    fn errors() {
        let empty = SeriesSpec::polynomial("e", vec![]).unwrap();
        assert_eq!(reciprocal_expansion(&empty, &q(1, 2), 10), Err(Error::EmptySeries));
        assert!(matches!(
            reciprocal_expansion(&zeta_minus_one(), &q(2, 1), 10),
            Err(Error::ThresholdTooHigh { .. })
        ));
        assert!(matches!(
            reciprocal_expansion(&zeta_minus_one(), &q(1, 10), 5),
            Err(Error::TermCapExceeded { cap: 5 })
        ));
        assert!(matches!(
            reciprocal_expansion(&zeta_minus_one(), &Rational::zero(), 5),
            Err(Error::InvalidThreshold(_))
        ));
    }

    #[test]
    fn depth_bound() {
        // 2·(2/3)^(J+1) < 1/5 first at J = 5
        assert_eq!(truncation_depth(&q(2, 1), &q(3, 1), &q(1, 5)), 5);
        assert_eq!(truncation_depth(&q(2, 1), &q(3, 1), &q(2, 1)), 0);
    }
}
