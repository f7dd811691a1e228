//! Brute-force coefficient oracle.
//!
//! Expanding 1/F = (b₁ˢ/c₁)·Σⱼ(−T)ʲ term by term, the coefficient of a base β
//! is a sum over ordered tuples (n₁,…,nⱼ) of stream indices ≥ 2 with
//! b₁^(j+1)/∏b_nᵢ = β, each tuple contributing (−1)ʲ·∏(c_nᵢ/c₁)/c₁. This module
//! walks those tuples directly, with no sparse-series machinery, so it can
//! serve as an independent check on [`super::reciprocal_expansion`].

use std::collections::HashMap;

use super::SeriesSpec;
use crate::error::{Error, Result};
use crate::Rational;

/// Largest tuple length j with (b₂/b₁)ʲ ≤ b₁/target; longer tuples cannot
/// reach the target.
pub fn max_tuple_length(b1: &Rational, b2: &Rational, target: &Rational) -> usize {
    let step = b2 / b1;
    let goal = b1 / target;
    let mut j = 0;
    let mut acc = step.clone();
    while acc <= goal {
        j += 1;
        acc = &acc * &step;
    }
    j
}

/// Coefficient of `target_base` in the expansion of 1/F by tuple enumeration.
///
/// Fails with [`Error::DepthCapTooSmall`] when tuples longer than
/// `depth_cap` could still contribute.
pub fn oracle_coefficient(spec: &SeriesSpec, target_base: &Rational, depth_cap: usize) -> Result<Rational> {
    let (b1, c1) = spec.leading()?;
    if !target_base.is_positive() {
        return Err(Error::InvalidThreshold(target_base.to_string()));
    }
    if target_base > &b1 {
        return Err(Error::ThresholdTooHigh { threshold: target_base.to_string(), leading: b1.to_string() });
    }
    let c1_inv = c1.recip();
    if target_base == &b1 {
        return Ok(c1_inv);
    }
    let goal = &b1 / target_base;
    let stream = spec.terms_through(&(&b1 * &goal))?;
    if stream.len() < 2 {
        return Ok(Rational::zero());
    }
    let required = max_tuple_length(&b1, &stream[1].0, target_base);
    if required > depth_cap {
        return Err(Error::DepthCapTooSmall { cap: depth_cap, required });
    }

    // factor bₙ/b₁ > 1 with weight −cₙ/c₁ (the sign of (−T) folded in)
    let factors: Vec<(Rational, Rational)> =
        stream.iter().skip(1).map(|(b, c)| (b / &b1, -(c * &c1_inv))).collect();
    let by_value: HashMap<Rational, Rational> = factors.iter().cloned().collect();
    let smallest = factors[0].0.clone();

    let mut total = Rational::zero();
    let mut walker = Walker { factors: &factors, by_value: &by_value, smallest: &smallest, depth_cap, total: &mut total };
    walker.walk(&goal, &Rational::one(), 0);
    Ok(&total * &c1_inv)
}

struct Walker<'a> {
    factors: &'a [(Rational, Rational)],
    by_value: &'a HashMap<Rational, Rational>,
    smallest: &'a Rational,
    depth_cap: usize,
    total: &'a mut Rational,
}

impl Walker<'_> {
    /// Extends a prefix of `depth` factors whose remaining quotient is `rest`.
    fn walk(&mut self, rest: &Rational, weight: &Rational, depth: usize) {
        if depth >= self.depth_cap {
            return;
        }
        // close the tuple with one more factor equal to `rest`
        if let Some(w) = self.by_value.get(rest) {
            *self.total += &(weight * w);
        }
        // or pick a factor that leaves room for at least one more
        for (f, w) in self.factors {
            let next = rest / f;
            if &next < self.smallest {
                break;
            }
            self.walk(&next, &(weight * w), depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn zeta_minus_one() -> SeriesSpec {
        SeriesSpec::from_generator("zeta_minus_1", "", || (2i64..).map(|n| (Rational::integer(n), Rational::one())))
    }

    #[test]
    fn known_coefficients() {
        let z = zeta_minus_one();
        assert_eq!(oracle_coefficient(&z, &q(8, 27), 16).unwrap(), q(3, 1));
        assert_eq!(oracle_coefficient(&z, &q(2, 1), 16).unwrap(), q(1, 1));
        assert_eq!(oracle_coefficient(&z, &q(1, 1), 16).unwrap(), q(-1, 1));
        assert_eq!(oracle_coefficient(&z, &q(4, 9), 16).unwrap(), q(-2, 1));
        assert_eq!(oracle_coefficient(&z, &q(8, 45), 16).unwrap(), q(7, 1));
        assert_eq!(oracle_coefficient(&z, &q(1, 3), 16).unwrap(), q(0, 1));
    }

    #[test]
    fn depth_cap_enforced() {
        // 8/27 = 2·(2/3)³·(2/4) is reached by a four-factor tuple
        let z = zeta_minus_one();
        assert_eq!(max_tuple_length(&q(2, 1), &q(3, 1), &q(8, 27)), 4);
        assert_eq!(
            oracle_coefficient(&z, &q(8, 27), 3),
            Err(Error::DepthCapTooSmall { cap: 3, required: 4 })
        );
        assert!(oracle_coefficient(&z, &q(8, 27), 4).is_ok());
    }

    #[test]
    fn rational_bases() {
        let hz = SeriesSpec::from_generator("hz", "", || {
            (0i64..).map(|n| (&q(3, 2) + &Rational::integer(n), Rational::one()))
        });
        assert_eq!(oracle_coefficient(&hz, &q(9, 10), 8).unwrap(), q(-1, 1));
        assert_eq!(oracle_coefficient(&hz, &q(9, 14), 8).unwrap(), q(-1, 1));
    }
}
