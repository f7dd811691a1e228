use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{from_map, Expansion, PowerTerm};
use crate::error::{Error, Result};
use crate::Rational;

/// Sparse product of two base-descending term lists. Products with base
/// below `floor` are dropped.
pub fn series_product(a: &[PowerTerm], b: &[PowerTerm], floor: &Rational) -> Vec<PowerTerm> {
    let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
    for x in a {
        for y in b {
            let base = &x.base * &y.base;
            // b is descending, so every later product is smaller still
            if &base < floor {
                break;
            }
            let coeff = &x.coeff * &y.coeff;
            *acc.entry(base).or_insert_with(Rational::zero) += &coeff;
        }
    }
    from_map(acc)
}

/// Σⱼ≥₁ aⱼ·uʲ truncated at `floor`, for an inner expansion whose bases are
/// all below 1.
///
/// Completeness holds down to `max(floor, u.threshold())`: every factor of a
/// surviving product must itself lie above the floor. The coefficient stream
/// may be finite; summation stops when it ends or when uʲ falls entirely
/// below the floor.
pub fn analytic_transform(
    coeffs: impl IntoIterator<Item = Rational>,
    u: &Expansion,
    floor: &Rational,
) -> Result<Expansion> {
    if let Some(t) = u.terms().iter().find(|t| t.base >= Rational::one()) {
        return Err(Error::DivergentComposition(t.base.to_string()));
    }
    let floor = if floor > u.threshold() { floor.clone() } else { u.threshold().clone() };
    let inner: Vec<PowerTerm> = u.terms().iter().filter(|t| t.base >= floor).cloned().collect();
    let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
    let mut power = vec![PowerTerm::new(Rational::one(), Rational::one())];
    for a in coeffs {
        power = series_product(&power, &inner, &floor);
        if power.is_empty() {
            break;
        }
        if a.is_zero() {
            continue;
        }
        for t in &power {
            *acc.entry(t.base.clone()).or_insert_with(Rational::zero) += &(&a * &t.coeff);
        }
    }
    Ok(Expansion::new(format!("transform({})", u.series()), floor, from_map(acc)))
}

/// aⱼ = (−1)^(j+1)/j, the coefficients of log(1 + u).
pub fn log_one_plus_coefficients() -> impl Iterator<Item = Rational> {
    (1i64..).map(|j| Rational::new(if j % 2 == 1 { 1 } else { -1 }, j))
}

/// aⱼ = 1/j!, the coefficients of exp(u) − 1.
pub fn exp_minus_one_coefficients() -> impl Iterator<Item = Rational> {
    (1u64..).scan(BigInt::from(1), |fact, j| {
        *fact *= j;
        Some(Rational::new(1, fact.clone()))
    })
}
