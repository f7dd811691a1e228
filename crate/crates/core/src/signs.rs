//! Liouville-type sign laws for expansion terms.
//!
//! Each term c·(p/q)ˢ of an expansion gets a predicted sign from a rule on
//! the reduced base p/q; the audit compares it with sign(c).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use crate::arith::big_omega;
use crate::arith::{factorize, liouville, small_omega};
use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::Rational;

/// A sign prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prediction {
    Plus,
    Minus,
    Unclassified,
}

impl Prediction {
    fn from_sign(s: i32) -> Self {
        if s > 0 {
            Prediction::Plus
        } else {
            Prediction::Minus
        }
    }

    pub fn sign(self) -> Option<i32> {
        match self {
            Prediction::Plus => Some(1),
            Prediction::Minus => Some(-1),
            Prediction::Unclassified => None,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prediction::Plus => "+1",
            Prediction::Minus => "-1",
            Prediction::Unclassified => "unclassified",
        })
    }
}

impl Serialize for Prediction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Prediction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(deserializer)?.as_str() {
            "+1" | "1" => Ok(Prediction::Plus),
            "-1" => Ok(Prediction::Minus),
            "unclassified" => Ok(Prediction::Unclassified),
            other => Err(serde::de::Error::custom(format!("bad prediction {other:?}"))),
        }
    }
}

fn check_reduced(p: u64, q: u64) -> Result<()> {
    if p == 0 || q == 0 || num_integer::gcd(p, q) != 1 {
        return Err(Error::NotReduced { p, q });
    }
    Ok(())
}

/// Liouville function for rationals, first kind.
///
/// * `p = 1`, `q ≠ 1`: +1, whatever the Ω values;
/// * |Ω(p) − Ω(q)| = 1: λ(q);
/// * Ω(p) = Ω(q): −λ(q) (this covers the constant term 1/1, giving −1);
/// * otherwise unclassified.
pub fn lambda_v(p: u64, q: u64) -> Result<Prediction> {
    check_reduced(p, q)?;
    if p == 1 && q != 1 {
        return Ok(Prediction::Plus);
    }
    let (op, oq) = (big_omega(p), big_omega(q));
    Ok(match op.abs_diff(oq) {
        1 => Prediction::from_sign(liouville(q)),
        0 => Prediction::from_sign(-liouville(q)),
        _ => Prediction::Unclassified,
    })
}

/// Liouville function for rationals, second kind: +1 on an Ω-gap of one,
/// −1 on equal Ω, unclassified otherwise.
pub fn lambda_a(p: u64, q: u64) -> Result<Prediction> {
    check_reduced(p, q)?;
    Ok(match big_omega(p).abs_diff(big_omega(q)) {
        1 => Prediction::Plus,
        0 => Prediction::Minus,
        _ => Prediction::Unclassified,
    })
}

/// [`lambda_a`] under the alternative reading that every unit-numerator
/// base 1/q (q ≠ 1) is positive.
pub fn lambda_a_unit_numerator(p: u64, q: u64) -> Result<Prediction> {
    check_reduced(p, q)?;
    if p == 1 && q != 1 {
        return Ok(Prediction::Plus);
    }
    lambda_a(p, q)
}

/// Which rule produced the predictions of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Law {
    V,
    A,
    /// λ_A with 1/q forced positive.
    #[serde(rename = "A_unit_numerator")]
    AUnitNumerator,
    #[serde(rename = "residue")]
    Residue,
}

impl std::str::FromStr for Law {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V" | "v" => Ok(Law::V),
            "A" | "a" => Ok(Law::A),
            "A_unit_numerator" => Ok(Law::AUnitNumerator),
            "residue" => Ok(Law::Residue),
            _ => Err(Error::Parse(format!("unknown law {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignVerdict {
    pub base: Rational,
    pub actual: i32,
    pub predicted: Prediction,
}

/// Outcome of comparing one prediction with the actual sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Match {
    Yes,
    No,
    NotApplicable,
}

impl SignVerdict {
    pub fn matches(&self) -> Match {
        match self.predicted.sign() {
            None => Match::NotApplicable,
            Some(s) if s == self.actual => Match::Yes,
            Some(_) => Match::No,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCounts {
    pub matched: usize,
    pub mismatched: usize,
    pub unclassified: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub series: String,
    pub law: Law,
    pub counts: AuditCounts,
    pub verdicts: Vec<SignVerdict>,
}

impl AuditReport {
    fn from_verdicts(series: &str, law: Law, verdicts: Vec<SignVerdict>) -> Self {
        let mut counts = AuditCounts::default();
        for v in &verdicts {
            match v.matches() {
                Match::Yes => counts.matched += 1,
                Match::No => counts.mismatched += 1,
                Match::NotApplicable => counts.unclassified += 1,
            }
        }
        AuditReport { series: series.to_string(), law, counts, verdicts }
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &SignVerdict> {
        self.verdicts.iter().filter(|v| v.matches() == Match::No)
    }

    pub fn unclassified(&self) -> impl Iterator<Item = &SignVerdict> {
        self.verdicts.iter().filter(|v| v.matches() == Match::NotApplicable)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub(crate) fn base_parts(base: &Rational) -> Result<(u64, u64)> {
    match (base.numer().to_u64(), base.denom().to_u64()) {
        (Some(p), Some(q)) if p > 0 => Ok((p, q)),
        _ => Err(Error::Unsupported(format!("base {base} outside the u64 range"))),
    }
}

/// Checks every term's sign against a rational Liouville law.
pub fn audit_signs(expansion: &Expansion, law: Law) -> Result<AuditReport> {
    let rule: fn(u64, u64) -> Result<Prediction> = match law {
        Law::V => lambda_v,
        Law::A => lambda_a,
        Law::AUnitNumerator => lambda_a_unit_numerator,
        Law::Residue => return Err(Error::Unsupported("use residue_sign_report for the residue law".into())),
    };
    let verdicts = expansion
        .terms()
        .iter()
        .map(|t| {
            let (p, q) = base_parts(&t.base)?;
            Ok(SignVerdict { base: t.base.clone(), actual: t.coeff.signum(), predicted: rule(p, q)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AuditReport::from_verdicts(expansion.series(), law, verdicts))
}

/// Sign tally for one denominator residue class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub residue: u64,
    pub positive: usize,
    pub negative: usize,
}

impl ResidueClass {
    pub fn constant_sign(&self) -> bool {
        self.positive == 0 || self.negative == 0
    }

    fn majority(&self) -> Prediction {
        match self.positive.cmp(&self.negative) {
            std::cmp::Ordering::Greater => Prediction::Plus,
            std::cmp::Ordering::Less => Prediction::Minus,
            std::cmp::Ordering::Equal => Prediction::Unclassified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub modulus: u64,
    pub classes: Vec<ResidueClass>,
    /// Share of terms whose sign equals their class majority.
    pub consistency: f64,
    pub audit: AuditReport,
}

impl ResidueReport {
    pub fn all_constant(&self) -> bool {
        self.classes.iter().all(ResidueClass::constant_sign)
    }
}

/// Groups terms by denominator mod `modulus` and predicts each term's sign as
/// its class majority (ties are unclassified).
pub fn residue_sign_report(expansion: &Expansion, modulus: u64) -> Result<ResidueReport> {
    if modulus < 2 {
        return Err(Error::UnsupportedParameter(format!("modulus {modulus} must be at least 2")));
    }
    let mut classes: BTreeMap<u64, ResidueClass> = BTreeMap::new();
    let mut keyed = Vec::with_capacity(expansion.len());
    for t in expansion.terms() {
        let (_, q) = base_parts(&t.base)?;
        let r = q % modulus;
        let class = classes.entry(r).or_insert(ResidueClass { residue: r, positive: 0, negative: 0 });
        if t.coeff.is_positive() {
            class.positive += 1;
        } else {
            class.negative += 1;
        }
        keyed.push((r, t));
    }
    let verdicts: Vec<SignVerdict> = keyed
        .into_iter()
        .map(|(r, t)| SignVerdict { base: t.base.clone(), actual: t.coeff.signum(), predicted: classes[&r].majority() })
        .collect();
    let audit = AuditReport::from_verdicts(expansion.series(), Law::Residue, verdicts);
    let consistency =
        if expansion.is_empty() { 1.0 } else { audit.counts.matched as f64 / expansion.len() as f64 };
    Ok(ResidueReport { modulus, classes: classes.into_values().collect(), consistency, audit })
}

/// Descriptive statistics about coefficient magnitudes and the denominator
/// set of an expansion. Nothing here is asserted; these are observations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientStats {
    pub terms: usize,
    /// Terms with |coeff| > 1.
    pub large_coefficients: usize,
    /// Of those, how many have a denominator with ≥ 2 distinct primes.
    pub large_with_mixed_denominator: usize,
    /// Terms with a mixed denominator and positive sign whose |coeff| equals
    /// Ω(denominator).
    pub positive_mixed_matching_omega: usize,
    pub positive_mixed: usize,
    pub non_integer_coefficients: usize,
    /// Pairs (n, m) of distinct denominators > 1 with n·m itself a denominator.
    pub closed_pairs: usize,
    /// Pairs (n, m) with n·m dividing some denominator.
    pub weakly_closed_pairs: usize,
    pub denominator_pairs: usize,
}

pub fn coefficient_stats(expansion: &Expansion) -> Result<CoefficientStats> {
    let mut stats = CoefficientStats {
        terms: expansion.len(),
        large_coefficients: 0,
        large_with_mixed_denominator: 0,
        positive_mixed_matching_omega: 0,
        positive_mixed: 0,
        non_integer_coefficients: 0,
        closed_pairs: 0,
        weakly_closed_pairs: 0,
        denominator_pairs: 0,
    };
    let mut denominators = Vec::new();
    for t in expansion.terms() {
        let (_, q) = base_parts(&t.base)?;
        let mixed = q > 1 && small_omega(q) >= 2;
        let mag = t.coeff.abs();
        if !mag.is_integer() {
            stats.non_integer_coefficients += 1;
        }
        if mag > 1 {
            stats.large_coefficients += 1;
            if mixed {
                stats.large_with_mixed_denominator += 1;
            }
        }
        if mixed && t.coeff.is_positive() {
            stats.positive_mixed += 1;
            let omega: u32 = factorize(q).iter().map(|&(_, e)| e).sum();
            if mag == omega as i64 {
                stats.positive_mixed_matching_omega += 1;
            }
        }
        if q > 1 {
            denominators.push(q);
        }
    }
    denominators.sort_unstable();
    denominators.dedup();
    for (i, &n) in denominators.iter().enumerate() {
        for &m in &denominators[i + 1..] {
            stats.denominator_pairs += 1;
            let nm = n * m;
            if denominators.binary_search(&nm).is_ok() {
                stats.closed_pairs += 1;
            }
            if denominators.iter().any(|&k| k % nm == 0) {
                stats.weakly_closed_pairs += 1;
            }
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::PowerTerm;
    use crate::rational::q;

    #[test]
    fn lambda_v_cases() {
        assert_eq!(lambda_v(4, 3).unwrap(), Prediction::Minus);
        assert_eq!(lambda_v(2, 3).unwrap(), Prediction::Plus);
        assert_eq!(lambda_v(1, 7).unwrap(), Prediction::Plus);
        assert_eq!(lambda_v(1, 1).unwrap(), Prediction::Minus);
        assert_eq!(lambda_v(2, 4), Err(Error::NotReduced { p: 2, q: 4 }));
    }

    #[test]
    fn lambda_a_cases() {
        assert_eq!(lambda_a(4, 3).unwrap(), Prediction::Plus);
        assert_eq!(lambda_a(2, 3).unwrap(), Prediction::Minus);
        assert_eq!(lambda_a(1, 9).unwrap(), Prediction::Unclassified);
        assert_eq!(lambda_a_unit_numerator(1, 9).unwrap(), Prediction::Plus);
        assert_eq!(lambda_a(3, 9), Err(Error::NotReduced { p: 3, q: 9 }));
    }

    /// The case split of both laws, spelled out independently, on every
    /// reduced p/q with p, q ≤ 60.
    #[test]
    fn exhaustive_case_split() {
        let omega = |n: u64| -> u32 {
            let (mut n, mut c, mut d) = (n, 0, 2);
            while n > 1 {
                while n % d == 0 {
                    n /= d;
                    c += 1;
                }
                d += 1;
            }
            c
        };
        for p in 1..=60u64 {
            for qq in 1..=60u64 {
                if num_integer::gcd(p, qq) != 1 {
                    assert!(lambda_v(p, qq).is_err());
                    assert!(lambda_a(p, qq).is_err());
                    continue;
                }
                let (op, oq) = (omega(p) as i64, omega(qq) as i64);
                let lam_q = if oq % 2 == 0 { 1 } else { -1 };
                let gap = (op - oq).abs();
                let v = lambda_v(p, qq).unwrap();
                let expect_v = if p == 1 && qq != 1 {
                    Some(1)
                } else if gap == 1 {
                    Some(lam_q)
                } else if gap == 0 {
                    Some(-lam_q)
                } else {
                    None
                };
                assert_eq!(v.sign(), expect_v, "lambda_V({p}/{qq})");
                let expect_a = match gap {
                    1 => Some(1),
                    0 => Some(-1),
                    _ => None,
                };
                assert_eq!(lambda_a(p, qq).unwrap().sign(), expect_a, "lambda_A({p}/{qq})");
            }
        }
    }

    #[test]
    fn unit_numerator_clause_wins() {
        for qq in 2..=100u64 {
            assert_eq!(lambda_v(1, qq).unwrap(), Prediction::Plus, "1/{qq}");
        }
        // Ω-gap 1 with λ(7) = −1 would otherwise predict −1
        assert_eq!(liouville(7), -1);
    }

    fn exp(terms: &[(i64, i64, i64)]) -> Expansion {
        Expansion::new("t", q(1, 10), terms.iter().map(|&(c, n, d)| PowerTerm::new(q(c, 1), q(n, d))))
    }

    #[test]
    fn single_term_audit() {
        let r = audit_signs(&exp(&[(1, 2, 1)]), Law::A).unwrap();
        assert_eq!(r.counts, AuditCounts { matched: 1, mismatched: 0, unclassified: 0 });
    }

    #[test]
    fn counts_partition_verdicts() {
        let e = exp(&[(1, 2, 1), (-1, 4, 3), (-1, 1, 1), (1, 1, 9), (1, 4, 5)]);
        for law in [Law::V, Law::A, Law::AUnitNumerator] {
            let r = audit_signs(&e, law).unwrap();
            let c = r.counts;
            assert_eq!(c.matched + c.mismatched + c.unclassified, r.verdicts.len());
            assert_eq!(r.mismatches().count(), c.mismatched);
        }
    }

    #[test]
    fn residue_classes() {
        let all_pos = exp(&[(1, 2, 1), (1, 4, 3), (2, 1, 5), (1, 1, 7)]);
        let r = residue_sign_report(&all_pos, 4).unwrap();
        assert!(r.all_constant());
        assert_eq!(r.consistency, 1.0);
        let mixed = exp(&[(1, 2, 1), (-1, 4, 3), (1, 2, 3), (-1, 4, 5)]);
        let r = residue_sign_report(&mixed, 2).unwrap();
        assert!(!r.all_constant());
        assert!(residue_sign_report(&mixed, 1).is_err());
    }

    #[test]
    fn report_json_layout() {
        let r = audit_signs(&exp(&[(1, 2, 1), (1, 1, 9)]), Law::A).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["law"], "A");
        assert_eq!(v["counts"]["matched"], 1);
        assert_eq!(v["verdicts"][0]["base"], "2/1");
        assert_eq!(v["verdicts"][0]["actual"], 1);
        assert_eq!(v["verdicts"][1]["predicted"], "unclassified");
    }

    #[test]
    fn stats() {
        let e = exp(&[(1, 2, 1), (2, 8, 15), (-3, 16, 45), (3, 8, 27), (1, 2, 3), (1, 2, 5)]);
        let s = coefficient_stats(&e).unwrap();
        assert_eq!(s.large_coefficients, 3);
        assert_eq!(s.large_with_mixed_denominator, 2);
        assert_eq!(s.positive_mixed, 1);
        assert_eq!(s.positive_mixed_matching_omega, 1);
        // 3·5 = 15 is a denominator
        assert!(s.closed_pairs >= 1);
    }
}
