//! Finite signed sums of rational powers, Σ cᵢ·bᵢˢ, and the algorithms that
//! produce them.

mod algebra;
mod oracle;
mod reciprocal;
mod series;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

pub use algebra::{analytic_transform, exp_minus_one_coefficients, log_one_plus_coefficients, series_product};
pub use oracle::{max_tuple_length, oracle_coefficient};
pub use reciprocal::{reciprocal_expansion, truncation_depth, DEFAULT_TERM_CAP};
pub use series::{SeriesSpec, StreamTerm};

/// One signed term `coeff · baseˢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerTerm {
    pub base: Rational,
    pub coeff: Rational,
}

impl PowerTerm {
    pub fn new(coeff: Rational, base: Rational) -> Self {
        PowerTerm { base, coeff }
    }
}

/// Merge equal bases, drop zero coefficients, sort by base descending.
pub fn normalize_terms(terms: impl IntoIterator<Item = PowerTerm>) -> Vec<PowerTerm> {
    let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
    for t in terms {
        *map.entry(t.base).or_insert_with(Rational::zero) += &t.coeff;
    }
    from_map(map)
}

pub(crate) fn from_map(map: BTreeMap<Rational, Rational>) -> Vec<PowerTerm> {
    map.into_iter()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(base, coeff)| PowerTerm { base, coeff })
        .collect()
}

/// A truncated expansion: every term of the true expansion with base at or
/// above `threshold`, bases strictly descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExpansionRepr")]
pub struct Expansion {
    series: String,
    threshold: Rational,
    terms: Vec<PowerTerm>,
}

#[derive(Deserialize)]
struct ExpansionRepr {
    series: String,
    threshold: Rational,
    terms: Vec<PowerTerm>,
}

impl TryFrom<ExpansionRepr> for Expansion {
    type Error = Error;

    fn try_from(r: ExpansionRepr) -> Result<Self> {
        Expansion::from_sorted(r.series, r.threshold, r.terms)
    }
}

impl Expansion {
    /// Builds an expansion from arbitrary terms, normalizing them and dropping
    /// any below `threshold`.
    pub fn new(series: impl Into<String>, threshold: Rational, terms: impl IntoIterator<Item = PowerTerm>) -> Self {
        let terms = normalize_terms(terms).into_iter().filter(|t| t.base >= threshold).collect();
        Expansion { series: series.into(), threshold, terms }
    }

    /// Builds an expansion from terms that must already satisfy every
    /// invariant; used when parsing external data.
    pub fn from_sorted(series: impl Into<String>, threshold: Rational, terms: Vec<PowerTerm>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if !t.base.is_positive() {
                return Err(Error::Parse(format!("term {i}: base {} must be positive", t.base)));
            }
            if t.coeff.is_zero() {
                return Err(Error::Parse(format!("term {i}: zero coefficient")));
            }
            if t.base < threshold {
                return Err(Error::Parse(format!("term {i}: base {} below threshold {threshold}", t.base)));
            }
            if i > 0 && terms[i - 1].base <= t.base {
                return Err(Error::Parse(format!("term {i}: bases must be strictly descending")));
            }
        }
        Ok(Expansion { series: series.into(), threshold, terms })
    }

    pub fn series(&self) -> &str {
        &self.series
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, base: &Rational) -> Option<&Rational> {
        self.terms
            .binary_search_by(|t| base.cmp(&t.base))
            .ok()
            .map(|i| &self.terms[i].coeff)
    }

    pub fn leading(&self) -> Option<&PowerTerm> {
        self.terms.first()
    }

    /// The terms with base ≥ `floor`, as a new expansion truncated there.
    pub fn truncate(&self, floor: &Rational) -> Expansion {
        let floor = if floor > &self.threshold { floor.clone() } else { self.threshold.clone() };
        Expansion {
            series: self.series.clone(),
            terms: self.terms.iter().filter(|t| t.base >= floor).cloned().collect(),
            threshold: floor,
        }
    }

    /// The first `n` terms.
    pub fn first(&self, n: usize) -> &[PowerTerm] {
        &self.terms[..n.min(self.terms.len())]
    }

    pub fn rename(mut self, series: impl Into<String>) -> Self {
        self.series = series.into();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("expansion serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Plain text such as `2^s - (4/3)^s - 1 + (8/9)^s`.
    pub fn render(&self, style: RenderStyle) -> String {
        let lead_numer = self.terms.first().filter(|t| t.base.is_integer()).map(|t| t.base.numer().clone());
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = t.coeff.abs();
            let base = match (&style, &lead_numer) {
                (RenderStyle::LeadingPowers, Some(m)) => render_base_as_power(&t.base, m),
                _ => render_base(&t.base),
            };
            match base {
                None if mag.is_integer() => {
                    let _ = write!(out, "{}", mag.numer());
                }
                None => {
                    let _ = write!(out, "{mag}");
                }
                Some(b) => {
                    if !mag.is_one() {
                        let _ = write!(out, "{}", render_coeff(&mag));
                    }
                    let _ = write!(out, "{b}^s");
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// How bases are printed by [`Expansion::render`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RenderStyle {
    /// Reduced fractions: `(8/15)^s`.
    #[default]
    Reduced,
    /// Numerators written as an explicit power of the leading base's
    /// numerator: `(2^3/15)^s`. Falls back to reduced form when the leading
    /// base is not an integer or a numerator is not such a power.
    LeadingPowers,
}

fn render_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

/// `None` for the base 1 (a constant term).
fn render_base(b: &Rational) -> Option<String> {
    if b.is_one() {
        None
    } else if b.is_integer() {
        Some(b.numer().to_string())
    } else {
        Some(format!("({}/{})", b.numer(), b.denom()))
    }
}

fn render_base_as_power(b: &Rational, m: &num_bigint::BigInt) -> Option<String> {
    use num_traits::One;
    if b.is_one() {
        return None;
    }
    let numer = b.numer();
    let mut power = num_bigint::BigInt::one();
    let mut e = 0u32;
    while &power < numer && e < 256 {
        power *= m;
        e += 1;
    }
    if &power != numer || e == 0 {
        return render_base(b);
    }
    let num = if e == 1 { m.to_string() } else { format!("{m}^{e}") };
    if b.denom().is_one() {
        Some(if e == 1 { num } else { format!("({num})") })
    } else {
        Some(format!("({num}/{})", b.denom()))
    }
}

/// One line of an expansion comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDiff {
    pub base: Rational,
    /// Zero when the term is absent from the computed side.
    pub computed: Rational,
    /// Zero when the term is absent from the reference side.
    pub reference: Rational,
}

/// Symmetric difference by base. Terms present on both sides with equal
/// coefficients are omitted; output is base-descending.
pub fn diff_expansions(computed: &Expansion, reference: &Expansion) -> Vec<TermDiff> {
    let mut map: BTreeMap<Rational, (Rational, Rational)> = BTreeMap::new();
    for t in computed.terms() {
        map.entry(t.base.clone()).or_insert_with(|| (Rational::zero(), Rational::zero())).0 = t.coeff.clone();
    }
    for t in reference.terms() {
        map.entry(t.base.clone()).or_insert_with(|| (Rational::zero(), Rational::zero())).1 = t.coeff.clone();
    }
    map.into_iter()
        .rev()
        .filter(|(_, (c, r))| c != r)
        .map(|(base, (computed, reference))| TermDiff { base, computed, reference })
        .collect()
}
