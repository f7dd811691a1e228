//! Bundled reference data and the comparisons run against it.
//!
//! Table fixtures are transcriptions of published term lists. They are never
//! rewritten: a printed value that disagrees with the computed expansion is
//! registered under `known_discrepancies` with a classification, and the
//! diff report checks that nothing else differs.

use std::fmt;

use dasym_core::expansion::{diff_expansions, TermDiff};
use dasym_core::{make_series, oracle_coefficient, reciprocal_expansion, Expansion, PowerTerm, Rational, SeriesId};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

const BUNDLED: [(&str, &str); 19] = [
    ("zeta_minus_1", include_str!("../fixtures/zeta_minus_1.json")),
    ("log_zeta", include_str!("../fixtures/log_zeta.json")),
    ("one_minus_eta", include_str!("../fixtures/one_minus_eta.json")),
    ("one_minus_beta", include_str!("../fixtures/one_minus_beta.json")),
    ("dirichlet_lambda_minus_1", include_str!("../fixtures/dirichlet_lambda_minus_1.json")),
    ("prime_zeta", include_str!("../fixtures/prime_zeta.json")),
    ("mobius_complement", include_str!("../fixtures/mobius_complement.json")),
    ("liouville_complement", include_str!("../fixtures/liouville_complement.json")),
    ("thue_morse_upsilon", include_str!("../fixtures/thue_morse_upsilon.json")),
    ("thue_morse_xi", include_str!("../fixtures/thue_morse_xi.json")),
    ("chi_-3", include_str!("../fixtures/chi_-3.json")),
    ("chi_+3", include_str!("../fixtures/chi_+3.json")),
    ("chi_-5", include_str!("../fixtures/chi_-5.json")),
    ("chi_6", include_str!("../fixtures/chi_6.json")),
    ("chi_-6", include_str!("../fixtures/chi_-6.json")),
    ("chi_10", include_str!("../fixtures/chi_10.json")),
    ("chi_-10", include_str!("../fixtures/chi_-10.json")),
    ("hurwitz_zeta(3/2)", include_str!("../fixtures/hurwitz_zeta_3_2.json")),
    ("hurwitz_lambda(3/2)", include_str!("../fixtures/hurwitz_lambda_3_2.json")),
];

const OEIS_A112932: &str = include_str!("../fixtures/oeis_a112932.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Paper,
    Oeis,
    Computed,
}

/// How a single differing term is explained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffKind {
    PaperTypoCandidate,
    IndexingAmbiguity,
    /// The printed value matches a truncated coefficient stream.
    StreamTruncation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownDiscrepancy {
    pub base: Rational,
    pub printed: Rational,
    pub computed: Rational,
    pub kind: DiffKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub series: String,
    pub source: Source,
    /// Strict fixtures fail the diff on any unregistered difference.
    pub strict: bool,
    pub terms: Vec<PowerTerm>,
    /// The printed list matches the stream restricted to indices below this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stream_cutoff: Option<u64>,
    #[serde(default)]
    pub known_discrepancies: Vec<KnownDiscrepancy>,
    pub notes: String,
}

impl Fixture {
    pub fn from_json(s: &str) -> CliResult<Self> {
        serde_json::from_str(s).map_err(|e| dasym_core::Error::Parse(e.to_string()).into())
    }

    /// Smallest printed base, the depth the comparison runs at.
    pub fn depth(&self) -> Rational {
        self.terms.iter().map(|t| t.base.clone()).min().unwrap_or_else(Rational::one)
    }

    pub fn as_expansion(&self) -> Expansion {
        Expansion::new(self.series.clone(), self.depth(), self.terms.iter().cloned())
    }
}

/// Names of all bundled printed-table fixtures, in catalog order.
pub fn fixture_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// Looks a fixture up by series name; any spelling `SeriesId` accepts works.
pub fn load_fixture(series: &str) -> CliResult<Fixture> {
    let wanted = series.parse::<SeriesId>().map(|id| id.to_string()).unwrap_or_else(|_| series.to_string());
    for (name, text) in BUNDLED {
        let canonical = name.parse::<SeriesId>().map(|id| id.to_string()).unwrap_or_else(|_| name.to_string());
        if name == series || canonical == wanted {
            return Fixture::from_json(text);
        }
    }
    Err(CliError::MissingFixture(series.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Agree,
    PaperTypoCandidate,
    IndexingAmbiguity,
    StreamTruncation,
    /// A difference no registered discrepancy explains.
    Mismatch,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Agree => "agree",
            Classification::PaperTypoCandidate => "paper-typo-candidate",
            Classification::IndexingAmbiguity => "indexing-ambiguity",
            Classification::StreamTruncation => "stream-truncation",
            Classification::Mismatch => "mismatch",
        })
    }
}

impl From<DiffKind> for Classification {
    fn from(k: DiffKind) -> Self {
        match k {
            DiffKind::PaperTypoCandidate => Classification::PaperTypoCandidate,
            DiffKind::IndexingAmbiguity => Classification::IndexingAmbiguity,
            DiffKind::StreamTruncation => Classification::StreamTruncation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedDiff {
    pub base: Rational,
    pub computed: Rational,
    pub printed: Rational,
    /// `None` when no registered discrepancy covers this term.
    pub kind: Option<DiffKind>,
    /// For typo candidates: whether the tuple oracle reproduces the
    /// computed coefficient.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_confirms: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub series: String,
    pub strict: bool,
    pub depth: Rational,
    pub printed_terms: usize,
    pub computed_terms: usize,
    pub classification: Classification,
    pub diffs: Vec<ClassifiedDiff>,
    /// Registered discrepancies that the computation did not reproduce.
    pub unobserved: Vec<Rational>,
    /// With a stream cutoff: whether the truncated stream reproduces every
    /// printed term.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_agrees: Option<bool>,
    pub pass: bool,
}

/// Compares the bundled fixture for `series` with a freshly computed
/// expansion at the fixture's printed depth.
pub fn fixture_diff(series: &str, config: &RunConfig) -> CliResult<FixtureReport> {
    diff_fixture(&load_fixture(series)?, config)
}

pub fn diff_fixture(fixture: &Fixture, config: &RunConfig) -> CliResult<FixtureReport> {
    let id: SeriesId = fixture.series.parse()?;
    let spec = make_series(&id)?;
    let depth = fixture.depth();
    let printed = fixture.as_expansion();
    let computed = reciprocal_expansion(&spec, &depth, config.term_cap)?;

    let truncated_agrees = match fixture.stream_cutoff {
        Some(cutoff) => {
            let short = spec.truncated(&Rational::integer(cutoff.saturating_sub(1)))?;
            let e = reciprocal_expansion(&short, &depth, config.term_cap)?;
            Some(diff_expansions(&e, &printed).is_empty())
        }
        None => None,
    };

    let mut diffs = Vec::new();
    for TermDiff { base, computed: c, reference } in diff_expansions(&computed, &printed) {
        let known = fixture
            .known_discrepancies
            .iter()
            .find(|k| k.base == base && k.printed == reference && k.computed == c);
        let oracle_confirms = match known {
            Some(k) if k.kind == DiffKind::PaperTypoCandidate => {
                Some(oracle_coefficient(&spec, &base, 64).map(|v| v == c).unwrap_or(false))
            }
            _ => None,
        };
        diffs.push(ClassifiedDiff { base, computed: c, printed: reference, kind: known.map(|k| k.kind), oracle_confirms });
    }
    let unobserved: Vec<Rational> = fixture
        .known_discrepancies
        .iter()
        .filter(|k| !diffs.iter().any(|d| d.base == k.base))
        .map(|k| k.base.clone())
        .collect();

    let explained = diffs.iter().all(|d| d.kind.is_some()) && unobserved.is_empty() && truncated_agrees != Some(false);
    let classification = if !explained {
        Classification::Mismatch
    } else {
        diffs.iter().filter_map(|d| d.kind).min().map(Classification::from).unwrap_or(Classification::Agree)
    };
    let confirmed = diffs.iter().all(|d| d.oracle_confirms != Some(false));
    let pass = !fixture.strict || (explained && confirmed);
    Ok(FixtureReport {
        series: fixture.series.clone(),
        strict: fixture.strict,
        depth,
        printed_terms: fixture.terms.len(),
        computed_terms: computed.len(),
        classification,
        diffs,
        unobserved,
        truncated_agrees,
        pass,
    })
}

/// Every bundled fixture, compared in catalog order.
pub fn diff_all(config: &RunConfig) -> CliResult<Vec<FixtureReport>> {
    fixture_names().into_iter().map(|n| fixture_diff(n, config)).collect()
}

impl FixtureReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{:<28} {:<22} {:<6} depth {:<8} printed {:>3}  {}\n",
            self.series,
            self.classification.to_string(),
            if self.strict { "strict" } else { "report" },
            self.depth.to_string(),
            self.printed_terms,
            if self.pass { "PASS" } else { "FAIL" }
        );
        for d in &self.diffs {
            let kind = match d.kind {
                Some(k) => Classification::from(k).to_string(),
                None => "unexplained".to_string(),
            };
            let oracle = match d.oracle_confirms {
                Some(true) => "  oracle confirms",
                Some(false) => "  ORACLE DISAGREES",
                None => "",
            };
            out.push_str(&format!(
                "    base {:<10} printed {:>5} computed {:>5}  {kind}{oracle}\n",
                d.base.to_string(),
                coeff_str(&d.printed),
                coeff_str(&d.computed)
            ));
        }
        for b in &self.unobserved {
            out.push_str(&format!("    base {b} registered but not reproduced\n"));
        }
        if self.truncated_agrees == Some(false) {
            out.push_str("    truncated stream does not reproduce the printed list\n");
        }
        out
    }
}

fn coeff_str(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        c.to_string()
    }
}

/// An integer sequence transcribed from OEIS.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisFixture {
    pub sequence: String,
    pub source: Source,
    pub description: String,
    pub values: Vec<u64>,
    pub notes: String,
}

pub fn bundled_oeis() -> CliResult<OeisFixture> {
    serde_json::from_str(OEIS_A112932).map_err(|e| dasym_core::Error::Parse(e.to_string()).into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OeisMismatch {
    /// 1-based position in the sequence.
    pub position: usize,
    pub expected: u64,
    pub computed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OeisReport {
    pub sequence: String,
    pub compared: usize,
    pub mismatches: Vec<OeisMismatch>,
    pub matched: bool,
}

/// Denominators of the ζ−1 reciprocal bases, in decreasing order of base,
/// against the bundled sequence.
pub fn oeis_crosscheck(fixture: &OeisFixture, config: &RunConfig) -> CliResult<OeisReport> {
    let spec = make_series(&SeriesId::ZetaMinus1)?;
    let wanted = fixture.values.len();
    let mut threshold = config.threshold.clone();
    let expansion = loop {
        let e = reciprocal_expansion(&spec, &threshold, config.term_cap.max(4 * wanted))?;
        if e.len() >= wanted || threshold < Rational::new(1, 1 << 20) {
            break e;
        }
        threshold = &threshold / &Rational::integer(2);
    };
    let denominators: Vec<u64> = expansion
        .terms()
        .iter()
        .map(|t| t.base.denom().to_string().parse().unwrap_or(u64::MAX))
        .collect();
    let mismatches: Vec<OeisMismatch> = fixture
        .values
        .iter()
        .enumerate()
        .filter_map(|(i, &expected)| {
            let computed = denominators.get(i).copied();
            (computed != Some(expected)).then_some(OeisMismatch { position: i + 1, expected, computed })
        })
        .collect();
    Ok(OeisReport { sequence: fixture.sequence.clone(), compared: wanted, matched: mismatches.is_empty(), mismatches })
}

impl OeisReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{} ({} terms): {}\n",
            self.sequence,
            self.compared,
            if self.matched { "match" } else { "MISMATCH" }
        );
        for m in &self.mismatches {
            let got = m.computed.map(|c| c.to_string()).unwrap_or_else(|| "none".into());
            out.push_str(&format!("    position {} expected {} computed {got}\n", m.position, m.expected));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_fixture_parses() {
        for name in fixture_names() {
            let f = load_fixture(name).unwrap();
            assert_eq!(f.source, Source::Paper);
            assert!(!f.terms.is_empty(), "{name}");
            assert!(f.series.parse::<SeriesId>().is_ok(), "{name}");
        }
        assert_eq!(bundled_oeis().unwrap().values.len(), 21);
    }

    #[test]
    fn lookup_accepts_aliases() {
        assert_eq!(load_fixture("hurwitz_zeta:3/2").unwrap().series, "hurwitz_zeta(3/2)");
        assert!(matches!(load_fixture("zeta_plus_7"), Err(CliError::MissingFixture(_))));
        assert!(matches!(load_fixture("hurwitz_zeta(5/2)"), Err(CliError::MissingFixture(_))));
    }

    #[test]
    fn zeta_agrees() {
        let r = fixture_diff("zeta_minus_1", &RunConfig::default()).unwrap();
        assert_eq!(r.classification, Classification::Agree);
        assert!(r.pass && r.diffs.is_empty());
        assert_eq!(r.depth, Rational::new(8, 45));
    }

    #[test]
    fn altered_fixture_is_a_mismatch() {
        let mut f = load_fixture("zeta_minus_1").unwrap();
        f.terms[3].coeff = -&f.terms[3].coeff;
        let r = diff_fixture(&f, &RunConfig::default()).unwrap();
        assert_eq!(r.classification, Classification::Mismatch);
        assert!(!r.pass);
    }

    #[test]
    fn non_strict_fixture_never_fails() {
        let mut f = load_fixture("chi_-5").unwrap();
        f.terms[1].coeff = Rational::integer(99);
        let r = diff_fixture(&f, &RunConfig::default()).unwrap();
        assert_eq!(r.classification, Classification::Mismatch);
        assert!(r.pass);
    }

    #[test]
    fn oeis_controls() {
        let config = RunConfig::default();
        let full = bundled_oeis().unwrap();
        assert!(oeis_crosscheck(&full, &config).unwrap().matched);

        let mut one = full.clone();
        one.values.truncate(1);
        let r = oeis_crosscheck(&one, &config).unwrap();
        assert!(r.matched && r.compared == 1);

        let mut bad = full.clone();
        bad.values[4] += 1;
        bad.values[10] = 1000;
        let r = oeis_crosscheck(&bad, &config).unwrap();
        assert!(!r.matched);
        assert_eq!(r.mismatches.iter().map(|m| m.position).collect::<Vec<_>>(), vec![5, 11]);
    }
}
