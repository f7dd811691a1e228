//! The acceptance suite: nine criteria, each reduced to one pass/fail line.
//!
//! Criteria run on separate threads; results are reported in criterion
//! order so the output does not depend on scheduling.

use std::time::{Duration, Instant};

use dasym_core::expansion::{exp_minus_one_coefficients, log_one_plus_coefficients, normalize_terms};
use dasym_core::numerics::{
    beta_real, dirichlet_lambda_real, euler_gamma, eta_real, hurwitz_zeta_real, limit_probe, lngamma_pole_series,
    lngamma_real, prime_zeta_real, validate_expansion, zeta_real, BigReal, PrecisionContext, Validation,
};
use dasym_core::signs::lambda_a_unit_numerator;
use dasym_core::{
    analytic_transform, audit_signs, default_catalog, lambda_a, lambda_v, make_series, oracle_coefficient,
    reciprocal_expansion, Expansion, Law, PowerTerm, Prediction, Rational, SeriesId,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::fixtures::{self, Classification};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("[{}] criterion {} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }
}

pub const TITLES: [&str; 9] = [
    "zeta reciprocal table",
    "catalog tables",
    "oracle equivalence",
    "numeric residuals",
    "sign-law audits",
    "gamma pole limits",
    "limits at infinity",
    "lngamma pole series",
    "property suites",
];

fn result(id: u8, pass: bool, detail: String) -> CriterionResult {
    let title = TITLES.get((id as usize).wrapping_sub(1)).copied().unwrap_or("unknown");
    CriterionResult { id, title, pass, detail }
}

fn failed(id: u8, e: impl std::fmt::Display) -> CriterionResult {
    result(id, false, format!("error: {e}"))
}

/// Runs one criterion by number (1 to 9).
pub fn run_criterion(id: u8, config: &RunConfig) -> CriterionResult {
    match id {
        1 => zeta_table(config),
        2 => catalog_tables(config),
        3 => oracle_equivalence(),
        4 => numeric_residuals(config),
        5 => sign_audits(),
        6 => pole_limits(config),
        7 => infinity_limits(config),
        8 => pole_series(config),
        9 => property_suites(config),
        _ => failed(id, format!("no criterion {id}")),
    }
}

/// All nine criteria, in parallel, reported in order.
pub fn run_all(config: &RunConfig) -> Vec<CriterionResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=9u8)
            .map(|id| {
                std::thread::Builder::new()
                    .stack_size(64 << 20)
                    .spawn_scoped(scope, move || run_criterion(id, config))
                    .expect("spawn criterion thread")
            })
            .collect();
        handles
            .into_iter()
            .zip(1..=9u8)
            .map(|(h, id)| h.join().unwrap_or_else(|_| failed(id, "panicked")))
            .collect()
    })
}

fn within(limit: Duration, start: Instant) -> bool {
    start.elapsed() < limit
}

fn zeta_table(config: &RunConfig) -> CriterionResult {
    let start = Instant::now();
    let report = match fixtures::fixture_diff("zeta_minus_1", config) {
        Ok(r) => r,
        Err(e) => return failed(1, e),
    };
    let spec = make_series(&SeriesId::ZetaMinus1).expect("cataloged");
    let e = match reciprocal_expansion(&spec, &Rational::new(8, 45), config.term_cap) {
        Ok(e) => e,
        Err(e) => return failed(1, e),
    };
    let spot = [((4, 9), -2), ((8, 27), 3), ((16, 45), -3), ((32, 135), 4), ((8, 45), 7)];
    let spots_ok = spot
        .iter()
        .all(|&((p, q), c)| e.coefficient(&Rational::new(p, q)) == Some(&Rational::integer(c)));
    let reduced = e.terms().iter().all(|t| t.base.is_reduced() && t.coeff.is_integer());
    let fast = within(Duration::from_secs(5), start);
    let pass = report.classification == Classification::Agree && spots_ok && reduced && fast;
    result(
        1,
        pass,
        format!(
            "{} printed terms {}, spot coefficients {}, integer coefficients on reduced bases {}{}",
            report.printed_terms,
            if report.diffs.is_empty() { "reproduced" } else { "differ" },
            if spots_ok { "match" } else { "differ" },
            if reduced { "yes" } else { "no" },
            if fast { "" } else { ", over 5 s" }
        ),
    )
}

fn catalog_tables(config: &RunConfig) -> CriterionResult {
    let start = Instant::now();
    let reports = match fixtures::diff_all(config) {
        Ok(r) => r,
        Err(e) => return failed(2, e),
    };
    let strict: Vec<_> = reports.iter().filter(|r| r.strict).collect();
    let exact = strict.iter().filter(|r| r.classification == Classification::Agree).count();
    let registered: usize = strict.iter().map(|r| r.diffs.len()).sum();
    let failing: Vec<&str> = strict.iter().filter(|r| !r.pass).map(|r| r.series.as_str()).collect();
    let reported: Vec<String> = reports
        .iter()
        .filter(|r| !r.strict)
        .map(|r| format!("{} {}", r.series, r.classification))
        .collect();
    let fast = within(Duration::from_secs(30), start);
    let mut detail = format!(
        "{}/{} strict fixtures pass ({exact} exact, {registered} registered discrepancies confirmed); reported: {}",
        strict.len() - failing.len(),
        strict.len(),
        reported.join(", ")
    );
    if !failing.is_empty() {
        detail.push_str(&format!("; failing: {}", failing.join(", ")));
    }
    if !fast {
        detail.push_str("; over 30 s");
    }
    result(2, failing.is_empty() && fast, detail)
}

/// Per-series count of agreeing and total oracle checks at θ = 1/5.
pub fn oracle_checks() -> Vec<(String, usize, usize)> {
    let theta = Rational::new(1, 5);
    default_catalog()
        .into_iter()
        .map(|id| {
            let spec = make_series(&id).expect("cataloged");
            let Ok(e) = reciprocal_expansion(&spec, &theta, 1 << 14) else {
                return (id.to_string(), 0, 1);
            };
            let agree = e
                .terms()
                .iter()
                .filter(|t| oracle_coefficient(&spec, &t.base, 64).map(|c| c == t.coeff).unwrap_or(false))
                .count();
            (id.to_string(), agree, e.len())
        })
        .collect()
}

fn oracle_equivalence() -> CriterionResult {
    let checks = oracle_checks();
    let total: usize = checks.iter().map(|c| c.2).sum();
    let agree: usize = checks.iter().map(|c| c.1).sum();
    let bad: Vec<&str> = checks.iter().filter(|c| c.1 != c.2).map(|c| c.0.as_str()).collect();
    let mut detail = format!("{agree}/{total} coefficients agree across {} series", checks.len());
    if !bad.is_empty() {
        detail.push_str(&format!("; disagreeing: {}", bad.join(", ")));
    }
    result(3, bad.is_empty() && total >= 150, detail)
}

/// One row of the residual criterion.
#[derive(Clone, Debug)]
pub struct ResidualCheck {
    pub series: String,
    pub leading_base: Rational,
    pub s: i64,
    pub validation: Result<Validation, String>,
}

/// Validation at θ = 1/5 for every cataloged series with leading base 2, 3
/// or 5; s = 40 for base 2, s = 60 otherwise.
pub fn residual_checks(config: &RunConfig) -> Vec<ResidualCheck> {
    let ctx = config.precision();
    let theta = Rational::new(1, 5);
    default_catalog()
        .into_iter()
        .filter_map(|id| {
            let spec = make_series(&id).ok()?;
            let (b1, _) = spec.leading().ok()?;
            let s = match b1.to_f64() as i64 {
                2 if b1.is_integer() => 40,
                3 | 5 if b1.is_integer() => 60,
                _ => return None,
            };
            let validation = reciprocal_expansion(&spec, &theta, config.term_cap)
                .and_then(|e| validate_expansion(&spec, &e, &BigReal::from_i64(s), &ctx))
                .map_err(|e| e.to_string());
            Some(ResidualCheck { series: id.to_string(), leading_base: b1, s, validation })
        })
        .collect()
}

fn numeric_residuals(config: &RunConfig) -> CriterionResult {
    let checks = residual_checks(config);
    let errors: Vec<String> = checks
        .iter()
        .filter_map(|c| c.validation.as_ref().err().map(|e| format!("{}: {e}", c.series)))
        .collect();
    if !errors.is_empty() {
        return result(4, false, errors.join("; "));
    }
    let vals: Vec<(&ResidualCheck, &Validation)> =
        checks.iter().map(|c| (c, c.validation.as_ref().expect("checked above"))).collect();
    let plain = vals.iter().filter(|(_, v)| v.pass).count();
    let scaled = vals.iter().filter(|(_, v)| v.term_pass).count();
    let over: Vec<String> = vals
        .iter()
        .filter(|(_, v)| !v.pass)
        .map(|(c, v)| {
            let coeff = v.first_omitted_coeff.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "?".into());
            format!("{} (c={coeff} at {})", c.series, v.first_omitted_base)
        })
        .collect();
    let mut detail = format!("{plain}/{} within 2*b^s", vals.len());
    if !over.is_empty() {
        detail.push_str(&format!(
            "; over the bound, each with first omitted |c| >= 2: {}; {scaled}/{} within 2*|c|*b^s",
            over.join(", "),
            vals.len()
        ));
    }
    result(4, plain == vals.len(), detail)
}

/// (series, law) pairs audited by the sign criterion.
pub const AUDITS: [(&str, Law); 5] = [
    ("zeta_minus_1", Law::V),
    ("dirichlet_lambda_minus_1", Law::V),
    ("chi_6", Law::V),
    ("chi_10", Law::V),
    ("one_minus_eta", Law::A),
];

fn sign_audits() -> CriterionResult {
    let theta = Rational::new(1, 5);
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, law) in AUDITS {
        let report = name
            .parse::<SeriesId>()
            .and_then(|id| make_series(&id))
            .and_then(|spec| reciprocal_expansion(&spec, &theta, 1 << 14))
            .and_then(|e| audit_signs(&e, law));
        match report {
            Ok(r) => {
                pass &= r.counts.mismatched == 0;
                let unclassified: Vec<String> = r.unclassified().map(|v| v.base.to_string()).collect();
                parts.push(format!(
                    "{name} {law:?} {}/{}/{} [{}]",
                    r.counts.matched,
                    r.counts.mismatched,
                    r.counts.unclassified,
                    unclassified.join(" ")
                ));
            }
            Err(e) => return failed(5, e),
        }
    }
    result(5, pass, format!("matched/mismatched/unclassified: {}", parts.join("; ")))
}

fn parse(s: &str) -> BigReal {
    BigReal::parse_decimal(s, 512).expect("literal parses")
}

fn probe_deviation(name: &str, x: &str, n: Option<u32>, ctx: &PrecisionContext) -> Result<f64, String> {
    limit_probe(name, &parse(x), n, ctx).map(|r| r.abs_deviation()).map_err(|e| e.to_string())
}

/// A probe deviation against its tolerance.
struct ProbeCheck {
    label: String,
    deviation: Result<f64, String>,
    tolerance: f64,
}

impl ProbeCheck {
    fn ok(&self) -> bool {
        matches!(self.deviation, Ok(d) if d <= self.tolerance)
    }

    fn describe(&self) -> String {
        match &self.deviation {
            Ok(d) => format!("{} {:.2e}<={:.1e}", self.label, d, self.tolerance),
            Err(e) => format!("{} {e}", self.label),
        }
    }
}

fn summarize(id: u8, checks: &[ProbeCheck], extra: Option<(bool, String)>) -> CriterionResult {
    let mut pass = checks.iter().all(ProbeCheck::ok);
    let mut parts: Vec<String> = checks.iter().map(ProbeCheck::describe).collect();
    if let Some((ok, text)) = extra {
        pass &= ok;
        parts.push(text);
    }
    result(id, pass, parts.join("; "))
}

fn pole_limits(config: &RunConfig) -> CriterionResult {
    let ctx = config.precision();
    let mut checks = vec![
        ProbeCheck {
            label: "quadratic n=0".into(),
            deviation: probe_deviation("pole_quadratic", "1e-4", Some(0), &ctx),
            tolerance: 1e-7,
        },
        ProbeCheck {
            label: "quadratic n=3".into(),
            deviation: probe_deviation("pole_quadratic", "1e-4", Some(3), &ctx),
            tolerance: 1e-6,
        },
        ProbeCheck {
            label: "consecutive n=0".into(),
            deviation: probe_deviation("consecutive_singularity", "1e-3", Some(0), &ctx),
            tolerance: 1e-2,
        },
    ];
    for n in [0, 1, 2, 5] {
        checks.push(ProbeCheck {
            label: format!("linear n={n}"),
            deviation: probe_deviation("pole_linear", "1e-6", Some(n), &ctx),
            tolerance: 1e-5,
        });
    }
    summarize(6, &checks, None)
}

fn infinity_limits(config: &RunConfig) -> CriterionResult {
    let ctx = config.precision();
    let lambda_bound = 2.0 * (9f64 / 11.0).powi(40);
    let checks = vec![
        ProbeCheck {
            label: "cloitre x=64".into(),
            deviation: probe_deviation("cloitre", "64", None, &ctx),
            tolerance: 2.0 * (8f64 / 9.0).powi(64),
        },
        ProbeCheck {
            label: "augmented x=64".into(),
            deviation: probe_deviation("cloitre_augmented", "64", None, &ctx),
            tolerance: 2.0 * (4f64 / 7.0).powi(64),
        },
        ProbeCheck {
            label: "difference x=40".into(),
            deviation: probe_deviation("difference", "40", None, &ctx),
            tolerance: 1e-3,
        },
        ProbeCheck {
            label: "lambda_lambda x=40".into(),
            deviation: probe_deviation("lambda_lambda", "40", None, &ctx),
            tolerance: lambda_bound,
        },
        ProbeCheck {
            label: "gamma_lambda x=40".into(),
            deviation: probe_deviation("gamma_lambda", "40", None, &ctx),
            tolerance: lambda_bound,
        },
    ];
    let mut star_ok = true;
    let mut star_parts = Vec::new();
    for n in [1u32, 2] {
        let devs: Result<Vec<f64>, String> =
            ["16", "32", "48"].iter().map(|x| probe_deviation("star", x, Some(n), &ctx)).collect();
        match devs {
            Ok(d) => {
                star_ok &= d.windows(2).all(|w| w[1] < w[0]);
                star_parts.push(format!("n={n} {:.2e}>{:.2e}>{:.2e}", d[0], d[1], d[2]));
            }
            Err(e) => {
                star_ok = false;
                star_parts.push(format!("n={n} {e}"));
            }
        }
    }
    summarize(7, &checks, Some((star_ok, format!("star decreasing {}", star_parts.join(" ")))))
}

/// |partial sum − ln|Γ(−n + (−1)ⁿx)|| at x = 1/100 with K = 12.
pub fn pole_series_gaps(ctx: &PrecisionContext) -> Vec<(u64, Result<f64, String>)> {
    let wp = ctx.bits + 64;
    let x = BigReal::from_rational(&Rational::new(1, 100), wp);
    [0u64, 1, 2, 5]
        .into_iter()
        .map(|n| {
            let signed = if n % 2 == 0 { x.clone() } else { x.neg() };
            let arg = signed.add_i64(-(n as i64), wp);
            let gap = lngamma_real(&arg, ctx).and_then(|lg| {
                let partial = lngamma_pole_series(n, 12).partial_sum(&x, ctx)?;
                Ok(lg.ln_abs.distance(&partial, wp).to_f64())
            });
            (n, gap.map_err(|e| e.to_string()))
        })
        .collect()
}

fn pole_series(config: &RunConfig) -> CriterionResult {
    let gaps = pole_series_gaps(&config.precision());
    let pass = gaps.iter().all(|(_, g)| matches!(g, Ok(d) if *d <= 1e-24));
    let parts: Vec<String> = gaps
        .iter()
        .map(|(n, g)| match g {
            Ok(d) => format!("n={n} {d:.2e}"),
            Err(e) => format!("n={n} {e}"),
        })
        .collect();
    result(8, pass, format!("{} (tolerance 1e-24)", parts.join(", ")))
}

/// Small deterministic generator for the sampled property checks.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn omega_by_division(mut n: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    count + u32::from(n > 1)
}

fn rational_reduction() -> Result<usize, String> {
    let mut checks = 0;
    for n in -40i64..=40 {
        for d in (-40i64..=40).filter(|&d| d != 0) {
            let r = Rational::new(n, d);
            let g = gcd(n.unsigned_abs(), d.unsigned_abs()) as i64;
            let expect_num = n.signum() * d.signum() * n.abs() / g;
            let expect_den = if n == 0 { 1 } else { d.abs() / g };
            if !r.is_reduced() || r.numer().to_string() != expect_num.to_string() || r.denom().to_string() != expect_den.to_string() {
                return Err(format!("{n}/{d} reduced to {r}"));
            }
            let back: Rational = r.to_string().parse().map_err(|e| format!("{e}"))?;
            if back != r {
                return Err(format!("{r} does not round-trip"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn merge_uniqueness() -> Result<usize, String> {
    let mut rng = Lcg(7);
    for case in 0..300 {
        let len = rng.range(0, 24) as usize;
        let terms: Vec<PowerTerm> = (0..len)
            .map(|_| {
                let (p, q) = (rng.range(1, 12), rng.range(1, 12));
                PowerTerm::new(Rational::integer(rng.range(-3, 3)), Rational::new(p, q))
            })
            .collect();
        let merged = normalize_terms(terms.clone());
        if merged.windows(2).any(|w| w[0].base <= w[1].base) || merged.iter().any(|t| t.coeff.is_zero()) {
            return Err(format!("case {case}: bases not strictly descending or zero kept"));
        }
        for t in &terms {
            let total = terms.iter().filter(|u| u.base == t.base).fold(Rational::zero(), |acc, u| &acc + &u.coeff);
            let found = merged.iter().find(|m| m.base == t.base).map(|m| m.coeff.clone()).unwrap_or_else(Rational::zero);
            if found != total {
                return Err(format!("case {case}: base {} sums to {total}, merged {found}", t.base));
            }
        }
    }
    Ok(300)
}

/// exp(log(1 + u)) − 1 = u for several inner expansions.
fn transform_round_trip() -> Result<usize, String> {
    let floor = Rational::new(1, 40);
    let inners: Vec<Expansion> = vec![
        Expansion::new("zeta_tail", floor.clone(), (3..=80).map(|n| PowerTerm::new(Rational::one(), Rational::new(2, n)))),
        Expansion::new(
            "eta_tail",
            floor.clone(),
            (3..=80).map(|n| PowerTerm::new(Rational::integer(if n % 2 == 0 { -1 } else { 1 }), Rational::new(2, n))),
        ),
        Expansion::new(
            "mixed",
            floor.clone(),
            vec![
                PowerTerm::new(Rational::new(1, 2), Rational::new(2, 3)),
                PowerTerm::new(Rational::integer(-3), Rational::new(3, 7)),
                PowerTerm::new(Rational::integer(5), Rational::new(1, 5)),
            ],
        ),
    ];
    for u in &inners {
        let log = analytic_transform(log_one_plus_coefficients(), u, &floor).map_err(|e| e.to_string())?;
        let back = analytic_transform(exp_minus_one_coefficients(), &log, &floor).map_err(|e| e.to_string())?;
        if back.terms() != u.terms() {
            return Err(format!("{} does not round-trip", u.series()));
        }
    }
    Ok(inners.len())
}

/// λ_V and λ_A against their case split, recomputed with an independent Ω.
fn sign_law_case_split() -> Result<usize, String> {
    let mut checks = 0;
    for p in 1..=60u64 {
        for q in 1..=60u64 {
            if gcd(p, q) != 1 {
                if lambda_v(p, q).is_ok() || lambda_a(p, q).is_ok() {
                    return Err(format!("{p}/{q} accepted unreduced"));
                }
                continue;
            }
            let (op, oq) = (omega_by_division(p), omega_by_division(q));
            let liouville_q = if oq % 2 == 0 { Prediction::Plus } else { Prediction::Minus };
            let flip = |x: Prediction| if x == Prediction::Plus { Prediction::Minus } else { Prediction::Plus };
            let v = if p == 1 && q != 1 {
                Prediction::Plus
            } else if op.abs_diff(oq) == 1 {
                liouville_q
            } else if op == oq {
                flip(liouville_q)
            } else {
                Prediction::Unclassified
            };
            let a = match op.abs_diff(oq) {
                1 => Prediction::Plus,
                0 => Prediction::Minus,
                _ => Prediction::Unclassified,
            };
            let a_unit = if p == 1 && q != 1 { Prediction::Plus } else { a };
            let got = (lambda_v(p, q), lambda_a(p, q), lambda_a_unit_numerator(p, q));
            if got != (Ok(v), Ok(a), Ok(a_unit)) {
                return Err(format!("{p}/{q}: {got:?}"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn close(a: &BigReal, b: &BigReal, ctx: &PrecisionContext) -> bool {
    let slack = 2f64.powi(16 - ctx.bits as i32) * a.magnitude().max(1.0);
    a.distance(b, ctx.bits + 64).to_f64() <= a.err() + b.err() + slack
}

/// η, ζ, λ, β against relations that route through different evaluators.
fn evaluator_identities(ctx: &PrecisionContext) -> Result<usize, String> {
    let wp = ctx.bits + 64;
    let e = |r: dasym_core::Result<BigReal>| r.map_err(|e| e.to_string());
    let mut checks = 0;
    for s in ["1.5", "2", "3", "10", "40"] {
        let s = parse(s);
        let zeta = e(zeta_real(&s, ctx))?;
        let two_pow = BigReal::from_i64(2).powr(&s.neg(), wp);
        let eta_rel = zeta.mul(&BigReal::one().sub(&two_pow.mul_i64(2, wp), wp), wp);
        let lambda_rel = zeta.mul(&BigReal::one().sub(&two_pow, wp), wp);
        let lambda = e(dirichlet_lambda_real(&s, ctx))?;
        let pairs = [
            ("zeta = hurwitz(1)", zeta.clone(), e(hurwitz_zeta_real(&s, &Rational::one(), ctx))?),
            ("eta = (1-2^(1-s))zeta", e(eta_real(&s, ctx))?, eta_rel),
            ("lambda = (1-2^-s)zeta", lambda.clone(), lambda_rel),
            ("lambda = 2^-s hurwitz(1/2)", lambda, e(hurwitz_zeta_real(&s, &Rational::new(1, 2), ctx))?.mul(&two_pow, wp)),
        ];
        for (label, a, b) in pairs {
            if !close(&a, &b, ctx) {
                return Err(format!("{label} at s = {}", s.to_decimal(6)));
            }
            checks += 1;
        }
    }
    let pi = BigReal::pi(wp);
    let pi2 = pi.mul(&pi, wp);
    let catalan = parse("0.91596559417721901505460351493238411077414937428167213426649811962176301977625476947935651292611510624857442261919619957903589880332585905943159473748115840699533202877331946051903872747816408786590902");
    let fixed = [
        ("zeta(2) = pi^2/6", e(zeta_real(&BigReal::from_i64(2), ctx))?, pi2.div(&BigReal::from_i64(6), wp)),
        ("zeta(4) = pi^4/90", e(zeta_real(&BigReal::from_i64(4), ctx))?, pi2.mul(&pi2, wp).div(&BigReal::from_i64(90), wp)),
        ("eta(1) = ln 2", e(eta_real(&BigReal::one(), ctx))?, BigReal::ln2(wp)),
        ("beta(1) = pi/4", e(beta_real(&BigReal::one(), ctx))?, pi.div(&BigReal::from_i64(4), wp)),
        ("beta(2) = Catalan", e(beta_real(&BigReal::from_i64(2), ctx))?, catalan),
    ];
    for (label, a, b) in fixed {
        if !close(&a, &b, ctx) {
            return Err(label.to_string());
        }
        checks += 1;
    }
    Ok(checks)
}

/// Recomputing with 64 more bits must stay within the reported bounds.
fn error_bound_honesty(lo: &PrecisionContext) -> Result<usize, String> {
    let hi = &lo.raised(64);
    type Eval = fn(&BigReal, &PrecisionContext) -> dasym_core::Result<BigReal>;
    let evals: [(&str, Eval); 6] = [
        ("zeta", zeta_real),
        ("eta", eta_real),
        ("beta", beta_real),
        ("prime_zeta", prime_zeta_real),
        ("hurwitz(3/2)", |s, c| hurwitz_zeta_real(s, &Rational::new(3, 2), c)),
        ("lngamma", |s, c| lngamma_real(s, c).map(|g| g.ln_abs)),
    ];
    let mut checks = 0;
    for (name, f) in evals {
        for s in ["1.5", "2", "3.25", "7", "25.5", "61"] {
            let s = parse(s);
            let (a, b) = (f(&s, lo).map_err(|e| e.to_string())?, f(&s, hi).map_err(|e| e.to_string())?);
            if a.distance(&b, 512).to_f64() > a.err() + b.err() {
                return Err(format!("{name} at {}", s.to_decimal(6)));
            }
            checks += 1;
        }
    }
    let (a, b) = (euler_gamma(lo), euler_gamma(hi));
    if a.distance(&b, 512).to_f64() > a.err() + b.err() {
        return Err("euler gamma".into());
    }
    Ok(checks + 1)
}

fn property_suites(config: &RunConfig) -> CriterionResult {
    let ctx = config.precision();
    let suites: [(&str, Result<usize, String>); 6] = [
        ("rational reduction", rational_reduction()),
        ("merge uniqueness", merge_uniqueness()),
        ("transform round-trip", transform_round_trip()),
        ("sign-law case split", sign_law_case_split()),
        ("evaluator identities", evaluator_identities(&ctx)),
        ("error-bound honesty", error_bound_honesty(&ctx)),
    ];
    let pass = suites.iter().all(|(_, r)| r.is_ok());
    let parts: Vec<String> = suites
        .iter()
        .map(|(name, r)| match r {
            Ok(n) => format!("{name} {n}"),
            Err(e) => format!("{name} FAILED ({e})"),
        })
        .collect();
    result(9, pass, parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_oracle() {
        assert_eq!(omega_by_division(1), 0);
        assert_eq!(omega_by_division(360), 6);
        assert_eq!(omega_by_division(59), 1);
    }

    #[test]
    fn lcg_is_deterministic() {
        let (mut a, mut b) = (Lcg(3), Lcg(3));
        assert!((0..20).all(|_| a.range(-5, 5) == b.range(-5, 5)));
    }

    #[test]
    fn unknown_criterion() {
        assert!(!run_criterion(10, &RunConfig::default()).pass);
    }
}
