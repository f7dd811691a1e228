use std::fmt::Write as _;

use dasym_core::catalog::catalog_listing;
use dasym_core::expansion::RenderStyle;
use dasym_core::numerics::{limit_probe, validate_expansion, BigReal, ProbeId, Validation};
use dasym_core::signs::AuditReport;
use dasym_core::{audit_signs, make_series, oracle_coefficient, reciprocal_expansion, Expansion, Law, Rational, SeriesId};
use serde_json::json;

use crate::acceptance;
use crate::config::{OutputFormat, RunConfig};
use crate::error::CliResult;
use crate::fixtures;

/// Rendered command output and whether every check it ran passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, ok: true }
    }
}

/// Digits shown for probe values in text mode.
pub const TEXT_DIGITS: usize = 40;

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

pub fn cmd_catalog(config: &RunConfig) -> CliResult<Outcome> {
    let entries = catalog_listing()?;
    if config.format == OutputFormat::Json {
        return Ok(Outcome::ok(pretty(&serde_json::to_value(&entries).expect("catalog serializes"))));
    }
    let mut out = String::new();
    for e in &entries {
        let orient = e.orientation.map(|o| o.as_str()).unwrap_or("-");
        let _ = writeln!(out, "{:<30} lead {:<5} {:<12} {}", e.name, e.leading_base.to_string(), orient, e.description);
    }
    Ok(Outcome::ok(out))
}

fn expansion_for(series: &str, config: &RunConfig) -> CliResult<Expansion> {
    let id: SeriesId = series.parse()?;
    let spec = make_series(&id)?;
    Ok(reciprocal_expansion(&spec, &config.threshold, config.term_cap)?)
}

pub fn cmd_expand(series: &str, config: &RunConfig, style: RenderStyle) -> CliResult<Outcome> {
    let e = expansion_for(series, config)?;
    if config.format == OutputFormat::Json {
        return Ok(Outcome::ok(e.to_json() + "\n"));
    }
    let mut out = String::new();
    let _ = writeln!(out, "series     {}", e.series());
    let _ = writeln!(out, "threshold  {}", e.threshold());
    let _ = writeln!(out, "terms      {}", e.len());
    let _ = writeln!(out, "{}", e.render(style));
    Ok(Outcome::ok(out))
}

pub fn cmd_oracle(series: &str, base: &Rational, depth_cap: usize, config: &RunConfig) -> CliResult<Outcome> {
    let id: SeriesId = series.parse()?;
    let spec = make_series(&id)?;
    let coeff = oracle_coefficient(&spec, base, depth_cap)?;
    let output = match config.format {
        OutputFormat::Json => pretty(&json!({
            "series": id.to_string(),
            "base": base.to_string(),
            "coeff": coeff.to_string(),
        })),
        OutputFormat::Text => format!("{id} base {base}: {coeff}\n"),
    };
    Ok(Outcome::ok(output))
}

fn audit_text(r: &AuditReport, out: &mut String) {
    let law = serde_json::to_value(r.law).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
    let _ = writeln!(
        out,
        "law {law}: matched {} mismatched {} unclassified {}",
        r.counts.matched, r.counts.mismatched, r.counts.unclassified
    );
    for v in r.mismatches() {
        let _ = writeln!(out, "    mismatch      {:<10} actual {:+} predicted {}", v.base.to_string(), v.actual, v.predicted);
    }
    for v in r.unclassified() {
        let _ = writeln!(out, "    unclassified  {:<10} actual {:+}", v.base.to_string(), v.actual);
    }
}

/// Sign audit. With law A the alternative unit-numerator reading is shown
/// as well in text mode; the exit status follows the primary reading.
pub fn cmd_audit(series: &str, law: Law, config: &RunConfig) -> CliResult<Outcome> {
    let e = expansion_for(series, config)?;
    let report = audit_signs(&e, law)?;
    let ok = report.counts.mismatched == 0;
    if config.format == OutputFormat::Json {
        return Ok(Outcome { output: report.to_json() + "\n", ok });
    }
    let mut out = format!("series {} threshold {}\n", e.series(), e.threshold());
    audit_text(&report, &mut out);
    if law == Law::A {
        audit_text(&audit_signs(&e, Law::AUnitNumerator)?, &mut out);
    }
    Ok(Outcome { output: out, ok })
}

/// Default validation exponent: 40 for a leading base of 2, 60 otherwise.
pub fn default_s(series: &str) -> CliResult<u32> {
    let id: SeriesId = series.parse()?;
    let (b1, _) = make_series(&id)?.leading()?;
    Ok(if b1 == Rational::integer(2) { 40 } else { 60 })
}

pub fn validation_text(v: &Validation) -> String {
    let d = TEXT_DIGITS;
    let mut out = String::new();
    let _ = writeln!(out, "series              {}", v.series);
    let _ = writeln!(out, "s                   {}", v.s.to_decimal(d));
    let _ = writeln!(out, "residual            {}", v.residual.to_decimal(12));
    let _ = writeln!(out, "first omitted base  {}", v.first_omitted_base);
    match &v.first_omitted_coeff {
        Some(c) => {
            let _ = writeln!(out, "first omitted coeff {c}");
        }
        None => {
            let _ = writeln!(out, "first omitted coeff none found");
        }
    }
    let _ = writeln!(out, "bound 2*b^s         {}  {}", v.bound.to_decimal(12), verdict(v.pass));
    let _ = writeln!(out, "bound 2*|c|*b^s     {}  {}", v.term_bound.to_decimal(12), verdict(v.term_pass));
    out
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_validate(series: &str, s: &BigReal, config: &RunConfig) -> CliResult<Outcome> {
    let id: SeriesId = series.parse()?;
    let spec = make_series(&id)?;
    let e = reciprocal_expansion(&spec, &config.threshold, config.term_cap)?;
    let v = validate_expansion(&spec, &e, s, &config.precision())?;
    let output = match config.format {
        OutputFormat::Json => pretty(&v.to_json()),
        OutputFormat::Text => validation_text(&v),
    };
    Ok(Outcome { output, ok: v.pass })
}

/// Runs one probe, or lists the probes when `probe` is `None`.
pub fn cmd_limits(probe: Option<&str>, x: Option<&BigReal>, n: Option<u32>, config: &RunConfig) -> CliResult<Outcome> {
    let Some(name) = probe else {
        let mut out = String::new();
        for id in ProbeId::all() {
            let _ = writeln!(out, "{:<28} {}", id.name(), id.description());
        }
        return Ok(Outcome::ok(out));
    };
    let id: ProbeId = name.parse()?;
    let default_x = if id.at_pole() { BigReal::parse_decimal("1e-4", 64) } else { BigReal::parse_decimal("40", 64) };
    let x = x.cloned().unwrap_or_else(|| default_x.expect("literal parses"));
    let r = limit_probe(name, &x, n, &config.precision())?;
    let output = match config.format {
        OutputFormat::Json => pretty(&r.to_json()),
        OutputFormat::Text => {
            let d = TEXT_DIGITS;
            let mut out = String::new();
            let _ = writeln!(out, "probe      {}", r.name);
            let _ = writeln!(out, "x          {}", r.x.to_decimal(d));
            if let Some(n) = r.n {
                let _ = writeln!(out, "n          {n}");
            }
            let _ = writeln!(out, "value      {}", r.value.to_decimal(d));
            let _ = writeln!(out, "target     {}", r.target.to_decimal(d));
            let _ = writeln!(out, "deviation  {}", r.deviation.to_decimal(d));
            let _ = writeln!(out, "expected   {}", r.expected_order);
            out
        }
    };
    Ok(Outcome::ok(output))
}

/// Fixture diffs (one series, or all of them plus the OEIS cross-check).
pub fn cmd_fixtures(series: Option<&str>, config: &RunConfig) -> CliResult<Outcome> {
    let reports = match series {
        Some(s) => vec![fixtures::fixture_diff(s, config)?],
        None => fixtures::diff_all(config)?,
    };
    let oeis = match series {
        Some(_) => None,
        None => Some(fixtures::oeis_crosscheck(&fixtures::bundled_oeis()?, config)?),
    };
    let ok = reports.iter().all(|r| r.pass) && oeis.as_ref().map_or(true, |o| o.matched);
    let output = match config.format {
        OutputFormat::Json => {
            let mut v = json!({ "fixtures": reports });
            if let Some(o) = &oeis {
                v["oeis"] = serde_json::to_value(o).expect("report serializes");
            }
            pretty(&v)
        }
        OutputFormat::Text => {
            let mut out: String = reports.iter().map(|r| r.render_text()).collect();
            if let Some(o) = &oeis {
                out.push_str(&o.render_text());
            }
            out
        }
    };
    Ok(Outcome { output, ok })
}

pub fn cmd_acceptance(only: Option<u8>, config: &RunConfig) -> CliResult<Outcome> {
    let results = match only {
        Some(id) => vec![acceptance::run_criterion(id, config)],
        None => acceptance::run_all(config),
    };
    let ok = results.iter().all(|r| r.pass);
    let output = match config.format {
        OutputFormat::Json => pretty(&serde_json::to_value(&results).expect("results serialize")),
        OutputFormat::Text => {
            let mut out: String = results.iter().map(|r| r.line() + "\n").collect();
            let passed = results.iter().filter(|r| r.pass).count();
            let _ = writeln!(out, "{passed}/{} criteria pass", results.len());
            out
        }
    };
    Ok(Outcome { output, ok })
}
