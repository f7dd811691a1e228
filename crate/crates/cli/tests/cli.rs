use std::process::{Command, Output};

use dasym_core::{make_series, reciprocal_expansion, Expansion, Rational, SeriesId};
use serde_json::Value;

fn dasym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dasym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn expand_json_leading_term() {
    let o = dasym(&["expand", "zeta_minus_1", "--threshold", "1/4", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["terms"][0]["base"], "2/1");
    assert_eq!(v["terms"][0]["coeff"], "1/1");
}

#[test]
fn expand_json_round_trips() {
    let o = dasym(&["expand", "chi_6", "--format", "json"]);
    let parsed = Expansion::from_json(&stdout(&o)).unwrap();
    let spec = make_series(&"chi_6".parse::<SeriesId>().unwrap()).unwrap();
    assert_eq!(parsed, reciprocal_expansion(&spec, &Rational::new(1, 5), 512).unwrap());
}

#[test]
fn expand_text_renders() {
    let o = dasym(&["expand", "zeta_minus_1", "--threshold", "1/2"]);
    assert!(stdout(&o).contains("2^s - (4/3)^s - 1 + (8/9)^s - (4/5)^s + (2/3)^s - (16/27)^s - (4/7)^s + 2(8/15)^s"));
    let powers = dasym(&["expand", "zeta_minus_1", "--threshold", "1/2", "--style", "powers"]);
    assert!(stdout(&powers).contains("2^s - (2^2/3)^s - 1 + (2^3/9)^s"));
}

#[test]
fn audit_zeta_counts() {
    let v = json(&dasym(&["audit", "zeta_minus_1", "--law", "V", "--format", "json"]));
    assert!(v["counts"]["matched"].as_u64().unwrap() >= 21);
    assert_eq!(v["counts"]["mismatched"], 0);
    assert!(v["verdicts"].as_array().unwrap().iter().all(|t| t["base"].is_string() && t["predicted"].is_string()));
}

#[test]
fn audit_law_a_shows_both_readings() {
    let o = dasym(&["audit", "one_minus_eta", "--law", "A"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("law A: matched"));
    assert!(text.contains("law A_unit_numerator: matched"));
}

#[test]
fn audit_mismatch_exits_one() {
    // λ_A does not describe ζ − 1
    let o = dasym(&["audit", "zeta_minus_1", "--law", "A"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cloitre_limit() {
    let o = dasym(&["limits", "cloitre", "--x", "64", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["deviation", "expected_order", "n", "name", "target", "value", "x"]);
    let dev: f64 = v["deviation"].as_str().unwrap().parse().unwrap();
    assert!(dev.abs() < 2.0 * (8f64 / 9.0).powi(64));
    // JSON carries the full context precision, text mode 40 digits
    assert!(v["value"].as_str().unwrap().len() > 70);
    let text = stdout(&dasym(&["limits", "cloitre", "--x", "64"]));
    let value = text.lines().find(|l| l.starts_with("value")).unwrap();
    assert_eq!(value.split_whitespace().nth(1).unwrap().trim_start_matches("0.").len(), 40);
}

#[test]
fn limits_lists_probes() {
    let text = stdout(&dasym(&["limits"]));
    assert_eq!(text.lines().count(), 22);
    assert!(text.lines().any(|l| l.starts_with("star_fh")));
}

#[test]
fn validate_reports_bounds() {
    let o = dasym(&["validate", "chi_10", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["s"], "60");
    assert_eq!(o.status.success(), v["pass"].as_bool().unwrap());
    // ζ − 1 at s = 40 exceeds 2θ̂ˢ because the first omitted coefficient is −4
    let z = dasym(&["validate", "zeta_minus_1", "--s", "40", "--format", "json"]);
    assert_eq!(z.status.code(), Some(1));
    let v = json(&z);
    assert_eq!(v["first_omitted_base"], "16/81");
    assert_eq!(v["first_omitted_coeff"], "-4/1");
    assert_eq!(v["pass"], false);
    assert_eq!(v["term_pass"], true);
}

#[test]
fn oracle_command() {
    let v = json(&dasym(&["oracle", "zeta_minus_1", "32/135", "--format", "json"]));
    assert_eq!(v["coeff"], "4/1");
    assert_eq!(stdout(&dasym(&["oracle", "zeta_minus_1", "8/27"])), "zeta_minus_1 base 8/27: 3/1\n");
}

#[test]
fn fixtures_pass() {
    let o = dasym(&["fixtures"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("A112932 (21 terms): match"));
    assert!(text.lines().any(|l| l.starts_with("chi_-5") && l.contains("indexing-ambiguity")));
    let v = json(&dasym(&["fixtures", "thue_morse_upsilon", "--format", "json"]));
    assert_eq!(v["fixtures"][0]["strict"], false);
    assert!(v.get("oeis").is_none());
}

#[test]
fn catalog_lists_every_series() {
    let v = json(&dasym(&["catalog", "--format", "json"]));
    assert_eq!(v.as_array().unwrap().len(), 19);
    assert_eq!(v[0]["name"], "zeta_minus_1");
    assert_eq!(v[0]["leading_base"], "2/1");
}

#[test]
fn single_criterion() {
    let o = dasym(&["acceptance", "--only", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("[PASS] criterion 1 "));
}

#[test]
fn deterministic_text_output() {
    for args in [
        &["catalog"][..],
        &["expand", "one_minus_eta", "--threshold", "1/10"],
        &["fixtures"],
        &["limits", "pole_quadratic", "--x", "1e-4", "--n", "3"],
        &["audit", "chi_10", "--law", "V"],
    ] {
        let a = dasym(args);
        let b = dasym(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["expand"][..],
        &["expand", "zeta_minus_1", "--threshold", "3/2"],
        &["expand", "zeta_minus_1", "--threshold", "abc"],
        &["expand", "zeta_minus_1", "--bits", "32"],
        &["expand", "zeta_minus_1", "--format", "latex"],
        &["audit", "zeta_minus_1", "--law", "Q"],
        &["limits", "cloitre", "--x", "many"],
        &["acceptance", "--only", "12"],
        &["frobnicate"],
    ] {
        assert_eq!(dasym(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_one_with_name() {
    let cases = [
        (&["expand", "zeta_plus_1"][..], "UnknownSeries"),
        (&["limits", "nope"], "UnknownProbe"),
        (&["limits", "cloitre", "--x", "0.5"], "OutOfDomain"),
        (&["limits", "cloitre_augmented", "--x", "64", "--bits", "64"], "PrecisionInsufficient"),
        (&["expand", "zeta_minus_1", "--threshold", "1/100", "--term-cap", "10"], "TermCapExceeded"),
        (&["fixtures", "hurwitz_zeta(5/2)"], "MissingFixture"),
        (&["oracle", "zeta_minus_1", "1/1000", "--depth-cap", "2"], "DepthCapTooSmall"),
    ];
    for (args, name) in cases {
        let o = dasym(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains(name), "{args:?}: {}", stderr(&o));
    }
}
