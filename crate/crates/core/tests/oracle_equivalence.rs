//! Three independent routes to the same coefficients: the sparse algebra,
//! the tuple-enumeration oracle, and a deconvolution written here that
//! solves F·R = 1 one base at a time.

use std::collections::{BTreeMap, BTreeSet};

use dasym_core::{default_catalog, make_series, oracle_coefficient, reciprocal_expansion, Rational, SeriesSpec};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Coefficients of 1/F at every base ≥ θ by back-substitution:
/// c₁·d(β) = [β = 1/b₁] − Σ_{k≥2} c_k·d(β·b_k/b₁).
fn deconvolve(spec: &SeriesSpec, theta: &Rational) -> BTreeMap<Rational, Rational> {
    let (b1, c1) = spec.leading().unwrap();
    let top = b1.clone();
    let limit = &(&b1 * &b1) / theta;
    let stream = spec.terms_through(&limit).unwrap();
    let rest: Vec<(Rational, Rational)> = stream.into_iter().filter(|(b, _)| b != &b1).collect();

    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    let mut frontier = vec![top.clone()];
    while let Some(beta) = frontier.pop() {
        if &beta < theta || !candidates.insert(beta.clone()) {
            continue;
        }
        for (b, _) in &rest {
            frontier.push(&(&beta * &b1) / b);
        }
    }
    let mut d: BTreeMap<Rational, Rational> = BTreeMap::new();
    for beta in candidates.iter().rev() {
        let mut acc = if beta == &top { Rational::one() } else { Rational::zero() };
        for (b, c) in &rest {
            let up = &(beta * b) / &b1;
            if let Some(v) = d.get(&up) {
                acc -= &(c * v);
            }
        }
        let val = &acc / &c1;
        if !val.is_zero() {
            d.insert(beta.clone(), val);
        }
    }
    d
}

fn as_map(spec: &SeriesSpec, theta: &Rational) -> BTreeMap<Rational, Rational> {
    reciprocal_expansion(spec, theta, 1 << 14)
        .unwrap()
        .terms()
        .iter()
        .map(|t| (t.base.clone(), t.coeff.clone()))
        .collect()
}

#[test]
fn catalog_oracle_matches_algebra() {
    let theta = q(1, 5);
    let mut checks = 0;
    for id in default_catalog() {
        let spec = make_series(&id).unwrap();
        let e = reciprocal_expansion(&spec, &theta, 1 << 14).unwrap();
        for t in e.terms() {
            assert_eq!(oracle_coefficient(&spec, &t.base, 64).unwrap(), t.coeff, "{id} at {}", t.base);
            checks += 1;
        }
    }
    assert!(checks >= 150, "{checks}");
}

#[test]
fn catalog_deconvolution_matches_algebra() {
    for id in default_catalog() {
        let spec = make_series(&id).unwrap();
        for theta in [q(1, 5), q(1, 8)] {
            assert_eq!(deconvolve(&spec, &theta), as_map(&spec, &theta), "{id} at {theta}");
        }
    }
}

#[test]
fn oracle_is_zero_off_the_expansion() {
    let spec = make_series(&"zeta_minus_1".parse().unwrap()).unwrap();
    let e = reciprocal_expansion(&spec, &q(1, 5), 512).unwrap();
    let mut zeros = 0;
    for den in 1..=40i64 {
        for num in 1..=2 * den {
            let base = q(num, den);
            if base < q(1, 5) || e.coefficient(&base).is_some() {
                continue;
            }
            assert!(oracle_coefficient(&spec, &base, 64).unwrap().is_zero(), "{base}");
            zeros += 1;
        }
    }
    assert!(zeros > 500);
}

fn polynomial() -> impl Strategy<Value = SeriesSpec> {
    prop::collection::btree_map(2i64..=14, prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), 2..6).prop_map(|m| {
        let terms = m.into_iter().map(|(b, c)| (Rational::integer(b), Rational::integer(c))).collect();
        SeriesSpec::polynomial("random", terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_polynomials_agree(spec in polynomial(), den in 2i64..12) {
        let (b1, _) = spec.leading().unwrap();
        let theta = &b1 / &Rational::integer(den);
        let algebra = as_map(&spec, &theta);
        prop_assert_eq!(&deconvolve(&spec, &theta), &algebra);
        for (base, coeff) in algebra.iter().take(12) {
            prop_assert_eq!(&oracle_coefficient(&spec, base, 64).unwrap(), coeff);
        }
    }
}
