use dasym_core::expansion::{exp_minus_one_coefficients, log_one_plus_coefficients, normalize_terms};
use dasym_core::signs::lambda_a_unit_numerator;
use dasym_core::{
    analytic_transform, audit_signs, default_catalog, lambda_a, lambda_v, make_series, reciprocal_expansion,
    series_product, Error, Expansion, Law, PowerTerm, Prediction, Rational, SeriesSpec,
};
use num_integer::Integer;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-500i64..500, 1i64..500).prop_map(|(n, d)| Rational::new(n, d))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..200, 1i64..200).prop_map(|(n, d)| Rational::new(n, d))
}

fn terms() -> impl Strategy<Value = Vec<PowerTerm>> {
    prop::collection::vec((rational(), positive()).prop_map(|(c, b)| PowerTerm::new(c, b)), 0..24)
}

/// Small series with every base strictly between 0 and 1.
fn small_series() -> impl Strategy<Value = Expansion> {
    prop::collection::vec(((1i64..7, 2i64..9), -3i64..=3), 1..5).prop_map(|raw| {
        let terms = raw
            .into_iter()
            .filter(|((n, d), _)| n < d)
            .map(|((n, d), c)| PowerTerm::new(Rational::integer(c), Rational::new(n, d)));
        Expansion::new("u", Rational::new(1, 20), terms)
    })
}

fn polynomial() -> impl Strategy<Value = SeriesSpec> {
    prop::collection::btree_map(2i64..=16, prop::sample::select(vec![-2i64, -1, 1, 2, 5]), 1..6).prop_map(|m| {
        let terms = m.into_iter().map(|(b, c)| (Rational::integer(b), Rational::integer(c))).collect();
        SeriesSpec::polynomial("p", terms).unwrap()
    })
}

fn catalog_index() -> impl Strategy<Value = usize> {
    0..default_catalog().len()
}

fn primes_of(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn small(r: &num_bigint::BigInt) -> u64 {
    r.to_string().trim_start_matches('-').parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rationals_are_stored_reduced(n in -10_000i64..10_000, d in 1i64..10_000, k in 1i64..50) {
        let r = Rational::new(n * k, d * k);
        prop_assert!(r.is_reduced());
        prop_assert!(r.denom() > &0.into());
        prop_assert_eq!(r.numer().gcd(r.denom()), if n == 0 { r.denom().clone() } else { 1.into() });
        prop_assert_eq!(r, Rational::new(n, d));
    }

    #[test]
    fn normalized_terms_are_unique_and_sorted(ts in terms()) {
        let norm = normalize_terms(ts.clone());
        for w in norm.windows(2) {
            prop_assert!(w[0].base > w[1].base);
        }
        prop_assert!(norm.iter().all(|t| !t.coeff.is_zero()));
        for t in &norm {
            let mut sum = Rational::zero();
            for u in ts.iter().filter(|u| u.base == t.base) {
                sum += &u.coeff;
            }
            prop_assert_eq!(&sum, &t.coeff);
        }
        prop_assert_eq!(normalize_terms(norm.clone()), norm);
    }

    #[test]
    fn log_then_exp_is_the_identity(u in small_series()) {
        let floor = Rational::new(1, 20);
        let log = analytic_transform(log_one_plus_coefficients(), &u, &floor).unwrap();
        let back = analytic_transform(exp_minus_one_coefficients(), &log, &floor).unwrap();
        let want = u.truncate(&floor);
        prop_assert_eq!(back.terms(), want.terms());
    }

    #[test]
    fn expansion_json_round_trips(ts in terms(), theta in positive()) {
        let e = Expansion::new("random", theta, ts);
        prop_assert_eq!(Expansion::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn reciprocal_times_series_is_one(spec in polynomial(), den in 2i64..10) {
        let (b1, _) = spec.leading().unwrap();
        let theta = &b1 / &Rational::integer(den);
        let r = reciprocal_expansion(&spec, &theta, 1 << 14).unwrap();
        let f: Vec<PowerTerm> = spec.take(64).into_iter().map(|(b, c)| PowerTerm::new(c, b.recip())).collect();
        let floor = &theta / &b1;
        prop_assert_eq!(series_product(r.terms(), &f, &floor), vec![PowerTerm::new(Rational::one(), Rational::one())]);
    }

    #[test]
    fn lowering_the_threshold_only_appends(i in catalog_index(), a in 5i64..8, extra in 1i64..3) {
        let spec = make_series(&default_catalog()[i]).unwrap();
        let high = Rational::new(1, a);
        let low = Rational::new(1, a + extra);
        let coarse = reciprocal_expansion(&spec, &high, 1 << 14).unwrap();
        let fine = reciprocal_expansion(&spec, &low, 1 << 14).unwrap();
        let cut = fine.truncate(&high);
        prop_assert_eq!(cut.terms(), coarse.terms());
    }

    #[test]
    fn sign_laws_are_total_on_reduced_fractions(p in 1u64..5000, q in 1u64..5000) {
        if p.gcd(&q) == 1 {
            for law in [lambda_v, lambda_a, lambda_a_unit_numerator] {
                prop_assert!(law(p, q).is_ok());
            }
            if big_omega(p).abs_diff(big_omega(q)) >= 2 && p != 1 {
                prop_assert_eq!(lambda_a(p, q).unwrap(), Prediction::Unclassified);
            }
        } else {
            for law in [lambda_v, lambda_a, lambda_a_unit_numerator] {
                prop_assert!(matches!(law(p, q), Err(Error::NotReduced { .. })), "{} {}", p, q);
            }
        }
    }
}

fn big_omega(mut n: u64) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            count += 1;
        }
        p += 1;
    }
    count + u32::from(n > 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn audit_counts_partition_the_terms(i in catalog_index(), law in prop::sample::select(vec![Law::V, Law::A, Law::AUnitNumerator])) {
        let spec = make_series(&default_catalog()[i]).unwrap();
        let e = reciprocal_expansion(&spec, &Rational::new(1, 5), 1 << 14).unwrap();
        let r = audit_signs(&e, law).unwrap();
        prop_assert_eq!(r.counts.matched + r.counts.mismatched + r.counts.unclassified, e.len());
        prop_assert_eq!(r.verdicts.len(), e.len());
    }
}

/// With integer stream bases, every base of the reciprocal is b₁·Π(b₁/bₖ),
/// so after reduction its numerator carries only primes of b₁.
#[test]
fn numerators_carry_only_primes_of_the_leading_base() {
    let mut checked = 0;
    for id in default_catalog() {
        let spec = make_series(&id).unwrap();
        if !spec.take(40).iter().all(|(b, _)| b.is_integer()) {
            continue;
        }
        let (b1, _) = spec.leading().unwrap();
        let allowed = primes_of(small(b1.numer()));
        let e = reciprocal_expansion(&spec, &Rational::new(1, 5), 1 << 14).unwrap();
        for t in e.terms() {
            for p in primes_of(small(t.base.numer())) {
                assert!(allowed.contains(&p), "{id}: {} has prime {p}", t.base);
            }
            checked += 1;
        }
    }
    assert!(checked > 300, "{checked}");
}
