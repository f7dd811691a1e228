use std::fmt;
use std::str::FromStr;

use serde_json::json;

use super::constants::euler_gamma;
use super::gamma::lngamma_real;
use super::real::BigReal;
use super::zeta::{dirichlet_lambda_real, eta_real, rational_pow_neg, zeta_real};
use super::PrecisionContext;
use crate::arith::harmonic;
use crate::catalog::{make_series, SeriesId};
use crate::error::{Error, Result};
use crate::expansion::reciprocal_expansion;
use crate::Rational;

/// Every limit the probe runner knows, by CLI name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProbeId {
    PoleLinear,
    PoleLinearPlus,
    PoleLinearMinus,
    PoleQuadratic,
    PoleQuadraticLimit,
    ConsecutiveSingularity,
    ConsecutiveSingularityLog,
    F1Iterate,
    F2Iterate,
    F2ProseIterate,
    GIterate,
    HIterate,
    Difference,
    Star,
    StarFh,
    OmegaRatio,
    Cloitre,
    CloitreAugmented,
    CloitreNested,
    GammaLambda,
    LambdaLambda,
    LambdaPole,
}

const ALL: [ProbeId; 22] = [
    ProbeId::PoleLinear,
    ProbeId::PoleLinearPlus,
    ProbeId::PoleLinearMinus,
    ProbeId::PoleQuadratic,
    ProbeId::PoleQuadraticLimit,
    ProbeId::ConsecutiveSingularity,
    ProbeId::ConsecutiveSingularityLog,
    ProbeId::F1Iterate,
    ProbeId::F2Iterate,
    ProbeId::F2ProseIterate,
    ProbeId::GIterate,
    ProbeId::HIterate,
    ProbeId::Difference,
    ProbeId::Star,
    ProbeId::StarFh,
    ProbeId::OmegaRatio,
    ProbeId::Cloitre,
    ProbeId::CloitreAugmented,
    ProbeId::CloitreNested,
    ProbeId::GammaLambda,
    ProbeId::LambdaLambda,
    ProbeId::LambdaPole,
];

pub const PROBE_NAMES: [&str; 22] = [
    "pole_linear",
    "pole_linear_plus",
    "pole_linear_minus",
    "pole_quadratic",
    "pole_quadratic_limit",
    "consecutive_singularity",
    "consecutive_singularity_log",
    "f1_iterate",
    "f2_iterate",
    "f2_prose_iterate",
    "g_iterate",
    "h_iterate",
    "difference",
    "star",
    "star_fh",
    "omega_ratio",
    "cloitre",
    "cloitre_augmented",
    "cloitre_nested",
    "gamma_lambda",
    "lambda_lambda",
    "lambda_pole",
];

impl ProbeId {
    pub fn all() -> &'static [ProbeId] {
        &ALL
    }

    pub fn name(self) -> &'static str {
        PROBE_NAMES[ALL.iter().position(|&p| p == self).expect("listed probe")]
    }

    /// Pole probes take x → 0⁺, the rest x → ∞.
    pub fn at_pole(self) -> bool {
        matches!(
            self,
            ProbeId::PoleLinear
                | ProbeId::PoleLinearPlus
                | ProbeId::PoleLinearMinus
                | ProbeId::PoleQuadratic
                | ProbeId::PoleQuadraticLimit
                | ProbeId::ConsecutiveSingularity
                | ProbeId::ConsecutiveSingularityLog
                | ProbeId::LambdaPole
        )
    }

    /// Whether the probe reads `n`.
    pub fn uses_n(self) -> bool {
        !matches!(
            self,
            ProbeId::Difference
                | ProbeId::StarFh
                | ProbeId::Cloitre
                | ProbeId::CloitreAugmented
                | ProbeId::CloitreNested
                | ProbeId::GammaLambda
                | ProbeId::LambdaLambda
                | ProbeId::LambdaPole
        )
    }

    fn default_n(self) -> u32 {
        if self.at_pole() {
            0
        } else {
            1
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ProbeId::PoleLinear => "[ln(n!x) + ln|Γ(−n + (−1)ⁿx)|]/x → (−1)^(n+1)(γ − H_n)",
            ProbeId::PoleLinearPlus => "[ln(n!x) + ln|Γ(−n + x)|]/x → −(γ − H_n)",
            ProbeId::PoleLinearMinus => "[ln(n!x) + ln|Γ(−n − x)|]/x → γ − H_n",
            ProbeId::PoleQuadratic => "[2ln(n!x) + ln|Γ(−n − x)| + ln|Γ(−n + x)|]/x² → ζ(2) + H_n^(2)",
            ProbeId::PoleQuadraticLimit => "the quadratic pole expression against 2ζ(2), reached as n → ∞",
            ProbeId::ConsecutiveSingularity => "(1/x²)[1 − A_n/A_(n+1)] → 3/((n+1)⁴π²), A_n the quadratic numerator minus x²H_n^(2)",
            ProbeId::ConsecutiveSingularityLog => "(1/x²)·ln(A_n/A_(n+1)) → −1/(2(n+1)⁴ζ(2))",
            ProbeId::F1Iterate => "f₁ⁿ(x)/x → (ln 2)ⁿ, f₁(x) = ln ζ(ln ζ(x) + 1)",
            ProbeId::F2Iterate => "f₂ⁿ(x)/x → (ln 2)ⁿ, f₂(x) = ln ζ(ζ(x))",
            ProbeId::F2ProseIterate => "fⁿ(x)/x → (ln 2)ⁿ, f(x) = |ln ln ζ(x)|",
            ProbeId::GIterate => "gⁿ(x)/x → (ln 2)ⁿ, g(x) = |ln|ln η(x)||",
            ProbeId::HIterate => "hⁿ(x)/x → (ln 2)ⁿ, h(x) = ln|ζ(η(x))|",
            ProbeId::Difference => "2ˣ[ln ζ(ln ζ(x) + 1) − ln ζ(ζ(x))] → 1/2",
            ProbeId::Star => "2^(x(ln 2)^(n−1))[gⁿ(x) − hⁿ(x)] → γ − 1/2",
            ProbeId::StarFh => {
                "2^(x−1)[f(x) − h(x)] → γ with f read as f₁; the (2/3)ˣ terms do not cancel, so the value drifts like γ − (4/3)ˣ"
            }
            ProbeId::OmegaRatio => "(ω(x,n+1) − ω(x,n))/(ln ω(x,n+1) − ln ω(x,n)) → γ − 1/2, ω(x,n) = 2^(x(ln 2)^(n−1))[gⁿ − hⁿ]",
            ProbeId::Cloitre => "ζ(ζ(x)) − 2ˣ + (4/3)ˣ + 1 → γ",
            ProbeId::CloitreAugmented => "ζ(ζ(x)) minus every term of 1/(ζ(x) − 1) down to base 16/27 → γ",
            ProbeId::CloitreNested => "ζ(ln(ln(ln ζ(x) + 1) + 1) + 1) − 2ˣ + (4/3)ˣ − 1/2 → γ",
            ProbeId::GammaLambda => "−{Γ(λ(x) − 1) − 3ˣ + (9/5)ˣ + (9/7)ˣ − (27/25)ˣ + 1} → γ",
            ProbeId::LambdaLambda => "λ(λ(x)) − ½[3ˣ − (9/5)ˣ − (9/7)ˣ + (27/25)ˣ − 1] → (γ + ln 2)/2",
            ProbeId::LambdaPole => "λ(1 + x) − 1/(2x) → (γ + ln 2)/2",
        }
    }
}

impl fmt::Display for ProbeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProbeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PROBE_NAMES
            .iter()
            .position(|&n| n == s)
            .map(|i| ALL[i])
            .ok_or_else(|| Error::UnknownProbe(s.to_string()))
    }
}

/// One evaluated limit expression.
#[derive(Clone, Debug)]
pub struct ProbeResult {
    pub name: String,
    pub x: BigReal,
    pub n: Option<u32>,
    pub value: BigReal,
    pub target: BigReal,
    /// value − target.
    pub deviation: BigReal,
    pub expected_order: String,
    /// Size the deviation is expected to have at this x.
    pub expected_deviation: f64,
    /// Significant digits carried by the context.
    pub digits: usize,
}

impl ProbeResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "x": self.x.to_decimal(self.digits),
            "n": self.n,
            "value": self.value.to_decimal(self.digits),
            "target": self.target.to_decimal(self.digits),
            "deviation": self.deviation.to_decimal(self.digits),
            "expected_order": self.expected_order,
        })
    }

    pub fn abs_deviation(&self) -> f64 {
        self.deviation.to_f64().abs()
    }
}

/// Evaluates a named limit expression at (x, n).
///
/// The expression is evaluated at the context precision and again with 64
/// more bits; the value reported is the finer one, with its error widened
/// by the spread between the two. Fails with `PrecisionInsufficient` when
/// that error is not below the expected size of the deviation.
pub fn limit_probe(name: &str, x: &BigReal, n: Option<u32>, ctx: &PrecisionContext) -> Result<ProbeResult> {
    let id: ProbeId = name.parse()?;
    let n = id.uses_n().then(|| n.unwrap_or_else(|| id.default_n()));
    let xf = x.to_f64();
    if id.at_pole() {
        if !(xf > 0.0 && xf < 0.5) || x.certain_sign() != Some(1) {
            return Err(Error::OutOfDomain(format!("{id} needs 0 < x < 1/2, got {}", x.to_decimal(12))));
        }
    } else if !(xf > 1.0) {
        return Err(Error::OutOfDomain(format!("{id} needs x > 1, got {}", x.to_decimal(12))));
    }
    if !id.at_pole() && id.uses_n() && n == Some(0) {
        return Err(Error::UnsupportedParameter(format!("{id} needs n ≥ 1")));
    }
    let nn = n.unwrap_or(0) as u64;

    let (coarse, target) = evaluate(id, x, nn, ctx)?;
    let (fine, _) = evaluate(id, x, nn, &ctx.raised(64))?;
    let wp = ctx.raised(64).wp();
    let spread = coarse.distance(&fine, wp).to_f64();
    let value = fine.widen(spread);
    let (expected_order, expected_deviation) = expected(id, xf, nn);
    let bound = value.err() + target.err();
    if !(bound < expected_deviation) {
        return Err(Error::PrecisionInsufficient { bound, expected: expected_deviation });
    }
    let deviation = value.sub(&target, wp);
    Ok(ProbeResult {
        name: id.name().to_string(),
        x: x.clone(),
        n,
        value,
        target,
        deviation,
        expected_order,
        expected_deviation,
        digits: ctx.decimal_digits(),
    })
}

fn expected(id: ProbeId, x: f64, n: u64) -> (String, f64) {
    let ln2 = std::f64::consts::LN_2;
    let z2 = std::f64::consts::PI.powi(2) / 6.0;
    let z4 = std::f64::consts::PI.powi(4) / 90.0;
    let h = |k: u32| harmonic(n, k).to_f64();
    let scale = |n: u64| x * ln2.powi(n as i32 - 1);
    let star = |n: u64| {
        let y = scale(n);
        (2f64 / 3.0).powf(y) + if n >= 2 { 2f64.powf(y - x) } else { 0.0 }
    };
    match id {
        ProbeId::PoleLinear | ProbeId::PoleLinearPlus | ProbeId::PoleLinearMinus => {
            ("O(x)".into(), (z2 + h(2)) * x / 2.0)
        }
        ProbeId::PoleQuadratic => ("O(x²)".into(), (z4 + h(4)) * x * x / 2.0),
        ProbeId::PoleQuadraticLimit => ("O(1/n) + O(x²)".into(), (z2 - h(2)) + (z4 + h(4)) * x * x / 2.0),
        ProbeId::ConsecutiveSingularity | ProbeId::ConsecutiveSingularityLog => ("O(x²)".into(), x * x),
        ProbeId::F1Iterate
        | ProbeId::F2Iterate
        | ProbeId::F2ProseIterate
        | ProbeId::GIterate
        | ProbeId::HIterate => (
            "O((2/3)^(x(ln 2)^(n−1))/x)".into(),
            2.0 * (2f64 / 3.0).powf(scale(n)) / x + 2f64.powf(-x),
        ),
        ProbeId::Difference => ("O((2/3)ˣ)".into(), (2f64 / 3.0).powf(x)),
        ProbeId::Star => ("O((2/3)^(x(ln 2)^(n−1)))".into(), star(n)),
        ProbeId::StarFh => ("(4/3)ˣ, divergent".into(), (4f64 / 3.0).powf(x)),
        ProbeId::OmegaRatio => ("O((2/3)^(x(ln 2)ⁿ))".into(), star(n).max(star(n + 1))),
        ProbeId::Cloitre | ProbeId::CloitreNested => ("O((8/9)ˣ)".into(), (8f64 / 9.0).powf(x)),
        ProbeId::CloitreAugmented => ("O((4/7)ˣ)".into(), (4f64 / 7.0).powf(x)),
        ProbeId::GammaLambda => ("O((9/11)ˣ)".into(), (9f64 / 11.0).powf(x)),
        ProbeId::LambdaLambda => ("O((9/11)ˣ)".into(), (9f64 / 11.0).powf(x) / 2.0),
        ProbeId::LambdaPole => ("O(x)".into(), x),
    }
}

fn ln_factorial(n: u64, wp: usize) -> BigReal {
    (2..=n).fold(BigReal::zero(), |acc, j| acc.add(&BigReal::from_u64(j).ln(wp), wp))
}

fn ln_abs_gamma(arg: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(lngamma_real(arg, ctx)?.ln_abs)
}

/// −n + x and −n − x without losing the digits of x.
fn shifted(x: &BigReal, n: u64, sign: i64, wp: usize) -> BigReal {
    let offset = if sign > 0 { x.clone() } else { x.neg() };
    let extra = (-x.magnitude().log2()).max(0.0) as usize + 64;
    offset.add_i64(-(n as i64), wp + extra)
}

fn linear_numerator(x: &BigReal, n: u64, sign: i64, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.wp();
    let lg = ln_abs_gamma(&shifted(x, n, sign, wp), ctx)?;
    Ok(ln_factorial(n, wp).add(&x.ln(wp), wp).add(&lg, wp))
}

fn quadratic_numerator(x: &BigReal, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.wp();
    let minus = ln_abs_gamma(&shifted(x, n, -1, wp), ctx)?;
    let plus = ln_abs_gamma(&shifted(x, n, 1, wp), ctx)?;
    Ok(ln_factorial(n, wp).add(&x.ln(wp), wp).mul_i64(2, wp).add(&minus, wp).add(&plus, wp))
}

fn harmonic_real(n: u64, k: u32, wp: usize) -> BigReal {
    BigReal::from_rational(&harmonic(n, k), wp)
}

fn zeta2(ctx: &PrecisionContext) -> Result<BigReal> {
    zeta_real(&BigReal::from_i64(2), ctx)
}

/// 1 + v without rounding away the digits of a tiny v.
fn one_plus(v: &BigReal, wp: usize) -> BigReal {
    let extra = (-v.magnitude().log2()).max(0.0) as usize + 64;
    v.add_i64(1, wp + extra)
}

fn ln_zeta(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(zeta_real(y, ctx)?.ln(ctx.wp()))
}

fn f1(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    ln_zeta(&one_plus(&ln_zeta(y, ctx)?, ctx.wp()), ctx)
}

fn f2(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    ln_zeta(&zeta_real(y, ctx)?, ctx)
}

fn f2_prose(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(ln_zeta(y, ctx)?.ln(ctx.wp()).abs())
}

fn g(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.wp();
    Ok(eta_real(y, ctx)?.ln(wp).abs().ln(wp).abs())
}

fn h(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(zeta_real(&eta_real(y, ctx)?, ctx)?.ln_abs(ctx.wp()))
}

type Map = fn(&BigReal, &PrecisionContext) -> Result<BigReal>;

fn iterate(map: Map, x: &BigReal, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut y = x.clone();
    for _ in 0..n {
        y = map(&y, ctx)?;
    }
    Ok(y)
}

/// 2^(x(ln 2)^(n−1))·[gⁿ(x) − hⁿ(x)].
fn omega(x: &BigReal, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.wp();
    let diff = iterate(g, x, n, ctx)?.sub(&iterate(h, x, n, ctx)?, wp);
    Ok(diff.mul(&two_to(&x.mul(&ln2_pow(n as i64 - 1, wp), wp), wp), wp))
}

fn ln2_pow(k: i64, wp: usize) -> BigReal {
    (0..k).fold(BigReal::one(), |acc, _| acc.mul(&BigReal::ln2(wp), wp))
}

fn two_to(e: &BigReal, wp: usize) -> BigReal {
    BigReal::from_i64(2).powr(e, wp)
}

/// Σ c·bˣ over the given (coeff, base) pairs.
fn power_sum(terms: &[(i64, Rational)], x: &BigReal, wp: usize) -> BigReal {
    terms.iter().fold(BigReal::zero(), |acc, (c, b)| {
        acc.add(&rational_pow_neg(&b.recip(), x, wp).mul_i64(*c, wp), wp)
    })
}

fn lambda_head() -> Vec<(i64, Rational)> {
    vec![
        (1, Rational::integer(3)),
        (-1, Rational::new(9, 5)),
        (-1, Rational::new(9, 7)),
        (1, Rational::new(27, 25)),
        (-1, Rational::one()),
    ]
}

fn zeta_head() -> Vec<(i64, Rational)> {
    vec![(1, Rational::integer(2)), (-1, Rational::new(4, 3))]
}

fn evaluate(id: ProbeId, x: &BigReal, n: u64, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    let wp = ctx.wp();
    let gamma = euler_gamma(ctx);
    let half = BigReal::from_f64(0.5);
    let gamma_minus_half = gamma.sub(&half, wp);
    let x2 = x.mul(x, wp);
    Ok(match id {
        ProbeId::PoleLinear | ProbeId::PoleLinearPlus | ProbeId::PoleLinearMinus => {
            let sign = match id {
                ProbeId::PoleLinear => {
                    if n % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                }
                ProbeId::PoleLinearPlus => 1,
                _ => -1,
            };
            let value = linear_numerator(x, n, sign, ctx)?.div(x, wp);
            // the limit is −sign·(γ − H_n)
            let target = gamma.sub(&harmonic_real(n, 1, wp), wp).mul_i64(-sign, wp);
            (value, target)
        }
        ProbeId::PoleQuadratic => {
            let value = quadratic_numerator(x, n, ctx)?.div(&x2, wp);
            (value, zeta2(ctx)?.add(&harmonic_real(n, 2, wp), wp))
        }
        ProbeId::PoleQuadraticLimit => {
            let value = quadratic_numerator(x, n, ctx)?.div(&x2, wp);
            (value, zeta2(ctx)?.mul_i64(2, wp))
        }
        ProbeId::ConsecutiveSingularity | ProbeId::ConsecutiveSingularityLog => {
            let a = quadratic_numerator(x, n, ctx)?.sub(&x2.mul(&harmonic_real(n, 2, wp), wp), wp);
            let b = quadratic_numerator(x, n + 1, ctx)?.sub(&x2.mul(&harmonic_real(n + 1, 2, wp), wp), wp);
            let ratio = a.div(&b, wp);
            let m4 = BigReal::from_u64((n + 1).pow(4));
            if id == ProbeId::ConsecutiveSingularity {
                let value = BigReal::one().sub(&ratio, wp).div(&x2, wp);
                let pi = BigReal::pi(wp);
                (value, BigReal::from_i64(3).div(&m4.mul(&pi.mul(&pi, wp), wp), wp))
            } else {
                let value = ratio.ln(wp).div(&x2, wp);
                (value, m4.mul(&zeta2(ctx)?, wp).mul_i64(-2, wp).recip(wp))
            }
        }
        ProbeId::F1Iterate | ProbeId::F2Iterate | ProbeId::F2ProseIterate | ProbeId::GIterate | ProbeId::HIterate => {
            let map: Map = match id {
                ProbeId::F1Iterate => f1,
                ProbeId::F2Iterate => f2,
                ProbeId::F2ProseIterate => f2_prose,
                ProbeId::GIterate => g,
                _ => h,
            };
            (iterate(map, x, n, ctx)?.div(x, wp), ln2_pow(n as i64, wp))
        }
        ProbeId::Difference => {
            let diff = f1(x, ctx)?.sub(&f2(x, ctx)?, wp);
            (diff.mul(&two_to(x, wp), wp), half)
        }
        ProbeId::Star => (omega(x, n, ctx)?, gamma_minus_half),
        ProbeId::StarFh => {
            let diff = f1(x, ctx)?.sub(&h(x, ctx)?, wp);
            (diff.mul(&two_to(&x.add_i64(-1, wp), wp), wp), gamma)
        }
        ProbeId::OmegaRatio => {
            let lo = omega(x, n, ctx)?;
            let hi = omega(x, n + 1, ctx)?;
            let value = hi.sub(&lo, wp).div(&hi.ln(wp).sub(&lo.ln(wp), wp), wp);
            (value, gamma_minus_half)
        }
        ProbeId::Cloitre => {
            let zz = zeta_real(&zeta_real(x, ctx)?, ctx)?;
            (zz.sub(&power_sum(&zeta_head(), x, wp), wp).add_i64(1, wp), gamma)
        }
        ProbeId::CloitreAugmented => {
            let floor = Rational::new(16, 27);
            let e = reciprocal_expansion(&make_series(&SeriesId::ZetaMinus1)?, &Rational::new(1, 2), 512)?;
            let mut sum = BigReal::zero();
            for t in e.terms().iter().filter(|t| t.base >= floor) {
                let term = rational_pow_neg(&t.base.recip(), x, wp).mul(&BigReal::from_rational(&t.coeff, wp), wp);
                sum = sum.add(&term, wp);
            }
            let zz = zeta_real(&zeta_real(x, ctx)?, ctx)?;
            (zz.sub(&sum, wp), gamma)
        }
        ProbeId::CloitreNested => {
            let inner = one_plus(&ln_zeta(x, ctx)?, wp).ln(wp);
            let inner = one_plus(&inner, wp).ln(wp);
            let z = zeta_real(&one_plus(&inner, wp), ctx)?;
            (z.sub(&power_sum(&zeta_head(), x, wp), wp).sub(&half, wp), gamma)
        }
        ProbeId::GammaLambda => {
            let arg = dirichlet_lambda_real(x, ctx)?.add_i64(-1, wp);
            let gm = lngamma_real(&arg, ctx)?;
            let g_val = gm.ln_abs.exp(wp).mul_i64(gm.sign as i64, wp);
            (g_val.sub(&power_sum(&lambda_head(), x, wp), wp).neg(), gamma)
        }
        ProbeId::LambdaLambda => {
            let ll = dirichlet_lambda_real(&dirichlet_lambda_real(x, ctx)?, ctx)?;
            let target = gamma.add(&BigReal::ln2(wp), wp).mul(&half, wp);
            (ll.sub(&power_sum(&lambda_head(), x, wp).mul(&half, wp), wp), target)
        }
        ProbeId::LambdaPole => {
            let l = dirichlet_lambda_real(&one_plus(x, wp), ctx)?;
            let target = gamma.add(&BigReal::ln2(wp), wp).mul(&half, wp);
            (l.sub(&x.mul_i64(2, wp).recip(wp), wp), target)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn x(s: &str) -> BigReal {
        BigReal::parse_decimal(s, 400).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for &id in ProbeId::all() {
            assert_eq!(id.name().parse::<ProbeId>().unwrap(), id);
        }
        assert_eq!("nope".parse::<ProbeId>().unwrap_err().name(), "UnknownProbe");
    }

    #[test]
    fn quadratic_at_zero_order() {
        let r = limit_probe("pole_quadratic", &x("1e-4"), Some(0), &ctx()).unwrap();
        assert!(r.abs_deviation() <= 1e-7, "{}", r.abs_deviation());
        // next-order term ζ(4)x²/2
        let z4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!((r.deviation.to_f64() - z4 * 1e-8 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn linear_family_signs() {
        for n in [0u32, 1, 2, 5] {
            for name in ["pole_linear", "pole_linear_plus", "pole_linear_minus"] {
                let r = limit_probe(name, &x("1e-6"), Some(n), &ctx()).unwrap();
                assert!(r.abs_deviation() <= 1e-5, "{name} n={n}: {}", r.abs_deviation());
            }
        }
    }

    #[test]
    fn consecutive_singularity_pair() {
        let r = limit_probe("consecutive_singularity", &x("1e-3"), Some(0), &ctx()).unwrap();
        assert!(r.abs_deviation() <= 1e-2);
        let l = limit_probe("consecutive_singularity_log", &x("1e-3"), Some(0), &ctx()).unwrap();
        assert!(l.abs_deviation() <= 1e-2);
        // the two targets differ only in sign
        assert!(r.target.add(&l.target, 300).upper_abs() < 1e-60);
    }

    #[test]
    fn out_of_range_arguments() {
        assert_eq!(limit_probe("cloitre", &x("0.5"), None, &ctx()).unwrap_err().name(), "OutOfDomain");
        assert_eq!(limit_probe("pole_linear", &x("2"), None, &ctx()).unwrap_err().name(), "OutOfDomain");
        assert_eq!(limit_probe("star", &x("16"), Some(0), &ctx()).unwrap_err().name(), "UnsupportedParameter");
    }

    #[test]
    fn low_precision_is_reported() {
        let c = PrecisionContext::new(64).unwrap();
        let err = limit_probe("cloitre_augmented", &x("64"), None, &c).unwrap_err();
        assert_eq!(err.name(), "PrecisionInsufficient");
    }

    #[test]
    fn lambda_head_matches_expansion() {
        let e = reciprocal_expansion(&make_series(&SeriesId::DirichletLambdaMinus1).unwrap(), &Rational::new(5, 6), 64)
            .unwrap();
        let got: Vec<(i64, Rational)> = e
            .terms()
            .iter()
            .map(|t| (t.coeff.to_f64() as i64, t.base.clone()))
            .collect();
        assert_eq!(got, lambda_head());
        let z = reciprocal_expansion(&make_series(&SeriesId::ZetaMinus1).unwrap(), &Rational::new(1, 1), 64).unwrap();
        let got: Vec<(i64, Rational)> = z.terms().iter().map(|t| (t.coeff.to_f64() as i64, t.base.clone())).collect();
        assert_eq!(&got[..2], &zeta_head()[..]);
    }

    #[test]
    fn json_layout() {
        let r = limit_probe("lambda_pole", &x("1e-6"), None, &ctx()).unwrap();
        let v = r.to_json();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        let mut want = vec!["name", "x", "n", "value", "target", "deviation", "expected_order"];
        want.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, want);
        assert!(v["n"].is_null());
        assert!(r.abs_deviation() <= 1e-5);
    }
}
