use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};

use crate::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocates"));
}

pub(crate) fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// 2^e as f64, saturating to 0 or ∞ outside the f64 range.
fn exp2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else {
        2f64.powi(e as i32)
    }
}

/// Upper bound on |x| as f64.
pub(crate) fn magnitude(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return f64::INFINITY;
    }
    match x.as_raw_parts() {
        Some((words, _, _, e, _)) if !x.is_zero() => {
            let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
            (top + f64::EPSILON) * exp2(e as i64)
        }
        _ => 0.0,
    }
}

/// Round-to-nearest f64 approximation.
pub(crate) fn approx_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    match x.as_raw_parts() {
        Some((words, _, s, e, _)) => {
            let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
            let v = top * exp2(e as i64);
            if s == Sign::Neg {
                -v
            } else {
                v
            }
        }
        None if x.is_inf_pos() => f64::INFINITY,
        None if x.is_inf_neg() => f64::NEG_INFINITY,
        None => f64::NAN,
    }
}

/// Relative size of one rounding step at precision `p`, with a factor of
/// four to cover functions that are only faithfully rounded.
fn rnd(p: usize) -> f64 {
    exp2(3 - p as i64)
}

/// Exact conversion of an integer to a float of at least its bit length.
pub(crate) fn bigint_to_float(n: &BigInt, p: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    let p = p.max(64 * digits.len().max(1));
    let mut acc = BigFloat::from_word(0, p);
    let shift = BigFloat::from_u128(1u128 << 64, p);
    for &d in digits.iter().rev() {
        acc = acc.mul(&shift, p, RM).add(&BigFloat::from_u64(d, p), p, RM);
    }
    if sign == IntSign::Minus {
        acc = acc.neg();
    }
    acc
}

/// A real number with a rigorous absolute error bound.
///
/// The represented real lies in `[value − err, value + err]`. Every
/// operation takes an explicit working precision and widens `err` by the
/// propagated input errors plus its own rounding.
#[derive(Clone, Debug)]
pub struct BigReal {
    value: BigFloat,
    err: f64,
}

impl BigReal {
    pub fn new(value: BigFloat, err: f64) -> Self {
        BigReal { value, err }
    }

    pub fn exact(value: BigFloat) -> Self {
        BigReal { value, err: 0.0 }
    }

    pub fn zero() -> Self {
        BigReal::exact(BigFloat::from_word(0, 64))
    }

    pub fn one() -> Self {
        BigReal::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        BigReal::exact(BigFloat::from_i64(n, 64))
    }

    pub fn from_u64(n: u64) -> Self {
        BigReal::exact(BigFloat::from_u64(n, 64))
    }

    /// The binary value of `f`, held exactly.
    pub fn from_f64(f: f64) -> Self {
        BigReal::exact(BigFloat::from_f64(f, 64))
    }

    pub fn from_rational(q: &Rational, p: usize) -> Self {
        let n = bigint_to_float(q.numer(), p);
        let d = bigint_to_float(q.denom(), p);
        if q.denom() == &BigInt::from(1) {
            return BigReal::exact(n);
        }
        let v = n.div(&d, p, RM);
        let err = magnitude(&v) * rnd(p);
        BigReal::new(v, err)
    }

    /// Parses a decimal literal such as `1e-4` or `0.001`.
    pub fn parse_decimal(s: &str, p: usize) -> Option<Self> {
        let t = s.trim();
        if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c)) {
            return None;
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, p, RM, cc));
        if v.is_nan() || v.is_inf() {
            return None;
        }
        let err = magnitude(&v) * rnd(p);
        Some(BigReal::new(v, err))
    }

    pub fn value(&self) -> &BigFloat {
        &self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn to_f64(&self) -> f64 {
        approx_f64(&self.value)
    }

    /// Upper bound on |value|.
    pub fn magnitude(&self) -> f64 {
        magnitude(&self.value)
    }

    /// Upper bound on |x| over the whole enclosure.
    pub fn upper_abs(&self) -> f64 {
        self.magnitude() + self.err
    }

    /// Lower bound on |x| over the enclosure (0 if it straddles zero).
    pub fn lower_abs(&self) -> f64 {
        let m = magnitude(&self.value) * (1.0 - 4.0 * f64::EPSILON);
        (m - self.err).max(0.0)
    }

    pub fn widen(mut self, extra: f64) -> Self {
        self.err += extra.abs();
        self
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf() && self.err.is_finite()
    }

    /// Sign of the value when the enclosure excludes zero.
    pub fn certain_sign(&self) -> Option<i32> {
        if self.lower_abs() > 0.0 {
            Some(if self.value.is_negative() { -1 } else { 1 })
        } else {
            None
        }
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    pub fn cmp_value(&self, other: &BigReal) -> Ordering {
        match self.value.cmp(&other.value) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn neg(&self) -> BigReal {
        BigReal::new(self.value.neg(), self.err)
    }

    pub fn abs(&self) -> BigReal {
        BigReal::new(self.value.abs(), self.err)
    }

    pub fn add(&self, o: &BigReal, p: usize) -> BigReal {
        let v = self.value.add(&o.value, p, RM);
        let err = self.err + o.err + magnitude(&v) * rnd(p);
        BigReal::new(v, err)
    }

    pub fn sub(&self, o: &BigReal, p: usize) -> BigReal {
        let v = self.value.sub(&o.value, p, RM);
        let err = self.err + o.err + magnitude(&v) * rnd(p);
        BigReal::new(v, err)
    }

    pub fn mul(&self, o: &BigReal, p: usize) -> BigReal {
        let v = self.value.mul(&o.value, p, RM);
        let err = self.magnitude() * o.err + o.magnitude() * self.err + self.err * o.err + magnitude(&v) * rnd(p);
        BigReal::new(v, err)
    }

    pub fn div(&self, o: &BigReal, p: usize) -> BigReal {
        let v = self.value.div(&o.value, p, RM);
        let lo = o.lower_abs();
        let err = if lo > 0.0 {
            (self.err + magnitude(&v) * o.err) / lo + magnitude(&v) * rnd(p)
        } else {
            f64::INFINITY
        };
        BigReal::new(v, err)
    }

    pub fn recip(&self, p: usize) -> BigReal {
        BigReal::one().div(self, p)
    }

    pub fn mul_i64(&self, k: i64, p: usize) -> BigReal {
        self.mul(&BigReal::from_i64(k), p)
    }

    pub fn add_i64(&self, k: i64, p: usize) -> BigReal {
        self.add(&BigReal::from_i64(k), p)
    }

    /// Natural logarithm of a positive enclosure.
    pub fn ln(&self, p: usize) -> BigReal {
        let lo = self.lower_abs();
        if self.value.is_negative() || lo == 0.0 {
            return BigReal::new(BigFloat::nan(None), f64::INFINITY);
        }
        let v = with_consts(|cc| self.value.ln(p, RM, cc));
        let err = self.err / lo + magnitude(&v) * rnd(p) + exp2(-(p as i64));
        BigReal::new(v, err)
    }

    /// ln|x|.
    pub fn ln_abs(&self, p: usize) -> BigReal {
        self.abs().ln(p)
    }

    pub fn exp(&self, p: usize) -> BigReal {
        let v = with_consts(|cc| self.value.exp(p, RM, cc));
        let m = magnitude(&v);
        let spread = if self.err > 0.0 { (self.err.exp() - 1.0).max(self.err) } else { 0.0 };
        let err = m * spread + m * rnd(p);
        BigReal::new(v, err)
    }

    /// selfᵉ for a positive base, as exp(e·ln self).
    pub fn powr(&self, e: &BigReal, p: usize) -> BigReal {
        let guard = p + 16 + exponent_bits(e.upper_abs() * self.ln_bound());
        self.ln(guard).mul(e, guard).exp(p)
    }

    fn ln_bound(&self) -> f64 {
        approx_f64(&self.value).abs().ln().abs() + 1.0
    }

    pub fn sqrt(&self, p: usize) -> BigReal {
        let v = self.value.sqrt(p, RM);
        let lo = self.lower_abs();
        let err = if lo > 0.0 { self.err / (2.0 * lo.sqrt()) } else { self.err.sqrt() } + magnitude(&v) * rnd(p);
        BigReal::new(v, err)
    }

    pub fn sin(&self, p: usize) -> BigReal {
        let v = with_consts(|cc| self.value.sin(p, RM, cc));
        BigReal::new(v, self.err + exp2(3 - p as i64))
    }

    pub fn pi(p: usize) -> BigReal {
        let v = with_consts(|cc| cc.pi(p, RM));
        let err = magnitude(&v) * rnd(p);
        BigReal::new(v, err)
    }

    pub fn ln2(p: usize) -> BigReal {
        let v = with_consts(|cc| cc.ln_2(p, RM));
        let err = magnitude(&v) * rnd(p);
        BigReal::new(v, err)
    }

    /// 2ᵏ exactly.
    pub fn pow2(k: i64) -> BigReal {
        let mut v = BigFloat::from_word(1, 64);
        v.set_exponent(k as i32 + 1);
        BigReal::exact(v)
    }

    /// |self − other| as a plain value: the error fields are dropped.
    pub fn distance(&self, other: &BigReal, p: usize) -> BigReal {
        BigReal::exact(self.value.sub(&other.value, p, RM).abs())
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.value, digits)
    }

    /// Error bound rendered in short scientific form.
    pub fn err_string(&self) -> String {
        format!("{:.3e}", self.err)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(40)))
    }
}

/// Number of bits needed to hold `x` (0 for |x| ≤ 1).
pub(crate) fn exponent_bits(x: f64) -> usize {
    if !x.is_finite() {
        return 64;
    }
    if x <= 1.0 {
        0
    } else {
        x.log2().ceil() as usize + 1
    }
}

/// Rounds the decimal expansion of `x` to `digits` significant digits.
///
/// Values with decimal exponent in [−6, 21) print positionally, others in
/// `d.ddd…e±N` form.
pub fn format_decimal(x: &BigFloat, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_inf() {
        return if x.is_inf_pos() { "inf".into() } else { "-inf".into() };
    }
    if x.is_zero() {
        return "0".into();
    }
    let digits = digits.max(1);
    let raw = match with_consts(|cc| x.format(Radix::Dec, RM, cc)) {
        Ok(s) => s,
        Err(_) => return "NaN".into(),
    };
    let (negative, body) = match raw.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, raw.as_str()),
    };
    let (mant, exp) = body.split_once(['e', 'E']).unwrap_or((body, "0"));
    let mut exp: i64 = exp.trim_start_matches('+').parse().unwrap_or(0);
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let mut ds: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).map(|b| b - b'0').collect();
    // normalize to d.ddd form: exponent refers to the first digit
    exp += int_part.len() as i64 - 1;
    while ds.len() > 1 && ds[0] == 0 {
        ds.remove(0);
        exp -= 1;
    }
    if ds.len() > digits {
        let round_up = ds[digits] >= 5;
        ds.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    while ds.len() > 1 && *ds.last().unwrap() == 0 {
        ds.pop();
    }
    let text: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
    let body = if (-6..21).contains(&exp) {
        if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), text)
        } else if (exp as usize) + 1 >= text.len() {
            format!("{}{}", text, "0".repeat(exp as usize + 1 - text.len()))
        } else {
            let (a, b) = text.split_at(exp as usize + 1);
            format!("{a}.{b}")
        }
    } else if text.len() == 1 {
        format!("{text}e{exp}")
    } else {
        format!("{}.{}e{}", &text[..1], &text[1..], exp)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const P: usize = 256;

    #[test]
    fn magnitude_matches_f64() {
        for f in [1.0, 0.5, 3.75, 1e-30, 6.02e23, -2.5] {
            let b = BigFloat::from_f64(f, 128);
            assert!((approx_f64(&b) - f).abs() <= f.abs() * 1e-15, "{f}");
            assert!(magnitude(&b) >= f.abs());
        }
        assert_eq!(approx_f64(&BigReal::pow2(-10).value), 1.0 / 1024.0);
    }

    #[test]
    fn decimal_rendering() {
        let third = BigReal::from_rational(&q(1, 3), P);
        assert_eq!(third.to_decimal(5), "0.33333");
        let two_thirds = BigReal::from_rational(&q(2, 3), P);
        assert_eq!(two_thirds.to_decimal(5), "0.66667");
        assert_eq!(BigReal::from_i64(1234).to_decimal(10), "1234");
        assert_eq!(BigReal::from_f64(-0.75).to_decimal(10), "-0.75");
        assert_eq!(BigReal::from_rational(&q(999999, 1000000), P).to_decimal(3), "1");
        assert_eq!(BigReal::pow2(100).to_decimal(5), "1.2677e30");
        assert_eq!(BigReal::from_f64(1e-9).to_decimal(3), "1e-9");
    }

    #[test]
    fn enclosures_contain_truth() {
        // ln(e) = 1 and exp(ln 2) = 2 within the reported error
        let two = BigReal::from_i64(2);
        let back = two.ln(P).exp(P);
        assert!(back.distance(&two, P).to_f64() <= back.err());
        let third = BigReal::from_rational(&q(1, 3), P);
        let one = third.mul_i64(3, P);
        assert!(one.distance(&BigReal::one(), P).to_f64() <= one.err());
        assert!(one.err() < 1e-70);
    }

    #[test]
    fn powr_and_constants() {
        let x = BigReal::from_i64(2).powr(&BigReal::from_f64(0.5), P);
        let s = BigReal::from_i64(2).sqrt(P);
        assert!(x.distance(&s, P).to_f64() <= x.err() + s.err());
        let pi = BigReal::pi(P);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(pi.to_decimal(20), "3.1415926535897932385");
    }

    #[test]
    fn parse_and_sign() {
        let x = BigReal::parse_decimal("1e-4", P).unwrap();
        assert!((x.to_f64() - 1e-4).abs() < 1e-19);
        assert!(BigReal::parse_decimal("abc", P).is_none());
        assert_eq!(x.neg().certain_sign(), Some(-1));
        let fuzzy = BigReal::zero().widen(1.0);
        assert_eq!(fuzzy.certain_sign(), None);
        assert!(!BigReal::from_i64(-3).ln(P).is_finite());
    }

    #[test]
    fn big_integers_convert_exactly() {
        let n: BigInt = BigInt::from(3u8).pow(200);
        let f = bigint_to_float(&n, 64);
        let back = BigReal::exact(f).to_decimal(20);
        assert_eq!(back, "2.6561398887587476934e95");
    }
}
