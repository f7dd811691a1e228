//! Coefficient streams for every series whose reciprocal the crate expands.

mod characters;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use characters::{named_character, CharacterTable, CHARACTER_NAMES};

use crate::arith::{liouville, mobius, prime_power_stream, prime_stream, thue_morse_sign};
use crate::error::{Error, Result};
use crate::expansion::SeriesSpec;
use crate::Rational;

/// Which of L − 1 or 1 − L is inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "L_minus_1")]
    LMinusOne,
    #[serde(rename = "one_minus_L")]
    OneMinusL,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::LMinusOne => "L_minus_1",
            Orientation::OneMinusL => "one_minus_L",
        }
    }

    fn sign(self) -> i64 {
        match self {
            Orientation::LMinusOne => 1,
            Orientation::OneMinusL => -1,
        }
    }
}

/// A cataloged series. The tag determines the coefficient stream.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeriesId {
    ZetaMinus1,
    OneMinusEta,
    DirichletLambdaMinus1,
    OneMinusBeta,
    LogZeta,
    PrimeZeta,
    MobiusComplement,
    LiouvilleComplement,
    ThueMorseUpsilon,
    ThueMorseXi,
    Char { character: String, orientation: Orientation },
    HurwitzZeta(Rational),
    HurwitzLambda(Rational),
}

impl SeriesId {
    /// The character with the orientation that makes its leading stream
    /// coefficient +1.
    pub fn character(name: &str) -> Result<SeriesId> {
        let table = named_character(name)?;
        let first = (2..).map(|n| table.value(n)).find(|&v| v != 0).unwrap_or(1);
        let orientation = if first < 0 {
            Orientation::OneMinusL
        } else {
            Orientation::LMinusOne
        };
        Ok(SeriesId::Char { character: table.name, orientation })
    }

    /// Human-readable name of the function being expanded.
    pub fn reciprocal_of(&self) -> String {
        match self {
            SeriesId::ZetaMinus1 => "1/(zeta(s) - 1)".into(),
            SeriesId::OneMinusEta => "1/(1 - eta(s))".into(),
            SeriesId::DirichletLambdaMinus1 => "1/(lambda(s) - 1)".into(),
            SeriesId::OneMinusBeta => "1/(1 - beta(s))".into(),
            SeriesId::LogZeta => "1/ln zeta(s)".into(),
            SeriesId::PrimeZeta => "1/P(s)".into(),
            SeriesId::MobiusComplement => "1/(1 - 1/zeta(s)) = zeta(s)/(zeta(s) - 1)".into(),
            SeriesId::LiouvilleComplement => "1/(1 - zeta(2s)/zeta(s))".into(),
            SeriesId::ThueMorseUpsilon => "1/(1 - Upsilon(s))".into(),
            SeriesId::ThueMorseXi => "1/Xi(s)".into(),
            SeriesId::Char { character, orientation } => match orientation {
                Orientation::LMinusOne => format!("1/(L(s, {character}) - 1)"),
                Orientation::OneMinusL => format!("1/(1 - L(s, {character}))"),
            },
            SeriesId::HurwitzZeta(q) => format!("1/zeta(s, {q})"),
            SeriesId::HurwitzLambda(q) => format!("1/lambda(s, {q})"),
        }
    }

    pub fn orientation(&self) -> Option<Orientation> {
        match self {
            SeriesId::Char { orientation, .. } => Some(*orientation),
            _ => None,
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesId::ZetaMinus1 => f.write_str("zeta_minus_1"),
            SeriesId::OneMinusEta => f.write_str("one_minus_eta"),
            SeriesId::DirichletLambdaMinus1 => f.write_str("dirichlet_lambda_minus_1"),
            SeriesId::OneMinusBeta => f.write_str("one_minus_beta"),
            SeriesId::LogZeta => f.write_str("log_zeta"),
            SeriesId::PrimeZeta => f.write_str("prime_zeta"),
            SeriesId::MobiusComplement => f.write_str("mobius_complement"),
            SeriesId::LiouvilleComplement => f.write_str("liouville_complement"),
            SeriesId::ThueMorseUpsilon => f.write_str("thue_morse_upsilon"),
            SeriesId::ThueMorseXi => f.write_str("thue_morse_xi"),
            SeriesId::Char { character, orientation } => write!(f, "char({character},{})", orientation.as_str()),
            SeriesId::HurwitzZeta(q) => write!(f, "hurwitz_zeta({q})"),
            SeriesId::HurwitzLambda(q) => write!(f, "hurwitz_lambda({q})"),
        }
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form. A bare character name such
    /// as `chi_6` selects its default orientation; `hurwitz_zeta:3/2` is
    /// accepted as shorthand for `hurwitz_zeta(3/2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let simple = match s {
            "zeta_minus_1" => Some(SeriesId::ZetaMinus1),
            "one_minus_eta" => Some(SeriesId::OneMinusEta),
            "dirichlet_lambda_minus_1" => Some(SeriesId::DirichletLambdaMinus1),
            "one_minus_beta" => Some(SeriesId::OneMinusBeta),
            "log_zeta" => Some(SeriesId::LogZeta),
            "prime_zeta" => Some(SeriesId::PrimeZeta),
            "mobius_complement" => Some(SeriesId::MobiusComplement),
            "liouville_complement" => Some(SeriesId::LiouvilleComplement),
            "thue_morse_upsilon" => Some(SeriesId::ThueMorseUpsilon),
            "thue_morse_xi" => Some(SeriesId::ThueMorseXi),
            _ => None,
        };
        if let Some(id) = simple {
            return Ok(id);
        }
        if characters::canonical_character_name(s).is_some() {
            return SeriesId::character(s);
        }
        let (head, arg) = split_call(s).ok_or_else(|| Error::UnknownSeries(s.to_string()))?;
        match head {
            "char" => {
                let (name, orient) = arg.split_once(',').ok_or_else(|| Error::UnknownSeries(s.to_string()))?;
                let table = named_character(name)?;
                let orientation = match orient.trim() {
                    "L_minus_1" => Orientation::LMinusOne,
                    "one_minus_L" => Orientation::OneMinusL,
                    other => return Err(Error::UnsupportedParameter(format!("orientation {other}"))),
                };
                Ok(SeriesId::Char { character: table.name, orientation })
            }
            "hurwitz_zeta" | "hurwitz_lambda" => {
                let q: Rational = arg
                    .parse()
                    .map_err(|_| Error::UnsupportedParameter(format!("shift {arg:?} is not an exact rational")))?;
                if q <= 1 {
                    return Err(Error::UnsupportedParameter(format!("shift {q} must exceed 1")));
                }
                Ok(if head == "hurwitz_zeta" { SeriesId::HurwitzZeta(q) } else { SeriesId::HurwitzLambda(q) })
            }
            _ => Err(Error::UnknownSeries(s.to_string())),
        }
    }
}

fn split_call(s: &str) -> Option<(&str, &str)> {
    if let Some((head, rest)) = s.split_once('(') {
        let arg = rest.strip_suffix(')')?;
        Some((head.trim(), arg.trim()))
    } else {
        let (head, arg) = s.split_once(':')?;
        Some((head.trim(), arg.trim()))
    }
}

impl Serialize for SeriesId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SeriesId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn int(n: u64) -> Rational {
    Rational::integer(n)
}

fn unit(sign: i64) -> Rational {
    Rational::integer(sign)
}

/// The coefficient stream for a cataloged series.
pub fn make_series(id: &SeriesId) -> Result<SeriesSpec> {
    let name = id.to_string();
    let desc = id.reciprocal_of();
    let spec = match id {
        SeriesId::ZetaMinus1 => SeriesSpec::from_generator(name, desc, || (2u64..).map(|n| (int(n), unit(1)))),
        SeriesId::OneMinusEta => SeriesSpec::from_generator(name, desc, || {
            (2u64..).map(|n| (int(n), unit(if n % 2 == 0 { 1 } else { -1 })))
        }),
        SeriesId::DirichletLambdaMinus1 => {
            SeriesSpec::from_generator(name, desc, || (1u64..).map(|n| (int(2 * n + 1), unit(1))))
        }
        SeriesId::OneMinusBeta => SeriesSpec::from_generator(name, desc, || {
            (1u64..).map(|n| (int(2 * n + 1), unit(if n % 2 == 1 { 1 } else { -1 })))
        }),
        SeriesId::LogZeta => SeriesSpec::from_generator(name, desc, || {
            prime_power_stream().map(|(value, _, k)| (int(value), Rational::new(1, k)))
        }),
        SeriesId::PrimeZeta => SeriesSpec::from_generator(name, desc, || prime_stream().map(|p| (int(p), unit(1)))),
        SeriesId::MobiusComplement => SeriesSpec::from_generator(name, desc, || {
            (2u64..).map(|n| (int(n), unit(-mobius(n) as i64)))
        }),
        SeriesId::LiouvilleComplement => SeriesSpec::from_generator(name, desc, || {
            (2u64..).map(|n| (int(n), unit(-liouville(n) as i64)))
        }),
        SeriesId::ThueMorseUpsilon => SeriesSpec::from_generator(name, desc, || {
            (2u64..).map(|n| (int(n), unit(-thue_morse_sign(n) as i64)))
        }),
        SeriesId::ThueMorseXi => SeriesSpec::from_generator(name, desc, || {
            std::iter::once((int(2), unit(1))).chain((3u64..).map(|n| (int(n), unit(thue_morse_sign(n) as i64))))
        }),
        SeriesId::Char { character, orientation } => {
            let table = named_character(character)?;
            let sign = orientation.sign();
            SeriesSpec::from_generator(name, desc, move || {
                let table = table.clone();
                (2u64..).map(move |n| (int(n), unit(sign * table.value(n) as i64)))
            })
        }
        SeriesId::HurwitzZeta(q) | SeriesId::HurwitzLambda(q) => {
            if q <= &1 {
                return Err(Error::UnsupportedParameter(format!("shift {q} must exceed 1")));
            }
            let step = if matches!(id, SeriesId::HurwitzZeta(_)) { 1u64 } else { 2 };
            let q = q.clone();
            SeriesSpec::from_generator(name, desc, move || {
                let q = q.clone();
                (0u64..).map(move |n| (&q + &int(step * n), unit(1)))
            })
        }
    };
    Ok(spec.with_id(id.clone()))
}

/// Every series the catalog lists by default (characters in their default
/// orientation, Hurwitz variants at shift 3/2).
pub fn default_catalog() -> Vec<SeriesId> {
    let mut ids = vec![
        SeriesId::ZetaMinus1,
        SeriesId::OneMinusEta,
        SeriesId::DirichletLambdaMinus1,
        SeriesId::OneMinusBeta,
        SeriesId::LogZeta,
        SeriesId::PrimeZeta,
        SeriesId::MobiusComplement,
        SeriesId::LiouvilleComplement,
        SeriesId::ThueMorseUpsilon,
        SeriesId::ThueMorseXi,
    ];
    ids.extend(CHARACTER_NAMES.iter().map(|n| SeriesId::character(n).expect("built-in character")));
    ids.push(SeriesId::HurwitzZeta(Rational::new(3, 2)));
    ids.push(SeriesId::HurwitzLambda(Rational::new(3, 2)));
    ids
}

/// One row of the catalog listing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub leading_base: Rational,
    pub orientation: Option<Orientation>,
}

pub fn catalog_listing() -> Result<Vec<CatalogEntry>> {
    default_catalog()
        .into_iter()
        .map(|id| {
            let spec = make_series(&id)?;
            let (leading_base, _) = spec.leading()?;
            Ok(CatalogEntry {
                name: id.to_string(),
                description: id.reciprocal_of(),
                leading_base,
                orientation: id.orientation(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn first(id: SeriesId, n: usize) -> Vec<(Rational, Rational)> {
        make_series(&id).unwrap().take(n)
    }

    #[test]
    fn stream_prefixes() {
        assert_eq!(first(SeriesId::ZetaMinus1, 3), vec![(q(2, 1), q(1, 1)), (q(3, 1), q(1, 1)), (q(4, 1), q(1, 1))]);
        assert_eq!(first(SeriesId::OneMinusEta, 3), vec![(q(2, 1), q(1, 1)), (q(3, 1), q(-1, 1)), (q(4, 1), q(1, 1))]);
        assert_eq!(first(SeriesId::OneMinusBeta, 3), vec![(q(3, 1), q(1, 1)), (q(5, 1), q(-1, 1)), (q(7, 1), q(1, 1))]);
        assert_eq!(first(SeriesId::LogZeta, 4)[2], (q(4, 1), q(1, 2)));
        assert_eq!(first(SeriesId::MobiusComplement, 4)[3], (q(6, 1), q(-1, 1)));
        assert_eq!(first(SeriesId::LiouvilleComplement, 3)[2], (q(4, 1), q(-1, 1)));
        assert_eq!(first(SeriesId::ThueMorseXi, 3), vec![(q(2, 1), q(1, 1)), (q(3, 1), q(-1, 1)), (q(4, 1), q(1, 1))]);
        assert_eq!(first(SeriesId::HurwitzLambda(q(3, 2)), 2)[1].0, q(7, 2));
        let chi6 = first(SeriesId::character("chi_6").unwrap(), 3);
        assert_eq!(chi6.iter().map(|t| t.0.clone()).collect::<Vec<_>>(), vec![q(5, 1), q(7, 1), q(11, 1)]);
    }

    #[test]
    fn leading_coefficients_positive() {
        for id in default_catalog() {
            let (_, c) = make_series(&id).unwrap().leading().unwrap();
            assert_eq!(c, q(1, 1), "{id}");
        }
    }

    #[test]
    fn ids_round_trip() {
        for id in default_catalog() {
            let back: SeriesId = id.to_string().parse().unwrap();
            assert_eq!(back, id);
        }
        assert_eq!("hurwitz_zeta:3/2".parse::<SeriesId>().unwrap(), SeriesId::HurwitzZeta(q(3, 2)));
        assert!(matches!("hurwitz_zeta(1/2)".parse::<SeriesId>(), Err(Error::UnsupportedParameter(_))));
        assert!(matches!("hurwitz_zeta(pi/2)".parse::<SeriesId>(), Err(Error::UnsupportedParameter(_))));
        assert!(matches!("nonsense".parse::<SeriesId>(), Err(Error::UnknownSeries(_))));
        let flipped: SeriesId = "char(chi_6,one_minus_L)".parse().unwrap();
        assert_eq!(flipped.orientation(), Some(Orientation::OneMinusL));
    }

    #[test]
    fn character_streams_periodic() {
        for name in CHARACTER_NAMES {
            let spec = make_series(&SeriesId::character(name).unwrap()).unwrap();
            let m = named_character(name).unwrap().modulus;
            let coeff_at = |n: u64| {
                spec.stream()
                    .find(|(b, _)| b >= &Rational::integer(n))
                    .filter(|(b, _)| b == &Rational::integer(n))
                    .map(|(_, c)| c)
                    .unwrap_or_else(Rational::zero)
            };
            for n in 2..40 {
                assert_eq!(coeff_at(n), coeff_at(n + m), "{name} at {n}");
            }
        }
    }

    #[test]
    fn listing() {
        let l = catalog_listing().unwrap();
        assert_eq!(l.len(), 19);
        assert_eq!(l[0].leading_base, q(2, 1));
        let chi6 = l.iter().find(|e| e.name == "char(chi_6,L_minus_1)").unwrap();
        assert_eq!(chi6.leading_base, q(5, 1));
    }
}
