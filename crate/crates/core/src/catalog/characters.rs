use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real Dirichlet character given by its values on residues 0..modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterTable {
    pub name: String,
    pub modulus: u64,
    pub values: Vec<i8>,
}

impl CharacterTable {
    /// Validates length, the value set {−1, 0, +1}, and that zeros sit exactly
    /// on residues sharing a factor with the modulus.
    pub fn new(name: impl Into<String>, modulus: u64, values: Vec<i8>) -> Result<Self> {
        if modulus == 0 || values.len() as u64 != modulus {
            return Err(Error::UnsupportedParameter(format!(
                "character table needs {modulus} values, got {}",
                values.len()
            )));
        }
        for (r, &v) in values.iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(Error::UnsupportedParameter(format!("value {v} at residue {r} is not in {{-1,0,1}}")));
            }
            let coprime = num_integer::gcd(r as u64, modulus) == 1;
            if coprime == (v == 0) {
                return Err(Error::UnsupportedParameter(format!(
                    "residue {r} mod {modulus}: value {v} inconsistent with gcd"
                )));
            }
        }
        Ok(CharacterTable { name: name.into(), modulus, values })
    }

    pub fn value(&self, n: u64) -> i8 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|&v| v >= 0)
    }
}

/// The real characters used in the catalog, by name.
///
/// Accepted names: `chi_-3`, `chi_+3`, `chi_-5`, `chi_6`, `chi_-6`,
/// `chi_10`, `chi_-10`; the underscore is optional and subscript forms such
/// as `χ₋₃` are recognised too.
pub fn named_character(name: &str) -> Result<CharacterTable> {
    let canonical = canonical_character_name(name).ok_or_else(|| Error::UnknownCharacter(name.to_string()))?;
    let (modulus, values): (u64, Vec<i8>) = match canonical {
        "chi_-3" => (3, vec![0, 1, -1]),
        "chi_+3" => (3, vec![0, 1, 1]),
        // read off 1 − 2⁻ˢ − 3⁻ˢ + 4⁻ˢ + 6⁻ˢ − …
        "chi_-5" => (5, vec![0, 1, -1, -1, 1]),
        "chi_6" => (6, vec![0, 1, 0, 0, 0, 1]),
        "chi_-6" => (6, vec![0, 1, 0, 0, 0, -1]),
        "chi_10" => (10, vec![0, 1, 0, 1, 0, 0, 0, 1, 0, 1]),
        "chi_-10" => (10, vec![0, 1, 0, -1, 0, 0, 0, -1, 0, 1]),
        _ => unreachable!(),
    };
    CharacterTable::new(canonical, modulus, values)
}

pub const CHARACTER_NAMES: [&str; 7] = ["chi_-3", "chi_+3", "chi_-5", "chi_6", "chi_-6", "chi_10", "chi_-10"];

pub(crate) fn canonical_character_name(name: &str) -> Option<&'static str> {
    let cleaned: String = name
        .trim()
        .chars()
        .map(|c| match c {
            'χ' => 'c',
            '₋' => '-',
            '₊' => '+',
            '₀'..='₉' => char::from_digit(c as u32 - '₀' as u32, 10).unwrap(),
            _ => c,
        })
        .filter(|&c| c != '_')
        .collect::<String>()
        .replace("chi", "c")
        .to_lowercase();
    let idx = match cleaned.as_str() {
        "c-3" => 0,
        "c+3" | "c3" => 1,
        "c-5" => 2,
        "c6" | "c+6" => 3,
        "c-6" => 4,
        "c10" | "c+10" => 5,
        "c-10" => 6,
        _ => return None,
    };
    Some(CHARACTER_NAMES[idx])
}
