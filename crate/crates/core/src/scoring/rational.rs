use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational used for section scores and ruleset parameters.
///
/// In JSON a rational is a number when it has a terminating decimal
/// expansion (`2.5`) and a `"p/q"` string otherwise (`"7/3"`). Both forms,
/// and decimal strings, are accepted on input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));

    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// Exact decimal expansion, when the denominator has only factors 2 and 5.
    pub fn to_decimal_string(self) -> Option<String> {
        let mut denom = self.denom();
        let (mut twos, mut fives) = (0u32, 0u32);
        while denom % 2 == 0 {
            denom /= 2;
            twos += 1;
        }
        while denom % 5 == 0 {
            denom /= 5;
            fives += 1;
        }
        if denom != 1 {
            return None;
        }
        let places = twos.max(fives);
        let scale = 10i128.pow(places);
        let scaled = self.numer() as i128 * (scale / self.denom() as i128);
        let sign = if scaled < 0 { "-" } else { "" };
        let abs = scaled.unsigned_abs();
        let int = abs / scale as u128;
        if places == 0 {
            return Some(format!("{sign}{int}"));
        }
        let frac = abs % scale as u128;
        Some(format!(
            "{sign}{int}.{frac:0width$}",
            width = places as usize
        ))
    }
}

impl From<Ratio<i64>> for Rational {
    fn from(r: Ratio<i64>) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_decimal_string() {
            Some(s) => f.write_str(&s),
            None => write!(f, "{}/{}", self.numer(), self.denom()),
        }
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| format!("invalid numerator in '{s}'"))?;
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|_| format!("invalid denominator in '{s}'"))?;
            if d == 0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            return Ok(Rational::new(n, d));
        }
        parse_decimal(s).ok_or_else(|| format!("'{s}' is not a decimal or p/q rational"))
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return None;
    }
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    let digits = format!("{int}{frac}");
    let numer: i64 = if digits.is_empty() {
        0
    } else {
        digits.parse().ok()?
    };
    let numer = if negative { -numer } else { numer };
    Some(Rational::new(numer, denom))
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_decimal_string() {
            Some(_) if self.denom() == 1 => serializer.serialize_i64(self.numer()),
            Some(s) => serializer.serialize_f64(s.parse().expect("decimal string parses as f64")),
            None => serializer.serialize_str(&format!("{}/{}", self.numer(), self.denom())),
        }
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Float(f64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(Rational::integer(n)),
            // Display for f64 is the shortest string that round-trips
            Repr::Float(f) if f.is_finite() => parse_decimal(&f.to_string())
                .ok_or_else(|| serde::de::Error::custom(format!("cannot represent {f} exactly"))),
            Repr::Float(f) => Err(serde::de::Error::custom(format!("non-finite number {f}"))),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
