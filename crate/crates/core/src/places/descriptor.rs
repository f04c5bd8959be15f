use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::finite_field::prime_power;
use crate::error::{Error, Result};

/// A supported ground field: `Q`, `F_q`, or `F_q(t)`.
///
/// Text form is `Q`, `F<q>` or `F<q>t`, e.g. `F7`, `F9t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    FiniteField { q: u64 },
    FunctionField { q: u64 },
}

impl FieldDescriptor {
    /// Zero for `Q`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::FiniteField { q } | FieldDescriptor::FunctionField { q } => {
                prime_power(*q).expect("validated").0
            }
        }
    }

    /// Transcendence degree over the prime field.
    pub fn transcendence_degree(&self) -> u32 {
        match self {
            FieldDescriptor::Rationals | FieldDescriptor::FiniteField { .. } => 0,
            FieldDescriptor::FunctionField { .. } => 1,
        }
    }

    pub fn is_global(&self) -> bool {
        !matches!(self, FieldDescriptor::FiniteField { .. })
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::FiniteField { q } => write!(f, "F{q}"),
            FieldDescriptor::FunctionField { q } => write!(f, "F{q}t"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let Some(rest) = s.strip_prefix('F') else {
            return Err(Error::parse(0, format!("unknown field descriptor {s:?}")));
        };
        let (digits, function) = match rest.strip_suffix('t') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(1, format!("expected field size in {s:?}")));
        }
        let q: u64 = digits
            .parse()
            .map_err(|_| Error::parse(1, format!("field size out of range in {s:?}")))?;
        if prime_power(q).is_none() {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        Ok(if function {
            FieldDescriptor::FunctionField { q }
        } else {
            FieldDescriptor::FiniteField { q }
        })
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Splits `"F7t:t^2+1"` into the descriptor and the place text.
pub fn split_place_label(label: &str) -> Result<(FieldDescriptor, &str)> {
    let (d, body) = label
        .split_once(':')
        .ok_or_else(|| Error::parse(0, format!("expected <field>:<place>, got {label:?}")))?;
    let desc = d.parse()?;
    if body.is_empty() {
        return Err(Error::parse(d.len() + 1, "empty place"));
    }
    Ok((desc, body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert_eq!("F7".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::FiniteField { q: 7 });
        assert_eq!("F9t".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::FunctionField { q: 9 });
        assert!("F6t".parse::<FieldDescriptor>().is_err());
        assert!("q".parse::<FieldDescriptor>().is_err());
        assert!("Ft".parse::<FieldDescriptor>().is_err());
        for s in ["Q", "F7", "F7t", "F81t", "F2"] {
            assert_eq!(s.parse::<FieldDescriptor>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn place_labels() {
        let (d, body) = split_place_label("F7t:t^2+1").unwrap();
        assert_eq!(d, FieldDescriptor::FunctionField { q: 7 });
        assert_eq!(body, "t^2+1");
        assert!(split_place_label("Q5").is_err());
        assert!(split_place_label("Q:").is_err());
    }
}
