//! JSON file formats shared by the library and the command-line tool.
//!
//! Lengths are written with shortest round-trip decimal formatting; `+inf`
//! is written as the string `"inf"`.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A length on the extended half line `[0, +inf]` as it appears in files.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Length(pub f64);

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

struct LengthVisitor;

impl Visitor<'_> for LengthVisitor {
    type Value = Length;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or the string \"inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Length, E> {
        Ok(Length(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Length, E> {
        Ok(Length(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Length, E> {
        Ok(Length(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Length, E> {
        match v {
            "inf" | "+inf" | "Infinity" => Ok(Length(f64::INFINITY)),
            _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
        }
    }
}

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(LengthVisitor)
    }
}

/// Serde adapter for plain `f64` fields holding extended lengths.
pub mod length {
    use super::Length;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        Length(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Length::deserialize(d).map(|l| l.0)
    }
}

/// Serde adapter for `Vec<f64>` fields holding extended lengths.
pub mod length_vec {
    use super::Length;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|&x| Length(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<Length>::deserialize(d).map(|v| v.into_iter().map(|l| l.0).collect())
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
