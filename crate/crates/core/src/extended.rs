use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A natural number or infinity. Serialized as a JSON integer or the
/// string `"infinity"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Finite(usize),
    Infinity,
}

impl ExtendedNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            ExtendedNat::Finite(v) => Some(v),
            ExtendedNat::Infinity => None,
        }
    }
}

impl From<usize> for ExtendedNat {
    fn from(v: usize) -> Self {
        ExtendedNat::Finite(v)
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedNat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(v) => write!(f, "{v}"),
            ExtendedNat::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedNat::Finite(v) => s.serialize_u64(*v as u64),
            ExtendedNat::Infinity => s.serialize_str("infinity"),
        }
    }
}

struct ExtendedNatVisitor;

impl<'de> Visitor<'de> for ExtendedNatVisitor {
    type Value = ExtendedNat;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a non-negative integer or \"infinity\"")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtendedNat, E> {
        Ok(ExtendedNat::Finite(v as usize))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtendedNat, E> {
        usize::try_from(v)
            .map(ExtendedNat::Finite)
            .map_err(|_| E::custom("negative value"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtendedNat, E> {
        if v == "infinity" {
            Ok(ExtendedNat::Infinity)
        } else {
            Err(E::invalid_value(de::Unexpected::Str(v), &self))
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ExtendedNatVisitor)
    }
}
