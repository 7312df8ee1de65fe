use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An integer or `-inf`. `-inf` absorbs addition and is below every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
}

pub use ExtInt::{Fin, NegInf};

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Fin(n) => Some(n),
            NegInf => None,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        Fin(n)
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) => Ordering::Equal,
            (NegInf, Fin(_)) => Ordering::Less,
            (Fin(_), NegInf) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, n: i64) -> ExtInt {
        match self {
            NegInf => NegInf,
            Fin(a) => Fin(a + n),
        }
    }
}

impl Sub<i64> for ExtInt {
    type Output = ExtInt;
    fn sub(self, n: i64) -> ExtInt {
        self + (-n)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            Fin(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NegInf => s.serialize_str("-inf"),
            Fin(n) => s.serialize_i64(*n),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or \"-inf\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtInt, E> {
                Ok(Fin(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtInt, E> {
                i64::try_from(v).map(Fin).map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtInt, E> {
                match v {
                    "-inf" => Ok(NegInf),
                    _ => Err(E::custom(format!("unexpected string `{v}`"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}
