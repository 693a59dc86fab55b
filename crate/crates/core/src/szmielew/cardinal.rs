use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A cardinal that is either finite or `ℵ0`. Serialized as `"7"` or `"aleph0"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Finite(u64),
    Aleph0,
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_infinite(self) -> bool {
        self == Cardinal::Aleph0
    }

    /// Cardinal sum; a finite overflow saturates to `ℵ0`.
    pub fn add(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                a.checked_add(b).map_or(Cardinal::Aleph0, Cardinal::Finite)
            }
            _ => Cardinal::Aleph0,
        }
    }
}

impl Default for Cardinal {
    fn default() -> Self {
        Self::ZERO
    }
}

impl std::iter::Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Self {
        iter.fold(Cardinal::ZERO, Cardinal::add)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(k) => write!(f, "{k}"),
            Cardinal::Aleph0 => f.write_str("aleph0"),
        }
    }
}

impl FromStr for Cardinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "aleph0" | "Aleph0" | "ℵ0" | "ℵ₀" | "inf" | "infinite" => Ok(Cardinal::Aleph0),
            t => t
                .parse::<u64>()
                .map(Cardinal::Finite)
                .map_err(|_| Error::Parse(format!("bad cardinal `{s}`"))),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(k) => Ok(Cardinal::Finite(k)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(
            Cardinal::Finite(2).add(Cardinal::Finite(3)),
            Cardinal::Finite(5)
        );
        assert_eq!(Cardinal::Finite(2).add(Cardinal::Aleph0), Cardinal::Aleph0);
        assert_eq!(
            Cardinal::Finite(u64::MAX).add(Cardinal::Finite(1)),
            Cardinal::Aleph0
        );
        assert!(Cardinal::Finite(9) < Cardinal::Aleph0);
    }

    #[test]
    fn json_round_trip() {
        for c in [Cardinal::ZERO, Cardinal::Finite(17), Cardinal::Aleph0] {
            let s = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<Cardinal>(&s).unwrap(), c);
        }
        assert_eq!(
            serde_json::from_str::<Cardinal>("4").unwrap(),
            Cardinal::Finite(4)
        );
        assert!(serde_json::from_str::<Cardinal>("\"many\"").is_err());
    }
}
