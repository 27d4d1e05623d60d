//! Integers extended by ±∞, used for codimensions and dimensions of
//! possibly empty loci.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl From<usize> for ExtInt {
    fn from(v: usize) -> Self {
        ExtInt::Finite(v as i64)
    }
}

impl PartialEq<i64> for ExtInt {
    fn eq(&self, other: &i64) -> bool {
        *self == ExtInt::Finite(*other)
    }
}

impl PartialOrd<i64> for ExtInt {
    fn partial_cmp(&self, other: &i64) -> Option<std::cmp::Ordering> {
        Some(self.cmp(&ExtInt::Finite(*other)))
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(ExtInt::Finite(v)),
            Raw::Str(s) => match s.as_str() {
                "inf" | "+inf" => Ok(ExtInt::PosInf),
                "-inf" => Ok(ExtInt::NegInf),
                other => Err(serde::de::Error::custom(format!("bad extended integer {other:?}"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinities_at_the_ends() {
        assert!(ExtInt::NegInf < ExtInt::Finite(-1000));
        assert!(ExtInt::Finite(1000) < ExtInt::PosInf);
        assert!(ExtInt::PosInf >= 5);
        assert_eq!(ExtInt::Finite(3), 3);
    }

    #[test]
    fn json_round_trip() {
        let v = vec![ExtInt::NegInf, ExtInt::Finite(2), ExtInt::PosInf];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["-inf",2,"inf"]"#);
        let back: Vec<ExtInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
