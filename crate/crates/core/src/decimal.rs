//! Serde helpers writing big integers as decimal strings.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let text = String::deserialize(d)?;
    BigUint::parse_bytes(text.as_bytes(), 10)
        .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {text}")))
}

pub mod signed_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_str_radix(10)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|t| {
                BigInt::parse_bytes(t.as_bytes(), 10)
                    .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {t}")))
            })
            .collect()
    }
}
