//! Serde adapters writing big integers as JSON numbers when they fit in
//! `i64` and as decimal strings otherwise.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Text(String),
}

fn to_repr(v: &BigInt) -> Repr {
    match i64::try_from(v) {
        Ok(s) => Repr::Small(s),
        Err(_) => Repr::Text(v.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Small(s) => Ok(BigInt::from(s)),
        Repr::Text(t) => t.parse().map_err(|_| E::custom(format!("bad integer {t:?}"))),
    }
}

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    to_repr(v).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    from_repr(Repr::deserialize(d)?)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(from_repr::<D::Error>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)
    }
}
