//! Big integers as decimal strings in JSON, so that reports stay readable
//! and exact in any consumer.

use num_bigint::BigUint;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub(crate) fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(D::Error::custom)
}
