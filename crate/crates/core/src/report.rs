//! Small serialization helpers shared by JSON reports.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Serializes as a JSON integer when it fits in `u64`, otherwise as a decimal string.
pub struct BigNumber<'a>(pub &'a BigUint);

impl Serialize for BigNumber<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn big_json(n: &BigUint) -> serde_json::Value {
    serde_json::to_value(BigNumber(n)).expect("BigNumber always serializes")
}
