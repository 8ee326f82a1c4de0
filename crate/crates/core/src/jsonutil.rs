//! Serde helpers: arbitrary-precision integers serialize as decimal strings
//! so JSON consumers never face precision loss.

use crate::poly::IntPoly;
use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

impl Serialize for IntPoly {
    /// Coefficient list, lowest degree first, as decimal strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs().len()))?;
        for c in self.coeffs() {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn serialize_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn serialize_factor_pairs<S: Serializer>(
    v: &[(BigInt, u32)],
    s: S,
) -> Result<S::Ok, S::Error> {
    #[derive(serde::Serialize)]
    struct Pair<'a> {
        prime: &'a str,
        exponent: u32,
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, e) in v {
        let ps = p.to_string();
        seq.serialize_element(&Pair {
            prime: &ps,
            exponent: *e,
        })?;
    }
    seq.end()
}
