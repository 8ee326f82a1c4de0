//! Exact arithmetic for the canonical component of the knot 7_4:
//! cyclotomic norms and ramification certificates for (d,0) Dehn surgeries,
//! the sign-alternating sequence built from β = (i+√15)/4, quaternion-algebra
//! checks on the character variety, and elliptic division polynomials.

pub mod beta;
pub mod character;
pub mod cyclotomic;
pub mod divpoly;
pub mod error;
pub mod intfactor;
mod jsonutil;
pub mod modpoly;
pub mod poly;
pub mod zfactor;

pub use error::{Error, Result};

/// All divisors of n, ascending.
pub(crate) fn divisors_of(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}
