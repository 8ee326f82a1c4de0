//! Cyclotomic polynomials, real-subfield minimal polynomials, and the two
//! independent algorithms for the field norm N(c_d) of
//! c_d = 4(ζ_d² + ζ_d⁻²) − 7 from Q(ζ_d + ζ_d⁻¹) down to Q, together with
//! ramified-prime extraction for (d,0) surgeries.

use crate::error::{Error, Result};
use crate::intfactor::{factor_integer, multiplicative_order, Factorization};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Cached per-d data: Φ_d and ψ_d (minimal polynomial of 2cos(2π/d)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycData {
    pub d: u64,
    pub phi_d: u64,
    pub cyclotomic: IntPoly,
    pub real_minimal: IntPoly,
}

fn euler_phi(d: u64) -> u64 {
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= d {
        if d % i == 0 {
            out.push(i);
            if i != d / i {
                out.push(d / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// The d-th cyclotomic polynomial, by iterated exact division of x^d − 1.
pub fn cyclotomic_poly(d: u64) -> Result<IntPoly> {
    if d == 0 {
        return Err(Error::InvalidInput("cyclotomic index must be >= 1".into()));
    }
    fn compute(d: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
        if let Some(p) = memo.get(&d) {
            return p.clone();
        }
        // x^d - 1 = prod_{e | d} Phi_e
        let mut num = IntPoly::monomial(BigInt::one(), d as usize) - IntPoly::one();
        for e in divisors(d) {
            if e == d {
                continue;
            }
            let phi_e = compute(e, memo);
            num = num.div_exact(&phi_e).expect("cyclotomic division is exact");
        }
        memo.insert(d, num.clone());
        num
    }
    let mut memo = HashMap::new();
    Ok(compute(d, &mut memo))
}

/// Monic ψ_d of degree φ(d)/2 with ψ_d(2cos(2π/d)) = 0, obtained by
/// inverting x^m ψ_d(x + 1/x) = Φ_d(x).
pub fn real_minimal_poly(d: u64) -> Result<IntPoly> {
    Ok(cyc_data(d)?.real_minimal.clone())
}

fn invert_chebyshev_substitution(phi: &IntPoly, m: usize) -> IntPoly {
    // Peel the top coefficient repeatedly: the x^{m+k} coefficient of
    // x^{m-k}(x²+1)^k ψ_k-term structure determines psi[k] from the top down.
    let mut work: Vec<BigInt> = (0..=2 * m).map(|i| phi.coeff(i)).collect();
    let mut psi = vec![BigInt::zero(); m + 1];
    // (x²+1)^k expanded as binomials, built incrementally
    for k in (0..=m).rev() {
        let c = work[m + k].clone();
        psi[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        // subtract c · x^{m−k} (x²+1)^k
        let mut binom = BigInt::one();
        for j in 0..=k {
            work[(m - k) + 2 * j] -= &c * &binom;
            if j < k {
                binom = binom * (k - j) / (j + 1);
            }
        }
    }
    debug_assert!(work.iter().all(Zero::is_zero), "substitution must invert exactly");
    IntPoly::new(psi)
}

fn cyc_memo() -> &'static Mutex<HashMap<u64, Arc<CycData>>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, Arc<CycData>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized Φ_d and ψ_d for odd d ≥ 3.
pub fn cyc_data(d: u64) -> Result<Arc<CycData>> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "real cyclotomic data requires odd d >= 3, got {d}"
        )));
    }
    if let Some(hit) = cyc_memo().lock().unwrap().get(&d) {
        return Ok(hit.clone());
    }
    let phi = cyclotomic_poly(d)?;
    let phi_d = euler_phi(d);
    debug_assert_eq!(phi.deg(), phi_d as usize);
    let m = (phi_d / 2) as usize;
    let psi = invert_chebyshev_substitution(&phi, m);
    let data = Arc::new(CycData {
        d,
        phi_d,
        cyclotomic: phi,
        real_minimal: psi,
    });
    let entry = cyc_memo()
        .lock()
        .unwrap()
        .entry(d)
        .or_insert(data)
        .clone();
    Ok(entry)
}

/// Norm of c_d with residue, factorization, and ramified primes.
#[derive(Debug, Clone, Serialize)]
pub struct NormResult {
    pub d: u64,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub value: BigInt,
    /// |value| mod 4, always 1 or 3.
    pub residue_mod4: u8,
    pub factorization: Factorization,
    /// Primes ≡ 3 mod 4 dividing the norm to an odd exponent, ascending.
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint_vec")]
    pub ramified_primes: Vec<BigInt>,
}

/// The signed norm N(c_d) alone, without factoring it.
///
/// Equals (−4)^m ψ_d(7/4) = (−1)^m Σ_k a_k 7^k 4^{m−k} where m = deg ψ_d;
/// valid because for odd d the map ζ ↦ ζ² permutes the primitive d-th roots,
/// so the conjugates of ζ² + ζ⁻² are exactly the roots of ψ_d.
pub fn norm_cd_value(d: u64) -> Result<BigInt> {
    let data = cyc_data(d)?;
    let psi = &data.real_minimal;
    let m = psi.deg();
    let seven = BigInt::from(7);
    let four = BigInt::from(4);
    let mut total = BigInt::zero();
    for k in 0..=m {
        total += psi.coeff(k) * seven.pow(k as u32) * four.pow((m - k) as u32);
    }
    if m % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// Full norm record for c_d: value, residue, factorization, ramified primes.
///
/// Factors the norm completely, which is only desk-feasible for moderate d;
/// callers that need the value alone should use [`norm_cd_value`].
pub fn norm_cd(d: u64) -> Result<NormResult> {
    let value = norm_cd_value(d)?;
    let abs = value.abs();
    let residue_mod4 = u8::try_from(&abs % BigInt::from(4)).expect("residue fits");
    let factorization = factor_integer(&value)?;
    let ramified_primes = factorization.odd_multiplicity_3_mod_4();
    Ok(NormResult {
        d,
        value,
        residue_mod4,
        factorization,
        ramified_primes,
    })
}

/// Independent norm algorithm: s² = Res(Φ_d, 4x⁴−7x²+4), s = √(s²),
/// sign fixed by the congruence N(c_d) ≡ 1 mod 4.
pub fn norm_cd_via_resultant(d: u64) -> Result<BigInt> {
    let data = cyc_data(d)?;
    let quartic = IntPoly::new(vec![
        BigInt::from(4),
        BigInt::zero(),
        BigInt::from(-7),
        BigInt::zero(),
        BigInt::from(4),
    ]);
    let s2 = data.cyclotomic.resultant(&quartic)?;
    if s2.is_negative() {
        return Err(Error::Internal(format!(
            "Res(Phi_{d}, 4x^4-7x^2+4) = {s2} negative; expected a square"
        )));
    }
    let s = s2.sqrt();
    if &s * &s != s2 {
        return Err(Error::Internal(format!(
            "Res(Phi_{d}, 4x^4-7x^2+4) = {s2} is not a perfect square"
        )));
    }
    Ok(if (&s % BigInt::from(4)) == BigInt::one() {
        s
    } else {
        -s
    })
}

/// The ramified primes certified by the (d,0) surgery norm.
pub fn surgery_ramified_primes(d: u64) -> Result<Vec<BigInt>> {
    if d == 1 {
        return Ok(Vec::new());
    }
    Ok(norm_cd(d)?.ramified_primes)
}

/// True iff every prime p | N(c_d) with p ∤ d has multiplicative order
/// 1 or 2 mod d.
pub fn order_bound_audit(d: u64) -> Result<bool> {
    let norm = norm_cd(d)?;
    let dm = BigInt::from(d);
    for (p, _) in &norm.factorization.factors {
        if (p % &dm).is_zero() || p == &dm {
            continue;
        }
        if !num_integer::Integer::gcd(p, &dm).is_one() {
            continue;
        }
        let ord = multiplicative_order(p, d)?;
        if ord > 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1).unwrap(), ip(&[-1, 1]));
        assert_eq!(cyclotomic_poly(3).unwrap(), ip(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap(), ip(&[1, -1, 1]));
        let c15 = cyclotomic_poly(15).unwrap();
        assert_eq!(c15.deg(), 8);
        assert!(c15.is_monic());
        assert_eq!(c15.eval(&BigInt::one()), BigInt::one());
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn cyclotomic_product_identity() {
        // x^n - 1 = prod_{d|n} Phi_d for a composite with several divisors
        for n in [12u64, 45, 105] {
            let mut prod = IntPoly::one();
            for e in divisors(n) {
                prod = &prod * &cyclotomic_poly(e).unwrap();
            }
            let target = IntPoly::monomial(BigInt::one(), n as usize) - IntPoly::one();
            assert_eq!(prod, target, "n={n}");
        }
    }

    #[test]
    fn real_minimal_small() {
        assert_eq!(real_minimal_poly(3).unwrap(), ip(&[1, 1]));
        assert_eq!(real_minimal_poly(5).unwrap(), ip(&[-1, 1, 1]));
        assert_eq!(real_minimal_poly(7).unwrap(), ip(&[-1, -2, 1, 1]));
        assert!(real_minimal_poly(4).is_err());
        assert!(real_minimal_poly(1).is_err());
    }

    #[test]
    fn real_minimal_substitution_roundtrip() {
        // expand x^m psi(x + 1/x) and compare with Phi_d
        for d in [3u64, 5, 7, 9, 15, 21, 33, 45] {
            let data = cyc_data(d).unwrap();
            let m = (data.phi_d / 2) as usize;
            let psi = &data.real_minimal;
            assert!(psi.is_monic());
            assert_eq!(psi.deg(), m);
            // sum_k psi_k x^{m-k} (x^2+1)^k
            let x2p1 = ip(&[1, 0, 1]);
            let mut acc = IntPoly::zero();
            for k in 0..=m {
                let term = IntPoly::monomial(psi.coeff(k), m - k) * x2p1.pow(k as u32);
                acc = acc + term;
            }
            assert_eq!(acc, data.cyclotomic, "d={d}");
        }
    }

    #[test]
    fn norm_values_small() {
        assert_eq!(norm_cd_value(3).unwrap(), BigInt::from(-11));
        assert_eq!(norm_cd_value(5).unwrap(), BigInt::from(61));
        assert_eq!(norm_cd_value(13).unwrap(), BigInt::from(-2339));
        assert!(norm_cd_value(2).is_err());
    }

    #[test]
    fn norm_resultant_route_agrees() {
        for d in (3..=61).step_by(2) {
            assert_eq!(
                norm_cd_value(d).unwrap(),
                norm_cd_via_resultant(d).unwrap(),
                "d={d}"
            );
        }
    }

    #[test]
    fn norm_congruence_lemma() {
        for d in (3..=101).step_by(2) {
            let v = norm_cd_value(d).unwrap();
            assert!(num_integer::Integer::is_odd(&v), "d={d}");
            assert_eq!(
                num_integer::Integer::mod_floor(&v, &BigInt::from(4)),
                BigInt::one(),
                "d={d}"
            );
        }
    }

    #[test]
    fn ramified_primes_small() {
        assert_eq!(
            surgery_ramified_primes(3).unwrap(),
            vec![BigInt::from(11)]
        );
        assert!(surgery_ramified_primes(5).unwrap().is_empty());
        assert!(surgery_ramified_primes(1).unwrap().is_empty());
        let n9 = norm_cd(9).unwrap();
        assert!(n9.residue_mod4 == 1 || n9.residue_mod4 == 3);
        assert_eq!(n9.factorization.value(), n9.value);
    }

    #[test]
    fn order_bound_small() {
        for d in [3u64, 5, 7, 9, 11, 13, 15] {
            assert!(order_bound_audit(d).unwrap(), "d={d}");
        }
    }
}
