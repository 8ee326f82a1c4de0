//! Exact arithmetic for β = (i+√15)/4 and γ = 2β, the integer sequence
//! s(n) = 2^{n+1}·Im(βⁿ), and the Furstenberg-style construction of the
//! sign-alternating sequence (n_i) with its ramification certificates (d_i).

use crate::cyclotomic::{norm_cd, norm_cd_value};
use crate::error::{Error, Result};
use crate::intfactor::{is_prime, Factorization};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Element a + b·i + c·√15 + d·i√15 of Q(i, √15) with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticElem {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl QuarticElem {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        QuarticElem { a, b, c, d }
    }

    pub fn one() -> Self {
        QuarticElem::new(
            BigRational::one(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    /// γ = 2β = (√15 + i)/2, with minimal polynomial x⁴ − 7x² + 16.
    pub fn gamma() -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        QuarticElem::new(BigRational::zero(), half.clone(), half, BigRational::zero())
    }

    /// Product under i² = −1, (√15)² = 15.
    pub fn mul(&self, o: &Self) -> Self {
        let fifteen = BigRational::from(BigInt::from(15));
        QuarticElem::new(
            &self.a * &o.a - &self.b * &o.b + &fifteen * (&self.c * &o.c - &self.d * &o.d),
            &self.a * &o.b + &self.b * &o.a + &fifteen * (&self.c * &o.d + &self.d * &o.c),
            &self.a * &o.c + &self.c * &o.a - (&self.b * &o.d + &self.d * &o.b),
            &self.a * &o.d + &self.d * &o.a + &self.b * &o.c + &self.c * &o.b,
        )
    }

    /// Exact n-th power by binary exponentiation.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QuarticElem::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

/// s(n) = 2^{n+1} Im(βⁿ) = 2 × (i-component of γⁿ), an exact integer for odd n.
pub fn s_of_n(n: u64) -> Result<BigInt> {
    if n % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "s(n) is only integral for odd n (got {n}); 2^{{n+1}} Im(beta^n) is irrational for even n"
        )));
    }
    let g = QuarticElem::gamma().pow(n);
    let v = &g.b * BigRational::from(BigInt::from(2));
    if !v.is_integer() {
        return Err(Error::Internal(format!(
            "s({n}) failed integrality: 2·Im-coordinate = {v}"
        )));
    }
    Ok(v.to_integer())
}

/// True iff s(n) mod 4 is 1 for n ≡ 1 mod 4 and 3 for n ≡ 3 mod 4.
pub fn s_residue_audit(n: u64) -> Result<bool> {
    let s = s_of_n(n)?;
    let r = num_integer::Integer::mod_floor(&s, &BigInt::from(4));
    Ok(r == BigInt::from(n % 4))
}

/// True iff ∏_{d|n} N(c_d) (with the c₁ term equal to 1) equals s(n) exactly.
pub fn product_identity_audit(n: u64) -> Result<bool> {
    if n < 5 || n % 4 != 1 {
        return Err(Error::InvalidInput(format!(
            "signed product identity requires n ≡ 1 mod 4, n ≥ 5 (got {n})"
        )));
    }
    Ok(divisor_norm_product(n)? == s_of_n(n)?)
}

/// ∏_{d|n} N(c_d) over all divisors, treating d = 1 as contributing 1.
pub fn divisor_norm_product(n: u64) -> Result<BigInt> {
    let mut prod = BigInt::one();
    for d in crate::divisors_of(n) {
        if d > 1 {
            prod *= norm_cd_value(d)?;
        }
    }
    Ok(prod)
}

/// The alternating-sign sequence n₁ | n₂ | ... in the semigroup generated by
/// primes ≡ 1 mod 4, with s(n_i) < 0 for odd i and > 0 for even i.
#[derive(Debug, Clone, Serialize)]
pub struct SignSequence {
    pub generators: Vec<u64>,
    /// (n_i, sign of s(n_i)) with sign ∈ {−1, +1}.
    pub entries: Vec<(u64, i8)>,
}

/// One entry of the (d_i) sequence: the norm, its factorization, and the
/// ramified primes it certifies.
#[derive(Debug, Clone, Serialize)]
pub struct RamificationCertificate {
    pub index: usize,
    pub d: u64,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub norm: BigInt,
    pub factorization: Factorization,
    /// Primes ≡ 3 mod 4 with odd exponent — nonempty by Lemma-forced parity.
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint_vec")]
    pub primes: Vec<BigInt>,
}

/// Fractional part of n·arg(β)/2π with a guaranteed error bound.
///
/// Uses directed high-precision floating arithmetic with enough guard bits
/// that the returned interval width is far below 2^{−precision_bits/2}.
pub fn angle_prescreen(n: u64, precision_bits: u32) -> Result<(BigRational, BigRational)> {
    if precision_bits < 64 {
        return Err(Error::InvalidInput(
            "angle prescreen requires precision_bits >= 64".into(),
        ));
    }
    if n == 0 {
        return Ok((BigRational::zero(), BigRational::zero()));
    }
    // working precision: requested + bits consumed by multiplying by n + guard
    let work = precision_bits + 64 + 64 - n.leading_zeros();
    let theta = {
        use rug::Float;
        let s15 = Float::with_val(work, 15u32).sqrt();
        let t = Float::with_val(work, 1u32) / s15; // tan(arg β) = 1/√15
        let angle = t.atan(); // arg β ∈ (0, π/2)
        let two_pi = Float::with_val(work, rug::float::Constant::Pi) * 2u32;
        let scaled = Float::with_val(work, &angle / &two_pi) * Float::with_val(work, n);
        scaled.fract()
    };
    let q = theta
        .to_rational()
        .ok_or_else(|| Error::Internal("angle conversion failed".into()))?;
    let value = BigRational::new(
        crate::intfactor::from_rug(q.numer()),
        crate::intfactor::from_rug(q.denom()),
    );
    // Conservative bound: < 2^{-(work - 16 - log2 n)} absolute error after
    // ~10 correctly-rounded operations and the multiplication by n.
    let shift = (work as i64 - 16 - (64 - n.leading_zeros()) as i64).max(1) as usize;
    let error = BigRational::new(BigInt::one(), BigInt::one() << shift);
    // normalize into [0,1)
    let one = BigRational::one();
    let mut v = value;
    while v < BigRational::zero() {
        v += &one;
    }
    while v >= one {
        v -= BigRational::one();
    }
    Ok((v, error))
}

const SEARCH_BUDGET: u64 = 1_000_000;

/// Semigroup elements of the generators, ascending, up to `limit` (excluding 1).
fn semigroup_elements(generators: &[u64], limit: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &g in generators {
        let mut next = Vec::new();
        for &v in &out {
            let mut x = v;
            loop {
                next.push(x);
                match x.checked_mul(g) {
                    Some(y) if y <= limit => x = y,
                    _ => break,
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    out.dedup();
    out.retain(|&v| v > 1);
    out
}

fn exact_sign(n: u64) -> Result<i8> {
    let s = s_of_n(n)?;
    if s.is_zero() {
        return Err(Error::Internal(format!("s({n}) = 0, sign undefined")));
    }
    Ok(if s.is_negative() { -1 } else { 1 })
}

/// Prescreen the sign of s(n) by angle arithmetic; None if undecided at the
/// given precision.
fn prescreen_sign(n: u64, precision_bits: u32) -> Result<Option<i8>> {
    let (frac, err) = angle_prescreen(n, precision_bits)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let one = BigRational::one();
    // sin(2π·frac) < 0 iff frac ∈ (1/2, 1)
    if &frac - &err > half && &frac + &err < one {
        return Ok(Some(-1));
    }
    if frac.clone() - &err > BigRational::zero() && frac + err < half {
        return Ok(Some(1));
    }
    Ok(None)
}

/// Build the sequence n₁ | n₂ | ... choosing at each step the least semigroup
/// multiplier whose sign matches the alternation; the high-precision angle
/// prescreen is confirmed by the exact sign of s(n) before acceptance.
pub fn build_n_sequence(generators: &[u64], count: usize) -> Result<SignSequence> {
    let mut gens = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    if gens.len() < 2 {
        return Err(Error::InvalidInput(
            "at least two distinct generators are required (a single generator is lacunary)"
                .into(),
        ));
    }
    for &g in &gens {
        if g % 4 != 1 || !is_prime(&BigInt::from(g)) {
            return Err(Error::InvalidInput(format!(
                "generator {g} is not a prime ≡ 1 mod 4"
            )));
        }
    }
    if count == 0 {
        return Err(Error::InvalidInput("count must be >= 1".into()));
    }
    let multipliers = semigroup_elements(&gens, SEARCH_BUDGET);
    let mut entries: Vec<(u64, i8)> = Vec::with_capacity(count);
    let mut n_prev: u64 = 1;
    for i in 1..=count {
        let want: i8 = if i % 2 == 1 { -1 } else { 1 };
        let mut found = None;
        for &m in &multipliers {
            let n = n_prev.checked_mul(m).ok_or_else(|| {
                Error::Resource("sequence element exceeds 64-bit range".into())
            })?;
            // escalate precision until the interval leaves 1/2
            let mut decided = None;
            for bits in [96u32, 192, 384, 768] {
                if let Some(sign) = prescreen_sign(n, bits)? {
                    decided = Some(sign);
                    break;
                }
            }
            if decided == Some(-want) {
                continue;
            }
            // exact confirmation is authoritative
            let sign = exact_sign(n)?;
            if let Some(pre) = decided {
                if pre != sign {
                    return Err(Error::Internal(format!(
                        "angle prescreen contradicted exact sign at n = {n}"
                    )));
                }
            }
            if sign == want {
                found = Some(n);
                break;
            }
        }
        let n = found.ok_or_else(|| {
            Error::Resource(format!(
                "no suitable multiplier ≤ {SEARCH_BUDGET} found at step {i}"
            ))
        })?;
        entries.push((n, want));
        n_prev = n;
    }
    Ok(SignSequence {
        generators: gens,
        entries,
    })
}

/// For each n_i pick the least divisor d_i | n_i with d_i ∤ n_{i−1} and
/// N(c_{d_i}) < 0, then certify its ramified primes.
pub fn extract_d_sequence(seq: &SignSequence) -> Result<Vec<RamificationCertificate>> {
    let mut out: Vec<RamificationCertificate> = Vec::with_capacity(seq.entries.len());
    for (idx, &(n, _)) in seq.entries.iter().enumerate() {
        let prev = if idx == 0 {
            None
        } else {
            Some(seq.entries[idx - 1].0)
        };
        let mut chosen = None;
        for d in crate::divisors_of(n) {
            if d == 1 {
                continue;
            }
            if let Some(p) = prev {
                if p % d == 0 {
                    continue;
                }
            }
            if norm_cd_value(d)?.is_negative() {
                chosen = Some(d);
                break;
            }
        }
        let d = chosen.ok_or_else(|| {
            Error::Internal(format!(
                "no divisor of n_{} = {n} has negative norm; contradicts the sign alternation",
                idx + 1
            ))
        })?;
        if out.iter().any(|c| c.d == d) {
            return Err(Error::Internal(format!("duplicate d_i = {d} in sequence")));
        }
        let norm = norm_cd(d)?;
        let abs_res = norm.residue_mod4;
        if norm.value.is_positive() || abs_res != 3 {
            return Err(Error::Internal(format!(
                "certificate invariant violated at d = {d}: norm {} (|norm| ≡ {abs_res} mod 4)",
                norm.value
            )));
        }
        if norm.ramified_primes.is_empty() {
            return Err(Error::Internal(format!(
                "certificate at d = {d} has no prime ≡ 3 mod 4 of odd exponent"
            )));
        }
        let dd = BigInt::from(d);
        for p in &norm.ramified_primes {
            if (&dd % p).is_zero() {
                return Err(Error::Internal(format!(
                    "ramified prime {p} divides d = {d}"
                )));
            }
        }
        out.push(RamificationCertificate {
            index: idx + 1,
            d,
            norm: norm.value,
            factorization: norm.factorization,
            primes: norm.ramified_primes,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gamma_powers() {
        let g = QuarticElem::gamma();
        assert_eq!(g.pow(1), g);
        let g2 = g.pow(2);
        assert_eq!(
            g2,
            QuarticElem::new(rat(7, 2), rat(0, 1), rat(0, 1), rat(1, 2))
        );
        let g3 = g.pow(3);
        assert_eq!(
            g3,
            QuarticElem::new(rat(0, 1), rat(11, 2), rat(3, 2), rat(0, 1))
        );
        assert_eq!(g2.mul(&g), g3);
    }

    #[test]
    fn gamma_minimal_polynomial() {
        // x^4 - 7x^2 + 16 annihilates γ
        let g = QuarticElem::gamma();
        let g2 = g.pow(2);
        let g4 = g.pow(4);
        let seven = QuarticElem::new(rat(7, 1), rat(0, 1), rat(0, 1), rat(0, 1));
        let sixteen = QuarticElem::new(rat(16, 1), rat(0, 1), rat(0, 1), rat(0, 1));
        let lhs = QuarticElem::new(
            &g4.a - &(&seven.a * &g2.a) + &sixteen.a,
            &g4.b - &(&seven.a * &g2.b),
            &g4.c - &(&seven.a * &g2.c),
            &g4.d - &(&seven.a * &g2.d),
        );
        assert_eq!(lhs, QuarticElem::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)));
    }

    #[test]
    fn parity_grading() {
        let g = QuarticElem::gamma();
        let mut acc = QuarticElem::one();
        for n in 1..=200u64 {
            acc = acc.mul(&g);
            if n % 2 == 1 {
                assert!(acc.a.is_zero() && acc.d.is_zero(), "odd n = {n}");
            } else {
                assert!(acc.b.is_zero() && acc.c.is_zero(), "even n = {n}");
            }
        }
    }

    #[test]
    fn s_values() {
        assert_eq!(s_of_n(1).unwrap(), BigInt::one());
        assert_eq!(s_of_n(3).unwrap(), BigInt::from(11));
        assert_eq!(s_of_n(5).unwrap(), BigInt::from(61));
        assert_eq!(s_of_n(13).unwrap(), BigInt::from(-2339));
        assert!(s_of_n(2).is_err());
    }

    #[test]
    fn residue_audit_small() {
        for n in (1..=101u64).step_by(2) {
            assert!(s_residue_audit(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn product_identity_small() {
        for n in [5u64, 13, 25, 45, 65] {
            assert!(product_identity_audit(n).unwrap(), "n = {n}");
        }
        assert!(product_identity_audit(3).is_err());
        assert!(product_identity_audit(7).is_err());
    }

    #[test]
    fn unsigned_product_identity() {
        // |∏ N(c_d)| = |s(n)| for all odd n (Lemma 5.6 without sign bookkeeping)
        for n in (3..=45u64).step_by(2) {
            let p = divisor_norm_product(n).unwrap();
            let s = s_of_n(n).unwrap();
            assert_eq!(p.abs(), s.abs(), "n = {n}");
        }
    }

    #[test]
    fn angle_prescreen_basics() {
        let (v, e) = angle_prescreen(0, 64).unwrap();
        assert!(v.is_zero() && e.is_zero());
        // n = 1: arg β/2π ≈ 0.0402 < 1/2
        let (v, e) = angle_prescreen(1, 128).unwrap();
        let half = rat(1, 2);
        assert!(v.clone() + e.clone() < half);
        assert!(v > BigRational::zero());
        // n = 3: s(3) = 11 > 0 so fraction < 1/2
        let (v, e) = angle_prescreen(3, 128).unwrap();
        assert!(v + e < rat(1, 2));
        assert!(angle_prescreen(3, 32).is_err());
    }

    #[test]
    fn prescreen_matches_exact_sign() {
        for n in (1..=101u64).step_by(2) {
            if let Some(pre) = prescreen_sign(n, 128).unwrap() {
                assert_eq!(pre, exact_sign(n).unwrap(), "n = {n}");
            }
        }
    }

    #[test]
    fn semigroup_enumeration() {
        let sg = semigroup_elements(&[5, 13], 400);
        assert_eq!(sg, vec![5, 13, 25, 65, 125, 169, 325]);
    }

    #[test]
    fn sequence_first_entries() {
        let seq = build_n_sequence(&[5, 13], 2).unwrap();
        assert_eq!(seq.entries, vec![(13, -1), (325, 1)]);
        assert!(build_n_sequence(&[5], 1).is_err());
        assert!(build_n_sequence(&[3, 5], 1).is_err());
        assert!(build_n_sequence(&[5, 13], 0).is_err());
    }

    #[test]
    fn first_certificate() {
        let seq = build_n_sequence(&[5, 13], 1).unwrap();
        let certs = extract_d_sequence(&seq).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].d, 13);
        assert_eq!(certs[0].norm, BigInt::from(-2339));
        assert_eq!(certs[0].primes, vec![BigInt::from(2339)]);
    }
}
