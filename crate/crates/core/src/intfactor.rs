//! Integer primality and factorization.
//!
//! Deterministic pipeline: trial division over a fixed sieve, Miller-Rabin
//! with a fixed witness set, Brent-cycle Pollard rho, two-stage Pollard p-1,
//! and an elliptic-curve method backstop with fixed seeds and an escalating
//! bound schedule. Every run on the same input takes the same path.

use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use rug::Integer;
use serde::Serialize;
use std::sync::OnceLock;

/// Signed prime factorization: `sign * prod p_i^{e_i}` equals the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub sign: i8,
    /// Ascending (prime, exponent) pairs.
    #[serde(serialize_with = "crate::jsonutil::serialize_factor_pairs")]
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    /// Primes congruent to 3 mod 4 appearing to an odd exponent.
    pub fn odd_multiplicity_3_mod_4(&self) -> Vec<BigInt> {
        let four = BigInt::from(4);
        let three = BigInt::from(3);
        self.factors
            .iter()
            .filter(|(p, e)| e % 2 == 1 && p % &four == three)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

const TRIAL_BOUND: usize = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut sieve = vec![true; TRIAL_BOUND + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= TRIAL_BOUND {
            if sieve[i] {
                let mut j = i * i;
                while j <= TRIAL_BOUND {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=TRIAL_BOUND as u32)
            .filter(|&p| sieve[p as usize])
            .collect()
    })
}

pub(crate) fn to_rug(n: &BigInt) -> Integer {
    Integer::from_str_radix(&n.to_str_radix(16), 16).expect("radix conversion")
}

pub(crate) fn from_rug(n: &Integer) -> BigInt {
    BigInt::parse_bytes(n.to_string_radix(16).as_bytes(), 16).expect("radix conversion")
}

/// Miller-Rabin witness set proving primality for all inputs below
/// 3.317 * 10^24 (first 13 primes). Larger inputs additionally use the
/// fixed bases up to 97; for those the answer is a fixed-seed strong
/// probable-prime verdict rather than a proof.
const MR_BASES_DETERMINISTIC: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_BASES_EXTRA: [u32; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn deterministic_bound() -> &'static Integer {
    static B: OnceLock<Integer> = OnceLock::new();
    B.get_or_init(|| Integer::from_str_radix("3317044064679887385961981", 10).unwrap())
}

fn mr_witness(n: &Integer, a: u32) -> bool {
    // returns true if a witnesses compositeness
    let nm1 = Integer::from(n - 1);
    let s = nm1.find_one(0).unwrap_or(0);
    let d = Integer::from(&nm1 >> s);
    let a = Integer::from(a);
    if Integer::from(&a % n).is_zero() {
        return false;
    }
    let mut x = a.pow_mod(&d, n).expect("modpow");
    if x == 1 || x == nm1 {
        return false;
    }
    for _ in 1..s {
        x.square_mut();
        x %= n;
        if x == nm1 {
            return false;
        }
    }
    true
}

fn is_prime_rug(n: &Integer) -> bool {
    if *n < 2 {
        return false;
    }
    for &p in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n.is_divisible_u(p) {
            return *n == p;
        }
    }
    for &a in &MR_BASES_DETERMINISTIC {
        if mr_witness(n, a) {
            return false;
        }
    }
    if n <= deterministic_bound() {
        return true;
    }
    MR_BASES_EXTRA.iter().all(|&a| !mr_witness(n, a))
}

/// Deterministic primality check (proof below 3.317e24, fixed strong
/// probable-prime bases above).
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    is_prime_rug(&to_rug(n))
}

fn brent_rho(n: &Integer, c0: u32, budget: u64) -> Option<Integer> {
    // Brent's cycle-finding variant with batched gcds.
    for offset in 0..4u32 {
        let c = Integer::from(c0 + offset);
        let mut y = Integer::from(2u32);
        let mut r: u64 = 1;
        let mut q = Integer::from(1u32);
        let mut g = Integer::from(1u32);
        let mut x = Integer::new();
        let mut ys = Integer::new();
        let m: u64 = 256;
        let mut used: u64 = 0;
        'outer: while g == 1 {
            x.assign_from(&y);
            for _ in 0..r {
                y.square_mut();
                y += &c;
                y %= n;
            }
            let mut k: u64 = 0;
            while k < r && g == 1 {
                ys.assign_from(&y);
                let chunk = m.min(r - k);
                for _ in 0..chunk {
                    y.square_mut();
                    y += &c;
                    y %= n;
                    let diff = Integer::from(&x - &y).abs();
                    q *= diff;
                    q %= n;
                }
                g = Integer::from(q.gcd_ref(n));
                k += chunk;
                used += chunk;
                if used > budget {
                    break 'outer;
                }
            }
            r *= 2;
        }
        if g == *n {
            // backtrack one step at a time
            loop {
                ys.square_mut();
                ys += &c;
                ys %= n;
                g = Integer::from(&x - &ys).abs().gcd(n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < *n {
            return Some(g);
        }
    }
    None
}

trait AssignFrom {
    fn assign_from(&mut self, other: &Integer);
}
impl AssignFrom for Integer {
    fn assign_from(&mut self, other: &Integer) {
        self.clone_from(other);
    }
}

fn pollard_pm1(n: &Integer, b1: u64, b2: u64) -> Option<Integer> {
    let mut a = Integer::from(2u32);
    // stage 1
    for p in primal::Primes::all().take_while(|&p| (p as u64) <= b1) {
        let p = p as u64;
        let mut pe = p;
        while pe <= b1 / p {
            pe *= p;
        }
        a = a.pow_mod(&Integer::from(pe), n).expect("modpow");
    }
    let g = Integer::from(&a - 1u32).gcd(n);
    if g > 1 && g < *n {
        return Some(g);
    }
    if g == *n {
        return None;
    }
    // stage 2: product of (a^q - 1) over primes q in (b1, b2]
    let mut acc = Integer::from(1u32);
    let mut last_q: u64 = 0;
    let mut a_q = Integer::new();
    // powers of a for even gaps
    let max_gap = 512;
    let a2 = Integer::from(a.pow_mod_ref(&Integer::from(2u32), n).unwrap());
    let mut gap_pow = Vec::with_capacity(max_gap / 2 + 1);
    gap_pow.push(Integer::from(1u32));
    for i in 1..=max_gap / 2 {
        let prev: &Integer = &gap_pow[i - 1];
        let v = Integer::from(prev * &a2) % n;
        gap_pow.push(v);
    }
    let mut count: u64 = 0;
    for p in primal::Primes::all()
        .skip_while(|&p| (p as u64) <= b1)
        .take_while(|&p| (p as u64) <= b2)
    {
        let q = p as u64;
        if last_q == 0 {
            a_q = Integer::from(a.pow_mod_ref(&Integer::from(q), n).expect("modpow"));
        } else {
            let gap = (q - last_q) as usize;
            debug_assert!(gap % 2 == 0 && gap <= max_gap);
            a_q *= &gap_pow[gap / 2];
            a_q %= n;
        }
        last_q = q;
        let term = Integer::from(&a_q - 1u32);
        acc *= term;
        acc %= n;
        count += 1;
        if count % 4096 == 0 {
            let g = Integer::from(acc.gcd_ref(n));
            if g > 1 {
                break;
            }
        }
    }
    let g = acc.gcd(n);
    if g > 1 && g < *n {
        Some(g)
    } else {
        None
    }
}

/// Escalating ECM schedule: (B1, curves); B2 = 100 * B1.
const ECM_SCHEDULE: [(usize, usize); 6] = [
    (2_000, 30),
    (11_000, 90),
    (25_000, 200),
    (50_000, 300),
    (250_000, 700),
    (1_000_000, 1200),
];

fn ecm_backstop(n: &Integer, rungs: usize) -> Option<Integer> {
    for &(b1, curves) in &ECM_SCHEDULE[..rungs] {
        let mut rs = rug::rand::RandState::new();
        rs.seed(&Integer::from(0x7400 + b1 as u32));
        match ecm::ecm_one_factor(n, b1, 100 * b1, curves, &mut rs) {
            Ok(f) => {
                if f > 1 && f < *n {
                    return Some(f);
                }
            }
            Err(_) => continue,
        }
    }
    None
}

fn split_composite(n: &Integer) -> Result<Integer> {
    // Budgets shrink with operand size: per-operation cost grows with the
    // modulus, and very large inputs are where the pipeline must fail fast
    // rather than grind for hours.
    let digits = n.to_string().len();
    let (rho_budget, pm1_b1, pm1_b2, ecm_rungs) = if digits <= 60 {
        // rho only reaches ~12-digit factors at this budget; anything larger
        // is p-1/ECM territory, so a bigger rho budget is pure overhead
        (1_000_000u64, 2_000_000u64, 200_000_000u64, ECM_SCHEDULE.len())
    } else if digits <= 150 {
        (500_000, 1_000_000, 100_000_000, 5)
    } else {
        (200_000, 200_000, 20_000_000, 2)
    };
    if let Some(g) = brent_rho(n, 1, rho_budget) {
        return Ok(g);
    }
    if let Some(g) = pollard_pm1(n, pm1_b1, pm1_b2) {
        return Ok(g);
    }
    if let Some(g) = ecm_backstop(n, ecm_rungs) {
        return Ok(g);
    }
    Err(Error::Resource(format!(
        "factoring budget exhausted on a {digits}-digit composite \
         (Brent rho {rho_budget} iterations, p-1 B1={pm1_b1}/B2={pm1_b2}, \
         ECM through B1={})",
        ECM_SCHEDULE[ecm_rungs - 1].0
    )))
}

/// Factor a nonzero integer into its signed prime factorization.
pub fn factor_integer(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let sign: i8 = if n.is_negative() { -1 } else { 1 };
    let mut rem = to_rug(&n.abs());
    let mut factors: Vec<(Integer, u32)> = Vec::new();
    for &p in small_primes() {
        if rem == 1 {
            break;
        }
        if rem.is_divisible_u(p) {
            let mut e = 0u32;
            while rem.is_divisible_u(p) {
                rem /= p;
                e += 1;
            }
            factors.push((Integer::from(p), e));
        }
        // all remaining factors exceed the square of the trial bound
        let p2 = Integer::from(p) * p;
        if p2 > rem {
            break;
        }
    }
    let mut stack = vec![rem];
    let mut large: Vec<Integer> = Vec::new();
    while let Some(v) = stack.pop() {
        if v == 1 {
            continue;
        }
        if is_prime_rug(&v) {
            large.push(v);
            continue;
        }
        if let Some((root, exp)) = perfect_power(&v) {
            for _ in 0..exp {
                stack.push(root.clone());
            }
            continue;
        }
        let g = split_composite(&v)?;
        let other = Integer::from(&v / &g);
        stack.push(g);
        stack.push(other);
    }
    large.sort();
    for p in large {
        match factors.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => factors.push((p, 1)),
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let out = Factorization {
        sign,
        factors: factors
            .into_iter()
            .map(|(p, e)| (from_rug(&p), e))
            .collect(),
    };
    debug_assert_eq!(out.value(), *n);
    Ok(out)
}

fn perfect_power(n: &Integer) -> Option<(Integer, u32)> {
    use rug::ops::Pow;
    let bits = n.significant_bits();
    for k in (2..=bits.min(64)).rev() {
        let root = Integer::from(n.root_ref(k));
        if Integer::from((&root).pow(k)) == *n {
            return Some((root, k));
        }
    }
    None
}

/// Jacobi symbol (a|n) for odd positive n.
pub fn jacobi_symbol(a: &BigInt, n: &BigInt) -> Result<i32> {
    use num_integer::Integer as _;
    if !n.is_positive() || n.is_even() {
        return Err(Error::InvalidInput(format!(
            "jacobi symbol requires odd positive n, got {n}"
        )));
    }
    let two = BigInt::from(2);
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a /= &two;
            let r = (&n & BigInt::from(7)).to_u32_digits().1.first().copied().unwrap_or(0);
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        let a3 = (&a & BigInt::from(3)) == BigInt::from(3);
        let n3 = (&n & BigInt::from(3)) == BigInt::from(3);
        if a3 && n3 {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Least m >= 1 with p^m = 1 mod d; requires gcd(p, d) = 1.
pub fn multiplicative_order(p: &BigInt, d: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidInput(format!(
            "multiplicative order needs modulus >= 2, got {d}"
        )));
    }
    let dm = BigInt::from(d);
    let base = num_integer::Integer::mod_floor(p, &dm);
    if !num_integer::Integer::gcd(&base, &dm).is_one() {
        return Err(Error::InvalidInput(format!(
            "gcd({p}, {d}) != 1, multiplicative order undefined"
        )));
    }
    let mut acc = base.clone();
    let mut m = 1u64;
    while !acc.is_one() {
        acc = (acc * &base) % &dm;
        m += 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(n: i64) -> Factorization {
        factor_integer(&BigInt::from(n)).unwrap()
    }

    #[test]
    fn factor_small() {
        let f = fi(80);
        assert_eq!(f.sign, 1);
        assert_eq!(
            f.factors,
            vec![(BigInt::from(2), 4), (BigInt::from(5), 1)]
        );
        let f = fi(-11);
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(BigInt::from(11), 1)]);
        let f = fi(121);
        assert_eq!(f.factors, vec![(BigInt::from(11), 2)]);
        assert!(factor_integer(&BigInt::zero()).is_err());
    }

    #[test]
    fn factor_beyond_trial_bound() {
        // 3143401 is prime and above the 10^6 trial bound; rho must find it.
        let n = BigInt::from(3143401i64) * BigInt::from(2339i64);
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.value(), n);
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn factor_semiprime_64bit() {
        let n = BigInt::from(1000003u64) * BigInt::from(998244353u64);
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.value(), n);
        assert!(f.factors.iter().all(|(p, _)| is_prime(p)));
    }

    #[test]
    fn jacobi_values() {
        let j = |a: i64, n: i64| jacobi_symbol(&BigInt::from(a), &BigInt::from(n)).unwrap();
        assert_eq!(j(-1, 11), -1);
        assert_eq!(j(-1, 13), 1);
        assert_eq!(j(2, 15), 1);
        assert!(jacobi_symbol(&BigInt::from(1), &BigInt::from(4)).is_err());
        assert!(jacobi_symbol(&BigInt::from(1), &BigInt::from(-3)).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        // for odd primes p < 10^4 (sample stride to keep runtime sane) and all a in [1,p)
        for &p in small_primes().iter().filter(|&&p| p % 2 == 1 && p < 200) {
            let pb = BigInt::from(p);
            for a in 1..p {
                let ab = BigInt::from(a);
                let j = jacobi_symbol(&ab, &pb).unwrap();
                let e = ab.modpow(&(BigInt::from((p - 1) / 2)), &pb);
                let euler = if e.is_one() { 1 } else { -1 };
                assert_eq!(j, euler, "a={a}, p={p}");
            }
        }
        // spot checks near the stated 10^4 bound
        for &p in &[9973u32, 9967, 9949] {
            let pb = BigInt::from(p);
            for a in (1..p).step_by(37) {
                let ab = BigInt::from(a);
                let j = jacobi_symbol(&ab, &pb).unwrap();
                let e = ab.modpow(&BigInt::from((p - 1) / 2), &pb);
                let euler = if e.is_one() { 1 } else { -1 };
                assert_eq!(j, euler);
            }
        }
    }

    #[test]
    fn orders() {
        let o = |p: i64, d: u64| multiplicative_order(&BigInt::from(p), d).unwrap();
        assert_eq!(o(2, 7), 3);
        assert_eq!(o(11, 3), 2);
        assert_eq!(o(1, 17), 1);
        assert!(multiplicative_order(&BigInt::from(6), 9).is_err());
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(is_prime(&BigInt::from(2339)));
        assert!(!is_prime(&BigInt::from(2047))); // 23 * 89, strong pseudoprime base 2
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(-7)));
        // beyond the deterministic bound
        let big = BigInt::parse_bytes(b"10000000000000000000000000000000000000121", 10).unwrap();
        let _ = is_prime(&big); // must not panic
    }

    #[test]
    fn perfect_power_split() {
        let n = BigInt::from(1048583u64).pow(3);
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.factors, vec![(BigInt::from(1048583u64), 3)]);
    }
}
