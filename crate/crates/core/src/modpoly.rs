//! Univariate polynomial arithmetic over prime fields F_p (p < 2^32),
//! distinct-degree irreducibility certificates, and deterministic
//! Cantor-Zassenhaus factorization (used by the Hensel-lifting route over Z).

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive};

/// Dense polynomial over F_p, lowest-degree coefficient first, normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        assert!(p >= 2 && p < (1 << 32), "modulus out of supported range");
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_intpoly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced coefficient fits"))
            .collect();
        Self::new(p, coeffs)
    }

    pub fn to_intpoly_symmetric(&self) -> IntPoly {
        // lift to Z with coefficients in (-p/2, p/2]
        let p = BigInt::from(self.p);
        let half = BigInt::from(self.p / 2);
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    let c = BigInt::from(c);
                    if c > half {
                        c - &p
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, vec![])
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed moduli");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Self::new(self.p, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
            .collect();
        Self::new(self.p, v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut v = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, v)
    }

    pub fn scale(&self, c: u64) -> Self {
        let v = self.coeffs.iter().map(|&a| mulmod(a, c, self.p)).collect();
        Self::new(self.p, v)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(invmod(self.lc(), self.p))
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.check_same_field(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.deg() < d.deg() || self.is_zero() {
            return (Self::zero(self.p), self.clone());
        }
        let p = self.p;
        let dinv = invmod(d.lc(), p);
        let mut rem = self.coeffs.clone();
        let dd = d.deg();
        let mut q = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mulmod(rem[i], dinv, p);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - mulmod(c, dc, p)) % p;
            }
        }
        (Self::new(p, q), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % self.p, self.p))
            .collect();
        Self::new(self.p, v)
    }

    /// self^e mod m, with a u64 exponent.
    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        let mut result = Self::one(self.p);
        let mut base = self.rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    /// self^e mod m, with an arbitrary-precision exponent.
    pub fn pow_mod_big(&self, e: &BigInt, m: &Self) -> Self {
        assert!(!e.is_negative());
        let mut result = Self::one(self.p);
        let mut base = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        result
    }

    /// Extended Euclid: returns (g, s, t) with s·self + t·other = g, g monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() || r0.lc() == 1 {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, self.p) + c) % self.p;
        }
        acc
    }
}

/// True iff f is irreducible over F_p, by the distinct-degree criterion:
/// x^{p^n} ≡ x mod f and gcd(x^{p^i} − x, f) = 1 for every i ≤ n/2.
pub fn irreducible_mod_p(f: &ModPoly) -> Result<bool> {
    let n = f.deg();
    if f.is_zero() || n == 0 {
        return Err(Error::InvalidInput(
            "irreducibility requires degree >= 1".into(),
        ));
    }
    if n == 1 {
        return Ok(true);
    }
    let p = f.modulus();
    let fm = f.monic();
    let x = ModPoly::x(p);
    // frob[i] = x^{p^{i+1}} mod f
    let mut frob = x.pow_mod(p, &fm);
    for i in 1..=n / 2 {
        let g = frob.sub(&x).gcd(&fm);
        if !g.is_one() {
            return Ok(false);
        }
        let _ = i;
        frob = frob.pow_mod(p, &fm);
    }
    // after the loop frob = x^{p^{floor(n/2)+1}}; finish raising to x^{p^n}
    let mut k = n / 2 + 1;
    while k < n {
        frob = frob.pow_mod(p, &fm);
        k += 1;
    }
    Ok(frob.sub(&x).rem(&fm).is_zero())
}

/// Deterministic xorshift generator for Cantor-Zassenhaus splitting.
struct Xorshift(u64);
impl Xorshift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Factor a squarefree monic polynomial over F_p (p odd) into monic
/// irreducibles, deterministic for fixed input.
pub fn factor_squarefree_mod_p(f: &ModPoly) -> Result<Vec<ModPoly>> {
    let p = f.modulus();
    if p == 2 {
        return Err(Error::Unsupported(
            "Cantor-Zassenhaus splitting requires an odd prime".into(),
        ));
    }
    let fm = f.monic();
    if fm.deg() == 0 {
        return Ok(vec![]);
    }
    // distinct-degree stage
    let x = ModPoly::x(p);
    let mut stages: Vec<(usize, ModPoly)> = Vec::new();
    let mut rest = fm.clone();
    let mut frob = x.pow_mod(p, &rest);
    let mut d = 1usize;
    while rest.deg() >= 2 * d {
        let g = frob.sub(&x).gcd(&rest);
        if !g.is_one() {
            stages.push((d, g.clone()));
            rest = rest.div_rem(&g).0.monic();
            frob = frob.rem(&rest);
        }
        frob = frob.pow_mod(p, &rest);
        d += 1;
    }
    if rest.deg() > 0 {
        stages.push((rest.deg(), rest));
    }
    // equal-degree stage
    let mut rng = Xorshift(0x7474_7474_7474_7474);
    let mut out = Vec::new();
    for (d, prod) in stages {
        let mut todo = vec![prod];
        let exp = (BigInt::from(p).pow(d as u32) - BigInt::one()) / BigInt::from(2);
        while let Some(g) = todo.pop() {
            if g.deg() == d {
                out.push(g.monic());
                continue;
            }
            // random a, split via gcd(a^{(p^d-1)/2} - 1, g)
            loop {
                let coeffs: Vec<u64> = (0..g.deg()).map(|_| rng.next() % p).collect();
                let a = ModPoly::new(p, coeffs);
                if a.is_zero() {
                    continue;
                }
                let b = a.pow_mod_big(&exp, &g).sub(&ModPoly::one(p));
                let h = b.gcd(&g);
                if !h.is_one() && h.deg() < g.deg() {
                    let other = g.div_rem(&h).0.monic();
                    todo.push(h);
                    todo.push(other);
                    break;
                }
            }
        }
    }
    out.sort_by(|a, b| (a.deg(), &a.coeffs).cmp(&(b.deg(), &b.coeffs)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, v: &[u64]) -> ModPoly {
        ModPoly::new(p, v.to_vec())
    }

    #[test]
    fn arithmetic_roundtrip() {
        let p = 13;
        let f = mp(p, &[3, 0, 7, 1]);
        let g = mp(p, &[5, 2]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.deg() < g.deg() || r.is_zero());
    }

    #[test]
    fn irreducibility_examples() {
        // x^2 + x + 1 mod 2: no root, irreducible
        assert!(irreducible_mod_p(&mp(2, &[1, 1, 1])).unwrap());
        // x^2 - 1 mod 3 factors
        assert!(!irreducible_mod_p(&mp(3, &[2, 0, 1])).unwrap());
        // R^3 + R^2 + 1 mod 2: cubic without roots mod 2
        assert!(irreducible_mod_p(&mp(2, &[1, 0, 1, 1])).unwrap());
        // x^2 + 1 mod 5 = (x+2)(x+3)
        assert!(!irreducible_mod_p(&mp(5, &[1, 0, 1])).unwrap());
        // x^2 + 1 mod 7 irreducible (7 ≡ 3 mod 4)
        assert!(irreducible_mod_p(&mp(7, &[1, 0, 1])).unwrap());
        assert!(irreducible_mod_p(&mp(7, &[0])).is_err());
    }

    #[test]
    fn irreducibility_exhaustive_vs_roots_for_cubics() {
        // over F_5, a cubic is irreducible iff it has no root
        let p = 5u64;
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let f = mp(p, &[c, b, a, 1]);
                    let has_root = (0..p).any(|x| f.eval(x) == 0);
                    assert_eq!(
                        irreducible_mod_p(&f).unwrap(),
                        !has_root,
                        "f = x^3+{a}x^2+{b}x+{c} mod 5"
                    );
                }
            }
        }
    }

    #[test]
    fn factor_squarefree_products() {
        // (x+1)(x+2)(x^2+1) mod 7 — x^2+1 irreducible mod 7
        let p = 7;
        let f = mp(p, &[1, 1]).mul(&mp(p, &[2, 1])).mul(&mp(p, &[1, 0, 1]));
        let fac = factor_squarefree_mod_p(&f).unwrap();
        assert_eq!(fac.len(), 3);
        let mut prod = ModPoly::one(p);
        for g in &fac {
            assert!(irreducible_mod_p(g).unwrap());
            prod = prod.mul(g);
        }
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn factor_squarefree_large_field() {
        // x^4 + 1 splits into two quadratics mod every odd prime
        let p = 10007;
        let f = mp(p, &[1, 0, 0, 0, 1]);
        let fac = factor_squarefree_mod_p(&f).unwrap();
        let mut prod = ModPoly::one(p);
        for g in &fac {
            assert!(irreducible_mod_p(g).unwrap());
            prod = prod.mul(g);
        }
        assert_eq!(prod, f.monic());
        assert!(fac.iter().all(|g| g.deg() >= 1));
        assert!(fac.len() >= 2);
    }

    #[test]
    fn symmetric_lift() {
        let p = 7;
        let f = mp(p, &[6, 3, 1]); // 6 ≡ -1
        let lifted = f.to_intpoly_symmetric();
        assert_eq!(lifted, IntPoly::from_i64(&[-1, 3, 1]));
    }
}
