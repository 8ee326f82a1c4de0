//! Dense univariate polynomials over the arbitrary-precision integers.
//!
//! Coefficients are stored lowest-degree first; the zero polynomial is the
//! empty coefficient vector. This type is the common currency for cyclotomic
//! polynomials, surgery cubics, resultant eliminations, and division
//! polynomials.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// c * x^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; zero polynomial reports 0 via `deg`, use `is_zero` to distinguish.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) - other.coeff(k));
        }
        Self::new(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// x^k * self
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    /// self(g(x)) by Horner over polynomials.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// self(x + a)
    pub fn taylor_shift(&self, a: &BigInt) -> Self {
        self.compose(&Self::new(vec![a.clone(), BigInt::one()]))
    }

    /// GCD of the coefficients, always nonnegative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient, paired with the
    /// signed content so that `content * primitive == self`.
    pub fn primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        let p = self.div_scalar_exact(&c).expect("content divides");
        (c, p)
    }

    /// Divide every coefficient by `c`, requiring exactness.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Result<IntPoly> {
        if c.is_zero() {
            return Err(Error::InvalidInput("division by zero scalar".into()));
        }
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "non-exact scalar division of polynomial by {c}"
                )));
            }
            v.push(q);
        }
        Ok(Self::new(v))
    }

    /// Exact division in Z[x]: returns `self / d` or an error if the division
    /// leaves a remainder (including non-integral quotients).
    pub fn div_exact(&self, d: &Self) -> Result<IntPoly> {
        if d.is_zero() {
            return Err(Error::InvalidInput("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.deg() < d.deg() {
            return Err(Error::Internal("non-exact polynomial division".into()));
        }
        let mut rem = self.coeffs.clone();
        let dn = d.deg();
        let dlc = d.lc();
        let qdeg = self.deg() - dn;
        let mut q = vec![BigInt::zero(); qdeg + 1];
        for k in (0..=qdeg).rev() {
            let top = rem[k + dn].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&dlc);
            if !r.is_zero() {
                return Err(Error::Internal("non-exact polynomial division".into()));
            }
            q[k] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("non-exact polynomial division".into()));
        }
        Ok(Self::new(q))
    }

    /// True iff `d` divides `self` in Z[x].
    pub fn divisible_by(&self, d: &Self) -> bool {
        self.div_exact(d).is_ok()
    }

    /// Pseudo-remainder: lc(d)^(deg self - deg d + 1) * self = q*d + r.
    pub fn pseudo_rem(&self, d: &Self) -> IntPoly {
        let dn = d.deg();
        if self.is_zero() || self.deg() < dn {
            let e = self.deg().saturating_sub(dn) + 1;
            return self.scale(&d.lc().pow(e as u32));
        }
        let mut r = self.clone();
        let dlc = d.lc();
        let mut e = (self.deg() - dn + 1) as i64;
        while !r.is_zero() && r.deg() >= dn {
            let k = r.deg() - dn;
            let c = r.lc();
            // r = lc(d)*r - c*x^k*d
            let mut v = vec![BigInt::zero(); r.deg() + 1];
            for (j, a) in r.coeffs.iter().enumerate() {
                v[j] = a * &dlc;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                v[k + j] -= &c * b;
            }
            r = Self::new(v);
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&dlc.pow(e as u32));
        }
        r
    }

    /// GCD in Z[x] (primitive, positive leading coefficient) via the
    /// primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> IntPoly {
        if self.is_zero() {
            if other.is_zero() {
                return Self::zero();
            }
            return other.primitive().1.scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().1.scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.primitive().1, other.primitive().1)
        } else {
            (other.primitive().1, self.primitive().1)
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive().1;
            a = b;
            b = r;
        }
        a.scale(&c)
    }

    /// Resultant under the convention Res(f,g) = lc(f)^{deg g} ∏_{f(α)=0} g(α),
    /// computed by the fraction-free subresultant remainder sequence.
    pub fn resultant(&self, other: &Self) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::InvalidInput(
                "resultant of a zero polynomial".into(),
            ));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut sign = BigInt::one();
        if a.deg() < b.deg() {
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                sign = -sign;
            }
            std::mem::swap(&mut a, &mut b);
        }
        if b.deg() == 0 {
            return Ok(sign * b.lc().pow(a.deg() as u32));
        }
        // strip contents: Res(ca*A, cb*B) = ca^{deg B} cb^{deg A} Res(A,B)
        let (ca, pa) = a.primitive();
        let (cb, pb) = b.primitive();
        let scale = ca.pow(pb.deg() as u32) * cb.pow(pa.deg() as u32);
        a = pa;
        b = pb;
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.deg() - b.deg();
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                sign = -sign;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            let denom = &g * h.pow(delta as u32);
            b = r.div_scalar_exact(&denom)?;
            g = a.lc();
            h = if delta == 0 {
                h
            } else {
                let num = g.pow(delta as u32);
                let den = h.pow((delta - 1) as u32);
                let (q, rr) = num.div_rem(&den);
                if !rr.is_zero() {
                    return Err(Error::Internal("subresultant h update not exact".into()));
                }
                q
            };
            if b.is_zero() {
                // common factor of positive degree
                return Ok(BigInt::zero());
            }
            if b.deg() == 0 {
                let num = b.lc().pow(a.deg() as u32);
                let den = h.pow((a.deg() - 1) as u32);
                let (q, rr) = num.div_rem(&den);
                if !rr.is_zero() {
                    return Err(Error::Internal("subresultant final step not exact".into()));
                }
                return Ok(sign * scale * q);
            }
        }
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

macro_rules! binop_impls {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl std::ops::$trait<&IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                IntPoly::$delegate(self, rhs)
            }
        }
        impl std::ops::$trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                IntPoly::$delegate(&self, &rhs)
            }
        }
        impl std::ops::$trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                IntPoly::$delegate(&self, rhs)
            }
        }
        impl std::ops::$trait<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                IntPoly::$delegate(self, &rhs)
            }
        }
    };
}
binop_impls!(Add, add, add);
binop_impls!(Sub, sub, sub);
binop_impls!(Mul, mul, mul);

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::neg(self)
    }
}
impl std::ops::Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Sylvester-matrix determinant with exact integers (Bareiss elimination).
    /// Independent oracle for the subresultant implementation.
    pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
        let m = f.deg();
        let n = g.deg();
        if m == 0 {
            return f.lc().pow(n as u32);
        }
        if n == 0 {
            return g.lc().pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (k, c) in f.coeffs().iter().enumerate() {
                mat[row][row + m - k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in g.coeffs().iter().enumerate() {
                mat[n + row][row + n - k] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    #[test]
    fn resultant_linear_times_quartic() {
        // Res(x-1, 4x^4-7x^2+4) = 4 - 7 + 4 = 1
        let f = IntPoly::from_i64(&[-1, 1]);
        let g = IntPoly::from_i64(&[4, 0, -7, 0, 4]);
        assert_eq!(f.resultant(&g).unwrap(), BigInt::from(1));
    }

    #[test]
    fn resultant_cubic_root_of_unity() {
        let f = IntPoly::from_i64(&[-1, 0, 0, 1]); // x^3 - 1
        let g = IntPoly::from_i64(&[4, 0, -7, 0, 4]);
        assert_eq!(f.resultant(&g).unwrap(), BigInt::from(121));
        assert_eq!(sylvester_resultant(&f, &g), BigInt::from(121));
    }

    #[test]
    fn resultant_phi3() {
        let f = IntPoly::from_i64(&[1, 1, 1]); // Phi_3
        let g = IntPoly::from_i64(&[4, 0, -7, 0, 4]);
        assert_eq!(f.resultant(&g).unwrap(), BigInt::from(121));
        assert_eq!(sylvester_resultant(&f, &g), BigInt::from(121));
    }

    #[test]
    fn resultant_rejects_zero() {
        let z = IntPoly::zero();
        let g = IntPoly::from_i64(&[1, 1]);
        assert!(z.resultant(&g).is_err());
        assert!(g.resultant(&z).is_err());
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = IntPoly::from_i64(&[1, 2, 3]);
        let b = IntPoly::from_i64(&[-4, 0, 5, 1]);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(p.add(&IntPoly::one()).div_exact(&a).is_err());
    }

    #[test]
    fn taylor_shift_expands() {
        // (x+2)^3 - t(x+2)^2 - 1 style check at t = -1: p(x) = x^3 + x^2 - 1
        let p = IntPoly::from_i64(&[-1, 0, 1, 1]);
        let q = p.taylor_shift(&BigInt::from(2));
        // q(r) = (r+2)^3 + (r+2)^2 - 1 = r^3 + 7r^2 + 16r + 11
        assert_eq!(q, IntPoly::from_i64(&[11, 16, 7, 1]));
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-9i64..=9, 1..=max_deg + 1)
            .prop_map(|v| IntPoly::from_i64(&v))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn resultant_matches_sylvester_and_swaps(f in small_poly(6), g in small_poly(6)) {
            let r = f.resultant(&g).unwrap();
            prop_assert_eq!(&r, &sylvester_resultant(&f, &g));
            let swapped = g.resultant(&f).unwrap();
            let sign = if f.deg() * g.deg() % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(r, swapped * BigInt::from(sign));
        }

        #[test]
        fn mul_div_exact(f in small_poly(5), g in small_poly(5)) {
            let p = f.mul(&g);
            prop_assert_eq!(p.div_exact(&f).unwrap(), g);
        }

        #[test]
        fn content_primitive_consistent(f in small_poly(6)) {
            let (c, p) = f.primitive();
            prop_assert!(p.lc() > BigInt::zero());
            prop_assert!(p.content().is_one());
            prop_assert_eq!(p.scale(&c), f);
        }
    }
}
