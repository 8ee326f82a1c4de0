//! Factorization of integer polynomials over Q: squarefree split (Yun),
//! factorization mod a good prime, linear Hensel lifting, and subset
//! recombination. Practical degree bound 64 — loudly rejected beyond that.

use crate::error::{Error, Result};
use crate::modpoly::{factor_squarefree_mod_p, ModPoly};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

pub const MAX_DEGREE: usize = 64;

/// content × ∏ factorᵉ = input; factors primitive, irreducible over Q,
/// positive leading coefficient, sorted by (degree, coefficients).
pub fn factor_over_z(f: &IntPoly) -> Result<(BigInt, Vec<(IntPoly, u32)>)> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    if f.deg() > MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "degree {} exceeds the factorization bound {MAX_DEGREE}",
            f.deg()
        )));
    }
    let (content, prim) = f.primitive();
    if prim.deg() == 0 {
        return Ok((content, vec![]));
    }
    let mut out: Vec<(IntPoly, u32)> = Vec::new();
    for (part, mult) in yun_squarefree(&prim)? {
        if part.deg() == 0 {
            continue;
        }
        for irr in factor_squarefree_primitive(&part)? {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| {
        (a.0.deg(), a.0.coeffs(), a.1).cmp(&(b.0.deg(), b.0.coeffs(), b.1))
    });
    // re-multiplication audit
    let mut check = IntPoly::constant(content.clone());
    for (g, e) in &out {
        check = check * g.pow(*e);
    }
    if check != *f {
        return Err(Error::Internal(
            "factorization audit failed: product does not reproduce the input".into(),
        ));
    }
    Ok((content, out))
}

/// Yun's squarefree decomposition of a primitive polynomial:
/// returns [(a_1, 1), (a_2, 2), ...] with ∏ a_i^i = input, a_i squarefree.
fn yun_squarefree(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    let df = f.derivative();
    let u = f.gcd(&df);
    let mut b = f.div_exact(&u)?;
    let mut d = df.div_exact(&u)? - b.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while !(b.deg() == 0) {
        let a = b.gcd(&d);
        b = b.div_exact(&a)?;
        let c = d.div_exact(&a)?;
        d = c - b.derivative();
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Factor a squarefree primitive polynomial (positive lc) into irreducibles.
fn factor_squarefree_primitive(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let n = f.deg();
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    // Monicize: F(x) = lc^{n-1} f(x/lc); factors of f are primitive parts of
    // G(lc·x) over the monic factors G of F.
    let lc = f.lc();
    let monic_input = lc.is_one();
    let big_f = if monic_input {
        f.clone()
    } else {
        let coeffs: Vec<BigInt> = (0..=n)
            .map(|j| f.coeff(j) * lc.pow((n - 1 - j.min(n - 1)) as u32))
            .collect();
        // j = n term: lc^{n-1-n} would be negative; handle explicitly
        let mut v = coeffs;
        v[n] = BigInt::one();
        IntPoly::new(v)
    };
    let monic_factors = factor_monic_squarefree(&big_f)?;
    let mut out = Vec::new();
    for g in monic_factors {
        if monic_input {
            out.push(g);
        } else {
            // substitute x -> lc·x, take primitive part
            let m = g.deg();
            let coeffs: Vec<BigInt> = (0..=m).map(|j| g.coeff(j) * lc.pow(j as u32)).collect();
            let (_, prim) = IntPoly::new(coeffs).primitive();
            out.push(prim);
        }
    }
    Ok(out)
}

/// Pick an odd prime where f stays squarefree with unit leading coefficient.
fn good_prime(f: &IntPoly) -> Result<u64> {
    for p in primal::Primes::all().skip(1).take(2000) {
        let p = p as u64;
        if (f.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = ModPoly::from_intpoly(f, p);
        if fp.gcd(&fp.derivative()).is_one() {
            return Ok(p);
        }
    }
    Err(Error::Internal(
        "no good prime found for a squarefree polynomial".into(),
    ))
}

/// Mignotte-style bound: coefficients of any monic factor of monic f are
/// bounded by 2^n (n+1) H(f).
fn coefficient_bound(f: &IntPoly) -> BigInt {
    let n = f.deg();
    let height = f
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    (BigInt::one() << n) * BigInt::from(n as u64 + 1) * height
}

/// Factor a monic squarefree integer polynomial into monic irreducibles.
fn factor_monic_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let p = good_prime(f)?;
    let fp = ModPoly::from_intpoly(f, p);
    let modular = factor_squarefree_mod_p(&fp)?;
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // lift to p^k with p^k > 2·bound
    let bound = coefficient_bound(f);
    let mut pk = BigInt::from(p);
    let mut k = 1u32;
    while pk <= &bound * BigInt::from(2) {
        pk *= BigInt::from(p);
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k)?;
    recombine(f, lifted, &pk)
}

/// Zassenhaus linear lifting: from f ≡ ∏ h_i (mod p) to f ≡ ∏ g_i (mod p^k),
/// all monic, g_i ≡ h_i (mod p).
fn hensel_lift(f: &IntPoly, hs: &[ModPoly], p: u64, k: u32) -> Result<Vec<IntPoly>> {
    // CRT inverses: u_i = (∏_{j≠i} h_j)^{-1} mod h_i over F_p
    let mut inverses = Vec::with_capacity(hs.len());
    for (i, hi) in hs.iter().enumerate() {
        let mut prod = ModPoly::one(p);
        for (j, hj) in hs.iter().enumerate() {
            if j != i {
                prod = prod.mul(hj).rem(hi);
            }
        }
        let (g, s, _) = prod.xgcd(hi);
        if !g.is_one() {
            return Err(Error::Internal("modular factors not coprime".into()));
        }
        inverses.push(s.rem(hi));
    }
    let mut gs: Vec<IntPoly> = hs.iter().map(ModPoly::to_intpoly_symmetric).collect();
    let pb = BigInt::from(p);
    let mut pm = pb.clone(); // p^m, current modulus of correctness
    for _ in 1..k {
        // E = (f - ∏ g_i) / p^m mod p
        let mut prod = IntPoly::one();
        for g in &gs {
            prod = prod * g;
        }
        let err = (f - prod).div_scalar_exact(&pm)?;
        let err_p = ModPoly::from_intpoly(&err, p);
        for (i, g) in gs.iter_mut().enumerate() {
            let delta = err_p.mul(&inverses[i]).rem(&hs[i]);
            let lift = delta.to_intpoly_symmetric();
            *g = &*g + lift.scale(&pm);
        }
        pm *= &pb;
    }
    Ok(gs)
}

fn symmetric_mod(v: &BigInt, pk: &BigInt) -> BigInt {
    let r = v.mod_floor(pk);
    if &r * BigInt::from(2) > *pk {
        r - pk
    } else {
        r
    }
}

fn product_mod(gs: &[&IntPoly], pk: &BigInt) -> IntPoly {
    let mut prod = IntPoly::one();
    for g in gs {
        prod = prod * *g;
        prod = IntPoly::new(prod.coeffs().iter().map(|c| symmetric_mod(c, pk)).collect());
    }
    prod
}

/// Try subsets of lifted factors in ascending cardinality; accepted products
/// are true irreducible factors over Z.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt) -> Result<Vec<IntPoly>> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= lifted.len() {
        let idx: Vec<usize> = (0..lifted.len()).collect();
        for combo in combinations(&idx, size) {
            let parts: Vec<&IntPoly> = combo.iter().map(|&i| &lifted[i]).collect();
            let cand = product_mod(&parts, pk);
            if rest.divisible_by(&cand) {
                rest = rest.div_exact(&cand)?;
                out.push(cand);
                let keep: Vec<IntPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                lifted = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.deg() > 0 || !rest.is_one() {
        out.push(rest);
    }
    out.sort_by(|a, b| (a.deg(), a.coeffs()).cmp(&(b.deg(), b.coeffs())));
    Ok(out)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..k).collect();
    if k == 0 || k > items.len() {
        return out;
    }
    loop {
        out.push(combo.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn division_polynomial_quadratic() {
        // 4x^3 + 8x^2 - 4 = 4 (x+1)(x^2+x-1)
        let f = ip(&[-4, 0, 8, 4]);
        let (c, fac) = factor_over_z(&f).unwrap();
        assert_eq!(c, BigInt::from(4));
        assert_eq!(
            fac,
            vec![(ip(&[1, 1]), 1), (ip(&[-1, 1, 1]), 1)]
        );
    }

    #[test]
    fn cyclotomic_cubic() {
        let (c, fac) = factor_over_z(&ip(&[-1, 0, 0, 1])).unwrap();
        assert_eq!(c, BigInt::one());
        assert_eq!(fac, vec![(ip(&[-1, 1]), 1), (ip(&[1, 1, 1]), 1)]);
    }

    #[test]
    fn quartic_with_hidden_linear_factor() {
        // 3x^4 + 8x^3 - 12x - 8 = (x+2)(3x^3+2x^2-4x-4); the cubic has no
        // rational root, so it is irreducible
        let f = ip(&[-8, -12, 0, 8, 3]);
        let (c, fac) = factor_over_z(&f).unwrap();
        assert_eq!(c, BigInt::one());
        assert_eq!(fac, vec![(ip(&[2, 1]), 1), (ip(&[-4, -4, 2, 3]), 1)]);
    }

    #[test]
    fn irreducible_quartics() {
        for f in [ip(&[8, -12, 0, 8, 3]), ip(&[-8, 0, -12, 8, 3])] {
            let (c, fac) = factor_over_z(&f).unwrap();
            assert_eq!(c, BigInt::one());
            assert_eq!(fac, vec![(f, 1)]);
        }
    }

    #[test]
    fn repeated_factors() {
        // (x+1)^2 (x-2)^3 · 6
        let f = ip(&[1, 1]).pow(2) * ip(&[-2, 1]).pow(3) * ip(&[6]);
        let (c, fac) = factor_over_z(&f).unwrap();
        assert_eq!(c, BigInt::from(6));
        assert_eq!(fac, vec![(ip(&[-2, 1]), 3), (ip(&[1, 1]), 2)]);
    }

    #[test]
    fn negative_content() {
        let f = ip(&[2, 2]).scale(&BigInt::from(-1)); // -2x - 2
        let (c, fac) = factor_over_z(&f).unwrap();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(fac, vec![(ip(&[1, 1]), 1)]);
    }

    #[test]
    fn x4_plus_one_stays_irreducible() {
        // reducible mod every prime, irreducible over Q — recombination must cope
        let (_, fac) = factor_over_z(&ip(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(fac.len(), 1);
    }

    #[test]
    fn swinnerton_dyer_style_product() {
        // (x^2-2)(x^2-3)(x^2+6) needs genuine recombination mod most primes
        let f = ip(&[-2, 0, 1]) * ip(&[-3, 0, 1]) * ip(&[6, 0, 1]);
        let (c, fac) = factor_over_z(&f).unwrap();
        assert_eq!(c, BigInt::one());
        assert_eq!(fac.len(), 3);
        let prod = fac
            .iter()
            .fold(IntPoly::one(), |acc, (g, e)| acc * g.pow(*e));
        assert_eq!(prod, f);
    }

    #[test]
    fn nonmonic_product() {
        // (2x+1)(3x-5)(x^2+x+7)
        let f = ip(&[1, 2]) * ip(&[-5, 3]) * ip(&[7, 1, 1]);
        let (c, fac) = factor_over_z(&f).unwrap();
        assert_eq!(c, BigInt::one());
        assert_eq!(
            fac,
            vec![(ip(&[-5, 3]), 1), (ip(&[1, 2]), 1), (ip(&[7, 1, 1]), 1)]
        );
    }

    #[test]
    fn degree_bound_enforced() {
        let f = IntPoly::monomial(BigInt::one(), 65) - IntPoly::one();
        assert!(matches!(
            factor_over_z(&f),
            Err(Error::Unsupported(_))
        ));
        let ok = IntPoly::monomial(BigInt::one(), 64) - IntPoly::one();
        assert!(factor_over_z(&ok).is_ok());
    }

    #[test]
    fn rejects_zero() {
        assert!(factor_over_z(&IntPoly::zero()).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn factor_remultiplies(coeffs in proptest::collection::vec(-9i64..=9, 1..=13)) {
            let f = IntPoly::from_i64(&coeffs);
            if !f.is_zero() {
                // factor_over_z audits the re-multiplication internally
                factor_over_z(&f).unwrap();
            }
        }
    }
}
