//! Weierstrass invariants, division polynomials in the x-only f_n
//! formulation, structure checks on their coefficients, and the torsion
//! obstructions they support.

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Integral Weierstrass model y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6
/// with the classical derived quantities.
#[derive(Debug, Clone, Serialize)]
pub struct WeierstrassCurve {
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub a1: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub a2: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub a3: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub a4: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub a6: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub b2: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub b4: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub b6: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub b8: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub c4: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub c6: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub disc: BigInt,
    #[serde(serialize_with = "serialize_rational")]
    pub j: BigRational,
}

fn serialize_rational<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn curve_invariants(a: [i64; 5]) -> Result<WeierstrassCurve> {
    let [a1, a2, a3, a4, a6] = a.map(i128::from);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    debug_assert_eq!(4 * b8, b2 * b6 - b4 * b4);
    let c4 = b2 * b2 - 24 * b4;
    let c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6;
    let disc = -(b2 * b2) * b8 - 8 * (b4 * b4 * b4) - 27 * (b6 * b6) + 9 * b2 * b4 * b6;
    if disc == 0 {
        return Err(Error::InvalidInput("singular curve: discriminant is zero".into()));
    }
    let c4_big = BigInt::from(c4);
    let j = BigRational::new(&c4_big * &c4_big * &c4_big, BigInt::from(disc));
    Ok(WeierstrassCurve {
        a1: BigInt::from(a1),
        a2: BigInt::from(a2),
        a3: BigInt::from(a3),
        a4: BigInt::from(a4),
        a6: BigInt::from(a6),
        b2: BigInt::from(b2),
        b4: BigInt::from(b4),
        b6: BigInt::from(b6),
        b8: BigInt::from(b8),
        c4: c4_big,
        c6: BigInt::from(c6),
        disc: BigInt::from(disc),
        j,
    })
}

/// The curve of interest, y² = x³ + 2x² − 1.
pub fn default_curve() -> WeierstrassCurve {
    curve_invariants([0, 2, 0, 0, -1]).expect("default curve is nonsingular")
}

/// Table of the one-variable division polynomials f_1..f_N; f[n] = f_n,
/// with f[0] = 0 for recursion convenience.
#[derive(Debug, Clone, Serialize)]
pub struct DivPolyTable {
    pub curve: WeierstrassCurve,
    pub max_index: usize,
    f: Vec<IntPoly>,
}

impl DivPolyTable {
    pub fn f(&self, n: usize) -> &IntPoly {
        &self.f[n]
    }
}

/// Build f_1..f_N by the three-case recursion, with every division by f₂
/// or f₂² asserted exact.
pub fn divpoly_table(curve: &WeierstrassCurve, n_max: usize) -> Result<DivPolyTable> {
    if n_max < 1 {
        return Err(Error::InvalidInput("table bound must be at least 1".into()));
    }
    let c = |b: &BigInt| b.clone();
    let (b2, b4, b6, b8) = (&curve.b2, &curve.b4, &curve.b6, &curve.b8);
    let f2 = IntPoly::new(vec![c(b6), 2 * b4, c(b2), BigInt::from(4)]);
    let f3 = IntPoly::new(vec![c(b8), 3 * b6, 3 * b4, c(b2), BigInt::from(3)]);
    let f4_cofactor = IntPoly::new(vec![
        b4 * b8 - b6 * b6,
        b2 * b8 - b4 * b6,
        10 * b8,
        10 * b6,
        5 * b4,
        c(b2),
        BigInt::from(2),
    ]);
    let f4 = &f2 * &f4_cofactor;
    let mut f = vec![IntPoly::zero(), IntPoly::one(), f2, f3, f4];
    f.truncate(n_max + 1);
    let f2sq = f.get(2).map(|p: &IntPoly| p.square());
    for n in f.len()..=n_max {
        let f2 = &f[2];
        let f2sq = f2sq.as_ref().expect("n >= 5 implies f2 exists");
        let next = if n % 2 == 0 {
            let m = n / 2;
            let num = &f[m] * &(&f[m - 1].square() * &f[m + 2] - &f[m - 2] * &f[m + 1].square());
            num.div_exact(f2).map_err(|_| {
                Error::Internal(format!("f_{n} recursion: division by f2 not exact"))
            })?
        } else {
            let m = (n - 1) / 2;
            let num = if n % 4 == 1 {
                &f[m + 2] * &f[m].pow(3) - f2sq * &(&f[m - 1] * &f[m + 1].pow(3))
            } else {
                f2sq * &(&f[m + 2] * &f[m].pow(3)) - &f[m - 1] * &f[m + 1].pow(3)
            };
            num.div_exact(f2sq).map_err(|_| {
                Error::Internal(format!("f_{n} recursion: division by f2^2 not exact"))
            })?
        };
        f.push(next);
    }
    Ok(DivPolyTable {
        curve: curve.clone(),
        max_index: n_max,
        f,
    })
}

/// Structure report for one index n of the coefficient theorems.
#[derive(Debug, Clone, Serialize)]
pub struct FactlistReport {
    pub n: usize,
    pub degree: usize,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub leading: BigInt,
    /// Set for odd n: true once f_n − LC·x^deg ≡ 0 mod 4.
    pub odd_monomial_mod4: Option<bool>,
    /// Set for even n: (k, true) with k = v₂(n) once 2^{k+1} divides every
    /// coefficient and the quotient reduces to (x+1)(x²+x+1)x^{n²/2−2} mod 2.
    pub even_structure: Option<(u32, bool)>,
}

/// Verify the four structure clauses for f_n on the default curve:
/// degree, leading coefficient, the odd mod-4 monomial congruence, and the
/// even 2-adic divisibility with its mod-2 quotient shape.
pub fn factlist_check(table: &DivPolyTable, n: usize) -> Result<FactlistReport> {
    if n < 2 || n > table.max_index {
        return Err(Error::InvalidInput(format!("n = {n} outside table range")));
    }
    if table.curve.a1 != BigInt::zero()
        || table.curve.a2 != BigInt::from(2)
        || table.curve.a3 != BigInt::zero()
        || table.curve.a4 != BigInt::zero()
        || table.curve.a6 != BigInt::from(-1)
    {
        return Err(Error::Unsupported(
            "structure clauses are stated for the default curve".into(),
        ));
    }
    let fnn = table.f(n);
    let expected_deg = if n % 2 == 0 {
        n * n / 2 + 1
    } else {
        (n * n - 1) / 2
    };
    if fnn.deg() != expected_deg {
        return Err(Error::Verification(format!(
            "f_{n}: degree {} != {expected_deg}",
            fnn.deg()
        )));
    }
    let expected_lc = BigInt::from(if n % 2 == 0 { 2 * n } else { n } as u64);
    if fnn.lc() != expected_lc {
        return Err(Error::Verification(format!(
            "f_{n}: leading coefficient {} != {expected_lc}",
            fnn.lc()
        )));
    }
    let four = BigInt::from(4);
    let mut odd_monomial_mod4 = None;
    let mut even_structure = None;
    if n % 2 == 1 {
        for k in 0..fnn.deg() {
            if !fnn.coeff(k).mod_floor(&four).is_zero() {
                return Err(Error::Verification(format!(
                    "f_{n}: coefficient {k} nonzero mod 4"
                )));
            }
        }
        odd_monomial_mod4 = Some(true);
    } else {
        let k = n.trailing_zeros();
        let modulus = BigInt::from(1u64 << (k + 1));
        for j in 0..=fnn.deg() {
            if !fnn.coeff(j).mod_floor(&modulus).is_zero() {
                return Err(Error::Verification(format!(
                    "f_{n}: coefficient {j} not divisible by 2^{}",
                    k + 1
                )));
            }
        }
        let quotient = fnn.div_scalar_exact(&modulus)?;
        // (x+1)(x²+x+1)·x^{n²/2−2} mod 2 = (x³+1)·x^{n²/2−2} mod 2
        let shift = n * n / 2 - 2;
        let expected = IntPoly::from_i64(&[1, 0, 0, 1]).shift_up(shift);
        let two = BigInt::from(2);
        for j in 0..=quotient.deg().max(expected.deg()) {
            if quotient.coeff(j).mod_floor(&two) != expected.coeff(j).mod_floor(&two) {
                return Err(Error::Verification(format!(
                    "f_{n}/2^{}: coefficient {j} differs mod 2 from the (x+1)(x²+x+1) shape",
                    k + 1
                )));
            }
        }
        even_structure = Some((k, true));
    }
    Ok(FactlistReport {
        n,
        degree: expected_deg,
        leading: expected_lc,
        odd_monomial_mod4,
        even_structure,
    })
}

/// True iff f₂ divides f_n exactly over Z (n even).
pub fn divisibility_check(table: &DivPolyTable, n: usize) -> Result<bool> {
    if n % 2 != 0 || n < 2 || n > table.max_index {
        return Err(Error::InvalidInput(format!(
            "divisibility check needs even 2 <= n <= {} (got {n})",
            table.max_index
        )));
    }
    Ok(table.f(n).divisible_by(table.f(2)))
}

/// (R, Z) ↦ (x, y) = (R, RZ), carrying the canonical component onto
/// y² = x³ + 2x² − 1.
pub fn birational_map(r: Complex64, z: Complex64) -> (Complex64, Complex64) {
    (r, r * z)
}

/// Residual |y² − (x³ + 2x² − 1)| after the birational map.
pub fn birational_residual(r: Complex64, z: Complex64) -> f64 {
    let (x, y) = birational_map(r, z);
    (y * y - (x * x * x + 2.0 * x * x - 1.0)).norm()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TorsionVerdict {
    NotTorsion { reason: String },
    TwoTorsionCandidate,
    Inconclusive { reason: String },
}

/// Unit argument: for integral Z the relation R³ + (2−Z²)R² − 1 = 0 makes
/// R a unit, so v(x) = 0 at every place above 2 and torsion of order > 2 is
/// impossible. Z = 0 (quadratic coefficient 2) is formal 2-torsion data.
pub fn unit_obstruction(r_minpoly: &IntPoly) -> Result<TorsionVerdict> {
    if r_minpoly.deg() != 3 || !r_minpoly.is_monic() {
        return Err(Error::InvalidInput(
            "expected the monic cubic produced by the curve relation".into(),
        ));
    }
    if r_minpoly.coeff(0) != BigInt::from(-1) || !r_minpoly.coeff(1).is_zero() {
        return Err(Error::InvalidInput(
            "curve relation has constant term -1 and no linear term".into(),
        ));
    }
    if r_minpoly.coeff(2) == BigInt::from(2) {
        // 2 − Z² = 2 forces Z = 0, i.e. y = RZ = 0
        return Ok(TorsionVerdict::TwoTorsionCandidate);
    }
    Ok(TorsionVerdict::NotTorsion {
        reason: "constant term -1 makes R a unit; zero 2-adic valuation \
                 contradicts the positive valuation required of torsion of order > 2"
            .into(),
    })
}

/// 2-adic obstruction from the minimal polynomial of an algebraic-integer
/// x-coordinate.
pub fn torsion_obstruction(x_minpoly: &IntPoly) -> Result<TorsionVerdict> {
    if x_minpoly.is_zero() || !x_minpoly.is_monic() {
        return Err(Error::InvalidInput("minimal polynomial must be monic".into()));
    }
    let two_torsion = IntPoly::from_i64(&[-1, 0, 2, 1]); // x³ + 2x² − 1
    if two_torsion.divisible_by(x_minpoly) {
        return Ok(TorsionVerdict::TwoTorsionCandidate);
    }
    if x_minpoly.coeff(0).is_odd() {
        return Ok(TorsionVerdict::NotTorsion {
            reason: "odd constant term: conjugate valuations above 2 are \
                     nonnegative and sum to 0, hence all zero"
                .into(),
        });
    }
    Ok(TorsionVerdict::Inconclusive {
        reason: "constant term even: positive 2-adic valuation is possible".into(),
    })
}

/// Gaussian integer a + bi with exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussianInt {
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub re: BigInt,
    #[serde(serialize_with = "crate::jsonutil::serialize_bigint")]
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: i64, im: i64) -> Self {
        GaussianInt {
            re: BigInt::from(re),
            im: BigInt::from(im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        GaussianInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn add_real(&self, c: &BigInt) -> Self {
        GaussianInt {
            re: &self.re + c,
            im: self.im.clone(),
        }
    }
}

impl std::fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Exact evaluation of f_n at a Gaussian integer.
pub fn gaussian_divpoly_eval(table: &DivPolyTable, n: usize, z: &GaussianInt) -> Result<GaussianInt> {
    if n < 1 || n > table.max_index {
        return Err(Error::InvalidInput(format!("n = {n} outside table range")));
    }
    let f = table.f(n);
    let mut acc = GaussianInt::new(0, 0);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z).add_real(c);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionAudit {
    /// (n, f_n(1+i), f_n(1−i)) for n = 2..6, all required nonzero.
    pub evaluations: Vec<(usize, GaussianInt, GaussianInt)>,
    pub all_nonzero: bool,
    /// The torsion group Z/6Z of E over Q(i, √5) is consumed as an external
    /// input; with it, nonvanishing of f_2..f_6 at 1 ± i certifies the four
    /// intersection points have infinite order.
    pub torsion_group_external_input: &'static str,
}

/// Evaluate f_n(1±i) for n = 2..6 on the default curve and require all
/// values nonzero.
pub fn intersection_point_audit() -> Result<IntersectionAudit> {
    let table = divpoly_table(&default_curve(), 6)?;
    let zp = GaussianInt::new(1, 1);
    let zm = GaussianInt::new(1, -1);
    let mut evaluations = Vec::new();
    for n in 2..=6 {
        let vp = gaussian_divpoly_eval(&table, n, &zp)?;
        let vm = gaussian_divpoly_eval(&table, n, &zm)?;
        if vp.is_zero() || vm.is_zero() {
            return Err(Error::Verification(format!(
                "f_{n} vanishes at an intersection x-coordinate"
            )));
        }
        evaluations.push((n, vp, vm));
    }
    Ok(IntersectionAudit {
        evaluations,
        all_nonzero: true,
        torsion_group_external_input: "Z/6Z",
    })
}
