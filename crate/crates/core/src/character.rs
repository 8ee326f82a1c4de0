//! The canonical component of the 7_4 character variety: curve evaluation,
//! representation checks, surgery cubics p_d/q_d, irreducibility certificates,
//! house bounds, the tame symbol, the local splitting criterion, and
//! condition (⋆) for the Alexander polynomial.

use crate::cyclotomic::real_minimal_poly;
use crate::error::{Error, Result};
use crate::intfactor::is_prime;
use crate::modpoly::{irreducible_mod_p, ModPoly};
use crate::poly::IntPoly;
use crate::zfactor::factor_over_z;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// A point (R, Z) tested against R³ − R²Z² + 2R² − 1 = 0.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub r_coord: Complex64,
    pub z_coord: Complex64,
    pub tolerance: f64,
}

impl CurvePoint {
    pub fn new(r_coord: Complex64, z_coord: Complex64, tolerance: f64) -> Self {
        CurvePoint {
            r_coord,
            z_coord,
            tolerance,
        }
    }

    pub fn residual(&self) -> f64 {
        curve_eval(self.r_coord, self.z_coord).norm()
    }

    pub fn is_on_curve(&self) -> bool {
        self.residual() <= self.tolerance
    }
}

/// Defining polynomial R³ − R²Z² + 2R² − 1, numerically.
pub fn curve_eval(r: Complex64, z: Complex64) -> Complex64 {
    r * r * r - r * r * z * z + 2.0 * r * r - Complex64::new(1.0, 0.0)
}

/// Exact evaluation; Z enters only through Z², so the second argument is Z².
pub fn curve_eval_exact(r: &BigRational, z_squared: &BigRational) -> BigRational {
    r * r * r - r * r * z_squared + BigRational::from(BigInt::from(2)) * r * r
        - BigRational::one()
}

/// The two Brauer-equivalent Hilbert-symbol specializations at a point:
/// (−r³+4r²−4r−1, −r) with r = R−2, and (Z²−4, R−2).
#[derive(Debug, Clone, Copy)]
pub struct HilbertEntries {
    pub r_form: (Complex64, Complex64),
    pub z_form: (Complex64, Complex64),
}

pub fn hilbert_symbol_entries(point: &CurvePoint) -> HilbertEntries {
    let r = point.r_coord - 2.0;
    let first = -r * r * r + 4.0 * r * r - 4.0 * r - Complex64::new(1.0, 0.0);
    let z2 = point.z_coord * point.z_coord;
    HilbertEntries {
        r_form: (first, -r),
        z_form: (z2 - 4.0, r),
    }
}

/// Exact r-coordinate first entry −r³ + 4r² − 4r − 1.
pub fn hilbert_first_entry(r: &BigRational) -> BigRational {
    let four = BigRational::from(BigInt::from(4));
    -(r * r * r) + &four * (r * r) - four * r - BigRational::one()
}

#[derive(Debug, Clone, Copy)]
struct M2([Complex64; 4]); // row-major [a, b, c, d]

impl M2 {
    fn mul(&self, o: &M2) -> M2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        M2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
    fn sub(&self, o: &M2) -> M2 {
        M2([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }
    fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Residual of the defining relation ρ(a)ρ(w)² = ρ(w)²ρ(b) for the
/// parabolic-free parametrization ρ(a) = [[x,1],[0,1/x]],
/// ρ(b) = [[x,0],[r,1/x]], w = ab⁻¹ab⁻¹a⁻¹ba⁻¹b.
pub fn verify_representation(x: Complex64, r: Complex64) -> Result<f64> {
    if x.norm() == 0.0 {
        return Err(Error::InvalidInput("x must be nonzero".into()));
    }
    let xi = 1.0 / x;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let a = M2([x, one, zero, xi]);
    let a_inv = M2([xi, -one, zero, x]);
    let b = M2([x, zero, r, xi]);
    let b_inv = M2([xi, zero, -r, x]);
    // w = a b⁻¹ a b⁻¹ a⁻¹ b a⁻¹ b
    let w = a
        .mul(&b_inv)
        .mul(&a)
        .mul(&b_inv)
        .mul(&a_inv)
        .mul(&b)
        .mul(&a_inv)
        .mul(&b);
    let w2 = w.mul(&w);
    Ok(a.mul(&w2).sub(&w2.mul(&b)).max_norm())
}

/// The surgery cubic p_d(R) = R³ − t·R² − 1 and its shift q_d(r) = p_d(r+2),
/// with coefficients in Z[t]/(ψ_d(t)), t standing for ζ_d² + ζ_d⁻².
#[derive(Debug, Clone, Serialize)]
pub struct SurgeryCubic {
    pub d: u64,
    /// ψ_d(t); for the degenerate d = 1 this is t − 2.
    pub modulus: IntPoly,
    /// Coefficients of p_d in R, constant first, each a polynomial in t.
    pub p_coeffs: Vec<IntPoly>,
    /// Coefficients of q_d in r = R − 2, constant first.
    pub q_coeffs: Vec<IntPoly>,
}

pub fn surgery_cubic(d: u64) -> Result<SurgeryCubic> {
    if d != 1 && (d % 2 == 0 || d < 3) {
        return Err(Error::InvalidInput(format!(
            "surgery cubic requires odd d (got {d})"
        )));
    }
    let modulus = if d == 1 {
        IntPoly::from_i64(&[-2, 1])
    } else {
        real_minimal_poly(d)?
    };
    let t = IntPoly::x();
    let c = |v: i64| IntPoly::constant(BigInt::from(v));
    // p_d(R) = R³ − t R² − 1
    let p_coeffs = vec![c(-1), c(0), -&t, c(1)];
    // q_d(r) = p_d(r+2) = r³ + (6−t) r² + (12−4t) r + (7−4t)
    let q_coeffs = vec![
        c(7) - t.scale(&BigInt::from(4)),
        c(12) - t.scale(&BigInt::from(4)),
        c(6) - t.clone(),
        c(1),
    ];
    Ok(SurgeryCubic {
        d,
        modulus,
        p_coeffs,
        q_coeffs,
    })
}

/// F_d(R) = Res_t(ψ_d(t), R³ − tR² − 1) = Σ_k a_k (R³−1)^k R^{2(m−k)},
/// a monic integer polynomial of degree 3·deg ψ_d.
pub fn norm_cubic(d: u64) -> Result<IntPoly> {
    let psi = if d == 1 {
        IntPoly::from_i64(&[-2, 1])
    } else {
        real_minimal_poly(d)?
    };
    let m = psi.deg();
    let r3m1 = IntPoly::from_i64(&[-1, 0, 0, 1]); // R³ − 1
    let mut acc = IntPoly::zero();
    let mut power = IntPoly::one(); // (R³−1)^k
    for k in 0..=m {
        let term = power.scale(&psi.coeff(k)).shift_up(2 * (m - k));
        acc = acc + term;
        if k < m {
            power = &power * &r3m1;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IrreducibilityMethod {
    ModPCertificate,
    RationalFactorization,
    HouseBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IrreducibilityVerdict {
    Irreducible,
    Reducible { factors: Vec<IntPoly> },
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrreducibilityReport {
    pub d: u64,
    pub method: IrreducibilityMethod,
    pub verdict: IrreducibilityVerdict,
    /// The certifying prime for mod-p certificates.
    pub witness_prime: Option<u64>,
}

/// Certify irreducibility of q_d over Q(ζ_d + ζ_d⁻¹) through the norm
/// polynomial F_d: irreducibility of F_d mod p, or of F_d over Q, suffices.
pub fn irreducibility_certificate(d: u64) -> Result<IrreducibilityReport> {
    if d % 2 == 0 || !(3..=41).contains(&d) {
        return Err(Error::Unsupported(format!(
            "mod-p/rational certificates cover odd 3 ≤ d ≤ 41 (got {d}); \
             larger d are handled by the house bound"
        )));
    }
    let f = norm_cubic(d)?;
    for p in primal::Primes::all().take(30) {
        let p = p as u64;
        let fp = ModPoly::from_intpoly(&f, p);
        if fp.deg() != f.deg() {
            continue;
        }
        if irreducible_mod_p(&fp)? {
            return Ok(IrreducibilityReport {
                d,
                method: IrreducibilityMethod::ModPCertificate,
                verdict: IrreducibilityVerdict::Irreducible,
                witness_prime: Some(p),
            });
        }
    }
    let (_, factors) = factor_over_z(&f)?;
    if factors.len() == 1 && factors[0].1 == 1 {
        return Ok(IrreducibilityReport {
            d,
            method: IrreducibilityMethod::RationalFactorization,
            verdict: IrreducibilityVerdict::Irreducible,
            witness_prime: None,
        });
    }
    Ok(IrreducibilityReport {
        d,
        method: IrreducibilityMethod::RationalFactorization,
        verdict: IrreducibilityVerdict::Inconclusive,
        witness_prime: None,
    })
}

/// Largest real root of R³ − aR² − 1 for a ∈ [−2, 2], to 1e−12.
pub fn largest_real_root(a: f64) -> Result<f64> {
    if !(-2.0..=2.0).contains(&a) {
        return Err(Error::InvalidInput(format!(
            "largest_real_root expects a in [-2, 2], got {a}"
        )));
    }
    let f = |r: f64| r * r * r - a * r * r - 1.0;
    let df = |r: f64| 3.0 * r * r - 2.0 * a * r;
    // sign-change scan over a window that contains every real root:
    // |R| ≤ 1 + max(|a|, 1) ≤ 3
    let (lo, hi, steps) = (-3.5f64, 3.5f64, 14_000usize);
    let dx = (hi - lo) / steps as f64;
    let mut best: Option<f64> = None;
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=steps {
        let x = lo + dx * i as f64;
        let fx = f(x);
        if prev_f == 0.0 {
            best = Some(prev_x);
        }
        if prev_f * fx < 0.0 {
            // bisection then Newton polish
            let (mut a0, mut b0) = (prev_x, x);
            for _ in 0..60 {
                let mid = 0.5 * (a0 + b0);
                if f(a0) * f(mid) <= 0.0 {
                    b0 = mid;
                } else {
                    a0 = mid;
                }
            }
            let mut root = 0.5 * (a0 + b0);
            for _ in 0..4 {
                let d = df(root);
                if d.abs() > 1e-12 {
                    root -= f(root) / d;
                }
            }
            best = Some(best.map_or(root, |b| b.max(root)));
        }
        prev_x = x;
        prev_f = fx;
    }
    best.ok_or_else(|| Error::Internal("cubic without a detected real root".into()))
}

/// (√7 + √3)/2, the house bound from the Cassels–Calegari–Morrison–Snyder
/// exclusion.
pub fn house_threshold() -> f64 {
    (7f64.sqrt() + 3f64.sqrt()) / 2.0
}

/// True iff some Galois conjugate a = 2cos(4πk/d), gcd(k,d) = 1, has
/// largest_real_root(a) in ((√7+√3)/2 + 1e−9, 2.21).
pub fn house_bound_check(d: u64) -> Result<bool> {
    if d < 43 || d % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "house bound check covers odd d >= 43 (got {d})"
        )));
    }
    let threshold = house_threshold() + 1e-9;
    let mut max_root = f64::NEG_INFINITY;
    for k in 1..d {
        if num_integer::Integer::gcd(&k, &d) != 1 {
            continue;
        }
        let a = 2.0 * (4.0 * std::f64::consts::PI * k as f64 / d as f64).cos();
        let root = largest_real_root(a.clamp(-2.0, 2.0))?;
        max_root = max_root.max(root);
    }
    Ok(max_root > threshold && max_root < 2.21)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SquareClass {
    Trivial,
    Nontrivial,
}

/// Tame symbol (−1)^{ordα·ordβ} β^{ordα} / α^{ordβ}, classified by the
/// caller's residue-field square test.
pub fn tame_symbol(
    ord_alpha: i64,
    ord_beta: i64,
    alpha_res: &BigRational,
    beta_res: &BigRational,
    square_test: impl Fn(&BigRational) -> bool,
) -> Result<SquareClass> {
    if ord_beta != 0 && alpha_res.is_zero() {
        return Err(Error::InvalidInput(
            "alpha residue is zero but is exponentiated".into(),
        ));
    }
    if ord_alpha != 0 && beta_res.is_zero() {
        return Err(Error::InvalidInput(
            "beta residue is zero but is exponentiated".into(),
        ));
    }
    let pow = |base: &BigRational, e: i64| -> BigRational {
        let p = base.pow(e.unsigned_abs() as i32);
        if e < 0 {
            p.recip()
        } else {
            p
        }
    };
    let mut value = pow(beta_res, ord_alpha);
    if ord_beta != 0 {
        value = value / pow(alpha_res, ord_beta);
    }
    if (ord_alpha * ord_beta) % 2 != 0 {
        value = -value;
    }
    Ok(if square_test(&value) {
        SquareClass::Trivial
    } else {
        SquareClass::Nontrivial
    })
}

fn is_rational_square(v: &BigRational) -> bool {
    if v.is_negative() {
        return false;
    }
    let n = v.numer();
    let d = v.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    &(&sn * &sn) == n && &(&sd * &sd) == d
}

/// Square test in Q(√15): positive and equal to a rational square or 15
/// times one.
pub fn square_in_q_sqrt15(v: &BigRational) -> bool {
    if v.is_zero() {
        return true;
    }
    if v.is_negative() {
        return false;
    }
    is_rational_square(v) || is_rational_square(&(v / BigRational::from(BigInt::from(15))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocalBehavior {
    Split,
    Ramified,
}

/// Non-dyadic splitting criterion: ramified iff −1 is a nonsquare in the
/// residue field with p^f elements, i.e. iff p ≡ 3 mod 4 and f is odd.
pub fn local_split_criterion(p: u64, f: u32) -> Result<LocalBehavior> {
    if p == 2 {
        return Err(Error::Unsupported(
            "the splitting criterion applies to non-dyadic places only".into(),
        ));
    }
    if f == 0 || !is_prime(&BigInt::from(p)) {
        return Err(Error::InvalidInput(format!(
            "need an odd prime p and f >= 1 (got p = {p}, f = {f})"
        )));
    }
    Ok(if p % 4 == 3 && f % 2 == 1 {
        LocalBehavior::Ramified
    } else {
        LocalBehavior::Split
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StarPair {
    pub w_min_poly: IntPoly,
    pub w_degree: usize,
    pub trace_min_poly: IntPoly,
    pub trace_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionStarReport {
    pub alexander: IntPoly,
    pub pairs: Vec<StarPair>,
    pub holds: bool,
}

/// Evaluate condition (⋆): for every root w of Δ(t²) = 0 (i.e. w² a root of
/// the Alexander polynomial), Q(w + w⁻¹) must equal Q(w); certified by
/// comparing degrees of minimal polynomials.
pub fn condition_star(alexander: &IntPoly) -> Result<ConditionStarReport> {
    if alexander.is_zero() || alexander.coeff(0).is_zero() {
        return Err(Error::InvalidInput(
            "Alexander polynomial must be nonzero with nonzero constant term".into(),
        ));
    }
    // P(x) = alexander(x²)
    let mut p_coeffs = vec![BigInt::zero(); 2 * alexander.deg() + 1];
    for k in 0..=alexander.deg() {
        p_coeffs[2 * k] = alexander.coeff(k);
    }
    let p = IntPoly::new(p_coeffs);
    let (_, factors) = factor_over_z(&p)?;
    let mut pairs = Vec::new();
    let mut holds = true;
    for (m_w, _) in &factors {
        let trace = trace_min_poly(m_w)?;
        if trace.deg() < m_w.deg() {
            holds = false;
        }
        pairs.push(StarPair {
            w_min_poly: m_w.clone(),
            w_degree: m_w.deg(),
            trace_min_poly: trace.clone(),
            trace_degree: trace.deg(),
        });
    }
    Ok(ConditionStarReport {
        alexander: alexander.clone(),
        pairs,
        holds,
    })
}

/// Minimal polynomial of w + w⁻¹ given the (irreducible) minimal polynomial
/// of w: factor Res_w(m(w), w² − x·w + 1) and keep the factor annihilating
/// a numerically tracked root, verified exactly by divisibility.
fn trace_min_poly(m: &IntPoly) -> Result<IntPoly> {
    let n = m.deg();
    // interpolate R(x) = Res_w(m, w² − xw + 1), degree n in x
    let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let values = points
        .iter()
        .map(|x0| {
            let g = IntPoly::new(vec![BigInt::one(), -x0.clone(), BigInt::one()]);
            m.resultant(&g)
        })
        .collect::<Result<Vec<_>>>()?;
    let res_poly = lagrange_interpolate_integral(&points, &values)?;
    let (_, factors) = factor_over_z(&res_poly)?;
    let distinct: Vec<&IntPoly> = factors.iter().map(|(f, _)| f).collect();
    let chosen = if distinct.len() == 1 {
        distinct[0].clone()
    } else {
        // pair through a numerically tracked root of m
        let w = roots_complex(m)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("no numeric root found".into()))?;
        let tr = w + 1.0 / w;
        let best = distinct
            .iter()
            .min_by(|f, g| {
                eval_complex(f, tr)
                    .norm()
                    .partial_cmp(&eval_complex(g, tr).norm())
                    .unwrap()
            })
            .unwrap();
        (*best).clone()
    };
    // exactness: the chosen factor must divide the resultant polynomial
    if !res_poly.divisible_by(&chosen) {
        return Err(Error::Internal(
            "trace polynomial does not divide the eliminant".into(),
        ));
    }
    Ok(chosen)
}

/// Exact Lagrange interpolation through integer points; errors if the
/// result is not integral.
fn lagrange_interpolate_integral(xs: &[BigInt], ys: &[BigInt]) -> Result<IntPoly> {
    use num_rational::BigRational as Q;
    let n = xs.len();
    let mut acc: Vec<Q> = vec![Q::zero(); n];
    for i in 0..n {
        // basis polynomial ∏_{j≠i} (x − x_j)/(x_i − x_j)
        let mut basis: Vec<Q> = vec![Q::one()];
        let mut denom = Q::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            // multiply basis by (x − x_j)
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * Q::from(xs[j].clone());
            }
            basis = next;
            denom *= Q::from(xs[i].clone()) - Q::from(xs[j].clone());
        }
        let scale = Q::from(ys[i].clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return Err(Error::Internal(
                "interpolated polynomial is not integral".into(),
            ));
        }
        out.push(c.to_integer());
    }
    Ok(IntPoly::new(out))
}

pub(crate) fn eval_complex(f: &IntPoly, x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in f.coeffs().iter().rev() {
        acc = acc * x + Complex64::new(crate::poly::bigint_to_f64(c), 0.0);
    }
    acc
}

/// All complex roots by Durand–Kerner iteration (f64 precision).
pub fn roots_complex(f: &IntPoly) -> Vec<Complex64> {
    let n = f.deg();
    if n == 0 || f.is_zero() {
        return vec![];
    }
    let lead = crate::poly::bigint_to_f64(&f.lc());
    let coeffs: Vec<Complex64> = (0..=n)
        .map(|k| Complex64::new(crate::poly::bigint_to_f64(&f.coeff(k)) / lead, 0.0))
        .collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..200 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            let delta = eval(zs[i]) / denom;
            zs[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-13 {
            break;
        }
    }
    zs
}
