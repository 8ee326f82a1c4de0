//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see lines for passing tests).

use knot74::beta::{
    build_n_sequence, divisor_norm_product, extract_d_sequence, product_identity_audit,
    s_of_n, s_residue_audit,
};
use knot74::character::{
    condition_star, house_bound_check, irreducibility_certificate, largest_real_root,
    square_in_q_sqrt15, tame_symbol, IrreducibilityVerdict, SquareClass,
};
use knot74::cyclotomic::{
    norm_cd_value, norm_cd_via_resultant, order_bound_audit, surgery_ramified_primes,
};
use knot74::divpoly::{
    curve_invariants, default_curve, divisibility_check, divpoly_table, factlist_check,
    gaussian_divpoly_eval, GaussianInt,
};
use knot74::poly::IntPoly;
use knot74::zfactor::factor_over_z;
use knot74::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn report(criterion: u32, ok: bool, detail: &str) {
    println!(
        "criterion {criterion:2}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_curve_invariants() {
    let e = curve_invariants([0, 2, 0, 0, -1]).unwrap();
    let ok = e.b2 == BigInt::from(8)
        && e.b4 == BigInt::from(0)
        && e.b6 == BigInt::from(-4)
        && e.b8 == BigInt::from(-8)
        && e.c4 == BigInt::from(64)
        && e.c6 == BigInt::from(352)
        && e.disc == BigInt::from(80)
        && e.j == BigRational::new(BigInt::from(16384), BigInt::from(5));
    report(1, ok, "b2,b4,b6,b8,c4,c6,disc,j for (0,2,0,0,-1)");
}

#[test]
fn criterion_02_printed_division_polynomials() {
    let table = divpoly_table(&default_curve(), 4).unwrap();
    let ok = table.f(1) == &IntPoly::one()
        && table.f(2) == &IntPoly::from_i64(&[-4, 0, 8, 4])
        && table.f(3) == &IntPoly::from_i64(&[-8, -12, 0, 8, 3])
        && table.f(4)
            == &IntPoly::from_i64(&[64, 256, 192, -416, -896, -672, -168, 64, 48, 8]);
    report(2, ok, "f_1..f_4 match the printed list coefficient-for-coefficient");
}

#[test]
fn criterion_03_structure_theorems_to_64() {
    let table = divpoly_table(&default_curve(), 64).unwrap();
    let mut ok = true;
    for n in 2..=64 {
        if factlist_check(&table, n).is_err() {
            ok = false;
            break;
        }
        if n % 2 == 0 && !divisibility_check(&table, n).unwrap() {
            ok = false;
            break;
        }
    }
    report(3, ok, "four structure clauses and f_2 | f_n for 2 <= n <= 64");
}

#[test]
fn criterion_04_norm_congruence_to_501() {
    let four = BigInt::from(4);
    let mut ok = true;
    for d in (3..=501u64).step_by(2) {
        let v = norm_cd_value(d).unwrap();
        if v.mod_floor(&four) != BigInt::one() {
            ok = false;
            break;
        }
    }
    report(4, ok, "N(c_d) odd and ≡ 1 mod 4 for all odd 3 <= d <= 501");
}

#[test]
fn criterion_05_cross_algorithm_norms_to_201() {
    let mut ok = true;
    for d in (3..=201u64).step_by(2) {
        if norm_cd_value(d).unwrap() != norm_cd_via_resultant(d).unwrap() {
            ok = false;
            break;
        }
    }
    report(5, ok, "ψ-evaluation equals resultant-with-sign-recovery for odd d <= 201");
}

#[test]
fn criterion_06_product_identities_to_105() {
    let mut ok = s_of_n(3).unwrap() == BigInt::from(11)
        && divisor_norm_product(3).unwrap() == BigInt::from(-11);
    for n in (3..=105u64).step_by(2) {
        if s_of_n(n).unwrap().abs() != divisor_norm_product(n).unwrap().abs() {
            ok = false;
            break;
        }
        if n % 4 == 1 && n >= 5 && !product_identity_audit(n).unwrap() {
            ok = false;
            break;
        }
    }
    report(6, ok, "absolute identity for odd n <= 105 and signed identity for n ≡ 1 mod 4");
}

#[test]
fn criterion_07_sign_residues_to_1001() {
    let mut ok = true;
    for n in (1..=1001u64).step_by(2) {
        if !s_residue_audit(n).unwrap() {
            ok = false;
            break;
        }
    }
    report(7, ok, "s(n) residue classes mod 4 for all odd n <= 1001");
}

#[test]
fn criterion_08_ramified_prime_pipeline() {
    // d = 3 must certify exactly {11}
    let base = surgery_ramified_primes(3).unwrap() == vec![BigInt::from(11)];
    // the three-certificate run: n-sequence is (13, 325, 4225); the third
    // certificate needs the full factorization of N(c_4225), a 941-digit
    // composite with no factor reachable by the configured budgets
    let seq = build_n_sequence(&[5, 13], 3).unwrap();
    let entries_ok = seq.entries.iter().map(|e| e.0).collect::<Vec<_>>() == vec![13, 325, 4225];
    match extract_d_sequence(&seq) {
        Ok(certs) => {
            let four = BigInt::from(4);
            let invariants_ok = certs.len() == 3
                && certs.iter().all(|c| {
                    c.norm.abs().mod_floor(&four) == BigInt::from(3) && !c.primes.is_empty()
                });
            let union: std::collections::BTreeSet<_> =
                certs.iter().flat_map(|c| c.primes.iter().cloned()).collect();
            report(
                8,
                base && entries_ok && invariants_ok && union.len() >= 2,
                "three certificates with nonempty prime lists and union of size >= 2",
            );
        }
        Err(Error::Resource(why)) => {
            // two certificates are attainable; report them before failing
            let seq2 = build_n_sequence(&[5, 13], 2).unwrap();
            let certs = extract_d_sequence(&seq2).unwrap();
            let union: std::collections::BTreeSet<_> =
                certs.iter().flat_map(|c| c.primes.iter().cloned()).collect();
            println!(
                "criterion  8: FAIL — third certificate unattainable: {why}; \
                 first two certificates (d = 13, 325) verify all invariants with \
                 prime union size {} >= 2; the d-sequence forces d_3 = 4225, whose \
                 norm is a 941-digit composite (the d_3 candidates 169 and 845 have \
                 positive norms and are skipped by the sign condition), and no \
                 general-purpose factorization of that number is feasible",
                union.len()
            );
            panic!(
                "criterion 8 fails honestly: N(c_4225) (941 digits) cannot be fully \
                 factored, so the third RamificationCertificate cannot be completed; \
                 see the printed analysis"
            );
        }
        Err(e) => {
            report(8, false, &format!("unexpected error: {e}"));
        }
    }
}

#[test]
fn criterion_09_figure_one_roots() {
    let r2 = largest_real_root(2.0).unwrap();
    let a43_max = 2.0 * (2.0 * std::f64::consts::PI / 43.0).cos();
    let r43 = largest_real_root(a43_max).unwrap();
    let mut ok = (r2 - 2.20556943040059).abs() < 1e-9 && (r43 - 2.18763964834393).abs() < 1e-9;
    for k in 0..=400 {
        let a = -2.0 + 4.0 * k as f64 / 400.0;
        if largest_real_root(a).unwrap() >= 2.21 {
            ok = false;
            break;
        }
    }
    report(9, ok, "pinned roots at a = 2 and the d = 43 conjugate maximum; all samples < 2.21");
}

#[test]
fn criterion_10_irreducibility_and_house_bound() {
    let mut ok = true;
    for d in (3..=41u64).step_by(2) {
        if irreducibility_certificate(d).unwrap().verdict != IrreducibilityVerdict::Irreducible {
            ok = false;
        }
    }
    for d in (45..=101u64).step_by(2) {
        if !house_bound_check(d).unwrap() {
            ok = false;
        }
    }
    // p₈ = R³ − 1 = (R−1)(R²+R+1); p₄ = R³ + 2R² − 1 = (R+1)(R²+R−1),
    // and the printed variant (R+1)(R²+R+1) is a different polynomial
    let p8 = IntPoly::from_i64(&[-1, 0, 0, 1]);
    let (_, f8) = factor_over_z(&p8).unwrap();
    ok &= f8
        == vec![
            (IntPoly::from_i64(&[-1, 1]), 1),
            (IntPoly::from_i64(&[1, 1, 1]), 1),
        ];
    let p4 = IntPoly::from_i64(&[-1, 0, 2, 1]);
    let (_, f4) = factor_over_z(&p4).unwrap();
    ok &= f4
        == vec![
            (IntPoly::from_i64(&[1, 1]), 1),
            (IntPoly::from_i64(&[-1, 1, 1]), 1),
        ];
    let printed = IntPoly::from_i64(&[1, 1]) * IntPoly::from_i64(&[1, 1, 1]);
    ok &= printed != p4;
    report(
        10,
        ok,
        "certificates for odd 3..41, house bound for odd 45..101, p_4/p_8 factorizations",
    );
}

#[test]
fn criterion_11_condition_star_and_tame_symbol() {
    let star = condition_star(&IntPoly::from_i64(&[4, -7, 4])).unwrap();
    let mut ok = !star.holds
        && star.pairs.len() == 1
        && star.pairs[0].w_degree == 4
        && star.pairs[0].trace_degree == 2;
    let class = tame_symbol(
        1,
        0,
        &BigRational::one(),
        &BigRational::new(BigInt::from(-1), BigInt::from(4)),
        square_in_q_sqrt15,
    )
    .unwrap();
    ok &= class == SquareClass::Nontrivial;
    report(11, ok, "condition (⋆) degree witness 4 vs 2; tame symbol class of -1 nontrivial");
}

#[test]
fn criterion_12_intersection_values() {
    let table = divpoly_table(&default_curve(), 6).unwrap();
    let zp = GaussianInt::new(1, 1);
    let zm = GaussianInt::new(1, -1);
    let mut ok = gaussian_divpoly_eval(&table, 2, &zp).unwrap() == GaussianInt::new(-12, 24);
    for n in 2..=6 {
        ok &= !gaussian_divpoly_eval(&table, n, &zp).unwrap().is_zero();
        ok &= !gaussian_divpoly_eval(&table, n, &zm).unwrap().is_zero();
    }
    report(12, ok, "f_n(1±i) ≠ 0 for n = 2..6 with f_2(1+i) = -12+24i exactly");
}

#[test]
fn criterion_13_order_bound_to_201() {
    let mut ok = true;
    for d in (3..=201u64).step_by(2) {
        if !order_bound_audit(d).unwrap() {
            ok = false;
            break;
        }
    }
    report(13, ok, "every prime p ∤ d of N(c_d) has order 1 or 2 mod d, odd d <= 201");
}
