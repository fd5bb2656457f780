//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its evidence (visible with `--nocapture`).
//!
//! Everything here is exact integer or exact polynomial equality; there are
//! no tolerances anywhere.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use kuni::combinatorics::{compositions_of, partitions_of, Composition, Partition};
use kuni::counting::{associated_invariance, k_unipotent, k_via_lemma};
use kuni::green::tables;
use kuni::groups::{centralizer_order, gl_order, unipotent_total};
use kuni::oracle::{
    burnside_count, commuting_variety_count, flag_fixed_points, OracleScene, DEFAULT_BUDGET,
};
use kuni::poly::IntPoly;
use kuni::table1::Table1Corpus;

fn borel(n: u32) -> Composition {
    Composition::new(vec![1; n as usize])
}

/// Criterion 1: the nine published Borel polynomials are reproduced
/// coefficient-exactly, within the stated time budget.
#[test]
fn criterion_01_table_reproduction() {
    let corpus = Table1Corpus::get();
    let start = Instant::now();
    let mut through_8 = None;
    for (n, expected) in corpus.rows() {
        let computed = k_unipotent(n, &borel(n)).unwrap().polynomial;
        assert_eq!(&computed, expected, "published row n={n}");
        if n == 8 {
            through_8 = Some(start.elapsed());
        }
    }
    let elapsed = start.elapsed();
    let through_8 = through_8.unwrap();
    assert!(through_8.as_secs() < 10, "n ≤ 8 must finish within 10 s, took {through_8:?}");
    assert!(elapsed.as_secs() < 60, "n ≤ 10 must finish within 60 s, took {elapsed:?}");
    println!(
        "PASS criterion 1: table rows n=2..10 coefficient-exact (n ≤ 8 in {through_8:?}, all in {elapsed:?})"
    );
}

/// Criterion 2: Borel-case oracle agreement on the full in-budget grid,
/// with the published evaluations pinned explicitly.
#[test]
fn criterion_02_oracle_agreement_borel() {
    let pinned: &[(u32, u64, Option<u128>)] = &[
        (2, 2, Some(3)),
        (2, 3, Some(5)),
        (2, 5, Some(9)),
        (3, 2, None),
        (3, 3, None),
        (3, 5, None),
        (4, 2, Some(116)),
    ];
    let start = Instant::now();
    for &(n, p, expected) in pinned {
        let scene = OracleScene::build(n, p, &borel(n), DEFAULT_BUDGET).unwrap();
        let brute = burnside_count(&scene).unwrap();
        if let Some(e) = expected {
            assert_eq!(brute, e, "published evaluation at (n,p)=({n},{p})");
        }
        let symbolic = k_unipotent(n, &borel(n)).unwrap().polynomial.eval_int(&BigInt::from(p));
        assert_eq!(symbolic, BigInt::from(brute), "(n,p)=({n},{p})");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 2 budget is 60 s, took {elapsed:?}");
    println!("PASS criterion 2: Borel oracle grid (incl. 3, 5, 9, 116) in {elapsed:?}");
}

/// Criterion 3: non-Borel oracle agreement — every composition of n ≤ 3 at
/// p ∈ {2,3,5} and every composition of 4 at p = 2.
/// Criterion 4 (commuting-variety identity) is asserted on each scene.
#[test]
fn criterion_03_and_04_oracle_agreement_all_compositions() {
    let start = Instant::now();
    let mut scenes = 0usize;
    let mut grid: Vec<(u32, u64)> = Vec::new();
    for n in 1..=3u32 {
        for p in [2u64, 3, 5] {
            grid.push((n, p));
        }
    }
    grid.push((4, 2));
    for (n, p) in grid {
        for mu in compositions_of(n) {
            let scene = OracleScene::build(n, p, &mu, DEFAULT_BUDGET).unwrap();
            let brute = burnside_count(&scene).unwrap();
            let symbolic = k_unipotent(n, &mu).unwrap().polynomial.eval_int(&BigInt::from(p));
            assert_eq!(symbolic, BigInt::from(brute), "(n,p,μ)=({n},{p},{mu})");
            // criterion 4: |𝒞(U, G_uni)| = |U| · k(U, G_uni), exactly
            let pairs = commuting_variety_count(&scene);
            assert_eq!(
                pairs,
                scene.radical().len() as u128 * brute,
                "commuting-variety identity at (n,p,μ)=({n},{p},{mu})"
            );
            scenes += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "criterion 3 budget is 2 min, took {elapsed:?}");
    println!("PASS criteria 3+4: {scenes} oracle scenes agree, commuting identity exact, in {elapsed:?}");
}

/// Criterion 5: Steinberg/class-equation identity as exact polynomials for
/// n ≤ 10, every division exact.
#[test]
fn criterion_05_class_equation() {
    for n in 1..=10u32 {
        let g = gl_order(n).to_poly();
        let mut total = IntPoly::zero();
        for lam in partitions_of(n) {
            let class_size = g
                .exact_div(&centralizer_order(&lam).to_poly())
                .expect("class size division is exact");
            total = &total + &class_size;
        }
        assert_eq!(total, unipotent_total(n), "Σ |GL_{n}|/a_λ = q^{{n(n−1)}}");
    }
    println!("PASS criterion 5: class equation exact for n = 1..10");
}

/// Criterion 6: associated parabolics (equal block-size multisets) give
/// identical polynomials for n ≤ 6.
#[test]
fn criterion_06_associated_invariance() {
    let mut groups = 0usize;
    for n in 1..=6u32 {
        let report = associated_invariance(n).unwrap();
        groups += report.rows.len();
        for row in &report.rows {
            assert!(!row.compositions.is_empty());
        }
    }
    println!("PASS criterion 6: {groups} block-size multisets, each with one polynomial");
}

/// Criterion 7: integrality — the full sweep of conversions succeeds and
/// the per-class fraction sum reconverts to the same polynomial.
#[test]
fn criterion_07_integrality() {
    let mut runs = 0usize;
    for n in 1..=6u32 {
        for mu in compositions_of(n) {
            let r = k_unipotent(n, &mu).expect("conversion to ℤ[q] must succeed");
            let mut sum = kuni::poly::RatFraction::zero();
            for term in r.per_class_terms.values() {
                sum = &sum + term;
            }
            let again = sum.to_intpoly().expect("per-class sum is integral");
            assert_eq!(again, r.polynomial, "n={n} μ={mu}");
            runs += 1;
        }
    }
    for n in 7..=10u32 {
        k_unipotent(n, &borel(n)).expect("conversion to ℤ[q] must succeed");
        runs += 1;
    }
    println!("PASS criterion 7: {runs} assemblies converted to ℤ[q] with no nontrivial denominator");
}

/// Criterion 8: Green-function convention pinning — flag fixed points for
/// all λ ⊢ n ≤ 3 at p ∈ {2,3,5}, and Q^(n)_ρ = 1 symbolically for n ≤ 10.
#[test]
fn criterion_08_green_convention() {
    for n in 1..=3u32 {
        let one_n = Partition::new(vec![1; n as usize]);
        for p in [2u64, 3, 5] {
            for lam in partitions_of(n) {
                let oracle = flag_fixed_points(&lam, p).unwrap();
                let symbolic =
                    kuni::green::green_polynomial(&lam, &one_n).unwrap().eval_int(&BigInt::from(p));
                assert_eq!(BigInt::from(oracle), symbolic, "λ={lam}, p={p}");
            }
        }
    }
    for n in 1..=10u32 {
        let t = tables(n);
        let row_n = Partition::new(vec![n]);
        for rho in t.green.parts() {
            assert_eq!(t.green.value(&row_n, rho).unwrap(), &IntPoly::one(), "Q^({n})_{rho}");
        }
    }
    println!("PASS criterion 8: flag counts pin Q^λ_(1^n) for n ≤ 3; Q^(n)_ρ = 1 for n ≤ 10");
}

/// Criterion 9: all nine Borel polynomials have nonnegative coefficients in
/// the (q−1) basis; non-Borel cases are reported, not asserted.
#[test]
fn criterion_09_qminus1_positivity() {
    for n in 2..=10u32 {
        let r = k_unipotent(n, &borel(n)).unwrap();
        assert!(
            r.qminus1_nonneg,
            "Borel n={n} has a negative (q−1)-basis coefficient: {:?}",
            r.qminus1_coeffs
        );
    }
    // report (no assertion) for the non-Borel cases at small n
    let mut negatives: Vec<String> = Vec::new();
    for n in 2..=5u32 {
        for mu in compositions_of(n) {
            let r = k_unipotent(n, &mu).unwrap();
            if !r.qminus1_nonneg {
                negatives.push(format!("(n={n}, μ={mu})"));
            }
        }
    }
    let note = if negatives.is_empty() {
        "all non-Borel cases n ≤ 5 nonnegative too".to_string()
    } else {
        format!("non-Borel negatives observed at {}", negatives.join(", "))
    };
    println!("PASS criterion 9: Borel n=2..10 nonnegative in (q−1); {note}");
}

/// Criterion 10: the two assembly paths agree exactly for every composition
/// of n ≤ 6 and for the Borel case up to n = 10.
#[test]
fn criterion_10_path_equality() {
    let mut pairs = 0usize;
    for n in 1..=6u32 {
        for mu in compositions_of(n) {
            let a = k_unipotent(n, &mu).unwrap().polynomial;
            let b = k_via_lemma(n, &mu).unwrap();
            assert_eq!(a, b, "n={n}, μ={mu}");
            pairs += 1;
        }
    }
    for n in 7..=10u32 {
        let a = k_unipotent(n, &borel(n)).unwrap().polynomial;
        let b = k_via_lemma(n, &borel(n)).unwrap();
        assert_eq!(a, b, "Borel n={n}");
        pairs += 1;
    }
    println!("PASS criterion 10: both assemblies identical on {pairs} inputs");
}

/// Supporting check, pinned by criterion 1's data: every Borel polynomial
/// has degree dim U = n(n−1)/2, with leading coefficient 1 from n = 3 on
/// (the published n = 2 row is 2q − 1), and support over all of the
/// partitions while the trivial radical supports only the identity class.
#[test]
fn degree_and_support_facts() {
    for n in 2..=10u32 {
        let r = k_unipotent(n, &borel(n)).unwrap();
        assert_eq!(r.polynomial.degree(), Some((n as usize) * (n as usize - 1) / 2));
        if n >= 3 {
            assert!(r.polynomial.leading_coeff().unwrap().is_one());
        }
    }
    for n in 1..=5u32 {
        let all: BTreeSet<Partition> = partitions_of(n).into_iter().collect();
        assert_eq!(k_unipotent(n, &borel(n)).unwrap().support(), all);
        let only_id: BTreeSet<Partition> =
            [Partition::new(vec![1; n as usize])].into_iter().collect();
        assert_eq!(k_unipotent(n, &Composition::new(vec![n])).unwrap().support(), only_id);
        for mu in compositions_of(n) {
            let r = k_unipotent(n, &mu).unwrap();
            for q0 in [2i64, 3, 5, 7] {
                for f in r.f_values.values() {
                    assert!(!f.eval_int(&BigInt::from(q0)).is_negative());
                }
            }
        }
    }
    println!("PASS degree/support facts: Borel degree law and radical supports hold");
}
