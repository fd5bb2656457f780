//! The class-count assemblies: `k(U, G_uni)` as an exact polynomial in `q`.
//!
//! The main path computes, for `U` the unipotent radical of the standard
//! parabolic with Levi block sizes `μ`,
//!
//! ```text
//! k(U, G_uni) = (1/|W_L|) · |L|_{p′} · Σ_{λ⊢n} (|C(λ)|_p / |C(λ)|_{p′}) ·
//!               Σ_{w∈W_L} (−1)^{l(w)} Q^λ_{type(w)}(q)
//! ```
//!
//! with `C(λ)` the reductive part of the unipotent centralizer. The inner
//! Weyl-group sum is evaluated class-by-class (never element-by-element),
//! and the whole expression is carried as a rational fraction; integrality
//! is asserted only at the end. A failed conversion would falsify the
//! implementation, not the theory, so it is a hard error.
//!
//! `k_via_lemma` reassembles the same count from full centralizer orders and
//! unipotent-element counts. The two assemblies share the Green-polynomial
//! sums but draw their order data from different decompositions (the
//! reductive-part split here, full centralizers and unipotent counts there),
//! so their agreement is a meaningful cross-check rather than a tautology.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::combinatorics::{compositions_of, partitions_of, Composition, Partition};
use crate::green::{tables, Tables};
use crate::groups::{centralizer_datum, levi_datum};
use crate::poly::{IntPoly, RatFraction, RatPoly};
use crate::{Error, Result};

/// Everything `k_unipotent` establishes for one `(n, μ)`.
#[derive(Clone)]
pub struct CountResult {
    pub n: u32,
    pub mu: Composition,
    /// The class-count polynomial `m(q)`.
    pub polynomial: IntPoly,
    /// The `λ`-summand of the main formula, prefactor included, before
    /// summation. Exposed for inspection only; no claim is made that a term
    /// is the class count on a single orbit.
    pub per_class_terms: BTreeMap<Partition, RatFraction>,
    /// `f_U^G(u_λ)`: the number of conjugates of `U` containing a unipotent
    /// of type `λ`, as a polynomial.
    pub f_values: BTreeMap<Partition, IntPoly>,
    /// Coefficients of the polynomial in the `(q−1)` basis, low-to-high.
    pub qminus1_coeffs: Vec<BigInt>,
    /// Whether every `(q−1)`-basis coefficient is nonnegative.
    pub qminus1_nonneg: bool,
}

impl CountResult {
    /// Jordan types with nonzero `f_U^G`, i.e. the classes meeting `U`.
    pub fn support(&self) -> BTreeSet<Partition> {
        self.f_values
            .iter()
            .filter(|(_, f)| !f.is_zero())
            .map(|(lam, _)| lam.clone())
            .collect()
    }
}

fn check_shape(n: u32, mu: &Composition) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if mu.size() != n {
        return Err(Error::SizeMismatch(format!("composition {mu} does not sum to n = {n}")));
    }
    Ok(())
}

// Σ_{w ∈ W_L} (−1)^{l(w)} Q^λ_{type(w)}(q), grouped by W_L-class.
fn signed_green_sum(t: &Tables, mu: &Composition, lambda: &Partition) -> Result<IntPoly> {
    let mut acc = IntPoly::zero();
    for term in mu.signed_cycle_types() {
        let green = t.green.value(lambda, &term.rho)?;
        let coeff = if term.sign >= 0 { term.weight } else { -term.weight };
        acc = &acc + &green.scale(&coeff);
    }
    Ok(acc)
}

/// `f_U^G(u_λ)`: the number of conjugates of `U` containing a fixed
/// unipotent of Jordan type `λ`, as an exact polynomial
/// `(1/(|L|_p · |W_L|)) · Σ_{w∈W_L} (−1)^{l(w)} Q^λ_{type(w)}(q)`.
///
/// Both divisions must be exact; a remainder is a hard error.
pub fn f_polynomial(n: u32, mu: &Composition, lambda: &Partition) -> Result<IntPoly> {
    check_shape(n, mu)?;
    if lambda.size() != n {
        return Err(Error::SizeMismatch(format!("partition {lambda} does not sum to n = {n}")));
    }
    let t = tables(n);
    f_from_inner(&signed_green_sum(&t, mu, lambda)?, mu)
}

fn f_from_inner(inner: &IntPoly, mu: &Composition) -> Result<IntPoly> {
    if inner.is_zero() {
        return Ok(IntPoly::zero());
    }
    let levi = levi_datum(mu);
    let shifted = inner.exact_div(&IntPoly::q_pow(levi.order.p_exponent() as usize))?;
    shifted.exact_div_scalar(&levi.weyl_order)
}

/// The main count: `k(U, G_uni)` for the standard parabolic with Levi block
/// sizes `μ`, with all per-class data retained.
pub fn k_unipotent(n: u32, mu: &Composition) -> Result<CountResult> {
    check_shape(n, mu)?;
    let t = tables(n);
    let levi = levi_datum(mu);
    // |L|_{p'} / |W_L|, the prefactor outside the λ-sum
    let prefactor = RatPoly::from_intpoly(levi.order.prime_part())
        .scale(&BigRational::new(BigInt::one(), levi.weyl_order.clone()));

    let mut per_class_terms = BTreeMap::new();
    let mut f_values = BTreeMap::new();
    let mut total = RatFraction::zero();
    for lambda in partitions_of(n) {
        let inner = signed_green_sum(&t, mu, &lambda)?;
        f_values.insert(lambda.clone(), f_from_inner(&inner, mu)?);

        let cent = centralizer_datum(&lambda);
        let p_part = IntPoly::q_pow(cent.reductive_order.p_exponent() as usize);
        let num = &prefactor * &RatPoly::from_intpoly(&(&p_part * &inner));
        let term =
            RatFraction::new(num, RatPoly::from_intpoly(cent.reductive_order.prime_part()))?;
        total = &total + &term;
        per_class_terms.insert(lambda, term);
    }

    let polynomial = total.to_intpoly()?;
    let qminus1_coeffs = polynomial.rebase(&BigInt::one());
    let qminus1_nonneg = qminus1_coeffs.iter().all(|c| !c.is_negative());
    Ok(CountResult { n, mu: mu.clone(), polynomial, per_class_terms, f_values, qminus1_coeffs, qminus1_nonneg })
}

/// Independent assembly of the same count from full centralizer orders:
/// `k(U, G_uni) = |L| · Σ_λ (|C_G(u_λ)_uni| / |C_G(u_λ)|) · f_U^G(u_λ)`.
pub fn k_via_lemma(n: u32, mu: &Composition) -> Result<IntPoly> {
    check_shape(n, mu)?;
    let t = tables(n);
    let levi_order = levi_datum(mu).order.to_poly();
    let mut total = RatFraction::zero();
    for lambda in partitions_of(n) {
        let f = f_from_inner(&signed_green_sum(&t, mu, &lambda)?, mu)?;
        if f.is_zero() {
            continue;
        }
        let cent = centralizer_datum(&lambda);
        let uni_count = IntPoly::q_pow(cent.unipotent_count_exponent as usize);
        let num = &(&levi_order * &uni_count) * &f;
        total = &total + &RatFraction::from_ratio(&num, &cent.full_order.to_poly())?;
    }
    total.to_intpoly()
}

/// The set of Jordan types `λ` with `f_U^G(u_λ) ≠ 0`: exactly the unipotent
/// classes meeting `U`. Computed, not pre-filtered, so the cancellation in
/// the Green-function sum is exercised rather than assumed.
pub fn vanishing_support(n: u32, mu: &Composition) -> Result<BTreeSet<Partition>> {
    check_shape(n, mu)?;
    let t = tables(n);
    let mut support = BTreeSet::new();
    for lambda in partitions_of(n) {
        if !f_from_inner(&signed_green_sum(&t, mu, &lambda)?, mu)?.is_zero() {
            support.insert(lambda);
        }
    }
    Ok(support)
}

/// The `(q−1)`-basis coefficient vector of a polynomial and whether all
/// entries are nonnegative. Negative entries are reported, never an error:
/// positivity is only conjectured in general.
pub fn qminus1_report(polynomial: &IntPoly) -> (Vec<BigInt>, bool) {
    let coeffs = polynomial.rebase(&BigInt::one());
    let nonneg = coeffs.iter().all(|c| !c.is_negative());
    (coeffs, nonneg)
}

/// One multiset of Levi block sizes, the compositions realizing it, and
/// their (common) class-count polynomial.
#[derive(Clone, Debug)]
pub struct InvarianceRow {
    pub block_sizes: Partition,
    pub compositions: Vec<Composition>,
    pub polynomial: IntPoly,
}

/// Report for the associated-parabolic invariance check.
pub struct InvarianceReport {
    pub n: u32,
    pub rows: Vec<InvarianceRow>,
}

/// Verifies that every composition of `n` realizing the same multiset of
/// block sizes yields the same polynomial (associated parabolics have
/// conjugate Levi subgroups). A mismatch is a hard error naming the pair.
pub fn associated_invariance(n: u32) -> Result<InvarianceReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let mut groups: BTreeMap<Partition, Vec<Composition>> = BTreeMap::new();
    for mu in compositions_of(n) {
        groups.entry(mu.to_partition()).or_default().push(mu);
    }
    let mut rows = Vec::new();
    for (block_sizes, compositions) in groups {
        let first = k_unipotent(n, &compositions[0])?.polynomial;
        for other in &compositions[1..] {
            let poly = k_unipotent(n, other)?.polynomial;
            if poly != first {
                return Err(Error::Mismatch(format!(
                    "associated parabolics disagree: k(U, G_uni) for μ = {} is {} but for μ = {} is {}",
                    compositions[0], first, other, poly
                )));
            }
        }
        rows.push(InvarianceRow { block_sizes, compositions, polynomial: first });
    }
    Ok(InvarianceReport { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{burnside_count, OracleScene, DEFAULT_BUDGET};

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec())
    }

    fn borel(n: u32) -> Composition {
        Composition::new(vec![1; n as usize])
    }

    #[test]
    fn f_polynomial_examples() {
        assert_eq!(f_polynomial(2, &comp(&[1, 1]), &part(&[2])).unwrap(), IntPoly::one());
        assert_eq!(
            f_polynomial(2, &comp(&[1, 1]), &part(&[1, 1])).unwrap(),
            IntPoly::from_i64_coeffs(&[1, 1])
        );
        // trivial radical: only the identity class meets the trivial subgroup
        for n in 2..=5u32 {
            for lam in partitions_of(n) {
                let f = f_polynomial(n, &comp(&[n]), &lam).unwrap();
                if lam == Partition::new(vec![1; n as usize]) {
                    assert_eq!(f, IntPoly::one(), "λ = {lam}");
                } else {
                    assert!(f.is_zero(), "λ = {lam}");
                }
            }
        }
        assert!(f_polynomial(2, &comp(&[1, 1]), &part(&[3])).is_err());
    }

    #[test]
    fn f_values_are_nonnegative_counts_at_primes() {
        for n in 1..=5u32 {
            for mu in compositions_of(n) {
                for lam in partitions_of(n) {
                    let f = f_polynomial(n, &mu, &lam).unwrap();
                    for q0 in [2i64, 3, 5, 7] {
                        let v = f.eval_int(&BigInt::from(q0));
                        assert!(
                            !v.is_negative(),
                            "f_U^G < 0 at q={q0} for n={n}, μ={mu}, λ={lam}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn worked_trace_for_n2_borel() {
        let r = k_unipotent(2, &borel(2)).unwrap();
        assert_eq!(r.polynomial, IntPoly::from_i64_coeffs(&[-1, 2]));
        // per-class terms, prefactor included: q−1 and q
        let reg = r.per_class_terms[&part(&[2])].to_intpoly().unwrap();
        assert_eq!(reg, IntPoly::from_i64_coeffs(&[-1, 1]));
        let id = r.per_class_terms[&part(&[1, 1])].to_intpoly().unwrap();
        assert_eq!(id, IntPoly::from_i64_coeffs(&[0, 1]));
        assert_eq!(r.f_values[&part(&[2])], IntPoly::one());
        assert_eq!(r.f_values[&part(&[1, 1])], IntPoly::from_i64_coeffs(&[1, 1]));
        assert_eq!(r.qminus1_coeffs, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(r.qminus1_nonneg);
    }

    #[test]
    fn small_table_rows() {
        assert_eq!(k_unipotent(2, &borel(2)).unwrap().polynomial, IntPoly::from_i64_coeffs(&[-1, 2]));
        assert_eq!(
            k_unipotent(3, &borel(3)).unwrap().polynomial,
            IntPoly::from_i64_coeffs(&[0, -3, 3, 1])
        );
        assert_eq!(
            k_unipotent(4, &borel(4)).unwrap().polynomial,
            IntPoly::from_i64_coeffs(&[0, 4, -9, 0, 5, 0, 1])
        );
    }

    #[test]
    fn trivial_radical_law() {
        // U = 1: every unipotent element is its own class, k = q^{n(n−1)}
        for n in 1..=6u32 {
            let r = k_unipotent(n, &comp(&[n])).unwrap();
            assert_eq!(r.polynomial, crate::groups::unipotent_total(n), "n = {n}");
            assert_eq!(k_via_lemma(n, &comp(&[n])).unwrap(), r.polynomial);
        }
    }

    #[test]
    fn n1_has_one_class() {
        assert_eq!(k_unipotent(1, &comp(&[1])).unwrap().polynomial, IntPoly::one());
        assert_eq!(k_via_lemma(1, &comp(&[1])).unwrap(), IntPoly::one());
    }

    #[test]
    fn paths_agree_on_all_compositions_up_to_5() {
        for n in 1..=5u32 {
            for mu in compositions_of(n) {
                let a = k_unipotent(n, &mu).unwrap().polynomial;
                let b = k_via_lemma(n, &mu).unwrap();
                assert_eq!(a, b, "paths disagree for n={n}, μ={mu}");
            }
        }
    }

    #[test]
    fn borel_polynomials_have_radical_dimension_degree() {
        // Degree n(n−1)/2 holds for every published row; the leading
        // coefficient is 1 from n = 3 on (the n = 2 row is 2q − 1).
        for n in 2..=7u32 {
            let r = k_unipotent(n, &borel(n)).unwrap();
            let dim = borel(n).radical_dimension();
            assert_eq!(r.polynomial.degree(), Some(dim as usize), "n = {n}");
            if n >= 3 {
                assert_eq!(r.polynomial.leading_coeff().unwrap(), &BigInt::one(), "n = {n}");
            }
        }
    }

    #[test]
    fn vanishing_support_examples() {
        let all3: BTreeSet<Partition> = partitions_of(3).into_iter().collect();
        assert_eq!(vanishing_support(3, &borel(3)).unwrap(), all3);
        assert_eq!(
            vanishing_support(2, &comp(&[2])).unwrap(),
            BTreeSet::from([part(&[1, 1])])
        );
        // support must agree with the stored f_values
        for n in 1..=5u32 {
            for mu in compositions_of(n) {
                let r = k_unipotent(n, &mu).unwrap();
                assert_eq!(vanishing_support(n, &mu).unwrap(), r.support(), "n={n} μ={mu}");
            }
        }
    }

    #[test]
    fn support_matches_oracle_radical_scan() {
        for p in [2u64, 3] {
            for mu in compositions_of(3) {
                let support = vanishing_support(3, &mu).unwrap();
                for lam in partitions_of(3) {
                    let meets =
                        crate::oracle::class_meets_radical(&lam, &mu, p, DEFAULT_BUDGET).unwrap();
                    assert_eq!(
                        support.contains(&lam),
                        meets,
                        "support vs oracle for λ={lam}, μ={mu}, p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn qminus1_reports() {
        let (c2, ok2) = qminus1_report(&k_unipotent(2, &borel(2)).unwrap().polynomial);
        assert_eq!(c2, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(ok2);
        let (c3, ok3) = qminus1_report(&k_unipotent(3, &borel(3)).unwrap().polynomial);
        assert_eq!(c3, vec![BigInt::from(1), BigInt::from(6), BigInt::from(6), BigInt::from(1)]);
        assert!(ok3);
        let (_, ok4) = qminus1_report(&k_unipotent(4, &borel(4)).unwrap().polynomial);
        assert!(ok4);
    }

    #[test]
    fn associated_invariance_small() {
        let report = associated_invariance(4).unwrap();
        // one row per partition of 4
        assert_eq!(report.rows.len(), 5);
        for row in &report.rows {
            let expected = match row.block_sizes.parts() {
                [2, 1, 1] => 3,
                [3, 1] => 2,
                _ => 1,
            };
            assert_eq!(row.compositions.len(), expected, "{}", row.block_sizes);
        }
        // the (2,1) and (1,2) parabolics of GL_3 are associated
        let r = associated_invariance(3).unwrap();
        let mixed = r.rows.iter().find(|row| row.block_sizes == part(&[2, 1])).unwrap();
        assert_eq!(mixed.compositions.len(), 2);
    }

    #[test]
    fn matches_oracle_burnside_at_small_primes() {
        for (n, p) in [(2u32, 2u64), (2, 3), (3, 2)] {
            for mu in compositions_of(n) {
                let symbolic =
                    k_unipotent(n, &mu).unwrap().polynomial.eval_int(&BigInt::from(p));
                let scene = OracleScene::build(n, p, &mu, DEFAULT_BUDGET).unwrap();
                let brute = burnside_count(&scene).unwrap();
                assert_eq!(symbolic, BigInt::from(brute), "n={n} p={p} μ={mu}");
            }
        }
    }
}
