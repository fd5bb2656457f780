//! Closed-form orders for `GL_n(q)`, its standard Levi subgroups, and the
//! centralizers of unipotent elements, all split into a power of `q` times a
//! prime-to-`q` polynomial.
//!
//! For a unipotent element of Jordan type `λ` the centralizer has reductive
//! part `Π_i GL_{m_i}` over the part multiplicities `m_i` of `λ`, and its
//! unipotent-element count is the fixed power `q^{k(C) + k(C_G)}` of the two
//! `p`-exponents (Steinberg's count applied to the reductive part times the
//! order of the unipotent radical).

use num_bigint::BigInt;

use crate::combinatorics::{Composition, Partition};
use crate::poly::{IntPoly, QAdicOrder};

/// `|GL_n(q)| = q^{n(n−1)/2} · Π_{i=1}^n (q^i − 1)`.
pub fn gl_order(n: u32) -> QAdicOrder {
    let mut prime = IntPoly::one();
    for i in 1..=n {
        prime = &prime * &IntPoly::q_pow_minus_one(i as usize);
    }
    QAdicOrder::new(n as u64 * (n as u64).saturating_sub(1) / 2, prime)
}

/// Order data of the standard Levi subgroup with block sizes `μ`.
#[derive(Clone, Debug)]
pub struct LeviDatum {
    pub mu: Composition,
    /// `|L| = Π_a |GL_{μ_a}(q)|`.
    pub order: QAdicOrder,
    /// `|W_L| = Π_a μ_a!`.
    pub weyl_order: BigInt,
    /// `dim U = Σ_{a<b} μ_a μ_b` for the unipotent radical of the parabolic.
    pub u_dimension: u64,
}

pub fn levi_datum(mu: &Composition) -> LeviDatum {
    let mut order = QAdicOrder::one();
    for &a in mu.parts() {
        order = &order * &gl_order(a);
    }
    LeviDatum {
        order,
        weyl_order: mu.weyl_order(),
        u_dimension: mu.radical_dimension(),
        mu: mu.clone(),
    }
}

/// `|C_G(u_λ)|` for a unipotent of Jordan type `λ` in `GL_n`:
/// `p`-exponent `Σ_i (λ′_i)² − Σ_i m_i(m_i+1)/2` and `p′`-part
/// `Π_i Π_{j=1}^{m_i} (q^j − 1)`.
pub fn centralizer_order(lambda: &Partition) -> QAdicOrder {
    let conj = lambda.conjugate();
    let sq_sum: u64 = conj.parts().iter().map(|&c| (c as u64) * (c as u64)).sum();
    let mut prime = IntPoly::one();
    let mut tri_sum = 0u64;
    for &m in lambda.multiplicities().values() {
        tri_sum += m as u64 * (m as u64 + 1) / 2;
        for j in 1..=m {
            prime = &prime * &IntPoly::q_pow_minus_one(j as usize);
        }
    }
    QAdicOrder::new(sq_sum - tri_sum, prime)
}

/// Centralizer structure of a unipotent of Jordan type `λ`.
#[derive(Clone, Debug)]
pub struct CentralizerDatum {
    pub lambda: Partition,
    /// `|C_G(u_λ)|`.
    pub full_order: QAdicOrder,
    /// Block sizes of the reductive part `C(u) ≅ Π_i GL_{m_i}`, ascending.
    pub reductive_type: Vec<u32>,
    /// `|C(u)| = Π_i |GL_{m_i}(q)|`.
    pub reductive_order: QAdicOrder,
    /// `|C_G(u)_uni| = q^{this}`.
    pub unipotent_count_exponent: u64,
}

pub fn centralizer_datum(lambda: &Partition) -> CentralizerDatum {
    let full_order = centralizer_order(lambda);
    let mults = lambda.multiplicities();
    let reductive_type: Vec<u32> = mults.values().copied().collect();
    let mut reductive_order = QAdicOrder::one();
    for &m in &reductive_type {
        reductive_order = &reductive_order * &gl_order(m);
    }
    // |C_G(u)_uni| = |C(u)_uni| · |R(u)| = |C(u)|_p² · (|C_G(u)|_p / |C(u)|_p)
    let unipotent_count_exponent = reductive_order.p_exponent() + full_order.p_exponent();
    CentralizerDatum {
        lambda: lambda.clone(),
        full_order,
        reductive_type,
        reductive_order,
        unipotent_count_exponent,
    }
}

/// Number of unipotent elements of `GL_n(q)`: `q^{n(n−1)}`.
pub fn unipotent_total(n: u32) -> IntPoly {
    IntPoly::q_pow((n as usize) * (n as usize).saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;
    use num_traits::One;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn gl_order_examples() {
        let g1 = gl_order(1);
        assert_eq!(g1.p_exponent(), 0);
        assert_eq!(g1.prime_part(), &IntPoly::from_i64_coeffs(&[-1, 1]));

        let g2 = gl_order(2);
        assert_eq!(g2.p_exponent(), 1);
        let want = &IntPoly::from_i64_coeffs(&[-1, 1]) * &IntPoly::from_i64_coeffs(&[-1, 0, 1]);
        assert_eq!(g2.prime_part(), &want);

        // |GL_3(2)| = 168, confirmed again by the oracle's brute-force count
        assert_eq!(gl_order(3).to_poly().eval_int(&BigInt::from(2)), BigInt::from(168));
    }

    #[test]
    fn levi_datum_examples() {
        let d = levi_datum(&Composition::new(vec![1, 1]));
        assert_eq!(d.order.p_exponent(), 0);
        let sq = &IntPoly::from_i64_coeffs(&[-1, 1]) * &IntPoly::from_i64_coeffs(&[-1, 1]);
        assert_eq!(d.order.prime_part(), &sq);
        assert_eq!(d.weyl_order, BigInt::one());
        assert_eq!(d.u_dimension, 1);

        let d = levi_datum(&Composition::new(vec![4]));
        assert_eq!(d.order.to_poly(), gl_order(4).to_poly());
        assert_eq!(d.weyl_order, BigInt::from(24));
        assert_eq!(d.u_dimension, 0);

        assert_eq!(levi_datum(&Composition::new(vec![2, 1])).u_dimension, 2);
    }

    #[test]
    fn levi_dimension_identity() {
        // dim G = n² = Σ μ_a² + 2·dim U, with p-exponent Σ μ_a(μ_a−1)/2
        for n in 1..=8u32 {
            for mu in crate::combinatorics::compositions_of(n) {
                let d = levi_datum(&mu);
                let sum_sq: u64 = mu.parts().iter().map(|&a| (a as u64) * (a as u64)).sum();
                assert_eq!(sum_sq + 2 * d.u_dimension, (n as u64) * (n as u64));
                let tri: u64 = mu.parts().iter().map(|&a| (a as u64) * (a as u64 - 1) / 2).sum();
                assert_eq!(d.order.p_exponent(), tri);
            }
        }
    }

    #[test]
    fn centralizer_order_examples() {
        for n in 1..=6u32 {
            let id = centralizer_order(&Partition::new(vec![1; n as usize]));
            assert_eq!(id.to_poly(), gl_order(n).to_poly(), "centralizer of identity in GL_{n}");
        }

        for n in 1..=6u32 {
            let reg = centralizer_order(&p(&[n]));
            assert_eq!(reg.p_exponent(), n as u64 - 1);
            assert_eq!(reg.prime_part(), &IntPoly::from_i64_coeffs(&[-1, 1]));
        }

        assert_eq!(
            centralizer_order(&p(&[2, 1])).to_poly().eval_int(&BigInt::from(2)),
            BigInt::from(8)
        );
    }

    #[test]
    fn centralizer_datum_examples() {
        let d = centralizer_datum(&p(&[1, 1, 1]));
        assert_eq!(d.unipotent_count_exponent, 6); // q^{n(n−1)} = all of G_uni

        let d = centralizer_datum(&p(&[3]));
        assert_eq!(d.reductive_type, vec![1]);
        assert_eq!(d.unipotent_count_exponent, 2);

        let d = centralizer_datum(&p(&[2, 1]));
        assert_eq!(d.reductive_type, vec![1, 1]);
        assert_eq!(d.full_order.p_exponent(), 3);
        assert_eq!(d.unipotent_count_exponent, 3);
    }

    #[test]
    fn class_equation_is_an_exact_polynomial_identity() {
        // Σ_{λ⊢n} |GL_n| / |C_G(u_λ)| = q^{n(n−1)}, every division exact
        for n in 1..=10u32 {
            let g = gl_order(n).to_poly();
            let mut total = IntPoly::zero();
            for lam in partitions_of(n) {
                let class_size = g.exact_div(&centralizer_order(&lam).to_poly()).unwrap();
                total = &total + &class_size;
            }
            assert_eq!(total, unipotent_total(n), "class equation for GL_{n}");
        }
    }

    #[test]
    fn p_exponent_complements_class_dimension() {
        // Σ(λ′_i)² = p-exponent + Σ m_i(m_i+1)/2 and dim(class) = n² − Σ(λ′_i)²
        for n in 1..=10u32 {
            for lam in partitions_of(n) {
                let sq: u64 = lam.conjugate().parts().iter().map(|&c| (c as u64).pow(2)).sum();
                let class_dim = (n as u64).pow(2) - sq;
                let tri: u64 = lam
                    .multiplicities()
                    .values()
                    .map(|&m| m as u64 * (m as u64 + 1) / 2)
                    .sum();
                assert_eq!(
                    centralizer_order(&lam).p_exponent() + class_dim + tri,
                    (n as u64).pow(2),
                    "λ = {lam}"
                );
            }
        }
    }

    #[test]
    fn evaluations_split_cleanly_at_prime_powers() {
        for q0 in [2u32, 3, 4, 5, 7, 8, 9] {
            let q0 = BigInt::from(q0);
            for n in 1..=6u32 {
                for lam in partitions_of(n) {
                    let (_, rest) = centralizer_order(&lam).eval_split(&q0).unwrap();
                    assert!(rest > BigInt::from(0), "p'-part positive at q0={q0}, λ={lam}");
                    let full = centralizer_order(&lam).to_poly().eval_int(&q0);
                    let g = gl_order(n).to_poly().eval_int(&q0);
                    assert!((&g % &full) == BigInt::from(0), "|C| divides |G| at q0={q0}, λ={lam}");
                }
            }
        }
    }
}
