//! Partitions, compositions, and the symmetric-group class bookkeeping that
//! indexes every other computation in the crate.
//!
//! Partitions serve double duty: as Jordan types `λ` of unipotent classes and
//! as cycle types `ρ` of Weyl-group elements. Compositions record the ordered
//! block sizes `μ` of a standard Levi subgroup. The canonical order on
//! partitions of `n` is reverse-lexicographic, `(n)` first and `(1,…,1)`
//! last; every table in the crate is indexed in this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::{Error, Result};

/// Largest `n` the partition machinery accepts. Parts are machine integers;
/// only polynomial coefficients need arbitrary precision.
pub const MAX_N: u32 = 64;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    ///
    /// Panics when parts increase, contain zero, or sum past [`MAX_N`];
    /// those are programming errors, not data errors.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        let size: u32 = parts.iter().sum();
        assert!(size <= MAX_N, "partition size {size} exceeds supported maximum {MAX_N}");
        Partition { parts }
    }

    /// Builds a partition from parts in any order (zeros discarded).
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned; 0 for the empty partition.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate partition `λ′` with `λ′_i = #{j : λ_j ≥ i}`. Involution.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::new();
        let mut i = 1;
        loop {
            let count = self.parts.iter().filter(|&&p| p >= i).count() as u32;
            if count == 0 {
                break;
            }
            parts.push(count);
            i += 1;
        }
        Partition { parts }
    }

    /// The statistic `n(λ) = Σ_i (i−1)·λ_i` (rows counted from 1).
    ///
    /// Equals `Σ_i C(λ′_i, 2)`; it is the degree of the Green polynomial
    /// `Q^λ_{(1^n)}` and the top charge on tableaux of content `λ`.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Part multiplicities `m_i = #{j : λ_j = i}`, keyed by part value.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Centralizer order `z_ρ = Π_i i^{m_i} · m_i!` of a permutation of cycle
    /// type `ρ` in `S_n`.
    pub fn z_stat(&self) -> BigInt {
        let mut z = BigInt::one();
        for (&i, &m) in &self.multiplicities() {
            for _ in 0..m {
                z *= BigInt::from(i);
            }
            z *= factorial(m);
        }
        z
    }

    /// Dominance order: `self ⊴ other` iff every partial sum of `self` is at
    /// most the corresponding partial sum of `other`. Both partitions must
    /// have the same size.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(format!(
                "dominance comparison needs equal sizes: |{self}| = {} vs |{other}| = {}",
                self.size(),
                other.size()
            )));
        }
        let k = self.len().max(other.len());
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..k {
            a += *self.parts.get(i).unwrap_or(&0) as u64;
            b += *other.parts.get(i).unwrap_or(&0) as u64;
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sign `(−1)^{n − ℓ(ρ)}` of any permutation with this cycle type.
    pub fn permutation_sign(&self) -> i8 {
        if (self.size() as usize - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Comma-joined parts, `-` for the empty partition. Used by the cache
    /// file format and CLI arguments.
    pub fn to_compact_string(&self) -> String {
        if self.parts.is_empty() {
            "-".to_string()
        } else {
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses the [`to_compact_string`](Self::to_compact_string) form.
    pub fn parse_compact(s: &str) -> Result<Partition> {
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad partition part {tok:?} in {s:?}")))?;
            if p == 0 {
                return Err(Error::InvalidInput(format!("zero part in partition {s:?}")));
            }
            parts.push(p);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition parts must be weakly decreasing: {s:?}"
            )));
        }
        if parts.iter().sum::<u32>() > MAX_N {
            return Err(Error::InvalidInput(format!("partition {s:?} exceeds size {MAX_N}")));
        }
        Ok(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Canonical (reverse-lexicographic) order: (n) sorts first, (1^n) last.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n` in the canonical reverse-lexicographic order.
///
/// The count equals the partition number `p(n)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    assert!(n <= MAX_N, "partitions_of({n}) exceeds supported maximum {MAX_N}");
    let mut out = Vec::new();
    let mut stack = Vec::new();
    emit_partitions(n, n, &mut stack, &mut out);
    out
}

fn emit_partitions(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: stack.clone() });
        return;
    }
    for first in (1..=remaining.min(max_part)).rev() {
        stack.push(first);
        emit_partitions(remaining - first, first, stack, out);
        stack.pop();
    }
}

/// A composition: ordered positive parts. Distinct orderings of the same
/// multiset are distinct values, so conjugacy statements about associated
/// parabolics stay testable instead of holding by construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Builds a composition from positive parts in the given order.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "composition parts must be positive");
        let size: u32 = parts.iter().sum();
        assert!(size <= MAX_N, "composition size {size} exceeds supported maximum {MAX_N}");
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The underlying multiset of block sizes, as a partition.
    pub fn to_partition(&self) -> Partition {
        Partition::from_unsorted(self.parts.clone())
    }

    /// `|W_L| = Π_a μ_a!`, the order of the Levi Weyl group `Π_a S_{μ_a}`.
    pub fn weyl_order(&self) -> BigInt {
        self.parts.iter().map(|&a| factorial(a)).product()
    }

    /// `dim U = Σ_{a<b} μ_a μ_b`, the dimension of the unipotent radical of
    /// the standard parabolic with these block sizes.
    pub fn radical_dimension(&self) -> u64 {
        let mut dim = 0u64;
        for a in 0..self.parts.len() {
            for b in (a + 1)..self.parts.len() {
                dim += self.parts[a] as u64 * self.parts[b] as u64;
            }
        }
        dim
    }

    /// The signed conjugacy-class terms of `W_L = Π_a S_{μ_a}`: one term per
    /// tuple of partitions `(ρ^(1) ⊢ μ_1, …, ρ^(k) ⊢ μ_k)`.
    ///
    /// For any class function `g` on cycle types,
    /// `Σ_terms weight·sign·g(rho) = Σ_{w ∈ W_L} (−1)^{l(w)} g(type(w))`.
    pub fn signed_cycle_types(&self) -> Vec<SignedCycleTypeTerm> {
        let block_types: Vec<Vec<Partition>> =
            self.parts.iter().map(|&a| partitions_of(a)).collect();
        let mut terms = Vec::new();
        let mut choice = vec![0usize; block_types.len()];
        loop {
            let mut concat: Vec<u32> = Vec::new();
            let mut weight = BigInt::one();
            let mut sign = 1i8;
            for (a, &c) in choice.iter().enumerate() {
                let rho_a = &block_types[a][c];
                concat.extend_from_slice(rho_a.parts());
                // class size of type ρ^(a) in S_{μ_a}
                weight *= factorial(self.parts[a]) / rho_a.z_stat();
                sign *= rho_a.permutation_sign();
            }
            terms.push(SignedCycleTypeTerm {
                rho: Partition::from_unsorted(concat),
                weight,
                sign,
            });
            // odometer over the tuple of block partitions
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return terms;
                }
                choice[i] += 1;
                if choice[i] < block_types[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Comma-joined parts, `-` when empty.
    pub fn to_compact_string(&self) -> String {
        if self.parts.is_empty() {
            "-".to_string()
        } else {
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses comma-joined positive parts, e.g. `"2,1,1"`.
    pub fn parse_compact(s: &str) -> Result<Composition> {
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u32 = tok.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("bad composition part {tok:?} in {s:?}"))
            })?;
            if p == 0 {
                return Err(Error::InvalidInput(format!("zero part in composition {s:?}")));
            }
            parts.push(p);
        }
        if parts.iter().sum::<u32>() > MAX_N {
            return Err(Error::InvalidInput(format!("composition {s:?} exceeds size {MAX_N}")));
        }
        Ok(Composition { parts })
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All `2^{n−1}` compositions of `n ≥ 1`, in lexicographic part order.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    emit_compositions(n, &mut stack, &mut out);
    out
}

fn emit_compositions(remaining: u32, stack: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if remaining == 0 {
        out.push(Composition { parts: stack.clone() });
        return;
    }
    for first in 1..=remaining {
        stack.push(first);
        emit_compositions(remaining - first, stack, out);
        stack.pop();
    }
}

/// One conjugacy class of `W_L = Π_a S_{μ_a}`, recorded by its concatenated
/// cycle type, its size in `W_L`, and the common sign `(−1)^{l(w)}` of its
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCycleTypeTerm {
    /// Sorted concatenation of the per-block cycle types; a partition of `n`.
    pub rho: Partition,
    /// Number of `w ∈ W_L` with this tuple of block types.
    pub weight: BigInt,
    /// `+1` or `−1`.
    pub sign: i8,
}

pub(crate) fn factorial(n: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    /// Independent partition-number oracle: Euler's pentagonal recurrence.
    fn pentagonal_p(n: usize) -> BigInt {
        let mut table = vec![BigInt::zero(); n + 1];
        table[0] = BigInt::one();
        for i in 1..=n {
            let mut sum = BigInt::zero();
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                sum += &sign * &table[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    sum += &sign * &table[i - g2];
                }
                k += 1;
            }
            table[i] = sum;
        }
        table[n].clone()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn partitions_of_zero_is_the_empty_partition() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
    }

    #[test]
    fn partitions_of_four_in_canonical_order() {
        let got = partitions_of(4);
        let want = vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])];
        assert_eq!(got, want);
    }

    #[test]
    fn partition_counts_match_pentagonal_recurrence_up_to_12() {
        for n in 0..=12u32 {
            let count = BigInt::from(partitions_of(n).len());
            assert_eq!(count, pentagonal_p(n as usize), "p({n})");
        }
        // frozen spot value from the recurrence
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn canonical_order_is_strictly_increasing_under_ord() {
        for n in 0..=9u32 {
            let ps = partitions_of(n);
            for w in ps.windows(2) {
                assert!(w[0] < w[1], "{:?} should precede {:?}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        // hand transpose of the Young diagram
        assert_eq!(p(&[4, 2, 1]).conjugate(), p(&[3, 2, 1, 1]));
    }

    #[test]
    fn conjugate_is_an_involution_up_to_12() {
        for n in 0..=12u32 {
            for lam in partitions_of(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn n_stat_examples_and_binomial_identity() {
        assert_eq!(p(&[5]).n_stat(), 0);
        assert_eq!(p(&[1, 1]).n_stat(), 1);
        assert_eq!(p(&[2, 2]).n_stat(), 2);
        // n(λ) = Σ_i C(λ′_i, 2)
        for n in 0..=10u32 {
            for lam in partitions_of(n) {
                let via_conjugate: u64 = lam
                    .conjugate()
                    .parts()
                    .iter()
                    .map(|&c| (c as u64) * (c as u64 - 1) / 2)
                    .sum();
                assert_eq!(lam.n_stat(), via_conjugate, "λ = {lam}");
            }
        }
    }

    #[test]
    fn multiplicities_examples() {
        assert_eq!(p(&[2, 1]).multiplicities(), BTreeMap::from([(2, 1), (1, 1)]));
        assert_eq!(p(&[1, 1, 1]).multiplicities(), BTreeMap::from([(1, 3)]));
        assert_eq!(p(&[3, 3, 1]).multiplicities(), BTreeMap::from([(3, 2), (1, 1)]));
    }

    #[test]
    fn z_stat_examples() {
        assert_eq!(p(&[1, 1, 1]).z_stat(), BigInt::from(6));
        assert_eq!(p(&[3]).z_stat(), BigInt::from(3));
        assert_eq!(p(&[2, 1]).z_stat(), BigInt::from(2));
    }

    #[test]
    fn class_equation_of_sn_up_to_10() {
        for n in 1..=10u32 {
            let total: BigInt = partitions_of(n)
                .iter()
                .map(|rho| factorial(n) / rho.z_stat())
                .sum();
            assert_eq!(total, factorial(n), "class equation of S_{n}");
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[1, 1, 1]).dominance_leq(&p(&[3])).unwrap());
        assert!(!p(&[3]).dominance_leq(&p(&[1, 1, 1])).unwrap());
        assert!(p(&[2, 2]).dominance_leq(&p(&[3, 1])).unwrap());
        assert!(!p(&[3, 1]).dominance_leq(&p(&[2, 2])).unwrap());
        assert!(matches!(
            p(&[2]).dominance_leq(&p(&[1, 1, 1])),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn signed_cycle_types_examples() {
        let c11 = Composition::new(vec![1, 1]);
        let terms = c11.signed_cycle_types();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].rho, p(&[1, 1]));
        assert_eq!(terms[0].weight, BigInt::one());
        assert_eq!(terms[0].sign, 1);

        let c2 = Composition::new(vec![2]);
        let mut terms = c2.signed_cycle_types();
        terms.sort_by(|a, b| a.rho.cmp(&b.rho));
        assert_eq!(terms.len(), 2);
        assert_eq!((terms[0].rho.clone(), terms[0].sign), (p(&[2]), -1));
        assert_eq!((terms[1].rho.clone(), terms[1].sign), (p(&[1, 1]), 1));

        let c21 = Composition::new(vec![2, 1]);
        let mut terms = c21.signed_cycle_types();
        terms.sort_by(|a, b| a.rho.cmp(&b.rho));
        assert_eq!(terms.len(), 2);
        assert_eq!((terms[0].rho.clone(), terms[0].sign), (p(&[2, 1]), -1));
        assert_eq!(terms[0].weight, BigInt::one());
        assert_eq!((terms[1].rho.clone(), terms[1].sign), (p(&[1, 1, 1]), 1));
        assert_eq!(terms[1].weight, BigInt::one());
    }

    #[test]
    fn signed_cycle_type_weights_sum_to_weyl_order() {
        for n in 1..=8u32 {
            for mu in compositions_of(n) {
                let total: BigInt =
                    mu.signed_cycle_types().into_iter().map(|t| t.weight).sum();
                assert_eq!(total, mu.weyl_order(), "μ = {mu}");
            }
        }
    }

    #[test]
    fn signed_sum_of_ones_detects_sign_character() {
        // Σ weight·sign = Π_a (#even − #odd permutations of S_{μ_a}):
        // zero as soon as some block has μ_a ≥ 2, and 1 for μ = (1,…,1).
        for n in 1..=7u32 {
            for mu in compositions_of(n) {
                let total: BigInt = mu
                    .signed_cycle_types()
                    .into_iter()
                    .map(|t| t.weight * BigInt::from(t.sign))
                    .sum();
                if mu.parts().iter().all(|&a| a == 1) {
                    assert_eq!(total, BigInt::one(), "μ = {mu}");
                } else {
                    assert_eq!(total, BigInt::zero(), "μ = {mu}");
                }
            }
        }
    }

    #[test]
    fn compositions_count_and_radical_dimension() {
        assert_eq!(compositions_of(5).len(), 16);
        let c = Composition::new(vec![2, 1]);
        assert_eq!(c.radical_dimension(), 2);
        assert_eq!(Composition::new(vec![1, 1]).radical_dimension(), 1);
        assert_eq!(Composition::new(vec![4]).radical_dimension(), 0);
        assert_eq!(c.to_partition(), p(&[2, 1]));
        assert_eq!(Composition::new(vec![1, 2]).to_partition(), p(&[2, 1]));
    }

    #[test]
    fn compact_round_trip() {
        for n in 0..=6u32 {
            for lam in partitions_of(n) {
                let s = lam.to_compact_string();
                assert_eq!(Partition::parse_compact(&s).unwrap(), lam);
            }
        }
        assert_eq!(
            Composition::parse_compact("2,1,1").unwrap(),
            Composition::new(vec![2, 1, 1])
        );
        assert!(Partition::parse_compact("1,2").is_err());
        assert!(Composition::parse_compact("1,0").is_err());
    }
}
