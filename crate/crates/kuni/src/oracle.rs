//! Brute-force ground truth over prime fields.
//!
//! Everything here works by enumeration: unipotent elements of `GL_n(F_p)`
//! are found by scanning all `p^{n²}` matrices, class counts come straight
//! from the Burnside fixed-point sum, and centralizers are enumerated from
//! the linear commutant system. Nothing is shared with the symbolic path —
//! the whole point is independence.
//!
//! Budgets are explicit element counts; exceeding one is a refusal, never a
//! silent truncation or approximation.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::combinatorics::{Composition, Partition};
use crate::{Error, Result};

/// Default enumeration budget: covers `n ≤ 3` with `p ≤ 7` and `n = 4` with
/// `p ≤ 3`.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// An `n×n` matrix over the prime field `F_p`, entries reduced into `[0,p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixOverFp {
    n: usize,
    p: u64,
    entries: Vec<u64>, // row-major
}

impl MatrixOverFp {
    pub fn new(n: usize, p: u64, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n);
        let entries = entries.into_iter().map(|e| e % p).collect();
        MatrixOverFp { n, p, entries }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = MatrixOverFp { n, p, entries: vec![0; n * n] };
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    /// Jordan-form representative of type `λ`: block-diagonal upper Jordan
    /// blocks with eigenvalue 1, block sizes the parts of `λ`.
    pub fn jordan_representative(lambda: &Partition, p: u64) -> Self {
        let n = lambda.size() as usize;
        let mut m = MatrixOverFp::identity(n, p);
        let mut offset = 0usize;
        for &part in lambda.parts() {
            for k in 0..(part as usize - 1) {
                let i = offset + k;
                m.entries[i * n + i + 1] = 1;
            }
            offset += part as usize;
        }
        m
    }

    pub fn mul(&self, rhs: &MatrixOverFp) -> MatrixOverFp {
        debug_assert_eq!(self.n, rhs.n);
        debug_assert_eq!(self.p, rhs.p);
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        for e in out.iter_mut() {
            *e %= self.p;
        }
        MatrixOverFp { n, p: self.p, entries: out }
    }

    pub fn commutes_with(&self, rhs: &MatrixOverFp) -> bool {
        let n = self.n;
        let p = self.p;
        // compare (self·rhs) and (rhs·self) entrywise without allocating
        for i in 0..n {
            for j in 0..n {
                let mut a = 0u64;
                let mut b = 0u64;
                for k in 0..n {
                    a += self.entries[i * n + k] * rhs.entries[k * n + j];
                    b += rhs.entries[i * n + k] * self.entries[k * n + j];
                }
                if a % p != b % p {
                    return false;
                }
            }
        }
        true
    }

    fn sub_identity(&self) -> MatrixOverFp {
        let mut m = self.clone();
        for i in 0..self.n {
            let d = &mut m.entries[i * self.n + i];
            *d = (*d + self.p - 1) % self.p;
        }
        m
    }

    /// True when `(x − I)^n = 0`.
    pub fn is_unipotent(&self) -> bool {
        let y = self.sub_identity();
        let mut acc = y.clone();
        // (x−I)^n via repeated multiplication; n is tiny
        for _ in 1..self.n {
            if acc.entries.iter().all(|&e| e == 0) {
                return true;
            }
            acc = acc.mul(&y);
        }
        acc.entries.iter().all(|&e| e == 0)
    }

    /// Rank over `F_p` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let p = self.p;
        let mut m = self.entries.clone();
        let mut rank = 0usize;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| m[r * n + col] != 0);
            let Some(pivot) = pivot else { continue };
            for j in 0..n {
                m.swap(pivot * n + j, rank * n + j);
            }
            let inv = inv_mod(m[rank * n + col], p);
            for j in 0..n {
                m[rank * n + j] = m[rank * n + j] * inv % p;
            }
            for r in 0..n {
                if r != rank && m[r * n + col] != 0 {
                    let f = m[r * n + col];
                    for j in 0..n {
                        m[r * n + j] = (m[r * n + j] + (p - f % p) * m[rank * n + j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Inverse, when it exists, by Gauss–Jordan on the augmented matrix.
    pub fn inverse(&self) -> Option<MatrixOverFp> {
        let n = self.n;
        let p = self.p;
        let mut left = self.entries.clone();
        let mut right = MatrixOverFp::identity(n, p).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| left[r * n + col] != 0)?;
            for j in 0..n {
                left.swap(pivot * n + j, col * n + j);
                right.swap(pivot * n + j, col * n + j);
            }
            let inv = inv_mod(left[col * n + col], p);
            for j in 0..n {
                left[col * n + j] = left[col * n + j] * inv % p;
                right[col * n + j] = right[col * n + j] * inv % p;
            }
            for r in 0..n {
                if r != col && left[r * n + col] != 0 {
                    let f = left[r * n + col];
                    for j in 0..n {
                        left[r * n + j] = (left[r * n + j] + (p - f) * left[col * n + j]) % p;
                        right[r * n + j] = (right[r * n + j] + (p - f) * right[col * n + j]) % p;
                    }
                }
            }
        }
        Some(MatrixOverFp { n, p, entries: right })
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime, a ≠ 0 mod p
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "inv_mod of non-unit {a} mod {p}");
    ((t % p as i64 + p as i64) % p as i64) as u64
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// All unipotent elements of `GL_n(F_p)`, i.e. the `x` with `(x−I)^n = 0`,
/// in ascending row-major base-`p` encoding order.
///
/// Refuses (never truncates) when `p^{n²}` exceeds `budget`.
pub fn enumerate_unipotent(n: u32, p: u64, budget: u128) -> Result<Vec<MatrixOverFp>> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let nn = n as usize;
    let total = checked_pow(p, n * n)
        .filter(|&t| t <= budget)
        .ok_or(Error::BudgetExceeded {
            needed: checked_pow(p, n * n).unwrap_or(u128::MAX),
            budget,
        })?;
    let total = total as u64;
    let list: Vec<MatrixOverFp> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut entries = vec![0u64; nn * nn];
            let mut c = code;
            for e in entries.iter_mut() {
                *e = c % p;
                c /= p;
            }
            let m = MatrixOverFp { n: nn, p, entries };
            m.is_unipotent().then_some(m)
        })
        .collect();
    Ok(list)
}

/// Jordan type of a unipotent matrix from the rank sequence of `(x−I)^k`:
/// the number of blocks of size at least `k` is `rank((x−I)^{k−1}) −
/// rank((x−I)^k)`, which is the `k`-th column height of the type.
pub fn jordan_type(x: &MatrixOverFp) -> Result<Partition> {
    let n = x.n;
    let y = x.sub_identity();
    let mut ranks = Vec::with_capacity(n + 1);
    let mut power = MatrixOverFp::identity(n, x.p);
    ranks.push(n);
    for _ in 1..=n {
        power = power.mul(&y);
        ranks.push(power.rank());
    }
    if ranks[n] != 0 {
        return Err(Error::InvalidInput("matrix is not unipotent".into()));
    }
    let mut conj_parts = Vec::new();
    for k in 1..=n {
        let d = ranks[k - 1] - ranks[k];
        if d == 0 {
            break;
        }
        conj_parts.push(d as u32);
    }
    Ok(Partition::new(conj_parts).conjugate())
}

/// Enumerated data for one `(n, p, μ)` triple: the unipotent set of
/// `GL_n(F_p)`, the standard unipotent radical for `μ`, and the Jordan type
/// of every unipotent element.
pub struct OracleScene {
    n: u32,
    p: u64,
    mu: Composition,
    unipotent: Vec<MatrixOverFp>,
    radical: Vec<MatrixOverFp>,
    jordan: Vec<Partition>,
    index: HashMap<MatrixOverFp, usize>,
}

impl OracleScene {
    /// Builds the scene, enforcing the enumeration budget and the Steinberg
    /// count `|G_uni| = p^{n(n−1)}`.
    pub fn build(n: u32, p: u64, mu: &Composition, budget: u128) -> Result<OracleScene> {
        if mu.size() != n {
            return Err(Error::SizeMismatch(format!(
                "composition {mu} does not sum to n = {n}"
            )));
        }
        let unipotent = enumerate_unipotent(n, p, budget)?;
        let expected = checked_pow(p, n * (n - 1)).ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
        if unipotent.len() as u128 != expected {
            return Err(Error::Mismatch(format!(
                "Steinberg count violated: found {} unipotent elements in GL_{n}(F_{p}), expected {expected}",
                unipotent.len()
            )));
        }
        let jordan: Vec<Partition> =
            unipotent.par_iter().map(|m| jordan_type(m).expect("enumerated as unipotent")).collect();
        let index: HashMap<MatrixOverFp, usize> =
            unipotent.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let radical = standard_radical(n, p, mu);
        debug_assert_eq!(radical.len() as u128, checked_pow(p, mu.radical_dimension() as u32).unwrap());
        for v in &radical {
            if !index.contains_key(v) {
                return Err(Error::Mismatch(
                    "radical element missing from the unipotent set".into(),
                ));
            }
        }
        Ok(OracleScene { n, p, mu: mu.clone(), unipotent, radical, jordan, index })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn mu(&self) -> &Composition {
        &self.mu
    }

    pub fn unipotent(&self) -> &[MatrixOverFp] {
        &self.unipotent
    }

    pub fn radical(&self) -> &[MatrixOverFp] {
        &self.radical
    }

    pub fn jordan_of(&self, m: &MatrixOverFp) -> Option<&Partition> {
        self.index.get(m).map(|&i| &self.jordan[i])
    }

    /// Class sizes on the unipotent set, keyed by Jordan type.
    pub fn class_sizes(&self) -> HashMap<Partition, u128> {
        let mut sizes = HashMap::new();
        for t in &self.jordan {
            *sizes.entry(t.clone()).or_insert(0u128) += 1;
        }
        sizes
    }

    /// A scene with the radical replaced by `g·U·g⁻¹`; counts must not
    /// change.
    pub fn with_conjugated_radical(&self, g: &MatrixOverFp) -> Result<OracleScene> {
        let g_inv = g
            .inverse()
            .ok_or_else(|| Error::InvalidInput("conjugating element is singular".into()))?;
        let radical: Vec<MatrixOverFp> =
            self.radical.iter().map(|v| g.mul(v).mul(&g_inv)).collect();
        for v in &radical {
            if !self.index.contains_key(v) {
                return Err(Error::Mismatch(
                    "conjugated radical element missing from the unipotent set".into(),
                ));
            }
        }
        Ok(OracleScene {
            n: self.n,
            p: self.p,
            mu: self.mu.clone(),
            unipotent: self.unipotent.clone(),
            radical,
            jordan: self.jordan.clone(),
            index: self.index.clone(),
        })
    }
}

/// Elements of the standard unipotent radical for `μ`: block upper
/// unitriangular matrices, free entries exactly where the row block precedes
/// the column block.
fn standard_radical(n: u32, p: u64, mu: &Composition) -> Vec<MatrixOverFp> {
    let nn = n as usize;
    let mut block_of = vec![0usize; nn];
    let mut start = 0usize;
    for (b, &size) in mu.parts().iter().enumerate() {
        for slot in block_of.iter_mut().skip(start).take(size as usize) {
            *slot = b;
        }
        start += size as usize;
    }
    let free: Vec<(usize, usize)> = (0..nn)
        .flat_map(|i| (0..nn).map(move |j| (i, j)))
        .filter(|&(i, j)| block_of[i] < block_of[j])
        .collect();
    let count = checked_pow(p, free.len() as u32).expect("radical within budget") as u64;
    (0..count)
        .map(|code| {
            let mut m = MatrixOverFp::identity(nn, p);
            let mut c = code;
            for &(i, j) in &free {
                m.entries[i * nn + j] = c % p;
                c /= p;
            }
            m
        })
        .collect()
}

fn total_commuting(scene: &OracleScene) -> u128 {
    scene
        .radical
        .par_iter()
        .map(|v| {
            scene.unipotent.iter().filter(|x| x.commutes_with(v)).count() as u128
        })
        .sum()
}

/// `k(U, G_uni)` by the Burnside sum `(1/|U|)·Σ_{v∈U} |C_{G_uni}(v)|`.
/// The division must be exact; a remainder is a fatal implementation error.
pub fn burnside_count(scene: &OracleScene) -> Result<u128> {
    let total = total_commuting(scene);
    let order = scene.radical.len() as u128;
    if !total.is_multiple_of(order) {
        return Err(Error::InexactDivision(format!(
            "Burnside sum {total} is not divisible by |U| = {order}"
        )));
    }
    Ok(total / order)
}

/// `|𝒞(U, G_uni)|`: the number of commuting pairs `(v, x)` with `v ∈ U`,
/// `x` unipotent. Equals `|U| · k(U, G_uni)` exactly.
pub fn commuting_variety_count(scene: &OracleScene) -> u128 {
    total_commuting(scene)
}

/// Number of complete flags of `F_p^n` fixed by a Jordan representative of
/// type `λ`. Enumeration is budgeted to `n ≤ 3`.
pub fn flag_fixed_points(lambda: &Partition, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let n = lambda.size();
    if n > 3 {
        return Err(Error::InvalidInput(format!(
            "flag fixed-point enumeration is budgeted to n ≤ 3, got n = {n}"
        )));
    }
    if n <= 1 {
        return Ok(1);
    }
    let u = MatrixOverFp::jordan_representative(lambda, p);
    let nn = n as usize;
    let lines = projective_vectors(nn, p);
    let line_invariant: Vec<bool> =
        lines.iter().map(|v| is_proportional(&apply(&u, v, p), v, p)).collect();
    if nn == 2 {
        return Ok(line_invariant.iter().filter(|&&b| b).count() as u64);
    }
    // n = 3: planes are kernels of covectors; u-invariance of ker(φ) is
    // proportionality of φ∘u to φ
    let covectors = projective_vectors(nn, p);
    let mut count = 0u64;
    for phi in &covectors {
        let phi_u: Vec<u64> =
            (0..nn).map(|j| (0..nn).map(|i| phi[i] * u.entry(i, j)).sum::<u64>() % p).collect();
        if !is_proportional(&phi_u, phi, p) {
            continue;
        }
        for (li, v) in lines.iter().enumerate() {
            if !line_invariant[li] {
                continue;
            }
            let pairing: u64 = (0..nn).map(|i| phi[i] * v[i]).sum::<u64>() % p;
            if pairing == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

// One representative per projective point: last nonzero coordinate scaled to 1.
fn projective_vectors(n: usize, p: u64) -> Vec<Vec<u64>> {
    let total = checked_pow(p, n as u32).unwrap() as u64;
    let mut out = Vec::new();
    for code in 1..total {
        let mut v = vec![0u64; n];
        let mut c = code;
        for e in v.iter_mut() {
            *e = c % p;
            c /= p;
        }
        let last = v.iter().rposition(|&e| e != 0).unwrap();
        if v[last] == 1 {
            out.push(v);
        }
    }
    out
}

fn apply(m: &MatrixOverFp, v: &[u64], p: u64) -> Vec<u64> {
    (0..m.n)
        .map(|i| (0..m.n).map(|j| m.entry(i, j) * v[j]).sum::<u64>() % p)
        .collect()
}

fn is_proportional(a: &[u64], b: &[u64], p: u64) -> bool {
    let Some(i) = b.iter().position(|&e| e != 0) else {
        return a.iter().all(|&e| e == 0);
    };
    if a[i] == 0 {
        return a.iter().all(|&e| e == 0);
    }
    let c = a[i] * inv_mod(b[i], p) % p;
    (0..a.len()).all(|j| a[j] == c * b[j] % p)
}

/// Order of the centralizer of `x` in `GL_n(F_p)` and the number of
/// unipotent elements in it, by solving the linear commutant system and
/// enumerating its invertible points.
pub fn centralizer_count(x: &MatrixOverFp, budget: u128) -> Result<(u128, u128)> {
    let n = x.n;
    let p = x.p;
    let basis = commutant_basis(x);
    let d = basis.len();
    let budget = budget.min(u64::MAX as u128);
    let total = checked_pow(p, d as u32)
        .filter(|&t| t <= budget)
        .ok_or(Error::BudgetExceeded {
            needed: checked_pow(p, d as u32).unwrap_or(u128::MAX),
            budget,
        })?;
    let total = total as u64;
    let counts = (0..total)
        .into_par_iter()
        .map(|code| {
            let mut entries = vec![0u64; n * n];
            let mut c = code;
            for b in &basis {
                let coeff = c % p;
                c /= p;
                if coeff == 0 {
                    continue;
                }
                for (e, &bv) in entries.iter_mut().zip(b) {
                    *e = (*e + coeff * bv) % p;
                }
            }
            let m = MatrixOverFp { n, p, entries };
            if !m.is_invertible() {
                (0u128, 0u128)
            } else if m.is_unipotent() {
                (1, 1)
            } else {
                (1, 0)
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(counts)
}

// Basis of {Y : xY = Yx} as flattened matrices, via the nullspace of the
// n²×n² commutator system.
fn commutant_basis(x: &MatrixOverFp) -> Vec<Vec<u64>> {
    let n = x.n;
    let p = x.p;
    let dim = n * n;
    // rows: equations indexed by (i,j); columns: unknowns Y_{kl}
    let mut a = vec![0u64; dim * dim];
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                // (xY)_{ij} contributes x_{ik}·Y_{kj}
                a[row * dim + (k * n + j)] = (a[row * dim + (k * n + j)] + x.entry(i, k)) % p;
                // (Yx)_{ij} contributes −Y_{ik}·x_{kj}
                a[row * dim + (i * n + k)] =
                    (a[row * dim + (i * n + k)] + p - x.entry(k, j) % p) % p;
            }
        }
    }
    nullspace(&mut a, dim, dim, p)
}

// Nullspace basis of an r×c matrix over F_p (row-major, modified in place).
fn nullspace(a: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| a[r * cols + col] != 0);
        let Some(pivot) = pivot else { continue };
        for j in 0..cols {
            a.swap(pivot * cols + j, rank * cols + j);
        }
        let inv = inv_mod(a[rank * cols + col], p);
        for j in 0..cols {
            a[rank * cols + j] = a[rank * cols + j] * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r * cols + col] != 0 {
                let f = a[r * cols + col];
                for j in 0..cols {
                    a[r * cols + j] = (a[r * cols + j] + (p - f) * a[rank * cols + j]) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (r, &pc) in pivot_col_of_row.iter().enumerate() {
                let coeff = a[r * cols + fc];
                if coeff != 0 {
                    v[pc] = (p - coeff) % p;
                }
            }
            v
        })
        .collect()
}

/// True when some element of the standard radical for `μ` has Jordan type
/// `λ`.
pub fn class_meets_radical(
    lambda: &Partition,
    mu: &Composition,
    p: u64,
    budget: u128,
) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "|{lambda}| = {} but |{mu}| = {}",
            lambda.size(),
            mu.size()
        )));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let dim = mu.radical_dimension() as u32;
    let needed = checked_pow(p, dim).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let radical = standard_radical(mu.size(), p, mu);
    for v in &radical {
        if &jordan_type(v)? == lambda {
            return Ok(true);
        }
    }
    Ok(false)
}
