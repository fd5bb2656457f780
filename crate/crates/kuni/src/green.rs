//! Green polynomials `Q^λ_ρ(q)` for `GL_n`, built from symmetric-group
//! characters and Kostka–Foulkes polynomials:
//!
//! ```text
//! Q^λ_ρ(q) = Σ_{μ⊢n} χ^μ(ρ) · K̃_{μλ}(q),    K̃_{μλ}(q) = q^{n(λ)} K_{μλ}(1/q)
//! ```
//!
//! Characters come from the Murnaghan–Nakayama rule (border-strip removal on
//! beta-sets, memoized on the remaining shape and cycle type). Kostka–Foulkes
//! polynomials are the charge generating functions over semistandard Young
//! tableaux.
//!
//! Charge conventions, fixed here and pinned by the flag-count oracle, a
//! Kostant-partition-function cross-check in the tests, and the embedded
//! ground-truth table:
//! - the reading word of a tableau lists its rows bottom-to-top, each row
//!   left-to-right;
//! - standard subwords are extracted by taking the rightmost unused 1, then
//!   scanning cyclically leftward for a 2, then a 3, and so on;
//! - within a standard subword, the letter `r+1` increments the running index
//!   exactly when it sits to the right of the letter `r`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cache::CacheDir;
use crate::combinatorics::{partitions_of, Partition};
use crate::poly::IntPoly;
use crate::{Error, Result};

/// A semistandard Young tableau: rows weakly increase, columns strictly
/// increase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    /// Reading word: rows bottom-to-top, each left-to-right.
    pub fn reading_word(&self) -> Vec<u32> {
        let mut word = Vec::new();
        for row in self.rows.iter().rev() {
            word.extend_from_slice(row);
        }
        word
    }
}

/// All semistandard Young tableaux of the given shape whose content is
/// `content` (i.e. `content_i` copies of the entry `i`). Empty exactly when
/// the content is not dominated by the shape.
pub fn ssyt_enumerate(shape: &Partition, content: &Partition) -> Result<Vec<Tableau>> {
    if shape.size() != content.size() {
        return Err(Error::SizeMismatch(format!(
            "SSYT shape {shape} and content {content} have different sizes"
        )));
    }
    if !content.dominance_leq(shape)? {
        return Ok(Vec::new());
    }
    let shape_rows: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let mut remaining: Vec<u32> = content.parts().to_vec();
    let mut rows: Vec<Vec<u32>> = shape_rows.iter().map(|&len| Vec::with_capacity(len)).collect();
    let mut out = Vec::new();
    fill_cells(&shape_rows, &mut remaining, &mut rows, 0, 0, &mut out);
    Ok(out)
}

fn fill_cells(
    shape: &[usize],
    remaining: &mut Vec<u32>,
    rows: &mut Vec<Vec<u32>>,
    r: usize,
    c: usize,
    out: &mut Vec<Tableau>,
) {
    if r == shape.len() {
        out.push(Tableau { rows: rows.clone() });
        return;
    }
    if c == shape[r] {
        fill_cells(shape, remaining, rows, r + 1, 0, out);
        return;
    }
    let min_from_row = if c > 0 { rows[r][c - 1] } else { 1 };
    let min_from_col = if r > 0 && rows[r - 1].len() > c { rows[r - 1][c] + 1 } else { 1 };
    let lo = min_from_row.max(min_from_col);
    for v in lo..=(remaining.len() as u32) {
        if remaining[v as usize - 1] == 0 {
            continue;
        }
        remaining[v as usize - 1] -= 1;
        rows[r].push(v);
        fill_cells(shape, remaining, rows, r, c + 1, out);
        rows[r].pop();
        remaining[v as usize - 1] += 1;
    }
}

/// Charge of a tableau with partition content: the sum of standard-subword
/// charges of its reading word.
pub fn charge(tableau: &Tableau) -> u64 {
    charge_of_word(&tableau.reading_word())
}

/// Charge of a word whose letter multiplicities form a partition.
pub fn charge_of_word(word: &[u32]) -> u64 {
    let mut used = vec![false; word.len()];
    let mut left = word.len();
    let mut total = 0u64;
    while left > 0 {
        let maxv = word
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(&v, _)| v)
            .max()
            .unwrap();
        let mut positions = Vec::with_capacity(maxv as usize);
        let start = (0..word.len())
            .rev()
            .find(|&i| !used[i] && word[i] == 1)
            .expect("partition content: a 1 remains while letters remain");
        used[start] = true;
        positions.push(start);
        let mut cur = start;
        for v in 2..=maxv {
            let next = (0..cur)
                .rev()
                .find(|&i| !used[i] && word[i] == v)
                .or_else(|| ((cur + 1)..word.len()).rev().find(|&i| !used[i] && word[i] == v))
                .expect("partition content: every value up to the max remains");
            used[next] = true;
            positions.push(next);
            cur = next;
        }
        positions.sort_unstable();
        let sub: Vec<u32> = positions.iter().map(|&i| word[i]).collect();
        total += standard_charge(&sub);
        left -= sub.len();
    }
    total
}

// Charge of a word containing each of 1..=m exactly once.
fn standard_charge(w: &[u32]) -> u64 {
    let m = w.len();
    let mut pos = vec![0usize; m + 1];
    for (i, &v) in w.iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut index = 0u64;
    let mut total = 0u64;
    for v in 2..=m {
        if pos[v] > pos[v - 1] {
            index += 1;
        }
        total += index;
    }
    total
}

/// Kostka–Foulkes polynomial `K_{μλ}(t) = Σ_T t^{charge(T)}` over the
/// semistandard tableaux of shape `μ` and content `λ`.
pub fn kostka_foulkes(mu: &Partition, lambda: &Partition) -> Result<IntPoly> {
    let tableaux = ssyt_enumerate(mu, lambda)?;
    let mut coeffs: Vec<BigInt> = Vec::new();
    for t in &tableaux {
        let c = charge(t) as usize;
        if coeffs.len() <= c {
            coeffs.resize(c + 1, BigInt::zero());
        }
        coeffs[c] += 1;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Modified Kostka polynomial `K̃_{μλ}(q) = q^{n(λ)} · K_{μλ}(1/q)`.
///
/// The degree bound `deg K_{μλ} ≤ n(λ)` guarantees no negative powers; a
/// violation is a hard error, not a representable value.
pub fn modified_kostka(mu: &Partition, lambda: &Partition) -> Result<IntPoly> {
    let k = kostka_foulkes(mu, lambda)?;
    modified_from_kostka(&k, mu, lambda)
}

fn modified_from_kostka(k: &IntPoly, mu: &Partition, lambda: &Partition) -> Result<IntPoly> {
    let top = lambda.n_stat() as usize;
    if let Some(d) = k.degree() {
        if d > top {
            return Err(Error::DegreeBound(format!(
                "deg K_{{{mu},{lambda}}} = {d} exceeds n({lambda}) = {top}"
            )));
        }
    }
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (d, c) in k.coeffs().iter().enumerate() {
        coeffs[top - d] = c.clone();
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Irreducible character value `χ^μ(ρ)` of the symmetric group, by the
/// Murnaghan–Nakayama rule.
pub fn character_value(mu: &Partition, rho: &Partition) -> Result<BigInt> {
    if mu.size() != rho.size() {
        return Err(Error::SizeMismatch(format!(
            "character χ^{mu}({rho}) needs |μ| = |ρ|"
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_value(mu.parts(), rho.parts(), &mut memo))
}

type MnMemo = HashMap<(Vec<u32>, Vec<u32>), BigInt>;

fn mn_value(mu: &[u32], rho: &[u32], memo: &mut MnMemo) -> BigInt {
    if mu.is_empty() {
        debug_assert!(rho.is_empty());
        return BigInt::one();
    }
    let key = (mu.to_vec(), rho.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let strip = rho[0] as u64;
    let rest = &rho[1..];
    let ell = mu.len();
    // first-column hook lengths form the beta-set; entries strictly decrease
    let beta: Vec<u64> =
        mu.iter().enumerate().map(|(i, &p)| p as u64 + (ell - 1 - i) as u64).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < strip {
            continue;
        }
        let target = b - strip;
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| target < x && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (ell - 1 - i) as u64) as u32)
            .collect();
        parts.retain(|&p| p > 0);
        let sub = mn_value(&parts, rest, memo);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// Green polynomial `Q^λ_ρ(q)`; the table for `n = |λ|` is built once and
/// shared.
pub fn green_polynomial(lambda: &Partition, rho: &Partition) -> Result<IntPoly> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch(format!(
            "Green polynomial Q^{lambda}_{rho} needs |λ| = |ρ|"
        )));
    }
    let t = tables(lambda.size());
    Ok(t.green.value(lambda, rho)?.clone())
}

/// Character table of `S_n`, rows and columns in canonical partition order.
pub struct SnCharacterTable {
    n: u32,
    parts: Vec<Partition>,
    values: Vec<Vec<BigInt>>,
}

impl SnCharacterTable {
    pub fn build(n: u32) -> Self {
        let parts = partitions_of(n);
        let mut memo = MnMemo::new();
        let values = parts
            .iter()
            .map(|mu| {
                parts.iter().map(|rho| mn_value(mu.parts(), rho.parts(), &mut memo)).collect()
            })
            .collect();
        SnCharacterTable { n, parts, values }
    }

    fn from_values(n: u32, parts: Vec<Partition>, values: Vec<Vec<BigInt>>) -> Self {
        SnCharacterTable { n, parts, values }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn value(&self, mu: &Partition, rho: &Partition) -> Result<&BigInt> {
        let i = self.index_of(mu)?;
        let j = self.index_of(rho)?;
        Ok(&self.values[i][j])
    }

    fn index_of(&self, p: &Partition) -> Result<usize> {
        self.parts
            .binary_search(p)
            .map_err(|_| Error::InvalidInput(format!("{p} is not a partition of {}", self.n)))
    }
}

/// Kostka–Foulkes polynomials `K_{μλ}(t)` for all `μ, λ ⊢ n`.
pub struct KostkaFoulkesTable {
    n: u32,
    parts: Vec<Partition>,
    entries: Vec<Vec<IntPoly>>,
}

impl KostkaFoulkesTable {
    pub fn build(n: u32) -> Self {
        let parts = partitions_of(n);
        let entries = parts
            .iter()
            .map(|mu| {
                parts
                    .iter()
                    .map(|lambda| kostka_foulkes(mu, lambda).expect("sizes match by construction"))
                    .collect()
            })
            .collect();
        KostkaFoulkesTable { n, parts, entries }
    }

    fn from_entries(n: u32, parts: Vec<Partition>, entries: Vec<Vec<IntPoly>>) -> Self {
        KostkaFoulkesTable { n, parts, entries }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn rows(&self) -> &[Vec<IntPoly>] {
        &self.entries
    }

    pub fn entry(&self, mu: &Partition, lambda: &Partition) -> Result<&IntPoly> {
        let i = self.index_of(mu)?;
        let j = self.index_of(lambda)?;
        Ok(&self.entries[i][j])
    }

    fn index_of(&self, p: &Partition) -> Result<usize> {
        self.parts
            .binary_search(p)
            .map_err(|_| Error::InvalidInput(format!("{p} is not a partition of {}", self.n)))
    }
}

/// Green polynomials `Q^λ_ρ(q)` for all `λ, ρ ⊢ n`.
pub struct GreenTable {
    n: u32,
    parts: Vec<Partition>,
    entries: Vec<Vec<IntPoly>>, // [lambda][rho]
}

impl GreenTable {
    /// Assembles the table from its two ingredients.
    pub fn build(chars: &SnCharacterTable, kostka: &KostkaFoulkesTable) -> Result<Self> {
        assert_eq!(chars.n, kostka.n);
        let n = chars.n;
        let parts = chars.parts.clone();
        let p = parts.len();
        // K̃ rows first: [mu][lambda]
        let mut modified = Vec::with_capacity(p);
        for (i, mu) in parts.iter().enumerate() {
            let mut row = Vec::with_capacity(p);
            for (j, lambda) in parts.iter().enumerate() {
                row.push(modified_from_kostka(&kostka.entries[i][j], mu, lambda)?);
            }
            modified.push(row);
        }
        let mut entries = Vec::with_capacity(p);
        for j in 0..p {
            // fixed λ column of K̃, paired against each character column
            let mut row = Vec::with_capacity(p);
            for r in 0..p {
                let mut acc = IntPoly::zero();
                for (i, modified_row) in modified.iter().enumerate() {
                    let chi = &chars.values[i][r];
                    if chi.is_zero() {
                        continue;
                    }
                    acc = &acc + &modified_row[j].scale(chi);
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(GreenTable { n, parts, entries })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn value(&self, lambda: &Partition, rho: &Partition) -> Result<&IntPoly> {
        let i = self.index_of(lambda)?;
        let j = self.index_of(rho)?;
        Ok(&self.entries[i][j])
    }

    fn index_of(&self, p: &Partition) -> Result<usize> {
        self.parts
            .binary_search(p)
            .map_err(|_| Error::InvalidInput(format!("{p} is not a partition of {}", self.n)))
    }
}

/// The three tables for one `n`, built together and shared immutably.
pub struct Tables {
    pub chars: SnCharacterTable,
    pub kostka: KostkaFoulkesTable,
    pub green: GreenTable,
}

impl Tables {
    pub fn build(n: u32) -> Self {
        let chars = SnCharacterTable::build(n);
        let kostka = KostkaFoulkesTable::build(n);
        let green = GreenTable::build(&chars, &kostka)
            .expect("table construction respects the Kostka degree bound");
        Tables { chars, kostka, green }
    }

    /// Rebuilds from cached character values and Kostka polynomials, with
    /// structural sanity checks so a damaged-but-parseable file falls back
    /// to recomputation.
    fn from_cached(n: u32, chars: Vec<Vec<BigInt>>, kostka: Vec<Vec<IntPoly>>) -> Result<Self> {
        let parts = partitions_of(n);
        let chars = SnCharacterTable::from_values(n, parts.clone(), chars);
        let kostka = KostkaFoulkesTable::from_entries(n, parts.clone(), kostka);
        if n >= 1 {
            let trivial = Partition::new(vec![n]);
            let sign_char = Partition::new(vec![1; n as usize]);
            for rho in &parts {
                if chars.value(&trivial, rho)? != &BigInt::one() {
                    return Err(Error::Cache("cached trivial character row is wrong".into()));
                }
                if chars.value(&sign_char, rho)? != &BigInt::from(rho.permutation_sign()) {
                    return Err(Error::Cache("cached sign character row is wrong".into()));
                }
            }
        }
        for mu in &parts {
            if kostka.entry(mu, mu)? != &IntPoly::one() {
                return Err(Error::Cache("cached Kostka diagonal is wrong".into()));
            }
            for lambda in &parts {
                if !lambda.dominance_leq(mu)? && !kostka.entry(mu, lambda)?.is_zero() {
                    return Err(Error::Cache("cached Kostka support is wrong".into()));
                }
            }
        }
        let green = GreenTable::build(&chars, &kostka)?;
        Ok(Tables { chars, kostka, green })
    }
}

static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<Tables>>>> = OnceLock::new();

/// The shared tables for `n`, built on first use.
pub fn tables(n: u32) -> Arc<Tables> {
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = registry.lock().unwrap();
    map.entry(n).or_insert_with(|| Arc::new(Tables::build(n))).clone()
}

/// Like [`tables`], but reads the disk cache before building and writes it
/// after a miss. Results are identical with a cold, hot, or absent cache;
/// write failures are ignored (the cache is a pure accelerator), and corrupt
/// files are recomputed.
pub fn tables_cached(n: u32, cache: &CacheDir) -> Arc<Tables> {
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = registry.lock().unwrap();
    if let Some(t) = map.get(&n) {
        return t.clone();
    }
    let built = match cache.load(n).and_then(|(c, k)| Tables::from_cached(n, c, k).ok()) {
        Some(t) => t,
        None => {
            let t = Tables::build(n);
            let _ = cache.store(n, t.chars.rows(), t.kostka.rows());
            t
        }
    };
    let arc = Arc::new(built);
    map.insert(n, arc.clone());
    arc
}
