//! Disk cache for the character and Kostka–Foulkes tables.
//!
//! One text file per `n`, `green_n<NN>.txt`, holding a version header and one
//! line per table cell:
//!
//! ```text
//! kuni-green-cache v1
//! char <n> <mu> <rho> <value>
//! kostka <n> <mu> <lambda> <coeffs>
//! ```
//!
//! Partitions are comma-joined parts (`-` for the empty partition) and
//! polynomial coefficients are decimal, low-to-high, space-separated. The
//! cache is a pure accelerator: a missing, truncated, or otherwise corrupt
//! file is recomputed, and results are identical either way.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::combinatorics::{partitions_of, Partition};
use crate::poly::IntPoly;

const HEADER: &str = "kuni-green-cache v1";

/// Environment variable consulted when no cache directory is given
/// explicitly.
pub const CACHE_ENV_VAR: &str = "KUNI_CACHE_DIR";

/// A directory holding cached tables.
#[derive(Clone, Debug)]
pub struct CacheDir {
    root: PathBuf,
}

impl CacheDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        CacheDir { root: root.into() }
    }

    /// Resolution chain: explicit flag, then `KUNI_CACHE_DIR`, then the
    /// user cache directory (`$XDG_CACHE_HOME/kuni` or `$HOME/.cache/kuni`),
    /// then a directory under the system temp dir.
    pub fn resolve(flag: Option<PathBuf>) -> CacheDir {
        if let Some(dir) = flag {
            return CacheDir::new(dir);
        }
        if let Some(dir) = std::env::var_os(CACHE_ENV_VAR) {
            if !dir.is_empty() {
                return CacheDir::new(PathBuf::from(dir));
            }
        }
        if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME") {
            if !xdg.is_empty() {
                return CacheDir::new(PathBuf::from(xdg).join("kuni"));
            }
        }
        if let Some(home) = std::env::var_os("HOME") {
            if !home.is_empty() {
                return CacheDir::new(PathBuf::from(home).join(".cache").join("kuni"));
            }
        }
        CacheDir::new(std::env::temp_dir().join("kuni-cache"))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn file_for(&self, n: u32) -> PathBuf {
        self.root.join(format!("green_n{n:02}.txt"))
    }

    /// Loads the full character and Kostka matrices for `n`, in canonical
    /// partition order. Returns `None` when the file is absent or fails any
    /// validation (bad header, bad line, wrong `n`, duplicate or missing
    /// cells); the caller recomputes in that case.
    #[allow(clippy::type_complexity)]
    pub fn load(&self, n: u32) -> Option<(Vec<Vec<BigInt>>, Vec<Vec<IntPoly>>)> {
        let text = fs::read_to_string(self.file_for(n)).ok()?;
        let mut lines = text.lines();
        if lines.next()? != HEADER {
            return None;
        }
        let parts = partitions_of(n);
        let index = |s: &str| -> Option<usize> {
            let p = Partition::parse_compact(s).ok()?;
            parts.binary_search(&p).ok()
        };
        let mut chars: HashMap<(usize, usize), BigInt> = HashMap::new();
        let mut kostka: HashMap<(usize, usize), IntPoly> = HashMap::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["char", n_str, mu, rho, value] => {
                    if n_str.parse::<u32>().ok()? != n {
                        return None;
                    }
                    let key = (index(mu)?, index(rho)?);
                    let v: BigInt = value.parse().ok()?;
                    if chars.insert(key, v).is_some() {
                        return None;
                    }
                }
                ["kostka", n_str, mu, lambda, coeffs @ ..] => {
                    if n_str.parse::<u32>().ok()? != n || coeffs.is_empty() {
                        return None;
                    }
                    let key = (index(mu)?, index(lambda)?);
                    let poly = IntPoly::from_coeff_strings(coeffs).ok()?;
                    if kostka.insert(key, poly).is_some() {
                        return None;
                    }
                }
                _ => return None,
            }
        }
        let p = parts.len();
        if chars.len() != p * p || kostka.len() != p * p {
            return None;
        }
        let mut char_rows = Vec::with_capacity(p);
        let mut kostka_rows = Vec::with_capacity(p);
        for i in 0..p {
            let mut cr = Vec::with_capacity(p);
            let mut kr = Vec::with_capacity(p);
            for j in 0..p {
                cr.push(chars.remove(&(i, j))?);
                kr.push(kostka.remove(&(i, j))?);
            }
            char_rows.push(cr);
            kostka_rows.push(kr);
        }
        Some((char_rows, kostka_rows))
    }

    /// Writes the tables for `n`. The file is written to a temporary name
    /// and renamed into place so readers never see a torn file.
    pub fn store(
        &self,
        n: u32,
        chars: &[Vec<BigInt>],
        kostka: &[Vec<IntPoly>],
    ) -> std::io::Result<()> {
        fs::create_dir_all(&self.root)?;
        let parts = partitions_of(n);
        let mut buf = String::new();
        buf.push_str(HEADER);
        buf.push('\n');
        for (i, mu) in parts.iter().enumerate() {
            for (j, rho) in parts.iter().enumerate() {
                buf.push_str(&format!(
                    "char {n} {} {} {}\n",
                    mu.to_compact_string(),
                    rho.to_compact_string(),
                    chars[i][j]
                ));
            }
        }
        for (i, mu) in parts.iter().enumerate() {
            for (j, lambda) in parts.iter().enumerate() {
                let poly = &kostka[i][j];
                let coeffs = if poly.is_zero() {
                    "0".to_string()
                } else {
                    poly.coeff_strings().join(" ")
                };
                buf.push_str(&format!(
                    "kostka {n} {} {} {}\n",
                    mu.to_compact_string(),
                    lambda.to_compact_string(),
                    coeffs
                ));
            }
        }
        // per-process temp name so concurrent writers cannot tear each other
        let tmp = self.root.join(format!("green_n{n:02}.txt.tmp.{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(buf.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.file_for(n))
    }
}
