//! The embedded ground-truth corpus: the published class-count polynomials
//! for the upper-unitriangular radical (Borel case) of `GL_n(q)`,
//! `n = 2,…,10`.
//!
//! Rows are transcribed as printed, highest power first, as
//! `(exponent, coefficient)` pairs so they can be audited term by term. A
//! SHA-256 checksum over the canonical low-to-high coefficient serialization
//! guards against accidental edits; the `table` command then re-derives every
//! row from scratch, so a transcription error cannot hide even if the
//! checksum were updated to match it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use sha2::{Digest, Sha256};

use crate::poly::IntPoly;

/// Smallest `n` with a published row.
pub const MIN_N: u32 = 2;
/// Largest `n` with a published row.
pub const MAX_N: u32 = 10;

const ROWS: &[(u32, &[(usize, i64)])] = &[
    (2, &[(1, 2), (0, -1)]),
    (3, &[(3, 1), (2, 3), (1, -3)]),
    (4, &[(6, 1), (4, 5), (2, -9), (1, 4)]),
    (
        5,
        &[(10, 1), (7, 4), (6, 4), (5, 6), (4, -20), (3, -10), (2, 21), (1, -4), (0, -1)],
    ),
    (
        6,
        &[
            (15, 1),
            (11, 5),
            (10, -1),
            (9, 13),
            (8, -5),
            (7, 1),
            (6, -20),
            (5, -44),
            (4, 52),
            (3, 25),
            (2, -31),
            (1, 5),
        ],
    ),
    (
        7,
        &[
            (21, 1),
            (16, 6),
            (15, -1),
            (14, -1),
            (13, 13),
            (12, 22),
            (11, -41),
            (10, 37),
            (9, -49),
            (8, -57),
            (7, -12),
            (6, 71),
            (5, 139),
            (4, -120),
            (3, -51),
            (2, 50),
            (1, -5),
            (0, -1),
        ],
    ),
    (
        8,
        &[
            (28, 1),
            (22, 7),
            (21, -1),
            (20, -1),
            (19, -1),
            (18, 19),
            (17, 13),
            (16, 7),
            (15, -54),
            (14, 39),
            (13, 39),
            (12, -125),
            (11, -86),
            (10, -93),
            (9, 225),
            (8, 160),
            (7, 102),
            (6, -164),
            (5, -322),
            (4, 207),
            (3, 87),
            (2, -64),
            (1, 6),
        ],
    ),
    (
        9,
        &[
            (36, 1),
            (29, 8),
            (28, -1),
            (27, -1),
            (26, -1),
            (25, -1),
            (24, 26),
            (23, 19),
            (22, -44),
            (21, 41),
            (20, 9),
            (19, 25),
            (18, -119),
            (17, 57),
            (16, -134),
            (15, 119),
            (14, -458),
            (13, 177),
            (12, 290),
            (11, -121),
            (10, 1315),
            (9, -807),
            (8, -971),
            (7, 60),
            (6, 326),
            (5, 568),
            (4, -319),
            (3, -145),
            (2, 89),
            (1, -7),
        ],
    ),
    (
        10,
        &[
            (45, 1),
            (37, 9),
            (36, -1),
            (35, -1),
            (34, -1),
            (33, -1),
            (32, -1),
            (31, 34),
            (30, 26),
            (29, -54),
            (28, -8),
            (27, 68),
            (26, -41),
            (25, 251),
            (24, -258),
            (23, -395),
            (22, 474),
            (21, 259),
            (20, -674),
            (19, -174),
            (18, 126),
            (17, -1384),
            (16, 3300),
            (15, -1299),
            (14, -1227),
            (13, 4050),
            (12, -2400),
            (11, -691),
            (10, -2676),
            (9, 944),
            (8, 3298),
            (7, -808),
            (6, -293),
            (5, -1017),
            (4, 455),
            (3, 210),
            (2, -108),
            (1, 8),
        ],
    ),
];

/// SHA-256 of the canonical serialization (`n:coeffs-low-to-high;` per row).
const TRANSCRIPTION_SHA256: &str =
    "410608939d530aed94858f80e2ce6b4f50ac7cac4a64a74fa027dbaf6aef0579";

/// The published Borel-case polynomials, keyed by `n`.
pub struct Table1Corpus {
    rows: BTreeMap<u32, IntPoly>,
}

impl Table1Corpus {
    /// The embedded corpus, checksum-verified on first access.
    pub fn get() -> &'static Table1Corpus {
        static CORPUS: OnceLock<Table1Corpus> = OnceLock::new();
        CORPUS.get_or_init(|| {
            let mut rows = BTreeMap::new();
            for &(n, terms) in ROWS {
                let top = terms.iter().map(|&(e, _)| e).max().unwrap();
                let mut coeffs = vec![BigInt::from(0); top + 1];
                for &(e, c) in terms {
                    coeffs[e] = BigInt::from(c);
                }
                let poly = IntPoly::from_coeffs(coeffs);
                let expected_deg = (n as usize) * (n as usize - 1) / 2;
                assert_eq!(poly.degree(), Some(expected_deg), "corpus row n={n} degree");
                if n >= 3 {
                    assert!(poly.leading_coeff().unwrap().is_one(), "corpus row n={n} leading");
                }
                rows.insert(n, poly);
            }
            let corpus = Table1Corpus { rows };
            assert_eq!(
                corpus.checksum(),
                TRANSCRIPTION_SHA256,
                "embedded corpus does not match its transcription checksum"
            );
            corpus
        })
    }

    pub fn row(&self, n: u32) -> Option<&IntPoly> {
        self.rows.get(&n)
    }

    pub fn rows(&self) -> impl Iterator<Item = (u32, &IntPoly)> {
        self.rows.iter().map(|(&n, p)| (n, p))
    }

    /// Hex SHA-256 over `n:c0,c1,…;` for each row in ascending `n`.
    pub fn checksum(&self) -> String {
        let mut canonical = String::new();
        for (n, poly) in &self.rows {
            canonical.push_str(&n.to_string());
            canonical.push(':');
            canonical.push_str(&poly.coeff_strings().join(","));
            canonical.push(';');
        }
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_loads_and_verifies() {
        let corpus = Table1Corpus::get();
        assert_eq!(corpus.rows().count(), 9);
        assert_eq!(corpus.row(2).unwrap(), &IntPoly::from_i64_coeffs(&[-1, 2]));
        assert_eq!(corpus.row(4).unwrap(), &IntPoly::from_i64_coeffs(&[0, 4, -9, 0, 5, 0, 1]));
        assert!(corpus.row(11).is_none());
    }

    #[test]
    fn spot_evaluations() {
        let corpus = Table1Corpus::get();
        // 2q−1 at q = 2, 3 and the n=4 row at q = 2
        assert_eq!(corpus.row(2).unwrap().eval_int(&BigInt::from(2)), BigInt::from(3));
        assert_eq!(corpus.row(2).unwrap().eval_int(&BigInt::from(3)), BigInt::from(5));
        assert_eq!(corpus.row(4).unwrap().eval_int(&BigInt::from(2)), BigInt::from(116));
    }
}
