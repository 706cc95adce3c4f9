//! Bit-packed binary matrices and the two elementary moves.
//!
//! Column `j` of row `i` lives at bit `j % 64` of word `i * wpr + j / 64`.
//! The canonical order is row-major with column 0 most significant, which is
//! the order of [`BinaryMatrix::canonical_key`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::instance::{MarginSpec, WORD_BITS};

#[derive(Clone)]
pub struct BinaryMatrix {
    spec: Arc<MarginSpec>,
    words: Vec<u64>,
}

/// The sets `U_ij(A)` and `L_ij(A)` for a row pair `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPairStats {
    pub i: usize,
    pub j: usize,
    /// Columns with a one in row `i`, a zero in row `j`, and `(j, k)` allowed.
    pub upper: Vec<usize>,
    /// Columns with a zero in row `i`, a one in row `j`, and `(i, k)` allowed.
    pub lower: Vec<usize>,
    /// `upper ∪ lower`, ascending.
    pub trade_columns: Vec<usize>,
}

impl RowPairStats {
    pub fn u(&self) -> usize {
        self.upper.len()
    }

    pub fn l(&self) -> usize {
        self.lower.len()
    }
}

/// A single switch: rows `i < j`, columns `k < l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Switch {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

fn bits_of(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * WORD_BITS + b)
        })
    })
}

impl BinaryMatrix {
    /// Builds a matrix from 0/1 rows and checks it belongs to `spec`.
    pub fn from_rows(spec: Arc<MarginSpec>, rows: &[Vec<u8>]) -> Result<Self> {
        let (m, n) = (spec.m(), spec.n());
        if rows.len() != m || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotInStateSpace(format!("expected a {m}x{n} matrix")));
        }
        let wpr = spec.words_per_row();
        let mut words = vec![0u64; m * wpr];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => words[i * wpr + j / WORD_BITS] |= 1 << (j % WORD_BITS),
                    _ => return Err(Error::NotInStateSpace(format!("entry ({i}, {j}) is {v}"))),
                }
            }
        }
        let a = Self { spec, words };
        a.check_membership()?;
        Ok(a)
    }

    pub(crate) fn from_words_unchecked(spec: Arc<MarginSpec>, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), spec.m() * spec.words_per_row());
        Self { spec, words }
    }

    pub fn spec(&self) -> &Arc<MarginSpec> {
        &self.spec
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        let wpr = self.spec.words_per_row();
        self.words[i * wpr + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    /// Row `i` as bit words; column `j` is bit `j % 64` of word `j / 64`.
    pub fn row_words(&self, i: usize) -> &[u64] {
        let wpr = self.spec.words_per_row();
        &self.words[i * wpr..(i + 1) * wpr]
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn flip(&mut self, i: usize, j: usize) {
        let wpr = self.spec.words_per_row();
        self.words[i * wpr + j / WORD_BITS] ^= 1 << (j % WORD_BITS);
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.spec.m()).map(|i| (0..self.spec.n()).map(|j| self.get(i, j) as u8).collect()).collect()
    }

    /// Verifies margins and forbidden zeros.
    pub fn check_membership(&self) -> Result<()> {
        let spec = &self.spec;
        for i in 0..spec.m() {
            let row = self.row_words(i);
            let ones: usize = row.iter().map(|w| w.count_ones() as usize).sum();
            if ones != spec.row_sums()[i] {
                return Err(Error::NotInStateSpace(format!(
                    "row {i} has {ones} ones, expected {}",
                    spec.row_sums()[i]
                )));
            }
            if row.iter().zip(spec.forbidden_row(i)).any(|(a, f)| a & f != 0) {
                return Err(Error::NotInStateSpace(format!("row {i} sets a forbidden entry")));
            }
        }
        for j in 0..spec.n() {
            let ones = (0..spec.m()).filter(|&i| self.get(i, j)).count();
            if ones != spec.col_sums()[j] {
                return Err(Error::NotInStateSpace(format!(
                    "column {j} has {ones} ones, expected {}",
                    spec.col_sums()[j]
                )));
            }
        }
        Ok(())
    }

    fn check_row_pair(&self, i: usize, j: usize) -> Result<()> {
        let m = self.spec.m();
        for idx in [i, j] {
            if idx >= m {
                return Err(Error::IndexOutOfRange { index: idx, limit: m });
            }
        }
        if i >= j {
            return Err(Error::BadRowPair { i, j });
        }
        Ok(())
    }

    /// Word masks of `U_ij` and `L_ij`.
    pub(crate) fn pair_masks(&self, i: usize, j: usize) -> (Vec<u64>, Vec<u64>) {
        let (ri, rj) = (self.row_words(i), self.row_words(j));
        let (fi, fj) = (self.spec.forbidden_row(i), self.spec.forbidden_row(j));
        let upper = (0..ri.len()).map(|w| ri[w] & !rj[w] & !fj[w]).collect();
        let lower = (0..ri.len()).map(|w| !ri[w] & rj[w] & !fi[w]).collect();
        (upper, lower)
    }

    /// `(u_ij, l_ij)` without materializing the column sets.
    pub(crate) fn pair_counts(&self, i: usize, j: usize) -> (usize, usize) {
        let (ri, rj) = (self.row_words(i), self.row_words(j));
        let (fi, fj) = (self.spec.forbidden_row(i), self.spec.forbidden_row(j));
        let mut u = 0;
        let mut l = 0;
        for w in 0..ri.len() {
            u += (ri[w] & !rj[w] & !fj[w]).count_ones() as usize;
            l += (!ri[w] & rj[w] & !fi[w]).count_ones() as usize;
        }
        (u, l)
    }

    pub fn row_pair_stats(&self, i: usize, j: usize) -> Result<RowPairStats> {
        self.check_row_pair(i, j)?;
        let (u, l) = self.pair_masks(i, j);
        let upper: Vec<usize> = bits_of(&u).collect();
        let lower: Vec<usize> = bits_of(&l).collect();
        let mut trade_columns: Vec<usize> = upper.iter().chain(&lower).copied().collect();
        trade_columns.sort_unstable();
        Ok(RowPairStats { i, j, upper, lower, trade_columns })
    }

    /// Reports the switch turning `self` into `other`, if they differ by exactly one.
    pub fn is_switch_adjacent(&self, other: &BinaryMatrix) -> Result<Option<Switch>> {
        if !self.same_spec(other) {
            return Err(Error::SpecMismatch);
        }
        let wpr = self.spec.words_per_row();
        let mut diff_rows = Vec::new();
        for i in 0..self.spec.m() {
            let differs = (0..wpr).any(|w| self.words[i * wpr + w] != other.words[i * wpr + w]);
            if differs {
                if diff_rows.len() == 2 {
                    return Ok(None);
                }
                diff_rows.push(i);
            }
        }
        let [i, j] = match diff_rows[..] {
            [i, j] => [i, j],
            _ => return Ok(None),
        };
        let diff_i: Vec<u64> = (0..wpr).map(|w| self.words[i * wpr + w] ^ other.words[i * wpr + w]).collect();
        let diff_j: Vec<u64> = (0..wpr).map(|w| self.words[j * wpr + w] ^ other.words[j * wpr + w]).collect();
        if diff_i != diff_j {
            return Ok(None);
        }
        let cols: Vec<usize> = bits_of(&diff_i).collect();
        let [k, l] = match cols[..] {
            [k, l] => [k, l],
            _ => return Ok(None),
        };
        // Row i must change in opposite directions at k and l for a checkerboard.
        if self.get(i, k) == self.get(i, l) {
            return Ok(None);
        }
        if [(i, k), (i, l), (j, k), (j, l)].iter().any(|&(a, b)| self.spec.is_forbidden(a, b)) {
            return Ok(None);
        }
        Ok(Some(Switch { i, j, k, l }))
    }

    /// Replaces the checkerboard on rows `i, j` and columns `k, l` by the other one.
    pub fn apply_switch(&self, i: usize, j: usize, k: usize, l: usize) -> Result<BinaryMatrix> {
        let (m, n) = (self.spec.m(), self.spec.n());
        for (idx, limit) in [(i, m), (j, m), (k, n), (l, n)] {
            if idx >= limit {
                return Err(Error::IndexOutOfRange { index: idx, limit });
            }
        }
        let checker = i != j
            && k != l
            && self.get(i, k) == self.get(j, l)
            && self.get(i, l) == self.get(j, k)
            && self.get(i, k) != self.get(i, l);
        if !checker {
            return Err(Error::NotACheckerboard { i, j, k, l });
        }
        if [(i, k), (i, l), (j, k), (j, l)].iter().any(|&(a, b)| self.spec.is_forbidden(a, b)) {
            return Err(Error::ForbiddenEntryTouched { i, j, k, l });
        }
        let mut b = self.clone();
        for (a, c) in [(i, k), (i, l), (j, k), (j, l)] {
            b.flip(a, c);
        }
        Ok(b)
    }

    /// Binomial trade on rows `i < j`: row `i` gets its trade-column ones exactly at `chosen`.
    pub fn apply_trade(&self, i: usize, j: usize, chosen: &[usize]) -> Result<BinaryMatrix> {
        let stats = self.row_pair_stats(i, j)?;
        let u = stats.u();
        let mut set = chosen.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.len() != chosen.len()
            || set.len() != u
            || set.iter().any(|c| stats.trade_columns.binary_search(c).is_err())
        {
            return Err(Error::BadTradeSet { expected: u });
        }
        let mut b = self.clone();
        for &col in &stats.trade_columns {
            let top = set.binary_search(&col).is_ok();
            if b.get(i, col) != top {
                b.flip(i, col);
                b.flip(j, col);
            }
        }
        Ok(b)
    }

    /// Row-major bytes, each row padded to whole bytes, column 0 as the most significant bit.
    pub fn canonical_key(&self) -> Vec<u8> {
        let (m, n) = (self.spec.m(), self.spec.n());
        let bytes_per_row = n.div_ceil(8);
        let mut key = vec![0u8; m * bytes_per_row];
        for i in 0..m {
            for j in bits_of(self.row_words(i)) {
                key[i * bytes_per_row + j / 8] |= 0x80 >> (j % 8);
            }
        }
        key
    }

    pub fn canonical_hex(&self) -> String {
        self.canonical_key().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_canonical_key(spec: Arc<MarginSpec>, key: &[u8]) -> Result<Self> {
        let (m, n) = (spec.m(), spec.n());
        let bytes_per_row = n.div_ceil(8);
        if key.len() != m * bytes_per_row {
            return Err(Error::Parse(format!("key has {} bytes, expected {}", key.len(), m * bytes_per_row)));
        }
        let rows: Vec<Vec<u8>> =
            (0..m).map(|i| (0..n).map(|j| (key[i * bytes_per_row + j / 8] >> (7 - j % 8)) & 1).collect()).collect();
        let padding_set =
            (0..m).any(|i| (n..bytes_per_row * 8).any(|j| (key[i * bytes_per_row + j / 8] >> (7 - j % 8)) & 1 == 1));
        if padding_set {
            return Err(Error::Parse("padding bits must be zero".into()));
        }
        Self::from_rows(spec, &rows)
    }

    pub fn from_canonical_hex(spec: Arc<MarginSpec>, hex: &str) -> Result<Self> {
        let hex = hex.trim();
        if !hex.len().is_multiple_of(2) {
            return Err(Error::Parse("odd-length hex key".into()));
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|p| u8::from_str_radix(&hex[p..p + 2], 16).map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<u8>>>()?;
        Self::from_canonical_key(spec, &bytes)
    }

    fn same_spec(&self, other: &BinaryMatrix) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec
    }
}

impl PartialEq for BinaryMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words && self.same_spec(other)
    }
}

impl Eq for BinaryMatrix {}

impl Hash for BinaryMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl Ord for BinaryMatrix {
    /// Same order as comparing canonical keys.
    fn cmp(&self, other: &Self) -> Ordering {
        for (&a, &b) in self.words.iter().zip(&other.words) {
            if a != b {
                let low = (a ^ b).trailing_zeros();
                return if a >> low & 1 == 1 { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for BinaryMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix[{}]", self.canonical_hex())
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for v in row {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
