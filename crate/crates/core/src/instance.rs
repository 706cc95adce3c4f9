//! Instance model: dimensions, margins and forbidden entries.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_per_row(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A validated instance `Ω(r, c, F)`.
///
/// Indices are 0-based. Forbidden entries are kept both as a sorted pair set
/// (for reporting) and as per-row bit masks (for the move hot paths).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarginSpec {
    m: usize,
    n: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    forbidden: BTreeSet<(usize, usize)>,
    forbidden_mask: Vec<u64>,
    r_max: usize,
    rho_total: usize,
}

impl MarginSpec {
    /// Validates margins and forbidden entries and populates the caches.
    pub fn new(
        rows: Vec<usize>,
        cols: Vec<usize>,
        forbidden: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let m = rows.len();
        let n = cols.len();
        if m == 0 || n == 0 {
            return Err(Error::EmptyDimensions { m, n });
        }
        let mut set = BTreeSet::new();
        for (row, col) in forbidden {
            if row >= m || col >= n {
                return Err(Error::ForbiddenOutOfRange { row, col, m, n });
            }
            if !set.insert((row, col)) {
                return Err(Error::DuplicateForbidden { row, col });
            }
        }
        let row_total: u64 = rows.iter().map(|&r| r as u64).sum();
        let col_total: u64 = cols.iter().map(|&c| c as u64).sum();
        if row_total != col_total {
            return Err(Error::MarginMismatch { rows: row_total, cols: col_total });
        }
        let blocked_in_row = |row: usize| set.range((row, 0)..(row + 1, 0)).count();
        let blocked_in_col = |col: usize| set.iter().filter(|&&(_, j)| j == col).count();
        for (row, &sum) in rows.iter().enumerate() {
            if sum > n - blocked_in_row(row) {
                return Err(Error::InfeasibleRow { row, sum, capacity: n - blocked_in_row(row) });
            }
        }
        for (col, &sum) in cols.iter().enumerate() {
            if sum > m - blocked_in_col(col) {
                return Err(Error::InfeasibleColumn { col, sum, capacity: m - blocked_in_col(col) });
            }
        }
        let wpr = words_per_row(n);
        let mut forbidden_mask = vec![0u64; m * wpr];
        for &(i, j) in &set {
            forbidden_mask[i * wpr + j / WORD_BITS] |= 1 << (j % WORD_BITS);
        }
        let r_max = rows.iter().copied().max().unwrap_or(0);
        Ok(Self { m, n, rows, cols, forbidden: set, forbidden_mask, r_max, rho_total: row_total as usize })
    }

    /// Square instance with every diagonal entry forbidden.
    pub fn with_diagonal_forbidden(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let k = rows.len().min(cols.len());
        Self::new(rows, cols, (0..k).map(|i| (i, i)))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_sums(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_sums(&self) -> &[usize] {
        &self.cols
    }

    pub fn forbidden(&self) -> &BTreeSet<(usize, usize)> {
        &self.forbidden
    }

    pub fn is_forbidden(&self, row: usize, col: usize) -> bool {
        let wpr = self.words_per_row();
        self.forbidden_mask[row * wpr + col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    /// Total number of ones in every matrix of the instance.
    pub fn rho_total(&self) -> usize {
        self.rho_total
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    /// `Some(d)` when the instance is square with every margin equal to `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        if !self.is_square() {
            return None;
        }
        let d = self.rows[0];
        (self.rows.iter().chain(&self.cols).all(|&x| x == d)).then_some(d)
    }

    pub fn has_diagonal_forbidden(&self) -> bool {
        self.is_square() && self.forbidden.len() == self.m && (0..self.m).all(|i| self.forbidden.contains(&(i, i)))
    }

    pub(crate) fn words_per_row(&self) -> usize {
        words_per_row(self.n)
    }

    pub(crate) fn forbidden_row(&self, row: usize) -> &[u64] {
        let wpr = self.words_per_row();
        &self.forbidden_mask[row * wpr..(row + 1) * wpr]
    }
}

/// Named instances that recur in tests, examples and the CLI.
pub mod instances {
    use super::MarginSpec;

    /// `n x n` permutation matrices.
    pub fn permutation(n: usize) -> MarginSpec {
        MarginSpec::new(vec![1; n], vec![1; n], []).expect("valid")
    }

    /// Adjacency matrices of loop-free `d`-regular directed graphs on `n` nodes.
    pub fn regular_directed(n: usize, d: usize) -> MarginSpec {
        MarginSpec::with_diagonal_forbidden(vec![d; n], vec![d; n]).expect("valid")
    }

    /// Four rows with sums `(n/2, n/2, 0, 0)` and unit column sums.
    pub fn split_rows(n: usize) -> MarginSpec {
        assert!(n.is_multiple_of(2), "n must be even");
        MarginSpec::new(vec![n / 2, n / 2, 0, 0], vec![1; n], []).expect("valid")
    }
}
