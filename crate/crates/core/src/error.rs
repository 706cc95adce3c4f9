use thiserror::Error;

/// Every failure the library reports.
///
/// Row and column indices carried by variants are 0-based; the IO layer is
/// responsible for presenting them 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("instance must have at least one row and one column (got {m}x{n})")]
    EmptyDimensions { m: usize, n: usize },
    #[error("row sums total {rows} but column sums total {cols}")]
    MarginMismatch { rows: u64, cols: u64 },
    #[error("row {row} asks for {sum} ones but only {capacity} entries are allowed")]
    InfeasibleRow { row: usize, sum: usize, capacity: usize },
    #[error("column {col} asks for {sum} ones but only {capacity} entries are allowed")]
    InfeasibleColumn { col: usize, sum: usize, capacity: usize },
    #[error("forbidden entry ({row}, {col}) lies outside a {m}x{n} matrix")]
    ForbiddenOutOfRange { row: usize, col: usize, m: usize, n: usize },
    #[error("forbidden entry ({row}, {col}) listed twice")]
    DuplicateForbidden { row: usize, col: usize },
    #[error("no binary matrix satisfies the instance")]
    EmptyStateSpace,
    #[error("state space exceeds the cap of {cap} states")]
    StateSpaceTooLarge { cap: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("row pair must satisfy i < j (got {i}, {j})")]
    BadRowPair { i: usize, j: usize },
    #[error("matrices belong to different instances")]
    SpecMismatch,
    #[error("matrix does not satisfy the instance: {0}")]
    NotInStateSpace(String),
    #[error("rows {i},{j} and columns {k},{l} do not form a checkerboard")]
    NotACheckerboard { i: usize, j: usize, k: usize, l: usize },
    #[error("switch on rows {i},{j} and columns {k},{l} would set a forbidden entry")]
    ForbiddenEntryTouched { i: usize, j: usize, k: usize, l: usize },
    #[error("trade set must be a {expected}-subset of the trade columns")]
    BadTradeSet { expected: usize },
    #[error("switch probability u*l*gamma = {value} is not below one for rows {i},{j}")]
    AssumptionViolated { i: usize, j: usize, value: String },
    #[error("k = {k} disjoint row pairs need at least {} rows, instance has {m}", 2 * k)]
    KTooLarge { k: usize, m: usize },
    #[error("laziness must lie strictly between 0 and 1 (got {0})")]
    BadDelta(String),
    #[error("invalid chain parameter: {0}")]
    BadParameter(String),
    #[error("row pairs of a collection must be disjoint")]
    OverlappingPairs,
    #[error("Johnson graph J({p},{q}) requires 1 <= q <= p")]
    BadPQ { p: usize, q: usize },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not symmetric (deviation {0:e})")]
    NotSymmetric(f64),
    #[error("chain is not reversible: {0}")]
    NotReversible(String),
    #[error("decomposition mismatch at ({row}, {col}): expected {expected}, got {got}")]
    ReconstructionMismatch { row: usize, col: usize, expected: String, got: String },
    #[error("neighborhood is not a Johnson graph: states {a} and {b} violate adjacency")]
    NotIsomorphic { a: usize, b: usize },
    #[error("block condition fails on block {block}: eigenvalue {eigenvalue} gives {value}")]
    ConditionFailed { block: usize, eigenvalue: f64, value: f64 },
    #[error("transition matrix has eigenvalue {0} below zero")]
    NegativeEigenvalue(f64),
    #[error("lazy chain has eigenvalue {0} below zero")]
    NegativeLazySpectrum(f64),
    #[error("chain is periodic (smallest eigenvalue {0})")]
    PeriodicChain(f64),
    #[error("state graph has {0} connected components")]
    Reducible(usize),
    #[error("instance is not regular: {0}")]
    NotRegular(String),
    #[error("mixing horizon of {0} steps exceeded")]
    HorizonExceeded(usize),
    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("Dirichlet form and PSD test disagree: {0}")]
    InconsistentVerdict(String),
    #[error("mixing bound violated: {0}")]
    BoundViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
