//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use curvemix::{find_state, BinaryMatrix, MarginSpec};

/// A start state for the `n`-node, `d`-regular loop-free directed instance.
pub fn regular_start(n: usize, d: usize) -> BinaryMatrix {
    let spec = MarginSpec::with_diagonal_forbidden(vec![d; n], vec![d; n]).expect("valid margins");
    find_state(Arc::new(spec)).expect("regular instances are feasible")
}
