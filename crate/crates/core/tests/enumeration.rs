mod common;

use std::sync::Arc;

use curvemix::{enumerate_states, BinaryMatrix, Error, MarginSpec, DEFAULT_MAX_STATES};
use proptest::prelude::*;

use common::{arb_instance, mask_margins, state_mask};

/// Filter all `2^(mn)` matrices.
fn brute_force(spec: &MarginSpec) -> Vec<u64> {
    let (m, n) = (spec.m(), spec.n());
    (0..1u64 << (m * n))
        .filter(|&mask| {
            let (r, c) = mask_margins(mask, m, n);
            r == spec.row_sums()
                && c == spec.col_sums()
                && spec.forbidden().iter().all(|&(i, j)| mask >> (i * n + j) & 1 == 0)
        })
        .collect()
}

proptest! {
    #[test]
    fn matches_brute_force((spec, _) in arb_instance(4, 4)) {
        let expected = brute_force(&spec);
        let space = enumerate_states(Arc::new(spec), DEFAULT_MAX_STATES).unwrap();
        let mut got: Vec<u64> = (0..space.len()).map(|i| state_mask(&space, i)).collect();
        got.sort_unstable();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn states_sorted_by_canonical_key((spec, _) in arb_instance(4, 5)) {
        let space = enumerate_states(Arc::new(spec), DEFAULT_MAX_STATES).unwrap();
        for w in space.states().windows(2) {
            prop_assert!(w[0] < w[1]);
            prop_assert!(w[0].canonical_key() < w[1].canonical_key());
        }
    }

    #[test]
    fn keys_round_trip((spec, rows) in arb_instance(5, 10)) {
        let spec = Arc::new(spec);
        let a = BinaryMatrix::from_rows(spec.clone(), &rows).unwrap();
        let back = BinaryMatrix::from_canonical_hex(spec.clone(), &a.canonical_hex()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_rows(), rows);
    }

    #[test]
    fn index_of_inverts_state((spec, rows) in arb_instance(4, 4)) {
        let spec = Arc::new(spec);
        let space = enumerate_states(spec.clone(), DEFAULT_MAX_STATES).unwrap();
        for (i, a) in space.states().iter().enumerate() {
            prop_assert_eq!(space.index_of(a), Some(i));
        }
        let a = BinaryMatrix::from_rows(spec, &rows).unwrap();
        prop_assert!(space.index_of(&a).is_some());
    }
}

#[test]
fn infeasible_margins_enumerate_to_nothing() {
    // Column 1 needs three ones but row 3 is empty.
    let spec = MarginSpec::new(vec![2, 2, 0], vec![3, 1], []).unwrap();
    assert_eq!(brute_force(&spec), Vec::<u64>::new());
    assert_eq!(enumerate_states(Arc::new(spec), DEFAULT_MAX_STATES).unwrap_err(), Error::EmptyStateSpace);
}

#[test]
fn cap_is_enforced() {
    let spec = Arc::new(MarginSpec::new(vec![3; 6], vec![3; 6], []).unwrap());
    assert_eq!(enumerate_states(spec, 100).unwrap_err(), Error::StateSpaceTooLarge { cap: 100 });
}

#[test]
fn wide_rows_span_several_words() {
    // 70 columns need two words per row.
    let spec = Arc::new(MarginSpec::new(vec![1, 1], [vec![1, 1], vec![0; 68]].concat(), []).unwrap());
    let space = enumerate_states(spec, DEFAULT_MAX_STATES).unwrap();
    assert_eq!(space.len(), 2);
    assert!(space.state(0) < space.state(1));
}
