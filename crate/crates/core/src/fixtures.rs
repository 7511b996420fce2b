//! Shared unit-test fixtures.

use crate::pic::{Interval, Pack, PicInstance};
use crate::sat::{Clause, CnfFormula, Literal};

/// The running example instance: N = 9 with three packs.
pub(crate) fn example_instance() -> PicInstance {
    PicInstance::new(
        9,
        vec![
            Pack::new(vec![Interval::new(1, 6), Interval::new(5, 9)]),
            Pack::new(vec![
                Interval::new(1, 3),
                Interval::new(4, 6),
                Interval::new(7, 7),
            ]),
            Pack::new(vec![Interval::new(4, 4)]),
        ],
    )
}

/// The worked example formula with every variable twice positive and twice
/// negative: (p1 v p2 v p3) ^ (p1 v ~p2 v ~p3) ^ (~p1 v ~p2 v ~p3) ^ (~p1 v p2 v p3).
pub(crate) fn example_b2_cnf() -> CnfFormula {
    let p = Literal::positive;
    let n = Literal::negative;
    CnfFormula::new(
        3,
        vec![
            Clause::new(vec![p(1), p(2), p(3)]),
            Clause::new(vec![p(1), n(2), n(3)]),
            Clause::new(vec![n(1), n(2), n(3)]),
            Clause::new(vec![n(1), p(2), p(3)]),
        ],
    )
    .unwrap()
}
