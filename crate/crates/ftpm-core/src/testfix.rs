//! Shared unit-test fixture: a two-variable, 13-interval sequence with
//! enough overlap structure to exercise every relation case.

use crate::model::{Mss, StateInterval, Symbol, VariableTable};

pub(crate) fn demo_mss() -> (VariableTable, Mss) {
    use Symbol::*;
    let mut vars = VariableTable::new();
    let hr = vars.intern("HR").unwrap();
    let bp = vars.intern("BP").unwrap();
    let iv = |v, s, a, b| StateInterval::new(v, s, a, b).unwrap();
    let mss = Mss::new(vec![
        iv(hr, Normal, 0, 3),     // 1
        iv(bp, Low, 1, 9),        // 2
        iv(hr, Low, 4, 7),        // 3
        iv(hr, Normal, 8, 11),    // 4
        iv(bp, Normal, 10, 17),   // 5
        iv(hr, Low, 12, 14),      // 6
        iv(hr, VeryLow, 15, 19),  // 7
        iv(bp, Low, 18, 22),      // 8
        iv(hr, Low, 20, 29),      // 9
        iv(bp, VeryHigh, 23, 26), // 10
        iv(bp, Low, 27, 31),      // 11
        iv(hr, Normal, 30, 38),   // 12
        iv(bp, Normal, 32, 36),   // 13
    ])
    .unwrap();
    (vars, mss)
}
