//! Oracles shared by the integration suites. Everything here is computed by
//! brute force, independently of the library's own algorithms.

use std::collections::BTreeSet;

/// Exhaustive enumeration by gap sets: every numerical semigroup of genus at
/// most `max_genus` has all of its gaps below `2 * max_genus`, so scanning
/// every subset of `[1, 2 * max_genus)` and keeping those whose complement is
/// closed under addition finds each semigroup exactly once.
pub fn naive_gap_sets(max_genus: i64) -> BTreeSet<Vec<i64>> {
    let bound = (2 * max_genus).max(1);
    let bits = (bound - 1) as u32;
    assert!(bits <= 20, "oracle is exponential; keep the genus small");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1u32 << bits) {
        let gaps: Vec<i64> = (1..bound).filter(|&n| mask >> (n - 1) & 1 == 1).collect();
        if gaps.len() as i64 > max_genus {
            continue;
        }
        let is_member = |n: i64| !gaps.contains(&n);
        let closed = (1..bound).all(|a| {
            (a..bound).all(|b| {
                !is_member(a) || !is_member(b) || a + b >= bound || is_member(a + b)
            })
        });
        if closed {
            out.insert(gaps);
        }
    }
    out
}
