//! Counting and unranking for bounded game spaces.
//!
//! Every game of depth `<= d` is uniquely a triple (score index, Left option
//! multiset, Right option multiset) with options drawn from the depth
//! `<= d-1` space. That gives the space a mixed-radix index: games can be
//! counted exactly, and any index can be unranked back into a game without
//! materializing the space. Exhaustive enumeration walks all indices in
//! order; sampling draws distinct indices uniformly. Both are deterministic.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Multisets of size exactly `k` over `n` elements: `C(n + k - 1, k)`.
pub(crate) fn multiset_exact(n: &BigUint, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut numerator = BigUint::one();
    for i in 0..k {
        numerator *= n + BigUint::from(i);
    }
    let mut denominator = BigUint::one();
    for i in 1..=k {
        denominator *= BigUint::from(i);
    }
    numerator / denominator
}

/// Multisets of size at most `b` over `n` elements.
pub(crate) fn multiset_upto(n: &BigUint, b: usize) -> BigUint {
    let mut total = BigUint::zero();
    for k in 0..=b {
        total += multiset_exact(n, k);
    }
    total
}

/// Unranks rank `r` into a sorted multiset of size `<= b` over `[0, n)`.
/// Ranks are ordered by size first, then lexicographically.
pub(crate) fn unrank_multiset_upto(n: &BigUint, b: usize, mut r: BigUint) -> Vec<BigUint> {
    for k in 0..=b {
        let block = multiset_exact(n, k);
        if r < block {
            return unrank_combination_with_repetition(n, k, r);
        }
        r -= block;
    }
    panic!("multiset rank out of range");
}

/// Unranks a size-`k` combination with repetition from `[0, n)` in
/// lexicographic order of the sorted tuple.
fn unrank_combination_with_repetition(n: &BigUint, k: usize, mut r: BigUint) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(k);
    let mut base = BigUint::zero();
    let mut n = n.clone();
    let mut k = k;
    while k > 0 {
        assert!(!n.is_zero(), "combination rank out of range");
        // Tuples with first element < e number F(e) = ms(n, k) - ms(n - e, k),
        // which is increasing in e; pick the largest e with F(e) <= r.
        let total = multiset_exact(&n, k);
        let mut lo = BigUint::zero();
        let mut hi = &n - 1u32;
        while lo < hi {
            let mid: BigUint = (&lo + &hi + 1u32) >> 1;
            let before = &total - multiset_exact(&(&n - &mid), k);
            if before <= r {
                lo = mid;
            } else {
                hi = mid - 1u32;
            }
        }
        let e = lo;
        r -= &total - multiset_exact(&(&n - &e), k);
        out.push(&base + &e);
        base += &e;
        n -= &e;
        k -= 1;
    }
    out
}

/// Per-depth sizes of a recursively defined space whose level-`d` elements
/// are pairs of option multisets over level `d-1`, scaled by `roots` choices
/// at each node (the score alphabet; 1 for score-free shapes).
pub(crate) struct LevelCounts {
    pub branching: usize,
    /// `levels[d]` = number of distinct elements of depth `<= d`.
    pub levels: Vec<BigUint>,
}

impl LevelCounts {
    pub fn new(roots: usize, branching: usize, max_depth: usize) -> LevelCounts {
        let roots = BigUint::from(roots);
        let mut levels = vec![roots.clone()];
        for _ in 0..max_depth {
            let m = multiset_upto(levels.last().unwrap(), branching);
            levels.push(&roots * &m * &m);
        }
        LevelCounts { branching, levels }
    }

    pub fn total(&self) -> &BigUint {
        self.levels.last().unwrap()
    }

    /// Decomposes an index at `level` into (root choice, left multiset of
    /// child indices, right multiset of child indices). At level 0 the two
    /// multisets are empty.
    pub fn decompose(&self, level: usize, index: &BigUint) -> (usize, Vec<BigUint>, Vec<BigUint>) {
        if level == 0 {
            let root = index.to_usize().expect("leaf index fits usize");
            return (root, Vec::new(), Vec::new());
        }
        let below = &self.levels[level - 1];
        let m = multiset_upto(below, self.branching);
        let mm = &m * &m;
        let (root, rest) = index.div_rem(&mm);
        let (left_rank, right_rank) = rest.div_rem(&m);
        let left = unrank_multiset_upto(below, self.branching, left_rank);
        let right = unrank_multiset_upto(below, self.branching, right_rank);
        (
            root.to_usize().expect("root index fits usize"),
            left,
            right,
        )
    }
}
