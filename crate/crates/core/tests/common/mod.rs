#![allow(dead_code)]

use std::collections::BTreeSet;

use fatpoints::{is_minus_one_class, DivisorClass};

/// All integer vectors with `sum m = (n+1) d - 1` and `sum m^2 = (n-1) d^2 + 1`
/// for `0 <= d <= d_max`, found by bounded search and then filtered by the
/// descent test.
pub fn exhaustive_minus_one(n: usize, r: usize, d_max: i64) -> BTreeSet<DivisorClass> {
    fn search(r: usize, sum_left: i64, sq_left: i64, bound: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let remaining = (r - acc.len()) as i64;
        if remaining == 0 {
            if sum_left == 0 && sq_left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        // Cauchy-Schwarz: sum_left^2 <= remaining * sq_left.
        if sum_left * sum_left > remaining * sq_left {
            return;
        }
        for m in -bound..=bound {
            if m * m > sq_left {
                continue;
            }
            acc.push(m);
            search(r, sum_left - m, sq_left - m * m, bound, acc, out);
            acc.pop();
        }
    }
    let n_i = n as i64;
    let mut found = BTreeSet::new();
    for d in 0..=d_max {
        let sum = (n_i + 1) * d - 1;
        let sq = (n_i - 1) * d * d + 1;
        let bound = (sq as f64).sqrt() as i64 + 1;
        let mut vectors = Vec::new();
        search(r, sum, sq, bound, &mut Vec::new(), &mut vectors);
        for m in vectors {
            let class = DivisorClass::from_ints(n, d, &m).unwrap();
            if is_minus_one_class(&class).verdict {
                found.insert(class);
            }
        }
    }
    found
}

/// Non-increasing sequences of length `len` with entries in `0..=max`.
pub fn sorted_tuples(len: usize, max: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, cap: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if acc.len() == len {
            out.push(acc.clone());
            return;
        }
        for m in (0..=cap).rev() {
            acc.push(m);
            go(len, m, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::new(), &mut out);
    out
}
