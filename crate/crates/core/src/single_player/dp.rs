//! Turn-by-turn dynamic programming over states `0..n`.
//!
//! `B_n(k, s)` (probabilities) and `b_n(k, s)` (path counts, one unit of
//! weight per choice) satisfy
//! `b_n(k, s) = sum_r b_n(k - 1, next(s, r))`, with `b_n(0, s) = [s >= n]`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::spec::{GameSpec, Next};
use crate::algebra::{Rational, Series};

/// `table[k][s]` for `k = 0..=turns`, `s = 0..=n` (index `n` is "already won").
fn first_passage_table<W>(weights: &[(i64, W)], n: usize, turns: usize) -> Vec<Vec<W>>
where
    W: Clone + Zero + One,
    for<'a> &'a W: Mul<&'a W, Output = W> + Add<&'a W, Output = W>,
{
    let mut rows: Vec<Vec<W>> = Vec::with_capacity(turns + 1);
    let mut first = vec![W::zero(); n + 1];
    first[n] = W::one();
    rows.push(first);
    for k in 1..=turns {
        let prev = &rows[k - 1];
        let mut row = vec![W::zero(); n + 1];
        for (s, slot) in row.iter_mut().enumerate().take(n) {
            let mut acc = W::zero();
            for (step, w) in weights {
                let t = match GameSpec::next(n, s, *step) {
                    Next::Absorbed => n,
                    Next::State(t) => t,
                };
                acc = &acc + &(w * &prev[t]);
            }
            *slot = acc;
        }
        rows.push(row);
    }
    rows
}

/// `B_n(k, s)` for every start `s = 0..=n` (series index), `k = 0..=turns`.
pub fn dp_prob_table(spec: &GameSpec, n: usize, turns: usize) -> Vec<Series> {
    let table = first_passage_table(spec.choices(), n, turns);
    (0..=n)
        .map(|s| Series::new(table.iter().map(|row| row[s].clone()).collect()))
        .collect()
}

/// `B_n(k, s)` for `k = 0..=turns`. Starts at or beyond `n` are already over.
pub fn dp_prob_series(spec: &GameSpec, n: usize, s: usize, turns: usize) -> Series {
    let table = first_passage_table(spec.choices(), n, turns);
    Series::new(table.iter().map(|row| row[s.min(n)].clone()).collect())
}

/// `b_n(k, s)` for every `k = 0..=turns` (outer) and `s = 0..=n` (inner).
pub fn path_count_table(steps: &[i64], n: usize, turns: usize) -> Vec<Vec<BigUint>> {
    let weights: Vec<(i64, BigUint)> = steps.iter().map(|&s| (s, BigUint::one())).collect();
    first_passage_table(&weights, n, turns)
}

/// Number of step sequences that first reach `n` or more at turn `k` from `s`.
pub fn path_count(steps: &[i64], n: usize, k: usize, s: usize) -> BigUint {
    path_count_table(steps, n, k)[k][s.min(n)].clone()
}

/// Convenience: `B_n(k, s)` for one `(k, s)`.
pub fn prob_at(spec: &GameSpec, n: usize, k: usize, s: usize) -> Rational {
    dp_prob_series(spec, n, s, k).coeffs()[k].clone()
}
