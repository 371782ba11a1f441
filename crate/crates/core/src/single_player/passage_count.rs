//! Closed form for `b_n(n + t, s)` in the `{1, -1}` game:
//!
//! * `t + s` even, `t - s <= 2n`: `(n - s)/(n + t) * binom(n + t, (t + s)/2)`;
//! * `t + s` odd, `t + s < 2n`: `(n + s + 1)/(n + t) * binom(n + t, (t - s - 1)/2)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{binomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("(n, t, s) = ({n}, {t}, {s}) lies outside the region where the closed form holds")]
pub struct OutsideRegion {
    pub n: usize,
    pub t: i64,
    pub s: usize,
}

/// Number of `{1, -1}` paths from `s` that first reach `n` at turn `n + t`.
pub fn passage_count_closed_form(n: usize, t: i64, s: usize) -> Result<BigUint, OutsideRegion> {
    let err = OutsideRegion { n, t, s };
    let (ni, si) = (n as i64, s as i64);
    if s > n || t <= -ni {
        return Err(err);
    }
    let k = (ni + t) as u64;
    let (factor, lower) = if (t + si).rem_euclid(2) == 0 {
        if t - si > 2 * ni {
            return Err(err);
        }
        (ni - si, (t + si).div_euclid(2))
    } else {
        if t + si >= 2 * ni {
            return Err(err);
        }
        (ni + si + 1, (t - si - 1).div_euclid(2))
    };
    let value = Rational::new(
        BigInt::from(factor) * BigInt::from(binomial(k, lower)),
        BigInt::from(k),
    );
    debug_assert!(value.is_integer() && !value.is_negative());
    Ok(value
        .to_integer()
        .to_biguint()
        .unwrap_or_else(BigUint::zero))
}
