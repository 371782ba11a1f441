//! Recurrences in `n` for the common denominator of `G_{n,s}`:
//!
//! * `{1, -1}`: `Q_n = Q_{n-1} - q p x^2 Q_{n-2}`, `Q_0 = 1`, `Q_1 = 1 - q x`;
//! * `{1, -u}`: `Q_n = Q_{n-1} - q p^u x^{u+1} Q_{n-u-1}`;
//! * `{2, -1}`: `D_n = D_{n-1} - p q^2 x^3 D_{n-3}`.
//!
//! The last two are seeded with solver denominators for the first `u + 1`
//! (resp. 3) targets.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Pow};

use super::solve::solve_gf;
use super::spec::{GameSpec, SpecError};
use crate::algebra::{Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenomFamily {
    PlusMinusOne,
    OneMinusU(u32),
    TwoMinusOne,
}

impl DenomFamily {
    pub fn spec(&self, p: &Rational) -> Result<GameSpec, SpecError> {
        match *self {
            DenomFamily::PlusMinusOne => GameSpec::plus_minus_one(p.clone()),
            DenomFamily::OneMinusU(u) => GameSpec::one_minus(p.clone(), u),
            DenomFamily::TwoMinusOne => GameSpec::two_minus_one(p.clone()),
        }
    }

    /// `(lag, coefficient * x^power)` such that `Q_n = Q_{n-1} - term * Q_{n-lag}`.
    fn correction(&self, p: &Rational) -> (usize, Poly) {
        let q = Rational::one() - p;
        match *self {
            DenomFamily::PlusMinusOne => (2, Poly::monomial(&q * p, 2)),
            DenomFamily::OneMinusU(u) => (
                u as usize + 1,
                Poly::monomial(&q * p.clone().pow(u), u as usize + 1),
            ),
            DenomFamily::TwoMinusOne => (3, Poly::monomial(p * &q * &q, 3)),
        }
    }
}

/// `Q_0, ..., Q_n` for the family.
pub fn denom_sequence(family: DenomFamily, p: &Rational, n: usize) -> Result<Vec<Poly>, SpecError> {
    let (lag, term) = family.correction(p);
    let mut seq: Vec<Poly> = match family {
        DenomFamily::PlusMinusOne => {
            vec![
                Poly::one(),
                Poly::new(vec![Rational::one(), p - Rational::one()]),
            ]
        }
        _ => {
            let spec = family.spec(p)?;
            (0..lag)
                .map(|m| solve_gf(&spec, m).expect("valid game").common_denominator())
                .collect()
        }
    };
    for m in seq.len()..=n {
        let next = &seq[m - 1] - &(&term * &seq[m - lag]);
        seq.push(next);
    }
    seq.truncate(n + 1);
    Ok(seq)
}

/// `Q_n` (resp. `D_n`).
pub fn denom_recurrence(family: DenomFamily, p: &Rational, n: usize) -> Result<Poly, SpecError> {
    Ok(denom_sequence(family, p, n)?.pop().expect("n + 1 entries"))
}
