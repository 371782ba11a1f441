//! Recursions in the target `n` for the structured families.
//!
//! For `{1, -u}` the only way up is one chip at a time, so reaching `n` from
//! `s` factors through every intermediate count: `G_{n,s} = G_{n,0} / G_{s,0}`,
//! and `G_{n,0}` obeys
//! `1/G_{n,0} = 1/(p x G_{n-1,0}) - q/(p G_{n-u-1,0})` with `G_{m,0} = 1` for
//! `m <= 0`.
//!
//! For `{2, -1}` the game can end exactly on `n` or one past it, and the two
//! cases are tracked separately as a [`PQPair`].

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::solve::GFTable;
use super::spec::{GameSpec, SpecError};
use crate::algebra::{Poly, RatFunc, Rational};

fn monomial(c: &Rational, k: usize) -> RatFunc {
    RatFunc::from_poly(Poly::monomial(c.clone(), k))
}

/// `G_{m,0}` for `m = 0..=n` in the `{1, -u}` game.
fn one_minus_u_from_zero(p: &Rational, u: usize, n: usize) -> Vec<RatFunc> {
    let q = Rational::one() - p;
    let px = monomial(p, 1);
    let q_over_p = RatFunc::constant(&q / p);
    let mut g: Vec<RatFunc> = vec![RatFunc::one()];
    for m in 1..=n {
        let below = if m > u + 1 { &g[m - u - 1] } else { &g[0] };
        let inv = (&px * &g[m - 1]).recip().expect("nonzero")
            - q_over_p.checked_div(below).expect("nonzero");
        g.push(inv.recip().expect("nonzero"));
    }
    g
}

/// `{1, -u}` table from the recursion in `n` plus the factorization in `s`.
pub fn gf_recursive_1mu(p: &Rational, u: u32, n: usize) -> Result<GFTable, SpecError> {
    let spec = GameSpec::one_minus(p.clone(), u)?;
    let from_zero = one_minus_u_from_zero(p, u as usize, n);
    let top = &from_zero[n];
    let gfs = (0..=n)
        .map(|s| top.checked_div(&from_zero[s]).expect("nonzero"))
        .collect();
    Ok(GFTable::new(n, spec, gfs))
}

/// `{1, -1}` table, seeded with `G_{0,0} = 1` and `G_{1,0} = p x / (1 - q x)`.
pub fn gf_recursive_1m1(p: &Rational, n: usize) -> Result<GFTable, SpecError> {
    gf_recursive_1mu(p, 1, n)
}

/// Split of `G_{n,s}` for `{2, -1}` by where the game ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQPair {
    /// Ends exactly on `n` (the last move was +2 from `n - 2`).
    pub landing: RatFunc,
    /// Ends on `n + 1` (the last move was +2 from `n - 1`).
    pub overshoot: RatFunc,
}

impl PQPair {
    pub fn total(&self) -> RatFunc {
        &self.landing + &self.overshoot
    }
}

/// `{2, -1}` table together with the landing/overshoot split for each start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTable {
    pub table: GFTable,
    /// `pairs[s]` for `s = 0..=n`.
    pub pairs: Vec<PQPair>,
}

/// Builds `{2, -1}` tables bottom-up in `n`.
///
/// For `m >= 2` and `s <= m - 2`:
/// landing(m, s) = landing(m, m-1) landing(m-1, s) + overshoot(m-1, s),
/// overshoot(m, s) = overshoot(m, m-1) landing(m-1, s);
/// and for `s = m - 1`:
/// overshoot(m, m-1) = p x / (1 - q x landing(m-1, m-2)),
/// landing(m, m-1) = (q/p) overshoot(m, m-1) overshoot(m-1, m-2).
pub fn gf_recursive_2m1(p: &Rational, n: usize) -> Result<SplitTable, SpecError> {
    let spec = GameSpec::two_minus_one(p.clone())?;
    let q = Rational::one() - p;
    let done = PQPair {
        landing: RatFunc::one(),
        overshoot: RatFunc::zero(),
    };
    let mut row: Vec<PQPair> = vec![done.clone()];
    if n >= 1 {
        let geometric = RatFunc::new(
            Poly::monomial(p.clone(), 1),
            Poly::new(vec![Rational::one(), -q.clone()]),
        )
        .expect("nonzero");
        row = vec![
            PQPair {
                landing: RatFunc::zero(),
                overshoot: geometric,
            },
            done.clone(),
        ];
    }
    let px = monomial(p, 1);
    let qx = monomial(&q, 1);
    let q_over_p = RatFunc::constant(&q / p);
    for m in 2..=n {
        let prev = &row;
        let last = &prev[m - 2];
        let overshoot_top = px
            .checked_div(&(RatFunc::one() - &qx * &last.landing))
            .expect("nonzero");
        let landing_top = &(&q_over_p * &overshoot_top) * &last.overshoot;
        let mut next: Vec<PQPair> = prev[..m - 1]
            .iter()
            .map(|below| PQPair {
                landing: &(&landing_top * &below.landing) + &below.overshoot,
                overshoot: &overshoot_top * &below.landing,
            })
            .collect();
        next.push(PQPair {
            landing: landing_top,
            overshoot: overshoot_top,
        });
        next.push(done.clone());
        row = next;
    }
    let gfs = row.iter().map(PQPair::total).collect();
    Ok(SplitTable {
        table: GFTable::new(n, spec, gfs),
        pairs: row,
    })
}
