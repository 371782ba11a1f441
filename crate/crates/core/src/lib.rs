//! Exact computation for pile games with a reflecting floor at zero and an
//! absorbing target at `n` chips or more.
//!
//! Everything here is `no_std` (with `alloc`): rational arithmetic,
//! polynomials and rational functions over Q, C-finite sequence guessing,
//! the single- and two-player game solvers, and a seeded Monte Carlo kernel.
//! File formats, fixtures and the command line live in the `pilegame` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod cfinite;
pub mod mc;
pub mod single_player;
pub mod two_player;

pub use algebra::{AlgebraError, Matrix, Poly, RatFunc, Rational, Series};
pub use cfinite::{CFiniteError, CFiniteRec, ShiftOpPoly};
pub use mc::{SimConfig, SimError, SimReport, Starts};
pub use single_player::{GFTable, GameSpec, MomentReport, SpecError};
pub use two_player::{EndgameMoments, TwoPlayerError, TwoPlayerResult};
