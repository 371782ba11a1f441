//! Two players alternate turns on the same game, the first player moving
//! first; whoever first reaches `n` or more wins.
//!
//! The first player wins on their `k`-th turn with probability
//! `w(k) = B_n(k, s1) * C_n(k-1, s2)` and loses on the second player's `k`-th
//! turn with probability `l(k) = C_n(k, s1) * B_n(k, s2)`, where
//! `C_n(k, s) = 1 - sum_{i<=k} B_n(i, s)` and `C_n(-1, s) = 1`. Both are
//! Hadamard products of C-finite sequences, so their generating functions
//! `W`, `L` are rational with denominator degree at most `n(n+1)` and are
//! recovered by guessing. `T(x) = W(x^2)/x + L(x^2)` counts total turns.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, Matrix, RatFunc, Rational, Series};
use crate::cfinite::{guess_recurrence, hadamard_guess, CFiniteError, CFiniteRec, GUESS_MARGIN};
use crate::single_player::dp::dp_prob_table;
use crate::single_player::moments::{central_moments, straight_moments};
use crate::single_player::spec::{GameSpec, Next};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoPlayerError {
    /// The degree bound always holds, so this indicates a bug.
    #[error("no rational fit for the {what} series at n = {n} within degree {bound}")]
    NoFit {
        what: &'static str,
        n: usize,
        bound: usize,
    },
    #[error("guessed generating function disagrees with the {what} series at term {index}")]
    Reexpansion { what: &'static str, index: usize },
    #[error("target must be at least 1")]
    ZeroTarget,
    #[error(transparent)]
    CFinite(#[from] CFiniteError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `n(n+1)`: bound on the denominator degree of `W` and `L`.
pub fn degree_bound(n: usize) -> usize {
    n * (n + 1)
}

/// Number of series terms used to guess `W` and `L`: `2 n(n+1) + 10`.
pub fn guess_terms(n: usize) -> usize {
    2 * degree_bound(n) + 2 * GUESS_MARGIN
}

/// `C_n(k - 1, s)` for `k = 0..=turns`, i.e. survival delayed by one turn.
fn delayed_survival(b: &Series) -> Series {
    b.survival().delay(Rational::one())
}

/// `w_n(k, s1, s2)` for `k = 0..=turns`.
pub fn win_series(spec: &GameSpec, n: usize, s1: usize, s2: usize, turns: usize) -> Series {
    let table = dp_prob_table(spec, n, turns);
    table[s1.min(n)].hadamard(&delayed_survival(&table[s2.min(n)]))
}

/// `l_n(k, s1, s2)` for `k = 0..=turns`.
pub fn lose_series(spec: &GameSpec, n: usize, s1: usize, s2: usize, turns: usize) -> Series {
    let table = dp_prob_table(spec, n, turns);
    table[s1.min(n)].survival().hadamard(&table[s2.min(n)])
}

fn guess_checked(
    a: &Series,
    b: &Series,
    bound: usize,
    n: usize,
    what: &'static str,
) -> Result<RatFunc, TwoPlayerError> {
    let f = hadamard_guess(a, b, bound)?.ok_or(TwoPlayerError::NoFit { what, n, bound })?;
    let product = a.hadamard(b);
    let again = f.series(product.order())?;
    if let Some(index) = (0..product.len()).find(|&k| again.coeffs()[k] != product.coeffs()[k]) {
        return Err(TwoPlayerError::Reexpansion { what, index });
    }
    Ok(f)
}

/// Guessed `(W, L)` from `2 n(n+1) + 10` exact series terms.
pub fn guess_wl(
    spec: &GameSpec,
    n: usize,
    s1: usize,
    s2: usize,
) -> Result<(RatFunc, RatFunc), TwoPlayerError> {
    let turns = guess_terms(n) - 1;
    let table = dp_prob_table(spec, n, turns);
    let (b1, b2) = (&table[s1.min(n)], &table[s2.min(n)]);
    let bound = degree_bound(n);
    let w = guess_checked(b1, &delayed_survival(b2), bound, n, "win")?;
    let l = guess_checked(&b1.survival(), b2, bound, n, "lose")?;
    Ok((w, l))
}

/// `T(x) = W(x^2)/x + L(x^2)`; `T = 1` when the first player has already won.
pub fn make_t(w: &RatFunc, l: &RatFunc) -> RatFunc {
    if !w.num().coeff(0).is_zero() {
        return RatFunc::one();
    }
    &w.compose_power(2).div_x() + &l.compose_power(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPlayerResult {
    pub n: usize,
    pub s1: usize,
    pub s2: usize,
    pub w: RatFunc,
    pub l: RatFunc,
    pub t: RatFunc,
    /// `W(1)`, the first player's winning probability.
    pub wbar: Rational,
}

impl TwoPlayerResult {
    pub fn degree_bound(&self) -> usize {
        degree_bound(self.n)
    }
}

/// Guesses `W` and `L`, builds `T`, and evaluates `W(1)`.
pub fn two_player(
    spec: &GameSpec,
    n: usize,
    s1: usize,
    s2: usize,
) -> Result<TwoPlayerResult, TwoPlayerError> {
    let (w, l) = guess_wl(spec, n, s1, s2)?;
    let t = make_t(&w, &l);
    let wbar = w.eval(&Rational::one())?;
    Ok(TwoPlayerResult {
        n,
        s1,
        s2,
        w,
        l,
        t,
        wbar,
    })
}

/// Winning probabilities `W_{n,s1,s2}(1)` for all `s1, s2 < n`, `table[s1][s2]`,
/// from the linear system over one round of play.
pub fn winprob_table(spec: &GameSpec, n: usize) -> Result<Vec<Vec<Rational>>, TwoPlayerError> {
    if n == 0 {
        return Err(TwoPlayerError::ZeroTarget);
    }
    let idx = |a: usize, b: usize| a * n + b;
    let size = n * n;
    let mut rows = vec![vec![Rational::zero(); size]; size];
    let mut rhs = vec![Rational::zero(); size];
    for a in 0..n {
        for b in 0..n {
            let row = idx(a, b);
            rows[row][row] += Rational::one();
            for (step1, p1) in spec.choices() {
                let a2 = match GameSpec::next(n, a, *step1) {
                    Next::Absorbed => {
                        rhs[row] += p1;
                        continue;
                    }
                    Next::State(t) => t,
                };
                for (step2, p2) in spec.choices() {
                    if let Next::State(b2) = GameSpec::next(n, b, *step2) {
                        rows[row][idx(a2, b2)] -= p1 * p2;
                    }
                }
            }
        }
    }
    let sol = Matrix::from_rows(rows)?.solve(&rhs)?;
    Ok(sol.chunks(n).map(<[Rational]>::to_vec).collect())
}

/// Exact `w(n) = W_{n,0,0}(1)`.
pub fn winprob_exact(spec: &GameSpec, n: usize) -> Result<Rational, TwoPlayerError> {
    Ok(winprob_table(spec, n)?[0][0].clone())
}

/// `w(n) = 1/2 + 1/2 sum_k B_n(k, 0)^2`, valid whenever both players use the
/// same game from zero (ties in finishing turn go to the first mover). The
/// sum is the guessed generating function of `B_n(k, 0)^2` at `x = 1`.
pub fn winprob_squares(spec: &GameSpec, n: usize) -> Result<Rational, TwoPlayerError> {
    if n == 0 {
        return Err(TwoPlayerError::ZeroTarget);
    }
    let bound = n * n;
    let b = &dp_prob_table(spec, n, 2 * bound + 2 * GUESS_MARGIN - 1)[0];
    let squares = guess_checked(b, b, bound, n, "squared")?;
    let half = Rational::new(1.into(), 2.into());
    Ok(&half + &half * squares.eval(&Rational::one())?)
}

/// Moments of `Y_n` (first player's turns to win, conditional on winning) and
/// `Z_n` (total turns until someone wins), both players starting at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndgameMoments {
    pub n: usize,
    pub y_straight: Vec<Rational>,
    pub y_central: Vec<Rational>,
    pub z_straight: Vec<Rational>,
    pub z_central: Vec<Rational>,
}

pub fn endgame_moments(
    spec: &GameSpec,
    n: usize,
    r_max: usize,
) -> Result<EndgameMoments, TwoPlayerError> {
    let (w, l) = guess_wl(spec, n, 0, 0)?;
    let t = make_t(&w, &l);
    let raw = straight_moments(&w, r_max)?;
    let total = raw[0].clone();
    let y_straight: Vec<Rational> = raw.iter().map(|m| m / &total).collect();
    let z_straight = straight_moments(&t, r_max)?;
    Ok(EndgameMoments {
        n,
        y_central: central_moments(&y_straight),
        z_central: central_moments(&z_straight),
        y_straight,
        z_straight,
    })
}

/// One C-finite fitting attempt on a stretch of `w(n)` values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitAttempt {
    /// Index of the first value used.
    pub first_index: usize,
    pub terms: usize,
    pub max_order: usize,
    pub fit: Option<CFiniteRec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyReport {
    /// `w(0..=n_max)` computed exactly (`w(0) = 1`).
    pub values: Vec<Rational>,
    /// Indices where a reference value disagrees with the computed one.
    pub reference_mismatches: Vec<usize>,
    /// Fit on `w(0..=n_max)` with order bound `n_max/2 - 2`.
    pub computed: FitAttempt,
    /// Fit on `w(1..)`, computed values extended by reference values, when a
    /// reference list is supplied.
    pub extended: Option<FitAttempt>,
}

impl HolonomyReport {
    /// True if any attempt found a C-finite recurrence.
    pub fn any_fit(&self) -> bool {
        self.computed.fit.is_some() || self.extended.as_ref().is_some_and(|e| e.fit.is_some())
    }
}

fn attempt(
    values: &[Rational],
    first_index: usize,
    max_order: usize,
) -> Result<FitAttempt, CFiniteError> {
    Ok(FitAttempt {
        first_index,
        terms: values.len(),
        max_order,
        fit: guess_recurrence(values, max_order)?,
    })
}

/// Evidence that `w(n)` is not C-finite: exact values, comparison with a
/// reference list of `(n, w(n))`, and fitting attempts. A fit is reported
/// as found, never suppressed.
pub fn holonomy_evidence(
    spec: &GameSpec,
    n_max: usize,
    reference: &[(usize, Rational)],
) -> Result<HolonomyReport, TwoPlayerError> {
    assert!(n_max >= 6, "need at least six values");
    let mut values = vec![Rational::one()];
    for n in 1..=n_max {
        values.push(winprob_exact(spec, n)?);
    }
    let reference_mismatches = reference
        .iter()
        .filter(|(i, v)| *i <= n_max && values[*i] != *v)
        .map(|(i, _)| *i)
        .collect();
    let computed = attempt(&values, 0, n_max / 2 - 2)?;
    let extended = match reference.iter().map(|(i, _)| *i).max() {
        Some(last) if last > n_max => {
            let mut seq: Vec<Rational> = values[1..].to_vec();
            for i in n_max + 1..=last {
                match reference.iter().find(|(j, _)| *j == i) {
                    Some((_, v)) => seq.push(v.clone()),
                    None => break,
                }
            }
            let max_order = seq.len().saturating_sub(GUESS_MARGIN) / 2;
            Some(attempt(&seq, 1, max_order)?)
        }
        _ => None,
    };
    Ok(HolonomyReport {
        values,
        reference_mismatches,
        computed,
        extended,
    })
}
