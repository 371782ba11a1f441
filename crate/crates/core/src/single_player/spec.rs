use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("a game needs at least one choice")]
    Empty,
    #[error("probability of step {0} must be strictly positive")]
    NonPositive(i64),
    #[error("probabilities sum to {0}, not 1")]
    SumNotOne(Rational),
    #[error("no positive step: the game would never end")]
    NoPositiveStep,
    #[error("step {0} listed twice")]
    DuplicateStep(i64),
    #[error("cannot parse game spec {0:?}: expected step:prob pairs like \"1:1/2,-1:1/2\"")]
    Parse(String),
}

/// Where a move from a non-terminal state leads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Next {
    /// The count reached the target or more: game over.
    Absorbed,
    State(usize),
}

/// The choice set: distinct integer steps with exact probabilities summing to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    choices: Vec<(i64, Rational)>,
}

impl GameSpec {
    pub fn new(choices: Vec<(i64, Rational)>) -> Result<Self, SpecError> {
        if choices.is_empty() {
            return Err(SpecError::Empty);
        }
        let mut sum = Rational::zero();
        for (i, (step, prob)) in choices.iter().enumerate() {
            if !prob.is_positive() {
                return Err(SpecError::NonPositive(*step));
            }
            if choices[..i].iter().any(|(s, _)| s == step) {
                return Err(SpecError::DuplicateStep(*step));
            }
            sum += prob;
        }
        if !sum.is_one() {
            return Err(SpecError::SumNotOne(sum));
        }
        if !choices.iter().any(|(s, _)| *s > 0) {
            return Err(SpecError::NoPositiveStep);
        }
        Ok(GameSpec { choices })
    }

    /// `R = {1, -1}`: up one with probability `p`, down one otherwise.
    pub fn plus_minus_one(p: Rational) -> Result<Self, SpecError> {
        Self::one_minus(p, 1)
    }

    /// `R = {1, -u}`.
    pub fn one_minus(p: Rational, u: u32) -> Result<Self, SpecError> {
        let q = Rational::one() - &p;
        Self::new(alloc::vec![(1, p), (-i64::from(u), q)])
    }

    /// `R = {2, -1}`.
    pub fn two_minus_one(p: Rational) -> Result<Self, SpecError> {
        let q = Rational::one() - &p;
        Self::new(alloc::vec![(2, p), (-1, q)])
    }

    /// The fair `{1, -1}` game.
    pub fn fair() -> Self {
        Self::plus_minus_one(rat(1, 2)).expect("valid")
    }

    pub fn choices(&self) -> &[(i64, Rational)] {
        &self.choices
    }

    pub fn steps(&self) -> Vec<i64> {
        self.choices.iter().map(|(s, _)| *s).collect()
    }

    /// Probability attached to `step`, if it is a choice.
    pub fn prob(&self, step: i64) -> Option<&Rational> {
        self.choices
            .iter()
            .find(|(s, _)| *s == step)
            .map(|(_, p)| p)
    }

    /// Transition from state `s < n` by `step`.
    pub fn next(n: usize, s: usize, step: i64) -> Next {
        let t = s as i64 + step;
        if t >= n as i64 {
            Next::Absorbed
        } else {
            Next::State(t.max(0) as usize)
        }
    }

    /// Least common denominator of the probabilities.
    pub fn common_denominator(&self) -> BigInt {
        self.choices
            .iter()
            .fold(BigInt::one(), |acc, (_, p)| acc.lcm(p.denom()))
    }
}

/// `step:prob` pairs joined by commas, e.g. `1:1/2,-1:1/2`.
impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (step, prob)) in self.choices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{step}:{prob}")?;
        }
        Ok(())
    }
}

impl FromStr for GameSpec {
    type Err = SpecError;

    fn from_str(text: &str) -> Result<Self, SpecError> {
        let bad = || SpecError::Parse(text.to_string());
        let mut choices = Vec::new();
        for pair in text.split(',') {
            let (step, prob) = pair.trim().split_once(':').ok_or_else(bad)?;
            let step: i64 = step.trim().parse().map_err(|_| bad())?;
            let prob = parse_rational(prob).map_err(|_| bad())?;
            choices.push((step, prob));
        }
        GameSpec::new(choices)
    }
}
