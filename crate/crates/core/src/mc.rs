//! Seeded Monte Carlo simulation of single- and two-player games.
//!
//! The generator is ChaCha8 (`rand_chacha`), seeded with `seed_from_u64(seed)`.
//! Trials are split into blocks of [`BLOCK_TRIALS`]; block `b` draws from
//! stream `b` of that generator, so blocks can run in any order or in parallel
//! and [`SimTally::merge`] gives the same totals. Steps are drawn exactly: a
//! uniform integer below the common denominator of the probabilities selects
//! the step whose cumulative numerator range contains it.

use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::single_player::spec::{GameSpec, Next};

/// Trials per RNG stream.
pub const BLOCK_TRIALS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("need at least one trial")]
    NoTrials,
    #[error("turn cap must be at least 1")]
    ZeroCap,
    #[error("common denominator of the step probabilities does not fit in 64 bits")]
    DenominatorTooLarge,
    #[error("a single-player run needs a single start")]
    ExpectedSingle,
    #[error("a two-player run needs two starts")]
    ExpectedTwo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Starts {
    Single(usize),
    Two(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub spec: GameSpec,
    pub n: usize,
    pub starts: Starts,
    pub trials: u64,
    pub seed: u64,
    /// Trials still running after this many turns are dropped and counted.
    pub max_turns_cap: u64,
}

impl SimConfig {
    /// Config with the default cap of `64 n^2` turns (at least 64).
    pub fn new(spec: GameSpec, n: usize, starts: Starts, trials: u64, seed: u64) -> Self {
        let cap = (64 * (n as u64).pow(2)).max(64);
        SimConfig {
            spec,
            n,
            starts,
            trials,
            seed,
            max_turns_cap: cap,
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.max_turns_cap = cap;
        self
    }

    pub fn blocks(&self) -> u64 {
        self.trials.div_ceil(BLOCK_TRIALS)
    }

    fn validate(&self) -> Result<(), SimError> {
        if self.trials == 0 {
            return Err(SimError::NoTrials);
        }
        if self.max_turns_cap == 0 {
            return Err(SimError::ZeroCap);
        }
        Ok(())
    }
}

/// Exact step sampler.
#[derive(Clone, Debug)]
pub struct Sampler {
    denominator: u64,
    /// `(upper bound of the cumulative numerator range, step)`.
    table: Vec<(u64, i64)>,
}

impl Sampler {
    pub fn new(spec: &GameSpec) -> Result<Self, SimError> {
        let den = spec.common_denominator();
        let denominator = den.to_u64().ok_or(SimError::DenominatorTooLarge)?;
        let mut upper = 0u64;
        let table = spec
            .choices()
            .iter()
            .map(|(step, p)| {
                let share = (p.numer() * &den / p.denom()).to_u64().unwrap_or(0);
                upper += share;
                (upper, *step)
            })
            .collect();
        Ok(Sampler { denominator, table })
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> i64 {
        let u = rng.gen_range(0..self.denominator);
        self.table
            .iter()
            .find(|(upper, _)| u < *upper)
            .map_or(self.table[self.table.len() - 1].1, |e| e.1)
    }
}

/// Integer totals over a set of trials; merging is associative and commutative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimTally {
    pub trials: u64,
    /// Trials dropped at the turn cap.
    pub truncated: u64,
    /// Two players: first-player wins. One player: finished trials.
    pub wins: u64,
    /// Turn counts over finished trials.
    pub sum_turns: u128,
    pub sum_turns_sq: u128,
}

impl SimTally {
    pub fn merge(self, other: SimTally) -> SimTally {
        SimTally {
            trials: self.trials + other.trials,
            truncated: self.truncated + other.truncated,
            wins: self.wins + other.wins,
            sum_turns: self.sum_turns + other.sum_turns,
            sum_turns_sq: self.sum_turns_sq + other.sum_turns_sq,
        }
    }

    fn record(&mut self, outcome: Option<(u64, bool)>) {
        self.trials += 1;
        match outcome {
            None => self.truncated += 1,
            Some((turns, won)) => {
                self.wins += u64::from(won);
                self.sum_turns += u128::from(turns);
                self.sum_turns_sq += u128::from(turns) * u128::from(turns);
            }
        }
    }
}

/// Turns until absorption, or `None` if the cap is hit.
fn walk_single<R: Rng>(
    sampler: &Sampler,
    n: usize,
    s: usize,
    cap: u64,
    rng: &mut R,
) -> Option<u64> {
    if s >= n {
        return Some(0);
    }
    let mut state = s;
    for turn in 1..=cap {
        match GameSpec::next(n, state, sampler.draw(rng)) {
            Next::Absorbed => return Some(turn),
            Next::State(t) => state = t,
        }
    }
    None
}

/// Total turns and whether the first player won, or `None` at the cap.
fn walk_two<R: Rng>(
    sampler: &Sampler,
    n: usize,
    s1: usize,
    s2: usize,
    cap: u64,
    rng: &mut R,
) -> Option<(u64, bool)> {
    if s1 >= n {
        return Some((0, true));
    }
    if s2 >= n {
        return Some((0, false));
    }
    let mut states = [s1, s2];
    for turn in 1..=cap {
        let who = ((turn - 1) % 2) as usize;
        match GameSpec::next(n, states[who], sampler.draw(rng)) {
            Next::Absorbed => return Some((turn, who == 0)),
            Next::State(t) => states[who] = t,
        }
    }
    None
}

/// Runs block `block` of the configured trials.
pub fn simulate_block(cfg: &SimConfig, block: u64) -> Result<SimTally, SimError> {
    cfg.validate()?;
    let sampler = Sampler::new(&cfg.spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(block);
    let start = block * BLOCK_TRIALS;
    let count = cfg.trials.saturating_sub(start).min(BLOCK_TRIALS);
    let mut tally = SimTally::default();
    for _ in 0..count {
        let outcome = match cfg.starts {
            Starts::Single(s) => {
                walk_single(&sampler, cfg.n, s, cfg.max_turns_cap, &mut rng).map(|t| (t, true))
            }
            Starts::Two(s1, s2) => walk_two(&sampler, cfg.n, s1, s2, cfg.max_turns_cap, &mut rng),
        };
        tally.record(outcome);
    }
    Ok(tally)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    pub trials: u64,
    pub truncated: u64,
    /// Mean turn count over finished trials.
    pub mean_turns: f64,
    /// Unbiased sample variance of the turn count.
    pub var_turns: f64,
    pub se_mean: f64,
    /// Two players: first-player win rate. One player: fraction finished.
    pub win_rate: f64,
    pub se_win_rate: f64,
}

impl SimReport {
    pub fn from_tally(t: &SimTally) -> Self {
        let done = (t.trials - t.truncated) as f64;
        let mean = if done > 0.0 {
            t.sum_turns as f64 / done
        } else {
            0.0
        };
        let var = if done > 1.0 {
            let centred = t.sum_turns_sq as f64 - t.sum_turns as f64 * mean;
            (centred / (done - 1.0)).max(0.0)
        } else {
            0.0
        };
        let rate = t.wins as f64 / t.trials as f64;
        SimReport {
            trials: t.trials,
            truncated: t.truncated,
            mean_turns: mean,
            var_turns: var,
            se_mean: if done > 0.0 {
                libm::sqrt(var / done)
            } else {
                0.0
            },
            win_rate: rate,
            se_win_rate: libm::sqrt(rate * (1.0 - rate) / t.trials as f64),
        }
    }

    /// `|estimate - exact| <= k * se`, with the standard error floored at
    /// the resolution of one trial so exact degenerate cases still pass.
    pub fn within(estimate: f64, se: f64, exact: f64, k: f64, trials: u64) -> bool {
        (estimate - exact).abs() <= k * se.max(1.0 / trials as f64)
    }
}

/// Sequential run over all blocks; any parallel schedule merging
/// [`simulate_block`] results gives the same report.
pub fn simulate(cfg: &SimConfig) -> Result<SimReport, SimError> {
    cfg.validate()?;
    let mut total = SimTally::default();
    for b in 0..cfg.blocks() {
        total = total.merge(simulate_block(cfg, b)?);
    }
    Ok(SimReport::from_tally(&total))
}

pub fn simulate_single(cfg: &SimConfig) -> Result<SimReport, SimError> {
    match cfg.starts {
        Starts::Single(_) => simulate(cfg),
        Starts::Two(..) => Err(SimError::ExpectedSingle),
    }
}

pub fn simulate_two(cfg: &SimConfig) -> Result<SimReport, SimError> {
    match cfg.starts {
        Starts::Two(..) => simulate(cfg),
        Starts::Single(_) => Err(SimError::ExpectedTwo),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn cfg(starts: Starts, n: usize, trials: u64) -> SimConfig {
        SimConfig::new(GameSpec::fair(), n, starts, trials, 7)
    }

    #[test]
    fn same_seed_same_report() {
        let c = cfg(Starts::Single(0), 2, 20_000);
        assert_eq!(simulate_single(&c).unwrap(), simulate_single(&c).unwrap());
        let other = SimConfig {
            seed: 8,
            ..c.clone()
        };
        assert_ne!(
            simulate_single(&c).unwrap(),
            simulate_single(&other).unwrap()
        );
    }

    #[test]
    fn block_order_does_not_matter() {
        let c = cfg(Starts::Two(0, 0), 2, 3 * BLOCK_TRIALS / 2);
        let blocks: Vec<_> = (0..c.blocks())
            .map(|b| simulate_block(&c, b).unwrap())
            .collect();
        let forward = blocks.iter().fold(SimTally::default(), |a, b| a.merge(*b));
        let backward = blocks
            .iter()
            .rev()
            .fold(SimTally::default(), |a, b| a.merge(*b));
        assert_eq!(forward, backward);
        assert_eq!(forward.trials, c.trials);
        assert_eq!(SimReport::from_tally(&forward), simulate_two(&c).unwrap());
    }

    #[test]
    fn degenerate_starts() {
        let r = simulate_single(&cfg(Starts::Single(2), 2, 100)).unwrap();
        assert_eq!((r.mean_turns, r.var_turns, r.truncated), (0.0, 0.0, 0));
        let r = simulate_two(&cfg(Starts::Two(3, 0), 3, 100)).unwrap();
        assert_eq!(r.win_rate, 1.0);
    }

    #[test]
    fn geometric_mean_for_one_step_target() {
        let spec = GameSpec::one_minus(rat(2, 3), 2).unwrap();
        let c = SimConfig::new(spec, 1, Starts::Single(0), 200_000, 1);
        let r = simulate_single(&c).unwrap();
        assert!(
            SimReport::within(r.mean_turns, r.se_mean, 1.5, 3.0, r.trials),
            "{r:?}"
        );
    }

    #[test]
    fn sampler_is_exact() {
        let spec =
            GameSpec::new(alloc::vec![(1, rat(1, 6)), (2, rat(1, 3)), (-1, rat(1, 2))]).unwrap();
        let s = Sampler::new(&spec).unwrap();
        assert_eq!(s.denominator, 6);
        assert_eq!(s.table, alloc::vec![(1, 1), (3, 2), (6, -1)]);
    }

    #[test]
    fn cap_truncates() {
        let c = cfg(Starts::Single(0), 5, 1000).with_cap(1);
        let r = simulate_single(&c).unwrap();
        assert_eq!(r.truncated, 1000);
        assert_eq!(r.win_rate, 0.0);
        assert_eq!(
            simulate_single(&c.clone().with_cap(0)),
            Err(SimError::ZeroCap)
        );
        assert_eq!(simulate_two(&c), Err(SimError::ExpectedTwo));
    }
}
