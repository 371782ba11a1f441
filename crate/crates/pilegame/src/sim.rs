//! Parallel Monte Carlo: blocks run on the rayon pool and their integer
//! tallies are merged, so the report equals the sequential one bit for bit.

use pilegame_core::mc::{simulate_block, SimConfig, SimError, SimReport, SimTally};
use rayon::prelude::*;

pub fn simulate_parallel(cfg: &SimConfig) -> Result<SimReport, SimError> {
    let tally = (0..cfg.blocks().max(1))
        .into_par_iter()
        .map(|b| simulate_block(cfg, b))
        .try_reduce(SimTally::default, |a, b| Ok(a.merge(b)))?;
    Ok(SimReport::from_tally(&tally))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pilegame_core::mc::{simulate, BLOCK_TRIALS};
    use pilegame_core::{GameSpec, Starts};

    #[test]
    fn parallel_equals_sequential() {
        let cfg = SimConfig::new(
            GameSpec::fair(),
            3,
            Starts::Two(0, 0),
            5 * BLOCK_TRIALS / 2,
            42,
        );
        assert_eq!(simulate_parallel(&cfg).unwrap(), simulate(&cfg).unwrap());
        assert_eq!(
            simulate_parallel(&SimConfig { trials: 0, ..cfg }),
            Err(SimError::NoTrials)
        );
    }
}
