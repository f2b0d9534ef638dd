use qmg_core::protocol::{
    ne_strategy, select_best, BestResponse, GameConfig, StrategyLattice, PLAYERS,
};
use qmg_core::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::ChannelCache;

/// Parallel lattice search; same lattice order and tie-breaking as the serial core routine.
pub fn search(cfg: &GameConfig, player: usize, grid: usize) -> Result<BestResponse> {
    if !(1..=PLAYERS).contains(&player) {
        return Err(Error::InvalidArgument("player index must be 1..=4"));
    }
    cfg.validate()?;
    let lattice = StrategyLattice::new(grid)?;
    let cache = ChannelCache::new();
    let pre = cache.get(&cfg.noise_pre)?;
    let post = cache.get(&cfg.noise_post)?;
    let payoffs = (0..lattice.len())
        .into_par_iter()
        .map(|i| {
            let trial = cfg.with_strategy(player, lattice.point(i));
            Ok((
                i,
                qmg_core::protocol::run_game_with(&trial, &pre, &post)?
                    .payoffs
                    .player(player),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (idx, payoff) = select_best(payoffs).expect("lattice is non-empty");
    Ok(BestResponse {
        strategy: lattice.point(idx),
        payoff,
        lattice_index: idx,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BestResponseReport {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub payoff: f64,
    pub ne_payoff: f64,
    pub deviation_gain: f64,
}

pub fn report(cfg: &GameConfig, player: usize, grid: usize) -> Result<BestResponseReport> {
    let br = search(cfg, player, grid)?;
    let ne_payoff = qmg_core::run_game(&cfg.with_strategy(player, ne_strategy()))?
        .payoffs
        .player(player);
    Ok(BestResponseReport {
        theta: br.strategy.theta,
        alpha: br.strategy.alpha,
        beta: br.strategy.beta,
        payoff: br.payoff,
        ne_payoff,
        deviation_gain: br.payoff - ne_payoff,
    })
}
