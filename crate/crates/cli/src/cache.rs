use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use qmg_core::channels::{build_channel, ChannelKind, ChannelSpec};
use qmg_core::protocol::{run_game_with, GameConfig, GameOutcome};
use qmg_core::{KrausSet, Result};

type Key = (ChannelKind, u64, u64);

/// Kraus sets keyed by `(kind, p, μ)`, shared across worker threads for one sweep.
#[derive(Debug, Default)]
pub struct ChannelCache {
    sets: RwLock<HashMap<Key, Arc<KrausSet>>>,
}

impl ChannelCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, spec: &ChannelSpec) -> Result<Arc<KrausSet>> {
        let key = (spec.kind, spec.p.to_bits(), spec.mu.to_bits());
        if let Some(hit) = self.sets.read().expect("cache lock poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let built = Arc::new(build_channel(spec)?);
        let mut sets = self.sets.write().expect("cache lock poisoned");
        Ok(Arc::clone(sets.entry(key).or_insert(built)))
    }

    pub fn len(&self) -> usize {
        self.sets.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn run(&self, cfg: &GameConfig) -> Result<GameOutcome> {
        cfg.validate()?;
        let pre = self.get(&cfg.noise_pre)?;
        let post = self.get(&cfg.noise_post)?;
        run_game_with(cfg, &pre, &post)
    }
}
