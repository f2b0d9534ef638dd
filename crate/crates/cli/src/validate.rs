//! Invariant suite run by `qmg validate`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use qmg_core::channels::{build_channel, verify_completeness, ChannelKind, ChannelSpec};
use qmg_core::linalg::{apply_kraus, validate_density, KrausSet};
use qmg_core::protocol::{linspace, GameConfig, StrategyTriple, PLAYERS};
use qmg_core::Result;

use crate::best_response::search;
use crate::cache::ChannelCache;

#[derive(Debug, Clone, Copy, Default)]
pub struct ValidateOptions {
    /// Halves the weight of one Kraus operator before the completeness check.
    pub inject_broken_channel: bool,
    /// Lattice points per axis for the equilibrium deviation check.
    pub deviation_grid: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<22} residual {:.3e} (tolerance {:.0e}) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance,
            self.detail
        )
    }
}

fn check(name: &'static str, residual: f64, tolerance: f64, detail: String) -> CheckResult {
    CheckResult {
        name,
        residual,
        tolerance,
        passed: residual <= tolerance,
        detail,
    }
}

const COARSE: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

fn coarse_specs() -> impl Iterator<Item = ChannelSpec> {
    ChannelKind::ALL.into_iter().flat_map(|kind| {
        COARSE.into_iter().flat_map(move |p| {
            COARSE
                .into_iter()
                .map(move |mu| ChannelSpec { kind, p, mu })
        })
    })
}

fn completeness(opts: &ValidateOptions) -> Result<CheckResult> {
    let mut worst = (0.0_f64, String::new());
    for spec in coarse_specs() {
        let mut ks = build_channel(&spec)?;
        if opts.inject_broken_channel
            && spec.kind == ChannelKind::Depolarizing
            && spec.p == 0.5
            && spec.mu == 0.5
        {
            let mut ops = ks.operators().to_vec();
            ops[0] = ops[0].scale_real(0.5f64.sqrt());
            ks = KrausSet::new_unchecked(ops)?;
        }
        let r = verify_completeness(&ks);
        if r >= worst.0 {
            worst = (
                r,
                format!("worst at {} p={} mu={}", spec.kind, spec.p, spec.mu),
            );
        }
    }
    Ok(check("completeness", worst.0, 1e-10, worst.1))
}

fn trace_positivity(cache: &ChannelCache) -> Result<CheckResult> {
    // the entangled, moved state that the second channel actually sees
    let probe = {
        let cfg = GameConfig::nash(ChannelKind::PhaseFlip, 0.0, 0.0, FRAC_PI_2)?;
        let id = KrausSet::identity(16);
        qmg_core::protocol::run_game_traced(&cfg, &id, &id)?.stages[3].clone()
    };
    let mut trace_worst = 0.0_f64;
    let mut eig_worst = f64::INFINITY;
    for spec in coarse_specs() {
        let out = apply_kraus(&probe, &*cache.get(&spec)?)?;
        let r = validate_density(&out);
        trace_worst = trace_worst.max(r.trace_residual);
        eig_worst = eig_worst.min(r.min_eigenvalue);
    }
    let residual = trace_worst.max((-eig_worst).max(0.0));
    Ok(check(
        "trace/positivity",
        residual,
        1e-10,
        format!("max trace residual {trace_worst:.3e}, min eigenvalue {eig_worst:.3e}"),
    ))
}

fn noiseless_equality(cache: &ChannelCache) -> Result<CheckResult> {
    let odd = [
        StrategyTriple::new(0.3, 1.0, -2.0)?,
        StrategyTriple::new(2.1, -0.4, 0.2)?,
        StrategyTriple::classical_flip(),
        StrategyTriple::new(1.2, 3.0, -3.0)?,
    ];
    let mut worst = 0.0_f64;
    for strategies in [None, Some(odd)] {
        let mut reference = None;
        for kind in ChannelKind::ALL {
            let mut cfg = GameConfig::nash(kind, 0.0, 0.5, FRAC_PI_2)?;
            if let Some(s) = strategies {
                cfg.strategies = s;
            }
            let pay = cache.run(&cfg)?.payoffs;
            let r = *reference.get_or_insert(pay);
            for k in 1..=PLAYERS {
                worst = worst.max((pay.player(k) - r.player(k)).abs());
            }
        }
    }
    Ok(check(
        "noiseless-equality",
        worst,
        1e-12,
        "all channels at p=0".into(),
    ))
}

fn phase_flip_symmetry(cache: &ChannelCache) -> Result<CheckResult> {
    let mut worst = 0.0_f64;
    for mu in COARSE {
        for p in linspace(0.0, 1.0, 11) {
            let a = cache
                .run(&GameConfig::nash(ChannelKind::PhaseFlip, p, mu, FRAC_PI_2)?)?
                .payoffs
                .player(1);
            let b = cache
                .run(&GameConfig::nash(
                    ChannelKind::PhaseFlip,
                    1.0 - p,
                    mu,
                    FRAC_PI_2,
                )?)?
                .payoffs
                .player(1);
            worst = worst.max((a - b).abs());
        }
    }
    Ok(check(
        "phase-flip-symmetry",
        worst,
        1e-10,
        "|payoff(p) - payoff(1-p)|".into(),
    ))
}

fn payoff_bounds(cache: &ChannelCache) -> Result<CheckResult> {
    let mut worst = 0.0_f64;
    for spec in coarse_specs() {
        for gamma in [0.0, 0.8, FRAC_PI_2] {
            let pay = cache
                .run(&GameConfig::nash(spec.kind, spec.p, spec.mu, gamma)?)?
                .payoffs;
            for v in pay.0 {
                worst = worst.max(-v).max(v - 1.0);
            }
            worst = worst.max(pay.total() - 1.0);
        }
    }
    Ok(check(
        "payoff-bounds",
        worst.max(0.0),
        1e-10,
        "excess outside [0,1] or total above 1".into(),
    ))
}

fn ne_deviation(opts: &ValidateOptions) -> Result<CheckResult> {
    let grid = if opts.deviation_grid >= 2 {
        opts.deviation_grid
    } else {
        17
    };
    let cfg = GameConfig::nash(ChannelKind::PhaseFlip, 0.0, 0.0, FRAC_PI_2)?;
    let br = search(&cfg, 1, grid)?;
    let gain = (br.payoff - 0.25).max(0.0);
    Ok(check(
        "ne-deviation",
        gain,
        1e-6,
        format!("best lattice payoff {:.12} on {grid}^3 lattice", br.payoff),
    ))
}

pub fn run_validation(opts: &ValidateOptions) -> Result<Vec<CheckResult>> {
    let cache = ChannelCache::new();
    Ok(vec![
        completeness(opts)?,
        trace_positivity(&cache)?,
        noiseless_equality(&cache)?,
        phase_flip_symmetry(&cache)?,
        payoff_bounds(&cache)?,
        ne_deviation(opts)?,
    ])
}
