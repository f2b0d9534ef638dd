//! Entangle–move–disentangle pipeline for the four-player Minority game,
//! with noise applied after entanglement and again after the players' moves.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::channels::{build_channel, ChannelKind, ChannelSpec};
use crate::error::{Error, Result};
use crate::linalg::{
    apply_kraus, conjugate, pauli, tensor_all, ComplexMatrix, DensityMatrix, KrausSet, DIM, I,
};

pub const PLAYERS: usize = 4;

/// Slack allowed on angle range checks so decimal renderings of π and π/2 are accepted.
const ANGLE_SLACK: f64 = 1e-12;

/// One player's SU(2) move `M(θ, α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyTriple {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl StrategyTriple {
    pub fn new(theta: f64, alpha: f64, beta: f64) -> Result<Self> {
        let s = Self { theta, alpha, beta };
        s.validate()?;
        Ok(s)
    }

    /// Classical "stay" move, `M(0,0,0) = I`.
    pub const fn classical_stay() -> Self {
        Self {
            theta: 0.0,
            alpha: 0.0,
            beta: 0.0,
        }
    }

    /// Classical "flip" move, `M(π,0,0) = iσx`.
    pub const fn classical_flip() -> Self {
        Self {
            theta: PI,
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&self.theta) {
            return Err(Error::InvalidArgument("theta must lie in [0, pi]"));
        }
        let phase = -PI - ANGLE_SLACK..=PI + ANGLE_SLACK;
        if !phase.contains(&self.alpha) || !phase.contains(&self.beta) {
            return Err(Error::InvalidArgument(
                "alpha and beta must lie in [-pi, pi]",
            ));
        }
        Ok(())
    }
}

/// The equilibrium move `M(π/2, −π/16, π/16)`.
pub const fn ne_strategy() -> StrategyTriple {
    StrategyTriple {
        theta: FRAC_PI_2,
        alpha: -PI / 16.0,
        beta: PI / 16.0,
    }
}

/// `M(θ, α, β) = [[e^{iα} cos θ/2, i e^{iβ} sin θ/2], [i e^{−iβ} sin θ/2, e^{−iα} cos θ/2]]`.
pub fn strategy_unitary(s: &StrategyTriple) -> ComplexMatrix {
    let c = libm::cos(s.theta / 2.0);
    let sn = libm::sin(s.theta / 2.0);
    let e = |phi: f64| Complex64::new(libm::cos(phi), libm::sin(phi));
    ComplexMatrix::from_rows(alloc::vec![
        e(s.alpha) * c,
        I * e(s.beta) * sn,
        I * e(-s.beta) * sn,
        e(-s.alpha) * c,
    ])
    .expect("2x2")
}

/// `J(γ) = exp(i γ/2 σx⊗4) = cos(γ/2) I + i sin(γ/2) σx⊗4`, for `γ ∈ [0, π/2]`.
pub fn entangler(gamma: f64) -> Result<ComplexMatrix> {
    check_gamma(gamma)?;
    let x = pauli(1).expect("sigma x");
    let x4 = tensor_all([&x, &x, &x, &x]);
    let id = ComplexMatrix::identity(DIM).scale_real(libm::cos(gamma / 2.0));
    id.add(&x4.scale(I * libm::sin(gamma / 2.0)))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if (-ANGLE_SLACK..=FRAC_PI_2 + ANGLE_SLACK).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::InvalidArgument("gamma must lie in [0, pi/2]"))
    }
}

/// Bit of `player` (1-based) in a 4-bit outcome; player 1 is the most significant bit.
#[inline]
pub fn player_bit(outcome: usize, player: usize) -> usize {
    (outcome >> (PLAYERS - player)) & 1
}

/// 1 when `player` is alone on their side of a 3–1 split, else 0.
pub fn minority_payoff(outcome: usize, player: usize) -> Result<u8> {
    if !(1..=PLAYERS).contains(&player) {
        return Err(Error::InvalidArgument("player index must be 1..=4"));
    }
    if outcome >= DIM {
        return Err(Error::InvalidArgument("outcome must be a 4-bit value"));
    }
    let mine = player_bit(outcome, player);
    let alone = (1..=PLAYERS)
        .filter(|&k| k != player)
        .all(|k| player_bit(outcome, k) != mine);
    Ok(alone as u8)
}

/// Expected prize per player.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PayoffVector(pub [f64; PLAYERS]);

impl PayoffVector {
    /// Payoff of `player` (1-based).
    pub fn player(&self, player: usize) -> f64 {
        self.0[player - 1]
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Expected payoffs from a computational-basis readout of `rho`.
pub fn payoffs_from_state(rho: &DensityMatrix) -> PayoffVector {
    let mut out = [0.0; PLAYERS];
    for (outcome, prob) in rho.populations().into_iter().enumerate() {
        for (k, slot) in out.iter_mut().enumerate() {
            if minority_payoff(outcome, k + 1).expect("in range") == 1 {
                *slot += prob;
            }
        }
    }
    PayoffVector(out)
}

/// Full input to one game evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameConfig {
    pub gamma: f64,
    pub noise_pre: ChannelSpec,
    pub noise_post: ChannelSpec,
    pub strategies: [StrategyTriple; PLAYERS],
}

impl GameConfig {
    /// Every player at the equilibrium move, with the same `(p, μ)` at both noise stages.
    pub fn nash(kind: ChannelKind, p: f64, mu: f64, gamma: f64) -> Result<Self> {
        let spec = ChannelSpec::new(kind, p, mu)?;
        let cfg = Self {
            gamma,
            noise_pre: spec,
            noise_post: spec,
            strategies: [ne_strategy(); PLAYERS],
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_strategy(mut self, player: usize, s: StrategyTriple) -> Self {
        self.strategies[player - 1] = s;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_gamma(self.gamma)?;
        self.noise_pre.validate()?;
        self.noise_post.validate()?;
        if self.noise_pre.kind != self.noise_post.kind {
            return Err(Error::InvalidArgument(
                "both noise stages must use the same channel kind",
            ));
        }
        self.strategies
            .iter()
            .try_for_each(StrategyTriple::validate)
    }

    /// `M_1 ⊗ M_2 ⊗ M_3 ⊗ M_4`.
    pub fn joint_move(&self) -> ComplexMatrix {
        let ms: Vec<ComplexMatrix> = self.strategies.iter().map(strategy_unitary).collect();
        tensor_all(ms.iter())
    }
}

#[derive(Debug, Clone)]
pub struct GameOutcome {
    pub final_state: DensityMatrix,
    pub payoffs: PayoffVector,
}

/// States after each of the six pipeline stages, `ρ0` through `ρ5`.
#[derive(Debug, Clone)]
pub struct GameTrace {
    pub stages: [DensityMatrix; 6],
}

pub fn run_game(cfg: &GameConfig) -> Result<GameOutcome> {
    cfg.validate()?;
    let pre = build_channel(&cfg.noise_pre)?;
    let post = if cfg.noise_post == cfg.noise_pre {
        pre.clone()
    } else {
        build_channel(&cfg.noise_post)?
    };
    run_game_with(cfg, &pre, &post)
}

/// Runs the pipeline with prebuilt channels for the two noise stages.
pub fn run_game_with(cfg: &GameConfig, pre: &KrausSet, post: &KrausSet) -> Result<GameOutcome> {
    let trace = run_game_traced(cfg, pre, post)?;
    let [_, _, _, _, _, final_state] = trace.stages;
    let payoffs = payoffs_from_state(&final_state);
    Ok(GameOutcome {
        final_state,
        payoffs,
    })
}

pub fn run_game_traced(cfg: &GameConfig, pre: &KrausSet, post: &KrausSet) -> Result<GameTrace> {
    cfg.validate()?;
    let j = entangler(cfg.gamma)?;
    let rho0 = DensityMatrix::basis_state(0)?;
    let rho1 = conjugate(&rho0, &j)?;
    let rho2 = apply_kraus(&rho1, pre)?;
    let rho3 = conjugate(&rho2, &cfg.joint_move())?;
    let rho4 = apply_kraus(&rho3, post)?;
    let rho5 = conjugate(&rho4, &j.adjoint())?;
    Ok(GameTrace {
        stages: [rho0, rho1, rho2, rho3, rho4, rho5],
    })
}

/// Parameter varied along a payoff curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    P,
    Mu,
    Gamma,
}

impl Axis {
    pub fn range(self) -> (f64, f64) {
        match self {
            Axis::P | Axis::Mu => (0.0, 1.0),
            Axis::Gamma => (0.0, FRAC_PI_2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::P => "p",
            Axis::Mu => "mu",
            Axis::Gamma => "gamma",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Axis::P),
            "mu" => Ok(Axis::Mu),
            "gamma" => Ok(Axis::Gamma),
            _ => Err(Error::InvalidArgument("axis must be one of p, mu, gamma")),
        }
    }
}

/// Values of `(p, μ, γ)` held fixed along a curve; the varied one is overwritten.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub p: f64,
    pub mu: f64,
    pub gamma: f64,
}

impl SweepPoint {
    pub fn with(self, axis: Axis, value: f64) -> Self {
        let mut out = self;
        match axis {
            Axis::P => out.p = value,
            Axis::Mu => out.mu = value,
            Axis::Gamma => out.gamma = value,
        }
        out
    }
}

/// `points` evenly spaced values over `[lo, hi]`, endpoints exact.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Grid of full parameter points for a curve along `axis`.
pub fn curve_grid(axis: Axis, fixed: SweepPoint, points: usize) -> Result<Vec<SweepPoint>> {
    if points < 2 {
        return Err(Error::InvalidArgument("a curve needs at least 2 points"));
    }
    let (lo, hi) = axis.range();
    Ok(linspace(lo, hi, points)
        .into_iter()
        .map(|x| fixed.with(axis, x))
        .collect())
}

/// Equilibrium payoffs along `axis`, every player at [`ne_strategy`].
pub fn payoff_curve(
    kind: ChannelKind,
    axis: Axis,
    fixed: SweepPoint,
    points: usize,
) -> Result<Vec<(f64, PayoffVector)>> {
    curve_grid(axis, fixed, points)?
        .into_iter()
        .map(|pt| {
            let cfg = GameConfig::nash(kind, pt.p, pt.mu, pt.gamma)?;
            let x = match axis {
                Axis::P => pt.p,
                Axis::Mu => pt.mu,
                Axis::Gamma => pt.gamma,
            };
            Ok((x, run_game(&cfg)?.payoffs))
        })
        .collect()
}

/// Regular `(θ, α, β)` lattice, `grid` points per axis, θ-major order.
#[derive(Debug, Clone)]
pub struct StrategyLattice {
    thetas: Vec<f64>,
    phases: Vec<f64>,
}

impl StrategyLattice {
    pub fn new(grid: usize) -> Result<Self> {
        if grid < 2 {
            return Err(Error::InvalidArgument(
                "lattice needs at least 2 points per axis",
            ));
        }
        Ok(Self {
            thetas: linspace(0.0, PI, grid),
            phases: linspace(-PI, PI, grid),
        })
    }

    pub fn len(&self) -> usize {
        self.thetas.len() * self.phases.len() * self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, index: usize) -> StrategyTriple {
        let g = self.phases.len();
        StrategyTriple {
            theta: self.thetas[index / (g * g)],
            alpha: self.phases[(index / g) % g],
            beta: self.phases[index % g],
        }
    }

    /// Index of the lattice point closest to `s` in each coordinate.
    pub fn nearest(&self, s: &StrategyTriple) -> usize {
        let closest = |axis: &[f64], v: f64| {
            axis.iter()
                .enumerate()
                .min_by(|a, b| (a.1 - v).abs().total_cmp(&(b.1 - v).abs()))
                .map(|(i, _)| i)
                .unwrap_or(0)
        };
        let g = self.phases.len();
        closest(&self.thetas, s.theta) * g * g
            + closest(&self.phases, s.alpha) * g
            + closest(&self.phases, s.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestResponse {
    pub strategy: StrategyTriple,
    pub payoff: f64,
    pub lattice_index: usize,
}

/// Picks the first maximum in lattice order from `(index, payoff)` pairs.
pub fn select_best<It>(values: It) -> Option<(usize, f64)>
where
    It: IntoIterator<Item = (usize, f64)>,
{
    values.into_iter().fold(None, |best, (i, v)| match best {
        Some((bi, bv)) if bv > v || (bv == v && bi < i) => Some((bi, bv)),
        _ => Some((i, v)),
    })
}

/// Exhaustive lattice search over `player`'s moves with the others held fixed.
pub fn best_response_search(cfg: &GameConfig, player: usize, grid: usize) -> Result<BestResponse> {
    if !(1..=PLAYERS).contains(&player) {
        return Err(Error::InvalidArgument("player index must be 1..=4"));
    }
    cfg.validate()?;
    let lattice = StrategyLattice::new(grid)?;
    let pre = build_channel(&cfg.noise_pre)?;
    let post = build_channel(&cfg.noise_post)?;
    let mut payoffs = Vec::with_capacity(lattice.len());
    for i in 0..lattice.len() {
        let trial = cfg.with_strategy(player, lattice.point(i));
        payoffs.push((
            i,
            run_game_with(&trial, &pre, &post)?.payoffs.player(player),
        ));
    }
    let (idx, payoff) = select_best(payoffs).expect("lattice is non-empty");
    Ok(BestResponse {
        strategy: lattice.point(idx),
        payoff,
        lattice_index: idx,
    })
}
