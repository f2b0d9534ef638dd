//! Reference closed-form first-player equilibrium payoffs for each channel,
//! and reports that measure them against the simulator.
//!
//! The four decimal-coefficient polynomials are kept verbatim, including
//! their visible defects. The phase-flip polynomial has
//! exact rational coefficients and agrees with the simulator to rounding.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::channels::ChannelKind;
use crate::error::{Error, Result};
use crate::protocol::{linspace, run_game, GameConfig};

/// Agreement threshold for the six-significant-digit polynomials.
pub const DECIMAL_TOL: f64 = 5e-3;
/// Agreement threshold for the exact phase-flip polynomial.
pub const EXACT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    AmplitudeDamping,
    Depolarizing,
    BitPhaseFlip,
    BitFlip,
    PhaseFlip,
}

impl FormulaId {
    pub const ALL: [FormulaId; 5] = [
        FormulaId::AmplitudeDamping,
        FormulaId::Depolarizing,
        FormulaId::BitPhaseFlip,
        FormulaId::BitFlip,
        FormulaId::PhaseFlip,
    ];

    pub fn channel(self) -> ChannelKind {
        match self {
            FormulaId::AmplitudeDamping => ChannelKind::AmplitudeDamping,
            FormulaId::Depolarizing => ChannelKind::Depolarizing,
            FormulaId::BitPhaseFlip => ChannelKind::BitPhaseFlip,
            FormulaId::BitFlip => ChannelKind::BitFlip,
            FormulaId::PhaseFlip => ChannelKind::PhaseFlip,
        }
    }

    pub fn for_channel(kind: ChannelKind) -> Self {
        match kind {
            ChannelKind::AmplitudeDamping => FormulaId::AmplitudeDamping,
            ChannelKind::Depolarizing => FormulaId::Depolarizing,
            ChannelKind::BitPhaseFlip => FormulaId::BitPhaseFlip,
            ChannelKind::BitFlip => FormulaId::BitFlip,
            ChannelKind::PhaseFlip => FormulaId::PhaseFlip,
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            FormulaId::PhaseFlip => EXACT_TOL,
            _ => DECIMAL_TOL,
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.channel().tag())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<ChannelKind>().map(FormulaId::for_channel)
    }
}

/// Evaluates the reference closed form for player 1 at `(p, μ, γ)`.
pub fn formula_payoff(id: FormulaId, p: f64, mu: f64, gamma: f64) -> f64 {
    match id {
        FormulaId::AmplitudeDamping => amplitude_damping(p, mu, gamma),
        FormulaId::Depolarizing => depolarizing(p, mu, gamma),
        FormulaId::BitPhaseFlip => bit_phase_flip(p, mu, gamma),
        FormulaId::BitFlip => bit_flip(p, mu, gamma),
        FormulaId::PhaseFlip => phase_flip(p, mu, gamma),
    }
}

fn powi(x: f64, n: i32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * x)
}

fn half_sin(gamma: f64) -> f64 {
    libm::cos(gamma / 2.0) * libm::sin(gamma / 2.0)
}

fn amplitude_damping(p: f64, mu: f64, gamma: f64) -> f64 {
    let poly_mu2 = 0.125 * powi(p, 6) - 0.625 * powi(p, 5) + 1.25 * powi(p, 4) - 1.25 * powi(p, 3)
        + 0.5 * p * p
        + 0.0 * p;
    let poly_mu = 0.0 - 0.25 * (p - 1.73898) * powi(p - 1.0, 2) * p * ((p - 1.76102) * p + 1.43762);
    0.125 * mu * powi(p, 4)
        + (0.125 * powi(p - 1.0, 6) + mu * mu * poly_mu2 + mu * poly_mu) * libm::sin(gamma)
}

fn depolarizing(p: f64, mu: f64, gamma: f64) -> f64 {
    let m = mu;
    let q = |b: f64, c: f64| m * m + b * m + c;
    let bracket = 0.25 * powi(m - 1.0, 6) * powi(p, 8)
        - 1.625
            * (m - 1.23077)
            * (m - 0.998694)
            * q(-2.00212, 1.00212)
            * q(-1.99919, 0.999187)
            * powi(p, 7)
        + 4.25 * (m - 1.00034) * (m - 0.999661) * q(-2.41176, 1.64706) * q(-2.0, 1.0) * powi(p, 6)
        - 5.75 * (m - 1.24903) * powi(m - 1.0, 3) * q(-2.25097, 1.94934) * powi(p, 5)
        + 4.25 * (m - 1.0) * (m - 1.0) * q(-2.56538, 1.72402) * q(-1.90521, 2.3884) * powi(p, 4)
        - 1.625
            * (m - 1.19251)
            * (m - 1.0)
            * q(-2.75771, 2.34443)
            * q(-1.35747, 3.08159)
            * powi(p, 3)
        + 0.25 * (m - 2.12845) * (m - 1.0) * q(-2.33278, 2.63081) * q(-0.538772, 5.0004) * p * p
        + 0.625 * (m - 1.1587) * q(-1.2413, 2.76171) * p
        + 0.25 * half_sin(gamma);
    bracket + 0.125
}

fn bit_phase_flip(p: f64, mu: f64, gamma: f64) -> f64 {
    let m = mu;
    // ((μ − a)μ + b)
    let h = |a: f64, b: f64| (m - a) * m + b;
    let bracket = -3.31371
        * (m - 1.00056)
        * (m + 2.0)
        * h(2.00035, 1.00035)
        * h(1.99909, 0.99909)
        * powi(p, 7)
        + 11.598
            * (m - 0.999197)
            * (m + 2.0)
            * h(2.0013, 1.0013)
            * h(1.9995, 0.999503)
            * powi(p, 6)
        - 15.7401
            * (m - 1.20598)
            * (m - 1.00002)
            * (m - 0.682281)
            * (m + 1.9409)
            * h(1.99998, 0.999979)
            * powi(p, 5)
        + 10.3553
            * (m - 1.3349)
            * (m - 0.999989)
            * (m - 0.202106)
            * (m + 1.73701)
            * h(2.00001, 1.00001)
            * powi(p, 4)
        - 3.31371
            * (m - 1.83902)
            * (m - 1.0)
            * h(1.69669, 1.00918)
            * (m * (m + 2.03571) + 1.56825)
            * powi(p, 3)
        + 0.414214
            * (m - 2.62495)
            * (m - 1.0)
            * h(1.30099, 1.21191)
            * (m * (m + 2.92594) + 5.86011)
            * p
            * p
        + 1.10355 * (m - 1.21443) * (h(0.597899, 1.71088) * p + 0.25) * half_sin(gamma);
    bracket + 0.125
}

fn bit_flip(p: f64, mu: f64, gamma: f64) -> f64 {
    let m = mu;
    let h = |a: f64, b: f64| (m - a) * m + b;
    let bracket = 19.3137
        * (m - 1.00066)
        * (m + 2.0)
        * h(2.00041, 1.00041)
        * h(1.99894, 0.998937)
        * powi(p, 7)
        - 67.598
            * (m - 0.999575)
            * (m + 2.0)
            * h(2.00069, 1.00069)
            * h(1.99974, 0.999737)
            * powi(p, 6)
        + 91.7401 * (m - 0.999995) * (m + 2.00968) * h(2.0, 1.0) * h(1.95705, 1.09095) * powi(p, 5)
        - 60.3553
            * (m - 1.00001)
            * (m + 2.03676)
            * h(1.99999, 0.999994)
            * h(1.83676, 1.34104)
            * powi(p, 4)
        + 19.3137
            * (m - 1.0)
            * (m + 2.10125)
            * h(2.05931, 1.11332)
            * h(1.54194, 1.77849)
            * powi(p, 3)
        - 2.41421 * (m - 1.0) * (m + 2.28298) * h(2.30862, 1.59107) * h(0.974366, 2.65448) * p * p
        + 0.396447 * (m - 1.27686) * h(3.76795, 7.32329) * p
        + 0.25 * half_sin(gamma);
    bracket + 0.125
}

fn phase_flip(p: f64, mu: f64, gamma: f64) -> f64 {
    let m = mu;
    let c = powi(m - 1.0, 3);
    let f = -16.0 * c * powi(p, 4) + 32.0 * c * powi(p, 3)
        - 4.0 * (5.0 * powi(m, 3) - 14.0 * m * m + 15.0 * m - 6.0) * p * p
        + 4.0 * (powi(m, 3) - 2.0 * m * m + 3.0 * m - 2.0) * p
        + 1.0;
    (f * libm::sin(gamma) + 1.0) / 8.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyPoint {
    pub p: f64,
    pub mu: f64,
    pub gamma: f64,
    pub formula: f64,
    pub simulated: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
        }
    }
}

/// Pointwise comparison of a reference formula against the simulator.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub formula: FormulaId,
    pub gamma: f64,
    pub p_points: usize,
    pub mu_points: usize,
    pub tolerance: f64,
    pub points: Vec<DiscrepancyPoint>,
    pub max_diff: f64,
    pub verdict: Verdict,
}

impl DiscrepancyReport {
    /// Assembles a report from evaluated points, in the order given.
    pub fn from_points(
        formula: FormulaId,
        gamma: f64,
        p_points: usize,
        mu_points: usize,
        points: Vec<DiscrepancyPoint>,
    ) -> Self {
        let max_diff = points.iter().map(|pt| pt.abs_diff).fold(0.0, f64::max);
        let tolerance = formula.tolerance();
        let verdict = if max_diff < tolerance {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        };
        Self {
            formula,
            gamma,
            p_points,
            mu_points,
            tolerance,
            points,
            max_diff,
            verdict,
        }
    }

    /// The listed point closest to `(p, mu)`.
    pub fn point_near(&self, p: f64, mu: f64) -> Option<&DiscrepancyPoint> {
        self.points.iter().min_by(|a, b| {
            ((a.p - p).abs() + (a.mu - mu).abs()).total_cmp(&((b.p - p).abs() + (b.mu - mu).abs()))
        })
    }
}

/// Grid of `(p, μ)` pairs, `p` outer, both over `[0, 1]`.
pub fn comparison_grid(p_points: usize, mu_points: usize) -> Result<Vec<(f64, f64)>> {
    if p_points < 2 || mu_points < 2 {
        return Err(Error::InvalidArgument(
            "comparison grid needs at least 2 points per axis",
        ));
    }
    let mus = linspace(0.0, 1.0, mu_points);
    Ok(linspace(0.0, 1.0, p_points)
        .into_iter()
        .flat_map(|p| mus.iter().map(move |&mu| (p, mu)))
        .collect())
}

/// Simulated player-1 payoff with everyone at the equilibrium move.
pub fn simulated_payoff(kind: ChannelKind, p: f64, mu: f64, gamma: f64) -> Result<f64> {
    Ok(run_game(&GameConfig::nash(kind, p, mu, gamma)?)?
        .payoffs
        .player(1))
}

pub fn discrepancy_point(id: FormulaId, p: f64, mu: f64, gamma: f64) -> Result<DiscrepancyPoint> {
    let formula = formula_payoff(id, p, mu, gamma);
    let simulated = simulated_payoff(id.channel(), p, mu, gamma)?;
    Ok(DiscrepancyPoint {
        p,
        mu,
        gamma,
        formula,
        simulated,
        abs_diff: (formula - simulated).abs(),
    })
}

pub fn compare(
    id: FormulaId,
    p_points: usize,
    mu_points: usize,
    gamma: f64,
) -> Result<DiscrepancyReport> {
    let points = comparison_grid(p_points, mu_points)?
        .into_iter()
        .map(|(p, mu)| discrepancy_point(id, p, mu, gamma))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscrepancyReport::from_points(
        id, gamma, p_points, mu_points, points,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapPoint {
    pub p: f64,
    pub depolarizing: f64,
    pub bit_phase_flip: f64,
    pub abs_diff: f64,
}

/// Depolarizing versus bit-phase-flip payoffs at full memory.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapReport {
    pub gamma: f64,
    pub points: Vec<OverlapPoint>,
    pub max_diff: f64,
}

pub fn overlap_point(p: f64, gamma: f64) -> Result<OverlapPoint> {
    let depolarizing = simulated_payoff(ChannelKind::Depolarizing, p, 1.0, gamma)?;
    let bit_phase_flip = simulated_payoff(ChannelKind::BitPhaseFlip, p, 1.0, gamma)?;
    Ok(OverlapPoint {
        p,
        depolarizing,
        bit_phase_flip,
        abs_diff: (depolarizing - bit_phase_flip).abs(),
    })
}

impl OverlapReport {
    pub fn from_points(gamma: f64, points: Vec<OverlapPoint>) -> Self {
        let max_diff = points.iter().map(|pt| pt.abs_diff).fold(0.0, f64::max);
        Self {
            gamma,
            points,
            max_diff,
        }
    }
}

pub fn overlap_check(gamma: f64, p_points: usize) -> Result<OverlapReport> {
    if p_points < 2 {
        return Err(Error::InvalidArgument(
            "overlap grid needs at least 2 points",
        ));
    }
    let points = linspace(0.0, 1.0, p_points)
        .into_iter()
        .map(|p| overlap_point(p, gamma))
        .collect::<Result<Vec<_>>>()?;
    Ok(OverlapReport::from_points(gamma, points))
}
