//! Equilibrium payoff sweeps along one parameter axis.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use qmg_core::channels::ChannelKind;
use qmg_core::protocol::{curve_grid, Axis, GameConfig, SweepPoint, PLAYERS};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::ChannelCache;
use crate::error::CliResult;
use crate::output::fmt_float;

pub const CSV_HEADER: &str = "channel,p,mu,gamma,player,payoff";
pub const DEFAULT_POINTS: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub channels: Vec<ChannelKind>,
    pub axis: Axis,
    pub fixed: SweepPoint,
    pub points: usize,
}

/// The seven standard sweep presets.
pub fn figure(n: u8) -> Option<SweepRequest> {
    let all = ChannelKind::ALL.to_vec();
    let at = |axis, p, mu, gamma| SweepRequest {
        channels: all.clone(),
        axis,
        fixed: SweepPoint { p, mu, gamma },
        points: DEFAULT_POINTS,
    };
    Some(match n {
        1 => at(Axis::P, 0.0, 0.0, FRAC_PI_2),
        2 => at(Axis::P, 0.0, 0.3, FRAC_PI_2),
        3 => at(Axis::P, 0.0, 0.7, FRAC_PI_2),
        4 => at(Axis::P, 0.0, 1.0, FRAC_PI_2),
        5 => at(Axis::Mu, 0.3, 0.0, FRAC_PI_2),
        6 => at(Axis::Mu, 0.7, 0.0, FRAC_PI_2),
        7 => at(Axis::Gamma, 0.3, 0.3, 0.0),
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(serialize_with = "ser_kind")]
    pub channel: ChannelKind,
    pub p: f64,
    pub mu: f64,
    pub gamma: f64,
    pub player: usize,
    pub payoff: f64,
}

fn ser_kind<S: serde::Serializer>(k: &ChannelKind, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(k.tag())
}

/// Rows ordered by channel, then grid index, then player.
pub fn run_sweep(req: &SweepRequest, cache: &ChannelCache) -> CliResult<Vec<SweepRow>> {
    let grid = curve_grid(req.axis, req.fixed, req.points)?;
    let jobs: Vec<(ChannelKind, SweepPoint)> = req
        .channels
        .iter()
        .flat_map(|&k| grid.iter().map(move |&pt| (k, pt)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(kind, pt)| {
            let cfg = GameConfig::nash(kind, pt.p, pt.mu, pt.gamma)?;
            Ok(cache.run(&cfg)?.payoffs)
        })
        .collect::<qmg_core::Result<Vec<_>>>()?;
    Ok(jobs
        .iter()
        .zip(results)
        .flat_map(|(&(channel, pt), pay)| {
            (1..=PLAYERS).map(move |player| SweepRow {
                channel,
                p: pt.p,
                mu: pt.mu,
                gamma: pt.gamma,
                player,
                payoff: pay.player(player),
            })
        })
        .collect())
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.channel.tag(),
            fmt_float(r.p),
            fmt_float(r.mu),
            fmt_float(r.gamma),
            r.player,
            fmt_float(r.payoff)
        );
    }
    out
}

pub fn render_json(rows: &[SweepRow]) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(rows)?;
    s.push('\n');
    Ok(s)
}
