//! Random-restart hill climbing on the ratio `||Γ|| / A` over symbol space.
//!
//! The search only produces empirical lower bounds for the best constant in
//! `||Γ|| ≤ C·A`; it makes no optimality claim.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hankel::HankelSymbol;
use crate::rkt::{
    complex_gaussian, random_symbol_with, rkt_constant, verify_rkt, LambdaGrid, RktReport,
    BOUND_SLACK,
};

/// Consecutive rejections before the perturbation scale shrinks.
pub const REJECTIONS_BEFORE_SHRINK: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub m: usize,
    #[serde(default = "one")]
    pub d: usize,
    pub restarts: usize,
    pub steps: usize,
    #[serde(default = "default_scale")]
    pub scale: f64,
    #[serde(default = "default_shrink")]
    pub shrink: f64,
    pub seed: u64,
    #[serde(default)]
    pub grid: LambdaGrid,
}

fn one() -> usize {
    1
}
fn default_scale() -> f64 {
    0.3
}
fn default_shrink() -> f64 {
    0.7
}

impl SearchConfig {
    pub fn new(m: usize, d: usize, restarts: usize, steps: usize, seed: u64) -> Self {
        Self {
            m,
            d,
            restarts,
            steps,
            scale: default_scale(),
            shrink: default_shrink(),
            seed,
            grid: LambdaGrid::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(format!("search config: {m}")));
        if self.m == 0 || self.d == 0 {
            return bad("m and d must be positive");
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1");
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return bad("scale must be positive");
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad("shrink must lie in (0, 1)");
        }
        self.grid.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceStep {
    pub restart: usize,
    pub step: usize,
    pub ratio: f64,
    pub accepted: bool,
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartResult {
    pub restart: usize,
    pub initial_ratio: f64,
    pub best_ratio: f64,
    pub final_scale: f64,
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchTrace {
    pub restarts: Vec<RestartResult>,
    pub best_restart: usize,
    pub best_ratio: f64,
    pub best_symbol: HankelSymbol,
    pub best_report: RktReport,
    /// Set when any evaluated ratio exceeded `2√e + slack`.
    pub bound_exceeded: bool,
    pub max_recorded_ratio: f64,
}

/// Adds `scale` times a standard complex Gaussian vector to every `γ_k`.
pub fn perturb<R: Rng + ?Sized>(s: &HankelSymbol, scale: f64, rng: &mut R) -> HankelSymbol {
    let gamma = s
        .coefficients()
        .iter()
        .map(|c| c + complex_gaussian(rng) * scale)
        .collect();
    HankelSymbol::from_flat(s.dim(), gamma).expect("finite perturbation")
}

pub fn perturb_seeded(s: &HankelSymbol, scale: f64, seed: u64) -> HankelSymbol {
    perturb(s, scale, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

struct Evaluated {
    symbol: HankelSymbol,
    report: RktReport,
}

fn evaluate(s: HankelSymbol, grid: &LambdaGrid) -> Option<Evaluated> {
    let report = verify_rkt(&s, grid).ok()?;
    if !report.ratio.is_finite() {
        return None;
    }
    // keep A = 1; the ratio is scale invariant
    let symbol = s.scaled((1.0 / report.a).into());
    Some(Evaluated { symbol, report })
}

fn run_restart(cfg: &SearchConfig, restart: usize) -> Result<(RestartResult, Evaluated)> {
    let mut rng = restart_rng(cfg.seed, restart);
    let mut current = loop {
        let s = random_symbol_with(&mut rng, cfg.m, cfg.d, 0.0)?;
        if let Some(e) = evaluate(s, &cfg.grid) {
            break e;
        }
    };
    let initial_ratio = current.report.ratio;
    let mut scale = cfg.scale;
    let mut rejections = 0;
    let mut steps = Vec::with_capacity(cfg.steps);
    for step in 0..cfg.steps {
        let proposal = perturb(&current.symbol, scale, &mut rng);
        let candidate = evaluate(proposal, &cfg.grid);
        let ratio = candidate.as_ref().map_or(f64::NAN, |c| c.report.ratio);
        let accepted = candidate
            .as_ref()
            .is_some_and(|c| c.report.ratio > current.report.ratio);
        if accepted {
            current = candidate.unwrap();
            rejections = 0;
        } else {
            rejections += 1;
            if rejections == REJECTIONS_BEFORE_SHRINK {
                scale *= cfg.shrink;
                rejections = 0;
            }
        }
        steps.push(TraceStep {
            restart,
            step,
            ratio,
            accepted,
            best: current.report.ratio,
        });
    }
    Ok((
        RestartResult {
            restart,
            initial_ratio,
            best_ratio: current.report.ratio,
            final_scale: scale,
            steps,
        },
        current,
    ))
}

/// Runs `cfg.restarts` independent hill climbs in parallel; each restart owns
/// the ChaCha stream `(seed, restart)`, so the trace is reproducible.
pub fn search(cfg: &SearchConfig) -> Result<SearchTrace> {
    cfg.validate()?;
    let runs: Vec<(RestartResult, Evaluated)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg, r))
        .collect::<Result<_>>()?;

    let ceiling = rkt_constant() + BOUND_SLACK;
    let mut max_recorded = f64::NEG_INFINITY;
    for (r, _) in &runs {
        max_recorded = max_recorded.max(r.initial_ratio);
        for s in &r.steps {
            if s.ratio.is_finite() {
                max_recorded = max_recorded.max(s.ratio);
            }
        }
    }
    // first restart wins ties
    let best_idx = runs.iter().enumerate().fold(0, |b, (i, (r, _))| {
        if r.best_ratio > runs[b].0.best_ratio {
            i
        } else {
            b
        }
    });
    let (restarts, evaluated): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
    let best = evaluated.into_iter().nth(best_idx).unwrap();
    Ok(SearchTrace {
        best_restart: best_idx,
        best_ratio: restarts[best_idx].best_ratio,
        best_symbol: best.symbol,
        best_report: best.report,
        bound_exceeded: max_recorded > ceiling,
        max_recorded_ratio: max_recorded,
        restarts,
    })
}
