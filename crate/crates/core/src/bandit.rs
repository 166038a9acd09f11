//! Beta-Bernoulli posterior bookkeeping and the Thompson Sampling rule.
//!
//! All types are immutable values; updates return new values. Parallel
//! callers stay reproducible by giving each task its own [`RngStream`].

use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Shape parameters of a Beta distribution over a success rate.
///
/// Both shapes are strictly positive; the mean `alpha / (alpha + beta)`
/// therefore lies strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBetaParams", into = "RawBetaParams")]
pub struct BetaParams {
    alpha: f64,
    beta: f64,
}

#[derive(Serialize, Deserialize)]
struct RawBetaParams {
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawBetaParams> for BetaParams {
    type Error = Error;

    fn try_from(raw: RawBetaParams) -> Result<Self> {
        BetaParams::new(raw.alpha, raw.beta)
    }
}

impl From<BetaParams> for RawBetaParams {
    fn from(p: BetaParams) -> Self {
        RawBetaParams {
            alpha: p.alpha,
            beta: p.beta,
        }
    }
}

impl BetaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta shape alpha must be finite and positive, got {alpha}"
            )));
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta shape beta must be finite and positive, got {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// The uniform prior Beta(1, 1).
    pub fn uniform() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `alpha / (alpha + beta)`.
    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    /// `alpha * beta / ((alpha + beta)^2 (alpha + beta + 1))`.
    pub fn variance(&self) -> f64 {
        let s = self.alpha + self.beta;
        self.alpha * self.beta / (s * s * (s + 1.0))
    }
}

/// Raw observation tallies for one arm, excluding any prior mass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmStats {
    n: u64,
    successes: u64,
}

impl ArmStats {
    pub fn new(n: u64, successes: u64) -> Result<Self> {
        if successes > n {
            return Err(Error::InvalidParameter(format!(
                "successes ({successes}) exceed observations ({n})"
            )));
        }
        Ok(Self { n, successes })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn successes(&self) -> u64 {
        self.successes
    }

    /// Observed success rate; `None` until the first observation.
    pub fn p_hat(&self) -> Option<f64> {
        if self.n == 0 {
            None
        } else {
            Some(self.successes as f64 / self.n as f64)
        }
    }
}

/// One arm's posterior shape parameters together with its raw tallies.
///
/// `stats` counts observed rewards only; whatever pseudo-mass the prior
/// contributed to `params` never shows up in `stats`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArmPosterior {
    pub params: BetaParams,
    pub stats: ArmStats,
}

impl ArmPosterior {
    pub fn new(params: BetaParams) -> Self {
        Self {
            params,
            stats: ArmStats::empty(),
        }
    }

    pub fn uniform() -> Self {
        Self::new(BetaParams::uniform())
    }
}

/// One exact draw from `Beta(alpha, beta)`, advancing the stream.
///
/// Draws landing exactly on 0 or 1 (possible only through floating-point
/// rounding) are rejected and redrawn, keeping the result in the open
/// interval.
pub fn beta_sample(params: BetaParams, rng: &mut RngStream) -> f64 {
    let dist = rand_distr::Beta::new(params.alpha(), params.beta())
        .expect("BetaParams invariant guarantees valid shapes");
    loop {
        let x: f64 = dist.sample(rng);
        if x > 0.0 && x < 1.0 {
            return x;
        }
    }
}

/// Index of the maximal draw, lowest index on ties; `None` for no draws.
pub fn argmax_lowest(draws: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &d) in draws.iter().enumerate() {
        match best {
            Some((_, b)) if d <= b => {}
            _ => best = Some((i, d)),
        }
    }
    best.map(|(i, _)| i)
}

/// Thompson selection with an injectable per-arm draw function.
///
/// `select_arm` passes the real Beta sampler; tests pass frozen draws.
pub fn select_arm_with<F>(posteriors: &[ArmPosterior], mut draw: F) -> Result<usize>
where
    F: FnMut(&BetaParams) -> f64,
{
    let draws: Vec<f64> = posteriors.iter().map(|p| draw(&p.params)).collect();
    argmax_lowest(&draws).ok_or(Error::EmptyInput("select_arm needs at least one arm"))
}

/// Draws one sample per arm and returns the index of the largest.
pub fn select_arm(posteriors: &[ArmPosterior], rng: &mut RngStream) -> Result<usize> {
    select_arm_with(posteriors, |params| beta_sample(*params, rng))
}

/// Applies one Bernoulli reward: `alpha += reward`, `beta += 1 - reward`.
pub fn update(posterior: &ArmPosterior, reward: bool) -> ArmPosterior {
    let (s, f) = if reward { (1, 0) } else { (0, 1) };
    batch_apply(posterior, s, f)
}

/// Folds a whole batch tally into the posterior in one step; equivalent to
/// `successes + failures` single updates.
pub fn batch_apply(posterior: &ArmPosterior, successes: u64, failures: u64) -> ArmPosterior {
    let params = BetaParams {
        alpha: posterior.params.alpha + successes as f64,
        beta: posterior.params.beta + failures as f64,
    };
    let stats = ArmStats {
        n: posterior.stats.n + successes + failures,
        successes: posterior.stats.successes + successes,
    };
    ArmPosterior { params, stats }
}
