//! Monogamy residuals of pure three-mode states.
//!
//! For a hub mode `h` and the other two modes `x`, `y`:
//!
//! ```text
//! residual = C(h : xy) − C(h : x) − C(h : y)
//! ```
//!
//! with `C` either the Rényi-2 entanglement or the discord revealed by
//! measuring the non-hub side. On a pure state the one-versus-two term is
//! the hub's marginal entropy for both measures.

use serde::{Deserialize, Serialize};

use crate::closed_forms::e2_closed;
use crate::error::{Error, Result};
use crate::measurement::{discord, Side};
use crate::phase_space::{CovarianceMatrix, ModePartition};
use crate::renyi::{entanglement_estimate, half_log_det, PURITY_TOL};
use crate::unruh::{setting_a, Mode, Setting};

/// Residuals closer than this are treated as tied when picking the hub.
pub const HUB_TIE_TOL: f64 = 1e-9;

fn require_pure_three_mode(sigma3: &CovarianceMatrix, hub: usize) -> Result<(usize, usize)> {
    if sigma3.modes() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: sigma3.modes(),
        });
    }
    if hub >= 3 {
        return Err(Error::ModeOutOfRange { mode: hub, modes: 3 });
    }
    let det = sigma3.det();
    if (det - 1.0).abs() > PURITY_TOL {
        return Err(Error::NotPure { det });
    }
    let mut others = (0..3).filter(|&m| m != hub);
    Ok((others.next().unwrap(), others.next().unwrap()))
}

fn pair(sigma3: &CovarianceMatrix, hub: usize, other: usize) -> Result<(CovarianceMatrix, ModePartition)> {
    Ok((
        sigma3.reduce(&[hub, other])?,
        ModePartition::bipartite(&[0], &[1])?,
    ))
}

/// Discord of the hub given measurements on `other`.
fn hub_discord(sigma3: &CovarianceMatrix, hub: usize, other: usize) -> Result<f64> {
    let (sigma, p) = pair(sigma3, hub, other)?;
    Ok(discord(&sigma, &p, Side::B)?.value.value)
}

fn hub_entanglement(sigma3: &CovarianceMatrix, hub: usize, other: usize, budget: usize) -> Result<f64> {
    let (sigma, p) = pair(sigma3, hub, other)?;
    Ok(entanglement_estimate(&sigma, &p, budget)?.value.value)
}

/// Terms of the discord-side residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualTerms {
    pub hub_vs_rest: f64,
    pub first: f64,
    pub second: f64,
    pub residual: f64,
}

pub fn residual_discord_terms(sigma3: &CovarianceMatrix, hub: usize) -> Result<ResidualTerms> {
    let (x, y) = require_pure_three_mode(sigma3, hub)?;
    let whole = half_log_det(&sigma3.reduce(&[hub])?)?;
    let first = hub_discord(sigma3, hub, x)?;
    let second = hub_discord(sigma3, hub, y)?;
    Ok(ResidualTerms {
        hub_vs_rest: whole,
        first,
        second,
        residual: whole - first - second,
    })
}

/// `S₂(σ_hub) − D₂(hub|x) − D₂(hub|y)` on a pure three-mode state.
pub fn residual_discord(sigma3: &CovarianceMatrix, hub: usize) -> Result<f64> {
    Ok(residual_discord_terms(sigma3, hub)?.residual)
}

/// Entanglement-side residual. `known` supplies an already available
/// `E₂(hub : partner)` (partner index, value) in place of the estimator.
pub fn residual_entanglement_terms(
    sigma3: &CovarianceMatrix,
    hub: usize,
    budget: usize,
    known: Option<(usize, f64)>,
) -> Result<ResidualTerms> {
    let (x, y) = require_pure_three_mode(sigma3, hub)?;
    let whole = half_log_det(&sigma3.reduce(&[hub])?)?;
    let term = |other: usize| -> Result<f64> {
        match known {
            Some((partner, value)) if partner == other => Ok(value),
            _ => hub_entanglement(sigma3, hub, other, budget),
        }
    };
    let first = term(x)?;
    let second = term(y)?;
    Ok(ResidualTerms {
        hub_vs_rest: whole,
        first,
        second,
        residual: whole - first - second,
    })
}

/// `S₂(σ_hub) − E₂(hub:x) − E₂(hub:y)` with both pair terms estimated.
pub fn residual_entanglement(sigma3: &CovarianceMatrix, hub: usize, budget: usize) -> Result<f64> {
    Ok(residual_entanglement_terms(sigma3, hub, budget, None)?.residual)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HubQuantity {
    Entanglement { budget: usize },
    Discord,
}

/// Minimum residual over the three hub choices; ties within `1e-9` go to the
/// lowest mode index.
pub fn minimize_over_hub(sigma3: &CovarianceMatrix, quantity: HubQuantity) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for hub in 0..3 {
        let v = match quantity {
            HubQuantity::Entanglement { budget } => residual_entanglement(sigma3, hub, budget)?,
            HubQuantity::Discord => residual_discord(sigma3, hub)?,
        };
        best = match best {
            Some((h, b)) if b <= v + HUB_TIE_TOL => Some((h, b)),
            _ => Some((hub, v)),
        };
    }
    Ok(best.expect("three hubs evaluated"))
}

/// Every term of the tripartite balance with Rob's mode as hub, for Alice
/// inertial and Rob at acceleration `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripartiteReport {
    #[serde(rename = "e2_R_vs_ARbar")]
    pub e2_r_vs_arbar: f64,
    #[serde(rename = "e2_R_A")]
    pub e2_r_a: f64,
    #[serde(rename = "e2_R_Rbar")]
    pub e2_r_rbar: f64,
    #[serde(rename = "d2_R_given_ARbar")]
    pub d2_r_given_arbar: f64,
    #[serde(rename = "d2_R_given_A")]
    pub d2_r_given_a: f64,
    #[serde(rename = "d2_R_given_Rbar")]
    pub d2_r_given_rbar: f64,
    pub residual_entanglement: f64,
    pub residual_discord: f64,
}

impl TripartiteReport {
    /// `E₂(R:A)` comes from the closed form; `E₂(R:R̄)` from the estimator.
    pub fn setting_a(s: f64, r: f64, budget: usize) -> Result<Self> {
        let sigma3 = setting_a(s, r)?;
        let idx = |m: Mode| Setting::A.index_of(m).expect("mode present in setting (a)");
        let (hub, a) = (idx(Mode::R), idx(Mode::A));
        let disc = residual_discord_terms(&sigma3, hub)?;
        let ent = residual_entanglement_terms(&sigma3, hub, budget, Some((a, e2_closed(s, 0.0, r)?)))?;
        // Other modes come in storage order, so `first` is A and `second` is R̄.
        Ok(Self {
            e2_r_vs_arbar: ent.hub_vs_rest,
            e2_r_a: ent.first,
            e2_r_rbar: ent.second,
            d2_r_given_arbar: disc.hub_vs_rest,
            d2_r_given_a: disc.first,
            d2_r_given_rbar: disc.second,
            residual_entanglement: ent.residual,
            residual_discord: disc.residual,
        })
    }
}
