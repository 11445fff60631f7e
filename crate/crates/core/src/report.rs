//! Full correlation report for one scenario: every measure computed by the
//! numeric pipeline next to its closed form.

use serde::{Deserialize, Serialize};

use crate::closed_forms::ClosedFormReport;
use crate::error::Result;
use crate::measurement::{discord, DiscordValue, Side};
use crate::phase_space::ModePartition;
use crate::renyi::{entanglement_estimate, mutual_information, RoofSearch};
use crate::tripartite::TripartiteReport;
use crate::unruh::{observed_pair, FrameScenario, Setting};

/// Optimal measurement seed in report form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedReport {
    pub theta: f64,
    pub log_squeeze: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneWayReport {
    /// `J₂` of the unmeasured mode.
    pub classical: f64,
    /// `D₂ = I₂ − J₂` with the same seed.
    pub discord: f64,
    pub seed: SeedReport,
}

impl From<DiscordValue> for OneWayReport {
    fn from(d: DiscordValue) -> Self {
        Self {
            classical: d.classical.value.value,
            discord: d.value.value,
            seed: SeedReport {
                theta: d.classical.seed.theta,
                log_squeeze: d.classical.seed.log_squeeze,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub closed: f64,
    pub estimated: f64,
    pub residual: f64,
    pub search: RoofSearch,
}

/// Correlations between Alice's mode `A` and Rob's mode `R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub scenario: FrameScenario,
    pub i2: f64,
    /// Measurement on `R`.
    pub a_given_r: OneWayReport,
    /// Measurement on `A`.
    pub r_given_a: OneWayReport,
    pub e2: EntanglementReport,
    pub closed_forms: ClosedFormReport,
    /// Setting (a) only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tripartite: Option<TripartiteReport>,
}

/// Numeric values of the five two-mode measures between `A` and `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairCorrelations {
    pub i2: f64,
    pub j2_a_given_r: f64,
    pub j2_r_given_a: f64,
    pub d2_a_given_r: f64,
    pub d2_r_given_a: f64,
    pub e2: f64,
}

impl PairCorrelations {
    pub const COLUMNS: [&'static str; 6] = ["I2", "J2_A_given_R", "J2_R_given_A", "D2_A_given_R", "D2_R_given_A", "E2"];

    pub fn values(&self) -> [f64; 6] {
        [
            self.i2,
            self.j2_a_given_r,
            self.j2_r_given_a,
            self.d2_a_given_r,
            self.d2_r_given_a,
            self.e2,
        ]
    }
}

struct Numeric {
    i2: f64,
    a_given_r: OneWayReport,
    r_given_a: OneWayReport,
    e2: crate::renyi::EntanglementEstimate,
}

fn numeric(scenario: &FrameScenario, budget: usize) -> Result<Numeric> {
    let sigma = observed_pair(scenario)?;
    let ar = ModePartition::bipartite(&[0], &[1])?;
    Ok(Numeric {
        i2: mutual_information(&sigma, &ar)?.value,
        a_given_r: discord(&sigma, &ar, Side::B)?.into(),
        r_given_a: discord(&sigma, &ar, Side::A)?.into(),
        e2: entanglement_estimate(&sigma, &ar, budget)?,
    })
}

/// The numeric measures only, as plotted in the figures.
pub fn pair_correlations(scenario: &FrameScenario, budget: usize) -> Result<PairCorrelations> {
    let n = numeric(scenario, budget)?;
    Ok(PairCorrelations {
        i2: n.i2,
        j2_a_given_r: n.a_given_r.classical,
        j2_r_given_a: n.r_given_a.classical,
        d2_a_given_r: n.a_given_r.discord,
        d2_r_given_a: n.r_given_a.discord,
        e2: n.e2.value.value,
    })
}

/// Runs every measure on `scenario`. `budget` goes to the entanglement searches.
pub fn analyze(scenario: &FrameScenario, budget: usize) -> Result<AnalysisReport> {
    scenario.validate()?;
    let closed_forms = ClosedFormReport::new(scenario)?;
    let n = numeric(scenario, budget)?;
    let tripartite = match scenario.setting {
        Setting::A => Some(TripartiteReport::setting_a(scenario.s, scenario.r, budget)?),
        _ => None,
    };
    Ok(AnalysisReport {
        scenario: *scenario,
        i2: n.i2,
        a_given_r: n.a_given_r,
        r_given_a: n.r_given_a,
        e2: EntanglementReport {
            closed: closed_forms.e2,
            estimated: n.e2.value.value,
            residual: n.e2.residual,
            search: n.e2.search,
        },
        closed_forms,
        tripartite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::renyi::DEFAULT_BUDGET;

    const S_STAR: f64 = 0.828_727_227_076_538_6;

    #[test]
    fn inertial_report_is_normalized() {
        let rep = analyze(&FrameScenario::inertial(S_STAR).unwrap(), DEFAULT_BUDGET).unwrap();
        assert!((rep.i2 - 2.0).abs() < 1e-9);
        for v in [
            rep.a_given_r.classical,
            rep.a_given_r.discord,
            rep.r_given_a.classical,
            rep.r_given_a.discord,
            rep.e2.estimated,
            rep.e2.closed,
        ] {
            assert!((v - 1.0).abs() < 1e-6, "{v}");
        }
        assert!(rep.tripartite.is_none());
    }

    #[test]
    fn unaccelerated_setting_a_matches_inertial() {
        let a = analyze(&FrameScenario::setting_a(S_STAR, 0.0).unwrap(), DEFAULT_BUDGET).unwrap();
        let i = analyze(&FrameScenario::inertial(S_STAR).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(a.i2, i.i2);
        assert_eq!(a.a_given_r, i.a_given_r);
        assert_eq!(a.r_given_a, i.r_given_a);
        assert_eq!(a.e2.estimated, i.e2.estimated);
        let t = a.tripartite.unwrap();
        assert!(t.residual_discord.abs() < 1e-8);
    }

    #[test]
    fn sudden_death_keeps_discord() {
        let rep = analyze(&FrameScenario::setting_b(0.3, 2.0, 2.0).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.e2.closed, 0.0);
        assert!(rep.e2.estimated <= 2e-4);
        assert!(rep.a_given_r.discord > 0.0 && rep.r_given_a.discord > 0.0);
    }

    #[test]
    fn json_carries_seeds() {
        let rep = analyze(&FrameScenario::setting_a(0.5, 1.0).unwrap(), DEFAULT_BUDGET).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert!(v["r_given_a"]["seed"]["log_squeeze"].is_number());
        assert!(v["tripartite"]["residual_discord"].is_number());
        let back: AnalysisReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, rep);
    }
}
