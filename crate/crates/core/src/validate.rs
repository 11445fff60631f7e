//! Cross-checks of the numeric pipeline against the closed forms on a
//! parameter grid, plus spot checks of the figure tables.

use serde::Serialize;
use std::f64::consts::LN_2;
use std::str::FromStr;

use crate::closed_forms::{c2_inertial, e2_closed, i2_closed, j2_r_given_a, q2_tripartite_closed, sudden_death};
use crate::error::{Error, Result};
use crate::figures::{figure_table, s_star, Figure};
use crate::measurement::{classical_correlations, discord, Side};
use crate::phase_space::ModePartition;
use crate::renyi::{entanglement_estimate, half_log_det, mutual_information, DEFAULT_BUDGET};
use crate::tripartite::{minimize_over_hub, residual_discord, residual_entanglement_terms, HubQuantity};
use crate::unruh::{observed_pair, setting_a, FrameScenario, Mode, Setting};

/// `ln cosh 2s − 2 ln cosh s` at `s = 0.828727`.
pub const D2_LIMIT_AT_S_STAR: f64 = 0.37989;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Grid {
    #[default]
    Coarse,
    Fine,
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coarse" => Ok(Grid::Coarse),
            "fine" => Ok(Grid::Fine),
            other => Err(Error::Unsupported(format!("unknown grid {other:?}"))),
        }
    }
}

impl Grid {
    pub fn s_values(self) -> &'static [f64] {
        match self {
            Grid::Coarse => &[0.3, 0.828727, 1.5],
            Grid::Fine => &[0.1, 0.3, 0.6, 0.828727, 1.1, 1.5],
        }
    }

    pub fn r_values(self) -> &'static [f64] {
        match self {
            Grid::Coarse => &[0.0, 0.5, 1.0, 2.0],
            Grid::Fine => &[0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5],
        }
    }

    /// `w` as multiples of `r`.
    pub fn w_ratios(self) -> &'static [f64] {
        match self {
            Grid::Coarse => &[0.0, 1.0, 2.0],
            Grid::Fine => &[0.0, 0.5, 1.0, 2.0],
        }
    }

    /// `(s, w, r)` triples.
    pub fn points(self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::new();
        for &s in self.s_values() {
            for &r in self.r_values() {
                for &k in self.w_ratios() {
                    out.push((s, k * r, r));
                }
            }
        }
        out
    }

    /// Nonzero accelerations for the tripartite checks.
    pub fn tripartite_r(self) -> Vec<f64> {
        self.r_values().iter().copied().filter(|&r| r > 0.0).collect()
    }
}

/// Outcome of one named cross-check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_delta: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, max_delta: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            max_delta: max_delta + 0.0,
            tolerance,
            passed: max_delta <= tolerance,
        }
    }

    /// A pass/fail condition with no natural delta.
    fn flag(name: &str, ok: bool) -> Self {
        Self {
            name: name.to_string(),
            max_delta: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: ok,
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {:<40} max delta {:.3e} (tolerance {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_delta,
            self.tolerance
        )
    }
}

/// Reference mutual information `(s, w, r) ↦ I₂`.
pub type I2Reference = fn(f64, f64, f64) -> Result<f64>;

pub struct Validator {
    pub grid: Grid,
    pub budget: usize,
    pub i2_reference: I2Reference,
}

fn scenario(s: f64, w: f64, r: f64) -> Result<FrameScenario> {
    if w == 0.0 {
        FrameScenario::setting_a(s, r)
    } else {
        FrameScenario::setting_b(s, w, r)
    }
}

fn ar() -> ModePartition {
    ModePartition::bipartite(&[0], &[1]).expect("two single-mode sides")
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates as a failure.
    it.into_iter()
        .fold(0.0, |m: f64, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

/// Bisection for the sudden-death boundary along `w = κr`.
fn boundary_on_ray(s: f64, kappa: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while !sudden_death(s, kappa * hi, hi)? {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sudden_death(s, kappa * mid, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

impl Validator {
    pub fn new(grid: Grid) -> Self {
        Self {
            grid,
            budget: DEFAULT_BUDGET,
            i2_reference: i2_closed,
        }
    }

    pub fn with_i2_reference(mut self, reference: I2Reference) -> Self {
        self.i2_reference = reference;
        self
    }

    pub fn run(&self) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        checks.extend(self.inertial()?);
        checks.extend(self.mutual_information()?);
        checks.extend(self.classical()?);
        checks.extend(self.limits()?);
        checks.extend(self.entanglement()?);
        checks.extend(self.tripartite()?);
        checks.extend(self.figures()?);
        Ok(checks)
    }

    fn inertial(&self) -> Result<Vec<Check>> {
        let sigma = observed_pair(&FrameScenario::inertial(s_star())?)?;
        let p = ar();
        let i2 = mutual_information(&sigma, &p)?.value;
        let mut deltas = vec![(i2 - 2.0).abs()];
        for side in [Side::A, Side::B] {
            let d = discord(&sigma, &p, side)?;
            deltas.push((d.value.value - 1.0).abs());
            deltas.push((d.classical.value.value - 1.0).abs());
        }
        deltas.push((entanglement_estimate(&sigma, &p, self.budget)?.value.value - 1.0).abs());
        Ok(vec![Check::new("inertial normalization", max_of(deltas), 1e-6)])
    }

    fn mutual_information(&self) -> Result<Vec<Check>> {
        let p = ar();
        let mut worst = 0.0_f64;
        for (s, w, r) in self.grid.points() {
            let numeric = mutual_information(&observed_pair(&scenario(s, w, r)?)?, &p)?.value;
            let reference = (self.i2_reference)(s, w, r)?;
            let rel = (numeric - reference).abs() / reference.abs().max(f64::MIN_POSITIVE);
            worst = max_of([worst, if numeric == reference { 0.0 } else { rel }]);
        }
        Ok(vec![Check::new("I2 cross-check against closed form", worst, 1e-9)])
    }

    fn classical(&self) -> Result<Vec<Check>> {
        let p = ar();
        let (mut a_given_r, mut a_vs_b) = (0.0_f64, 0.0_f64);
        for &s in self.grid.s_values() {
            for &r in self.grid.r_values() {
                let j_ar = classical_correlations(&observed_pair(&scenario(s, 0.0, r)?)?, &p, Side::B)?;
                a_given_r = max_of([a_given_r, (j_ar.value.value - c2_inertial(s)?).abs()]);
                let base = classical_correlations(&observed_pair(&scenario(s, 0.0, r)?)?, &p, Side::A)?;
                for &k in self.grid.w_ratios() {
                    let j = classical_correlations(&observed_pair(&scenario(s, k * r, r)?)?, &p, Side::A)?;
                    a_vs_b = max_of([a_vs_b, (j.value.value - base.value.value).abs()]);
                }
            }
        }
        Ok(vec![
            Check::new("J2(A|R) independent of r", a_given_r, 1e-6),
            Check::new("J2(R|A) independent of w", a_vs_b, 1e-6),
        ])
    }

    fn limits(&self) -> Result<Vec<Check>> {
        let half = max_of(
            self.grid
                .s_values()
                .iter()
                .map(|&s| Ok((i2_closed(s, 0.0, 25.0)? - c2_inertial(s)?).abs()))
                .collect::<Result<Vec<_>>>()?,
        );
        let abit = (c2_inertial(25.0)? - j2_r_given_a(25.0, 25.0)? - LN_2).abs();
        let sigma = observed_pair(&FrameScenario::setting_a(0.828727, 10.0)?)?;
        let d2 = discord(&sigma, &ar(), Side::A)?.value.value;
        Ok(vec![
            Check::new("I2 at r=25 halves inertial", half, 1e-6),
            Check::new("C2 - J2(R|A) at s=r=25 is ln 2", abit, 1e-4),
            Check::new("D2(R|A) at r=10", (d2 - D2_LIMIT_AT_S_STAR).abs(), 1e-3),
        ])
    }

    fn entanglement(&self) -> Result<Vec<Check>> {
        let p = ar();
        let unaccelerated = max_of(
            self.grid
                .s_values()
                .iter()
                .map(|&s| Ok((e2_closed(s, 0.0, 0.0)? - c2_inertial(s)?).abs()))
                .collect::<Result<Vec<_>>>()?,
        );
        let (mut vs_closed, mut dead) = (0.0_f64, 0.0_f64);
        for (s, w, r) in self.grid.points() {
            let est = entanglement_estimate(&observed_pair(&scenario(s, w, r)?)?, &p, self.budget)?.value.value;
            vs_closed = max_of([vs_closed, (est - e2_closed(s, w, r)?).abs()]);
            if s.tanh() <= w.sinh() * r.sinh() {
                dead = max_of([dead, est]);
            }
        }
        let mut jump = 0.0_f64;
        for &s in self.grid.s_values() {
            for kappa in [0.5, 1.0, 2.0] {
                let x = boundary_on_ray(s, kappa)?;
                let (lo, hi) = (x - 1e-4, x + 1e-4);
                jump = max_of([jump, (e2_closed(s, kappa * lo, lo)? - e2_closed(s, kappa * hi, hi)?).abs()]);
            }
        }
        Ok(vec![
            Check::new("E2 closed form at r=w=0", unaccelerated, 0.0),
            Check::new("E2 estimate against closed form", vs_closed, 5e-3),
            Check::new("E2 estimate in sudden-death region", dead, 2e-4),
            Check::new("E2 continuous at sudden death", jump, 1e-6),
        ])
    }

    fn tripartite(&self) -> Result<Vec<Check>> {
        let rob = Setting::A.index_of(Mode::R).expect("setting (a) has R");
        let (mut disc, mut ent, mut mono) = (0.0_f64, 0.0_f64, 0.0_f64);
        let mut hub_ok = true;
        for &s in self.grid.s_values() {
            for r in self.grid.tripartite_r() {
                let sigma3 = setting_a(s, r)?;
                let q2 = q2_tripartite_closed(s, r)?;
                disc = max_of([disc, (residual_discord(&sigma3, rob)? - q2).abs()]);
                let terms = residual_entanglement_terms(&sigma3, rob, self.budget, None)?;
                ent = max_of([ent, (terms.residual - q2).abs()]);
                let s_r = half_log_det(&sigma3.reduce(&[rob])?)?;
                mono = max_of([mono, terms.first + terms.second - s_r]);
                let (h_e, _) = minimize_over_hub(&sigma3, HubQuantity::Entanglement { budget: self.budget })?;
                let (h_d, _) = minimize_over_hub(&sigma3, HubQuantity::Discord)?;
                hub_ok &= h_e == rob && h_d == rob;
            }
        }
        let gap = (c2_inertial(25.0)? - q2_tripartite_closed(25.0, 25.0)? - LN_2).abs();
        Ok(vec![
            Check::new("residual discord against Q2 closed form", disc, 1e-5),
            Check::new("residual entanglement against Q2", ent, 1e-2),
            Check::new("monogamy of E2 with hub R", mono.max(0.0), 5e-3),
            Check::flag("hub minimizer is R", hub_ok),
            Check::new("ln 2 gap at s=r=25", gap, 1e-4),
        ])
    }

    fn figures(&self) -> Result<Vec<Check>> {
        let fig2a = figure_table(Figure::Fig2a, self.budget)?;
        let fig2b = figure_table(Figure::Fig2b, self.budget)?;
        let fig3 = figure_table(Figure::Fig3, self.budget)?;
        let col = |t: &crate::figures::Table, c: &str| t.column(c).expect("figure column");

        let mut first = vec![(fig2a.rows[0][1] - 2.0).abs()];
        first.extend(fig2a.rows[0][2..].iter().map(|v| (v - 1.0).abs()));
        let d2 = col(&fig2a, "D2_R_given_A");
        let tail = &d2[d2.len() - 20..];
        let approaching = tail.windows(2).all(|w| w[1] <= w[0]) && tail.iter().all(|&v| v > D2_LIMIT_AT_S_STAR);
        let e2b = col(&fig2b, "E2");
        let death = e2b.iter().position(|&v| v == 0.0);
        let crossing = matches!(death, Some(i) if i > 0 && e2b[..i].iter().all(|&v| v > 0.0) && e2b[i..].iter().all(|&v| v == 0.0));
        let discord_alive = ["D2_A_given_R", "D2_R_given_A"]
            .iter()
            .all(|c| col(&fig2b, c).iter().all(|&v| v > 0.0));
        Ok(vec![
            Check::new("fig2a r=0 row normalized", max_of(first), 1e-6),
            Check::new(
                "fig2a D2_R_given_A at r=3",
                (d2[d2.len() - 1] - D2_LIMIT_AT_S_STAR).abs(),
                5e-3,
            ),
            Check::flag("fig2a D2_R_given_A decreasing to limit", approaching),
            Check::flag("fig2b E2 vanishes at finite r", crossing),
            Check::flag("fig2b discord stays positive", discord_alive),
            Check::new("fig3 Q2_trip at r=0", col(&fig3, "Q2_trip")[0].abs(), 1e-9),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(Grid::Coarse.points().len(), 36);
        assert!(Grid::Fine.points().len() > 36);
        assert_eq!("fine".parse::<Grid>().unwrap(), Grid::Fine);
    }

    #[test]
    fn boundary_on_diagonal() {
        let x = boundary_on_ray(0.5, 1.0).unwrap();
        assert!((x - 0.636_032_957_113_492).abs() < 1e-12);
    }

    #[test]
    fn check_display() {
        let c = Check::new("x", 2e-7, 1e-6);
        assert!(c.passed);
        assert!(c.to_string().starts_with("PASS x"));
        assert!(!Check::new("nan", f64::NAN, 1.0).passed);
    }
}
