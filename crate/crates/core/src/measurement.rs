//! Gaussian measurements at the covariance-matrix level and the one-way
//! classical correlations / discord they define.

use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::optim::golden_section;
use crate::phase_space::{CovarianceMatrix, ModePartition};
use crate::renyi::{mutual_information, CorrelationKind, CorrelationValue};

/// Largest `|z|` of a seed; beyond this the objective is flat to machine precision.
pub const MAX_LOG_SQUEEZE: f64 = 20.0;
pub const GRID_POINTS: usize = 64;
pub const GRID_LOG_SQUEEZE: f64 = 8.0;
pub const MAX_REFINE_ROUNDS: usize = 200;
pub const REFINE_REL_TOL: f64 = 1e-9;

/// Single-mode CM `(2n̄+1)·R(θ)·diag(e^{2z}, e^{−2z})·R(θ)ᵀ` seeding a Gaussian POVM.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSeed {
    pub theta: f64,
    pub log_squeeze: f64,
    #[serde(default)]
    pub thermal: f64,
}

impl MeasurementSeed {
    /// `theta` is reduced into `[0, π)`, which leaves the seed unchanged.
    pub fn new(theta: f64, log_squeeze: f64, thermal: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "angle must be finite",
            });
        }
        if !(log_squeeze.abs() <= MAX_LOG_SQUEEZE) {
            return Err(Error::InvalidParameter {
                name: "log_squeeze",
                value: log_squeeze,
                reason: "must lie in [-20, 20]",
            });
        }
        crate::error::check_nonnegative("thermal", thermal)?;
        Ok(Self {
            theta: theta.rem_euclid(PI),
            log_squeeze,
            thermal,
        })
    }

    pub fn pure(theta: f64, log_squeeze: f64) -> Result<Self> {
        Self::new(theta, log_squeeze, 0.0)
    }

    /// Heterodyne detection (vacuum seed).
    pub fn heterodyne() -> Self {
        Self {
            theta: 0.0,
            log_squeeze: 0.0,
            thermal: 0.0,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.thermal == 0.0
    }

    pub fn cm(&self) -> CovarianceMatrix {
        let m = rot(self.theta)
            * Matrix2::new(
                (2.0 * self.log_squeeze).exp(),
                0.0,
                0.0,
                (-2.0 * self.log_squeeze).exp(),
            )
            * rot(self.theta).transpose()
            * (2.0 * self.thermal + 1.0);
        CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]))
            .expect("seed CM is symmetric")
    }
}

fn rot(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Which side of a bipartition is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Direction of the infinitely squeezed seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomodyneLimit {
    /// `z → +∞`
    Positive,
    /// `z → −∞`
    Negative,
}

/// `(σ_B + Γ)⁻¹` for a single-mode seed, evaluated in the seed's eigenframe so
/// that `|z| = 20` does not cancel catastrophically.
fn seeded_inverse(sigma_b: &Matrix2<f64>, seed: &MeasurementSeed) -> Result<Matrix2<f64>> {
    let r = rot(seed.theta);
    let m = r.transpose() * sigma_b * r;
    let nu = 2.0 * seed.thermal + 1.0;
    let (up, down) = ((2.0 * seed.log_squeeze).exp(), (-2.0 * seed.log_squeeze).exp());
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)] + nu * (m[(0, 0)] * down + m[(1, 1)] * up) + nu * nu;
    if !(det > 0.0) || !det.is_finite() {
        return Err(Error::Singular(format!("σ_B + Γ has determinant {det}")));
    }
    let adj = Matrix2::new(m[(1, 1)] + nu * down, -m[(0, 1)], -m[(1, 0)], m[(0, 0)] + nu * up);
    Ok(r * (adj / det) * r.transpose())
}

fn homodyne_inverse(sigma_b: &Matrix2<f64>, theta: f64, limit: HomodyneLimit) -> Result<Matrix2<f64>> {
    let r = rot(theta);
    let m = r.transpose() * sigma_b * r;
    let inner = match limit {
        HomodyneLimit::Positive => Matrix2::new(0.0, 0.0, 0.0, 1.0 / m[(1, 1)]),
        HomodyneLimit::Negative => Matrix2::new(1.0 / m[(0, 0)], 0.0, 0.0, 0.0),
    };
    if !inner.iter().all(|x| x.is_finite()) {
        return Err(Error::Singular("measured quadrature has zero variance".into()));
    }
    Ok(r * inner * r.transpose())
}

fn schur(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
    measured: Side,
    inverse: impl FnOnce(&Matrix2<f64>) -> Result<Matrix2<f64>>,
) -> Result<CovarianceMatrix> {
    let (a, b) = partition.split_of(sigma)?;
    let (kept, meas) = match measured {
        Side::A => (b, a),
        Side::B => (a, b),
    };
    if meas.len() != 1 {
        return Err(Error::Unsupported("only single-mode measurements are supported".into()));
    }
    let m = meas[0];
    let sigma_kept = sigma.reduce(&kept)?;
    let sb = sigma.block(m, m)?;
    let sb = Matrix2::new(sb[(0, 0)], sb[(0, 1)], sb[(1, 0)], sb[(1, 1)]);
    let inv = inverse(&sb)?;
    let inv = DMatrix::from_row_slice(2, 2, &[inv[(0, 0)], inv[(0, 1)], inv[(1, 0)], inv[(1, 1)]]);
    let rows: Vec<usize> = kept.iter().flat_map(|&k| [2 * k, 2 * k + 1]).collect();
    let coupling = DMatrix::from_fn(rows.len(), 2, |i, j| sigma.matrix()[(rows[i], 2 * m + j)]);
    let cond = sigma_kept.matrix() - &coupling * inv * coupling.transpose();
    CovarianceMatrix::new((&cond + cond.transpose()) * 0.5)
}

/// Conditional CM of the unmeasured side after a Gaussian measurement seeded by `seed`.
///
/// `σ_A − ς(σ_B + Γ)⁻¹ςᵀ` when `measured` is `B`; the roles swap for `A`.
pub fn conditional_cm(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
    measured: Side,
    seed: &MeasurementSeed,
) -> Result<CovarianceMatrix> {
    sigma.require_bona_fide()?;
    schur(sigma, partition, measured, |sb| seeded_inverse(sb, seed))
}

/// Conditional CM in the homodyne limit `|z| → ∞` of a pure seed at angle `theta`.
pub fn conditional_cm_homodyne(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
    measured: Side,
    theta: f64,
    limit: HomodyneLimit,
) -> Result<CovarianceMatrix> {
    sigma.require_bona_fide()?;
    schur(sigma, partition, measured, |sb| homodyne_inverse(sb, theta, limit))
}

/// Blocks of a two-mode CM seen from the measurement: `a` unmeasured, `b` measured,
/// `c` the coupling (rows unmeasured, columns measured).
#[derive(Debug, Clone, Copy)]
struct TwoModeBlocks {
    a: Matrix2<f64>,
    b: Matrix2<f64>,
    c: Matrix2<f64>,
    ln_det_a: f64,
}

impl TwoModeBlocks {
    fn new(sigma: &CovarianceMatrix, partition: &ModePartition, measured: Side) -> Result<Self> {
        let (a, b) = partition.split_of(sigma)?;
        if a.len() != 1 || b.len() != 1 {
            return Err(Error::Unsupported(
                "classical correlations need a single mode on each side".into(),
            ));
        }
        sigma.require_bona_fide()?;
        let (kept, meas) = match measured {
            Side::A => (b[0], a[0]),
            Side::B => (a[0], b[0]),
        };
        let get = |i: usize, j: usize| -> Result<Matrix2<f64>> {
            let m = sigma.block(i, j)?;
            Ok(Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]))
        };
        let a = get(kept, kept)?;
        Ok(Self {
            a,
            b: get(meas, meas)?,
            c: get(kept, meas)?,
            ln_det_a: a.determinant().ln(),
        })
    }

    /// `½ ln(det σ_unmeasured / det σ̃)`.
    fn gain(&self, inverse: &Matrix2<f64>) -> f64 {
        let cond = self.a - self.c * inverse * self.c.transpose();
        0.5 * (self.ln_det_a - cond.determinant().ln())
    }

    fn objective(&self, seed: &MeasurementSeed) -> f64 {
        match seeded_inverse(&self.b, seed) {
            Ok(inv) => self.gain(&inv),
            Err(_) => f64::NEG_INFINITY,
        }
    }
}

/// Entropy decrease `½ ln(det σ_unmeasured / det σ̃)` for one seed on a two-mode state.
pub fn classical_objective(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
    measured: Side,
    seed: &MeasurementSeed,
) -> Result<f64> {
    let blocks = TwoModeBlocks::new(sigma, partition, measured)?;
    let inv = seeded_inverse(&blocks.b, seed)?;
    Ok(blocks.gain(&inv))
}

/// The same objective in the homodyne limit.
pub fn classical_objective_homodyne(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
    measured: Side,
    theta: f64,
    limit: HomodyneLimit,
) -> Result<f64> {
    let blocks = TwoModeBlocks::new(sigma, partition, measured)?;
    let inv = homodyne_inverse(&blocks.b, theta, limit)?;
    Ok(blocks.gain(&inv))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalCorrelations {
    pub value: CorrelationValue,
    /// Optimal (pure) seed.
    pub seed: MeasurementSeed,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscordValue {
    pub value: CorrelationValue,
    pub mutual_information: f64,
    pub classical: ClassicalCorrelations,
}

fn ties(a: f64, b: f64) -> bool {
    a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Prefers the larger value; near-equal values go to smaller `|z|`, then smaller `θ`.
fn better(cand: (f64, f64, f64), best: (f64, f64, f64)) -> bool {
    let (v, t, z) = cand;
    let (bv, bt, bz) = best;
    if ties(v, bv) {
        (z.abs(), t) < (bz.abs(), bt)
    } else {
        v > bv
    }
}

/// One-way classical correlations `J₂` of the unmeasured side given a Gaussian
/// measurement on `measured`.
///
/// Searches pure seeds: a 64×64 grid over `θ ∈ [0, π)`, `z ∈ [−8, 8)`, then
/// alternating golden-section refinement of `θ` and `z` (with `|z| ≤ 20`)
/// until a round improves the value by less than `1e-9` relative.
pub fn classical_correlations(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
    measured: Side,
) -> Result<ClassicalCorrelations> {
    let blocks = TwoModeBlocks::new(sigma, partition, measured)?;
    let f = |theta: f64, z: f64| blocks.objective(&MeasurementSeed { theta, log_squeeze: z, thermal: 0.0 });

    let theta_step = PI / GRID_POINTS as f64;
    let z_step = 2.0 * GRID_LOG_SQUEEZE / GRID_POINTS as f64;
    let mut evaluations = 0usize;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..GRID_POINTS {
        let theta = i as f64 * theta_step;
        for j in 0..GRID_POINTS {
            let z = -GRID_LOG_SQUEEZE + j as f64 * z_step;
            let v = f(theta, z);
            evaluations += 1;
            if better((v, theta, z), best) {
                best = (v, theta, z);
            }
        }
    }

    let (mut value, mut theta, mut z) = best;
    let (mut h_theta, mut h_z) = (theta_step, z_step);
    let mut converged = false;
    let mut last_rel = f64::INFINITY;
    for _ in 0..MAX_REFINE_ROUNDS {
        let start = value;

        let (t_new, fv, n) = golden_section(
            |t| -f(t, z),
            theta - h_theta,
            theta + h_theta,
            (h_theta * 1e-4).max(1e-13),
            200,
        );
        evaluations += n;
        if -fv > value + 4.0 * f64::EPSILON * value.abs().max(1.0) {
            h_theta = if (t_new - theta).abs() >= 0.999 * h_theta { h_theta * 2.0 } else { (h_theta * 0.5).max(1e-10) };
            theta = t_new;
            value = -fv;
        } else {
            h_theta = (h_theta * 0.5).max(1e-10);
        }

        let (lo, hi) = ((z - h_z).max(-MAX_LOG_SQUEEZE), (z + h_z).min(MAX_LOG_SQUEEZE));
        let (z_new, fv, n) = golden_section(|x| -f(theta, x), lo, hi, (h_z * 1e-4).max(1e-13), 200);
        evaluations += n;
        if -fv > value + 4.0 * f64::EPSILON * value.abs().max(1.0) {
            let at_edge = (z_new - lo).abs() < 1e-12 || (z_new - hi).abs() < 1e-12;
            h_z = if at_edge { (h_z * 2.0).min(2.0 * MAX_LOG_SQUEEZE) } else { (h_z * 0.5).max(1e-10) };
            z = z_new;
            value = -fv;
        } else {
            h_z = (h_z * 0.5).max(1e-10);
        }

        last_rel = (value - start).abs() / value.abs().max(1e-300);
        if last_rel <= REFINE_REL_TOL || value == start {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NotConverged {
            best: value,
            relative_improvement: last_rel,
        });
    }

    Ok(ClassicalCorrelations {
        value: CorrelationValue::new(CorrelationKind::Classical, value),
        seed: MeasurementSeed {
            theta: theta.rem_euclid(PI),
            log_squeeze: z,
            thermal: 0.0,
        },
        evaluations,
    })
}

/// Rényi-2 discord `I₂ − J₂` of the unmeasured side given measurements on `measured`.
pub fn discord(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
    measured: Side,
) -> Result<DiscordValue> {
    let classical = classical_correlations(sigma, partition, measured)?;
    let i2 = mutual_information(sigma, partition)?.value;
    Ok(DiscordValue {
        value: CorrelationValue::new(CorrelationKind::Discord, i2 - classical.value.value),
        mutual_information: i2,
        classical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{apply_symplectic, direct_sum, two_mode_squeezer, vacuum_cm};

    fn tms(s: f64) -> CovarianceMatrix {
        apply_symplectic(&vacuum_cm(2).unwrap(), &two_mode_squeezer(s, 0, 1, 2).unwrap()).unwrap()
    }

    fn ab() -> ModePartition {
        ModePartition::bipartite(&[0], &[1]).unwrap()
    }

    #[test]
    fn seed_validation_and_cm() {
        assert!(MeasurementSeed::new(0.0, 21.0, 0.0).is_err());
        assert!(MeasurementSeed::new(0.0, 0.0, -0.1).is_err());
        let s = MeasurementSeed::new(4.0, 0.3, 0.0).unwrap();
        assert!((0.0..PI).contains(&s.theta));
        let cm = s.cm();
        assert!((cm.det() - 1.0).abs() < 1e-12);
        assert!(cm.is_bona_fide());
        let mixed = MeasurementSeed::new(1.0, -0.5, 0.5).unwrap().cm();
        assert!((mixed.det() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_conditioning_is_trivial() {
        let a = CovarianceMatrix::thermal(0.4).unwrap();
        let prod = direct_sum(&a, &CovarianceMatrix::thermal(1.0).unwrap());
        let seed = MeasurementSeed::pure(0.7, 1.2).unwrap();
        let cond = conditional_cm(&prod, &ab(), Side::B, &seed).unwrap();
        assert!((cond.matrix() - a.matrix()).amax() < 1e-15);
    }

    #[test]
    fn heterodyne_on_two_mode_squeezed_state_gives_vacuum() {
        let s = 0.9;
        let cond = conditional_cm(&tms(s), &ab(), Side::B, &MeasurementSeed::heterodyne()).unwrap();
        // cosh 2s − sinh² 2s /(cosh 2s + 1) = 1
        assert!((cond.matrix() - DMatrix::<f64>::identity(2, 2)).amax() < 1e-13);
    }

    #[test]
    fn multimode_measurement_rejected() {
        let sigma = direct_sum(&tms(0.3), &vacuum_cm(1).unwrap());
        let p = ModePartition::bipartite(&[0], &[1, 2]).unwrap();
        let err = conditional_cm(&sigma, &p, Side::B, &MeasurementSeed::heterodyne()).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn pure_two_mode_squeezed_equality() {
        let s: f64 = 0.6;
        let c2 = (2.0 * s).cosh().ln();
        for side in [Side::A, Side::B] {
            let j = classical_correlations(&tms(s), &ab(), side).unwrap();
            assert!((j.value.value - c2).abs() < 1e-9);
            let d = discord(&tms(s), &ab(), side).unwrap();
            assert!((d.value.value - c2).abs() < 1e-9);
        }
    }

    #[test]
    fn product_discord_vanishes() {
        let prod = direct_sum(
            &CovarianceMatrix::thermal(0.4).unwrap(),
            &CovarianceMatrix::thermal(1.0).unwrap(),
        );
        for side in [Side::A, Side::B] {
            assert_eq!(discord(&prod, &ab(), side).unwrap().value.value, 0.0);
            assert_eq!(classical_correlations(&prod, &ab(), side).unwrap().value.value, 0.0);
        }
    }

    #[test]
    fn homodyne_limit_matches_large_squeezing() {
        let sigma = crate::unruh::setting_a(0.7, 0.8).unwrap().reduce(&[0, 1]).unwrap();
        for theta in [0.0, 0.4, 1.3, 2.9] {
            let far = classical_objective(&sigma, &ab(), Side::B, &MeasurementSeed::pure(theta, 20.0).unwrap()).unwrap();
            let lim = classical_objective_homodyne(&sigma, &ab(), Side::B, theta, HomodyneLimit::Positive).unwrap();
            assert!((far - lim).abs() < 1e-8, "{far} {lim}");
            let far = classical_objective(&sigma, &ab(), Side::A, &MeasurementSeed::pure(theta, -20.0).unwrap()).unwrap();
            let lim = classical_objective_homodyne(&sigma, &ab(), Side::A, theta, HomodyneLimit::Negative).unwrap();
            assert!((far - lim).abs() < 1e-8, "{far} {lim}");
        }
    }
}
