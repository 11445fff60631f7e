//! Rényi-2 entropy, mutual information and entanglement of Gaussian states.
//!
//! All values are in nats.

use nalgebra::{Matrix2, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::{golden_section, nelder_mead, NelderMeadOptions};
use crate::phase_space::{CovarianceMatrix, ModePartition};

/// Values in `(-ZERO_CLAMP, 0)` are reported as exactly zero.
pub const ZERO_CLAMP: f64 = 1e-9;
/// Purity tolerance on `det σ` for [`pure_state_entanglement`].
pub const PURITY_TOL: f64 = 1e-6;
/// Default evaluation budget for [`entanglement_estimate`].
pub const DEFAULT_BUDGET: usize = 20_000;
/// Largest accepted violation of `σ − γ ⪰ 0`, relative to `max(1, ‖σ‖)`.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// A symplectic eigenvalue this close to 1 is treated as exactly 1.
pub const UNIT_EIGENVALUE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationKind {
    Entropy,
    MutualInformation,
    Classical,
    Discord,
    Entanglement,
    Tripartite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationValue {
    pub value: f64,
    pub kind: CorrelationKind,
}

impl CorrelationValue {
    /// Clamps roundoff-level negatives to zero; larger negatives are kept so
    /// callers can see them.
    pub fn new(kind: CorrelationKind, value: f64) -> Self {
        let value = if value <= 0.0 && value > -ZERO_CLAMP { 0.0 } else { value };
        Self { value, kind }
    }
}

/// `S₂(σ) = ½ ln det σ`.
pub fn renyi2_entropy(sigma: &CovarianceMatrix) -> Result<CorrelationValue> {
    sigma.require_bona_fide()?;
    let det = sigma.det();
    if !(det > 0.0) {
        return Err(Error::InvalidParameter {
            name: "det σ",
            value: det,
            reason: "determinant must be positive",
        });
    }
    Ok(CorrelationValue::new(CorrelationKind::Entropy, 0.5 * det.ln()))
}

/// Shannon entropy of the Wigner distribution, `S₂ + N(1 + ln π)`.
pub fn wigner_shannon_entropy(sigma: &CovarianceMatrix) -> Result<f64> {
    let s2 = renyi2_entropy(sigma)?.value;
    Ok(s2 + sigma.modes() as f64 * (1.0 + std::f64::consts::PI.ln()))
}

/// `I₂(A:B) = S₂(σ_A) + S₂(σ_B) − S₂(σ_AB)`; the partition must cover every mode.
pub fn mutual_information(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<CorrelationValue> {
    let (a, b) = partition.split_of(sigma)?;
    sigma.require_bona_fide()?;
    let sa = half_log_det(&sigma.reduce(&a)?)?;
    let sb = half_log_det(&sigma.reduce(&b)?)?;
    let sab = half_log_det(sigma)?;
    Ok(CorrelationValue::new(
        CorrelationKind::MutualInformation,
        sa + sb - sab,
    ))
}

pub(crate) fn half_log_det(sigma: &CovarianceMatrix) -> Result<f64> {
    let det = sigma.det();
    if !(det > 0.0) {
        return Err(Error::InvalidParameter {
            name: "det σ",
            value: det,
            reason: "determinant must be positive",
        });
    }
    Ok(0.5 * det.ln())
}

/// Entropy of entanglement `S₂(σ_A)` of a pure state.
pub fn pure_state_entanglement(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<CorrelationValue> {
    let (a, _) = partition.split_of(sigma)?;
    let det = sigma.det();
    if (det - 1.0).abs() > PURITY_TOL {
        return Err(Error::NotPure { det });
    }
    let sa = half_log_det(&sigma.reduce(&a)?)?;
    Ok(CorrelationValue::new(CorrelationKind::Entanglement, sa))
}

/// Which search produced an entanglement estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoofSearch {
    /// Pure input; the roof is the marginal entropy.
    PureState,
    /// One unit symplectic eigenvalue pins all but two parameters of `γ`.
    UnitEigenvalue,
    /// Reflection-symmetric pure states of the standard form.
    Symmetric,
    /// Multi-start penalty search over the seven-parameter family.
    Penalty,
}

/// Result of the convex-roof search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementEstimate {
    pub value: CorrelationValue,
    /// `max(0, −λ_min(σ − γ))` at the reported optimum.
    pub residual: f64,
    pub evaluations: usize,
    pub search: RoofSearch,
}

#[derive(Debug, Clone, Copy)]
struct RoofPoint {
    value: f64,
    residual: f64,
    evaluations: usize,
    search: RoofSearch,
}

/// Pure two-mode CM `(L_A ⊕ L_B)·S(r)·S(r)ᵀ·(L_A ⊕ L_B)ᵀ`.
fn pure_candidate(p: &[f64]) -> Matrix4<f64> {
    let (c, s) = ((2.0 * p[0]).cosh(), (2.0 * p[0]).sinh());
    let tmsv = Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, -s, //
        s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    );
    let la = euler2(p[1], p[2], p[3]);
    let lb = euler2(p[4], p[5], p[6]);
    let mut l = Matrix4::zeros();
    l.fixed_view_mut::<2, 2>(0, 0).copy_from(&la);
    l.fixed_view_mut::<2, 2>(2, 2).copy_from(&lb);
    l * tmsv * l.transpose()
}

fn euler2(t1: f64, z: f64, t2: f64) -> Matrix2<f64> {
    let rot = |t: f64| {
        let (s, c) = t.sin_cos();
        Matrix2::new(c, -s, s, c)
    };
    rot(t1) * Matrix2::new(z.exp(), 0.0, 0.0, (-z).exp()) * rot(t2)
}

fn violation(sigma: &Matrix4<f64>, gamma: &Matrix4<f64>) -> f64 {
    let diff = sigma - gamma;
    let diff = (diff + diff.transpose()) * 0.5;
    let min = diff
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    (-min).max(0.0)
}

/// `½ ln det γ_A` for the candidate family; local transforms leave it at `ln cosh 2r`.
fn roof_objective(p: &[f64]) -> f64 {
    crate::closed_forms::ln_cosh(2.0 * p[0])
}

/// `λ_min(σ − γ)` for the candidate with squeezing `r` and local parameters `u`.
fn slack(sigma: &Matrix4<f64>, u: &[f64], r: f64) -> f64 {
    let x = [r, u[0], u[1], u[2], u[3], u[4], u[5]];
    let diff = sigma - pure_candidate(&x);
    let diff = (diff + diff.transpose()) * 0.5;
    diff.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Smallest `r` near `hint` at which the candidate with local parameters `u`
/// fits under `σ`. The returned `r` is on the feasible side of the crossing.
fn smallest_feasible_squeezing(sigma: &Matrix4<f64>, u: &[f64], hint: f64, r_max: f64) -> Option<f64> {
    let f = |r: f64| slack(sigma, u, r);
    let hint = hint.clamp(0.0, r_max);
    let mut d = 1e-6 * hint.max(1.0);
    let (mut lo, mut hi, mut f_lo, mut f_hi);
    let f0 = f(hint);
    if f0 >= 0.0 {
        hi = hint;
        f_hi = f0;
        loop {
            if hi == 0.0 {
                return Some(0.0);
            }
            let r = (hint - d).max(0.0);
            let v = f(r);
            if v < 0.0 {
                lo = r;
                f_lo = v;
                break;
            }
            hi = r;
            f_hi = v;
            d *= 4.0;
        }
    } else {
        lo = hint;
        f_lo = f0;
        loop {
            let r = hint + d;
            if r > 2.0 * r_max + 1.0 {
                return None;
            }
            let v = f(r);
            if v >= 0.0 {
                hi = r;
                f_hi = v;
                break;
            }
            lo = r;
            f_lo = v;
            d *= 4.0;
        }
    }
    // Illinois-modified regula falsi, keeping `hi` feasible.
    let mut side = 0i8;
    for _ in 0..200 {
        if hi - lo <= 4.0 * f64::EPSILON * hi.max(1.0) {
            break;
        }
        let mut r = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(r > lo && r < hi) {
            r = 0.5 * (lo + hi);
        }
        let v = f(r);
        if v >= 0.0 {
            hi = r;
            f_hi = v;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        } else {
            lo = r;
            f_lo = v;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        }
    }
    Some(hi)
}

/// Sharpens a penalty optimum by minimizing, over the six local parameters,
/// the smallest squeezing that keeps `γ ⪯ σ`. The result is feasible.
fn polish(sigma: &Matrix4<f64>, x: Vec<f64>, r_max: f64, budget: usize, evaluations: &mut usize) -> Vec<f64> {
    let hint = std::cell::Cell::new(x[0].abs());
    let infeasible = 2.0 * r_max + 2.0;
    let h = |u: &[f64]| match smallest_feasible_squeezing(sigma, u, hint.get(), r_max) {
        Some(r) => {
            hint.set(r);
            r
        }
        None => infeasible,
    };
    let u0 = &x[1..];
    if h(u0) >= infeasible {
        return x;
    }
    let m = nelder_mead(
        h,
        u0,
        &[1e-3, 1e-3, 1e-3, 1e-3, 1e-3, 1e-3],
        NelderMeadOptions {
            max_evaluations: budget,
            f_tol: 1e-15,
            x_tol: 1e-12,
        },
    );
    *evaluations += m.evaluations + 1;
    let r = smallest_feasible_squeezing(sigma, &m.x, m.value, r_max).unwrap_or(x[0].abs());
    let mut out = vec![r];
    out.extend_from_slice(&m.x);
    if violation(sigma, &pure_candidate(&out)) > 0.0 && violation(sigma, &pure_candidate(&x)) == 0.0 {
        return x;
    }
    out
}

/// Roof for a mixed two-mode `σ = S·(I ⊕ νI)·Sᵀ` with one unit symplectic
/// eigenvalue. Every pure `γ ⪯ σ` is then `S·(I ⊕ γ₂)·Sᵀ` with `γ₂ ⪯ νI` a pure
/// single-mode CM, so the search runs over the angle and squeezing of `γ₂`.
fn unit_eigenvalue_roof(sigma: &Matrix4<f64>, nu: f64, budget: usize) -> RoofPoint {
    let eig = sigma.symmetric_eigen();
    let root = eig.eigenvectors * Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * eig.eigenvectors.transpose();
    let inv_root =
        eig.eigenvectors * Matrix4::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x.sqrt())) * eig.eigenvectors.transpose();
    let mut omega = Matrix4::zeros();
    omega[(0, 1)] = 1.0;
    omega[(1, 0)] = -1.0;
    omega[(2, 3)] = 1.0;
    omega[(3, 2)] = -1.0;
    let a = inv_root * omega * inv_root;
    // −A² has eigenvalues 1/ν² (twice each); the smallest belongs to the mixed mode.
    let b = -(a * a);
    let b_eig = ((b + b.transpose()) * 0.5).symmetric_eigen();
    let k = b_eig.eigenvalues.imin();
    let o1 = b_eig.eigenvectors.column(k).into_owned();
    let o2 = -(a * o1) * nu;
    let mut cols = nalgebra::Matrix4x2::zeros();
    cols.set_column(0, &o1);
    cols.set_column(1, &o2);
    let p = root * cols / nu.sqrt();

    let t_max = 0.5 * nu.ln();
    let gamma_of = |phi: f64, t: f64| {
        let (s, c) = phi.sin_cos();
        let rot = Matrix2::new(c, -s, s, c);
        let g2 = rot * Matrix2::new((2.0 * t).exp(), 0.0, 0.0, (-2.0 * t).exp()) * rot.transpose();
        let g = sigma - p * (Matrix2::identity() * nu - g2) * p.transpose();
        (g + g.transpose()) * 0.5
    };
    let objective = |phi: f64, t: f64| {
        let g = gamma_of(phi, t);
        0.5 * (g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)]).ln()
    };

    let mut evaluations = 0usize;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    const PHI_POINTS: usize = 64;
    const TAU_POINTS: usize = 17;
    for i in 0..PHI_POINTS {
        let phi = i as f64 * std::f64::consts::PI / PHI_POINTS as f64;
        for j in 0..TAU_POINTS {
            let tau = -0.5 * std::f64::consts::PI + j as f64 * std::f64::consts::PI / (TAU_POINTS - 1) as f64;
            let v = objective(phi, t_max * tau.sin());
            evaluations += 1;
            if v < best.0 {
                best = (v, phi, tau);
            }
        }
    }
    let m = nelder_mead(
        |x: &[f64]| objective(x[0], t_max * x[1].sin()),
        &[best.1, best.2],
        &[0.05, 0.1],
        NelderMeadOptions {
            max_evaluations: budget.saturating_sub(evaluations).max(64),
            f_tol: 1e-15,
            x_tol: 1e-12,
        },
    );
    evaluations += m.evaluations;
    let (value, phi, t) = if m.value < best.0 {
        (m.value, m.x[0], t_max * m.x[1].sin())
    } else {
        (best.0, best.1, t_max * best.2.sin())
    };
    RoofPoint {
        value,
        residual: violation(sigma, &gamma_of(phi, t)),
        evaluations,
        search: RoofSearch::UnitEigenvalue,
    }
}

/// Local-invariant parameters `(a, b, c₊, c₋)` of a two-mode CM: after local
/// symplectics `σ_A = aI`, `σ_B = bI` and the coupling is `diag(c₊, c₋)`,
/// `c₊ ≥ |c₋|`.
pub(crate) fn standard_form(sigma: &Matrix4<f64>) -> (f64, f64, f64, f64) {
    let block = |i: usize, j: usize| sigma.fixed_view::<2, 2>(2 * i, 2 * j).into_owned();
    let normalize = |m: Matrix2<f64>| {
        let d = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).sqrt();
        let e = ((m + m.transpose()) * (0.5 / d)).symmetric_eigen();
        let inv_root = e.eigenvectors * Matrix2::from_diagonal(&e.eigenvalues.map(|x| 1.0 / x.sqrt())) * e.eigenvectors.transpose();
        (d, inv_root)
    };
    let (a, la) = normalize(block(0, 0));
    let (b, lb) = normalize(block(1, 1));
    let c = la * block(0, 1) * lb;
    let sv = c.singular_values();
    let (hi, lo) = (sv[0].max(sv[1]), sv[0].min(sv[1]));
    (a, b, hi, lo.copysign(c.determinant()))
}

/// Roof over pure states sharing the reflection symmetry `p → −p` of the
/// standard form. Such `γ` split into a position block `G` and momentum block
/// `G⁻¹`, and `γ ⪯ σ` becomes `σ_p⁻¹ ⪯ G ⪯ σ_q`; the entanglement of `γ` is
/// `−½ ln(1 − ρ²)` with `ρ` the correlation coefficient of `G`.
///
/// `|ρ|` is quasiconvex in the diagonal `(x, z)` of `G` (its sublevel sets are
/// projections of convex sets), so nested golden-section searches suffice.
fn symmetric_roof(a: f64, b: f64, cp: f64, cm: f64) -> RoofPoint {
    let upper = Matrix2::new(a, cp, cp, b);
    let lower = Matrix2::new(a, cm, cm, b).try_inverse().expect("bona fide standard form");
    let (x_lo, x_hi) = (lower[(0, 0)], upper[(0, 0)]);
    let (z_lo, z_hi) = (lower[(1, 1)], upper[(1, 1)]);
    let gap = (upper[(0, 1)] - lower[(0, 1)]).abs();
    let tol = 1e-14 * a.max(b);

    // Off-diagonal entry of G closest to zero for the diagonal (x, z).
    let off_diagonal = |x: f64, z: f64| {
        let s1 = ((x_hi - x) * (z_hi - z)).max(0.0).sqrt();
        let s2 = ((x - x_lo) * (z - z_lo)).max(0.0).sqrt();
        let lo = (upper[(0, 1)] - s1).max(lower[(0, 1)] - s2);
        let hi = (upper[(0, 1)] + s1).min(lower[(0, 1)] + s2);
        if lo > hi {
            0.5 * (lo + hi)
        } else if lo > 0.0 {
            lo
        } else if hi < 0.0 {
            hi
        } else {
            0.0
        }
    };
    let rho2 = |x: f64, z: f64| {
        let y = off_diagonal(x, z);
        y * y / (x * z)
    };

    let evaluations = std::cell::Cell::new(0usize);
    // Best (z, ρ²) over the feasible z at fixed x.
    let inner = |x: f64| {
        let (p, q) = (x_hi - x, x - x_lo);
        let width = |z: f64| (p * (z_hi - z)).max(0.0).sqrt() + (q * (z - z_lo)).max(0.0).sqrt();
        let z_mid = if p + q > 0.0 { (p * z_lo + q * z_hi) / (p + q) } else { 0.5 * (z_lo + z_hi) };
        // Feasible z satisfy width(z) ≥ gap; width is concave with its peak at z_mid.
        let edge = |mut inside: f64, mut outside: f64| {
            if width(outside) >= gap {
                return outside;
            }
            for _ in 0..200 {
                let m = 0.5 * (inside + outside);
                if m == inside || m == outside {
                    break;
                }
                if width(m) >= gap {
                    inside = m;
                } else {
                    outside = m;
                }
            }
            inside
        };
        let (lo, hi) = if width(z_mid) >= gap { (edge(z_mid, z_lo), edge(z_mid, z_hi)) } else { (z_mid, z_mid) };
        let (z, v, n) = golden_section(|z| rho2(x, z), lo, hi, tol, 400);
        evaluations.set(evaluations.get() + n);
        (z, v)
    };
    let (x, _, _) = golden_section(|x| inner(x).1, x_lo, x_hi, tol, 400);
    let (z, value) = inner(x);
    let y = off_diagonal(x, z);

    let g = Matrix2::new(x, y, y, z);
    let g_inv = g.try_inverse().unwrap_or_else(Matrix2::zeros);
    let interleave = |q: Matrix2<f64>, p: Matrix2<f64>| {
        let mut m = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m[(2 * i, 2 * j)] = q[(i, j)];
                m[(2 * i + 1, 2 * j + 1)] = p[(i, j)];
            }
        }
        m
    };
    let sigma = interleave(upper, Matrix2::new(a, cm, cm, b));
    let gamma = interleave(g, g_inv);
    RoofPoint {
        value: -0.5 * (1.0 - value.clamp(0.0, 1.0)).ln(),
        residual: violation(&sigma, &gamma),
        evaluations: evaluations.get(),
        search: RoofSearch::Symmetric,
    }
}

struct Candidate {
    start: usize,
    x: Vec<f64>,
    penalized: f64,
}

/// Multi-start penalty search over `(L_A ⊕ L_B)·S(r)·S(r)ᵀ·(L_A ⊕ L_B)ᵀ`.
///
/// Feasibility is imposed by `λ·max(0, −λ_min(σ − γ))²` with `λ` raised tenfold
/// per round; 32 seeded starts run three cheap rounds, the best four continue
/// to `λ = 10¹²` and are then pushed onto the feasible boundary by [`polish`].
/// Returns the best feasible point, or the smallest residual seen.
fn penalty_roof(target: &Matrix4<f64>, budget: usize, tolerance: f64) -> std::result::Result<RoofPoint, (f64, usize)> {
    let (det_a, det_b) = (
        target.fixed_view::<2, 2>(0, 0).determinant(),
        target.fixed_view::<2, 2>(2, 2).determinant(),
    );
    // det γ_A ≤ det σ_A (and likewise for B) bounds the useful squeezing.
    let r_max = 0.5 * det_a.min(det_b).sqrt().max(1.0).acosh();

    const STARTS: usize = 32;
    const SURVIVORS: usize = 4;
    const COARSE_ROUNDS: i32 = 3;
    const FINE_ROUNDS: i32 = 9;
    let coarse_share = budget * 2 / 5;
    let fine_share = budget * 3 / 10;
    let per_coarse_round = (coarse_share / (STARTS * COARSE_ROUNDS as usize)).max(16);
    let per_fine_round = (fine_share / (SURVIVORS * FINE_ROUNDS as usize)).max(16);
    let per_polish = (budget.saturating_sub(coarse_share + fine_share) / SURVIVORS).max(16);

    let mut evaluations = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a75_6e72_7568);
    let penalized = |x: &[f64], lambda: f64| {
        let v = violation(target, &pure_candidate(x));
        roof_objective(x) + lambda * v * v
    };
    let run_rounds = |x: Vec<f64>, rounds: std::ops::RangeInclusive<i32>, per_round: usize, evaluations: &mut usize| {
        let mut x = x;
        let mut value = f64::INFINITY;
        for k in rounds {
            let lambda = 10f64.powi(k);
            let h = 0.25 * 0.5f64.powi(k - 1);
            let step = [h.max(1e-6), 2.0 * h, h, 2.0 * h, 2.0 * h, h, 2.0 * h];
            let m = nelder_mead(
                |p: &[f64]| penalized(p, lambda),
                &x,
                &step,
                NelderMeadOptions {
                    max_evaluations: per_round,
                    f_tol: 1e-15,
                    x_tol: 1e-12,
                },
            );
            *evaluations += m.evaluations;
            x = m.x;
            value = m.value;
        }
        (x, value)
    };

    let mut coarse: Vec<Candidate> = Vec::with_capacity(STARTS);
    for start in 0..STARTS {
        let x0: Vec<f64> = if start == 0 {
            vec![0.5 * r_max, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        } else {
            let pi = std::f64::consts::PI;
            vec![
                rng.gen_range(0.0..=r_max.max(1e-3)),
                rng.gen_range(0.0..pi),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.0..pi),
                rng.gen_range(0.0..pi),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.0..pi),
            ]
        };
        let (x, penalized) = run_rounds(x0, 1..=COARSE_ROUNDS, per_coarse_round, &mut evaluations);
        coarse.push(Candidate { start, x, penalized });
    }
    coarse.sort_by(|p, q| p.penalized.total_cmp(&q.penalized).then(p.start.cmp(&q.start)));

    let mut best: Option<(f64, f64, usize)> = None;
    let mut best_residual = f64::INFINITY;
    for cand in coarse.into_iter().take(SURVIVORS) {
        let (x, _) = run_rounds(
            cand.x,
            COARSE_ROUNDS + 1..=COARSE_ROUNDS + FINE_ROUNDS,
            per_fine_round,
            &mut evaluations,
        );
        let x = polish(target, x, r_max, per_polish, &mut evaluations);
        let residual = violation(target, &pure_candidate(&x));
        best_residual = best_residual.min(residual);
        if residual > tolerance {
            continue;
        }
        let value = roof_objective(&x);
        if best.is_none_or(|(v, _, start)| value < v || (value == v && cand.start < start)) {
            best = Some((value, residual, cand.start));
        }
    }
    match best {
        Some((value, residual, _)) => Ok(RoofPoint {
            value,
            residual,
            evaluations,
            search: RoofSearch::Penalty,
        }),
        None => Err((best_residual, evaluations)),
    }
}

/// Upper bound on the Gaussian Rényi-2 entanglement of a two-mode state.
///
/// Minimizes `½ ln det γ_A` over pure `γ ⪯ σ`. Pure `σ` is answered directly.
/// A `σ` with a unit symplectic eigenvalue leaves only a two-parameter family
/// of candidates, which is searched exactly. Otherwise the reflection-symmetric
/// candidates of the standard form and the penalty search over the general
/// family both run, and the lower feasible value is kept. `budget` caps the
/// objective evaluations of the penalty search.
pub fn entanglement_estimate(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
    budget: usize,
) -> Result<EntanglementEstimate> {
    let (a, b) = partition.split_of(sigma)?;
    if a.len() != 1 || b.len() != 1 {
        return Err(Error::Unsupported(
            "entanglement estimate needs exactly one mode per side".into(),
        ));
    }
    let ordered = sigma.reduce(&[a[0], b[0]])?;
    ordered.require_bona_fide()?;
    let finish = |p: RoofPoint| EntanglementEstimate {
        value: CorrelationValue::new(CorrelationKind::Entanglement, p.value),
        residual: p.residual,
        evaluations: p.evaluations,
        search: p.search,
    };

    if (ordered.det() - 1.0).abs() <= ZERO_CLAMP {
        return Ok(finish(RoofPoint {
            value: half_log_det(&ordered.reduce(&[0])?)?,
            residual: 0.0,
            evaluations: 0,
            search: RoofSearch::PureState,
        }));
    }

    let target: Matrix4<f64> = Matrix4::from_iterator(ordered.matrix().iter().copied());
    let tolerance = FEASIBILITY_TOL * target.amax().max(1.0);
    let spectrum = ordered.symplectic_eigenvalues();
    if spectrum[1] <= 1.0 + UNIT_EIGENVALUE_TOL {
        return Ok(finish(unit_eigenvalue_roof(&target, spectrum[0], budget)));
    }

    let (sa, sb, cp, cm) = standard_form(&target);
    let symmetric = symmetric_roof(sa, sb, cp, cm);
    let penalty = penalty_roof(&target, budget, tolerance);
    let evaluations = symmetric.evaluations + penalty.map_or_else(|(_, n)| n, |p| p.evaluations);
    let mut best = match penalty {
        Ok(p) if symmetric.residual > tolerance || p.value < symmetric.value => p,
        Err((residual, _)) if symmetric.residual > tolerance => {
            return Err(Error::Infeasible { residual, evaluations });
        }
        _ => symmetric,
    };
    best.evaluations = evaluations;
    Ok(finish(best))
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
    fn entropy_examples() {
        assert_eq!(renyi2_entropy(&vacuum_cm(1).unwrap()).unwrap().value, 0.0);
        assert_eq!(renyi2_entropy(&vacuum_cm(2).unwrap()).unwrap().value, 0.0);
        let s = 0.6;
        let marginal = tms(s).reduce(&[0]).unwrap();
        let v = renyi2_entropy(&marginal).unwrap().value;
        assert!((v - (2.0 * s).cosh().ln()).abs() < 1e-14);
        // n̄ = 1: det = 9, ½ ln 9 = ln 3.
        let th = CovarianceMatrix::thermal(1.0).unwrap();
        assert!((renyi2_entropy(&th).unwrap().value - 3f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn entropy_rejects_unphysical() {
        let half = CovarianceMatrix::from_row_slice(2, &[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(matches!(renyi2_entropy(&half), Err(Error::NotBonaFide { .. })));
    }

    #[test]
    fn wigner_entropy_identity() {
        let one = 1.0 + std::f64::consts::PI.ln();
        let v1 = wigner_shannon_entropy(&vacuum_cm(1).unwrap()).unwrap();
        assert!((v1 - 2.144_729_885_849_4).abs() < 1e-12);
        assert!((v1 - one).abs() < 1e-15);
        let v2 = wigner_shannon_entropy(&vacuum_cm(2).unwrap()).unwrap();
        assert!((v2 - 2.0 * one).abs() < 1e-14);
        let e = std::f64::consts::E;
        let marginal = CovarianceMatrix::from_row_slice(2, &[e, 0.0, 0.0, e]).unwrap();
        let v = wigner_shannon_entropy(&marginal).unwrap();
        assert!((v - (2.0 + std::f64::consts::PI.ln())).abs() < 1e-14);
    }

    #[test]
    fn mutual_information_of_products_and_tms() {
        let prod = direct_sum(
            &CovarianceMatrix::thermal(0.7).unwrap(),
            &CovarianceMatrix::thermal(2.0).unwrap(),
        );
        assert_eq!(mutual_information(&prod, &ab()).unwrap().value, 0.0);

        let s_star = std::f64::consts::E.acosh() / 2.0;
        let i2 = mutual_information(&tms(s_star), &ab()).unwrap().value;
        assert!((i2 - 2.0).abs() < 1e-12, "{i2}");
    }

    #[test]
    fn mutual_information_needs_cover() {
        let sigma = direct_sum(&tms(0.3), &vacuum_cm(1).unwrap());
        let err = mutual_information(&sigma, &ab()).unwrap_err();
        assert!(matches!(err, Error::InvalidPartition(_)));
    }

    #[test]
    fn pure_entanglement_cases() {
        let s = 0.45;
        let v = pure_state_entanglement(&tms(s), &ab()).unwrap().value;
        assert!((v - (2.0 * s).cosh().ln()).abs() < 1e-13);
        let swapped = ModePartition::bipartite(&[1], &[0]).unwrap();
        let w = pure_state_entanglement(&tms(s), &swapped).unwrap().value;
        assert!((v - w).abs() < 1e-9);
        assert_eq!(pure_state_entanglement(&vacuum_cm(2).unwrap(), &ab()).unwrap().value, 0.0);

        let mixed = CovarianceMatrix::thermal(1.0).unwrap();
        let mixed = direct_sum(&mixed, &mixed);
        assert!(matches!(
            pure_state_entanglement(&mixed, &ab()),
            Err(Error::NotPure { .. })
        ));
    }

    #[test]
    fn estimate_on_pure_input_saturates() {
        let s = 0.828727;
        let est = entanglement_estimate(&tms(s), &ab(), DEFAULT_BUDGET).unwrap();
        assert!((est.value.value - (2.0 * s).cosh().ln()).abs() < 1e-6);
    }

    #[test]
    fn estimate_rejects_multimode_sides() {
        let sigma = direct_sum(&tms(0.3), &vacuum_cm(1).unwrap());
        let p = ModePartition::bipartite(&[0, 2], &[1]).unwrap();
        assert!(matches!(
            entanglement_estimate(&sigma, &p, 100),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn estimate_of_product_thermal_is_zero() {
        let prod = direct_sum(
            &CovarianceMatrix::thermal(0.5).unwrap(),
            &CovarianceMatrix::thermal(0.2).unwrap(),
        );
        let est = entanglement_estimate(&prod, &ab(), DEFAULT_BUDGET).unwrap();
        assert!(est.value.value < 2e-4, "{}", est.value.value);
        assert!(est.residual <= FEASIBILITY_TOL);
    }

    #[test]
    fn clamp_only_touches_roundoff() {
        assert_eq!(CorrelationValue::new(CorrelationKind::Discord, -1e-12).value, 0.0);
        assert_eq!(CorrelationValue::new(CorrelationKind::Discord, -1e-6).value, -1e-6);
    }
}
