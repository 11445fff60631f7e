//! Randomized invariants beyond the acceptance suite.

mod common;

use common::*;
use gaussia::closed_forms::{e2_closed, i2_closed};
use gaussia::measurement::{
    classical_objective, classical_objective_homodyne, HomodyneLimit, MeasurementSeed, Side,
};
use gaussia::phase_space::{direct_sum, partial_trace};
use gaussia::renyi::{entanglement_estimate, mutual_information, DEFAULT_BUDGET};
use gaussia::tripartite::TripartiteReport;
use gaussia::unruh::{observed_pair, setting_a};
use gaussia::{CovarianceMatrix, FrameScenario, ModePartition};
use proptest::prelude::*;

fn ar() -> ModePartition {
    ModePartition::bipartite(&[0], &[1]).unwrap()
}

proptest! {
    #![proptest_config(config(128, 0x5eed_0001))]

    #[test]
    fn partial_trace_inverts_direct_sum(p in two_mode_params(), n in 0.0..3.0f64) {
        let a = two_mode_state(&p);
        let b = CovarianceMatrix::thermal(n).unwrap();
        let joint = direct_sum(&a, &b);
        let back = partial_trace(&joint, &ModePartition::keep(&[0, 1]).unwrap()).unwrap();
        prop_assert_eq!(back.matrix(), a.matrix());
        let other = partial_trace(&joint, &ModePartition::keep(&[2]).unwrap()).unwrap();
        prop_assert_eq!(other.matrix(), b.matrix());
    }

    #[test]
    fn setting_b_without_alice_acceleration_is_setting_a((s, _, r) in scenario_params()) {
        let a = observed_pair(&FrameScenario::setting_a(s, r).unwrap()).unwrap();
        let b = observed_pair(&FrameScenario::setting_b(s, 0.0, r).unwrap()).unwrap();
        prop_assert!((a.matrix() - b.matrix()).amax() <= 1e-12);
    }

    #[test]
    fn i2_closed_matches_oracle((s, w, r) in scenario_params()) {
        let v = i2_closed(s, w, r).unwrap();
        prop_assert!(rel(v, i2(s, w, r)) <= 1e-12);
        let n = mutual_information(&observed_pair(&FrameScenario::setting_b(s, w, r).unwrap()).unwrap(), &ar())
            .unwrap()
            .value;
        prop_assert!((n - v).abs() <= 1e-9 * v.max(1e-300) + 1e-15);
    }

    #[test]
    fn homodyne_limit_matches_large_squeezing(p in two_mode_params(), theta in 0.0..std::f64::consts::PI) {
        let sigma = two_mode_state(&p);
        for side in [Side::A, Side::B] {
            for (z, limit) in [(20.0, HomodyneLimit::Positive), (-20.0, HomodyneLimit::Negative)] {
                let seeded = classical_objective(&sigma, &ar(), side, &MeasurementSeed::pure(theta, z).unwrap()).unwrap();
                let lim = classical_objective_homodyne(&sigma, &ar(), side, theta, limit).unwrap();
                prop_assert!((seeded - lim).abs() < 1e-8, "{seeded} vs {lim}");
            }
        }
    }
}

proptest! {
    #![proptest_config(config(100, 0x5eed_0002))]

    #[test]
    fn estimate_brackets_closed_form((s, w, r) in scenario_params()) {
        let est = entanglement_estimate(
            &observed_pair(&FrameScenario::setting_b(s, w, r).unwrap()).unwrap(),
            &ar(),
            DEFAULT_BUDGET,
        )
        .unwrap()
        .value
        .value;
        let closed = e2_closed(s, w, r).unwrap();
        prop_assert!(est >= closed - 2e-4 && est <= closed + 5e-3, "{est} vs {closed}");
        prop_assert!((closed - e2(s, w, r)).abs() < 1e-10);
    }

    #[test]
    fn tripartite_residuals_agree((s, _, r) in scenario_params()) {
        let r = r.max(0.05);
        let rep = TripartiteReport::setting_a(s, r, DEFAULT_BUDGET).unwrap();
        prop_assert!((rep.residual_entanglement - rep.residual_discord).abs() <= 1e-2);
        prop_assert!((rep.residual_discord - q2(s, r)).abs() <= 1e-5);
    }
}

#[test]
fn estimate_nonincreasing_in_r() {
    for s in [0.3, S_STAR, 1.5] {
        let mut prev = f64::INFINITY;
        for k in 0..=12 {
            let r = 0.25 * k as f64;
            let v = entanglement_estimate(&observed_pair(&FrameScenario::setting_a(s, r).unwrap()).unwrap(), &ar(), DEFAULT_BUDGET)
                .unwrap()
                .value
                .value;
            assert!(v <= prev + 1e-12, "s={s} r={r}: {v} > {prev}");
            prev = v;
        }
    }
}

#[test]
fn mutual_information_strictly_decreasing_in_r() {
    for s in [0.3, S_STAR, 1.5] {
        let mut prev = f64::INFINITY;
        for k in 0..=15 {
            let r = 0.2 * k as f64;
            let v = mutual_information(&observed_pair(&FrameScenario::setting_a(s, r).unwrap()).unwrap(), &ar())
                .unwrap()
                .value;
            assert!(v < prev, "s={s} r={r}");
            prev = v;
        }
    }
}

#[test]
fn horizon_terms_grow_with_r() {
    for s in [0.3, S_STAR, 1.5] {
        let mut prev = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for r in [0.5, 1.0, 1.5, 2.0, 2.5] {
            let rep = TripartiteReport::setting_a(s, r, DEFAULT_BUDGET).unwrap();
            assert!(rep.d2_r_given_rbar > prev.0 && rep.e2_r_rbar > prev.1, "s={s} r={r}");
            prev = (rep.d2_r_given_rbar, rep.e2_r_rbar);
        }
        assert!(setting_a(s, 2.5).unwrap().is_bona_fide());
    }
}

/// `D₂(R|R̄) − E₂(R:R̄)` equals `E₂(R:A) − D₂(R|A)` because the residuals
/// coincide; the latter has a closed form. The ordering `D₂(R|R̄) ≤ E₂(R:R̄)`
/// holds from r = 1 on but not at r = 0.5 for the larger s values.
#[test]
fn horizon_discord_versus_entanglement() {
    let d2_ra = |s: f64, r: f64| i2(s, 0.0, r) - j2_r_given_a(s, r);
    for s in [0.3, 0.828727, 1.5] {
        for r in [0.5, 1.0, 2.0] {
            let rep = TripartiteReport::setting_a(s, r, DEFAULT_BUDGET).unwrap();
            let gap = rep.d2_r_given_rbar - rep.e2_r_rbar;
            let oracle = e2(s, 0.0, r) - d2_ra(s, r);
            assert!((gap - oracle).abs() < 1e-5, "s={s} r={r}: {gap} vs {oracle}");
            if r >= 1.0 {
                assert!(gap <= 5e-3, "s={s} r={r}: {gap}");
            }
        }
    }
    assert!(e2(1.5, 0.0, 0.5) - d2_ra(1.5, 0.5) > 0.17);
}
