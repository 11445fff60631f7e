//! Analytic correlation formulas for the inertial, one-accelerated and
//! two-accelerated observer settings.
//!
//! Every expression is assembled from logarithms of its hyperbolic factors,
//! so the large-parameter limits (`r = s = 25` and beyond) never overflow or
//! lose the `ln 2` offsets to cancellation.

use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::error::{check_nonnegative, Result};
use crate::unruh::{FrameScenario, Setting};

/// Above this argument `cosh`/`sinh` are evaluated as `eˣ/2` with a log correction.
pub const LOG_STABLE_ABOVE: f64 = 30.0;

pub fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    if x > LOG_STABLE_ABOVE {
        x - LN_2 + (-2.0 * x).exp().ln_1p()
    } else {
        x.cosh().ln()
    }
}

/// `ln sinh x` for `x ≥ 0`; `−∞` at zero.
pub fn ln_sinh(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        f64::NEG_INFINITY
    } else if x > LOG_STABLE_ABOVE {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// `ln(eᵃ + eᵇ)`.
fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// `ln(eᵃ − eᵇ)`; `−∞` when the difference vanishes, NaN when it is negative.
fn log_sub(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        a
    } else if a < b {
        f64::NAN
    } else {
        a + (-(b - a).exp_m1()).ln()
    }
}

/// Log-domain hyperbolic factors shared by the formulas below.
struct Logs {
    cosh_2s: f64,
    cosh_s: f64,
    sinh_s: f64,
    sinh_2s: f64,
    cosh_r: f64,
    sinh_r: f64,
    cosh_2r: f64,
    cosh_w: f64,
    sinh_w: f64,
    cosh_2w: f64,
}

impl Logs {
    fn new(s: f64, w: f64, r: f64) -> Result<Self> {
        check_nonnegative("s", s)?;
        check_nonnegative("w", w)?;
        check_nonnegative("r", r)?;
        Ok(Self {
            cosh_2s: ln_cosh(2.0 * s),
            cosh_s: ln_cosh(s),
            sinh_s: ln_sinh(s),
            sinh_2s: ln_sinh(2.0 * s),
            cosh_r: ln_cosh(r),
            sinh_r: ln_sinh(r),
            cosh_2r: ln_cosh(2.0 * r),
            cosh_w: ln_cosh(w),
            sinh_w: ln_sinh(w),
            cosh_2w: ln_cosh(2.0 * w),
        })
    }

    /// `ln(cosh²r·cosh 2s + sinh²r)`, the log of Rob's marginal variance.
    fn rob_marginal(&self) -> f64 {
        log_add(2.0 * self.cosh_r + self.cosh_2s, 2.0 * self.sinh_r)
    }

    /// `ln(cosh 2s·cosh²w + sinh²w)`.
    fn alice_marginal(&self) -> f64 {
        log_add(self.cosh_2s + 2.0 * self.cosh_w, 2.0 * self.sinh_w)
    }

    /// `ln(cosh 2r + 3)`.
    fn cosh_2r_plus_3(&self) -> f64 {
        log_add(self.cosh_2r, 3f64.ln())
    }

    /// Numerator and denominator logs of the one-accelerated entanglement ratio.
    fn e2_setting_a_parts(&self) -> (f64, f64) {
        let num = log_add(self.cosh_2r_plus_3() + self.cosh_2s, LN_2 + 2.0 * self.sinh_r);
        let den = log_add(LN_2 + 2.0 * self.sinh_r + self.cosh_2s, self.cosh_2r_plus_3());
        (num, den)
    }
}

fn clamp_zero(v: f64) -> f64 {
    if v.is_nan() || v < 0.0 {
        0.0
    } else {
        v
    }
}

/// Inertial correlations `ln cosh 2s` (entanglement, discord and classical parts alike).
pub fn c2_inertial(s: f64) -> Result<f64> {
    check_nonnegative("s", s)?;
    Ok(ln_cosh(2.0 * s))
}

/// Mutual information between `A` and `R` with Alice at `w` and Rob at `r`.
pub fn i2_closed(s: f64, w: f64, r: f64) -> Result<f64> {
    let l = Logs::new(s, w, r)?;
    let den = log_sub(l.cosh_2r + 2.0 * l.cosh_s + l.cosh_2w, 2.0 * l.sinh_s);
    Ok(clamp_zero(l.rob_marginal() + l.alice_marginal() - den))
}

/// Classical correlations of `A` from measurements on `R`; independent of `r`.
pub fn j2_a_given_r(s: f64) -> Result<f64> {
    c2_inertial(s)
}

/// Classical correlations of `R` from measurements on `A`; independent of `w`.
pub fn j2_r_given_a(s: f64, r: f64) -> Result<f64> {
    let l = Logs::new(s, 0.0, r)?;
    Ok(clamp_zero(l.rob_marginal() - l.cosh_2r))
}

/// Infinite-acceleration limit of the discord `D₂(R|A)` with Alice inertial.
pub fn d2_limit_r_given_a(s: f64) -> Result<f64> {
    check_nonnegative("s", s)?;
    Ok(clamp_zero(ln_cosh(2.0 * s) - 2.0 * ln_cosh(s)))
}

/// `tanh s ≤ sinh w · sinh r`: the two-accelerated state is separable.
pub fn sudden_death(s: f64, w: f64, r: f64) -> Result<bool> {
    let l = Logs::new(s, w, r)?;
    Ok(l.sinh_s - l.cosh_s <= l.sinh_w + l.sinh_r)
}

/// Rényi-2 entanglement between `A` and `R`.
///
/// `w = 0` uses the one-accelerated expression; otherwise the two-accelerated
/// one, which is identically zero on the sudden-death region.
pub fn e2_closed(s: f64, w: f64, r: f64) -> Result<f64> {
    if w == 0.0 && r == 0.0 {
        return c2_inertial(s);
    }
    let l = Logs::new(s, w, r)?;
    if w == 0.0 {
        let (num, den) = l.e2_setting_a_parts();
        return Ok(clamp_zero(num - den));
    }
    if sudden_death(s, w, r)? {
        return Ok(0.0);
    }
    let mixed = l.sinh_w + l.sinh_r + l.sinh_2s;
    let num = log_sub(
        log_add(LN_2 + l.cosh_2w + l.cosh_2r + 2.0 * l.cosh_s, 3f64.ln() + l.cosh_2s),
        log_add(2.0 * LN_2 + mixed, 0.0),
    );
    let den = LN_2
        + log_sub(
            log_add(LN_2 + mixed, 2.0 * l.cosh_s + log_add(l.cosh_2w, l.cosh_2r)),
            LN_2 + 2.0 * l.sinh_s,
        );
    Ok(clamp_zero(num - den))
}

/// Genuine tripartite correlations among `A`, `R` and `R̄` with Alice inertial.
pub fn q2_tripartite_closed(s: f64, r: f64) -> Result<f64> {
    let l = Logs::new(s, 0.0, r)?;
    let (num, den) = l.e2_setting_a_parts();
    Ok(clamp_zero(l.rob_marginal() + den - l.cosh_2r - num))
}

/// Every closed-form value available for a scenario.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClosedFormReport {
    pub scenario: FrameScenario,
    pub c2_inertial: f64,
    pub i2: f64,
    /// Absent for setting (b), where only the numeric value is available.
    pub j2_a_given_r: Option<f64>,
    pub j2_r_given_a: f64,
    pub e2: f64,
    /// Only defined for the three-mode settings.
    pub q2_tripartite: Option<f64>,
}

impl ClosedFormReport {
    pub fn new(scenario: &FrameScenario) -> Result<Self> {
        let (s, w, r) = scenario.effective_parameters();
        let c2 = c2_inertial(s)?;
        let (j2_a_given_r, q2) = match scenario.setting {
            Setting::Inertial | Setting::A => (Some(j2_a_given_r(s)?), Some(q2_tripartite_closed(s, r)?)),
            Setting::B => (None, None),
        };
        Ok(Self {
            scenario: *scenario,
            c2_inertial: c2,
            i2: i2_closed(s, w, r)?,
            j2_a_given_r,
            j2_r_given_a: j2_r_given_a(s, r)?,
            e2: e2_closed(s, w, r)?,
            q2_tripartite: q2,
        })
    }
}
