//! Field-mode states seen by inertial and uniformly accelerated observers.
//!
//! Alice holds mode `A`, Rob mode `R`. An accelerated observer's mode is
//! obtained from the inertial one by a two-mode squeezer that couples it to
//! a partner mode in the causally disconnected wedge (`Ā` for Alice, `R̄`
//! for Rob), which is then inaccessible.
//!
//! Storage order: inertial `(A, R)`, setting (a) `(A, R, R̄)`, setting (b)
//! `(A, R, Ā, R̄)`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{check_nonnegative, Error, Result};
use crate::phase_space::{apply_symplectic, direct_sum, two_mode_squeezer, vacuum_cm, CovarianceMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    /// Both observers inertial.
    Inertial,
    /// Alice inertial, Rob accelerated with parameter `r`.
    A,
    /// Alice accelerated with `w`, Rob with `r`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    A,
    R,
    ABar,
    RBar,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::A => "A",
            Mode::R => "R",
            Mode::ABar => "Abar",
            Mode::RBar => "Rbar",
        }
    }
}

impl Setting {
    /// Modes of the global state, in storage order.
    pub fn modes(self) -> &'static [Mode] {
        match self {
            Setting::Inertial => &[Mode::A, Mode::R],
            Setting::A => &[Mode::A, Mode::R, Mode::RBar],
            Setting::B => &[Mode::A, Mode::R, Mode::ABar, Mode::RBar],
        }
    }

    pub fn index_of(self, mode: Mode) -> Option<usize> {
        self.modes().iter().position(|&m| m == mode)
    }
}

/// Which observers accelerate and how hard.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameScenario {
    pub setting: Setting,
    pub s: f64,
    #[serde(default)]
    pub r: f64,
    #[serde(default)]
    pub w: f64,
}

impl FrameScenario {
    pub fn new(setting: Setting, s: f64, w: f64, r: f64) -> Result<Self> {
        let sc = Self { setting, s, r, w };
        sc.validate()?;
        Ok(sc)
    }

    pub fn inertial(s: f64) -> Result<Self> {
        Self::new(Setting::Inertial, s, 0.0, 0.0)
    }

    pub fn setting_a(s: f64, r: f64) -> Result<Self> {
        Self::new(Setting::A, s, 0.0, r)
    }

    pub fn setting_b(s: f64, w: f64, r: f64) -> Result<Self> {
        Self::new(Setting::B, s, w, r)
    }

    pub fn validate(&self) -> Result<()> {
        check_nonnegative("s", self.s)?;
        check_nonnegative("r", self.r)?;
        check_nonnegative("w", self.w)
    }

    /// `(s, w, r)` with the parameters a setting ignores forced to zero.
    pub fn effective_parameters(&self) -> (f64, f64, f64) {
        match self.setting {
            Setting::Inertial => (self.s, 0.0, 0.0),
            Setting::A => (self.s, 0.0, self.r),
            Setting::B => (self.s, self.w, self.r),
        }
    }

    /// CM of every mode involved, in [`Setting::modes`] order.
    pub fn global_cm(&self) -> Result<CovarianceMatrix> {
        self.validate()?;
        let (s, w, r) = self.effective_parameters();
        match self.setting {
            Setting::Inertial => inertial_pair(s),
            Setting::A => setting_a(s, r),
            Setting::B => setting_b(s, w, r),
        }
    }
}

/// Two-mode squeezed vacuum `S_{A,R}(s)·I·S_{A,R}(s)ᵀ`.
pub fn inertial_pair(s: f64) -> Result<CovarianceMatrix> {
    check_nonnegative("s", s)?;
    apply_symplectic(&vacuum_cm(2)?, &two_mode_squeezer(s, 0, 1, 2)?)
}

/// Alice inertial, Rob accelerated: modes `(A, R, R̄)`.
pub fn setting_a(s: f64, r: f64) -> Result<CovarianceMatrix> {
    check_nonnegative("r", r)?;
    let input = direct_sum(&inertial_pair(s)?, &vacuum_cm(1)?);
    apply_symplectic(&input, &two_mode_squeezer(r, 1, 2, 3)?)
}

/// Both accelerated: modes `(A, R, Ā, R̄)`, squeezers on `(A, Ā)` and `(R, R̄)`.
pub fn setting_b(s: f64, w: f64, r: f64) -> Result<CovarianceMatrix> {
    check_nonnegative("w", w)?;
    check_nonnegative("r", r)?;
    let input = direct_sum(&inertial_pair(s)?, &vacuum_cm(2)?);
    let channel = two_mode_squeezer(w, 0, 2, 4)?.compose(&two_mode_squeezer(r, 1, 3, 4)?)?;
    apply_symplectic(&input, &channel)
}

/// The `(A, R)` state the two observers can actually access.
pub fn observed_pair(scenario: &FrameScenario) -> Result<CovarianceMatrix> {
    scenario.global_cm()?.reduce(&[0, 1])
}

/// How the Unruh temperature is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnruhInput {
    /// Proper acceleration `a`; the temperature is `a/2π`.
    Acceleration(f64),
    Temperature(f64),
}

/// Natural units throughout (`ħ = c = k_B = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnruhParameters {
    pub frequency: f64,
    pub given: UnruhInput,
}

impl UnruhParameters {
    pub fn temperature(&self) -> Result<f64> {
        match self.given {
            UnruhInput::Acceleration(a) => {
                positive("acceleration", a)?;
                Ok(a / (2.0 * PI))
            }
            UnruhInput::Temperature(t) => {
                positive("temperature", t)?;
                Ok(t)
            }
        }
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be finite and positive",
        })
    }
}

/// Acceleration parameter `r` from `cosh⁻²r = 1 − e^{−ω/T}`.
///
/// Evaluated as `r = artanh(e^{−ω/2T})`, the same relation written via
/// `tanh²r = e^{−ω/T}`, which stays accurate for both `T → 0` and `T → ∞`.
pub fn acceleration_parameter(params: &UnruhParameters) -> Result<f64> {
    positive("frequency", params.frequency)?;
    let t = params.temperature()?;
    Ok((-0.5 * params.frequency / t).exp().atanh())
}
