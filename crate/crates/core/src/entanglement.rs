//! Concurrence along the evolution.
//!
//! For a pure two-spin state the concurrence is `C = 2|ad − bc|`. Along the
//! evolution it depends on `θ` only. The closed forms below cover a general
//! initial state (Heisenberg) and the product-state families built from
//! single-spin states on the Bloch sphere.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{cis, ComplexScalar, Vector4, EXACT_TOL, I};
use crate::error::{Error, Result};
use crate::evolution::{evolve, EvolutionParams, PeriodicityCase, TwoSpinState};
use crate::geometry::StateInvariants;
use crate::model::{Anisotropy, ModelKind};
use crate::par::{self, Execution};

pub fn concurrence(state: &TwoSpinState) -> f64 {
    2.0 * (state.a() * state.d() - state.b() * state.c()).norm()
}

/// Concurrence of the Heisenberg-evolved state at `θ`, from the initial
/// amplitudes alone.
pub fn concurrence_evolved(initial: &TwoSpinState, alpha: f64, theta: f64) -> f64 {
    let [a, b, c, d] = initial.amplitudes();
    let two_theta = 2.0 * theta;
    let z = a * d * cis(-2.0 * alpha * theta) + I * 0.5 * (b * b + c * c) * two_theta.sin()
        - b * c * two_theta.cos();
    2.0 * z.norm()
}

/// Which single-spin states make up a product state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductPattern {
    PlusMinus,
    MinusPlus,
    PlusPlus,
    MinusMinus,
}

impl fmt::Display for ProductPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductPattern::PlusMinus => "+-",
            ProductPattern::MinusPlus => "-+",
            ProductPattern::PlusPlus => "++",
            ProductPattern::MinusMinus => "--",
        })
    }
}

impl FromStr for ProductPattern {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "+-" | "pm" | "plusminus" | "plus_minus" => Ok(ProductPattern::PlusMinus),
            "-+" | "mp" | "minusplus" | "minus_plus" => Ok(ProductPattern::MinusPlus),
            "++" | "pp" | "plusplus" | "plus_plus" => Ok(ProductPattern::PlusPlus),
            "--" | "mm" | "minusminus" | "minus_minus" => Ok(ProductPattern::MinusMinus),
            other => Err(format!(
                "unknown product pattern {other:?} (expected +-, -+, ++, --)"
            )),
        }
    }
}

/// Bloch angles shared by both spins of a product state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductStateAngles {
    pub chi: f64,
    pub gamma_angle: f64,
    pub pattern: ProductPattern,
}

impl ProductStateAngles {
    /// `χ ∈ [0, π]`, `γ ∈ [0, 2π]`.
    pub fn new(chi: f64, gamma_angle: f64, pattern: ProductPattern) -> Result<Self> {
        if !(0.0..=PI).contains(&chi) {
            return Err(Error::AngleOutOfRange {
                name: "chi",
                value: chi,
                range: "[0, π]",
            });
        }
        if !(0.0..=2.0 * PI).contains(&gamma_angle) {
            return Err(Error::AngleOutOfRange {
                name: "gamma",
                value: gamma_angle,
                range: "[0, 2π]",
            });
        }
        Ok(ProductStateAngles {
            chi,
            gamma_angle,
            pattern,
        })
    }
}

/// `|+⟩ = cos(χ/2)|↑⟩ + sin(χ/2)e^{iγ}|↓⟩`,
/// `|−⟩ = −sin(χ/2)|↑⟩ + cos(χ/2)e^{iγ}|↓⟩`, combined per pattern.
pub fn product_state(angles: &ProductStateAngles) -> TwoSpinState {
    let (s, c) = (angles.chi / 2.0).sin_cos();
    let phase = cis(angles.gamma_angle);
    let plus = [ComplexScalar::new(c, 0.0), phase * s];
    let minus = [ComplexScalar::new(-s, 0.0), phase * c];
    let (first, second) = match angles.pattern {
        ProductPattern::PlusMinus => (plus, minus),
        ProductPattern::MinusPlus => (minus, plus),
        ProductPattern::PlusPlus => (plus, plus),
        ProductPattern::MinusMinus => (minus, minus),
    };
    let v = Vector4::new(
        first[0] * second[0],
        first[0] * second[1],
        first[1] * second[0],
        first[1] * second[1],
    );
    TwoSpinState::normalized(v).expect("product of unit spinors is nonzero")
}

/// Heisenberg concurrence from `|+−⟩` (or `|−+⟩`).
pub fn concurrence_pm_family(chi: f64, alpha: f64, theta: f64) -> f64 {
    let s2 = chi.sin().powi(2);
    let c2 = chi.cos().powi(2);
    let re = s2 * ((2.0 * alpha * theta).cos() - (2.0 * theta).cos());
    let im = (1.0 + c2) * (2.0 * theta).sin() + s2 * (2.0 * alpha * theta).sin();
    0.5 * re.hypot(im)
}

/// Heisenberg concurrence from `|++⟩` (or `|−−⟩`): `sin²χ |sin((α−1)θ)|`.
pub fn concurrence_pp_family(chi: f64, alpha: f64, theta: f64) -> f64 {
    chi.sin().powi(2).abs() * ((alpha - 1.0) * theta).sin().abs()
}

/// DM concurrence from `|+−⟩`. For `|−+⟩` use `π − χ`.
pub fn concurrence_dm_family(chi: f64, alpha: f64, theta: f64) -> f64 {
    let s2 = chi.sin().powi(2);
    let first = s2 * s2 * (2.0 * alpha * theta).sin().powi(2);
    let second = s2 * ((2.0 * theta).cos() - (2.0 * alpha * theta).cos())
        + 2.0 * chi.cos() * (2.0 * theta).sin();
    0.5 * (first + second * second).sqrt()
}

/// DM concurrence from `|+−⟩` at `χ = π/2`:
/// `½[1 + cos2θ(cos2θ − 2cos2αθ)]^{1/2}`.
pub fn concurrence_dm_equatorial(alpha: f64, theta: f64) -> f64 {
    let c = (2.0 * theta).cos();
    0.5 * (1.0 + c * (c - 2.0 * (2.0 * alpha * theta).cos()))
        .max(0.0)
        .sqrt()
}

/// First `θ` at which the equatorial (`χ = π/2`) Heisenberg family reaches
/// `C = 1`; `None` when it never does.
///
/// `|+−⟩`: `π/(2(α+1))`. `|++⟩`: `π/(2|α−1|)`.
pub fn theta_max_entanglement(alpha: f64, pattern: ProductPattern) -> Option<f64> {
    match pattern {
        ProductPattern::PlusMinus | ProductPattern::MinusPlus => {
            (alpha + 1.0 != 0.0).then(|| PI / (2.0 * (alpha + 1.0)))
        }
        ProductPattern::PlusPlus | ProductPattern::MinusMinus => {
            (alpha - 1.0 != 0.0).then(|| PI / (2.0 * (alpha - 1.0).abs()))
        }
    }
}

/// Radius `γβ√(A − D²)` of the constant-entanglement circles, with `β = ½`
/// for case 2 and `β = 1` otherwise. Case 1 has no such circles.
pub fn constant_entanglement_radius(
    inv: &StateInvariants,
    gamma: f64,
    case: PeriodicityCase,
) -> Option<f64> {
    let beta = match case {
        PeriodicityCase::ThetaOnly => return None,
        PeriodicityCase::PhiOnly => 0.5,
        _ => 1.0,
    };
    Some(gamma * beta * (inv.a - inv.d * inv.d).max(0.0).sqrt())
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn theta_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|k| if k == n - 1 { hi } else { lo + step * k as f64 })
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceScan {
    pub kind: ModelKind,
    pub alpha: Anisotropy,
    pub samples: Vec<(f64, f64)>,
}

impl ConcurrenceScan {
    /// First sample within [`EXACT_TOL`] of the largest concurrence, so that
    /// rounding does not move the reported peak to a later, equal one.
    pub fn maximum(&self) -> Option<(f64, f64)> {
        let top = self.samples.iter().map(|s| s.1).fold(f64::NAN, f64::max);
        self.samples
            .iter()
            .copied()
            .find(|s| s.1 >= top - EXACT_TOL)
    }
}

/// Concurrence of the evolved state at each `θ`, computed through the full
/// evolution (`φ = 0`; the concurrence does not depend on it).
pub fn scan_concurrence(
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
    thetas: &[f64],
    exec: Execution,
) -> ConcurrenceScan {
    let samples = par::map(exec, thetas, |&theta| {
        let out = evolve(initial, EvolutionParams::new(theta, 0.0), alpha, kind);
        (theta, concurrence(&out))
    });
    ConcurrenceScan {
        kind,
        alpha,
        samples,
    }
}
