//! Fubini-Study metric of the evolution manifold and its classification.
//!
//! The metric is available three ways, each independent of the others:
//!
//! * [`metric_analytic`]: closed form in the invariants `A`, `B`, `D` of the
//!   initial state;
//! * [`metric_from_variances`]: covariance matrix of the two commuting flow
//!   generators in the initial state;
//! * [`metric_finite_difference`]: central-difference tangent vectors of
//!   the evolved state fed into `g_μν = γ² Re(⟨ψ_μ|ψ_ν⟩ − ⟨ψ_μ|ψ⟩⟨ψ|ψ_ν⟩)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::{inner, Operator4, Vector4, EXACT_TOL, I};
use crate::error::{Error, Result};
use crate::evolution::{
    anisotropic_theta_shift, detect_case, evolve_vector, lattice_relations, EvolutionParams,
    LatticeRelation, PeriodicityCase, TwoSpinState,
};
use crate::model::{dm_exchange, total_sigma_z, xx_exchange, zz_coupling, Anisotropy, ModelKind};
use crate::par::{self, Execution};

/// Finite-difference step used when none is given.
pub const DEFAULT_STEP: f64 = 1e-4;
/// Accepted finite-difference step range.
pub const STEP_RANGE: (f64, f64) = (1e-6, 1e-2);
/// Agreement expected between analytic and finite-difference metrics at the
/// default step.
pub const FD_TOL: f64 = 1e-7;

/// `A = |a|² + |d|²`, `B = |b − c|²` (DM: `|b − ic|²`), `D = |a|² − |d|²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateInvariants {
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

pub fn invariants_of(initial: &TwoSpinState, kind: ModelKind) -> StateInvariants {
    let [a, b, c, d] = initial.amplitudes();
    let diff = match kind {
        ModelKind::Heisenberg => b - c,
        ModelKind::Dm => b - I * c,
    };
    StateInvariants {
        a: a.norm_sqr() + d.norm_sqr(),
        b: diff.norm_sqr(),
        d: a.norm_sqr() - d.norm_sqr(),
    }
}

/// Metric components over `(dθ, dφ)`:
/// `ds² = g_tt dθ² + g_pp dφ² + 2 g_tp dθ dφ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricTensor {
    pub g_tt: f64,
    pub g_pp: f64,
    pub g_tp: f64,
    pub gamma: f64,
}

impl MetricTensor {
    pub fn components(&self) -> [f64; 3] {
        [self.g_tt, self.g_pp, self.g_tp]
    }

    pub fn det(&self) -> f64 {
        self.g_tt * self.g_pp - self.g_tp * self.g_tp
    }

    pub fn max_abs_diff(&self, other: &MetricTensor) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.components()
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }

    /// Richardson extrapolation of two central-difference metrics, the
    /// second taken at half the step of the first.
    pub fn richardson(coarse: &MetricTensor, fine: &MetricTensor) -> MetricTensor {
        let ex = |c: f64, f: f64| (4.0 * f - c) / 3.0;
        MetricTensor {
            g_tt: ex(coarse.g_tt, fine.g_tt),
            g_pp: ex(coarse.g_pp, fine.g_pp),
            g_tp: ex(coarse.g_tp, fine.g_tp),
            gamma: fine.gamma,
        }
    }
}

pub fn metric_analytic(inv: &StateInvariants, alpha: f64, gamma: f64) -> MetricTensor {
    let StateInvariants { a, b, d } = *inv;
    let g2 = gamma * gamma;
    let drift = (alpha - 1.0) * a + 1.0 - b;
    MetricTensor {
        g_tt: g2 * ((alpha * alpha - 1.0) * a + 1.0 - drift * drift),
        g_pp: g2 * (a - d * d),
        g_tp: g2 * d * (alpha - drift),
        gamma,
    }
}

/// Generators of the two flows: `ψ(θ, φ) = e^{−iθH₁} e^{−iφH₂} ψ₀`.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorPair {
    pub theta: Operator4,
    pub phi: Operator4,
}

impl GeneratorPair {
    pub fn new(theta: Operator4, phi: Operator4) -> Result<Self> {
        for h in [&theta, &phi] {
            let defect = h.hermiticity_defect();
            if defect > EXACT_TOL {
                return Err(Error::NonHermitianInput { defect });
            }
        }
        Ok(GeneratorPair { theta, phi })
    }

    /// `H₁ = (H_int + H_zz)/(2J)`, `H₂ = (σz¹ + σz²)/2`.
    pub fn for_model(kind: ModelKind, alpha: f64) -> Self {
        let exchange = match kind {
            ModelKind::Heisenberg => xx_exchange(),
            ModelKind::Dm => dm_exchange(),
        };
        GeneratorPair {
            theta: (exchange + zz_coupling().scale_re(alpha)).scale_re(0.5),
            phi: total_sigma_z().scale_re(0.5),
        }
    }

    pub fn commutator_defect(&self) -> f64 {
        self.theta.commutator(&self.phi).max_abs()
    }
}

pub fn metric_from_variances(
    initial: &TwoSpinState,
    gen: &GeneratorPair,
    gamma: f64,
) -> Result<MetricTensor> {
    let defect = gen.commutator_defect();
    if defect > EXACT_TOL {
        return Err(Error::NonCommutingGenerators { defect });
    }
    let psi = initial.as_vector();
    let h1 = gen.theta.apply(psi);
    let h2 = gen.phi.apply(psi);
    let m1 = inner(psi, &h1).re;
    let m2 = inner(psi, &h2).re;
    let g2 = gamma * gamma;
    Ok(MetricTensor {
        g_tt: g2 * (inner(&h1, &h1).re - m1 * m1),
        g_pp: g2 * (inner(&h2, &h2).re - m2 * m2),
        g_tp: g2 * (inner(&h1, &h2).re - m1 * m2),
        gamma,
    })
}

fn fs_component(psi: &Vector4, mu: &Vector4, nu: &Vector4) -> f64 {
    (inner(mu, nu) - inner(mu, psi) * inner(psi, nu)).re
}

pub fn metric_finite_difference(
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
    at: EvolutionParams,
    gamma: f64,
    h: f64,
) -> Result<MetricTensor> {
    if !(STEP_RANGE.0..=STEP_RANGE.1).contains(&h) {
        return Err(Error::StepOutOfRange { h });
    }
    let al = alpha.value();
    let v0 = initial.as_vector();
    let psi = |p: EvolutionParams| evolve_vector(v0, p, al, kind);
    let scale = num_complex::Complex64::new(1.0 / (2.0 * h), 0.0);
    let d_theta = (psi(at.shifted(h, 0.0)) - psi(at.shifted(-h, 0.0))).scale(scale);
    let d_phi = (psi(at.shifted(0.0, h)) - psi(at.shifted(0.0, -h))).scale(scale);
    let here = psi(at);
    let g2 = gamma * gamma;
    Ok(MetricTensor {
        g_tt: g2 * fs_component(&here, &d_theta, &d_theta),
        g_pp: g2 * fs_component(&here, &d_phi, &d_phi),
        g_tp: g2 * fs_component(&here, &d_theta, &d_phi),
        gamma,
    })
}

/// Finite-difference metric at step `h`, rejected if halving the step moves
/// any component by ten times [`FD_TOL`] or more.
pub fn metric_finite_difference_checked(
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
    at: EvolutionParams,
    gamma: f64,
    h: f64,
) -> Result<MetricTensor> {
    let coarse = metric_finite_difference(initial, alpha, kind, at, gamma, h)?;
    let fine = metric_finite_difference(initial, alpha, kind, at, gamma, h / 2.0)?;
    let shift = coarse.max_abs_diff(&fine);
    let limit = 10.0 * FD_TOL;
    if shift >= limit {
        return Err(Error::RichardsonMismatch { shift, limit });
    }
    Ok(coarse)
}

/// Largest spread of any metric component across the given base points.
pub fn finite_difference_spread(
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
    gamma: f64,
    h: f64,
    points: &[EvolutionParams],
    exec: Execution,
) -> Result<f64> {
    let metrics = par::map(exec, points, |&at| {
        metric_finite_difference(initial, alpha, kind, at, gamma, h)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut spread = 0.0_f64;
    for k in 0..3 {
        let values = metrics.iter().map(|m| m.components()[k]);
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        spread = spread.max(hi - lo);
    }
    Ok(spread)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinate {
    Theta,
    Phi,
}

/// Geometry of the set of states reachable from one initial state.
///
/// Circle radii are the closed-curve length divided by `2π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ManifoldClass {
    Point,
    Circle {
        radius: f64,
        coordinate: Coordinate,
        period: f64,
    },
    Torus {
        theta_period: f64,
        phi_period: f64,
    },
    /// Closed by a relation that pairs a `θ` shift with a half turn in `φ`.
    TwistedTorus {
        theta_period: f64,
        phi_period: f64,
        twist: LatticeRelation,
    },
    /// Closed in `φ`, open in `θ`.
    Cylinder {
        phi_period: f64,
    },
}

impl ManifoldClass {
    pub fn name(&self) -> &'static str {
        match self {
            ManifoldClass::Point => "point",
            ManifoldClass::Circle { .. } => "circle",
            ManifoldClass::Torus { .. } => "torus",
            ManifoldClass::TwistedTorus { .. } => "twisted_torus",
            ManifoldClass::Cylinder { .. } => "cylinder",
        }
    }
}

fn circle(metric: &MetricTensor, coordinate: Coordinate, period: f64) -> ManifoldClass {
    let g = match coordinate {
        Coordinate::Theta => metric.g_tt,
        Coordinate::Phi => metric.g_pp,
    };
    ManifoldClass::Circle {
        radius: g.max(0.0).sqrt() * period / (2.0 * PI),
        coordinate,
        period,
    }
}

pub fn classify_manifold(
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
    gamma: f64,
) -> ManifoldClass {
    let case = detect_case(initial, alpha, kind);
    classify_case(case, initial, alpha, kind, gamma)
}

pub fn classify_case(
    case: PeriodicityCase,
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
    gamma: f64,
) -> ManifoldClass {
    let metric = metric_analytic(&invariants_of(initial, kind), alpha.value(), gamma);
    let twist = || lattice_relations(case, initial, alpha, kind)[1];
    match case {
        PeriodicityCase::StationaryPair { .. } | PeriodicityCase::StationaryAligned => {
            ManifoldClass::Point
        }
        PeriodicityCase::ThetaOnly => circle(&metric, Coordinate::Theta, PI),
        PeriodicityCase::PhiOnly => circle(&metric, Coordinate::Phi, PI),
        PeriodicityCase::IsotropicPhi { .. } => circle(&metric, Coordinate::Phi, 2.0 * PI),
        PeriodicityCase::Anisotropic { symmetry } => ManifoldClass::TwistedTorus {
            theta_period: anisotropic_theta_shift(alpha.value(), symmetry).abs(),
            phi_period: 2.0 * PI,
            twist: twist(),
        },
        PeriodicityCase::Rational { p, q } => {
            let theta_period = q as f64 * PI;
            if p % 2 != 0 && q % 2 != 0 {
                ManifoldClass::Torus {
                    theta_period,
                    phi_period: 2.0 * PI,
                }
            } else {
                ManifoldClass::TwistedTorus {
                    theta_period,
                    phi_period: 2.0 * PI,
                    twist: twist(),
                }
            }
        }
        PeriodicityCase::Irrational => ManifoldClass::Cylinder {
            phi_period: 2.0 * PI,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ComplexScalar, ONE, ZERO};
    use crate::entanglement::{product_state, ProductPattern, ProductStateAngles};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn real(x: f64) -> Anisotropy {
        Anisotropy::real(x).unwrap()
    }

    fn state(v: [ComplexScalar; 4]) -> TwoSpinState {
        TwoSpinState::normalized(Vector4(v)).unwrap()
    }

    fn bell_outer() -> TwoSpinState {
        state([ONE, ZERO, ZERO, ONE])
    }

    #[test]
    fn invariant_examples() {
        let inv = invariants_of(&TwoSpinState::up_down(), ModelKind::Heisenberg);
        assert_eq!(
            inv,
            StateInvariants {
                a: 0.0,
                b: 1.0,
                d: 0.0
            }
        );
        let inv = invariants_of(&bell_outer(), ModelKind::Heisenberg);
        assert!((inv.a - 1.0).abs() < EXACT_TOL && inv.b == 0.0 && inv.d.abs() < EXACT_TOL);
        let s = FRAC_1_SQRT_2;
        let inv = invariants_of(&state([ZERO, c(s, 0.0), c(s, 0.0), ZERO]), ModelKind::Dm);
        assert!((inv.b - 1.0).abs() < EXACT_TOL);
    }

    #[test]
    fn analytic_examples() {
        let inv = invariants_of(&TwoSpinState::up_down(), ModelKind::Heisenberg);
        for alpha in [-2.0, 0.0, 1.0, 3.0] {
            let m = metric_analytic(&inv, alpha, 1.0);
            assert!(
                m.max_abs_diff(&MetricTensor {
                    g_tt: 1.0,
                    g_pp: 0.0,
                    g_tp: 0.0,
                    gamma: 1.0
                }) < EXACT_TOL
            );
            let m = metric_analytic(
                &invariants_of(&bell_outer(), ModelKind::Heisenberg),
                alpha,
                1.0,
            );
            assert!(
                m.max_abs_diff(&MetricTensor {
                    g_tt: 0.0,
                    g_pp: 1.0,
                    g_tp: 0.0,
                    gamma: 1.0
                }) < EXACT_TOL
            );
        }
    }

    #[test]
    fn finite_difference_examples() {
        let psi = TwoSpinState::up_down();
        let expected = MetricTensor {
            g_tt: 1.0,
            g_pp: 0.0,
            g_tp: 0.0,
            gamma: 1.0,
        };
        for at in [
            EvolutionParams::new(0.2, 0.4),
            EvolutionParams::new(0.9, 1.7),
        ] {
            let m = metric_finite_difference(
                &psi,
                real(2.0),
                ModelKind::Heisenberg,
                at,
                1.0,
                DEFAULT_STEP,
            )
            .unwrap();
            assert!(m.max_abs_diff(&expected) < FD_TOL, "{m:?}");
        }
        let product = product_state(
            &ProductStateAngles::new(PI / 2.0, 0.3, ProductPattern::PlusMinus).unwrap(),
        );
        let m = metric_finite_difference(
            &product,
            real(1.7),
            ModelKind::Heisenberg,
            EvolutionParams::new(0.5, 0.5),
            1.0,
            DEFAULT_STEP,
        )
        .unwrap();
        assert!((m.g_pp - 0.5).abs() < FD_TOL);
    }

    #[test]
    fn step_range_enforced() {
        let psi = TwoSpinState::up_down();
        let at = EvolutionParams::default();
        for h in [0.0, 1e-7, 0.02] {
            assert_eq!(
                metric_finite_difference(&psi, real(1.0), ModelKind::Heisenberg, at, 1.0, h),
                Err(Error::StepOutOfRange { h })
            );
        }
        assert!(metric_finite_difference_checked(
            &psi,
            real(1.0),
            ModelKind::Heisenberg,
            at,
            1.0,
            DEFAULT_STEP
        )
        .is_ok());
    }

    #[test]
    fn richardson_rejects_coarse_step() {
        // At h = 1e-2 the O(h²) bias for large generator spread is visible.
        let psi = state([c(0.5, 0.0), c(0.5, 0.1), c(-0.3, 0.2), c(0.4, -0.2)]);
        let r = metric_finite_difference_checked(
            &psi,
            real(3.0),
            ModelKind::Heisenberg,
            EvolutionParams::default(),
            2.0,
            1e-2,
        );
        assert!(matches!(r, Err(Error::RichardsonMismatch { .. })));
    }

    #[test]
    fn variance_of_phi_generator() {
        let psi = state([c(0.3, 0.2), c(0.1, -0.4), c(0.5, 0.0), c(-0.2, 0.6)]);
        let gen = GeneratorPair::for_model(ModelKind::Heisenberg, 0.8);
        let m = metric_from_variances(&psi, &gen, 1.0).unwrap();
        let inv = invariants_of(&psi, ModelKind::Heisenberg);
        assert!((m.g_pp - (inv.a - inv.d * inv.d)).abs() < EXACT_TOL);
        let m = metric_from_variances(&TwoSpinState::up_down(), &gen, 1.0).unwrap();
        assert_eq!(m.g_pp, 0.0);
    }

    #[test]
    fn non_commuting_generators_rejected() {
        let gen = GeneratorPair::new(
            xx_exchange(),
            zz_coupling()
                + crate::algebra::kron2(&crate::algebra::sigma_x(), &crate::algebra::identity2()),
        )
        .unwrap();
        assert!(matches!(
            metric_from_variances(&TwoSpinState::up_down(), &gen, 1.0),
            Err(Error::NonCommutingGenerators { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        let m = classify_manifold(
            &TwoSpinState::up_down(),
            real(0.3),
            ModelKind::Heisenberg,
            1.0,
        );
        assert_eq!(
            m,
            ManifoldClass::Circle {
                radius: 0.5,
                coordinate: Coordinate::Theta,
                period: PI
            }
        );

        let generic = state([c(0.3, 0.1), c(0.5, -0.2), c(-0.1, 0.4), c(0.2, 0.6)]);
        let m = classify_manifold(
            &generic,
            real(std::f64::consts::SQRT_2),
            ModelKind::Heisenberg,
            1.0,
        );
        assert_eq!(
            m,
            ManifoldClass::Cylinder {
                phi_period: 2.0 * PI
            }
        );

        let sym = state([ONE, c(0.5, 0.5), c(0.5, 0.5), ZERO]);
        match classify_manifold(&sym, real(2.0), ModelKind::Heisenberg, 1.0) {
            ManifoldClass::TwistedTorus {
                theta_period,
                phi_period,
                twist,
            } => {
                assert!((theta_period - PI).abs() < EXACT_TOL);
                assert_eq!(phi_period, 2.0 * PI);
                assert_eq!(twist.d_phi, PI);
            }
            other => panic!("{other:?}"),
        }

        let m = classify_manifold(
            &generic,
            Anisotropy::rational(1, 3).unwrap(),
            ModelKind::Heisenberg,
            1.0,
        );
        assert_eq!(
            m,
            ManifoldClass::Torus {
                theta_period: 3.0 * PI,
                phi_period: 2.0 * PI
            }
        );
        let m = classify_manifold(
            &generic,
            Anisotropy::rational(2, 3).unwrap(),
            ModelKind::Heisenberg,
            1.0,
        );
        assert!(matches!(m, ManifoldClass::TwistedTorus { .. }));
        let m = classify_manifold(
            &generic,
            Anisotropy::rational(1, 2).unwrap(),
            ModelKind::Heisenberg,
            1.0,
        );
        assert!(
            matches!(m, ManifoldClass::TwistedTorus { theta_period, .. } if theta_period == 2.0 * PI)
        );
    }

    #[test]
    fn negative_case_four_period_uses_magnitude() {
        let sym = state([ONE, ONE, ONE, ONE]);
        match classify_manifold(&sym, real(0.5), ModelKind::Heisenberg, 1.0) {
            ManifoldClass::TwistedTorus {
                theta_period,
                twist,
                ..
            } => {
                assert!((theta_period - 2.0 * PI).abs() < EXACT_TOL);
                assert!((twist.d_theta + 2.0 * PI).abs() < EXACT_TOL);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn point_classes_have_zero_metric() {
        let s = FRAC_1_SQRT_2;
        let points = [
            (state([ZERO, ONE, ONE, ZERO]), ModelKind::Heisenberg),
            (state([ZERO, ONE, -ONE, ZERO]), ModelKind::Heisenberg),
            (state([ZERO, c(s, 0.0), c(0.0, s), ZERO]), ModelKind::Dm),
            (TwoSpinState::up_up(), ModelKind::Dm),
            (TwoSpinState::down_down(), ModelKind::Heisenberg),
        ];
        for (psi, kind) in points {
            for alpha in [-2.0, 0.5, 1.0] {
                assert_eq!(
                    classify_manifold(&psi, real(alpha), kind, 1.0),
                    ManifoldClass::Point
                );
                let m = metric_analytic(&invariants_of(&psi, kind), alpha, 1.0);
                assert!(m.max_abs() < EXACT_TOL, "{psi:?} {m:?}");
            }
        }
    }

    fn any_state() -> impl Strategy<Value = TwoSpinState> {
        proptest::collection::vec(-1.0..1.0_f64, 8).prop_filter_map("zero vector", |v| {
            TwoSpinState::normalized(Vector4(std::array::from_fn(|k| c(v[2 * k], v[2 * k + 1]))))
                .ok()
        })
    }

    fn any_kind() -> impl Strategy<Value = ModelKind> {
        prop_oneof![Just(ModelKind::Heisenberg), Just(ModelKind::Dm)]
    }

    proptest! {
        #[test]
        fn three_routes_agree(psi in any_state(), alpha in -3.0..3.0_f64, kind in any_kind(),
                              theta in -3.0..3.0_f64, phi in -3.0..3.0_f64) {
            let analytic = metric_analytic(&invariants_of(&psi, kind), alpha, 1.0);
            let variance = metric_from_variances(&psi, &GeneratorPair::for_model(kind, alpha), 1.0).unwrap();
            prop_assert!(analytic.max_abs_diff(&variance) < EXACT_TOL);
            let fd = metric_finite_difference(&psi, real(alpha), kind, EvolutionParams::new(theta, phi), 1.0, DEFAULT_STEP).unwrap();
            prop_assert!(analytic.max_abs_diff(&fd) < FD_TOL);
        }

        #[test]
        fn metric_is_positive_semidefinite(psi in any_state(), alpha in -3.0..3.0_f64, kind in any_kind(),
                                           gamma in 0.5..2.0_f64) {
            let m = metric_analytic(&invariants_of(&psi, kind), alpha, gamma);
            prop_assert!(m.g_tt >= -EXACT_TOL);
            prop_assert!(m.g_pp >= -EXACT_TOL);
            prop_assert!(m.det() >= -EXACT_TOL);
        }

        #[test]
        fn isotropic_reduction(psi in any_state(), kind in any_kind(), gamma in 0.5..2.0_f64) {
            let inv = invariants_of(&psi, kind);
            let m = metric_analytic(&inv, 1.0, gamma);
            let g2 = gamma * gamma;
            prop_assert!((m.g_tt - g2 * inv.b * (2.0 - inv.b)).abs() < EXACT_TOL);
            prop_assert!((m.g_pp - g2 * (inv.a - inv.d * inv.d)).abs() < EXACT_TOL);
            prop_assert!((2.0 * m.g_tp - 2.0 * g2 * inv.b * inv.d).abs() < EXACT_TOL);
        }

        #[test]
        fn phi_circles_have_no_theta_extent(
            a in -1.0..1.0_f64, d in -1.0..1.0_f64, b in 0.05..1.0_f64, sym in any::<bool>(),
            kind in any_kind(),
        ) {
            // c = ±b (Heisenberg) or c = ∓ib (DM) with α = ±1: case 3.
            let sign = if sym { 1.0 } else { -1.0 };
            let partner = match kind {
                ModelKind::Heisenberg => c(sign * b, 0.0),
                ModelKind::Dm => c(0.0, -sign * b),
            };
            let psi = state([c(a, 0.0), c(b, 0.0), partner, c(d, 0.0)]);
            prop_assume!(a.abs() > 1e-3 || d.abs() > 1e-3);
            let alpha = real(sign);
            let class = classify_manifold(&psi, alpha, kind, 1.0);
            let is_phi_circle = matches!(class, ManifoldClass::Circle { coordinate: Coordinate::Phi, .. });
            prop_assert!(is_phi_circle);
            let m = metric_analytic(&invariants_of(&psi, kind), sign, 1.0);
            prop_assert!(m.g_tt.abs() < EXACT_TOL && m.g_tp.abs() < EXACT_TOL);
        }
    }
}
