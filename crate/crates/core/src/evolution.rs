//! Closed-form time evolution and the `(θ, φ)` family of evolved states.
//!
//! With `θ = 2Jt` and `φ = 2h_z t` the evolved state of either model is an
//! explicit function of the two angles and the initial amplitudes, so the
//! set of reachable states is a two-parameter manifold. Which closed
//! relations it obeys under shifts of `θ` and `φ` depends on the initial
//! state and on `α`; [`detect_case`] sorts states into those cases and
//! [`verify_periodicity`] checks the relations numerically.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{cis, fidelity, inner, ComplexScalar, Operator4, Vector4, EXACT_TOL, I, ONE};
use crate::error::{Error, Result};
use crate::model::{Anisotropy, ModelKind, ModelParams};

/// Normalized two-spin pure state `a|↑↑⟩ + b|↑↓⟩ + c|↓↑⟩ + d|↓↓⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoSpinState(Vector4);

impl TwoSpinState {
    pub fn new(
        a: ComplexScalar,
        b: ComplexScalar,
        c: ComplexScalar,
        d: ComplexScalar,
    ) -> Result<Self> {
        Self::from_vector(Vector4::new(a, b, c, d))
    }

    pub fn from_vector(v: Vector4) -> Result<Self> {
        let norm = v.norm();
        if !v.is_finite() || (norm - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(TwoSpinState(v))
    }

    /// Rescales `v` onto the unit sphere; fails only for the zero vector.
    pub fn normalized(v: Vector4) -> Result<Self> {
        let norm = v.norm();
        if !v.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(TwoSpinState(v.scale(ComplexScalar::new(1.0 / norm, 0.0))))
    }

    pub fn basis(k: usize) -> Self {
        TwoSpinState(Vector4::basis(k))
    }

    pub fn up_up() -> Self {
        Self::basis(0)
    }

    pub fn up_down() -> Self {
        Self::basis(1)
    }

    pub fn down_up() -> Self {
        Self::basis(2)
    }

    pub fn down_down() -> Self {
        Self::basis(3)
    }

    pub fn a(&self) -> ComplexScalar {
        self.0[0]
    }

    pub fn b(&self) -> ComplexScalar {
        self.0[1]
    }

    pub fn c(&self) -> ComplexScalar {
        self.0[2]
    }

    pub fn d(&self) -> ComplexScalar {
        self.0[3]
    }

    pub fn amplitudes(&self) -> [ComplexScalar; 4] {
        self.0 .0
    }

    pub fn as_vector(&self) -> &Vector4 {
        &self.0
    }

    /// Applies a unitary; the caller guarantees `u` is unitary.
    pub fn transformed(&self, u: &Operator4) -> Self {
        TwoSpinState(u.apply(&self.0))
    }

    /// Same ray: `|⟨self|other⟩| = 1` within `tol`.
    pub fn same_ray(&self, other: &TwoSpinState, tol: f64) -> bool {
        1.0 - inner(&self.0, &other.0).norm() <= tol
    }
}

/// Manifold coordinates `θ = 2Jt`, `φ = 2h_z t` (radians).
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct EvolutionParams {
    pub theta: f64,
    pub phi: f64,
}

impl EvolutionParams {
    pub fn new(theta: f64, phi: f64) -> Self {
        EvolutionParams { theta, phi }
    }

    pub fn shifted(&self, d_theta: f64, d_phi: f64) -> Self {
        EvolutionParams::new(self.theta + d_theta, self.phi + d_phi)
    }
}

pub fn params_from_time(coupling: f64, field: f64, t: f64) -> Result<EvolutionParams> {
    if coupling == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    Ok(EvolutionParams::new(2.0 * coupling * t, 2.0 * field * t))
}

/// Closed-form `U(t) = e^{-iHt}` in the fixed basis.
pub fn propagator(params: &ModelParams, t: f64) -> Operator4 {
    let j = params.coupling;
    let aj = params.alpha.value() * j;
    let h = params.field;
    let (cos, sin) = ((2.0 * j * t).cos(), (2.0 * j * t).sin());
    let central = cis(aj * t);
    let (upper, lower) = match params.kind {
        ModelKind::Heisenberg => (-I * sin, -I * sin),
        ModelKind::Dm => (ComplexScalar::new(sin, 0.0), ComplexScalar::new(-sin, 0.0)),
    };
    let mut u = Operator4::zero();
    u[(0, 0)] = cis(-(2.0 * h + aj) * t);
    u[(1, 1)] = central * cos;
    u[(1, 2)] = central * upper;
    u[(2, 1)] = central * lower;
    u[(2, 2)] = central * cos;
    u[(3, 3)] = cis((2.0 * h - aj) * t);
    u
}

/// The evolved state `ψ(θ, φ)` written directly in the manifold coordinates,
/// including the global factor `e^{iαθ/2}`.
pub fn evolve(
    initial: &TwoSpinState,
    at: EvolutionParams,
    alpha: Anisotropy,
    kind: ModelKind,
) -> TwoSpinState {
    evolve_with_alpha(initial, at, alpha.value(), kind)
}

pub(crate) fn evolve_with_alpha(
    initial: &TwoSpinState,
    at: EvolutionParams,
    alpha: f64,
    kind: ModelKind,
) -> TwoSpinState {
    TwoSpinState(evolve_vector(initial.as_vector(), at, alpha, kind))
}

pub(crate) fn evolve_vector(
    v: &Vector4,
    at: EvolutionParams,
    alpha: f64,
    kind: ModelKind,
) -> Vector4 {
    let EvolutionParams { theta, phi } = at;
    let [a, b, c, d] = v.0;
    let (cos, sin) = (theta.cos(), theta.sin());
    let (b_out, c_out) = match kind {
        ModelKind::Heisenberg => (b * cos - I * c * sin, -I * b * sin + c * cos),
        ModelKind::Dm => (b * cos + c * sin, -b * sin + c * cos),
    };
    let global = cis(alpha * theta / 2.0);
    Vector4::new(
        global * a * cis(-(phi + alpha * theta)),
        global * b_out,
        global * c_out,
        global * d * cis(phi - alpha * theta),
    )
}

/// Which of `c = b` and `c = −b` an initial state satisfies (after the DM
/// substitution, if any).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSymmetry {
    /// `c = b`; paired with `α = 1`.
    Symmetric,
    /// `c = −b`; paired with `α = −1`.
    Antisymmetric,
}

impl PairSymmetry {
    /// `+1` for [`Symmetric`](Self::Symmetric), `−1` otherwise.
    pub fn sign(self) -> f64 {
        match self {
            PairSymmetry::Symmetric => 1.0,
            PairSymmetry::Antisymmetric => -1.0,
        }
    }
}

/// Periodicity class of an initial state under a given `α`.
///
/// Numbered cases follow the standard enumeration (1 through 6); the two
/// stationary variants are states for which the evolution only changes the
/// global phase, so the manifold collapses to a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PeriodicityCase {
    /// `a = d = 0` and `b = ±c`: an eigenstate of the full interaction.
    StationaryPair { symmetry: PairSymmetry },
    /// `b = c = 0` and exactly one of `a`, `d` nonzero.
    StationaryAligned,
    /// Case 1: `a = d = 0`, `b ≠ ±c`. Depends on `θ` only.
    ThetaOnly,
    /// Case 2: `a, d ≠ 0`, `b = c = 0`. Depends on `φ` only, half period.
    PhiOnly,
    /// Case 3: `α = ±1` with the matching `c = ±b`, `a` or `d` nonzero.
    IsotropicPhi { symmetry: PairSymmetry },
    /// Case 4: `c = ±b` without the matching `α = ±1`, `a` or `d` nonzero.
    Anisotropic { symmetry: PairSymmetry },
    /// Case 5: `c ≠ ±b`, `α = p/q`.
    Rational { p: i64, q: u64 },
    /// Case 6: `c ≠ ±b`, `α` irrational.
    Irrational,
}

impl PeriodicityCase {
    /// Case number 1..=6, or `None` for the stationary sub-cases.
    pub fn number(&self) -> Option<u8> {
        match self {
            PeriodicityCase::StationaryPair { .. } | PeriodicityCase::StationaryAligned => None,
            PeriodicityCase::ThetaOnly => Some(1),
            PeriodicityCase::PhiOnly => Some(2),
            PeriodicityCase::IsotropicPhi { .. } => Some(3),
            PeriodicityCase::Anisotropic { .. } => Some(4),
            PeriodicityCase::Rational { .. } => Some(5),
            PeriodicityCase::Irrational => Some(6),
        }
    }

    pub fn is_stationary(&self) -> bool {
        self.number().is_none()
    }
}

/// `ψ(θ + Δθ, φ + Δφ) = phase · ψ(θ, φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeRelation {
    pub d_theta: f64,
    pub d_phi: f64,
    #[serde(with = "complex_pair")]
    pub phase: ComplexScalar,
}

impl LatticeRelation {
    fn new(d_theta: f64, d_phi: f64, phase: ComplexScalar) -> Self {
        LatticeRelation {
            d_theta,
            d_phi,
            phase,
        }
    }
}

pub(crate) mod complex_pair {
    use super::ComplexScalar;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &ComplexScalar, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ComplexScalar, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(ComplexScalar::new(re, im))
    }
}

/// Amplitudes on which the case conditions are evaluated. For DM the
/// substitution `b → −ib` maps the state onto the Heisenberg conditions.
fn case_amplitudes(initial: &TwoSpinState, kind: ModelKind) -> [ComplexScalar; 4] {
    let [a, b, c, d] = initial.amplitudes();
    match kind {
        ModelKind::Heisenberg => [a, b, c, d],
        ModelKind::Dm => [a, -I * b, c, d],
    }
}

fn is_zero(z: ComplexScalar) -> bool {
    z.norm() <= EXACT_TOL
}

fn pair_symmetry(b: ComplexScalar, c: ComplexScalar) -> Option<PairSymmetry> {
    if is_zero(c - b) {
        Some(PairSymmetry::Symmetric)
    } else if is_zero(c + b) {
        Some(PairSymmetry::Antisymmetric)
    } else {
        None
    }
}

/// Sorts an initial state into its periodicity case.
///
/// Stationary sub-cases are checked first, then cases 1 through 4, and
/// finally the rationality of `α` decides between 5 and 6.
pub fn detect_case(initial: &TwoSpinState, alpha: Anisotropy, kind: ModelKind) -> PeriodicityCase {
    let [a, b, c, d] = case_amplitudes(initial, kind);
    let outer_empty = is_zero(a) && is_zero(d);
    let inner_empty = is_zero(b) && is_zero(c);
    let symmetry = pair_symmetry(b, c);

    if outer_empty {
        return match symmetry {
            Some(symmetry) => PeriodicityCase::StationaryPair { symmetry },
            None => PeriodicityCase::ThetaOnly,
        };
    }
    if inner_empty {
        return if is_zero(a) || is_zero(d) {
            PeriodicityCase::StationaryAligned
        } else {
            PeriodicityCase::PhiOnly
        };
    }
    if let Some(symmetry) = symmetry {
        return if alpha.is(symmetry.sign()) {
            PeriodicityCase::IsotropicPhi { symmetry }
        } else {
            PeriodicityCase::Anisotropic { symmetry }
        };
    }
    match alpha.as_rational() {
        Some((p, q)) => PeriodicityCase::Rational { p, q },
        None => PeriodicityCase::Irrational,
    }
}

/// `θ` shift `π/(α ∓ 1)` of the case-4 twisted relation. May be negative.
pub fn anisotropic_theta_shift(alpha: f64, symmetry: PairSymmetry) -> f64 {
    PI / (alpha - symmetry.sign())
}

/// The shift relations that hold for a given case.
///
/// Alongside the defining relations of each case this lists the pure-phase
/// shifts along any coordinate the state does not depend on.
pub fn lattice_relations(
    case: PeriodicityCase,
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
) -> Vec<LatticeRelation> {
    let al = alpha.value();
    let one = ONE;
    match case {
        PeriodicityCase::StationaryPair { symmetry } => {
            // Central eigenvalue in θ-units is α/2 ∓ 1 (sign of the pair).
            let omega = al / 2.0 - symmetry.sign();
            vec![
                LatticeRelation::new(1.0, 0.0, cis(omega)),
                LatticeRelation::new(0.0, 1.0, one),
            ]
        }
        PeriodicityCase::StationaryAligned => {
            let [a, _, _, _] = case_amplitudes(initial, kind);
            let phi_sign = if is_zero(a) { 1.0 } else { -1.0 };
            vec![
                LatticeRelation::new(1.0, 0.0, cis(-al / 2.0)),
                LatticeRelation::new(0.0, 1.0, cis(phi_sign)),
            ]
        }
        PeriodicityCase::ThetaOnly => vec![
            LatticeRelation::new(PI, 0.0, -cis(al * PI / 2.0)),
            LatticeRelation::new(0.0, 1.0, one),
        ],
        PeriodicityCase::PhiOnly => vec![
            LatticeRelation::new(0.0, PI, -one),
            LatticeRelation::new(PI, 0.0, cis(-al * PI / 2.0)),
        ],
        PeriodicityCase::IsotropicPhi { symmetry } => vec![
            LatticeRelation::new(0.0, 2.0 * PI, one),
            LatticeRelation::new(PI, 0.0, cis(-symmetry.sign() * PI / 2.0)),
        ],
        PeriodicityCase::Anisotropic { symmetry } => {
            let shift = anisotropic_theta_shift(al, symmetry);
            vec![
                LatticeRelation::new(0.0, 2.0 * PI, one),
                LatticeRelation::new(shift, PI, -cis(-al * shift / 2.0)),
            ]
        }
        PeriodicityCase::Rational { p, q } => {
            let both_odd = p % 2 != 0 && q % 2 != 0;
            let period = q as f64 * PI;
            let second = if both_odd {
                LatticeRelation::new(period, 0.0, cis(-(p as f64) * PI / 2.0))
            } else {
                LatticeRelation::new(period, PI, cis(-(p as f64 / 2.0 + 1.0) * PI))
            };
            vec![LatticeRelation::new(0.0, 2.0 * PI, one), second]
        }
        PeriodicityCase::Irrational => vec![LatticeRelation::new(0.0, 2.0 * PI, one)],
    }
}

/// Outcome of checking one relation at many base points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: LatticeRelation,
    /// `max (1 − |⟨ψ(ξ+Δ)|ψ(ξ)⟩|)` over base points.
    pub max_fidelity_defect: f64,
    /// `max ‖ψ(ξ+Δ) − phase·ψ(ξ)‖∞` over base points.
    pub max_phase_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub case: PeriodicityCase,
    pub checks: Vec<RelationCheck>,
    pub verified: bool,
    pub max_fidelity_defect: f64,
}

impl PeriodicityReport {
    pub fn case_id(&self) -> Option<u8> {
        self.case.number()
    }

    pub fn max_phase_defect(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_phase_defect)
            .fold(0.0, f64::max)
    }
}

/// Defect above which a relation is reported as failing.
pub const PERIODICITY_TOL: f64 = 1e-10;
/// Base points per relation.
pub const PERIODICITY_BASE_POINTS: usize = 8;
const PERIODICITY_SEED: u64 = 0x7057_5049;

/// Detects the case and checks each of its relations at eight base points
/// with `θ ∈ [0.1, 1.4]`, `φ ∈ [0, 2π)`.
pub fn verify_periodicity(
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
) -> PeriodicityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(PERIODICITY_SEED);
    verify_periodicity_with(initial, alpha, kind, &mut rng)
}

pub fn verify_periodicity_with<R: Rng>(
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
    rng: &mut R,
) -> PeriodicityReport {
    let case = detect_case(initial, alpha, kind);
    let relations = lattice_relations(case, initial, alpha, kind);
    let base_points: Vec<EvolutionParams> = (0..PERIODICITY_BASE_POINTS)
        .map(|_| EvolutionParams::new(rng.gen_range(0.1..1.4), rng.gen_range(0.0..2.0 * PI)))
        .collect();
    let checks: Vec<RelationCheck> = relations
        .into_iter()
        .map(|relation| check_relation(initial, alpha, kind, relation, &base_points))
        .collect();
    let max_fidelity_defect = checks
        .iter()
        .map(|c| c.max_fidelity_defect)
        .fold(0.0, f64::max);
    let verified = checks
        .iter()
        .all(|c| c.max_fidelity_defect < PERIODICITY_TOL && c.max_phase_defect < PERIODICITY_TOL);
    PeriodicityReport {
        case,
        checks,
        verified,
        max_fidelity_defect,
    }
}

pub fn check_relation(
    initial: &TwoSpinState,
    alpha: Anisotropy,
    kind: ModelKind,
    relation: LatticeRelation,
    base_points: &[EvolutionParams],
) -> RelationCheck {
    let mut fid_defect = 0.0_f64;
    let mut phase_defect = 0.0_f64;
    for &at in base_points {
        let here = evolve(initial, at, alpha, kind);
        let there = evolve(
            initial,
            at.shifted(relation.d_theta, relation.d_phi),
            alpha,
            kind,
        );
        let f = fidelity(here.as_vector(), there.as_vector()).unwrap_or(0.0);
        fid_defect = fid_defect.max(1.0 - f);
        let expected = here.as_vector().scale(relation.phase);
        phase_defect = phase_defect.max(there.as_vector().max_abs_diff(&expected));
    }
    RelationCheck {
        relation,
        max_fidelity_defect: fid_defect,
        max_phase_defect: phase_defect,
    }
}
