//! Cross-check suites: every closed form against an independent computation.
//!
//! Each suite draws its samples from a ChaCha stream keyed by the suite and
//! the sample index, so results do not depend on the execution mode or on
//! how work is split across threads. Sample 0 always uses the configured
//! parameters and state; the rest are random.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{hermitian_expm, ComplexScalar, Vector4, EXACT_TOL};
use crate::entanglement::{
    concurrence, concurrence_dm_family, concurrence_evolved, concurrence_pm_family,
    concurrence_pp_family, product_state, ProductPattern, ProductStateAngles,
};
use crate::evolution::{
    evolve_with_alpha, propagator, verify_periodicity, EvolutionParams, TwoSpinState,
    PERIODICITY_TOL,
};
use crate::geometry::{
    invariants_of, metric_analytic, metric_finite_difference, metric_from_variances, GeneratorPair,
    MetricTensor, DEFAULT_STEP,
};
use crate::model::{
    build_hamiltonian, dm_conjugation, eigensystem, Anisotropy, ModelKind, ModelParams,
};
use crate::par::{self, Execution};

/// Deliberate faults for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// The closed-form side sees `α + 0.25` while the oracle sees `α`.
    CorruptAlpha,
}

const CORRUPT_ALPHA_SHIFT: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub params: ModelParams,
    pub initial: TwoSpinState,
    pub gamma: f64,
    pub samples: usize,
    pub seed: u64,
    pub exec: Execution,
    pub fault: Option<Fault>,
}

impl VerifyConfig {
    pub fn new(params: ModelParams, initial: TwoSpinState) -> Self {
        VerifyConfig {
            params,
            initial,
            gamma: 1.0,
            samples: 200,
            seed: 0x5eed_0f2a,
            exec: Execution::default(),
            fault: None,
        }
    }

    fn closed_form_alpha(&self, alpha: f64) -> f64 {
        match self.fault {
            Some(Fault::CorruptAlpha) => alpha + CORRUPT_ALPHA_SHIFT,
            None => alpha,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub samples: usize,
    pub max_defect: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn from_defects(name: &str, defects: &[f64], threshold: f64) -> Self {
        let max_defect = defects.iter().copied().fold(0.0, |m: f64, d| {
            if d.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(d)
            }
        });
        SuiteResult {
            name: name.to_owned(),
            samples: defects.len(),
            max_defect,
            threshold,
            passed: max_defect < threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

/// Independent generator for sample `index` of suite `suite`.
pub fn sample_rng(seed: u64, suite: u32, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(suite) << 40) | index as u64);
    rng
}

/// Uniform in the unit cube of `C⁴`, normalized.
pub fn random_state<R: Rng>(rng: &mut R) -> TwoSpinState {
    loop {
        let v = Vector4(std::array::from_fn(|_| {
            ComplexScalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }));
        if v.norm() > 1e-3 {
            return TwoSpinState::normalized(v).expect("norm checked");
        }
    }
}

/// `J ∈ [0.1, 3]`, `α ∈ [−3, 3]`, `h_z ∈ [−2, 2]`.
pub fn random_params<R: Rng>(rng: &mut R, kind: ModelKind) -> ModelParams {
    let coupling = rng.gen_range(0.1..3.0);
    let alpha = Anisotropy::real(rng.gen_range(-3.0..3.0)).expect("finite");
    let field = rng.gen_range(-2.0..2.0);
    ModelParams::new(coupling, alpha, field, kind).expect("nonzero coupling")
}

fn params_for<R: Rng>(config: &VerifyConfig, index: usize, rng: &mut R) -> ModelParams {
    if index == 0 {
        config.params
    } else {
        random_params(rng, config.params.kind)
    }
}

fn state_for<R: Rng>(config: &VerifyConfig, index: usize, rng: &mut R) -> TwoSpinState {
    if index == 0 {
        config.initial
    } else {
        random_state(rng)
    }
}

fn with_alpha(params: ModelParams, alpha: f64) -> ModelParams {
    ModelParams {
        alpha: Anisotropy::real(alpha).expect("finite"),
        ..params
    }
}

pub fn propagator_suite(config: &VerifyConfig) -> SuiteResult {
    let defects = par::map_indices(config.exec, config.samples, |i| {
        let mut rng = sample_rng(config.seed, 1, i);
        let params = params_for(config, i, &mut rng);
        let t = rng.gen_range(0.0..5.0);
        let closed = propagator(
            &with_alpha(params, config.closed_form_alpha(params.alpha.value())),
            t,
        );
        match hermitian_expm(&build_hamiltonian(&params), t) {
            Ok(reference) => closed.max_abs_diff(&reference),
            Err(_) => f64::NAN,
        }
    });
    SuiteResult::from_defects("propagator_vs_exponential", &defects, EXACT_TOL)
}

pub fn eigensystem_suite(config: &VerifyConfig) -> SuiteResult {
    let defects = par::map_indices(config.exec, config.samples, |i| {
        let mut rng = sample_rng(config.seed, 2, i);
        let params = params_for(config, i, &mut rng);
        let h = build_hamiltonian(&params);
        let closed = eigensystem(&with_alpha(
            params,
            config.closed_form_alpha(params.alpha.value()),
        ));
        closed
            .pairs
            .iter()
            .map(|p| {
                let lhs = h.apply(&p.vector);
                let rhs = p.vector.scale(ComplexScalar::new(p.value, 0.0));
                lhs.max_abs_diff(&rhs)
            })
            .fold(0.0, f64::max)
    });
    SuiteResult::from_defects("eigensystem", &defects, EXACT_TOL)
}

pub fn conjugation_suite(config: &VerifyConfig) -> SuiteResult {
    let defects = par::map_indices(config.exec, config.samples, |i| {
        let mut rng = sample_rng(config.seed, 3, i);
        let params = params_for(config, i, &mut rng);
        let heisenberg = params.with_kind(ModelKind::Heisenberg);
        let dm = with_alpha(params, config.closed_form_alpha(params.alpha.value()))
            .with_kind(ModelKind::Dm);
        dm_conjugation(&build_hamiltonian(&heisenberg)).max_abs_diff(&build_hamiltonian(&dm))
    });
    SuiteResult::from_defects("dm_conjugation", &defects, EXACT_TOL)
}

/// Analytic metric vs the generator-covariance metric.
pub fn metric_variance_suite(config: &VerifyConfig) -> SuiteResult {
    let kind = config.params.kind;
    let defects = par::map_indices(config.exec, config.samples, |i| {
        let mut rng = sample_rng(config.seed, 4, i);
        let params = params_for(config, i, &mut rng);
        let psi = state_for(config, i, &mut rng);
        let alpha = params.alpha.value();
        let analytic = metric_analytic(
            &invariants_of(&psi, kind),
            config.closed_form_alpha(alpha),
            config.gamma,
        );
        match metric_from_variances(&psi, &GeneratorPair::for_model(kind, alpha), config.gamma) {
            Ok(m) => analytic.max_abs_diff(&m) / unit_scale(config.gamma),
            Err(_) => f64::NAN,
        }
    });
    SuiteResult::from_defects("metric_analytic_vs_variance", &defects, EXACT_TOL)
}

/// Analytic metric vs Richardson-extrapolated central differences of the
/// evolved state at a random base point. Defects are reported per unit `γ²`.
pub fn metric_finite_difference_suite(config: &VerifyConfig) -> SuiteResult {
    let kind = config.params.kind;
    let defects = par::map_indices(config.exec, config.samples, |i| {
        let mut rng = sample_rng(config.seed, 5, i);
        let params = params_for(config, i, &mut rng);
        let psi = state_for(config, i, &mut rng);
        let at = EvolutionParams::new(rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
        let alpha = params.alpha;
        let analytic = metric_analytic(
            &invariants_of(&psi, kind),
            config.closed_form_alpha(alpha.value()),
            config.gamma,
        );
        let fd = |h| metric_finite_difference(&psi, alpha, kind, at, config.gamma, h);
        match (fd(DEFAULT_STEP), fd(DEFAULT_STEP / 2.0)) {
            (Ok(coarse), Ok(fine)) => {
                analytic.max_abs_diff(&MetricTensor::richardson(&coarse, &fine))
                    / unit_scale(config.gamma)
            }
            _ => f64::NAN,
        }
    });
    SuiteResult::from_defects("metric_analytic_vs_finite_difference", &defects, 1e-10)
}

fn unit_scale(gamma: f64) -> f64 {
    (gamma * gamma).max(1.0)
}

/// Closed-form concurrence vs concurrence of the evolved state.
///
/// Heisenberg: the general-state formula plus the `|+−⟩` and `|++⟩`
/// families. DM: the `|+−⟩` family.
pub fn concurrence_suite(config: &VerifyConfig) -> SuiteResult {
    let kind = config.params.kind;
    let defects = par::map_indices(config.exec, config.samples, |i| {
        let mut rng = sample_rng(config.seed, 6, i);
        let params = params_for(config, i, &mut rng);
        let psi = state_for(config, i, &mut rng);
        let alpha = params.alpha.value();
        let closed_alpha = config.closed_form_alpha(alpha);
        let theta = rng.gen_range(-5.0..5.0);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let chi = rng.gen_range(0.0..PI);
        let gamma_angle = rng.gen_range(0.0..2.0 * PI);
        let at = EvolutionParams::new(theta, phi);
        let evolved_c = |s: &TwoSpinState| concurrence(&evolve_with_alpha(s, at, alpha, kind));
        let product = |pattern| {
            product_state(&ProductStateAngles::new(chi, gamma_angle, pattern).expect("in range"))
        };
        match kind {
            ModelKind::Heisenberg => {
                let general =
                    (concurrence_evolved(&psi, closed_alpha, theta) - evolved_c(&psi)).abs();
                let pm = (concurrence_pm_family(chi, closed_alpha, theta)
                    - evolved_c(&product(ProductPattern::PlusMinus)))
                .abs();
                let pp = (concurrence_pp_family(chi, closed_alpha, theta)
                    - evolved_c(&product(ProductPattern::PlusPlus)))
                .abs();
                general.max(pm).max(pp)
            }
            ModelKind::Dm => (concurrence_dm_family(chi, closed_alpha, theta)
                - evolved_c(&product(ProductPattern::PlusMinus)))
            .abs(),
        }
    });
    SuiteResult::from_defects("concurrence_closed_form", &defects, EXACT_TOL)
}

/// One initial state and anisotropy per periodicity case, for `kind`.
pub fn representative_cases(kind: ModelKind) -> Vec<(TwoSpinState, Anisotropy)> {
    let r = |v: [f64; 4]| Vector4(v.map(|x| ComplexScalar::new(x, 0.0)));
    let real = |x: f64| Anisotropy::real(x).expect("finite");
    let rational = |p, q| Anisotropy::rational(p, q).expect("nonzero q");
    let generic = [0.5, 0.3, -0.6, 0.55];
    let cases = [
        (r([0.0, 0.8, 0.6, 0.0]), real(0.7)),
        (r([0.6, 0.0, 0.0, 0.8]), real(1.3)),
        (r(generic), real(1.0)),
        (r([0.4, 0.5, 0.5, 0.6]), real(1.0)),
        (r([0.4, 0.5, 0.5, 0.6]), real(2.5)),
        (r([0.4, 0.5, -0.5, 0.6]), real(-1.5)),
        (r(generic), rational(1, 3)),
        (r(generic), rational(2, 3)),
        (r(generic), rational(-5, 2)),
        (r(generic), real(std::f64::consts::SQRT_2)),
    ];
    // The DM evolution of V|ψ⟩ is V times the Heisenberg evolution of |ψ⟩.
    let v = crate::model::first_spin_z_rotation(std::f64::consts::FRAC_PI_4);
    cases
        .into_iter()
        .map(|(vec, alpha)| {
            let psi = TwoSpinState::normalized(vec).expect("nonzero");
            let psi = match kind {
                ModelKind::Heisenberg => psi,
                ModelKind::Dm => psi.transformed(&v),
            };
            (psi, alpha)
        })
        .collect()
}

/// Phase relations of the configured state plus one representative state
/// per case. The defect is the larger of the fidelity and phase defects.
pub fn periodicity_suite(config: &VerifyConfig) -> SuiteResult {
    let kind = config.params.kind;
    let mut cases = vec![(config.initial, config.params.alpha)];
    cases.extend(representative_cases(kind));
    let defects = par::map(config.exec, &cases, |(psi, alpha)| {
        let report = verify_periodicity(psi, *alpha, kind);
        report.max_fidelity_defect.max(report.max_phase_defect())
    });
    SuiteResult::from_defects("periodicity", &defects, PERIODICITY_TOL)
}

/// Runs every suite that applies to the configured model.
pub fn run_all(config: &VerifyConfig) -> VerifyReport {
    let mut suites = vec![propagator_suite(config), eigensystem_suite(config)];
    if config.params.kind == ModelKind::Dm {
        suites.push(conjugation_suite(config));
    }
    suites.extend([
        metric_variance_suite(config),
        metric_finite_difference_suite(config),
        concurrence_suite(config),
        periodicity_suite(config),
    ]);
    let passed = suites.iter().all(|s| s.passed);
    VerifyReport { suites, passed }
}
