//! Hamiltonians of the two-spin system and their exact eigensystems.
//!
//! Both models share the `ZZ` anisotropy term and the `z`-field term and
//! differ only in the transverse interaction:
//!
//! * Heisenberg: `J(σx¹σx² + σy¹σy²)`
//! * DM:         `J(σx¹σy² − σy¹σx²)`
//!
//! The DM Hamiltonian is the Heisenberg one conjugated by `e^{iπ/4 σz¹}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    cis, identity2, kron2, sigma_x, sigma_y, sigma_z, ComplexScalar, Matrix2, Operator4, Vector4,
    EXACT_TOL, I, ONE, ZERO,
};
use crate::error::{Error, Result};

/// Largest denominator accepted when recovering a rational from a decimal.
pub const MAX_RECOVERED_DENOMINATOR: u64 = 1000;

/// Ratio `α` between the `ZZ` coupling and the transverse coupling.
///
/// The rational form matters for manifold classification: whether the
/// evolution closes in `θ` is a number-theoretic property of `α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum Anisotropy {
    /// `p/q` in lowest terms with `q > 0`.
    Rational {
        p: i64,
        q: u64,
    },
    Real {
        value: f64,
    },
}

impl Anisotropy {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidAnisotropy("zero denominator".into()));
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()).max(1);
        let sign = if q < 0 { -1 } else { 1 };
        Ok(Anisotropy::Rational {
            p: sign * p / g as i64,
            q: q.unsigned_abs() / g,
        })
    }

    pub fn real(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        Ok(Anisotropy::Real { value })
    }

    pub fn value(&self) -> f64 {
        match *self {
            Anisotropy::Rational { p, q } => p as f64 / q as f64,
            Anisotropy::Real { value } => value,
        }
    }

    /// Exact `(p, q)` for the rational form; for the real form, the
    /// continued-fraction convergent with `q ≤ 1000` lying within `1e-12`,
    /// if there is one.
    pub fn as_rational(&self) -> Option<(i64, u64)> {
        match *self {
            Anisotropy::Rational { p, q } => Some((p, q)),
            Anisotropy::Real { value } => {
                recover_rational(value, MAX_RECOVERED_DENOMINATOR, EXACT_TOL)
            }
        }
    }

    /// `α = target` within the case-matching tolerance.
    pub fn is(&self, target: f64) -> bool {
        (self.value() - target).abs() <= EXACT_TOL
    }
}

impl fmt::Display for Anisotropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Anisotropy::Rational { p, q: 1 } => write!(f, "{p}"),
            Anisotropy::Rational { p, q } => write!(f, "{p}/{q}"),
            Anisotropy::Real { value } => write!(f, "{value}"),
        }
    }
}

impl FromStr for Anisotropy {
    type Err = Error;

    /// Accepts `"p/q"` (exact) or a decimal literal.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::InvalidAnisotropy(format!("{s:?}: {why}"));
        if let Some((num, den)) = s.split_once('/') {
            let p: i64 = num
                .trim()
                .parse()
                .map_err(|_| bad("numerator is not an integer"))?;
            let q: i64 = den
                .trim()
                .parse()
                .map_err(|_| bad("denominator is not an integer"))?;
            Anisotropy::rational(p, q)
        } else {
            let v: f64 = s.parse().map_err(|_| bad("not a number"))?;
            Anisotropy::real(v)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn recover_rational(x: f64, max_q: u64, tol: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    // Convergents h/k of the continued fraction of x.
    let (mut h_prev, mut h) = (1_i64, x.floor() as i64);
    let (mut k_prev, mut k) = (0_u64, 1_u64);
    let mut rem = x - x.floor();
    loop {
        if (x - h as f64 / k as f64).abs() <= tol {
            return Some((h, k));
        }
        if rem.abs() < f64::EPSILON {
            return None;
        }
        let inv = 1.0 / rem;
        let term = inv.floor();
        rem = inv - term;
        let a = term as i64;
        let k_next = (a as u64).checked_mul(k)?.checked_add(k_prev)?;
        if k_next > max_q {
            return None;
        }
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    #[default]
    Heisenberg,
    Dm,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Heisenberg => "heisenberg",
            ModelKind::Dm => "dm",
        })
    }
}

impl FromStr for ModelKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "heisenberg" | "xxz" => Ok(ModelKind::Heisenberg),
            "dm" => Ok(ModelKind::Dm),
            other => Err(format!("unknown model {other:?} (expected heisenberg|dm)")),
        }
    }
}

/// Physical parameters of one Hamiltonian. `J = 0` is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub coupling: f64,
    pub alpha: Anisotropy,
    pub field: f64,
    pub kind: ModelKind,
}

impl ModelParams {
    pub fn new(coupling: f64, alpha: Anisotropy, field: f64, kind: ModelKind) -> Result<Self> {
        if !coupling.is_finite() {
            return Err(Error::NonFinite("J"));
        }
        if !field.is_finite() {
            return Err(Error::NonFinite("h_z"));
        }
        if !alpha.value().is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        if coupling == 0.0 {
            return Err(Error::DegenerateCoupling);
        }
        Ok(ModelParams {
            coupling,
            alpha,
            field,
            kind,
        })
    }

    pub fn with_kind(self, kind: ModelKind) -> Self {
        ModelParams { kind, ..self }
    }
}

/// The three mutually commuting pieces of a Hamiltonian.
#[derive(Clone, Copy, Debug)]
pub struct HamiltonianTerms {
    /// `H_xx` or `H_DM`.
    pub interaction: Operator4,
    pub zz: Operator4,
    pub field: Operator4,
}

impl HamiltonianTerms {
    pub fn total(&self) -> Operator4 {
        self.interaction + self.zz + self.field
    }
}

fn on_first(m: &Matrix2) -> Operator4 {
    kron2(m, &identity2())
}

fn on_second(m: &Matrix2) -> Operator4 {
    kron2(&identity2(), m)
}

/// `σx¹σx² + σy¹σy²`.
pub fn xx_exchange() -> Operator4 {
    kron2(&sigma_x(), &sigma_x()) + kron2(&sigma_y(), &sigma_y())
}

/// `σx¹σy² − σy¹σx²`.
pub fn dm_exchange() -> Operator4 {
    kron2(&sigma_x(), &sigma_y()) - kron2(&sigma_y(), &sigma_x())
}

/// `σz¹σz²`.
pub fn zz_coupling() -> Operator4 {
    kron2(&sigma_z(), &sigma_z())
}

/// `σz¹ + σz²`.
pub fn total_sigma_z() -> Operator4 {
    on_first(&sigma_z()) + on_second(&sigma_z())
}

pub fn hamiltonian_terms(params: &ModelParams) -> HamiltonianTerms {
    let j = params.coupling;
    let exchange = match params.kind {
        ModelKind::Heisenberg => xx_exchange(),
        ModelKind::Dm => dm_exchange(),
    };
    HamiltonianTerms {
        interaction: exchange.scale_re(j),
        zz: zz_coupling().scale_re(params.alpha.value() * j),
        field: total_sigma_z().scale_re(params.field),
    }
}

pub fn build_hamiltonian(params: &ModelParams) -> Operator4 {
    hamiltonian_terms(params).total()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vector4,
}

/// Analytic eigensystem, ordered `|↑↑⟩`, `|↓↓⟩`, then the two central-block
/// states with eigenvalues `−αJ + 2J` and `−αJ − 2J`.
///
/// Global phases are fixed by making the first nonzero amplitude real and
/// positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem {
    pub pairs: [EigenPair; 4],
}

impl EigenSystem {
    pub fn values(&self) -> [f64; 4] {
        self.pairs.map(|p| p.value)
    }
}

pub fn eigensystem(params: &ModelParams) -> EigenSystem {
    let j = params.coupling;
    let a = params.alpha.value();
    let h = params.field;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let sc = |z: ComplexScalar| z * s;
    // Second amplitude of the central eigenvectors: ±1 (Heisenberg), ∓i (DM).
    let partner = match params.kind {
        ModelKind::Heisenberg => ONE,
        ModelKind::Dm => -I,
    };
    let pairs = [
        EigenPair {
            value: a * j + 2.0 * h,
            vector: Vector4::basis(0),
        },
        EigenPair {
            value: a * j - 2.0 * h,
            vector: Vector4::basis(3),
        },
        EigenPair {
            value: -a * j + 2.0 * j,
            vector: Vector4::new(ZERO, sc(ONE), sc(partner), ZERO),
        },
        EigenPair {
            value: -a * j - 2.0 * j,
            vector: Vector4::new(ZERO, sc(ONE), sc(-partner), ZERO),
        },
    ];
    EigenSystem { pairs }
}

/// `e^{i angle σz¹}`.
pub fn first_spin_z_rotation(angle: f64) -> Operator4 {
    let m = [[cis(angle), ZERO], [ZERO, cis(-angle)]];
    on_first(&m)
}

/// `e^{iπ/4 σz¹} H e^{−iπ/4 σz¹}`; maps the Heisenberg Hamiltonian onto the
/// DM one with identical `(J, α, h_z)`.
pub fn dm_conjugation(h: &Operator4) -> Operator4 {
    let v = first_spin_z_rotation(std::f64::consts::FRAC_PI_4);
    v * *h * v.adjoint()
}
