//! Dense complex linear algebra in dimension four.
//!
//! Everything here is specialised to the two-spin Hilbert space. The basis
//! order is fixed as `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩` and every operator and vector in
//! the crate follows it.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar stored as an explicit `re`/`im` pair.
pub type ComplexScalar = Complex64;

/// Absolute elementwise tolerance used for exact-arithmetic identities.
pub const EXACT_TOL: f64 = 1e-12;

pub const ZERO: ComplexScalar = Complex64::new(0.0, 0.0);
pub const ONE: ComplexScalar = Complex64::new(1.0, 0.0);
pub const I: ComplexScalar = Complex64::new(0.0, 1.0);

/// Phase factor `e^{i x}`.
#[inline]
pub fn cis(x: f64) -> ComplexScalar {
    Complex64::from_polar(1.0, x)
}

/// 2×2 complex matrix acting on a single spin.
pub type Matrix2 = [[ComplexScalar; 2]; 2];

pub fn identity2() -> Matrix2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn sigma_x() -> Matrix2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn sigma_y() -> Matrix2 {
    [[ZERO, -I], [I, ZERO]]
}

pub fn sigma_z() -> Matrix2 {
    [[ONE, ZERO], [ZERO, -ONE]]
}

/// Four complex amplitudes in the fixed two-spin basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector4(pub [ComplexScalar; 4]);

impl Vector4 {
    pub const fn new(
        a: ComplexScalar,
        b: ComplexScalar,
        c: ComplexScalar,
        d: ComplexScalar,
    ) -> Self {
        Vector4([a, b, c, d])
    }

    pub fn zero() -> Self {
        Vector4([ZERO; 4])
    }

    /// Unit vector along basis index `k`.
    pub fn basis(k: usize) -> Self {
        let mut v = Self::zero();
        v.0[k] = ONE;
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Vector4(self.0.map(|z| z * s))
    }

    pub fn max_abs_diff(&self, other: &Vector4) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for Vector4 {
    type Output = ComplexScalar;
    fn index(&self, k: usize) -> &ComplexScalar {
        &self.0[k]
    }
}

impl IndexMut<usize> for Vector4 {
    fn index_mut(&mut self, k: usize) -> &mut ComplexScalar {
        &mut self.0[k]
    }
}

impl Add for Vector4 {
    type Output = Vector4;
    fn add(self, rhs: Vector4) -> Vector4 {
        Vector4(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for Vector4 {
    type Output = Vector4;
    fn sub(self, rhs: Vector4) -> Vector4 {
        Vector4(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for Vector4 {
    type Output = Vector4;
    fn neg(self) -> Vector4 {
        Vector4(self.0.map(|z| -z))
    }
}

/// Row-major 4×4 complex operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator4(pub [[ComplexScalar; 4]; 4]);

impl Operator4 {
    pub fn zero() -> Self {
        Operator4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; 4])
    }

    pub fn diagonal(d: [ComplexScalar; 4]) -> Self {
        Self::from_fn(|r, c| if r == c { d[r] } else { ZERO })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> ComplexScalar) -> Self {
        Operator4(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r].conj())
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self::from_fn(|r, c| self.0[r][c] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    pub fn apply(&self, v: &Vector4) -> Vector4 {
        Vector4(std::array::from_fn(|r| {
            (0..4).map(|c| self.0[r][c] * v.0[c]).sum()
        }))
    }

    /// `⟨v|self|v⟩`.
    pub fn expectation(&self, v: &Vector4) -> ComplexScalar {
        inner(v, &self.apply(v))
    }

    pub fn commutator(&self, other: &Operator4) -> Operator4 {
        *self * *other - *other * *self
    }

    pub fn max_abs_diff(&self, other: &Operator4) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..4 {
            for c in 0..4 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::zero())
    }

    /// Largest elementwise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest elementwise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn to_nalgebra(self) -> Matrix4<ComplexScalar> {
        Matrix4::from_fn(|r, c| self.0[r][c])
    }

    fn from_nalgebra(m: &Matrix4<ComplexScalar>) -> Self {
        Self::from_fn(|r, c| m[(r, c)])
    }
}

impl Index<(usize, usize)> for Operator4 {
    type Output = ComplexScalar;
    fn index(&self, (r, c): (usize, usize)) -> &ComplexScalar {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for Operator4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut ComplexScalar {
        &mut self.0[r][c]
    }
}

impl Add for Operator4 {
    type Output = Operator4;
    fn add(self, rhs: Operator4) -> Operator4 {
        Operator4::from_fn(|r, c| self.0[r][c] + rhs.0[r][c])
    }
}

impl Sub for Operator4 {
    type Output = Operator4;
    fn sub(self, rhs: Operator4) -> Operator4 {
        Operator4::from_fn(|r, c| self.0[r][c] - rhs.0[r][c])
    }
}

impl Neg for Operator4 {
    type Output = Operator4;
    fn neg(self) -> Operator4 {
        self.scale_re(-1.0)
    }
}

impl Mul for Operator4 {
    type Output = Operator4;
    fn mul(self, rhs: Operator4) -> Operator4 {
        Operator4::from_fn(|r, c| (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum())
    }
}

/// Kronecker product `m1 ⊗ m2`; `m1` acts on the first spin.
pub fn kron2(m1: &Matrix2, m2: &Matrix2) -> Operator4 {
    Operator4::from_fn(|r, c| m1[r / 2][c / 2] * m2[r % 2][c % 2])
}

/// `⟨u|v⟩`, conjugate-linear in `u`.
pub fn inner(u: &Vector4, v: &Vector4) -> ComplexScalar {
    u.0.iter().zip(v.0.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Phase-insensitive overlap `|⟨u|v⟩|` of two normalized vectors.
pub fn fidelity(u: &Vector4, v: &Vector4) -> Result<f64> {
    for w in [u, v] {
        let n = w.norm();
        if (n - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized { norm: n });
        }
    }
    Ok(inner(u, v).norm().min(1.0))
}

/// `e^{-i h t}` for Hermitian `h`, by spectral decomposition.
///
/// When `h` has the `1 ⊕ 2 ⊕ 1` block structure shared by every Hamiltonian
/// in this crate, each block is diagonalised in closed form and the result is
/// reassembled from spectral projectors. Any other Hermitian input goes
/// through a dense eigensolver.
pub fn hermitian_expm(h: &Operator4, t: f64) -> Result<Operator4> {
    let defect = h.hermiticity_defect();
    if defect > EXACT_TOL || !h.is_finite() {
        return Err(Error::NonHermitianInput { defect });
    }
    if is_block_1_2_1(h) {
        Ok(block_expm(h, t))
    } else {
        Ok(dense_expm(h, t))
    }
}

fn is_block_1_2_1(h: &Operator4) -> bool {
    const INNER: [usize; 2] = [1, 2];
    for r in 0..4 {
        for c in 0..4 {
            if r == c || (INNER.contains(&r) && INNER.contains(&c)) {
                continue;
            }
            if h.0[r][c] != ZERO {
                return false;
            }
        }
    }
    true
}

fn block_expm(h: &Operator4, t: f64) -> Operator4 {
    let mut u = Operator4::zero();
    u.0[0][0] = cis(-h.0[0][0].re * t);
    u.0[3][3] = cis(-h.0[3][3].re * t);

    // Central block [[p, w], [w*, r]] = m·1 + K with K traceless,
    // eigenvalues m ± ρ and projectors (1 ± K/ρ)/2.
    let p = h.0[1][1].re;
    let r = h.0[2][2].re;
    let w = h.0[1][2];
    let mean = 0.5 * (p + r);
    let half_split = 0.5 * (p - r);
    let rho = (half_split * half_split + w.norm_sqr()).sqrt();
    let k = [
        [Complex64::new(half_split, 0.0), w],
        [w.conj(), Complex64::new(-half_split, 0.0)],
    ];
    let phase_hi = cis(-(mean + rho) * t);
    let phase_lo = cis(-(mean - rho) * t);
    for (i, row) in [1usize, 2].into_iter().enumerate() {
        for (j, col) in [1usize, 2].into_iter().enumerate() {
            let id = if i == j { ONE } else { ZERO };
            let (p_hi, p_lo) = if rho > 0.0 {
                ((id + k[i][j] / rho) * 0.5, (id - k[i][j] / rho) * 0.5)
            } else {
                (id, ZERO)
            };
            u.0[row][col] = phase_hi * p_hi + phase_lo * p_lo;
        }
    }
    u
}

fn dense_expm(h: &Operator4, t: f64) -> Operator4 {
    let m = h.to_nalgebra();
    let eig = m.symmetric_eigen();
    let phases = Matrix4::from_diagonal(&eig.eigenvalues.map(|lambda| cis(-lambda * t)));
    let v = eig.eigenvectors;
    Operator4::from_nalgebra(&(v * phases * v.adjoint()))
}
