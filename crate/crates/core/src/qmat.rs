//! Fixed-size complex matrices, density matrices and Pauli/Bloch utilities.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tolerances as tol;

pub type C64 = Complex<f64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Row-major `N x N` complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diag(values: [f64; N]) -> Self {
        Self::from_fn(|i, j| if i == j { C64::new(values[i], 0.0) } else { ZERO })
    }

    /// `|v><v|`
    pub fn outer(v: &[C64; N]) -> Self {
        Self::from_fn(|i, j| v[i] * v[j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// `max |m_ij - conj(m_ji)|`
    pub fn hermitian_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..N {
            for j in i..N {
                d = d.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        d
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..N {
            for j in 0..N {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Hilbert-Schmidt norm squared, `Tr(M M^dagger)`.
    pub fn hs_norm_sq(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Commutator `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }
}

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| (0..N).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.0[i][j])
    }
}

/// `A ⊗ B` in the basis {|00>, |01>, |10>, |11>}, first factor = qubit a.
pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    CMat4::from_fn(|i, j| a.0[i / 2][j / 2] * b.0[i % 2][j % 2])
}

/// Pauli matrices with `pauli(0)` the identity and 1, 2, 3 = x, y, z.
pub fn pauli(k: usize) -> CMat2 {
    match k {
        0 => CMat2::identity(),
        1 => CMat([[ZERO, ONE], [ONE, ZERO]]),
        2 => CMat([[ZERO, -I], [I, ZERO]]),
        3 => CMat([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// `σ_i ⊗ σ_j` with the same index convention as [`pauli`].
pub fn pauli_pair(i: usize, j: usize) -> CMat4 {
    kron(&pauli(i), &pauli(j))
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and
/// matching orthonormal eigenvectors (`vectors[k]` belongs to `values[k]`).
#[derive(Clone, Debug)]
pub struct Eigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: [[C64; N]; N],
}

impl<const N: usize> Eigen<N> {
    /// `Σ f(λ_k) |v_k><v_k|`
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMat<N> {
        let mut out = CMat::<N>::zeros();
        for k in 0..N {
            let w = f(self.values[k]);
            if w == 0.0 {
                continue;
            }
            out = out + CMat::outer(&self.vectors[k]).scale_re(w);
        }
        out
    }

    pub fn reconstruct(&self) -> CMat<N> {
        self.map(|x| x)
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver for Hermitian matrices.
pub fn hermitian_eig<const N: usize>(m: &CMat<N>) -> Result<Eigen<N>> {
    let defect = m.hermitian_defect();
    if defect > tol::EIG_HERMITIAN_INPUT || !m.is_finite() {
        return Err(Error::NonHermitianInput {
            defect,
            tolerance: tol::EIG_HERMITIAN_INPUT,
        });
    }
    Ok(jacobi(m))
}

fn jacobi<const N: usize>(m: &CMat<N>) -> Eigen<N> {
    // symmetrize so roundoff in the input cannot bias the rotation angles
    let mut a = CMat::<N>::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * 0.5);
    for i in 0..N {
        a.0[i][i].im = 0.0;
    }
    let mut v = CMat::<N>::identity();
    let scale = a.hs_norm_sq().sqrt();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..N {
            for q in p + 1..N {
                off += a.0[p][q].norm_sqr();
            }
        }
        if off.sqrt() <= f64::EPSILON * 1e-3 * scale || off == 0.0 {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let g = a.0[p][q].norm();
                if g == 0.0 {
                    continue;
                }
                let phase = a.0[p][q] / g;
                let theta = (a.0[q][q].re - a.0[p][p].re) / (2.0 * g);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = D P with D = diag(.., 1 at p, conj(phase) at q, ..)
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..N {
                    let akp = a.0[k][p];
                    let akq = a.0[k][q];
                    a.0[k][p] = akp * gpp + akq * gqp;
                    a.0[k][q] = akp * gpq + akq * gqq;
                    let vkp = v.0[k][p];
                    let vkq = v.0[k][q];
                    v.0[k][p] = vkp * gpp + vkq * gqp;
                    v.0[k][q] = vkp * gpq + vkq * gqq;
                }
                for k in 0..N {
                    let apk = a.0[p][k];
                    let aqk = a.0[q][k];
                    a.0[p][k] = gpp.conj() * apk + gqp.conj() * aqk;
                    a.0[q][k] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a.0[p][q] = ZERO;
                a.0[q][p] = ZERO;
                a.0[p][p].im = 0.0;
                a.0[q][q].im = 0.0;
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&x, &y| a.0[x][x].re.total_cmp(&a.0[y][y].re));
    Eigen {
        values: std::array::from_fn(|k| a.0[order[k]][order[k]].re),
        vectors: std::array::from_fn(|k| std::array::from_fn(|i| v.0[i][order[k]])),
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt<const N: usize>(m: &CMat<N>) -> Result<CMat<N>> {
    let eig = hermitian_eig(m)?;
    if eig.values[0] < tol::PSD_REJECT {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.values[0],
        });
    }
    Ok(eig.map(|x| x.max(0.0).sqrt()))
}

/// [`psd_sqrt`] with eigenvalues below `rel_cutoff` times the largest one set
/// to zero, so rank-deficient inputs keep their exact rank.
pub fn psd_sqrt_truncated<const N: usize>(m: &CMat<N>, rel_cutoff: f64) -> Result<CMat<N>> {
    let eig = hermitian_eig(m)?;
    if eig.values[0] < tol::PSD_REJECT {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.values[0],
        });
    }
    let floor = rel_cutoff * eig.values[N - 1].max(0.0);
    Ok(eig.map(|x| if x <= floor { 0.0 } else { x.sqrt() }))
}

/// Sum of singular values, `Tr sqrt(M^dagger M)`.
pub fn trace_norm<const N: usize>(m: &CMat<N>) -> f64 {
    let scale = m.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    if m.hermitian_defect() <= 1e-14 * scale {
        jacobi(m).values.iter().map(|x| x.abs()).sum()
    } else {
        jacobi(&(m.adjoint() * *m))
            .values
            .iter()
            .map(|x| x.max(0.0).sqrt())
            .sum()
    }
}

/// `Tr(M M^dagger)`
pub fn hs_norm_sq<const N: usize>(m: &CMat<N>) -> f64 {
    m.hs_norm_sq()
}

/// The four Bell states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellState {
    PsiMinus,
    PhiMinus,
    PhiPlus,
    PsiPlus,
}

impl BellState {
    pub fn vector(self) -> [C64; 4] {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match self {
            BellState::PsiMinus => [ZERO, h, -h, ZERO],
            BellState::PhiMinus => [h, ZERO, ZERO, -h],
            BellState::PhiPlus => [h, ZERO, ZERO, h],
            BellState::PsiPlus => [ZERO, h, h, ZERO],
        }
    }

    /// `|β><β|` with exact `±1/2` entries.
    pub fn projector(self) -> CMat4 {
        let (a, b, sign) = match self {
            BellState::PsiMinus => (1, 2, -1.0),
            BellState::PhiMinus => (0, 3, -1.0),
            BellState::PhiPlus => (0, 3, 1.0),
            BellState::PsiPlus => (1, 2, 1.0),
        };
        let mut m = CMat4::zeros();
        m[(a, a)] = C64::new(0.5, 0.0);
        m[(b, b)] = C64::new(0.5, 0.0);
        m[(a, b)] = C64::new(0.5 * sign, 0.0);
        m[(b, a)] = C64::new(0.5 * sign, 0.0);
        m
    }

    pub fn density(self) -> DensityMatrix {
        DensityMatrix::new(self.projector()).expect("Bell projector is a state")
    }
}

/// A validated two-qubit density matrix.
#[derive(Clone, Copy, Debug)]
pub struct DensityMatrix {
    mat: CMat4,
    hermitian_defect: f64,
    trace_defect: f64,
    min_eigenvalue: f64,
}

impl DensityMatrix {
    pub fn new(mat: CMat4) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::InvalidState("non-finite entries".into()));
        }
        let hermitian_defect = mat.hermitian_defect();
        if hermitian_defect > tol::STATE_HERMITIAN {
            return Err(Error::InvalidState(format!(
                "Hermiticity defect {hermitian_defect:.3e}"
            )));
        }
        let tr = mat.trace();
        let trace_defect = (tr - ONE).norm();
        if trace_defect > tol::STATE_TRACE {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let min_eigenvalue = jacobi(&mat).values[0];
        if min_eigenvalue < tol::STATE_MIN_EIGENVALUE {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eigenvalue:.3e}"
            )));
        }
        Ok(DensityMatrix {
            mat,
            hermitian_defect,
            trace_defect,
            min_eigenvalue,
        })
    }

    /// Rescales a Hermitian PSD matrix to unit trace before validating it.
    pub fn normalized(mat: CMat4) -> Result<Self> {
        let tr = mat.trace().re;
        if !(tr > 0.0) {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        Self::new(mat.scale_re(1.0 / tr))
    }

    pub fn from_pure(psi: &[C64; 4]) -> Self {
        let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v = psi.map(|z| z / n);
        DensityMatrix {
            mat: CMat4::outer(&v),
            hermitian_defect: 0.0,
            trace_defect: 0.0,
            min_eigenvalue: 0.0,
        }
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            mat: CMat4::identity().scale_re(0.25),
            hermitian_defect: 0.0,
            trace_defect: 0.0,
            min_eigenvalue: 0.25,
        }
    }

    pub fn matrix(&self) -> &CMat4 {
        &self.mat
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.hermitian_defect
    }

    pub fn trace_defect(&self) -> f64 {
        self.trace_defect
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    pub fn purity(&self) -> f64 {
        // Hermitian, so Tr ρ² = Σ |ρ_ij|²
        self.mat.hs_norm_sq()
    }
}

/// Local Bloch vectors and correlation matrix of a two-qubit state:
/// `x_i = Tr ρ(σ_i⊗I)`, `y_i = Tr ρ(I⊗σ_i)`, `r_ij = Tr ρ(σ_i⊗σ_j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochForm {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub r: [[f64; 3]; 3],
}

impl BlochForm {
    /// `(1/4)[I⊗I + Σ x_i σ_i⊗I + Σ y_i I⊗σ_i + Σ r_ij σ_i⊗σ_j]`
    pub fn reconstruct(&self) -> CMat4 {
        let mut m = CMat4::identity();
        for i in 0..3 {
            m = m + pauli_pair(i + 1, 0).scale_re(self.x[i]);
            m = m + pauli_pair(0, i + 1).scale_re(self.y[i]);
            for j in 0..3 {
                m = m + pauli_pair(i + 1, j + 1).scale_re(self.r[i][j]);
            }
        }
        m.scale_re(0.25)
    }

    pub fn x_norm(&self) -> f64 {
        norm3(&self.x)
    }

    /// `R R^t`
    pub fn rrt(&self) -> [[f64; 3]; 3] {
        mat3_mul(&self.r, &transpose3(&self.r))
    }

    /// `R^t R`
    pub fn rtr(&self) -> [[f64; 3]; 3] {
        mat3_mul(&transpose3(&self.r), &self.r)
    }

    /// Largest off-diagonal magnitude of R.
    pub fn r_offdiag(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    d = d.max(self.r[i][j].abs());
                }
            }
        }
        d
    }

    /// Diagonal of R (`c_i`).
    pub fn c(&self) -> [f64; 3] {
        [self.r[0][0], self.r[1][1], self.r[2][2]]
    }
}

fn expectation(m: &CMat4, op: &CMat4) -> f64 {
    (*m * *op).trace().re
}

pub fn bloch_decompose(rho: &DensityMatrix) -> BlochForm {
    bloch_of(rho.matrix())
}

/// Pauli-basis decomposition of any Hermitian 4x4 matrix.
pub fn bloch_of(m: &CMat4) -> BlochForm {
    BlochForm {
        x: std::array::from_fn(|i| expectation(m, &pauli_pair(i + 1, 0))),
        y: std::array::from_fn(|i| expectation(m, &pauli_pair(0, i + 1))),
        r: std::array::from_fn(|i| std::array::from_fn(|j| expectation(m, &pauli_pair(i + 1, j + 1)))),
    }
}

/// `(σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`
pub fn spin_flip(rho: &DensityMatrix) -> CMat4 {
    spin_flip_mat(rho.matrix())
}

pub fn spin_flip_mat(m: &CMat4) -> CMat4 {
    let yy = pauli_pair(2, 2);
    yy * m.conj() * yy
}

pub fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn transpose3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
}

pub fn mat3_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

/// Eigenvalues of a real symmetric 3x3 matrix, ascending.
pub fn sym3_eig(s: &[[f64; 3]; 3]) -> Result<[f64; 3]> {
    let mut defect: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            defect = defect.max((s[i][j] - s[j][i]).abs());
        }
    }
    if defect > tol::SYM3_SYMMETRY {
        return Err(Error::NonSymmetric { defect });
    }
    let m = CMat::<3>::from_fn(|i, j| C64::new(0.5 * (s[i][j] + s[j][i]), 0.0));
    Ok(jacobi(&m).values)
}
