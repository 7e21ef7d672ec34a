//! Two-spin Heisenberg XY model in a transverse field and its Gibbs state.
//!
//! Basis ordering is {|00>, |01>, |10>, |11>} throughout, k_B = 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{hermitian_eig, pauli_pair, CMat, CMat4, DensityMatrix, C64, ZERO};

/// Below this value of `β√η` the ratio `sinh(β√η)/√η` is evaluated by its series.
const SINHC_SERIES_CUTOFF: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XYParams {
    /// Exchange coupling.
    pub j: f64,
    /// In-plane anisotropy.
    pub gamma: f64,
    /// Field along z.
    pub b: f64,
}

impl XYParams {
    pub fn new(j: f64, gamma: f64, b: f64) -> Self {
        XYParams { j, gamma, b }
    }

    /// `η = B² + (Jγ)²`
    pub fn eta(&self) -> f64 {
        self.b * self.b + (self.j * self.gamma).powi(2)
    }

    pub fn sqrt_eta(&self) -> f64 {
        self.b.hypot(self.j * self.gamma)
    }

    /// `N± = [(B ± √η)² + (Jγ)²]^(-1/2)`; infinite when the bracket vanishes.
    pub fn normalizers(&self) -> (f64, f64) {
        let s = self.sqrt_eta();
        let jg2 = (self.j * self.gamma).powi(2);
        (
            ((self.b + s).powi(2) + jg2).sqrt().recip(),
            ((self.b - s).powi(2) + jg2).sqrt().recip(),
        )
    }
}

impl Default for XYParams {
    fn default() -> Self {
        XYParams::new(4.5, 0.05, 1.5)
    }
}

/// Entries of `Z ρ(T)` and the partition function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalElements {
    pub mu_minus: f64,
    pub mu_plus: f64,
    pub kappa: f64,
    pub omega: f64,
    pub nu: f64,
    pub z: f64,
    pub beta: f64,
}

impl ThermalElements {
    /// The matrix `Z ρ(T)`.
    pub fn unnormalized(&self) -> CMat4 {
        CMat4::from_real([
            [self.mu_minus, 0.0, 0.0, self.nu],
            [0.0, self.kappa, self.omega, 0.0],
            [0.0, self.omega, self.kappa, 0.0],
            [self.nu, 0.0, 0.0, self.mu_plus],
        ])
    }

    /// The same elements divided by `Z`.
    pub fn normalized(&self) -> ThermalElements {
        let z = self.z;
        ThermalElements {
            mu_minus: self.mu_minus / z,
            mu_plus: self.mu_plus / z,
            kappa: self.kappa / z,
            omega: self.omega / z,
            nu: self.nu / z,
            z: 1.0,
            beta: self.beta,
        }
    }
}

/// `H = ½[J((1+γ)σx⊗σx + (1−γ)σy⊗σy) + B(σz⊗I + I⊗σz)]`
pub fn build_hamiltonian(p: &XYParams) -> CMat4 {
    let xx = pauli_pair(1, 1).scale_re(p.j * (1.0 + p.gamma));
    let yy = pauli_pair(2, 2).scale_re(p.j * (1.0 - p.gamma));
    let zeeman = (pauli_pair(3, 0) + pauli_pair(0, 3)).scale_re(p.b);
    (xx + yy + zeeman).scale_re(0.5)
}

/// Closed-form eigenpairs `(E, |E>)` ordered as `+J, −J, +√η, −√η`.
pub fn spectrum(p: &XYParams) -> [(f64, [C64; 4]); 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| C64::new(x, 0.0);
    let s = p.sqrt_eta();
    let jg = p.j * p.gamma;
    // Eigenvectors of [[B, Jγ], [Jγ, −B]] on {|00>, |11>}. The textbook form
    // (B ± √η, Jγ) vanishes when Jγ = 0 and B ∓ |B| = 0, so fall back to the
    // equivalent (Jγ, ±√η − B) whenever it has the larger norm.
    let block_vector = |sign: f64| -> [C64; 4] {
        let a = [p.b + sign * s, jg];
        let b = [jg, sign * s - p.b];
        let na = a[0].hypot(a[1]);
        let nb = b[0].hypot(b[1]);
        let (v, n) = if na >= nb { (a, na) } else { (b, nb) };
        if n == 0.0 {
            // η = 0: the block is zero and any basis diagonalizes it
            return if sign > 0.0 {
                [re(1.0), ZERO, ZERO, ZERO]
            } else {
                [ZERO, ZERO, ZERO, re(1.0)]
            };
        }
        [re(v[0] / n), ZERO, ZERO, re(v[1] / n)]
    };
    [
        (p.j, [ZERO, re(h), re(h), ZERO]),
        (-p.j, [ZERO, re(h), re(-h), ZERO]),
        (s, block_vector(1.0)),
        (-s, block_vector(-1.0)),
    ]
}

fn beta_of(temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::NonpositiveTemperature(temperature));
    }
    Ok(1.0 / temperature)
}

/// `cosh(x) e^{-shift}`
fn cosh_shifted(x: f64, shift: f64) -> f64 {
    0.5 * ((x - shift).exp() + (-x - shift).exp())
}

/// `sinh(x) e^{-shift}`
fn sinh_shifted(x: f64, shift: f64) -> f64 {
    0.5 * ((x - shift).exp() - (-x - shift).exp())
}

/// `sinh(x)/x · e^{-shift}`, regular at x = 0.
fn sinhc_shifted(x: f64, shift: f64) -> f64 {
    if x.abs() < SINHC_SERIES_CUTOFF {
        (1.0 + x * x / 6.0) * (-shift).exp()
    } else {
        sinh_shifted(x, shift) / x
    }
}

/// Thermal elements multiplied by `e^{-shift}`.
fn elements_shifted(p: &XYParams, beta: f64, shift: f64) -> ThermalElements {
    let s = p.sqrt_eta();
    let bs = beta * s;
    let ch = cosh_shifted(bs, shift);
    // (B/√η) sinh(β√η) = Bβ sinhc(β√η)
    let field_term = p.b * beta * sinhc_shifted(bs, shift);
    let kappa = cosh_shifted(p.j * beta, shift);
    ThermalElements {
        mu_minus: ch - field_term,
        mu_plus: ch + field_term,
        kappa,
        omega: -sinh_shifted(p.j * beta, shift),
        nu: -p.j * p.gamma * beta * sinhc_shifted(bs, shift),
        z: 2.0 * (ch + kappa),
        beta,
    }
}

/// Closed-form entries of `Z ρ(T)`.
pub fn thermal_elements(p: &XYParams, temperature: f64) -> Result<ThermalElements> {
    Ok(elements_shifted(p, beta_of(temperature)?, 0.0))
}

/// Thermal elements divided by `Z`, stable at low temperature.
pub fn thermal_elements_normalized(p: &XYParams, temperature: f64) -> Result<ThermalElements> {
    let beta = beta_of(temperature)?;
    let shift = beta * p.j.abs().max(p.sqrt_eta());
    Ok(elements_shifted(p, beta, shift).normalized())
}

/// Gibbs state assembled from the closed-form entries.
pub fn thermal_state(p: &XYParams, temperature: f64) -> Result<DensityMatrix> {
    let e = thermal_elements_normalized(p, temperature)?;
    DensityMatrix::new(e.unnormalized())
}

/// Gibbs state `Σ e^{−βE_k}|E_k><E_k| / Z` from a numerical diagonalization of `H`.
pub fn thermal_state_spectral(p: &XYParams, temperature: f64) -> Result<DensityMatrix> {
    let beta = beta_of(temperature)?;
    let eig = hermitian_eig(&build_hamiltonian(p))?;
    let ground = eig.values[0];
    let weights: Vec<f64> = eig.values.iter().map(|e| (-beta * (e - ground)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let mut m = CMat::zeros();
    for (k, w) in weights.iter().enumerate() {
        m = m + CMat4::outer(&eig.vectors[k]).scale_re(w / z);
    }
    DensityMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{BellState, ONE};
    use approx::assert_abs_diff_eq;

    #[test]
    fn zeeman_only() {
        let h = build_hamiltonian(&XYParams::new(0.0, 0.3, 1.0));
        assert!(h.max_abs_diff(&CMat4::diag([1.0, 0.0, 0.0, -1.0])) < 1e-15);
    }

    #[test]
    fn isotropic_xx_coupling() {
        let h = build_hamiltonian(&XYParams::new(1.0, 0.0, 0.0));
        let mut expected = CMat4::zeros();
        expected[(1, 2)] = ONE;
        expected[(2, 1)] = ONE;
        assert!(h.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn paper_parameters_spectrum() {
        let p = XYParams::default();
        let eig = hermitian_eig(&build_hamiltonian(&p)).unwrap();
        let s = (2.25f64 + 0.050625).sqrt();
        let expected = [-4.5, -s, s, 4.5];
        for (a, b) in eig.values.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(s, 1.516781, epsilon = 1e-6);
    }

    #[test]
    fn closed_form_eigenpairs() {
        for p in [
            XYParams::default(),
            XYParams::new(1.0, 1.0, 0.0),
            XYParams::new(-2.0, 0.0, 1.0),
            XYParams::new(2.0, 0.0, -1.0),
            XYParams::new(3.0, -0.7, 0.0),
            XYParams::new(0.0, 0.0, 0.0),
        ] {
            let h = build_hamiltonian(&p);
            let pairs = spectrum(&p);
            let sum: f64 = pairs.iter().map(|(e, _)| e).sum();
            assert_abs_diff_eq!(sum, 0.0, epsilon = 1e-14);
            for (e, v) in pairs {
                let hv = h.apply(&v);
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-14);
                for k in 0..4 {
                    assert!((hv[k] - v[k] * e).norm() < 1e-10, "{p:?} E={e}");
                }
            }
        }
    }

    #[test]
    fn ground_state_is_singlet() {
        let pairs = spectrum(&XYParams::default());
        let (e, v) = pairs[1];
        assert_eq!(e, -4.5);
        let singlet = BellState::PsiMinus.vector();
        for k in 0..4 {
            assert_abs_diff_eq!(v[k].re, singlet[k].re, epsilon = 1e-15);
        }
    }

    #[test]
    fn isotropic_zero_field_block() {
        let pairs = spectrum(&XYParams::new(1.0, 1.0, 0.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(pairs[2].0, 1.0);
        assert_eq!(pairs[3].0, -1.0);
        assert_abs_diff_eq!(pairs[2].1[0].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(pairs[2].1[3].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(pairs[3].1[0].re.abs(), h, epsilon = 1e-15);
        assert_abs_diff_eq!(pairs[3].1[0].re, -pairs[3].1[3].re, epsilon = 1e-15);
    }

    #[test]
    fn infinite_temperature_limit() {
        let e = thermal_elements(&XYParams::default(), 1e12).unwrap();
        assert_abs_diff_eq!(e.mu_minus, 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(e.mu_plus, 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(e.kappa, 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(e.omega, 0.0, epsilon = 1e-11);
        assert_abs_diff_eq!(e.nu, 0.0, epsilon = 1e-11);
        assert_abs_diff_eq!(e.z, 4.0, epsilon = 1e-11);
        let rho = thermal_state(&XYParams::default(), 1e12).unwrap();
        assert!(rho.matrix().max_abs_diff(&CMat4::identity().scale_re(0.25)) < 1e-10);
    }

    #[test]
    fn pure_field_elements() {
        let (b, t) = (0.8, 0.6);
        let beta = 1.0 / t;
        let e = thermal_elements(&XYParams::new(0.0, 0.05, b), t).unwrap();
        assert_abs_diff_eq!(e.mu_minus, (-beta * b).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(e.mu_plus, (beta * b).exp(), epsilon = 1e-12);
        assert_eq!(e.nu, 0.0);
        assert_eq!(e.omega, 0.0);
    }

    #[test]
    fn zero_eta_is_regular() {
        let e = thermal_elements(&XYParams::new(2.0, 0.0, 0.0), 0.5).unwrap();
        assert!(e.mu_minus.is_finite() && e.nu.is_finite());
        assert_abs_diff_eq!(e.mu_minus, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.mu_plus, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn singlet_limit_of_isotropic_chain() {
        let e = thermal_elements_normalized(&XYParams::new(4.5, 0.0, 0.0), 0.01).unwrap();
        assert_abs_diff_eq!(e.kappa, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(e.omega, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(e.mu_minus, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.mu_plus, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn element_identities() {
        let p = XYParams::default();
        for t in [0.3, 1.0, 5.0] {
            let e = thermal_elements(&p, t).unwrap();
            let s = p.sqrt_eta();
            assert_abs_diff_eq!(e.z, e.mu_minus + e.mu_plus + 2.0 * e.kappa, epsilon = 1e-12 * e.z);
            assert_abs_diff_eq!(
                e.z,
                2.0 * ((e.beta * s).cosh() + (p.j * e.beta).cosh()),
                epsilon = 1e-12 * e.z
            );
            assert!(e.kappa >= 1.0 && e.kappa >= e.omega.abs());
        }
    }

    #[test]
    fn rejects_nonpositive_temperature() {
        assert!(matches!(
            thermal_state(&XYParams::default(), 0.0),
            Err(Error::NonpositiveTemperature(_))
        ));
        assert!(thermal_elements(&XYParams::default(), -1.0).is_err());
    }

    #[test]
    fn x_shaped_sparsity() {
        let rho = thermal_state(&XYParams::new(-1.3, 0.4, 0.7), 0.9).unwrap();
        let m = rho.matrix();
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert_eq!(m[(i, j)], ZERO);
            assert_eq!(m[(j, i)], ZERO);
        }
    }

    #[test]
    fn ground_state_at_low_temperature() {
        let rho = thermal_state(&XYParams::default(), 0.01).unwrap();
        assert!(rho.matrix().max_abs_diff(&BellState::PsiMinus.projector()) < 1e-8);
    }
}
