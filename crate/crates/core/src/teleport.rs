//! Two-qubit teleportation through a mixed channel in the Pauli-channel
//! representation, and the Uhlmann fidelity of the output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{hermitian_eig, pauli_pair, psd_sqrt_truncated, BellState, CMat4, DensityMatrix, C64, ZERO};
use crate::tolerances as tol;

/// Bell projectors in channel order: `E0 = |Ψ−>`, `E1 = |Φ−>`, `E2 = |Φ+>`, `E3 = |Ψ+>`.
/// Index m of `E^m` pairs with Pauli `σ_m` in the output sum, so the order is fixed.
pub const BELL_ORDER: [BellState; 4] = [
    BellState::PsiMinus,
    BellState::PhiMinus,
    BellState::PhiPlus,
    BellState::PsiPlus,
];

#[derive(Clone, Copy, Debug)]
pub struct BellBasis {
    pub projectors: [CMat4; 4],
}

impl BellBasis {
    pub fn new() -> Self {
        BellBasis {
            projectors: BELL_ORDER.map(BellState::projector),
        }
    }
}

impl Default for BellBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// `p_mn = Tr(E^m ρ) Tr(E^n ρ)`
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelWeights {
    /// Bell-diagonal weights `Tr(E^m ρ)`.
    pub bell: [f64; 4],
    pub p: [[f64; 4]; 4],
}

impl ChannelWeights {
    pub fn total(&self) -> f64 {
        self.p.iter().flatten().sum()
    }
}

pub fn channel_weights(channel: &DensityMatrix) -> ChannelWeights {
    let basis = BellBasis::new();
    let bell = basis
        .projectors
        .map(|e| (e * *channel.matrix()).trace().re.max(0.0));
    ChannelWeights {
        bell,
        p: std::array::from_fn(|m| std::array::from_fn(|n| bell[m] * bell[n])),
    }
}

/// `ρ_out = Σ_mn p_mn (σ_m⊗σ_n) ρ_in (σ_m⊗σ_n)`
pub fn teleport_output(input: &DensityMatrix, channel: &DensityMatrix) -> Result<DensityMatrix> {
    let w = channel_weights(channel);
    let mut out = CMat4::zeros();
    for m in 0..4 {
        for n in 0..4 {
            if w.p[m][n] == 0.0 {
                continue;
            }
            let s = pauli_pair(m, n);
            out = out + (s * *input.matrix() * s).scale_re(w.p[m][n]);
        }
    }
    DensityMatrix::new(out)
}

/// Uhlmann fidelity `(Tr √(√ρ σ √ρ))²`.
///
/// Both square roots drop eigenvalues below [`tol::FIDELITY_RANK_CUTOFF`]
/// relative to the largest; otherwise roundoff in the null space of a pure
/// state would contribute `O(√ε)`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let root = psd_sqrt_truncated(rho.matrix(), tol::FIDELITY_RANK_CUTOFF).expect("validated state is PSD");
    let inner = root * *sigma.matrix() * root;
    let eig = hermitian_eig(&inner).expect("√ρ σ √ρ is Hermitian");
    let floor = tol::FIDELITY_RANK_CUTOFF * eig.values[3].max(0.0);
    let tr: f64 = eig.values.iter().filter(|&&x| x > floor).map(|x| x.sqrt()).sum();
    (tr * tr).min(1.0)
}

/// Pure input state `|Υ>` for teleportation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputState {
    amplitudes: [C64; 4],
}

impl InputState {
    /// Normalized `a|00> + b e^{i·phase}|11>`.
    pub fn schmidt(a: f64, b: f64, phase: f64) -> Result<Self> {
        let n = a.hypot(b);
        if !(n > 0.0) || !n.is_finite() || !phase.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "input state amplitudes ({a}, {b}) cannot be normalized"
            )));
        }
        Ok(InputState {
            amplitudes: [
                C64::new(a / n, 0.0),
                ZERO,
                ZERO,
                C64::from_polar(b / n, phase),
            ],
        })
    }

    pub fn from_vector(v: [C64; 4]) -> Result<Self> {
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidConfig("zero input state".into()));
        }
        Ok(InputState {
            amplitudes: v.map(|z| z / n),
        })
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.amplitudes
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(&self.amplitudes)
    }

    /// `<Υ|ρ|Υ>`
    pub fn overlap(&self, rho: &DensityMatrix) -> f64 {
        let v = rho.matrix().apply(&self.amplitudes);
        self.amplitudes
            .iter()
            .zip(v.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .re
    }
}

impl Default for InputState {
    /// `(|00> + |11>)/√2`
    fn default() -> Self {
        InputState {
            amplitudes: BellState::PhiPlus.vector(),
        }
    }
}

/// Teleportation fidelity through `channel`, computed with the general
/// Uhlmann formula and checked against the pure-input overlap.
pub fn teleport_fidelity(channel: &DensityMatrix, input: &InputState) -> Result<f64> {
    let rho_in = input.density();
    let out = teleport_output(&rho_in, channel)?;
    let general = fidelity(&rho_in, &out);
    let shortcut = input.overlap(&out);
    let mismatch = (general - shortcut).abs();
    if mismatch > tol::FIDELITY_ROUTE_MISMATCH {
        return Err(Error::RouteMismatch(mismatch));
    }
    Ok(general)
}
