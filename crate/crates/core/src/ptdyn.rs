//! PT-symmetric non-Hermitian evolution acting on qubit a.
//!
//! `H = [[i f sinφ, f], [f, −i f sinφ]]` has eigenvalues `±f cosφ`, real in the
//! unbroken phase `|φ| < π/2`. The evolved state is renormalized by its trace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{kron, CMat, CMat2, CMat4, DensityMatrix, C64, I};
use crate::tolerances as tol;
use crate::xymodel::ThermalElements;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PTParams {
    pub f: f64,
    pub phi: f64,
    pub t: f64,
}

fn check_phase(phi: f64) -> Result<()> {
    if phi.is_finite() && phi.abs() < std::f64::consts::FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::BrokenPhase(phi))
    }
}

impl PTParams {
    pub fn new(f: f64, phi: f64, t: f64) -> Result<Self> {
        check_phase(phi)?;
        if !(f > 0.0) || !f.is_finite() {
            return Err(Error::InvalidConfig(format!("f must be positive, got {f}")));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidConfig(format!("t must be non-negative, got {t}")));
        }
        Ok(PTParams { f, phi, t })
    }

    pub fn with_time(&self, t: f64) -> Result<Self> {
        PTParams::new(self.f, self.phi, t)
    }

    /// `ψ = f t cosφ`
    pub fn psi(&self) -> f64 {
        self.f * self.t * self.phi.cos()
    }

    /// Period of the normalized evolved state, `π/(f cosφ)`.
    pub fn period(&self) -> f64 {
        period(self.f, self.phi)
    }
}

pub fn period(f: f64, phi: f64) -> f64 {
    std::f64::consts::PI / (f * phi.cos())
}

pub fn pt_hamiltonian(f: f64, phi: f64) -> Result<CMat2> {
    check_phase(phi)?;
    let d = I * (f * phi.sin());
    let o = C64::new(f, 0.0);
    Ok(CMat([[d, o], [o, -d]]))
}

/// `U(t) = e^{−iHt} = (1/cosφ) [[cos(ψ−φ), −i sinψ], [−i sinψ, cos(ψ+φ)]]`
pub fn evolution_operator(p: &PTParams) -> Result<CMat2> {
    check_phase(p.phi)?;
    let psi = p.psi();
    let sec = 1.0 / p.phi.cos();
    let off = -I * (psi.sin() * sec);
    Ok(CMat([
        [C64::new((psi - p.phi).cos() * sec, 0.0), off],
        [off, C64::new((psi + p.phi).cos() * sec, 0.0)],
    ]))
}

#[derive(Clone, Copy, Debug)]
pub struct EvolvedState {
    pub state: DensityMatrix,
    /// Trace of `(U⊗I) ρ (U†⊗I)` before normalization.
    pub denominator: f64,
    /// Closed-form denominator, `cosφ · denominator`, in the units of the input state.
    pub m1: f64,
}

pub fn evolve_state(rho: &DensityMatrix, p: &PTParams) -> Result<EvolvedState> {
    let u = kron(&evolution_operator(p)?, &CMat2::identity());
    let raw = u * *rho.matrix() * u.adjoint();
    let denominator = raw.trace().re;
    if !(denominator >= tol::PT_MIN_NORMALIZATION) {
        return Err(Error::DegenerateNormalization(denominator));
    }
    let state = DensityMatrix::new(raw.scale_re(1.0 / denominator))?;
    Ok(EvolvedState {
        state,
        denominator,
        m1: denominator * p.phi.cos(),
    })
}

/// Independent upper-triangle entries of the closed-form evolved matrix (0-based).
pub const CLOSED_FORM_ENTRIES: [(usize, usize); 10] = [
    (0, 0),
    (0, 2),
    (2, 2),
    (1, 1),
    (1, 3),
    (3, 3),
    (0, 1),
    (0, 3),
    (1, 2),
    (2, 3),
];

struct Trig {
    sec: f64,
    tan: f64,
    sin_psi: f64,
    cos_psi: f64,
    cm: f64,
    cp: f64,
}

impl Trig {
    fn new(p: &PTParams) -> Self {
        let psi = p.psi();
        Trig {
            sec: 1.0 / p.phi.cos(),
            tan: p.phi.tan(),
            sin_psi: psi.sin(),
            cos_psi: psi.cos(),
            // cos(φ−ψ), cos(φ+ψ)
            cm: (p.phi - psi).cos(),
            cp: (p.phi + psi).cos(),
        }
    }
}

/// Entry `(row, col)` of the unnormalized evolved matrix in its printed form.
/// `ρ'₁₂` is written with `cot ψ` and is NaN at ψ = 0.
pub fn printed_entry(e: &ThermalElements, p: &PTParams, row: usize, col: usize) -> C64 {
    let g = Trig::new(p);
    let (mm, mp, k, w, n) = (e.mu_minus, e.mu_plus, e.kappa, e.omega, e.nu);
    let s2 = g.sin_psi * g.sin_psi;
    match (row, col) {
        (0, 0) => C64::new(g.sec * (mm * g.cm * g.cm + k * s2), 0.0),
        (0, 2) => I * (g.sec * g.sin_psi * (mm * g.cm - k * g.cp)),
        (2, 2) => C64::new(g.sec * (mm * s2 + k * g.cp * g.cp), 0.0),
        (1, 1) => C64::new(g.sec * (k * g.cm * g.cm + mp * s2), 0.0),
        (1, 3) => I * (g.sec * g.sin_psi * (k * g.cm - mp * g.cp)),
        (3, 3) => C64::new(g.sec * (k * s2 + mp * g.cp * g.cp), 0.0),
        (0, 1) => -I * (s2 * (w - n) * (g.tan + g.cos_psi / g.sin_psi)),
        (0, 3) => C64::new(g.sec * (w * s2 + n * g.cm * g.cp), 0.0),
        (1, 2) => C64::new(g.sec * (w * g.cm * g.cp + n * s2), 0.0),
        (2, 3) => I * (g.sec * g.sin_psi * (w - n) * g.cp),
        _ => panic!("({row}, {col}) is not an independent entry"),
    }
}

/// Printed common denominator `M1`.
pub fn printed_m1(e: &ThermalElements, p: &PTParams) -> f64 {
    let psi = p.psi();
    let (mm, mp, k) = (e.mu_minus, e.mu_plus, e.kappa);
    (mm + 2.0 * k + mp) / p.phi.cos()
        - p.phi.tan() * ((mm + k) * (p.phi - 2.0 * psi).sin() + (k + mp) * (p.phi + 2.0 * psi).sin())
}

/// Entry `(row, col)` in a form that is regular for every ψ. Only `ρ'₁₂`
/// differs from the printed form: `sin²ψ (tanφ + cotψ) = sinψ cos(ψ−φ) secφ`.
pub fn regular_entry(e: &ThermalElements, p: &PTParams, row: usize, col: usize) -> C64 {
    if (row, col) == (0, 1) {
        let g = Trig::new(p);
        return I * (g.sec * g.sin_psi * g.cm * (e.nu - e.omega));
    }
    printed_entry(e, p, row, col)
}

pub const CORRECTED_RHO12: &str = "rho'_12 = i sec(phi) sin(psi) cos(phi - psi) (nu - omega)";

/// Closed-form evolved matrix before division by `M1`.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormState {
    pub entries: CMat4,
    pub m1: f64,
}

impl ClosedFormState {
    pub fn normalized(&self) -> CMat4 {
        self.entries.scale_re(1.0 / self.m1)
    }
}

fn assemble(entry: impl Fn(usize, usize) -> C64) -> CMat4 {
    let mut m = CMat4::zeros();
    for (i, j) in CLOSED_FORM_ENTRIES {
        let v = entry(i, j);
        m[(i, j)] = v;
        m[(j, i)] = v.conj();
    }
    m
}

/// Closed-form evolved thermal state built from the thermal elements.
pub fn closed_form_state(e: &ThermalElements, p: &PTParams) -> Result<ClosedFormState> {
    check_phase(p.phi)?;
    Ok(ClosedFormState {
        entries: assemble(|i, j| regular_entry(e, p, i, j)),
        m1: printed_m1(e, p),
    })
}

/// The closed form exactly as printed, including the `cot ψ` entry.
pub fn printed_closed_form_state(e: &ThermalElements, p: &PTParams) -> Result<ClosedFormState> {
    check_phase(p.phi)?;
    Ok(ClosedFormState {
        entries: assemble(|i, j| printed_entry(e, p, i, j)),
        m1: printed_m1(e, p),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    /// The printed form matches the numerical evolution.
    Confirmed,
    /// The printed form fails somewhere; the documented regular form matches.
    Corrected,
    /// Neither form matches.
    Mismatch,
}

/// Per-entry comparison of the closed form against numerical evolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryAudit {
    pub entry: String,
    pub status: EntryStatus,
    /// Max deviation of the printed form (infinite if it ever evaluates to NaN).
    pub printed_deviation: f64,
    pub regular_deviation: f64,
    pub corrected_form: Option<String>,
}

/// Compares every closed-form entry and `M1` with the numerically evolved
/// state over `cases`. Deviations are measured on the normalized matrices.
pub fn audit_closed_form(cases: &[(ThermalElements, PTParams)], tolerance: f64) -> Result<Vec<EntryAudit>> {
    let mut printed_dev = [0.0f64; 10];
    let mut regular_dev = [0.0f64; 10];
    let mut m1_dev = 0.0f64;
    for (e, p) in cases {
        let ne = e.normalized();
        let rho = DensityMatrix::new(ne.unnormalized())?;
        let evolved = evolve_state(&rho, p)?;
        let reference = evolved.state.matrix();
        let m1 = printed_m1(&ne, p);
        m1_dev = m1_dev.max(deviation(C64::new(m1, 0.0), C64::new(evolved.m1, 0.0)));
        for (k, &(i, j)) in CLOSED_FORM_ENTRIES.iter().enumerate() {
            printed_dev[k] = printed_dev[k].max(deviation(printed_entry(&ne, p, i, j) / m1, reference[(i, j)]));
            regular_dev[k] = regular_dev[k].max(deviation(regular_entry(&ne, p, i, j) / m1, reference[(i, j)]));
        }
    }
    let classify = |printed: f64, regular: f64| {
        if printed <= tolerance {
            EntryStatus::Confirmed
        } else if regular <= tolerance {
            EntryStatus::Corrected
        } else {
            EntryStatus::Mismatch
        }
    };
    let mut out: Vec<EntryAudit> = CLOSED_FORM_ENTRIES
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| {
            let status = classify(printed_dev[k], regular_dev[k]);
            EntryAudit {
                entry: format!("rho'_{}{}", i + 1, j + 1),
                status,
                printed_deviation: printed_dev[k],
                regular_deviation: regular_dev[k],
                corrected_form: (status == EntryStatus::Corrected && (i, j) == (0, 1))
                    .then(|| CORRECTED_RHO12.to_string()),
            }
        })
        .collect();
    out.push(EntryAudit {
        entry: "M1".into(),
        status: classify(m1_dev, m1_dev),
        printed_deviation: m1_dev,
        regular_deviation: m1_dev,
        corrected_form: None,
    });
    Ok(out)
}

fn deviation(a: C64, b: C64) -> f64 {
    let d = (a - b).norm();
    if d.is_nan() {
        f64::INFINITY
    } else {
        d
    }
}
