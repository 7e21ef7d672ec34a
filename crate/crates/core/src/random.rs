//! Random states and unitaries for property checks and the validation suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qmat::{kron, CMat2, CMat4, DensityMatrix, C64, ZERO};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Full-rank mixed state `G G^dagger / Tr(G G^dagger)` with Ginibre `G`.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let g = CMat4::from_fn(|_, _| complex_gaussian(rng));
    let m = g * g.adjoint();
    DensityMatrix::normalized(m).expect("Ginibre state is valid")
}

pub fn pure_vector<R: Rng + ?Sized>(rng: &mut R) -> [C64; 4] {
    let v: [C64; 4] = std::array::from_fn(|_| complex_gaussian(rng));
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.map(|z| z / n)
}

/// Random X-state: nonzero entries on the diagonal and anti-diagonal only.
pub fn x_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let w: [f64; 4] = std::array::from_fn(|_| -rng.gen_range(f64::MIN_POSITIVE..1.0).ln());
    let s: f64 = w.iter().sum();
    let [a, b, c, d] = w.map(|x| x / s);
    let z = C64::from_polar((a * d).sqrt() * rng.gen::<f64>(), rng.gen_range(0.0..std::f64::consts::TAU));
    let v = C64::from_polar((b * c).sqrt() * rng.gen::<f64>(), rng.gen_range(0.0..std::f64::consts::TAU));
    let re = |x: f64| C64::new(x, 0.0);
    let m = crate::qmat::CMat([
        [re(a), ZERO, ZERO, z],
        [ZERO, re(b), v, ZERO],
        [ZERO, v.conj(), re(c), ZERO],
        [z.conj(), ZERO, ZERO, re(d)],
    ]);
    DensityMatrix::new(m).expect("X-state is valid")
}

/// X-state with vanishing local Bloch vector of qubit a.
pub fn x_state_unbiased<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    // ρ00 + ρ11 = ρ22 + ρ33 = 1/2
    let a = 0.5 * rng.gen::<f64>();
    let c = 0.5 * rng.gen::<f64>();
    let (b, d) = (0.5 - a, 0.5 - c);
    let z = C64::from_polar((a * d).sqrt() * rng.gen::<f64>(), rng.gen_range(0.0..std::f64::consts::TAU));
    let v = C64::from_polar((b * c).sqrt() * rng.gen::<f64>(), rng.gen_range(0.0..std::f64::consts::TAU));
    let re = |x: f64| C64::new(x, 0.0);
    let m = crate::qmat::CMat([
        [re(a), ZERO, ZERO, z],
        [ZERO, re(b), v, ZERO],
        [ZERO, v.conj(), re(c), ZERO],
        [z.conj(), ZERO, ZERO, re(d)],
    ]);
    DensityMatrix::new(m).expect("X-state is valid")
}

/// Haar-distributed single-qubit unitary.
pub fn unitary2<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    // Gram-Schmidt on a Ginibre matrix
    let c0 = [complex_gaussian(rng), complex_gaussian(rng)];
    let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
    let e0 = [c0[0] / n0, c0[1] / n0];
    let c1 = [complex_gaussian(rng), complex_gaussian(rng)];
    let proj = e0[0].conj() * c1[0] + e0[1].conj() * c1[1];
    let d = [c1[0] - e0[0] * proj, c1[1] - e0[1] * proj];
    let n1 = (d[0].norm_sqr() + d[1].norm_sqr()).sqrt();
    let e1 = [d[0] / n1, d[1] / n1];
    crate::qmat::CMat([[e0[0], e1[0]], [e0[1], e1[1]]])
}

/// `(U_a⊗U_b) ρ (U_a⊗U_b)^dagger`
pub fn local_unitary_conjugate(rho: &DensityMatrix, ua: &CMat2, ub: &CMat2) -> DensityMatrix {
    let u = kron(ua, ub);
    DensityMatrix::normalized(u * *rho.matrix() * u.adjoint()).expect("unitary conjugation preserves states")
}

/// Random Hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R) -> CMat4 {
    let g = CMat4::from_fn(|_, _| complex_gaussian(rng));
    (g + g.adjoint()).scale_re(0.5)
}

/// Random PSD matrix (not normalized).
pub fn psd<R: Rng + ?Sized>(rng: &mut R) -> CMat4 {
    let g = CMat4::from_fn(|_, _| complex_gaussian(rng));
    g * g.adjoint()
}
