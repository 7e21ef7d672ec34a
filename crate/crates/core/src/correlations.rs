//! Concurrence, maximal Bell function and the two measurement-induced
//! nonlocality (MIN) quantifiers, each with a closed form and a brute-force
//! route over local projective measurements on qubit a.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{
    bloch_decompose, hermitian_eig, hs_norm_sq, kron, mat3_mul, norm3, pauli, psd_sqrt, spin_flip,
    sym3_eig, trace_norm, transpose3, BlochForm, CMat2, CMat4, DensityMatrix,
};
use crate::tolerances as tol;

/// Bloch axis of a rank-one projective measurement on qubit a.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementDirection([f64; 3]);

impl MeasurementDirection {
    /// Normalizes `v`; `None` for the zero vector.
    pub fn new(v: [f64; 3]) -> Option<Self> {
        let n = norm3(&v);
        (n > 0.0 && n.is_finite()).then(|| MeasurementDirection(v.map(|x| x / n)))
    }

    pub fn axis(&self) -> [f64; 3] {
        self.0
    }

    /// The two projectors `(I ± n·σ)/2` lifted to `P ⊗ I`.
    fn projectors(&self) -> [CMat4; 2] {
        let ns = (1..=3).fold(CMat2::zeros(), |acc, k| acc + pauli(k).scale_re(self.0[k - 1]));
        let id = CMat2::identity();
        [
            kron(&(id + ns).scale_re(0.5), &id),
            kron(&(id - ns).scale_re(0.5), &id),
        ]
    }

    /// `Π(ρ) = Σ_± (P_±⊗I) ρ (P_±⊗I)`
    pub fn measure(&self, rho: &CMat4) -> CMat4 {
        let [p, m] = self.projectors();
        p * *rho * p + m * *rho * m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinMetric {
    /// Squared Hilbert-Schmidt norm.
    HilbertSchmidt,
    /// Trace norm.
    Trace,
}

/// Direction search used by [`min_oracle`] when the local Bloch vector vanishes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleGrid {
    pub points: usize,
    pub angle_resolution: f64,
    /// Number of best grid points that get a local refinement.
    pub refine_candidates: usize,
}

impl Default for OracleGrid {
    fn default() -> Self {
        OracleGrid {
            points: tol::ORACLE_GRID_POINTS,
            angle_resolution: tol::ORACLE_ANGLE_RESOLUTION,
            refine_candidates: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub concurrence: f64,
    pub bell_max: f64,
    pub min_hs: f64,
    pub min_trace: f64,
}

pub fn correlation_report(rho: &DensityMatrix) -> CorrelationReport {
    CorrelationReport {
        concurrence: concurrence(rho),
        bell_max: bell_max(rho),
        min_hs: min_hs(rho),
        min_trace: min_trace(rho),
    }
}

/// Wootters concurrence `max{0, λ1 − λ2 − λ3 − λ4}`, λ the square roots of the
/// eigenvalues of `√ρ ρ̃ √ρ` in decreasing order.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let root = psd_sqrt(rho.matrix()).expect("validated state is PSD");
    let lambda = root * spin_flip(rho) * root;
    let eig = hermitian_eig(&lambda).expect("√ρ ρ̃ √ρ is Hermitian");
    let mut l = eig.values.map(|x| if x < tol::CONCURRENCE_CLAMP { 0.0 } else { x.sqrt() });
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

fn x_state_offdiag(m: &CMat4) -> f64 {
    [(0, 1), (0, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(i, j)| m[(i, j)].norm().max(m[(j, i)].norm()))
        .fold(0.0, f64::max)
}

/// `2 max{0, |ρ14| − √(ρ22 ρ33), |ρ23| − √(ρ11 ρ44)}` for X-shaped states.
pub fn concurrence_x_state(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    let offdiag = x_state_offdiag(m);
    if offdiag > tol::X_STATE_OFFDIAG {
        return Err(Error::NonXState { offdiag });
    }
    let d = |k: usize| m[(k, k)].re.max(0.0);
    let a = m[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    let b = m[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    Ok(2.0 * a.max(b).max(0.0))
}

/// `2 √(R_i + R_j)` with `R_i + R_j` the two largest eigenvalues of `R^t R`.
pub fn bell_max(rho: &DensityMatrix) -> f64 {
    bell_max_of(&bloch_decompose(rho))
}

pub fn bell_max_of(form: &BlochForm) -> f64 {
    let e = sym3_eig(&form.rtr()).expect("R^t R is symmetric");
    2.0 * (e[1] + e[2]).max(0.0).sqrt()
}

/// Hilbert-Schmidt MIN: the largest squared HS distance between ρ and a
/// locally invariant measurement of qubit a.
pub fn min_hs(rho: &DensityMatrix) -> f64 {
    min_hs_of(&bloch_decompose(rho))
}

pub fn min_hs_of(form: &BlochForm) -> f64 {
    let rrt = form.rrt();
    let tr = rrt[0][0] + rrt[1][1] + rrt[2][2];
    let xn = form.x_norm();
    let removed = if xn > tol::BLOCH_ZERO {
        let x = form.x;
        let mut q = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                q += x[i] * rrt[i][j] * x[j];
            }
        }
        q / (xn * xn)
    } else {
        sym3_eig(&rrt).expect("R R^t is symmetric")[0]
    };
    0.25 * (tr - removed).max(0.0)
}

/// Trace-norm MIN.
pub fn min_trace(rho: &DensityMatrix) -> f64 {
    min_trace_closed_of(&bloch_decompose(rho))
}

pub fn min_trace_closed(rho: &DensityMatrix) -> f64 {
    min_trace_closed_of(&bloch_decompose(rho))
}

/// With `x ≠ 0` the only admissible measurement is along `x̂` and
/// `ρ − Π(ρ) = ¼ Σ A_ij σi⊗σj` with `A = (I − x̂x̂ᵗ) R` of rank two, whose trace
/// norm is `σ_max(A)`. For diagonal `R` this equals `(√χ₊ + √χ₋)/(2‖x‖)`
/// (see [`min_trace_closed_literal`]). With `x = 0` the maximum over axes is
/// `σ_max(R)`.
pub fn min_trace_closed_of(form: &BlochForm) -> f64 {
    let xn = form.x_norm();
    let r = form.r;
    let a = if xn > tol::BLOCH_ZERO {
        let n = form.x.map(|v| v / xn);
        let nr: [f64; 3] = std::array::from_fn(|j| (0..3).map(|i| n[i] * r[i][j]).sum());
        std::array::from_fn(|i| std::array::from_fn(|j| r[i][j] - n[i] * nr[j]))
    } else {
        r
    };
    let ata = mat3_mul(&transpose3(&a), &a);
    sym3_eig(&ata).expect("AᵗA is symmetric")[2].max(0.0).sqrt()
}

/// `(√χ₊ + √χ₋)/(2‖x‖)` with `χ± = α ± 2√β ‖x‖` evaluated as written. It
/// cancels catastrophically when `‖x‖` is tiny; kept as a cross-check.
pub fn min_trace_closed_literal(form: &BlochForm) -> Result<f64> {
    let offdiag = form.r_offdiag();
    if offdiag > tol::X_STATE_OFFDIAG {
        return Err(Error::NonXState { offdiag });
    }
    let c = form.c();
    let xn = form.x_norm();
    if xn <= tol::BLOCH_ZERO {
        return Ok(c.iter().map(|v| v.abs()).fold(0.0, f64::max));
    }
    let x = form.x;
    let c2 = c.map(|v| v * v);
    let x2 = x.map(|v| v * v);
    let c_norm_sq: f64 = c2.iter().sum();
    let alpha = c_norm_sq * xn * xn - (0..3).map(|i| c2[i] * x2[i]).sum::<f64>();
    let beta = x2[0] * c2[1] * c2[2] + x2[1] * c2[2] * c2[0] + x2[2] * c2[0] * c2[1];
    let cross = 2.0 * beta.sqrt() * xn;
    let chi_plus = (alpha + cross).max(0.0);
    let chi_minus = (alpha - cross).max(0.0);
    Ok((chi_plus.sqrt() + chi_minus.sqrt()) / (2.0 * xn))
}

/// `‖ρ − Π_n(ρ)‖` in the chosen metric.
pub fn measurement_disturbance(rho: &CMat4, n: &MeasurementDirection, metric: MinMetric) -> f64 {
    let diff = *rho - n.measure(rho);
    match metric {
        MinMetric::HilbertSchmidt => hs_norm_sq(&diff),
        MinMetric::Trace => trace_norm(&diff),
    }
}

/// Brute-force MIN straight from the definition.
///
/// With a nonzero local Bloch vector the only measurement leaving the marginal
/// of qubit a unchanged is along that vector. Otherwise every axis is
/// admissible and the disturbance is maximized over a Fibonacci sphere
/// followed by golden-section refinement of the best candidates.
pub fn min_oracle(rho: &DensityMatrix, metric: MinMetric, grid: &OracleGrid) -> f64 {
    let m = rho.matrix();
    let x = bloch_decompose(rho).x;
    if norm3(&x) > tol::BLOCH_ZERO {
        let n = MeasurementDirection::new(x).expect("nonzero Bloch vector");
        return measurement_disturbance(m, &n, metric);
    }

    let f = |v: [f64; 3]| match MeasurementDirection::new(v) {
        Some(n) => measurement_disturbance(m, &n, metric),
        None => f64::NEG_INFINITY,
    };
    let points = fibonacci_sphere(grid.points.max(1));
    let values = evaluate_all(&points, &f);

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let spacing = (4.0 * std::f64::consts::PI / points.len() as f64).sqrt();

    let mut best = values[order[0]];
    for &k in order.iter().take(grid.refine_candidates.max(1)) {
        best = best.max(refine(points[k], spacing, grid.angle_resolution, &f));
    }
    best
}

#[cfg(feature = "parallel")]
fn evaluate_all(points: &[[f64; 3]], f: &(impl Fn([f64; 3]) -> f64 + Sync)) -> Vec<f64> {
    use rayon::prelude::*;
    points.par_iter().map(|&p| f(p)).collect()
}

#[cfg(not(feature = "parallel"))]
fn evaluate_all(points: &[[f64; 3]], f: &impl Fn([f64; 3]) -> f64) -> Vec<f64> {
    points.iter().map(|&p| f(p)).collect()
}

/// Quasi-uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * k as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Coordinate-wise golden-section ascent in spherical coordinates of a frame
/// whose equator passes through `start`, so the search never sits on a pole.
fn refine(start: [f64; 3], spacing: f64, resolution: f64, f: &impl Fn([f64; 3]) -> f64) -> f64 {
    let (u, v) = tangent_frame(&start);
    let point = |theta: f64, phi: f64| -> [f64; 3] {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        std::array::from_fn(|i| st * cp * start[i] + st * sp * u[i] + ct * v[i])
    };
    let half_width = 2.0 * spacing;
    let (mut theta, mut phi) = (std::f64::consts::FRAC_PI_2, 0.0);
    let mut best = f(start);
    for _ in 0..200 {
        let (new_phi, v_phi) = golden_max(|p| f(point(theta, p)), phi - half_width, phi + half_width, resolution * 0.1);
        let (new_theta, v_theta) =
            golden_max(|t| f(point(t, new_phi)), theta - half_width, theta + half_width, resolution * 0.1);
        let moved = (new_phi - phi).abs().max((new_theta - theta).abs());
        if v_phi.max(v_theta) >= best {
            phi = new_phi;
            theta = new_theta;
        }
        best = best.max(v_phi).max(v_theta);
        if moved < resolution {
            break;
        }
    }
    best
}

fn tangent_frame(n: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let dot: f64 = (0..3).map(|i| helper[i] * n[i]).sum();
    let u0: [f64; 3] = std::array::from_fn(|i| helper[i] - dot * n[i]);
    let un = norm3(&u0);
    let u = u0.map(|x| x / un);
    let v = [
        n[1] * u[2] - n[2] * u[1],
        n[2] * u[0] - n[0] * u[2],
        n[0] * u[1] - n[1] * u[0],
    ];
    (u, v)
}

/// Golden-section search for a maximum on `[lo, hi]`; returns `(argmax, max)`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        }
    }
    if fa >= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}
