//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::Command;

use ptcorr::correlations::{
    bell_max, concurrence, concurrence_x_state, min_hs, min_oracle, min_trace, MinMetric, OracleGrid,
};
use ptcorr::ptdyn::{audit_closed_form, evolve_state, period, EntryStatus, PTParams};
use ptcorr::qmat::{bloch_decompose, BellState, DensityMatrix};
use ptcorr::random;
use ptcorr::teleport::{teleport_fidelity, InputState};
use ptcorr::xymodel::{thermal_elements, thermal_state, XYParams};

type Outcome = Result<String, String>;

fn fig1a() -> XYParams {
    XYParams::new(4.5, 0.05, 1.5)
}

fn state(p: &XYParams, t: f64) -> DensityMatrix {
    thermal_state(p, t).expect("valid temperature")
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Root of `g` on `[lo, hi]` given a sign change, to width `width`.
fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> Option<f64> {
    let glo = g(lo);
    if glo.signum() == g(hi).signum() {
        return None;
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn non_increasing(v: &[f64], slack: f64) -> Option<usize> {
    v.windows(2).position(|w| w[1] > w[0] + slack)
}

fn c1_ground_state() -> Outcome {
    let rho = state(&fig1a(), 0.01);
    let dev = rho.matrix().max_abs_diff(&BellState::PsiMinus.projector());
    let c = concurrence(&rho);
    let b = bell_max(&rho);
    ensure(dev <= 1e-8, format!("distance to singlet {dev:.3e}"))?;
    ensure(c >= 1.0 - 1e-6, format!("concurrence {c}"))?;
    ensure(b >= 2.0 * 2f64.sqrt() - 1e-4, format!("bell_max {b}"))?;
    Ok(format!("|rho - singlet| = {dev:.2e}, C = {c:.12}, B = {b:.12}"))
}

fn c2_monotone() -> Outcome {
    let p = fig1a();
    let states: Vec<_> = linspace(0.1, 5.0, 50).into_iter().map(|t| state(&p, t)).collect();
    let measures: [(&str, fn(&DensityMatrix) -> f64); 4] = [
        ("concurrence", concurrence),
        ("bell_max", bell_max),
        ("min_hs", min_hs),
        ("min_trace", min_trace),
    ];
    for (name, f) in measures {
        let v: Vec<f64> = states.iter().map(f).collect();
        if let Some(k) = non_increasing(&v, 1e-9) {
            return Err(format!("{name} increases at grid index {k}"));
        }
    }
    Ok("all four measures non-increasing on 50 points of [0.1, 5]".into())
}

fn c3_bell_crossing() -> Outcome {
    let p = fig1a();
    let t = bisect(|t| bell_max(&state(&p, t)) - 2.0, 1.5, 2.5, 1e-4)
        .ok_or("bell_max - 2 has no sign change on [1.5, 2.5]")?;
    ensure((1.5..=2.5).contains(&t), format!("T* = {t}"))?;
    Ok(format!("bell_max = 2 at T* = {t:.5}"))
}

fn c4_sudden_death() -> Outcome {
    let p = fig1a();
    let t = bisect(
        |t| if concurrence(&state(&p, t)) > 0.0 { 1.0 } else { -1.0 },
        4.0,
        6.0,
        1e-4,
    )
    .ok_or("concurrence does not vanish on [4, 6]")?;
    let rho = state(&p, 6.0);
    let (c, h, tr) = (concurrence(&rho), min_hs(&rho), min_trace(&rho));
    ensure(c == 0.0, format!("concurrence(T=6) = {c:e}"))?;
    ensure(h > 0.0 && tr > 0.0, format!("min_hs = {h}, min_trace = {tr}"))?;
    Ok(format!("death at T* = {t:.5}; at T=6: C = 0, min_hs = {h:.6}, min_trace = {tr:.6}"))
}

fn c5_j_window() -> Outcome {
    let at = |j: f64| state(&XYParams::new(j, 0.05, 1.5), 1.0);
    let mut failures = Vec::new();
    for j in linspace(-5.0, 0.85, 20) {
        let c = concurrence(&at(j));
        if c != 0.0 {
            failures.push(format!("C(J={j:.4}) = {c:.4}"));
        }
    }
    for j in [1.0, 2.0, 4.5] {
        let c = concurrence(&at(j));
        if !(c > 0.0) {
            failures.push(format!("C(J={j}) = {c}"));
        }
    }
    let h = min_hs(&at(-2.0));
    if !(h > 0.0) {
        failures.push(format!("min_hs(J=-2) = {h}"));
    }
    if failures.is_empty() {
        Ok("zero window and ferromagnetic MIN as expected".into())
    } else {
        Err(format!("{} violations, e.g. {}", failures.len(), failures[..failures.len().min(3)].join("; ")))
    }
}

fn c6_min_oracle() -> Outcome {
    let mut rng = random::seeded(6);
    let mut states: Vec<DensityMatrix> = (0..100)
        .map(|k| {
            if k % 10 == 0 {
                random::x_state_unbiased(&mut rng)
            } else {
                random::x_state(&mut rng)
            }
        })
        .collect();
    states.extend(linspace(0.1, 5.0, 50).into_iter().map(|t| state(&fig1a(), t)));
    let grid = OracleGrid::default();
    let (mut forced, mut searched) = (0.0f64, 0.0f64);
    let (mut n_forced, mut n_searched) = (0, 0);
    for rho in &states {
        let d = (min_hs(rho) - min_oracle(rho, MinMetric::HilbertSchmidt, &grid))
            .abs()
            .max((min_trace(rho) - min_oracle(rho, MinMetric::Trace, &grid)).abs());
        if bloch_decompose(rho).x_norm() > ptcorr::tolerances::BLOCH_ZERO {
            forced = forced.max(d);
            n_forced += 1;
        } else {
            searched = searched.max(d);
            n_searched += 1;
        }
    }
    ensure(forced <= 1e-12, format!("forced-axis deviation {forced:.3e}"))?;
    ensure(searched <= 1e-5, format!("grid-search deviation {searched:.3e}"))?;
    Ok(format!(
        "x != 0: {n_forced} states, max dev {forced:.2e}; x = 0: {n_searched} states, max dev {searched:.2e}"
    ))
}

fn c7_concurrence_routes() -> Outcome {
    let mut rng = random::seeded(7);
    let mut dev = 0.0f64;
    for _ in 0..1000 {
        let rho = random::x_state(&mut rng);
        let x = concurrence_x_state(&rho).map_err(|e| e.to_string())?;
        dev = dev.max((concurrence(&rho) - x).abs());
    }
    ensure(dev <= 1e-10, format!("route deviation {dev:.3e}"))?;
    let phi = BellState::PhiPlus.density();
    let c = concurrence(&phi);
    let cx = concurrence_x_state(&phi).map_err(|e| e.to_string())?;
    // the closed form is exact; the eigen route carries the rounding of an
    // irrational Jacobi rotation, so it is held to a few ulp
    ensure(cx == 1.0, format!("X-form C(Phi+) = {cx:.17}"))?;
    ensure((c - 1.0).abs() <= 1e-15, format!("C(Phi+) = {c:.17}"))?;
    Ok(format!("max route deviation {dev:.2e}; C(Phi+) = 1 (eigen route {:+.1e})", c - 1.0))
}

fn c8_teleport() -> Outcome {
    let input = InputState::default();
    let fid = |rho: &DensityMatrix| teleport_fidelity(rho, &input).map_err(|e| e.to_string());
    let f_singlet = fid(&BellState::PsiMinus.density())?;
    let f_mixed = fid(&DensityMatrix::maximally_mixed())?;
    ensure((f_singlet - 1.0).abs() <= 1e-12, format!("F(singlet) = {f_singlet}"))?;
    ensure((f_mixed - 0.25).abs() <= 1e-12, format!("F(I/4) = {f_mixed}"))?;
    let p = fig1a();
    let curve = linspace(0.1, 10.0, 50)
        .into_iter()
        .map(|t| fid(&state(&p, t)))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(k) = non_increasing(&curve, 1e-9) {
        return Err(format!("F(T) increases at grid index {k}"));
    }
    ensure(curve.iter().all(|&f| f > 0.25), "F(T) <= 1/4 somewhere")?;
    let f_hot = fid(&state(&p, 1000.0))?;
    ensure((f_hot - 0.25).abs() <= 1e-3, format!("F(T=1000) = {f_hot}"))?;
    let t_dead = linspace(0.1, 10.0, 50)
        .into_iter()
        .find(|&t| concurrence(&state(&p, t)) == 0.0)
        .ok_or("concurrence never vanishes on the grid")?;
    let f_dead = fid(&state(&p, t_dead))?;
    ensure(f_dead > 0.25, format!("F = {f_dead} at T = {t_dead} with C = 0"))?;
    Ok(format!(
        "F(T=1000) = {f_hot:.6}; F = {f_dead:.6} at T = {t_dead:.3} where C = 0"
    ))
}

fn pt_grid() -> Vec<(f64, f64, f64)> {
    let phis = [PI / 6.0, -PI / 6.0, PI / 4.0, -PI / 4.0, PI / 3.0, -PI / 3.0];
    let mut out = Vec::new();
    for temp in [1.0, 4.0, 6.0] {
        for phi in phis {
            for t in linspace(0.0, 2.0 * period(1.0, phi), 20) {
                out.push((phi, t, temp));
            }
        }
    }
    out
}

fn c9_pt_closed_form() -> Outcome {
    let p = fig1a();
    let cases = pt_grid()
        .into_iter()
        .map(|(phi, t, temp)| {
            Ok((
                thermal_elements(&p, temp).map_err(|e| e.to_string())?,
                PTParams::new(1.0, phi, t).map_err(|e| e.to_string())?,
            ))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let audit = audit_closed_form(&cases, 1e-10).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for a in &audit {
        match a.status {
            EntryStatus::Confirmed => {}
            EntryStatus::Corrected => {
                let form = a.corrected_form.as_deref().ok_or(format!("{} corrected without a documented form", a.entry))?;
                ensure(a.regular_deviation <= 1e-10, format!("{} corrected form off by {:.3e}", a.entry, a.regular_deviation))?;
                notes.push(format!("{} corrected ({form})", a.entry));
            }
            EntryStatus::Mismatch => {
                return Err(format!(
                    "{} mismatches: printed {:.3e}, regular {:.3e}",
                    a.entry, a.printed_deviation, a.regular_deviation
                ))
            }
        }
    }
    let confirmed = audit.iter().filter(|a| a.status == EntryStatus::Confirmed).count();
    Ok(format!("{confirmed} of {} entries confirmed; {}", audit.len(), notes.join("; ")))
}

fn c10_periodicity() -> Outcome {
    let p = fig1a();
    let mut dev = 0.0f64;
    for temp in [1.0, 4.0, 6.0] {
        let rho = state(&p, temp);
        for phi in [PI / 6.0, PI / 4.0, PI / 3.0] {
            let per = PI / phi.cos();
            for t in linspace(0.0, per, 25) {
                let a = evolve_state(&rho, &PTParams::new(1.0, phi, t).unwrap()).unwrap().state;
                let b = evolve_state(&rho, &PTParams::new(1.0, phi, t + per).unwrap()).unwrap().state;
                dev = dev.max(a.matrix().max_abs_diff(b.matrix()));
            }
        }
    }
    ensure(dev <= 1e-10, format!("periodicity deviation {dev:.3e}"))?;
    let mut flat = 0.0f64;
    for temp in [1.0, 4.0, 6.0] {
        let rho = state(&p, temp);
        let base = [concurrence(&rho), bell_max(&rho), min_hs(&rho), min_trace(&rho)];
        for t in linspace(0.0, 10.0, 41) {
            let s = evolve_state(&rho, &PTParams::new(1.0, 0.0, t).unwrap()).unwrap().state;
            let now = [concurrence(&s), bell_max(&s), min_hs(&s), min_trace(&s)];
            for k in 0..4 {
                flat = flat.max((now[k] - base[k]).abs());
            }
        }
    }
    ensure(flat <= 1e-10, format!("phi = 0 measures drift by {flat:.3e}"))?;
    Ok(format!("periodicity {dev:.2e}; unitary-limit drift {flat:.2e}"))
}

/// Spacing of the recurring global maxima of `g` on `[0, span]`.
fn measured_period(g: impl Fn(f64) -> f64, span: f64, samples: usize) -> Option<f64> {
    let ts = linspace(0.0, span, samples);
    let v: Vec<f64> = ts.iter().map(|&t| g(t)).collect();
    let top = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let h = ts[1] - ts[0];
    let mut peaks = Vec::new();
    for k in 1..samples - 1 {
        if v[k] >= v[k - 1] && v[k] > v[k + 1] && v[k] > top - 1e-3 * top.abs().max(1e-12) {
            // parabolic refinement of the sampled maximum
            let denom = v[k - 1] - 2.0 * v[k] + v[k + 1];
            let shift = if denom != 0.0 { 0.5 * (v[k - 1] - v[k + 1]) / denom } else { 0.0 };
            peaks.push(ts[k] + shift * h);
        }
    }
    if peaks.len() < 2 {
        return None;
    }
    Some((peaks[peaks.len() - 1] - peaks[0]) / (peaks.len() - 1) as f64)
}

fn c11_oscillations() -> Outcome {
    let p = fig1a();
    let rho = state(&p, 1.0);
    let phis = [PI / 6.0, PI / 4.0, PI / 3.0];
    let input = InputState::default();
    let evolved = |phi: f64, t: f64| evolve_state(&rho, &PTParams::new(1.0, phi, t).unwrap()).unwrap().state;
    let mut report = Vec::new();
    let mut maxima = [[0.0f64; 5]; 3];
    for (k, &phi) in phis.iter().enumerate() {
        let expected = PI / phi.cos();
        // start slightly off t = 0 so the initial maximum is interior
        let measured = measured_period(|t| concurrence(&evolved(phi, t + 0.1)), 3.2 * expected, 6000)
            .ok_or(format!("no recurring maxima at phi = {phi:.4}"))?;
        let rel = (measured - expected).abs() / expected;
        ensure(rel <= 0.01, format!("phi = {phi:.4}: period {measured:.5} vs {expected:.5}"))?;
        report.push(format!("{rel:.1e}"));
        let f0 = teleport_fidelity(&evolved(phi, 0.0), &input).unwrap();
        for t in linspace(0.0, expected, 2000) {
            let s = evolved(phi, t);
            let vals = [
                concurrence(&s),
                bell_max(&s),
                min_hs(&s),
                min_trace(&s),
                teleport_fidelity(&s, &input).unwrap(),
            ];
            for m in 0..5 {
                maxima[k][m] = maxima[k][m].max(vals[m]);
            }
        }
        ensure(
            maxima[k][4] >= f0 - 1e-9,
            format!("phi = {phi:.4}: max fidelity {} < F(0) = {f0}", maxima[k][4]),
        )?;
    }
    let names = ["concurrence", "bell_max", "min_hs", "min_trace", "fidelity"];
    let mut spread_max = 0.0f64;
    for m in 0..5 {
        let col = [maxima[0][m], maxima[1][m], maxima[2][m]];
        let spread = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - col.iter().cloned().fold(f64::INFINITY, f64::min);
        ensure(spread <= 2e-3, format!("{} maxima spread {spread:.3e} across phi", names[m]))?;
        spread_max = spread_max.max(spread);
    }
    Ok(format!(
        "period rel. errors {}; max-amplitude spread {spread_max:.2e}",
        report.join(", ")
    ))
}

fn c12_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ptcorr"))
            .args(["fig", "fig1a", "--no-timestamp"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), "fig1a exited with failure")?;
    ensure(!a.stdout.is_empty(), "empty output")?;
    ensure(a.stdout == b.stdout, "outputs differ")?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1 ground-state limit", c1_ground_state),
        ("2 monotone decrease in T", c2_monotone),
        ("3 Bell-violation crossing", c3_bell_crossing),
        ("4 entanglement sudden death", c4_sudden_death),
        ("5 J window", c5_j_window),
        ("6 MIN oracle equivalence", c6_min_oracle),
        ("7 concurrence dual route", c7_concurrence_routes),
        ("8 teleportation limits", c8_teleport),
        ("9 PT closed form vs evolution", c9_pt_closed_form),
        ("10 PT periodicity and unitary limit", c10_periodicity),
        ("11 oscillation structure", c11_oscillations),
        ("12 deterministic fig1a CSV", c12_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = std::time::Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
