//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every export returns a JSON string; the plain `*_json` functions carry the
//! logic so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ptcorr::correlations::correlation_report;
use ptcorr::ptdyn::{evolve_state, period, PTParams};
use ptcorr::sweep::{run_sweep, Measure, PtSettings, SweepConfig, SweepRange, SweepTable, SweepVar};
use ptcorr::teleport::{teleport_fidelity, InputState};
use ptcorr::xymodel::{thermal_state, XYParams};

const MAX_STEPS: usize = 4000;

fn table_json(table: &SweepTable) -> Value {
    let columns: Vec<Value> = table
        .columns
        .iter()
        .enumerate()
        .map(|(k, name)| json!({ "name": name, "values": table.rows.iter().map(|r| r[k]).collect::<Vec<_>>() }))
        .collect();
    json!({ "columns": columns })
}

fn steps_in_range(steps: usize) -> Result<usize, String> {
    if (2..=MAX_STEPS).contains(&steps) {
        Ok(steps)
    } else {
        Err(format!("steps must be in 2..={MAX_STEPS}"))
    }
}

/// Correlations and teleportation fidelity of the thermal state against `T`.
pub fn thermal_curves_json(j: f64, gamma: f64, b: f64, t_min: f64, t_max: f64, steps: usize) -> Result<String, String> {
    let cfg = SweepConfig {
        model: XYParams::new(j, gamma, b),
        var: SweepVar::T,
        range: SweepRange { min: t_min, max: t_max, steps: steps_in_range(steps)? },
        measures: Measure::ALL.to_vec(),
        ..SweepConfig::default()
    };
    let table = run_sweep(&cfg).map_err(|e| e.to_string())?;
    Ok(table_json(&table).to_string())
}

/// Same measures against time after the PT-symmetric operation, over `periods` periods.
pub fn pt_curves_json(
    j: f64,
    gamma: f64,
    b: f64,
    temperature: f64,
    phi: f64,
    periods: f64,
    steps: usize,
) -> Result<String, String> {
    let f = 1.0;
    PTParams::new(f, phi, 0.0).map_err(|e| e.to_string())?;
    if !(periods > 0.0 && periods <= 20.0) {
        return Err("periods must be in (0, 20]".into());
    }
    let cfg = SweepConfig {
        model: XYParams::new(j, gamma, b),
        temperature,
        pt: Some(PtSettings { f, phi, t: 0.0 }),
        var: SweepVar::Time,
        range: SweepRange { min: 0.0, max: periods * period(f, phi), steps: steps_in_range(steps)? },
        measures: Measure::ALL.to_vec(),
        ..SweepConfig::default()
    };
    let mut out = table_json(&run_sweep(&cfg).map_err(|e| e.to_string())?);
    out["period"] = json!(period(f, phi));
    Ok(out.to_string())
}

/// Density matrix, correlations and fidelity at one point, optionally evolved to time `t`.
pub fn state_json(j: f64, gamma: f64, b: f64, temperature: f64, phi: f64, t: f64) -> Result<String, String> {
    let rho = thermal_state(&XYParams::new(j, gamma, b), temperature).map_err(|e| e.to_string())?;
    let rho = if t > 0.0 {
        let p = PTParams::new(1.0, phi, t).map_err(|e| e.to_string())?;
        evolve_state(&rho, &p).map_err(|e| e.to_string())?.state
    } else {
        rho
    };
    let m = rho.matrix();
    let matrix: Vec<Vec<[f64; 2]>> = (0..4)
        .map(|r| (0..4).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect();
    let fidelity = teleport_fidelity(&rho, &InputState::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "matrix": matrix,
        "correlations": correlation_report(&rho),
        "fidelity": fidelity,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn thermal_curves(j: f64, gamma: f64, b: f64, t_min: f64, t_max: f64, steps: usize) -> Result<String, JsError> {
    thermal_curves_json(j, gamma, b, t_min, t_max, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pt_curves(j: f64, gamma: f64, b: f64, temperature: f64, phi: f64, periods: f64, steps: usize) -> Result<String, JsError> {
    pt_curves_json(j, gamma, b, temperature, phi, periods, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn state_at(j: f64, gamma: f64, b: f64, temperature: f64, phi: f64, t: f64) -> Result<String, JsError> {
    state_json(j, gamma, b, temperature, phi, t).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn thermal_curves_have_all_columns() {
        let v = parse(&thermal_curves_json(4.5, 0.05, 1.5, 0.1, 5.0, 11).unwrap());
        let cols = v["columns"].as_array().unwrap();
        let names: Vec<&str> = cols.iter().map(|c| c["name"].as_str().unwrap()).collect();
        assert_eq!(names[0], "T");
        assert!(names.contains(&"fidelity"));
        assert!(cols.iter().all(|c| c["values"].as_array().unwrap().len() == 11));
    }

    #[test]
    fn pt_curves_report_period() {
        let v = parse(&pt_curves_json(4.5, 0.05, 1.5, 1.0, std::f64::consts::FRAC_PI_3, 2.0, 101).unwrap());
        assert!((v["period"].as_f64().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(thermal_curves_json(4.5, 0.05, 1.5, 0.0, 5.0, 11).is_err());
        assert!(thermal_curves_json(4.5, 0.05, 1.5, 0.1, 5.0, 1).is_err());
        assert!(pt_curves_json(4.5, 0.05, 1.5, 1.0, 2.0, 2.0, 11).is_err());
        assert!(state_json(4.5, 0.05, 1.5, -1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn state_fidelity_matches_core() {
        let v = parse(&state_json(4.5, 0.05, 1.5, 1.0, 0.5, 0.0).unwrap());
        let rho = thermal_state(&XYParams::default(), 1.0).unwrap();
        let f = teleport_fidelity(&rho, &InputState::default()).unwrap();
        assert!((v["fidelity"].as_f64().unwrap() - f).abs() < 1e-15);
    }
}
