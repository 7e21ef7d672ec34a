//! Named figure reproductions with their parameter sets baked in.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::ptdyn::period;
use crate::sweep::{
    fmt_value, run_sweep, Measure, PtSettings, SweepConfig, SweepRange, SweepTable, SweepVar,
};
use crate::xymodel::XYParams;

pub const RECIPE_NAMES: [&str; 11] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig3", "fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b",
];

/// Time samples per oscillation period of the fastest series.
pub const POINTS_PER_PERIOD: usize = 500;

const GAMMAS: [f64; 4] = [-0.01, -0.5, 0.05, 1.0];
const PHIS: [(f64, &str); 3] = [(PI / 3.0, "pi/3"), (PI / 4.0, "pi/4"), (PI / 6.0, "pi/6")];
const FIELDS: [f64; 6] = [0.0, 0.5, 1.0, 1.5, 2.5, 4.0];

/// One or more sweeps over the same grid, merged column-wise.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub name: &'static str,
    pub title: &'static str,
    /// Parameter that distinguishes the series, if more than one.
    pub series_key: Option<&'static str>,
    pub series: Vec<(String, SweepConfig)>,
    pub notes: Vec<(String, String)>,
}

fn base() -> SweepConfig {
    SweepConfig {
        model: XYParams::default(),
        temperature: 1.0,
        pt: None,
        var: SweepVar::T,
        range: SweepRange { min: 0.05, max: 5.0, steps: 200 },
        measures: Measure::CORRELATIONS.to_vec(),
        ..SweepConfig::default()
    }
}

/// Time sweep over two periods of the slowest series, sampled at
/// [`POINTS_PER_PERIOD`] per period of the fastest one.
fn time_range(f: f64, phis: &[f64]) -> SweepRange {
    let slow = phis.iter().map(|&p| period(f, p)).fold(0.0, f64::max);
    let fast = phis.iter().map(|&p| period(f, p)).fold(f64::INFINITY, f64::min);
    let max = 2.0 * slow;
    SweepRange {
        min: 0.0,
        max,
        steps: (max / fast * POINTS_PER_PERIOD as f64).ceil() as usize + 1,
    }
}

fn pt_config(temperature: f64, phi: f64, measures: Vec<Measure>, range: SweepRange) -> SweepConfig {
    SweepConfig {
        temperature,
        pt: Some(PtSettings { f: 1.0, phi, t: 0.0 }),
        var: SweepVar::Time,
        range,
        measures,
        ..base()
    }
}

fn phi_series(temperature: f64, measures: Vec<Measure>) -> Vec<(String, SweepConfig)> {
    let range = time_range(1.0, &PHIS.map(|p| p.0));
    PHIS.iter()
        .map(|&(phi, label)| (label.to_string(), pt_config(temperature, phi, measures.clone(), range)))
        .collect()
}

pub fn recipe(name: &str) -> Result<Recipe> {
    let fidelity = vec![Measure::Fidelity];
    let r = match name {
        "fig1a" => Recipe {
            name: "fig1a",
            title: "correlations vs T",
            series_key: None,
            series: vec![(String::new(), base())],
            notes: vec![],
        },
        "fig1b" => Recipe {
            name: "fig1b",
            title: "correlations vs J at T = 1",
            series_key: None,
            series: vec![(
                String::new(),
                SweepConfig {
                    var: SweepVar::J,
                    range: SweepRange { min: -5.0, max: 8.0, steps: 261 },
                    ..base()
                },
            )],
            notes: vec![(
                "j_range".into(),
                "inferred; covers the ferromagnetic side and the J ~ 0.9 onset".into(),
            )],
        },
        "fig2a" => Recipe {
            name: "fig2a",
            title: "teleportation fidelity vs T for several gamma",
            series_key: Some("gamma"),
            series: GAMMAS
                .iter()
                .map(|&g| {
                    let mut c = SweepConfig {
                        range: SweepRange { min: 0.05, max: 10.0, steps: 200 },
                        measures: fidelity.clone(),
                        ..base()
                    };
                    c.model.gamma = g;
                    (fmt_value(g), c)
                })
                .collect(),
            notes: vec![],
        },
        "fig2b" => Recipe {
            name: "fig2b",
            title: "teleportation fidelity vs T for several B",
            series_key: Some("B"),
            series: FIELDS
                .iter()
                .map(|&b| {
                    let mut c = SweepConfig {
                        range: SweepRange { min: 0.05, max: 10.0, steps: 200 },
                        measures: fidelity.clone(),
                        ..base()
                    };
                    c.model.b = b;
                    (fmt_value(b), c)
                })
                .collect(),
            notes: vec![(
                "b_values".into(),
                "sampled slices of the (B, T) color map".into(),
            )],
        },
        "fig3" => Recipe {
            name: "fig3",
            title: "correlations vs t under the PT operation, T = 1",
            series_key: Some("phi"),
            series: phi_series(1.0, Measure::CORRELATIONS.to_vec()),
            notes: vec![],
        },
        "fig4a" | "fig4b" => {
            let temperature = if name == "fig4a" { 4.0 } else { 6.0 };
            let phi = PI / 3.0;
            Recipe {
                name: if name == "fig4a" { "fig4a" } else { "fig4b" },
                title: "correlations vs t under the PT operation, phi = pi/3",
                series_key: None,
                series: vec![(
                    String::new(),
                    pt_config(temperature, phi, Measure::CORRELATIONS.to_vec(), time_range(1.0, &[phi])),
                )],
                notes: vec![],
            }
        }
        "fig5a" => Recipe {
            name: "fig5a",
            title: "teleportation fidelity vs t for several phi, T = 1",
            series_key: Some("phi"),
            series: phi_series(1.0, fidelity),
            notes: vec![],
        },
        "fig5b" => {
            let phi = PI / 6.0;
            let range = time_range(1.0, &[phi]);
            Recipe {
                name: "fig5b",
                title: "teleportation fidelity vs t for several gamma, phi = pi/6",
                series_key: Some("gamma"),
                series: GAMMAS
                    .iter()
                    .map(|&g| {
                        let mut c = pt_config(1.0, phi, fidelity.clone(), range);
                        c.model.gamma = g;
                        (fmt_value(g), c)
                    })
                    .collect(),
                notes: vec![],
            }
        }
        "fig6a" | "fig6b" => Recipe {
            name: if name == "fig6a" { "fig6a" } else { "fig6b" },
            title: "teleportation fidelity vs t for several phi",
            series_key: Some("phi"),
            series: phi_series(if name == "fig6a" { 4.0 } else { 6.0 }, fidelity),
            notes: vec![],
        },
        _ => {
            return Err(Error::InvalidConfig(format!(
                "unknown recipe `{name}` (expected one of {})",
                RECIPE_NAMES.join(", ")
            )))
        }
    };
    Ok(r)
}

impl Recipe {
    pub fn run(&self) -> Result<SweepTable> {
        let tables = self
            .series
            .iter()
            .map(|(_, cfg)| run_sweep(cfg))
            .collect::<Result<Vec<_>>>()?;
        let first = &tables[0];
        let mut out = SweepTable {
            columns: vec![first.columns[0].clone()],
            rows: first.rows.iter().map(|r| vec![r[0]]).collect(),
            metadata: vec![
                ("recipe".into(), self.name.into()),
                ("title".into(), self.title.into()),
            ],
        };
        let key = self.series_key;
        for ((label, _), table) in self.series.iter().zip(&tables) {
            for (c, name) in table.columns.iter().enumerate().skip(1) {
                out.columns.push(match key {
                    Some(k) => format!("{name}[{k}={label}]"),
                    None => name.clone(),
                });
                for (row, src) in out.rows.iter_mut().zip(&table.rows) {
                    row.push(src[c]);
                }
            }
        }
        if let Some(k) = key {
            let labels: Vec<&str> = self.series.iter().map(|(l, _)| l.as_str()).collect();
            out.metadata.push(("series".into(), format!("{k} in {{{}}}", labels.join(", "))));
        }
        out.metadata.extend(
            first
                .metadata
                .iter()
                .filter(|(k, _)| Some(k.as_str()) != key)
                .cloned(),
        );
        out.metadata.extend(self.notes.iter().cloned());
        Ok(out)
    }
}

pub fn run_recipe(name: &str) -> Result<SweepTable> {
    recipe(name)?.run()
}
