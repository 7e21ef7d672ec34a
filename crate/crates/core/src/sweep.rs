//! Parameter sweeps over the model and PT parameters, with CSV and SVG output.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::correlations::{bell_max, concurrence, min_hs, min_trace};
use crate::error::{Error, Result};
use crate::ptdyn::{evolve_state, PTParams};
use crate::qmat::DensityMatrix;
use crate::teleport::{teleport_fidelity, InputState};
use crate::xymodel::{thermal_state, XYParams};

pub const TOOL_VERSION: &str = concat!("ptcorr ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepVar {
    T,
    J,
    B,
    Gamma,
    Time,
    Phi,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::T => "T",
            SweepVar::J => "J",
            SweepVar::B => "B",
            SweepVar::Gamma => "gamma",
            SweepVar::Time => "t",
            SweepVar::Phi => "phi",
        }
    }

    pub fn needs_pt(self) -> bool {
        matches!(self, SweepVar::Time | SweepVar::Phi)
    }
}

impl FromStr for SweepVar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "T" => SweepVar::T,
            "J" => SweepVar::J,
            "B" => SweepVar::B,
            "gamma" => SweepVar::Gamma,
            "t" => SweepVar::Time,
            "phi" => SweepVar::Phi,
            _ => return Err(Error::InvalidConfig(format!("unknown sweep variable `{s}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    Concurrence,
    BellMax,
    MinHs,
    MinTrace,
    Fidelity,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Concurrence,
        Measure::BellMax,
        Measure::MinHs,
        Measure::MinTrace,
        Measure::Fidelity,
    ];

    pub const CORRELATIONS: [Measure; 4] = [
        Measure::Concurrence,
        Measure::BellMax,
        Measure::MinHs,
        Measure::MinTrace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::BellMax => "bell_max",
            Measure::MinHs => "min_hs",
            Measure::MinTrace => "min_trace",
            Measure::Fidelity => "fidelity",
        }
    }

    /// Column names produced by this measure. `min_hs` also carries the
    /// closed-form scale (4x the HS-norm value).
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Measure::MinHs => &["min_hs", "min_hs_paper_scale"],
            Measure::Concurrence => &["concurrence"],
            Measure::BellMax => &["bell_max"],
            Measure::MinTrace => &["min_trace"],
            Measure::Fidelity => &["fidelity"],
        }
    }

    pub fn evaluate(self, rho: &DensityMatrix, input: &InputState) -> Result<Vec<f64>> {
        Ok(match self {
            Measure::Concurrence => vec![concurrence(rho)],
            Measure::BellMax => vec![bell_max(rho)],
            Measure::MinHs => {
                let v = min_hs(rho);
                vec![v, 4.0 * v]
            }
            Measure::MinTrace => vec![min_trace(rho)],
            Measure::Fidelity => vec![teleport_fidelity(rho, input)?],
        })
    }
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown measure `{s}`")))
    }
}

/// Parses a comma-separated measure list.
pub fn parse_measures(s: &str) -> Result<Vec<Measure>> {
    let out = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(Measure::from_str)
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::InvalidConfig("empty measure list".into()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|k| {
                if k + 1 == n {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

/// Settings of the PT-symmetric operation; `t` and `phi` are the fixed values
/// used when they are not the swept variable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PtSettings {
    pub f: f64,
    pub phi: f64,
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub model: XYParams,
    pub temperature: f64,
    pub pt: Option<PtSettings>,
    pub var: SweepVar,
    pub range: SweepRange,
    pub measures: Vec<Measure>,
    pub input: InputState,
    /// Amplitudes used to build `input`, recorded in the metadata.
    pub input_label: String,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let r = &self.range;
        if !(r.min < r.max) || !r.min.is_finite() || !r.max.is_finite() {
            return Err(Error::InvalidRange(format!("need min < max, got [{}, {}]", r.min, r.max)));
        }
        if r.steps < 2 {
            return Err(Error::InvalidRange(format!("need at least 2 steps, got {}", r.steps)));
        }
        if self.measures.is_empty() {
            return Err(Error::InvalidConfig("no measures requested".into()));
        }
        if self.var.needs_pt() && self.pt.is_none() {
            return Err(Error::InvalidConfig(format!(
                "sweeping `{}` requires the PT operation",
                self.var.name()
            )));
        }
        if self.var == SweepVar::T && r.min <= 0.0 {
            return Err(Error::NonpositiveTemperature(r.min));
        }
        if self.var == SweepVar::Time && r.min < 0.0 {
            return Err(Error::InvalidRange("t must be non-negative".into()));
        }
        if let Some(pt) = &self.pt {
            if self.var == SweepVar::Phi {
                for phi in [r.min, r.max] {
                    PTParams::new(pt.f, phi, pt.t)?;
                }
            } else {
                PTParams::new(pt.f, pt.phi, if self.var == SweepVar::Time { r.min } else { pt.t })?;
            }
        }
        Ok(())
    }

    pub fn columns(&self) -> Vec<String> {
        std::iter::once(self.var.name().to_string())
            .chain(
                self.measures
                    .iter()
                    .flat_map(|m| m.columns().iter().map(|c| c.to_string())),
            )
            .collect()
    }

    /// State at one value of the swept variable.
    pub fn state_at(&self, x: f64) -> Result<DensityMatrix> {
        let mut model = self.model;
        let mut temperature = self.temperature;
        let mut pt = self.pt;
        match self.var {
            SweepVar::T => temperature = x,
            SweepVar::J => model.j = x,
            SweepVar::B => model.b = x,
            SweepVar::Gamma => model.gamma = x,
            SweepVar::Time => pt.as_mut().expect("validated").t = x,
            SweepVar::Phi => pt.as_mut().expect("validated").phi = x,
        }
        let rho = thermal_state(&model, temperature)?;
        match pt {
            Some(s) => Ok(evolve_state(&rho, &PTParams::new(s.f, s.phi, s.t)?)?.state),
            None => Ok(rho),
        }
    }

    fn row(&self, x: f64) -> Result<Vec<f64>> {
        let rho = self.state_at(x)?;
        let mut row = vec![x];
        for m in &self.measures {
            row.extend(m.evaluate(&rho, &self.input)?);
        }
        Ok(row)
    }

    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut meta = vec![
            ("tool".to_string(), TOOL_VERSION.to_string()),
            ("sweep".to_string(), self.var.name().to_string()),
        ];
        let mut fixed = |name: &str, var: SweepVar, value: f64| {
            if self.var != var {
                meta.push((name.to_string(), fmt_value(value)));
            }
        };
        fixed("J", SweepVar::J, self.model.j);
        fixed("gamma", SweepVar::Gamma, self.model.gamma);
        fixed("B", SweepVar::B, self.model.b);
        fixed("T", SweepVar::T, self.temperature);
        if let Some(pt) = self.pt {
            fixed("phi", SweepVar::Phi, pt.phi);
            fixed("t", SweepVar::Time, pt.t);
            meta.push(("f".to_string(), fmt_value(pt.f)));
        }
        meta.push(("pt_operation".into(), self.pt.is_some().to_string()));
        if self.measures.contains(&Measure::Fidelity) {
            meta.push(("input_state".into(), self.input_label.clone()));
        }
        if self.measures.contains(&Measure::MinHs) {
            meta.push(("min_hs_scale".into(), "hs_norm; min_hs_paper_scale = 4 * min_hs".into()));
        }
        meta
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            model: XYParams::default(),
            temperature: 1.0,
            pt: None,
            var: SweepVar::T,
            range: SweepRange {
                min: 0.05,
                max: 5.0,
                steps: 200,
            },
            measures: Measure::CORRELATIONS.to_vec(),
            input: InputState::default(),
            input_label: "1,1,0".into(),
        }
    }
}

/// Columns of sweep results; the first column is the swept variable.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: Vec<(String, String)>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.metadata.push((key.to_string(), value)),
        }
    }
}

#[cfg(feature = "parallel")]
fn map_rows(cfg: &SweepConfig, xs: &[f64]) -> Vec<Result<Vec<f64>>> {
    use rayon::prelude::*;
    xs.par_iter().map(|&x| cfg.row(x)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_rows(cfg: &SweepConfig, xs: &[f64]) -> Vec<Result<Vec<f64>>> {
    run_sweep_serial_rows(cfg, xs)
}

fn run_sweep_serial_rows(cfg: &SweepConfig, xs: &[f64]) -> Vec<Result<Vec<f64>>> {
    xs.iter().map(|&x| cfg.row(x)).collect()
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepTable> {
    cfg.validate()?;
    let xs = cfg.range.values();
    let rows = map_rows(cfg, &xs).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        columns: cfg.columns(),
        rows,
        metadata: cfg.metadata(),
    })
}

/// Single-threaded sweep, row-for-row identical to [`run_sweep`].
pub fn run_sweep_serial(cfg: &SweepConfig) -> Result<SweepTable> {
    cfg.validate()?;
    let xs = cfg.range.values();
    let rows = run_sweep_serial_rows(cfg, &xs)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        columns: cfg.columns(),
        rows,
        metadata: cfg.metadata(),
    })
}

/// Rounds to 12 significant digits and prints the shortest representation
/// that parses back to the rounded value.
pub fn fmt_value(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    format!("{rounded:?}")
}

pub fn render_csv(table: &SweepTable) -> String {
    let mut out = String::new();
    for (k, v) in &table.metadata {
        let _ = writeln!(out, "# {k} = {v}");
    }
    let _ = writeln!(out, "{}", table.columns.join(","));
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt_value(v)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn emit_csv(table: &SweepTable, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, render_csv(table))?;
    Ok(())
}

pub fn parse_csv(text: &str) -> Result<SweepTable> {
    let mut table = SweepTable::default();
    let mut header_seen = false;
    for line in text.lines() {
        if let Some(meta) = line.strip_prefix('#') {
            let (k, v) = meta
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("bad metadata line `{line}`")))?;
            table.metadata.push((k.trim().to_string(), v.trim().to_string()));
        } else if !header_seen {
            table.columns = line.split(',').map(str::to_string).collect();
            header_seen = true;
        } else if !line.is_empty() {
            let row = line
                .split(',')
                .map(|c| {
                    c.parse::<f64>()
                        .map_err(|_| Error::InvalidConfig(format!("bad value `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != table.columns.len() {
                return Err(Error::InvalidConfig("ragged CSV row".into()));
            }
            table.rows.push(row);
        }
    }
    Ok(table)
}

const SVG_WIDTH: f64 = 960.0;
const SVG_HEIGHT: f64 = 600.0;
const PALETTE: [&str; 8] = [
    "#c2185b", "#2e7d32", "#1565c0", "#d32f2f", "#ef6c00", "#00838f", "#6a1b9a", "#5d4037",
];

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// `[lo, hi]` widened by 5% of the span on each side.
pub fn padded_bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let span = hi - lo;
    if span == 0.0 {
        let pad = if lo == 0.0 { 0.5 } else { 0.05 * lo.abs() };
        return (lo - pad, hi + pad);
    }
    (lo - 0.05 * span, hi + 0.05 * span)
}

pub fn render_svg(table: &SweepTable) -> String {
    let (left, right, top, bottom) = (80.0, 200.0, 30.0, 60.0);
    let plot_w = SVG_WIDTH - left - right;
    let plot_h = SVG_HEIGHT - top - bottom;
    let (x0, x1) = padded_bounds(table.rows.iter().map(|r| r[0]));
    let (y0, y1) = padded_bounds(table.rows.iter().flat_map(|r| r[1..].iter().copied()));
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| top + (y1 - y) / (y1 - y0) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for k in 0..=5 {
        let fx = x0 + (x1 - x0) * k as f64 / 5.0;
        let fy = y0 + (y1 - y0) * k as f64 / 5.0;
        let (px, py) = (sx(fx), sy(fy));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{b:.2}" x2="{px:.2}" y2="{b2:.2}" stroke="black"/><text x="{px:.2}" y="{t:.2}" text-anchor="middle">{fx:.3}</text>"#,
            b = top + plot_h,
            b2 = top + plot_h + 5.0,
            t = top + plot_h + 20.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{l2:.2}" y1="{py:.2}" x2="{left:.2}" y2="{py:.2}" stroke="black"/><text x="{tx:.2}" y="{ty:.2}" text-anchor="end">{fy:.3}</text>"#,
            l2 = left - 5.0,
            tx = left - 8.0,
            ty = py + 4.0
        );
    }
    if let Some(xname) = table.columns.first() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            left + plot_w / 2.0,
            SVG_HEIGHT - 15.0,
            xml_escape(xname)
        );
    }
    for (c, name) in table.columns.iter().enumerate().skip(1) {
        let color = PALETTE[(c - 1) % PALETTE.len()];
        let points: Vec<String> = table
            .rows
            .iter()
            .filter(|r| r[0].is_finite() && r[c].is_finite())
            .map(|r| format!("{:.2},{:.2}", sx(r[0]), sy(r[c])))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let ly = top + 10.0 + 20.0 * (c - 1) as f64;
        let lx = left + plot_w + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            xml_escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn emit_svg(table: &SweepTable, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, render_svg(table))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_table() -> SweepTable {
        SweepTable {
            columns: vec!["T".into(), "a".into(), "b<&>".into()],
            rows: vec![vec![0.5, 1.0, -2.0], vec![1.5, 0.25, 3.0]],
            metadata: vec![("tool".into(), TOOL_VERSION.into())],
        }
    }

    #[test]
    fn range_endpoints() {
        let v = SweepRange { min: 0.1, max: 0.3, steps: 2 }.values();
        assert_eq!(v, vec![0.1, 0.3]);
        let v = SweepRange { min: 0.0, max: 1.0, steps: 5 }.values();
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn config_errors() {
        let mut cfg = SweepConfig::default();
        cfg.range.steps = 1;
        assert!(matches!(run_sweep(&cfg), Err(Error::InvalidRange(_))));
        let mut cfg = SweepConfig::default();
        cfg.range.min = 5.0;
        assert!(matches!(run_sweep(&cfg), Err(Error::InvalidRange(_))));
        let mut cfg = SweepConfig::default();
        cfg.measures.clear();
        assert!(matches!(run_sweep(&cfg), Err(Error::InvalidConfig(_))));
        let cfg = SweepConfig { var: SweepVar::Time, ..SweepConfig::default() };
        assert!(run_sweep(&cfg).is_err());
        let cfg = SweepConfig {
            pt: Some(PtSettings { f: 1.0, phi: 1.6, t: 0.0 }),
            ..SweepConfig::default()
        };
        assert!(matches!(run_sweep(&cfg), Err(Error::BrokenPhase(_))));
        assert!(parse_measures("").is_err());
        assert!(parse_measures("concurrence,nope").is_err());
    }

    #[test]
    fn two_step_sweep() {
        let cfg = SweepConfig {
            range: SweepRange { min: 0.5, max: 2.0, steps: 2 },
            measures: vec![Measure::Concurrence, Measure::MinHs],
            ..SweepConfig::default()
        };
        let t = run_sweep(&cfg).unwrap();
        assert_eq!(t.columns, vec!["T", "concurrence", "min_hs", "min_hs_paper_scale"]);
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0][0], 0.5);
        assert_eq!(t.rows[1][0], 2.0);
        assert!((t.rows[0][3] - 4.0 * t.rows[0][2]).abs() < 1e-15);
    }

    #[test]
    fn one_row_csv_line_count() {
        let mut t = small_table();
        t.rows.truncate(1);
        let text = render_csv(&t);
        assert_eq!(text.lines().count(), t.metadata.len() + 2);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn value_rendering() {
        assert_eq!(fmt_value(0.5), "0.5");
        assert_eq!(fmt_value(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_value(2.0), "2.0");
        assert_eq!(fmt_value(1.23456789012345e-20), "1.23456789012e-20");
    }

    #[test]
    fn csv_round_trip() {
        let t = small_table();
        let parsed = parse_csv(&render_csv(&t)).unwrap();
        assert_eq!(parsed, t);
    }

    #[test]
    fn svg_structure() {
        let svg = render_svg(&small_table());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let polylines: Vec<_> = doc
            .descendants()
            .filter(|n| n.has_tag_name("polyline"))
            .collect();
        assert_eq!(polylines.len(), 2);
        for p in polylines {
            assert_eq!(p.attribute("points").unwrap().split(' ').count(), 2);
        }
        assert!(svg.contains("b&lt;&amp;&gt;"));
    }

    #[test]
    fn bounds_are_padded() {
        assert_eq!(padded_bounds([0.0, 10.0].into_iter()), (-0.5, 10.5));
        let (lo, hi) = padded_bounds([2.0, 2.0].into_iter());
        assert!(lo < 2.0 && hi > 2.0);
    }
}
