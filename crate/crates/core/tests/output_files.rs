use ptcorr::recipes::run_recipe;
use ptcorr::sweep::{emit_csv, emit_svg, parse_csv, run_sweep, Measure, SweepConfig, SweepRange};

fn small_sweep() -> ptcorr::sweep::SweepTable {
    run_sweep(&SweepConfig {
        range: SweepRange { min: 0.5, max: 3.0, steps: 7 },
        measures: vec![Measure::Concurrence, Measure::Fidelity],
        ..SweepConfig::default()
    })
    .unwrap()
}

#[test]
fn csv_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let table = small_sweep();
    emit_csv(&table, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), table.metadata.len() + 1 + table.rows.len());
    assert!(!text.contains('\r'));
    let parsed = parse_csv(&text).unwrap();
    assert_eq!(parsed.columns, table.columns);
    assert_eq!(parsed.metadata, table.metadata);
    for (a, b) in parsed.rows.iter().zip(&table.rows) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= 1e-11 * y.abs().max(1e-300));
        }
    }
}

#[test]
fn svg_file_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.svg");
    let table = small_sweep();
    emit_svg(&table, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.attribute("viewBox"), Some("0 0 960 600"));
    let lines: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("polyline")).collect();
    assert_eq!(lines.len(), table.columns.len() - 1);
    for l in lines {
        assert_eq!(l.attribute("points").unwrap().split(' ').count(), table.rows.len());
    }
    let labels: Vec<&str> = doc
        .descendants()
        .filter(|n| n.has_tag_name("text"))
        .filter_map(|n| n.text())
        .collect();
    for c in &table.columns {
        assert!(labels.contains(&c.as_str()), "missing legend entry {c}");
    }
}

#[test]
fn write_to_missing_directory_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.csv");
    assert!(matches!(emit_csv(&small_sweep(), &path), Err(ptcorr::Error::Io(_))));
}

#[test]
fn pt_recipe_columns_are_periodic() {
    let t = run_recipe("fig4a").unwrap();
    let ts = t.column("t").unwrap();
    let per = std::f64::consts::PI / (std::f64::consts::PI / 3.0).cos();
    let c = t.column("concurrence").unwrap();
    // two periods sampled uniformly: first and last rows coincide
    assert!((ts[ts.len() - 1] - 2.0 * per).abs() < 1e-12);
    assert!((c[0] - c[c.len() - 1]).abs() < 1e-9);
}
