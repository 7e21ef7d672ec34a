//! `key = value` config files and small value parsers.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

/// Keys accepted in a config file.
pub const KNOWN_KEYS: [&str; 18] = [
    "J",
    "gamma",
    "B",
    "T",
    "f",
    "phi",
    "t",
    "t-min",
    "t-max",
    "var",
    "min",
    "max",
    "steps",
    "measures",
    "input-state",
    "out-csv",
    "out-svg",
    "no-timestamp",
];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", n + 1))?;
            let key = k.trim().trim_start_matches("--").to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{key}`", n + 1));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> std::io::Result<Result<Self, String>> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

/// Parses a real number or a multiple of pi: `0.5`, `pi`, `-pi/3`,
/// `2pi/3`, `3*pi/4`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let err = || format!("cannot parse angle `{s}`");
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| err())?),
        None => (t.as_str(), 1.0),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(err)?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let c = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| err())?,
    };
    if den == 0.0 {
        return Err(err());
    }
    Ok(c * PI / den)
}

/// `a,b,phase` amplitudes of `a|00> + b e^{i phase}|11>`.
pub fn parse_input_state(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("input state `{s}` must be `a,b,phase`"));
    }
    let a = parts[0].parse::<f64>().map_err(|_| format!("bad amplitude `{}`", parts[0]))?;
    let b = parts[1].parse::<f64>().map_err(|_| format!("bad amplitude `{}`", parts[1]))?;
    let phase = parse_angle(parts[2])?;
    Ok((a, b, phase))
}

pub fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected a boolean, got `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert_eq!(parse_angle("pi/6").unwrap(), PI / 6.0);
        assert_eq!(parse_angle("-pi/3").unwrap(), -PI / 3.0);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("PI").unwrap(), PI);
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn config_lines() {
        let c = ConfigFile::parse("# model\nJ = 2.0\ngamma=0.1 # inline\n\nphi = pi/4\n").unwrap();
        assert_eq!(c.get("J"), Some("2.0"));
        assert_eq!(c.get("gamma"), Some("0.1"));
        assert_eq!(c.get("phi"), Some("pi/4"));
        assert!(ConfigFile::parse("nonsense").is_err());
        assert!(ConfigFile::parse("colour = red").is_err());
    }

    #[test]
    fn input_states() {
        assert_eq!(parse_input_state("1,1,0").unwrap(), (1.0, 1.0, 0.0));
        assert_eq!(parse_input_state("0.6, 0.8, pi/2").unwrap().2, PI / 2.0);
        assert!(parse_input_state("1,1").is_err());
    }
}
