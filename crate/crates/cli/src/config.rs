//! Flat key=value configuration with layered precedence:
//! command-line flags > config file > per-command defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

pub const KEYS: [&str; 21] = [
    "a",
    "a_list",
    "d",
    "eta",
    "func",
    "kappa",
    "kappa_range",
    "lambda",
    "out",
    "output",
    "r",
    "R",
    "step",
    "suite",
    "tau",
    "tol",
    "v",
    "v_max",
    "w",
    "x",
    "y",
];

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `v-max` and `v_max` name the same key.
fn normalize(key: &str) -> String {
    key.replace('-', "_")
}

pub fn parse_config_text(
    text: &str,
    origin: &str,
) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError(format!(
                "{origin}:{lineno}: expected key=value, got {line:?}"
            )));
        };
        let key = normalize(k.trim());
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError(format!(
                "{origin}:{lineno}: unknown key {:?}",
                k.trim()
            )));
        }
        let value = v.trim();
        if value.is_empty() {
            return Err(ConfigError(format!(
                "{origin}:{lineno}: empty value for {key}"
            )));
        }
        if out.insert(key.clone(), value.to_string()).is_some() {
            return Err(ConfigError(format!(
                "{origin}:{lineno}: duplicate key {key}"
            )));
        }
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text, &path.display().to_string())
}

/// Merged settings; every lookup parses the stored text and names the key
/// and its source on failure.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
    sources: BTreeMap<String, &'static str>,
}

impl Settings {
    pub fn merge(
        defaults: &[(&str, &str)],
        file: &BTreeMap<String, String>,
        flags: &BTreeMap<String, String>,
    ) -> Result<Self, ConfigError> {
        if flags.contains_key("kappa") && flags.contains_key("lambda") {
            return Err(ConfigError(
                "--kappa and --lambda are mutually exclusive".into(),
            ));
        }
        if file.contains_key("kappa") && file.contains_key("lambda") {
            return Err(ConfigError("config sets both kappa and lambda".into()));
        }
        let mut s = Settings::default();
        for (k, v) in defaults {
            s.values.insert(k.to_string(), v.to_string());
            s.sources.insert(k.to_string(), "default");
        }
        for (layer, src) in [(file, "config"), (flags, "flag")] {
            // a higher layer choosing one of kappa/lambda drops the other
            for (k, other) in [("kappa", "lambda"), ("lambda", "kappa")] {
                if layer.contains_key(k) {
                    s.values.remove(other);
                    s.sources.remove(other);
                }
            }
            for (k, v) in layer {
                s.values.insert(k.clone(), v.clone());
                s.sources.insert(k.clone(), src);
            }
        }
        Ok(s)
    }

    pub fn echo(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn bad(&self, key: &str, what: &str) -> ConfigError {
        let src = self.sources.get(key).copied().unwrap_or("?");
        ConfigError(format!(
            "{key} = {:?} ({src}): {what}",
            self.values.get(key).map_or("", |v| v)
        ))
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => match v.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(Some(x)),
                _ => Err(self.bad(key, "expected a finite number")),
            },
        }
    }

    pub fn u32(&self, key: &str) -> Result<Option<u32>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<u32>()
                .map(Some)
                .map_err(|_| self.bad(key, "expected a nonnegative integer")),
        }
    }

    pub fn req_f64(&self, key: &str) -> Result<f64, ConfigError> {
        self.f64(key)?
            .ok_or_else(|| ConfigError(format!("missing required value: {key}")))
    }

    pub fn positive(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.f64(key)? {
            Some(x) if x <= 0.0 => Err(self.bad(key, "must be positive")),
            other => Ok(other),
        }
    }

    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        let Some(v) = self.values.get(key) else {
            return Ok(None);
        };
        let list: Result<Vec<f64>, _> = v.split(',').map(|p| p.trim().parse::<f64>()).collect();
        match list {
            Ok(l) if !l.is_empty() && l.iter().all(|x| x.is_finite()) => Ok(Some(l)),
            _ => Err(self.bad(key, "expected a comma-separated list of numbers")),
        }
    }

    /// lo:hi:step, inclusive of hi up to rounding.
    pub fn range(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        let Some(v) = self.values.get(key) else {
            return Ok(None);
        };
        let parts: Vec<Option<f64>> = v.split(':').map(|p| p.trim().parse::<f64>().ok()).collect();
        let [Some(lo), Some(hi), Some(step)] = parts[..] else {
            return Err(self.bad(key, "expected lo:hi:step"));
        };
        if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(self.bad(key, "need lo <= hi and step > 0"));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        if n > 1_000_000 {
            return Err(self.bad(key, "more than a million points"));
        }
        // plain decimals: step in units of 10^-digits, so 0:1:0.1 gives 0.3 and not 0.30000000000000004
        let digits = v
            .split(':')
            .map(decimals)
            .try_fold(0u32, |m, d| d.map(|d| m.max(d)));
        let points = match digits {
            Some(dg) if dg <= 12 => {
                let k = 10f64.powi(dg as i32);
                let (lo_k, step_k) = ((lo * k).round(), (step * k).round());
                (0..=n).map(|i| (lo_k + i as f64 * step_k) / k).collect()
            }
            _ => (0..=n).map(|i| lo + i as f64 * step).collect(),
        };
        Ok(Some(points))
    }
}

/// Digits after the decimal point of a plain decimal literal; None for
/// exponent notation.
fn decimals(s: &str) -> Option<u32> {
    let s = s.trim();
    if s.contains(['e', 'E']) {
        return None;
    }
    Some(s.split_once('.').map_or(0, |(_, f)| f.len() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let m = parse_config_text("# c\na = 2\nv-max=10\n\n", "t").unwrap();
        assert_eq!(m["a"], "2");
        assert_eq!(m["v_max"], "10");
        let e = parse_config_text("a=1\nfoo=2\n", "t").unwrap_err();
        assert!(e.0.contains("t:2") && e.0.contains("foo"));
        assert!(parse_config_text("a 1", "t").is_err());
        assert!(parse_config_text("a=1\na=2", "t").is_err());
    }

    #[test]
    fn precedence() {
        let file = parse_config_text("a=1\nkappa=0.5\nv_max=3", "t").unwrap();
        let mut flags = BTreeMap::new();
        flags.insert("a".to_string(), "2".to_string());
        flags.insert("lambda".to_string(), "0.3".to_string());
        let s = Settings::merge(&[("v_max", "50"), ("step", "0.01")], &file, &flags).unwrap();
        assert_eq!(s.str("a"), Some("2"));
        assert_eq!(s.str("v_max"), Some("3"));
        assert_eq!(s.str("step"), Some("0.01"));
        assert!(!s.has("kappa"));
        assert_eq!(s.f64("lambda").unwrap(), Some(0.3));
    }

    #[test]
    fn ranges() {
        let mut flags = BTreeMap::new();
        flags.insert("kappa_range".to_string(), "0:1:0.1".to_string());
        let s = Settings::merge(&[], &BTreeMap::new(), &flags).unwrap();
        let r = s.range("kappa_range").unwrap().unwrap();
        assert_eq!(r.len(), 11);
        assert_eq!(r[3], 0.3);
        assert_eq!(r[10], 1.0);
    }
}
