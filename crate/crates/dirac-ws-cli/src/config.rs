//! Parameter resolution: defaults, figure presets, config file, command-line
//! flags — later layers win field by field.

use crate::output::Format;

/// One layer of parameter overrides; `None` means "not set at this layer".
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub m0: Option<f64>,
    pub m1: Option<f64>,
    pub v0: Option<f64>,
    pub alpha: Option<f64>,
    pub len_l: Option<f64>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
}

/// Fully resolved run parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub m0: f64,
    pub m1: f64,
    pub v0: f64,
    pub alpha: f64,
    pub len_l: f64,
    pub grid: usize,
    /// Root-acceptance tolerance; `None` defers to library defaults.
    pub tol: Option<f64>,
    pub format: Format,
}

impl Default for Resolved {
    fn default() -> Self {
        Resolved {
            m0: 0.4,
            m1: 0.0,
            v0: 1.2,
            alpha: 5.0,
            len_l: 10.0,
            grid: 2000,
            tol: None,
            format: Format::Csv,
        }
    }
}

/// Apply layers in order on top of the defaults; later layers win.
pub fn resolve(layers: &[Overrides]) -> Resolved {
    let mut r = Resolved::default();
    for o in layers {
        if let Some(v) = o.m0 {
            r.m0 = v;
        }
        if let Some(v) = o.m1 {
            r.m1 = v;
        }
        if let Some(v) = o.v0 {
            r.v0 = v;
        }
        if let Some(v) = o.alpha {
            r.alpha = v;
        }
        if let Some(v) = o.len_l {
            r.len_l = v;
        }
        if let Some(v) = o.grid {
            r.grid = v;
        }
        if let Some(v) = o.tol {
            r.tol = Some(v);
        }
        if let Some(v) = o.format {
            r.format = v;
        }
    }
    r
}

/// Parse a flat `key = value` config file. Blank lines and full-line `#`
/// comments are skipped; whitespace around keys and values is trimmed; a key
/// given twice keeps its last value. Keys mirror the global flags.
pub fn parse_config_str(text: &str) -> Result<Overrides, String> {
    let mut o = Overrides::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let n = idx + 1;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {n}: expected `key = value`, got `{line}`"))?;
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(format!("line {n}: key `{key}` has an empty value"));
        }
        let bad = |what: &str| format!("line {n}: {what} `{value}` for key `{key}`");
        match key {
            "m0" => o.m0 = Some(parse_f64(value).ok_or_else(|| bad("bad number"))?),
            "m1" => o.m1 = Some(parse_f64(value).ok_or_else(|| bad("bad number"))?),
            "v0" => o.v0 = Some(parse_f64(value).ok_or_else(|| bad("bad number"))?),
            "alpha" => o.alpha = Some(parse_f64(value).ok_or_else(|| bad("bad number"))?),
            "len_l" => o.len_l = Some(parse_f64(value).ok_or_else(|| bad("bad number"))?),
            "grid" => o.grid = Some(value.parse::<usize>().map_err(|_| bad("bad point count"))?),
            "tol" => o.tol = Some(parse_f64(value).ok_or_else(|| bad("bad number"))?),
            "format" => {
                o.format = Some(match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(bad("unknown format")),
                })
            }
            _ => return Err(format!("line {n}: unknown config key `{key}`")),
        }
    }
    Ok(o)
}

fn parse_f64(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parse a `lo:hi` window. Both endpoints must be finite and ordered;
/// a degenerate `a:a` window is allowed and yields a constant grid.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `lo:hi`, got `{s}`"))?;
    let lo = parse_f64(lo.trim()).ok_or_else(|| format!("bad window start `{lo}`"))?;
    let hi = parse_f64(hi.trim()).ok_or_else(|| format!("bad window end `{hi}`"))?;
    if lo > hi {
        return Err(format!("window start {lo} exceeds end {hi}"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_layers_and_comments() {
        let o = parse_config_str("# heading\n\n m0 = 0.5 \nalpha=7\nm0 = 0.45\n").unwrap();
        assert_eq!(o.m0, Some(0.45)); // last assignment wins
        assert_eq!(o.alpha, Some(7.0));
        assert_eq!(o.v0, None);

        let r = resolve(&[
            Overrides {
                m0: Some(0.5),
                ..Default::default()
            },
            o,
        ]);
        assert_eq!(r.m0, 0.45);
        assert_eq!(r.alpha, 7.0);
        assert_eq!(r.v0, 1.2);
    }

    #[test]
    fn config_rejects_junk() {
        assert!(parse_config_str("volume = 11\n").is_err());
        assert!(parse_config_str("m0 = grape\n").is_err());
        assert!(parse_config_str("m0\n").is_err());
        assert!(parse_config_str("m0 =\n").is_err());
        assert!(parse_config_str("m0 = inf\n").is_err());
        assert!(parse_config_str("format = yaml\n").is_err());
        assert!(parse_config_str("grid = -3\n").is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("0.4:0.8"), Ok((0.4, 0.8)));
        assert_eq!(parse_range(" 1e-3 : 2.5 "), Ok((1e-3, 2.5)));
        assert_eq!(parse_range("0.6:0.6"), Ok((0.6, 0.6)));
        assert!(parse_range("2:1").is_err());
        assert!(parse_range(":").is_err());
        assert!(parse_range("1e3:").is_err());
        assert!(parse_range("a:b").is_err());
        assert!(parse_range("nan:1").is_err());
        assert!(parse_range("0.4").is_err());
    }
}
