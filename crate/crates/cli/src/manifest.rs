//! Run manifests and the small argument grammars (ε lists, decoder specs).

use std::fmt;

use bposd_core::bp4::{AlphaMode, Schedule};
use bposd_core::osd4::ReliabilityMode;
use bposd_core::simulator::{DecoderConfig, PostProcess, StopRule};
use serde::{Deserialize, Serialize};

use bposd_core::codes::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Sweep,
    Threshold,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Sweep => "sweep",
            Command::Threshold => "threshold",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    F32,
    #[default]
    F64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Where the codes of a run come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum CodeSpec {
    Family {
        family: Family,
        distances: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        twist: Option<usize>,
    },
    File { paths: Vec<String> },
}

/// Everything needed to reproduce a sweep bit for bit. Worker count and
/// output location are deliberately absent: neither affects the data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Command,
    pub code: CodeSpec,
    /// Human-readable form of `decoder`, e.g. `mbp4+osd0`.
    pub decoder_spec: String,
    pub decoder: DecoderConfig,
    pub epsilons: Vec<f64>,
    pub stop: StopRule,
    pub seed: u64,
    pub precision: Precision,
}

impl RunManifest {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("bad manifest: {e}"))
    }

    /// Recovers the manifest embedded in a CSV (`# manifest {...}` line) or
    /// JSON (`"manifest"` field) artifact.
    pub fn from_artifact(text: &str) -> Result<Self, String> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(trimmed).map_err(|e| format!("bad JSON artifact: {e}"))?;
            let m = v.get("manifest").ok_or("JSON artifact has no \"manifest\" field")?;
            return serde_json::from_value(m.clone()).map_err(|e| format!("bad manifest: {e}"));
        }
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# manifest ") {
                return Self::from_json(rest);
            }
        }
        Err("no `# manifest` line found".into())
    }
}

/// Parses `0.1`, `0.1,0.12,0.15` or `start:stop:step` (inclusive; a
/// trailing point within half a step of `stop` is kept). Items may be mixed:
/// `0.05,0.1:0.2:0.05`.
pub fn parse_epsilons(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if item.contains(':') {
            let parts: Vec<&str> = item.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("range {item:?} must be start:stop:step"));
            }
            let num = |t: &str| t.parse::<f64>().map_err(|_| format!("bad number {t:?} in {item:?}"));
            let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
            if step.is_nan() || step <= 0.0 || stop < start {
                return Err(format!("range {item:?} needs step > 0 and stop >= start"));
            }
            let count = ((stop - start) / step + 0.5).floor() as usize;
            out.extend((0..=count).map(|i| round12(start + i as f64 * step)));
        } else {
            out.push(item.parse::<f64>().map_err(|_| format!("bad epsilon {item:?}"))?);
        }
    }
    if out.is_empty() {
        return Err("empty epsilon list".into());
    }
    if let Some(bad) = out.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return Err(format!("epsilon {bad} outside [0, 1]"));
    }
    Ok(out)
}

/// Snaps accumulated range arithmetic (`0.15000000000000002`) to the
/// intended decimal.
fn round12(x: f64) -> f64 {
    format!("{x:.12}").parse().expect("formatted float parses")
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    let v: Result<Vec<usize>, _> = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| format!("bad integer {x:?}")))
        .collect();
    match v {
        Ok(v) if v.is_empty() => Err("empty list".into()),
        other => other,
    }
}

/// Decoder spec grammar: `bp4` or `mbp4`, optionally followed by `+osdW` or
/// `+mosdW`. `W` is the OSD search order `w`, so `bp4+osd2` is BP₄ followed
/// by order-2 reprocessing.
///
/// `alpha` is only meaningful for `mbp4`: a number fixes `α`, `eps` selects
/// the ε-scaled rule, and the default is `α = 1.6`.
pub fn parse_decoder(spec: &str, alpha: Option<&str>) -> Result<DecoderConfig, String> {
    let spec_lc = spec.trim().to_ascii_lowercase();
    let mut parts = spec_lc.split('+');
    let base = parts.next().unwrap_or_default();
    let post = parts.next();
    if parts.next().is_some() {
        return Err(format!("decoder {spec:?}: at most one `+` stage"));
    }
    let alpha_mode = match (base, alpha) {
        ("bp4", None) => AlphaMode::Plain,
        ("bp4", Some(_)) => return Err("--alpha applies to mbp4 only".into()),
        ("mbp4", None) => AlphaMode::Fixed {
            alpha: AlphaMode::MBP_DEFAULT_ALPHA,
        },
        ("mbp4", Some(a)) if a.eq_ignore_ascii_case("eps") => AlphaMode::epsilon_scaled_default(),
        ("mbp4", Some(a)) => {
            let v: f64 = a.parse().map_err(|_| format!("bad --alpha {a:?} (number or `eps`)"))?;
            if !v.is_finite() || v <= 0.0 {
                return Err(format!("--alpha must be positive, got {a}"));
            }
            AlphaMode::Fixed { alpha: v }
        }
        _ => return Err(format!("decoder {spec:?}: base must be bp4 or mbp4")),
    };
    let post = match post {
        None => PostProcess::None,
        Some(p) => {
            let (mode, digits) = if let Some(d) = p.strip_prefix("mosd") {
                (ReliabilityMode::Mosd4, d)
            } else if let Some(d) = p.strip_prefix("osd") {
                (ReliabilityMode::Osd4, d)
            } else {
                return Err(format!("decoder {spec:?}: post-processing must be osdW or mosdW"));
            };
            let order = digits
                .parse::<usize>()
                .map_err(|_| format!("decoder {spec:?}: {p:?} needs a search order, e.g. osd2"))?;
            PostProcess::Osd { order, mode }
        }
    };
    Ok(DecoderConfig {
        max_iterations: None,
        schedule: Schedule::Serial,
        alpha_mode,
        prior_epsilon: None,
        post,
    })
}

/// Inverse of [`parse_decoder`] for the stage names (ignores α value).
pub fn decoder_label(cfg: &DecoderConfig) -> String {
    let base = match cfg.alpha_mode {
        AlphaMode::Plain => "bp4",
        _ => "mbp4",
    };
    match cfg.post {
        PostProcess::None => base.to_string(),
        PostProcess::Osd { order, mode } => {
            let m = match mode {
                ReliabilityMode::Osd4 => "osd",
                ReliabilityMode::Mosd4 => "mosd",
            };
            format!("{base}+{m}{order}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_are_inclusive_and_clean() {
        let e = parse_epsilons("0.14:0.20:0.01").unwrap();
        assert_eq!(e, vec![0.14, 0.15, 0.16, 0.17, 0.18, 0.19, 0.2]);
        assert_eq!(parse_epsilons("0.1, 0.2").unwrap(), vec![0.1, 0.2]);
        assert_eq!(parse_epsilons("0.05,0.1:0.2:0.05").unwrap(), vec![0.05, 0.1, 0.15, 0.2]);
        assert!(parse_epsilons("0.2:0.1:0.01").is_err());
        assert!(parse_epsilons("1.5").is_err());
        assert!(parse_epsilons("").is_err());
    }

    #[test]
    fn decoder_grammar() {
        let c = parse_decoder("bp4+osd2", None).unwrap();
        assert_eq!(c.alpha_mode, AlphaMode::Plain);
        assert_eq!(
            c.post,
            PostProcess::Osd {
                order: 2,
                mode: ReliabilityMode::Osd4
            }
        );
        let c = parse_decoder("MBP4+mosd0", None).unwrap();
        assert_eq!(c.alpha_mode, AlphaMode::Fixed { alpha: 1.6 });
        assert_eq!(decoder_label(&c), "mbp4+mosd0");
        let c = parse_decoder("mbp4", Some("eps")).unwrap();
        assert_eq!(c.alpha_mode, AlphaMode::epsilon_scaled_default());
        assert_eq!(c.post, PostProcess::None);
        assert!(parse_decoder("bp4", Some("1.2")).is_err());
        assert!(parse_decoder("bp2", None).is_err());
        assert!(parse_decoder("bp4+osd", None).is_err());
        assert!(parse_decoder("bp4+osd2+osd3", None).is_err());
        assert!(parse_decoder("mbp4", Some("-1")).is_err());
    }
}
