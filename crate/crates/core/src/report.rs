//! Report plumbing: every command's JSON output embeds a manifest with
//! the command line, the config snapshot, the constant provenance, the
//! tool version, wall time, and a digest of the body. Two runs with the
//! same inputs produce identical bodies and digests; only the timing
//! fields differ.

use crate::error::{Error, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const JOBS_ENV: &str = "TIGHTDESIGNS_JOBS";

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub args: Vec<String>,
    pub config: BTreeMap<String, String>,
    /// "paper" for published constants, "certified" for self-derived
    pub provenance: String,
    pub wall_time_seconds: f64,
    pub body_sha256: String,
}

impl RunManifest {
    pub fn new(command: &str, provenance: &str, config: BTreeMap<String, String>) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            args: std::env::args().skip(1).collect(),
            config,
            provenance: provenance.to_string(),
            wall_time_seconds: 0.0,
            body_sha256: String::new(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub manifest: RunManifest,
    pub body: T,
}

/// Finish a manifest and wrap the body: the digest is over the body's
/// canonical JSON, so reruns are comparable by digest alone.
pub fn render<T: Serialize>(
    mut manifest: RunManifest,
    body: T,
    wall_time_seconds: f64,
) -> Result<String> {
    let body_json =
        serde_json::to_string(&body).map_err(|e| Error::Other(format!("serialize: {}", e)))?;
    let mut hasher = Sha256::new();
    hasher.update(body_json.as_bytes());
    manifest.body_sha256 = format!("{:x}", hasher.finalize());
    manifest.wall_time_seconds = wall_time_seconds;
    serde_json::to_string_pretty(&Report { manifest, body })
        .map_err(|e| Error::Other(format!("serialize: {}", e)))
}

/// Plain key=value config: blank lines and '#' comments ignored.
pub fn parse_config(src: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Other(format!(
            "config line {} is not key=value: {:?}",
            lineno + 1,
            line
        )))?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

pub fn load_config(path: &std::path::Path) -> Result<BTreeMap<String, String>> {
    parse_config(&std::fs::read_to_string(path)?)
}

/// Job count resolution: flag beats env beats single-threaded default.
pub fn resolve_jobs(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(JOBS_ENV).ok().and_then(|v| v.parse().ok()))
        .filter(|&j| j > 0)
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let cfg = parse_config("# comment\n\n s = 5 \nbeta0=33.76\n").unwrap();
        assert_eq!(cfg.get("s").unwrap(), "5");
        assert_eq!(cfg.get("beta0").unwrap(), "33.76");
        assert!(parse_config("no equals sign").is_err());
    }

    #[test]
    fn digest_is_deterministic() {
        let m = RunManifest::new("test", "paper", BTreeMap::new());
        let a = render(m.clone(), vec![1, 2, 3], 0.5).unwrap();
        let b = render(m, vec![1, 2, 3], 9.0).unwrap();
        let get = |s: &str| {
            let v: serde_json::Value = serde_json::from_str(s).unwrap();
            v["manifest"]["body_sha256"].as_str().unwrap().to_string()
        };
        assert_eq!(get(&a), get(&b));
    }
}
