use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Output directory; every artifact of a run is written below it.
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> anyhow::Result<Self> {
        fs::create_dir_all(root).with_context(|| format!("creating {}", root.display()))?;
        Ok(Self { root: root.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write(&self, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
        let path = self.path(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        log::info!("wrote {}", path.display());
        Ok(path)
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> anyhow::Result<PathBuf> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, &text)
    }

    pub fn write_csv<T: Serialize>(&self, name: &str, rows: &[T]) -> anyhow::Result<PathBuf> {
        let path = self.path(name);
        let mut w = csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(path)
    }

    /// Resolved configuration plus the parsed inputs; enough to repeat the
    /// run. Deliberately free of timestamps and host details.
    pub fn write_manifest(&self, command: &str, cfg: &RunConfig, inputs: Value, params: Value) -> anyhow::Result<PathBuf> {
        self.write_json(
            "manifest.json",
            &json!({
                "tool": env!("CARGO_PKG_NAME"),
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "config": cfg,
                "parameters": params,
                "inputs": inputs,
            }),
        )
    }
}

/// Reads a file for parsing, naming it in errors.
pub fn read_input(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Embeds a JSON document we produced ourselves.
pub fn as_json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or(Value::String(text.to_owned()))
}

/// `start:step:stop` (inclusive) or a single value.
pub fn parse_grid(spec: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> anyhow::Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| tbp_core::Error::Config(format!("bad number {s:?} in SNR grid {spec:?}")).into())
    };
    match parts.as_slice() {
        [one] => Ok(vec![num(one)?]),
        [start, step, stop] => {
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if !(step > 0.0) || stop < start || !start.is_finite() || !stop.is_finite() {
                return Err(tbp_core::Error::Config(format!(
                    "SNR grid {spec:?} needs a positive step and stop >= start"
                ))
                .into());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            // rounded so that 0.1-style steps print cleanly
            Ok((0..count)
                .map(|k| ((start + k as f64 * step) * 1e9).round() / 1e9)
                .collect())
        }
        _ => Err(tbp_core::Error::Config(format!("SNR grid {spec:?} is not start:step:stop")).into()),
    }
}

/// Comma-separated non-negative integers.
pub fn parse_counts(spec: &str) -> anyhow::Result<Vec<u32>> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| tbp_core::Error::Config(format!("bad count {t:?} in {spec:?}")).into())
        })
        .collect()
}
