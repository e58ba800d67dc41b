//! Output plumbing: run manifests, CSV/JSON emission, deterministic files.
//!
//! Data files never embed timing or environment state; the manifest (written
//! alongside `--out` targets as `<out>.manifest.json`) carries the command,
//! argument set, precision policy, seed, version, and wall time.

use anyhow::{Context, Result};
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub prec_start: u32,
    pub prec_max: u32,
    pub tol: f64,
    pub seed: u64,
    pub version: String,
    pub wall_ms: u128,
}

pub struct OutputCtx {
    pub out: Option<PathBuf>,
    pub command: String,
    pub argv: Vec<String>,
    pub prec_start: u32,
    pub prec_max: u32,
    pub tol: f64,
    pub seed: u64,
    pub started: Instant,
}

impl OutputCtx {
    pub fn emit(&self, data: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                fs::write(path, data)
                    .with_context(|| format!("writing {}", path.display()))?;
                let manifest = RunManifest {
                    command: self.command.clone(),
                    argv: self.argv.clone(),
                    prec_start: self.prec_start,
                    prec_max: self.prec_max,
                    tol: self.tol,
                    seed: self.seed,
                    version: env!("CARGO_PKG_VERSION").to_string(),
                    wall_ms: self.started.elapsed().as_millis(),
                };
                let mpath = manifest_path(path);
                fs::write(&mpath, serde_json::to_string_pretty(&manifest)?)
                    .with_context(|| format!("writing {}", mpath.display()))?;
                Ok(())
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(data.as_bytes())?;
                if !data.ends_with('\n') {
                    stdout.write_all(b"\n")?;
                }
                Ok(())
            }
        }
    }
}

pub fn manifest_path(out: &PathBuf) -> PathBuf {
    let mut p = out.clone();
    let name = p
        .file_name()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "out".to_string());
    p.set_file_name(format!("{}.manifest.json", name));
    p
}
