//! Run manifests: an ordered list of CLI steps executed in one process.
//!
//! ```json
//! { "digits": 120,
//!   "steps": [
//!     { "command": "model", "args": ["--kind", "cube2021", "--n", "81"],
//!       "outputs": ["f.json"] },
//!     { "command": "pade", "args": ["--series", "f.json", "--n", "40"],
//!       "inputs": ["f.json"], "outputs": ["pade.json"] } ] }
//! ```
//!
//! Each step's `outputs` must include its `--out` file when it writes one;
//! the runner appends `--out` itself when exactly one output is listed and
//! the arguments do not already name it. Paths are relative to the manifest's
//! directory. Every step is parsed and every input checked before anything
//! runs, so a malformed manifest fails without side effects.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::cli::{execute, Cli, Command};
use crate::error::CliError;
use crate::formats::read_text;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    #[serde(default)]
    pub digits: Option<u32>,
    #[serde(default)]
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub command: String,
    #[serde(default)]
    pub args: Vec<String>,
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default)]
    pub outputs: Vec<String>,
}

/// A manifest whose steps have all been parsed and whose inputs resolve.
#[derive(Debug)]
pub struct Plan {
    pub base: PathBuf,
    pub steps: Vec<(String, Cli)>,
}

impl RunManifest {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::io(format!("manifest: {e}")))
    }

    /// Parse every step and verify that each input exists on disk or is
    /// produced by an earlier step. `digits` overrides the manifest's own.
    pub fn plan(&self, base: &Path, digits: Option<u32>, quiet: bool) -> Result<Plan, CliError> {
        let digits = digits.or(self.digits);
        let mut produced = BTreeSet::new();
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate() {
            let label = format!("step {} ({})", i + 1, step.command);
            let mut argv = vec!["branchpoint".to_string()];
            if let Some(d) = digits {
                argv.push("--digits".into());
                argv.push(d.to_string());
            }
            if quiet {
                argv.push("--quiet".into());
            }
            argv.push(step.command.clone());
            argv.extend(step.args.iter().cloned());
            if step.outputs.len() == 1 && !step.args.iter().any(|a| a == "--out") {
                argv.push("--out".into());
                argv.push(step.outputs[0].clone());
            }
            let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::contract(format!("{label}: {e}")))?;
            if matches!(cli.command, Command::Run { .. }) {
                return Err(CliError::contract(format!("{label}: manifests cannot nest")));
            }
            for input in &step.inputs {
                if !produced.contains(input) && !base.join(input).exists() {
                    return Err(CliError::contract(format!(
                        "{label}: dangling reference {input:?} is neither on disk nor produced by an earlier step"
                    )));
                }
            }
            produced.extend(step.outputs.iter().cloned());
            steps.push((label, cli));
        }
        Ok(Plan { base: base.to_path_buf(), steps })
    }
}

impl Plan {
    pub fn execute(&self) -> Result<(), CliError> {
        for (label, cli) in &self.steps {
            if !cli.quiet {
                eprintln!("{label}");
            }
            execute(cli, &self.base).map_err(|e| e.context(label))?;
        }
        Ok(())
    }
}

/// Load, validate and execute the manifest at `path`.
pub fn run_manifest(path: &Path, digits: Option<u32>, quiet: bool) -> Result<(), CliError> {
    let manifest = RunManifest::parse(&read_text(path)?)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    manifest.plan(&base, digits, quiet)?.execute()
}
