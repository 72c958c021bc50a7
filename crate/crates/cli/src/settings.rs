//! Search bounds, merged from flags, an optional `key=value` config file,
//! the `SNARKIT_THREADS` environment variable, and built-in defaults, in
//! that order of precedence.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use snarkit::cycles::{DEFAULT_CYCLE_SPACE_CAP, DEFAULT_FAMILY_BOUND};
use snarkit::matching::DEFAULT_PM_INDEX_CAP;
use snarkit::parameters::{DEFAULT_L_MAX, DEFAULT_SP_MAX, DEFAULT_T_MAX};

pub const THREADS_ENV: &str = "SNARKIT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// Largest perfect matching index searched exactly.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Largest number of added matchings tried for l(G).
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    /// Largest number of copies of one matching tried.
    #[arg(long, global = true)]
    pub tmax: Option<u32>,
    /// Most cycles in a searched cover.
    #[arg(long = "family-bound", global = true)]
    pub family_bound: Option<usize>,
    /// Largest cycle-space dimension enumerated.
    #[arg(long = "space-cap", global = true)]
    pub space_cap: Option<usize>,
    /// Colouring search nodes before a verdict becomes indeterminate.
    #[arg(long = "node-limit", global = true)]
    pub node_limit: Option<u64>,
    /// Worker threads for multi-graph input.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// File of key=value lines using the flag names as keys.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub cap: usize,
    pub kmax: usize,
    pub tmax: u32,
    pub sp_max: u32,
    pub family_bound: usize,
    pub space_cap: usize,
    pub node_limit: Option<u64>,
    pub threads: Option<usize>,
    pub format: Format,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            cap: DEFAULT_PM_INDEX_CAP,
            kmax: DEFAULT_L_MAX,
            tmax: DEFAULT_T_MAX,
            sp_max: DEFAULT_SP_MAX,
            family_bound: DEFAULT_FAMILY_BOUND,
            space_cap: DEFAULT_CYCLE_SPACE_CAP,
            node_limit: None,
            threads: None,
            format: Format::Json,
        }
    }
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key=value", i + 1);
        };
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| anyhow::anyhow!("config key {key}: cannot parse {v:?}"))
}

impl Settings {
    pub fn resolve(flags: &Flags, env_threads: Option<String>) -> Result<Self> {
        let mut s = Settings::default();
        if let Some(t) = env_threads.filter(|t| !t.is_empty()) {
            s.threads = Some(num(THREADS_ENV, &t)?);
        }
        if let Some(path) = &flags.config {
            s.apply_file(path)?;
        }
        if let Some(v) = flags.cap {
            s.cap = v;
        }
        if let Some(v) = flags.kmax {
            s.kmax = v;
        }
        if let Some(v) = flags.tmax {
            s.tmax = v;
            s.sp_max = v;
        }
        if let Some(v) = flags.family_bound {
            s.family_bound = v;
        }
        if let Some(v) = flags.space_cap {
            s.space_cap = v;
        }
        if flags.node_limit.is_some() {
            s.node_limit = flags.node_limit;
        }
        if flags.threads.is_some() {
            s.threads = flags.threads;
        }
        if let Some(f) = flags.format {
            s.format = f;
        }
        Ok(s)
    }

    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (k, v) in parse_config(&text)? {
            match k.as_str() {
                "cap" => self.cap = num(&k, &v)?,
                "kmax" => self.kmax = num(&k, &v)?,
                "tmax" => {
                    self.tmax = num(&k, &v)?;
                    self.sp_max = self.tmax;
                }
                "family-bound" => self.family_bound = num(&k, &v)?,
                "space-cap" => self.space_cap = num(&k, &v)?,
                "node-limit" => self.node_limit = Some(num(&k, &v)?),
                "threads" => self.threads = Some(num(&k, &v)?),
                "format" => {
                    self.format = Format::from_str(&v, true)
                        .map_err(|_| anyhow::anyhow!("config key format: unknown value {v:?}"))?
                }
                other => bail!("unknown config key {other:?}"),
            }
        }
        Ok(())
    }
}
