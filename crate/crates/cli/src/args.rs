//! Experiment flags. Every config field has a flag; flags override the file.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use hyperseed_harness::ExperimentConfig;

#[derive(Args, Debug, Default, Clone)]
pub struct ConfigArgs {
    /// TOML experiment config
    #[arg(short, long)]
    pub config: Option<PathBuf>,

    /// Generic override, `section.field=value` (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// csv, fcps or corpus
    #[arg(long, help_heading = "Data")]
    pub source: Option<String>,
    #[arg(long, help_heading = "Data")]
    pub path: Option<PathBuf>,
    #[arg(long, help_heading = "Data")]
    pub label_column: Option<String>,
    /// FCPS dataset name
    #[arg(long, help_heading = "Data")]
    pub name: Option<String>,
    #[arg(long, help_heading = "Data")]
    pub n_points: Option<usize>,
    #[arg(long, help_heading = "Data")]
    pub train_fraction: Option<f64>,
    #[arg(long, help_heading = "Data")]
    pub train_dir: Option<PathBuf>,
    #[arg(long, help_heading = "Data")]
    pub test_dir: Option<PathBuf>,
    /// Comma-separated language subset
    #[arg(long, help_heading = "Data")]
    pub languages: Option<String>,
    #[arg(long, help_heading = "Data")]
    pub max_train_chunks: Option<usize>,
    #[arg(long, help_heading = "Data")]
    pub max_test_sentences: Option<usize>,
    #[arg(long, help_heading = "Data")]
    pub chunk_len: Option<usize>,

    /// Quantization levels
    #[arg(long, help_heading = "Encoder")]
    pub q: Option<usize>,
    #[arg(long, help_heading = "Encoder")]
    pub epsilon_d: Option<f64>,
    #[arg(long, help_heading = "Encoder")]
    pub ngram_n: Option<usize>,

    /// Map rows
    #[arg(long = "map-n", help_heading = "Map")]
    pub map_n: Option<usize>,
    /// Map columns
    #[arg(long = "map-m", help_heading = "Map")]
    pub map_m: Option<usize>,
    #[arg(long, help_heading = "Map")]
    pub epsilon_p: Option<f64>,

    /// Dimensionality
    #[arg(short = 'd', long = "dim", help_heading = "Training")]
    pub d: Option<usize>,
    #[arg(long, help_heading = "Training")]
    pub iterations: Option<usize>,
    #[arg(long, help_heading = "Training")]
    pub num_seeds: Option<usize>,
    /// random, corners or fixed
    #[arg(long, help_heading = "Training")]
    pub strategy: Option<String>,
    /// Fixed targets as `i,j;i,j;...`
    #[arg(long, help_heading = "Training")]
    pub targets: Option<String>,
    #[arg(long, help_heading = "Training")]
    pub renormalize: Option<bool>,

    /// Master seed
    #[arg(long, help_heading = "Run")]
    pub seed: Option<u64>,
    #[arg(long, help_heading = "Run")]
    pub repeats: Option<usize>,
    /// best or mean
    #[arg(long, help_heading = "Run")]
    pub select: Option<String>,
}

fn quoted(s: &str) -> String {
    format!("{s:?}")
}

fn path(p: &std::path::Path) -> String {
    quoted(&p.to_string_lossy())
}

impl ConfigArgs {
    /// Flag overrides as `(section.field, toml value)` pairs.
    pub fn overrides(&self) -> Result<Vec<(String, String)>> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push((k.to_string(), v));
            }
        };
        put("data.source", self.source.as_deref().map(quoted));
        put("data.path", self.path.as_deref().map(path));
        put(
            "data.label_column",
            self.label_column.as_deref().map(quoted),
        );
        put("data.name", self.name.as_deref().map(quoted));
        put("data.n_points", self.n_points.map(|v| v.to_string()));
        put(
            "data.train_fraction",
            self.train_fraction.map(|v| format!("{v:?}")),
        );
        put("data.train_dir", self.train_dir.as_deref().map(path));
        put("data.test_dir", self.test_dir.as_deref().map(path));
        put(
            "data.languages",
            self.languages.as_deref().map(|l| {
                let items: Vec<String> = l.split(',').map(|s| quoted(s.trim())).collect();
                format!("[{}]", items.join(", "))
            }),
        );
        put(
            "data.max_train_chunks",
            self.max_train_chunks.map(|v| v.to_string()),
        );
        put(
            "data.max_test_sentences",
            self.max_test_sentences.map(|v| v.to_string()),
        );
        put("data.chunk_len", self.chunk_len.map(|v| v.to_string()));
        put("encoder.q", self.q.map(|v| v.to_string()));
        put(
            "encoder.epsilon_d",
            self.epsilon_d.map(|v| format!("{v:?}")),
        );
        put("encoder.ngram_n", self.ngram_n.map(|v| v.to_string()));
        put("map.n", self.map_n.map(|v| v.to_string()));
        put("map.m", self.map_m.map(|v| v.to_string()));
        put("map.epsilon_p", self.epsilon_p.map(|v| format!("{v:?}")));
        put("train.d", self.d.map(|v| v.to_string()));
        put("train.iterations", self.iterations.map(|v| v.to_string()));
        put("train.num_seeds", self.num_seeds.map(|v| v.to_string()));
        put("train.strategy", self.strategy.as_deref().map(quoted));
        put("train.renormalize", self.renormalize.map(|v| v.to_string()));
        put("run.seed", self.seed.map(|v| v.to_string()));
        put("run.repeats", self.repeats.map(|v| v.to_string()));
        put("run.select", self.select.as_deref().map(quoted));
        if let Some(t) = &self.targets {
            out.push(("train.targets".into(), parse_targets(t)?));
        }
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .with_context(|| format!("--set expects KEY=VALUE, got {kv:?}"))?;
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(out)
    }

    /// The config file (if any) with all flags applied.
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let overrides = self.overrides()?;
        match &self.config {
            Some(p) => {
                let mut cfg = ExperimentConfig::load(p)?;
                if !overrides.is_empty() {
                    cfg.apply(&overrides)?;
                }
                Ok(cfg)
            }
            None => Ok(ExperimentConfig::from_overrides(&overrides)?),
        }
    }

    /// Flags applied on top of an existing config (e.g. one stored in a model).
    pub fn apply_to(&self, cfg: &mut ExperimentConfig) -> Result<()> {
        let overrides = self.overrides()?;
        if !overrides.is_empty() {
            cfg.apply(&overrides)?;
        }
        Ok(())
    }
}

fn parse_targets(spec: &str) -> Result<String> {
    let mut items = Vec::new();
    for pair in spec.split(';').filter(|s| !s.trim().is_empty()) {
        let (i, j) = pair
            .split_once(',')
            .with_context(|| format!("target {pair:?} is not i,j"))?;
        let i: usize = i
            .trim()
            .parse()
            .with_context(|| format!("bad row in {pair:?}"))?;
        let j: usize = j
            .trim()
            .parse()
            .with_context(|| format!("bad column in {pair:?}"))?;
        items.push(format!("[{i}, {j}]"));
    }
    Ok(format!("[{}]", items.join(", ")))
}
