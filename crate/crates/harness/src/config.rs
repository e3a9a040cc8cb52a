//! Experiment configuration: one TOML document with the sections `data`,
//! `encoder`, `map`, `train` and `run`.

use std::fs;
use std::path::{Path, PathBuf};

use hyperseed::{Coord, TargetStrategy, TrainConfig};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::fcps::FcpsName;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub data: DataConfig,
    #[serde(default)]
    pub encoder: EncoderConfig,
    #[serde(default)]
    pub map: MapConfig,
    #[serde(default)]
    pub train: TrainSection,
    #[serde(default)]
    pub run: RunConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataSource {
    /// Feature table from a CSV file.
    Csv,
    /// Generated FCPS-style point cloud.
    Fcps,
    /// Directory-per-language text corpus.
    Corpus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    pub source: DataSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_column: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<FcpsName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_points: Option<usize>,
    /// Fraction of each class used for training (tabular sources).
    #[serde(default = "default_train_fraction")]
    pub train_fraction: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub train_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_dir: Option<PathBuf>,
    /// Subset of language directories; all when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub languages: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_train_chunks: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_test_sentences: Option<usize>,
    #[serde(default = "default_chunk_len")]
    pub chunk_len: usize,
}

fn default_train_fraction() -> f64 {
    0.5
}

fn default_chunk_len() -> usize {
    1000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EncoderConfig {
    pub q: usize,
    pub epsilon_d: f64,
    pub ngram_n: usize,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        Self {
            q: 10,
            epsilon_d: 0.1,
            ngram_n: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MapConfig {
    pub n: usize,
    pub m: usize,
    pub epsilon_p: f64,
}

impl Default for MapConfig {
    fn default() -> Self {
        Self {
            n: 100,
            m: 100,
            epsilon_p: 0.03,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Random,
    Corners,
    Fixed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrainSection {
    pub d: usize,
    pub iterations: usize,
    pub num_seeds: usize,
    pub strategy: Strategy,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<[usize; 2]>,
    pub renormalize: bool,
}

impl Default for TrainSection {
    fn default() -> Self {
        Self {
            d: 1000,
            iterations: 1,
            num_seeds: 1,
            strategy: Strategy::Random,
            targets: Vec::new(),
            renormalize: false,
        }
    }
}

impl TrainSection {
    pub fn to_train_config(&self) -> TrainConfig {
        let strategy = match self.strategy {
            Strategy::Random => TargetStrategy::RandomNode,
            Strategy::Corners => TargetStrategy::CornerCycle,
            Strategy::Fixed => TargetStrategy::FixedList(
                self.targets
                    .iter()
                    .map(|&[i, j]| Coord::new(i, j))
                    .collect(),
            ),
        };
        TrainConfig {
            iterations: self.iterations,
            num_seeds: self.num_seeds,
            strategy,
            renormalize: self.renormalize,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Select {
    Best,
    Mean,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub repeats: usize,
    pub select: Select,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            repeats: 1,
            select: Select::Best,
        }
    }
}

impl ExperimentConfig {
    /// Reads and validates a config file. Relative data paths are taken
    /// relative to the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        let mut cfg: Self = toml::from_str(&text).map_err(|source| HarnessError::Toml {
            path: path.to_path_buf(),
            source,
        })?;
        if let Some(dir) = path.parent() {
            cfg.resolve_paths(dir);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|source| HarnessError::Toml {
            path: PathBuf::from("<inline>"),
            source,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn resolve_paths(&mut self, dir: &Path) {
        for p in [
            &mut self.data.path,
            &mut self.data.train_dir,
            &mut self.data.test_dir,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
    }

    /// Overrides one field, addressed as `section.field`. The value is parsed
    /// as a TOML value, falling back to a plain string.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        self.apply(&[(key.to_string(), value.to_string())])
    }

    /// Applies several overrides at once; the result is validated only after
    /// all of them are in place.
    pub fn apply(&mut self, overrides: &[(String, String)]) -> Result<()> {
        let mut doc = toml::Table::try_from(&*self).expect("config serializes");
        *self = Self::from_table(&mut doc, overrides)?;
        Ok(())
    }

    /// Builds a config from overrides alone, with defaults elsewhere.
    pub fn from_overrides(overrides: &[(String, String)]) -> Result<Self> {
        Self::from_table(&mut toml::Table::new(), overrides)
    }

    fn from_table(doc: &mut toml::Table, overrides: &[(String, String)]) -> Result<Self> {
        for (key, value) in overrides {
            let (section, field) = key
                .split_once('.')
                .ok_or_else(|| HarnessError::config(key, "expected section.field"))?;
            let table = doc
                .entry(section.to_string())
                .or_insert_with(|| toml::Value::Table(toml::Table::new()))
                .as_table_mut()
                .ok_or_else(|| HarnessError::config(section, "not a section"))?;
            let parsed = format!("v = {value}")
                .parse::<toml::Table>()
                .ok()
                .and_then(|mut t| t.remove("v"))
                .unwrap_or_else(|| toml::Value::String(value.to_string()));
            table.insert(field.to_string(), parsed);
        }
        let updated: Self = doc.clone().try_into().map_err(|e: toml::de::Error| {
            let keys: Vec<&str> = overrides.iter().map(|(k, _)| k.as_str()).collect();
            HarnessError::config(keys.join(", "), e.message().to_string())
        })?;
        updated.validate()?;
        Ok(updated)
    }

    /// Checks every field, reporting the first problem with its path.
    pub fn validate(&self) -> Result<()> {
        let err = |f: &str, m: &str| Err(HarnessError::config(f, m));
        let d = &self.data;
        match d.source {
            DataSource::Csv => {
                if d.path.is_none() {
                    return err("data.path", "required for csv data");
                }
                if d.label_column.is_none() {
                    return err("data.label_column", "required for csv data");
                }
            }
            DataSource::Fcps => {
                if d.name.is_none() {
                    return err("data.name", "required for fcps data");
                }
                if d.n_points == Some(0) {
                    return err("data.n_points", "must be positive");
                }
            }
            DataSource::Corpus => {
                if d.train_dir.is_none() {
                    return err("data.train_dir", "required for corpus data");
                }
                if d.test_dir.is_none() {
                    return err("data.test_dir", "required for corpus data");
                }
                if d.max_train_chunks == Some(0) {
                    return err("data.max_train_chunks", "must be positive");
                }
                if d.max_test_sentences == Some(0) {
                    return err("data.max_test_sentences", "must be positive");
                }
            }
        }
        if !(d.train_fraction > 0.0 && d.train_fraction < 1.0) {
            return err("data.train_fraction", "must be in (0, 1)");
        }
        if d.chunk_len == 0 {
            return err("data.chunk_len", "must be positive");
        }
        if self.encoder.q < 2 {
            return err("encoder.q", "must be at least 2");
        }
        if !(self.encoder.epsilon_d > 0.0 && self.encoder.epsilon_d.is_finite()) {
            return err("encoder.epsilon_d", "must be positive");
        }
        if self.encoder.ngram_n == 0 {
            return err("encoder.ngram_n", "must be at least 1");
        }
        if self.map.n == 0 {
            return err("map.n", "must be positive");
        }
        if self.map.m == 0 {
            return err("map.m", "must be positive");
        }
        if !(self.map.epsilon_p > 0.0 && self.map.epsilon_p.is_finite()) {
            return err("map.epsilon_p", "must be positive");
        }
        let t = &self.train;
        if t.d == 0 {
            return err("train.d", "must be positive");
        }
        if t.iterations == 0 {
            return err("train.iterations", "must be at least 1");
        }
        if t.num_seeds == 0 {
            return err("train.num_seeds", "must be at least 1");
        }
        if t.strategy == Strategy::Fixed && t.targets.is_empty() {
            return err("train.targets", "fixed strategy needs at least one target");
        }
        if let Some(k) = t
            .targets
            .iter()
            .position(|&[i, j]| i >= self.map.n || j >= self.map.m)
        {
            return err(
                &format!("train.targets[{k}]"),
                &format!("outside the {}x{} map", self.map.n, self.map.m),
            );
        }
        if self.run.repeats == 0 {
            return err("run.repeats", "must be at least 1");
        }
        Ok(())
    }
}
