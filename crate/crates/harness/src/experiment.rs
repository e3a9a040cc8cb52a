//! End-to-end runs: data, encoding, map, training, labeling, classification.
//!
//! Every repeat `r` runs with seed `derive_seed(run.seed, r)`. Within a
//! repeat, the split, encoder, map and training draw from separate forks of
//! that seed, so changing one stage never shifts the random stream of
//! another. Generated datasets use a fork of the master seed that is shared by
//! all repeats.

use std::time::{Duration, Instant};

use hyperseed::{
    classify_batch, derive_seed, label_map, latin_alphabet, train, FeatureEncoder, HdMap,
    LabeledMap, NgramEncoder, PhasorVector, SeedState, SeededRng, UpdateRecord,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{DataSource, ExperimentConfig, Select};
use crate::corpus::{load_language_corpus, CorpusDataset, CorpusOptions};
use crate::datasets::{load_csv_dataset, stratified_split, TabularDataset};
use crate::error::{HarnessError, Result};
use crate::fcps::generate_fcps_like;
use crate::metrics::{evaluate, mean_std, Metrics};

const SPLIT_STREAM: u64 = 1;
const ENCODER_STREAM: u64 = 2;
const MAP_STREAM: u64 = 3;
const TRAIN_STREAM: u64 = 4;
const DATA_STREAM: u64 = 0xDA7A;

/// Repeats run in parallel only while their maps fit this budget together.
const PARALLEL_MAP_BYTES: usize = 1 << 30;

/// Loaded experiment data, shared by all repeats.
#[derive(Clone, Debug)]
pub enum Inputs {
    Tabular(TabularDataset),
    Corpus(CorpusDataset),
}

impl Inputs {
    pub fn load(cfg: &ExperimentConfig) -> Result<Self> {
        let d = &cfg.data;
        match d.source {
            DataSource::Csv => {
                let path = d.path.as_ref().expect("validated");
                let label = d.label_column.as_deref().expect("validated");
                Ok(Inputs::Tabular(load_csv_dataset(path, label)?))
            }
            DataSource::Fcps => {
                let name = d.name.expect("validated");
                let mut rng = SeededRng::new(derive_seed(cfg.run.seed, DATA_STREAM));
                Ok(Inputs::Tabular(generate_fcps_like(
                    name, d.n_points, &mut rng,
                )))
            }
            DataSource::Corpus => {
                let opts = CorpusOptions {
                    languages: d.languages.clone(),
                    chunk_len: d.chunk_len,
                    ngram_n: cfg.encoder.ngram_n,
                    max_train_chunks: d.max_train_chunks,
                    max_test_sentences: d.max_test_sentences,
                };
                let train_dir = d.train_dir.as_ref().expect("validated");
                let test_dir = d.test_dir.as_ref().expect("validated");
                Ok(Inputs::Corpus(load_language_corpus(
                    train_dir, test_dir, &opts,
                )?))
            }
        }
    }

    pub fn label_names(&self) -> &[String] {
        match self {
            Inputs::Tabular(t) => &t.label_names,
            Inputs::Corpus(c) => &c.languages,
        }
    }

    /// Train and test halves for one repeat.
    pub fn split(&self, cfg: &ExperimentConfig, rng: &mut SeededRng) -> Split {
        match self {
            Inputs::Tabular(t) => {
                let (train, test) = stratified_split(&t.labels, cfg.data.train_fraction, rng);
                let (train_x, train_y) = t.subset(&train);
                let (test_x, test_y) = t.subset(&test);
                Split {
                    train: Samples::Features(train_x),
                    train_labels: train_y,
                    test: Samples::Features(test_x),
                    test_labels: test_y,
                }
            }
            Inputs::Corpus(c) => Split {
                train: Samples::Texts(c.train.clone()),
                train_labels: c.train_labels.clone(),
                test: Samples::Texts(c.test.clone()),
                test_labels: c.test_labels.clone(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub enum Samples {
    Features(Vec<Vec<f64>>),
    Texts(Vec<String>),
}

impl Samples {
    pub fn len(&self) -> usize {
        match self {
            Samples::Features(f) => f.len(),
            Samples::Texts(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct Split {
    pub train: Samples,
    pub train_labels: Vec<usize>,
    pub test: Samples,
    pub test_labels: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Encoder {
    Feature(FeatureEncoder),
    Ngram(NgramEncoder),
}

impl Encoder {
    fn fit(cfg: &ExperimentConfig, train: &Samples, rng: &mut SeededRng) -> Result<Self> {
        let e = &cfg.encoder;
        Ok(match train {
            Samples::Features(x) => {
                Encoder::Feature(FeatureEncoder::fit(x, e.q, e.epsilon_d, cfg.train.d, rng)?)
            }
            Samples::Texts(_) => Encoder::Ngram(NgramEncoder::new(
                latin_alphabet(),
                e.ngram_n,
                cfg.train.d,
                rng,
            )?),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Encoder::Feature(f) => f.dim(),
            Encoder::Ngram(n) => n.dim(),
        }
    }

    pub fn encode_all(&self, samples: &Samples) -> Result<Vec<PhasorVector>> {
        let out: std::result::Result<Vec<_>, hyperseed::Error> = match (self, samples) {
            (Encoder::Feature(f), Samples::Features(x)) => {
                x.par_iter().map(|s| f.encode(s)).collect()
            }
            (Encoder::Ngram(n), Samples::Texts(t)) => t.par_iter().map(|s| n.encode(s)).collect(),
            _ => {
                return Err(HarnessError::Model(
                    "encoder does not match the data kind".into(),
                ))
            }
        };
        Ok(out?)
    }
}

/// Outcome of one repeat.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub repeat: usize,
    pub seed: u64,
    pub train_size: usize,
    pub test_size: usize,
    pub labeled_nodes: usize,
    pub metrics: Metrics,
    pub updates: Vec<UpdateRecord>,
}

/// Everything a finished repeat produced.
pub struct RunArtifacts {
    pub seed: u64,
    pub encoder: Encoder,
    pub map: HdMap,
    pub state: SeedState,
    pub labeled: LabeledMap,
    pub updates: Vec<UpdateRecord>,
    pub train: Vec<PhasorVector>,
    pub train_labels: Vec<usize>,
    pub test: Vec<PhasorVector>,
    pub test_labels: Vec<usize>,
    pub predicted: Vec<usize>,
}

pub fn repeat_seed(master: u64, repeat: usize) -> u64 {
    derive_seed(master, repeat as u64)
}

/// The train/test split used by the repeat with this seed.
pub fn repeat_split(cfg: &ExperimentConfig, inputs: &Inputs, seed: u64) -> Split {
    inputs.split(cfg, &mut SeededRng::new(seed).fork(SPLIT_STREAM))
}

/// The HD-map used by the repeat with this seed.
pub fn build_map(cfg: &ExperimentConfig, seed: u64) -> Result<HdMap> {
    Ok(HdMap::build(
        cfg.map.n,
        cfg.map.m,
        cfg.map.epsilon_p,
        cfg.train.d,
        &mut SeededRng::new(seed).fork(MAP_STREAM),
    )?)
}

/// Runs a single repeat with an explicit seed.
pub fn run_repeat(cfg: &ExperimentConfig, inputs: &Inputs, seed: u64) -> Result<RunArtifacts> {
    let base = SeededRng::new(seed);
    let split = inputs.split(cfg, &mut base.fork(SPLIT_STREAM));
    let encoder = Encoder::fit(cfg, &split.train, &mut base.fork(ENCODER_STREAM))?;
    let train_vecs = encoder.encode_all(&split.train)?;
    let test_vecs = encoder.encode_all(&split.test)?;
    let map = build_map(cfg, seed)?;
    let outcome = train(
        &train_vecs,
        &map,
        &cfg.train.to_train_config(),
        &mut base.fork(TRAIN_STREAM),
    )?;
    let num_labels = inputs.label_names().len();
    let labeled = label_map(
        &outcome.state,
        &map,
        &train_vecs,
        &split.train_labels,
        num_labels,
    )?;
    let predicted = if test_vecs.is_empty() {
        Vec::new()
    } else {
        classify_batch(&outcome.state, &map, &labeled, &test_vecs)?
            .iter()
            .map(|c| c.label)
            .collect()
    };
    Ok(RunArtifacts {
        seed,
        encoder,
        map,
        state: outcome.state,
        labeled,
        updates: outcome.updates,
        train: train_vecs,
        train_labels: split.train_labels,
        test: test_vecs,
        test_labels: split.test_labels,
        predicted,
    })
}

fn summarize(repeat: usize, art: &RunArtifacts, num_labels: usize) -> RunSummary {
    RunSummary {
        repeat,
        seed: art.seed,
        train_size: art.train.len(),
        test_size: art.test.len(),
        labeled_nodes: art.labeled.len(),
        metrics: evaluate(&art.test_labels, &art.predicted, num_labels),
        updates: art.updates.clone(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub select: Select,
    /// Best or mean accuracy over repeats, per `select`.
    pub accuracy: f64,
    /// The repeat that produced `accuracy` when selecting the best.
    pub selected_repeat: Option<usize>,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub min_accuracy: f64,
    pub max_accuracy: f64,
    pub label_names: Vec<String>,
    pub runs: Vec<RunSummary>,
    /// Not serialized, so that reports of identical runs are identical.
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn accuracies(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.metrics.accuracy).collect()
    }

    /// The repeat whose artifacts stand for the experiment: the selected one,
    /// or the first when averaging.
    pub fn representative_repeat(&self) -> usize {
        self.selected_repeat.unwrap_or(0)
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let inputs = Inputs::load(cfg)?;
    run_with_inputs(cfg, &inputs)
}

/// Runs every repeat on already loaded data.
pub fn run_with_inputs(cfg: &ExperimentConfig, inputs: &Inputs) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let num_labels = inputs.label_names().len();
    let one = |r: usize| -> Result<RunSummary> {
        let art = run_repeat(cfg, inputs, repeat_seed(cfg.run.seed, r))?;
        log::info!(
            "repeat {r}: accuracy {:.4}",
            evaluate(&art.test_labels, &art.predicted, num_labels).accuracy
        );
        Ok(summarize(r, &art, num_labels))
    };
    let map_bytes = cfg.map.n * cfg.map.m * cfg.train.d * 8;
    let runs: Vec<RunSummary> =
        if cfg.run.repeats > 1 && map_bytes * rayon::current_num_threads() <= PARALLEL_MAP_BYTES {
            (0..cfg.run.repeats)
                .into_par_iter()
                .map(one)
                .collect::<Result<_>>()?
        } else {
            (0..cfg.run.repeats).map(one).collect::<Result<_>>()?
        };
    let acc: Vec<f64> = runs.iter().map(|r| r.metrics.accuracy).collect();
    let (mean, std) = mean_std(&acc);
    let mut best = 0;
    for (k, a) in acc.iter().enumerate() {
        if *a > acc[best] {
            best = k;
        }
    }
    let (accuracy, selected_repeat) = match cfg.run.select {
        Select::Best => (acc[best], Some(best)),
        Select::Mean => (mean, None),
    };
    Ok(ExperimentReport {
        config: cfg.clone(),
        seed: cfg.run.seed,
        select: cfg.run.select,
        accuracy,
        selected_repeat,
        mean_accuracy: mean,
        std_accuracy: std,
        min_accuracy: acc.iter().copied().fold(f64::INFINITY, f64::min),
        max_accuracy: acc[best],
        label_names: inputs.label_names().to_vec(),
        runs,
        wall_clock: start.elapsed(),
    })
}
