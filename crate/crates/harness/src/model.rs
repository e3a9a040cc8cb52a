//! Versioned JSON model files.
//!
//! A model holds everything needed to classify new inputs: the encoder, the
//! map bases, the trained seeds and the label votes. Floats are written with
//! round-trip precision, so a reloaded model reproduces every prediction bit
//! for bit.

use std::fs;
use std::path::Path;

use hyperseed::{
    classify_batch, export_projection, BundleVector, Classification, Coord, FeatureEncoder,
    FeatureEncoderParts, HdMap, LabeledMap, NgramEncoder, NgramEncoderParts, PhasorVector,
    ProjectionRow, SeedState, UpdateRecord,
};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::experiment::{repeat_split, Encoder, Inputs, RunArtifacts, Samples};
use crate::metrics::{evaluate, Metrics};

pub const MODEL_FORMAT: &str = "hyperseed-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EncoderParts {
    Feature(FeatureEncoderParts),
    Ngram(NgramEncoderParts),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapParts {
    pub n: usize,
    pub m: usize,
    pub epsilon_p: f64,
    pub x_base: PhasorVector,
    pub y_base: PhasorVector,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedParts {
    pub seeds: Vec<BundleVector>,
    pub cursor: usize,
    pub update_counts: Vec<u64>,
    pub renormalize: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeVotes {
    pub node: Coord,
    pub votes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelTable {
    pub names: Vec<String>,
    pub nodes: Vec<NodeVotes>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub version: u32,
    pub config: ExperimentConfig,
    /// Seed of the repeat that produced the model.
    pub seed: u64,
    pub d: usize,
    pub map: MapParts,
    pub seeds: SeedParts,
    pub labels: LabelTable,
    pub encoder: EncoderParts,
    pub updates: Vec<UpdateRecord>,
}

/// A model ready for inference.
pub struct Model {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub label_names: Vec<String>,
    pub encoder: Encoder,
    pub map: HdMap,
    pub state: SeedState,
    pub labeled: LabeledMap,
    pub updates: Vec<UpdateRecord>,
}

/// Accuracy of a saved model on the test half of its own split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub seed: u64,
    pub label_names: Vec<String>,
    pub test_size: usize,
    pub metrics: Metrics,
}

/// Which half of the split to project.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Train,
    Test,
}

impl Model {
    pub fn predict(&self, samples: &Samples) -> Result<Vec<Classification>> {
        let encoded = self.encoder.encode_all(samples)?;
        if encoded.is_empty() {
            return Ok(Vec::new());
        }
        Ok(classify_batch(
            &self.state,
            &self.map,
            &self.labeled,
            &encoded,
        )?)
    }

    fn check_labels(&self, inputs: &Inputs) -> Result<()> {
        if inputs.label_names() != self.label_names.as_slice() {
            return Err(HarnessError::Model(format!(
                "data labels {:?} differ from model labels {:?}",
                inputs.label_names(),
                self.label_names
            )));
        }
        Ok(())
    }

    /// Reproduces the model's split and scores its test half.
    pub fn evaluate(&self, inputs: &Inputs) -> Result<EvalReport> {
        self.check_labels(inputs)?;
        let split = repeat_split(&self.config, inputs, self.seed);
        let predicted: Vec<usize> = self.predict(&split.test)?.iter().map(|c| c.label).collect();
        Ok(EvalReport {
            seed: self.seed,
            label_names: self.label_names.clone(),
            test_size: split.test_labels.len(),
            metrics: evaluate(&split.test_labels, &predicted, self.label_names.len()),
        })
    }

    pub fn projection(&self, inputs: &Inputs, part: Part) -> Result<Vec<ProjectionRow>> {
        self.check_labels(inputs)?;
        let split = repeat_split(&self.config, inputs, self.seed);
        let (samples, labels) = match part {
            Part::Train => (&split.train, &split.train_labels),
            Part::Test => (&split.test, &split.test_labels),
        };
        let encoded = self.encoder.encode_all(samples)?;
        Ok(export_projection(
            &self.state,
            &self.map,
            &self.labeled,
            &encoded,
            labels,
        )?)
    }
}

impl ModelFile {
    pub fn from_artifacts(
        config: &ExperimentConfig,
        label_names: &[String],
        art: &RunArtifacts,
    ) -> Self {
        let state = &art.state;
        Self {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            config: config.clone(),
            seed: art.seed,
            d: art.map.dim(),
            map: MapParts {
                n: art.map.rows(),
                m: art.map.cols(),
                epsilon_p: art.map.epsilon(),
                x_base: art.map.x_base().clone(),
                y_base: art.map.y_base().clone(),
            },
            seeds: SeedParts {
                seeds: state.seeds().to_vec(),
                cursor: state.cursor(),
                update_counts: state.update_counts().to_vec(),
                renormalize: state.renormalize(),
            },
            labels: LabelTable {
                names: label_names.to_vec(),
                nodes: art
                    .labeled
                    .votes()
                    .iter()
                    .map(|(&node, votes)| NodeVotes {
                        node,
                        votes: votes.clone(),
                    })
                    .collect(),
            },
            encoder: match &art.encoder {
                Encoder::Feature(f) => EncoderParts::Feature(f.to_parts()),
                Encoder::Ngram(n) => EncoderParts::Ngram(n.to_parts()),
            },
            updates: art.updates.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|source| HarnessError::Json {
            context: "model".into(),
            source,
        })?;
        if file.format != MODEL_FORMAT {
            return Err(HarnessError::Model(format!(
                "unknown format {:?}",
                file.format
            )));
        }
        if file.version != MODEL_VERSION {
            return Err(HarnessError::Model(format!(
                "unsupported version {} (expected {MODEL_VERSION})",
                file.version
            )));
        }
        Ok(file)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| HarnessError::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            HarnessError::Json { source, .. } => HarnessError::Json {
                context: path.display().to_string(),
                source,
            },
            other => other,
        })
    }

    /// Rebuilds and validates the model.
    pub fn restore(&self) -> Result<Model> {
        let map = HdMap::from_bases(
            self.map.n,
            self.map.m,
            self.map.epsilon_p,
            self.map.x_base.clone(),
            self.map.y_base.clone(),
        )?;
        let s = &self.seeds;
        let state = SeedState::from_parts(
            s.seeds.clone(),
            s.cursor,
            s.update_counts.clone(),
            s.renormalize,
        )?;
        let encoder = match &self.encoder {
            EncoderParts::Feature(p) => Encoder::Feature(FeatureEncoder::from_parts(p.clone())?),
            EncoderParts::Ngram(p) => Encoder::Ngram(NgramEncoder::from_parts(p.clone())?),
        };
        for (what, dim) in [
            ("map", map.dim()),
            ("seeds", state.dim()),
            ("encoder", encoder.dim()),
        ] {
            if dim != self.d {
                return Err(HarnessError::Model(format!(
                    "{what} dimension {dim} differs from d = {}",
                    self.d
                )));
            }
        }
        let votes = self
            .labels
            .nodes
            .iter()
            .map(|n| (n.node, n.votes.clone()))
            .collect();
        let labeled = LabeledMap::from_votes(&map, self.labels.names.len(), votes)?;
        Ok(Model {
            config: self.config.clone(),
            seed: self.seed,
            label_names: self.labels.names.clone(),
            encoder,
            map,
            state,
            labeled,
            updates: self.updates.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{repeat_split, run_repeat, Inputs};
    use hyperseed::classify_batch;

    fn small() -> (ExperimentConfig, Inputs) {
        let cfg = ExperimentConfig::from_toml(
            r#"
[data]
source = "fcps"
name = "twodiamonds"
n_points = 120

[map]
n = 8
m = 8
epsilon_p = 0.1

[train]
d = 200
iterations = 3
num_seeds = 2
"#,
        )
        .unwrap();
        let inputs = Inputs::load(&cfg).unwrap();
        (cfg, inputs)
    }

    #[test]
    fn round_trip_is_exact() {
        let (cfg, inputs) = small();
        let art = run_repeat(&cfg, &inputs, 11).unwrap();
        let file = ModelFile::from_artifacts(&cfg, inputs.label_names(), &art);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        file.save(&path).unwrap();
        let loaded = ModelFile::load(&path).unwrap();
        assert_eq!(loaded, file);
        let model = loaded.restore().unwrap();
        assert_eq!(model.state.fingerprint(), art.state.fingerprint());
        let split = repeat_split(&cfg, &inputs, art.seed);
        let test = model.encoder.encode_all(&split.test).unwrap();
        assert_eq!(test, art.test);
        let before = classify_batch(&art.state, &art.map, &art.labeled, &test).unwrap();
        let after = classify_batch(&model.state, &model.map, &model.labeled, &test).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn evaluation_matches_the_training_run() {
        let (cfg, inputs) = small();
        let art = run_repeat(&cfg, &inputs, 5).unwrap();
        let file = ModelFile::from_artifacts(&cfg, inputs.label_names(), &art);
        let model = ModelFile::from_json(&file.to_json())
            .unwrap()
            .restore()
            .unwrap();
        let report = model.evaluate(&inputs).unwrap();
        assert_eq!(
            report.metrics,
            evaluate(&art.test_labels, &art.predicted, 2)
        );
        let rows = model.projection(&inputs, Part::Test).unwrap();
        assert_eq!(rows.len(), art.test.len());
        assert!(rows
            .iter()
            .zip(&art.predicted)
            .all(|(r, &p)| r.predicted_label == p));
        assert_eq!(
            model.projection(&inputs, Part::Train).unwrap().len(),
            art.train.len()
        );
    }

    #[test]
    fn rejects_foreign_files() {
        assert!(ModelFile::from_json("{}").is_err());
        let (cfg, inputs) = small();
        let art = run_repeat(&cfg, &inputs, 1).unwrap();
        let mut file = ModelFile::from_artifacts(&cfg, inputs.label_names(), &art);
        file.version = 99;
        assert!(ModelFile::from_json(&file.to_json())
            .unwrap_err()
            .to_string()
            .contains("version"));
        file.version = MODEL_VERSION;
        file.d += 1;
        assert!(file.restore().is_err());
    }
}
