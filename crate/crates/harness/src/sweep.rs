//! One-parameter and grid sweeps over an experiment configuration.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::experiment::{run_with_inputs, Inputs};

#[derive(Clone, Debug, PartialEq)]
pub enum SweepAxis {
    Iterations(Vec<usize>),
    Dimensionality(Vec<usize>),
    NumSeeds(Vec<usize>),
    EpsilonP(Vec<f64>),
    /// Every pair of quantization levels and encoder ε.
    EpsilonQ {
        q: Vec<usize>,
        epsilon_d: Vec<f64>,
    },
}

impl SweepAxis {
    /// Parses `name=v1,v2,...`; the grid form is `epsilon_q=q1,q2;e1,e2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, values) = spec.split_once('=').ok_or_else(|| {
            HarnessError::config("sweep", format!("expected name=values, got {spec:?}"))
        })?;
        let name = name.trim();
        Ok(match name {
            "iterations" => SweepAxis::Iterations(list(name, values)?),
            "d" | "dimensionality" => SweepAxis::Dimensionality(list(name, values)?),
            "num_seeds" => SweepAxis::NumSeeds(list(name, values)?),
            "epsilon_p" => SweepAxis::EpsilonP(list(name, values)?),
            "epsilon_q" => {
                let (q, e) = values.split_once(';').ok_or_else(|| {
                    HarnessError::config(name, "expected q values;epsilon values")
                })?;
                SweepAxis::EpsilonQ {
                    q: list(name, q)?,
                    epsilon_d: list(name, e)?,
                }
            }
            other => {
                return Err(HarnessError::config(
                    "sweep",
                    format!("unknown axis {other:?}"),
                ))
            }
        })
    }

    /// Configurations in sweep order.
    pub fn configs(&self, base: &ExperimentConfig) -> Vec<ExperimentConfig> {
        let with = |f: &dyn Fn(&mut ExperimentConfig)| {
            let mut c = base.clone();
            f(&mut c);
            c
        };
        match self {
            SweepAxis::Iterations(v) => v
                .iter()
                .map(|&x| with(&|c| c.train.iterations = x))
                .collect(),
            SweepAxis::Dimensionality(v) => v.iter().map(|&x| with(&|c| c.train.d = x)).collect(),
            SweepAxis::NumSeeds(v) => v
                .iter()
                .map(|&x| with(&|c| c.train.num_seeds = x))
                .collect(),
            SweepAxis::EpsilonP(v) => v.iter().map(|&x| with(&|c| c.map.epsilon_p = x)).collect(),
            SweepAxis::EpsilonQ { q, epsilon_d } => q
                .iter()
                .flat_map(|&qq| epsilon_d.iter().map(move |&e| (qq, e)))
                .map(|(qq, e)| {
                    with(&|c| {
                        c.encoder.q = qq;
                        c.encoder.epsilon_d = e;
                    })
                })
                .collect(),
        }
    }
}

fn list<T: FromStr>(name: &str, values: &str) -> Result<Vec<T>> {
    let out = values
        .split(',')
        .map(|v| {
            v.trim().parse().map_err(|_| {
                HarnessError::config(name, format!("{:?} is not a valid value", v.trim()))
            })
        })
        .collect::<Result<Vec<T>>>()?;
    if out.is_empty() {
        return Err(HarnessError::config(name, "no values"));
    }
    Ok(out)
}

/// One sweep point. All swept settings are recorded on every row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub iterations: usize,
    pub d: usize,
    pub num_seeds: usize,
    pub epsilon_p: f64,
    pub q: usize,
    pub epsilon_d: f64,
    pub accuracy: f64,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub min_accuracy: f64,
    pub max_accuracy: f64,
}

pub fn run_sweep(
    base: &ExperimentConfig,
    axis: &SweepAxis,
    inputs: &Inputs,
) -> Result<Vec<SweepRow>> {
    axis.configs(base)
        .iter()
        .map(|cfg| {
            let r = run_with_inputs(cfg, inputs)?;
            log::info!("sweep point done: accuracy {:.4}", r.accuracy);
            Ok(SweepRow {
                iterations: cfg.train.iterations,
                d: cfg.train.d,
                num_seeds: cfg.train.num_seeds,
                epsilon_p: cfg.map.epsilon_p,
                q: cfg.encoder.q,
                epsilon_d: cfg.encoder.epsilon_d,
                accuracy: r.accuracy,
                mean_accuracy: r.mean_accuracy,
                std_accuracy: r.std_accuracy,
                min_accuracy: r.min_accuracy,
                max_accuracy: r.max_accuracy,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_axes() {
        assert_eq!(
            SweepAxis::parse("iterations=1,5, 10").unwrap(),
            SweepAxis::Iterations(vec![1, 5, 10])
        );
        assert_eq!(
            SweepAxis::parse("d=100").unwrap(),
            SweepAxis::Dimensionality(vec![100])
        );
        assert_eq!(
            SweepAxis::parse("epsilon_q=5,10;0.1,0.2").unwrap(),
            SweepAxis::EpsilonQ {
                q: vec![5, 10],
                epsilon_d: vec![0.1, 0.2]
            }
        );
        assert!(SweepAxis::parse("iterations").is_err());
        assert!(SweepAxis::parse("iterations=x").is_err());
        assert!(SweepAxis::parse("colour=1").is_err());
        assert!(SweepAxis::parse("epsilon_q=5,10").is_err());
    }

    #[test]
    fn grid_covers_every_pair() {
        let base =
            ExperimentConfig::from_toml("[data]\nsource = \"fcps\"\nname = \"hepta\"\n").unwrap();
        let axis = SweepAxis::parse("epsilon_q=5,10;0.1,0.2,0.3").unwrap();
        let cfgs = axis.configs(&base);
        assert_eq!(cfgs.len(), 6);
        assert_eq!((cfgs[4].encoder.q, cfgs[4].encoder.epsilon_d), (10, 0.2));
    }

    #[test]
    fn sweep_runs_each_point() {
        let base = ExperimentConfig::from_toml(
            "[data]\nsource = \"fcps\"\nname = \"hepta\"\n[map]\nn = 6\nm = 6\nepsilon_p = 0.1\n[train]\nd = 128\n",
        )
        .unwrap();
        let inputs = Inputs::load(&base).unwrap();
        let rows = run_sweep(&base, &SweepAxis::Iterations(vec![1, 3]), &inputs).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].iterations, 3);
        assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r.accuracy)));
    }
}
