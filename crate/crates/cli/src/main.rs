//! `hyperseed`: train, evaluate and inspect Hyperseed models from the shell.

mod args;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hyperseed::{export_projection, Coord, ProjectionRow, UpdateRecord};
use hyperseed_harness::corpus::{generate_corpus, lexicon_languages, GenerateOptions};
use hyperseed_harness::experiment::{build_map, repeat_seed};
use hyperseed_harness::model::Part;
use hyperseed_harness::{
    output, render, run_repeat, run_sweep, run_with_inputs, ExperimentConfig, Inputs, ModelFile,
    RunArtifacts, SweepAxis,
};

use args::ConfigArgs;

#[derive(Parser, Debug)]
#[command(
    name = "hyperseed",
    version,
    about = "Hyperseed unsupervised learning on FHRR hypervectors"
)]
struct Cli {
    /// More log output (-v info, -vv debug)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an experiment and print its report
    Train {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Write the report here instead of stdout
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Save the representative repeat as a model file
        #[arg(long)]
        model: Option<PathBuf>,
        /// Projection CSV of the representative repeat's test set
        #[arg(long)]
        projection: Option<PathBuf>,
        /// Projection plot (SVG)
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Evaluate a saved model on the test half of its split
    Eval {
        #[arg(long)]
        model: PathBuf,
        /// Data flags override the data section stored in the model
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run one experiment per value of a parameter
    Sweep {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// `iterations=1,5`, `d=500,1000`, `num_seeds=1,10`, `epsilon_p=0.03,0.1`
        /// or the grid `epsilon_q=5,10;0.1,0.2`
        #[arg(long)]
        axis: String,
        /// CSV output (stdout when absent)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Similarity of one map node to every node
    Landscape {
        /// Node as `i,j`
        #[arg(long, value_parser = parse_coord)]
        target: Coord,
        /// Take the map from a saved model instead of a config
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Which repeat's map to build from a config
        #[arg(long, default_value_t = 0)]
        repeat: usize,
        /// CSV output (stdout when absent)
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Project data onto the map
    Project {
        /// Use a saved model; otherwise the representative repeat is trained
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, value_enum, default_value_t = PartArg::Test)]
        part: PartArg,
        /// CSV output (stdout when absent)
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Generate datasets
    #[command(subcommand)]
    GenData(GenData),
    /// Model files
    #[command(subcommand)]
    Model(ModelCmd),
}

#[derive(Subcommand, Debug)]
enum GenData {
    /// FCPS-like dataset as CSV with a `label` column
    Fcps {
        /// atom, chainlink, engytime, hepta, twodiamonds or lsun3d
        #[arg(long)]
        name: String,
        #[arg(long)]
        n_points: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Synthetic language corpus from word-frequency lexicons
    Corpus {
        /// Directory of `<language>.tsv` lexicons
        #[arg(long)]
        lexicons: PathBuf,
        /// Comma-separated languages (all lexicons when absent)
        #[arg(long)]
        languages: Option<String>,
        #[arg(long, default_value_t = 200_000)]
        train_symbols: usize,
        #[arg(long, default_value_t = 1000)]
        test_sentences: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Receives `train/<language>/` and `test/<language>/`
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ModelCmd {
    /// Train and save the representative repeat
    Save {
        #[command(flatten)]
        cfg: Box<ConfigArgs>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check a model file and print a summary
    Load {
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PartArg {
    Train,
    Test,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Self {
        match p {
            PartArg::Train => Part::Train,
            PartArg::Test => Part::Test,
        }
    }
}

fn parse_coord(s: &str) -> std::result::Result<Coord, String> {
    let (i, j) = s
        .split_once(',')
        .ok_or_else(|| format!("expected i,j, got {s:?}"))?;
    let p = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    Ok(Coord::new(p(i)?, p(j)?))
}

fn main() {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Trains the repeat a report would select: the best one, or the first when averaging.
fn representative(cfg: &ExperimentConfig, inputs: &Inputs) -> Result<RunArtifacts> {
    let report = run_with_inputs(cfg, inputs)?;
    let r = report.representative_repeat();
    log::info!(
        "representative repeat {r}, accuracy {:.4}",
        report.runs[r].metrics.accuracy
    );
    Ok(run_repeat(cfg, inputs, repeat_seed(cfg.run.seed, r))?)
}

fn write_projection(
    rows: &[ProjectionRow],
    cfg: &ExperimentConfig,
    label_names: &[String],
    updates: &[UpdateRecord],
    out: Option<&Path>,
    plot: Option<&Path>,
) -> Result<()> {
    emit(out, &output::projection_csv(rows)?)?;
    write_plot(rows, cfg, label_names, updates, plot)
}

fn write_plot(
    rows: &[ProjectionRow],
    cfg: &ExperimentConfig,
    label_names: &[String],
    updates: &[UpdateRecord],
    plot: Option<&Path>,
) -> Result<()> {
    if let Some(p) = plot {
        let targets: Vec<Coord> = updates.iter().map(|u| u.target).collect();
        let svg = render::projection_svg(rows, cfg.map.n, cfg.map.m, &targets, label_names);
        fs::write(p, svg).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Train {
            cfg,
            out,
            model,
            projection,
            plot,
        } => {
            let cfg = cfg.resolve()?;
            let inputs = Inputs::load(&cfg)?;
            let report = run_with_inputs(&cfg, &inputs)?;
            log::info!("finished in {:.1?}", report.wall_clock);
            emit(out.as_deref(), &report.to_json())?;
            if model.is_some() || projection.is_some() || plot.is_some() {
                let r = report.representative_repeat();
                let art = run_repeat(&cfg, &inputs, repeat_seed(cfg.run.seed, r))?;
                if let Some(p) = &model {
                    ModelFile::from_artifacts(&cfg, inputs.label_names(), &art).save(p)?;
                }
                if projection.is_some() || plot.is_some() {
                    let rows = export_projection(
                        &art.state,
                        &art.map,
                        &art.labeled,
                        &art.test,
                        &art.test_labels,
                    )?;
                    if let Some(p) = &projection {
                        output::write_projection_csv(p, &rows)?;
                    }
                    write_plot(
                        &rows,
                        &cfg,
                        inputs.label_names(),
                        &art.updates,
                        plot.as_deref(),
                    )?;
                }
            }
        }
        Command::Eval { model, cfg, out } => {
            let file = ModelFile::load(&model)?;
            let mut m = file.restore()?;
            cfg.apply_to(&mut m.config)?;
            let inputs = Inputs::load(&m.config)?;
            let report = m.evaluate(&inputs)?;
            emit(
                out.as_deref(),
                &(serde_json::to_string_pretty(&report)? + "\n"),
            )?;
        }
        Command::Sweep { cfg, axis, out } => {
            let cfg = cfg.resolve()?;
            let axis = SweepAxis::parse(&axis)?;
            let inputs = Inputs::load(&cfg)?;
            let rows = run_sweep(&cfg, &axis, &inputs)?;
            emit(out.as_deref(), &output::sweep_csv(&rows)?)?;
        }
        Command::Landscape {
            target,
            model,
            cfg,
            repeat,
            out,
            plot,
        } => {
            let map = match &model {
                Some(p) => ModelFile::load(p)?.restore()?.map,
                None => {
                    if cfg.config.is_none() && cfg.overrides()?.is_empty() {
                        bail!("landscape needs --model or a map configuration");
                    }
                    let mut cfg = cfg;
                    if cfg.config.is_none() && cfg.source.is_none() {
                        // the map never reads the data section
                        cfg.source = Some("fcps".into());
                        cfg.name = Some("hepta".into());
                    }
                    let cfg = cfg.resolve()?;
                    build_map(&cfg, repeat_seed(cfg.run.seed, repeat))?
                }
            };
            let l = map.similarity_landscape(target)?;
            emit(out.as_deref(), &output::landscape_csv(&l))?;
            if let Some(p) = &plot {
                fs::write(p, render::landscape_svg(&l))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
        }
        Command::Project {
            model,
            cfg,
            part,
            out,
            plot,
        } => match &model {
            Some(p) => {
                let mut m = ModelFile::load(p)?.restore()?;
                cfg.apply_to(&mut m.config)?;
                let inputs = Inputs::load(&m.config)?;
                let rows = m.projection(&inputs, part.into())?;
                write_projection(
                    &rows,
                    &m.config,
                    &m.label_names,
                    &m.updates,
                    out.as_deref(),
                    plot.as_deref(),
                )?;
            }
            None => {
                let cfg = cfg.resolve()?;
                let inputs = Inputs::load(&cfg)?;
                let art = representative(&cfg, &inputs)?;
                let (data, labels) = match part {
                    PartArg::Train => (&art.train, &art.train_labels),
                    PartArg::Test => (&art.test, &art.test_labels),
                };
                let rows = export_projection(&art.state, &art.map, &art.labeled, data, labels)?;
                write_projection(
                    &rows,
                    &cfg,
                    inputs.label_names(),
                    &art.updates,
                    out.as_deref(),
                    plot.as_deref(),
                )?;
            }
        },
        Command::GenData(GenData::Fcps {
            name,
            n_points,
            seed,
            out,
        }) => {
            let mut o = vec![
                ("data.source".to_string(), "\"fcps\"".to_string()),
                ("data.name".to_string(), format!("{name:?}")),
                ("run.seed".to_string(), seed.to_string()),
            ];
            if let Some(n) = n_points {
                o.push(("data.n_points".into(), n.to_string()));
            }
            let cfg = ExperimentConfig::from_overrides(&o)?;
            match Inputs::load(&cfg)? {
                Inputs::Tabular(ds) => output::write_dataset_csv(&out, &ds)?,
                Inputs::Corpus(_) => unreachable!("fcps source yields tabular data"),
            }
        }
        Command::GenData(GenData::Corpus {
            lexicons,
            languages,
            train_symbols,
            test_sentences,
            seed,
            out,
        }) => {
            let languages = match languages {
                Some(l) => l.split(',').map(|s| s.trim().to_string()).collect(),
                None => lexicon_languages(&lexicons)?,
            };
            if languages.is_empty() {
                bail!("no lexicons in {}", lexicons.display());
            }
            let opts = GenerateOptions {
                train_symbols,
                test_sentences,
            };
            generate_corpus(&lexicons, &out, &languages, &opts, seed)?;
        }
        Command::Model(ModelCmd::Save { cfg, out }) => {
            let cfg = cfg.resolve()?;
            let inputs = Inputs::load(&cfg)?;
            let art = representative(&cfg, &inputs)?;
            ModelFile::from_artifacts(&cfg, inputs.label_names(), &art).save(&out)?;
        }
        Command::Model(ModelCmd::Load { model }) => {
            let file = ModelFile::load(&model)?;
            let m = file.restore()?;
            println!("format    {} v{}", file.format, file.version);
            println!("seed      {}", m.seed);
            println!("d         {}", file.d);
            println!(
                "map       {}x{} epsilon_p {}",
                file.map.n, file.map.m, file.map.epsilon_p
            );
            println!("seeds     {}", m.state.num_seeds());
            println!("labels    {}", m.label_names.join(", "));
            println!("labeled   {} nodes", m.labeled.len());
            println!("updates   {}", m.updates.len());
        }
    }
    Ok(())
}
