//! Hyperseed: unsupervised learning on phasor hypervectors.
//!
//! Data are phasor hypervectors (FHRR). A fixed HD-map assigns a hypervector
//! to every node of a 2D grid. Learning stores bindings `d ∘ p_target` in one
//! or more seed vectors; unbinding a datum from the seeds and searching the map
//! projects it onto the grid.
//!
//! ```
//! use hyperseed::{train, HdMap, SeededRng, TargetStrategy, TrainConfig, random_phasor, project};
//!
//! let mut rng = SeededRng::new(7);
//! let map = HdMap::build(10, 10, 0.3, 1000, &mut rng).unwrap();
//! let data: Vec<_> = (0..5).map(|_| random_phasor(1000, &mut rng).unwrap()).collect();
//! let cfg = TrainConfig::new(3, TargetStrategy::CornerCycle);
//! let out = train(&data, &map, &cfg, &mut rng).unwrap();
//! let p = project(&out.state, &data[0], &map).unwrap();
//! assert_eq!(p.bmv.coords, out.updates[0].target);
//! ```

pub mod encoders;
pub mod error;
pub mod hdmap;
pub mod labeling;
pub mod rng;
pub mod search;
pub mod seed;
pub mod vsa;

pub use encoders::{
    latin_alphabet, preprocess_text, FeatureEncoder, FeatureEncoderParts, NgramEncoder,
    NgramEncoderParts,
};
pub use error::{Error, Result};
pub use hdmap::{BmvResult, Coord, HdMap, Landscape};
pub use labeling::{
    classify, classify_batch, export_projection, label_map, Classification, LabeledMap,
    ProjectionRow,
};
pub use rng::{derive_seed, SeededRng};
pub use seed::{
    project, project_batch, train, wms_pass, Projection, SeedState, TargetSelector, TargetStrategy,
    TrainConfig, TrainOutcome, UpdateRecord,
};
pub use vsa::{
    bind, cosine_real, fpe_power, normalize, permute, random_phasor, superpose, unbind,
    unbind_bundle, BundleVector, Hypervector, PhasorVector,
};
