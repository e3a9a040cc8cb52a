//! Node labeling from a training pass, and classification against labeled nodes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::hdmap::{Coord, HdMap};
use crate::search::RealMatrix;
use crate::seed::{project_batch, SeedState};
use crate::vsa::{unbind_real_into, PhasorVector};

/// Vote counts per node and the winning label of every voted node.
#[derive(Clone, Debug)]
pub struct LabeledMap {
    num_labels: usize,
    votes: BTreeMap<Coord, Vec<u64>>,
    nodes: Vec<(Coord, usize)>,
    matrix: RealMatrix,
}

impl LabeledMap {
    /// Rebuilds the labeled-node memory from vote counts.
    pub fn from_votes(
        map: &HdMap,
        num_labels: usize,
        votes: BTreeMap<Coord, Vec<u64>>,
    ) -> Result<Self> {
        if num_labels == 0 {
            return Err(Error::param("num_labels", "must be at least 1"));
        }
        let mut nodes = Vec::with_capacity(votes.len());
        for (&c, counts) in &votes {
            map.check(c)?;
            if counts.len() != num_labels {
                return Err(Error::param(
                    "votes",
                    format!("node {c} has {} counts", counts.len()),
                ));
            }
            if counts.iter().all(|&v| v == 0) {
                return Err(Error::param("votes", format!("node {c} has no votes")));
            }
            nodes.push((c, winner(counts)));
        }
        if nodes.is_empty() {
            return Err(Error::Empty("no labeled nodes"));
        }
        let rows: Vec<usize> = nodes.iter().map(|(c, _)| map.index_of(*c)).collect();
        let matrix = map.node_matrix().select_rows(&rows);
        Ok(Self {
            num_labels,
            votes,
            nodes,
            matrix,
        })
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    pub fn votes(&self) -> &BTreeMap<Coord, Vec<u64>> {
        &self.votes
    }

    /// Labeled nodes in row-major order.
    pub fn nodes(&self) -> &[(Coord, usize)] {
        &self.nodes
    }

    pub fn label_at(&self, c: Coord) -> Option<usize> {
        self.votes.get(&c).map(|v| winner(v))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Majority label, ties to the lowest ordinal.
fn winner(counts: &[u64]) -> usize {
    let mut best = 0;
    for (k, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = k;
        }
    }
    best
}

/// One labeling epoch: every training datum votes for its BMV with its label.
/// Labels are ordinals `0..num_labels`.
pub fn label_map(
    state: &SeedState,
    map: &HdMap,
    data: &[PhasorVector],
    labels: &[usize],
    num_labels: usize,
) -> Result<LabeledMap> {
    if data.is_empty() {
        return Err(Error::Empty("labeling needs data"));
    }
    check_dim(data.len(), labels.len())?;
    if let Some(&bad) = labels.iter().find(|&&l| l >= num_labels) {
        return Err(Error::param(
            "labels",
            format!("label {bad} out of range 0..{num_labels}"),
        ));
    }
    let projections = project_batch(state, data, map)?;
    let mut votes: BTreeMap<Coord, Vec<u64>> = BTreeMap::new();
    for (p, &l) in projections.iter().zip(labels) {
        votes
            .entry(p.bmv.coords)
            .or_insert_with(|| vec![0; num_labels])[l] += 1;
    }
    LabeledMap::from_votes(map, num_labels, votes)
}

/// Prediction for one query.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: usize,
    pub coords: Coord,
    pub similarity: f64,
    pub seed: usize,
}

/// Closest labeled node over all seeds.
pub fn classify(
    state: &SeedState,
    map: &HdMap,
    lm: &LabeledMap,
    query: &PhasorVector,
) -> Result<Classification> {
    Ok(classify_batch(state, map, lm, std::slice::from_ref(query))?[0])
}

pub fn classify_batch(
    state: &SeedState,
    map: &HdMap,
    lm: &LabeledMap,
    queries: &[PhasorVector],
) -> Result<Vec<Classification>> {
    check_dim(map.dim(), state.dim())?;
    check_dim(lm.matrix.dim(), state.dim())?;
    let mut best: Vec<Option<Classification>> = vec![None; queries.len()];
    for (i, s) in state.seeds().iter().enumerate() {
        let hits = lm.matrix.best_matches(queries.len(), |q, buf| {
            unbind_real_into(&queries[q], s, buf)
        })?;
        for (slot, hit) in best.iter_mut().zip(hits) {
            if slot.is_none_or(|b| hit.similarity > b.similarity) {
                let (coords, label) = lm.nodes[hit.row];
                *slot = Some(Classification {
                    label,
                    coords,
                    similarity: hit.similarity,
                    seed: i,
                });
            }
        }
    }
    Ok(best.into_iter().flatten().collect())
}

/// One row of a projection table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionRow {
    pub sample: usize,
    pub i: usize,
    pub j: usize,
    pub true_label: usize,
    pub predicted_label: usize,
    pub similarity: f64,
}

/// BMV position (full map) and predicted label for every sample.
pub fn export_projection(
    state: &SeedState,
    map: &HdMap,
    lm: &LabeledMap,
    data: &[PhasorVector],
    labels: &[usize],
) -> Result<Vec<ProjectionRow>> {
    check_dim(data.len(), labels.len())?;
    if data.is_empty() {
        return Ok(Vec::new());
    }
    let projections = project_batch(state, data, map)?;
    let predicted = classify_batch(state, map, lm, data)?;
    Ok(projections
        .iter()
        .zip(&predicted)
        .zip(labels)
        .enumerate()
        .map(|(sample, ((p, c), &true_label))| ProjectionRow {
            sample,
            i: p.bmv.coords.i,
            j: p.bmv.coords.j,
            true_label,
            predicted_label: c.label,
            similarity: p.bmv.similarity,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use crate::vsa::{bind, random_phasor, superpose, BundleVector};

    fn setup(count: usize, seed: u64) -> (HdMap, Vec<PhasorVector>) {
        let mut rng = SeededRng::new(seed);
        let map = HdMap::build(6, 6, 0.5, 1000, &mut rng).unwrap();
        let data = (0..count)
            .map(|_| random_phasor(1000, &mut rng).unwrap())
            .collect();
        (map, data)
    }

    fn seed_from(pairs: &[(&PhasorVector, PhasorVector)]) -> SeedState {
        let bound: Vec<PhasorVector> = pairs.iter().map(|(d, p)| bind(d, p).unwrap()).collect();
        let s: BundleVector = superpose(bound.iter()).unwrap();
        SeedState::from_parts(vec![s], 0, vec![pairs.len() as u64], false).unwrap()
    }

    #[test]
    fn winner_prefers_majority_then_lowest() {
        assert_eq!(winner(&[3, 1]), 0);
        assert_eq!(winner(&[1, 3]), 1);
        assert_eq!(winner(&[2, 2]), 0);
        assert_eq!(winner(&[0, 2, 2]), 1);
    }

    #[test]
    fn single_sample_labels_one_node() {
        let (map, data) = setup(1, 1);
        let target = Coord::new(4, 1);
        let state = seed_from(&[(&data[0], map.node(target).unwrap())]);
        let lm = label_map(&state, &map, &data, &[1], 2).unwrap();
        assert_eq!(lm.nodes(), &[(target, 1)]);
        let mut rng = SeededRng::new(9);
        for _ in 0..5 {
            let q = random_phasor(1000, &mut rng).unwrap();
            assert_eq!(classify(&state, &map, &lm, &q).unwrap().label, 1);
        }
    }

    #[test]
    fn votes_decide_labels() {
        let mut rng = SeededRng::new(2);
        let map = HdMap::build(3, 3, 0.5, 64, &mut rng).unwrap();
        let votes = BTreeMap::from([
            (Coord::new(0, 0), vec![3, 1]),
            (Coord::new(1, 2), vec![2, 2]),
            (Coord::new(2, 2), vec![0, 1]),
        ]);
        let lm = LabeledMap::from_votes(&map, 2, votes).unwrap();
        assert_eq!(lm.label_at(Coord::new(0, 0)), Some(0));
        assert_eq!(lm.label_at(Coord::new(1, 2)), Some(0));
        assert_eq!(lm.label_at(Coord::new(2, 2)), Some(1));
        assert_eq!(lm.label_at(Coord::new(1, 1)), None);
        assert!(LabeledMap::from_votes(&map, 2, BTreeMap::new()).is_err());
        assert!(
            LabeledMap::from_votes(&map, 2, BTreeMap::from([(Coord::new(5, 5), vec![1, 0])]))
                .is_err()
        );
    }

    #[test]
    fn perfectly_bound_classes_classify_perfectly() {
        let (map, data) = setup(4, 3);
        let targets = [
            Coord::new(0, 0),
            Coord::new(0, 5),
            Coord::new(5, 0),
            Coord::new(5, 5),
        ];
        let pairs: Vec<_> = data
            .iter()
            .zip(&targets)
            .map(|(d, t)| (d, map.node(*t).unwrap()))
            .collect();
        let state = seed_from(&pairs);
        let labels = [0, 1, 2, 3];
        let before = state.fingerprint();
        let lm = label_map(&state, &map, &data, &labels, 4).unwrap();
        assert_eq!(state.fingerprint(), before);
        let got = classify_batch(&state, &map, &lm, &data).unwrap();
        for (k, c) in got.iter().enumerate() {
            assert_eq!(c.label, labels[k]);
            assert_eq!(c.coords, targets[k]);
        }
    }

    #[test]
    fn classify_matches_full_scan_over_labeled_nodes() {
        let (map, data) = setup(12, 4);
        let pairs: Vec<_> = data
            .iter()
            .take(3)
            .enumerate()
            .map(|(k, d)| (d, map.node(map.coord_of(k * 11)).unwrap()))
            .collect();
        let state = seed_from(&pairs);
        let labels: Vec<usize> = (0..12).map(|k| k % 3).collect();
        let lm = label_map(&state, &map, &data, &labels, 3).unwrap();
        for q in &data {
            let c = classify(&state, &map, &lm, q).unwrap();
            let p = crate::vsa::unbind_bundle(q, &state.seeds()[0]).unwrap();
            let mut best = (Coord::new(0, 0), f64::NEG_INFINITY, 0);
            for &(coords, label) in lm.nodes() {
                let s = crate::vsa::cosine_real(&p, &map.node(coords).unwrap()).unwrap();
                if s > best.1 {
                    best = (coords, s, label);
                }
            }
            assert_eq!(c.coords, best.0);
            assert_eq!(c.label, best.2);
            assert!((c.similarity - best.1).abs() < 1e-9);
        }
    }

    #[test]
    fn label_errors() {
        let (map, data) = setup(2, 5);
        let state = SeedState::init(1, 1000, &mut SeededRng::new(1)).unwrap();
        assert!(label_map(&state, &map, &[], &[], 2).is_err());
        assert!(label_map(&state, &map, &data, &[0], 2).is_err());
        assert!(label_map(&state, &map, &data, &[0, 2], 2).is_err());
    }

    #[test]
    fn projection_rows() {
        let (map, data) = setup(3, 6);
        let target = Coord::new(2, 3);
        let state = seed_from(&[(&data[0], map.node(target).unwrap())]);
        let lm = label_map(&state, &map, &data[..1], &[0], 1).unwrap();
        assert!(export_projection(&state, &map, &lm, &[], &[])
            .unwrap()
            .is_empty());
        let rows = export_projection(&state, &map, &lm, &data, &[0, 0, 0]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!((rows[0].i, rows[0].j), (2, 3));
        assert!((rows[0].similarity - 1.0).abs() < 1e-9);
        assert!(rows.iter().all(|r| r.predicted_label == 0));
    }
}
