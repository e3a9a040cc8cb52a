//! The HD-map: a fixed grid of FPE-encoded node hypervectors acting as an
//! associative memory.
//!
//! Node `(i, j)` is `x0^(ε·i) ∘ y0^(ε·j)`, so nearby grid nodes have similar
//! hypervectors and the similarity decays with grid distance at a rate set by
//! the bandwidth `ε`. The grid coordinates themselves are never consulted by
//! the search; they only name results.
//!
//! Search only ever needs the real parts of the nodes, so the map stores those
//! (plus norms) in one dense matrix and rebuilds full node phasors on demand
//! from the two bases.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::rng::SeededRng;
use crate::search::RealMatrix;
use crate::vsa::{bind, fpe_power, random_phasor, Hypervector, PhasorVector};

/// Grid coordinates `(row, column)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub i: usize,
    pub j: usize,
}

impl Coord {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

impl From<(usize, usize)> for Coord {
    fn from((i, j): (usize, usize)) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Best matching vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BmvResult {
    pub coords: Coord,
    pub similarity: f64,
}

pub struct HdMap {
    rows: usize,
    cols: usize,
    epsilon: f64,
    x_base: PhasorVector,
    y_base: PhasorVector,
    nodes: RealMatrix,
}

impl fmt::Debug for HdMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HdMap")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("epsilon", &self.epsilon)
            .field("dim", &self.dim())
            .finish_non_exhaustive()
    }
}

impl HdMap {
    /// Draws two random bases and precomputes all `rows * cols` nodes.
    #[doc(alias = "build_map")]
    pub fn build(
        rows: usize,
        cols: usize,
        epsilon: f64,
        d: usize,
        rng: &mut SeededRng,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        check_grid(rows, cols, epsilon)?;
        let x_base = random_phasor(d, rng)?;
        let y_base = random_phasor(d, rng)?;
        Self::from_bases(rows, cols, epsilon, x_base, y_base)
    }

    /// Rebuilds a map from known bases (e.g. a saved model).
    pub fn from_bases(
        rows: usize,
        cols: usize,
        epsilon: f64,
        x_base: PhasorVector,
        y_base: PhasorVector,
    ) -> Result<Self> {
        check_grid(rows, cols, epsilon)?;
        check_dim(x_base.dim(), y_base.dim())?;
        let d = x_base.dim();
        let xs = (0..rows)
            .map(|i| fpe_power(&x_base, epsilon * i as f64))
            .collect::<Result<Vec<_>>>()?;
        let ys = (0..cols)
            .map(|j| fpe_power(&y_base, epsilon * j as f64))
            .collect::<Result<Vec<_>>>()?;
        let mut data = Vec::with_capacity(rows * cols * d);
        for x in &xs {
            for y in &ys {
                let node = bind(x, y)?;
                data.extend(node.phases().iter().map(|p| p.cos()));
            }
        }
        Ok(Self {
            rows,
            cols,
            epsilon,
            x_base,
            y_base,
            nodes: RealMatrix::new(d, data)?,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.x_base.dim()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn x_base(&self) -> &PhasorVector {
        &self.x_base
    }

    pub fn y_base(&self) -> &PhasorVector {
        &self.y_base
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.i < self.rows && c.j < self.cols
    }

    pub fn check(&self, c: Coord) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::OutOfBounds {
                i: c.i,
                j: c.j,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Row-major index of a coordinate.
    pub fn index_of(&self, c: Coord) -> usize {
        c.i * self.cols + c.j
    }

    pub fn coord_of(&self, index: usize) -> Coord {
        Coord::new(index / self.cols, index % self.cols)
    }

    /// The node hypervector at `c`, recomputed from the bases.
    pub fn node(&self, c: Coord) -> Result<PhasorVector> {
        self.check(c)?;
        bind(
            &fpe_power(&self.x_base, self.epsilon * c.i as f64)?,
            &fpe_power(&self.y_base, self.epsilon * c.j as f64)?,
        )
    }

    /// Stored real part of the node at `c`.
    pub fn node_real(&self, c: Coord) -> Result<&[f64]> {
        self.check(c)?;
        Ok(self.nodes.row(self.index_of(c)))
    }

    pub(crate) fn node_matrix(&self) -> &RealMatrix {
        &self.nodes
    }

    /// Exhaustive best-matching-vector search for one query.
    pub fn find_bmv<V: Hypervector + ?Sized>(&self, query: &V) -> Result<BmvResult> {
        check_dim(self.dim(), query.dim())?;
        let real = query.real_part();
        let hit = self.nodes.best_matches(1, |_, buf| {
            buf.copy_from_slice(&real);
            Ok(())
        })?[0];
        Ok(self.result(hit.row, hit.similarity))
    }

    /// Best matching vectors for `count` queries whose real parts are written
    /// by `fill(q, buf)`.
    pub fn find_bmv_batch<F>(&self, count: usize, fill: F) -> Result<Vec<BmvResult>>
    where
        F: Fn(usize, &mut [f64]) -> Result<()> + Sync,
    {
        Ok(self
            .nodes
            .best_matches(count, fill)?
            .into_iter()
            .map(|hit| self.result(hit.row, hit.similarity))
            .collect())
    }

    fn result(&self, row: usize, similarity: f64) -> BmvResult {
        BmvResult {
            coords: self.coord_of(row),
            similarity,
        }
    }

    /// Similarity of every node to the node at `target`.
    pub fn similarity_landscape(&self, target: Coord) -> Result<Landscape> {
        let query = self.node_real(target)?.to_vec();
        let values = self.nodes.scores(&query)?;
        Ok(Landscape {
            rows: self.rows,
            cols: self.cols,
            values,
        })
    }
}

fn check_grid(rows: usize, cols: usize, epsilon: f64) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::param(
            "grid",
            format!("{rows}x{cols} map has no nodes"),
        ));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::param(
            "epsilon_p",
            format!("{epsilon} must be positive and finite"),
        ));
    }
    Ok(())
}

/// An `rows x cols` grid of similarities, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Landscape {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

impl Landscape {
    pub fn get(&self, c: Coord) -> f64 {
        self.values[c.i * self.cols + c.j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vsa::{cosine_real, superpose, unbind_bundle};
    use approx::assert_abs_diff_eq;

    fn map(n: usize, m: usize, eps: f64, d: usize, seed: u64) -> HdMap {
        HdMap::build(n, m, eps, d, &mut SeededRng::new(seed)).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut rng = SeededRng::new(0);
        assert!(HdMap::build(0, 3, 0.1, 10, &mut rng).is_err());
        assert!(HdMap::build(3, 0, 0.1, 10, &mut rng).is_err());
        assert!(HdMap::build(3, 3, 0.0, 10, &mut rng).is_err());
        assert_eq!(
            HdMap::build(3, 3, 0.1, 0, &mut rng).unwrap_err(),
            Error::InvalidDimension(0)
        );
    }

    #[test]
    fn single_node_is_identity() {
        let m = map(1, 1, 0.5, 64, 1);
        assert_eq!(
            m.node(Coord::new(0, 0)).unwrap(),
            PhasorVector::identity(64).unwrap()
        );
        assert!(m.node(Coord::new(1, 0)).is_err());
    }

    #[test]
    fn stored_real_parts_match_reconstruction() {
        let m = map(4, 6, 0.2, 50, 2);
        for i in 0..4 {
            for j in 0..6 {
                let c = Coord::new(i, j);
                let node = m.node(c).unwrap();
                assert_eq!(m.node_real(c).unwrap(), &node.real_part()[..]);
                assert_eq!(node, m.node(c).unwrap());
                let expected = bind(
                    &fpe_power(m.x_base(), 0.2 * i as f64).unwrap(),
                    &fpe_power(m.y_base(), 0.2 * j as f64).unwrap(),
                )
                .unwrap();
                assert_eq!(node, expected);
            }
        }
    }

    #[test]
    fn exact_node_query_finds_itself() {
        let m = map(5, 5, 0.8, 1000, 3);
        for idx in 0..25 {
            let c = m.coord_of(idx);
            let hit = m.find_bmv(&m.node(c).unwrap()).unwrap();
            assert_eq!(hit.coords, c);
            assert_abs_diff_eq!(hit.similarity, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn noisy_unbinding_finds_bound_node() {
        let m = map(5, 5, 0.8, 1000, 4);
        let mut rng = SeededRng::new(40);
        let datum = random_phasor(1000, &mut rng).unwrap();
        let target = m.node(Coord::new(2, 2)).unwrap();
        let s = superpose([&bind(&datum, &target).unwrap()]).unwrap();
        let hit = m.find_bmv(&unbind_bundle(&datum, &s).unwrap()).unwrap();
        assert_eq!(hit.coords, Coord::new(2, 2));
    }

    #[test]
    fn random_query_has_low_similarity() {
        let m = map(50, 50, 0.05, 10_000, 5);
        let q = random_phasor(10_000, &mut SeededRng::new(50)).unwrap();
        let hit = m.find_bmv(&q).unwrap();
        assert!(hit.similarity < 0.1, "{}", hit.similarity);
        assert_abs_diff_eq!(
            hit.similarity,
            cosine_real(&q, &m.node(hit.coords).unwrap()).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn landscape_peaks_at_target_and_decays() {
        let m = map(50, 50, 0.05, 10_000, 6);
        let target = Coord::new(15, 15);
        let l = m.similarity_landscape(target).unwrap();
        assert_abs_diff_eq!(l.get(target), 1.0, epsilon = 1e-12);
        // Mean similarity over rings of growing Chebyshev radius drops inside the main lobe.
        let ring_mean = |r: usize| {
            let mut acc = (0.0, 0);
            for i in 0..50usize {
                for j in 0..50usize {
                    if i.abs_diff(15).max(j.abs_diff(15)) == r {
                        acc.0 += l.get(Coord::new(i, j));
                        acc.1 += 1;
                    }
                }
            }
            acc.0 / acc.1 as f64
        };
        let means: Vec<f64> = (0..=10).map(ring_mean).collect();
        for w in means.windows(2) {
            assert!(w[1] < w[0], "{means:?}");
        }
        assert!(m.similarity_landscape(Coord::new(50, 0)).is_err());
    }

    #[test]
    fn larger_bandwidth_decays_faster() {
        let wide = map(40, 40, 0.008, 2000, 7);
        let narrow = map(40, 40, 0.03, 2000, 7);
        let t = Coord::new(20, 20);
        let lw = wide.similarity_landscape(t).unwrap();
        let ln = narrow.similarity_landscape(t).unwrap();
        for off in [5usize, 10, 15] {
            let c = Coord::new(20 + off, 20);
            assert!(ln.get(c) < lw.get(c), "offset {off}");
        }
    }

    #[test]
    fn landscape_is_symmetric() {
        let m = map(6, 7, 0.3, 300, 8);
        for a in 0..m.len() {
            let la = m.similarity_landscape(m.coord_of(a)).unwrap();
            for b in 0..m.len() {
                let lb = m.similarity_landscape(m.coord_of(b)).unwrap();
                assert!((la.values[b] - lb.values[a]).abs() < 1e-9);
            }
        }
    }
}
