//! Generators for point clouds shaped like six FCPS datasets.
//!
//! The original FCPS files are not bundled. Each generator reproduces the
//! qualitative structure of its namesake; sizes default to the originals.
//!
//! | name        | dim | classes | shape |
//! |-------------|-----|---------|-------|
//! | atom        | 3   | 2       | ball of radius 0.3 inside a shell with radius in [0.8, 1] |
//! | chainlink   | 3   | 2       | two interlocked rings of radius 1, Gaussian tube noise σ = 0.1 |
//! | engytime    | 2   | 2       | overlapping Gaussians at (0,0) σ=(1,1) and (3,3) σ=(1.2,0.8) |
//! | hepta       | 3   | 7       | Gaussian blobs σ = 0.4 at the origin and at ±3 on each axis |
//! | twodiamonds | 2   | 2       | uniform squares rotated 45°, centred at (±1, 0), touching at the origin |
//! | lsun3d      | 3   | 4       | two flat bars forming an L, a Gaussian ball, and a few far outliers |

use std::fmt;
use std::str::FromStr;

use hyperseed::SeededRng;
use serde::{Deserialize, Serialize};

use crate::datasets::TabularDataset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FcpsName {
    Atom,
    Chainlink,
    Engytime,
    Hepta,
    Twodiamonds,
    Lsun3d,
}

impl FcpsName {
    pub const ALL: [FcpsName; 6] = [
        FcpsName::Atom,
        FcpsName::Chainlink,
        FcpsName::Engytime,
        FcpsName::Hepta,
        FcpsName::Twodiamonds,
        FcpsName::Lsun3d,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FcpsName::Atom => "atom",
            FcpsName::Chainlink => "chainlink",
            FcpsName::Engytime => "engytime",
            FcpsName::Hepta => "hepta",
            FcpsName::Twodiamonds => "twodiamonds",
            FcpsName::Lsun3d => "lsun3d",
        }
    }

    /// Size of the original dataset.
    pub fn default_points(self) -> usize {
        match self {
            FcpsName::Atom => 800,
            FcpsName::Chainlink => 1000,
            FcpsName::Engytime => 4096,
            FcpsName::Hepta => 212,
            FcpsName::Twodiamonds => 800,
            FcpsName::Lsun3d => 404,
        }
    }
}

impl fmt::Display for FcpsName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FcpsName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FcpsName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| format!("unknown FCPS dataset {s:?}"))
    }
}

/// Generates `n_points` labeled points (the original size when `None`).
/// Points are emitted class by class.
pub fn generate_fcps_like(
    name: FcpsName,
    n_points: Option<usize>,
    rng: &mut SeededRng,
) -> TabularDataset {
    let n = n_points.unwrap_or_else(|| name.default_points());
    let mut g = Gen {
        rng,
        samples: Vec::with_capacity(n),
        labels: Vec::with_capacity(n),
    };
    let label_names: Vec<String> = match name {
        FcpsName::Atom => {
            let sizes = split_even(n, 2);
            for _ in 0..sizes[0] {
                let r = 0.3 * g.rng.unit().cbrt();
                let p = scale(&g.direction(), r);
                g.push(0, p);
            }
            for _ in 0..sizes[1] {
                let r = 0.8 + 0.2 * g.rng.unit();
                let p = scale(&g.direction(), r);
                g.push(1, p);
            }
            names(&["core", "shell"])
        }
        FcpsName::Chainlink => {
            let sizes = split_even(n, 2);
            for _ in 0..sizes[0] {
                let t = std::f64::consts::TAU * g.rng.unit();
                let p = [t.cos(), t.sin(), 0.0];
                g.push_noisy(0, p, [0.1; 3]);
            }
            for _ in 0..sizes[1] {
                let t = std::f64::consts::TAU * g.rng.unit();
                let p = [1.0 + t.cos(), 0.0, t.sin()];
                g.push_noisy(1, p, [0.1; 3]);
            }
            names(&["ring_a", "ring_b"])
        }
        FcpsName::Engytime => {
            let sizes = split_even(n, 2);
            for _ in 0..sizes[0] {
                g.push_noisy(0, [0.0, 0.0], [1.0, 1.0]);
            }
            for _ in 0..sizes[1] {
                g.push_noisy(1, [3.0, 3.0], [1.2, 0.8]);
            }
            names(&["a", "b"])
        }
        FcpsName::Hepta => {
            let centres = [
                [0.0, 0.0, 0.0],
                [3.0, 0.0, 0.0],
                [-3.0, 0.0, 0.0],
                [0.0, 3.0, 0.0],
                [0.0, -3.0, 0.0],
                [0.0, 0.0, 3.0],
                [0.0, 0.0, -3.0],
            ];
            for (k, (c, size)) in centres.iter().zip(split_even(n, 7)).enumerate() {
                for _ in 0..size {
                    g.push_noisy(k, *c, [0.4; 3]);
                }
            }
            names(&[
                "centre", "x_pos", "x_neg", "y_pos", "y_neg", "z_pos", "z_neg",
            ])
        }
        FcpsName::Twodiamonds => {
            let sizes = split_even(n, 2);
            for (k, cx) in [-1.0, 1.0].into_iter().enumerate() {
                for _ in 0..sizes[k] {
                    let p = loop {
                        let x = 2.0 * g.rng.unit() - 1.0;
                        let y = 2.0 * g.rng.unit() - 1.0;
                        if x.abs() + y.abs() <= 1.0 {
                            break [cx + x, y];
                        }
                    };
                    g.push(k, p.to_vec());
                }
            }
            names(&["left", "right"])
        }
        FcpsName::Lsun3d => {
            let outliers = ((n as f64 * 4.0 / 404.0).round() as usize).clamp(1, n.max(1));
            let rest = n - outliers.min(n);
            let bars = rest / 4;
            let sizes = [bars, bars, rest - 2 * bars, outliers.min(n)];
            for _ in 0..sizes[0] {
                let p = g.uniform_box([0.0, 0.0, 0.0], [4.0, 1.0, 1.0]);
                g.push(0, p);
            }
            for _ in 0..sizes[1] {
                let p = g.uniform_box([0.0, 2.0, 0.0], [1.0, 6.0, 1.0]);
                g.push(1, p);
            }
            for _ in 0..sizes[2] {
                g.push_noisy(2, [3.0, 4.0, 0.5], [0.35; 3]);
            }
            for _ in 0..sizes[3] {
                let p = g.uniform_box([6.0, 6.0, 3.0], [8.0, 8.0, 5.0]);
                g.push(3, p);
            }
            names(&["bar_x", "bar_y", "ball", "outliers"])
        }
    };
    let dim = g.samples.first().map_or(0, Vec::len);
    let axes = ["x", "y", "z"];
    TabularDataset {
        name: name.to_string(),
        feature_names: axes[..dim].iter().map(|s| s.to_string()).collect(),
        samples: g.samples,
        labels: g.labels,
        label_names,
    }
}

struct Gen<'a> {
    rng: &'a mut SeededRng,
    samples: Vec<Vec<f64>>,
    labels: Vec<usize>,
}

impl Gen<'_> {
    fn push(&mut self, label: usize, p: Vec<f64>) {
        self.samples.push(p);
        self.labels.push(label);
    }

    fn push_noisy<const D: usize>(&mut self, label: usize, centre: [f64; D], sigma: [f64; D]) {
        let p = centre
            .iter()
            .zip(sigma)
            .map(|(c, s)| c + s * self.rng.normal())
            .collect();
        self.push(label, p);
    }

    fn direction(&mut self) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..3).map(|_| self.rng.normal()).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-9 {
                return scale(&v, 1.0 / n);
            }
        }
    }

    fn uniform_box(&mut self, lo: [f64; 3], hi: [f64; 3]) -> Vec<f64> {
        lo.iter()
            .zip(hi)
            .map(|(l, h)| l + (h - l) * self.rng.unit())
            .collect()
    }
}

fn scale(v: &[f64], s: f64) -> Vec<f64> {
    v.iter().map(|x| x * s).collect()
}

fn names(n: &[&str]) -> Vec<String> {
    n.iter().map(|s| s.to_string()).collect()
}

/// `n` split into `k` parts; the first part takes the remainder.
fn split_even(n: usize, k: usize) -> Vec<usize> {
    let mut sizes = vec![n / k; k];
    sizes[0] += n % k;
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: FcpsName, n: Option<usize>, seed: u64) -> TabularDataset {
        generate_fcps_like(name, n, &mut SeededRng::new(seed))
    }

    #[test]
    fn sizes_and_determinism() {
        for name in FcpsName::ALL {
            let ds = gen(name, None, 1);
            assert_eq!(ds.len(), name.default_points(), "{name}");
            assert_eq!(ds.labels.len(), ds.len());
            assert!(ds.samples.iter().all(|s| s.len() == ds.features()));
            let max_label = *ds.labels.iter().max().unwrap();
            assert_eq!(max_label + 1, ds.num_labels(), "{name}");
            assert_eq!(ds, gen(name, None, 1));
            assert_eq!(name.as_str().parse::<FcpsName>().unwrap(), name);
        }
        assert!("blob".parse::<FcpsName>().is_err());
        assert_eq!(gen(FcpsName::Hepta, Some(21), 2).len(), 21);
    }

    #[test]
    fn twodiamonds_split_by_x_sign() {
        let ds = gen(FcpsName::Twodiamonds, Some(800), 3);
        assert_eq!(ds.num_labels(), 2);
        assert_eq!(ds.features(), 2);
        // the linear rule x > 0 as classifier oracle
        let correct = ds
            .samples
            .iter()
            .zip(&ds.labels)
            .filter(|(s, &l)| usize::from(s[0] > 0.0) == l)
            .count();
        assert!(correct as f64 / ds.len() as f64 > 0.99);
    }

    #[test]
    fn atom_radii_are_disjoint() {
        let ds = gen(FcpsName::Atom, Some(800), 4);
        let radius = |s: &Vec<f64>| s.iter().map(|x| x * x).sum::<f64>().sqrt();
        let core_max = ds
            .samples
            .iter()
            .zip(&ds.labels)
            .filter(|(_, &l)| l == 0)
            .map(|(s, _)| radius(s))
            .fold(0.0, f64::max);
        let shell_min = ds
            .samples
            .iter()
            .zip(&ds.labels)
            .filter(|(_, &l)| l == 1)
            .map(|(s, _)| radius(s))
            .fold(f64::INFINITY, f64::min);
        assert!(core_max < shell_min, "{core_max} vs {shell_min}");
    }

    /// Lloyd's algorithm with k-means++ seeding; returns cluster ids.
    fn kmeans(points: &[Vec<f64>], k: usize, rng: &mut SeededRng) -> (Vec<usize>, f64) {
        let dist2 =
            |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
        let mut centres = vec![points[rng.below(points.len())].clone()];
        while centres.len() < k {
            let w: Vec<f64> = points
                .iter()
                .map(|p| {
                    centres
                        .iter()
                        .map(|c| dist2(p, c))
                        .fold(f64::INFINITY, f64::min)
                })
                .collect();
            let total: f64 = w.iter().sum();
            let mut t = rng.unit() * total;
            let mut pick = points.len() - 1;
            for (i, wi) in w.iter().enumerate() {
                if t < *wi {
                    pick = i;
                    break;
                }
                t -= wi;
            }
            centres.push(points[pick].clone());
        }
        let mut assign = vec![0; points.len()];
        for _ in 0..100 {
            for (a, p) in assign.iter_mut().zip(points) {
                *a = (0..k)
                    .min_by(|&x, &y| dist2(p, &centres[x]).total_cmp(&dist2(p, &centres[y])))
                    .unwrap();
            }
            for (c, centre) in centres.iter_mut().enumerate() {
                let members: Vec<&Vec<f64>> = points
                    .iter()
                    .zip(&assign)
                    .filter(|(_, &a)| a == c)
                    .map(|(p, _)| p)
                    .collect();
                if !members.is_empty() {
                    for (d, x) in centre.iter_mut().enumerate() {
                        *x = members.iter().map(|m| m[d]).sum::<f64>() / members.len() as f64;
                    }
                }
            }
        }
        let inertia = points
            .iter()
            .zip(&assign)
            .map(|(p, &a)| dist2(p, &centres[a]))
            .sum();
        (assign, inertia)
    }

    #[test]
    fn hepta_is_recovered_by_seven_means() {
        let ds = gen(FcpsName::Hepta, Some(212), 5);
        let mut rng = SeededRng::new(50);
        let (assign, _) = (0..5)
            .map(|_| kmeans(&ds.samples, 7, &mut rng))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        // purity: every cluster votes for its majority label
        let mut correct = 0;
        for c in 0..7 {
            let mut counts = [0usize; 7];
            for (&a, &l) in assign.iter().zip(&ds.labels) {
                if a == c {
                    counts[l] += 1;
                }
            }
            correct += counts.iter().max().unwrap();
        }
        assert!(correct as f64 / ds.len() as f64 > 0.95);
    }

    #[test]
    fn chainlink_rings_interlock() {
        let ds = gen(FcpsName::Chainlink, Some(1000), 6);
        // ring A lies near z = 0, ring B near y = 0
        for (s, &l) in ds.samples.iter().zip(&ds.labels) {
            let off_plane = if l == 0 { s[2] } else { s[1] };
            assert!(off_plane.abs() < 0.6);
        }
    }

    #[test]
    fn lsun3d_has_four_classes_with_outliers() {
        let ds = gen(FcpsName::Lsun3d, None, 7);
        let counts: Vec<usize> = (0..4)
            .map(|c| ds.labels.iter().filter(|&&l| l == c).count())
            .collect();
        assert_eq!(counts, vec![100, 100, 200, 4]);
    }
}
