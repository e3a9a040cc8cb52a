//! Encoders from raw inputs to phasor hypervectors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::vsa::{fpe_power, normalize, random_phasor, BundleVector, PhasorVector};

/// Quantized feature encoder: each feature is min-max scaled, cut into `q`
/// levels, and level `i` of feature `k` is `b_k^(ε·i)`. A sample is the
/// normalized superposition of its feature levels.
#[derive(Clone, Debug)]
pub struct FeatureEncoder {
    q: usize,
    epsilon: f64,
    bases: Vec<PhasorVector>,
    ranges: Vec<(f64, f64)>,
    // levels[k][i] as (cos, sin) pairs, flattened over dimensions
    levels: Vec<Vec<Vec<(f64, f64)>>>,
}

/// Serializable parameters of a [`FeatureEncoder`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureEncoderParts {
    pub q: usize,
    pub epsilon: f64,
    pub bases: Vec<PhasorVector>,
    pub ranges: Vec<(f64, f64)>,
}

impl FeatureEncoder {
    /// Records per-feature ranges from `samples` and draws one base per feature.
    pub fn fit(
        samples: &[Vec<f64>],
        q: usize,
        epsilon: f64,
        d: usize,
        rng: &mut SeededRng,
    ) -> Result<Self> {
        let first = samples.first().ok_or(Error::Empty("no training samples"))?;
        let k = first.len();
        if k == 0 {
            return Err(Error::param("samples", "samples have no features"));
        }
        let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); k];
        for (row, s) in samples.iter().enumerate() {
            if s.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: s.len(),
                });
            }
            for (f, (&v, r)) in s.iter().zip(ranges.iter_mut()).enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite {
                        index: row * k + f,
                        value: v,
                    });
                }
                r.0 = r.0.min(v);
                r.1 = r.1.max(v);
            }
        }
        let bases = (0..k)
            .map(|_| random_phasor(d, rng))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(FeatureEncoderParts {
            q,
            epsilon,
            bases,
            ranges,
        })
    }

    pub fn from_parts(parts: FeatureEncoderParts) -> Result<Self> {
        let FeatureEncoderParts {
            q,
            epsilon,
            bases,
            ranges,
        } = parts;
        if q < 2 {
            return Err(Error::param("q", "needs at least 2 levels"));
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::param("epsilon_d", "must be positive and finite"));
        }
        if bases.is_empty() || bases.len() != ranges.len() {
            return Err(Error::param(
                "bases",
                "need one base and one range per feature",
            ));
        }
        let d = bases[0].dim();
        for b in &bases {
            crate::error::check_dim(d, b.dim())?;
        }
        if ranges
            .iter()
            .any(|(lo, hi)| !lo.is_finite() || !hi.is_finite() || lo > hi)
        {
            return Err(Error::param(
                "ranges",
                "every range needs finite min <= max",
            ));
        }
        let levels = bases
            .iter()
            .map(|b| {
                (0..q)
                    .map(|i| {
                        let v = fpe_power(b, epsilon * i as f64)?;
                        Ok(v.phases().iter().map(|p| (p.cos(), p.sin())).collect())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            q,
            epsilon,
            bases,
            ranges,
            levels,
        })
    }

    pub fn to_parts(&self) -> FeatureEncoderParts {
        FeatureEncoderParts {
            q: self.q,
            epsilon: self.epsilon,
            bases: self.bases.clone(),
            ranges: self.ranges.clone(),
        }
    }

    pub fn features(&self) -> usize {
        self.bases.len()
    }

    pub fn dim(&self) -> usize {
        self.bases[0].dim()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn bases(&self) -> &[PhasorVector] {
        &self.bases
    }

    pub fn ranges(&self) -> &[(f64, f64)] {
        &self.ranges
    }

    /// Quantization level of `value` for feature `k`. Values outside the
    /// fitted range are clipped; a constant feature is always level 0.
    pub fn level(&self, k: usize, value: f64) -> usize {
        let (lo, hi) = self.ranges[k];
        if hi <= lo {
            return 0;
        }
        let t = ((value - lo) / (hi - lo)).clamp(0.0, 1.0);
        ((t * self.q as f64).floor() as usize).min(self.q - 1)
    }

    pub fn encode(&self, sample: &[f64]) -> Result<PhasorVector> {
        if sample.len() != self.features() {
            return Err(Error::DimensionMismatch {
                expected: self.features(),
                found: sample.len(),
            });
        }
        if let Some((index, &value)) = sample.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        let d = self.dim();
        let mut re = vec![0.0; d];
        let mut im = vec![0.0; d];
        for (k, &v) in sample.iter().enumerate() {
            let lvl = &self.levels[k][self.level(k, v)];
            for ((r, i), (c, s)) in re.iter_mut().zip(im.iter_mut()).zip(lvl) {
                *r += c;
                *i += s;
            }
        }
        Ok(normalize(&BundleVector::from_parts(re, im)?))
    }
}

/// Lowercases, keeps only `a..z` and whitespace, and collapses whitespace
/// runs to one space. Letters outside basic Latin are dropped.
pub fn preprocess_text(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut in_space = false;
    for ch in raw.chars() {
        if ch.is_whitespace() {
            if !in_space {
                out.push(' ');
                in_space = true;
            }
            continue;
        }
        let lower = ch.to_ascii_lowercase();
        if lower.is_ascii_lowercase() {
            out.push(lower);
            in_space = false;
        }
    }
    out
}

/// The 27-symbol alphabet: `a..z` then space.
pub fn latin_alphabet() -> Vec<char> {
    ('a'..='z').chain(std::iter::once(' ')).collect()
}

/// Positional n-gram statistics encoder. An n-gram `x_1 .. x_n` is
/// `ρ¹(b_x1) ∘ ρ²(b_x2) ∘ … ∘ ρⁿ(b_xn)`; a text is the normalized
/// superposition of all its sliding-window n-grams.
#[derive(Clone, Debug)]
pub struct NgramEncoder {
    alphabet: Vec<char>,
    n: usize,
    atomics: Vec<PhasorVector>,
    index: BTreeMap<char, usize>,
    // rotated[sym * n + pos] = ρ^(pos+1)(b_sym) as (cos, sin)
    rotated: Vec<Vec<(f64, f64)>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NgramEncoderParts {
    pub alphabet: Vec<char>,
    pub n: usize,
    pub atomics: Vec<PhasorVector>,
}

impl NgramEncoder {
    pub fn new(alphabet: Vec<char>, n: usize, d: usize, rng: &mut SeededRng) -> Result<Self> {
        let atomics = (0..alphabet.len())
            .map(|_| random_phasor(d, rng))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(NgramEncoderParts {
            alphabet,
            n,
            atomics,
        })
    }

    pub fn from_parts(parts: NgramEncoderParts) -> Result<Self> {
        let NgramEncoderParts {
            alphabet,
            n,
            atomics,
        } = parts;
        if n == 0 {
            return Err(Error::param("ngram_n", "must be at least 1"));
        }
        if alphabet.is_empty() || alphabet.len() != atomics.len() {
            return Err(Error::param(
                "alphabet",
                "need one atomic vector per symbol",
            ));
        }
        let mut index = BTreeMap::new();
        for (k, &c) in alphabet.iter().enumerate() {
            if index.insert(c, k).is_some() {
                return Err(Error::param("alphabet", format!("symbol {c:?} repeats")));
            }
        }
        let d = atomics[0].dim();
        for a in &atomics {
            crate::error::check_dim(d, a.dim())?;
        }
        let mut rotated = Vec::with_capacity(alphabet.len() * n);
        for a in &atomics {
            for pos in 0..n {
                let r = crate::vsa::permute(a, pos as i64 + 1);
                rotated.push(r.phases().iter().map(|p| (p.cos(), p.sin())).collect());
            }
        }
        Ok(Self {
            alphabet,
            n,
            atomics,
            index,
            rotated,
        })
    }

    pub fn to_parts(&self) -> NgramEncoderParts {
        NgramEncoderParts {
            alphabet: self.alphabet.clone(),
            n: self.n,
            atomics: self.atomics.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.atomics[0].dim()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn atomics(&self) -> &[PhasorVector] {
        &self.atomics
    }

    /// Counts of every n-gram in `text`, keyed by symbol indices.
    pub fn ngram_counts(&self, text: &str) -> Result<BTreeMap<Vec<usize>, u32>> {
        let symbols = text
            .chars()
            .map(|c| self.index.get(&c).copied().ok_or(Error::UnknownSymbol(c)))
            .collect::<Result<Vec<_>>>()?;
        if symbols.len() < self.n {
            return Err(Error::TextTooShort {
                len: symbols.len(),
                order: self.n,
            });
        }
        let mut counts = BTreeMap::new();
        for w in symbols.windows(self.n) {
            *counts.entry(w.to_vec()).or_insert(0) += 1;
        }
        Ok(counts)
    }

    pub fn encode(&self, text: &str) -> Result<PhasorVector> {
        let counts = self.ngram_counts(text)?;
        let d = self.dim();
        let mut re = vec![0.0; d];
        let mut im = vec![0.0; d];
        let mut gr = vec![0.0; d];
        let mut gi = vec![0.0; d];
        for (gram, &count) in &counts {
            let first = &self.rotated[gram[0] * self.n];
            for ((r, i), &(c, s)) in gr.iter_mut().zip(gi.iter_mut()).zip(first) {
                *r = c;
                *i = s;
            }
            for (pos, &sym) in gram.iter().enumerate().skip(1) {
                let rot = &self.rotated[sym * self.n + pos];
                for ((r, i), &(c, s)) in gr.iter_mut().zip(gi.iter_mut()).zip(rot) {
                    let nr = *r * c - *i * s;
                    *i = *r * s + *i * c;
                    *r = nr;
                }
            }
            let w = f64::from(count);
            for k in 0..d {
                re[k] += w * gr[k];
                im[k] += w * gi[k];
            }
        }
        Ok(normalize(&BundleVector::from_parts(re, im)?))
    }
}
