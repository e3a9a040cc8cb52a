//! Phasor hypervector algebra (FHRR).
//!
//! A [`PhasorVector`] stores one phase angle per component; the complex value of
//! component `k` is `exp(i * phase_k)`. Binding adds phases, unbinding subtracts
//! them, and fractional power encoding scales them. Superposition leaves the
//! unit circle, so its result is a [`BundleVector`] with explicit real and
//! imaginary parts.
//!
//! All phase arithmetic is reduced into `[0, 2π)` with a floored modulo.
//! Similarity is the cosine between the real parts of two vectors.

use std::borrow::Cow;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::rng::SeededRng;

/// Reduce an angle into `[0, 2π)`.
#[inline]
pub fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly TAU.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A vector of unit-magnitude complex components, stored as phases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PhasorVector {
    phases: Vec<f64>,
}

impl PhasorVector {
    /// Builds a vector from arbitrary finite angles, wrapping them into `[0, 2π)`.
    pub fn from_phases(mut phases: Vec<f64>) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        for (index, p) in phases.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { index, value: *p });
            }
            *p = wrap_phase(*p);
        }
        Ok(Self { phases })
    }

    /// The binding identity: every phase zero, every component `1 + 0i`.
    pub fn identity(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self {
            phases: vec![0.0; d],
        })
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Complex form with unit magnitudes.
    pub fn to_bundle(&self) -> BundleVector {
        let (re, im) = self.phases.iter().map(|p| (p.cos(), p.sin())).unzip();
        BundleVector { re, im }
    }
}

impl TryFrom<Vec<f64>> for PhasorVector {
    type Error = Error;

    fn try_from(phases: Vec<f64>) -> Result<Self> {
        Self::from_phases(phases)
    }
}

impl From<PhasorVector> for Vec<f64> {
    fn from(v: PhasorVector) -> Self {
        v.phases
    }
}

/// A vector of unconstrained complex components: the result of superposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BundleParts", into = "BundleParts")]
pub struct BundleVector {
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct BundleParts {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<BundleParts> for BundleVector {
    type Error = Error;

    fn try_from(parts: BundleParts) -> Result<Self> {
        Self::from_parts(parts.re, parts.im)
    }
}

impl From<BundleVector> for BundleParts {
    fn from(b: BundleVector) -> Self {
        BundleParts { re: b.re, im: b.im }
    }
}

impl BundleVector {
    pub fn zeros(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self {
            re: vec![0.0; d],
            im: vec![0.0; d],
        })
    }

    pub fn from_parts(re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        if re.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        check_dim(re.len(), im.len())?;
        for (index, &value) in re.iter().chain(im.iter()).enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    index: index % re.len(),
                    value,
                });
            }
        }
        Ok(Self { re, im })
    }

    pub fn dim(&self) -> usize {
        self.re.len()
    }

    pub fn re(&self) -> &[f64] {
        &self.re
    }

    pub fn im(&self) -> &[f64] {
        &self.im
    }

    /// Adds a phasor in place (complex componentwise sum).
    pub fn add_phasor(&mut self, v: &PhasorVector) -> Result<()> {
        check_dim(self.dim(), v.dim())?;
        for ((re, im), p) in self.re.iter_mut().zip(self.im.iter_mut()).zip(&v.phases) {
            *re += p.cos();
            *im += p.sin();
        }
        Ok(())
    }

    pub fn add_bundle(&mut self, other: &BundleVector) -> Result<()> {
        check_dim(self.dim(), other.dim())?;
        for (a, b) in self.re.iter_mut().zip(&other.re) {
            *a += b;
        }
        for (a, b) in self.im.iter_mut().zip(&other.im) {
            *a += b;
        }
        Ok(())
    }

    /// Per-component magnitudes.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| r.hypot(*i))
            .collect()
    }
}

/// Anything that can be viewed as a complex hypervector.
pub trait Hypervector {
    fn dim(&self) -> usize;

    /// Real parts of the complex components.
    fn real_part(&self) -> Cow<'_, [f64]>;

    /// Adds the complex components into `re` / `im`.
    fn accumulate(&self, re: &mut [f64], im: &mut [f64]);
}

impl Hypervector for PhasorVector {
    fn dim(&self) -> usize {
        self.phases.len()
    }

    fn real_part(&self) -> Cow<'_, [f64]> {
        Cow::Owned(self.phases.iter().map(|p| p.cos()).collect())
    }

    fn accumulate(&self, re: &mut [f64], im: &mut [f64]) {
        for ((r, i), p) in re.iter_mut().zip(im.iter_mut()).zip(&self.phases) {
            *r += p.cos();
            *i += p.sin();
        }
    }
}

impl Hypervector for BundleVector {
    fn dim(&self) -> usize {
        self.re.len()
    }

    fn real_part(&self) -> Cow<'_, [f64]> {
        Cow::Borrowed(&self.re)
    }

    fn accumulate(&self, re: &mut [f64], im: &mut [f64]) {
        for (a, b) in re.iter_mut().zip(&self.re) {
            *a += b;
        }
        for (a, b) in im.iter_mut().zip(&self.im) {
            *a += b;
        }
    }
}

/// Random phasor with i.i.d. phases uniform on `[0, 2π)`.
pub fn random_phasor(d: usize, rng: &mut SeededRng) -> Result<PhasorVector> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let phases = (0..d).map(|_| wrap_phase(TAU * rng.unit())).collect();
    Ok(PhasorVector { phases })
}

/// Binding: componentwise complex product, i.e. phase addition mod 2π.
pub fn bind(a: &PhasorVector, b: &PhasorVector) -> Result<PhasorVector> {
    check_dim(a.dim(), b.dim())?;
    let phases = a
        .phases
        .iter()
        .zip(&b.phases)
        .map(|(x, y)| wrap_phase(x + y))
        .collect();
    Ok(PhasorVector { phases })
}

/// Unbinding: multiply `composite` by the conjugate of `key`.
pub fn unbind(key: &PhasorVector, composite: &PhasorVector) -> Result<PhasorVector> {
    check_dim(key.dim(), composite.dim())?;
    let phases = composite
        .phases
        .iter()
        .zip(&key.phases)
        .map(|(c, k)| wrap_phase(c - k))
        .collect();
    Ok(PhasorVector { phases })
}

/// Unbinding from a superposition: rotates every component by `-key.phase_k`.
pub fn unbind_bundle(key: &PhasorVector, composite: &BundleVector) -> Result<BundleVector> {
    check_dim(key.dim(), composite.dim())?;
    let mut re = Vec::with_capacity(key.dim());
    let mut im = Vec::with_capacity(key.dim());
    for ((cr, ci), k) in composite.re.iter().zip(&composite.im).zip(&key.phases) {
        let (s, c) = k.sin_cos();
        re.push(cr * c + ci * s);
        im.push(ci * c - cr * s);
    }
    Ok(BundleVector { re, im })
}

/// Real part of `unbind_bundle(key, composite)` written into `out`, without
/// materializing the imaginary part. This is the projection hot path.
pub fn unbind_real_into(
    key: &PhasorVector,
    composite: &BundleVector,
    out: &mut [f64],
) -> Result<()> {
    check_dim(key.dim(), composite.dim())?;
    check_dim(key.dim(), out.len())?;
    for (((o, cr), ci), k) in out
        .iter_mut()
        .zip(&composite.re)
        .zip(&composite.im)
        .zip(&key.phases)
    {
        let (s, c) = k.sin_cos();
        *o = cr * c + ci * s;
    }
    Ok(())
}

/// Superposition: componentwise complex sum.
pub fn superpose<'a, V, I>(vectors: I) -> Result<BundleVector>
where
    V: Hypervector + ?Sized + 'a,
    I: IntoIterator<Item = &'a V>,
{
    let mut iter = vectors.into_iter();
    let first = iter
        .next()
        .ok_or(Error::Empty("superpose needs at least one vector"))?;
    let d = first.dim();
    let mut re = vec![0.0; d];
    let mut im = vec![0.0; d];
    first.accumulate(&mut re, &mut im);
    for v in iter {
        check_dim(d, v.dim())?;
        v.accumulate(&mut re, &mut im);
    }
    Ok(BundleVector { re, im })
}

/// Projects a bundle back onto the unit circle. Components with zero
/// magnitude get phase 0.
pub fn normalize(a: &BundleVector) -> PhasorVector {
    let phases =
        a.re.iter()
            .zip(&a.im)
            .map(|(&r, &i)| {
                if r == 0.0 && i == 0.0 {
                    0.0
                } else {
                    wrap_phase(i.atan2(r))
                }
            })
            .collect();
    PhasorVector { phases }
}

/// Cyclic rotation: component `k` moves to position `(k + shift) mod d`.
pub fn permute(v: &PhasorVector, shift: i64) -> PhasorVector {
    let d = v.dim() as i64;
    let s = shift.rem_euclid(d) as usize;
    let mut phases = v.phases.clone();
    phases.rotate_right(s);
    PhasorVector { phases }
}

/// Fractional power encoding: raises every component to `exponent`, scaling
/// each stored phase in `[0, 2π)` and wrapping the result.
///
/// For a random base the similarity of `b^s` and `b^t` depends only on
/// `s - t`; between the real parts it follows `sin(2πt) / (2πt)`. The complex
/// kernel `E[e^{iθt}]` is not real, so bindings of FPE vectors with
/// independent bases shift similarity towards one side of the grid.
pub fn fpe_power(base: &PhasorVector, exponent: f64) -> Result<PhasorVector> {
    if !exponent.is_finite() {
        return Err(Error::param(
            "exponent",
            format!("{exponent} is not finite"),
        ));
    }
    let phases = base
        .phases
        .iter()
        .map(|&p| wrap_phase(p * exponent))
        .collect();
    Ok(PhasorVector { phases })
}

/// Cosine similarity between the real parts of two hypervectors.
pub fn cosine_real<A, B>(a: &A, b: &B) -> Result<f64>
where
    A: Hypervector + ?Sized,
    B: Hypervector + ?Sized,
{
    check_dim(a.dim(), b.dim())?;
    cosine(&a.real_part(), &b.real_part())
}

/// Cosine of two real slices of equal length.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    check_dim(a.len(), b.len())?;
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Err(Error::UndefinedSimilarity);
    }
    Ok((dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0))
}
