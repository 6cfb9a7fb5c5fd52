//! Points of `S^{2n-1} ⊂ R^{2n}`, tangent projection and tangent bases.

use rand_pcg::rand_core::Rng;
use rand_pcg::Pcg32;

use crate::error::{Error, Result};

/// Norm tolerance for [`SpherePoint::new`].
pub const POINT_NORM_TOL: f64 = 1e-12;

/// Stream constant used for every sampler (the PCG reference default).
const PCG_STREAM: u64 = 0x0a02_bdbf_7bb3_c0a7;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// A unit vector of even length.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::BadDimension(coords.len()));
        }
        let norm = norm(&coords);
        if (norm - 1.0).abs() > POINT_NORM_TOL {
            return Err(Error::NotUnit { norm });
        }
        Ok(SpherePoint { coords })
    }

    /// `(e_p + e_q) / √2` in `R^dim`, 1-based `p ≠ q`.
    pub fn probe(dim: usize, p: usize, q: usize) -> Result<Self> {
        for index in [p, q] {
            if index == 0 || index > dim {
                return Err(Error::BadIndex { index, dim });
            }
        }
        if p == q {
            return Err(Error::IndicesNotDistinct);
        }
        let mut coords = vec![0.0; dim];
        coords[p - 1] = std::f64::consts::FRAC_1_SQRT_2;
        coords[q - 1] = std::f64::consts::FRAC_1_SQRT_2;
        SpherePoint::new(coords)
    }

    /// The standard basis vector `e_i` (1-based).
    pub fn axis(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::BadIndex { index: i, dim });
        }
        let mut coords = vec![0.0; dim];
        coords[i - 1] = 1.0;
        SpherePoint::new(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

impl AsRef<[f64]> for SpherePoint {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}

/// Seeded source of uniformly distributed sphere points.
///
/// Uniforms come from PCG-XSH-RR 64/32 (a 64-bit LCG with output
/// permutation, `state = seed`, fixed stream) as 53-bit fractions; normals
/// from the Box–Muller transform; points by normalizing a Gaussian vector.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    rng: Pcg32,
    spare: Option<f64>,
}

impl SphereSampler {
    pub fn new(seed: u64) -> Self {
        SphereSampler {
            rng: Pcg32::new(seed, PCG_STREAM),
            spare: None,
        }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        ((self.uniform() * bound as f64) as usize).min(bound - 1)
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // 1 - u lies in (0, 1], so the logarithm is finite.
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * theta.sin());
        radius * theta.cos()
    }

    pub fn gaussian_vector(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.standard_normal()).collect()
    }

    pub fn next_point(&mut self, dim: usize) -> Result<SpherePoint> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::BadDimension(dim));
        }
        loop {
            let mut v = self.gaussian_vector(dim);
            let r = norm(&v);
            if r > 1e-150 {
                v.iter_mut().for_each(|x| *x /= r);
                return SpherePoint::new(v);
            }
        }
    }

    /// Elements of `0..len` chosen uniformly without replacement.
    pub fn choose(&mut self, len: usize, count: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..len).collect();
        let count = count.min(len);
        for i in 0..count {
            let j = i + self.below(len - i);
            idx.swap(i, j);
        }
        idx.truncate(count);
        idx
    }
}

/// A single point drawn from a fresh sampler.
pub fn random_sphere_point(dim: usize, seed: u64) -> Result<SpherePoint> {
    SphereSampler::new(seed).next_point(dim)
}

/// `x - ⟨x, a⟩ a`.
pub fn project_tangent(a: &SpherePoint, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != a.dim() {
        return Err(Error::LengthMismatch {
            what: "vector",
            expected: a.dim(),
            found: x.len(),
        });
    }
    let c = dot(x, a.coords());
    Ok(x.iter().zip(a.coords()).map(|(xi, ai)| xi - c * ai).collect())
}

/// Orthonormal basis of `a^⊥` with `dim - 1` vectors.
///
/// Gram–Schmidt, with one reorthogonalization pass, over the standard basis
/// vectors except the one on the coordinate where `|a_i|` is largest.
pub fn tangent_basis(a: &SpherePoint) -> Vec<Vec<f64>> {
    let dim = a.dim();
    let pivot = a
        .coords()
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut done: Vec<Vec<f64>> = vec![a.coords().to_vec()];
    for j in (0..dim).filter(|&j| j != pivot) {
        let mut v = vec![0.0; dim];
        v[j] = 1.0;
        for _ in 0..2 {
            for b in &done {
                let c = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= c * bi);
            }
        }
        let r = norm(&v);
        v.iter_mut().for_each(|x| *x /= r);
        done.push(v);
    }
    done.remove(0);
    done
}
