//! Erasure demo: encode a tangent vector with the frame, drop coefficients,
//! and reconstruct. The baseline is an orthonormal tangent basis losing the
//! same number of coordinates (all of them, if fewer than `erase`).

use funtf_core::frame::theoretical_constant;
use funtf_core::{frame_coefficients, project_tangent, reconstruct, tangent_basis, OperatorSet, Result, SphereSampler};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ErasureReport {
    pub n: usize,
    pub set_size: usize,
    pub erased: usize,
    pub basis_erased: usize,
    pub trials: usize,
    /// Mean reconstruction error over the trials, unit-norm inputs.
    pub error_norm_frame: f64,
    pub error_norm_basis_baseline: f64,
    pub max_error_norm_frame: f64,
    pub max_error_norm_basis_baseline: f64,
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

pub fn run(set: &OperatorSet, point_seed: u64, erase_seed: u64, erase: usize, trials: usize) -> Result<ErasureReport> {
    let dim = set.dim();
    let c = theoretical_constant(set);
    let mut points = SphereSampler::new(point_seed);
    let mut eraser = SphereSampler::new(erase_seed);
    let basis_erased = erase.min(dim - 1);
    let trials = trials.max(1);

    let (mut sum_frame, mut sum_basis) = (0.0, 0.0);
    let (mut max_frame, mut max_basis) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let a = points.next_point(dim)?;
        let mut x = project_tangent(&a, &points.gaussian_vector(dim))?;
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= r);

        let mut coefs = frame_coefficients(set, a.coords(), &x)?;
        for i in eraser.choose(coefs.len(), erase) {
            coefs[i] = 0.0;
        }
        let err_frame = distance(&reconstruct(set, a.coords(), &coefs, c)?, &x);

        let basis = tangent_basis(&a);
        let mut coords: Vec<f64> = basis
            .iter()
            .map(|b| b.iter().zip(&x).map(|(u, v)| u * v).sum())
            .collect();
        for i in eraser.choose(coords.len(), basis_erased) {
            coords[i] = 0.0;
        }
        let mut approx = vec![0.0; dim];
        for (b, w) in basis.iter().zip(&coords) {
            approx.iter_mut().zip(b).for_each(|(o, bi)| *o += w * bi);
        }
        let err_basis = distance(&approx, &x);

        sum_frame += err_frame;
        sum_basis += err_basis;
        max_frame = max_frame.max(err_frame);
        max_basis = max_basis.max(err_basis);
    }
    Ok(ErasureReport {
        n: set.order(),
        set_size: set.len(),
        erased: erase,
        basis_erased,
        trials,
        error_norm_frame: sum_frame / trials as f64,
        error_norm_basis_baseline: sum_basis / trials as f64,
        max_error_norm_frame: max_frame,
        max_error_norm_basis_baseline: max_basis,
    })
}
