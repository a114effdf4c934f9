//! Seeded random-point scans over a triple's bivector.
//!
//! Points are drawn sequentially from a [`SplitMix64`] stream (so a seed
//! pins the whole scan), then the per-point measurements run in parallel
//! when the `parallel` feature is enabled. Results are collected in sample
//! order, which keeps reports byte-identical across thread schedules; the
//! sequential variants stay compiled either way so benchmarks can compare
//! both paths.

use crate::adjoint::GroupPoint;
use crate::error::{Error, Result};
use crate::poisson::PoissonBivector;
use crate::rng::SplitMix64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Attempts per sample before a chart breakdown is reported instead of
/// resampled.
pub const MAX_RESAMPLE_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    pub samples: usize,
    pub radius: f64,
    pub seed: u64,
}

/// A sample that needed resampling: how many extra draws it consumed.
#[derive(Debug, Clone, Copy)]
pub struct ResampleEvent {
    pub sample: usize,
    pub attempts: usize,
}

/// Aggregated scan measurements.
#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub samples: usize,
    pub max_jacobi: f64,
    pub max_antisymmetry: f64,
    pub origin_norm: f64,
    pub linearization_sigma: f64,
    pub linearization_deviation: f64,
    pub resamples: Vec<ResampleEvent>,
    /// Samples that stayed on a chart breakdown after all retries.
    pub failed: Vec<usize>,
}

/// Draw chart-valid sample points, resampling on breakdown with bounded
/// retries. Failed samples are dropped from the returned set and recorded.
pub fn sample_points(
    pb: &PoissonBivector,
    cfg: &ScanConfig,
) -> (Vec<GroupPoint>, Vec<ResampleEvent>, Vec<usize>) {
    let mut rng = SplitMix64::new(cfg.seed);
    let n = pb.dim();
    let mut points = Vec::with_capacity(cfg.samples);
    let mut resamples = Vec::new();
    let mut failed = Vec::new();
    for sample in 0..cfg.samples {
        let mut attempts = 0;
        loop {
            attempts += 1;
            let p = GroupPoint::new(rng.next_in_ball(n, cfg.radius));
            match pb.eval(&p) {
                Ok(_) => {
                    if attempts > 1 {
                        resamples.push(ResampleEvent { sample, attempts });
                    }
                    points.push(p);
                    break;
                }
                Err(Error::ChartBreakdown { .. }) if attempts < MAX_RESAMPLE_ATTEMPTS => continue,
                Err(_) => {
                    failed.push(sample);
                    break;
                }
            }
        }
    }
    (points, resamples, failed)
}

/// Jacobi residual at each point, sequential.
pub fn jacobi_scan_seq(pb: &PoissonBivector, points: &[GroupPoint]) -> Result<Vec<f64>> {
    points.iter().map(|p| pb.jacobi_residual(p)).collect()
}

/// Jacobi residual at each point on the rayon pool, in sample order.
#[cfg(feature = "parallel")]
pub fn jacobi_scan_par(pb: &PoissonBivector, points: &[GroupPoint]) -> Result<Vec<f64>> {
    points.par_iter().map(|p| pb.jacobi_residual(p)).collect()
}

/// Jacobi residual at each point; parallel when the feature is on.
pub fn jacobi_scan(pb: &PoissonBivector, points: &[GroupPoint]) -> Result<Vec<f64>> {
    #[cfg(feature = "parallel")]
    {
        jacobi_scan_par(pb, points)
    }
    #[cfg(not(feature = "parallel"))]
    {
        jacobi_scan_seq(pb, points)
    }
}

/// Antisymmetry violation `|P + P^T|_max` at each point, sequential.
pub fn antisymmetry_scan_seq(pb: &PoissonBivector, points: &[GroupPoint]) -> Result<Vec<f64>> {
    points
        .iter()
        .map(|p| {
            let m = pb.eval(p)?.matrix;
            Ok(m.add(&m.transpose()).norm_max())
        })
        .collect()
}

/// Antisymmetry violation at each point; parallel when the feature is on.
pub fn antisymmetry_scan(pb: &PoissonBivector, points: &[GroupPoint]) -> Result<Vec<f64>> {
    #[cfg(feature = "parallel")]
    {
        points
            .par_iter()
            .map(|p| {
                let m = pb.eval(p)?.matrix;
                Ok(m.add(&m.transpose()).norm_max())
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        antisymmetry_scan_seq(pb, points)
    }
}

/// Full scan: Jacobi and antisymmetry over seeded points, the bivector
/// norm at the origin, and the linearization against the dual constants
/// with fitted sign.
pub fn run(pb: &PoissonBivector, cfg: &ScanConfig) -> Result<ScanSummary> {
    let (points, resamples, failed) = sample_points(pb, cfg);
    let jacobi = jacobi_scan(pb, &points)?;
    let antisym = antisymmetry_scan(pb, &points)?;
    let origin_norm = pb.eval(&GroupPoint::origin(pb.dim()))?.matrix.norm_max();
    let lin = pb.linearize()?;
    let (sigma, dev) = lin.fit_sign(pb.triple());
    Ok(ScanSummary {
        samples: cfg.samples,
        max_jacobi: jacobi.iter().fold(0.0, |m, v| m.max(*v)),
        max_antisymmetry: antisym.iter().fold(0.0, |m, v| m.max(*v)),
        origin_norm,
        linearization_sigma: sigma,
        linearization_deviation: dev,
        resamples,
        failed,
    })
}
