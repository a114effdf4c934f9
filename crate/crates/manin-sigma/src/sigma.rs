//! Worldsheet action and equation-of-motion residuals for discretized
//! fields.
//!
//! Fields live on a rectangular grid of sites: target coordinates `X_i`
//! per site and 1-form components `A_i = A_i1 dxi^1 + A_i2 dxi^2` per
//! site. The action
//!
//! ```text
//! S2 = integral( dX_i ^ A_i - (1/2) P^ij A_i ^ A_j )
//! ```
//!
//! is quadrature-summed over plaquettes with forward differences for dX
//! and midpoint (4-corner) averages for A and P; the wedge of two 1-forms
//! evaluates as `u1 v2 - u2 v1`. The local field equations are
//!
//! ```text
//! dX_i + P^ij A_j = 0
//! dA_k + (1/2) P^ij_{,k} A_i ^ A_j = 0
//! ```
//!
//! with the derivative convention of `P^ij_{,k}` selectable (see
//! [`DerivativeConvention`]). The module evaluates and checks fields; it
//! does not solve the boundary-value problem.

use crate::adjoint::GroupPoint;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poisson::{DerivativeConvention, PoissonBivector};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Rectangular worldsheet grid: `n1 x n2` sites with spacings `h1`, `h2`.
/// Site `(i1, i2)` sits at `(i1 * h1, i2 * h2)`; sites are stored row-major
/// with index `i1 * n2 + i2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorldsheetGrid {
    pub n1: usize,
    pub n2: usize,
    pub h1: f64,
    pub h2: f64,
}

impl WorldsheetGrid {
    pub fn new(n1: usize, n2: usize, h1: f64, h2: f64) -> Result<Self> {
        if n1 < 2 || n2 < 2 {
            return Err(Error::InvalidParameter {
                what: format!("grid needs at least 2x2 sites, got {n1}x{n2}"),
            });
        }
        if !(h1 > 0.0 && h2 > 0.0 && h1.is_finite() && h2.is_finite()) {
            return Err(Error::InvalidParameter {
                what: format!("grid spacings must be positive, got ({h1}, {h2})"),
            });
        }
        Ok(WorldsheetGrid { n1, n2, h1, h2 })
    }

    pub fn sites(&self) -> usize {
        self.n1 * self.n2
    }

    #[inline]
    pub fn site(&self, i1: usize, i2: usize) -> usize {
        i1 * self.n2 + i2
    }
}

/// Discretized fields: `x[site * n + i]` and `a[(site * n + i) * 2 + alpha]`.
#[derive(Debug, Clone)]
pub struct FieldConfig {
    dim: usize,
    x: Vec<f64>,
    a: Vec<f64>,
}

impl FieldConfig {
    pub fn new(grid: &WorldsheetGrid, dim: usize, x: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        let sites = grid.sites();
        if x.len() != sites * dim {
            return Err(Error::DimensionMismatch {
                what: "field X array",
                expected: sites * dim,
                got: x.len(),
            });
        }
        if a.len() != sites * dim * 2 {
            return Err(Error::DimensionMismatch {
                what: "field A array",
                expected: sites * dim * 2,
                got: a.len(),
            });
        }
        if x.iter().chain(a.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "field values",
            });
        }
        Ok(FieldConfig { dim, x, a })
    }

    /// Zero fields on the grid.
    pub fn zeros(grid: &WorldsheetGrid, dim: usize) -> Self {
        FieldConfig {
            dim,
            x: vec![0.0; grid.sites() * dim],
            a: vec![0.0; grid.sites() * dim * 2],
        }
    }

    /// Fill from closures of the worldsheet position.
    pub fn from_fn(
        grid: &WorldsheetGrid,
        dim: usize,
        mut x_fn: impl FnMut(f64, f64, usize) -> f64,
        mut a_fn: impl FnMut(f64, f64, usize, usize) -> f64,
    ) -> Self {
        let mut cfg = FieldConfig::zeros(grid, dim);
        for i1 in 0..grid.n1 {
            for i2 in 0..grid.n2 {
                let (xi1, xi2) = (i1 as f64 * grid.h1, i2 as f64 * grid.h2);
                let s = grid.site(i1, i2);
                for i in 0..dim {
                    cfg.set_x(s, i, x_fn(xi1, xi2, i));
                    for alpha in 0..2 {
                        cfg.set_a(s, i, alpha, a_fn(xi1, xi2, i, alpha));
                    }
                }
            }
        }
        cfg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn x(&self, site: usize, i: usize) -> f64 {
        self.x[site * self.dim + i]
    }

    #[inline]
    pub fn a(&self, site: usize, i: usize, alpha: usize) -> f64 {
        self.a[(site * self.dim + i) * 2 + alpha]
    }

    pub fn set_x(&mut self, site: usize, i: usize, v: f64) {
        self.x[site * self.dim + i] = v;
    }

    pub fn set_a(&mut self, site: usize, i: usize, alpha: usize, v: f64) {
        self.a[(site * self.dim + i) * 2 + alpha] = v;
    }
}

/// Per-equation residual arrays with max / RMS summaries.
#[derive(Debug, Clone)]
pub struct EomResidual {
    /// `dX_i + P^ij A_j` at interior sites, flattened `[site][i][alpha]`.
    pub r1: Vec<f64>,
    /// `dA_k + (1/2) P^ij_{,k} A_i ^ A_j` per plaquette, flattened
    /// `[cell][k]`.
    pub r2: Vec<f64>,
    pub max_r1: f64,
    pub rms_r1: f64,
    pub max_r2: f64,
    pub rms_r2: f64,
}

impl EomResidual {
    pub fn max(&self) -> f64 {
        self.max_r1.max(self.max_r2)
    }
}

struct Plaquette {
    /// Cell-centered forward differences of X, `[i][alpha]`.
    dx: Vec<[f64; 2]>,
    /// 4-corner averages of A, `[i][alpha]`.
    a: Vec<[f64; 2]>,
    /// 4-corner average of X.
    x_mid: Vec<f64>,
}

fn plaquette(grid: &WorldsheetGrid, fields: &FieldConfig, c1: usize, c2: usize) -> Plaquette {
    let n = fields.dim();
    let s00 = grid.site(c1, c2);
    let s10 = grid.site(c1 + 1, c2);
    let s01 = grid.site(c1, c2 + 1);
    let s11 = grid.site(c1 + 1, c2 + 1);
    let mut dx = vec![[0.0; 2]; n];
    let mut a = vec![[0.0; 2]; n];
    let mut x_mid = vec![0.0; n];
    for i in 0..n {
        dx[i][0] = (fields.x(s10, i) + fields.x(s11, i) - fields.x(s00, i) - fields.x(s01, i))
            / (2.0 * grid.h1);
        dx[i][1] = (fields.x(s01, i) + fields.x(s11, i) - fields.x(s00, i) - fields.x(s10, i))
            / (2.0 * grid.h2);
        for (alpha, slot) in a[i].iter_mut().enumerate() {
            *slot = 0.25
                * (fields.a(s00, i, alpha)
                    + fields.a(s10, i, alpha)
                    + fields.a(s01, i, alpha)
                    + fields.a(s11, i, alpha));
        }
        x_mid[i] =
            0.25 * (fields.x(s00, i) + fields.x(s10, i) + fields.x(s01, i) + fields.x(s11, i));
    }
    Plaquette { dx, a, x_mid }
}

/// Discrete exterior derivative of `A_k` on a plaquette, per unit area:
/// the boundary circulation of the edge-averaged components divided by the
/// cell area.
fn exterior_derivative(
    grid: &WorldsheetGrid,
    fields: &FieldConfig,
    c1: usize,
    c2: usize,
    k: usize,
) -> f64 {
    let s00 = grid.site(c1, c2);
    let s10 = grid.site(c1 + 1, c2);
    let s01 = grid.site(c1, c2 + 1);
    let s11 = grid.site(c1 + 1, c2 + 1);
    let bottom = 0.5 * (fields.a(s00, k, 0) + fields.a(s10, k, 0));
    let top = 0.5 * (fields.a(s01, k, 0) + fields.a(s11, k, 0));
    let left = 0.5 * (fields.a(s00, k, 1) + fields.a(s01, k, 1));
    let right = 0.5 * (fields.a(s10, k, 1) + fields.a(s11, k, 1));
    (right - left) / grid.h1 - (top - bottom) / grid.h2
}

fn check_shapes(pb: &PoissonBivector, fields: &FieldConfig) -> Result<()> {
    if fields.dim() != pb.dim() {
        return Err(Error::DimensionMismatch {
            what: "field target dimension",
            expected: pb.dim(),
            got: fields.dim(),
        });
    }
    Ok(())
}

fn at_site(e: Error, i1: usize, i2: usize) -> Error {
    Error::ChartBreakdownAtSite {
        i1,
        i2,
        source: Box::new(e),
    }
}

/// Quadrature value of the action over the grid.
pub fn action_s2(pb: &PoissonBivector, grid: &WorldsheetGrid, fields: &FieldConfig) -> Result<f64> {
    check_shapes(pb, fields)?;
    let n = fields.dim();
    let cells: Vec<(usize, usize)> = (0..grid.n1 - 1)
        .flat_map(|c1| (0..grid.n2 - 1).map(move |c2| (c1, c2)))
        .collect();

    let cell_value = |&(c1, c2): &(usize, usize)| -> Result<f64> {
        let pl = plaquette(grid, fields, c1, c2);
        let p = pb
            .eval(&GroupPoint::new(pl.x_mid.clone()))
            .map_err(|e| at_site(e, c1, c2))?
            .matrix;
        let mut value = 0.0;
        for i in 0..n {
            value += pl.dx[i][0] * pl.a[i][1] - pl.dx[i][1] * pl.a[i][0];
        }
        for i in 0..n {
            for j in 0..n {
                let wedge = pl.a[i][0] * pl.a[j][1] - pl.a[i][1] * pl.a[j][0];
                value -= 0.5 * p.get(i, j) * wedge;
            }
        }
        Ok(value * grid.h1 * grid.h2)
    };

    #[cfg(feature = "parallel")]
    let values: Result<Vec<f64>> = cells.par_iter().map(cell_value).collect();
    #[cfg(not(feature = "parallel"))]
    let values: Result<Vec<f64>> = cells.iter().map(cell_value).collect();

    // Summed in cell order so the value does not depend on scheduling.
    Ok(values?.iter().sum())
}

/// Residuals of both local field equations.
///
/// The first equation is evaluated at interior sites with central
/// differences for dX; the second on every plaquette with the discrete
/// exterior derivative of A and the selected derivative convention for
/// `P^ij_{,k}`.
pub fn eom_residuals(
    pb: &PoissonBivector,
    grid: &WorldsheetGrid,
    fields: &FieldConfig,
    convention: DerivativeConvention,
) -> Result<EomResidual> {
    check_shapes(pb, fields)?;
    let n = fields.dim();

    let interior: Vec<(usize, usize)> = (1..grid.n1 - 1)
        .flat_map(|i1| (1..grid.n2 - 1).map(move |i2| (i1, i2)))
        .collect();
    let site_residual = |&(i1, i2): &(usize, usize)| -> Result<Vec<f64>> {
        let s = grid.site(i1, i2);
        let point = GroupPoint::new((0..n).map(|i| fields.x(s, i)).collect());
        let p = pb.eval(&point).map_err(|e| at_site(e, i1, i2))?.matrix;
        let mut out = vec![0.0; n * 2];
        for i in 0..n {
            let dx1 = (fields.x(grid.site(i1 + 1, i2), i) - fields.x(grid.site(i1 - 1, i2), i))
                / (2.0 * grid.h1);
            let dx2 = (fields.x(grid.site(i1, i2 + 1), i) - fields.x(grid.site(i1, i2 - 1), i))
                / (2.0 * grid.h2);
            for (alpha, dx) in [dx1, dx2].into_iter().enumerate() {
                let mut r = dx;
                for j in 0..n {
                    r += p.get(i, j) * fields.a(s, j, alpha);
                }
                out[i * 2 + alpha] = r;
            }
        }
        Ok(out)
    };

    let cells: Vec<(usize, usize)> = (0..grid.n1 - 1)
        .flat_map(|c1| (0..grid.n2 - 1).map(move |c2| (c1, c2)))
        .collect();
    let cell_residual = |&(c1, c2): &(usize, usize)| -> Result<Vec<f64>> {
        let pl = plaquette(grid, fields, c1, c2);
        let point = GroupPoint::new(pl.x_mid.clone());
        let partials: Vec<Matrix> = (0..n)
            .map(|k| pb.partial(&point, k, convention))
            .collect::<Result<_>>()
            .map_err(|e| at_site(e, c1, c2))?;
        let mut out = vec![0.0; n];
        for (k, dpk) in partials.iter().enumerate() {
            let mut r = exterior_derivative(grid, fields, c1, c2, k);
            for i in 0..n {
                for j in 0..n {
                    let wedge = pl.a[i][0] * pl.a[j][1] - pl.a[i][1] * pl.a[j][0];
                    r += 0.5 * dpk.get(i, j) * wedge;
                }
            }
            out[k] = r;
        }
        Ok(out)
    };

    #[cfg(feature = "parallel")]
    let (r1_nested, r2_nested): (Result<Vec<_>>, Result<Vec<_>>) = (
        interior.par_iter().map(site_residual).collect(),
        cells.par_iter().map(cell_residual).collect(),
    );
    #[cfg(not(feature = "parallel"))]
    let (r1_nested, r2_nested): (Result<Vec<_>>, Result<Vec<_>>) = (
        interior.iter().map(site_residual).collect(),
        cells.iter().map(cell_residual).collect(),
    );

    let r1: Vec<f64> = r1_nested?.into_iter().flatten().collect();
    let r2: Vec<f64> = r2_nested?.into_iter().flatten().collect();
    let (max_r1, rms_r1) = summarize(&r1);
    let (max_r2, rms_r2) = summarize(&r2);
    Ok(EomResidual {
        r1,
        r2,
        max_r1,
        rms_r1,
        max_r2,
        rms_r2,
    })
}

fn summarize(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let rms = (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt();
    (max, rms)
}

/// Coefficient of `A_i ^ A_j` in the `dA_k` equation:
/// `(1/2)(P^ij_{,k} - P^ji_{,k})` under the chosen convention, one matrix
/// per k.
pub fn eom_coefficients(
    pb: &PoissonBivector,
    p: &GroupPoint,
    convention: DerivativeConvention,
) -> Result<Vec<Matrix>> {
    let n = pb.dim();
    (0..n)
        .map(|k| {
            let dpk = pb.partial(p, k, convention)?;
            Ok(dpk.sub(&dpk.transpose()).scale(0.5))
        })
        .collect()
}

/// The exact extremal configuration used by convergence measurements on
/// the semi-abelian triple (P^21 = X2): X1 = 0, X2 = e^{xi1}, A1 = -dxi^1,
/// A2 = 0. Both field equations hold identically, so every discrete
/// residual is pure truncation error.
pub fn manufactured_semi_abelian(grid: &WorldsheetGrid) -> FieldConfig {
    FieldConfig::from_fn(
        grid,
        2,
        |xi1, _, i| if i == 1 { xi1.exp() } else { 0.0 },
        |_, _, i, alpha| {
            if i == 0 && alpha == 0 {
                -1.0
            } else {
                0.0
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{ManinTriple, StructureConstants};

    fn semi_abelian() -> PoissonBivector {
        let c = StructureConstants::zeros(2).unwrap();
        let f = StructureConstants::from_entries(2, &[(0, 1, 1, 1.0)]).unwrap();
        PoissonBivector::new(&ManinTriple::new(c, f, None).unwrap()).unwrap()
    }

    fn abelian() -> PoissonBivector {
        let c = StructureConstants::zeros(2).unwrap();
        let f = StructureConstants::zeros(2).unwrap();
        PoissonBivector::new(&ManinTriple::new(c, f, None).unwrap()).unwrap()
    }

    fn sl2_dual() -> PoissonBivector {
        let c = StructureConstants::from_entries(
            3,
            &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)],
        )
        .unwrap();
        let f =
            StructureConstants::from_entries(3, &[(0, 1, 1, 0.25), (0, 2, 2, 0.25)]).unwrap();
        PoissonBivector::new(&ManinTriple::new(c, f, None).unwrap()).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(WorldsheetGrid::new(1, 4, 0.1, 0.1).is_err());
        assert!(WorldsheetGrid::new(4, 4, 0.0, 0.1).is_err());
        assert!(WorldsheetGrid::new(2, 2, 0.1, 0.1).is_ok());
    }

    #[test]
    fn action_vanishes_for_zero_a() {
        let grid = WorldsheetGrid::new(8, 8, 0.1, 0.1).unwrap();
        let pb = semi_abelian();
        let fields = FieldConfig::from_fn(
            &grid,
            2,
            |xi1, xi2, i| (xi1 + 0.3 * xi2) * (i as f64 + 1.0),
            |_, _, _, _| 0.0,
        );
        let s = action_s2(&pb, &grid, &fields).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn action_vanishes_for_abelian_constant_x() {
        let grid = WorldsheetGrid::new(6, 6, 0.2, 0.2).unwrap();
        let pb = abelian();
        let fields = FieldConfig::from_fn(
            &grid,
            2,
            |_, _, _| 1.5,
            |xi1, xi2, i, alpha| 0.3 * xi1 - 0.7 * xi2 + (i + alpha) as f64,
        );
        let s = action_s2(&pb, &grid, &fields).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn action_is_additive_over_partition() {
        let grid = WorldsheetGrid::new(9, 5, 0.1, 0.15).unwrap();
        let pb = semi_abelian();
        let fields = FieldConfig::from_fn(
            &grid,
            2,
            |xi1, xi2, i| if i == 1 { xi1 + 0.2 * xi2 } else { 0.1 * xi2 },
            |xi1, xi2, i, alpha| {
                0.3 * (xi1 * (alpha + 1) as f64).sin() + 0.2 * xi2 + 0.1 * i as f64
            },
        );
        let total = action_s2(&pb, &grid, &fields).unwrap();

        // Split along xi1 at row 4 (both halves keep the shared row).
        let split = 4usize;
        let take_rows = |from: usize, to: usize| {
            let sub = WorldsheetGrid::new(to - from, grid.n2, grid.h1, grid.h2).unwrap();
            let mut cfg = FieldConfig::zeros(&sub, 2);
            for i1 in from..to {
                for i2 in 0..grid.n2 {
                    let src = grid.site(i1, i2);
                    let dst = sub.site(i1 - from, i2);
                    for i in 0..2 {
                        cfg.set_x(dst, i, fields.x(src, i));
                        for alpha in 0..2 {
                            cfg.set_a(dst, i, alpha, fields.a(src, i, alpha));
                        }
                    }
                }
            }
            (sub, cfg)
        };
        let (g1, f1) = take_rows(0, split + 1);
        let (g2, f2) = take_rows(split, grid.n1);
        let s1 = action_s2(&pb, &g1, &f1).unwrap();
        let s2 = action_s2(&pb, &g2, &f2).unwrap();
        assert!((total - (s1 + s2)).abs() < 1e-12);
    }

    #[test]
    fn action_on_manufactured_solution_is_zero() {
        // X1 constant and A2 = 0 kill every term exactly.
        let grid = WorldsheetGrid::new(16, 16, 0.5 / 15.0, 0.5 / 15.0).unwrap();
        let pb = semi_abelian();
        let fields = manufactured_semi_abelian(&grid);
        let s = action_s2(&pb, &grid, &fields).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn action_converges_under_refinement() {
        // Generic smooth fields on the semi-abelian triple: the coarse
        // value must agree with the Richardson extrapolation of two finer
        // grids to 3 significant figures.
        let pb = semi_abelian();
        let value_at = |nn: usize| {
            let h = 1.0 / (nn - 1) as f64;
            let grid = WorldsheetGrid::new(nn, nn, h, h).unwrap();
            let fields = FieldConfig::from_fn(
                &grid,
                2,
                |xi1, xi2, i| {
                    if i == 1 {
                        xi1 + 0.1 * (std::f64::consts::PI * xi2).sin()
                    } else {
                        0.2 * xi2
                    }
                },
                |xi1, xi2, i, alpha| match (i, alpha) {
                    (0, 0) => -1.0 + 0.2 * (2.0 * std::f64::consts::PI * xi2).sin(),
                    (0, 1) => 0.1 * xi1,
                    (1, 0) => 0.3 * (std::f64::consts::PI * xi1).cos(),
                    _ => 0.25 + 0.1 * xi2,
                },
            );
            action_s2(&pb, &grid, &fields).unwrap()
        };
        let coarse = value_at(33);
        let fine = value_at(129);
        let finer = value_at(257);
        let extrapolated = finer + (finer - fine) / 3.0;
        let rel = ((coarse - extrapolated) / extrapolated).abs();
        assert!(rel < 1e-3, "relative error {rel}");
    }

    #[test]
    fn residuals_vanish_for_abelian_constant_fields() {
        let grid = WorldsheetGrid::new(8, 8, 0.1, 0.1).unwrap();
        let pb = abelian();
        let fields = FieldConfig::from_fn(&grid, 2, |_, _, _| 0.7, |_, _, i, _| 0.1 * i as f64);
        let r = eom_residuals(&pb, &grid, &fields, DerivativeConvention::AtPoint).unwrap();
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn manufactured_solution_converges_at_second_order() {
        let pb = semi_abelian();
        let max_at = |nn: usize| {
            let h = 0.5 / (nn - 1) as f64;
            let grid = WorldsheetGrid::new(nn, nn, h, h).unwrap();
            let fields = manufactured_semi_abelian(&grid);
            eom_residuals(&pb, &grid, &fields, DerivativeConvention::AtPoint)
                .unwrap()
                .max()
        };
        let r16 = max_at(16);
        let r32 = max_at(32);
        let r64 = max_at(64);
        for ratio in [r16 / r32, r32 / r64] {
            assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
        }
        assert!(r64 < 1e-4, "r64 = {r64}");
    }

    #[test]
    fn random_fields_give_order_one_residuals() {
        // Negative control: generic O(1) fields are nowhere near extremal.
        let grid = WorldsheetGrid::new(10, 10, 0.05, 0.05).unwrap();
        let pb = sl2_dual();
        let fields = FieldConfig::from_fn(
            &grid,
            3,
            |xi1, xi2, i| 0.3 * ((i + 1) as f64 * xi1).sin() + 0.2 * xi2,
            |xi1, xi2, i, alpha| {
                0.5 * ((i + alpha + 1) as f64 * xi2).cos() - 0.3 * xi1
            },
        );
        let r = eom_residuals(&pb, &grid, &fields, DerivativeConvention::AtPoint).unwrap();
        assert!(r.max() > 1e-2, "max residual {}", r.max());
    }

    #[test]
    fn discrete_stokes_telescopes_to_zero() {
        // A supported strictly inside the grid: the summed circulation
        // cancels edge by edge.
        let grid = WorldsheetGrid::new(12, 12, 0.1, 0.1).unwrap();
        let mut fields = FieldConfig::zeros(&grid, 2);
        for i1 in 2..10 {
            for i2 in 2..10 {
                let s = grid.site(i1, i2);
                for i in 0..2 {
                    for alpha in 0..2 {
                        let v = ((i1 * 7 + i2 * 3 + i * 5 + alpha) % 13) as f64 / 13.0 - 0.5;
                        fields.set_a(s, i, alpha, v);
                    }
                }
            }
        }
        for k in 0..2 {
            let mut total = 0.0;
            for c1 in 0..grid.n1 - 1 {
                for c2 in 0..grid.n2 - 1 {
                    total += exterior_derivative(&grid, &fields, c1, c2, k);
                }
            }
            assert!(total.abs() < 1e-12, "k = {k}: {total}");
        }
    }

    #[test]
    fn coefficient_matches_reference_eom_line() {
        // dA_2 coefficient of A_1 ^ A_2 for the sl(2,C) model on the
        // X2 = 0 slice: -e^{2 X1} / 4.
        let pb = sl2_dual();
        for (x1, x3) in [(0.0, 0.0), (0.3, -0.1), (-0.2, 0.2)] {
            let p = GroupPoint::new(vec![x1, 0.25, x3]);
            let coeffs =
                eom_coefficients(&pb, &p, DerivativeConvention::KSliceZero).unwrap();
            let expected = -(2.0 * x1).exp() / 4.0;
            assert!(
                (coeffs[1].get(0, 1) - expected).abs() < 1e-8,
                "got {}, want {expected}",
                coeffs[1].get(0, 1)
            );
        }
    }

    #[test]
    fn coefficients_vanish_for_abelian() {
        let pb = abelian();
        let coeffs = eom_coefficients(
            &pb,
            &GroupPoint::new(vec![0.4, -0.2]),
            DerivativeConvention::AtPoint,
        )
        .unwrap();
        for c in coeffs {
            assert_eq!(c.norm_max(), 0.0);
        }
    }

    #[test]
    fn general_4d_coefficient_sign_pattern() {
        // For the general 2-dim family the dA_2 equation carries
        // + f2 e^{c2 X1} on A_2 ^ A_1, i.e. - f2 e^{c2 X1} on A_1 ^ A_2.
        let (c2, f2) = (0.8, 1.3);
        let c = StructureConstants::from_entries(2, &[(0, 1, 1, c2)]).unwrap();
        let f = StructureConstants::from_entries(2, &[(0, 1, 1, f2)]).unwrap();
        let pb = PoissonBivector::new(&ManinTriple::new(c, f, None).unwrap()).unwrap();
        let p = GroupPoint::new(vec![0.3, -0.4]);
        let coeffs = eom_coefficients(&pb, &p, DerivativeConvention::KSliceZero).unwrap();
        let expected = f2 * (c2 * 0.3f64).exp();
        assert!((coeffs[1].get(1, 0) - expected).abs() < 1e-8);
        assert!((coeffs[1].get(0, 1) + expected).abs() < 1e-8);
    }

    #[test]
    fn conventions_agree_on_zero_slice() {
        let pb = sl2_dual();
        let p = GroupPoint::origin(3);
        let a = eom_coefficients(&pb, &p, DerivativeConvention::AtPoint).unwrap();
        let b = eom_coefficients(&pb, &p, DerivativeConvention::KSliceZero).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.sub(y).norm_max() < 1e-8);
        }
    }
}
