//! Adjoint representation of the double and its block decomposition.
//!
//! Group elements are parametrized by a product of one-parameter flows
//! through the first subalgebra, `g = e^{X_1 T_1} e^{X_2 T_2} ...`, so the
//! adjoint matrices are ordered products of exponentials of the basis `ad`
//! matrices. For such g the matrix of `Ad_{g^-1}` on the ordered basis
//! `(T_1..T_n, T~^1..T~^n)` is block upper-triangular,
//!
//! ```text
//! (Ad_{g^-1}) = | a(g)^T  b(g)^T |
//!               |   0     d(g)^T |
//! ```
//!
//! and the bivector downstream is b(g) a(g)^-1.

use crate::error::{Error, Result};
use crate::lie::DoubleStructure;
use crate::matrix::Matrix;

/// Magnitude above which the bottom-left block counts as nonzero, i.e. the
/// point is not reachable by first-subalgebra flows or a bracket sign is
/// wrong.
pub const TRIANGULARITY_TOL: f64 = 1e-10;

/// Coordinates `X_1..X_n` of a group element `g = e^{X_1 T_1} ... e^{X_n T_n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    coords: Vec<f64>,
}

impl GroupPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        GroupPoint { coords }
    }

    pub fn origin(dim: usize) -> Self {
        GroupPoint {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> f64 {
        self.coords[k]
    }

    /// Copy with coordinate k replaced.
    pub fn with_coord(&self, k: usize, v: f64) -> Self {
        let mut c = self.coords.clone();
        c[k] = v;
        GroupPoint { coords: c }
    }

    pub fn norm_inf(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl From<&[f64]> for GroupPoint {
    fn from(s: &[f64]) -> Self {
        GroupPoint { coords: s.to_vec() }
    }
}

/// The a, b, d blocks read off the adjoint of an inverse group element.
#[derive(Debug, Clone)]
pub struct AdjointBlocks {
    pub a: Matrix,
    pub b: Matrix,
    pub d: Matrix,
}

/// Matrix of `ad_{E_A}` on the ordered double basis; column B holds the
/// components of `[E_A, E_B]`.
pub fn ad_matrix(double: &DoubleStructure, basis_index: usize) -> Result<Matrix> {
    let dim = double.dim();
    if basis_index >= dim {
        return Err(Error::OutOfRange {
            what: "ad basis index",
            index: basis_index,
            limit: dim,
        });
    }
    let t = double.constants();
    let mut m = Matrix::zeros(dim, dim);
    for b in 0..dim {
        for k in 0..dim {
            m.set(k, b, t.get(basis_index, b, k));
        }
    }
    Ok(m)
}

/// Precomputed `ad` matrices for the first-subalgebra generators, the
/// carrier for all adjoint evaluations at group points.
#[derive(Debug, Clone)]
pub struct AdjointRep {
    n: usize,
    ads: Vec<Matrix>,
}

impl AdjointRep {
    pub fn new(double: &DoubleStructure) -> Result<Self> {
        let n = double.subalgebra_dim();
        let ads = (0..n)
            .map(|i| ad_matrix(double, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(AdjointRep { n, ads })
    }

    pub fn subalgebra_dim(&self) -> usize {
        self.n
    }

    pub fn ad(&self, i: usize) -> &Matrix {
        &self.ads[i]
    }

    fn check_point(&self, p: &GroupPoint) -> Result<()> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch {
                what: "group point",
                expected: self.n,
                got: p.dim(),
            });
        }
        if p.coords().iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                what: "group point coordinates",
            });
        }
        Ok(())
    }

    /// `(Ad_g) = e^{X_1 ad_1} e^{X_2 ad_2} ...` (ascending index,
    /// left-to-right).
    pub fn of_point(&self, p: &GroupPoint) -> Result<Matrix> {
        self.check_point(p)?;
        let mut result = Matrix::identity(2 * self.n);
        for (i, x) in p.coords().iter().enumerate() {
            result = result.mul(&self.ads[i].scale(*x).exp()?);
        }
        Ok(result)
    }

    /// `(Ad_{g^-1}) = e^{-X_n ad_n} ... e^{-X_1 ad_1}` (descending index,
    /// negated coordinates).
    pub fn of_inverse_point(&self, p: &GroupPoint) -> Result<Matrix> {
        self.check_point(p)?;
        let mut result = Matrix::identity(2 * self.n);
        for (i, x) in p.coords().iter().enumerate().rev() {
            result = result.mul(&self.ads[i].scale(-*x).exp()?);
        }
        Ok(result)
    }

    /// a, b, d blocks at a point, read from the inverse-element adjoint.
    pub fn blocks(&self, p: &GroupPoint) -> Result<AdjointBlocks> {
        extract_blocks(&self.of_inverse_point(p)?)
    }
}

/// Read the a, b, d blocks off `(Ad_{g^-1})`.
///
/// The bottom-left n-by-n block must vanish to [`TRIANGULARITY_TOL`];
/// anything larger means the input did not come from a first-subalgebra
/// group element (or a mixed-bracket sign is wrong) and is rejected.
pub fn extract_blocks(adj_inv: &Matrix) -> Result<AdjointBlocks> {
    if !adj_inv.is_square() || !adj_inv.rows().is_multiple_of(2) {
        return Err(Error::NonSquare {
            rows: adj_inv.rows(),
            cols: adj_inv.cols(),
        });
    }
    let n = adj_inv.rows() / 2;
    let bottom_left = adj_inv.block(n..2 * n, 0..n)?;
    let max_entry = bottom_left.norm_max();
    if max_entry > TRIANGULARITY_TOL {
        return Err(Error::NotTriangular { max_entry });
    }
    Ok(AdjointBlocks {
        a: adj_inv.block(0..n, 0..n)?.transpose(),
        b: adj_inv.block(0..n, n..2 * n)?.transpose(),
        d: adj_inv.block(n..2 * n, n..2 * n)?.transpose(),
    })
}

/// Recover the same a, b, d blocks from the forward adjoint instead, whose
/// block form is
///
/// ```text
/// (Ad_g) = | a^-T   -a^-T b^T d^-T |
///          |  0          d^-T      |
/// ```
///
/// Used as a cross-check against [`extract_blocks`].
pub fn extract_blocks_forward(adj: &Matrix) -> Result<AdjointBlocks> {
    if !adj.is_square() || !adj.rows().is_multiple_of(2) {
        return Err(Error::NonSquare {
            rows: adj.rows(),
            cols: adj.cols(),
        });
    }
    let n = adj.rows() / 2;
    let bottom_left = adj.block(n..2 * n, 0..n)?;
    let max_entry = bottom_left.norm_max();
    if max_entry > TRIANGULARITY_TOL {
        return Err(Error::NotTriangular { max_entry });
    }
    let tl = adj.block(0..n, 0..n)?;
    let tr = adj.block(0..n, n..2 * n)?;
    let br = adj.block(n..2 * n, n..2 * n)?;
    let a = tl.transpose().inverse()?;
    let d = br.transpose().inverse()?;
    // TR = -a^-T b^T d^-T  =>  b = -d TR^T a.
    let b = d.mul(&tr.transpose()).mul(&a).scale(-1.0);
    Ok(AdjointBlocks { a, b, d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{assemble_double, ManinTriple, StructureConstants};
    use crate::rng::SplitMix64;

    fn sl2_dual_triple() -> ManinTriple {
        let c = StructureConstants::from_entries(
            3,
            &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)],
        )
        .unwrap();
        let f =
            StructureConstants::from_entries(3, &[(0, 1, 1, 0.25), (0, 2, 2, 0.25)]).unwrap();
        ManinTriple::new(c, f, None).unwrap()
    }

    fn semi_abelian() -> ManinTriple {
        let c = StructureConstants::zeros(2).unwrap();
        let f = StructureConstants::from_entries(2, &[(0, 1, 1, 1.0)]).unwrap();
        ManinTriple::new(c, f, None).unwrap()
    }

    fn general_4d(c1: f64, c2: f64, f1: f64, f2: f64) -> ManinTriple {
        let c =
            StructureConstants::from_entries(2, &[(0, 1, 0, c1), (0, 1, 1, c2)]).unwrap();
        let f =
            StructureConstants::from_entries(2, &[(0, 1, 0, f1), (0, 1, 1, f2)]).unwrap();
        ManinTriple::new(c, f, None).unwrap()
    }

    #[test]
    fn sl2_dual_ad_t1_is_diagonal() {
        let d = assemble_double(&sl2_dual_triple()).unwrap();
        let m = ad_matrix(&d, 0).unwrap();
        let expected = [0.0, 2.0, -2.0, 0.0, -2.0, 2.0];
        for (r, diag) in expected.iter().enumerate() {
            for c in 0..6 {
                let want = if r == c { *diag } else { 0.0 };
                assert_eq!(m.get(r, c), want, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn sl2_dual_ad_t2_and_t3_match_reference() {
        let d = assemble_double(&sl2_dual_triple()).unwrap();
        let t2 = ad_matrix(&d, 1).unwrap();
        let q = 0.25;
        #[rustfmt::skip]
        let t2_expected = Matrix::from_rows(6, 6, &[
            0.0,      0.0, 4.0 * q, 0.0,     -q,  0.0,
            -8.0 * q, 0.0, 0.0,     q,       0.0, 0.0,
            0.0,      0.0, 0.0,     0.0,     0.0, 0.0,
            0.0,      0.0, 0.0,     0.0,     8.0 * q, 0.0,
            0.0,      0.0, 0.0,     0.0,     0.0, 0.0,
            0.0,      0.0, 0.0,     -4.0 * q, 0.0, 0.0,
        ]);
        assert!(t2.sub(&t2_expected).norm_max() < 1e-15);

        let t3 = ad_matrix(&d, 2).unwrap();
        #[rustfmt::skip]
        let t3_expected = Matrix::from_rows(6, 6, &[
            0.0,     -4.0 * q, 0.0, 0.0,     0.0, -q,
            0.0,     0.0,      0.0, 0.0,     0.0, 0.0,
            8.0 * q, 0.0,      0.0, q,       0.0, 0.0,
            0.0,     0.0,      0.0, 0.0,     0.0, -8.0 * q,
            0.0,     0.0,      0.0, 4.0 * q, 0.0, 0.0,
            0.0,     0.0,      0.0, 0.0,     0.0, 0.0,
        ]);
        assert!(t3.sub(&t3_expected).norm_max() < 1e-15);
    }

    #[test]
    fn general_4d_ad_matrices_match_reference() {
        // The displayed general 4-dim ad matrices agree exactly with the
        // bracket-generated ones under the column convention.
        let (c1, c2, f1, f2) = (0.7, -1.3, 0.4, 1.1);
        let d = assemble_double(&general_4d(c1, c2, f1, f2)).unwrap();
        let t1 = ad_matrix(&d, 0).unwrap();
        #[rustfmt::skip]
        let t1_expected = Matrix::from_rows(4, 4, &[
            0.0, c1,  0.0, -f1,
            0.0, c2,  f1,  0.0,
            0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, -c1, -c2,
        ]);
        assert!(t1.sub(&t1_expected).norm_max() < 1e-15);

        let t2 = ad_matrix(&d, 1).unwrap();
        #[rustfmt::skip]
        let t2_expected = Matrix::from_rows(4, 4, &[
            -c1, 0.0, 0.0, -f2,
            -c2, 0.0, f2,  0.0,
            0.0, 0.0, c1,  c2,
            0.0, 0.0, 0.0, 0.0,
        ]);
        assert!(t2.sub(&t2_expected).norm_max() < 1e-15);
    }

    #[test]
    fn abelian_ad_matrices_vanish() {
        let c = StructureConstants::zeros(2).unwrap();
        let f = StructureConstants::zeros(2).unwrap();
        let d = assemble_double(&ManinTriple::new(c, f, None).unwrap()).unwrap();
        for i in 0..4 {
            assert_eq!(ad_matrix(&d, i).unwrap().norm_max(), 0.0);
        }
        assert!(ad_matrix(&d, 4).is_err());
    }

    #[test]
    fn adjoint_at_origin_is_identity() {
        let d = assemble_double(&sl2_dual_triple()).unwrap();
        let rep = AdjointRep::new(&d).unwrap();
        let origin = GroupPoint::origin(3);
        let fwd = rep.of_point(&origin).unwrap();
        let bwd = rep.of_inverse_point(&origin).unwrap();
        assert_eq!(fwd.sub(&Matrix::identity(6)).norm_max(), 0.0);
        assert_eq!(bwd.sub(&Matrix::identity(6)).norm_max(), 0.0);
    }

    #[test]
    fn semi_abelian_single_factor_reduction() {
        // With X = (0, x2) the product collapses to one exponential.
        let d = assemble_double(&semi_abelian()).unwrap();
        let rep = AdjointRep::new(&d).unwrap();
        let p = GroupPoint::new(vec![0.0, 0.7]);
        let full = rep.of_point(&p).unwrap();
        let single = rep.ad(1).scale(0.7).exp().unwrap();
        assert!(full.sub(&single).norm_max() < 1e-15);
    }

    #[test]
    fn inverse_point_matches_matrix_inverse() {
        let d = assemble_double(&sl2_dual_triple()).unwrap();
        let rep = AdjointRep::new(&d).unwrap();
        let mut rng = SplitMix64::new(11);
        for _ in 0..20 {
            let p = GroupPoint::new(rng.next_in_ball(3, 0.5));
            let fwd = rep.of_point(&p).unwrap();
            let bwd = rep.of_inverse_point(&p).unwrap();
            let prod = fwd.mul(&bwd);
            assert!(prod.sub(&Matrix::identity(6)).norm_max() < 1e-10);
            let inv = fwd.inverse().unwrap();
            assert!(inv.sub(&bwd).norm_max() < 1e-10);
        }
    }

    #[test]
    fn two_factor_inverse_formula_in_dim_2() {
        // Descending product with negated coordinates, written out by hand.
        let d = assemble_double(&general_4d(0.6, -0.9, 1.2, 0.3)).unwrap();
        let rep = AdjointRep::new(&d).unwrap();
        let p = GroupPoint::new(vec![0.31, -0.17]);
        let direct = rep
            .ad(1)
            .scale(0.17)
            .exp()
            .unwrap()
            .mul(&rep.ad(0).scale(-0.31).exp().unwrap());
        let bwd = rep.of_inverse_point(&p).unwrap();
        assert!(direct.sub(&bwd).norm_max() < 1e-14);
    }

    #[test]
    fn determinant_trace_identity() {
        let d = assemble_double(&sl2_dual_triple()).unwrap();
        let rep = AdjointRep::new(&d).unwrap();
        let mut rng = SplitMix64::new(3);
        for _ in 0..10 {
            let p = GroupPoint::new(rng.next_in_ball(3, 0.5));
            let det = rep.of_point(&p).unwrap().det().unwrap();
            let expected: f64 = (0..3)
                .map(|i| p.coord(i) * rep.ad(i).trace())
                .sum::<f64>()
                .exp();
            assert!((det - expected).abs() / expected.abs() < 1e-8);
        }
    }

    #[test]
    fn blocks_at_identity() {
        let d = assemble_double(&sl2_dual_triple()).unwrap();
        let rep = AdjointRep::new(&d).unwrap();
        let blocks = rep.blocks(&GroupPoint::origin(3)).unwrap();
        assert_eq!(blocks.a.sub(&Matrix::identity(3)).norm_max(), 0.0);
        assert_eq!(blocks.b.norm_max(), 0.0);
        assert_eq!(blocks.d.sub(&Matrix::identity(3)).norm_max(), 0.0);
    }

    #[test]
    fn triangularity_holds_at_random_points() {
        for triple in [sl2_dual_triple(), semi_abelian()] {
            let n = triple.dim();
            let d = assemble_double(&triple).unwrap();
            let rep = AdjointRep::new(&d).unwrap();
            let mut rng = SplitMix64::new(5);
            for _ in 0..20 {
                let p = GroupPoint::new(rng.next_in_ball(n, 0.5));
                let adj_inv = rep.of_inverse_point(&p).unwrap();
                let bl = adj_inv.block(n..2 * n, 0..n).unwrap();
                assert!(bl.norm_max() <= TRIANGULARITY_TOL);
            }
        }
    }

    #[test]
    fn extract_blocks_rejects_nonzero_bottom_left() {
        let mut m = Matrix::identity(4);
        m.set(2, 0, 1e-6);
        assert!(matches!(
            extract_blocks(&m),
            Err(Error::NotTriangular { .. })
        ));
    }

    #[test]
    fn pairing_is_preserved_by_adjoint() {
        let triple = sl2_dual_triple();
        let d = assemble_double(&triple).unwrap();
        let rep = AdjointRep::new(&d).unwrap();
        let pi = d.pairing();
        let mut rng = SplitMix64::new(17);
        for _ in 0..20 {
            let p = GroupPoint::new(rng.next_in_ball(3, 0.4));
            let adj = rep.of_point(&p).unwrap();
            let lhs = adj.transpose().mul(&pi).mul(&adj);
            assert!(lhs.sub(&pi).norm_max() < 1e-9);
        }
    }

    #[test]
    fn forward_and_inverse_block_reads_agree() {
        let triple = sl2_dual_triple();
        let d = assemble_double(&triple).unwrap();
        let rep = AdjointRep::new(&d).unwrap();
        let mut rng = SplitMix64::new(23);
        for _ in 0..20 {
            let p = GroupPoint::new(rng.next_in_ball(3, 0.4));
            let via_inverse = rep.blocks(&p).unwrap();
            let via_forward = extract_blocks_forward(&rep.of_point(&p).unwrap()).unwrap();
            assert!(via_inverse.a.sub(&via_forward.a).norm_max() < 1e-9);
            assert!(via_inverse.b.sub(&via_forward.b).norm_max() < 1e-9);
            assert!(via_inverse.d.sub(&via_forward.d).norm_max() < 1e-9);
        }
    }
}
