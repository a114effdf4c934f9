//! Lie-algebraic data: structure constants, Manin triples, and the
//! assembled double.
//!
//! A Manin triple is given by two sets of structure constants on dual bases
//! `T_1..T_n` and `T~^1..T~^n`:
//!
//! ```text
//! [T_i, T_j]   = c_ij^k T_k
//! [T~^i, T~^j] = f^ij_k T~^k
//! ```
//!
//! The canonical pairing <T_i, T~^j> = delta_i^j together with ad-invariance
//! forces the mixed brackets of the double:
//!
//! ```text
//! [T_i, T~^j] = f^jk_i T_k - c_ik^j T~^k
//! ```
//!
//! All indices are 0-based internally; file formats and CLI output are
//! 1-based.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest subalgebra dimension accepted from input.
pub const MAX_TRIPLE_DIM: usize = 16;

/// Tolerance for the exact-input algebraic checks. Inputs are small
/// integers or rationals, so residuals above this indicate real failures.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Dense rank-3 array of structure constants `t[i][j][k]`, meaning the
/// bracket of basis elements i and j has coefficient `t[i][j][k]` on basis
/// element k.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    values: Vec<f64>,
}

impl StructureConstants {
    /// All-zero constants (an abelian algebra). `dim` may run up to twice
    /// [`MAX_TRIPLE_DIM`] so the same storage serves the assembled double.
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 || dim > 2 * MAX_TRIPLE_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                max: 2 * MAX_TRIPLE_DIM,
            });
        }
        Ok(StructureConstants {
            dim,
            values: vec![0.0; dim * dim * dim],
        })
    }

    /// Build from sparse `(i, j, k, value)` entries with i < j (0-based);
    /// the antisymmetric partner is filled in automatically.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut s = StructureConstants::zeros(dim)?;
        for &(i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::OutOfRange {
                    what: "structure constant index",
                    index: i.max(j).max(k),
                    limit: dim,
                });
            }
            s.set_antisym(i, j, k, v);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.values[(i * self.dim + j) * self.dim + k] = v;
    }

    /// Set `t[i][j][k] = v` and `t[j][i][k] = -v`.
    pub fn set_antisym(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.set(i, j, k, v);
        self.set(j, i, k, -v);
    }

    /// Largest violation of `t[i][j][k] = -t[j][i][k]`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((self.get(i, j, k) + self.get(j, i, k)).abs());
                }
            }
        }
        worst
    }

    /// Brute-force Jacobi scan over every index quadruple.
    ///
    /// The report carries the largest absolute residual of
    /// `sum_m t[i][j][m] t[m][k][l] + cyclic` and the quadruple where it
    /// occurs; it passes iff the residual is at most [`ALGEBRA_TOL`].
    pub fn check_jacobi(&self) -> ValidationReport {
        let n = self.dim;
        let mut worst = 0.0f64;
        let mut worst_at = vec![0usize; 4];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut sum = 0.0;
                        for m in 0..n {
                            sum += self.get(i, j, m) * self.get(m, k, l)
                                + self.get(j, k, m) * self.get(m, i, l)
                                + self.get(k, i, m) * self.get(m, j, l);
                        }
                        if sum.abs() > worst {
                            worst = sum.abs();
                            worst_at = vec![i, j, k, l];
                        }
                    }
                }
            }
        }
        ValidationReport {
            check: "jacobi",
            max_residual: worst,
            worst_indices: worst_at,
            tolerance: ALGEBRA_TOL,
        }
    }

    /// Nonzero coefficients as `(i, j, k, value)` with i < j, for display.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    let v = self.get(i, j, k);
                    if v != 0.0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }
}

/// Outcome of an algebraic validation scan.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub check: &'static str,
    pub max_residual: f64,
    /// Index tuple (0-based) where the worst residual occurred.
    pub worst_indices: Vec<usize>,
    pub tolerance: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }

    /// Worst indices rendered 1-based for output.
    pub fn worst_indices_one_based(&self) -> Vec<usize> {
        self.worst_indices.iter().map(|i| i + 1).collect()
    }
}

/// A Manin triple: structure constants of the subalgebra spanned by
/// `T_1..T_n` (`c`) and of the dual subalgebra spanned by `T~^1..T~^n`
/// (`f`, upper-index convention).
#[derive(Debug, Clone)]
pub struct ManinTriple {
    c: StructureConstants,
    f: StructureConstants,
    name: Option<String>,
}

impl ManinTriple {
    pub fn new(c: StructureConstants, f: StructureConstants, name: Option<String>) -> Result<Self> {
        if c.dim() != f.dim() {
            return Err(Error::DimensionMismatch {
                what: "Manin triple subalgebras",
                expected: c.dim(),
                got: f.dim(),
            });
        }
        if c.dim() > MAX_TRIPLE_DIM {
            return Err(Error::DimensionTooLarge {
                dim: c.dim(),
                max: MAX_TRIPLE_DIM,
            });
        }
        Ok(ManinTriple { c, f, name })
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    pub fn c(&self) -> &StructureConstants {
        &self.c
    }

    pub fn f(&self) -> &StructureConstants {
        &self.f
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
}

/// The 2n-dimensional double over the ordered basis
/// `(T_1..T_n, T~^1..T~^n)`, with its canonical pairing matrix.
#[derive(Debug, Clone)]
pub struct DoubleStructure {
    n: usize,
    constants: StructureConstants,
}

impl DoubleStructure {
    /// Subalgebra dimension n (the double has dimension 2n).
    pub fn subalgebra_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// Canonical pairing matrix: <T_i, T~^j> = delta_i^j and zero within
    /// each subalgebra, i.e. off-diagonal identity blocks.
    pub fn pairing(&self) -> Matrix {
        let n = self.n;
        let mut p = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            p.set(i, n + i, 1.0);
            p.set(n + i, i, 1.0);
        }
        p
    }

    /// Ad-invariance of the pairing: <[x,y],z> + <y,[x,z]> = 0 over all
    /// basis triples.
    pub fn check_pairing_invariance(&self) -> ValidationReport {
        let dim = self.dim();
        let t = &self.constants;
        let pi = self.pairing();
        let mut worst = 0.0f64;
        let mut worst_at = vec![0usize; 3];
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut sum = 0.0;
                    for d in 0..dim {
                        sum += t.get(a, b, d) * pi.get(d, c) + t.get(a, c, d) * pi.get(b, d);
                    }
                    if sum.abs() > worst {
                        worst = sum.abs();
                        worst_at = vec![a, b, c];
                    }
                }
            }
        }
        ValidationReport {
            check: "pairing-invariance",
            max_residual: worst,
            worst_indices: worst_at,
            tolerance: ALGEBRA_TOL,
        }
    }

    /// Jacobi scan of the full double; this is the bialgebra compatibility
    /// condition in directly checkable form.
    pub fn check_jacobi(&self) -> ValidationReport {
        self.constants.check_jacobi()
    }

    /// Test-support constructor for deliberately malformed doubles.
    pub fn from_raw(n: usize, constants: StructureConstants) -> Result<Self> {
        if constants.dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                what: "double structure constants",
                expected: 2 * n,
                got: constants.dim(),
            });
        }
        Ok(DoubleStructure { n, constants })
    }
}

/// Assemble the double of a Manin triple.
///
/// The (T,T) block restricts to `c`, the (T~,T~) block to `f`, and the
/// mixed brackets follow `[T_i, T~^j] = f^jk_i T_k - c_ik^j T~^k`. The
/// result is antisymmetric in its first two indices by construction.
pub fn assemble_double(triple: &ManinTriple) -> Result<DoubleStructure> {
    let n = triple.dim();
    let c = triple.c();
    let f = triple.f();
    let mut t = StructureConstants::zeros(2 * n)?;

    for i in 0..n {
        for j in 0..n {
            // [T_i, T_j] = c_ij^k T_k
            for k in 0..n {
                t.set(i, j, k, c.get(i, j, k));
            }
            // [T~^i, T~^j] = f^ij_k T~^k
            for k in 0..n {
                t.set(n + i, n + j, n + k, f.get(i, j, k));
            }
            // [T_i, T~^j] = f^jk_i T_k - c_ik^j T~^k
            for k in 0..n {
                t.set(i, n + j, k, f.get(j, k, i));
                t.set(i, n + j, n + k, -c.get(i, k, j));
            }
        }
    }
    // [T~^j, T_i] by antisymmetry.
    for i in 0..n {
        for j in 0..n {
            for k in 0..2 * n {
                let v = t.get(i, n + j, k);
                t.set(n + j, i, k, -v);
            }
        }
    }
    Ok(DoubleStructure { n, constants: t })
}

/// Change of basis `T'_i = T_k A^k_i`, `T~'^j = (A^-1)^j_k T~^k`.
///
/// The canonical pairing is preserved exactly; the transformed constants
/// are
///
/// ```text
/// c'_ij^p = A^k_i A^l_j c_kl^m (A^-1)^p_m
/// f'^ij_p = (A^-1)^i_k (A^-1)^j_l f^kl_m A^m_p
/// ```
pub fn change_basis(triple: &ManinTriple, a: &Matrix) -> Result<ManinTriple> {
    let n = triple.dim();
    if !a.is_square() || a.rows() != n {
        return Err(Error::DimensionMismatch {
            what: "basis transformation",
            expected: n,
            got: a.rows(),
        });
    }
    let det = a.det()?;
    if det.abs() <= 1e-12 {
        return Err(Error::Singular {
            pivot: det.abs(),
            threshold: 1e-12,
        });
    }
    let a_inv = a.inverse()?;

    let mut c_new = StructureConstants::zeros(n)?;
    let mut f_new = StructureConstants::zeros(n)?;
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                let mut cv = 0.0;
                let mut fv = 0.0;
                for k in 0..n {
                    for l in 0..n {
                        for m in 0..n {
                            cv += a.get(k, i) * a.get(l, j) * triple.c().get(k, l, m)
                                * a_inv.get(p, m);
                            fv += a_inv.get(i, k) * a_inv.get(j, l) * triple.f().get(k, l, m)
                                * a.get(m, p);
                        }
                    }
                }
                c_new.set(i, j, p, cv);
                f_new.set(i, j, p, fv);
            }
        }
    }
    ManinTriple::new(c_new, f_new, triple.name().map(|s| format!("{s} (transformed)")))
}
