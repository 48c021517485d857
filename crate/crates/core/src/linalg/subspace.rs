//! Subspaces of `Q^n` in a canonical basis.
//!
//! A [`Subspace`] stores the nonzero rows of the reduced row-echelon form of
//! any spanning set. Each basis vector has a leading 1 at its pivot coordinate
//! and every other basis vector vanishes there; pivots ascend. Two subspaces
//! are equal as sets exactly when their stored bases are identical.

use super::matrix::{Matrix, Vector};
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::span(ambient_dim, &Matrix::identity(ambient_dim).row_vectors())
            .expect("identity rows have ambient length")
    }

    /// The span of `vectors`, each of which must have length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "subspace span",
                    left: ambient_dim,
                    right: v.len(),
                });
            }
        }
        let m = Matrix::from_rows(vectors, ambient_dim)?;
        let (reduced, pivots) = m.rref_with_pivots();
        let basis = (0..pivots.len()).map(|i| reduced.row(i).to_vec()).collect();
        Ok(Subspace {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "subspace membership",
                left: self.ambient_dim,
                right: v.len(),
            });
        }
        let mut residual = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let coeff = residual[p].clone();
            if coeff.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= &(&coeff * x);
                }
            }
        }
        Ok(residual.iter().all(Rational::is_zero))
    }

    /// The orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let m = Matrix::from_rows(&self.basis, self.ambient_dim).expect("basis rows are uniform");
        kernel(&m)
    }
}

/// Span of the columns of `m`, as a subspace of `Q^rows`.
pub fn column_space(m: &Matrix) -> Subspace {
    Subspace::span(m.rows(), &m.column_vectors()).expect("columns have length rows")
}

/// `{ v : m v = 0 }` as a subspace of `Q^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (reduced, pivots) = m.rref_with_pivots();
    let n = m.cols();
    let mut vectors = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&reduced[(row, free)];
        }
        vectors.push(v);
    }
    Subspace::span(n, &vectors).expect("kernel vectors have length cols")
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch {
            context: "subspace comparison",
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    Ok(a == b)
}

pub fn subspace_contains(a: &Subspace, v: &[Rational]) -> Result<bool> {
    a.contains(v)
}

/// `dim(Q^ambient / r)`.
pub fn quotient_dim(ambient: usize, r: &Subspace) -> Result<usize> {
    if r.ambient_dim != ambient {
        return Err(Error::DimensionMismatch {
            context: "quotient dimension",
            left: ambient,
            right: r.ambient_dim,
        });
    }
    Ok(ambient - r.dim())
}
