//! Skew-symmetric pairings and vanishing-cycle configurations.

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, Rational, Vector};

/// A rational coefficient space with a skew-symmetric bilinear form, given by
/// its Gram matrix. Nondegeneracy is not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSpace {
    gram: Matrix,
}

impl PairingSpace {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        let n = gram.rows();
        for i in 0..n {
            for j in 0..n {
                if gram[(i, j)] != -&gram[(j, i)] {
                    return Err(Error::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(PairingSpace { gram })
    }

    /// Dimension `2g`, Gram matrix block-diagonal in `[[0, 1], [-1, 0]]`.
    pub fn standard_symplectic(g: usize) -> Self {
        let mut gram = Matrix::zeros(2 * g, 2 * g);
        for k in 0..g {
            gram[(2 * k, 2 * k + 1)] = Rational::one();
            gram[(2 * k + 1, 2 * k)] = Rational::from_int(-1);
        }
        PairingSpace { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "pairing argument",
                left: self.dim(),
                right: v.len(),
            });
        }
        Ok(())
    }

    /// `a^T G b`.
    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Result<Rational> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(dot(a, &self.gram.mul_vec(b)?))
    }

    /// The functional `alpha -> <alpha, b>` as a coefficient vector, i.e. `G b`.
    pub fn pairing_functional(&self, b: &[Rational]) -> Result<Vector> {
        self.check_len(b)?;
        self.gram.mul_vec(b)
    }
}

/// An ordered list of vanishing-cycle vectors in a pairing space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleConfiguration {
    space: PairingSpace,
    cycles: Vec<Vector>,
}

impl CycleConfiguration {
    pub fn new(space: PairingSpace, cycles: Vec<Vector>) -> Result<Self> {
        for c in &cycles {
            if c.len() != space.dim() {
                return Err(Error::DimensionMismatch {
                    context: "cycle vector length",
                    left: space.dim(),
                    right: c.len(),
                });
            }
        }
        Ok(CycleConfiguration { space, cycles })
    }

    pub fn space(&self) -> &PairingSpace {
        &self.space
    }

    pub fn cycles(&self) -> &[Vector] {
        &self.cycles
    }

    pub fn cycle(&self, i: usize) -> Option<&Vector> {
        self.cycles.get(i)
    }

    /// Node count `r`.
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Nodes whose vanishing cycle is the zero vector (homologically trivial).
    pub fn trivial_nodes(&self) -> Vec<usize> {
        self.cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().all(Rational::is_zero))
            .map(|(i, _)| i)
            .collect()
    }
}
