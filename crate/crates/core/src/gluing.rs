//! Corrected-extension side: the ambient nodewise space `Q^r`, the realized
//! subspace cut out by cycle-node incidence, and membership of corrected
//! class coefficient vectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{column_space, Matrix, Rational, Subspace, Vector};

/// Cycle-node incidence: an `r x |A|` matrix whose columns are the images of
/// the labeled cycle generators in `Q^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceDatum {
    labels: Vec<String>,
    matrix: Matrix,
}

impl IncidenceDatum {
    pub fn new(labels: Vec<String>, matrix: Matrix) -> Result<Self> {
        if labels.len() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                context: "incidence labels vs columns",
                left: labels.len(),
                right: matrix.cols(),
            });
        }
        Ok(IncidenceDatum { labels, matrix })
    }

    /// Labels `C1..Cm`.
    pub fn unlabeled(matrix: Matrix) -> Self {
        let labels = (1..=matrix.cols()).map(|k| format!("C{k}")).collect();
        IncidenceDatum { labels, matrix }
    }

    pub fn node_count(&self) -> usize {
        self.matrix.rows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedSpace {
    pub ambient_r: usize,
    pub v_geom: Subspace,
    pub is_full: bool,
}

impl RealizedSpace {
    /// No gluing data: every nodewise direction is admissible.
    pub fn ambient(r: usize) -> Self {
        RealizedSpace {
            ambient_r: r,
            v_geom: Subspace::full(r),
            is_full: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.v_geom.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtensionVerdict {
    Split,
    Interacting,
}

/// Coefficients `c_k` of a corrected class `sum c_k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectedClass {
    pub coeffs: Vector,
}

/// Dimension of the naive free nodewise space: one direction per node.
pub fn ambient_dim(r: usize) -> usize {
    r
}

pub fn realized_space(inc: &IncidenceDatum) -> RealizedSpace {
    let v_geom = column_space(inc.matrix());
    RealizedSpace {
        ambient_r: inc.node_count(),
        is_full: v_geom.is_full(),
        v_geom,
    }
}

pub fn classify_extension_side(rs: &RealizedSpace) -> ExtensionVerdict {
    if rs.is_full {
        ExtensionVerdict::Split
    } else {
        ExtensionVerdict::Interacting
    }
}

pub fn check_membership(rs: &RealizedSpace, c: &CorrectedClass) -> Result<bool> {
    rs.v_geom.contains(&c.coeffs)
}

/// Convenience for tests and builtins.
pub fn corrected_class(coeffs: &[i64]) -> CorrectedClass {
    CorrectedClass {
        coeffs: coeffs.iter().map(|&c| Rational::from_int(c)).collect(),
    }
}
