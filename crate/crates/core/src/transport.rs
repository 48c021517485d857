//! Picard–Lefschetz transport: the operators `T_i(a) = a + <a, d_i> d_i`,
//! their nilpotent parts `N_i = T_i - Id`, the interaction matrix
//! `lambda_ij = <d_i, d_j>`, and commutator diagnostics.
//!
//! Matrices act on column vectors. Monodromy words are read left to right as
//! "apply first": the word `[a, b]` evaluates to the matrix `T_b * T_a`.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, Vector};
use crate::pairing::{CycleConfiguration, PairingSpace};

/// Stated in report headers.
pub const COMPOSITION_CONVENTION: &str =
    "word [a, b] applies T_a first, then T_b (matrix T_b * T_a); letter -i denotes T_i^-1 = Id - N_i";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportOperator {
    pub node_index: usize,
    pub t_matrix: Matrix,
    pub n_matrix: Matrix,
}

impl TransportOperator {
    /// The transport operator attached to an arbitrary class `delta`.
    pub fn for_class(space: &PairingSpace, delta: &[Rational], node_index: usize) -> Result<Self> {
        let functional = space.pairing_functional(delta)?;
        let n = space.dim();
        let mut n_matrix = Matrix::zeros(n, n);
        for (k, dk) in delta.iter().enumerate() {
            if dk.is_zero() {
                continue;
            }
            for (j, fj) in functional.iter().enumerate() {
                if !fj.is_zero() {
                    n_matrix[(k, j)] = dk * fj;
                }
            }
        }
        let t_matrix = Matrix::identity(n).add(&n_matrix)?;
        Ok(TransportOperator {
            node_index,
            t_matrix,
            n_matrix,
        })
    }

    pub fn dim(&self) -> usize {
        self.n_matrix.rows()
    }

    /// `T^-1 = Id - N`, valid because `N^2 = 0`.
    pub fn inverse(&self) -> Matrix {
        Matrix::identity(self.dim()).sub(&self.n_matrix).expect("square")
    }

    /// Rank of `N`: 1 for a cycle pairing nontrivially with something, else 0.
    pub fn rank(&self) -> usize {
        self.n_matrix.rank()
    }
}

/// Transport operator for node `i` (0-based).
pub fn pl_operator(cfg: &CycleConfiguration, i: usize) -> Result<TransportOperator> {
    let delta = cfg.cycle(i).ok_or(Error::IndexOutOfRange {
        what: "node",
        index: i as i64,
        count: cfg.len(),
    })?;
    TransportOperator::for_class(cfg.space(), delta, i)
}

pub fn all_operators(cfg: &CycleConfiguration) -> Result<Vec<TransportOperator>> {
    (0..cfg.len()).map(|i| pl_operator(cfg, i)).collect()
}

/// `Lambda = (<d_i, d_j>)`; skew with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionMatrix {
    entries: Matrix,
}

impl InteractionMatrix {
    /// Validates skew-symmetry (which forces a zero diagonal).
    pub fn from_matrix(entries: Matrix) -> Result<Self> {
        PairingSpace::new(entries.clone())?;
        Ok(InteractionMatrix { entries })
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i, j)]
    }
}

pub fn interaction_matrix(cfg: &CycleConfiguration) -> InteractionMatrix {
    let r = cfg.len();
    let space = cfg.space();
    let functionals: Vec<Vector> = cfg
        .cycles()
        .iter()
        .map(|d| space.pairing_functional(d).expect("validated cycle length"))
        .collect();
    let mut entries = Matrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            if i != j {
                entries[(i, j)] = crate::linalg::dot(&cfg.cycles()[i], &functionals[j]);
            }
        }
    }
    InteractionMatrix::from_matrix(entries).expect("pairing of a skew form is skew")
}

/// `N_a N_b - N_b N_a`.
pub fn commutator(a: &TransportOperator, b: &TransportOperator) -> Result<Matrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            context: "commutator",
            left: a.dim(),
            right: b.dim(),
        });
    }
    a.n_matrix.mul(&b.n_matrix)?.sub(&b.n_matrix.mul(&a.n_matrix)?)
}

/// The rank-one closed form
/// `[N_i, N_j](a) = <a, d_j> l_ji d_i - <a, d_i> l_ij d_j`,
/// evaluated on every standard basis vector to give a matrix.
pub fn commutator_closed_form(space: &PairingSpace, di: &[Rational], dj: &[Rational]) -> Result<Matrix> {
    let lij = space.pair(di, dj)?;
    let lji = space.pair(dj, di)?;
    let fi = space.pairing_functional(di)?;
    let fj = space.pairing_functional(dj)?;
    let n = space.dim();
    let mut m = Matrix::zeros(n, n);
    for col in 0..n {
        // <e_col, d> is the col-th entry of G d.
        let ci = &fj[col] * &lji;
        let cj = &fi[col] * &lij;
        for row in 0..n {
            m[(row, col)] = &ci * &di[row] - &cj * &dj[row];
        }
    }
    Ok(m)
}

/// True iff every off-diagonal entry of `Lambda` vanishes.
pub fn commutes_all(lambda: &InteractionMatrix) -> bool {
    lambda.entries().is_zero()
}

/// Evaluates a monodromy word of signed 1-based node letters; see
/// [`COMPOSITION_CONVENTION`].
pub fn transport_word(cfg: &CycleConfiguration, word: &[i64]) -> Result<Matrix> {
    let r = cfg.len();
    let mut acc = Matrix::identity(cfg.space().dim());
    for &letter in word {
        let idx = letter.unsigned_abs() as usize;
        if letter == 0 || idx > r {
            return Err(Error::IndexOutOfRange {
                what: "word letter",
                index: letter,
                count: r,
            });
        }
        let op = pl_operator(cfg, idx - 1)?;
        let step = if letter > 0 { op.t_matrix } else { op.inverse() };
        acc = step.mul(&acc)?;
    }
    Ok(acc)
}
