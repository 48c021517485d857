//! Relation blocks, block separation, the reduced interaction matrix
//! `mu_bg = <v_b, v_g>`, and the checks tying nodewise data to block data.
//!
//! Node and block indices are 0-based here; reports print them 1-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::gluing::IncidenceDatum;
use crate::linalg::{column_space, format_vector, unit_vector, Matrix, Rational, Subspace, Vector};
use crate::pairing::{CycleConfiguration, PairingSpace};
use crate::transport::{commutator, commutator_closed_form, InteractionMatrix, TransportOperator};
use crate::verify::VerificationReport;

/// A partition of `{0..r}` into nonempty blocks, each sorted, ordered by least
/// member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockDecomposition {
    r: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn new(r: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; r];
        let mut blocks = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", b + 1)));
            }
            block.sort_unstable();
            for &k in block.iter() {
                if k >= r {
                    return Err(Error::InvalidPartition(format!(
                        "node {} out of range 1..={r}",
                        k + 1
                    )));
                }
                if seen[k] {
                    return Err(Error::InvalidPartition(format!("node {} appears twice", k + 1)));
                }
                seen[k] = true;
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("node {} is not covered", k + 1)));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(BlockDecomposition { r, blocks })
    }

    /// From 1-based index lists, as written in scenario files.
    pub fn from_one_based(r: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let zero_based = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&k| {
                        k.checked_sub(1)
                            .ok_or_else(|| Error::InvalidPartition("node indices are 1-based".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BlockDecomposition::new(r, zero_based)
    }

    pub fn singletons(r: usize) -> Self {
        BlockDecomposition {
            r,
            blocks: (0..r).map(|k| vec![k]).collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.r
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `block_of()[k]` is the block containing node `k`.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.r];
        for (b, block) in self.blocks.iter().enumerate() {
            for &k in block {
                out[k] = b;
            }
        }
        out
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|k| k + 1).collect())
            .collect()
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .to_one_based()
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(ToString::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// One common vanishing class per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockClasses {
    pub decomposition: BlockDecomposition,
    pub classes: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockViolation {
    pub block: usize,
    pub first: usize,
    pub other: usize,
}

impl fmt::Display for BlockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "block {}: cycles of nodes {} and {} differ",
            self.block + 1,
            self.first + 1,
            self.other + 1
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Separated(BlockClasses),
    Violated(BlockViolation),
}

/// Requires `d_k = v_b` exactly for every node `k` of block `b`.
pub fn check_block_separation(cfg: &CycleConfiguration, part: &BlockDecomposition) -> Result<Separation> {
    if part.node_count() != cfg.len() {
        return Err(Error::DimensionMismatch {
            context: "partition vs configuration node count",
            left: part.node_count(),
            right: cfg.len(),
        });
    }
    let mut classes = Vec::with_capacity(part.len());
    for (b, block) in part.blocks().iter().enumerate() {
        let first = block[0];
        let v = &cfg.cycles()[first];
        if let Some(&other) = block[1..].iter().find(|&&k| &cfg.cycles()[k] != v) {
            return Ok(Separation::Violated(BlockViolation { block: b, first, other }));
        }
        classes.push(v.clone());
    }
    Ok(Separation::Separated(BlockClasses {
        decomposition: part.clone(),
        classes,
    }))
}

/// `Lambda_blk = (mu_bg)`; skew with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInteractionMatrix {
    entries: Matrix,
}

impl ReducedInteractionMatrix {
    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }
}

pub fn reduced_matrix(space: &PairingSpace, bc: &BlockClasses) -> Result<ReducedInteractionMatrix> {
    let b = bc.classes.len();
    let mut entries = Matrix::zeros(b, b);
    for i in 0..b {
        for j in 0..b {
            entries[(i, j)] = space.pair(&bc.classes[i], &bc.classes[j])?;
        }
    }
    Ok(ReducedInteractionMatrix { entries })
}

/// Checks `lambda_ij = mu_bg` for every node pair, with intra-block entries
/// required to vanish.
pub fn verify_block_consistency(
    lambda: &InteractionMatrix,
    bc: &BlockClasses,
    reduced: &ReducedInteractionMatrix,
) -> Result<VerificationReport> {
    let r = bc.decomposition.node_count();
    if lambda.size() != r {
        return Err(Error::DimensionMismatch {
            context: "interaction matrix vs partition",
            left: lambda.size(),
            right: r,
        });
    }
    if reduced.size() != bc.decomposition.len() {
        return Err(Error::DimensionMismatch {
            context: "reduced matrix vs block count",
            left: reduced.size(),
            right: bc.decomposition.len(),
        });
    }
    let block_of = bc.decomposition.block_of();
    let mut report = VerificationReport::new();
    for i in 0..r {
        for j in 0..r {
            let (bi, bj) = (block_of[i], block_of[j]);
            let expected = if bi == bj {
                Rational::zero()
            } else {
                reduced.entries()[(bi, bj)].clone()
            };
            let scope = if bi == bj { "intra-block" } else { "cross-block" };
            report.push_eq(
                format!("lambda[{},{}] ({scope}, blocks {},{})", i + 1, j + 1, bi + 1, bj + 1),
                expected,
                lambda.get(i, j).clone(),
            );
        }
    }
    Ok(report)
}

/// For every pair of blocks, compares the matrix commutator of the block
/// nilpotents with the closed form, then checks that pairwise commutation
/// holds iff all off-diagonal `mu` vanish.
pub fn block_commutator_check(space: &PairingSpace, bc: &BlockClasses) -> Result<VerificationReport> {
    let ops = bc
        .classes
        .iter()
        .enumerate()
        .map(|(b, v)| TransportOperator::for_class(space, v, b))
        .collect::<Result<Vec<_>>>()?;
    let reduced = reduced_matrix(space, bc)?;
    let mut report = VerificationReport::new();
    let mut all_commute = true;
    for b in 0..ops.len() {
        for g in (b + 1)..ops.len() {
            let matrix = commutator(&ops[b], &ops[g])?;
            let closed = commutator_closed_form(space, &bc.classes[b], &bc.classes[g])?;
            all_commute &= matrix.is_zero();
            let pass = matrix == closed;
            report.push(format!("[N_{},N_{}] closed form", b + 1, g + 1), &closed, &matrix, pass);
        }
    }
    let mu_offdiag_zero = reduced.entries().is_zero();
    report.push_eq(
        "block operators commute pairwise iff off-diagonal mu vanish",
        mu_offdiag_zero,
        all_commute,
    );
    Ok(report)
}

pub fn surviving_dimension(part: &BlockDecomposition) -> usize {
    part.len()
}

/// `R_blk = span{ e_i - e_j : i, j in one block }`.
pub fn relation_lattice_from_blocks(part: &BlockDecomposition) -> Subspace {
    let r = part.node_count();
    let mut generators = Vec::new();
    for block in part.blocks() {
        for pair in block.windows(2) {
            let mut v = unit_vector(r, pair[0]);
            v[pair[1]] = Rational::from_int(-1);
            generators.push(v);
        }
    }
    Subspace::span(r, &generators).expect("generators have length r")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotBlockAdapted {
    /// A canonical basis vector has an entry other than 0 or 1.
    NonIndicator { basis_index: usize, vector: Vector },
    /// Two canonical basis vectors share a node.
    Overlap { basis_index: usize, vector: Vector },
    /// No canonical basis vector touches this node.
    Uncovered { node: usize },
}

impl fmt::Display for NotBlockAdapted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotBlockAdapted::NonIndicator { basis_index, vector } => write!(
                f,
                "basis vector {} {} is not a 0/1 indicator",
                basis_index + 1,
                format_vector(vector)
            ),
            NotBlockAdapted::Overlap { basis_index, vector } => write!(
                f,
                "basis vector {} {} overlaps an earlier block",
                basis_index + 1,
                format_vector(vector)
            ),
            NotBlockAdapted::Uncovered { node } => write!(f, "node {} is in no block", node + 1),
        }
    }
}

/// Reads relation blocks off the canonical basis of the realized space, when
/// that basis consists of disjoint indicator vectors covering every node.
pub fn infer_blocks_from_incidence(inc: &IncidenceDatum) -> std::result::Result<BlockDecomposition, NotBlockAdapted> {
    let v_geom = column_space(inc.matrix());
    let r = inc.node_count();
    let mut seen = vec![false; r];
    let mut blocks = Vec::new();
    for (idx, v) in v_geom.basis().iter().enumerate() {
        if v.iter().any(|x| !x.is_zero() && !x.is_one()) {
            return Err(NotBlockAdapted::NonIndicator {
                basis_index: idx,
                vector: v.clone(),
            });
        }
        let support: Vec<usize> = (0..r).filter(|&k| v[k].is_one()).collect();
        if support.iter().any(|&k| seen[k]) {
            return Err(NotBlockAdapted::Overlap {
                basis_index: idx,
                vector: v.clone(),
            });
        }
        for &k in &support {
            seen[k] = true;
        }
        blocks.push(support);
    }
    if let Some(node) = seen.iter().position(|s| !s) {
        return Err(NotBlockAdapted::Uncovered { node });
    }
    Ok(BlockDecomposition::new(r, blocks).expect("disjoint covering indicator supports"))
}

/// Incidence matrix whose columns are the block indicator vectors.
pub fn indicator_incidence(part: &BlockDecomposition) -> IncidenceDatum {
    let r = part.node_count();
    let columns: Vec<Vector> = part
        .blocks()
        .iter()
        .map(|block| {
            let mut v = vec![Rational::zero(); r];
            for &k in block {
                v[k] = Rational::one();
            }
            v
        })
        .collect();
    let labels = (1..=columns.len()).map(|b| format!("B{b}")).collect();
    IncidenceDatum::new(labels, Matrix::from_columns(&columns, r).expect("indicator length r"))
        .expect("one label per column")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vector, quotient_dim};
    use crate::transport::interaction_matrix;

    fn four_node() -> (CycleConfiguration, BlockDecomposition) {
        let e1 = unit_vector(2, 0);
        let e2 = unit_vector(2, 1);
        let cfg = CycleConfiguration::new(
            PairingSpace::standard_symplectic(1),
            vec![e1.clone(), e1, e2.clone(), e2],
        )
        .unwrap();
        let part = BlockDecomposition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        (cfg, part)
    }

    fn classes(sep: Separation) -> BlockClasses {
        match sep {
            Separation::Separated(bc) => bc,
            Separation::Violated(v) => panic!("unexpected violation: {v}"),
        }
    }

    #[test]
    fn partition_validation() {
        assert!(BlockDecomposition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(BlockDecomposition::new(3, vec![vec![0, 1], vec![]]).is_err());
        assert!(BlockDecomposition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(BlockDecomposition::new(3, vec![vec![0, 1]]).is_err());
        assert!(BlockDecomposition::new(2, vec![vec![0, 2]]).is_err());
        assert!(BlockDecomposition::from_one_based(2, &[vec![0, 1]]).is_err());
        let p = BlockDecomposition::new(3, vec![vec![2], vec![1, 0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2]]);
        assert_eq!(p.to_string(), "{1,2} {3}");
    }

    #[test]
    fn four_node_separates() {
        let (cfg, part) = four_node();
        let bc = classes(check_block_separation(&cfg, &part).unwrap());
        assert_eq!(bc.classes, vec![unit_vector(2, 0), unit_vector(2, 1)]);

        let red = reduced_matrix(cfg.space(), &bc).unwrap();
        assert_eq!(red.entries(), &Matrix::from_i64(&[&[0, 1], &[-1, 0]]));

        let lambda = interaction_matrix(&cfg);
        let report = verify_block_consistency(&lambda, &bc, &red).unwrap();
        assert!(report.overall);
        assert_eq!(report.checks.len(), 16);

        let comm = block_commutator_check(cfg.space(), &bc).unwrap();
        assert!(comm.overall);
        assert_eq!(comm.checks.last().unwrap().actual, "false");
    }

    #[test]
    fn three_node_violates() {
        let cfg = CycleConfiguration::new(
            PairingSpace::standard_symplectic(2),
            vec![unit_vector(4, 0), unit_vector(4, 1), unit_vector(4, 2)],
        )
        .unwrap();
        let part = BlockDecomposition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(
            check_block_separation(&cfg, &part).unwrap(),
            Separation::Violated(BlockViolation {
                block: 0,
                first: 0,
                other: 1
            })
        );
        let wrong = BlockDecomposition::singletons(2);
        assert!(check_block_separation(&cfg, &wrong).is_err());
    }

    #[test]
    fn singletons_always_separate() {
        let cfg = CycleConfiguration::new(
            PairingSpace::standard_symplectic(1),
            vec![int_vector(&[1, 2]), int_vector(&[3, -1]), int_vector(&[0, 0])],
        )
        .unwrap();
        let bc = classes(check_block_separation(&cfg, &BlockDecomposition::singletons(3)).unwrap());
        assert_eq!(bc.classes, cfg.cycles());
    }

    #[test]
    fn corrupted_entry_is_named() {
        let (cfg, part) = four_node();
        let bc = classes(check_block_separation(&cfg, &part).unwrap());
        let red = reduced_matrix(cfg.space(), &bc).unwrap();
        let mut bad = interaction_matrix(&cfg).entries().clone();
        bad[(0, 2)] = Rational::from_int(5);
        bad[(2, 0)] = Rational::from_int(-5);
        let bad = InteractionMatrix::from_matrix(bad).unwrap();
        let report = verify_block_consistency(&bad, &bc, &red).unwrap();
        assert!(!report.overall);
        let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
        assert!(failed[0].starts_with("lambda[1,3]"), "{failed:?}");
    }

    #[test]
    fn orthogonal_and_single_block_commute() {
        let space = PairingSpace::standard_symplectic(2);
        let bc = BlockClasses {
            decomposition: BlockDecomposition::singletons(2),
            classes: vec![unit_vector(4, 0), unit_vector(4, 2)],
        };
        let report = block_commutator_check(&space, &bc).unwrap();
        assert!(report.overall);
        assert_eq!(report.checks.last().unwrap().actual, "true");
        assert!(reduced_matrix(&space, &bc).unwrap().entries().is_zero());

        let single = BlockClasses {
            decomposition: BlockDecomposition::singletons(1),
            classes: vec![unit_vector(4, 1)],
        };
        assert!(block_commutator_check(&space, &single).unwrap().overall);
        assert_eq!(reduced_matrix(&space, &single).unwrap().entries(), &Matrix::zeros(1, 1));
    }

    #[test]
    fn relation_lattice() {
        let p = BlockDecomposition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let rel = relation_lattice_from_blocks(&p);
        assert_eq!(rel.basis(), &[int_vector(&[1, -1, 0])]);
        assert_eq!(surviving_dimension(&p), 2);
        assert_eq!(quotient_dim(3, &rel).unwrap(), 2);
        assert_eq!(relation_lattice_from_blocks(&BlockDecomposition::singletons(4)).dim(), 0);
        let one = BlockDecomposition::new(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(quotient_dim(5, &relation_lattice_from_blocks(&one)).unwrap(), 1);
    }

    #[test]
    fn infers_blocks() {
        let inc = IncidenceDatum::unlabeled(Matrix::from_i64(&[&[1, 0], &[1, 0], &[0, 1]]));
        assert_eq!(infer_blocks_from_incidence(&inc).unwrap().blocks(), &[vec![0, 1], vec![2]]);
        let id = IncidenceDatum::unlabeled(Matrix::identity(3));
        assert_eq!(infer_blocks_from_incidence(&id).unwrap(), BlockDecomposition::singletons(3));
        let skew = IncidenceDatum::unlabeled(Matrix::from_i64(&[&[1], &[2]]));
        assert!(matches!(
            infer_blocks_from_incidence(&skew),
            Err(NotBlockAdapted::NonIndicator { basis_index: 0, .. })
        ));
        let partial = IncidenceDatum::unlabeled(Matrix::from_i64(&[&[1], &[1], &[0]]));
        assert_eq!(infer_blocks_from_incidence(&partial), Err(NotBlockAdapted::Uncovered { node: 2 }));
        let overlap = IncidenceDatum::unlabeled(Matrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]));
        assert!(matches!(
            infer_blocks_from_incidence(&overlap),
            Err(NotBlockAdapted::Overlap { basis_index: 1, .. })
        ));
    }

    #[test]
    fn indicator_round_trip() {
        let p = BlockDecomposition::new(5, vec![vec![0, 3], vec![1], vec![2, 4]]).unwrap();
        assert_eq!(infer_blocks_from_incidence(&indicator_incidence(&p)).unwrap(), p);
    }
}
