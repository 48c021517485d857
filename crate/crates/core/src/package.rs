//! The assembled light-sector package, its two-layer classification, and the
//! block-reduced structure checks.
//!
//! The three realizations are computed independently: the extension side
//! from incidence data, the transport side from the operator matrices and
//! their commutators, and the atom side from the interaction matrix. The
//! classification cross-checks the transport and atom verdicts, which must
//! always agree.

use serde::Serialize;

use crate::atoms::{atom_splitting, blockwise_atom_splitting, AtomSplittingReport};
use crate::blocks::{
    block_commutator_check, check_block_separation, infer_blocks_from_incidence, reduced_matrix,
    relation_lattice_from_blocks, surviving_dimension, verify_block_consistency, BlockClasses,
    BlockDecomposition, NotBlockAdapted, ReducedInteractionMatrix, Separation,
};
use crate::error::{Error, Result};
use crate::gluing::{check_membership, classify_extension_side, realized_space, CorrectedClass, ExtensionVerdict, IncidenceDatum, RealizedSpace};
use crate::linalg::{quotient_dim, Matrix};
use crate::pairing::CycleConfiguration;
use crate::transport::{all_operators, commutator, interaction_matrix, InteractionMatrix, TransportOperator};
use crate::verify::VerificationReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectedClassCheck {
    pub class: CorrectedClass,
    pub in_realized_space: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LightSectorPackage {
    pub r: usize,
    pub cycles: CycleConfiguration,
    pub transport: Vec<TransportOperator>,
    pub interaction: InteractionMatrix,
    /// Ambient `Q^r` when no incidence was supplied.
    pub realized: RealizedSpace,
    pub incidence: Option<IncidenceDatum>,
    /// Relation blocks read off the incidence data, when supplied.
    pub blocks_incidence: Option<std::result::Result<BlockDecomposition, NotBlockAdapted>>,
    pub partition: Option<BlockDecomposition>,
    pub block_separation: Option<Separation>,
    pub reduced: Option<ReducedInteractionMatrix>,
    pub atom: AtomSplittingReport,
    pub corrected_class: Option<CorrectedClassCheck>,
    pub trivial_nodes: Vec<usize>,
    /// Incidence blocks and the supplied partition both exist and differ.
    pub partition_discrepancy: bool,
}

impl LightSectorPackage {
    pub fn block_classes(&self) -> Option<&BlockClasses> {
        match &self.block_separation {
            Some(Separation::Separated(bc)) => Some(bc),
            _ => None,
        }
    }
}

fn check_nodes(context: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch {
            context,
            left: expected,
            right: got,
        });
    }
    Ok(())
}

pub fn assemble(
    cycles: CycleConfiguration,
    incidence: Option<IncidenceDatum>,
    partition: Option<BlockDecomposition>,
    corrected_class: Option<CorrectedClass>,
) -> Result<LightSectorPackage> {
    let r = cycles.len();
    if let Some(inc) = &incidence {
        check_nodes("incidence rows vs node count", r, inc.node_count())?;
    }
    if let Some(p) = &partition {
        check_nodes("partition vs node count", r, p.node_count())?;
    }
    if let Some(c) = &corrected_class {
        check_nodes("corrected class vs node count", r, c.coeffs.len())?;
    }

    let transport = all_operators(&cycles)?;
    let interaction = interaction_matrix(&cycles);
    let realized = match &incidence {
        Some(inc) => realized_space(inc),
        None => RealizedSpace::ambient(r),
    };
    let blocks_incidence = incidence.as_ref().map(infer_blocks_from_incidence);

    let block_separation = partition
        .as_ref()
        .map(|p| check_block_separation(&cycles, p))
        .transpose()?;
    let reduced = match &block_separation {
        Some(Separation::Separated(bc)) => Some(reduced_matrix(cycles.space(), bc)?),
        _ => None,
    };

    let partition_discrepancy = matches!(
        (&blocks_incidence, &partition),
        (Some(Ok(inferred)), Some(user)) if inferred != user
    );

    let corrected_class = corrected_class
        .map(|class| {
            check_membership(&realized, &class).map(|ok| CorrectedClassCheck {
                class,
                in_realized_space: ok,
            })
        })
        .transpose()?;

    let atom = atom_splitting(&interaction);
    let trivial_nodes = cycles.trivial_nodes();

    Ok(LightSectorPackage {
        r,
        cycles,
        transport,
        interaction,
        realized,
        incidence,
        blocks_incidence,
        partition,
        block_separation,
        reduced,
        atom,
        corrected_class,
        trivial_nodes,
        partition_discrepancy,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtensionSide {
    Split,
    Interacting,
    AmbientDefault,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransportSide {
    Commuting,
    Noncommuting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AtomSide {
    Split,
    NonSplit,
}

impl AtomSide {
    fn from_split(is_split: bool) -> Self {
        if is_split {
            AtomSide::Split
        } else {
            AtomSide::NonSplit
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationCollapse {
    None,
    CollapsedTo { from: usize, to: usize },
}

/// Coupling among the surviving block sectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualInteraction {
    pub reduced: Matrix,
    pub verdict: AtomSide,
    pub block_clusters: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub extension_side: ExtensionSide,
    pub transport_side: TransportSide,
    pub atom_side: AtomSide,
    pub relation_collapse: RelationCollapse,
    pub residual_interaction: Option<ResidualInteraction>,
}

/// True iff every pair of transport nilpotents commutes, decided from the
/// operator matrices alone.
fn operators_commute(pkg: &LightSectorPackage) -> Result<bool> {
    let cycles = pkg.cycles.cycles();
    for i in 0..pkg.r {
        for j in (i + 1)..pkg.r {
            if cycles[i] == cycles[j] {
                continue;
            }
            if !commutator(&pkg.transport[i], &pkg.transport[j])?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn classify(pkg: &LightSectorPackage) -> Result<Classification> {
    let extension_side = match (&pkg.incidence, classify_extension_side(&pkg.realized)) {
        (None, _) => ExtensionSide::AmbientDefault,
        (Some(_), ExtensionVerdict::Split) => ExtensionSide::Split,
        (Some(_), ExtensionVerdict::Interacting) => ExtensionSide::Interacting,
    };
    let relation_collapse = if pkg.realized.is_full {
        RelationCollapse::None
    } else {
        RelationCollapse::CollapsedTo {
            from: pkg.r,
            to: pkg.realized.dim(),
        }
    };

    let transport_side = if operators_commute(pkg)? {
        TransportSide::Commuting
    } else {
        TransportSide::Noncommuting
    };
    let atom_side = AtomSide::from_split(pkg.atom.is_split);
    if (transport_side == TransportSide::Commuting) != (atom_side == AtomSide::Split) {
        return Err(Error::Internal(format!(
            "transport verdict {transport_side:?} disagrees with atom verdict {atom_side:?}"
        )));
    }

    let residual_interaction = pkg.reduced.as_ref().map(|red| {
        let rep = blockwise_atom_splitting(red);
        ResidualInteraction {
            reduced: red.entries().clone(),
            verdict: AtomSide::from_split(rep.is_split),
            block_clusters: rep.clusters,
        }
    });

    Ok(Classification {
        extension_side,
        transport_side,
        atom_side,
        relation_collapse,
        residual_interaction,
    })
}

/// Machine-checks the four block-reduced structure items on a package whose
/// partition passes block separation.
pub fn verify_block_reduced_structure(pkg: &LightSectorPackage) -> Result<VerificationReport> {
    let part = pkg
        .partition
        .as_ref()
        .ok_or_else(|| Error::BlockSeparationRequired("no partition supplied".into()))?;
    let bc = match &pkg.block_separation {
        Some(Separation::Separated(bc)) => bc,
        Some(Separation::Violated(v)) => return Err(Error::BlockSeparationRequired(v.to_string())),
        None => return Err(Error::BlockSeparationRequired("block separation not attempted".into())),
    };
    let reduced = pkg.reduced.as_ref().expect("reduced matrix exists when separated");
    let b = surviving_dimension(part);

    let mut report = VerificationReport::new();

    let lattice = relation_lattice_from_blocks(part);
    report.push_eq("(1) dim Q^r/R_blk = |B|", b, quotient_dim(pkg.r, &lattice)?);
    if pkg.incidence.is_some() {
        report.push_eq("(1) dim V_geom = |B|", b, pkg.realized.dim());
        let expected = lattice.annihilator();
        report.push(
            "(1) V_geom = annihilator of R_blk",
            format!("{:?}", expected.basis()),
            format!("{:?}", pkg.realized.v_geom.basis()),
            expected == pkg.realized.v_geom,
        );
    }

    let mut item2 = verify_block_consistency(&pkg.interaction, bc, reduced)?;
    for c in &mut item2.checks {
        c.name = format!("(2) {}", c.name);
    }
    report.extend(item2);

    let mut item3 = block_commutator_check(pkg.cycles.space(), bc)?;
    for c in &mut item3.checks {
        c.name = format!("(3) {}", c.name);
    }
    report.extend(item3);

    let full = atom_splitting(&pkg.interaction).is_split;
    let blockwise = blockwise_atom_splitting(reduced).is_split;
    report.push_eq("(4) atom split (full Lambda) = atom split (Lambda_blk)", blockwise, full);

    Ok(report)
}
