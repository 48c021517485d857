//! Report documents and their text and machine renderings.
//!
//! The machine format is pretty-printed JSON with the field names below;
//! they are frozen at `report_version = 1`. Node and block indices are
//! 1-based and every rational is a canonical string.
//!
//! | field | content |
//! |---|---|
//! | `report_version` | `1` |
//! | `scenario` | scenario name |
//! | `composition_convention` | how monodromy words compose |
//! | `nodes`, `pairing_dim` | `r` and the pairing-space dimension |
//! | `extension` | ambient and realized dimensions, realized basis, verdict, corrected class check |
//! | `transport` | operator ranks, interaction matrix, verdict |
//! | `atom` | split flag, mixing edges, mixing clusters (artifact-derived), verdict |
//! | `blocks` | incidence blocks, partition, separation outcome, block classes, reduced matrix, residual verdict |
//! | `classification` | the two-layer summary |
//! | `flags` | trivial nodes, block adaptedness, partition discrepancy |
//! | `verification` | block-reduced structure checks when the partition separates, else `null` |

use std::fmt::Write as _;

use serde::Serialize;

use crate::blocks::Separation;
use crate::error::Result;
use crate::linalg::{format_vector, Matrix, Rational, Vector};
use crate::package::{
    classify, verify_block_reduced_structure, AtomSide, Classification, ExtensionSide, LightSectorPackage,
    RelationCollapse, TransportSide,
};
use crate::transport::COMPOSITION_CONVENTION;
use crate::verify::{Check, VerificationReport};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrectedClassSection {
    pub coeffs: Vector,
    pub in_realized_space: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionSection {
    pub incidence_supplied: bool,
    pub ambient_dim: usize,
    pub realized_dim: usize,
    pub realized_basis: Vec<Vector>,
    pub verdict: ExtensionSide,
    pub corrected_class: Option<CorrectedClassSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportSection {
    pub operator_ranks: Vec<usize>,
    pub interaction_matrix: Vec<Vector>,
    pub verdict: TransportSide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomSection {
    pub is_split: bool,
    pub mixing_edges: Vec<(usize, usize)>,
    pub mixing_clusters: Vec<Vec<usize>>,
    pub verdict: AtomSide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSection {
    pub incidence_blocks: Option<Vec<Vec<usize>>>,
    pub partition: Option<Vec<Vec<usize>>>,
    /// `separated`, `violated: ...`, or `null` when no partition was given.
    pub block_separation: Option<String>,
    pub block_classes: Option<Vec<Vector>>,
    pub reduced_matrix: Option<Vec<Vector>>,
    pub residual_verdict: Option<AtomSide>,
    pub block_clusters: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationSection {
    pub extension_side: ExtensionSide,
    pub transport_side: TransportSide,
    pub atom_side: AtomSide,
    pub relation_collapse: Option<CollapseSection>,
    pub residual_interaction: Option<AtomSide>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseSection {
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagSection {
    pub trivial_nodes: Vec<usize>,
    pub incidence_block_adapted: Option<bool>,
    pub not_block_adapted_reason: Option<String>,
    pub partition_discrepancy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationSection {
    pub overall: bool,
    pub checks_run: usize,
    pub checks_failed: usize,
    pub failures: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub report_version: u32,
    pub scenario: String,
    pub composition_convention: String,
    pub nodes: usize,
    pub pairing_dim: usize,
    pub extension: ExtensionSection,
    pub transport: TransportSection,
    pub atom: AtomSection,
    pub blocks: BlockSection,
    pub classification: ClassificationSection,
    pub flags: FlagSection,
    pub verification: Option<VerificationSection>,
}

fn one_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|k| k + 1).collect()).collect()
}

fn grid(m: &Matrix) -> Vec<Vector> {
    m.row_vectors()
}

impl VerificationSection {
    pub fn from_report(rep: &VerificationReport) -> Self {
        let failures: Vec<Check> = rep.failures().cloned().collect();
        VerificationSection {
            overall: rep.overall,
            checks_run: rep.checks.len(),
            checks_failed: failures.len(),
            failures,
        }
    }
}

impl ReportDocument {
    pub fn build(name: &str, pkg: &LightSectorPackage) -> Result<Self> {
        let cls = classify(pkg)?;
        let verification = match pkg.block_classes() {
            Some(_) => Some(VerificationSection::from_report(&verify_block_reduced_structure(pkg)?)),
            None => None,
        };
        Ok(Self::from_parts(name, pkg, &cls, verification))
    }

    fn from_parts(
        name: &str,
        pkg: &LightSectorPackage,
        cls: &Classification,
        verification: Option<VerificationSection>,
    ) -> Self {
        let extension = ExtensionSection {
            incidence_supplied: pkg.incidence.is_some(),
            ambient_dim: pkg.r,
            realized_dim: pkg.realized.dim(),
            realized_basis: pkg.realized.v_geom.basis().to_vec(),
            verdict: cls.extension_side,
            corrected_class: pkg.corrected_class.as_ref().map(|c| CorrectedClassSection {
                coeffs: c.class.coeffs.clone(),
                in_realized_space: c.in_realized_space,
            }),
        };
        let transport = TransportSection {
            operator_ranks: pkg.transport.iter().map(|t| t.rank()).collect(),
            interaction_matrix: grid(pkg.interaction.entries()),
            verdict: cls.transport_side,
        };
        let atom = AtomSection {
            is_split: pkg.atom.is_split,
            mixing_edges: pkg.atom.mixing_edges.iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
            mixing_clusters: one_based(&pkg.atom.clusters),
            verdict: cls.atom_side,
        };
        let (incidence_blocks, adapted, reason) = match &pkg.blocks_incidence {
            Some(Ok(p)) => (Some(p.to_one_based()), Some(true), None),
            Some(Err(e)) => (None, Some(false), Some(e.to_string())),
            None => (None, None, None),
        };
        let blocks = BlockSection {
            incidence_blocks,
            partition: pkg.partition.as_ref().map(|p| p.to_one_based()),
            block_separation: pkg.block_separation.as_ref().map(|s| match s {
                Separation::Separated(_) => "separated".to_string(),
                Separation::Violated(v) => format!("violated: {v}"),
            }),
            block_classes: pkg.block_classes().map(|bc| bc.classes.clone()),
            reduced_matrix: pkg.reduced.as_ref().map(|m| grid(m.entries())),
            residual_verdict: cls.residual_interaction.as_ref().map(|r| r.verdict),
            block_clusters: cls.residual_interaction.as_ref().map(|r| one_based(&r.block_clusters)),
        };
        let classification = ClassificationSection {
            extension_side: cls.extension_side,
            transport_side: cls.transport_side,
            atom_side: cls.atom_side,
            relation_collapse: match cls.relation_collapse {
                RelationCollapse::None => None,
                RelationCollapse::CollapsedTo { from, to } => Some(CollapseSection { from, to }),
            },
            residual_interaction: cls.residual_interaction.as_ref().map(|r| r.verdict),
        };
        let flags = FlagSection {
            trivial_nodes: pkg.trivial_nodes.iter().map(|k| k + 1).collect(),
            incidence_block_adapted: adapted,
            not_block_adapted_reason: reason,
            partition_discrepancy: pkg.partition_discrepancy,
        };
        ReportDocument {
            report_version: REPORT_VERSION,
            scenario: name.to_string(),
            composition_convention: COMPOSITION_CONVENTION.to_string(),
            nodes: pkg.r,
            pairing_dim: pkg.cycles.space().dim(),
            extension,
            transport,
            atom,
            blocks,
            classification,
            flags,
            verification,
        }
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Machine => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            ReportFormat::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "light-sector package: {}", self.scenario);
        let _ = writeln!(w, "nodes: {}   pairing dimension: {}", self.nodes, self.pairing_dim);
        let _ = writeln!(w, "composition: {}", self.composition_convention);

        let e = &self.extension;
        let _ = writeln!(w, "\n== corrected-extension realization ==");
        let _ = writeln!(w, "ambient E_node: Q^{}", e.ambient_dim);
        if e.incidence_supplied {
            let basis: Vec<String> = e.realized_basis.iter().map(|v| format_vector(v)).collect();
            let _ = writeln!(w, "realized E_geom: dim {} spanned by {{{}}}", e.realized_dim, basis.join(", "));
        } else {
            let _ = writeln!(w, "realized E_geom: ambient (no gluing data supplied)");
        }
        let _ = writeln!(w, "extension: {}", self.extension_line());
        if let Some(c) = &e.corrected_class {
            let _ = writeln!(
                w,
                "corrected class {}: {}",
                format_vector(&c.coeffs),
                if c.in_realized_space { "admissible (in E_geom)" } else { "REJECTED (violates gluing)" }
            );
        }

        let t = &self.transport;
        let _ = writeln!(w, "\n== transport realization ==");
        let _ = writeln!(w, "rank(N_i): {:?}", t.operator_ranks);
        let _ = writeln!(w, "Lambda:");
        write_matrix(w, &t.interaction_matrix);
        let _ = writeln!(w, "transport: {:?}", t.verdict);

        let a = &self.atom;
        let _ = writeln!(w, "\n== atom realization ==");
        let _ = writeln!(w, "atom: {}", if a.is_split { "Split" } else { "NonSplit" });
        if !a.mixing_edges.is_empty() {
            let edges: Vec<String> = a.mixing_edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
            let _ = writeln!(w, "mixing edges: {}", edges.join(" "));
        }
        let _ = writeln!(w, "mixing clusters (artifact-derived): {}", fmt_sets(&a.mixing_clusters));

        let b = &self.blocks;
        let _ = writeln!(w, "\n== block structure ==");
        match (&b.incidence_blocks, &self.flags.not_block_adapted_reason) {
            (Some(ib), _) => {
                let _ = writeln!(w, "relation blocks (incidence side): {}", fmt_sets(ib));
            }
            (None, Some(reason)) => {
                let _ = writeln!(w, "relation blocks (incidence side): not block-adapted ({reason})");
            }
            (None, None) => {
                let _ = writeln!(w, "relation blocks (incidence side): none (no incidence)");
            }
        }
        match (&b.partition, &b.block_separation) {
            (Some(p), Some(sep)) => {
                let _ = writeln!(w, "partition: {}", fmt_sets(p));
                let _ = writeln!(w, "block separation (transport side): {sep}");
            }
            _ => {
                let _ = writeln!(w, "partition: none supplied");
            }
        }
        if let Some(classes) = &b.block_classes {
            for (i, v) in classes.iter().enumerate() {
                let _ = writeln!(w, "v_{} = {}", i + 1, format_vector(v));
            }
        }
        if let Some(red) = &b.reduced_matrix {
            let _ = writeln!(w, "Lambda_blk:");
            write_matrix(w, red);
        }
        if self.flags.partition_discrepancy {
            let _ = writeln!(w, "NOTE: incidence blocks differ from the supplied partition; the partition is used for block analysis");
        }

        let c = &self.classification;
        let _ = writeln!(w, "\n== classification ==");
        let _ = writeln!(w, "extension side: {:?}", c.extension_side);
        let _ = writeln!(w, "transport side: {:?}", c.transport_side);
        let _ = writeln!(w, "atom side: {:?}", c.atom_side);
        match c.relation_collapse {
            None => {
                let _ = writeln!(w, "relation collapse: none");
            }
            Some(cs) => {
                let _ = writeln!(w, "relation collapse: {}→{}", cs.from, cs.to);
            }
        }
        match (&c.residual_interaction, &b.block_clusters) {
            (Some(v), Some(cl)) => {
                let _ = writeln!(w, "residual interaction: {v:?} (block clusters {})", fmt_sets(cl));
            }
            _ => {
                let _ = writeln!(w, "residual interaction: n/a (no block-separated partition)");
            }
        }

        if !self.flags.trivial_nodes.is_empty() {
            let _ = writeln!(w, "\nhomologically trivial nodes: {:?}", self.flags.trivial_nodes);
        }

        if let Some(v) = &self.verification {
            let _ = writeln!(w, "\n== block-reduced structure checks ==");
            let _ = writeln!(
                w,
                "{}: {} checks, {} failed",
                if v.overall { "PASS" } else { "FAIL" },
                v.checks_run,
                v.checks_failed
            );
            for f in &v.failures {
                let _ = writeln!(w, "  FAIL {}: expected {}, got {}", f.name, f.expected, f.actual);
            }
        }
        out
    }

    fn extension_line(&self) -> String {
        let c = &self.classification;
        match (c.extension_side, c.relation_collapse) {
            (ExtensionSide::AmbientDefault, _) => "ambient (no gluing data supplied)".to_string(),
            (side, Some(cs)) => format!("{side:?} (collapsed {}→{})", cs.from, cs.to),
            (side, None) => format!("{side:?} (no collapse)"),
        }
    }
}

fn fmt_sets(sets: &[Vec<usize>]) -> String {
    if sets.is_empty() {
        return "(none)".into();
    }
    sets.iter()
        .map(|s| {
            let inner: Vec<String> = s.iter().map(ToString::to_string).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_matrix(w: &mut String, rows: &[Vec<Rational>]) {
    if rows.is_empty() {
        let _ = writeln!(w, "  (empty)");
        return;
    }
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(w, "  [{}]", padded.join(" "));
    }
}

/// Assembles, classifies, and renders a report for `pkg`.
pub fn render_report(name: &str, pkg: &LightSectorPackage, format: ReportFormat) -> Result<String> {
    Ok(ReportDocument::build(name, pkg)?.render(format))
}
