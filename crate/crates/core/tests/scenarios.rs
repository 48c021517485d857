use std::path::PathBuf;

use lightsector::atoms::blockwise_atom_splitting;
use lightsector::blocks::BlockDecomposition;
use lightsector::builtins::{builtin_by_name, BuiltinParams, BUILTIN_NAMES};
use lightsector::package::{AtomSide, RelationCollapse};
use lightsector::report::{render_report, ReportFormat};
use lightsector::scenario::parse_scenario;
use lightsector::{classify, verify_block_reduced_structure, Rational};

fn scenarios_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn shipped(name: &str) -> String {
    std::fs::read_to_string(scenarios_dir().join(format!("{name}.scenario"))).unwrap()
}

#[test]
fn shipped_files_match_builtins() {
    for name in BUILTIN_NAMES {
        let built = builtin_by_name(name, &BuiltinParams::default()).unwrap();
        let file = parse_scenario(&shipped(name)).unwrap();
        assert_eq!(file, built, "{name}");
    }
}

#[test]
fn a2_machine_report_matches_golden() {
    let s = parse_scenario(&shipped("a2")).unwrap();
    let pkg = s.assemble().unwrap();
    let got = render_report(&s.name, &pkg, ReportFormat::Machine).unwrap();
    let golden = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/a2.json")).unwrap();
    assert_eq!(got, golden);
}

#[test]
fn a2_text_report_mentions_collapse() {
    let s = parse_scenario(&shipped("a2")).unwrap();
    let text = render_report(&s.name, &s.assemble().unwrap(), ReportFormat::Text).unwrap();
    assert!(text.contains("extension: Interacting (collapsed 2→1)"), "{text}");
    assert!(text.contains("== transport realization =="));
}

#[test]
fn four_node_blocks_pass_verification_and_split() {
    let s = parse_scenario(&shipped("four_node_blocks")).unwrap();
    let pkg = s.assemble().unwrap();
    let report = verify_block_reduced_structure(&pkg).unwrap();
    assert!(report.overall);
    let cls = classify(&pkg).unwrap();
    assert_eq!(cls.relation_collapse, RelationCollapse::CollapsedTo { from: 4, to: 2 });
    let residual = cls.residual_interaction.unwrap();
    assert_eq!(residual.verdict, AtomSide::NonSplit);
    assert_eq!(residual.block_clusters, vec![vec![0, 1]]);
}

#[test]
fn blockwise_splitting_on_quintic() {
    let pkg = builtin_by_name("quintic_orbits", &BuiltinParams::default()).unwrap().assemble().unwrap();
    let reduced = pkg.reduced.as_ref().unwrap();
    // <(1,b),(1,c)> = c - b.
    for b in 0..5 {
        for c in 0..5 {
            assert_eq!(reduced.entries()[(b, c)], Rational::from_int(c as i64 - b as i64));
        }
    }
    let report = blockwise_atom_splitting(reduced);
    assert!(!report.is_split);
    assert_eq!(report.clusters, vec![(0..5).collect::<Vec<_>>()]);
    assert_eq!(report.mixing_edges.len(), 10);
}

#[test]
fn blockwise_splitting_on_orthogonal_blocks() {
    let s = parse_scenario(&shipped("a1xa1")).unwrap();
    let inputs = s.inputs().unwrap();
    let pkg = lightsector::assemble(inputs.cycles, inputs.incidence, Some(BlockDecomposition::singletons(2)), None).unwrap();
    let cls = classify(&pkg).unwrap();
    assert_eq!(cls.relation_collapse, RelationCollapse::None);
    let report = blockwise_atom_splitting(pkg.reduced.as_ref().unwrap());
    assert!(report.is_split);
    assert_eq!(report.clusters, vec![vec![0], vec![1]]);
    assert!(verify_block_reduced_structure(&pkg).unwrap().overall);
}

#[test]
fn uneven_quintic_orbits() {
    let params = BuiltinParams {
        orbit_sizes: Some(vec![1, 4, 20, 50, 50]),
        ..Default::default()
    };
    let pkg = builtin_by_name("quintic_orbits", &params).unwrap().assemble().unwrap();
    assert_eq!(pkg.r, 125);
    assert!(verify_block_reduced_structure(&pkg).unwrap().overall);
    let bad = BuiltinParams {
        orbit_sizes: Some(vec![25, 25]),
        ..Default::default()
    };
    assert!(builtin_by_name("quintic_orbits", &bad).is_err());
}

#[test]
fn three_node_verification_requires_separation() {
    let s = parse_scenario(&shipped("three_node")).unwrap();
    let pkg = s.assemble().unwrap();
    let err = verify_block_reduced_structure(&pkg).unwrap_err();
    assert!(matches!(err, lightsector::Error::BlockSeparationRequired(_)), "{err}");
}
