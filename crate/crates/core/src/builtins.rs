//! Built-in model configurations.
//!
//! * `a1xa1`: two orthogonal cycles, trivial incidence. Fully split.
//! * `a2`: two cycles pairing to `lambda`, incidence column `(1, 1)`.
//! * `three_node`: an interacting pair plus an independent node, incidence
//!   blocks `{1,2}`, `{3}`; deliberately not block-separated.
//! * `quintic_orbits`: 125 nodes grouped into orbits, each orbit sharing one
//!   class. Model data for the symmetric 125-node conifold fiber, not
//!   computed geometry.
//! * `one_node`: a single node.
//! * `four_node_blocks`: two blocks of two nodes with classes `e1`, `e2`.

use crate::blocks::{indicator_incidence, BlockDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Matrix, Rational, Vector};
use crate::pairing::PairingSpace;
use crate::scenario::{ints, rational_grid, ScenarioFile, FORMAT_VERSION};

pub const BUILTIN_NAMES: &[&str] = &["a1xa1", "a2", "three_node", "quintic_orbits", "one_node", "four_node_blocks"];

/// Node count of the quintic conifold fiber.
pub const QUINTIC_NODES: usize = 125;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    A1xA1,
    A2 { lambda: Rational },
    ThreeNode { lambda: Rational },
    QuinticOrbits {
        orbit_sizes: Vec<usize>,
        /// One class per orbit, all of one even length; defaults to
        /// `(1, b)` for orbit `b = 0, 1, ...` in the 2-dimensional symplectic
        /// space, so orbits `b` and `c` pair to `c - b`.
        classes: Option<Vec<Vector>>,
    },
    OneNode,
    FourNodeBlocks,
}

/// Optional knobs accepted by [`builtin_by_name`].
#[derive(Clone, Debug, Default)]
pub struct BuiltinParams {
    pub lambda: Option<Rational>,
    pub orbit_sizes: Option<Vec<usize>>,
}

pub fn builtin_by_name(name: &str, params: &BuiltinParams) -> Result<ScenarioFile> {
    let lambda = params.lambda.clone().unwrap_or_else(Rational::one);
    let uses_lambda = matches!(name, "a2" | "three_node");
    if params.lambda.is_some() && !uses_lambda {
        return Err(Error::InvalidParams(format!("{name} takes no lambda")));
    }
    if params.orbit_sizes.is_some() && name != "quintic_orbits" {
        return Err(Error::InvalidParams(format!("{name} takes no orbit sizes")));
    }
    let b = match name {
        "a1xa1" => Builtin::A1xA1,
        "a2" => Builtin::A2 { lambda },
        "three_node" => Builtin::ThreeNode { lambda },
        "quintic_orbits" => Builtin::QuinticOrbits {
            orbit_sizes: params.orbit_sizes.clone().unwrap_or_else(|| vec![25; 5]),
            classes: None,
        },
        "one_node" => Builtin::OneNode,
        "four_node_blocks" => Builtin::FourNodeBlocks,
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown builtin {other:?}; expected one of {}",
                BUILTIN_NAMES.join(", ")
            )))
        }
    };
    builtin_scenario(&b)
}

fn scenario(name: &str, notes: String, space: &PairingSpace, cycles: Vec<Vector>) -> ScenarioFile {
    ScenarioFile {
        format_version: FORMAT_VERSION,
        name: name.to_string(),
        notes: Some(notes),
        dim: space.dim(),
        gram: rational_grid(space.gram()),
        cycles,
        incidence: None,
        incidence_labels: None,
        partition: None,
        corrected_class: None,
    }
}

pub fn builtin_scenario(b: &Builtin) -> Result<ScenarioFile> {
    let s = match b {
        Builtin::A1xA1 => {
            let space = PairingSpace::standard_symplectic(2);
            let mut s = scenario(
                "a1xa1",
                "split two-node model: orthogonal cycles, trivial incidence".into(),
                &space,
                vec![unit_vector(4, 0), unit_vector(4, 2)],
            );
            s.incidence = Some(rational_grid(&Matrix::identity(2)));
            s
        }
        Builtin::A2 { lambda } => {
            if lambda.is_zero() {
                return Err(Error::InvalidParams("a2 needs lambda != 0".into()));
            }
            let space = PairingSpace::standard_symplectic(1);
            let d2: Vector = vec![Rational::zero(), lambda.clone()];
            let mut s = scenario(
                "a2",
                format!("interacting two-node model with lambda_12 = {lambda}"),
                &space,
                vec![unit_vector(2, 0), d2],
            );
            s.incidence = Some(vec![ints(&[1]), ints(&[1])]);
            s
        }
        Builtin::ThreeNode { lambda } => {
            if lambda.is_zero() {
                return Err(Error::InvalidParams("three_node needs lambda != 0".into()));
            }
            let space = PairingSpace::standard_symplectic(2);
            let mut d2 = vec![Rational::zero(); 4];
            d2[1] = lambda.clone();
            let mut s = scenario(
                "three_node",
                format!("three-node block-incidence model with lambda_12 = {lambda}, lambda_13 = lambda_23 = 0"),
                &space,
                vec![unit_vector(4, 0), d2, unit_vector(4, 2)],
            );
            s.incidence = Some(vec![ints(&[1, 0]), ints(&[1, 0]), ints(&[0, 1])]);
            s.partition = Some(vec![vec![1, 2], vec![3]]);
            s
        }
        Builtin::QuinticOrbits { orbit_sizes, classes } => quintic(orbit_sizes, classes.as_deref())?,
        Builtin::OneNode => {
            let space = PairingSpace::standard_symplectic(1);
            let mut s = scenario("one_node", "single-node baseline".into(), &space, vec![unit_vector(2, 0)]);
            s.incidence = Some(vec![ints(&[1])]);
            s.partition = Some(vec![vec![1]]);
            s
        }
        Builtin::FourNodeBlocks => {
            let space = PairingSpace::standard_symplectic(1);
            let (e1, e2) = (unit_vector(2, 0), unit_vector(2, 1));
            let mut s = scenario(
                "four_node_blocks",
                "block-separated: nodes 1,2 share e1 and nodes 3,4 share e2".into(),
                &space,
                vec![e1.clone(), e1, e2.clone(), e2],
            );
            s.incidence = Some(vec![ints(&[1, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[0, 1])]);
            s.partition = Some(vec![vec![1, 2], vec![3, 4]]);
            s
        }
    };
    s.validate().map_err(|e| Error::Internal(e.to_string()))?;
    Ok(s)
}

fn quintic(orbit_sizes: &[usize], classes: Option<&[Vector]>) -> Result<ScenarioFile> {
    if orbit_sizes.is_empty() || orbit_sizes.contains(&0) {
        return Err(Error::InvalidParams("orbit sizes must be positive".into()));
    }
    let total: usize = orbit_sizes.iter().sum();
    if total != QUINTIC_NODES {
        return Err(Error::InvalidParams(format!(
            "orbit sizes sum to {total}, expected {QUINTIC_NODES}"
        )));
    }
    let classes: Vec<Vector> = match classes {
        Some(c) => c.to_vec(),
        None => (0..orbit_sizes.len())
            .map(|b| vec![Rational::one(), Rational::from_int(b as i64)])
            .collect(),
    };
    if classes.len() != orbit_sizes.len() {
        return Err(Error::InvalidParams(format!(
            "{} classes for {} orbits",
            classes.len(),
            orbit_sizes.len()
        )));
    }
    let dim = classes[0].len();
    if !dim.is_multiple_of(2) || classes.iter().any(|c| c.len() != dim) {
        return Err(Error::InvalidParams("classes must share one even length".into()));
    }
    let space = PairingSpace::standard_symplectic(dim / 2);

    let mut cycles = Vec::with_capacity(total);
    let mut blocks = Vec::with_capacity(orbit_sizes.len());
    for (size, class) in orbit_sizes.iter().zip(&classes) {
        let start = cycles.len();
        blocks.push((start..start + size).collect::<Vec<_>>());
        cycles.extend(std::iter::repeat_n(class.clone(), *size));
    }
    let part = BlockDecomposition::new(total, blocks)?;
    let inc = indicator_incidence(&part);

    let sizes: Vec<String> = orbit_sizes.iter().map(ToString::to_string).collect();
    let mut s = scenario(
        "quintic_orbits",
        format!(
            "model data: {total} nodes in symmetry orbits of sizes [{}], one shared class per orbit",
            sizes.join(", ")
        ),
        &space,
        cycles,
    );
    s.incidence = Some(rational_grid(inc.matrix()));
    s.incidence_labels = Some(inc.labels().to_vec());
    s.partition = Some(part.to_one_based());
    Ok(s)
}
