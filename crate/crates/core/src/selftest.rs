//! Randomized invariant suite behind `lightsector selftest`. Seeded, so every
//! run checks the same instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atoms::atom_splitting;
use crate::blocks::{indicator_incidence, BlockDecomposition};
use crate::error::Result;
use crate::linalg::{kernel, Matrix, Rational, Vector};
use crate::package::{assemble, classify, verify_block_reduced_structure, AtomSide, TransportSide};
use crate::pairing::{CycleConfiguration, PairingSpace};
use crate::transport::{all_operators, commutator, commutator_closed_form, interaction_matrix, TransportOperator};
use crate::verify::VerificationReport;

pub const DEFAULT_SEED: u64 = 0x6c69_6768_7473;

fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn random_vector(rng: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// A random skew form of dimension `n`, possibly degenerate.
pub fn random_skew_space(rng: &mut impl Rng, n: usize) -> PairingSpace {
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let x = if rng.gen_bool(0.3) { Rational::zero() } else { small_rational(rng) };
            g[(j, i)] = -&x;
            g[(i, j)] = x;
        }
    }
    PairingSpace::new(g).expect("constructed skew")
}

/// A random partition of `{0..r}` into at most `max_blocks` nonempty blocks.
pub fn random_partition(rng: &mut impl Rng, r: usize) -> BlockDecomposition {
    let mut nodes: Vec<usize> = (0..r).collect();
    nodes.shuffle(rng);
    let b = rng.gen_range(1..=r.max(1));
    let mut blocks = vec![Vec::new(); b];
    for (slot, &k) in nodes.iter().enumerate() {
        let target = if slot < b { slot } else { rng.gen_range(0..b) };
        blocks[target].push(k);
    }
    blocks.retain(|blk| !blk.is_empty());
    BlockDecomposition::new(r, blocks).expect("random blocks partition the nodes")
}

/// A block-separated configuration: random classes in a standard symplectic
/// space, duplicated across each block.
pub fn random_block_separated(
    rng: &mut impl Rng,
    max_r: usize,
    max_g: usize,
) -> (CycleConfiguration, BlockDecomposition) {
    let r = rng.gen_range(1..=max_r);
    let g = rng.gen_range(1..=max_g);
    let space = PairingSpace::standard_symplectic(g);
    let part = random_partition(rng, r);
    // A third of the time force pairwise-orthogonal classes (isotropic span).
    let isotropic = rng.gen_bool(1.0 / 3.0);
    let classes: Vec<Vector> = (0..part.len())
        .map(|_| {
            let mut v = random_vector(rng, 2 * g);
            if isotropic {
                for k in 0..g {
                    v[2 * k + 1] = Rational::zero();
                }
            }
            v
        })
        .collect();
    let mut cycles = vec![Vec::new(); r];
    for (block, class) in part.blocks().iter().zip(&classes) {
        for &k in block {
            cycles[k] = class.clone();
        }
    }
    (CycleConfiguration::new(space, cycles).expect("lengths match"), part)
}

fn transport_invariants(op: &TransportOperator, space: &PairingSpace, delta: &[Rational], probe: &[Rational]) -> Result<bool> {
    let n = op.dim();
    let nsq_zero = op.n_matrix.mul(&op.n_matrix)?.is_zero();
    let rank_ok = op.rank() <= 1;
    let inverse_ok = op.t_matrix.mul(&op.inverse())? == Matrix::identity(n);
    let applied = op.n_matrix.mul_vec(probe)?;
    let c = space.pair(probe, delta)?;
    let expected: Vector = delta.iter().map(|d| &c * d).collect();
    Ok(nsq_zero && rank_ok && inverse_ok && applied == expected)
}

/// Runs `rounds` randomized instances of each invariant family.
pub fn run(seed: u64, rounds: usize) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new();

    let mut ok = 0;
    for _ in 0..rounds {
        let n = rng.gen_range(1..=6);
        let space = random_skew_space(&mut rng, n);
        let delta = random_vector(&mut rng, n);
        let probe = random_vector(&mut rng, n);
        let op = TransportOperator::for_class(&space, &delta, 0)?;
        ok += usize::from(transport_invariants(&op, &space, &delta, &probe)?);
    }
    report.push_eq("transport: N^2 = 0, rank N <= 1, T T^-1 = I, N(a) = <a,d> d", rounds, ok);

    let (mut closed_ok, mut crit_ok, mut lin_ok) = (0, 0, 0);
    for _ in 0..rounds {
        let n = rng.gen_range(1..=5);
        let r = rng.gen_range(0..=5);
        let space = random_skew_space(&mut rng, n);
        let cycles: Vec<Vector> = (0..r).map(|_| random_vector(&mut rng, n)).collect();
        let cfg = CycleConfiguration::new(space.clone(), cycles)?;
        let ops = all_operators(&cfg)?;
        let mut all_closed = true;
        let mut all_zero = true;
        for i in 0..r {
            for j in 0..r {
                let m = commutator(&ops[i], &ops[j])?;
                all_zero &= m.is_zero();
                all_closed &= m == commutator_closed_form(&space, &cfg.cycles()[i], &cfg.cycles()[j])?;
            }
        }
        closed_ok += usize::from(all_closed);
        let lambda = interaction_matrix(&cfg);
        let atom = atom_splitting(&lambda);
        let singletons = atom.clusters.iter().all(|c| c.len() == 1);
        let consistent = (lambda.entries().is_zero() == all_zero) && (atom.is_split == all_zero) && (singletons == atom.is_split);
        crit_ok += usize::from(consistent);

        let m = Matrix::from_rows(cfg.cycles(), n)?;
        lin_ok += usize::from(m.rank() + kernel(&m).dim() == n);
    }
    report.push_eq("transport: commutator matches closed form", rounds, closed_ok);
    report.push_eq("criteria: Lambda = 0 iff commuting iff atom split iff singleton clusters", rounds, crit_ok);
    report.push_eq("linalg: rank + nullity = cols", rounds, lin_ok);

    let mut thm_ok = 0;
    let mut cls_ok = 0;
    for _ in 0..rounds {
        let (cfg, part) = random_block_separated(&mut rng, 12, 6);
        let inc = indicator_incidence(&part);
        let pkg = assemble(cfg, Some(inc), Some(part), None)?;
        thm_ok += usize::from(verify_block_reduced_structure(&pkg)?.overall);
        let cls = classify(&pkg)?;
        cls_ok += usize::from((cls.transport_side == TransportSide::Commuting) == (cls.atom_side == AtomSide::Split));
    }
    report.push_eq("blocks: block-reduced structure checks on block-separated instances", rounds, thm_ok);
    report.push_eq("package: transport verdict agrees with atom verdict", rounds, cls_ok);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_run_passes() {
        let report = run(DEFAULT_SEED, 20).unwrap();
        assert!(report.overall, "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn partitions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for r in 1..10 {
            let p = random_partition(&mut rng, r);
            assert_eq!(p.node_count(), r);
        }
    }
}
