//! Seeded random models for property testing.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{PosetModel, SimplicialModel};
use crate::error::{Error, Result};
use crate::kripke::AtomSet;

fn atom_names(n_atoms: usize) -> Vec<String> {
    (0..n_atoms).map(|i| format!("p{i}")).collect()
}

fn random_valuation(rng: &mut ChaCha8Rng, atoms: &[String]) -> AtomSet {
    let mut v = AtomSet::new();
    if atoms.is_empty() {
        return v;
    }
    v.insert(atoms[rng.gen_range(0..atoms.len())].clone());
    if rng.gen_bool(0.15) {
        v.insert(atoms[rng.gen_range(0..atoms.len())].clone());
    }
    v
}

/// A random abstract simplicial complex on vertices `v0, v1, ...`.
///
/// Random maximal faces of dimension at most `max_dim` are closed under
/// subsets; every vertex is a cell. Each cell carries one random atom from
/// `p0, p1, ...`, occasionally two. Cells are listed by size, then by name.
pub fn random_simplicial_model(
    seed: u64,
    n_vertices: usize,
    max_dim: usize,
    n_atoms: usize,
) -> Result<SimplicialModel> {
    if n_vertices == 0 {
        return Err(Error::InvalidParameters(
            "at least one vertex is required".into(),
        ));
    }
    if max_dim > 8 {
        return Err(Error::InvalidParameters("max_dim must be at most 8".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
    let atoms = atom_names(n_atoms);
    let mut cells: BTreeSet<(usize, Vec<usize>)> = (0..n_vertices).map(|v| (1, vec![v])).collect();
    let faces = rng.gen_range(1..=n_vertices);
    let mut pool: Vec<usize> = (0..n_vertices).collect();
    for _ in 0..faces {
        let size = rng.gen_range(1..=(max_dim + 1).min(n_vertices));
        pool.shuffle(&mut rng);
        let mut face = pool[..size].to_vec();
        face.sort_unstable();
        for mask in 1u32..(1 << size) {
            let sub: Vec<usize> = (0..size)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| face[i])
                .collect();
            cells.insert((sub.len(), sub));
        }
    }
    let cells: Vec<Vec<String>> = cells
        .into_iter()
        .map(|(_, c)| c.iter().map(|&v| vertices[v].clone()).collect())
        .collect();
    let valuation = cells
        .iter()
        .map(|_| random_valuation(&mut rng, &atoms))
        .collect();
    SimplicialModel::new(vertices, cells, valuation, atoms.into_iter().collect())
}

/// A random finite poset on elements `e0, e1, ...` with one or two random
/// atoms per element. Each pair `i < j` is a generating pair `ei ≤ ej` with
/// probability `density`.
pub fn random_poset(seed: u64, n: usize, n_atoms: usize, density: f64) -> Result<PosetModel> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameters(
            "density must lie in [0, 1]".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = atom_names(n_atoms);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    let valuation = (0..n).map(|_| random_valuation(&mut rng, &atoms)).collect();
    PosetModel::from_order(
        (0..n).map(|i| format!("e{i}")).collect(),
        pairs,
        valuation,
        atoms.into_iter().collect(),
    )
}
