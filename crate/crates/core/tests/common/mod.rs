#![allow(dead_code)]

use std::collections::VecDeque;

use polymin::random::{random_poset, random_simplicial_model};
use polymin::{cell_poset, load_simplicial_model, Partition, PosetModel, ReflexiveKripkeModel};

pub fn fixture_posets() -> Vec<(&'static str, PosetModel)> {
    polymin::fixtures::ALL
        .iter()
        .map(|(name, doc)| {
            (
                *name,
                cell_poset(&load_simplicial_model(doc.as_bytes()).unwrap()),
            )
        })
        .collect()
}

/// A random poset model with at most 12 elements and at most 3 atoms.
/// Even seeds give general posets, odd seeds cell posets of small complexes.
pub fn random_model(seed: u64) -> PosetModel {
    let atoms = 1 + (seed / 2 % 3) as usize;
    if seed.is_multiple_of(2) {
        let n = 1 + (seed / 6 % 12) as usize;
        let density = [0.15, 0.3, 0.5][(seed / 72 % 3) as usize];
        random_poset(seed, n, atoms, density).unwrap()
    } else {
        let mut s = seed;
        loop {
            let m = random_simplicial_model(s, 3 + (s % 2) as usize, 2, atoms).unwrap();
            if m.len() <= 12 {
                return cell_poset(&m);
            }
            s = s.wrapping_add(1_000_003);
        }
    }
}

pub fn atom_list(p: &PosetModel) -> Vec<String> {
    let mut atoms: Vec<String> = p.atoms().iter().cloned().collect();
    if atoms.is_empty() {
        atoms.push("p0".into());
    }
    atoms
}

/// Is there a path from `w` whose first step goes up, whose last step goes
/// down, with non-final points in `inner` and final point in `last`?
fn pm_path(m: &ReflexiveKripkeModel, w: usize, inner: &[bool], last: &[bool]) -> bool {
    if !inner[w] {
        return false;
    }
    let n = m.len();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &x in m.successors(w) {
        if inner[x] && !seen[x] {
            seen[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        if m.predecessors(x).iter().any(|&y| last[y]) {
            return true;
        }
        for y in m.successors(x).iter().chain(m.predecessors(x)) {
            if inner[*y] && !seen[*y] {
                seen[*y] = true;
                queue.push_back(*y);
            }
        }
    }
    false
}

/// The largest weak ±-bisimulation, computed as a relation: start from all
/// pairs with equal valuation and delete pairs violating the transfer
/// condition until nothing changes.
pub fn weak_pm_relation(p: &PosetModel) -> Partition {
    let m = p.kripke();
    let n = m.len();
    let mut z: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| m.valuation(a) == m.valuation(b)).collect())
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for w1 in 0..n {
            for w2 in 0..n {
                if !z[w1][w2] {
                    continue;
                }
                let mut ok = true;
                'outer: for u1 in m.successors(w1).iter().chain(m.predecessors(w1)) {
                    for &d1 in m.predecessors(*u1) {
                        let inner: Vec<bool> = (0..n).map(|x| z[w1][x] || z[*u1][x]).collect();
                        if !pm_path(m, w2, &inner, &z[d1]) {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                if !ok {
                    z[w1][w2] = false;
                    z[w2][w1] = false;
                    changed = true;
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| z[a][b]).unwrap()).collect();
    Partition::from_labels(&labels, m.elements().to_vec())
}
