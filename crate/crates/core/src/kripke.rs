//! Finite reflexive Kripke models.
//!
//! Both cell poset models and minimal models are evaluated through this
//! type. The accessibility relation is stored as sorted successor and
//! predecessor lists; the undirected step relation used by reachability is
//! the union of the two.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A set of atom names.
pub type AtomSet = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexiveKripkeModel {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    valuation: Vec<AtomSet>,
    atoms: AtomSet,
}

impl ReflexiveKripkeModel {
    /// Builds a model from element names, relation pairs `(from, to)` given
    /// as element indices, and a per-element valuation.
    ///
    /// The atom universe is `atoms` extended with every atom used in
    /// `valuation`. Fails if some element lacks its reflexive pair.
    pub fn new(
        elements: Vec<String>,
        relation: impl IntoIterator<Item = (usize, usize)>,
        valuation: Vec<AtomSet>,
        atoms: AtomSet,
    ) -> Result<Self> {
        let n = elements.len();
        if valuation.len() != n {
            return Err(Error::PartitionMismatch(format!(
                "{} elements but {} valuation entries",
                n,
                valuation.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in elements.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateCell(name.clone()));
            }
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (a, b) in relation {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            succ[a].push(b);
            pred[b].push(a);
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        for (i, s) in succ.iter().enumerate() {
            if s.binary_search(&i).is_err() {
                return Err(Error::NotReflexive(elements[i].clone()));
            }
        }
        let mut atoms = atoms;
        for v in &valuation {
            atoms.extend(v.iter().cloned());
        }
        Ok(Self {
            elements,
            index,
            succ,
            pred,
            valuation,
            atoms,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Elements `v` with `R(i, v)`, sorted.
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    /// Elements `v` with `R(v, i)`, sorted.
    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    /// One undirected step: `R(i, v)` or `R(v, i)`. May repeat elements.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[i].iter().chain(self.pred[i].iter()).copied()
    }

    pub fn valuation(&self, i: usize) -> &AtomSet {
        &self.valuation[i]
    }

    pub fn valuations(&self) -> &[AtomSet] {
        &self.valuation
    }

    /// The atom universe of the model.
    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    /// All pairs of the relation in lexicographic order.
    pub fn relation_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    pub fn relation_size(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> AtomSet {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rejects_missing_reflexive_pair() {
        let err = ReflexiveKripkeModel::new(
            vec!["a".into(), "b".into()],
            [(0, 0), (0, 1)],
            vec![set(&[]), set(&[])],
            set(&[]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotReflexive(ref e) if e == "b"));
    }

    #[test]
    fn universe_includes_used_atoms() {
        let m =
            ReflexiveKripkeModel::new(vec!["a".into()], [(0, 0)], vec![set(&["p"])], set(&["q"]))
                .unwrap();
        assert_eq!(m.atoms(), &set(&["p", "q"]));
        assert!(m.related(0, 0));
        assert_eq!(m.index_of("a").unwrap(), 0);
        assert!(m.index_of("zz").is_err());
    }
}
