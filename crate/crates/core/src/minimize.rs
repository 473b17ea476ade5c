//! Minimal models, answer back-mapping and distinguishing formulas.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::bisim::{
    branching_partition, encode_concrete, quotient_lts, reach_signature, weak_pm_trace, Partition,
};
use crate::checker::SatSet;
use crate::complex::PosetModel;
use crate::error::{Error, Result};
use crate::kripke::ReflexiveKripkeModel;
use crate::logic::Formula;
use crate::lts::Label;

/// The quotient of a poset model by logical equivalence.
#[derive(Debug, Clone)]
pub struct MinimalModel {
    kripke: ReflexiveKripkeModel,
    partition: Partition,
}

impl MinimalModel {
    /// The minimal model; element `c` is class `c` of [`Self::partition`]
    /// and is named after its least member.
    pub fn kripke(&self) -> &ReflexiveKripkeModel {
        &self.kripke
    }

    /// The partition of the source poset elements.
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn num_classes(&self) -> usize {
        self.partition.num_classes()
    }

    pub fn relation(&self) -> BTreeSet<(usize, usize)> {
        self.kripke.relation_pairs().collect()
    }

    /// The minimal-model file.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Class<'a> {
            id: usize,
            name: &'a str,
            members: Vec<&'a str>,
            atoms: Vec<&'a str>,
        }
        #[derive(Serialize)]
        struct File<'a> {
            classes: Vec<Class<'a>>,
            relation: Vec<[usize; 2]>,
        }
        let part = &self.partition;
        let file = File {
            classes: (0..part.num_classes())
                .map(|c| Class {
                    id: c,
                    name: part.class_name(c),
                    members: part.class_members(c),
                    atoms: self
                        .kripke
                        .valuation(c)
                        .iter()
                        .map(String::as_str)
                        .collect(),
                })
                .collect(),
            relation: self.kripke.relation_pairs().map(|(a, b)| [a, b]).collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("serialisable");
        text.push('\n');
        text
    }

    /// The classes file: class ids, names and members, and the class of
    /// every cell in cell order.
    pub fn classes_json(&self) -> String {
        let part = &self.partition;
        let v = serde_json::json!({
            "classes": (0..part.num_classes()).map(|c| serde_json::json!({
                "id": c,
                "name": part.class_name(c),
                "members": part.class_members(c),
            })).collect::<Vec<_>>(),
            "cell_class": part.class_map(),
        });
        let mut text = serde_json::to_string_pretty(&v).expect("serialisable");
        text.push('\n');
        text
    }
}

/// Minimises a poset model through branching bisimilarity of its concrete
/// LTS. `R_min(c1, c2)` holds when some member of `c1` is a face of some
/// member of `c2`.
pub fn minimal_model(p: &PosetModel) -> MinimalModel {
    let partition = branching_partition(&encode_concrete(p));
    minimal_model_from(p, partition)
}

/// Builds the quotient Kripke model for a given partition of `p`.
pub fn minimal_model_from(p: &PosetModel, partition: Partition) -> MinimalModel {
    let m = p.kripke();
    let k = partition.num_classes();
    let names = (0..k)
        .map(|c| partition.class_name(c).to_string())
        .collect();
    let relation: BTreeSet<(usize, usize)> = m
        .relation_pairs()
        .map(|(a, b)| (partition.class_of(a), partition.class_of(b)))
        .collect();
    let valuation = (0..k)
        .map(|c| m.valuation(partition.class(c)[0]).clone())
        .collect();
    let kripke = ReflexiveKripkeModel::new(names, relation, valuation, m.atoms().clone())
        .expect("class names are unique and the relation is reflexive");
    MinimalModel { kripke, partition }
}

/// `R_min` recovered from the `d` transitions of the quotient LTS:
/// `R_min(c1, c2)` iff `c2 -d-> c1`.
pub fn rmin_via_quotient_d(p: &PosetModel) -> BTreeSet<(usize, usize)> {
    let l = encode_concrete(p);
    let part = branching_partition(&l);
    let q = quotient_lts(&l, &part, false).expect("partition of the same LTS");
    q.transitions()
        .filter(|t| q.label(t.1) == &Label::Down)
        .map(|(src, _, dst)| (dst, src))
        .collect()
}

/// Per-cell answers from a set of minimal-model classes.
pub fn map_back(mm: &MinimalModel, class_result: &SatSet) -> Result<Vec<bool>> {
    let bools = class_result.as_bools();
    if let Some(extra) = (mm.num_classes()..bools.len()).find(|&c| bools[c]) {
        return Err(Error::UnknownClass(extra));
    }
    map_back_ids(mm, &class_result.indices())
}

/// Per-cell answers from a list of class ids.
pub fn map_back_ids(mm: &MinimalModel, classes: &[usize]) -> Result<Vec<bool>> {
    let mut chosen = vec![false; mm.num_classes()];
    for &c in classes {
        *chosen.get_mut(c).ok_or(Error::UnknownClass(c))? = true;
    }
    Ok(mm
        .partition
        .class_map()
        .iter()
        .map(|&c| chosen[c])
        .collect())
}

/// A formula true at exactly one of `a` and `b`, or `None` when the two
/// elements are logically equivalent.
pub fn distinguishing_formula(p: &PosetModel, a: &str, b: &str) -> Result<Option<Formula>> {
    let (a, b) = (p.index_of(a)?, p.index_of(b)?);
    Ok(distinguishing_formula_kripke(p.kripke(), a, b))
}

/// [`distinguishing_formula`] on element indices of any reflexive model.
pub fn distinguishing_formula_kripke(
    m: &ReflexiveKripkeModel,
    a: usize,
    b: usize,
) -> Option<Formula> {
    let trace = weak_pm_trace(m);
    let last = trace.rounds.last().expect("at least one round");
    if last[a] == last[b] {
        return None;
    }
    if m.valuation(a) != m.valuation(b) {
        let atom = m
            .valuation(a)
            .symmetric_difference(m.valuation(b))
            .next()
            .expect("valuations differ");
        return Some(Formula::atom(atom.clone()));
    }
    let r = (0..trace.rounds.len() - 1)
        .find(|&r| trace.rounds[r + 1][a] != trace.rounds[r + 1][b])
        .expect("a split separates the pair");
    let mut chars = Characteristic::new(m, &trace.rounds);
    Some(chars.separator(r, a, b))
}

/// Characteristic formulas of the classes of each refinement round.
struct Characteristic<'a> {
    model: &'a ReflexiveKripkeModel,
    rounds: &'a [Vec<usize>],
    memo: HashMap<(usize, usize), Formula>,
}

impl<'a> Characteristic<'a> {
    fn new(model: &'a ReflexiveKripkeModel, rounds: &'a [Vec<usize>]) -> Self {
        Self {
            model,
            rounds,
            memo: HashMap::new(),
        }
    }

    fn representative(&self, round: usize, class: usize) -> usize {
        self.rounds[round]
            .iter()
            .position(|&c| c == class)
            .expect("class has a member")
    }

    /// True at members of class `class` of round `round` and nowhere else.
    fn chi(&mut self, round: usize, class: usize) -> Formula {
        if let Some(f) = self.memo.get(&(round, class)) {
            return f.clone();
        }
        let w = self.representative(round, class);
        let f = if round == 0 {
            let m = self.model;
            m.atoms()
                .iter()
                .map(|p| {
                    if m.valuation(w).contains(p) {
                        Formula::atom(p.clone())
                    } else {
                        Formula::not(Formula::atom(p.clone()))
                    }
                })
                .reduce(Formula::and)
                .unwrap_or(Formula::Top)
        } else {
            let parent = self.rounds[round - 1][w];
            let siblings: BTreeSet<usize> = (0..self.model.len())
                .filter(|&x| self.rounds[round - 1][x] == parent)
                .map(|x| self.rounds[round][x])
                .filter(|&c| c != class)
                .collect();
            let mut f = self.chi(round - 1, parent);
            for s in siblings {
                let other = self.representative(round, s);
                f = Formula::and(f, self.separator(round - 1, w, other));
            }
            f
        };
        self.memo.insert((round, class), f.clone());
        f
    }

    /// For `a`, `b` in one class of round `round` but different classes of
    /// the next round: a formula true at `a` and false at `b`.
    fn separator(&mut self, round: usize, a: usize, b: usize) -> Formula {
        let block = &self.rounds[round];
        let sa = reach_signature(self.model, block, a);
        let sb = reach_signature(self.model, block, b);
        let only_a = sa.iter().find(|x| sb.binary_search(x).is_err());
        let (&(cu, cd), positive) = match only_a {
            Some(x) => (x, true),
            None => (
                sb.iter()
                    .find(|x| sa.binary_search(x).is_err())
                    .expect("signatures differ"),
                false,
            ),
        };
        let home = block[a];
        let mut within = self.chi(round, home);
        if cu != home {
            within = Formula::or(within, self.chi(round, cu));
        }
        let f = Formula::eta(within, self.chi(round, cd));
        if positive {
            f
        } else {
            Formula::not(f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::sat;
    use crate::complex::{cell_poset, load_simplicial_model};
    use crate::fixtures;

    fn poset(doc: &str) -> PosetModel {
        cell_poset(&load_simplicial_model(doc.as_bytes()).unwrap())
    }

    fn class_by_member(mm: &MinimalModel, p: &PosetModel, name: &str) -> usize {
        mm.partition().class_of(p.index_of(name).unwrap())
    }

    #[test]
    fn segment3_minimal_model() {
        let p = poset(fixtures::SEGMENT3);
        let mm = minimal_model(&p);
        assert_eq!(mm.num_classes(), 2);
        let red = class_by_member(&mm, &p, "D");
        let blue = class_by_member(&mm, &p, "E");
        let expected: BTreeSet<_> = [(red, red), (blue, blue), (blue, red)]
            .into_iter()
            .collect();
        assert_eq!(mm.relation(), expected);
        assert_eq!(rmin_via_quotient_d(&p), expected);
        assert_eq!(mm.kripke().name(red), "D");
        assert!(mm.kripke().valuation(red).contains("red"));

        let only_red = SatSet::new(Formula::Top, (0..2).map(|c| c == red).collect());
        assert_eq!(
            map_back(&mm, &only_red).unwrap(),
            [true, false, false, true, false]
        );
        assert_eq!(map_back_ids(&mm, &[]).unwrap(), [false; 5]);
        assert_eq!(map_back_ids(&mm, &[0, 1]).unwrap(), [true; 5]);
        assert!(matches!(
            map_back_ids(&mm, &[2]),
            Err(Error::UnknownClass(2))
        ));
        let too_long = SatSet::new(Formula::Top, vec![false, false, true]);
        assert!(matches!(
            map_back(&mm, &too_long),
            Err(Error::UnknownClass(2))
        ));
    }

    #[test]
    fn strip4_minimal_relation() {
        let p = poset(fixtures::STRIP4);
        let mm = minimal_model(&p);
        assert_eq!(mm.num_classes(), 4);
        let c = |n: &str| class_by_member(&mm, &p, n);
        let (c1, c2, c3, c4) = (c("A"), c("B"), c("D"), c("C-D-E"));
        let r = mm.relation();
        for pair in [(c3, c2), (c2, c3), (c3, c3), (c1, c2), (c2, c4)] {
            assert!(r.contains(&pair), "{pair:?}");
        }
        assert!(!r.contains(&(c1, c4)));
        assert_eq!(rmin_via_quotient_d(&p), r);
    }

    #[test]
    fn triangle_minimal_relation_is_full() {
        let p = poset(fixtures::TRIANGLE_ABC);
        let mm = minimal_model(&p);
        assert_eq!(mm.relation().len(), 4);
    }

    #[test]
    fn single_vertex_relation() {
        let p = poset(fixtures::SINGLE_VERTEX);
        assert_eq!(rmin_via_quotient_d(&p), [(0, 0)].into_iter().collect());
    }

    #[test]
    fn strip4_distinguishing_formulas() {
        let p = poset(fixtures::STRIP4);
        let f = distinguishing_formula(&p, "A", "D").unwrap().unwrap();
        let s = sat(p.kripke(), &f);
        assert_ne!(
            s.contains(p.index_of("A").unwrap()),
            s.contains(p.index_of("D").unwrap())
        );
        assert!(f.is_eta_pure());
        assert_eq!(distinguishing_formula(&p, "E", "D-E-F").unwrap(), None);
        assert_eq!(distinguishing_formula(&p, "A", "A").unwrap(), None);
        assert!(distinguishing_formula(&p, "A", "Z").is_err());
    }

    #[test]
    fn every_pair_on_fixtures() {
        for (_, doc) in fixtures::ALL {
            let p = poset(doc);
            let part = minimal_model(&p).partition().clone();
            for a in 0..p.len() {
                for b in 0..p.len() {
                    match distinguishing_formula_kripke(p.kripke(), a, b) {
                        None => assert!(part.same_class(a, b)),
                        Some(f) => {
                            let s = sat(p.kripke(), &f);
                            assert_ne!(s.contains(a), s.contains(b), "{f}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_files() {
        let p = poset(fixtures::SEGMENT3);
        let mm = minimal_model(&p);
        let v: serde_json::Value = serde_json::from_str(&mm.to_json()).unwrap();
        assert_eq!(v["classes"][0]["name"], "D");
        assert_eq!(v["classes"][0]["members"], serde_json::json!(["D", "D-E"]));
        assert_eq!(v["classes"][0]["atoms"], serde_json::json!(["red"]));
        assert_eq!(v["relation"].as_array().unwrap().len(), 3);
        let c: serde_json::Value = serde_json::from_str(&mm.classes_json()).unwrap();
        assert_eq!(c["classes"].as_array().unwrap().len(), 2);
        assert_eq!(c["cell_class"], serde_json::json!([0, 1, 1, 0, 1]));
    }
}
