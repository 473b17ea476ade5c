//! LTS encodings of poset models, bisimulation partition refinement and
//! the direct weak ±-bisimilarity computation.

use std::collections::{BTreeSet, HashMap};

use crate::complex::PosetModel;
use crate::error::{Error, Result};
use crate::kripke::ReflexiveKripkeModel;
use crate::lts::{Label, Lts};

/// A partition of indexed members into classes.
///
/// Classes are ordered by their least member index, so two partitions of
/// the same members compare equal exactly when they group members alike.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    names: Vec<String>,
}

impl Partition {
    /// Builds a partition from arbitrary block labels, one per member.
    pub fn from_labels<K: Eq + std::hash::Hash>(labels: &[K], names: Vec<String>) -> Self {
        assert_eq!(labels.len(), names.len());
        let mut ids: HashMap<&K, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, k) in labels.iter().enumerate() {
            let next = ids.len();
            let c = *ids.entry(k).or_insert(next);
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(i);
            class_of.push(c);
        }
        Self {
            classes,
            class_of,
            names,
        }
    }

    /// Every member in its own class.
    pub fn discrete(names: Vec<String>) -> Self {
        let labels: Vec<usize> = (0..names.len()).collect();
        Self::from_labels(&labels, names)
    }

    pub fn num_members(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn member_names(&self) -> &[String] {
        &self.names
    }

    /// Lexicographically least member name.
    pub fn class_name(&self, c: usize) -> &str {
        self.classes[c]
            .iter()
            .map(|&i| self.names[i].as_str())
            .min()
            .expect("classes are non-empty")
    }

    /// Member names of class `c`, in member order.
    pub fn class_members(&self, c: usize) -> Vec<&str> {
        self.classes[c]
            .iter()
            .map(|&i| self.names[i].as_str())
            .collect()
    }

    /// Classes as sets of member names, handy for comparisons in tests.
    pub fn named_classes(&self) -> BTreeSet<BTreeSet<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&i| self.names[i].clone()).collect())
            .collect()
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// True if every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.num_members() == coarser.num_members()
            && self.classes.iter().all(|c| {
                c.iter()
                    .all(|&i| coarser.class_of[i] == coarser.class_of[c[0]])
            })
    }

    /// True if the member set given as a membership vector is a union of
    /// classes.
    pub fn is_union_of_classes(&self, set: &[bool]) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&i| set[i] == set[c[0]]))
    }

    /// Pulls a partition of this partition's classes back to its members.
    pub fn pull_back(&self, over_classes: &Partition) -> Result<Partition> {
        if over_classes.num_members() != self.num_classes() {
            return Err(Error::PartitionMismatch(format!(
                "{} classes but the outer partition has {} members",
                self.num_classes(),
                over_classes.num_members()
            )));
        }
        let labels: Vec<usize> = self
            .class_of
            .iter()
            .map(|&c| over_classes.class_of(c))
            .collect();
        Ok(Partition::from_labels(&labels, self.names.clone()))
    }
}

/// The concrete LTS: atoms as self-loops, `tau` and `c` between related
/// cells with equal and different valuations, `d` from a cell to each face.
pub fn encode_concrete(p: &PosetModel) -> Lts {
    let m = p.kripke();
    let mut lts = Lts::new(m.elements().to_vec());
    for w in 0..m.len() {
        for a in m.valuation(w) {
            lts.add(w, Label::Atom(a.clone()), w);
        }
    }
    for (a, b) in m.relation_pairs() {
        let label = if m.valuation(a) == m.valuation(b) {
            Label::Tau
        } else {
            Label::Change
        };
        lts.add(a, label.clone(), b);
        lts.add(b, label, a);
        lts.add(b, Label::Down, a);
    }
    lts
}

/// Connected components of related elements with equal valuations.
pub fn components_same_valuation(p: &PosetModel) -> Partition {
    same_valuation_components(p.kripke())
}

fn same_valuation_components(m: &ReflexiveKripkeModel) -> Partition {
    let n = m.len();
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in m.neighbours(x) {
                if comp[y] == usize::MAX && m.valuation(y) == m.valuation(x) {
                    comp[y] = s;
                    stack.push(y);
                }
            }
        }
    }
    Partition::from_labels(&comp, m.elements().to_vec())
}

/// The abstract LTS over same-valuation components, together with the
/// component partition of the poset elements.
pub fn encode_abstract(p: &PosetModel) -> (Lts, Partition) {
    let m = p.kripke();
    let comps = components_same_valuation(p);
    let states = (0..comps.num_classes())
        .map(|c| comps.class_name(c).to_string())
        .collect();
    let mut lts = Lts::new(states);
    for c in 0..comps.num_classes() {
        let w = comps.class(c)[0];
        let atoms = m.valuation(w).iter().cloned().collect();
        lts.add(c, Label::AtomSet(atoms), c);
    }
    for (a, b) in m.relation_pairs() {
        let (ca, cb) = (comps.class_of(a), comps.class_of(b));
        lts.add(ca, Label::Step, cb);
        lts.add(cb, Label::Step, ca);
        lts.add(cb, Label::Down, ca);
    }
    (lts, comps)
}

type Signature = Vec<(usize, usize)>;

fn refine_until_stable(
    n: usize,
    names: Vec<String>,
    mut signatures: impl FnMut(&[usize]) -> Vec<Signature>,
) -> Partition {
    let mut block = vec![0usize; n];
    let mut count = usize::from(n > 0);
    loop {
        let sigs = signatures(&block);
        let keys: Vec<(usize, &Signature)> = block.iter().copied().zip(sigs.iter()).collect();
        let next = Partition::from_labels(&keys, names.clone());
        if next.num_classes() == count {
            return next;
        }
        count = next.num_classes();
        block = next.class_map().to_vec();
    }
}

/// The largest strong bisimulation.
pub fn strong_partition(l: &Lts) -> Partition {
    let succ = l.successors();
    refine_until_stable(l.num_states(), l.states().to_vec(), |block| {
        succ.iter()
            .map(|out| {
                let mut sig: Signature = out.iter().map(|&(a, t)| (a, block[t])).collect();
                sig.sort_unstable();
                sig.dedup();
                sig
            })
            .collect()
    })
}

/// The largest branching bisimulation, by signature refinement.
///
/// The signature of a state collects `(label, block)` pairs of every
/// transition leaving it or any state reachable from it by `tau` steps
/// inside its own block, except `tau` steps that stay in the block.
pub fn branching_partition(l: &Lts) -> Partition {
    let succ = l.successors();
    let tau = l.label_id(&Label::Tau);
    let n = l.num_states();
    refine_until_stable(n, l.states().to_vec(), |block| {
        let inert = |s: usize, a: usize, t: usize| Some(a) == tau && block[s] == block[t];
        let direct: Vec<Signature> = (0..n)
            .map(|s| {
                let mut sig: Signature = succ[s]
                    .iter()
                    .filter(|&&(a, t)| !inert(s, a, t))
                    .map(|&(a, t)| (a, block[t]))
                    .collect();
                sig.sort_unstable();
                sig.dedup();
                sig
            })
            .collect();
        let inert_succ: Vec<Vec<usize>> = (0..n)
            .map(|s| {
                succ[s]
                    .iter()
                    .filter(|&&(a, t)| inert(s, a, t) && t != s)
                    .map(|&(_, t)| t)
                    .collect()
            })
            .collect();
        let (scc_of, order) = tarjan(&inert_succ);
        // Tarjan emits components after everything they reach.
        let mut scc_sig: Vec<Signature> = vec![Vec::new(); order.len()];
        for (c, members) in order.iter().enumerate() {
            let mut sig: Signature = Vec::new();
            for &s in members {
                sig.extend_from_slice(&direct[s]);
                for &t in &inert_succ[s] {
                    if scc_of[t] != c {
                        sig.extend_from_slice(&scc_sig[scc_of[t]]);
                    }
                }
            }
            sig.sort_unstable();
            sig.dedup();
            scc_sig[c] = sig;
        }
        (0..n).map(|s| scc_sig[scc_of[s]].clone()).collect()
    })
}

/// Strongly connected components in reverse topological order.
fn tarjan(succ: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut scc_of = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let x = stack.pop().expect("tarjan stack");
                        on_stack[x] = false;
                        scc_of[x] = out.len();
                        comp.push(x);
                        if x == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    (scc_of, out)
}

/// The quotient of an LTS by a partition of its states. With
/// `trim_self_tau`, `tau` self-loops of the quotient are dropped.
pub fn quotient_lts(l: &Lts, part: &Partition, trim_self_tau: bool) -> Result<Lts> {
    if part.num_members() != l.num_states() {
        return Err(Error::PartitionMismatch(format!(
            "LTS has {} states, partition has {} members",
            l.num_states(),
            part.num_members()
        )));
    }
    let states = (0..part.num_classes())
        .map(|c| part.class_name(c).to_string())
        .collect();
    let mut q = Lts::new(states);
    for (s, a, t) in l.transitions() {
        let (cs, ct) = (part.class_of(s), part.class_of(t));
        let label = l.label(a).clone();
        if trim_self_tau && cs == ct && label == Label::Tau {
            continue;
        }
        q.add(cs, label, ct);
    }
    Ok(q)
}

/// Weak ±-bisimilarity on a poset model.
pub fn weak_pm_partition(p: &PosetModel) -> Partition {
    weak_pm_partition_kripke(p.kripke())
}

/// Weak ±-bisimilarity computed directly on a reflexive Kripke model.
pub fn weak_pm_partition_kripke(m: &ReflexiveKripkeModel) -> Partition {
    let trace = weak_pm_trace(m);
    Partition::from_labels(
        trace.rounds.last().expect("at least one round"),
        m.elements().to_vec(),
    )
}

/// The sequence of partitions produced by weak ±-refinement. Round 0 groups
/// elements by valuation; each later round splits classes by
/// [`reach_signature`]; the last round is stable.
#[derive(Debug, Clone)]
pub struct RefinementTrace {
    pub rounds: Vec<Vec<usize>>,
}

pub fn weak_pm_trace(m: &ReflexiveKripkeModel) -> RefinementTrace {
    let vals: Vec<&_> = m.valuations().iter().collect();
    let first = Partition::from_labels(&vals, m.elements().to_vec());
    let mut rounds = vec![first.class_map().to_vec()];
    let mut count = first.num_classes();
    loop {
        let block = rounds.last().unwrap();
        let sigs = reach_signatures(m, block);
        let keys: Vec<(usize, &Signature)> = block.iter().copied().zip(sigs.iter()).collect();
        let next = Partition::from_labels(&keys, m.elements().to_vec());
        if next.num_classes() == count {
            return RefinementTrace { rounds };
        }
        count = next.num_classes();
        rounds.push(next.class_map().to_vec());
    }
}

/// For element `w` and partition `block`, the pairs `(cu, cd)` such that a
/// path from `w` stays inside `block(w) ∪ cu` and then steps down to an
/// element of class `cd`.
pub fn reach_signature(m: &ReflexiveKripkeModel, block: &[usize], w: usize) -> Signature {
    reach_signatures(m, block).swap_remove(w)
}

fn reach_signatures(m: &ReflexiveKripkeModel, block: &[usize]) -> Vec<Signature> {
    let n = m.len();
    let k = block.iter().map(|&b| b + 1).max().unwrap_or(0);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &b) in block.iter().enumerate() {
        members[b].push(i);
    }
    // Classes of the faces of each element.
    let down: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut d: Vec<usize> = m.predecessors(v).iter().map(|&x| block[x]).collect();
            d.sort_unstable();
            d.dedup();
            d
        })
        .collect();
    let mut sigs: Vec<Signature> = vec![Vec::new(); n];
    let mut comp = vec![usize::MAX; n];
    #[allow(clippy::needless_range_loop)]
    for b in 0..k {
        for cu in 0..k {
            let inside = |x: usize| block[x] == b || block[x] == cu;
            let mut touched = Vec::new();
            for &s in &members[b] {
                if comp[s] != usize::MAX {
                    continue;
                }
                comp[s] = s;
                touched.push(s);
                let mut stack = vec![s];
                let mut reach: Vec<usize> = Vec::new();
                let mut in_b = Vec::new();
                while let Some(x) = stack.pop() {
                    reach.extend_from_slice(&down[x]);
                    if block[x] == b {
                        in_b.push(x);
                    }
                    for y in m.neighbours(x) {
                        if inside(y) && comp[y] == usize::MAX {
                            comp[y] = s;
                            touched.push(y);
                            stack.push(y);
                        }
                    }
                }
                reach.sort_unstable();
                reach.dedup();
                for x in in_b {
                    sigs[x].extend(reach.iter().map(|&cd| (cu, cd)));
                }
            }
            for x in touched {
                comp[x] = usize::MAX;
            }
        }
    }
    for s in &mut sigs {
        s.sort_unstable();
    }
    sigs
}
