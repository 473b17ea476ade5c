//! Global model checking on finite reflexive Kripke models.
//!
//! `eta` is evaluated with one backward reachability pass per occurrence:
//! the elements of `A = sat(Φ1)` that have a face in `T = sat(Φ2)` are the
//! possible penultimate points, and an element satisfies `eta(Φ1, Φ2)` when
//! it reaches one of them through undirected steps that stay inside `A`.

use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kripke::ReflexiveKripkeModel;
use crate::logic::{Formula, Script};

/// The extension of a formula on a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatSet {
    formula: Formula,
    members: Vec<bool>,
}

impl SatSet {
    pub fn new(formula: Formula, members: Vec<bool>) -> Self {
        Self { formula, members }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.get(i).copied().unwrap_or(false)
    }

    /// Membership vector in element order.
    pub fn as_bools(&self) -> &[bool] {
        &self.members
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .collect()
    }

    /// Member names, in element order.
    pub fn names<'a>(&self, m: &'a ReflexiveKripkeModel) -> Vec<&'a str> {
        self.indices().into_iter().map(|i| m.name(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }
}

/// Evaluates formulas on one model, memoising subformula extensions.
pub struct Checker<'a> {
    model: &'a ReflexiveKripkeModel,
    strict_atoms: bool,
    memo: HashMap<Formula, Rc<Vec<bool>>>,
}

impl<'a> Checker<'a> {
    pub fn new(model: &'a ReflexiveKripkeModel) -> Self {
        Self {
            model,
            strict_atoms: false,
            memo: HashMap::new(),
        }
    }

    /// When set, atoms outside the model's universe are an error instead of
    /// evaluating to the empty set.
    pub fn strict_atoms(mut self, strict: bool) -> Self {
        self.strict_atoms = strict;
        self
    }

    pub fn sat(&mut self, f: &Formula) -> Result<SatSet> {
        let members = self.eval(f)?;
        Ok(SatSet::new(f.clone(), members.as_ref().clone()))
    }

    fn eval(&mut self, f: &Formula) -> Result<Rc<Vec<bool>>> {
        if let Some(hit) = self.memo.get(f) {
            return Ok(Rc::clone(hit));
        }
        let m = self.model;
        let n = m.len();
        let out: Vec<bool> = match f {
            Formula::Top => vec![true; n],
            Formula::Atom(p) => {
                if self.strict_atoms && !m.atoms().contains(p) {
                    return Err(Error::UnknownAtom(p.clone()));
                }
                (0..n).map(|i| m.valuation(i).contains(p)).collect()
            }
            Formula::Not(x) => self.eval(x)?.iter().map(|b| !b).collect(),
            Formula::And(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.iter().zip(b.iter()).map(|(x, y)| *x && *y).collect()
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.iter().zip(b.iter()).map(|(x, y)| *x || *y).collect()
            }
            Formula::Eta(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                eta_set(m, &a, &b)
            }
            Formula::Gamma(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let s = eta_set(m, &a, &b);
                (0..n)
                    .map(|w| m.successors(w).iter().any(|&u| s[u]))
                    .collect()
            }
            Formula::Diamond(x) => {
                let x = self.eval(x)?;
                (0..n)
                    .map(|w| m.successors(w).iter().any(|&u| x[u]))
                    .collect()
            }
        };
        let out = Rc::new(out);
        self.memo.insert(f.clone(), Rc::clone(&out));
        Ok(out)
    }
}

/// Elements of `a` that reach, inside `a`, an element with a face in `t`.
fn eta_set(m: &ReflexiveKripkeModel, a: &[bool], t: &[bool]) -> Vec<bool> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if a[v] && m.predecessors(v).iter().any(|&x| t[x]) {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for u in m.neighbours(v) {
            if a[u] && !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Extension of `f` on `m`. Atoms unknown to the model are empty.
pub fn sat(m: &ReflexiveKripkeModel, f: &Formula) -> SatSet {
    Checker::new(m)
        .sat(f)
        .expect("non-strict evaluation is total")
}

/// Like [`sat`], but unknown atoms are an error.
pub fn sat_strict(m: &ReflexiveKripkeModel, f: &Formula) -> Result<SatSet> {
    Checker::new(m).strict_atoms(true).sat(f)
}

/// Reference semantics for the `eta` fragment by explicit path search.
///
/// For every `eta` node and every start point, a breadth-first search over
/// path prefixes looks for a path of length at most `bound` whose first
/// step goes up (or stays), whose last step goes down (or stays), whose
/// non-final points satisfy the first argument and whose final point
/// satisfies the second. Subformulas are evaluated the same way.
pub fn sat_eta_path_oracle(m: &ReflexiveKripkeModel, f: &Formula, bound: usize) -> Result<SatSet> {
    if bound < 2 {
        return Err(Error::BoundTooSmall(bound));
    }
    if !f.is_eta_pure() {
        return Err(Error::NotEtaPure(f.to_string()));
    }
    Ok(SatSet::new(f.clone(), oracle(m, f, bound)))
}

fn oracle(m: &ReflexiveKripkeModel, f: &Formula, bound: usize) -> Vec<bool> {
    let n = m.len();
    match f {
        Formula::Top => vec![true; n],
        Formula::Atom(p) => (0..n).map(|i| m.valuation(i).contains(p)).collect(),
        Formula::Not(x) => oracle(m, x, bound).into_iter().map(|b| !b).collect(),
        Formula::And(a, b) => {
            let (a, b) = (oracle(m, a, bound), oracle(m, b, bound));
            a.iter().zip(&b).map(|(x, y)| *x && *y).collect()
        }
        Formula::Or(a, b) => {
            let (a, b) = (oracle(m, a, bound), oracle(m, b, bound));
            a.iter().zip(&b).map(|(x, y)| *x || *y).collect()
        }
        Formula::Eta(a, b) => {
            let (a, t) = (oracle(m, a, bound), oracle(m, b, bound));
            (0..n).map(|w| path_exists(m, w, &a, &t, bound)).collect()
        }
        Formula::Gamma(..) | Formula::Diamond(_) => unreachable!("checked by caller"),
    }
}

fn path_exists(m: &ReflexiveKripkeModel, w: usize, a: &[bool], t: &[bool], bound: usize) -> bool {
    if !a[w] {
        return false;
    }
    // depth[x]: least position at which x can occur as a non-final point.
    let mut depth = vec![usize::MAX; m.len()];
    let mut queue = VecDeque::new();
    for &x in m.successors(w) {
        if a[x] && depth[x] == usize::MAX {
            depth[x] = 1;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        let k = depth[x];
        if k < bound && m.predecessors(x).iter().any(|&y| t[y]) {
            return true;
        }
        if k + 1 >= bound {
            continue;
        }
        for y in m.neighbours(x) {
            if a[y] && depth[y] == usize::MAX {
                depth[y] = k + 1;
                queue.push_back(y);
            }
        }
    }
    false
}

/// Evaluates every `save` directive of a script, in script order.
pub fn check_script(m: &ReflexiveKripkeModel, s: &Script) -> IndexMap<String, SatSet> {
    check_script_with(m, s, false).expect("non-strict evaluation is total")
}

/// [`check_script`] with optional strict atom checking.
pub fn check_script_with(
    m: &ReflexiveKripkeModel,
    s: &Script,
    strict_atoms: bool,
) -> Result<IndexMap<String, SatSet>> {
    let mut checker = Checker::new(m).strict_atoms(strict_atoms);
    let mut out = IndexMap::new();
    for (name, f) in &s.saves {
        out.insert(name.clone(), checker.sat(f)?);
    }
    Ok(out)
}

#[derive(Serialize)]
struct ResultFile<'a> {
    model: &'a str,
    results: &'a IndexMap<String, Vec<bool>>,
}

/// The result file: one boolean vector per save name, in cell order.
pub fn result_file_json(model_path: &str, results: &IndexMap<String, Vec<bool>>) -> String {
    let mut text = serde_json::to_string_pretty(&ResultFile {
        model: model_path,
        results,
    })
    .expect("result maps serialise");
    text.push('\n');
    text
}
