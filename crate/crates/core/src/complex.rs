//! Abstract simplicial complexes with per-cell valuations, and their cell
//! posets.
//!
//! A cell is identified with the set of its vertices. Only closure under
//! faces is enforced; coordinates, when present, are carried along untouched.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kripke::{AtomSet, ReflexiveKripkeModel};

/// Vertex identifier as it may appear in a model file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum VertexId {
    Int(i64),
    Str(String),
}

impl VertexId {
    fn into_string(self) -> String {
        match self {
            VertexId::Int(i) => i.to_string(),
            VertexId::Str(s) => s,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CellEntry {
    vertices: Vec<VertexId>,
    #[serde(default)]
    atoms: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelFile {
    atoms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<VertexId>>,
    cells: Vec<CellEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    geometry: Option<BTreeMap<String, Vec<f64>>>,
}

/// Canonical element name of a cell: sorted vertex ids joined by `-`.
pub fn cell_name<S: AsRef<str>>(vertices: &[S]) -> String {
    let mut vs: Vec<&str> = vertices.iter().map(AsRef::as_ref).collect();
    vs.sort_unstable();
    vs.join("-")
}

/// An abstract simplicial complex with a valuation on its cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialModel {
    vertices: Vec<String>,
    /// Each cell as a sorted, duplicate-free vertex list.
    cells: Vec<Vec<String>>,
    valuation: Vec<AtomSet>,
    atoms: AtomSet,
    geometry: Option<BTreeMap<String, Vec<f64>>>,
}

impl SimplicialModel {
    /// Validates and builds a model. `cells[i]` is valued by `valuation[i]`.
    pub fn new(
        vertices: Vec<String>,
        cells: Vec<Vec<String>>,
        valuation: Vec<AtomSet>,
        atoms: AtomSet,
    ) -> Result<Self> {
        let cells: Vec<Vec<String>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        let known: BTreeSet<&str> = vertices.iter().map(String::as_str).collect();
        let mut seen: HashMap<&[String], usize> = HashMap::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::EmptyCell);
            }
            for v in c {
                if !known.contains(v.as_str()) {
                    return Err(Error::UnknownVertex {
                        cell: cell_name(c),
                        vertex: v.clone(),
                    });
                }
            }
            if seen.insert(c.as_slice(), i).is_some() {
                return Err(Error::DuplicateCell(cell_name(c)));
            }
        }
        if valuation.len() != cells.len() {
            let missing = &cells[valuation.len().min(cells.len().saturating_sub(1))];
            return Err(Error::MissingValuation {
                cell: cell_name(missing),
            });
        }
        for (c, val) in cells.iter().zip(&valuation) {
            if let Some(a) = val.iter().find(|a| !atoms.contains(*a)) {
                return Err(Error::UndeclaredAtom {
                    cell: cell_name(c),
                    atom: a.clone(),
                });
            }
        }
        // Closure under faces: every proper non-empty subset must be a cell.
        for c in &cells {
            let k = c.len();
            if k > 1 {
                // k is tiny in practice; guard the shift anyway.
                assert!(k < 64, "cell with {k} vertices is not supported");
                for mask in 1..(1u64 << k) - 1 {
                    let face: Vec<String> = (0..k)
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| c[b].clone())
                        .collect();
                    if !seen.contains_key(face.as_slice()) {
                        return Err(Error::MissingFace {
                            cell: cell_name(c),
                            face: cell_name(&face),
                        });
                    }
                }
            }
        }
        Ok(Self {
            vertices,
            cells,
            valuation,
            atoms,
            geometry: None,
        })
    }

    pub fn with_geometry(mut self, geometry: BTreeMap<String, Vec<f64>>) -> Self {
        self.geometry = Some(geometry);
        self
    }

    /// Parses a model file.
    pub fn from_json(document: &[u8]) -> Result<Self> {
        let file: ModelFile = serde_json::from_slice(document)?;
        let atoms: AtomSet = file.atoms.into_iter().collect();
        let mut cells = Vec::with_capacity(file.cells.len());
        let mut valuation = Vec::with_capacity(file.cells.len());
        for entry in file.cells {
            let vs: Vec<String> = entry
                .vertices
                .into_iter()
                .map(VertexId::into_string)
                .collect();
            match entry.atoms {
                Some(a) => valuation.push(a.into_iter().collect()),
                None => {
                    return Err(Error::MissingValuation {
                        cell: cell_name(&vs),
                    })
                }
            }
            cells.push(vs);
        }
        let vertices = match file.vertices {
            Some(vs) => vs.into_iter().map(VertexId::into_string).collect(),
            None => {
                let mut order = Vec::new();
                let mut seen = BTreeSet::new();
                for c in &cells {
                    for v in c {
                        if seen.insert(v.clone()) {
                            order.push(v.clone());
                        }
                    }
                }
                order
            }
        };
        let model = Self::new(vertices, cells, valuation, atoms)?;
        Ok(match file.geometry {
            Some(g) => model.with_geometry(g),
            None => model,
        })
    }

    /// Serialises to the model-file format. Vertices are listed explicitly.
    pub fn to_json(&self) -> String {
        let file = ModelFile {
            atoms: self.atoms.iter().cloned().collect(),
            vertices: Some(self.vertices.iter().cloned().map(VertexId::Str).collect()),
            cells: self
                .cells
                .iter()
                .zip(&self.valuation)
                .map(|(c, v)| CellEntry {
                    vertices: c.iter().cloned().map(VertexId::Str).collect(),
                    atoms: Some(v.iter().cloned().collect()),
                })
                .collect(),
            geometry: self.geometry.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("model serialises");
        s.push('\n');
        s
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Vec<String>] {
        &self.cells
    }

    pub fn valuation(&self, cell: usize) -> &AtomSet {
        &self.valuation[cell]
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn geometry(&self) -> Option<&BTreeMap<String, Vec<f64>>> {
        self.geometry.as_ref()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Parses and validates a model file.
pub fn load_simplicial_model(document: &[u8]) -> Result<SimplicialModel> {
    SimplicialModel::from_json(document)
}

/// A finite poset with a valuation. The order is kept both as its covering
/// relation and as the full reflexive-transitive closure, the latter being
/// the accessibility relation of the underlying Kripke model.
#[derive(Debug, Clone, PartialEq)]
pub struct PosetModel {
    kripke: ReflexiveKripkeModel,
    covers: Vec<(usize, usize)>,
    vertex_sets: Option<Vec<Vec<String>>>,
}

impl PosetModel {
    /// Builds a poset model from generating pairs `a ≤ b`. The order is the
    /// reflexive-transitive closure of the pairs; cycles are rejected.
    pub fn from_order(
        elements: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
        valuation: Vec<AtomSet>,
        atoms: AtomSet,
    ) -> Result<Self> {
        let n = elements.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            if a != b {
                up[a].push(b);
            }
        }
        // Full up-set of every element by DFS.
        let mut closure: Vec<Vec<usize>> = Vec::with_capacity(n);
        for start in 0..n {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                for &y in &up[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            closure.push((0..n).filter(|&j| seen[j]).collect());
        }
        for a in 0..n {
            for &b in &closure[a] {
                if b != a && closure[b].binary_search(&a).is_ok() {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} and {} are mutually related",
                        elements[a], elements[b]
                    )));
                }
            }
        }
        let covers = covers_of(&closure);
        let relation: Vec<(usize, usize)> = closure
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
            .collect();
        let kripke = ReflexiveKripkeModel::new(elements, relation, valuation, atoms)?;
        Ok(Self {
            kripke,
            covers,
            vertex_sets: None,
        })
    }

    /// The poset model viewed as a reflexive Kripke model with `R = ≼`.
    pub fn kripke(&self) -> &ReflexiveKripkeModel {
        &self.kripke
    }

    pub fn len(&self) -> usize {
        self.kripke.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kripke.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        self.kripke.elements()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.kripke.index_of(name)
    }

    pub fn valuation(&self, i: usize) -> &AtomSet {
        self.kripke.valuation(i)
    }

    pub fn atoms(&self) -> &AtomSet {
        self.kripke.atoms()
    }

    /// Covering pairs `(a, b)` with `a ≺ b` and nothing strictly between.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `a ≼ b` on indices.
    pub fn leq_index(&self, a: usize, b: usize) -> bool {
        self.kripke.related(a, b)
    }

    /// Vertex sets of the source cells, when built from a complex.
    pub fn vertex_sets(&self) -> Option<&[Vec<String>]> {
        self.vertex_sets.as_deref()
    }

    /// JSON dump of elements, covers and valuation.
    pub fn to_json(&self) -> serde_json::Value {
        let m = &self.kripke;
        serde_json::json!({
            "elements": m.elements(),
            "atoms": m.atoms(),
            "valuation": (0..m.len()).map(|i| m.valuation(i)).collect::<Vec<_>>(),
            "covers": self.covers.iter()
                .map(|&(a, b)| [m.name(a), m.name(b)])
                .collect::<Vec<_>>(),
        })
    }
}

fn covers_of(closure: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (a, ups) in closure.iter().enumerate() {
        for &b in ups {
            if b == a {
                continue;
            }
            let between = ups
                .iter()
                .any(|&c| c != a && c != b && closure[c].binary_search(&b).is_ok());
            if !between {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// The cell poset of a simplicial model: one element per cell, in input
/// order, ordered by vertex-set inclusion.
pub fn cell_poset(m: &SimplicialModel) -> PosetModel {
    let cells = m.cells();
    let n = cells.len();
    let names: Vec<String> = cells.iter().map(|c| cell_name(c)).collect();
    let sets: Vec<BTreeSet<&str>> = cells
        .iter()
        .map(|c| c.iter().map(String::as_str).collect())
        .collect();
    let mut relation = Vec::new();
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if sets[a].len() <= sets[b].len() && sets[a].is_subset(&sets[b]) {
                relation.push((a, b));
                if sets[b].len() == sets[a].len() + 1 {
                    covers.push((a, b));
                }
            }
        }
    }
    let kripke = ReflexiveKripkeModel::new(
        names,
        relation,
        (0..n).map(|i| m.valuation(i).clone()).collect(),
        m.atoms().clone(),
    )
    .expect("cell names are unique and inclusion is reflexive");
    PosetModel {
        kripke,
        covers,
        vertex_sets: Some(cells.to_vec()),
    }
}

/// Face-order query by element name.
pub fn leq(p: &PosetModel, a: &str, b: &str) -> Result<bool> {
    let ia = p.index_of(a)?;
    let ib = p.index_of(b)?;
    Ok(p.leq_index(ia, ib))
}
