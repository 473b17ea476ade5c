//! Weak spatial model checking and minimisation of polyhedral models.
//!
//! A polyhedral model is given as an abstract simplicial complex with a
//! per-cell valuation. Its cell poset is a reflexive Kripke model on which
//! formulas with the reachability operator `eta` are checked. Models are
//! minimised by encoding the poset as a labelled transition system and
//! computing branching bisimilarity; the resulting minimal model preserves
//! and reflects every `eta` formula.

pub mod bisim;
pub mod checker;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod kripke;
pub mod logic;
pub mod lts;
pub mod minimize;
pub mod pipeline;
pub mod random;

pub use bisim::{
    branching_partition, components_same_valuation, encode_abstract, encode_concrete, quotient_lts,
    strong_partition, weak_pm_partition, Partition,
};
pub use checker::{check_script, sat, sat_eta_path_oracle, sat_strict, SatSet};
pub use complex::{cell_poset, leq, load_simplicial_model, PosetModel, SimplicialModel};
pub use error::{Error, Result};
pub use kripke::{AtomSet, ReflexiveKripkeModel};
pub use logic::{
    encode_eta_to_gamma, parse_formula, parse_script, random_formula, Formula, Script,
};
pub use lts::{Label, Lts};
pub use minimize::{
    distinguishing_formula, map_back, minimal_model, rmin_via_quotient_d, MinimalModel,
};
