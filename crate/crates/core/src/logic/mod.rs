//! Formulas of the weak spatial logic, the reachability operator γ and the
//! proximity modality ◊, plus the script language used to bind and save them.

mod parser;

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use parser::{parse_formula, parse_script, Script};

/// Formula AST. `Eta` requires the start point to satisfy its first
/// argument; `Gamma` does not.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Eta(Box<Formula>, Box<Formula>),
    Gamma(Box<Formula>, Box<Formula>),
    Diamond(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn eta(a: Formula, b: Formula) -> Self {
        Formula::Eta(Box::new(a), Box::new(b))
    }

    pub fn gamma(a: Formula, b: Formula) -> Self {
        Formula::Gamma(Box::new(a), Box::new(b))
    }

    pub fn diamond(f: Formula) -> Self {
        Formula::Diamond(Box::new(f))
    }

    /// True iff the formula uses neither `Gamma` nor `Diamond`.
    pub fn is_eta_pure(&self) -> bool {
        match self {
            Formula::Top | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_eta_pure(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Eta(a, b) => {
                a.is_eta_pure() && b.is_eta_pure()
            }
            Formula::Gamma(..) | Formula::Diamond(_) => false,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Diamond(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Eta(a, b) | Formula::Gamma(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Height of the AST; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 0,
            Formula::Not(f) | Formula::Diamond(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Eta(a, b) | Formula::Gamma(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Top => {}
            Formula::Atom(p) => {
                out.insert(p);
            }
            Formula::Not(f) | Formula::Diamond(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Eta(a, b) | Formula::Gamma(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Top => f.write_str("true")?,
            Formula::Atom(p) => {
                if parser::is_plain_identifier(p) {
                    f.write_str(p)?
                } else {
                    f.write_str("ap(\"")?;
                    for ch in p.chars() {
                        if ch == '"' || ch == '\\' {
                            f.write_str("\\")?;
                        }
                        write!(f, "{ch}")?;
                    }
                    f.write_str("\")")?
                }
            }
            Formula::Not(x) => {
                f.write_str("!")?;
                x.write_prec(f, 3)?;
            }
            Formula::And(a, b) => {
                a.write_prec(f, 2)?;
                f.write_str(" & ")?;
                b.write_prec(f, 3)?;
            }
            Formula::Or(a, b) => {
                a.write_prec(f, 1)?;
                f.write_str(" | ")?;
                b.write_prec(f, 2)?;
            }
            Formula::Eta(a, b) => write!(f, "eta({a}, {b})")?,
            Formula::Gamma(a, b) => write!(f, "gamma({a}, {b})")?,
            Formula::Diamond(x) => write!(f, "diamond({x})")?,
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Prints in the concrete syntax accepted by [`parse_formula`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

/// Translates an η-formula into an equivalent formula over γ:
/// `η(a, b)` becomes `a' ∧ γ(a', b')` where primes denote translation.
pub fn encode_eta_to_gamma(f: &Formula) -> Result<Formula> {
    if !f.is_eta_pure() {
        return Err(Error::NotEtaPure(f.to_string()));
    }
    Ok(encode(f))
}

fn encode(f: &Formula) -> Formula {
    match f {
        Formula::Top => Formula::Top,
        Formula::Atom(p) => Formula::Atom(p.clone()),
        Formula::Not(x) => Formula::not(encode(x)),
        Formula::And(a, b) => Formula::and(encode(a), encode(b)),
        Formula::Or(a, b) => Formula::or(encode(a), encode(b)),
        Formula::Eta(a, b) => {
            let ea = encode(a);
            let eb = encode(b);
            Formula::and(ea.clone(), Formula::gamma(ea, eb))
        }
        Formula::Gamma(..) | Formula::Diamond(_) => unreachable!("checked by caller"),
    }
}

/// A random η-pure formula of depth at most `max_depth`, deterministic in
/// `seed`.
pub fn random_formula(seed: u64, max_depth: usize, atoms: &[String]) -> Result<Formula> {
    if atoms.is_empty() {
        return Err(Error::EmptyAtomList);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_node(&mut rng, max_depth, atoms))
}

fn random_node(rng: &mut ChaCha8Rng, depth: usize, atoms: &[String]) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.1) {
            Formula::Top
        } else {
            Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone())
        };
    }
    match rng.gen_range(0..20) {
        0..=3 => Formula::not(random_node(rng, depth - 1, atoms)),
        4..=8 => Formula::and(
            random_node(rng, depth - 1, atoms),
            random_node(rng, depth - 1, atoms),
        ),
        9..=12 => Formula::or(
            random_node(rng, depth - 1, atoms),
            random_node(rng, depth - 1, atoms),
        ),
        _ => Formula::eta(
            random_node(rng, depth - 1, atoms),
            random_node(rng, depth - 1, atoms),
        ),
    }
}
