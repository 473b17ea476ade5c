//! Labelled transition systems and the Aldebaran `.aut` format.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Transition labels used by the two poset encodings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// An atomic proposition, observed as a self-loop.
    Atom(String),
    /// Silent step between cells with equal valuation.
    Tau,
    /// Step between related cells whose valuations differ (`c`).
    Change,
    /// Step from a cell to one of its faces (`d`).
    Down,
    /// Step between related classes (`s`).
    Step,
    /// The full valuation of a class, observed as a self-loop.
    AtomSet(Vec<String>),
}

impl Label {
    /// Reads the textual form written by `Display`.
    pub fn parse(text: &str) -> Label {
        match text {
            "tau" => Label::Tau,
            "c" => Label::Change,
            "d" => Label::Down,
            "s" => Label::Step,
            t if t.starts_with('{') && t.ends_with('}') => {
                let inner = &t[1..t.len() - 1];
                Label::AtomSet(if inner.is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(str::to_string).collect()
                })
            }
            t => Label::Atom(t.to_string()),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(p) => f.write_str(p),
            Label::Tau => f.write_str("tau"),
            Label::Change => f.write_str("c"),
            Label::Down => f.write_str("d"),
            Label::Step => f.write_str("s"),
            Label::AtomSet(ps) => write!(f, "{{{}}}", ps.join(",")),
        }
    }
}

/// A finite LTS with set semantics on transitions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lts {
    states: Vec<String>,
    labels: Vec<Label>,
    label_index: HashMap<Label, usize>,
    transitions: BTreeSet<(usize, usize, usize)>,
}

impl Lts {
    pub fn new(states: Vec<String>) -> Self {
        Self {
            states,
            ..Self::default()
        }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn label_id(&self, label: &Label) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// Registers a label and returns its index.
    pub fn intern(&mut self, label: Label) -> usize {
        if let Some(&i) = self.label_index.get(&label) {
            return i;
        }
        self.labels.push(label.clone());
        self.label_index.insert(label, self.labels.len() - 1);
        self.labels.len() - 1
    }

    /// Adds a transition; returns false if it was already present.
    pub fn add(&mut self, src: usize, label: Label, dst: usize) -> bool {
        assert!(src < self.states.len() && dst < self.states.len());
        let l = self.intern(label);
        self.transitions.insert((src, l, dst))
    }

    pub fn contains(&self, src: usize, label: &Label, dst: usize) -> bool {
        self.label_id(label)
            .is_some_and(|l| self.transitions.contains(&(src, l, dst)))
    }

    /// Transitions as `(source, label index, target)`, sorted.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.transitions.iter().copied()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    /// Outgoing `(label, target)` pairs per state.
    pub fn successors(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for &(s, l, t) in &self.transitions {
            out[s].push((l, t));
        }
        out
    }

    /// Number of transitions carrying `label`.
    pub fn count_label(&self, label: &Label) -> usize {
        match self.label_id(label) {
            Some(l) => self.transitions.iter().filter(|t| t.1 == l).count(),
            None => 0,
        }
    }

    /// Aldebaran text. Transitions are sorted by source, label text and
    /// target so that equal systems print identically.
    pub fn to_aut(&self) -> String {
        let mut lines: Vec<(usize, String, usize)> = self
            .transitions
            .iter()
            .map(|&(s, l, t)| (s, self.labels[l].to_string(), t))
            .collect();
        lines.sort();
        let mut out = format!("des (0,{},{})\n", lines.len(), self.states.len());
        for (s, l, t) in lines {
            out.push_str(&format!("({s},\"{l}\",{t})\n"));
        }
        out
    }

    /// Parses Aldebaran text. States are named by their numbers. Labels may
    /// be quoted or bare.
    pub fn from_aut(text: &str) -> Result<Lts> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Aut {
            line: 1,
            message: "missing header".into(),
        })?;
        let bad = |line: usize, message: &str| Error::Aut {
            line,
            message: message.to_string(),
        };
        let fields = header
            .strip_prefix("des")
            .map(str::trim)
            .and_then(|h| h.strip_prefix('('))
            .and_then(|h| h.strip_suffix(')'))
            .ok_or_else(|| bad(hline, "expected des (first,transitions,states)"))?;
        let nums: Vec<usize> = fields
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(hline, "header fields must be numbers"))?;
        let [first, ntrans, nstates] = nums[..] else {
            return Err(bad(hline, "header needs three fields"));
        };
        if nstates > 0 && first >= nstates {
            return Err(bad(hline, "initial state out of range"));
        }
        let mut lts = Lts::new((0..nstates).map(|i| i.to_string()).collect());
        let mut count = 0;
        for (n, line) in lines {
            let body = line
                .strip_prefix('(')
                .and_then(|l| l.strip_suffix(')'))
                .ok_or_else(|| bad(n, "expected (src,label,dst)"))?;
            let first_comma = body.find(',').ok_or_else(|| bad(n, "missing label"))?;
            let last_comma = body.rfind(',').filter(|&c| c > first_comma);
            let last_comma = last_comma.ok_or_else(|| bad(n, "missing target"))?;
            let parse_state = |s: &str| -> Result<usize> {
                let v = s
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| bad(n, "state must be a number"))?;
                if v >= nstates {
                    return Err(bad(n, "state out of range"));
                }
                Ok(v)
            };
            let src = parse_state(&body[..first_comma])?;
            let dst = parse_state(&body[last_comma + 1..])?;
            let raw = body[first_comma + 1..last_comma].trim();
            let label = match raw.strip_prefix('"') {
                Some(r) => r
                    .strip_suffix('"')
                    .ok_or_else(|| bad(n, "unterminated label"))?,
                None => raw,
            };
            lts.add(src, Label::parse(label), dst);
            count += 1;
        }
        if count != ntrans {
            return Err(bad(
                hline,
                &format!("header announces {ntrans} transitions, found {count}"),
            ));
        }
        Ok(lts)
    }
}
