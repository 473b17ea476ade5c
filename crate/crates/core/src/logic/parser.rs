//! Lexer and recursive-descent parser for formulas and scripts.
//!
//! Precedence from tightest to loosest: `!`, `&`, `|`. Binary operators
//! associate to the left. `let` names are substituted at parse time.

use std::collections::{HashMap, HashSet};

use super::Formula;
use crate::error::{Error, Result};

const KEYWORDS: [&str; 8] = [
    "true", "ap", "eta", "gamma", "diamond", "let", "save", "load",
];

/// True if `s` can be printed as a bare identifier.
pub(crate) fn is_plain_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    LParen,
    RParen,
    Comma,
    Bang,
    Amp,
    Pipe,
    Eq,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let single = |tok| Token {
            tok,
            line: tl,
            column: tc,
        };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            ',' => out.push(single(Tok::Comma)),
            '!' => out.push(single(Tok::Bang)),
            '&' => out.push(single(Tok::Amp)),
            '|' => out.push(single(Tok::Pipe)),
            '=' => out.push(single(Tok::Eq)),
            '"' => {
                let mut s = String::new();
                i += 1;
                col += 1;
                loop {
                    match chars.get(i) {
                        None | Some('\n') => {
                            return Err(Error::Syntax {
                                line: tl,
                                column: tc,
                                message: "unterminated string".into(),
                            })
                        }
                        Some('"') => break,
                        Some('\\') if i + 1 < chars.len() => {
                            s.push(chars[i + 1]);
                            i += 2;
                            col += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                            col += 1;
                        }
                    }
                }
                out.push(single(Tok::Str(s)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                col += i - start;
                out.push(single(Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column: col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
        i += 1;
        col += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// `None` outside scripts: bare identifiers are atoms.
    env: Option<HashMap<String, Formula>>,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str, env: Option<HashMap<String, Formula>>) -> Result<Self> {
        let tokens = lex(text)?;
        let lines = text.split('\n').count().max(1);
        let last = text.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        Ok(Self {
            tokens,
            pos: 0,
            env,
            end: (lines, last),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.peek() == Some(&Tok::Bang) {
            self.pos += 1;
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn call_args(&mut self, n: usize) -> Result<Vec<Formula>> {
        self.expect(Tok::LParen, "'('")?;
        let mut args = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                self.expect(Tok::Comma, "','")?;
            }
            args.push(self.formula()?);
        }
        self.expect(Tok::RParen, "')'")?;
        Ok(args)
    }

    fn primary(&mut self) -> Result<Formula> {
        let (line, column) = self.here();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "true" => Ok(Formula::Top),
                    "ap" => {
                        self.expect(Tok::LParen, "'('")?;
                        let atom = match self.peek().cloned() {
                            Some(Tok::Str(s)) => s,
                            _ => return self.error("expected a string literal"),
                        };
                        self.pos += 1;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Formula::Atom(atom))
                    }
                    "eta" | "gamma" => {
                        let mut args = self.call_args(2)?;
                        let b = args.pop().unwrap();
                        let a = args.pop().unwrap();
                        Ok(if name == "eta" {
                            Formula::eta(a, b)
                        } else {
                            Formula::gamma(a, b)
                        })
                    }
                    "diamond" => {
                        let mut args = self.call_args(1)?;
                        Ok(Formula::diamond(args.pop().unwrap()))
                    }
                    "let" | "save" | "load" => {
                        self.pos -= 1;
                        self.error(format!("unexpected keyword {name}"))
                    }
                    _ => match &self.env {
                        None => Ok(Formula::Atom(name)),
                        Some(env) => env.get(&name).cloned().ok_or(Error::UndefinedIdentifier {
                            name,
                            line,
                            column,
                        }),
                    },
                }
            }
            Some(_) => self.error("expected a formula"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses a single formula. Bare identifiers denote atoms.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text, None)?;
    let f = p.formula()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(f)
}

/// A parsed script: `let` bindings (already expanded), `save` directives,
/// and the optional `load model = "..."` reference.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Script {
    pub model: Option<String>,
    pub bindings: Vec<(String, Formula)>,
    pub saves: Vec<(String, Formula)>,
}

/// Parses a script. Identifiers must be bound by an earlier `let`.
pub fn parse_script(text: &str) -> Result<Script> {
    let mut p = Parser::new(text, Some(HashMap::new()))?;
    let mut script = Script::default();
    let mut save_names = HashSet::new();
    while p.peek().is_some() {
        if p.at_keyword("load") {
            p.pos += 1;
            match p.peek() {
                Some(Tok::Ident(s)) if s == "model" => p.pos += 1,
                _ => return p.error("expected 'model'"),
            }
            p.expect(Tok::Eq, "'='")?;
            match p.peek().cloned() {
                Some(Tok::Str(s)) => {
                    p.pos += 1;
                    script.model = Some(s);
                }
                _ => return p.error("expected a string literal"),
            }
        } else if p.at_keyword("let") {
            p.pos += 1;
            let name = match p.peek().cloned() {
                Some(Tok::Ident(s)) if is_plain_identifier(&s) => s,
                _ => return p.error("expected an identifier"),
            };
            p.pos += 1;
            p.expect(Tok::Eq, "'='")?;
            let f = p.formula()?;
            if let Some(env) = p.env.as_mut() {
                env.insert(name.clone(), f.clone());
            }
            script.bindings.push((name, f));
        } else if p.at_keyword("save") {
            p.pos += 1;
            let name = match p.peek().cloned() {
                Some(Tok::Str(s)) => s,
                _ => return p.error("expected a string literal"),
            };
            p.pos += 1;
            let f = p.formula()?;
            if !save_names.insert(name.clone()) {
                return Err(Error::DuplicateSave(name));
            }
            script.saves.push((name, f));
        } else {
            return p.error("expected 'let', 'save' or 'load'");
        }
    }
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn corridor_example() {
        let f = parse_formula("eta(corridor,white) & !eta(corridor, green | black | red)").unwrap();
        let expected = Formula::and(
            Formula::eta(a("corridor"), a("white")),
            Formula::not(Formula::eta(
                a("corridor"),
                Formula::or(Formula::or(a("green"), a("black")), a("red")),
            )),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn ap_and_double_negation() {
        assert_eq!(parse_formula("ap(\"G\")").unwrap(), a("G"));
        assert_eq!(
            parse_formula("!!p").unwrap(),
            Formula::not(Formula::not(a("p")))
        );
        assert_eq!(parse_formula("true").unwrap(), Formula::Top);
        assert_eq!(
            parse_formula("diamond(gamma(p, true))").unwrap(),
            Formula::diamond(Formula::gamma(a("p"), Formula::Top))
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_formula("a | b & !c").unwrap(),
            Formula::or(a("a"), Formula::and(a("b"), Formula::not(a("c"))))
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_formula("p &\n  & q") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_formula("eta(p q)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_formula("p)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula(""), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_formula("ap(\"x)"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn small_scripts() {
        let s = parse_script("let a = ap(\"p\")\nsave \"x\" a").unwrap();
        assert_eq!(s.saves, vec![("x".to_string(), a("p"))]);
        match parse_script("save \"x\" undefinedName") {
            Err(Error::UndefinedIdentifier { name, line, column }) => {
                assert_eq!(name, "undefinedName");
                assert_eq!((line, column), (1, 10));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_script("save \"x\" true\nsave \"x\" true"),
            Err(Error::DuplicateSave(_))
        ));
        assert_eq!(parse_script("").unwrap(), Script::default());
    }

    #[test]
    fn maze_script() {
        let text = r#"load model = "polyInput_Poset.json"

let green       = ap("G")
let white       = ap("W")
let corridor    = ap("corridor")


let greenOrWhite		= (green | white)

let oneStepToWhite   = eta((green | eta(corridor,white)),white)
let twoStepsToWhite  = eta((green | eta(corridor,oneStepToWhite)), oneStepToWhite) & (!oneStepToWhite)
let threeStepsToWhite = eta((green | eta(corridor,twoStepsToWhite)), twoStepsToWhite) &
                                             (!twoStepsToWhite) & (!oneStepToWhite)

let phi1 = eta((green | eta(corridor,white)),white)
let phi2 = eta((green | eta(corridor,oneStepToWhite)), oneStepToWhite)

save "green" green
save "white" white
save "corr" corridor
save "phi1" phi1
save "phi2" phi2
"#;
        let s = parse_script(text).unwrap();
        assert_eq!(s.model.as_deref(), Some("polyInput_Poset.json"));
        let names: Vec<&str> = s.saves.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["green", "white", "corr", "phi1", "phi2"]);
        assert_eq!(s.saves[0].1, a("G"));
        let phi1 = Formula::eta(
            Formula::or(a("G"), Formula::eta(a("corridor"), a("W"))),
            a("W"),
        );
        assert_eq!(s.saves[3].1, phi1);
        assert_eq!(s.bindings.len(), 9);
    }
}
