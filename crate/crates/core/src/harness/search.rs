//! Witness search: the first enumerated poset satisfying a boolean formula over verdicts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::document::PosetDocument;
use super::enumerate::{enumerate_cyclic, EnumerationSpec};
use super::report::{analyze, AnalysisReport};
use super::sweep::describe;
use super::HarnessError;
use crate::algebra::koszul_decide;
use crate::criteria::{is_uniform, weakly_cm, KPolicy};
use crate::exactlin::{Field, FieldSpec};
use crate::poset::RankedPoset;
use crate::topology::is_cm;
use crate::with_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Atom {
    Uniform,
    Cm,
    WeaklyCm,
    Koszul,
    DualWeaklyCm,
}

impl Atom {
    fn name(self) -> &'static str {
        match self {
            Atom::Uniform => "uniform",
            Atom::Cm => "cm",
            Atom::WeaklyCm => "weakly_cm",
            Atom::Koszul => "koszul",
            Atom::DualWeaklyCm => "dual_weakly_cm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Atom(Atom),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Atom(a) => f.write_str(a.name()),
            Predicate::Not(p) => write!(f, "!{p}"),
            Predicate::And(a, b) => write!(f, "({a} & {b})"),
            Predicate::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>, HarnessError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '!' | '¬' | '~' => {
                chars.next();
                out.push(Token::Not);
            }
            '&' | '∧' => {
                chars.next();
                while chars.peek() == Some(&'&') {
                    chars.next();
                }
                out.push(Token::And);
            }
            '|' | '∨' => {
                chars.next();
                while chars.peek() == Some(&'|') {
                    chars.next();
                }
                out.push(Token::Or);
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(match word.to_ascii_lowercase().as_str() {
                    "not" => Token::Not,
                    "and" => Token::And,
                    "or" => Token::Or,
                    _ => Token::Ident(word),
                });
            }
            other => return Err(HarnessError::Usage(format!("unexpected character `{other}` in predicate"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn or(&mut self) -> Result<Predicate, HarnessError> {
        let mut left = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.at += 1;
            left = Predicate::Or(Box::new(left), Box::new(self.and()?));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Predicate, HarnessError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.at += 1;
            left = Predicate::And(Box::new(left), Box::new(self.unary()?));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Predicate, HarnessError> {
        let tok = self.peek().cloned();
        self.at += 1;
        match tok {
            Some(Token::Not) => Ok(Predicate::Not(Box::new(self.unary()?))),
            Some(Token::Open) => {
                let inner = self.or()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(HarnessError::Usage("unbalanced parenthesis in predicate".into()));
                }
                self.at += 1;
                Ok(inner)
            }
            Some(Token::Ident(w)) => {
                let atom = match w.to_ascii_lowercase().replace('-', "_").as_str() {
                    "uniform" => Atom::Uniform,
                    "cm" => Atom::Cm,
                    "weakly_cm" | "wcm" => Atom::WeaklyCm,
                    "koszul" => Atom::Koszul,
                    "dual_weakly_cm" => Atom::DualWeaklyCm,
                    _ => {
                        return Err(HarnessError::Usage(format!(
                            "unknown atom `{w}` (expected uniform, cm, weakly_cm, koszul, dual_weakly_cm)"
                        )))
                    }
                };
                Ok(Predicate::Atom(atom))
            }
            _ => Err(HarnessError::Usage("predicate ends early or has a misplaced operator".into())),
        }
    }
}

impl FromStr for Predicate {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            tokens: tokenize(s)?,
            at: 0,
        };
        let pred = p.or()?;
        if p.at != p.tokens.len() {
            return Err(HarnessError::Usage(format!("trailing input in predicate `{s}`")));
        }
        Ok(pred)
    }
}

/// Atom values for one poset, computed on first use.
struct Lazy<'a, F: Field> {
    poset: &'a RankedPoset,
    field: &'a F,
    policy: KPolicy,
    cache: BTreeMap<Atom, bool>,
}

impl<F: Field> Lazy<'_, F> {
    fn atom(&mut self, a: Atom) -> Result<bool, HarnessError> {
        if let Some(&v) = self.cache.get(&a) {
            return Ok(v);
        }
        let (p, f) = (self.poset, self.field);
        let v = match a {
            Atom::Uniform => is_uniform(p).holds,
            Atom::Cm => is_cm(p, f)?.holds,
            Atom::WeaklyCm => weakly_cm(p, f, self.policy)?.holds,
            Atom::Koszul => koszul_decide(p, f)?.koszul,
            Atom::DualWeaklyCm => weakly_cm(&p.dual()?, f, self.policy)?.holds,
        };
        self.cache.insert(a, v);
        Ok(v)
    }

    fn eval(&mut self, pred: &Predicate) -> Result<bool, HarnessError> {
        Ok(match pred {
            Predicate::Atom(a) => self.atom(*a)?,
            Predicate::Not(p) => !self.eval(p)?,
            Predicate::And(a, b) => self.eval(a)? && self.eval(b)?,
            Predicate::Or(a, b) => self.eval(a)? || self.eval(b)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchWitness {
    pub poset: String,
    /// Position in the enumeration stream, from 0.
    pub index: usize,
    pub document: PosetDocument,
    pub dual_weakly_cm: Option<bool>,
    pub report: AnalysisReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub schema: String,
    pub predicate: String,
    pub field: FieldSpec,
    pub examined: usize,
    pub witness: Option<SearchWitness>,
}

fn first_match<F: Field>(
    pred: &Predicate,
    spec: &EnumerationSpec,
    field: &F,
    policy: KPolicy,
) -> Result<(usize, Option<(usize, RankedPoset, Option<bool>)>), HarnessError> {
    let mut examined = 0;
    for (i, p) in enumerate_cyclic(spec)?.enumerate() {
        let p = p?;
        examined += 1;
        let mut lazy = Lazy {
            poset: &p,
            field,
            policy,
            cache: BTreeMap::new(),
        };
        if lazy.eval(pred)? {
            let dual = lazy.cache.get(&Atom::DualWeaklyCm).copied();
            return Ok((examined, Some((i, p, dual))));
        }
    }
    Ok((examined, None))
}

/// The first poset of the enumeration satisfying `pred`, with its full report.
pub fn search_witness(
    pred: &Predicate,
    spec: &EnumerationSpec,
    field: FieldSpec,
    policy: KPolicy,
) -> Result<SearchOutcome, HarnessError> {
    let (examined, hit) = with_field!(field, f => first_match(pred, spec, &f, policy)?)?;
    let witness = match hit {
        None => None,
        Some((index, p, dual_weakly_cm)) => {
            let name = format!("witness-{index}");
            Some(SearchWitness {
                poset: describe(&p),
                index,
                document: PosetDocument::from_poset(&name, field, &p),
                dual_weakly_cm,
                report: analyze(&p, &name, field, policy)?,
            })
        }
    };
    Ok(SearchOutcome {
        schema: super::REPORT_SCHEMA.to_string(),
        predicate: pred.to_string(),
        field,
        examined,
        witness,
    })
}
