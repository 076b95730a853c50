//! Propositional formulas over the quantum connectives.
//!
//! Text syntax (whitespace is insignificant):
//!
//! ```text
//! or    := and ( ("|" | "∨") and )*
//! and   := unary ( ("&" | "∧") unary )*
//! unary := ("!" | "~" | "¬") unary | atom
//! atom  := ident | "1" | "0" | "(" or ")"
//! ident := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! `1` is the whole space and `0` the zero subspace. Both binary connectives
//! associate to the left.

mod eval;
mod parser;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::{eval_membership, eval_subspace, Assignment, EvalError};
pub use parser::{parse, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Top,
    Bottom,
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn negate(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    /// Variable names occurring in the formula, sorted.
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.as_str());
            }
            Formula::Not(c) => c.collect_vars(out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Formula::Top | Formula::Bottom => {}
        }
    }

    /// Height of the tree; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bottom => 0,
            Formula::Not(c) => 1 + c.depth(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Fully explicit constructor form, e.g. `And(Var(p), Not(Var(q)))`.
    pub fn to_ast_string(&self) -> String {
        match self {
            Formula::Var(name) => format!("Var({name})"),
            Formula::Not(c) => format!("Not({})", c.to_ast_string()),
            Formula::And(l, r) => format!("And({}, {})", l.to_ast_string(), r.to_ast_string()),
            Formula::Or(l, r) => format!("Or({}, {})", l.to_ast_string(), r.to_ast_string()),
            Formula::Top => "Top".to_owned(),
            Formula::Bottom => "Bottom".to_owned(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) => 3,
            Formula::Var(_) | Formula::Top | Formula::Bottom => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::Var(name) => f.write_str(name),
            Formula::Top => f.write_str("1"),
            Formula::Bottom => f.write_str("0"),
            Formula::Not(c) => {
                f.write_str("!")?;
                c.write_at(f, 3)
            }
            Formula::And(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" & ")?;
                r.write_at(f, 3)
            }
            Formula::Or(l, r) => {
                l.write_at(f, 1)?;
                f.write_str(" | ")?;
                r.write_at(f, 2)
            }
        }
    }
}

/// ASCII rendering with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

pub fn pretty_print(f: &Formula) -> String {
    f.to_string()
}
