//! Formula syntax: the AST, concrete syntax, syntactic measures and the
//! rewriting maps used by the evaluators and solvers.

mod axioms;
pub mod gen;
mod parse;
mod transform;

use std::collections::BTreeSet;
use std::fmt;

pub use axioms::{axiom_corpus, instantiation_set, schemas, AxiomInstance, AxiomSchema, Calculus};
pub use parse::{parse, ParseError};
pub use transform::{delta_neg, eliminate_coimpl, nnf, plus_translation, star_name, TransformError, STAR_SUFFIX};

/// A formula over `{p, 0, 1, ~, !, #, &, |, ->, -<, [], <>}`.
///
/// `GNeg` is Goedel negation, `DMNeg` the De Morgan (paraconsistent)
/// negation, `Delta` the Baaz delta and `Coimpl` coimplication.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Zero,
    One,
    GNeg(Box<Formula>),
    DMNeg(Box<Formula>),
    Delta(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Coimpl(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
}

/// Syntactic language classes, ordered by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LanguageClass {
    /// Only `0, 1, &, |, ->, ~, [], <>` and variables. `1` and `~` are
    /// admitted as the usual abbreviations `0 -> 0` and `phi -> 0`.
    GKFragment,
    /// Free of `!` and `-<`.
    LTriangle,
    /// Everything.
    LNegTriangle,
}

impl LanguageClass {
    pub fn contains(self, other: LanguageClass) -> bool {
        other <= self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntacticClasses {
    pub monotone: bool,
    pub positive: bool,
    pub sahlqvist: bool,
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    pub fn gneg(f: Formula) -> Formula {
        Formula::GNeg(Box::new(f))
    }

    pub fn dmneg(f: Formula) -> Formula {
        Formula::DMNeg(Box::new(f))
    }

    pub fn delta(f: Formula) -> Formula {
        Formula::Delta(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn coimpl(a: Formula, b: Formula) -> Formula {
        Formula::Coimpl(Box::new(a), Box::new(b))
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    pub fn dia(f: Formula) -> Formula {
        Formula::Dia(Box::new(f))
    }

    /// `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Var(_) | Zero | One => vec![],
            GNeg(a) | DMNeg(a) | Delta(a) | Box(a) | Dia(a) => vec![a],
            And(a, b) | Or(a, b) | Impl(a, b) | Coimpl(a, b) => vec![a, b],
        }
    }

    /// Number of nodes (subformula occurrences), constants and variables
    /// included.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn modal_depth(&self) -> usize {
        let inner = self.children().into_iter().map(Formula::modal_depth).max().unwrap_or(0);
        match self {
            Formula::Box(_) | Formula::Dia(_) => inner + 1,
            _ => inner,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Formula::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    /// All subformulas together with the two constants.
    pub fn subformulas_01(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out.insert(Formula::Zero);
        out.insert(Formula::One);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            for c in self.children() {
                c.collect_subformulas(out);
            }
        }
    }

    /// True if any node satisfies `pred`.
    pub fn any(&self, pred: &impl Fn(&Formula) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }

    pub fn has_dmneg(&self) -> bool {
        self.any(&|f| matches!(f, Formula::DMNeg(_)))
    }

    pub fn has_coimpl(&self) -> bool {
        self.any(&|f| matches!(f, Formula::Coimpl(..)))
    }

    /// `!` occurs only directly above variables.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::DMNeg(a) => matches!(**a, Formula::Var(_)),
            _ => self.children().into_iter().all(Formula::is_nnf),
        }
    }

    /// Smallest language class containing the formula.
    pub fn classify(&self) -> LanguageClass {
        if self.any(&|f| matches!(f, Formula::DMNeg(_) | Formula::Coimpl(..))) {
            LanguageClass::LNegTriangle
        } else if self.any(&|f| matches!(f, Formula::Delta(_))) {
            LanguageClass::LTriangle
        } else {
            LanguageClass::GKFragment
        }
    }

    /// No `->`, `~`, `#`, `!` (and no `-<`, which abbreviates a formula
    /// containing all three).
    pub fn is_monotone(&self) -> bool {
        !self.any(&|f| {
            matches!(
                f,
                Formula::Impl(..) | Formula::Coimpl(..) | Formula::GNeg(_) | Formula::Delta(_) | Formula::DMNeg(_)
            )
        })
    }

    pub fn is_positive(&self) -> bool {
        self.is_monotone() && !self.any(&|f| matches!(f, Formula::Zero | Formula::One))
    }

    pub fn is_sahlqvist(&self) -> bool {
        match self {
            Formula::And(a, b) => a.is_sahlqvist() && b.is_sahlqvist(),
            Formula::Or(a, b) => a.is_sahlqvist() && b.is_sahlqvist() && a.vars().is_disjoint(&b.vars()),
            Formula::Box(a) => a.is_sahlqvist(),
            _ => self.is_sahlqvist_implication(),
        }
    }

    pub fn is_sahlqvist_implication(&self) -> bool {
        match self {
            Formula::Impl(a, b) => a.is_sahlqvist_antecedent() && b.is_positive(),
            _ => false,
        }
    }

    fn is_sahlqvist_antecedent(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::GNeg(a) => matches!(**a, Formula::Var(_)),
            Formula::Box(_) => self.is_boxed_atom(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_sahlqvist_antecedent() && b.is_sahlqvist_antecedent(),
            Formula::Dia(a) => a.is_sahlqvist_antecedent(),
            _ => false,
        }
    }

    fn is_boxed_atom(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::Box(a) => a.is_boxed_atom(),
            _ => false,
        }
    }

    pub fn syntactic_classes(&self) -> SyntacticClasses {
        SyntacticClasses {
            monotone: self.is_monotone(),
            positive: self.is_positive(),
            sahlqvist: self.is_sahlqvist(),
        }
    }

    /// Replaces variables by formulas, leaving unmapped variables alone.
    pub fn substitute(&self, map: &impl Fn(&str) -> Option<Formula>) -> Formula {
        use Formula::*;
        let s = |f: &Formula| std::boxed::Box::new(f.substitute(map));
        match self {
            Var(v) => map(v).unwrap_or_else(|| self.clone()),
            Zero => Zero,
            One => One,
            GNeg(a) => GNeg(s(a)),
            DMNeg(a) => DMNeg(s(a)),
            Delta(a) => Delta(s(a)),
            Box(a) => Box(s(a)),
            Dia(a) => Dia(s(a)),
            And(a, b) => And(s(a), s(b)),
            Or(a, b) => Or(s(a), s(b)),
            Impl(a, b) => Impl(s(a), s(b)),
            Coimpl(a, b) => Coimpl(s(a), s(b)),
        }
    }
}

// Binding strength used by the printer; higher binds tighter.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Impl(..) => 1,
        Formula::Coimpl(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        _ => 5,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let wrap = |f: &mut fmt::Formatter<'_>, sub: &Formula, parens: bool| -> fmt::Result {
            if parens {
                write!(f, "({sub})")
            } else {
                write!(f, "{sub}")
            }
        };
        match self {
            Var(v) => write!(f, "{v}"),
            Zero => write!(f, "0"),
            One => write!(f, "1"),
            GNeg(a) | DMNeg(a) | Delta(a) | Box(a) | Dia(a) => {
                let op = match self {
                    GNeg(_) => "~",
                    DMNeg(_) => "!",
                    Delta(_) => "#",
                    Box(_) => "[]",
                    _ => "<>",
                };
                write!(f, "{op}")?;
                wrap(f, a, precedence(a) < 5)
            }
            And(a, b) | Or(a, b) | Impl(a, b) | Coimpl(a, b) => {
                let p = precedence(self);
                let op = match self {
                    And(..) => "&",
                    Or(..) => "|",
                    Impl(..) => "->",
                    _ => "-<",
                };
                // `->` associates to the right, the rest to the left.
                let right_assoc = matches!(self, Impl(..));
                let (lp, rp) = if right_assoc { (p + 1, p) } else { (p, p + 1) };
                wrap(f, a, precedence(a) < lp)?;
                write!(f, " {op} ")?;
                wrap(f, b, precedence(b) < rp)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Formula, ParseError> {
        parse(s)
    }
}
