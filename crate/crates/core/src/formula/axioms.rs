//! Hilbert-calculus axiom schemas, used as a corpus of formulas that every
//! sound decision procedure must accept.

use super::{parse, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Calculus {
    HKbiG,
    HKG2,
}

#[derive(Debug, Clone)]
pub struct AxiomSchema {
    pub id: &'static str,
    /// Template over the metavariables `phi`, `chi`, `psi`.
    pub template: Formula,
}

const METAVARS: [&str; 3] = ["phi", "chi", "psi"];

// Propositional part (Goedel logic with delta), then the modal axioms and
// the two derived crispness theorems together with P.
const KBIG: &[(&str, &str)] = &[
    ("A1", "(phi -> chi) -> (chi -> psi) -> phi -> psi"),
    ("A2a", "phi -> phi | chi"),
    ("A2b", "chi -> phi | chi"),
    ("A3", "(phi -> psi) -> (chi -> psi) -> phi | chi -> psi"),
    ("A4a", "phi & chi -> phi"),
    ("A4b", "phi & chi -> chi"),
    ("A5", "(phi -> chi) -> (phi -> psi) -> phi -> chi & psi"),
    ("A6a", "(phi -> chi -> psi) -> phi & chi -> psi"),
    ("A6b", "(phi & chi -> psi) -> phi -> chi -> psi"),
    ("A7", "(phi -> chi) -> ~chi -> ~phi"),
    ("A8", "(phi -> chi) | (chi -> phi)"),
    ("A9", "#phi | ~#phi"),
    ("A10a", "#(phi -> chi) -> #phi -> #chi"),
    ("A10b", "#(phi | chi) -> #phi | #chi"),
    ("A11a", "#phi -> phi"),
    ("A11b", "#phi -> ##phi"),
    ("Zero", "~<>0"),
    ("K1", "[](phi -> chi) -> []phi -> []chi"),
    ("K2", "<>(phi | chi) -> <>phi | <>chi"),
    ("FS1", "<>(phi -> chi) -> []phi -> <>chi"),
    ("FS2", "(<>phi -> []chi) -> [](phi -> chi)"),
    ("NDD", "~#(<>phi -> <>chi) -> <>~#(phi -> chi)"),
    ("Cr1", "[](phi | chi) -> []phi | <>chi"),
    ("Cr2", "#[]phi -> []#phi"),
    ("Barcan", "[]#phi -> #[]phi"),
    ("DiaDelta", "<>#phi -> #<>phi"),
    ("P", "[](phi -> chi) -> <>phi -> <>chi"),
];

const KG2_EXTRA: &[(&str, &str)] = &[
    ("neg", "!!phi <-> phi"),
    ("DeMAnd", "!(phi & chi) <-> !phi | !chi"),
    ("DeMOr", "!(phi | chi) <-> !phi & !chi"),
    ("DeMImpl", "!(phi -> chi) <-> !chi & ~#(!chi -> !phi)"),
    ("DeMDelta", "!#phi <-> ~~!phi"),
    ("DeMGNeg", "!~phi <-> ~#!phi"),
    ("DeMBoxDia", "[]phi <-> !<>!phi"),
];

pub fn schemas(calculus: Calculus) -> Vec<AxiomSchema> {
    let extra: &[(&str, &str)] = match calculus {
        Calculus::HKbiG => &[],
        Calculus::HKG2 => KG2_EXTRA,
    };
    KBIG.iter()
        .chain(extra)
        .map(|(id, text)| AxiomSchema { id, template: parse(text).expect("schema templates parse") })
        .collect()
}

impl AxiomSchema {
    /// Metavariables occurring in the template, in `phi, chi, psi` order.
    pub fn metavars(&self) -> Vec<&'static str> {
        let vars = self.template.vars();
        METAVARS.into_iter().filter(|m| vars.contains(*m)).collect()
    }

    /// Simultaneous substitution of `args` for [`AxiomSchema::metavars`].
    pub fn instantiate(&self, args: &[Formula]) -> Formula {
        let mv = self.metavars();
        assert_eq!(mv.len(), args.len(), "schema {} takes {} arguments", self.id, mv.len());
        self.template
            .substitute(&|name| mv.iter().position(|m| *m == name).map(|i| args[i].clone()))
    }
}

/// Every formula over `{p, q}` with at most `max_size` nodes, built from
/// the connectives of the calculus (`!` only for HKG2), in order of size.
pub fn instantiation_set(calculus: Calculus, max_size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new()];
    for size in 1..=max_size {
        let mut level = Vec::new();
        if size == 1 {
            level.push(Formula::var("p"));
            level.push(Formula::var("q"));
        } else {
            let mut unary: Vec<fn(Formula) -> Formula> =
                vec![Formula::gneg, Formula::delta, Formula::boxed, Formula::dia];
            if calculus == Calculus::HKG2 {
                unary.push(Formula::dmneg);
            }
            for op in &unary {
                for a in &by_size[size - 1] {
                    level.push(op(a.clone()));
                }
            }
            let binary: [fn(Formula, Formula) -> Formula; 3] = [Formula::and, Formula::or, Formula::implies];
            for left in 1..size - 1 {
                let right = size - 1 - left;
                for op in &binary {
                    for a in &by_size[left] {
                        for b in &by_size[right] {
                            level.push(op(a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}

#[derive(Debug, Clone)]
pub struct AxiomInstance {
    pub schema: &'static str,
    pub formula: Formula,
}

/// All instances of every schema of `calculus` with metavariables ranging
/// over [`instantiation_set`]`(calculus, depth)`.
pub fn axiom_corpus(calculus: Calculus, depth: usize) -> Vec<AxiomInstance> {
    let pool = instantiation_set(calculus, depth);
    let mut out = Vec::new();
    for schema in schemas(calculus) {
        let arity = schema.metavars().len() as u32;
        let total = pool.len().pow(arity);
        for n in 0..total {
            // base-|pool| digits of n, most significant for `phi`
            let args: Vec<Formula> = (0..arity)
                .rev()
                .map(|k| pool[(n / pool.len().pow(k)) % pool.len()].clone())
                .collect();
            out.push(AxiomInstance { schema: schema.id, formula: schema.instantiate(&args) });
        }
    }
    out
}
