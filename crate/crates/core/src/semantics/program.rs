//! Formulas compiled to a shared-subterm DAG and evaluated bottom-up over
//! all worlds at once.

use std::collections::{BTreeSet, HashMap};

use super::algebra::*;
use super::Frame;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Var(usize),
    Zero,
    One,
    GNeg(usize),
    Delta(usize),
    And(usize, usize),
    Or(usize, usize),
    Impl(usize, usize),
    Coimpl(usize, usize),
    Box(usize),
    Dia(usize),
}

/// Nodes in post-order: children always precede parents.
#[derive(Debug, Clone)]
pub struct Program {
    nodes: Vec<Node>,
    vars: Vec<String>,
    roots: Vec<usize>,
}

/// The accessibility relation in the degree type being evaluated.
#[derive(Debug, Clone)]
pub enum Access<D> {
    Crisp(Vec<Vec<usize>>),
    Fuzzy(Vec<D>),
}

impl Access<Rat> {
    pub fn of(frame: &Frame) -> Access<Rat> {
        if frame.is_crisp() {
            Access::Crisp((0..frame.len()).map(|w| frame.successors(w)).collect())
        } else {
            let n = frame.len();
            Access::Fuzzy((0..n * n).map(|b| frame.weight(b / n, b % n)).collect())
        }
    }
}

impl<D: Degree> Access<D> {
    pub fn crisp(frame: &Frame) -> Access<D> {
        Access::Crisp((0..frame.len()).map(|w| frame.successors(w)).collect())
    }
}

impl Program {
    pub fn compile(f: &Formula) -> Result<Program> {
        Program::compile_all(std::slice::from_ref(f))
    }

    /// One program for several formulas; roots in argument order.
    pub fn compile_all(fs: &[Formula]) -> Result<Program> {
        let mut vars = BTreeSet::new();
        for f in fs {
            if f.has_dmneg() {
                return Err(Error::DmNegNotAllowed);
            }
            vars.extend(f.vars());
        }
        let vars: Vec<String> = vars.into_iter().collect();
        let mut b = Builder { nodes: Vec::new(), index: HashMap::new(), vars: &vars };
        let roots = fs.iter().map(|f| b.add(f)).collect();
        Ok(Program { nodes: b.nodes, vars, roots })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.roots[0]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn has_modal(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n, Node::Box(_) | Node::Dia(_)))
    }

    /// Fills `table[node * n + w]` for every node and world. `vals` holds
    /// `vals[var * n + w]`. With `snap`, modal values are moved to the
    /// nearest admissible value of the world (`[]` down, `<>` up); each
    /// list must be sorted and contain both bounds.
    pub fn eval<D: Degree>(
        &self,
        n: usize,
        access: &Access<D>,
        vals: &[D],
        snap: Option<&[Vec<D>]>,
        table: &mut Vec<D>,
    ) {
        table.clear();
        table.resize(self.nodes.len() * n, D::ZERO);
        for (i, node) in self.nodes.iter().enumerate() {
            let out = i * n;
            match *node {
                Node::Var(v) => table[out..out + n].copy_from_slice(&vals[v * n..v * n + n]),
                Node::Zero => table[out..out + n].fill(D::ZERO),
                Node::One => table[out..out + n].fill(D::ONE),
                Node::GNeg(a) => unary(table, out, a * n, n, godel_neg),
                Node::Delta(a) => unary(table, out, a * n, n, godel_delta),
                Node::And(a, b) => binary(table, out, a * n, b * n, n, godel_min),
                Node::Or(a, b) => binary(table, out, a * n, b * n, n, godel_max),
                Node::Impl(a, b) => binary(table, out, a * n, b * n, n, godel_impl),
                Node::Coimpl(a, b) => binary(table, out, a * n, b * n, n, godel_coimpl),
                Node::Box(a) | Node::Dia(a) => {
                    let is_box = matches!(node, Node::Box(_));
                    for w in 0..n {
                        let arg = |u: usize| table[a * n + u];
                        let raw = match access {
                            Access::Crisp(succ) => {
                                let it = succ[w].iter().map(|&u| arg(u));
                                if is_box {
                                    it.min().unwrap_or(D::ONE)
                                } else {
                                    it.max().unwrap_or(D::ZERO)
                                }
                            }
                            Access::Fuzzy(weights) => {
                                let row = &weights[w * n..w * n + n];
                                if is_box {
                                    (0..n).map(|u| godel_impl(row[u], arg(u))).min().unwrap_or(D::ONE)
                                } else {
                                    (0..n).map(|u| godel_min(row[u], arg(u))).max().unwrap_or(D::ZERO)
                                }
                            }
                        };
                        table[out + w] = match snap {
                            None => raw,
                            Some(t) => snap_value(&t[w], raw, is_box),
                        };
                    }
                }
            }
        }
    }
}

/// Greatest admissible value not above `x` (`down`) or least not below it.
pub fn snap_value<D: Degree>(admissible: &[D], x: D, down: bool) -> D {
    match admissible.binary_search(&x) {
        Ok(_) => x,
        Err(pos) => {
            if down {
                admissible[pos - 1]
            } else {
                admissible[pos]
            }
        }
    }
}

#[inline]
fn unary<D: Degree>(t: &mut [D], out: usize, a: usize, n: usize, op: fn(D) -> D) {
    for w in 0..n {
        t[out + w] = op(t[a + w]);
    }
}

#[inline]
fn binary<D: Degree>(t: &mut [D], out: usize, a: usize, b: usize, n: usize, op: fn(D, D) -> D) {
    for w in 0..n {
        t[out + w] = op(t[a + w], t[b + w]);
    }
}

struct Builder<'a> {
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    vars: &'a [String],
}

impl Builder<'_> {
    fn add(&mut self, f: &Formula) -> usize {
        let node = match f {
            Formula::Var(v) => Node::Var(self.vars.binary_search(v).expect("collected")),
            Formula::Zero => Node::Zero,
            Formula::One => Node::One,
            Formula::GNeg(a) => Node::GNeg(self.add(a)),
            Formula::Delta(a) => Node::Delta(self.add(a)),
            Formula::Box(a) => Node::Box(self.add(a)),
            Formula::Dia(a) => Node::Dia(self.add(a)),
            Formula::And(a, b) => Node::And(self.add(a), self.add(b)),
            Formula::Or(a, b) => Node::Or(self.add(a), self.add(b)),
            Formula::Impl(a, b) => Node::Impl(self.add(a), self.add(b)),
            Formula::Coimpl(a, b) => Node::Coimpl(self.add(a), self.add(b)),
            Formula::DMNeg(_) => unreachable!("rejected before building"),
        };
        if let Some(&i) = self.index.get(&node) {
            return i;
        }
        self.nodes.push(node);
        self.index.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }
}
