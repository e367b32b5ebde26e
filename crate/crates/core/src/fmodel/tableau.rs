//! Labelled tableau over the grid `{0, 1/r, ..., 1}`.
//!
//! Every world keeps an interval of grid indices per subformula; a formula
//! is labelled at a world when its interval is narrower than `[0, r]`.
//! Propositional rules fire on exact labels, compound formulas carrying a
//! proper interval are split into exact values, and modal requirements are
//! discharged one successor at a time. Successors never constrain their
//! parent, so each is solved to completion and only its witness is kept.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;

use super::{eval_fmodel, sufficient_grid, FModel};
use crate::error::{Error, Result};
use crate::formula::{eliminate_coimpl, nnf, plus_translation, Formula};
use crate::rat::Rat;
use crate::semantics::{Frame, KbiGModel};

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Rule applications allowed before giving up with `Inconclusive`.
    pub max_steps: u64,
    pub trace: bool,
    /// Keep doubling the grid until a model is found or the grid is large
    /// enough for the answer to be final.
    pub exhaustive: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_steps: 2_000_000, trace: false, exhaustive: false }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub steps: u64,
    /// Largest number of labelled formulas and edges on the active path.
    pub max_path_entries: usize,
    /// Size of the formula the tableau was started on.
    pub root_size: usize,
    /// Grid the final verdict refers to.
    pub r: u32,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sat { witness: FModel, world: String },
    /// Every branch closed, but the grid is below the completeness bound.
    UnsatAtGrid { r: u32 },
    Unsat { complete: bool },
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidOutcome {
    /// No countermodel on the grid; `complete` when the grid reaches the
    /// completeness bound.
    Valid { r: u32, complete: bool },
    Countermodel { witness: FModel, world: String, value: Rat },
}

impl ValidOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidOutcome::Valid { .. })
    }
}

#[derive(Debug, Clone, Copy)]
enum TNode {
    Var(usize),
    Zero,
    One,
    GNeg(usize),
    Delta(usize),
    And(usize, usize),
    Or(usize, usize),
    Impl(usize, usize),
    Box(usize),
    Dia(usize),
}

impl TNode {
    fn is_compound(self) -> bool {
        !matches!(self, TNode::Var(_) | TNode::Zero | TNode::One)
    }
}

struct Dag {
    nodes: Vec<TNode>,
    text: Vec<String>,
    vars: Vec<String>,
    root: usize,
}

impl Dag {
    fn build(f: &Formula) -> Dag {
        let vars: Vec<String> = f.vars().into_iter().collect();
        let mut dag = Dag { nodes: Vec::new(), text: Vec::new(), vars, root: 0 };
        let mut index = HashMap::new();
        dag.root = dag.add(f, &mut index);
        dag
    }

    fn add(&mut self, f: &Formula, index: &mut HashMap<Formula, usize>) -> usize {
        if let Some(&i) = index.get(f) {
            return i;
        }
        let node = match f {
            Formula::Var(v) => TNode::Var(self.vars.binary_search(v).expect("collected")),
            Formula::Zero => TNode::Zero,
            Formula::One => TNode::One,
            Formula::GNeg(a) => TNode::GNeg(self.add(a, index)),
            Formula::Delta(a) => TNode::Delta(self.add(a, index)),
            Formula::Box(a) => TNode::Box(self.add(a, index)),
            Formula::Dia(a) => TNode::Dia(self.add(a, index)),
            Formula::And(a, b) => TNode::And(self.add(a, index), self.add(b, index)),
            Formula::Or(a, b) => TNode::Or(self.add(a, index), self.add(b, index)),
            Formula::Impl(a, b) => TNode::Impl(self.add(a, index), self.add(b, index)),
            Formula::Coimpl(..) | Formula::DMNeg(_) => unreachable!("removed before building"),
        };
        self.nodes.push(node);
        self.text.push(f.to_string());
        index.insert(f.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }
}

/// Labels of one world.
#[derive(Clone)]
struct Labels {
    lo: Vec<u32>,
    hi: Vec<u32>,
    /// Branching rule already applied at this (exactly labelled) node.
    applied: Vec<bool>,
}

struct Closed;

impl Labels {
    fn fresh(n: usize, r: u32) -> Labels {
        Labels { lo: vec![0; n], hi: vec![r; n], applied: vec![false; n] }
    }

    fn narrow(&mut self, i: usize, lo: u32, hi: u32) -> std::result::Result<bool, Closed> {
        let (nl, nh) = (self.lo[i].max(lo), self.hi[i].min(hi));
        if nl > nh {
            return Err(Closed);
        }
        let changed = (nl, nh) != (self.lo[i], self.hi[i]);
        self.lo[i] = nl;
        self.hi[i] = nh;
        Ok(changed)
    }

    fn exact(&self, i: usize) -> Option<u32> {
        (self.lo[i] == self.hi[i]).then_some(self.lo[i])
    }

    fn labelled(&self, i: usize, r: u32) -> bool {
        self.lo[i] > 0 || self.hi[i] < r
    }
}

/// One alternative of a branching point: intervals to intersect.
type Alternative = Vec<(usize, u32, u32)>;

struct WorldWitness {
    vars: Vec<u32>,
    t: Vec<u32>,
    children: Vec<WorldWitness>,
}

struct Solver<'a> {
    dag: &'a Dag,
    r: u32,
    max_steps: u64,
    stats: SolveStats,
    trace: bool,
    created: usize,
    /// Labelled entries of the ancestors of the world being expanded.
    ancestors: usize,
}

impl Solver<'_> {
    fn step(&mut self) -> Result<()> {
        self.stats.steps += 1;
        if self.stats.steps > self.max_steps {
            return Err(Error::Inconclusive(format!(
                "step limit of {} reached on grid r={}",
                self.max_steps, self.r
            )));
        }
        Ok(())
    }

    fn value(&self, k: u32) -> Rat {
        Rat::new(k as i64, self.r as i64)
    }

    fn log(&mut self, rule: &str, world: usize, node: usize, k: u32, children: usize) {
        if self.trace {
            let line = format!(
                "{rule} w{world}:{} = {} children={children}",
                self.dag.text[node],
                self.value(k)
            );
            self.stats.trace.push(line);
        }
    }

    /// Non-branching rules and the shared parts of branching ones, to a
    /// fixpoint.
    fn propagate(&mut self, w: usize, l: &mut Labels) -> std::result::Result<(), Closed> {
        let r = self.r;
        loop {
            let mut changed = false;
            for i in (0..self.dag.nodes.len()).rev() {
                let node = self.dag.nodes[i];
                match node {
                    TNode::Zero => changed |= l.narrow(i, 0, 0)?,
                    TNode::One => changed |= l.narrow(i, r, r)?,
                    // only 0 and 1 are possible values
                    TNode::GNeg(_) | TNode::Delta(_) => {
                        let lo = if l.lo[i] == 0 { 0 } else { r };
                        let hi = if l.hi[i] == r { r } else { 0 };
                        changed |= l.narrow(i, lo, hi)?;
                    }
                    _ => {}
                }
                let Some(v) = l.exact(i) else { continue };
                let first = !l.applied[i];
                let (rule, x) = match node {
                    TNode::GNeg(a) if v == r => (Some("~1"), l.narrow(a, 0, 0)?),
                    TNode::GNeg(a) => (Some("~0"), l.narrow(a, 1, r)?),
                    TNode::Delta(a) if v == r => (Some("#1"), l.narrow(a, r, r)?),
                    TNode::Delta(a) => (Some("#0"), l.narrow(a, 0, r - 1)?),
                    TNode::Impl(a, b) if v < r => (Some("->"), l.narrow(b, v, v)? | l.narrow(a, v + 1, r)?),
                    // below 1 (above 0) only the shared half of the branching rule
                    TNode::And(a, b) => ((v == r).then_some("&1"), l.narrow(a, v, r)? | l.narrow(b, v, r)?),
                    TNode::Or(a, b) => ((v == 0).then_some("|0"), l.narrow(a, 0, v)? | l.narrow(b, 0, v)?),
                    _ => (None, false),
                };
                changed |= x;
                if let Some(rule) = rule {
                    if first {
                        l.applied[i] = true;
                        self.log(rule, w, i, v, 1);
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// The pending branching point with the fewest viable alternatives.
    fn choose(&self, l: &mut Labels) -> Option<(usize, &'static str, Vec<Alternative>)> {
        let r = self.r;
        let viable = |l: &Labels, alt: &Alternative| alt.iter().all(|&(i, lo, hi)| lo.max(l.lo[i]) <= hi.min(l.hi[i]));
        let mut best: Option<(usize, &'static str, Vec<Alternative>)> = None;
        for i in 0..self.dag.nodes.len() {
            let node = self.dag.nodes[i];
            let (rule, alts): (&'static str, Vec<Alternative>) = match (l.exact(i), node) {
                (Some(_), _) if l.applied[i] => continue,
                (Some(v), TNode::And(a, b)) if v < r => {
                    if l.exact(a) == Some(v) || l.exact(b) == Some(v) {
                        l.applied[i] = true;
                        continue;
                    }
                    ("&", vec![vec![(a, v, v)], vec![(b, v, v)]])
                }
                (Some(v), TNode::Or(a, b)) if v > 0 => {
                    if l.exact(a) == Some(v) || l.exact(b) == Some(v) {
                        l.applied[i] = true;
                        continue;
                    }
                    ("|", vec![vec![(a, v, v)], vec![(b, v, v)]])
                }
                (Some(v), TNode::Impl(a, b)) if v == r => {
                    let done = l.hi[a] == 0
                        || l.lo[b] == r
                        || l.exact(a).is_some_and(|x| l.lo[b] >= x && l.hi[b] < r);
                    if done {
                        l.applied[i] = true;
                        continue;
                    }
                    let mut alts = vec![vec![(a, 0, 0)], vec![(b, r, r)]];
                    alts.extend((1..r).map(|x| vec![(a, x, x), (b, x, r - 1)]));
                    ("->1", alts)
                }
                (None, node) if node.is_compound() && l.labelled(i, r) => {
                    let vals: Vec<u32> = match node {
                        TNode::GNeg(_) | TNode::Delta(_) => vec![0, r],
                        _ => (l.lo[i]..=l.hi[i]).collect(),
                    };
                    ("split", vals.into_iter().map(|x| vec![(i, x, x)]).collect())
                }
                _ => continue,
            };
            let alts: Vec<Alternative> = alts.into_iter().filter(|a| viable(l, a)).collect();
            if best.as_ref().is_none_or(|b| alts.len() < b.2.len()) {
                let empty = alts.is_empty();
                best = Some((i, rule, alts));
                if empty {
                    break;
                }
            }
        }
        best
    }

    fn labelled_count(&self, l: &Labels) -> usize {
        (0..self.dag.nodes.len()).filter(|&i| l.labelled(i, self.r)).count()
    }

    fn solve(&mut self, w: usize, mut l: Labels) -> Result<Option<WorldWitness>> {
        self.step()?;
        if self.propagate(w, &mut l).is_err() {
            return Ok(None);
        }
        let here = self.labelled_count(&l);
        self.stats.max_path_entries = self.stats.max_path_entries.max(self.ancestors + here);

        if let Some((i, rule, alts)) = self.choose(&mut l) {
            let v = l.lo[i];
            self.log(rule, w, i, v, alts.len());
            for alt in alts {
                let mut child = l.clone();
                if rule != "split" {
                    child.applied[i] = true;
                }
                let ok = alt.iter().all(|&(j, lo, hi)| child.narrow(j, lo, hi).is_ok());
                if ok {
                    if let Some(found) = self.solve(w, child)? {
                        return Ok(Some(found));
                    }
                }
            }
            return Ok(None);
        }
        self.modal_phase(w, &l, here)
    }

    fn modal_phase(&mut self, w: usize, l: &Labels, here: usize) -> Result<Option<WorldWitness>> {
        let r = self.r;
        let mut t = BTreeSet::from([0, r]);
        let mut inherited: Vec<(usize, u32, u32)> = Vec::new();
        let mut modal = Vec::new();
        for (i, node) in self.dag.nodes.iter().enumerate() {
            let (TNode::Box(a) | TNode::Dia(a)) = *node else { continue };
            let Some(k) = l.exact(i) else { continue };
            t.insert(k);
            let is_box = matches!(node, TNode::Box(_));
            inherited.push(if is_box { (a, k, r) } else { (a, 0, k) });
            modal.push((i, a, k, is_box));
        }
        let t: Vec<u32> = t.into_iter().collect();
        let mut children = Vec::new();
        for (i, a, k, is_box) in modal {
            let (rule, lo, hi) = match (is_box, succ_pred(&t, k).expect("k is in T")) {
                (true, (Some(s), _)) => ("[]+", k, s),
                (false, (_, Some(p))) => ("<>+", p, k),
                _ => continue,
            };
            self.created += 1;
            let id = self.created;
            self.log(rule, w, i, k, 1);
            let mut succ = Labels::fresh(self.dag.nodes.len(), r);
            let ok = inherited.iter().chain(std::iter::once(&(a, lo, hi))).all(|&(j, lo, hi)| succ.narrow(j, lo, hi).is_ok());
            if !ok {
                return Ok(None);
            }
            // one more relational entry for the edge to the new world
            self.ancestors += here + 1;
            let res = self.solve(id, succ);
            self.ancestors -= here + 1;
            match res? {
                Some(found) => children.push(found),
                None => return Ok(None),
            }
        }
        let vars = self
            .dag
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| if let TNode::Var(v) = n { Some((*v, l.lo[i])) } else { None })
            .fold(vec![0; self.dag.vars.len()], |mut acc, (v, x)| {
                acc[v] = x;
                acc
            });
        Ok(Some(WorldWitness { vars, t, children }))
    }

    fn assemble(&self, root: WorldWitness) -> Result<FModel> {
        let mut flat = Vec::new();
        let mut edges = Vec::new();
        let mut stack = vec![(root, None)];
        while let Some((node, parent)) = stack.pop() {
            let id = flat.len();
            if let Some(p) = parent {
                edges.push((p, id));
            }
            let WorldWitness { vars, t, children } = node;
            flat.push((vars, t));
            for c in children.into_iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        let mut model = KbiGModel::new(Frame::crisp(flat.len(), &edges));
        for (w, (vars, _)) in flat.iter().enumerate() {
            for (v, &x) in vars.iter().enumerate() {
                model.set(&self.dag.vars[v], w, self.value(x));
            }
        }
        let t = flat.iter().map(|(_, t)| t.iter().map(|&k| self.value(k)).collect()).collect();
        FModel::new(model, t)
    }
}

/// The neighbours of `v` inside the sorted modal value set `t`: the grid
/// point just below the next larger member and the one just above the next
/// smaller member. `None` where no such member exists.
pub fn succ_pred(t: &[u32], v: u32) -> Result<(Option<u32>, Option<u32>)> {
    let pos = t
        .binary_search(&v)
        .map_err(|_| Error::InvalidModel(format!("{v} is not among the modal values {t:?}")))?;
    let succ = t.get(pos + 1).map(|&u| u - 1);
    let pred = pos.checked_sub(1).map(|p| t[p] + 1);
    Ok((succ, pred))
}

fn prepare(f: &Formula) -> Result<Formula> {
    if f.has_dmneg() {
        return Err(Error::DmNegNotAllowed);
    }
    Ok(eliminate_coimpl(f))
}

fn run(f: &Formula, r: u32, opts: &SolverOptions, stats: &mut SolveStats) -> Result<Option<FModel>> {
    if r == 0 {
        return Err(Error::InvalidModel("the grid needs r >= 1".into()));
    }
    let g = prepare(f)?;
    let dag = Dag::build(&g);
    let mut solver = Solver {
        dag: &dag,
        r,
        max_steps: opts.max_steps,
        stats: std::mem::take(stats),
        trace: opts.trace,
        created: 0,
        ancestors: 0,
    };
    solver.stats.root_size = f.size();
    solver.stats.r = r;
    let mut labels = Labels::fresh(dag.nodes.len(), r);
    let _ = labels.narrow(dag.root, r, r);
    let found = solver.solve(0, labels);
    let out = match found {
        Ok(Some(w)) => solver.assemble(w).map(Some),
        Ok(None) => Ok(None),
        Err(e) => Err(e),
    };
    *stats = solver.stats;
    let out = out?;
    if let Some(fm) = &out {
        let v = eval_fmodel(fm, "w0", f)?;
        assert_eq!(v, Rat::ONE, "tableau witness for `{f}` evaluates to {v}");
    }
    Ok(out)
}

/// Satisfiability (value 1 at some world) in F-models on the grid `r`.
pub fn sat(f: &Formula, r: u32, opts: &SolverOptions) -> Result<(Verdict, SolveStats)> {
    let needed = sufficient_grid(f);
    let mut stats = SolveStats::default();
    let mut r = r;
    loop {
        let used = stats.steps;
        let budget = SolverOptions { max_steps: opts.max_steps.saturating_sub(used), ..opts.clone() };
        let mut round = SolveStats::default();
        let res = run(f, r, &budget, &mut round);
        stats.steps = used + round.steps;
        stats.max_path_entries = stats.max_path_entries.max(round.max_path_entries);
        stats.root_size = round.root_size;
        stats.r = r;
        stats.trace.append(&mut round.trace);
        let complete = BigUint::from(r) >= needed;
        match res? {
            Some(witness) => return Ok((Verdict::Sat { witness, world: "w0".into() }, stats)),
            None if complete => return Ok((Verdict::Unsat { complete: true }, stats)),
            None if !opts.exhaustive => return Ok((Verdict::UnsatAtGrid { r }, stats)),
            None => {
                let next = BigUint::from(r) * 2u32;
                let next = if next > needed { needed.clone() } else { next };
                r = u32::try_from(next).map_err(|_| {
                    Error::Inconclusive(format!(
                        "no model up to r={r}; the completeness grid {needed} is out of reach"
                    ))
                })?;
            }
        }
    }
}

/// Satisfiability of `~#f`: some world gives `f` a value below 1.
pub fn falsifiable(f: &Formula, r: u32, opts: &SolverOptions) -> Result<(Verdict, SolveStats)> {
    sat(&Formula::gneg(Formula::delta(f.clone())), r, opts)
}

pub fn valid_kbig(f: &Formula, r: u32, opts: &SolverOptions) -> Result<(ValidOutcome, SolveStats)> {
    let (verdict, stats) = falsifiable(f, r, opts)?;
    let out = match verdict {
        Verdict::Sat { witness, world } => {
            let value = eval_fmodel(&witness, &world, f)?;
            ValidOutcome::Countermodel { witness, world, value }
        }
        Verdict::UnsatAtGrid { r } => ValidOutcome::Valid { r, complete: false },
        Verdict::Unsat { complete } => ValidOutcome::Valid { r: stats.r, complete },
    };
    Ok((out, stats))
}

/// KG2 validity through the translation that turns negated variables into
/// fresh ones; a countermodel refers to the translated formula.
pub fn valid_kg2(f: &Formula, r: u32, opts: &SolverOptions) -> Result<(ValidOutcome, SolveStats)> {
    let translated = plus_translation(&nnf(f))?;
    valid_kbig(&translated, r, opts)
}
