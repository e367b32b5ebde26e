//! Frame validity by exhaustive enumeration of valuations.
//!
//! A bi-Goedel value is always one of its inputs, 0 or 1, and every
//! comparison depends only on the relative order of the inputs. So it is
//! enough to enumerate the order types of the `(variable, world)` slots
//! relative to the fixed points `0 < d_1 < ... < d_D < 1` (the distinct
//! fuzzy weights): each slot either sits on a fixed point or inside one of
//! the gaps, and inside a gap the slots form a weak order. Slots are coded
//! as `u32` so that code order is value order.

use std::ops::ControlFlow;

use super::algebra::Degree;
use super::program::{Access, Program};
use super::{eval_kg2_at, Frame, KG2Model, KbiGModel, PairValue};
use crate::error::{Error, Result};
use crate::formula::{nnf, plus_translation, Formula};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// One representative per order type (exact).
    Canonical,
    /// Every valuation into `{0, 1/m, ..., 1}`.
    Grid(u32),
}

#[derive(Debug, Clone, Copy)]
pub struct ValidityOptions {
    pub mode: Mode,
    /// Maximum number of valuations to evaluate.
    pub budget: u64,
}

impl Default for ValidityOptions {
    fn default() -> Self {
        ValidityOptions { mode: Mode::Canonical, budget: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub model: KbiGModel,
    pub world: usize,
    pub value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameVerdict {
    Valid,
    Refuted(Refutation),
}

impl FrameVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, FrameVerdict::Valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kg2Refutation {
    pub model: KG2Model,
    pub world: usize,
    pub value: PairValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kg2FrameVerdict {
    Valid,
    Refuted(Kg2Refutation),
}

impl Kg2FrameVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Kg2FrameVerdict::Valid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Any,
    All,
    World(usize),
}

/// The fixed points and slot count of a canonical enumeration.
struct Chain {
    anchors: Vec<Rat>,
    k: u32,
}

impl Chain {
    fn new(frame: &Frame, k: usize) -> Chain {
        let mut anchors = vec![Rat::ZERO];
        anchors.extend(frame.fuzzy_weights());
        anchors.push(Rat::ONE);
        Chain { anchors, k: k as u32 }
    }

    fn anchor_code(&self, i: usize) -> u32 {
        if i + 1 == self.anchors.len() {
            u32::MAX
        } else {
            i as u32 * (self.k + 1)
        }
    }

    fn code_of_anchor_value(&self, x: Rat) -> u32 {
        let i = self.anchors.binary_search(&x).expect("weights are anchors");
        self.anchor_code(i)
    }

    fn to_rat(&self, code: u32) -> Rat {
        if code == u32::MAX {
            return Rat::ONE;
        }
        let (g, r) = ((code / (self.k + 1)) as usize, code % (self.k + 1));
        let lo = self.anchors[g];
        if r == 0 {
            return lo;
        }
        let hi = self.anchors[g + 1];
        lo + (hi - lo) * Rat::new(r as i64, self.k as i64 + 1)
    }

    fn for_each(
        &self,
        budget: u64,
        visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
    ) -> Result<u64> {
        let mut st = Walk {
            chain: self,
            codes: vec![0; self.k as usize],
            levels: vec![0; self.anchors.len() - 1],
            count: 0,
            budget,
        };
        let _ = st.rec(0, visit)?;
        Ok(st.count)
    }
}

struct Walk<'a> {
    chain: &'a Chain,
    codes: Vec<u32>,
    levels: Vec<u32>,
    count: u64,
    budget: u64,
}

impl Walk<'_> {
    fn rec(&mut self, i: usize, visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        if i == self.codes.len() {
            self.count += 1;
            if self.count > self.budget {
                return Err(Error::Inconclusive(format!("valuation budget of {} exhausted", self.budget)));
            }
            return Ok(visit(&self.codes));
        }
        for a in 0..self.chain.anchors.len() {
            self.codes[i] = self.chain.anchor_code(a);
            if self.rec(i + 1, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        let step = self.chain.k + 1;
        for g in 0..self.levels.len() {
            let base = g as u32 * step;
            for r in 1..=self.levels[g] {
                self.codes[i] = base + r;
                if self.rec(i + 1, visit)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            // a new level directly above rank j
            for j in 0..=self.levels[g] {
                let top = base + self.levels[g];
                for c in &mut self.codes[..i] {
                    if *c > base + j && *c <= top {
                        *c += 1;
                    }
                }
                self.levels[g] += 1;
                self.codes[i] = base + j + 1;
                let flow = self.rec(i + 1, visit)?;
                self.levels[g] -= 1;
                for c in &mut self.codes[..i] {
                    if *c > base + j + 1 && *c <= top + 1 {
                        *c -= 1;
                    }
                }
                if flow.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Number of canonical valuations for `k` slots on a crisp frame.
pub fn canonical_count(k: usize) -> u64 {
    let chain = Chain { anchors: vec![Rat::ZERO, Rat::ONE], k: k as u32 };
    chain.for_each(u64::MAX, &mut |_| ControlFlow::Continue(())).expect("unbounded")
}

fn model_from(frame: &Frame, vars: &[String], vals: &[Rat]) -> KbiGModel {
    let n = frame.len();
    let mut m = KbiGModel::new(frame.clone());
    for (i, v) in vars.iter().enumerate() {
        m.valuation.insert(v.clone(), vals[i * n..i * n + n].to_vec());
    }
    m
}

// Records the first refutation per targeted world; breaks when done.
struct Collector<'a, D> {
    n: usize,
    target: Target,
    found: Vec<Option<(Vec<D>, D)>>,
    remaining: usize,
    table: Vec<D>,
    prog: &'a Program,
}

impl<'a, D: Degree> Collector<'a, D> {
    fn new(prog: &'a Program, n: usize, target: Target) -> Self {
        let remaining = match target {
            Target::All => n,
            Target::Any | Target::World(_) => 1,
        };
        Collector { n, target, found: vec![None; n], remaining, table: Vec::new(), prog }
    }

    fn visit(&mut self, access: &Access<D>, vals: &[D], snap: Option<&[Vec<D>]>) -> ControlFlow<()> {
        self.prog.eval(self.n, access, vals, snap, &mut self.table);
        let root = self.prog.root() * self.n;
        for w in 0..self.n {
            let v = self.table[root + w];
            let wanted = match self.target {
                Target::World(t) => t == w,
                _ => true,
            };
            if wanted && v < D::ONE && self.found[w].is_none() {
                self.found[w] = Some((vals.to_vec(), v));
                self.remaining -= 1;
                if self.remaining == 0 {
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    }
}

fn refutations(frame: &Frame, f: &Formula, target: Target, opts: &ValidityOptions) -> Result<Vec<Option<Refutation>>> {
    let prog = Program::compile(f)?;
    let n = frame.len();
    let k = prog.vars().len() * n;
    match opts.mode {
        Mode::Canonical => {
            let chain = Chain::new(frame, k);
            let access: Access<u32> = if frame.is_crisp() {
                Access::crisp(frame)
            } else {
                Access::Fuzzy((0..n * n).map(|b| chain.code_of_anchor_value(frame.weight(b / n, b % n))).collect())
            };
            let mut col = Collector::new(&prog, n, target);
            chain.for_each(opts.budget, &mut |vals| col.visit(&access, vals, None))?;
            Ok(col
                .found
                .into_iter()
                .enumerate()
                .map(|(w, hit)| {
                    hit.map(|(vals, v)| {
                        let rats: Vec<Rat> = vals.iter().map(|&c| chain.to_rat(c)).collect();
                        Refutation { model: model_from(frame, prog.vars(), &rats), world: w, value: chain.to_rat(v) }
                    })
                })
                .collect())
        }
        Mode::Grid(m) => {
            let m = m.max(1);
            let grid: Vec<Rat> = (0..=m).map(|i| Rat::new(i as i64, m as i64)).collect();
            let total = (m as u64 + 1).checked_pow(k as u32).unwrap_or(u64::MAX);
            if total > opts.budget {
                return Err(Error::Inconclusive(format!("{total} grid valuations exceed the budget of {}", opts.budget)));
            }
            let access = Access::of(frame);
            let mut col = Collector::new(&prog, n, target);
            let mut vals = vec![Rat::ZERO; k];
            let base = m as u64 + 1;
            for code in 0..total {
                // base-(m+1) digits, last slot fastest
                let mut rest = code;
                for v in vals.iter_mut().rev() {
                    *v = grid[(rest % base) as usize];
                    rest /= base;
                }
                if col.visit(&access, &vals, None).is_break() {
                    break;
                }
            }
            Ok(col
                .found
                .into_iter()
                .enumerate()
                .map(|(w, hit)| {
                    hit.map(|(vals, v)| Refutation { model: model_from(frame, prog.vars(), &vals), world: w, value: v })
                })
                .collect())
        }
    }
}

fn first(found: Vec<Option<Refutation>>) -> FrameVerdict {
    found.into_iter().flatten().next().map_or(FrameVerdict::Valid, FrameVerdict::Refuted)
}

/// Validity of a `!`-free formula on a frame (at every world, or only at
/// `at_world`).
pub fn frame_valid_kbig(frame: &Frame, f: &Formula, at_world: Option<&str>) -> Result<FrameVerdict> {
    let at = at_world.map(|w| frame.index_of(w)).transpose()?;
    frame_valid_kbig_with(frame, f, at, &ValidityOptions::default())
}

pub fn frame_valid_kbig_with(
    frame: &Frame,
    f: &Formula,
    at_world: Option<usize>,
    opts: &ValidityOptions,
) -> Result<FrameVerdict> {
    let target = at_world.map_or(Target::Any, Target::World);
    Ok(first(refutations(frame, f, target, opts)?))
}

/// For every world, the first refuting valuation found, if any.
pub fn pointwise_kbig(frame: &Frame, f: &Formula, opts: &ValidityOptions) -> Result<Vec<Option<Refutation>>> {
    refutations(frame, f, Target::All, opts)
}

/// For every world, a two-valued refuting valuation if one exists.
pub fn classical_pointwise(frame: &Frame, f: &Formula) -> Result<Vec<Option<KbiGModel>>> {
    if !frame.is_crisp() {
        return Err(Error::FuzzyFrame);
    }
    let prog = Program::compile(f)?;
    let n = frame.len();
    let k = prog.vars().len() * n;
    if k >= 40 {
        return Err(Error::Inconclusive(format!("2^{k} classical valuations")));
    }
    let access: Access<u32> = Access::crisp(frame);
    let mut col = Collector::new(&prog, n, Target::All);
    let mut vals = vec![0u32; k];
    for bits in 0..1u64 << k {
        for (i, v) in vals.iter_mut().enumerate() {
            *v = if bits >> i & 1 == 1 { u32::MAX } else { 0 };
        }
        if col.visit(&access, &vals, None).is_break() {
            break;
        }
    }
    let to_rat = |c: u32| if c == u32::MAX { Rat::ONE } else { Rat::ZERO };
    Ok(col
        .found
        .into_iter()
        .map(|hit| hit.map(|(vals, _)| model_from(frame, prog.vars(), &vals.into_iter().map(to_rat).collect::<Vec<_>>())))
        .collect())
}

/// Two-valued Kripke validity; `#` is the identity on `{0, 1}`.
pub fn classical_frame_valid(frame: &Frame, f: &Formula, at_world: Option<&str>) -> Result<bool> {
    let found = classical_pointwise(frame, f)?;
    Ok(match at_world {
        Some(w) => found[frame.index_of(w)?].is_none(),
        None => found.iter().all(Option::is_none),
    })
}

fn kg2_translate(frame: &Frame, f: &Formula) -> Result<Formula> {
    if !frame.is_crisp() {
        return Err(Error::FuzzyFrame);
    }
    Ok(plus_translation(&nnf(f))?)
}

fn kg2_refutation(f: &Formula, r: Refutation) -> Result<Kg2Refutation> {
    let model = KG2Model::from_plus_model(&r.model)?;
    let value = eval_kg2_at(&model, r.world, f)?;
    Ok(Kg2Refutation { model, world: r.world, value })
}

/// KG2 validity through the translation `f ↦ plus(nnf(f))`; refuting
/// valuations are mapped back with `p ↦ v1`, `p__star ↦ v2`.
pub fn frame_valid_kg2(frame: &Frame, f: &Formula, at_world: Option<&str>) -> Result<Kg2FrameVerdict> {
    let at = at_world.map(|w| frame.index_of(w)).transpose()?;
    let t = kg2_translate(frame, f)?;
    match frame_valid_kbig_with(frame, &t, at, &ValidityOptions::default())? {
        FrameVerdict::Valid => Ok(Kg2FrameVerdict::Valid),
        FrameVerdict::Refuted(r) => Ok(Kg2FrameVerdict::Refuted(kg2_refutation(f, r)?)),
    }
}

pub fn pointwise_kg2(frame: &Frame, f: &Formula, opts: &ValidityOptions) -> Result<Vec<Option<Kg2Refutation>>> {
    let t = kg2_translate(frame, f)?;
    pointwise_kbig(frame, &t, opts)?
        .into_iter()
        .map(|hit| hit.map(|r| kg2_refutation(f, r)).transpose())
        .collect()
}
