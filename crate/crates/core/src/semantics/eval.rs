use super::algebra::*;
use super::program::{Access, Program};
use super::{KG2Model, KbiGModel, PairValue};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::rat::Rat;

fn valuation_vector(m: &KbiGModel, prog: &Program) -> Vec<Rat> {
    let n = m.frame.len();
    let mut vals = Vec::with_capacity(prog.vars().len() * n);
    for v in prog.vars() {
        vals.extend((0..n).map(|w| m.value(v, w)));
    }
    vals
}

/// Values of each formula at every world, `out[formula][world]`.
pub fn eval_kbig_many(m: &KbiGModel, fs: &[Formula]) -> Result<Vec<Vec<Rat>>> {
    let prog = Program::compile_all(fs)?;
    let n = m.frame.len();
    let mut table = Vec::new();
    prog.eval(n, &Access::of(&m.frame), &valuation_vector(m, &prog), None, &mut table);
    Ok(prog.roots().iter().map(|&r| table[r * n..r * n + n].to_vec()).collect())
}

pub fn eval_kbig_all(m: &KbiGModel, f: &Formula) -> Result<Vec<Rat>> {
    Ok(eval_kbig_many(m, std::slice::from_ref(f))?.remove(0))
}

pub fn eval_kbig(m: &KbiGModel, world: &str, f: &Formula) -> Result<Rat> {
    let w = m.frame.index_of(world)?;
    Ok(eval_kbig_all(m, f)?[w])
}

/// KbiG value under F-model semantics: modal values snap to `t[w]`.
pub fn eval_snapped_all(m: &KbiGModel, t: &[Vec<Rat>], f: &Formula) -> Result<Vec<Rat>> {
    if !m.frame.is_crisp() {
        return Err(Error::FuzzyFrame);
    }
    let prog = Program::compile(f)?;
    let n = m.frame.len();
    let mut table = Vec::new();
    prog.eval(n, &Access::crisp(&m.frame), &valuation_vector(m, &prog), Some(t), &mut table);
    let r = prog.root();
    Ok(table[r * n..r * n + n].to_vec())
}

pub fn eval_kg2(m: &KG2Model, world: &str, f: &Formula) -> Result<PairValue> {
    if !m.frame.is_crisp() {
        return Err(Error::FuzzyFrame);
    }
    let w = m.frame.index_of(world)?;
    Ok(Kg2Eval { m, succ: (0..m.frame.len()).map(|u| m.frame.successors(u)).collect() }.eval(w, f))
}

pub fn eval_kg2_at(m: &KG2Model, w: usize, f: &Formula) -> Result<PairValue> {
    eval_kg2(m, m.frame.world(w), f)
}

struct Kg2Eval<'a> {
    m: &'a KG2Model,
    succ: Vec<Vec<usize>>,
}

impl Kg2Eval<'_> {
    fn eval(&self, w: usize, f: &Formula) -> PairValue {
        use Formula::*;
        let pv = PairValue::new;
        match f {
            Var(p) => self.m.value(p, w),
            Zero => PairValue::FALSE,
            One => PairValue::TRUE,
            DMNeg(a) => self.eval(w, a).swap(),
            GNeg(a) => {
                let x = self.eval(w, a);
                pv(godel_neg(x.t), godel_coimpl(Rat::ONE, x.f))
            }
            Delta(a) => {
                let x = self.eval(w, a);
                pv(godel_delta(x.t), godel_neg(godel_neg(x.f)))
            }
            And(a, b) => {
                let (x, y) = (self.eval(w, a), self.eval(w, b));
                pv(godel_min(x.t, y.t), godel_max(x.f, y.f))
            }
            Or(a, b) => {
                let (x, y) = (self.eval(w, a), self.eval(w, b));
                pv(godel_max(x.t, y.t), godel_min(x.f, y.f))
            }
            Impl(a, b) => {
                let (x, y) = (self.eval(w, a), self.eval(w, b));
                pv(godel_impl(x.t, y.t), godel_coimpl(y.f, x.f))
            }
            Coimpl(a, b) => {
                // a -< b abbreviates a & ~#(a -> b)
                let (x, y) = (self.eval(w, a), self.eval(w, b));
                let imp = pv(godel_impl(x.t, y.t), godel_coimpl(y.f, x.f));
                let del = pv(godel_delta(imp.t), godel_neg(godel_neg(imp.f)));
                let neg = pv(godel_neg(del.t), godel_coimpl(Rat::ONE, del.f));
                pv(godel_min(x.t, neg.t), godel_max(x.f, neg.f))
            }
            Box(a) | Dia(a) => {
                let vals: Vec<PairValue> = self.succ[w].iter().map(|&u| self.eval(u, a)).collect();
                let inf_t = vals.iter().map(|x| x.t).min().unwrap_or(Rat::ONE);
                let sup_t = vals.iter().map(|x| x.t).max().unwrap_or(Rat::ZERO);
                let inf_f = vals.iter().map(|x| x.f).min().unwrap_or(Rat::ONE);
                let sup_f = vals.iter().map(|x| x.f).max().unwrap_or(Rat::ZERO);
                if matches!(f, Box(_)) {
                    pv(inf_t, sup_f)
                } else {
                    pv(sup_t, inf_f)
                }
            }
        }
    }
}

/// At every world, the minimum of the premises is at most the conclusion.
pub fn check_consequence_kbig(m: &KbiGModel, premises: &[Formula], conclusion: &Formula) -> Result<bool> {
    let mut all = premises.to_vec();
    all.push(conclusion.clone());
    let vals = eval_kbig_many(m, &all)?;
    let (concl, prem) = vals.split_last().expect("conclusion present");
    Ok((0..m.frame.len()).all(|w| {
        let inf = prem.iter().map(|p| p[w]).min().unwrap_or(Rat::ONE);
        inf <= concl[w]
    }))
}

/// Both the infimum condition on support of truth and the supremum
/// condition on support of falsity, at every world.
pub fn check_consequence_kg2(m: &KG2Model, premises: &[Formula], conclusion: &Formula) -> Result<bool> {
    for w in 0..m.frame.len() {
        let prem: Vec<PairValue> = premises.iter().map(|p| eval_kg2_at(m, w, p)).collect::<Result<_>>()?;
        let c = eval_kg2_at(m, w, conclusion)?;
        let inf_t = prem.iter().map(|x| x.t).min().unwrap_or(Rat::ONE);
        let sup_f = prem.iter().map(|x| x.f).max().unwrap_or(Rat::ZERO);
        if inf_t > c.t || sup_f < c.f {
            return Ok(false);
        }
    }
    Ok(true)
}
