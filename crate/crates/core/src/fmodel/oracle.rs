//! Exhaustive search for small F-models, used to cross-check the tableau.
//!
//! Only pointed models at `w0` are enumerated, and only those in which every
//! world is reachable from `w0` within the modal depth of the formula, with
//! worlds at that depth having no successors: cutting a model down to this
//! shape does not change the value of the formula at its root.

use std::collections::VecDeque;

use super::FModel;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::rat::Rat;
use crate::semantics::program::{Access, Program};
use crate::semantics::{Frame, KbiGModel};

/// Searches F-models with at most `max_worlds` worlds, grid values `i/r`
/// and at most `max_t` values per world (bounds included) for one where
/// `f` is 1 at `w0`. `budget` caps the number of model evaluations.
pub fn brute_force(
    f: &Formula,
    r: u32,
    max_worlds: usize,
    max_t: usize,
    budget: u64,
) -> Result<Option<(FModel, String)>> {
    if r == 0 || max_worlds == 0 || max_worlds > 4 {
        return Err(Error::InvalidModel("brute force needs r >= 1 and 1..=4 worlds".into()));
    }
    let prog = Program::compile(f)?;
    let depth = f.modal_depth();
    let code = |i: u32| if i == r { u32::MAX } else { i };
    let nv = prog.vars().len();
    let interior: Vec<u32> = (1..r).collect();
    let mut evals = 0u64;
    let mut table = Vec::new();

    for k in 1..=max_worlds {
        for mask in 0..1u64 << (k * k) {
            let frame = Frame::from_bitmask(k, mask);
            let Some(dist) = admissible(&frame, depth) else { continue };
            let inner: Vec<usize> = (0..k).filter(|&w| dist[w] < depth).collect();
            let access = Access::<u32>::crisp(&frame);
            let t_choices = subsets(&interior, max_t.saturating_sub(2));
            let mut t_idx = vec![0usize; inner.len()];
            loop {
                let mut t = vec![vec![0, u32::MAX]; k];
                for (slot, &w) in inner.iter().enumerate() {
                    let mut set: Vec<u32> = t_choices[t_idx[slot]].iter().map(|&x| code(x)).collect();
                    set.push(0);
                    set.push(u32::MAX);
                    set.sort_unstable();
                    t[w] = set;
                }
                let cells = nv * k;
                let total = (r as u64 + 1).checked_pow(cells as u32).unwrap_or(u64::MAX);
                let mut vals = vec![0u32; cells];
                for n in 0..total {
                    let mut x = n;
                    for cell in vals.iter_mut() {
                        *cell = code((x % (r as u64 + 1)) as u32);
                        x /= r as u64 + 1;
                    }
                    evals += 1;
                    if evals > budget {
                        return Err(Error::Inconclusive(format!("brute force budget of {budget} models spent")));
                    }
                    prog.eval(k, &access, &vals, Some(&t), &mut table);
                    if table[prog.root() * k] == u32::MAX {
                        return Ok(Some((witness(&frame, &prog, &vals, &t, r)?, "w0".into())));
                    }
                }
                if !advance(&mut t_idx, t_choices.len()) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// BFS distances from `w0` if the frame has the required shape and its
/// worlds are numbered in order of distance.
fn admissible(frame: &Frame, depth: usize) -> Option<Vec<usize>> {
    let k = frame.len();
    let mut dist = vec![usize::MAX; k];
    dist[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(w) = queue.pop_front() {
        for u in frame.successors(w) {
            if dist[u] == usize::MAX {
                dist[u] = dist[w] + 1;
                queue.push_back(u);
            }
        }
    }
    let shaped = (0..k).all(|w| dist[w] <= depth && (dist[w] < depth || frame.successors(w).is_empty()));
    let ordered = dist.windows(2).all(|p| p[0] <= p[1]);
    (shaped && ordered).then_some(dist)
}

fn subsets(items: &[u32], max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 0u64..1 << items.len() {
        if (mask.count_ones() as usize) <= max_len {
            out.push(items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect());
        }
    }
    out
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn witness(frame: &Frame, prog: &Program, vals: &[u32], t: &[Vec<u32>], r: u32) -> Result<FModel> {
    let k = frame.len();
    let rat = |x: u32| if x == u32::MAX { Rat::ONE } else { Rat::new(x as i64, r as i64) };
    let mut model = KbiGModel::new(frame.clone());
    for (v, name) in prog.vars().iter().enumerate() {
        for w in 0..k {
            model.set(name, w, rat(vals[v * k + w]));
        }
    }
    FModel::new(model, t.iter().map(|s| s.iter().map(|&x| rat(x)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmodel::eval_fmodel;
    use crate::formula::parse;

    #[test]
    fn finds_the_delta_dia_model() {
        let f = parse("~#(#<>p -> <>#p)").unwrap();
        let (fm, w) = brute_force(&f, 2, 2, 3, 1_000_000).unwrap().unwrap();
        assert_eq!(eval_fmodel(&fm, &w, &f).unwrap(), Rat::ONE);
        // a reflexive point with p = 1/2 is the smallest model
        assert_eq!(fm.model.frame.len(), 1);
        assert_eq!(fm.model.value("p", 0), Rat::new(1, 2));
    }

    #[test]
    fn contradictions_have_no_model() {
        assert!(brute_force(&parse("p & ~p").unwrap(), 3, 3, 3, 1_000_000).unwrap().is_none());
        let k = parse("~#([](p -> q) -> ([]p -> []q))").unwrap();
        assert!(brute_force(&k, 2, 3, 3, 10_000_000).unwrap().is_none());
    }

    #[test]
    fn shape_filter() {
        assert!(admissible(&Frame::crisp(2, &[(0, 1)]), 1).is_some());
        assert!(admissible(&Frame::crisp(2, &[(0, 1), (1, 1)]), 1).is_none());
        assert!(admissible(&Frame::crisp(2, &[]), 1).is_none());
        assert!(admissible(&Frame::crisp(3, &[(0, 2), (2, 1)]), 2).is_none());
    }
}
