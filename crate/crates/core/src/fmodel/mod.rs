//! F-models (crisp models whose modal values snap to a finite per-world
//! value set) and the labelled tableau that decides satisfiability in them.

pub mod oracle;
mod tableau;

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::rat::Rat;
use crate::semantics::{eval_snapped_all, KbiGModel, ModelFile};

pub use oracle::brute_force;
pub use tableau::{
    falsifiable, sat, succ_pred, valid_kbig, valid_kg2, SolveStats, SolverOptions, ValidOutcome, Verdict,
};

/// A crisp model with a finite value set `T(w)` at every world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FModel {
    pub model: KbiGModel,
    /// Sorted, containing 0 and 1.
    pub t: Vec<Vec<Rat>>,
}

impl FModel {
    pub fn new(model: KbiGModel, t: Vec<Vec<Rat>>) -> Result<FModel> {
        if !model.frame.is_crisp() {
            return Err(Error::FuzzyFrame);
        }
        if t.len() != model.frame.len() {
            return Err(Error::InvalidModel("one value set per world is required".into()));
        }
        let t = t
            .into_iter()
            .map(|mut set| {
                set.extend([Rat::ZERO, Rat::ONE]);
                set.sort();
                set.dedup();
                if set.iter().all(Rat::in_unit_interval) {
                    Ok(set)
                } else {
                    Err(Error::InvalidModel("value sets must lie in [0, 1]".into()))
                }
            })
            .collect::<Result<_>>()?;
        Ok(FModel { model, t })
    }

    pub fn from_file(file: &ModelFile) -> Result<FModel> {
        let t = file.t.clone().unwrap_or_else(|| vec![vec![Rat::ZERO, Rat::ONE]; file.frame.len()]);
        FModel::new(file.kbig(), t)
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile::from_kbig(&self.model).with_t(self.t.clone())
    }
}

/// Value under F-model semantics.
pub fn eval_fmodel(fm: &FModel, world: &str, f: &Formula) -> Result<Rat> {
    let w = fm.model.frame.index_of(world)?;
    Ok(eval_snapped_all(&fm.model, &fm.t, f)?[w])
}

/// Size of the grid and of the models that suffice for completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub r: BigUint,
    pub max_worlds: BigUint,
    pub max_t_per_world: usize,
    pub depth: usize,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} maxWorlds={} maxT={} depth={}",
            self.r, self.max_worlds, self.max_t_per_world, self.depth
        )
    }
}

/// `r + 1 = (|f|+2)·(|f|+2)^|f| + n·(|f|+2)^|f|` values, `(|f|+2)^|f|`
/// worlds and `|f|+2` values per world.
pub fn completeness_bound(f: &Formula) -> Bound {
    let size = f.size();
    let n = f.vars().len();
    let base = BigUint::from(size + 2);
    let worlds = base.pow(size as u32);
    let values = &base * &worlds + BigUint::from(n) * &worlds;
    Bound { r: values - 1u32, max_worlds: worlds, max_t_per_world: size + 2, depth: f.modal_depth() }
}

/// Smallest grid on which an unsatisfiable verdict is conclusive. Without
/// modalities every value is 0, 1 or the value of a variable, so `n + 1`
/// steps are enough; otherwise the general bound applies.
pub fn sufficient_grid(f: &Formula) -> BigUint {
    if f.modal_depth() == 0 {
        BigUint::from(f.vars().len() + 1)
    } else {
        completeness_bound(f).r
    }
}
