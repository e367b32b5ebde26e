//! Seeded random formula generators for the test suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unary {
    GNeg,
    DMNeg,
    Delta,
    Box,
    Dia,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binary {
    And,
    Or,
    Impl,
    Coimpl,
}

/// Leaves and connectives a generator may use.
#[derive(Debug, Clone)]
pub struct Signature {
    pub vars: Vec<String>,
    pub zero: bool,
    pub one: bool,
    pub unary: Vec<Unary>,
    pub binary: Vec<Binary>,
}

impl Signature {
    fn with(vars: &[&str], constants: (bool, bool), unary: &[Unary], binary: &[Binary]) -> Signature {
        Signature {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            zero: constants.0,
            one: constants.1,
            unary: unary.to_vec(),
            binary: binary.to_vec(),
        }
    }

    /// Everything except `!`.
    pub fn ltriangle(vars: &[&str]) -> Signature {
        use Binary::*;
        use Unary::*;
        Signature::with(vars, (true, true), &[GNeg, Delta, Box, Dia], &[And, Or, Impl, Coimpl])
    }

    pub fn full(vars: &[&str]) -> Signature {
        use Binary::*;
        use Unary::*;
        Signature::with(vars, (true, true), &[GNeg, DMNeg, Delta, Box, Dia], &[And, Or, Impl, Coimpl])
    }

    /// `{0, &, |, ->, [], <>}`, the language of the Glivenko statements.
    pub fn glivenko(vars: &[&str]) -> Signature {
        Signature::with(vars, (true, false), &[Unary::Box, Unary::Dia], &[Binary::And, Binary::Or, Binary::Impl])
    }

    /// `{0, 1, &, |, [], <>}`.
    pub fn monotone(vars: &[&str]) -> Signature {
        Signature::with(vars, (true, true), &[Unary::Box, Unary::Dia], &[Binary::And, Binary::Or])
    }

    /// `{0, 1, ~, &, |, ->, [], <>}` without variables.
    pub fn closed() -> Signature {
        use Binary::*;
        use Unary::*;
        Signature::with(&[], (true, true), &[GNeg, Box, Dia], &[And, Or, Impl])
    }

    fn leaves(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = self.vars.iter().map(|v| Formula::var(v)).collect();
        if self.zero {
            out.push(Formula::Zero);
        }
        if self.one {
            out.push(Formula::One);
        }
        out
    }
}

pub fn apply_unary(op: Unary, a: Formula) -> Formula {
    match op {
        Unary::GNeg => Formula::gneg(a),
        Unary::DMNeg => Formula::dmneg(a),
        Unary::Delta => Formula::delta(a),
        Unary::Box => Formula::boxed(a),
        Unary::Dia => Formula::dia(a),
    }
}

pub fn apply_binary(op: Binary, a: Formula, b: Formula) -> Formula {
    match op {
        Binary::And => Formula::and(a, b),
        Binary::Or => Formula::or(a, b),
        Binary::Impl => Formula::implies(a, b),
        Binary::Coimpl => Formula::coimpl(a, b),
    }
}

/// Deterministic formula source.
pub struct FormulaGen {
    rng: ChaCha8Rng,
}

impl FormulaGen {
    pub fn new(seed: u64) -> FormulaGen {
        FormulaGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A formula with exactly `size` nodes where the signature allows it
    /// (falls back to fewer nodes when no binary connective is available
    /// for an even split).
    pub fn exact(&mut self, sig: &Signature, size: usize) -> Formula {
        let leaves = sig.leaves();
        if size <= 1 || (sig.unary.is_empty() && sig.binary.is_empty()) {
            return leaves.choose(&mut self.rng).expect("signature has leaves").clone();
        }
        let can_binary = size >= 3 && !sig.binary.is_empty();
        let use_binary = can_binary && (sig.unary.is_empty() || self.rng.gen_bool(0.6));
        if use_binary {
            let op = *sig.binary.choose(&mut self.rng).unwrap();
            let left = self.rng.gen_range(1..size - 1);
            let a = self.exact(sig, left);
            let b = self.exact(sig, size - 1 - left);
            apply_binary(op, a, b)
        } else if !sig.unary.is_empty() {
            let op = *sig.unary.choose(&mut self.rng).unwrap();
            apply_unary(op, self.exact(sig, size - 1))
        } else {
            self.exact(sig, size - 1)
        }
    }

    /// Uniform size in `1..=max_size`, then [`FormulaGen::exact`].
    pub fn up_to(&mut self, sig: &Signature, max_size: usize) -> Formula {
        let size = self.rng.gen_range(1..=max_size.max(1));
        self.exact(sig, size)
    }

    /// `a -> b` with `a` and `b` monotone.
    pub fn monotone_implication(&mut self, vars: &[&str], max_side: usize) -> Formula {
        let sig = Signature::monotone(vars);
        let a = self.up_to(&sig, max_side);
        let b = self.up_to(&sig, max_side);
        Formula::implies(a, b)
    }

    /// A Sahlqvist antecedent: literals, `~p`, boxed atoms, `&`, `|`, `<>`.
    pub fn sahlqvist_antecedent(&mut self, vars: &[&str], budget: usize) -> Formula {
        let var = Formula::var(vars.choose(&mut self.rng).unwrap());
        if budget <= 1 {
            return var;
        }
        match self.rng.gen_range(0..6) {
            0 => var,
            1 => Formula::gneg(var),
            2 => {
                let k = self.rng.gen_range(1..=budget.min(3));
                (0..k).fold(var, |f, _| Formula::boxed(f))
            }
            3 => Formula::dia(self.sahlqvist_antecedent(vars, budget - 1)),
            4 | 5 if budget >= 3 => {
                let left = self.rng.gen_range(1..budget - 1);
                let a = self.sahlqvist_antecedent(vars, left);
                let b = self.sahlqvist_antecedent(vars, budget - 1 - left);
                if self.rng.gen_bool(0.5) {
                    Formula::and(a, b)
                } else {
                    Formula::or(a, b)
                }
            }
            _ => Formula::dia(var),
        }
    }

    pub fn sahlqvist_implication(&mut self, vars: &[&str], budget: usize) -> Formula {
        let a = self.sahlqvist_antecedent(vars, budget);
        let sig = Signature { zero: false, one: false, ..Signature::monotone(vars) };
        let b = self.up_to(&sig, budget);
        Formula::implies(a, b)
    }

    /// A Sahlqvist formula: implications closed under `&`, variable-disjoint
    /// `|` and `[]`.
    pub fn sahlqvist_formula(&mut self, vars: &[&str], budget: usize) -> Formula {
        match self.rng.gen_range(0..5) {
            0 if budget > 2 => Formula::boxed(self.sahlqvist_formula(vars, budget - 1)),
            1 if budget > 4 => {
                let a = self.sahlqvist_formula(vars, budget / 2);
                let b = self.sahlqvist_formula(vars, budget / 2);
                Formula::and(a, b)
            }
            2 if budget > 4 && vars.len() >= 2 => {
                let split = self.rng.gen_range(1..vars.len());
                let mut shuffled = vars.to_vec();
                shuffled.shuffle(&mut self.rng);
                let (left, right) = shuffled.split_at(split);
                let a = self.sahlqvist_formula(left, budget / 2);
                let b = self.sahlqvist_formula(right, budget / 2);
                Formula::or(a, b)
            }
            _ => self.sahlqvist_implication(vars, budget),
        }
    }
}

/// Every formula over `sig` with at most `max_size` nodes, by size.
pub fn all_up_to(sig: &Signature, max_size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(), sig.leaves()];
    for size in 2..=max_size {
        let mut level = Vec::new();
        for &op in &sig.unary {
            for a in &by_size[size - 1] {
                level.push(apply_unary(op, a.clone()));
            }
        }
        for left in 1..size.saturating_sub(1) {
            for &op in &sig.binary {
                for a in &by_size[left] {
                    for b in &by_size[size - 1 - left] {
                        level.push(apply_binary(op, a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().take(max_size + 1).flatten().collect()
}
