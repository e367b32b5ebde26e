use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// A finite frame with a `[0, 1]`-valued accessibility relation, stored as
/// a dense row-major matrix of weights (absent edges have weight 0).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    worlds: Vec<String>,
    weights: Vec<Rat>,
}

impl Frame {
    /// Worlds without edges.
    pub fn new<S: AsRef<str>>(worlds: &[S]) -> Frame {
        let n = worlds.len();
        Frame { worlds: worlds.iter().map(|w| w.as_ref().to_string()).collect(), weights: vec![Rat::ZERO; n * n] }
    }

    /// `n` worlds named `w0, w1, ...` with the given crisp edges.
    pub fn crisp(n: usize, edges: &[(usize, usize)]) -> Frame {
        let names: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let mut f = Frame::new(&names);
        for &(a, b) in edges {
            f.set_weight(a, b, Rat::ONE);
        }
        f
    }

    /// Crisp frame on `w0..w{n-1}` whose edge `(i, j)` is bit `i * n + j`.
    pub fn from_bitmask(n: usize, mask: u64) -> Frame {
        let edges: Vec<(usize, usize)> =
            (0..n * n).filter(|b| mask >> b & 1 == 1).map(|b| (b / n, b % n)).collect();
        Frame::crisp(n, &edges)
    }

    pub fn bitmask(&self) -> Option<u64> {
        if !self.is_crisp() || self.len() > 8 {
            return None;
        }
        let n = self.len();
        Some((0..n * n).filter(|&b| self.weights[b].is_one()).fold(0u64, |m, b| m | 1 << b))
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world(&self, i: usize) -> &str {
        &self.worlds[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.worlds.iter().position(|w| w == name).ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn weight(&self, from: usize, to: usize) -> Rat {
        self.weights[from * self.len() + to]
    }

    pub fn set_weight(&mut self, from: usize, to: usize, w: Rat) {
        let n = self.len();
        self.weights[from * n + to] = w;
    }

    pub fn is_crisp(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero() || w.is_one())
    }

    /// `R(w)`: worlds reached with weight 1.
    pub fn successors(&self, w: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.weight(w, v).is_one()).collect()
    }

    /// `R+(w)`: worlds reached with positive weight.
    pub fn positive_successors(&self, w: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.weight(w, v).is_zero()).collect()
    }

    /// Distinct weights strictly between 0 and 1, ascending.
    pub fn fuzzy_weights(&self) -> Vec<Rat> {
        let set: BTreeSet<Rat> = self.weights.iter().copied().filter(|w| !w.is_zero() && !w.is_one()).collect();
        set.into_iter().collect()
    }

    /// Every positive weight raised to 1.
    pub fn classicalised(&self) -> Frame {
        let weights = self.weights.iter().map(|w| if w.is_zero() { Rat::ZERO } else { Rat::ONE }).collect();
        Frame { worlds: self.worlds.clone(), weights }
    }

    pub fn with_reflexive_closure(&self) -> Frame {
        let mut f = self.clone();
        for i in 0..f.len() {
            f.set_weight(i, i, Rat::ONE);
        }
        f
    }

    /// Transitive closure of the crisp part.
    pub fn with_transitive_closure(&self) -> Frame {
        let n = self.len();
        let mut reach: Vec<bool> = (0..n * n).map(|b| self.weights[b].is_one()).collect();
        for k in 0..n {
            for i in 0..n {
                if reach[i * n + k] {
                    for j in 0..n {
                        if reach[k * n + j] {
                            reach[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut f = self.clone();
        for b in 0..n * n {
            if reach[b] {
                f.weights[b] = Rat::ONE;
            }
        }
        f
    }

    /// The same relation on renamed worlds: world `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Frame {
        let n = self.len();
        let mut worlds = vec![String::new(); n];
        let mut weights = vec![Rat::ZERO; n * n];
        for i in 0..n {
            worlds[perm[i]] = self.worlds[i].clone();
            for j in 0..n {
                weights[perm[i] * n + perm[j]] = self.weight(i, j);
            }
        }
        Frame { worlds, weights }
    }

    pub fn edges(&self) -> Vec<(usize, usize, Rat)> {
        let n = self.len();
        (0..n * n).filter(|&b| !self.weights[b].is_zero()).map(|b| (b / n, b % n, self.weights[b])).collect()
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.worlds.join(","))?;
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(a, b, w)| {
                if w.is_one() {
                    format!("{}->{}", self.worlds[a], self.worlds[b])
                } else {
                    format!("{}-[{}]->{}", self.worlds[a], w, self.worlds[b])
                }
            })
            .collect();
        write!(f, " [{}]", edges.join(" "))
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
