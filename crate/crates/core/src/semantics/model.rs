use std::collections::BTreeMap;
use std::fmt;

use super::Frame;
use crate::error::{Error, Result};
use crate::formula::star_name;
use crate::rat::Rat;

/// Variable name to per-world values, indexed like the frame's worlds.
pub type Valuation = BTreeMap<String, Vec<Rat>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbiGModel {
    pub frame: Frame,
    pub valuation: Valuation,
}

impl KbiGModel {
    pub fn new(frame: Frame) -> KbiGModel {
        KbiGModel { frame, valuation: Valuation::new() }
    }

    /// Value of `var` at world index `w`; absent entries are 0.
    pub fn value(&self, var: &str, w: usize) -> Rat {
        self.valuation.get(var).map_or(Rat::ZERO, |vs| vs[w])
    }

    pub fn set(&mut self, var: &str, w: usize, x: Rat) {
        let n = self.frame.len();
        self.valuation.entry(var.to_string()).or_insert_with(|| vec![Rat::ZERO; n])[w] = x;
    }

    /// Adds explicit zero rows for the given variables.
    pub fn materialize<'a>(&mut self, vars: impl IntoIterator<Item = &'a String>) {
        let n = self.frame.len();
        for v in vars {
            self.valuation.entry(v.clone()).or_insert_with(|| vec![Rat::ZERO; n]);
        }
    }
}

/// Support of truth and support of falsity.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairValue {
    pub t: Rat,
    pub f: Rat,
}

impl PairValue {
    pub const TRUE: PairValue = PairValue { t: Rat::ONE, f: Rat::ZERO };
    pub const FALSE: PairValue = PairValue { t: Rat::ZERO, f: Rat::ONE };

    pub fn new(t: Rat, f: Rat) -> PairValue {
        PairValue { t, f }
    }

    pub fn swap(self) -> PairValue {
        PairValue { t: self.f, f: self.t }
    }

    /// `self <=± other`: less true and more false.
    pub fn le_pm(self, other: PairValue) -> bool {
        self.t <= other.t && self.f >= other.f
    }

    pub fn lt_pm(self, other: PairValue) -> bool {
        self.le_pm(other) && self != other
    }
}

impl fmt::Display for PairValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.f)
    }
}

impl fmt::Debug for PairValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A model with two valuations on a crisp frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KG2Model {
    pub frame: Frame,
    pub v1: Valuation,
    pub v2: Valuation,
}

impl KG2Model {
    pub fn new(frame: Frame) -> Result<KG2Model> {
        if !frame.is_crisp() {
            return Err(Error::FuzzyFrame);
        }
        Ok(KG2Model { frame, v1: Valuation::new(), v2: Valuation::new() })
    }

    pub fn value(&self, var: &str, w: usize) -> PairValue {
        let get = |v: &Valuation| v.get(var).map_or(Rat::ZERO, |xs| xs[w]);
        PairValue { t: get(&self.v1), f: get(&self.v2) }
    }

    pub fn set(&mut self, var: &str, w: usize, x: PairValue) {
        let n = self.frame.len();
        self.v1.entry(var.to_string()).or_insert_with(|| vec![Rat::ZERO; n])[w] = x.t;
        self.v2.entry(var.to_string()).or_insert_with(|| vec![Rat::ZERO; n])[w] = x.f;
    }

    pub fn materialize<'a>(&mut self, vars: impl IntoIterator<Item = &'a String>) {
        let n = self.frame.len();
        for v in vars {
            self.v1.entry(v.clone()).or_insert_with(|| vec![Rat::ZERO; n]);
            self.v2.entry(v.clone()).or_insert_with(|| vec![Rat::ZERO; n]);
        }
    }

    /// The first valuation alone.
    pub fn v1_model(&self) -> KbiGModel {
        KbiGModel { frame: self.frame.clone(), valuation: self.v1.clone() }
    }

    /// The single-valuation model `v+` with `v+(p) = v1(p)` and
    /// `v+(p__star) = v2(p)`.
    pub fn plus_model(&self) -> KbiGModel {
        let mut valuation = self.v1.clone();
        for (var, xs) in &self.v2 {
            valuation.insert(star_name(var), xs.clone());
        }
        KbiGModel { frame: self.frame.clone(), valuation }
    }

    /// Inverse of [`KG2Model::plus_model`]: starred variables become the
    /// second valuation.
    pub fn from_plus_model(m: &KbiGModel) -> Result<KG2Model> {
        let mut out = KG2Model::new(m.frame.clone())?;
        let n = m.frame.len();
        for (var, xs) in &m.valuation {
            match var.strip_suffix(crate::formula::STAR_SUFFIX) {
                Some(base) => {
                    out.v2.insert(base.to_string(), xs.clone());
                    out.v1.entry(base.to_string()).or_insert_with(|| vec![Rat::ZERO; n]);
                }
                None => {
                    out.v1.insert(var.clone(), xs.clone());
                    out.v2.entry(var.clone()).or_insert_with(|| vec![Rat::ZERO; n]);
                }
            }
        }
        Ok(out)
    }
}

/// Weights and values collapsed to 0 and 1: positive becomes 1.
pub fn classicalise(m: &KbiGModel) -> KbiGModel {
    let crisp = |x: &Rat| if x.is_zero() { Rat::ZERO } else { Rat::ONE };
    KbiGModel {
        frame: m.frame.classicalised(),
        valuation: m.valuation.iter().map(|(k, xs)| (k.clone(), xs.iter().map(crisp).collect())).collect(),
    }
}

/// Values strictly above `x` become 1, the rest 0. Crisp frames only.
pub fn threshold_classicalise(m: &KbiGModel, x: Rat) -> Result<KbiGModel> {
    if !m.frame.is_crisp() {
        return Err(Error::FuzzyFrame);
    }
    if x < Rat::ZERO || x >= Rat::ONE {
        return Err(Error::InvalidModel(format!("threshold {x} must lie in [0, 1)")));
    }
    let cut = |y: &Rat| if *y > x { Rat::ONE } else { Rat::ZERO };
    Ok(KbiGModel {
        frame: m.frame.clone(),
        valuation: m.valuation.iter().map(|(k, xs)| (k.clone(), xs.iter().map(cut).collect())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn classicalisation() {
        let mut frame = Frame::crisp(2, &[]);
        frame.set_weight(0, 1, r(1, 2));
        let mut m = KbiGModel::new(frame);
        m.set("p", 0, r(1, 3));
        m.set("p", 1, Rat::ZERO);
        let c = classicalise(&m);
        assert_eq!(c.value("p", 0), Rat::ONE);
        assert_eq!(c.value("p", 1), Rat::ZERO);
        assert_eq!(c.frame.weight(0, 1), Rat::ONE);
        assert!(matches!(threshold_classicalise(&m, r(1, 2)), Err(Error::FuzzyFrame)));
    }

    #[test]
    fn thresholds_are_strict() {
        let mut m = KbiGModel::new(Frame::crisp(3, &[]));
        m.set("p", 0, r(2, 3));
        m.set("p", 1, r(1, 2));
        m.set("p", 2, r(1, 5));
        let t = threshold_classicalise(&m, r(1, 2)).unwrap();
        assert_eq!(t.valuation["p"], vec![Rat::ONE, Rat::ZERO, Rat::ZERO]);
        assert_eq!(threshold_classicalise(&m, Rat::ZERO).unwrap(), classicalise(&m));
    }

    #[test]
    fn pair_order() {
        let a = PairValue::new(r(1, 2), r(1, 2));
        let b = PairValue::new(r(3, 4), r(1, 4));
        assert!(a.le_pm(b) && a.lt_pm(b) && !b.le_pm(a));
        assert!(PairValue::FALSE.le_pm(a) && a.le_pm(PairValue::TRUE));
        assert_eq!(a.swap(), a);
    }

    #[test]
    fn plus_model_round_trip() {
        let mut m = KG2Model::new(Frame::crisp(1, &[])).unwrap();
        m.set("p", 0, PairValue::new(r(1, 2), r(1, 3)));
        let plus = m.plus_model();
        assert_eq!(plus.value("p__star", 0), r(1, 3));
        assert_eq!(KG2Model::from_plus_model(&plus).unwrap(), m);
    }
}
