use std::fmt::Write as _;

use super::frames::{enumerate_frames, per_class, FrameFamily};
use crate::error::{Error, Result};
use crate::formula::gen::{FormulaGen, Signature};
use crate::formula::{parse, Formula};
use crate::rat::Rat;
use crate::semantics::{classical_frame_valid, eval_kbig, frame_valid_kbig, frame_valid_kg2, Frame, KbiGModel};

/// Whole-frame verdicts for one formula `f` on one frame: `f` classically,
/// `~~f` in KbiG and `!~f` in KG2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlivenkoRecord {
    pub formula: usize,
    pub frame: usize,
    pub classical: bool,
    pub kbig: bool,
    pub kg2: bool,
}

impl GlivenkoRecord {
    pub fn agrees(&self) -> bool {
        self.classical == self.kbig && self.kbig == self.kg2
    }
}

#[derive(Debug, Clone)]
pub struct GlivenkoReport {
    pub formulas: Vec<Formula>,
    pub frames: Vec<Frame>,
    pub records: Vec<GlivenkoRecord>,
}

impl GlivenkoReport {
    pub fn agrees(&self) -> bool {
        self.records.iter().all(GlivenkoRecord::agrees)
    }

    pub fn render(&self, records: bool) -> String {
        let mut out = String::new();
        if records {
            for r in &self.records {
                let _ = writeln!(
                    out,
                    "record formula={} frame={} K={} KbiG(~~f)={} KG2(!~f)={}",
                    self.formulas[r.formula], self.frames[r.frame], r.classical, r.kbig, r.kg2
                );
            }
        }
        for (i, f) in self.formulas.iter().enumerate() {
            let mine: Vec<&GlivenkoRecord> = self.records.iter().filter(|r| r.formula == i).collect();
            let valid = mine.iter().filter(|r| r.classical).count();
            let agree = mine.iter().filter(|r| r.agrees()).count();
            let _ = writeln!(
                out,
                "{} formula={f} frames={} K-valid={valid} agree={agree}",
                if agree == mine.len() { "PASS" } else { "FAIL" },
                mine.len()
            );
        }
        let bad = self.records.iter().filter(|r| !r.agrees()).count();
        let _ = writeln!(out, "summary formulas={} records={} disagreements={bad}", self.formulas.len(), self.records.len());
        out
    }
}

/// The Glivenko comparison for given formulas over `{0, &, |, ->, [], <>}`
/// on `AllCrisp(n)`.
pub fn glivenko_check(formulas: &[Formula], n: usize) -> Result<GlivenkoReport> {
    if n > 3 {
        return Err(Error::TooLarge(format!("Glivenko checks are limited to 3 worlds, got {n}")));
    }
    let frames = enumerate_frames(&FrameFamily::AllCrisp(n))?;
    let mut records = Vec::new();
    for (i, f) in formulas.iter().enumerate() {
        if f.any(&|g| matches!(g, Formula::GNeg(_) | Formula::Delta(_) | Formula::DMNeg(_) | Formula::Coimpl(..))) {
            return Err(Error::Fragment(f.to_string(), "Glivenko checks take formulas over 0, &, |, ->, [], <>"));
        }
        let dn = Formula::gneg(Formula::gneg(f.clone()));
        let kg = Formula::dmneg(Formula::gneg(f.clone()));
        // whole-frame verdicts are invariant under renaming; one entry per class
        let rows = per_class(&frames, |frame| {
            let c = classical_frame_valid(frame, f, None)?;
            let k = frame_valid_kbig(frame, &dn, None)?.is_valid();
            let g = frame_valid_kg2(frame, &kg, None)?.is_valid();
            Ok(vec![(c, k, g); frame.len()])
        })?;
        for (j, row) in rows.iter().enumerate() {
            let (classical, kbig, kg2) = row[0];
            records.push(GlivenkoRecord { formula: i, frame: j, classical, kbig, kg2 });
        }
    }
    Ok(GlivenkoReport { formulas: formulas.to_vec(), frames, records })
}

/// `samples` seeded random formulas over `{p, q}` checked on `AllCrisp(n)`.
pub fn glivenko_suite(n: usize, samples: usize, seed: u64) -> Result<GlivenkoReport> {
    let sig = Signature::glivenko(&["p", "q"]);
    let mut gen = FormulaGen::new(seed);
    let formulas: Vec<Formula> = (0..samples).map(|_| gen.up_to(&sig, 7)).collect();
    glivenko_check(&formulas, n)
}

/// A centre with `n` successors where `p` halves from one successor to the
/// next, starting at 1/2.
pub fn glivenko_star(n: usize) -> KbiGModel {
    let edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    let mut m = KbiGModel::new(Frame::crisp(n + 1, &edges));
    m.set("p", 0, Rat::ZERO);
    for i in 1..=n {
        m.set("p", i, Rat::new(1, 1i64 << i));
    }
    m
}

/// Value of `[](p | ~p)` at the centre of [`glivenko_star`]; `1/2^n`.
pub fn glivenko_decay(n: usize) -> Result<Rat> {
    if n == 0 || n > 62 {
        return Err(Error::TooLarge(format!("glivenko_decay needs 1 <= n <= 62, got {n}")));
    }
    eval_kbig(&glivenko_star(n), "w0", &parse("[](p | ~p)").expect("well formed"))
}

/// `u -> w0 -> {w1..wn}` with every `wi` reflexive and `p(wi) = 1/i`.
pub fn serial_truncation_model(n: usize) -> KbiGModel {
    let names: Vec<String> = ["u".to_string(), "w0".to_string()].into_iter().chain((1..=n).map(|i| format!("w{i}"))).collect();
    let mut frame = Frame::new(&names);
    frame.set_weight(0, 1, Rat::ONE);
    for i in 1..=n {
        frame.set_weight(1, i + 1, Rat::ONE);
        frame.set_weight(i + 1, i + 1, Rat::ONE);
    }
    let mut m = KbiGModel::new(frame);
    m.set("p", 0, Rat::ZERO);
    m.set("p", 1, Rat::ZERO);
    for i in 1..=n {
        m.set("p", i + 1, Rat::new(1, i as i64));
    }
    m
}

/// Value of `[]p` at `w0` of [`serial_truncation_model`]; `1/n`.
pub fn serial_truncation_check(n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::TooLarge("serial truncation needs n >= 1".into()));
    }
    eval_kbig(&serial_truncation_model(n), "w0", &parse("[]p").expect("well formed"))
}
