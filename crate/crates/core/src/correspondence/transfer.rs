use std::fmt::Write as _;

use super::frames::{enumerate_frames, per_class, FrameFamily};
use crate::error::{Error, Result};
use crate::formula::gen::FormulaGen;
use crate::formula::{parse, Formula};
use crate::semantics::{classical_pointwise, pointwise_kbig, Frame, KbiGModel, ValidityOptions};

/// The two verdicts at one world of one frame of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorldVerdict {
    pub frame: usize,
    pub world: usize,
    pub classical: bool,
    pub kbig: bool,
}

/// A world where the verdicts differ, with a valuation refuting the formula
/// in the semantics that rejects it.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub frame: Frame,
    pub world: String,
    pub classical: bool,
    pub kbig: bool,
    pub witness: KbiGModel,
}

#[derive(Debug, Clone)]
pub struct TransferReport {
    pub formula: Formula,
    pub family: FrameFamily,
    pub frames: Vec<Frame>,
    pub verdicts: Vec<WorldVerdict>,
    /// Verdicts agree at every world of every frame.
    pub transferrable: bool,
    /// Whole-frame validity agrees on every frame.
    pub frame_level_agree: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl TransferReport {
    /// One line per (frame, world), then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let frame = &self.frames[v.frame];
            let _ = writeln!(
                out,
                "record formula={} frame={} world={} K={} KbiG={}",
                self.formula,
                frame,
                frame.world(v.world),
                v.classical,
                v.kbig
            );
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn summary(&self) -> String {
        let agree = self.verdicts.iter().filter(|v| v.classical == v.kbig).count();
        let mut s = format!(
            "summary formula={} family={} frames={} worlds={} agree={} transferrable={}",
            self.formula,
            self.family,
            self.frames.len(),
            self.verdicts.len(),
            agree,
            self.transferrable
        );
        if let Some(m) = &self.first_mismatch {
            let _ = write!(
                s,
                " first_mismatch: frame={} world={} K={} KbiG={} valuation={}",
                m.frame,
                m.world,
                m.classical,
                m.kbig,
                render_valuation(&m.witness)
            );
        }
        s
    }
}

fn render_valuation(m: &KbiGModel) -> String {
    let parts: Vec<String> = m
        .valuation
        .iter()
        .flat_map(|(var, xs)| {
            xs.iter().enumerate().map(move |(w, x)| format!("{var}@{}={x}", m.frame.world(w)))
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Compares two-valued and KbiG validity at every world of every frame.
pub fn transfer_check(f: &Formula, family: &FrameFamily) -> Result<TransferReport> {
    if f.has_dmneg() {
        return Err(Error::DmNegNotAllowed);
    }
    let frames = enumerate_frames(family)?;
    let opts = ValidityOptions::default();
    let rows = per_class(&frames, |frame| {
        let classical = classical_pointwise(frame, f)?;
        let kbig = pointwise_kbig(frame, f, &opts)?;
        Ok(classical.iter().zip(&kbig).map(|(c, k)| (c.is_none(), k.is_none())).collect::<Vec<_>>())
    })?;
    let mut verdicts = Vec::new();
    let mut frame_level_agree = true;
    for (i, row) in rows.iter().enumerate() {
        for (w, &(classical, kbig)) in row.iter().enumerate() {
            verdicts.push(WorldVerdict { frame: i, world: w, classical, kbig });
        }
        frame_level_agree &= row.iter().all(|v| v.0) == row.iter().all(|v| v.1);
    }
    let first_mismatch = match verdicts.iter().find(|v| v.classical != v.kbig) {
        None => None,
        Some(v) => {
            let frame = frames[v.frame].clone();
            let witness = if v.classical {
                pointwise_kbig(&frame, f, &opts)?[v.world].clone().map(|r| r.model)
            } else {
                classical_pointwise(&frame, f)?[v.world].clone()
            }
            .expect("the rejecting side has a refutation");
            Some(Mismatch { world: frame.world(v.world).to_string(), frame, classical: v.classical, kbig: v.kbig, witness })
        }
    };
    Ok(TransferReport {
        formula: f.clone(),
        family: family.clone(),
        transferrable: first_mismatch.is_none(),
        frames,
        verdicts,
        frame_level_agree,
        first_mismatch,
    })
}

/// Reflexivity, seriality, transitivity, symmetry and Euclideanness in
/// their usual modal forms, with `<>1` for seriality.
pub const DISPLAY_FORMULAS: [&str; 9] = [
    "[]p -> p",
    "p -> <>p",
    "[]p -> [][]p",
    "<><>p -> <>p",
    "p -> []<>p",
    "<>[]p -> p",
    "<>p -> []<>p",
    "<>[]p -> []p",
    "<>1",
];

/// Refuted in KbiG at every world of every frame, but classically valid at
/// serial worlds.
pub const NON_TRANSFERRABLE: &str = "<>(p | ~p)";

#[derive(Debug, Clone)]
pub struct SuiteEntry {
    pub group: &'static str,
    pub expected: bool,
    pub report: TransferReport,
}

impl SuiteEntry {
    pub fn passed(&self) -> bool {
        self.report.transferrable == self.expected
    }
}

#[derive(Debug, Clone)]
pub struct TransferSuite {
    pub entries: Vec<SuiteEntry>,
}

impl TransferSuite {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(SuiteEntry::passed)
    }

    pub fn render(&self, records: bool) -> String {
        let mut out = String::new();
        for e in &self.entries {
            if records {
                out.push_str(&e.report.render());
            }
            let _ = writeln!(
                out,
                "{} group={} expected_transferrable={} {}",
                if e.passed() { "PASS" } else { "FAIL" },
                e.group,
                e.expected,
                e.report.summary()
            );
        }
        let passed = self.entries.iter().filter(|e| e.passed()).count();
        let _ = writeln!(out, "suite checks={} passed={} failed={}", self.entries.len(), passed, self.entries.len() - passed);
        out
    }
}

/// The formulas of [`transfer_suite`] with their group names and the
/// expected verdict.
pub fn transfer_suite_formulas(samples: usize, seed: u64) -> Vec<(&'static str, Formula, bool)> {
    let display: Vec<Formula> = DISPLAY_FORMULAS.iter().map(|s| parse(s).expect("well formed")).collect();
    let mut out: Vec<(&'static str, Formula, bool)> = display.iter().map(|f| ("display", f.clone(), true)).collect();
    let to_q = |f: &Formula| f.substitute(&|v| (v == "p").then(|| Formula::var("q")));
    for i in 0..3 {
        out.push(("closure-and", Formula::and(display[i].clone(), display[i + 3].clone()), true));
        out.push(("closure-or", Formula::or(display[i].clone(), to_q(&display[i + 4])), true));
        out.push(("closure-box", Formula::boxed(display[i + 2].clone()), true));
    }
    let mut gen = FormulaGen::new(seed);
    for _ in 0..samples {
        out.push(("monotone", gen.monotone_implication(&["p", "q"], 4), true));
    }
    for _ in 0..samples {
        out.push(("sahlqvist", gen.sahlqvist_formula(&["p", "q"], 6), true));
    }
    out.push(("refuted", parse(NON_TRANSFERRABLE).expect("well formed"), false));
    out
}

/// Every formula of [`transfer_suite_formulas`] checked on `AllCrisp(n)`.
pub fn transfer_suite(n: usize, samples: usize, seed: u64) -> Result<TransferSuite> {
    let family = FrameFamily::AllCrisp(n);
    let entries = transfer_suite_formulas(samples, seed)
        .into_iter()
        .map(|(group, f, expected)| Ok(SuiteEntry { group, expected, report: transfer_check(&f, &family)? }))
        .collect::<Result<_>>()?;
    Ok(TransferSuite { entries })
}
