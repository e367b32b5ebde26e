use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::par;
use crate::semantics::Frame;

/// Largest `n` accepted for `AllCrisp(n)` unless a caller raises it.
pub const DEFAULT_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameFamily {
    /// All `2^(n²)` crisp relations on `n` labelled worlds.
    AllCrisp(usize),
    /// `w0 -> w1 -> ... -> w(n-1)`.
    Chains(usize),
    /// A centre `w0` with `n` successors.
    Stars(usize),
    ReflexiveClosure(Box<FrameFamily>),
    TransitiveClosure(Box<FrameFamily>),
}

impl fmt::Display for FrameFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameFamily::AllCrisp(n) => write!(f, "AllCrisp({n})"),
            FrameFamily::Chains(n) => write!(f, "Chains({n})"),
            FrameFamily::Stars(n) => write!(f, "Stars({n})"),
            FrameFamily::ReflexiveClosure(inner) => write!(f, "ReflexiveClosure({inner})"),
            FrameFamily::TransitiveClosure(inner) => write!(f, "TransitiveClosure({inner})"),
        }
    }
}

pub fn enumerate_frames(family: &FrameFamily) -> Result<Vec<Frame>> {
    enumerate_frames_capped(family, DEFAULT_CAP)
}

/// Frames of the family in a fixed order; closures keep the first
/// occurrence of each resulting relation.
pub fn enumerate_frames_capped(family: &FrameFamily, cap: usize) -> Result<Vec<Frame>> {
    Ok(match family {
        FrameFamily::AllCrisp(n) => {
            let n = *n;
            if n == 0 || n > cap || n > 8 {
                return Err(Error::TooLarge(format!("AllCrisp({n}) exceeds the cap of {cap} worlds")));
            }
            (0..1u64 << (n * n)).map(|mask| Frame::from_bitmask(n, mask)).collect()
        }
        FrameFamily::Chains(n) => {
            let edges: Vec<(usize, usize)> = (1..*n).map(|i| (i - 1, i)).collect();
            vec![Frame::crisp((*n).max(1), &edges)]
        }
        FrameFamily::Stars(n) => {
            let edges: Vec<(usize, usize)> = (1..=*n).map(|i| (0, i)).collect();
            vec![Frame::crisp(n + 1, &edges)]
        }
        FrameFamily::ReflexiveClosure(inner) => {
            dedup(enumerate_frames_capped(inner, cap)?.iter().map(Frame::with_reflexive_closure))
        }
        FrameFamily::TransitiveClosure(inner) => {
            dedup(enumerate_frames_capped(inner, cap)?.iter().map(Frame::with_transitive_closure))
        }
    })
}

fn dedup(frames: impl Iterator<Item = Frame>) -> Vec<Frame> {
    let mut out: Vec<Frame> = Vec::new();
    for f in frames {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The least relation bitmask over all renamings of a crisp frame, and a
/// renaming reaching it: world `i` of `frame` is world `perm[i]` of the
/// canonical frame.
pub fn canonical_form(frame: &Frame) -> Option<(u64, Vec<usize>)> {
    if frame.len() > 6 {
        return None;
    }
    permutations(frame.len())
        .into_iter()
        .filter_map(|perm| frame.permuted(&perm).bitmask().map(|m| (m, perm)))
        .min()
}

/// Runs a per-world computation once per isomorphism class and maps the
/// results back to every frame of `frames`.
pub(crate) fn per_class<T, F>(frames: &[Frame], compute: F) -> Result<Vec<Vec<T>>>
where
    T: Clone + Send,
    F: Fn(&Frame) -> Result<Vec<T>> + Sync + Send,
{
    let mut classes: HashMap<(usize, u64), usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut assignment = Vec::with_capacity(frames.len());
    for frame in frames {
        let (mask, perm) = canonical_form(frame).ok_or(Error::FuzzyFrame)?;
        let key = (frame.len(), mask);
        let class = *classes.entry(key).or_insert_with(|| {
            reps.push(Frame::from_bitmask(frame.len(), mask));
            reps.len() - 1
        });
        assignment.push((class, perm));
    }
    let results: Vec<Vec<T>> = par::map(&reps, |rep| compute(rep)).into_iter().collect::<Result<_>>()?;
    Ok(assignment
        .into_iter()
        .map(|(class, perm)| perm.iter().map(|&j| results[class][j].clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(enumerate_frames(&FrameFamily::AllCrisp(1)).unwrap().len(), 2);
        assert_eq!(enumerate_frames(&FrameFamily::AllCrisp(2)).unwrap().len(), 16);
        assert_eq!(enumerate_frames(&FrameFamily::AllCrisp(3)).unwrap().len(), 512);
        assert!(matches!(enumerate_frames(&FrameFamily::AllCrisp(5)), Err(Error::TooLarge(_))));
        let star = enumerate_frames(&FrameFamily::Stars(3)).unwrap();
        assert_eq!(star.len(), 1);
        assert_eq!(star[0].successors(0), vec![1, 2, 3]);
        let refl = enumerate_frames(&FrameFamily::ReflexiveClosure(Box::new(FrameFamily::AllCrisp(2)))).unwrap();
        assert_eq!(refl.len(), 4);
        let trans = enumerate_frames(&FrameFamily::TransitiveClosure(Box::new(FrameFamily::Chains(3)))).unwrap();
        assert_eq!(trans[0].successors(0), vec![1, 2]);
    }

    #[test]
    fn isomorphism_classes_of_three_worlds() {
        let frames = enumerate_frames(&FrameFamily::AllCrisp(3)).unwrap();
        let mut masks: Vec<u64> = frames.iter().map(|f| canonical_form(f).unwrap().0).collect();
        masks.sort_unstable();
        masks.dedup();
        assert_eq!(masks.len(), 104);
        for f in &frames {
            let (mask, perm) = canonical_form(f).unwrap();
            assert_eq!(f.permuted(&perm).bitmask(), Some(mask));
        }
    }

    #[test]
    fn class_results_follow_renaming() {
        let frames = enumerate_frames(&FrameFamily::AllCrisp(3)).unwrap();
        let out = per_class(&frames, |f| Ok((0..f.len()).map(|w| f.successors(w).len()).collect())).unwrap();
        for (f, row) in frames.iter().zip(&out) {
            let direct: Vec<usize> = (0..f.len()).map(|w| f.successors(w).len()).collect();
            assert_eq!(&direct, row);
        }
    }
}
