use crate::error::Result;
use crate::formula::{parse, Formula};
use crate::semantics::{frame_valid_kbig, Frame};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlVerdict {
    pub formula_holds: bool,
    pub frame_condition: bool,
}

impl GlVerdict {
    pub fn agrees(&self) -> bool {
        self.formula_holds == self.frame_condition
    }
}

pub fn gl_formula() -> Formula {
    parse("[]([]p -> p) -> []p").expect("well formed")
}

/// The frame condition for the Loeb formula at `w`: successors of
/// successors of `w` are successors of `w`, and no cycle (self-loops
/// included) is reachable from `w`.
pub fn gl_frame_condition(frame: &Frame, w: usize) -> bool {
    let succ_w = frame.successors(w);
    let locally_transitive = succ_w.iter().all(|&a| frame.successors(a).iter().all(|b| succ_w.contains(b)));
    locally_transitive && !cycle_reachable(frame, w)
}

fn cycle_reachable(frame: &Frame, w: usize) -> bool {
    // colours: 0 unvisited, 1 on the current path, 2 finished
    fn dfs(frame: &Frame, u: usize, colour: &mut [u8]) -> bool {
        colour[u] = 1;
        for v in frame.successors(u) {
            if colour[v] == 1 || (colour[v] == 0 && dfs(frame, v, colour)) {
                return true;
            }
        }
        colour[u] = 2;
        false
    }
    dfs(frame, w, &mut vec![0; frame.len()])
}

pub fn gl_check(frame: &Frame, world: &str) -> Result<GlVerdict> {
    let w = frame.index_of(world)?;
    let formula_holds = frame_valid_kbig(frame, &gl_formula(), Some(world))?.is_valid();
    Ok(GlVerdict { formula_holds, frame_condition: gl_frame_condition(frame, w) })
}
