//! Exact semantics: the bi-Goedel algebra, frames and models, the KbiG and
//! KG2 evaluators, entailment on finite models and frame validity.

pub mod algebra;
mod eval;
mod frame;
pub mod io;
mod model;
pub mod program;
pub mod validity;

pub use algebra::{godel_coimpl, godel_delta, godel_impl, godel_max, godel_min, godel_neg, Degree};
pub use eval::{
    check_consequence_kbig, check_consequence_kg2, eval_kbig, eval_kbig_all, eval_kbig_many, eval_kg2, eval_kg2_at,
    eval_snapped_all,
};
pub use frame::Frame;
pub use io::ModelFile;
pub use model::{classicalise, threshold_classicalise, KG2Model, KbiGModel, PairValue, Valuation};
pub use validity::{
    classical_frame_valid, classical_pointwise, frame_valid_kbig, frame_valid_kbig_with, frame_valid_kg2,
    pointwise_kbig, pointwise_kg2, FrameVerdict, Kg2FrameVerdict, Kg2Refutation, Mode, Refutation, ValidityOptions,
};
