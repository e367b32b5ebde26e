//! Finite-frame suites comparing two-valued and many-valued validity:
//! local transfer of frame conditions, the Loeb formula, and the Glivenko
//! double-negation translations.

mod frames;
mod gl;
mod glivenko;
mod transfer;

pub use frames::{canonical_form, enumerate_frames, enumerate_frames_capped, FrameFamily, DEFAULT_CAP};
pub use gl::{gl_check, gl_formula, gl_frame_condition, GlVerdict};
pub use glivenko::{
    glivenko_check, glivenko_decay, glivenko_star, glivenko_suite, serial_truncation_check, serial_truncation_model,
    GlivenkoRecord, GlivenkoReport,
};
pub use transfer::{
    transfer_check, transfer_suite, transfer_suite_formulas, Mismatch, SuiteEntry, TransferReport, TransferSuite,
    WorldVerdict, DISPLAY_FORMULAS, NON_TRANSFERRABLE,
};
