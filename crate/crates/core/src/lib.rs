//! Decision procedures and model checking for crisp bi-Goedel modal logic
//! (KbiG) and its paraconsistent expansion KG2.

pub mod error;
pub mod correspondence;
pub mod fmodel;
pub mod formula;
pub mod par;
pub mod rat;
pub mod semantics;

pub use error::{Error, Result};
pub use formula::{parse, Formula, LanguageClass};
pub use rat::Rat;
