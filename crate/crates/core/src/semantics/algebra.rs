//! The bi-Goedel algebra on a chain with bottom and top.

use crate::rat::Rat;

/// A bounded chain of truth degrees. Every bi-Goedel operation depends
/// only on the order, so any order-preserving code type can stand in for
/// exact rationals.
pub trait Degree: Copy + Ord + Send + Sync + std::fmt::Debug + 'static {
    const ZERO: Self;
    const ONE: Self;
}

impl Degree for Rat {
    const ZERO: Rat = Rat::ZERO;
    const ONE: Rat = Rat::ONE;
}

impl Degree for u32 {
    const ZERO: u32 = 0;
    const ONE: u32 = u32::MAX;
}

#[inline]
pub fn godel_impl<D: Degree>(a: D, b: D) -> D {
    if a <= b {
        D::ONE
    } else {
        b
    }
}

#[inline]
pub fn godel_coimpl<D: Degree>(a: D, b: D) -> D {
    if a <= b {
        D::ZERO
    } else {
        a
    }
}

#[inline]
pub fn godel_neg<D: Degree>(a: D) -> D {
    if a == D::ZERO {
        D::ONE
    } else {
        D::ZERO
    }
}

#[inline]
pub fn godel_delta<D: Degree>(a: D) -> D {
    if a == D::ONE {
        D::ONE
    } else {
        D::ZERO
    }
}

#[inline]
pub fn godel_min<D: Degree>(a: D, b: D) -> D {
    a.min(b)
}

#[inline]
pub fn godel_max<D: Degree>(a: D, b: D) -> D {
    a.max(b)
}
