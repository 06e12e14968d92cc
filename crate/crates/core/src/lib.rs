//! Exact-arithmetic library for certifying, refuting, or exploring
//! intersections of self-similar Cantor sets with the unit circle, power
//! curves, the Pythagorean surface, and integer sequences.
//!
//! Everything is computed over arbitrary-precision rationals; every verdict
//! that matters is backed by a [`circle::Certificate`] whose comparisons can
//! be replayed bit-exactly. No irrational constant is ever materialized:
//! thresholds like `2 - sqrt(3)` are expressed as polynomial sign tests.
//!
//! The crate is `no_std` (with `alloc`); IO, the CLI, and file formats live
//! in the companion `cantorsect-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cantor;
pub mod circle;
pub mod curves;
pub mod exactnum;
pub mod seqint;

pub use exactnum::{IntPoly, Rat};
