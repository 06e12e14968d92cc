//! The two families of Cantor sets under study.
//!
//! `K_lambda` is the attractor of the two-map system
//! `{x -> lambda*x, x -> lambda*x + 1 - lambda}` for `0 < lambda < 1/2`;
//! its level-n cylinders are the basic intervals `[a, a + lambda^n]`.
//! `K_{m,D}` collects the points of `[0,1]` admitting a base-`m` expansion
//! with every digit in `D`.

mod klambda;
mod kmd;

pub use klambda::{
    level_intervals, member_k_lambda, point_from_coding, BasicInterval, CantorError,
    EventualCoding, Lambda, Membership, Word, DEFAULT_DEPTH_CAP, LEVEL_CAP,
};
pub use kmd::{expansion_base_m, member_k_md, DigitSystem, ExpansionError, PeriodicExpansion};
