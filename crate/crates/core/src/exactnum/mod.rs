//! Exact rational arithmetic, modular arithmetic, and certified univariate
//! polynomial analysis (sign on an interval, real-root isolation).
//!
//! This is the substrate for every other module: all quantities are
//! [`Rat`]s, all inequalities are [`IntPoly`] sign facts.

mod modarith;
mod poly;
mod rat;
mod sturm;

pub use modarith::{is_prime, mod_pow};
pub use poly::IntPoly;
pub use rat::{format_rat, parse_rat, rat, rat_int, rat_pow, rat_serde, ParseRatError};
pub use sturm::{
    certify_sign_on_interval, isolate_roots, poly_eval_sign, sturm_count_roots, RootBox,
    SignClaim, SignVerdict, SturmError,
};

/// The universal exact scalar: an arbitrary-precision rational, always in
/// lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;
