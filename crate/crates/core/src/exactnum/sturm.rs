//! Sturm chains, real-root isolation, and certified polynomial sign claims.
//!
//! Sign certification works on the square-free part plus endpoint
//! evaluation: the sign of a polynomial can only change across a root, so
//! once the roots inside the interval are isolated, finitely many exact
//! evaluations decide the claim for every point of the interval.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly::IntPoly;
use super::rat::rat;
use super::Rat;

/// Exact sign of `P(x)`: -1, 0, or +1.
pub fn poly_eval_sign(p: &IntPoly, x: &Rat) -> i8 {
    let v = p.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root; shift the endpoint")]
    EndpointIsRoot(Rat),
    #[error("empty interval: lo must be strictly less than hi")]
    EmptyInterval,
}

/// A Sturm chain built on the square-free part of a polynomial.
struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    fn new(square_free: &IntPoly) -> Self {
        let mut chain = vec![square_free.clone(), square_free.derivative()];
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // negate the remainder, and rescale to tame coefficient growth
            let next = r.neg();
            let scale = next.leading_coefficient().unwrap().abs();
            chain.push(next.scale(&(Rat::one() / scale)));
        }
        SturmChain { chain }
    }

    fn sign_variations_at(&self, x: &Rat) -> usize {
        let mut variations = 0;
        let mut last: i8 = 0;
        for p in &self.chain {
            let s = poly_eval_sign(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    variations += 1;
                }
                last = s;
            }
        }
        variations
    }

    /// Number of distinct roots in `(lo, hi]`; exact when neither endpoint
    /// is a root of the square-free part.
    fn count_roots(&self, lo: &Rat, hi: &Rat) -> usize {
        self.sign_variations_at(lo) - self.sign_variations_at(hi)
    }
}

/// Exact count of distinct real roots of `p` in the open interval
/// `(lo, hi)` via a Sturm chain on the square-free part.
pub fn sturm_count_roots(p: &IntPoly, lo: &Rat, hi: &Rat) -> Result<usize, SturmError> {
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(SturmError::EmptyInterval);
    }
    if poly_eval_sign(p, lo) == 0 {
        return Err(SturmError::EndpointIsRoot(lo.clone()));
    }
    if poly_eval_sign(p, hi) == 0 {
        return Err(SturmError::EndpointIsRoot(hi.clone()));
    }
    let sf = p.square_free_part();
    Ok(SturmChain::new(&sf).count_roots(lo, hi))
}

/// An isolating interval for one real root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBox {
    #[serde(with = "super::rat::rat_serde")]
    pub lo: Rat,
    #[serde(with = "super::rat::rat_serde")]
    pub hi: Rat,
    /// True when the isolated root is known to be a simple root of the
    /// original polynomial (conservative: may be false on hard cases).
    pub multiplicity_free: bool,
}

impl RootBox {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.hi + &self.lo) / rat(2, 1)
    }
}

/// Isolates every distinct real root of `p` in the open interval
/// `(lo, hi)` into pairwise disjoint boxes of width at most `width`,
/// ordered increasingly.
pub fn isolate_roots(p: &IntPoly, lo: &Rat, hi: &Rat, width: &Rat) -> Vec<RootBox> {
    assert!(width.is_positive(), "width must be positive");
    if p.is_zero() || lo >= hi {
        return Vec::new();
    }
    let mut sf = p.square_free_part();
    // Roots sitting exactly on an endpoint are excluded from the open
    // interval; deflate them so Sturm counting has clean endpoints.
    for endpoint in [lo, hi] {
        while poly_eval_sign(&sf, endpoint) == 0 {
            let linear = IntPoly::new(vec![-endpoint.clone(), Rat::one()]);
            let (q, r) = sf.div_rem(&linear);
            debug_assert!(r.is_zero());
            sf = q;
        }
    }
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(&sf);
    let mut isolated = Vec::new();
    subdivide(&chain, &sf, lo.clone(), hi.clone(), &mut isolated);

    // The multiple-root locus of the original polynomial.
    let multiple = p.gcd(&p.derivative());
    let multiple_sf = if multiple.degree().unwrap_or(0) == 0 {
        None
    } else {
        Some(multiple.square_free_part())
    };

    isolated
        .into_iter()
        .map(|(u, v)| {
            let (u, v) = refine(&sf, u, v, width);
            let multiplicity_free = match &multiple_sf {
                None => true,
                Some(m) => {
                    poly_eval_sign(m, &u) != 0
                        && poly_eval_sign(m, &v) != 0
                        && SturmChain::new(m).count_roots(&u, &v) == 0
                }
            };
            RootBox {
                lo: u,
                hi: v,
                multiplicity_free,
            }
        })
        .collect()
}

/// Splits `(lo, hi)` until each piece holds exactly one root of the
/// square-free polynomial. Precondition: `sf` is nonzero at both endpoints.
fn subdivide(chain: &SturmChain, sf: &IntPoly, lo: Rat, hi: Rat, out: &mut Vec<(Rat, Rat)>) {
    let n = chain.count_roots(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push((lo, hi));
        return;
    }
    let mut mid = (&lo + &hi) / rat(2, 1);
    if poly_eval_sign(sf, &mid) == 0 {
        // The midpoint is itself a (rational) root; nudge the cut so both
        // halves keep nonzero endpoints. Roots are finite, so some shift
        // of the form (hi-lo)/2^j works.
        let mut shift = (&hi - &lo) / rat(4, 1);
        loop {
            let candidate = &mid + &shift;
            if candidate < hi && poly_eval_sign(sf, &candidate) != 0 {
                mid = candidate;
                break;
            }
            shift /= rat(2, 1);
        }
    }
    subdivide(chain, sf, lo, mid.clone(), out);
    subdivide(chain, sf, mid, hi, out);
}

/// Shrinks an isolating interval (one simple root of `sf`, endpoints
/// nonzero) to width at most `width` by sign bisection.
fn refine(sf: &IntPoly, mut lo: Rat, mut hi: Rat, width: &Rat) -> (Rat, Rat) {
    let lo_sign = poly_eval_sign(sf, &lo);
    debug_assert!(lo_sign != 0 && poly_eval_sign(sf, &hi) == -lo_sign);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / rat(2, 1);
        match poly_eval_sign(sf, &mid) {
            0 => {
                // hit the root exactly; clamp a sub-`width` box around it
                let half = width / rat(2, 1);
                let u = if &mid - &half > lo { &mid - &half } else { lo };
                let v = if &mid + &half < hi { &mid + &half } else { hi };
                return (u, v);
            }
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

/// A one-sided sign requirement on an interval or at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignClaim {
    NonNegative,
    NonPositive,
    StrictlyPositive,
    StrictlyNegative,
}

impl SignClaim {
    /// Does a single exact sign satisfy the claim?
    pub fn admits(self, sign: i8) -> bool {
        match self {
            SignClaim::NonNegative => sign >= 0,
            SignClaim::NonPositive => sign <= 0,
            SignClaim::StrictlyPositive => sign > 0,
            SignClaim::StrictlyNegative => sign < 0,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, SignClaim::StrictlyPositive | SignClaim::StrictlyNegative)
    }
}

/// Outcome of [`certify_sign_on_interval`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignVerdict {
    Certified,
    /// An exact rational point violating the claim. For a strict claim that
    /// fails only at an irrational root of even multiplicity, the witness
    /// is a point from that root's isolating interval.
    Refuted(#[serde(with = "super::rat::rat_serde")] Rat),
}

impl SignVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, SignVerdict::Certified)
    }
}

/// Decides whether `claim` holds for every point of the closed interval
/// `[lo, hi]`, exactly.
///
/// Certification isolates the roots in the interior; between consecutive
/// roots the sign is constant, so evaluating at the isolation endpoints
/// (all rational non-roots) covers the whole interval.
pub fn certify_sign_on_interval(p: &IntPoly, lo: &Rat, hi: &Rat, claim: SignClaim) -> SignVerdict {
    assert!(lo < hi, "lo must be strictly less than hi");
    if p.is_zero() {
        return if claim.admits(0) {
            SignVerdict::Certified
        } else {
            SignVerdict::Refuted(lo.clone())
        };
    }
    for endpoint in [lo, hi] {
        if !claim.admits(poly_eval_sign(p, endpoint)) {
            return SignVerdict::Refuted(endpoint.clone());
        }
    }

    // Any interior sign change lives inside an isolating box; checking the
    // box endpoints checks all the open segments between roots as well.
    // The isolation width only controls witness quality, not correctness.
    let width = (hi - lo) / rat(16, 1);
    let boxes = isolate_roots(p, lo, hi, &width);
    for b in &boxes {
        for sample in [&b.lo, &b.hi] {
            if !claim.admits(poly_eval_sign(p, sample)) {
                return SignVerdict::Refuted(sample.clone());
            }
        }
    }

    if claim.is_strict() {
        // Roots themselves violate a strict claim. Interior roots were
        // isolated above; endpoint roots were caught by direct evaluation.
        if let Some(root_box) = boxes.first() {
            // Prefer an exact rational witness when the root is rational.
            if let Some(root) = rational_root_in(p, &root_box.lo, &root_box.hi) {
                return SignVerdict::Refuted(root);
            }
            return SignVerdict::Refuted(root_box.midpoint());
        }
    }
    SignVerdict::Certified
}

/// Searches for an exact rational root of `p` inside `(lo, hi)` using the
/// rational root bound on the primitive integer form.
fn rational_root_in(p: &IntPoly, lo: &Rat, hi: &Rat) -> Option<Rat> {
    use num_bigint::BigInt;
    let ints = p.primitive_integer_coeffs();
    let trailing = ints.iter().position(|c| !c.is_zero())?;
    let constant: &BigInt = &ints[trailing];
    let leading: &BigInt = ints.last()?;
    let mut p_divisors = small_divisors(constant);
    let q_divisors = small_divisors(leading);
    p_divisors.push(BigInt::zero());
    for num in &p_divisors {
        for den in &q_divisors {
            for sign in [1i64, -1] {
                let candidate = Rat::new(num * BigInt::from(sign), den.clone());
                if &candidate > lo
                    && &candidate < hi
                    && poly_eval_sign(p, &candidate) == 0
                {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn small_divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let n = n.abs();
    let mut out = Vec::new();
    // enumeration is capped; this is a best-effort witness search
    let mut d = BigInt::one();
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= limit {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}
