//! The unit circle (and general r-circles) against `K_lambda x K_lambda`:
//! certified triviality, non-triviality witnesses, double-covering
//! analysis, continuum certificates, and sound box enumeration.
//!
//! Throughout, `g(x, y) = x^2 + y^2` and pairs of basic intervals are kept
//! in the canonical order `a <= b`, which `g`'s symmetry justifies.

mod certificate;

pub use certificate::{Certificate, ExactCheck, Rel};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cantor::{BasicInterval, CantorError, Lambda};
use crate::exactnum::{format_rat, rat_serde, IntPoly, Rat, SignClaim};

/// Depth cap for [`enumerate_boxes`].
pub const ENUM_DEPTH_CAP: u32 = 24;

/// Default highest level scanned by [`certify_continuum`] when the
/// built-in witnesses do not apply.
pub const DEFAULT_CONTINUUM_SEARCH_DEPTH: u32 = 6;

/// How many levels below a node the branching step may look for its two
/// covering descendants before giving up.
const BRANCH_SEARCH_SPAN: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircleError {
    #[error(transparent)]
    Cantor(#[from] CantorError),
    #[error("pair members must share the same lambda and level")]
    MismatchedPair,
    #[error("double-covering condition does not hold for this pair")]
    ConditionNotSatisfied,
    #[error("witness does not support branching: {0}")]
    InvalidWitness(String),
    #[error("branching failed below level {level}; the precondition was violated")]
    BranchingFailure { level: u32 },
    #[error("depth {requested} exceeds the cap {cap}")]
    DepthCapExceeded { requested: u32, cap: u32 },
}

/// A closed rational interval `[lo, hi]` (some callers use it with open
/// semantics via [`RatInterval::contains_interior`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatInterval {
    #[serde(with = "rat_serde")]
    pub lo: Rat,
    #[serde(with = "rat_serde")]
    pub hi: Rat,
}

impl RatInterval {
    pub fn contains_closed(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interior(&self, x: &Rat) -> bool {
        &self.lo < x && x < &self.hi
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// An ordered pair of same-level basic intervals with left endpoints
/// `a <= b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxPair {
    i: BasicInterval,
    j: BasicInterval,
}

impl BoxPair {
    /// Builds a pair, swapping the operands into canonical order.
    pub fn new(i: BasicInterval, j: BasicInterval) -> Result<Self, CircleError> {
        if i.lambda() != j.lambda() || i.level() != j.level() {
            return Err(CircleError::MismatchedPair);
        }
        if i.left() <= j.left() {
            Ok(BoxPair { i, j })
        } else {
            Ok(BoxPair { i: j, j: i })
        }
    }

    /// The diagonal pair `I x I`.
    pub fn diagonal(i: BasicInterval) -> Self {
        BoxPair { i: i.clone(), j: i }
    }

    pub fn first(&self) -> &BasicInterval {
        &self.i
    }

    pub fn second(&self) -> &BasicInterval {
        &self.j
    }

    pub fn lambda(&self) -> &Lambda {
        self.i.lambda()
    }

    pub fn level(&self) -> u32 {
        self.i.level()
    }

    /// Left endpoint of the first interval.
    pub fn a(&self) -> &Rat {
        self.i.left()
    }

    /// Left endpoint of the second interval.
    pub fn b(&self) -> &Rat {
        self.j.left()
    }

    /// Common width `lambda^n`.
    pub fn width(&self) -> Rat {
        self.i.width()
    }

    /// The (up to four) canonical child pairs one level down, in
    /// lexicographic `(a, b)` order with duplicates removed.
    pub fn child_pairs(&self) -> Vec<BoxPair> {
        let (i1, i2) = self.i.children();
        let (j1, j2) = self.j.children();
        let mut out: Vec<BoxPair> = Vec::with_capacity(4);
        for a in [&i1, &i2] {
            for b in [&j1, &j2] {
                let pair = BoxPair::new(a.clone(), b.clone()).expect("children share level");
                if !out.contains(&pair) {
                    out.push(pair);
                }
            }
        }
        out.sort_by(|p, q| (p.a(), p.b()).cmp(&(q.a(), q.b())));
        out
    }

    /// Does the closure of `I x J` (or its mirror) contain `(0, 1)` or
    /// `(1, 0)`?
    pub fn touches_trivial_point(&self) -> bool {
        self.a().is_zero() && self.j.right().is_one()
    }
}

/// The exact image `g(I x J) = [a^2 + b^2, (a+w)^2 + (b+w)^2]`; `g` is
/// coordinatewise increasing on the nonnegative quadrant.
pub fn g_image(p: &BoxPair) -> RatInterval {
    assert!(
        !p.a().is_negative() && !p.b().is_negative(),
        "basic intervals have nonnegative endpoints"
    );
    let w = p.width();
    let (a, b) = (p.a(), p.b());
    let (ar, br) = (a + &w, b + &w);
    RatInterval {
        lo: a * a + b * b,
        hi: &ar * &ar + &br * &br,
    }
}

/// Overlap condition `(1-2l)/l (a + l^n) <= b <= a/(1-2l)`: when it holds,
/// the four child-pair images tile `g(I x J)` with no gaps.
pub fn check_overlap_condition(p: &BoxPair) -> bool {
    let l = p.lambda().value();
    let one_minus_2l = Rat::one() - l - l;
    let w = p.width();
    &one_minus_2l * (p.a() + &w) <= l * p.b() && &one_minus_2l * p.b() <= *p.a()
}

/// Strengthened condition `(1-2l)/l (a + l^n) <= b` and
/// `b + l^n <= a/(1-2l)`: it propagates to every descendant pair, giving
/// `g((K cap I) x (K cap J)) = g(I x J)`.
pub fn check_surjection_condition(p: &BoxPair) -> bool {
    let l = p.lambda().value();
    let one_minus_2l = Rat::one() - l - l;
    let w = p.width();
    &one_minus_2l * (p.a() + &w) <= l * p.b() && &one_minus_2l * (p.b() + &w) <= *p.a()
}

/// Double-covering condition `(1-l-l^2)/l (a + l^n) <= b` and
/// `b + l^n <= l a / (1-2l)`.
pub fn check_double_cover_condition(p: &BoxPair) -> bool {
    let l = p.lambda().value();
    let one_minus_2l = Rat::one() - l - l;
    let coeff = Rat::one() - l - l * l;
    let w = p.width();
    coeff * (p.a() + &w) <= l * p.b() && one_minus_2l * (p.b() + &w) <= l * p.a()
}

/// The endpoints `alpha_n(a,b)` and `beta_n(a,b)` of the inner two child
/// images `g(I2 x J1)` and `g(I1 x J2)`:
/// `alpha = a^2+b^2 + 2a(1-l)l^n + (1-l)^2 l^(2n)`,
/// `beta  = a^2+b^2 + 2(al+b)l^n + (1+l^2) l^(2n)`.
pub fn alpha_beta(p: &BoxPair) -> (Rat, Rat) {
    let l = p.lambda().value();
    let w = p.width();
    let w2 = &w * &w;
    let one_minus_l = Rat::one() - l;
    let (a, b) = (p.a(), p.b());
    let base = a * a + b * b;
    let two = Rat::from_integer(2.into());
    let alpha = &base + &two * a * &one_minus_l * &w + &one_minus_l * &one_minus_l * &w2;
    let beta = &base + &two * (a * l + b) * &w + (Rat::one() + l * l) * &w2;
    (alpha, beta)
}

/// The set of double covering points: the open interior of `g(I x J)`,
/// `(a^2+b^2, a^2+b^2 + 2(a+b)l^n + 2l^(2n))`.
///
/// Requires [`check_double_cover_condition`].
pub fn double_cover_interval(p: &BoxPair) -> Result<RatInterval, CircleError> {
    if !check_double_cover_condition(p) {
        return Err(CircleError::ConditionNotSatisfied);
    }
    let w = p.width();
    let (a, b) = (p.a(), p.b());
    let two = Rat::from_integer(2.into());
    let lo = a * a + b * b;
    let hi = &lo + &two * (a + b) * &w + &two * &w * &w;
    let interval = RatInterval { lo, hi };
    debug_assert_eq!(interval, g_image(p));
    Ok(interval)
}

/// `lambda^2 - 4 lambda + 1`: nonnegative on `[0, lambda]` exactly when
/// `lambda <= 2 - sqrt(3)`.
fn triviality_boundary_poly() -> IntPoly {
    IntPoly::from_ints(&[1, -4, 1])
}

/// Certifies that the unit circle meets `K_lambda x K_lambda` only in
/// `(0, 1)` and `(1, 0)`.
///
/// The per-depth induction of the proof is replaced by three sign facts
/// uniform in the depth k:
/// - T1: `l^2 - 4l + 1 >= 0` on `[0, l]` (the depth-k lower estimate keeps
///   a strict `+l^(4k+2)` in reserve, so equality at `2 - sqrt(3)` is fine);
/// - T2: `l^3 - 2l^2 + 3l - 1 < 0` at `l` (the depth-k upper estimate,
///   after absorbing `l^(4k)` into `l^(2k+1)`);
/// - T3: `2l^2 - 4l + 1 > 0` at `l` (base step: the right half of the
///   attractor is already too far out).
pub fn certify_trivial(lambda: &Lambda) -> Certificate {
    let l = lambda.value().clone();
    let checks = alloc::vec![
        ExactCheck::poly_sign_on(
            "T1: l^2 - 4l + 1 >= 0 on [0, lambda]",
            triviality_boundary_poly(),
            Rat::zero(),
            l.clone(),
            SignClaim::NonNegative,
        ),
        ExactCheck::poly_sign_at(
            "T2: l^3 - 2l^2 + 3l - 1 < 0 at lambda",
            IntPoly::from_ints(&[-1, 3, -2, 1]),
            l.clone(),
            SignClaim::StrictlyNegative,
        ),
        ExactCheck::poly_sign_at(
            "T3: 2l^2 - 4l + 1 > 0 at lambda",
            IntPoly::from_ints(&[1, -4, 2]),
            l.clone(),
            SignClaim::StrictlyPositive,
        ),
    ];
    match checks.iter().find(|c| !c.holds()) {
        None => Certificate::Trivial { lambda: l, checks },
        Some(failed) => Certificate::NotApplicable {
            lambda: l,
            reason: alloc::format!(
                "triviality requires lambda <= 2 - sqrt(3); failed {}",
                failed.label()
            ),
        },
    }
}

/// The explicit non-triviality witness for the lambda range, when one is
/// known: `(n, a, b)` with `I = [a, a + l^n]`, `J = [b, b + l^n]`.
///
/// `None` below `330384/1000000`, where no witness is proved.
pub fn builtin_witness(lambda: &Lambda) -> Option<(u32, Rat, Rat)> {
    let l = lambda.value();
    let one_minus_l = lambda.one_minus();
    if l >= &crate::exactnum::rat(9, 25) {
        Some((2, one_minus_l.clone(), one_minus_l))
    } else if l >= &crate::exactnum::rat(330384, 1_000_000) {
        let b = &one_minus_l + l * l - lambda.pow(3);
        Some((3, one_minus_l, b))
    } else {
        None
    }
}

/// Verifies a claimed non-triviality witness: the surjection condition
/// must hold and the unit circle level `1` must lie inside `g(I x J)`.
/// All four comparisons are stored exactly.
pub fn verify_nontrivial_witness(
    lambda: &Lambda,
    level: u32,
    a: &Rat,
    b: &Rat,
) -> Result<Certificate, CircleError> {
    let i = BasicInterval::from_left(lambda.clone(), level, a)?;
    let j = BasicInterval::from_left(lambda.clone(), level, b)?;
    let pair = BoxPair::new(i, j)?;
    let l = lambda.value();
    let one_minus_2l = Rat::one() - l - l;
    let w = pair.width();
    let g = g_image(&pair);
    let checks = alloc::vec![
        ExactCheck::rat_cmp(
            "surjection left: (1-2l)(a + l^n) <= l b",
            &one_minus_2l * (pair.a() + &w),
            Rel::Le,
            l * pair.b(),
        ),
        ExactCheck::rat_cmp(
            "surjection right: (1-2l)(b + l^n) <= a",
            &one_minus_2l * (pair.b() + &w),
            Rel::Le,
            pair.a().clone(),
        ),
        ExactCheck::rat_cmp("circle reachable: a^2 + b^2 <= 1", g.lo, Rel::Le, Rat::one()),
        ExactCheck::rat_cmp(
            "circle reachable: 1 <= (a+l^n)^2 + (b+l^n)^2",
            Rat::one(),
            Rel::Le,
            g.hi,
        ),
    ];
    Ok(match checks.iter().find(|c| !c.holds()) {
        None => Certificate::NontrivialWitness {
            lambda: l.clone(),
            level,
            a: pair.a().clone(),
            b: pair.b().clone(),
            checks,
        },
        Some(failed) => Certificate::NotApplicable {
            lambda: l.clone(),
            reason: alloc::format!("witness check failed: {}", failed.label()),
        },
    })
}

/// The five exact checks behind a continuum witness: strict order, the
/// double-covering condition, and `r` strictly inside the double-cover
/// interval.
fn continuum_checks(pair: &BoxPair, r: &Rat) -> Vec<ExactCheck> {
    let l = pair.lambda().value();
    let one_minus_2l = Rat::one() - l - l;
    let coeff = Rat::one() - l - l * l;
    let w = pair.width();
    let (a, b) = (pair.a(), pair.b());
    let two = Rat::from_integer(2.into());
    let lo = a * a + b * b;
    let hi = &lo + &two * (a + b) * &w + &two * &w * &w;
    alloc::vec![
        ExactCheck::rat_cmp("distinct intervals: a < b", a.clone(), Rel::Lt, b.clone()),
        ExactCheck::rat_cmp(
            "double cover left: (1-l-l^2)(a + l^n) <= l b",
            coeff * (a + &w),
            Rel::Le,
            l * b,
        ),
        ExactCheck::rat_cmp(
            "double cover right: (1-2l)(b + l^n) <= l a",
            one_minus_2l * (b + &w),
            Rel::Le,
            l * a,
        ),
        ExactCheck::rat_cmp("r above image floor: a^2 + b^2 < r", lo, Rel::Lt, r.clone()),
        ExactCheck::rat_cmp(
            "r below image ceiling: r < a^2+b^2+2(a+b)l^n+2l^(2n)",
            r.clone(),
            Rel::Lt,
            hi,
        ),
    ]
}

fn continuum_witness_for(lambda: &Lambda) -> Option<(u32, Rat, Rat)> {
    let l = lambda.value();
    let one_minus_l = lambda.one_minus();
    if l >= &crate::exactnum::rat(415, 1000) {
        let a = &one_minus_l + l * l - lambda.pow(3);
        let b = &one_minus_l + l * l - lambda.pow(4);
        Some((4, a, b))
    } else if l >= &crate::exactnum::rat(407494, 1_000_000) {
        let b = &one_minus_l + l * l - lambda.pow(3);
        Some((3, one_minus_l, b))
    } else {
        None
    }
}

/// Certifies that `{x^2 + y^2 = r}` meets `K_lambda x K_lambda` in
/// continuum many points, using the built-in witnesses on
/// `[407494/10^6, 1/2)` and otherwise a bounded lexicographic search up to
/// level [`DEFAULT_CONTINUUM_SEARCH_DEPTH`].
pub fn certify_continuum(lambda: &Lambda, r: &Rat) -> Certificate {
    certify_continuum_with_depth(lambda, r, DEFAULT_CONTINUUM_SEARCH_DEPTH)
}

/// [`certify_continuum`] with an explicit search depth.
pub fn certify_continuum_with_depth(lambda: &Lambda, r: &Rat, search_depth: u32) -> Certificate {
    assert!(r.is_positive(), "r must be positive");
    let certificate_from = |level: u32, pair: &BoxPair| -> Option<Certificate> {
        let checks = continuum_checks(pair, r);
        checks
            .iter()
            .all(ExactCheck::holds)
            .then(|| Certificate::ContinuumWitness {
                lambda: lambda.value().clone(),
                level,
                a: pair.a().clone(),
                b: pair.b().clone(),
                r: r.clone(),
                checks,
            })
    };

    if let Some((n, a, b)) = continuum_witness_for(lambda) {
        let i = BasicInterval::from_left(lambda.clone(), n, &a).expect("built-in endpoint");
        let j = BasicInterval::from_left(lambda.clone(), n, &b).expect("built-in endpoint");
        let pair = BoxPair::new(i, j).expect("same level");
        if let Some(cert) = certificate_from(n, &pair) {
            return cert;
        }
    }

    // Witness search: increasing level, lexicographic (a, b), first hit.
    for n in 1..=search_depth {
        let intervals = crate::cantor::level_intervals(lambda, n).expect("depth within cap");
        for (idx, i) in intervals.iter().enumerate() {
            for j in &intervals[idx + 1..] {
                let pair = BoxPair::new(i.clone(), j.clone()).expect("same level");
                if let Some(cert) = certificate_from(n, &pair) {
                    return cert;
                }
            }
        }
    }

    if r.is_one() {
        if let Certificate::Trivial { .. } = certify_trivial(lambda) {
            return Certificate::NotApplicable {
                lambda: lambda.value().clone(),
                reason: "unit circle intersection is trivial for this lambda".into(),
            };
        }
    }
    Certificate::Unknown {
        lambda: lambda.value().clone(),
        depth: search_depth,
    }
}

/// Does `r` lie strictly inside `g(A x B)`?
fn r_interior(pair: &BoxPair, r: &Rat) -> bool {
    g_image(pair).contains_interior(r)
}

/// Runs the binary branching construction to depth `d`: every node is a
/// pair whose double-cover interval strictly contains `r`, and its two
/// children are distinct descendant pairs at a common deeper level with
/// `r` interior to their images. Returns the `2^d` leaves.
pub fn construct_solution_boxes(
    lambda: &Lambda,
    r: &Rat,
    witness: (u32, &Rat, &Rat),
    depth: u32,
) -> Result<Vec<BoxPair>, CircleError> {
    let (n, a, b) = witness;
    let i = BasicInterval::from_left(lambda.clone(), n, a)?;
    let j = BasicInterval::from_left(lambda.clone(), n, b)?;
    let root = BoxPair::new(i, j)?;
    if a >= b {
        return Err(CircleError::InvalidWitness("witness needs a < b".into()));
    }
    let dc = double_cover_interval(&root)
        .map_err(|_| CircleError::InvalidWitness("double-covering condition fails".into()))?;
    if !dc.contains_interior(r) {
        return Err(CircleError::InvalidWitness(alloc::format!(
            "r = {} is not interior to {}",
            format_rat(r),
            dc
        )));
    }
    let mut leaves = Vec::with_capacity(1usize << depth.min(24));
    branch(&root, r, depth, &mut leaves)?;
    Ok(leaves)
}

fn branch(
    node: &BoxPair,
    r: &Rat,
    remaining: u32,
    leaves: &mut Vec<BoxPair>,
) -> Result<(), CircleError> {
    debug_assert!(check_double_cover_condition(node));
    if remaining == 0 {
        leaves.push(node.clone());
        return Ok(());
    }
    // Two distinct descendant pairs at a common deeper level, each with r
    // strictly inside its image; the double-cover interval of the node
    // guarantees they exist at some finite span.
    for span in 1..=BRANCH_SEARCH_SPAN {
        let left_descendants = node.first().descendants(span);
        let right_descendants = node.second().descendants(span);
        let mut found: Vec<BoxPair> = Vec::with_capacity(2);
        'scan: for a_box in &left_descendants {
            for b_box in &right_descendants {
                let pair =
                    BoxPair::new(a_box.clone(), b_box.clone()).expect("descendants share level");
                if r_interior(&pair, r) && !found.contains(&pair) {
                    found.push(pair);
                    if found.len() == 2 {
                        break 'scan;
                    }
                }
            }
        }
        if found.len() == 2 {
            let second = found.pop().expect("two entries");
            let first = found.pop().expect("one entry");
            branch(&first, r, remaining - 1, leaves)?;
            branch(&second, r, remaining - 1, leaves)?;
            return Ok(());
        }
    }
    Err(CircleError::BranchingFailure {
        level: node.level(),
    })
}

/// A sound cover of the circle solutions at a given depth: every
/// `(x, y) in K x K` with `x^2 + y^2 = r` and `x <= y` lies in some
/// surviving box.
#[derive(Debug, Clone, Serialize)]
pub struct CoverReport {
    pub depth: u32,
    pub count: usize,
    pub boxes: Vec<CoverBox>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverBox {
    pub pair: BoxPair,
    /// Does the box closure contain `(0, 1)` (equivalently `(1, 0)`)?
    pub contains_trivial_point: bool,
}

/// Refines the level-0 pair `depth` times, keeping a (canonical, deduped)
/// child pair iff `r` lies in its closed `g`-image. Discarding is backed
/// by an exact comparison, so no true solution is ever lost.
pub fn enumerate_boxes(lambda: &Lambda, r: &Rat, depth: u32) -> Result<CoverReport, CircleError> {
    if depth > ENUM_DEPTH_CAP {
        return Err(CircleError::DepthCapExceeded {
            requested: depth,
            cap: ENUM_DEPTH_CAP,
        });
    }
    assert!(r.is_positive(), "r must be positive");
    let root = BoxPair::diagonal(BasicInterval::root(lambda.clone()));
    let mut frontier: Vec<BoxPair> = Vec::new();
    if g_image(&root).contains_closed(r) {
        frontier.push(root);
    }
    for _ in 0..depth {
        let mut next: Vec<BoxPair> = Vec::with_capacity(frontier.len() * 4);
        for pair in &frontier {
            for child in pair.child_pairs() {
                if g_image(&child).contains_closed(r) {
                    next.push(child);
                }
            }
        }
        next.sort_by(|p, q| (p.a(), p.b()).cmp(&(q.a(), q.b())));
        frontier = next;
    }
    let boxes: Vec<CoverBox> = frontier
        .into_iter()
        .map(|pair| CoverBox {
            contains_trivial_point: pair.touches_trivial_point(),
            pair,
        })
        .collect();
    Ok(CoverReport {
        depth,
        count: boxes.len(),
        boxes,
    })
}
