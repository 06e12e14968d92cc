//! Decision procedures for `{y = x^q}` against `K_lambda x K_lambda` and
//! for the Pythagorean surface `{x^2 + y^2 = z^2}` against the triple
//! product, plus sound box searches used to confirm them empirically.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cantor::{point_from_coding, BasicInterval, EventualCoding, Lambda, Word};
use crate::circle::{ExactCheck, RatInterval};
use crate::exactnum::{format_rat, rat, rat_pow, rat_serde, IntPoly, Rat, SignClaim};

/// Depth cap for the box searches in this module.
pub const SEARCH_DEPTH_CAP: u32 = 16;

/// Points `(lambda^k, lambda^(qk))` listed explicitly in a
/// [`PowerCurveAnswer`].
const CHARACTERIZATION_PREFIX_LEN: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("theorem range requires lambda <= 1/3 and 2 <= q <= 1/lambda - 1; got lambda = {lambda}, q = {q}")]
    OutOfRange { lambda: String, q: u32 },
    #[error("depth {requested} exceeds the cap {cap}")]
    DepthCapExceeded { requested: u32, cap: u32 },
}

/// The complete solution set of `{y = x^q}` in `K_lambda x K_lambda`:
/// `{(lambda^k, lambda^(qk)) : k >= 1} U {(0,0), (1,1)}`, carried
/// symbolically plus a finite prefix of exact points.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerCurveAnswer {
    pub lambda: Rat,
    pub exponent: u32,
    pub prefix: Vec<(Rat, Rat)>,
}

impl PowerCurveAnswer {
    pub fn symbolic(&self) -> String {
        alloc::format!(
            "{{(l^k, l^{}k) : k >= 1}} U {{(0,0), (1,1)}} with l = {}",
            self.exponent,
            format_rat(&self.lambda)
        )
    }
}

impl Serialize for PowerCurveAnswer {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let prefix: Vec<[String; 2]> = self
            .prefix
            .iter()
            .map(|(x, y)| [format_rat(x), format_rat(y)])
            .collect();
        let mut s = serializer.serialize_struct("PowerCurveAnswer", 4)?;
        s.serialize_field("lambda", &format_rat(&self.lambda))?;
        s.serialize_field("exponent", &self.exponent)?;
        s.serialize_field("symbolic", &self.symbolic())?;
        s.serialize_field("prefix", &prefix)?;
        s.end()
    }
}

fn check_power_curve_range(lambda: &Lambda, q: u32) -> Result<(), CurveError> {
    let l = lambda.value();
    let out_of_range = || CurveError::OutOfRange {
        lambda: format_rat(l),
        q,
    };
    if l > &rat(1, 3) || q < 2 {
        return Err(out_of_range());
    }
    // q <= 1/lambda - 1 as the exact comparison q*lambda <= 1 - lambda
    if Rat::from_integer(q.into()) * l > lambda.one_minus() {
        return Err(out_of_range());
    }
    Ok(())
}

/// The full characterization of `{y = x^q}` meeting `K_lambda x K_lambda`
/// for `lambda <= 1/3` and `2 <= q <= 1/lambda - 1`.
pub fn decide_power_curve(lambda: &Lambda, q: u32) -> Result<PowerCurveAnswer, CurveError> {
    check_power_curve_range(lambda, q)?;
    let mut prefix = Vec::with_capacity(CHARACTERIZATION_PREFIX_LEN as usize);
    for k in 1..=CHARACTERIZATION_PREFIX_LEN {
        prefix.push((lambda.pow(k), lambda.pow(q * k)));
    }
    Ok(PowerCurveAnswer {
        lambda: lambda.value().clone(),
        exponent: q,
        prefix,
    })
}

/// Is `x` the abscissa of a solution of `{y = x^q}` in
/// `K_lambda x K_lambda`, i.e. `x in {0, 1}` or `x = lambda^k`?
///
/// The loop stops as soon as `lambda^k` drops below `x`; smaller powers
/// can never match again.
pub fn power_curve_membership(lambda: &Lambda, q: u32, x: &Rat) -> Result<bool, CurveError> {
    check_power_curve_range(lambda, q)?;
    if x.is_zero() || x.is_one() {
        return Ok(true);
    }
    if x.is_negative() || x > &Rat::one() {
        return Ok(false);
    }
    let mut power = lambda.value().clone();
    while &power >= x {
        if &power == x {
            return Ok(true);
        }
        power *= lambda.value();
    }
    Ok(false)
}

/// An `(x, x^q)` pair escaping the predicted digit window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefixCounterexample {
    #[serde(with = "rat_serde")]
    pub x: Rat,
    #[serde(with = "rat_serde")]
    pub y: Rat,
}

/// Result of the prefix-propagation harness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefixLemmaReport {
    pub holds: bool,
    pub samples: u32,
    /// Filled if some sample escaped the window (the lemma says none can).
    pub counterexample: Option<PrefixCounterexample>,
}

/// Test harness for the prefix-propagation lemma: if the coding of `x`
/// starts `0^k 1`, then `y = x^q` lies in `(lambda^(qk+1), lambda^(qk)]`,
/// which pins the coding prefix of `y` to `0^(qk) 1` whenever `y` is in
/// `K_lambda`.
///
/// Samples `x` from finite codings `0^k 1 w 0^inf` with `w` drawn from a
/// seeded generator; the exact power point `x = lambda^k` is always
/// included.
pub fn verify_prefix_lemma(
    lambda: &Lambda,
    q: u32,
    k: u32,
    sample_budget: u32,
    seed: u64,
) -> Result<PrefixLemmaReport, CurveError> {
    check_power_curve_range(lambda, q)?;
    let upper = lambda.pow(q * k);
    let lower = lambda.pow(q * k + 1);
    let in_window = |y: &Rat| y > &lower && y <= &upper;

    let probe = |x: Rat| -> Option<PrefixCounterexample> {
        let y = rat_pow(&x, q);
        if in_window(&y) {
            None
        } else {
            Some(PrefixCounterexample { x, y })
        }
    };

    if let Some(cx) = probe(lambda.pow(k)) {
        return Ok(PrefixLemmaReport {
            holds: false,
            samples: 1,
            counterexample: Some(cx),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = 1;
    for _ in 0..sample_budget {
        let mut digits = alloc::vec![0u8; k as usize];
        digits.push(1);
        for _ in 0..10 {
            digits.push(rng.gen_range(0..=1));
        }
        let coding = EventualCoding::new(
            Word::from_digits(&digits).expect("binary digits"),
            Word::from_digits(&[0]).expect("binary digits"),
        )
        .expect("nonempty period");
        let x = point_from_coding(lambda, &coding);
        samples += 1;
        if let Some(cx) = probe(x) {
            return Ok(PrefixLemmaReport {
                holds: false,
                samples,
                counterexample: Some(cx),
            });
        }
    }
    Ok(PrefixLemmaReport {
        holds: true,
        samples,
        counterexample: None,
    })
}

/// Verdict for the Pythagorean surface.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum PythagoreanAnswer {
    /// `{x^2+y^2=z^2}` meets the triple product only along
    /// `{(x,0,x), (0,x,x) : x in K_lambda}`.
    TrivialFamilies {
        #[serde(with = "rat_serde")]
        lambda: Rat,
        checks: Vec<ExactCheck>,
    },
    NotApplicable {
        #[serde(with = "rat_serde")]
        lambda: Rat,
        reason: String,
    },
}

impl PythagoreanAnswer {
    pub fn is_trivial_families(&self) -> bool {
        matches!(self, PythagoreanAnswer::TrivialFamilies { .. })
    }
}

/// Certifies the Pythagorean-surface characterization for
/// `lambda <= 187915/1000000` by evaluating the three proof inequalities
/// at `lambda` exactly.
pub fn decide_pythagorean(lambda: &Lambda) -> PythagoreanAnswer {
    let l = lambda.value().clone();
    if l > rat(187915, 1_000_000) {
        return PythagoreanAnswer::NotApplicable {
            lambda: l,
            reason: "certified range is lambda <= 187915/1000000".into(),
        };
    }
    let checks = alloc::vec![
        ExactCheck::poly_sign_at(
            "base case: 2l^2 - 4l + 1 > 0 at lambda",
            IntPoly::from_ints(&[1, -4, 2]),
            l.clone(),
            SignClaim::StrictlyPositive,
        ),
        ExactCheck::poly_sign_at(
            "near branch: l^2 - 4l + 1 > 0 at lambda",
            IntPoly::from_ints(&[1, -4, 1]),
            l.clone(),
            SignClaim::StrictlyPositive,
        ),
        ExactCheck::poly_sign_at(
            "far branch: 1 - 6l + 3l^2 + 4l^3 - 4l^4 > 0 at lambda",
            IntPoly::from_ints(&[1, -6, 3, 4, -4]),
            l.clone(),
            SignClaim::StrictlyPositive,
        ),
    ];
    match checks.iter().find(|c| !c.holds()) {
        None => PythagoreanAnswer::TrivialFamilies { lambda: l, checks },
        Some(failed) => PythagoreanAnswer::NotApplicable {
            lambda: l,
            reason: alloc::format!("proof inequality failed: {}", failed.label()),
        },
    }
}

/// An ordered triple of same-level basic intervals with the canonical
/// order `x.left <= y.left` (the surface is symmetric in x and y).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxTriple {
    pub x: BasicInterval,
    pub y: BasicInterval,
    pub z: BasicInterval,
}

impl BoxTriple {
    fn new(x: BasicInterval, y: BasicInterval, z: BasicInterval) -> Self {
        if x.left() <= y.left() {
            BoxTriple { x, y, z }
        } else {
            BoxTriple { x: y, y: x, z }
        }
    }

    /// Interval image of `x^2 + y^2 - z^2` over the triple; the surface
    /// crosses the box iff this contains zero.
    fn defect_image(&self) -> RatInterval {
        let w = self.x.width();
        let (a, b, c) = (self.x.left(), self.y.left(), self.z.left());
        let (ar, br, cr) = (a + &w, b + &w, c + &w);
        RatInterval {
            lo: a * a + b * b - &cr * &cr,
            hi: &ar * &ar + &br * &br - c * c,
        }
    }

    fn crosses_surface(&self) -> bool {
        let image = self.defect_image();
        !image.lo.is_positive() && !image.hi.is_negative()
    }

    /// Does the box touch the plane `{x = 0}` (after canonicalization this
    /// also covers `{y = 0}`)?
    pub fn touches_trivial_family(&self) -> bool {
        self.x.left().is_zero()
    }
}

/// Sound cover of the Pythagorean surface solutions at a given depth.
#[derive(Debug, Clone, Serialize)]
pub struct TripleCoverReport {
    pub depth: u32,
    pub count: usize,
    pub triples: Vec<TripleCoverBox>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleCoverBox {
    pub triple: BoxTriple,
    pub touches_trivial_family: bool,
}

/// Branch-and-bound over triples of basic intervals, retaining those
/// whose interval image of `x^2 + y^2 - z^2` contains zero.
pub fn search_pythagorean_boxes(
    lambda: &Lambda,
    depth: u32,
) -> Result<TripleCoverReport, CurveError> {
    if depth > SEARCH_DEPTH_CAP {
        return Err(CurveError::DepthCapExceeded {
            requested: depth,
            cap: SEARCH_DEPTH_CAP,
        });
    }
    let root = BoxTriple::new(
        BasicInterval::root(lambda.clone()),
        BasicInterval::root(lambda.clone()),
        BasicInterval::root(lambda.clone()),
    );
    let mut frontier: Vec<BoxTriple> = Vec::new();
    if root.crosses_surface() {
        frontier.push(root);
    }
    for _ in 0..depth {
        let mut next: Vec<BoxTriple> = Vec::with_capacity(frontier.len() * 8);
        for triple in &frontier {
            let (x1, x2) = triple.x.children();
            let (y1, y2) = triple.y.children();
            let (z1, z2) = triple.z.children();
            let mut children: Vec<BoxTriple> = Vec::with_capacity(8);
            for x in [&x1, &x2] {
                for y in [&y1, &y2] {
                    for z in [&z1, &z2] {
                        let child = BoxTriple::new(x.clone(), y.clone(), z.clone());
                        if child.crosses_surface() && !children.contains(&child) {
                            children.push(child);
                        }
                    }
                }
            }
            next.extend(children);
        }
        next.sort_by(|p, q| {
            (p.x.left(), p.y.left(), p.z.left()).cmp(&(q.x.left(), q.y.left(), q.z.left()))
        });
        next.dedup();
        frontier = next;
    }
    let triples: Vec<TripleCoverBox> = frontier
        .into_iter()
        .map(|triple| TripleCoverBox {
            touches_trivial_family: triple.touches_trivial_family(),
            triple,
        })
        .collect();
    Ok(TripleCoverReport {
        depth,
        count: triples.len(),
        triples,
    })
}

/// A pair of basic intervals for the (non-symmetric) curve search: the
/// first component carries x, the second carries y.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveBox {
    pub x: BasicInterval,
    pub y: BasicInterval,
}

impl CurveBox {
    /// The curve `y = x^q` crosses the box iff `[b, b+w]` meets
    /// `[a^q, (a+w)^q]` (the power map is increasing on `[0, 1]`).
    fn crosses_curve(&self, q: u32) -> bool {
        let w = self.x.width();
        let lo = rat_pow(self.x.left(), q);
        let hi = rat_pow(&(self.x.left() + &w), q);
        *self.y.left() <= hi && lo <= self.y.right()
    }

    /// Does the box meet the characterized solution set
    /// `{(l^k, l^(qk))} U {(0,0), (1,1)}`?
    pub fn meets_characterization(&self, lambda: &Lambda, q: u32) -> bool {
        if self.x.left().is_zero() && self.y.left().is_zero() {
            return true;
        }
        if self.x.right().is_one() && self.y.right().is_one() {
            return true;
        }
        // powers decrease strictly, so once either coordinate falls below
        // its box there is no larger k to try; this also terminates when a
        // left endpoint is zero, because the other one is then positive
        let step = lambda.pow(q);
        let mut xk = lambda.value().clone();
        let mut yk = step.clone();
        loop {
            if &xk < self.x.left() || &yk < self.y.left() {
                return false;
            }
            if self.x.contains(&xk) && self.y.contains(&yk) {
                return true;
            }
            xk *= lambda.value();
            yk *= &step;
        }
    }
}

/// Sound cover of the power-curve solutions at a given depth.
#[derive(Debug, Clone, Serialize)]
pub struct CurveCoverReport {
    pub depth: u32,
    pub count: usize,
    pub boxes: Vec<CurveCoverBox>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveCoverBox {
    pub pair: CurveBox,
    pub meets_characterization: bool,
}

/// Branch-and-bound over (x, y) interval pairs for `{y = x^q}`.
pub fn search_power_curve_boxes(
    lambda: &Lambda,
    q: u32,
    depth: u32,
) -> Result<CurveCoverReport, CurveError> {
    check_power_curve_range(lambda, q)?;
    if depth > SEARCH_DEPTH_CAP {
        return Err(CurveError::DepthCapExceeded {
            requested: depth,
            cap: SEARCH_DEPTH_CAP,
        });
    }
    let root = CurveBox {
        x: BasicInterval::root(lambda.clone()),
        y: BasicInterval::root(lambda.clone()),
    };
    let mut frontier: Vec<CurveBox> = Vec::new();
    if root.crosses_curve(q) {
        frontier.push(root);
    }
    for _ in 0..depth {
        let mut next: Vec<CurveBox> = Vec::with_capacity(frontier.len() * 4);
        for pair in &frontier {
            let (x1, x2) = pair.x.children();
            let (y1, y2) = pair.y.children();
            for x in [&x1, &x2] {
                for y in [&y1, &y2] {
                    let child = CurveBox {
                        x: x.clone(),
                        y: y.clone(),
                    };
                    if child.crosses_curve(q) {
                        next.push(child);
                    }
                }
            }
        }
        next.sort_by(|p, q| (p.x.left(), p.y.left()).cmp(&(q.x.left(), q.y.left())));
        frontier = next;
    }
    let boxes: Vec<CurveCoverBox> = frontier
        .into_iter()
        .map(|pair| CurveCoverBox {
            meets_characterization: pair.meets_characterization(lambda, q),
            pair,
        })
        .collect();
    Ok(CurveCoverReport {
        depth,
        count: boxes.len(),
        boxes,
    })
}
