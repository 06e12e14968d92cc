//! `K_lambda`: basic intervals, binary codings, and membership.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{format_rat, rat, rat_pow, Rat};

/// Hard cap on `level_intervals` (the list has `2^n` entries).
pub const LEVEL_CAP: u32 = 24;

/// Default depth cap for the membership semi-decision.
pub const DEFAULT_DEPTH_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CantorError {
    #[error("contraction ratio {0} is outside (0, 1/2)")]
    LambdaOutOfRange(String),
    #[error("level {requested} exceeds the depth cap {cap}")]
    DepthCapExceeded { requested: u32, cap: u32 },
    #[error("{0} is not a level-{1} left endpoint")]
    InvalidLeftEndpoint(String, u32),
    #[error("coding period must be nonempty")]
    EmptyPeriod,
    #[error("word digits must be 0 or 1")]
    BadWordDigit,
}

/// A validated contraction ratio `0 < lambda < 1/2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lambda(Rat);

impl Lambda {
    pub fn new(value: Rat) -> Result<Self, CantorError> {
        if value.is_positive() && value < rat(1, 2) {
            Ok(Lambda(value))
        } else {
            Err(CantorError::LambdaOutOfRange(format_rat(&value)))
        }
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    /// `1 - lambda`, the offset of the right-hand map.
    pub fn one_minus(&self) -> Rat {
        Rat::one() - &self.0
    }

    /// `lambda^n`, the width of a level-n basic interval.
    pub fn pow(&self, n: u32) -> Rat {
        rat_pow(&self.0, n)
    }
}

impl fmt::Debug for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lambda({})", self.0)
    }
}

/// A finite word over `{0, 1}`; level n means length n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_digits(digits: &[u8]) -> Result<Self, CantorError> {
        if digits.iter().all(|&d| d <= 1) {
            Ok(Word(digits.to_vec()))
        } else {
            Err(CantorError::BadWordDigit)
        }
    }

    pub fn parse(s: &str) -> Result<Self, CantorError> {
        s.bytes()
            .map(|b| match b {
                b'0' => Ok(0),
                b'1' => Ok(1),
                _ => Err(CantorError::BadWordDigit),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn push(&mut self, digit: u8) {
        debug_assert!(digit <= 1);
        self.0.push(digit);
    }

    pub fn extended(&self, digit: u8) -> Word {
        let mut w = self.clone();
        w.push(digit);
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A level-n basic interval `[a, a + lambda^n]` of `K_lambda`, carrying
/// both the word that generated it and the exact left endpoint.
#[derive(Clone, PartialEq, Eq)]
pub struct BasicInterval {
    lambda: Lambda,
    level: u32,
    left: Rat,
    word: Word,
}

impl BasicInterval {
    /// The level-0 interval `[0, 1]`.
    pub fn root(lambda: Lambda) -> Self {
        BasicInterval {
            lambda,
            level: 0,
            left: Rat::zero(),
            word: Word::empty(),
        }
    }

    /// Builds the interval named by a word: the left endpoint is
    /// `(1 - lambda) * sum_j d_j lambda^(j-1)`.
    pub fn from_word(lambda: Lambda, word: Word) -> Self {
        let mut acc = Rat::zero();
        for &d in word.digits().iter().rev() {
            acc = acc * lambda.value();
            if d == 1 {
                acc += Rat::one();
            }
        }
        let left = lambda.one_minus() * acc;
        BasicInterval {
            level: word.len() as u32,
            lambda,
            left,
            word,
        }
    }

    /// Recovers the word from an exact left endpoint, rejecting values
    /// that do not name a level-n basic interval.
    pub fn from_left(lambda: Lambda, level: u32, left: &Rat) -> Result<Self, CantorError> {
        let invalid = || CantorError::InvalidLeftEndpoint(format_rat(left), level);
        if left.is_negative() {
            return Err(invalid());
        }
        // left/(1-lambda) = d1 + lambda*(d2 + lambda*(...)), and the tail
        // sum_{j>=2} lambda^(j-1) is below 1, so the leading digit is
        // forced at each step.
        let mut t = left / lambda.one_minus();
        let mut word = Word::empty();
        for _ in 0..level {
            if t >= Rat::one() {
                word.push(1);
                t -= Rat::one();
            } else {
                word.push(0);
            }
            t /= lambda.value();
        }
        if !t.is_zero() {
            return Err(invalid());
        }
        let interval = BasicInterval::from_word(lambda, word);
        debug_assert_eq!(&interval.left, left);
        Ok(interval)
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn left(&self) -> &Rat {
        &self.left
    }

    pub fn width(&self) -> Rat {
        self.lambda.pow(self.level)
    }

    pub fn right(&self) -> Rat {
        &self.left + self.width()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn contains(&self, x: &Rat) -> bool {
        x >= &self.left && *x <= self.right()
    }

    /// All `2^extra` basic intervals `extra` levels below this one, in
    /// lexicographic word order.
    pub fn descendants(&self, extra_levels: u32) -> Vec<BasicInterval> {
        let mut current = alloc::vec![self.clone()];
        for _ in 0..extra_levels {
            let mut next = Vec::with_capacity(current.len() * 2);
            for interval in &current {
                let (l, r) = interval.children();
                next.push(l);
                next.push(r);
            }
            current = next;
        }
        current
    }

    /// The two level-(n+1) children: images of this interval under the
    /// left and right map.
    pub fn children(&self) -> (BasicInterval, BasicInterval) {
        let width = self.width();
        let left_child = BasicInterval {
            lambda: self.lambda.clone(),
            level: self.level + 1,
            left: self.left.clone(),
            word: self.word.extended(0),
        };
        let right_child = BasicInterval {
            lambda: self.lambda.clone(),
            level: self.level + 1,
            left: &self.left + self.lambda.one_minus() * &width,
            word: self.word.extended(1),
        };
        debug_assert_eq!(
            right_child.left,
            BasicInterval::from_word(self.lambda.clone(), right_child.word.clone()).left
        );
        (left_child, right_child)
    }
}

impl fmt::Debug for BasicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BasicInterval(level {}, word {}, [{}, {}])",
            self.level,
            self.word,
            self.left,
            self.right()
        )
    }
}

impl Serialize for BasicInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use alloc::string::ToString;
        let mut s = serializer.serialize_struct("BasicInterval", 3)?;
        s.serialize_field("level", &self.level)?;
        s.serialize_field("word", &self.word.to_string())?;
        s.serialize_field("left", &format_rat(&self.left))?;
        s.end()
    }
}

/// All `2^n` level-n basic intervals in lexicographic word order.
pub fn level_intervals(lambda: &Lambda, n: u32) -> Result<Vec<BasicInterval>, CantorError> {
    if n > LEVEL_CAP {
        return Err(CantorError::DepthCapExceeded {
            requested: n,
            cap: LEVEL_CAP,
        });
    }
    let mut current = alloc::vec![BasicInterval::root(lambda.clone())];
    for _ in 0..n {
        let mut next = Vec::with_capacity(current.len() * 2);
        for interval in &current {
            let (l, r) = interval.children();
            next.push(l);
            next.push(r);
        }
        current = next;
    }
    Ok(current)
}

/// An eventually periodic binary coding `preperiod . period^infinity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualCoding {
    pub preperiod: Word,
    pub period: Word,
}

impl EventualCoding {
    pub fn new(preperiod: Word, period: Word) -> Result<Self, CantorError> {
        if period.is_empty() {
            return Err(CantorError::EmptyPeriod);
        }
        Ok(EventualCoding { preperiod, period })
    }
}

impl fmt::Display for EventualCoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^inf", self.preperiod, self.period)
    }
}

/// The exact value `(1 - lambda) * sum_n x_n lambda^(n-1)` of a coding,
/// closed-form via a finite geometric series.
pub fn point_from_coding(lambda: &Lambda, coding: &EventualCoding) -> Rat {
    let weighted = |word: &Word| {
        let mut acc = Rat::zero();
        for &d in word.digits().iter().rev() {
            acc = acc * lambda.value();
            if d == 1 {
                acc += Rat::one();
            }
        }
        acc
    };
    let p = coding.preperiod.len() as u32;
    let q = coding.period.len() as u32;
    debug_assert!(q > 0);
    let head = weighted(&coding.preperiod);
    let tail = weighted(&coding.period) / (Rat::one() - lambda.pow(q));
    lambda.one_minus() * (head + lambda.pow(p) * tail)
}

/// Verdict of the membership semi-decision for `K_lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(EventualCoding),
    NonMember,
    /// Search stopped unresolved at this depth.
    Unknown { depth: u32 },
}

/// Decides `x in K_lambda` by branching on the disjoint cover
/// `[0, lambda] U [1-lambda, 1]` with the inverse maps.
///
/// When the inverse orbit revisits a state the verdict is exact with an
/// eventually periodic coding; this always happens for `lambda = 1/m`.
/// For other rational `lambda` the state space can grow without bound, so
/// after `depth_cap` unresolved steps the verdict is `Unknown`.
pub fn member_k_lambda(lambda: &Lambda, x: &Rat, depth_cap: u32) -> Membership {
    let one = Rat::one();
    let threshold = lambda.one_minus();
    let mut digits: Vec<u8> = Vec::new();
    let mut seen: BTreeMap<Rat, usize> = BTreeMap::new();
    let mut state = x.clone();
    for _ in 0..=depth_cap {
        if state.is_negative() || state > one {
            return Membership::NonMember;
        }
        if let Some(&start) = seen.get(&state) {
            let preperiod = Word(digits[..start].to_vec());
            let period = Word(digits[start..].to_vec());
            let coding = EventualCoding { preperiod, period };
            debug_assert_eq!(&point_from_coding(lambda, &coding), x);
            return Membership::Member(coding);
        }
        seen.insert(state.clone(), digits.len());
        if &state <= lambda.value() {
            digits.push(0);
            state /= lambda.value();
        } else if state >= threshold {
            digits.push(1);
            state = (state - &threshold) / lambda.value();
        } else {
            return Membership::NonMember;
        }
    }
    Membership::Unknown { depth: depth_cap }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    fn lam(n: i64, d: i64) -> Lambda {
        Lambda::new(rat(n, d)).unwrap()
    }

    #[test]
    fn lambda_range_is_enforced() {
        assert!(Lambda::new(rat(1, 2)).is_err());
        assert!(Lambda::new(rat(0, 1)).is_err());
        assert!(Lambda::new(rat(-1, 3)).is_err());
        assert!(Lambda::new(rat(49, 100)).is_ok());
    }

    #[test]
    fn children_of_the_root() {
        let root = BasicInterval::root(lam(1, 3));
        let (l, r) = root.children();
        assert_eq!((l.left(), l.right()), (&rat_int(0), rat(1, 3)));
        assert_eq!((r.left(), r.right()), (&rat(2, 3), rat_int(1)));
    }

    #[test]
    fn children_of_a_right_interval() {
        let i = BasicInterval::from_word(lam(1, 5), Word::parse("1").unwrap());
        assert_eq!((i.left(), i.right()), (&rat(4, 5), rat_int(1)));
        let (l, r) = i.children();
        assert_eq!((l.left(), l.right()), (&rat(4, 5), rat(21, 25)));
        assert_eq!((r.left(), r.right()), (&rat(24, 25), rat_int(1)));
    }

    #[test]
    fn children_for_non_unit_fraction() {
        let root = BasicInterval::root(lam(42, 100));
        let (l, r) = root.children();
        assert_eq!(l.right(), rat(21, 50));
        assert_eq!(r.left(), &rat(29, 50));
    }

    #[test]
    fn level_two_intervals() {
        let intervals = level_intervals(&lam(1, 3), 2).unwrap();
        let lefts: Vec<_> = intervals.iter().map(|i| i.left().clone()).collect();
        assert_eq!(lefts, [rat_int(0), rat(2, 9), rat(2, 3), rat(8, 9)]);
        let intervals = level_intervals(&lam(1, 5), 2).unwrap();
        let lefts: Vec<_> = intervals.iter().map(|i| i.left().clone()).collect();
        assert_eq!(lefts, [rat_int(0), rat(4, 25), rat(4, 5), rat(24, 25)]);
    }

    #[test]
    fn level_cap_is_enforced() {
        assert!(matches!(
            level_intervals(&lam(1, 3), LEVEL_CAP + 1),
            Err(CantorError::DepthCapExceeded { .. })
        ));
    }

    #[test]
    fn nesting_and_disjointness_at_small_levels() {
        let lambda = lam(2, 5);
        for n in 1..=6 {
            let parents = level_intervals(&lambda, n - 1).unwrap();
            let intervals = level_intervals(&lambda, n).unwrap();
            for w in intervals.windows(2) {
                assert!(w[0].right() < *w[1].left(), "overlap at level {n}");
            }
            for (k, child) in intervals.iter().enumerate() {
                let parent = &parents[k / 2];
                assert!(parent.left() <= child.left() && child.right() <= parent.right());
            }
        }
    }

    #[test]
    fn from_left_round_trips() {
        let lambda = lam(17, 50);
        for interval in level_intervals(&lambda, 5).unwrap() {
            let rebuilt =
                BasicInterval::from_left(lambda.clone(), 5, interval.left()).unwrap();
            assert_eq!(rebuilt.word(), interval.word());
        }
        assert!(BasicInterval::from_left(lambda.clone(), 2, &rat(1, 7)).is_err());
        assert!(BasicInterval::from_left(lambda, 2, &rat(-1, 7)).is_err());
    }

    #[test]
    fn coding_values() {
        let third = lam(1, 3);
        let all_ones = EventualCoding::new(Word::empty(), Word::parse("1").unwrap()).unwrap();
        assert_eq!(point_from_coding(&third, &all_ones), rat_int(1));

        let zero_then_ones =
            EventualCoding::new(Word::parse("0").unwrap(), Word::parse("1").unwrap()).unwrap();
        assert_eq!(point_from_coding(&third, &zero_then_ones), rat(1, 3));

        let alternating =
            EventualCoding::new(Word::empty(), Word::parse("10").unwrap()).unwrap();
        assert_eq!(point_from_coding(&lam(1, 5), &alternating), rat(5, 6));
    }

    #[test]
    fn membership_of_one_quarter_in_middle_thirds() {
        match member_k_lambda(&lam(1, 3), &rat(1, 4), DEFAULT_DEPTH_CAP) {
            Membership::Member(coding) => {
                assert!(coding.preperiod.is_empty());
                assert_eq!(coding.period, Word::parse("01").unwrap());
            }
            other => panic!("expected membership, got {other:?}"),
        }
    }

    #[test]
    fn membership_rejects_the_central_gap() {
        assert_eq!(
            member_k_lambda(&lam(1, 3), &rat(1, 2), DEFAULT_DEPTH_CAP),
            Membership::NonMember
        );
    }

    #[test]
    fn membership_of_right_endpoint() {
        match member_k_lambda(&lam(1, 5), &rat_int(1), DEFAULT_DEPTH_CAP) {
            Membership::Member(coding) => {
                assert!(coding.preperiod.is_empty());
                assert_eq!(coding.period, Word::parse("1").unwrap());
            }
            other => panic!("expected membership, got {other:?}"),
        }
    }

    #[test]
    fn membership_unknown_for_awkward_ratio() {
        // 2/7 is the (01)^inf point of K_{2/5}; a tiny offset keeps the
        // inverse orbit inside the cover with states that never repeat
        let x = rat(2, 7) + rat(1, 1_000_000_000);
        let verdict = member_k_lambda(&lam(2, 5), &x, 16);
        assert_eq!(verdict, Membership::Unknown { depth: 16 });

        // the unperturbed point resolves exactly
        match member_k_lambda(&lam(2, 5), &rat(2, 7), 16) {
            Membership::Member(coding) => {
                assert_eq!(coding.period, Word::parse("01").unwrap())
            }
            other => panic!("expected membership, got {other:?}"),
        }
    }

    #[test]
    fn symmetry_under_digit_complement() {
        let lambda = lam(1, 3);
        for x in [rat(1, 4), rat(1, 3), rat(1, 9), rat(3, 4)] {
            let direct = member_k_lambda(&lambda, &x, DEFAULT_DEPTH_CAP);
            let mirrored = member_k_lambda(&lambda, &(rat_int(1) - &x), DEFAULT_DEPTH_CAP);
            match (direct, mirrored) {
                (Membership::Member(c), Membership::Member(m)) => {
                    let flip = |w: &Word| Word(w.digits().iter().map(|d| 1 - d).collect());
                    assert_eq!(m.preperiod, flip(&c.preperiod));
                    assert_eq!(m.period, flip(&c.period));
                }
                (a, b) => assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn serializes_with_word_and_left() {
        let i = BasicInterval::from_word(lam(1, 3), Word::parse("01").unwrap());
        let json = serde_json::to_string(&i).unwrap();
        assert_eq!(json, r#"{"level":2,"word":"01","left":"2/9"}"#);
    }
}
