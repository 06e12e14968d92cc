//! `K_{m,D}`: digit-set Cantor sets, base-m expansions, and membership.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{format_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("base must be at least {0}")]
    BaseTooSmall(u32),
    #[error("value {0} is outside [0, 1)")]
    ValueOutOfRange(String),
    #[error("digit set must satisfy D within 0..m and 1 < #D < m")]
    BadDigitSet,
}

/// The data of `K_{m,D}`: a base `m >= 3` and a digit set `D` with
/// `1 < #D < m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSystem {
    base: u32,
    digits: BTreeSet<u32>,
}

impl DigitSystem {
    pub fn new(base: u32, digits: impl IntoIterator<Item = u32>) -> Result<Self, ExpansionError> {
        if base < 3 {
            return Err(ExpansionError::BaseTooSmall(3));
        }
        let digits: BTreeSet<u32> = digits.into_iter().collect();
        if digits.len() < 2
            || digits.len() >= base as usize
            || digits.iter().any(|&d| d >= base)
        {
            return Err(ExpansionError::BadDigitSet);
        }
        Ok(DigitSystem { base, digits })
    }

    /// The middle-third Cantor set `C = K_{3,{0,2}}`.
    pub fn middle_third() -> Self {
        DigitSystem::new(3, [0, 2]).expect("valid digit system")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &BTreeSet<u32> {
        &self.digits
    }

    pub fn contains_digit(&self, d: u32) -> bool {
        self.digits.contains(&d)
    }
}

impl fmt::Display for DigitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{},{{", self.base)?;
        for (k, d) in self.digits.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}}}")
    }
}

/// An eventually periodic base-m digit string. The period comes straight
/// from the remainder cycle of long division, so it is primitive, and the
/// preperiod is empty exactly when the reduced denominator is coprime to
/// the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicExpansion {
    pub base: u32,
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
}

impl PeriodicExpansion {
    /// Reconstructs the exact value of the expansion.
    pub fn value(&self) -> Rat {
        let m = Rat::from_integer(self.base.into());
        let weighted = |digits: &[u32]| {
            let mut acc = Rat::zero();
            for &d in digits {
                acc = acc * &m + Rat::from_integer(d.into());
            }
            acc
        };
        let p = self.preperiod.len();
        let q = self.period.len();
        let m_p = crate::exactnum::rat_pow(&m, p as u32);
        let m_q = crate::exactnum::rat_pow(&m, q as u32);
        let head = weighted(&self.preperiod) / &m_p;
        let tail = weighted(&self.period) / (&m_q - Rat::one()) / m_p;
        head + tail
    }

    fn digits_to_string(base: u32, digits: &[u32]) -> String {
        use alloc::string::ToString;
        use core::fmt::Write;
        let mut s = String::new();
        if base <= 10 {
            for d in digits {
                let _ = write!(s, "{d}");
            }
        } else {
            // multi-digit numerals are comma separated to stay unambiguous
            s = digits
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",");
        }
        s
    }
}

impl fmt::Display for PeriodicExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({})^inf (base {})",
            Self::digits_to_string(self.base, &self.preperiod),
            Self::digits_to_string(self.base, &self.period),
            self.base
        )
    }
}

impl Serialize for PeriodicExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PeriodicExpansion", 3)?;
        s.serialize_field("pre", &Self::digits_to_string(self.base, &self.preperiod))?;
        s.serialize_field("period", &Self::digits_to_string(self.base, &self.period))?;
        s.serialize_field("base", &self.base)?;
        s.end()
    }
}

/// Base-m expansion of `x in [0, 1)` via long division with
/// remainder-cycle detection.
pub fn expansion_base_m(x: &Rat, m: u32) -> Result<PeriodicExpansion, ExpansionError> {
    if m < 2 {
        return Err(ExpansionError::BaseTooSmall(2));
    }
    if x < &Rat::zero() || x >= &Rat::one() {
        return Err(ExpansionError::ValueOutOfRange(format_rat(x)));
    }
    let den = x.denom().to_biguint().expect("denominator is positive");
    let m_big = BigUint::from(m);
    let mut remainder = x.numer().to_biguint().expect("value is nonnegative");
    let mut digits: Vec<u32> = Vec::new();
    let mut seen: BTreeMap<BigUint, usize> = BTreeMap::new();
    loop {
        if let Some(&start) = seen.get(&remainder) {
            let period = digits.split_off(start);
            let expansion = PeriodicExpansion {
                base: m,
                preperiod: digits,
                period,
            };
            debug_assert_eq!(&expansion.value(), x);
            return Ok(expansion);
        }
        seen.insert(remainder.clone(), digits.len());
        let scaled = remainder * &m_big;
        let (digit, next) = scaled.div_rem(&den);
        digits.push(digit.to_u32().expect("digit is below the base"));
        remainder = next;
    }
}

/// Does `x` have a terminating base-m expansion, i.e. is the reduced
/// denominator m-smooth?
fn is_m_adic(x: &Rat, m: u32) -> bool {
    let mut den = x.denom().to_biguint().expect("denominator is positive");
    let m_big = BigUint::from(m);
    loop {
        let g = den.gcd(&m_big);
        if g.is_one() {
            return den.is_one();
        }
        while (&den % &g).is_zero() {
            den /= &g;
        }
    }
}

/// Membership of `x in [0, 1]` in `K_{m,D}`: true iff some base-m digit
/// expansion of `x` uses digits of `D` only.
///
/// Points with a terminating expansion have two representations — the
/// terminating form and the `(m-1)`-tail form — and both are checked.
/// All other points have a unique expansion, which is walked with an
/// early exit on the first digit outside `D`.
pub fn member_k_md(sys: &DigitSystem, x: &Rat) -> bool {
    let m = sys.base();
    if x < &Rat::zero() || x > &Rat::one() {
        return false;
    }
    if x.is_zero() {
        return sys.contains_digit(0);
    }
    if x == &Rat::one() {
        return sys.contains_digit(m - 1);
    }
    if is_m_adic(x, m) {
        let expansion = expansion_base_m(x, m).expect("x is in [0, 1)");
        debug_assert_eq!(expansion.period, [0]);
        let body = &expansion.preperiod;
        let last = *body.last().expect("x is nonzero");
        debug_assert!(last > 0);
        let head_ok = body[..body.len() - 1].iter().all(|&d| sys.contains_digit(d));
        let terminating =
            head_ok && sys.contains_digit(last) && sys.contains_digit(0);
        let lowered_tail =
            head_ok && sys.contains_digit(last - 1) && sys.contains_digit(m - 1);
        return terminating || lowered_tail;
    }
    // unique expansion: walk digits, bail on the first one outside D
    let den = x.denom().to_biguint().expect("denominator is positive");
    let m_big = BigUint::from(m);
    let mut remainder = x.numer().to_biguint().expect("value is nonnegative");
    let mut seen: BTreeSet<BigUint> = BTreeSet::new();
    loop {
        if !seen.insert(remainder.clone()) {
            return true;
        }
        let scaled = remainder * &m_big;
        let (digit, next) = scaled.div_rem(&den);
        if !sys.contains_digit(digit.to_u32().expect("digit is below the base")) {
            return false;
        }
        remainder = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    #[test]
    fn quarter_in_base_three() {
        let e = expansion_base_m(&rat(1, 4), 3).unwrap();
        assert!(e.preperiod.is_empty());
        assert_eq!(e.period, [0, 2]);
    }

    #[test]
    fn order_five_period() {
        // ord_121(3) = 5 because 3^5 = 243 = 2*121 + 1
        let e = expansion_base_m(&rat(1, 121), 3).unwrap();
        assert!(e.preperiod.is_empty());
        assert_eq!(e.period, [0, 0, 0, 0, 2]);
    }

    #[test]
    fn terminating_expansion_of_one_ninth() {
        let e = expansion_base_m(&rat(1, 9), 3).unwrap();
        assert_eq!(e.preperiod, [0, 1]);
        assert_eq!(e.period, [0]);
    }

    #[test]
    fn preperiod_empty_iff_denominator_coprime() {
        for (num, den) in [(1i64, 4), (1, 7), (1, 121), (5, 11)] {
            let e = expansion_base_m(&rat(num, den), 3).unwrap();
            assert!(e.preperiod.is_empty(), "1/{den} should be purely periodic");
        }
        for (num, den) in [(1i64, 6), (1, 9), (1, 12), (1, 36)] {
            let e = expansion_base_m(&rat(num, den), 3).unwrap();
            assert!(!e.preperiod.is_empty(), "{num}/{den} needs a preperiod");
        }
    }

    #[test]
    fn reconstruction_identity_for_pure_periods() {
        // (x_q + x_{q-1} m + ... + x_1 m^(q-1)) * den = m^q - 1 for 1/den
        for den in [4u64, 7, 11, 13, 121] {
            let e = expansion_base_m(&rat(1, den as i64), 3).unwrap();
            let mut weighted = BigUint::zero();
            for &d in &e.period {
                weighted = weighted * 3u32 + BigUint::from(d);
            }
            let q = e.period.len() as u32;
            let lhs = weighted * BigUint::from(den);
            let rhs = BigUint::from(3u32).pow(q) - BigUint::one();
            assert_eq!(lhs, rhs, "den={den}");
        }
    }

    #[test]
    fn middle_third_membership() {
        let c = DigitSystem::middle_third();
        assert!(member_k_md(&c, &rat(1, 4)));
        assert!(member_k_md(&c, &rat(1, 3)));
        assert!(member_k_md(&c, &rat(2, 3)));
        assert!(member_k_md(&c, &rat(1, 9)));
        assert!(member_k_md(&c, &rat_int(0)));
        assert!(member_k_md(&c, &rat_int(1)));
        assert!(!member_k_md(&c, &rat(1, 2)));
        assert!(!member_k_md(&c, &rat(1, 5)));
        assert!(!member_k_md(&c, &rat(5, 9)));
    }

    #[test]
    fn zero_one_digit_system() {
        let k = DigitSystem::new(3, [0, 1]).unwrap();
        // 1/2 = (1)^inf in base 3
        assert!(member_k_md(&k, &rat(1, 2)));
        assert!(member_k_md(&k, &rat(1, 9)));
        // 2/3 has expansions "2 0^inf" and "1 2^inf", both leave {0,1}
        assert!(!member_k_md(&k, &rat(2, 3)));
        assert!(!member_k_md(&k, &rat_int(1)));
    }

    #[test]
    fn dual_expansion_forms_at_m_adic_points() {
        let c = DigitSystem::middle_third();
        // 1/9 terminates as "01" but is in C via 0 0 2^inf
        assert!(member_k_md(&c, &rat(1, 9)));
        // 1/3 terminates as "1": in C via 0 2^inf
        assert!(member_k_md(&c, &rat(1, 3)));
        let k01 = DigitSystem::new(3, [0, 1]).unwrap();
        // 1/3 is in K_{3,{0,1}} via the terminating form "1 0^inf"
        assert!(member_k_md(&k01, &rat(1, 3)));
        // but 2/9+... a point needing digit 2 in both forms is out
        assert!(!member_k_md(&k01, &rat(2, 9)));
    }

    #[test]
    fn scaling_closure_when_zero_digit_present() {
        let c = DigitSystem::middle_third();
        for x in [rat(1, 4), rat(1, 9), rat(2, 3), rat(1, 121)] {
            assert!(member_k_md(&c, &x));
            assert!(member_k_md(&c, &(x / rat_int(3))));
        }
    }

    #[test]
    fn rejects_out_of_range_values() {
        let c = DigitSystem::middle_third();
        assert!(!member_k_md(&c, &rat(3, 2)));
        assert!(!member_k_md(&c, &rat(-1, 4)));
        assert!(expansion_base_m(&rat_int(1), 3).is_err());
        assert!(expansion_base_m(&rat(-1, 2), 3).is_err());
    }

    #[test]
    fn digit_system_validation() {
        assert!(DigitSystem::new(2, [0, 1]).is_err());
        assert!(DigitSystem::new(3, [0]).is_err());
        assert!(DigitSystem::new(3, [0, 1, 2]).is_err());
        assert!(DigitSystem::new(3, [0, 3]).is_err());
        assert!(DigitSystem::new(7, [0, 2, 3, 4, 5]).is_ok());
    }

    #[test]
    fn expansion_serializes_to_digit_strings() {
        let e = expansion_base_m(&rat(1, 4), 3).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"pre":"","period":"02","base":3}"#);
    }
}
