//! Univariate polynomials with rational coefficients.
//!
//! Coefficients are stored lowest degree first; the zero polynomial is the
//! empty coefficient list. Every inequality certified by this crate is
//! carried by an [`IntPoly`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use serde::de;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{format_rat, parse_rat};
use super::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<Rat>,
}

impl IntPoly {
    /// Builds a polynomial from coefficients, lowest degree first.
    /// Trailing zeros are trimmed so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat::rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            let b = other.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            coeffs.push(a + b);
        }
        IntPoly::new(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let ddeg = divisor.degree().unwrap();
        let dlead = divisor.leading_coefficient().unwrap().clone();
        let mut quot = IntPoly::zero();
        let mut rem = self.clone();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = rem.leading_coefficient().unwrap() / &dlead;
            let term = IntPoly::monomial(factor, rdeg - ddeg);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        (quot, rem)
    }

    /// Normalizes to a positive leading coefficient of 1 in absolute value,
    /// preserving signs everywhere (divides by `|lc|`).
    fn sign_preserving_monic(&self) -> IntPoly {
        match self.leading_coefficient() {
            None => IntPoly::zero(),
            Some(lc) => {
                let scale = lc.abs();
                if scale.is_one() {
                    self.clone()
                } else {
                    self.scale(&(Rat::one() / scale))
                }
            }
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.sign_preserving_monic();
        }
        match a.leading_coefficient() {
            None => IntPoly::zero(),
            Some(lc) => {
                let lc = lc.clone();
                a.scale(&(Rat::one() / lc))
            }
        }
    }

    /// The square-free part `P / gcd(P, P')`: same distinct roots, all simple.
    pub fn square_free_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Scales coefficients to a primitive integer vector (integer
    /// coefficients with gcd 1), preserving roots and signs up to the
    /// positive factor.
    pub fn primitive_integer_coeffs(&self) -> Vec<num_bigint::BigInt> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return Vec::new();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        ints.into_iter().map(|v| v / &g).collect()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})x^{}", c, k)?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&format_rat(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| parse_rat(s).map_err(de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat::{rat, rat_int};
    use super::*;

    #[test]
    fn eval_is_exact() {
        // lambda^2 - 4*lambda + 1 at 1/5 is 6/25
        let p = IntPoly::from_ints(&[1, -4, 1]);
        assert_eq!(p.eval(&rat(1, 5)), rat(6, 25));
        assert_eq!(p.eval(&rat_int(0)), rat_int(1));
    }

    #[test]
    fn degree_and_trimming() {
        assert_eq!(IntPoly::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(IntPoly::from_ints(&[5]).degree(), Some(0));
        assert_eq!(IntPoly::from_ints(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = IntPoly::from_ints(&[-1, 0, 0, 2, 5]);
        let d = IntPoly::from_ints(&[3, 1, 1]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), p);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x-3) share (x-1)
        let a = IntPoly::from_ints(&[2, -3, 1]);
        let b = IntPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), IntPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn square_free_part_drops_multiplicity() {
        // (x-1)^2 (x+2) -> (x-1)(x+2) up to normalization
        let sq = IntPoly::from_ints(&[1, -2, 1]);
        let p = sq.mul(&IntPoly::from_ints(&[2, 1]));
        let sf = p.square_free_part();
        let expect = IntPoly::from_ints(&[-2, 1, 1]);
        // equal up to a positive scalar
        let lc = sf.leading_coefficient().unwrap().clone();
        assert_eq!(sf.scale(&(Rat::one() / lc)), {
            let lc = expect.leading_coefficient().unwrap().clone();
            expect.scale(&(Rat::one() / lc))
        });
    }

    #[test]
    fn primitive_integer_coeffs_clears_denominators() {
        let p = IntPoly::new(vec![rat(1, 2), rat(-2, 3), rat_int(1)]);
        let ints = p.primitive_integer_coeffs();
        let expect: Vec<num_bigint::BigInt> = [3i64, -4, 6].iter().map(|&v| v.into()).collect();
        assert_eq!(ints, expect);
    }

    #[test]
    fn json_round_trip_lowest_degree_first() {
        let p = IntPoly::from_ints(&[1, -4, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["1/1","-4/1","1/1"]"#);
        let back: IntPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
