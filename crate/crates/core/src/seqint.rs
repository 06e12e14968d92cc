//! Arithmetic of sequence intersections: Legendre symbols by two
//! independent routes, the last-period-digit congruence, the digit-set
//! dichotomy, its r-th-power extension, Dirichlet prime search, and
//! exploratory scans of the middle-third questions.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cantor::{expansion_base_m, member_k_md, DigitSystem};
use crate::exactnum::{is_prime, mod_pow, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(String),
    #[error("numerator is divisible by the modulus")]
    NotCoprime,
    #[error("base of the digit system must be prime")]
    BaseNotPrime,
    #[error("digit system must contain 0")]
    MissingZeroDigit,
    #[error("need gcd(n, m) = 1 and n >= 2")]
    BadCongruenceInput,
    #[error("power exponent must be at least 2")]
    BadExponent,
    #[error("bound {requested} exceeds the cap {cap}")]
    BoundExceeded { requested: u64, cap: u64 },
}

/// Cap for the brute-force scans.
pub const SCAN_CAP: u64 = 1_000_000;

/// Cap for the factorial scan (the factorials themselves are exact).
pub const FACTORIAL_SCAN_CAP: u64 = 500;

/// A Legendre symbol value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LegendreValue {
    Residue,
    NonResidue,
}

impl LegendreValue {
    pub fn to_i8(self) -> i8 {
        match self {
            LegendreValue::Residue => 1,
            LegendreValue::NonResidue => -1,
        }
    }
}

fn require_odd_prime(p: &BigUint) -> Result<(), SeqError> {
    if p > &BigUint::from(2u32) && is_prime(p) {
        Ok(())
    } else {
        use alloc::string::ToString;
        Err(SeqError::NotAnOddPrime(p.to_string()))
    }
}

/// Legendre symbol `(a/p)` by Euler's criterion:
/// `a^((p-1)/2) mod p`, mapped `1 -> +1`, `p-1 -> -1`.
pub fn legendre(a: &BigInt, p: &BigUint) -> Result<LegendreValue, SeqError> {
    require_odd_prime(p)?;
    let p_int = BigInt::from(p.clone());
    if a.mod_floor(&p_int).is_zero() {
        return Err(SeqError::NotCoprime);
    }
    let exponent = (p - BigUint::one()) >> 1;
    let value = mod_pow(a, &exponent, p);
    if value.is_one() {
        Ok(LegendreValue::Residue)
    } else {
        debug_assert_eq!(value, p - BigUint::one());
        Ok(LegendreValue::NonResidue)
    }
}

/// Legendre symbol `(a/p)` by the reciprocity route: factor `a` into
/// `-1`, powers of 2, and odd primes, then apply the two supplementary
/// laws and Gauss reciprocity recursively. Must agree with [`legendre`].
pub fn legendre_reciprocity(a: &BigInt, p: &BigUint) -> Result<LegendreValue, SeqError> {
    require_odd_prime(p)?;
    let p_int = BigInt::from(p.clone());
    let reduced = a.mod_floor(&p_int);
    if reduced.is_zero() {
        return Err(SeqError::NotCoprime);
    }
    let value = symbol_recursive(
        &reduced.to_biguint().expect("mod_floor is nonnegative"),
        p,
    );
    Ok(if value == 1 {
        LegendreValue::Residue
    } else {
        LegendreValue::NonResidue
    })
}

/// `(-1/p) = (-1)^((p-1)/2)`.
fn minus_one_symbol(p: &BigUint) -> i8 {
    if (p % BigUint::from(4u32)).to_u32() == Some(1) {
        1
    } else {
        -1
    }
}

/// `(2/p) = (-1)^((p^2-1)/8)`.
fn two_symbol(p: &BigUint) -> i8 {
    match (p % BigUint::from(8u32)).to_u32() {
        Some(1) | Some(7) => 1,
        _ => -1,
    }
}

/// Core recursion on `0 < a < p`, `p` an odd prime.
fn symbol_recursive(a: &BigUint, p: &BigUint) -> i8 {
    if a.is_one() {
        return 1;
    }
    let mut sign = 1i8;
    let mut odd = a.clone();
    while odd.is_even() {
        sign *= two_symbol(p);
        odd >>= 1;
    }
    if odd.is_one() {
        return sign;
    }
    // factor the odd part and use multiplicativity
    let mut rest = odd.clone();
    let mut factor = BigUint::from(3u32);
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    while &factor * &factor <= rest {
        let mut count = 0;
        while (&rest % &factor).is_zero() {
            rest /= &factor;
            count += 1;
        }
        if count > 0 {
            primes.push((factor.clone(), count));
        }
        factor += 2u32;
    }
    if !rest.is_one() {
        primes.push((rest, 1));
    }
    for (q, count) in primes {
        if count % 2 == 0 {
            continue;
        }
        // Gauss reciprocity: (q/p)(p/q) = (-1)^((p-1)(q-1)/4)
        let flip = if (&q % BigUint::from(4u32)).to_u32() == Some(3)
            && (p % BigUint::from(4u32)).to_u32() == Some(3)
        {
            -1
        } else {
            1
        };
        let p_mod_q = p % &q;
        let inner = if p_mod_q.is_zero() {
            // q divides p: impossible for p prime and q < p
            unreachable!("distinct primes")
        } else {
            symbol_recursive(&p_mod_q, &q)
        };
        sign *= flip * inner;
    }
    sign
}

/// Report of the last-period-digit congruence `x_q n^2 = -1 (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub n: u64,
    pub m: u32,
    pub last_digit: u32,
    pub period_len: usize,
    pub verified: bool,
}

/// Computes the purely periodic base-m expansion of `1/n^2`, extracts its
/// final period digit, and verifies the congruence `x_q n^2 = -1 (mod m)`.
pub fn last_period_digit_congruence(n: u64, m: u32) -> Result<CongruenceReport, SeqError> {
    if m < 2 || n < 2 {
        return Err(SeqError::BadCongruenceInput);
    }
    if BigUint::from(n).gcd(&BigUint::from(m)) != BigUint::one() {
        return Err(SeqError::BadCongruenceInput);
    }
    let n_squared = BigUint::from(n) * BigUint::from(n);
    let x = Rat::new(BigInt::one(), BigInt::from(n_squared.clone()));
    let expansion = expansion_base_m(&x, m).expect("1/n^2 lies in (0, 1)");
    debug_assert!(expansion.preperiod.is_empty(), "gcd(n, m) = 1 purely periodic");
    let last_digit = *expansion.period.last().expect("period is nonempty");
    let m_big = BigUint::from(m);
    let lhs = (BigUint::from(last_digit) * n_squared) % &m_big;
    let verified = lhs == &m_big - BigUint::one();
    Ok(CongruenceReport {
        n,
        m,
        last_digit,
        period_len: expansion.period.len(),
        verified,
    })
}

/// Outcome of the dichotomy test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum DichotomyOutcome {
    /// Some digit `a in D \ {0}` has `(-a/m) = +1`, so the theorem's
    /// hypothesis fails and nothing is concluded.
    HypothesisFails { digit: u32 },
    /// Hypothesis holds and `1 not in D`: the intersection with
    /// `{1/n^2}` is empty.
    EmptyIntersection,
    /// Hypothesis holds and `1 in D`: the intersection is exactly
    /// `{1/m^(2l) : l >= 1}`.
    ExactlyPowers { base: u32 },
}

/// The dichotomy verdict together with every Legendre evaluation that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub outcome: DichotomyOutcome,
    /// `(a, (-a/m))` for each nonzero digit, in digit order.
    pub residue_checks: Vec<(u32, i8)>,
}

/// Decides the `{1/n^2}` intersection for `K_{m,D}` with `m` an odd
/// prime, `0 in D`: empty or exactly the even powers of `1/m`, provided
/// every nonzero digit `a` has `(-a/m) = -1`.
pub fn dichotomy(sys: &DigitSystem) -> Result<DichotomyReport, SeqError> {
    let m = sys.base();
    let m_big = BigUint::from(m);
    if !is_prime(&m_big) {
        return Err(SeqError::BaseNotPrime);
    }
    if !sys.contains_digit(0) {
        return Err(SeqError::MissingZeroDigit);
    }
    let mut residue_checks = Vec::new();
    let mut failing_digit = None;
    for &a in sys.digits().iter().filter(|&&a| a != 0) {
        let value = legendre(&-BigInt::from(a), &m_big)?;
        residue_checks.push((a, value.to_i8()));
        if failing_digit.is_none() && value == LegendreValue::Residue {
            failing_digit = Some(a);
        }
    }
    let outcome = match failing_digit {
        Some(digit) => DichotomyOutcome::HypothesisFails { digit },
        None => {
            // re-derivation of the proof's first step: the hypothesis
            // already excludes m-1, since -(m-1) = 1 is always a residue
            debug_assert!(!sys.contains_digit(m - 1));
            if sys.contains_digit(1) {
                DichotomyOutcome::ExactlyPowers { base: m }
            } else {
                DichotomyOutcome::EmptyIntersection
            }
        }
    };
    Ok(DichotomyReport {
        outcome,
        residue_checks,
    })
}

/// One digit's r-th-power residue evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerResidueCheck {
    pub digit: u32,
    /// `-digit^(r-1) mod m`, the value whose residuosity is tested.
    pub tested_value: u64,
    pub is_rth_power_residue: bool,
}

/// Report of the r-th-power hypothesis test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerResidueReport {
    pub exponent: u32,
    pub holds: bool,
    pub checks: Vec<PowerResidueCheck>,
}

/// The r-th-power extension of the dichotomy hypothesis: for every
/// `a in D \ {0}`, `-a^(r-1)` must not be an r-th power residue mod `m`
/// (criterion: `x^((m-1)/gcd(r, m-1)) = 1`). When this holds and
/// `1 not in D`, the congruence `x_q n^r = -1 (mod m)` shows
/// `{1/n^r}` misses `K_{m,D}` entirely.
///
/// For `r = 2` this is exactly the quadratic hypothesis. For `r >= 3` it
/// extrapolates the same argument; the scan oracle validates it on every
/// run rather than trusting it as a theorem.
pub fn power_residue_hypothesis(
    sys: &DigitSystem,
    r: u32,
) -> Result<PowerResidueReport, SeqError> {
    if r < 2 {
        return Err(SeqError::BadExponent);
    }
    let m = sys.base();
    let m_big = BigUint::from(m);
    if !is_prime(&m_big) {
        return Err(SeqError::BaseNotPrime);
    }
    if !sys.contains_digit(0) {
        return Err(SeqError::MissingZeroDigit);
    }
    let group_order = &m_big - BigUint::one();
    let gcd = BigUint::from(r).gcd(&group_order);
    let criterion_exp = &group_order / &gcd;
    let mut checks = Vec::new();
    let mut holds = true;
    for &a in sys.digits().iter().filter(|&&a| a != 0) {
        let minus_a_pow = -BigInt::from(a).pow(r - 1);
        let tested = mod_pow(&minus_a_pow, &BigUint::one(), &m_big);
        if tested.is_zero() {
            // a^(r-1) = 0 mod m cannot happen for 0 < a < m prime
            unreachable!("digit coprime to prime base");
        }
        let is_residue = mod_pow(&BigInt::from(tested.clone()), &criterion_exp, &m_big).is_one();
        holds &= !is_residue;
        checks.push(PowerResidueCheck {
            digit: a,
            tested_value: tested.to_u64().expect("below the prime base"),
            is_rth_power_residue: is_residue,
        });
    }
    Ok(PowerResidueReport {
        exponent: r,
        holds,
        checks,
    })
}

/// Brute-force oracle: all `n <= n_max` with `1/n^r` in `K_{m,D}`,
/// decided by exact expansion membership.
pub fn enumerate_intersection_inverse_powers(
    sys: &DigitSystem,
    r: u32,
    n_max: u64,
) -> Result<Vec<u64>, SeqError> {
    if r < 1 {
        return Err(SeqError::BadExponent);
    }
    if n_max > SCAN_CAP {
        return Err(SeqError::BoundExceeded {
            requested: n_max,
            cap: SCAN_CAP,
        });
    }
    let mut members = Vec::new();
    for n in 1..=n_max {
        let denom = BigInt::from(n).pow(r);
        let x = Rat::new(BigInt::one(), denom);
        if member_k_md(sys, &x) {
            members.push(n);
        }
    }
    Ok(members)
}

/// One certified prime from the Dirichlet search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletPrime {
    pub m: u64,
    /// `(i, (-i/m))` for `1 <= i <= k`; all values are -1.
    pub residue_checks: Vec<(u32, i8)>,
}

/// Searches primes `m = 4 n p_1 ... p_t - 1` (with `p_i` the primes up to
/// `k`) for which `(-i/m) = -1` for all `1 <= i <= k`, so the dichotomy
/// applies to `D = {0, 1, ..., k}`.
///
/// Dirichlet's theorem guarantees infinitely many such primes but gives
/// no effective bound, so the search stops after `n_limit` multipliers
/// and returns what it has.
pub fn dirichlet_search(k: u32, count: usize, n_limit: u64) -> Result<Vec<DirichletPrime>, SeqError> {
    if k < 2 {
        return Err(SeqError::BadExponent);
    }
    let mut primorial: u64 = 1;
    for p in 2..=k as u64 {
        if is_prime(&BigUint::from(p)) {
            primorial *= p;
        }
    }
    let mut found = Vec::new();
    for n in 1..=n_limit {
        if found.len() >= count {
            break;
        }
        let Some(m) = (4 * n).checked_mul(primorial).and_then(|v| v.checked_sub(1)) else {
            break;
        };
        let m_big = BigUint::from(m);
        if !is_prime(&m_big) {
            continue;
        }
        let mut residue_checks = Vec::with_capacity(k as usize);
        let mut all_nonresidues = true;
        for i in 1..=k {
            let value = legendre(&-BigInt::from(i), &m_big)?;
            residue_checks.push((i, value.to_i8()));
            all_nonresidues &= value == LegendreValue::NonResidue;
        }
        if !all_nonresidues {
            continue;
        }
        // cross-check: the dichotomy must classify D = {0..k} as powers
        let sys = DigitSystem::new(m as u32, 0..=k).expect("valid digit system");
        let report = dichotomy(&sys)?;
        debug_assert_eq!(
            report.outcome,
            DichotomyOutcome::ExactlyPowers { base: m as u32 }
        );
        found.push(DirichletPrime { m, residue_checks });
    }
    Ok(found)
}

/// Which middle-third scans to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanVariant {
    /// `1/n^2` against `C`.
    InverseSquare,
    /// `2/n^2` against `C`, cross-checked against `K_{3,{0,1}}`.
    TwoInverseSquare,
    /// `1/n!` against `C`.
    InverseFactorial,
}

/// Result of one exploratory scan. These report members only; the open
/// questions stay open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub variant: ScanVariant,
    pub n_max: u64,
    pub members: Vec<u64>,
    /// For the `2/n^2` variant: does the member set match the theorem's
    /// prediction through `K_{3,{0,1}}` (exactly the powers of 3)?
    pub cross_check_passed: Option<bool>,
}

/// Exact membership scans of the middle-third questions.
pub fn middle_third_sequence_scan(
    n_max: u64,
    variants: &[ScanVariant],
) -> Result<Vec<ScanReport>, SeqError> {
    let c = DigitSystem::middle_third();
    let mut reports = Vec::with_capacity(variants.len());
    for &variant in variants {
        let report = match variant {
            ScanVariant::InverseSquare => {
                if n_max > SCAN_CAP {
                    return Err(SeqError::BoundExceeded {
                        requested: n_max,
                        cap: SCAN_CAP,
                    });
                }
                let members = enumerate_intersection_inverse_powers(&c, 2, n_max)?;
                ScanReport {
                    variant,
                    n_max,
                    members,
                    cross_check_passed: None,
                }
            }
            ScanVariant::TwoInverseSquare => {
                if n_max > SCAN_CAP {
                    return Err(SeqError::BoundExceeded {
                        requested: n_max,
                        cap: SCAN_CAP,
                    });
                }
                let mut members = Vec::new();
                for n in 1..=n_max {
                    let x = Rat::new(BigInt::from(2), BigInt::from(n) * BigInt::from(n));
                    if x <= Rat::one() && member_k_md(&c, &x) {
                        members.push(n);
                    }
                }
                // 2/n^2 in C iff 1/n^2 in K_{3,{0,1}} (doubling digits),
                // and the dichotomy pins the latter to powers of 3
                let k01 = DigitSystem::new(3, [0, 1]).expect("valid digit system");
                let via_theorem = enumerate_intersection_inverse_powers(&k01, 2, n_max)?;
                let powers_of_three: Vec<u64> = {
                    let mut v = Vec::new();
                    let mut p: u64 = 3;
                    while p <= n_max {
                        v.push(p);
                        p *= 3;
                    }
                    v
                };
                let cross = members == via_theorem && members == powers_of_three;
                ScanReport {
                    variant,
                    n_max,
                    members,
                    cross_check_passed: Some(cross),
                }
            }
            ScanVariant::InverseFactorial => {
                if n_max > FACTORIAL_SCAN_CAP {
                    return Err(SeqError::BoundExceeded {
                        requested: n_max,
                        cap: FACTORIAL_SCAN_CAP,
                    });
                }
                let mut members = Vec::new();
                let mut factorial = BigInt::one();
                for n in 1..=n_max {
                    factorial *= BigInt::from(n);
                    let x = Rat::new(BigInt::one(), factorial.clone());
                    if member_k_md(&c, &x) {
                        members.push(n);
                    }
                }
                ScanReport {
                    variant,
                    n_max,
                    members,
                    cross_check_passed: None,
                }
            }
        };
        reports.push(report);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn biguint(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn legendre_i64(a: i64, p: u64) -> i8 {
        legendre(&BigInt::from(a), &biguint(p)).unwrap().to_i8()
    }

    #[test]
    fn euler_criterion_spot_checks() {
        assert_eq!(legendre_i64(1, 7), 1);
        assert_eq!(legendre_i64(2, 7), 1);
        assert_eq!(legendre_i64(-1, 23), -1);
        assert_eq!(legendre_i64(3, 23), 1);
        assert_eq!(legendre_i64(-3, 23), -1);
        assert_eq!(legendre_i64(2, 17), 1);
    }

    #[test]
    fn legendre_rejects_bad_inputs() {
        assert!(matches!(
            legendre(&BigInt::from(3), &biguint(15)),
            Err(SeqError::NotAnOddPrime(_))
        ));
        assert!(matches!(
            legendre(&BigInt::from(2), &biguint(2)),
            Err(SeqError::NotAnOddPrime(_))
        ));
        assert!(matches!(
            legendre(&BigInt::from(46), &biguint(23)),
            Err(SeqError::NotCoprime)
        ));
    }

    #[test]
    fn reciprocity_agrees_with_euler_for_small_primes() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for a in 1..p {
                let euler = legendre(&BigInt::from(a), &biguint(p)).unwrap();
                let recip = legendre_reciprocity(&BigInt::from(a), &biguint(p)).unwrap();
                assert_eq!(euler, recip, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn euler_matches_square_enumeration() {
        // independent oracle: enumerate squares mod p directly
        for p in [3u64, 7, 13, 23, 29] {
            let mut squares = alloc::collections::BTreeSet::new();
            for x in 1..p {
                squares.insert((x * x) % p);
            }
            for a in 1..p {
                let expected = squares.contains(&a);
                let got = legendre_i64(a as i64, p) == 1;
                assert_eq!(got, expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn congruence_examples() {
        let report = last_period_digit_congruence(2, 3).unwrap();
        assert_eq!(report.last_digit, 2);
        assert!(report.verified);

        let report = last_period_digit_congruence(11, 3).unwrap();
        assert_eq!(report.last_digit, 2);
        assert_eq!(report.period_len, 5);
        assert!(report.verified);

        let report = last_period_digit_congruence(5, 7).unwrap();
        assert_eq!(report.last_digit, 5);
        assert!(report.verified);
    }

    #[test]
    fn congruence_rejects_shared_factors() {
        assert!(last_period_digit_congruence(6, 3).is_err());
        assert!(last_period_digit_congruence(1, 3).is_err());
    }

    #[test]
    fn dichotomy_examples() {
        let k01 = DigitSystem::new(3, [0, 1]).unwrap();
        let report = dichotomy(&k01).unwrap();
        assert_eq!(report.outcome, DichotomyOutcome::ExactlyPowers { base: 3 });
        assert_eq!(report.residue_checks, alloc::vec![(1, -1)]);

        let c = DigitSystem::middle_third();
        let report = dichotomy(&c).unwrap();
        assert_eq!(report.outcome, DichotomyOutcome::HypothesisFails { digit: 2 });

        let k7 = DigitSystem::new(7, [0, 3, 5, 6]).unwrap();
        let report = dichotomy(&k7).unwrap();
        assert_eq!(report.outcome, DichotomyOutcome::HypothesisFails { digit: 3 });
    }

    #[test]
    fn dichotomy_requires_prime_base_and_zero() {
        let composite = DigitSystem::new(9, [0, 1]).unwrap();
        assert!(matches!(dichotomy(&composite), Err(SeqError::BaseNotPrime)));
        let no_zero = DigitSystem::new(5, [1, 2]).unwrap();
        assert!(matches!(
            dichotomy(&no_zero),
            Err(SeqError::MissingZeroDigit)
        ));
    }

    #[test]
    fn power_residue_examples() {
        // cubic residues mod 7 are {1, 6}; none of the tested values land there
        let sys = DigitSystem::new(7, [0, 2, 3, 4, 5]).unwrap();
        let report = power_residue_hypothesis(&sys, 3).unwrap();
        assert!(report.holds);

        // r = 2 reduces to the dichotomy hypothesis
        let k01 = DigitSystem::new(3, [0, 1]).unwrap();
        assert!(power_residue_hypothesis(&k01, 2).unwrap().holds);

        // -1 = 6 is a cubic residue mod 7
        let k701 = DigitSystem::new(7, [0, 1]).unwrap();
        let report = power_residue_hypothesis(&k701, 3).unwrap();
        assert!(!report.holds);
        assert_eq!(report.checks[0].tested_value, 6);
    }

    #[test]
    fn oracle_scan_middle_third_families() {
        let c = DigitSystem::middle_third();
        let members = enumerate_intersection_inverse_powers(&c, 2, 200).unwrap();
        // families 3^l, 2*3^l, 11*3^l from 1/9^k, 1/(4*9^k), 1/(121*9^k),
        // plus n = 1 (the point 1 is in C)
        assert_eq!(members, alloc::vec![1, 2, 3, 6, 9, 11, 18, 27, 33, 54, 81, 99, 162]);
    }

    #[test]
    fn oracle_scan_zero_one_powers() {
        let k01 = DigitSystem::new(3, [0, 1]).unwrap();
        let members = enumerate_intersection_inverse_powers(&k01, 2, 1000).unwrap();
        assert_eq!(members, alloc::vec![3, 9, 27, 81, 243, 729]);
    }

    #[test]
    fn oracle_scan_cubic_empty() {
        let sys = DigitSystem::new(7, [0, 2, 3, 4, 5]).unwrap();
        let members = enumerate_intersection_inverse_powers(&sys, 3, 500).unwrap();
        assert!(members.is_empty());
    }

    #[test]
    fn theorem_and_oracle_agree_on_small_systems() {
        for (m, digits) in [(3u32, alloc::vec![0u32, 1]), (5, alloc::vec![0, 2]), (7, alloc::vec![0, 1, 2])] {
            let sys = DigitSystem::new(m, digits).unwrap();
            let report = dichotomy(&sys).unwrap();
            let members = enumerate_intersection_inverse_powers(&sys, 2, 2000).unwrap();
            match report.outcome {
                DichotomyOutcome::EmptyIntersection => assert!(members.is_empty()),
                DichotomyOutcome::ExactlyPowers { base } => {
                    let mut expected = Vec::new();
                    let mut p = base as u64;
                    while p <= 2000 {
                        expected.push(p);
                        p *= base as u64;
                    }
                    assert_eq!(members, expected, "m={m}");
                }
                DichotomyOutcome::HypothesisFails { .. } => {}
            }
        }
    }

    #[test]
    fn dirichlet_search_examples() {
        let found = dirichlet_search(3, 3, 100).unwrap();
        let ms: Vec<u64> = found.iter().map(|f| f.m).collect();
        assert_eq!(ms, alloc::vec![23, 47, 71]);
        for f in &found {
            assert!(f.residue_checks.iter().all(|&(_, v)| v == -1));
        }

        let found = dirichlet_search(2, 2, 100).unwrap();
        let ms: Vec<u64> = found.iter().map(|f| f.m).collect();
        assert_eq!(ms, alloc::vec![7, 23]);

        let found = dirichlet_search(4, 1, 100).unwrap();
        let ms: Vec<u64> = found.iter().map(|f| f.m).collect();
        assert_eq!(ms, alloc::vec![23]);
    }

    #[test]
    fn factorial_scan_finds_only_one() {
        let reports =
            middle_third_sequence_scan(12, &[ScanVariant::InverseFactorial]).unwrap();
        assert_eq!(reports[0].members, alloc::vec![1]);
    }

    #[test]
    fn two_over_square_scan_cross_checks() {
        let reports =
            middle_third_sequence_scan(200, &[ScanVariant::TwoInverseSquare]).unwrap();
        assert_eq!(reports[0].members, alloc::vec![3, 9, 27, 81]);
        assert_eq!(reports[0].cross_check_passed, Some(true));
    }
}
