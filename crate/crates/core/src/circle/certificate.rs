//! Replayable certificates.
//!
//! A certificate never stores a bare conclusion: it stores the exact
//! comparisons (rational or polynomial-sign) that justify it, so any
//! consumer can re-execute them bit-for-bit.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::exactnum::{
    certify_sign_on_interval, poly_eval_sign, rat_serde, IntPoly, Rat, SignClaim,
};

/// Comparison relation for rational checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Rel {
    pub fn eval(self, lhs: &Rat, rhs: &Rat) -> bool {
        match self {
            Rel::Lt => lhs < rhs,
            Rel::Le => lhs <= rhs,
            Rel::Eq => lhs == rhs,
            Rel::Ge => lhs >= rhs,
            Rel::Gt => lhs > rhs,
        }
    }
}

/// One replayable exact check: a rational comparison, a polynomial sign at
/// a point, or a polynomial sign over a whole interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ExactCheck {
    RatCmp {
        label: String,
        #[serde(with = "rat_serde")]
        lhs: Rat,
        rel: Rel,
        #[serde(with = "rat_serde")]
        rhs: Rat,
    },
    PolySignAt {
        label: String,
        poly: IntPoly,
        #[serde(with = "rat_serde")]
        at: Rat,
        claim: SignClaim,
    },
    PolySignOn {
        label: String,
        poly: IntPoly,
        #[serde(with = "rat_serde")]
        lo: Rat,
        #[serde(with = "rat_serde")]
        hi: Rat,
        claim: SignClaim,
    },
}

impl ExactCheck {
    pub fn rat_cmp(label: &str, lhs: Rat, rel: Rel, rhs: Rat) -> Self {
        ExactCheck::RatCmp {
            label: label.into(),
            lhs,
            rel,
            rhs,
        }
    }

    pub fn poly_sign_at(label: &str, poly: IntPoly, at: Rat, claim: SignClaim) -> Self {
        ExactCheck::PolySignAt {
            label: label.into(),
            poly,
            at,
            claim,
        }
    }

    pub fn poly_sign_on(label: &str, poly: IntPoly, lo: Rat, hi: Rat, claim: SignClaim) -> Self {
        ExactCheck::PolySignOn {
            label: label.into(),
            poly,
            lo,
            hi,
            claim,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            ExactCheck::RatCmp { label, .. }
            | ExactCheck::PolySignAt { label, .. }
            | ExactCheck::PolySignOn { label, .. } => label,
        }
    }

    /// Re-executes the stored comparison.
    pub fn holds(&self) -> bool {
        match self {
            ExactCheck::RatCmp { lhs, rel, rhs, .. } => rel.eval(lhs, rhs),
            ExactCheck::PolySignAt {
                poly, at, claim, ..
            } => claim.admits(poly_eval_sign(poly, at)),
            ExactCheck::PolySignOn {
                poly,
                lo,
                hi,
                claim,
                ..
            } => certify_sign_on_interval(poly, lo, hi, *claim).is_certified(),
        }
    }
}

/// Tagged verdict about an intersection, with the exact checks that
/// justify it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Certificate {
    /// The intersection with the unit circle is `{(0,1), (1,0)}`, backed
    /// by the three sign facts that make the interval induction valid at
    /// every depth.
    Trivial {
        #[serde(with = "rat_serde")]
        lambda: Rat,
        checks: Vec<ExactCheck>,
    },
    /// A level-n pair of basic intervals whose product the circle must
    /// cross in a point of `K_lambda x K_lambda`.
    NontrivialWitness {
        #[serde(with = "rat_serde")]
        lambda: Rat,
        level: u32,
        #[serde(with = "rat_serde")]
        a: Rat,
        #[serde(with = "rat_serde")]
        b: Rat,
        checks: Vec<ExactCheck>,
    },
    /// A level-n pair supporting the binary branching construction, so the
    /// r-circle meets `K_lambda x K_lambda` in continuum many points.
    ContinuumWitness {
        #[serde(with = "rat_serde")]
        lambda: Rat,
        level: u32,
        #[serde(with = "rat_serde")]
        a: Rat,
        #[serde(with = "rat_serde")]
        b: Rat,
        #[serde(with = "rat_serde")]
        r: Rat,
        checks: Vec<ExactCheck>,
    },
    /// The requested conclusion is outside the certified parameter range
    /// (or a required check failed); `reason` names the first failure.
    NotApplicable {
        #[serde(with = "rat_serde")]
        lambda: Rat,
        reason: String,
    },
    /// Bounded search exhausted without a verdict.
    Unknown {
        #[serde(with = "rat_serde")]
        lambda: Rat,
        depth: u32,
    },
}

impl Certificate {
    pub fn lambda(&self) -> &Rat {
        match self {
            Certificate::Trivial { lambda, .. }
            | Certificate::NontrivialWitness { lambda, .. }
            | Certificate::ContinuumWitness { lambda, .. }
            | Certificate::NotApplicable { lambda, .. }
            | Certificate::Unknown { lambda, .. } => lambda,
        }
    }

    pub fn checks(&self) -> &[ExactCheck] {
        match self {
            Certificate::Trivial { checks, .. }
            | Certificate::NontrivialWitness { checks, .. }
            | Certificate::ContinuumWitness { checks, .. } => checks,
            Certificate::NotApplicable { .. } | Certificate::Unknown { .. } => &[],
        }
    }

    /// True for the affirmative verdicts (those carrying checks).
    pub fn is_positive(&self) -> bool {
        matches!(
            self,
            Certificate::Trivial { .. }
                | Certificate::NontrivialWitness { .. }
                | Certificate::ContinuumWitness { .. }
        )
    }

    /// Re-executes every stored exact comparison.
    pub fn replay(&self) -> bool {
        self.checks().iter().all(ExactCheck::holds)
    }
}
