use std::fmt;

use crate::error::{Error, Result};

/// Claimed direction of an inequality `lhs ≤ rhs` / `lhs ≥ rhs`.
///
/// `Eq` is used only for degenerate parameters where the inequality collapses
/// into an identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Le => "<=",
            Direction::Ge => ">=",
            Direction::Eq => "==",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Equality,
    Violation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Equality => "equality",
            Status::Violation => "violation",
        }
    }

    pub fn is_violation(self) -> bool {
        self == Status::Violation
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tolerances applied to the scale-normalized gap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    pub tol_rel: f64,
    pub tol_eq: f64,
    pub abs_floor: f64,
}

impl TolerancePolicy {
    pub const DEFAULT_TOL_REL: f64 = 1e-9;
    pub const DEFAULT_TOL_EQ: f64 = 1e-8;
    pub const DEFAULT_ABS_FLOOR: f64 = 1e-12;

    pub fn new(tol_rel: f64, tol_eq: f64, abs_floor: f64) -> Result<Self> {
        if 0.0 < abs_floor && abs_floor <= tol_rel && tol_rel <= tol_eq && tol_eq < 1.0 {
            Ok(TolerancePolicy { tol_rel, tol_eq, abs_floor })
        } else {
            Err(Error::Usage(format!(
                "tolerances must satisfy 0 < abs_floor <= tol_rel <= tol_eq < 1 \
                 (got abs_floor {abs_floor}, tol_rel {tol_rel}, tol_eq {tol_eq})"
            )))
        }
    }

    /// Classifies a scale-normalized gap.
    pub fn classify(&self, rel_gap: f64, direction: Direction) -> Status {
        match direction {
            Direction::Eq if rel_gap.abs() <= self.tol_eq => Status::Equality,
            Direction::Eq => Status::Violation,
            _ if rel_gap < -self.tol_rel => Status::Violation,
            _ if rel_gap.abs() <= self.tol_eq => Status::Equality,
            _ => Status::Holds,
        }
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            tol_rel: Self::DEFAULT_TOL_REL,
            tol_eq: Self::DEFAULT_TOL_EQ,
            abs_floor: Self::DEFAULT_ABS_FLOOR,
        }
    }
}

/// Outcome of one inequality evaluation.
///
/// `gap` is the claimed-larger side minus the claimed-smaller side, so the
/// inequality holds when `gap ≥ 0` whatever the direction. `scale` is
/// `max(|lhs|, |rhs|, 1)` and `rel_gap = gap / scale`; classification uses
/// `rel_gap`, which stays finite even when a side overflows `f64`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Verdict {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub rel_gap: f64,
    pub scale: f64,
    pub direction: Direction,
    pub status: Status,
}

/// Above this log-magnitude both sides are compared through their logarithms.
const LOG_COMPARE_THRESHOLD: f64 = 700.0;

impl Verdict {
    pub fn from_values(lhs: f64, rhs: f64, direction: Direction, tol: &TolerancePolicy) -> Result<Self> {
        if lhs.is_nan() || rhs.is_nan() {
            return Err(Error::NonFinite(format!("lhs {lhs}, rhs {rhs}")));
        }
        let gap = match direction {
            Direction::Ge => lhs - rhs,
            Direction::Le | Direction::Eq => rhs - lhs,
        };
        if gap.is_nan() {
            return Err(Error::NonFinite(format!("both sides overflow (lhs {lhs}, rhs {rhs})")));
        }
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        let rel_gap = if gap.is_infinite() { gap.signum() } else { gap / scale };
        Ok(Verdict { lhs, rhs, gap, rel_gap, scale, direction, status: tol.classify(rel_gap, direction) })
    }

    /// Builds a verdict for two nonnegative sides given as natural logarithms.
    pub fn from_logs(ln_lhs: f64, ln_rhs: f64, direction: Direction, tol: &TolerancePolicy) -> Result<Self> {
        if ln_lhs.is_nan() || ln_rhs.is_nan() || ln_lhs == f64::INFINITY || ln_rhs == f64::INFINITY {
            return Err(Error::NonFinite(format!("ln lhs {ln_lhs}, ln rhs {ln_rhs}")));
        }
        let top = ln_lhs.max(ln_rhs);
        if top <= LOG_COMPARE_THRESHOLD {
            return Self::from_values(ln_lhs.exp(), ln_rhs.exp(), direction, tol);
        }
        let (larger, smaller) = match direction {
            Direction::Ge => (ln_lhs, ln_rhs),
            Direction::Le | Direction::Eq => (ln_rhs, ln_lhs),
        };
        // (e^larger - e^smaller) / e^top
        let rel_gap = if larger >= smaller { -(smaller - larger).exp_m1() } else { (larger - smaller).exp_m1() };
        let scale = top.exp();
        Ok(Verdict {
            lhs: ln_lhs.exp(),
            rhs: ln_rhs.exp(),
            // 0 · ∞ would be NaN when both sides overflow to the same value
            gap: if rel_gap == 0.0 { 0.0 } else { rel_gap * scale },
            rel_gap,
            scale,
            direction,
            status: tol.classify(rel_gap, direction),
        })
    }

    /// Re-classifies under another tolerance policy.
    pub fn with_tolerance(mut self, tol: &TolerancePolicy) -> Self {
        self.status = tol.classify(self.rel_gap, self.direction);
        self
    }

    pub fn is_violation(&self) -> bool {
        self.status.is_violation()
    }
}
