//! Named inequality instances with slack policy and verdict.

use serde::{Deserialize, Serialize};

/// Tolerance policy for inequality verdicts: `lhs ≤ rhs·(1+rel) + abs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlackPolicy {
    pub rel: f64,
    pub abs: f64,
}

impl Default for SlackPolicy {
    /// All checked quantities are O(1)–O(10²) at desk scale; failures beyond
    /// this slack indicate logic errors, not rounding.
    fn default() -> Self {
        SlackPolicy { rel: 1e-9, abs: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Inequality holds within slack.
    Pass,
    /// Inequality violated in a regime where it is guaranteed: a regression.
    Fail,
    /// Inequality violated in a regime where no guarantee applies (e.g. the
    /// sub-unit exponent range, or a non-convex unperturbed spectrum); the
    /// violation itself is the demonstrated result.
    ViolationExpected,
}

impl Verdict {
    pub fn is_violation(self) -> bool {
        !matches!(self, Verdict::Pass)
    }
}

/// One named inequality instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IneqReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// lhs/rhs with 0/0 ↦ 0.
    pub ratio: f64,
    pub p: f64,
    pub slack: SlackPolicy,
    pub verdict: Verdict,
}

impl IneqReport {
    /// Judges `lhs ≤ rhs` under `slack`. `guaranteed` marks regimes where a
    /// violation is a genuine regression rather than an expected phenomenon.
    pub fn judge(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        p: f64,
        slack: SlackPolicy,
        guaranteed: bool,
    ) -> IneqReport {
        let holds = lhs <= rhs * (1.0 + slack.rel) + slack.abs;
        let verdict = if holds {
            Verdict::Pass
        } else if guaranteed {
            Verdict::Fail
        } else {
            Verdict::ViolationExpected
        };
        let ratio = if lhs == 0.0 && rhs == 0.0 { 0.0 } else { lhs / rhs };
        IneqReport { name: name.into(), lhs, rhs, ratio, p, slack, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
            Verdict::ViolationExpected => write!(f, "VIOLATION_EXPECTED"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_thresholds() {
        let slack = SlackPolicy { rel: 1e-9, abs: 1e-12 };
        assert_eq!(IneqReport::judge("x", 1.0, 1.0, 1.0, slack, true).verdict, Verdict::Pass);
        assert_eq!(
            IneqReport::judge("x", 1.0 + 1e-10, 1.0, 1.0, slack, true).verdict,
            Verdict::Pass
        );
        assert_eq!(IneqReport::judge("x", 1.1, 1.0, 1.0, slack, true).verdict, Verdict::Fail);
        assert_eq!(
            IneqReport::judge("x", 1.1, 1.0, 1.0, slack, false).verdict,
            Verdict::ViolationExpected
        );
    }

    #[test]
    fn zero_over_zero_ratio() {
        let r = IneqReport::judge("x", 0.0, 0.0, 2.0, SlackPolicy::default(), true);
        assert_eq!(r.ratio, 0.0);
        assert!(r.passed());
    }
}
