//! Shared verdicts, tolerances and numeric sign classification used by the
//! identity checkers, graft verifiers and extremal reports.

use serde::Serialize;

/// Outcome of a single check. Conditional statements whose hypotheses fail on
/// an instance report `Vacuous` rather than a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl Verdict {
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Vacuous, Vacuous) => Vacuous,
            _ => Pass,
        }
    }

    pub fn combine_all<I: IntoIterator<Item = Verdict>>(items: I) -> Verdict {
        items
            .into_iter()
            .fold(Verdict::Vacuous, |acc, v| match (acc, v) {
                (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
                (Verdict::Vacuous, x) => x,
                (x, Verdict::Vacuous) => x,
                _ => Verdict::Pass,
            })
    }

    pub fn passed(self) -> bool {
        self != Verdict::Fail
    }
}

/// Numeric tolerances: `tol` scales eigensolve and identity residual bounds,
/// `gap` is the strict-inequality threshold.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    pub tol: f64,
    pub gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            gap: 1e-9,
        }
    }
}

/// Float-safe sign of a quantity the source statements compare strictly.
/// A value counts as positive/negative only beyond `gap * scale`; as zero
/// only well inside the band. The sliver in between is indeterminate and
/// fails loudly instead of silently rounding to a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Indeterminate,
}

pub fn classify_sign(value: f64, scale: f64, gap: f64) -> Sign {
    let band = gap * scale.abs().max(f64::MIN_POSITIVE);
    if value > band {
        Sign::Positive
    } else if value < -band {
        Sign::Negative
    } else if value.abs() <= band * 1e-3 {
        Sign::Zero
    } else {
        Sign::Indeterminate
    }
}

/// One named check with its worst residual.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub max_residual: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            max_residual: 0.0,
            verdict: Verdict::Pass,
            notes: Vec::new(),
        }
    }

    pub fn record_residual(&mut self, residual: f64, bound: f64, context: &str) {
        if residual > self.max_residual {
            self.max_residual = residual;
        }
        if residual > bound {
            self.verdict = Verdict::Fail;
            self.notes
                .push(format!("{context}: residual {residual:e} exceeds {bound:e}"));
        }
    }

    pub fn record_sign(&mut self, sign: Sign, expected: Sign, context: &str) {
        if sign != expected {
            self.verdict = Verdict::Fail;
            self.notes
                .push(format!("{context}: sign {sign:?}, expected {expected:?}"));
        }
    }

    pub fn mark_vacuous(&mut self, reason: &str) {
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Vacuous;
        }
        self.notes.push(format!("vacuous: {reason}"));
    }
}
