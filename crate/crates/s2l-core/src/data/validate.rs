//! Trajectory invariant checks. Violations are data, not errors: loaders
//! turn them into `DataError`, tools can report them verbatim.

use super::{Suite, Trajectory};
use crate::lang;
use std::fmt;

/// A single invariant violation, pointing at the offending frame when the
/// invariant is per-frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub frame: Option<usize>,
    pub invariant: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.frame {
            Some(i) => write!(f, "frame {}: {}", i, self.invariant),
            None => write!(f, "{}", self.invariant),
        }
    }
}

fn violation(frame: Option<usize>, invariant: impl Into<String>) -> Violation {
    Violation {
        frame,
        invariant: invariant.into(),
    }
}

/// Check every type invariant of a trajectory. Returns an empty list iff all
/// invariants hold.
pub fn validate_trajectory(t: &Trajectory) -> Vec<Violation> {
    let mut out = Vec::new();
    let stage_limit = stage_limit(t.suite);

    let (h0, w0, p0) = match t.frames.first() {
        Some(f) => (f.image.height, f.image.width, f.proprio.len()),
        None => return out,
    };

    for (i, f) in t.frames.iter().enumerate() {
        if f.image.height != h0 || f.image.width != w0 {
            out.push(violation(
                Some(i),
                format!(
                    "image dimensions {}x{} differ from first frame {}x{}",
                    f.image.height, f.image.width, h0, w0
                ),
            ));
        }
        if f.image.data.len() != f.image.height * f.image.width * 3 {
            out.push(violation(Some(i), "image buffer length mismatch"));
        }
        if f.proprio.len() != p0 {
            out.push(violation(
                Some(i),
                format!("proprio dim {} differs from first frame {}", f.proprio.len(), p0),
            ));
        }
        if let Some(a) = f.action {
            if !(a[3] >= -1.0 && a[3] <= 0.0) {
                out.push(violation(
                    Some(i),
                    format!("gripper action component {} outside [-1, 0]", a[3]),
                ));
            }
            if a.iter().any(|v| !v.is_finite()) {
                out.push(violation(Some(i), "non-finite action component"));
            }
        }
        if (f.stage as usize) >= stage_limit {
            out.push(violation(
                Some(i),
                format!(
                    "stage {} out of range for suite {} ({} templates)",
                    f.stage, t.suite, stage_limit
                ),
            ));
        }
    }
    out
}

/// Number of stage templates for a suite at full granularity.
pub fn stage_limit(suite: Suite) -> usize {
    lang::stage_count(suite)
}
