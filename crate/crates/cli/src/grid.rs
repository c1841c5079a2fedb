//! `lo:hi:step` sweep specifications.

use std::str::FromStr;

/// Largest number of points a grid may expand to.
pub const MAX_POINTS: usize = 1_000_000;

/// Inclusive grid `lo, lo + step, ...`; `hi` is included when it lies within
/// half a step of a grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn len(&self) -> usize {
        ((self.hi - self.lo) / self.step + 0.5).floor() as usize + 1
    }

    pub fn points(&self) -> Vec<f64> {
        // multiply rather than accumulate so points do not drift
        (0..self.len()).map(|k| self.lo + k as f64 * self.step).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(spec: &str) -> Result<Self, String> {
        let parts: Vec<&str> = spec.split(':').collect();
        let [lo, hi, step] = parts[..] else {
            return Err(format!("grid `{spec}` must have the form lo:hi:step"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("grid `{spec}`: `{t}`: {e}"));
        let g = Grid {
            lo: num(lo)?,
            hi: num(hi)?,
            step: num(step)?,
        };
        if !(g.lo.is_finite() && g.hi.is_finite() && g.step.is_finite()) {
            return Err(format!("grid `{spec}` must be finite"));
        }
        if !(g.step > 0.0) {
            return Err(format!("grid `{spec}`: step must be positive"));
        }
        if g.hi < g.lo {
            return Err(format!("grid `{spec}`: hi is below lo"));
        }
        if (g.hi - g.lo) / g.step >= MAX_POINTS as f64 {
            return Err(format!("grid `{spec}` exceeds {MAX_POINTS} points"));
        }
        Ok(g)
    }
}
