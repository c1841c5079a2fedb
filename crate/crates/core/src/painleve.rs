//! Hastings-McLeod solution of Painleve II, `u'' = y u + 2 u^3` with
//! `u(y) ~ Ai(y)` as `y -> +inf`, and the Tracy-Widom log-CDF
//! `ln F(x) = -int_x^inf (y - x) u(y)^2 dy`.
//!
//! The solution is shot downward from an anchor `y0` where `u = Ai` to
//! double-double accuracy. Downward integration is linearly unstable for
//! `y < 0` with growth rate `sqrt(-2y)`; over `[0, -12]` perturbations are
//! amplified by about `e^39`. Both the seed and every step therefore have to
//! be accurate far beyond native precision: the integrator is a Taylor series
//! method carried in [`DDouble`], with the order chosen per step so the
//! truncated tail is below `1e-34` relative.
//!
//! Along with `u` the system carries `v(y) = int_y^inf u^2` and
//! `w(y) = int_y^inf (t - y) u(t)^2 dt`, so `v' = -u^2`, `w' = -v` and
//! `ln F(x) = -w(x)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extprec::DDouble;
use crate::specfun::{airy_ai_pair, airy_ai_pair_dd, chi_dd, gauss_legendre};

/// Default anchor. At `y0 = 14`, `Ai(y0)^2 ~ 1e-32`, so replacing the
/// Hastings-McLeod solution by `Ai` there is exact to double-double precision.
pub const DEFAULT_Y_START: f64 = 14.0;
pub const DEFAULT_Y_END: f64 = -12.0;
/// Default step, `2^-7`; grid points land on exact binary fractions.
pub const DEFAULT_STEP: f64 = 1.0 / 128.0;

const MAX_ORDER: usize = 90;
const DIVERGENCE: f64 = 1e6;

/// Tabulated Hastings-McLeod solution on a descending grid.
#[derive(Clone, Debug)]
pub struct HMSolution {
    pub y_start: f64,
    pub y_end: f64,
    pub step: f64,
    /// Highest Taylor order used by any step.
    pub max_order_used: usize,
    pub grid: Vec<f64>,
    pub u: Vec<DDouble>,
    pub up: Vec<DDouble>,
    pub v: Vec<DDouble>,
    pub w: Vec<DDouble>,
}

/// One point of the Tracy-Widom distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TWPoint {
    pub x: f64,
    pub log_cdf: f64,
    pub cdf: f64,
}

#[derive(Clone, Copy, Debug)]
struct State {
    u: DDouble,
    up: DDouble,
    v: DDouble,
    w: DDouble,
}

/// Advances `state` from `y` to `y + h` with an adaptive-order Taylor series.
fn taylor_step(y: f64, h: f64, s: State, coeffs: &mut Coefficients) -> (State, usize) {
    let Coefficients { u, sq, cube, v, w } = coeffs;
    for buf in [&mut *u, &mut *sq, &mut *cube, &mut *v, &mut *w] {
        buf.clear();
    }
    u.push(s.u);
    u.push(s.up);
    v.push(s.v);
    w.push(s.w);
    let yc = DDouble::from_f64(y);
    let habs = h.abs();

    let mut order = MAX_ORDER;
    let mut quiet = 0;
    let mut hk = 1.0f64;
    for k in 0..MAX_ORDER {
        let s2: DDouble = (0..=k).map(|i| u[i] * u[k - i]).sum();
        sq.push(s2);
        let c3: DDouble = (0..=k).map(|i| sq[i] * u[k - i]).sum();
        cube.push(c3);
        let prev = if k == 0 { DDouble::ZERO } else { u[k - 1] };
        let next = (yc * u[k] + prev + c3.mul_f64(2.0)).div_f64(((k + 1) * (k + 2)) as f64);
        u.push(next);
        v.push(-s2.div_f64((k + 1) as f64));
        let wk = -v[k].div_f64((k + 1) as f64);
        w.push(wk);

        // size of the newest contributions at |t| = |h|
        hk *= habs;
        let tail_u = u[k + 2].hi().abs() * hk * habs;
        let tail_v = v[k + 1].hi().abs() * hk;
        let tail_w = w[k + 1].hi().abs() * hk;
        let small = tail_u <= 1e-34 * s.u.hi().abs()
            && tail_v <= 1e-34 * s.v.hi().abs().max(1e-300)
            && tail_w <= 1e-34 * s.w.hi().abs().max(1e-300);
        if small {
            quiet += 1;
            if quiet >= 2 {
                order = k + 2;
                break;
            }
        } else {
            quiet = 0;
        }
    }

    let t = DDouble::from_f64(h);
    let horner = |c: &[DDouble]| c.iter().rev().fold(DDouble::ZERO, |acc, &ck| acc * t + ck);
    let dhorner = |c: &[DDouble]| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(DDouble::ZERO, |acc, (k, &ck)| acc * t + ck.mul_f64(k as f64))
    };
    (
        State {
            u: horner(u),
            up: dhorner(u),
            v: horner(v),
            w: horner(w),
        },
        order,
    )
}

#[derive(Default)]
struct Coefficients {
    u: Vec<DDouble>,
    sq: Vec<DDouble>,
    cube: Vec<DDouble>,
    v: Vec<DDouble>,
    w: Vec<DDouble>,
}

/// `int_{y0}^inf (t - y0) Ai(t)^2 dt` by a 40-node Gauss-Legendre rule on
/// the exponentially small tail `[y0, y0 + 12]`.
fn airy_tail_w(y0: f64) -> Result<f64> {
    let rule = gauss_legendre(40, y0, y0 + 12.0);
    let mut acc = 0.0;
    for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
        let (ai, _) = airy_ai_pair(t)?;
        acc += wt * (t - y0) * ai * ai;
    }
    Ok(acc)
}

/// Integrates the Hastings-McLeod solution from `y_start` down to `y_end`.
pub fn solve_hastings_mcleod(y_start: f64, y_end: f64, step: f64) -> Result<HMSolution> {
    if !(y_start >= 8.0 && y_start <= 30.0) {
        return Err(Error::Domain(format!("y_start = {y_start} must lie in [8, 30]")));
    }
    if !(y_end >= -14.0 && y_end < y_start) {
        return Err(Error::Domain(format!(
            "y_end = {y_end} must satisfy -14 <= y_end < y_start"
        )));
    }
    if !(step > 0.0 && step <= 1e-2) {
        return Err(Error::Domain(format!("step = {step} must lie in (0, 1e-2]")));
    }

    let (ai, aip) = airy_ai_pair_dd(DDouble::from_f64(y_start))?;
    let y0 = DDouble::from_f64(y_start);
    let mut state = State {
        u: ai,
        up: aip,
        v: aip.square() - y0 * ai.square(),
        w: DDouble::from_f64(airy_tail_w(y_start)?),
    };

    let span = y_start - y_end;
    let full = (span / step * (1.0 - 1e-12)).floor() as usize;
    let cap = full + 2;
    let mut grid = Vec::with_capacity(cap);
    let mut u = Vec::with_capacity(cap);
    let mut up = Vec::with_capacity(cap);
    let mut v = Vec::with_capacity(cap);
    let mut w = Vec::with_capacity(cap);
    let mut push = |y: f64, s: &State| {
        grid.push(y);
        u.push(s.u);
        up.push(s.up);
        v.push(s.v);
        w.push(s.w);
    };
    push(y_start, &state);

    let mut coeffs = Coefficients::default();
    let mut max_order_used = 0;
    let mut y = y_start;
    for k in 1..=full + 1 {
        let target = if k <= full { y_start - k as f64 * step } else { y_end };
        if target >= y {
            break;
        }
        let (next, order) = taylor_step(y, target - y, state, &mut coeffs);
        max_order_used = max_order_used.max(order);
        let mag = next.u.to_f64().abs();
        if !(mag <= DIVERGENCE) {
            return Err(Error::Unstable { y: target, magnitude: mag });
        }
        state = next;
        y = target;
        push(y, &state);
    }

    Ok(HMSolution {
        y_start,
        y_end,
        step,
        max_order_used,
        grid,
        u,
        up,
        v,
        w,
    })
}

impl Default for HMSolution {
    fn default() -> Self {
        solve_hastings_mcleod(DEFAULT_Y_START, DEFAULT_Y_END, DEFAULT_STEP)
            .expect("default Hastings-McLeod integration")
    }
}

impl HMSolution {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if !(x <= self.y_start && x >= self.y_end) {
            return Err(Error::Range(format!(
                "x = {x} outside tabulated range [{}, {}]",
                self.y_end, self.y_start
            )));
        }
        Ok(())
    }

    /// Local 5-point Lagrange interpolation of a tabulated series.
    fn interpolate(&self, values: &[DDouble], x: f64) -> Result<f64> {
        self.check_range(x)?;
        let n = self.grid.len();
        // grid is descending with uniform spacing except possibly the last cell
        let pos = ((self.y_start - x) / self.step).round() as usize;
        let pos = pos.min(n - 1);
        if self.grid[pos] == x {
            return Ok(values[pos].to_f64());
        }
        let lo = pos.saturating_sub(2).min(n.saturating_sub(5));
        let idx: Vec<usize> = (lo..(lo + 5).min(n)).collect();
        let mut acc = DDouble::ZERO;
        for &i in &idx {
            let mut basis = DDouble::ONE;
            for &j in &idx {
                if j != i {
                    basis = basis * DDouble::sum_f64(x, -self.grid[j])
                        / DDouble::sum_f64(self.grid[i], -self.grid[j]);
                }
            }
            acc += basis * values[i];
        }
        Ok(acc.to_f64())
    }

    pub fn u_at(&self, y: f64) -> Result<f64> {
        self.interpolate(&self.u, y)
    }

    pub fn w_at(&self, y: f64) -> Result<f64> {
        self.interpolate(&self.w, y)
    }
}

/// `ln F_TW(x) = -w(x)`.
pub fn tw_log_cdf(sol: &HMSolution, x: f64) -> Result<TWPoint> {
    let log_cdf = -sol.w_at(x)?;
    Ok(TWPoint {
        x,
        log_cdf,
        cdf: log_cdf.exp(),
    })
}

/// `ln det(I - K_s) = ln F_TW(-s)` from the tabulated solution.
pub fn log_det_from_painleve(sol: &HMSolution, s: f64) -> Result<f64> {
    Ok(tw_log_cdf(sol, -s)?.log_cdf)
}

/// `r(s) = -w(-s) + s^3/12 + ln(s)/8 - chi`, which decays like a power of
/// `1/s` when the large-`s` expansion holds with zero linear term and
/// constant `chi`.
pub fn asb_residual(sol: &HMSolution, s: f64) -> Result<f64> {
    asb_residual_with_chi(sol, s, chi_dd().to_f64())
}

pub fn asb_residual_with_chi(sol: &HMSolution, s: f64, chi: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("s = {s} must be positive")));
    }
    let w = sol.w_at(-s)?;
    Ok(-w + s * s * s / 12.0 + s.ln() / 8.0 - chi)
}
