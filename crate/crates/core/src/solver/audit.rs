//! Numerical audit of a partition against a battery of deviations.
//!
//! Two families of checks are run:
//!
//! - Overlord unimodality: the utility of each non-polar state's overlord,
//!   as a function of its distal border, must be single peaked on a grid
//!   with the peak at the drawn border.
//! - Locale minimality: sampled locales must not reach a lower remoteness
//!   by ruling an optimally sized state of their own, or by joining the
//!   adjacent proximal state when that state's overlord would gain from
//!   taking them in.

use alloc::vec::Vec;

use super::{optimal_gap, Partition};
use crate::math::{exp, sq};
use crate::model::{central_foc_value, foc_value, log_remoteness, ModelParams, StateRecord};
use crate::{Error, Result};

/// Interior locales sampled per state, besides both borders.
const LOCALES_PER_STATE: usize = 64;
/// Simpson panels used when integrating the central marginal between grid points.
const CENTRAL_PANELS: usize = 8;
/// Relative slack for remoteness comparisons.
const REMOTENESS_SLACK: f64 = 1e-12;
/// Utility gains at or below this are treated as no gain.
const GAIN_SLACK: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct OverlordCheck {
    pub index: i32,
    /// Drawn distal border, measured from the center.
    pub border: f64,
    /// Grid point with the highest utility.
    pub argmax: f64,
    pub unimodal: bool,
    pub ok: bool,
}

/// Alternative a locale might prefer to its assigned state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Deviation {
    /// Its own lord draws an optimally sized state outward from it.
    OwnState,
    /// It joins the adjacent proximal state, whose overlord gains.
    JoinProximal { state: i32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocaleCheck {
    pub state: i32,
    pub t: f64,
    pub assigned_remoteness: f64,
    /// Lowest remoteness among the admissible alternatives.
    pub best_alternative: f64,
    pub deviation: Deviation,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumAudit {
    /// Largest FOC residual over non-polar states, with the partition's `h_eff`.
    pub max_foc_residual: f64,
    pub overlord: Vec<OverlordCheck>,
    pub locales: Vec<LocaleCheck>,
    pub grid_step: f64,
}

impl EquilibriumAudit {
    pub const FOC_TOLERANCE: f64 = 1e-9;

    pub fn overlord_unimodality_ok(&self) -> bool {
        self.overlord.iter().all(|c| c.ok)
    }

    pub fn locale_remoteness_minimal_ok(&self) -> bool {
        self.locales.iter().all(|c| c.ok)
    }

    pub fn passed(&self) -> bool {
        self.max_foc_residual < Self::FOC_TOLERANCE
            && self.overlord_unimodality_ok()
            && self.locale_remoteness_minimal_ok()
    }

    /// States implicated by any failed check, sorted and deduplicated.
    pub fn implicated_states(&self) -> Vec<i32> {
        let mut out: Vec<i32> = self
            .overlord
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.index)
            .chain(self.locales.iter().filter(|c| !c.ok).flat_map(|c| {
                let other = match c.deviation {
                    Deviation::JoinProximal { state } => state,
                    Deviation::OwnState => c.state,
                };
                [c.state, other]
            }))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Overlord objective of state `index` as a function of its distal border.
struct Overlord<'a> {
    params: &'a ModelParams,
    h_eff: f64,
    proximal: f64,
    central: bool,
}

impl Overlord<'_> {
    fn new<'a>(partition: &'a Partition, s: &StateRecord) -> Overlord<'a> {
        let (proximal, _) = s.oriented();
        Overlord {
            params: partition.params(),
            h_eff: partition.h_eff(),
            proximal,
            central: s.is_central(),
        }
    }

    /// Utility of a non-central overlord whose state ends at `b`.
    fn literal(&self, b: f64) -> f64 {
        let g = self.params.gamma;
        let lr = log_remoteness(self.proximal, b, self.params.tau);
        exp((g - 1.0) * lr) / (1.0 - g) - self.h_eff * (b - self.proximal)
    }

    /// Integral of the central marginal over sizes `[2 a, 2 b]`.
    fn central_gain(&self, a: f64, b: f64) -> f64 {
        let m = |s: f64| central_foc_value(s, self.h_eff, self.params);
        let (lo, hi) = (2.0 * a, 2.0 * b);
        let w = (hi - lo) / CENTRAL_PANELS as f64;
        let mut acc = 0.0;
        for k in 0..CENTRAL_PANELS {
            let x0 = lo + w * k as f64;
            acc += w / 6.0 * (m(x0) + 4.0 * m(x0 + 0.5 * w) + m(x0 + w));
        }
        acc
    }

    /// Utility values along `grid`, up to a common constant.
    fn profile(&self, grid: &[f64]) -> Vec<f64> {
        if !self.central {
            return grid.iter().map(|&b| self.literal(b)).collect();
        }
        let mut out = Vec::with_capacity(grid.len());
        let mut acc = 0.0;
        let mut prev = 0.0;
        for &b in grid {
            acc += self.central_gain(prev, b);
            out.push(acc);
            prev = b;
        }
        out
    }

    /// Gain from moving the distal border from `from` to `to`.
    fn gain(&self, from: f64, to: f64) -> f64 {
        if self.central {
            self.central_gain(from, to)
        } else {
            self.literal(to) - self.literal(from)
        }
    }
}

fn overlord_check(partition: &Partition, s: &StateRecord, step: f64) -> OverlordCheck {
    let (proximal, distal) = s.oriented();
    let start = if s.is_central() { 0.0 } else { proximal };
    let upper = (distal + 10.0 * step).min(1.0);
    let mut grid = Vec::new();
    let mut k = 1usize;
    loop {
        let b = start + step * k as f64;
        if b >= upper {
            break;
        }
        grid.push(b);
        k += 1;
    }
    grid.push(upper);
    grid.push(distal);
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let values = Overlord::new(partition, s).profile(&grid);
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    let mut falling = false;
    let mut unimodal = true;
    for w in values.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if falling && w[1] > w[0] {
            unimodal = false;
        }
    }
    let argmax = grid[best];
    let ok = unimodal && (argmax - distal).abs() <= step * (1.0 + 1e-9);
    OverlordCheck {
        index: s.index,
        border: distal,
        argmax,
        unimodal,
        ok,
    }
}

/// Remoteness of the state an overlord at `t >= 0` would draw for itself.
fn own_state_log_remoteness(t: f64, params: &ModelParams, h_eff: f64) -> Result<f64> {
    let distal = match optimal_gap(t, params, h_eff)? {
        Some(x) => 1.0 - x,
        None => t,
    };
    Ok(log_remoteness(t, distal.max(t), params.tau))
}

fn locale_check(partition: &Partition, s: &StateRecord, t: f64, flip: bool) -> Result<LocaleCheck> {
    let params = partition.params();
    let h_eff = partition.h_eff();
    let tau = params.tau;
    let own_lr = log_remoteness(s.left, s.right, tau);
    // oriented coordinate of the locale
    let u = if flip { -t } else { t };

    // the central overlord draws symmetric borders, so a central locale's
    // own-state alternative is the central state itself
    let mut best = if s.is_central() {
        own_lr
    } else {
        own_state_log_remoteness(u, params, h_eff)?
    };
    let mut deviation = Deviation::OwnState;

    if !s.is_central() {
        let step_in = if s.index > 0 { -1 } else { 1 };
        let inner_index = s.index + step_in;
        let inner = partition.state(inner_index).ok_or(Error::UnknownState(inner_index))?;
        let lord = Overlord::new(partition, inner);
        let (inner_proximal, inner_distal) = inner.oriented();
        if lord.gain(inner_distal, u) > GAIN_SLACK {
            let lr = if inner.is_central() {
                tau * sq(1.0 - u)
            } else {
                log_remoteness(inner_proximal, u, tau)
            };
            if lr < best {
                best = lr;
                deviation = Deviation::JoinProximal { state: inner_index };
            }
        }
    }

    let assigned = exp(own_lr);
    let alternative = exp(best);
    Ok(LocaleCheck {
        state: s.index,
        t,
        assigned_remoteness: assigned,
        best_alternative: alternative,
        deviation,
        ok: alternative >= assigned * (1.0 - REMOTENESS_SLACK),
    })
}

/// Audits `partition` with overlord grids of spacing `grid_step`.
///
/// Failures are reported in the result. Only an invalid `grid_step` is an
/// error.
pub fn audit_equilibrium(partition: &Partition, grid_step: f64) -> Result<EquilibriumAudit> {
    if !(grid_step > 0.0 && grid_step < 1.0) {
        return Err(Error::Domain {
            name: "grid_step",
            value: grid_step,
            reason: "must lie in (0, 1)",
        });
    }
    let params = partition.params();
    let h_eff = partition.h_eff();
    let mut max_foc_residual = 0.0f64;
    let mut overlord = Vec::new();
    let mut locales = Vec::new();

    for s in partition.states() {
        if !s.is_polar {
            let r = if s.is_central() {
                central_foc_value(s.size, h_eff, params)
            } else {
                let (proximal, _) = s.oriented();
                foc_value(proximal, s.size, h_eff, params)
            };
            max_foc_residual = max_foc_residual.max(r.abs());
            overlord.push(overlord_check(partition, s, grid_step));
        }
        let flip = s.index < 0;
        for k in 0..LOCALES_PER_STATE + 2 {
            let t = if k == 0 {
                s.left
            } else if k == LOCALES_PER_STATE + 1 {
                s.right
            } else {
                s.left + s.size * (k as f64 - 0.5) / LOCALES_PER_STATE as f64
            };
            locales.push(locale_check(partition, s, t, flip)?);
        }
    }

    Ok(EquilibriumAudit {
        max_foc_residual,
        overlord,
        locales,
        grid_step,
    })
}
