//! Equilibrium partitions by outward recursion from the world center.
//!
//! The central state is sized first. Each further state starts at the
//! previous distal border and grows until the marginal consumption gain of
//! size equals the governance cost. The recursion stops when no positive
//! size is profitable or when sizes fall below `eps_size` near the
//! accumulation point; the remainder up to the world end is a polar
//! semi-state. The left hemisphere is the mirror image.

mod audit;

pub use audit::{audit_equilibrium, Deviation, EquilibriumAudit, LocaleCheck, OverlordCheck};

use alloc::vec::Vec;

use crate::bisect;
use crate::math::{exp, powf, sq};
use crate::model::{log_remoteness, ModelParams, StateRecord};
use crate::{Error, Result};

/// Hard cap on interior states per hemisphere. Sizes shrink geometrically
/// towards the accumulation point, so real partitions stay far below it.
const MAX_INTERIOR: usize = 100_000;

/// An equilibrium (or imposed) partition of `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    params: ModelParams,
    states: Vec<StateRecord>,
    borders: Vec<f64>,
    truncated_at_accumulation: bool,
    h_eff: f64,
}

impl Partition {
    /// Builds the symmetric partition with right-hemisphere distal borders
    /// `b_0 < b_1 < ... < b_N < 1`. The last border opens the polar
    /// semi-state.
    pub fn from_right_borders(
        params: &ModelParams,
        h_eff: f64,
        borders: &[f64],
        truncated_at_accumulation: bool,
    ) -> Result<Self> {
        params.validate()?;
        check_h_eff(h_eff)?;
        let Some(&first) = borders.first() else {
            return Err(Error::InvalidPartition("at least the central border is required"));
        };
        if !(first > 0.0) {
            return Err(Error::InvalidPartition("central border must be positive"));
        }
        if borders.iter().any(|b| !b.is_finite() || *b >= 1.0) {
            return Err(Error::InvalidPartition("borders must be finite and below 1"));
        }
        if borders.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidPartition("borders must be strictly increasing"));
        }
        let n = borders.len() - 1;
        let tau = params.tau;
        let record = |index: i32, left: f64, right: f64, is_polar: bool| StateRecord {
            index,
            left,
            right,
            size: right - left,
            remoteness: exp(log_remoteness(left, right, tau)),
            is_polar,
        };
        let mut states = Vec::with_capacity(2 * n + 3);
        states.push(record(-(n as i32 + 1), -1.0, -borders[n], true));
        for k in (1..=n).rev() {
            states.push(record(-(k as i32), -borders[k], -borders[k - 1], false));
        }
        states.push(record(0, -borders[0], borders[0], false));
        for k in 1..=n {
            states.push(record(k as i32, borders[k - 1], borders[k], false));
        }
        states.push(record(n as i32 + 1, borders[n], 1.0, true));
        Ok(Partition {
            params: *params,
            states,
            borders: borders.to_vec(),
            truncated_at_accumulation,
            h_eff,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// States from the leftmost polar semi-state to the rightmost.
    pub fn states(&self) -> &[StateRecord] {
        &self.states
    }

    /// Non-polar states per hemisphere, excluding the central state.
    pub fn n_interior(&self) -> usize {
        self.borders.len() - 1
    }

    /// Index of the right polar semi-state.
    pub fn polar_index(&self) -> i32 {
        self.n_interior() as i32 + 1
    }

    pub fn truncated_at_accumulation(&self) -> bool {
        self.truncated_at_accumulation
    }

    /// Governance cost the borders were drawn with.
    pub fn h_eff(&self) -> f64 {
        self.h_eff
    }

    /// Right-hemisphere distal borders `b_0, ..., b_N`.
    pub fn right_borders(&self) -> &[f64] {
        &self.borders
    }

    pub fn central(&self) -> &StateRecord {
        &self.states[self.n_interior() + 1]
    }

    pub fn state(&self, index: i32) -> Option<&StateRecord> {
        let offset = index.checked_add(self.polar_index())?;
        usize::try_from(offset).ok().and_then(|i| self.states.get(i))
    }

    /// State containing `t`. States are half-open `[left, right)` except
    /// the rightmost, which also holds `t = 1`.
    pub fn locate(&self, t: f64) -> Option<&StateRecord> {
        if !(-1.0..=1.0).contains(&t) {
            return None;
        }
        let i = self.states.partition_point(|s| s.right <= t);
        Some(&self.states[i.min(self.states.len() - 1)])
    }

    /// Right-hemisphere states `0, 1, ..., N+1`, polar last.
    pub fn right_hemisphere(&self) -> &[StateRecord] {
        &self.states[self.n_interior() + 1..]
    }
}

/// Outcome of sizing the state that starts at a given border.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NextState {
    Interior(f64),
    Polar(PolarReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarReason {
    /// Even the first inch of size costs more than it returns.
    NoProfitableSize,
    /// The optimal size is below `eps_size`: the recursion has reached the
    /// accumulation point.
    Accumulation,
}

fn check_h_eff(h_eff: f64) -> Result<()> {
    if h_eff > 0.0 && h_eff.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "h_eff",
            value: h_eff,
            reason: "must be positive",
        })
    }
}

/// Size of the central state, the root of
/// `tau * exp(tau (gamma - 1) (1 - S/2)^2) (1 - S) = h_eff`.
pub fn solve_state0(params: &ModelParams, h_eff: f64) -> Result<f64> {
    params.validate()?;
    check_h_eff(h_eff)?;
    let bound = params.central_bound();
    if h_eff == bound {
        return Err(Error::DegenerateEquality { bound });
    }
    if h_eff > bound {
        return Err(Error::InfeasibleCentralState { h_eff, bound });
    }
    let ModelParams { tau, gamma, .. } = *params;
    let f = |s: f64| tau * exp(tau * (gamma - 1.0) * sq(1.0 - 0.5 * s)) * (1.0 - s) - h_eff;
    bisect::decreasing(f, 0.0, 1.0, params.eps_border)
}

/// Marginal benefit of a state starting at `b_prev` whose distal border
/// lies `x` from the world end.
#[inline]
pub(crate) fn marginal_at_gap(x: f64, b_prev: f64, params: &ModelParams) -> f64 {
    let ModelParams { tau, gamma, .. } = *params;
    tau * x * exp(0.5 * tau * (gamma - 1.0) * (sq(1.0 + b_prev) + sq(x)))
}

/// Distance `x*` from the world end to the optimal distal border of a state
/// starting at `b_prev`, or `None` when no positive size is profitable.
pub(crate) fn optimal_gap(b_prev: f64, params: &ModelParams, h_eff: f64) -> Result<Option<f64>> {
    let x_max = 1.0 - b_prev;
    if marginal_at_gap(x_max, b_prev, params) <= h_eff {
        return Ok(None);
    }
    let x = bisect::increasing(
        |x| marginal_at_gap(x, b_prev, params) - h_eff,
        0.0,
        x_max,
        params.eps_border,
    )?;
    Ok(Some(x))
}

fn check_b_prev(b_prev: f64) -> Result<()> {
    if (0.0..1.0).contains(&b_prev) {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "b_prev",
            value: b_prev,
            reason: "must lie in [0, 1)",
        })
    }
}

/// Optimal size of the state whose proximal border is `b_prev`.
pub fn solve_next_state(b_prev: f64, params: &ModelParams, h_eff: f64) -> Result<NextState> {
    params.validate()?;
    check_h_eff(h_eff)?;
    check_b_prev(b_prev)?;
    Ok(match optimal_gap(b_prev, params, h_eff)? {
        None => NextState::Polar(PolarReason::NoProfitableSize),
        Some(x) => {
            let size = (1.0 - b_prev) - x;
            if size < params.eps_size {
                NextState::Polar(PolarReason::Accumulation)
            } else {
                NextState::Interior(size)
            }
        }
    })
}

/// Extends the imposed borders `prefix` outward by the recursion.
pub fn solve_partition_with_prefix(params: &ModelParams, h_eff: f64, prefix: &[f64]) -> Result<Partition> {
    params.validate()?;
    check_h_eff(h_eff)?;
    // validates the prefix before recursing from it
    Partition::from_right_borders(params, h_eff, prefix, false)?;
    let mut borders = prefix.to_vec();
    let mut truncated = false;
    let mut b = *borders.last().expect("prefix validated as non-empty");
    while borders.len() <= MAX_INTERIOR {
        let Some(x) = optimal_gap(b, params, h_eff)? else {
            break;
        };
        let next = 1.0 - x;
        if next - b < params.eps_size {
            truncated = true;
            break;
        }
        borders.push(next);
        b = next;
    }
    if borders.len() > MAX_INTERIOR {
        truncated = true;
    }
    Partition::from_right_borders(params, h_eff, &borders, truncated)
}

/// Equilibrium partition drawn with governance cost `h_eff`.
pub fn solve_partition_with_h_eff(params: &ModelParams, h_eff: f64) -> Result<Partition> {
    let s0 = solve_state0(params, h_eff)?;
    solve_partition_with_prefix(params, h_eff, &[0.5 * s0])
}

/// The unique equilibrium partition.
pub fn solve_partition(params: &ModelParams) -> Result<Partition> {
    solve_partition_with_h_eff(params, params.h)
}

/// Partition with the central state imposed as `(-b0, b0)`.
pub fn solve_partition_given_b0(params: &ModelParams, b0: f64) -> Result<Partition> {
    if !(b0 > 0.0 && b0 < 1.0) {
        return Err(Error::Domain {
            name: "b0",
            value: b0,
            reason: "must lie in (0, 1)",
        });
    }
    solve_partition_with_prefix(params, params.h, &[b0])
}

/// Ratio of labor's to lords' marginal utility weight,
/// `psi * (alpha / (1 - alpha))^(2 gamma)`.
pub fn suffrage_theta(params: &ModelParams) -> f64 {
    params.psi * powf(params.alpha / (1.0 - params.alpha), 2.0 * params.gamma)
}

/// `h / (1 + phi * theta)`, the governance cost under suffrage weight `phi`.
pub fn effective_governance_cost(params: &ModelParams, phi: f64) -> Result<f64> {
    if !(phi >= 0.0 && phi.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "phi",
            value: phi,
            reason: "must be finite and non-negative",
        });
    }
    Ok(params.h / (1.0 + phi * suffrage_theta(params)))
}

/// Partition drawn under the weighted objective `U + phi V`.
pub fn solve_partition_se(params: &ModelParams, phi: f64) -> Result<Partition> {
    let h_eff = effective_governance_cost(params, phi)?;
    solve_partition_with_h_eff(params, h_eff)
}
