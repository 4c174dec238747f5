//! Gravity trade between states and between fixed geographic areas.
//!
//! A locale spends `kappa / 2` on each source locale's good, grossed up by
//! the iceberg cost. Aggregating over two states separated by the gap `D`
//! gives an exact flow and its Newtonian approximation
//! `zeta * S_m * S_n * exp(-tau * D)`.

use alloc::vec::Vec;

use crate::math::{exp, ln};
use crate::model::{normalization, ModelParams, StateRecord};
use crate::solver::{solve_partition, Partition};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeFlow {
    pub exporter: i32,
    pub importer: i32,
    /// Gap between the two states' facing borders.
    pub distance: f64,
    pub x_newton: f64,
    pub x_exact: f64,
}

/// A coordinate-anchored interval whose state affiliation changes as
/// borders move.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedArea {
    lo: f64,
    hi: f64,
}

impl FixedArea {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(-1.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(Error::Domain {
                name: "fixed_area",
                value: lo,
                reason: "requires -1 <= lo < hi <= 1",
            });
        }
        Ok(FixedArea { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn size(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Log-change decomposition of a Newtonian flow between two partitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityDecomposition {
    pub size_effect: f64,
    pub direct_effect: f64,
    pub location_effect: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShockParameter {
    Tau,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shock {
    pub parameter: ShockParameter,
    pub delta: f64,
}

impl Shock {
    pub fn tau(delta: f64) -> Self {
        Shock {
            parameter: ShockParameter::Tau,
            delta,
        }
    }

    pub fn h(delta: f64) -> Self {
        Shock {
            parameter: ShockParameter::H,
            delta,
        }
    }

    /// `params` with the shock applied.
    pub fn apply(&self, params: &ModelParams) -> Result<ModelParams> {
        match self.parameter {
            ShockParameter::Tau => params.with_tau(params.tau + self.delta),
            ShockParameter::H => params.with_h(params.h + self.delta),
        }
    }
}

fn state(partition: &Partition, index: i32) -> Result<&StateRecord> {
    partition.state(index).ok_or(Error::UnknownState(index))
}

fn gap(a: &StateRecord, b: &StateRecord) -> f64 {
    if a.index == b.index {
        0.0
    } else if a.right <= b.left {
        b.left - a.right
    } else {
        a.left - b.right
    }
}

/// Gap between the facing borders of states `m` and `n`.
pub fn shortest_distance(partition: &Partition, m: i32, n: i32) -> Result<f64> {
    Ok(gap(state(partition, m)?, state(partition, n)?))
}

/// Flow of goods from exporter `m` to importer `n`, in both forms.
pub fn trade_flow(partition: &Partition, m: i32, n: i32) -> Result<TradeFlow> {
    if m == n {
        return Err(Error::SameState(m));
    }
    let (sm, sn) = (state(partition, m)?, state(partition, n)?);
    let params = partition.params();
    let norm = normalization(params);
    let tau = params.tau;
    let distance = gap(sm, sn);
    let decay = exp(-tau * distance);
    Ok(TradeFlow {
        exporter: m,
        importer: n,
        distance,
        x_newton: norm.zeta * sm.size * sn.size * decay,
        x_exact: norm.kappa / (2.0 * tau) * sm.size * decay * (1.0 - exp(-tau * sn.size)),
    })
}

/// Newtonian gravity flow `zeta * S_m * S_n * exp(-tau * D)`.
pub fn gravity_newton(partition: &Partition, m: i32, n: i32) -> Result<TradeFlow> {
    trade_flow(partition, m, n)
}

/// Flow before the small-state approximation,
/// `kappa / (2 tau) * S_m * exp(-tau D) * (1 - exp(-tau S_n))`.
pub fn gravity_exact(partition: &Partition, m: i32, n: i32) -> Result<TradeFlow> {
    trade_flow(partition, m, n)
}

/// State containing the points of an interval just below its upper end `t`.
fn locate_from_below(partition: &Partition, t: f64) -> Option<&StateRecord> {
    partition.states().iter().find(|s| s.left < t && t <= s.right)
}

/// States holding the inner-facing endpoints of two disjoint areas.
pub fn fixed_area_states(partition: &Partition, u: &FixedArea, v: &FixedArea) -> Result<(i32, i32)> {
    if u.lo < v.hi && v.lo < u.hi {
        return Err(Error::OverlappingAreas(u.lo, u.hi, v.lo, v.hi));
    }
    let uncovered = |t: f64| Error::Domain {
        name: "fixed_area",
        value: t,
        reason: "not covered by the partition",
    };
    let (su, sv) = if u.hi <= v.lo {
        (
            locate_from_below(partition, u.hi).ok_or_else(|| uncovered(u.hi))?,
            partition.locate(v.lo).ok_or_else(|| uncovered(v.lo))?,
        )
    } else {
        (
            partition.locate(u.lo).ok_or_else(|| uncovered(u.lo))?,
            locate_from_below(partition, v.hi).ok_or_else(|| uncovered(v.hi))?,
        )
    };
    Ok((su.index, sv.index))
}

/// `zeta * F_u * F_v * exp(-tau * D)` with `D` the distance between the
/// states holding the areas' inner-facing endpoints.
pub fn gravity_fixed_area(partition: &Partition, u: &FixedArea, v: &FixedArea) -> Result<f64> {
    let (m, n) = fixed_area_states(partition, u, v)?;
    let d = shortest_distance(partition, m, n)?;
    let params = partition.params();
    Ok(normalization(params).zeta * u.size() * v.size() * exp(-params.tau * d))
}

/// Same flow with no states at all: the distance is the gap between the
/// inner-facing endpoints.
pub fn gravity_state_free(params: &ModelParams, u: &FixedArea, v: &FixedArea) -> Result<f64> {
    if u.lo < v.hi && v.lo < u.hi {
        return Err(Error::OverlappingAreas(u.lo, u.hi, v.lo, v.hi));
    }
    let d = if u.hi <= v.lo { v.lo - u.hi } else { u.lo - v.hi };
    Ok(normalization(params).zeta * u.size() * v.size() * exp(-params.tau * d))
}

/// Splits the log change of the Newtonian flow from `m` to `n` under
/// `shock` into size, direct and location effects.
///
/// With `x = zeta S_m S_n exp(-tau D)`, the change of `tau D` is split at
/// midpoints, `D_bar * d_tau + tau_bar * d_D`, so the parts add up exactly.
pub fn decompose_change(params: &ModelParams, shock: Shock, m: i32, n: i32) -> Result<GravityDecomposition> {
    let before = solve_partition(params)?;
    let after = solve_partition(&shock.apply(params)?)?;
    if before.n_interior() != after.n_interior() {
        return Err(Error::StateCountChanged {
            before: before.n_interior(),
            after: after.n_interior(),
        });
    }
    let x0 = trade_flow(&before, m, n)?;
    let x1 = trade_flow(&after, m, n)?;
    let size = |p: &Partition, k: i32| p.state(k).map(|s| s.size).unwrap_or(f64::NAN);
    let size_effect = (ln(size(&after, m)) - ln(size(&before, m))) + (ln(size(&after, n)) - ln(size(&before, n)));
    let (tau0, tau1) = (before.params().tau, after.params().tau);
    let d_tau = tau1 - tau0;
    let d_dist = x1.distance - x0.distance;
    let direct_effect = if d_tau == 0.0 {
        0.0
    } else {
        -0.5 * (x0.distance + x1.distance) * d_tau
    };
    let location_effect = -0.5 * (tau0 + tau1) * d_dist;
    Ok(GravityDecomposition {
        size_effect,
        direct_effect,
        location_effect,
        total: ln(x1.x_newton) - ln(x0.x_newton),
    })
}

/// All bilateral flows of a partition, rows indexed by exporter.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeMatrix {
    pub indices: Vec<i32>,
    pub newton: Vec<Vec<f64>>,
    pub exact: Vec<Vec<f64>>,
}

/// Flows over every ordered pair of states. The diagonal holds domestic
/// trade `zeta * S_n^2` in both forms.
pub fn trade_matrix(partition: &Partition) -> Result<TradeMatrix> {
    let zeta = normalization(partition.params()).zeta;
    let indices: Vec<i32> = partition.states().iter().map(|s| s.index).collect();
    let k = indices.len();
    let mut newton = alloc::vec![alloc::vec![0.0; k]; k];
    let mut exact = newton.clone();
    for (i, &m) in indices.iter().enumerate() {
        for (j, &n) in indices.iter().enumerate() {
            if i == j {
                let s = state(partition, m)?.size;
                newton[i][j] = zeta * s * s;
                exact[i][j] = zeta * s * s;
            } else {
                let f = trade_flow(partition, m, n)?;
                newton[i][j] = f.x_newton;
                exact[i][j] = f.x_exact;
            }
        }
    }
    Ok(TradeMatrix { indices, newton, exact })
}
