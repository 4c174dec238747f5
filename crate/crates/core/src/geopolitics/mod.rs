//! Comparative statics of the border conditions, plus national opinion and
//! separatism.
//!
//! A non-central state's border satisfies
//! `F(S, b, tau, h) = tau R^(gamma-1) (1 - b - S) - h = 0` with `b` its
//! proximal border; the central state uses its own condition in `S_0`. The
//! implicit function theorem turns the partials of `F` into local responses
//! of sizes and borders.

mod opinion;

pub use opinion::{
    national_opinions, opinion_variance_sensitivity, separatism_profile, OpinionStats, SeparatismPoint,
    VarianceSensitivity,
};

use alloc::vec::Vec;

use crate::math::{exp, sq};
use crate::model::{log_remoteness, ModelParams, StateRecord};
use crate::solver::{solve_partition, solve_partition_given_b0, Partition};
use crate::{Error, Result};

/// `(1 + b_k) / (1 - b_k)`: how much more a border at `b_k` moves the
/// distal state's remoteness than the proximal state's, proportionally.
pub fn border_effect(b_k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&b_k) {
        return Err(Error::Domain {
            name: "b_k",
            value: b_k,
            reason: "must lie in [0, 1)",
        });
    }
    Ok((1.0 + b_k) / (1.0 - b_k))
}

/// Partials of a state's border condition at its solved borders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocPartials {
    pub index: i32,
    pub f_s: f64,
    /// Partial in the proximal border; absent for the central state.
    pub f_b: Option<f64>,
    pub f_tau: f64,
    pub f_h: f64,
}

/// Partials of `tau R^(gamma-1) (1 - b - S) - h` at proximal border `b`
/// and distal border `b + S`.
pub fn interior_partials(b_prev: f64, b_next: f64, params: &ModelParams) -> (f64, f64, f64) {
    let ModelParams { tau, gamma, .. } = *params;
    let g1 = gamma - 1.0;
    let lr = log_remoteness(b_prev, b_next, tau);
    let rg = exp(g1 * lr);
    let x = 1.0 - b_next;
    let size = b_next - b_prev;
    let f_s = -g1 * rg * sq(tau) * sq(x) - tau * rg;
    let f_b = g1 * rg * sq(tau) * (2.0 * b_prev + size) * x - tau * rg;
    let f_tau = rg * x * (1.0 + tau * g1 * 0.5 * (sq(1.0 + b_prev) + sq(x)));
    (f_s, f_b, f_tau)
}

/// Partials of the central condition `tau R_0^(gamma-1) (1 - S) - h` with
/// `R_0 = exp(tau (1 - S/2)^2)`.
pub fn central_partials(size: f64, params: &ModelParams) -> (f64, f64) {
    let ModelParams { tau, gamma, .. } = *params;
    let g1 = gamma - 1.0;
    let half = 1.0 - 0.5 * size;
    let rg = exp(g1 * tau * sq(half));
    let f_s = -tau * rg * (g1 * tau * half * (1.0 - size) + 1.0);
    let f_tau = rg * (1.0 - size) * (1.0 + g1 * tau * sq(half));
    (f_s, f_tau)
}

fn solved_state(partition: &Partition, n: i32) -> Result<&StateRecord> {
    let s = partition.state(n).ok_or(Error::UnknownState(n))?;
    if s.is_polar {
        return Err(Error::PolarState(n));
    }
    Ok(s)
}

/// Closed-form partials at state `n`.
pub fn foc_partials(partition: &Partition, n: i32) -> Result<FocPartials> {
    let s = solved_state(partition, n)?;
    let params = partition.params();
    if s.is_central() {
        let (f_s, f_tau) = central_partials(s.size, params);
        return Ok(FocPartials {
            index: n,
            f_s,
            f_b: None,
            f_tau,
            f_h: -1.0,
        });
    }
    let (p, q) = s.oriented();
    let (f_s, f_b, f_tau) = interior_partials(p, q, params);
    Ok(FocPartials {
        index: n,
        f_s,
        f_b: Some(f_b),
        f_tau,
        f_h: -1.0,
    })
}

/// `dh/dtau` that keeps state `n`'s border in place, `-F_tau / F_h = F_tau`.
pub fn stability_compensation(partition: &Partition, n: i32) -> Result<f64> {
    Ok(foc_partials(partition, n)?.f_tau)
}

/// Local response of a non-central state's size to its proximal border.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeResponse {
    pub index: i32,
    /// `-F_b / F_S`.
    pub ds_dbprev: f64,
    pub f_b: f64,
    pub f_s: f64,
    pub f_b_positive: bool,
    /// `tau > 1 / ((gamma - 1) b_0 (1 - b_0))`.
    pub taurange_holds: bool,
}

pub fn local_size_response(partition: &Partition, n: i32) -> Result<SizeResponse> {
    let s = solved_state(partition, n)?;
    if s.is_central() {
        return Err(Error::Domain {
            name: "n",
            value: 0.0,
            reason: "the central state has no proximal border",
        });
    }
    let params = partition.params();
    let (p, q) = s.oriented();
    let (f_s, f_b, _) = interior_partials(p, q, params);
    let b0 = partition.right_borders()[0];
    Ok(SizeResponse {
        index: n,
        ds_dbprev: -f_b / f_s,
        f_b,
        f_s,
        f_b_positive: f_b > 0.0,
        taurange_holds: params.tau > 1.0 / ((params.gamma - 1.0) * b0 * (1.0 - b0)),
    })
}

/// One interior state's response to a shift of the central border.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockRow {
    pub index: i32,
    /// `b_n(b_0 + delta) - b_n(b_0 - delta)`.
    pub border_change: f64,
    /// `S_n(b_0 + delta) - S_n(b_0 - delta)`.
    pub size_change: f64,
    /// Central-difference `db_n / db_0`; absent for a zero shock.
    pub db_db0_fd: Option<f64>,
    pub ds_db0_fd: Option<f64>,
    /// Chain product of `1 - F_b / F_S` over states `1..=n`.
    pub db_db0_analytic: f64,
    /// `(-F_b / F_S) * db_{n-1} / db_0`.
    pub ds_db0_analytic: f64,
    pub ds_dbprev_analytic: f64,
    pub f_b_positive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShockTable {
    pub b0: f64,
    pub delta_b0: f64,
    pub rows: Vec<ShockRow>,
}

/// Propagation of a central-border shift through the outward recursion.
///
/// The partition is re-solved at `b_0 - delta` and `b_0 + delta`; both must
/// keep the baseline number of states.
pub fn state0_shock(params: &ModelParams, delta_b0: f64) -> Result<ShockTable> {
    let base = solve_partition(params)?;
    if !(delta_b0.abs() <= 10.0 * params.fd_step) {
        return Err(Error::Domain {
            name: "delta_b0",
            value: delta_b0,
            reason: "must not exceed 10 * fd_step in magnitude",
        });
    }
    let b0 = base.right_borders()[0];
    let lo = solve_partition_given_b0(params, b0 - delta_b0)?;
    let hi = solve_partition_given_b0(params, b0 + delta_b0)?;
    let n = base.n_interior();
    for shocked in [&lo, &hi] {
        if shocked.n_interior() != n {
            return Err(Error::StateCountChanged {
                before: n,
                after: shocked.n_interior(),
            });
        }
    }
    let mut rows = Vec::with_capacity(n);
    let mut chain = 1.0;
    for k in 1..=n {
        let r = local_size_response(&base, k as i32)?;
        let db = hi.right_borders()[k] - lo.right_borders()[k];
        let ds =
            (hi.right_borders()[k] - hi.right_borders()[k - 1]) - (lo.right_borders()[k] - lo.right_borders()[k - 1]);
        let fd = |v: f64| (delta_b0 != 0.0).then(|| v / (2.0 * delta_b0));
        let ds_db0_analytic = r.ds_dbprev * chain;
        chain *= 1.0 + r.ds_dbprev;
        rows.push(ShockRow {
            index: k as i32,
            border_change: db,
            size_change: ds,
            db_db0_fd: fd(db),
            ds_db0_fd: fd(ds),
            db_db0_analytic: chain,
            ds_db0_analytic,
            ds_dbprev_analytic: r.ds_dbprev,
            f_b_positive: r.f_b_positive,
        });
    }
    Ok(ShockTable { b0, delta_b0, rows })
}
