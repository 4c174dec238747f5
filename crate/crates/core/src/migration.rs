//! Labor migration between states under real-wage equalization.
//!
//! Labor is free to move and `l0 = 1`, so state `k` starts with `L_k = S_k`
//! workers. Migration of `M` workers from `m` to `n` equalizes real wages
//! when `(S_n / S_m) (S_m - M) / (S_n + M) = R_n / R_m`. The FOC ties
//! remoteness to the distal border, `R_k ~ 1 / Phi_k` with
//! `Phi_k = (1 - b_k)^(1 / (gamma - 1))`, which makes the balance linear in
//! `M`.

use crate::math::powf;
use crate::model::StateRecord;
use crate::solver::Partition;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MigrationResult {
    pub from_state: i32,
    pub to_state: i32,
    /// Net workers moving from `from_state` to `to_state`.
    pub flow: f64,
    /// `S_m S_n (Phi_n - Phi_m) / (Phi_n + Phi_m)`, which drops the size
    /// weights of the exact solution.
    pub unweighted_flow: f64,
    pub phi_from: f64,
    pub phi_to: f64,
    /// Real-wage balance evaluated at `flow`.
    pub residual: f64,
}

/// `(1 - b_k)^(1 / (gamma - 1))`.
pub fn phi_factor(b_k: f64, gamma: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&b_k) {
        return Err(Error::Domain {
            name: "b_k",
            value: b_k,
            reason: "must lie in [0, 1)",
        });
    }
    if !(gamma > 1.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "must exceed 1",
        });
    }
    Ok(powf(1.0 - b_k, 1.0 / (gamma - 1.0)))
}

/// `Phi` of a solved state. The central state's FOC carries `1 - S_0` where
/// the others carry `1 - b_k`.
fn state_phi(s: &StateRecord, gamma: f64) -> Result<f64> {
    if s.is_central() {
        phi_factor(s.size, gamma)
    } else {
        phi_factor(s.oriented().1, gamma)
    }
}

/// Real-wage balance `(S_n / S_m) (S_m - M) / (S_n + M) - R_n / R_m`.
pub fn wage_balance(from: &StateRecord, to: &StateRecord, flow: f64) -> f64 {
    (to.size / from.size) * (from.size - flow) / (to.size + flow) - to.remoteness / from.remoteness
}

/// Equilibrium migration from state `m` to state `n` of one hemisphere.
///
/// The central state belongs to both hemispheres. A negative flow means
/// labor moves from `n` to `m`.
pub fn migration_flow(partition: &Partition, m: i32, n: i32) -> Result<MigrationResult> {
    if m == n {
        return Err(Error::SameState(m));
    }
    let from = partition.state(m).ok_or(Error::UnknownState(m))?;
    let to = partition.state(n).ok_or(Error::UnknownState(n))?;
    for s in [from, to] {
        if s.is_polar {
            return Err(Error::PolarState(s.index));
        }
    }
    if m.signum() * n.signum() < 0 {
        return Err(Error::CrossHemisphere(m, n));
    }
    let gamma = partition.params().gamma;
    let (phi_from, phi_to) = (state_phi(from, gamma)?, state_phi(to, gamma)?);
    let (sm, sn) = (from.size, to.size);
    let flow = sm * sn * (phi_to - phi_from) / (sn * phi_to + sm * phi_from);
    Ok(MigrationResult {
        from_state: m,
        to_state: n,
        flow,
        unweighted_flow: sm * sn * (phi_to - phi_from) / (phi_to + phi_from),
        phi_from,
        phi_to,
        residual: wage_balance(from, to, flow),
    })
}
