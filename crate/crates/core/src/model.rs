//! Primitive model objects: parameters, remoteness, trade costs, welfare.
//!
//! All coordinates live on `[-1, 1]`. A state `[left, right)` imports from
//! the foreign world on both sides, so its remoteness is
//! `exp(tau/2 * ((1 + left)^2 + (1 - right)^2))`, which holds in either
//! hemisphere.

use crate::math::{exp, powf, sq};
use crate::solver::Partition;
use crate::{Error, Result};

/// Primitive constants of the world plus numerical tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Foreign trade cost per unit distance.
    pub tau: f64,
    /// Governance disutility per unit of state size.
    pub h: f64,
    /// Utility curvature, `> 1`.
    pub gamma: f64,
    /// Land share in production, in `(0, 1)`.
    pub alpha: f64,
    /// Scale of labor's marginal utility.
    pub psi: f64,
    /// Widest bracket a border root may be returned with.
    pub eps_border: f64,
    /// States smaller than this end the outward recursion.
    pub eps_size: f64,
    /// Relative finite-difference step.
    pub fd_step: f64,
}

impl ModelParams {
    pub const DEFAULT_EPS_BORDER: f64 = 1e-12;
    pub const DEFAULT_EPS_SIZE: f64 = 1e-6;
    pub const DEFAULT_FD_STEP: f64 = 1e-4;

    /// Builds validated parameters with default tolerances.
    pub fn new(tau: f64, h: f64, gamma: f64, alpha: f64, psi: f64) -> Result<Self> {
        let p = ModelParams {
            tau,
            h,
            gamma,
            alpha,
            psi,
            eps_border: Self::DEFAULT_EPS_BORDER,
            eps_size: Self::DEFAULT_EPS_SIZE,
            fd_step: Self::DEFAULT_FD_STEP,
        };
        p.validate()?;
        Ok(p)
    }

    /// `tau = 1, h = 0.2, gamma = 2, alpha = 0.5, psi = 1`.
    pub fn canonical() -> Self {
        ModelParams {
            tau: 1.0,
            h: 0.2,
            gamma: 2.0,
            alpha: 0.5,
            psi: 1.0,
            eps_border: Self::DEFAULT_EPS_BORDER,
            eps_size: Self::DEFAULT_EPS_SIZE,
            fd_step: Self::DEFAULT_FD_STEP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter { name, value, reason })
            }
        }
        check(
            self.tau > 0.0 && self.tau.is_finite(),
            "tau",
            self.tau,
            "must be positive",
        )?;
        check(self.h > 0.0 && self.h.is_finite(), "h", self.h, "must be positive")?;
        check(
            self.gamma > 1.0 && self.gamma.is_finite(),
            "gamma",
            self.gamma,
            "must exceed 1",
        )?;
        check(
            self.alpha > 0.0 && self.alpha < 1.0,
            "alpha",
            self.alpha,
            "must lie in (0, 1)",
        )?;
        check(
            self.psi > 0.0 && self.psi.is_finite(),
            "psi",
            self.psi,
            "must be positive",
        )?;
        check(self.eps_border > 0.0, "eps_border", self.eps_border, "must be positive")?;
        check(
            self.eps_border < self.eps_size && self.eps_size < 1.0,
            "eps_size",
            self.eps_size,
            "must satisfy eps_border < eps_size < 1",
        )?;
        check(
            self.fd_step > 0.0 && self.fd_step < 1.0,
            "fd_step",
            self.fd_step,
            "must lie in (0, 1)",
        )
    }

    /// `tau * exp(tau * (gamma - 1))`, the marginal benefit of the first
    /// inch of the central state. Governance costs at or above it leave no
    /// central state.
    pub fn central_bound(&self) -> f64 {
        self.tau * exp(self.tau * (self.gamma - 1.0))
    }

    /// Copy with `tau` replaced, validated.
    pub fn with_tau(&self, tau: f64) -> Result<Self> {
        let p = ModelParams { tau, ..*self };
        p.validate()?;
        Ok(p)
    }

    /// Copy with `h` replaced, validated.
    pub fn with_h(&self, h: f64) -> Result<Self> {
        let p = ModelParams { h, ..*self };
        p.validate()?;
        Ok(p)
    }
}

/// Numeraire conventions: locale GDP `kappa = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationConstants {
    pub kappa: f64,
    /// Gravity constant `kappa / 2`.
    pub zeta: f64,
    /// Factory-gate price.
    pub p: f64,
    /// Locale output.
    pub y: f64,
    pub land_income: f64,
    pub labor_income: f64,
    /// Initial labor per locale.
    pub l0: f64,
}

/// One state of a partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateRecord {
    /// `0` for the central state, `+n` / `-n` for the n-th state in the
    /// right / left hemisphere. Polar semi-states take the outermost index.
    pub index: i32,
    pub left: f64,
    pub right: f64,
    pub size: f64,
    pub remoteness: f64,
    pub is_polar: bool,
}

impl StateRecord {
    /// Borders seen from the right hemisphere: `(proximal, distal)`.
    ///
    /// Left-hemisphere states are reflected through the center. For the
    /// central state this is `(-b_0, b_0)`.
    pub fn oriented(&self) -> (f64, f64) {
        if self.index < 0 {
            (-self.right, -self.left)
        } else {
            (self.left, self.right)
        }
    }

    pub fn is_central(&self) -> bool {
        self.index == 0
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.left && t <= self.right
    }
}

/// Consumption and utility of a locale's lord and labor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelfareBundle {
    pub c_lord: f64,
    pub c_labor: f64,
    pub u_lord: f64,
    pub v_labor: f64,
    pub w_weighted: f64,
}

fn check_coordinate(name: &'static str, x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: x,
            reason: "coordinates must lie in [-1, 1]",
        })
    }
}

/// Log remoteness without domain checks.
#[inline]
pub(crate) fn log_remoteness(left: f64, right: f64, tau: f64) -> f64 {
    0.5 * tau * (sq(1.0 + left) + sq(1.0 - right))
}

/// Remoteness of a state spanning `[left, right)`.
pub fn remoteness(left: f64, right: f64, params: &ModelParams) -> Result<f64> {
    check_coordinate("left_border", left)?;
    check_coordinate("right_border", right)?;
    if left >= right {
        return Err(Error::Domain {
            name: "left_border",
            value: left,
            reason: "left border must be below right border",
        });
    }
    Ok(exp(log_remoteness(left, right, params.tau)))
}

/// Iceberg cost `d(t, s)` paid by a consumer at `t` for the good made at
/// `s`: free inside the consumer's state, otherwise `exp(tau * gap)` with
/// `gap` measured from `s` to the nearest point of the consumer's state.
pub fn trade_cost(t: f64, s: f64, partition: &Partition) -> Result<f64> {
    check_coordinate("t", t)?;
    check_coordinate("s", s)?;
    let home = partition.locate(t).ok_or(Error::Domain {
        name: "t",
        value: t,
        reason: "not covered by the partition",
    })?;
    let other = partition.locate(s).ok_or(Error::Domain {
        name: "s",
        value: s,
        reason: "not covered by the partition",
    })?;
    if home.index == other.index {
        return Ok(1.0);
    }
    let gap = if s >= home.right { s - home.right } else { home.left - s };
    Ok(exp(partition.params().tau * gap))
}

/// Marginal net benefit of a non-central state's size:
/// `tau * R^(gamma-1) * (1 - b_prev - size) - h_eff`, with `b_prev` the
/// proximal border measured from the center.
pub fn foc_residual(b_prev: f64, size: f64, h_eff: f64, params: &ModelParams) -> Result<f64> {
    if !(0.0..1.0).contains(&b_prev) {
        return Err(Error::Domain {
            name: "b_prev",
            value: b_prev,
            reason: "proximal border must lie in [0, 1)",
        });
    }
    if !(size >= 0.0 && b_prev + size <= 1.0) {
        return Err(Error::Domain {
            name: "size",
            value: size,
            reason: "state must fit between b_prev and the world end",
        });
    }
    Ok(foc_value(b_prev, size, h_eff, params))
}

#[inline]
pub(crate) fn foc_value(b_prev: f64, size: f64, h_eff: f64, params: &ModelParams) -> f64 {
    let distal = b_prev + size;
    let lr = log_remoteness(b_prev, distal, params.tau);
    params.tau * exp((params.gamma - 1.0) * lr) * (1.0 - b_prev - size) - h_eff
}

/// Residual of the central state's condition
/// `tau * R_0^(gamma-1) * (1 - S_0) - h_eff` with `R_0 = exp(tau (1 - S_0/2)^2)`.
pub fn central_foc_residual(size: f64, h_eff: f64, params: &ModelParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&size) {
        return Err(Error::Domain {
            name: "size",
            value: size,
            reason: "central state size must lie in [0, 1]",
        });
    }
    Ok(central_foc_value(size, h_eff, params))
}

#[inline]
pub(crate) fn central_foc_value(size: f64, h_eff: f64, params: &ModelParams) -> f64 {
    let ModelParams { tau, gamma, .. } = *params;
    tau * exp(tau * (gamma - 1.0) * sq(1.0 - 0.5 * size)) * (1.0 - size) - h_eff
}

/// Consumption and utilities at every locale of `state`.
///
/// Lord consumption is `1 / R`. Labor spends `(1 - alpha) / alpha` goods
/// units per unit of the lord's, so `C^l = ((1 - alpha) / alpha)^2 / R`.
pub fn consumption_bundle(state: &StateRecord, params: &ModelParams, phi: f64) -> WelfareBundle {
    let one_minus_gamma = 1.0 - params.gamma;
    let c_lord = 1.0 / state.remoteness;
    let c_labor = sq((1.0 - params.alpha) / params.alpha) / state.remoteness;
    let u_lord = powf(c_lord, one_minus_gamma) / one_minus_gamma - params.h * state.size;
    let v_labor = params.psi * powf(c_labor, one_minus_gamma) / one_minus_gamma;
    WelfareBundle {
        c_lord,
        c_labor,
        u_lord,
        v_labor,
        w_weighted: u_lord + phi * v_labor,
    }
}

/// Numeraire constants for `params.alpha`.
pub fn normalization(params: &ModelParams) -> NormalizationConstants {
    let kappa = 1.0;
    NormalizationConstants {
        kappa,
        zeta: kappa / 2.0,
        p: params.alpha / 2.0,
        y: 2.0 / params.alpha,
        land_income: params.alpha * kappa,
        labor_income: (1.0 - params.alpha) * kappa,
        l0: 1.0,
    }
}
