//! Reference computations written directly from the model's formulas with
//! std float math, independent of the library's internals.

#![allow(dead_code)]

/// Root of a strictly decreasing `f` on `[lo, hi]`, refined until the
/// bracket cannot shrink.
pub fn bisect_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) > 0.0 && f(hi) <= 0.0, "bracket does not straddle a root");
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return if f(lo).abs() < f(hi).abs() { lo } else { hi };
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

pub fn remoteness(left: f64, right: f64, tau: f64) -> f64 {
    (0.5 * tau * ((1.0 + left).powi(2) + (1.0 - right).powi(2))).exp()
}

/// Marginal net benefit of the central state, `tau R_0^(gamma-1) (1 - S) - h`.
pub fn central_marginal(s: f64, tau: f64, h: f64, gamma: f64) -> f64 {
    let r0 = remoteness(-s / 2.0, s / 2.0, tau);
    tau * r0.powf(gamma - 1.0) * (1.0 - s) - h
}

/// Marginal net benefit of a state `[b, b + s]`.
pub fn marginal(b: f64, s: f64, tau: f64, h: f64, gamma: f64) -> f64 {
    tau * remoteness(b, b + s, tau).powf(gamma - 1.0) * (1.0 - b - s) - h
}

pub fn central_size(tau: f64, h: f64, gamma: f64) -> f64 {
    bisect_decreasing(|s| central_marginal(s, tau, h, gamma), 0.0, 1.0)
}

/// Optimal size of the state starting at `b`, solved in the size itself.
/// `None` when no positive size pays or the size is below `eps_size`.
pub fn next_size(b: f64, tau: f64, h: f64, gamma: f64, eps_size: f64) -> Option<f64> {
    if marginal(b, 0.0, tau, h, gamma) <= 0.0 {
        return None;
    }
    let s = bisect_decreasing(|s| marginal(b, s, tau, h, gamma), 0.0, 1.0 - b);
    (s >= eps_size).then_some(s)
}

/// Right-hemisphere distal borders `b_0, ..., b_N`.
pub fn borders(tau: f64, h: f64, gamma: f64, eps_size: f64) -> Vec<f64> {
    let mut out = vec![central_size(tau, h, gamma) / 2.0];
    while let Some(s) = next_size(*out.last().unwrap(), tau, h, gamma, eps_size) {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Midpoint rule for the flow from exporter `[ml, mr]` to importer
/// `[nl, nr]`: each importer locale spends `kappa / 2` per exporter locale,
/// discounted by its distance to the exporter state.
pub fn gravity_midpoint(ml: f64, mr: f64, nl: f64, nr: f64, tau: f64, panels: usize) -> f64 {
    let kappa = 1.0;
    let w = (nr - nl) / panels as f64;
    let mut acc = 0.0;
    for k in 0..panels {
        let t = nl + (k as f64 + 0.5) * w;
        let gap = if t >= mr { t - mr } else { ml - t };
        acc += kappa / 2.0 * (mr - ml) * (-tau * gap).exp() * w;
    }
    acc
}

/// Real-wage balance after `flow` workers leave `m` for `n`.
pub fn wage_balance(sm: f64, sn: f64, rm: f64, rn: f64, flow: f64) -> f64 {
    (sn / sm) * (sm - flow) / (sn + flow) - rn / rm
}

/// Migration that equalizes real wages, found by bisection.
pub fn migration_by_bisection(sm: f64, sn: f64, rm: f64, rn: f64) -> f64 {
    let lo = -sn * (1.0 - 1e-15);
    let hi = sm * (1.0 - 1e-15);
    bisect_decreasing(|x| wage_balance(sm, sn, rm, rn, x), lo, hi)
}

/// Value of `F = tau R^(gamma-1) (1 - b - S) - h` for finite differences.
pub fn foc(b: f64, s: f64, tau: f64, h: f64, gamma: f64) -> f64 {
    marginal(b, s, tau, h, gamma)
}

pub fn central_foc(s: f64, tau: f64, h: f64, gamma: f64) -> f64 {
    central_marginal(s, tau, h, gamma)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
