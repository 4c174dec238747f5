//! National opinion and separatism.
//!
//! A state's opinion is that of its median locale, `G_n = (b_{n-1} + b_n) / 2`.
//! A locale's ideal state is the optimally sized state ending at itself;
//! its separatism is one minus the share of that ideal state its actual
//! state covers.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{central_partials, interior_partials};
use crate::math::{exp, sq};
use crate::model::ModelParams;
use crate::solver::{solve_partition, Partition};
use crate::trade::{Shock, ShockParameter};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OpinionStats {
    pub opinions: BTreeMap<i32, f64>,
    pub mean: f64,
    /// `(1/N) * sum of G_n^2` over the non-central right-hemisphere states.
    pub variance: f64,
    /// Non-central states per hemisphere, polar semi-state included.
    pub n_per_hemisphere: usize,
}

pub fn national_opinions(partition: &Partition) -> OpinionStats {
    let opinions: BTreeMap<i32, f64> = partition
        .states()
        .iter()
        .map(|s| (s.index, 0.5 * (s.left + s.right)))
        .collect();
    let right: Vec<f64> = partition.right_hemisphere()[1..]
        .iter()
        .map(|s| opinions[&s.index])
        .collect();
    // mirrored pairs cancel exactly
    let sum: f64 = partition
        .right_hemisphere()
        .iter()
        .map(|s| opinions[&s.index] + opinions[&-s.index])
        .sum();
    let n = right.len();
    OpinionStats {
        mean: sum / opinions.len() as f64,
        variance: right.iter().map(|g| sq(*g)).sum::<f64>() / n as f64,
        n_per_hemisphere: n,
        opinions,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceSensitivity {
    pub shock: Shock,
    pub base_variance: f64,
    pub shocked_variance: f64,
    /// `shocked_variance - base_variance`.
    pub d_var: f64,
    /// Per-state partial of size in the shocked parameter at fixed proximal
    /// border: `-F_tau / F_S` or `-F_h / F_S`.
    pub state_partials: Vec<(i32, f64)>,
    /// Every partial has its expected sign: positive for `tau`, negative for `h`.
    pub state_partials_ok: bool,
}

/// Change of opinion variance under a parameter shock that keeps the state
/// count.
pub fn opinion_variance_sensitivity(params: &ModelParams, shock: Shock) -> Result<VarianceSensitivity> {
    let base = solve_partition(params)?;
    let shocked = solve_partition(&shock.apply(params)?)?;
    if base.n_interior() != shocked.n_interior() {
        return Err(Error::StateCountChanged {
            before: base.n_interior(),
            after: shocked.n_interior(),
        });
    }
    let base_variance = national_opinions(&base).variance;
    let shocked_variance = national_opinions(&shocked).variance;
    let mut state_partials = Vec::new();
    for s in base.right_hemisphere().iter().filter(|s| !s.is_polar) {
        let (f_s, f_tau) = if s.is_central() {
            central_partials(s.size, params)
        } else {
            let (f_s, _, f_tau) = interior_partials(s.left, s.right, params);
            (f_s, f_tau)
        };
        let partial = match shock.parameter {
            ShockParameter::Tau => -f_tau / f_s,
            ShockParameter::H => 1.0 / f_s,
        };
        state_partials.push((s.index, partial));
    }
    let state_partials_ok = state_partials.iter().all(|(_, v)| match shock.parameter {
        ShockParameter::Tau => *v > 0.0,
        ShockParameter::H => *v < 0.0,
    });
    Ok(VarianceSensitivity {
        shock,
        base_variance,
        shocked_variance,
        d_var: shocked_variance - base_variance,
        state_partials,
        state_partials_ok,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatismPoint {
    pub state: i32,
    pub t: f64,
    pub sigma: f64,
    pub overlap: f64,
    pub ideal_left: f64,
    pub ideal_right: f64,
    /// `d sigma / d tau` at fixed distance from the proximal border.
    pub dsigma_dtau: f64,
    /// `d sigma / d R_n` at fixed distance from the proximal border.
    pub dsigma_dr: f64,
}

/// Separatism at `samples_per_state` evenly spaced locales of every
/// non-polar, non-central state, starting at the proximal border.
pub fn separatism_profile(partition: &Partition, samples_per_state: usize) -> Result<Vec<SeparatismPoint>> {
    if samples_per_state < 2 {
        return Err(Error::Domain {
            name: "samples_per_state",
            value: samples_per_state as f64,
            reason: "at least 2 samples are required",
        });
    }
    let params = partition.params();
    let ModelParams { tau, gamma, .. } = *params;
    let h = partition.h_eff();
    let mut out = Vec::new();
    for s in partition.states().iter().filter(|s| !s.is_polar && !s.is_central()) {
        let (proximal, _) = s.oriented();
        let size = s.size;
        let rg = exp((gamma - 1.0) * crate::math::ln(s.remoteness));
        let sign = if s.index < 0 { -1.0 } else { 1.0 };
        for k in 0..samples_per_state {
            let delta = size * k as f64 / samples_per_state as f64;
            let u = proximal + delta;
            let sigma = 1.0 - delta / size;
            let scale = delta / sq(size);
            let (ideal_left, ideal_right) = if sign > 0.0 { (u - size, u) } else { (-u, -u + size) };
            out.push(SeparatismPoint {
                state: s.index,
                t: sign * u,
                sigma,
                overlap: 1.0 - sigma,
                ideal_left,
                ideal_right,
                dsigma_dtau: scale * h / (sq(tau) * rg),
                dsigma_dr: scale * h * (gamma - 1.0) / (tau * rg * s.remoteness),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_next_state;
    use crate::solver::NextState;
    use proptest::prelude::*;

    fn canonical() -> Partition {
        solve_partition(&ModelParams::canonical()).unwrap()
    }

    #[test]
    fn opinions_canonical() {
        let p = canonical();
        let o = national_opinions(&p);
        assert_eq!(o.opinions[&0], 0.0);
        assert!((o.opinions[&1] - 0.6780).abs() < 1e-4);
        assert!(o.mean.abs() <= 1e-15);
        assert_eq!(o.n_per_hemisphere, p.n_interior() + 1);
        for (k, g) in &o.opinions {
            assert_eq!(*g, -o.opinions[&-k]);
        }
    }

    #[test]
    fn variance_sensitivity_signs() {
        let params = ModelParams::canonical();
        let t = opinion_variance_sensitivity(&params, Shock::tau(1e-4)).unwrap();
        assert!(t.state_partials_ok);
        let h = opinion_variance_sensitivity(&params, Shock::h(1e-4)).unwrap();
        assert!(h.state_partials_ok);
        let z = opinion_variance_sensitivity(&params, Shock::tau(0.0)).unwrap();
        assert_eq!(z.d_var, 0.0);
    }

    #[test]
    fn partials_match_fixed_border_differences() {
        let params = ModelParams::canonical();
        let p = canonical();
        let d = 1e-6;
        let t = opinion_variance_sensitivity(&params, Shock::tau(1e-4)).unwrap();
        let hs = opinion_variance_sensitivity(&params, Shock::h(1e-4)).unwrap();
        let size_at = |b: f64, pr: &ModelParams| match solve_next_state(b, pr, pr.h).unwrap() {
            NextState::Interior(s) => s,
            other => panic!("{other:?}"),
        };
        for ((k, dt), (_, dh)) in t.state_partials.iter().zip(&hs.state_partials) {
            if *k == 0 {
                continue;
            }
            let b = p.state(*k).unwrap().left;
            let fd_t = (size_at(b, &params.with_tau(1.0 + d).unwrap())
                - size_at(b, &params.with_tau(1.0 - d).unwrap()))
                / (2.0 * d);
            let fd_h = (size_at(b, &params.with_h(0.2 + d).unwrap()) - size_at(b, &params.with_h(0.2 - d).unwrap()))
                / (2.0 * d);
            assert!((dt - fd_t).abs() / fd_t.abs() < 1e-4, "{k}: {dt} {fd_t}");
            assert!((dh - fd_h).abs() / fd_h.abs() < 1e-4, "{k}: {dh} {fd_h}");
        }
    }

    #[test]
    fn separatism_basics() {
        let p = canonical();
        let pts = separatism_profile(&p, 4).unwrap();
        assert_eq!(pts.len(), 2 * p.n_interior() * 4);
        for s in p.states().iter().filter(|s| !s.is_polar && s.index != 0) {
            let mine: Vec<_> = pts.iter().filter(|x| x.state == s.index).collect();
            assert_eq!(mine[0].sigma, 1.0);
            assert_eq!(mine[2].sigma, 0.5);
            for x in &mine {
                assert_eq!(x.sigma + x.overlap, 1.0);
            }
            for x in &mine[1..] {
                assert!(x.dsigma_dtau > 0.0 && x.dsigma_dr > 0.0);
            }
        }
        assert!(separatism_profile(&p, 1).is_err());
    }

    proptest! {
        #[test]
        fn sigma_slope_is_inverse_size(samples in 2usize..40) {
            let p = canonical();
            let pts = separatism_profile(&p, samples).unwrap();
            for w in pts.windows(2) {
                if w[0].state != w[1].state || w[0].state < 0 {
                    continue;
                }
                let size = p.state(w[0].state).unwrap().size;
                let slope = (w[1].sigma - w[0].sigma) / (w[1].t - w[0].t);
                prop_assert!((slope * size + 1.0).abs() < 1e-6);
            }
        }
    }
}
