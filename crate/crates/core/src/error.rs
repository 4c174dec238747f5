use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the model, solver and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("`{name}` = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("infeasible central state: h_eff = {h_eff} must be below tau*exp(tau*(gamma-1)) = {bound}")]
    InfeasibleCentralState { h_eff: f64, bound: f64 },
    #[error("h_eff equals tau*exp(tau*(gamma-1)) = {bound}; the central state collapses to a point")]
    DegenerateEquality { bound: f64 },
    #[error("the shock changed the number of interior states from {before} to {after}")]
    StateCountChanged { before: usize, after: usize },
    #[error("no state with index {0}")]
    UnknownState(i32),
    #[error("state {0} was given twice; a distinct pair is required")]
    SameState(i32),
    #[error("state {0} is a polar semi-state")]
    PolarState(i32),
    #[error("states {0} and {1} lie in different hemispheres")]
    CrossHemisphere(i32, i32),
    #[error("fixed areas [{0}, {1}] and [{2}, {3}] overlap")]
    OverlappingAreas(f64, f64, f64, f64),
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("invalid network: {0}")]
    InvalidNetwork(&'static str),
    #[error("no node with index {0}")]
    UnknownNode(usize),
    #[error("bisection bracket [{lo}, {hi}] does not straddle a root")]
    InvalidBracket { lo: f64, hi: f64 },
}
