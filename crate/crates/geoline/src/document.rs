//! The partition file format.

use serde::{Deserialize, Serialize};

use geoline_core::{ModelParams, Partition, StateRecord};

use crate::error::{CliError, Result};
use crate::json;

pub const SCHEMA_VERSION: u32 = 1;

/// Relative slack allowed between stored and recomputed state fields.
const FIELD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    pub tau: f64,
    pub h: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub psi: f64,
    pub eps_border: f64,
    pub eps_size: f64,
    pub fd_step: f64,
}

impl From<&ModelParams> for ParamsDoc {
    fn from(p: &ModelParams) -> Self {
        ParamsDoc {
            tau: p.tau,
            h: p.h,
            gamma: p.gamma,
            alpha: p.alpha,
            psi: p.psi,
            eps_border: p.eps_border,
            eps_size: p.eps_size,
            fd_step: p.fd_step,
        }
    }
}

impl ParamsDoc {
    pub fn to_params(&self) -> Result<ModelParams> {
        let p = ModelParams {
            tau: self.tau,
            h: self.h,
            gamma: self.gamma,
            alpha: self.alpha,
            psi: self.psi,
            eps_border: self.eps_border,
            eps_size: self.eps_size,
            fd_step: self.fd_step,
        };
        p.validate().map_err(|e| CliError::invalid(format!("params: {e}")))?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub index: i32,
    pub left: f64,
    pub right: f64,
    pub size: f64,
    pub remoteness: f64,
    pub is_polar: bool,
}

impl From<&StateRecord> for StateDoc {
    fn from(s: &StateRecord) -> Self {
        StateDoc {
            index: s.index,
            left: s.left,
            right: s.right,
            size: s.size,
            remoteness: s.remoteness,
            is_polar: s.is_polar,
        }
    }
}

/// A solved partition, states ordered west to east.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDocument {
    pub schema_version: u32,
    pub params: ParamsDoc,
    pub states: Vec<StateDoc>,
    pub truncated_at_accumulation: bool,
    pub h_eff: f64,
}

impl PartitionDocument {
    pub fn from_partition(p: &Partition) -> Self {
        PartitionDocument {
            schema_version: SCHEMA_VERSION,
            params: p.params().into(),
            states: p.states().iter().map(StateDoc::from).collect(),
            truncated_at_accumulation: p.truncated_at_accumulation(),
            h_eff: p.h_eff(),
        }
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        json::to_bytes(self)
    }

    /// Parses and validates. Syntax errors carry line and column.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let doc: PartitionDocument =
            serde_json::from_slice(bytes).map_err(|e| CliError::invalid(format!("partition document: {e}")))?;
        doc.to_partition()?;
        Ok(doc)
    }

    /// Rebuilds the partition from the right-hemisphere borders and checks
    /// every stored state against it.
    pub fn to_partition(&self) -> Result<Partition> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::invalid(format!(
                "schema_version: expected {SCHEMA_VERSION}, found {}",
                self.schema_version
            )));
        }
        let params = self.params.to_params()?;
        let states = &self.states;
        if states.len() < 3 || states.len().is_multiple_of(2) {
            return Err(CliError::invalid(format!(
                "states: expected an odd count of at least 3, found {}",
                states.len()
            )));
        }
        let polar = (states.len() / 2) as i32;
        for (k, s) in states.iter().enumerate() {
            let expected = k as i32 - polar;
            if s.index != expected {
                return Err(CliError::invalid(format!(
                    "states[{k}].index: expected {expected}, found {}",
                    s.index
                )));
            }
            if !(s.left < s.right) {
                return Err(CliError::invalid(format!(
                    "states[{k}]: left border {} is not below right border {}",
                    s.left, s.right
                )));
            }
            if k > 0 && states[k - 1].right != s.left {
                return Err(CliError::invalid(format!(
                    "states[{k}].left: {} does not continue the previous right border {}",
                    s.left,
                    states[k - 1].right
                )));
            }
        }
        let borders: Vec<f64> = states[polar as usize..states.len() - 1]
            .iter()
            .map(|s| s.right)
            .collect();
        let partition = Partition::from_right_borders(&params, self.h_eff, &borders, self.truncated_at_accumulation)
            .map_err(|e| CliError::invalid(format!("states: {e}")))?;
        for (k, (stored, built)) in states.iter().zip(partition.states()).enumerate() {
            let fields = [
                ("left", stored.left, built.left),
                ("right", stored.right, built.right),
                ("size", stored.size, built.size),
                ("remoteness", stored.remoteness, built.remoteness),
            ];
            for (name, a, b) in fields {
                if !((a - b).abs() <= FIELD_TOL * b.abs().max(1.0)) {
                    return Err(CliError::invalid(format!(
                        "states[{k}].{name}: {a} is inconsistent with the borders (expected {b})"
                    )));
                }
            }
            if stored.is_polar != built.is_polar {
                return Err(CliError::invalid(format!(
                    "states[{k}].is_polar: expected {}",
                    built.is_polar
                )));
            }
        }
        Ok(partition)
    }
}
