//! Graph specifications.
//!
//! A spec is a JSON object with any of the fields `m`, `successors`,
//! `polynomial`, `p`, `f`, `depth`, `precision` and `components`. A graph is
//! given either by its successor table or by an integer polynomial together
//! with `m` (or with `p` and `depth`, meaning `m = p^depth`).

use std::fs;
use std::path::Path;

use padic_lift::graph::{graph_of_polynomial_mod_with_limit, FunctionalGraph};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::parse::parse_polynomial;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub successors: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<GraphSpec>>,
}

impl GraphSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        GraphSpec::from_json(&text)
    }

    /// A spec holding only a successor table such as `"1,0"` or `"[1, 0]"`.
    pub fn from_table(table: &str) -> Result<Self, CliError> {
        let inner = table.trim().trim_start_matches('[').trim_end_matches(']');
        let successors = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| CliError::Input(format!("bad successor {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GraphSpec {
            successors: Some(successors),
            ..GraphSpec::default()
        })
    }

    pub fn of_graph(g: &FunctionalGraph) -> Self {
        GraphSpec {
            m: Some(g.size() as u64),
            successors: Some(g.successors().to_vec()),
            ..GraphSpec::default()
        }
    }

    /// The functional graph described by this spec.
    pub fn graph(&self, size_limit: u64) -> Result<FunctionalGraph, CliError> {
        if let Some(succ) = &self.successors {
            if succ.is_empty() {
                return Err(CliError::Input("empty successor table".into()));
            }
            if let Some(m) = self.m {
                if m != succ.len() as u64 {
                    return Err(CliError::Input(format!(
                        "m = {m} but {} successors given",
                        succ.len()
                    )));
                }
            }
            if succ.len() as u64 > size_limit {
                return Err(padic_lift::Error::SizeLimit {
                    required: succ.len() as u128,
                    limit: size_limit as u128,
                }
                .into());
            }
            return Ok(FunctionalGraph::from_successors(succ.clone())?);
        }
        let poly = self
            .polynomial
            .as_deref()
            .ok_or_else(|| CliError::Input("spec needs successors or a polynomial".into()))?;
        let poly = parse_polynomial(poly)?;
        let m = match (self.m, self.p, self.depth) {
            (Some(m), _, _) => m,
            (None, Some(p), Some(d)) => (p as u64).checked_pow(d).ok_or(padic_lift::Error::SizeLimit {
                required: u128::MAX,
                limit: size_limit as u128,
            })?,
            _ => return Err(CliError::Input("polynomial spec needs m, or p and depth".into())),
        };
        Ok(graph_of_polynomial_mod_with_limit(&poly, m, size_limit)?)
    }
}
