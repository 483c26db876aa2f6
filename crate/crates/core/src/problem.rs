//! Problem files: variables, formulae with optional designations, mode and
//! options, as JSON.
//!
//! ```json
//! { "vars": ["x", "y"],
//!   "formulae": [ { "text": "x^2 + y^2 - 1 = 0 /\\ x*y > 0", "ec": 0 } ],
//!   "mode": "tticad",
//!   "options": { "ec": "manual", "seed": 1 } }
//! ```
//!
//! `vars` lists the variables lowest first, so `["x", "y"]` projects `y`
//! away first.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Mode;
use crate::formula::{EcStrategy, Formula, FormulaError, FormulaList};
use crate::poly::{PolyError, VarOrder};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot read {path}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed problem file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("variable order must be a permutation of {0:?}")]
    Order(Vec<String>),
    #[error("{0}")]
    Option(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFormula {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ec: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    /// `manual` (the default) or `sotd`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Seconds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timeout: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub vars: Vec<String>,
    pub formulae: Vec<ProblemFormula>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default)]
    pub options: ProblemOptions,
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self, ProblemError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ProblemError> {
        let text = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn mode(&self) -> Result<Option<Mode>, ProblemError> {
        self.mode
            .as_deref()
            .map(|m| m.parse().map_err(ProblemError::Option))
            .transpose()
    }

    pub fn ec_strategy(&self) -> Result<EcStrategy, ProblemError> {
        match self.options.ec.as_deref() {
            None | Some("manual") => Ok(self.manual()),
            Some("sotd") => Ok(EcStrategy::Sotd),
            Some(s) => Err(ProblemError::Option(format!("unknown designation strategy `{s}`"))),
        }
    }

    /// The designations written in the file.
    pub fn manual(&self) -> EcStrategy {
        EcStrategy::Manual(self.formulae.iter().map(|f| f.ec).collect())
    }

    /// Parses the formulae under `order` (lowest first), or under `vars` when
    /// no order is given. Designations are left to the caller.
    pub fn formulas(&self, order: Option<&[String]>) -> Result<FormulaList, ProblemError> {
        let names = match order {
            None => self.vars.clone(),
            Some(o) => {
                let mut a = o.to_vec();
                let mut b = self.vars.clone();
                a.sort();
                b.sort();
                if a != b {
                    return Err(ProblemError::Order(self.vars.clone()));
                }
                o.to_vec()
            }
        };
        let vo = VarOrder::new(names)?;
        let texts: Vec<&str> = self.formulae.iter().map(|f| f.text.as_str()).collect();
        Ok(FormulaList::parse(&texts, &vo)?)
    }
}

/// Parses one formula text per entry and splits the first formula into its
/// conjuncts, for enumerating ways to regroup them.
pub fn conjuncts_of(problem: &Problem, order: Option<&[String]>) -> Result<Vec<Formula>, ProblemError> {
    let fl = problem.formulas(order)?;
    Ok(fl.formulas.iter().flat_map(crate::formula::conjuncts).collect())
}
