//! CAD construction: the sign-invariant CADW subroutine, the truth-table
//! invariant algorithm with its failure paths, the single implicit-constraint
//! variant and the ResCAD route, plus truth annotation of the cells.

mod cadw;
pub mod lift;
mod tticad;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{FormulaError, FormulaList};
use crate::poly::{MultiPoly, PolySet, VarOrder};
use crate::realalg::{SamplePoint, Sign};

pub use cadw::cadw;
pub use tticad::{ec_cad, lemma1_applicable, rescad, tticad};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Full,
    EcProduct,
    Tticad,
    Rescad,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::EcProduct => "ec-product",
            Mode::Tticad => "tticad",
            Mode::Rescad => "rescad",
        }
    }

    pub fn needs_designation(self) -> bool {
        self != Mode::Full
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "full" => Mode::Full,
            "ec-product" => Mode::EcProduct,
            "tticad" => Mode::Tticad,
            "rescad" => Mode::Rescad,
            _ => return Err(format!("unknown mode `{s}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    FailPNotWo,
    FailEcNullified,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "OK",
            Status::FailPNotWo => "FAIL_P_NOT_WO",
            Status::FailEcNullified => "FAIL_EC_NULLIFIED",
        })
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("time limit exceeded")]
    Timeout,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub deadline: Option<Instant>,
}

impl Options {
    pub(crate) fn check(&self) -> Result<(), EngineError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(EngineError::Timeout),
            _ => Ok(()),
        }
    }
}

/// A node of the decomposition tree. Level `k` holds the cells of `ℝᵏ`;
/// level 0 is the single point of `ℝ⁰`.
#[derive(Clone, Debug)]
pub struct CadNode {
    pub index: Vec<u32>,
    pub sample: SamplePoint,
    pub parent: usize,
    pub children: Range<usize>,
    /// Polynomials whose roots made the stack over this cell.
    pub lifting: Vec<MultiPoly>,
    /// The subset of `lifting` guaranteed delineable over this cell; point
    /// location uses only their sections.
    pub delineating: Vec<MultiPoly>,
    /// This cell is a section of a delineating polynomial of its parent.
    pub delineating_section: bool,
}

impl CadNode {
    pub fn dim(&self) -> usize {
        self.index.iter().filter(|&&i| i % 2 == 1).count()
    }

    fn root() -> Self {
        CadNode {
            index: Vec::new(),
            sample: SamplePoint::origin(),
            parent: 0,
            children: 0..0,
            lifting: Vec::new(),
            delineating: Vec::new(),
            delineating_section: false,
        }
    }
}

/// A cylindrical decomposition stored level by level.
#[derive(Clone, Debug)]
pub struct Cad {
    pub order: Arc<VarOrder>,
    pub levels: Vec<Vec<CadNode>>,
}

impl Cad {
    pub(crate) fn new(order: &Arc<VarOrder>) -> Self {
        Cad {
            order: order.clone(),
            levels: vec![vec![CadNode::root()]],
        }
    }

    /// Dimension of the cells at the deepest level built so far.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn cells(&self) -> &[CadNode] {
        self.levels.last().unwrap()
    }

    /// Builds the stack over cell `k` of level `depth` and appends its cells
    /// to level `depth + 1`. Stacks must be built in cell order.
    pub(crate) fn lift(&mut self, depth: usize, k: usize, lifting: Vec<MultiPoly>, delineating: Vec<MultiPoly>) {
        if self.levels.len() == depth + 1 {
            self.levels.push(Vec::new());
        }
        let flags: Vec<bool> = lifting.iter().map(|h| delineating.contains(h)).collect();
        let node = &mut self.levels[depth][k];
        let stack = lift::build_stack(&mut node.sample, &lifting, &flags);
        node.lifting = lifting;
        node.delineating = delineating;
        let index = node.index.clone();
        let start = self.levels[depth + 1].len();
        for (j, c) in stack.into_iter().enumerate() {
            let mut idx = index.clone();
            idx.push(j as u32 + 1);
            self.levels[depth + 1].push(CadNode {
                index: idx,
                sample: c.sample,
                parent: k,
                children: 0..0,
                lifting: Vec::new(),
                delineating: Vec::new(),
                delineating_section: c.delineating,
            });
        }
        let end = self.levels[depth + 1].len();
        self.levels[depth][k].children = start..end;
    }

    /// Number of sections in the stack over the single point of `ℝ⁰`.
    pub fn base_roots(&self) -> usize {
        self.levels
            .get(1)
            .map_or(0, |l| l.iter().filter(|c| c.index[0] % 2 == 0).count())
    }
}

/// One cell of the final decomposition with its annotations.
#[derive(Clone, Debug)]
pub struct Cell {
    pub index: Vec<u32>,
    pub sample: SamplePoint,
    pub signs: Vec<(MultiPoly, Sign)>,
    pub truths: Vec<bool>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.index.iter().filter(|&&i| i % 2 == 1).count()
    }

    pub fn sign_of(&self, p: &MultiPoly) -> Option<Sign> {
        self.signs.iter().find(|(q, _)| q == p).map(|(_, s)| *s)
    }
}

/// Where a construction stopped.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub poly: String,
    pub cell: Vec<u32>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelStats {
    pub var: String,
    /// Polynomials with this main variable in the projection set.
    pub projection_polys: usize,
    /// Squarefree basis elements lifted at this level.
    pub basis: usize,
    pub cells: usize,
    pub sections: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stats {
    pub schema: &'static str,
    pub mode: &'static str,
    pub status: Status,
    pub vars: Vec<String>,
    pub levels: Vec<LevelStats>,
    pub base_roots: usize,
    pub base_cells: usize,
    pub total_cells: usize,
    pub true_cells: Vec<usize>,
}

pub const STATS_SCHEMA: &str = "tticad-stats/1";

/// Projection sets recorded during a run: entry `v` holds the polynomials
/// with main variable `v` that were handed to the basis computation there.
#[derive(Clone, Debug, Default)]
pub struct ProjectionLevels {
    pub sets: Vec<PolySet>,
    pub bases: Vec<Vec<MultiPoly>>,
}

#[derive(Clone, Debug)]
pub struct CadResult {
    pub mode: Mode,
    pub status: Status,
    pub failure: Option<Failure>,
    pub cad: Cad,
    pub cells: Vec<Cell>,
    pub projection: ProjectionLevels,
    /// Polynomials whose signs are recorded in every cell.
    pub tracked: Vec<MultiPoly>,
    pub formulas: Option<FormulaList>,
}

impl CadResult {
    pub fn ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn stats(&self) -> Stats {
        let n = self.cad.order.len();
        let levels = (0..n)
            .map(|v| {
                let cells = self.cad.levels.get(v + 1).map_or(0, Vec::len);
                let sections = self
                    .cad
                    .levels
                    .get(v + 1)
                    .map_or(0, |l| l.iter().filter(|c| c.index[v] % 2 == 0).count());
                LevelStats {
                    var: self.cad.order.name(v).to_string(),
                    projection_polys: self.projection.sets.get(v).map_or(0, PolySet::len),
                    basis: self.projection.bases.get(v).map_or(0, Vec::len),
                    cells,
                    sections,
                }
            })
            .collect();
        let t = self.formulas.as_ref().map_or(0, FormulaList::len);
        let true_cells = (0..t)
            .map(|i| self.cells.iter().filter(|c| c.truths[i]).count())
            .collect();
        Stats {
            schema: STATS_SCHEMA,
            mode: self.mode.name(),
            status: self.status,
            vars: self.cad.order.names().to_vec(),
            levels,
            base_roots: self.cad.base_roots(),
            base_cells: self.cad.levels.get(1).map_or(0, Vec::len),
            total_cells: self.cells.len(),
            true_cells,
        }
    }

    pub(crate) fn failed(
        mode: Mode,
        status: Status,
        failure: Failure,
        cad: Cad,
        projection: ProjectionLevels,
        formulas: Option<FormulaList>,
    ) -> Self {
        CadResult {
            mode,
            status,
            failure: Some(failure),
            cad,
            cells: Vec::new(),
            projection,
            tracked: Vec::new(),
            formulas,
        }
    }
}

/// Signs of `tracked` and truth values of the formulae at every top cell.
pub fn annotate(cad: &Cad, tracked: &[MultiPoly], formulas: Option<&FormulaList>) -> Vec<Cell> {
    cad.cells()
        .iter()
        .map(|node| {
            let mut s = node.sample.clone();
            let signs: Vec<(MultiPoly, Sign)> = tracked.iter().map(|p| (p.clone(), s.sign(p))).collect();
            let map: BTreeMap<&MultiPoly, Sign> = signs.iter().map(|(p, s)| (p, *s)).collect();
            let truths = formulas.map_or_else(Vec::new, |fl| {
                fl.formulas
                    .iter()
                    .map(|f| {
                        f.eval_by(|p| map.get(p).copied())
                            .expect("every atom polynomial is tracked")
                    })
                    .collect()
            });
            Cell {
                index: node.index.clone(),
                sample: node.sample.clone(),
                signs,
                truths,
            }
        })
        .collect()
}

/// Builds the decomposition for `phi` in the given mode. Modes other than
/// `Full` require every formula to carry a designated constraint.
pub fn run(phi: &FormulaList, mode: Mode, opts: &Options) -> Result<CadResult, EngineError> {
    match mode {
        Mode::Full => {
            let a = phi.polys();
            let mut r = cadw(phi.order.len(), &phi.order, &a, opts)?;
            r.mode = Mode::Full;
            if r.ok() {
                r.cells = annotate(&r.cad, &r.tracked, Some(phi));
            }
            r.formulas = Some(phi.clone());
            Ok(r)
        }
        Mode::Tticad => tticad(phi, opts),
        Mode::EcProduct => ec_cad(phi, opts),
        Mode::Rescad => rescad(phi, opts),
    }
}

#[cfg(test)]
mod tests;
