//! The truth-table invariant algorithm, the single implicit-constraint
//! variant and the ResCAD route.

use crate::formula::FormulaList;
use crate::poly::{MultiPoly, PolySet};
use crate::projection::{merge_pairs, pair_excluded, rescad_set, tticad_project, LevelBases};

use super::cadw::build;
use super::lift::nullified;
use super::{annotate, Cad, CadResult, EngineError, Failure, Mode, Options, ProjectionLevels, Status};

/// True when every excluded polynomial is constant on the cell with this
/// index: each of its variables is fixed, which holds for `x_v` when the
/// cell's first `v + 1` index entries are all sections.
pub fn lemma1_applicable(excluded: &PolySet, index: &[u32]) -> bool {
    excluded.iter().all(|p| {
        p.variables()
            .iter()
            .all(|&v| index.len() > v && index[..=v].iter().all(|i| i % 2 == 0))
    })
}

fn union_polys(lb: &LevelBases, sets: &[&Vec<usize>]) -> Vec<MultiPoly> {
    let mut idx: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    idx.sort_unstable();
    idx.dedup();
    idx.into_iter().map(|k| lb.basis[k].clone()).collect()
}

/// What to lift with over one base cell.
enum Plan {
    Lift {
        lifting: Vec<MultiPoly>,
        delineating: Vec<MultiPoly>,
    },
    Fail(Failure),
}

/// Shared skeleton: the base decomposition of `ℝⁿ⁻¹` from `proj`, then one
/// stack per base cell as decided by `plan`.
fn two_phase<F>(
    phi: &FormulaList,
    mode: Mode,
    lb: &LevelBases,
    proj: &PolySet,
    opts: &Options,
    mut plan: F,
) -> Result<CadResult, EngineError>
where
    F: FnMut(&mut super::CadNode) -> Plan,
{
    let n = phi.order.len();
    let (mut cad, mut projection, failure) = if n == 1 {
        (Cad::new(&phi.order), ProjectionLevels::default(), None)
    } else {
        build(n - 1, &phi.order, proj, opts)?
    };
    projection.sets.push(phi.polys().at_level(n - 1));
    projection.bases.push(lb.basis.clone());
    if let Some(f) = failure {
        return Ok(CadResult::failed(
            mode,
            Status::FailPNotWo,
            f,
            cad,
            projection,
            Some(phi.clone()),
        ));
    }
    for k in 0..cad.levels[n - 1].len() {
        opts.check()?;
        match plan(&mut cad.levels[n - 1][k]) {
            Plan::Lift { lifting, delineating } => cad.lift(n - 1, k, lifting, delineating),
            Plan::Fail(f) => {
                return Ok(CadResult::failed(
                    mode,
                    Status::FailEcNullified,
                    f,
                    cad,
                    projection,
                    Some(phi.clone()),
                ))
            }
        }
    }
    let tracked: Vec<MultiPoly> = phi.polys().iter().cloned().collect();
    let cells = annotate(&cad, &tracked, Some(phi));
    Ok(CadResult {
        mode,
        status: Status::Ok,
        failure: None,
        cad,
        cells,
        projection,
        tracked,
        formulas: Some(phi.clone()),
    })
}

fn nullified_failure(f: &MultiPoly, index: &[u32]) -> Failure {
    Failure {
        poly: f.to_string(),
        cell: index.to_vec(),
        reason: "equational constraint nullified on a positive-dimensional cell with nonconstant excluded polynomials"
            .into(),
    }
}

/// Truth-table invariant CAD for the designated formulae. Lifting over a base
/// cell uses the constraint bases `F_i`, replaced by the full `B_i` for a
/// constraint nullified on the cell; on a positive-dimensional cell that is
/// only allowed when the excluded polynomials of the pair are constant there.
pub fn tticad(phi: &FormulaList, opts: &Options) -> Result<CadResult, EngineError> {
    let pairs = phi.pairs()?;
    let n = phi.order.len();
    let (lb, proj) = tticad_project(&pairs, n - 1);
    let excluded: Vec<PolySet> = (0..pairs.len()).map(|i| pair_excluded(&lb, i)).collect();
    let ecs: Vec<MultiPoly> = phi.formulas.iter().map(|f| f.ec_poly().unwrap().clone()).collect();
    two_phase(phi, Mode::Tticad, &lb, &proj, opts, |node| {
        let dim = node.dim();
        let mut sets = Vec::new();
        for (i, f) in ecs.iter().enumerate() {
            if nullified(f, &mut node.sample) {
                if dim > 0 && !lemma1_applicable(&excluded[i], &node.index) {
                    return Plan::Fail(nullified_failure(f, &node.index));
                }
                sets.push(&lb.b[i]);
            } else {
                sets.push(&lb.f[i]);
            }
        }
        let l = union_polys(&lb, &sets);
        Plan::Lift {
            lifting: l.clone(),
            delineating: l,
        }
    })
}

/// CAD with the product of all designated constraints as one equational
/// constraint. Stacks are built from every basis element of the merged
/// polynomials; only the constraint sections are guaranteed delineable, so
/// they alone serve for point location unless the constraint is nullified.
pub fn ec_cad(phi: &FormulaList, opts: &Options) -> Result<CadResult, EngineError> {
    let merged = merge_pairs(&phi.pairs()?);
    let n = phi.order.len();
    let (lb, proj) = tticad_project(std::slice::from_ref(&merged), n - 1);
    let excluded = pair_excluded(&lb, 0);
    let ecs: Vec<MultiPoly> = merged.e.iter().cloned().collect();
    let all = lb.basis.clone();
    let f = lb.f_polys(0);
    two_phase(phi, Mode::EcProduct, &lb, &proj, opts, |node| {
        let dim = node.dim();
        let mut null = false;
        for e in &ecs {
            if nullified(e, &mut node.sample) {
                if dim > 0 && !lemma1_applicable(&excluded, &node.index) {
                    return Plan::Fail(nullified_failure(e, &node.index));
                }
                null = true;
            }
        }
        let delineating = if null || n == 1 { all.clone() } else { f.clone() };
        Plan::Lift {
            lifting: all.clone(),
            delineating,
        }
    })
}

/// Sign-invariant CAD of the ResCAD set, annotated with the formulae. Errors
/// when a designated constraint is nullified anywhere, since the result is
/// then not guaranteed truth-table invariant.
pub fn rescad(phi: &FormulaList, opts: &Options) -> Result<CadResult, EngineError> {
    let pairs = phi.pairs()?;
    let n = phi.order.len();
    let r = rescad_set(&pairs, n - 1);
    let (mut cad, projection, failure) = build(n, &phi.order, &r, opts)?;
    if let Some(f) = failure {
        return Ok(CadResult::failed(
            Mode::Rescad,
            Status::FailPNotWo,
            f,
            cad,
            projection,
            Some(phi.clone()),
        ));
    }
    for node in cad.levels[n - 1].iter_mut() {
        for f in phi.formulas.iter().filter_map(|f| f.ec_poly()) {
            if nullified(f, &mut node.sample) {
                return Err(EngineError::Precondition(format!(
                    "constraint `{}` is nullified over cell {:?}",
                    f, node.index
                )));
            }
        }
    }
    let tracked: Vec<MultiPoly> = phi.polys().iter().cloned().collect();
    let cells = annotate(&cad, &tracked, Some(phi));
    Ok(CadResult {
        mode: Mode::Rescad,
        status: Status::Ok,
        failure: None,
        cad,
        cells,
        projection,
        tracked,
        formulas: Some(phi.clone()),
    })
}
