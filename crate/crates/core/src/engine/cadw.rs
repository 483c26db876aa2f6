//! Sign-invariant CAD by repeated McCallum projection and lifting, with
//! dynamic detection of well-orientedness.

use std::sync::Arc;

use crate::poly::{squarefree_basis_in, MultiPoly, PolySet, VarOrder};
use crate::projection::full_project;

use super::lift::{delineating_poly, nullified};
use super::{annotate, Cad, CadResult, EngineError, Failure, Mode, Options, ProjectionLevels, Status};

/// Projection and lifting for `a` over the first `r` variables. Returns the
/// decomposition of `ℝʳ`, the projection levels and, when a basis element is
/// nullified on a positive-dimensional cell, the failure.
pub(crate) fn build(
    r: usize,
    order: &Arc<VarOrder>,
    a: &PolySet,
    opts: &Options,
) -> Result<(Cad, ProjectionLevels, Option<Failure>), EngineError> {
    let mut proj = ProjectionLevels {
        sets: vec![PolySet::new(); r],
        bases: vec![Vec::new(); r],
    };
    let mut cur = a.below(r);
    for v in (1..r).rev() {
        opts.check()?;
        proj.sets[v] = cur.at_level(v);
        let (basis, lower) = full_project(&cur, v);
        proj.bases[v] = basis;
        cur = lower;
    }
    proj.sets[0] = cur.at_level(0);
    proj.bases[0] = squarefree_basis_in(proj.sets[0].iter(), 0).0;

    let mut cad = Cad::new(order);
    let b0 = proj.bases[0].clone();
    cad.lift(0, 0, b0.clone(), b0);
    for v in 1..r {
        for k in 0..cad.levels[v].len() {
            opts.check()?;
            let node = &mut cad.levels[v][k];
            let dim = node.dim();
            let mut lifting: Vec<MultiPoly> = Vec::new();
            let mut substitutes = Vec::new();
            for h in &proj.bases[v] {
                if !nullified(h, &mut node.sample) {
                    lifting.push(h.clone());
                } else if dim > 0 {
                    let failure = Failure {
                        poly: h.to_string(),
                        cell: node.index.clone(),
                        reason: "projection polynomial nullified on a positive-dimensional cell".into(),
                    };
                    return Ok((cad, proj, Some(failure)));
                } else if let Some(d) = delineating_poly(h, &mut node.sample) {
                    substitutes.push(d);
                }
            }
            for d in substitutes {
                if !lifting.contains(&d) {
                    lifting.push(d);
                }
            }
            cad.lift(v, k, lifting.clone(), lifting);
        }
    }
    Ok((cad, proj, None))
}

/// Sign-invariant decomposition of `ℝʳ` for `a`, with the signs of `a`
/// recorded in every cell. Fails with `FAIL_P_NOT_WO` when the input is not
/// well oriented.
pub fn cadw(r: usize, order: &Arc<VarOrder>, a: &PolySet, opts: &Options) -> Result<CadResult, EngineError> {
    let (cad, projection, failure) = build(r, order, a, opts)?;
    if let Some(f) = failure {
        return Ok(CadResult::failed(
            Mode::Full,
            Status::FailPNotWo,
            f,
            cad,
            projection,
            None,
        ));
    }
    let tracked: Vec<MultiPoly> = a.below(r).iter().cloned().collect();
    let cells = annotate(&cad, &tracked, None);
    Ok(CadResult {
        mode: Mode::Full,
        status: Status::Ok,
        failure: None,
        cad,
        cells,
        projection,
        tracked,
        formulas: None,
    })
}
