//! Random-point verification of a finished decomposition.
//!
//! Points are drawn level by level: each coordinate is either a random
//! rational near the stack over the cell located so far, or (for variety
//! points) one of the delineating roots there. The containing cell is found
//! by comparing the coordinate with the delineating sections of the stack,
//! and the formulae (and, for sign-invariant results, the input signs) are
//! evaluated directly at the point and compared with the cell's record.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::lift::merged_roots;
use crate::engine::{CadResult, Mode};
use crate::realalg::{AlgNum, SamplePoint};

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub trials: usize,
    pub variety_trials: usize,
    pub failures: Vec<CheckFailure>,
    /// Top-level cells that contained at least one test point.
    pub cells_hit: usize,
    pub total_cells: usize,
    pub signs_checked: bool,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckFailure {
    pub point: Vec<String>,
    pub cell: Vec<u32>,
    pub what: String,
}

/// Checks `trials` random rational points and `trials / 4` points snapped to
/// delineating sections. Truth values are compared whenever formulae are
/// present; signs of the tracked polynomials only for sign-invariant results.
/// A failed construction yields an empty report.
pub fn verify(result: &CadResult, trials: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport {
        total_cells: result.cells.len(),
        signs_checked: result.mode == Mode::Full,
        ..CheckReport::default()
    };
    if !result.ok() || trials == 0 {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hit = vec![false; result.cells.len()];
    let variety = trials / 4;
    for t in 0..trials + variety {
        let snap = t >= trials;
        match locate_random(result, &mut rng, snap) {
            Ok((point, cells)) => {
                for &c in &cells {
                    hit[c] = true;
                    if let Some(f) = check_cell(result, &point, c) {
                        report.failures.push(f);
                    }
                }
            }
            Err(f) => report.failures.push(f),
        }
    }
    report.trials = trials;
    report.variety_trials = variety;
    report.cells_hit = hit.iter().filter(|&&h| h).count();
    report
}

fn coord_strings(p: &SamplePoint) -> Vec<String> {
    p.coords().iter().map(|a| a.to_string()).collect()
}

/// Draws one point and returns it with the top-level cells that may contain
/// it (one cell, or every cell between two adjacent delineating sections).
fn locate_random(
    result: &CadResult,
    rng: &mut ChaCha8Rng,
    snap: bool,
) -> Result<(SamplePoint, Vec<usize>), CheckFailure> {
    let cad = &result.cad;
    let n = cad.order.len();
    let mut point = SamplePoint::origin();
    let mut node = 0usize;
    for v in 0..n {
        let parent = &cad.levels[v][node];
        let children = parent.children.clone();
        let roots = merged_roots(&mut point, &parent.delineating);
        let dpos: Vec<usize> = children
            .clone()
            .filter(|&c| cad.levels[v + 1][c].delineating_section)
            .collect();
        if dpos.len() != roots.len() {
            return Err(CheckFailure {
                point: coord_strings(&point),
                cell: parent.index.clone(),
                what: format!(
                    "stack has {} delineating sections but {} roots at the point",
                    dpos.len(),
                    roots.len()
                ),
            });
        }
        let (x, next) = if snap && !roots.is_empty() && rng.gen_bool(0.5) {
            let r = &roots[rng.gen_range(0..roots.len())];
            (r.value.clone(), point.extend(r))
        } else {
            let lo = first_coord(result, v, children.start);
            let hi = first_coord(result, v, children.end - 1);
            let x = random_rational(rng, &lo, &hi);
            let next = point.extend_rational(&x);
            (AlgNum::Rational(x), next)
        };
        point = next;
        let group = match roots.binary_search_by(|r| r.value.cmp_exact(&x)) {
            Ok(j) => vec![dpos[j]],
            Err(j) => {
                let start = if j == 0 { children.start } else { dpos[j - 1] + 1 };
                let end = if j == dpos.len() { children.end } else { dpos[j] };
                (start..end).collect()
            }
        };
        if v + 1 == n {
            return Ok((point, group));
        }
        if group.len() != 1 {
            return Err(CheckFailure {
                point: coord_strings(&point),
                cell: parent.index.clone(),
                what: format!("point falls in {} candidate cells below the top level", group.len()),
            });
        }
        node = group[0];
    }
    unreachable!("the loop returns at the top level")
}

/// Coordinate `v` of the sample of cell `c` at level `v + 1`, widened to a
/// rational bound (sector samples at the ends of a stack are rational).
fn first_coord(result: &CadResult, v: usize, c: usize) -> BigRational {
    let a = &result.cad.levels[v + 1][c].sample.coords()[v];
    match a.as_rational() {
        Some(r) => r.clone(),
        None => a.interval().0,
    }
}

/// A random rational in `[lo - 2, hi + 2]` with denominator at most 16.
fn random_rational(rng: &mut ChaCha8Rng, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let (lo, hi) = (lo - &two, hi + &two);
    let den: i64 = rng.gen_range(1..=16);
    let d = BigRational::from_integer(den.into());
    let a = (&lo * &d).floor().to_integer();
    let b = (&hi * &d).ceil().to_integer();
    let span = &b - &a;
    let off: u64 = rng.gen_range(0..=u64::try_from(span).unwrap_or(u64::MAX - 1));
    BigRational::new(a + BigInt::from(off), BigInt::from(den))
}

fn check_cell(result: &CadResult, point: &SamplePoint, c: usize) -> Option<CheckFailure> {
    let cell = &result.cells[c];
    let mut p = point.clone();
    let fail = |what: String| CheckFailure {
        point: coord_strings(point),
        cell: cell.index.clone(),
        what,
    };
    if let Some(fl) = &result.formulas {
        for (i, f) in fl.formulas.iter().enumerate() {
            let direct = f.eval_by(|q| Some(p.sign(q))).expect("signs are always available");
            if cell.truths.get(i) != Some(&direct) {
                return Some(fail(format!(
                    "formula {} is {} at the point but {:?} in the cell",
                    i,
                    direct,
                    cell.truths.get(i)
                )));
            }
        }
    }
    if result.mode == Mode::Full {
        for (q, s) in &cell.signs {
            let direct = p.sign(q);
            if direct != *s {
                return Some(fail(format!(
                    "sign of {} is {:?} at the point but {:?} in the cell",
                    q, direct, s
                )));
            }
        }
    }
    None
}
