#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tticad::engine::{run, CadResult, Mode, Options};
use tticad::formula::FormulaList;
use tticad::poly::{squarefree_basis_in, MultiPoly};
use tticad::problem::Problem;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// The fixture's formulae, designated as written in the file.
pub fn load(name: &str) -> FormulaList {
    let p = Problem::load(&fixture_path(name)).unwrap();
    let mut fl = p.formulas(None).unwrap();
    fl.designate(&p.manual()).unwrap();
    fl
}

pub fn run_mode(fl: &FormulaList, mode: Mode) -> CadResult {
    run(fl, mode, &Options::default()).unwrap()
}

/// Fixtures expected to succeed in every mode, quick enough for each test run.
pub const OK_FIXTURES: &[&str] = &[
    "worked_a.json",
    "worked_b.json",
    "circle.json",
    "circle_halfplane.json",
    "two_circles_disjunction.json",
];

fn random_poly(rng: &mut ChaCha8Rng, lead_y: Option<u32>) -> String {
    let mut terms = Vec::new();
    let top = lead_y.unwrap_or(3);
    if let Some(d) = lead_y {
        let c: i32 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        terms.push(format!("{c}*y^{d}"));
    }
    for b in 0..=top {
        if lead_y == Some(b) {
            continue;
        }
        for a in 0..=(3 - b) {
            if rng.gen_bool(0.35) {
                let c: i32 = rng.gen_range(-3..=3);
                if c != 0 {
                    terms.push(format!("{c}*x^{a}*y^{b}"));
                }
            }
        }
    }
    if terms.is_empty() {
        terms.push("y - x".into());
    }
    terms.join(" + ")
}

/// `{f, g}` is its own squarefree basis in `y`: both of positive degree,
/// primitive, squarefree and coprime.
fn is_basis(f: &MultiPoly, g: &MultiPoly) -> bool {
    if f.degree_in(1) == 0 || g.degree_in(1) == 0 {
        return false;
    }
    let (basis, contents) = squarefree_basis_in([f, g], 1);
    let mut want = vec![f.canonical(), g.canonical()];
    let mut got: Vec<MultiPoly> = basis.iter().map(MultiPoly::canonical).collect();
    want.sort();
    got.sort();
    contents.is_empty() && got == want
}

/// Two formulae `f_i = 0 /\ g_i < 0` in `x < y`, total degrees at most 3.
/// Each `f_i` has a constant leading coefficient in `y`, so no constraint is
/// nullified anywhere, and each pair `{f_i, g_i}` is a squarefree basis.
pub fn random_family(seed: u64) -> FormulaList {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut texts = Vec::new();
        for _ in 0..2 {
            let d = rng.gen_range(1..=3);
            let f = random_poly(&mut rng, Some(d));
            let g = random_poly(&mut rng, None);
            texts.push(format!("{f} = 0 /\\ {g} < 0"));
        }
        let o = tticad::poly::VarOrder::new(["x", "y"]).unwrap();
        let Ok(mut fl) = FormulaList::parse(&texts, &o) else {
            continue;
        };
        if fl
            .designate(&tticad::formula::EcStrategy::Manual(vec![Some(0), Some(0)]))
            .is_ok()
            && fl
                .formulas
                .iter()
                .all(|f| f.atoms.len() == 2 && is_basis(&f.atoms[0].poly, &f.atoms[1].poly))
        {
            return fl;
        }
    }
}
