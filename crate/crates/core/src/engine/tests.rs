use num_rational::BigRational;

use super::lift::nullified;
use super::*;
use crate::formula::EcStrategy;
use crate::poly::{parse_poly, Provenance};
use crate::realalg::{AlgNum, Sign};

fn set(texts: &[&str], o: &Arc<VarOrder>) -> PolySet {
    let mut s = PolySet::new();
    for t in texts {
        s.insert(&parse_poly(t, o).unwrap(), Provenance::Input);
    }
    s
}

fn designated(vars: &[&str], texts: &[&str]) -> FormulaList {
    let o = VarOrder::new(vars.iter().copied()).unwrap();
    let mut fl = FormulaList::parse(texts, &o).unwrap();
    fl.designate(&EcStrategy::Manual(vec![])).unwrap();
    fl
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn cadw_of_one_quadratic() {
    let o = VarOrder::new(["x"]).unwrap();
    let r = cadw(1, &o, &set(&["x^2 - 2"], &o), &Options::default()).unwrap();
    assert!(r.ok());
    let signs: Vec<Sign> = r.cells.iter().map(|c| c.signs[0].1).collect();
    use Sign::*;
    assert_eq!(signs, [Pos, Zero, Neg, Zero, Pos]);
    let dims: Vec<usize> = r.cells.iter().map(Cell::dim).collect();
    assert_eq!(dims, [1, 0, 1, 0, 1]);
}

#[test]
fn cadw_tolerates_nullification_at_a_point() {
    // the coefficient x of z*x vanishes only over x = 0
    let o = VarOrder::new(["x", "z"]).unwrap();
    let r = cadw(2, &o, &set(&["z*x"], &o), &Options::default()).unwrap();
    assert_eq!(r.status, Status::Ok);
    assert_eq!(r.cad.levels[1].len(), 3);
    assert_eq!(r.cells.len(), 9);
}

#[test]
fn cadw_fails_when_not_well_oriented() {
    // x*w + y vanishes identically over the line x = y = 0
    let o = VarOrder::new(["x", "y", "z", "w"]).unwrap();
    let r = cadw(4, &o, &set(&["x*w + y"], &o), &Options::default()).unwrap();
    assert_eq!(r.status, Status::FailPNotWo);
    let f = r.failure.unwrap();
    assert_eq!(f.cell, [2, 2, 1]);
    assert!(r.cells.is_empty());
}

#[test]
fn nullification_examples() {
    let o = VarOrder::new(["x", "y", "z"]).unwrap();
    let f = parse_poly("z*x + z*y", &o).unwrap();
    assert!(nullified(&f, &mut SamplePoint::from_rationals(&[q(0), q(0)])));
    let c = parse_poly("x^2 + y^2 - 1", &o).unwrap();
    assert!(!nullified(&c, &mut SamplePoint::from_rationals(&[q(0)])));
    let g = parse_poly("z*(x^2 + y^2)", &o).unwrap();
    assert!(nullified(&g, &mut SamplePoint::from_rationals(&[q(0), q(0)])));
    assert!(!nullified(&g, &mut SamplePoint::from_rationals(&[q(1), q(0)])));
}

#[test]
fn lemma1_examples() {
    let o = VarOrder::new(["x", "y"]).unwrap();
    assert!(lemma1_applicable(&PolySet::new(), &[3]));
    let e = set(&["x^2 - 1"], &o);
    assert!(lemma1_applicable(&e, &[2]));
    assert!(!lemma1_applicable(&e, &[3]));
    let exy = set(&["x - y"], &o);
    assert!(!lemma1_applicable(&exy, &[2, 1]));
    assert!(lemma1_applicable(&exy, &[2, 2]));
}

#[test]
fn tticad_fails_on_nullified_constraint() {
    // (x - y)(z + 1) vanishes over the plane x = y; x and y stay excluded
    let fl = designated(&["x", "y", "z"], &["(x - y)*(z + 1) = 0 /\\ x*z + y < 0"]);
    let r = tticad(&fl, &Options::default()).unwrap();
    assert_eq!(r.status, Status::FailEcNullified);
    let f = r.failure.unwrap();
    assert_eq!(f.poly, "z*y - z*x + y - x");
    assert!(f.cell.iter().any(|i| i % 2 == 1));
}

#[test]
fn tticad_lifts_with_full_basis_when_excluded_polys_are_fixed() {
    // nullified over x = 0, where the only excluded polynomial x is constant
    let fl = designated(&["x", "y", "z"], &["x*(z + 1) = 0 /\\ x*z + 1 < 0"]);
    let r = tticad(&fl, &Options::default()).unwrap();
    assert_eq!(r.status, Status::Ok);
    let over_zero: Vec<&CadNode> = r.cad.levels[2].iter().filter(|c| c.index[0] == 2).collect();
    assert!(over_zero.iter().all(|c| c.lifting.len() == 2));
    assert!(crate::check::verify(&r, 300, 5).passed());
}

#[test]
fn constraint_below_top_variable() {
    let fl = designated(&["x", "y"], &["x - 1 = 0 /\\ y^2 - x < 0"]);
    let r = tticad(&fl, &Options::default()).unwrap();
    assert_eq!(r.status, Status::Ok);
    assert!(crate::check::verify(&r, 300, 9).passed());
}

#[test]
fn not_well_oriented_projection_fails_tticad() {
    let fl = designated(&["x", "y", "z", "w", "v"], &["v = 0 /\\ v + x*w + y > 0"]);
    let r = tticad(&fl, &Options::default()).unwrap();
    assert_eq!(r.status, Status::FailPNotWo);
}

#[test]
fn single_formula_is_no_larger_than_sign_invariant() {
    let fl = designated(&["x", "y"], &["x^2 + y^2 - 1 = 0 /\\ x*y - 1/4 < 0"]);
    let t = tticad(&fl, &Options::default()).unwrap();
    let full = run(&fl, Mode::Full, &Options::default()).unwrap();
    let e = ec_cad(&fl, &Options::default()).unwrap();
    assert!(t.cells.len() <= e.cells.len());
    assert!(e.cells.len() <= full.cells.len());
}

#[test]
fn all_equations_make_ec_product_and_tticad_agree() {
    let fl = designated(&["x", "y"], &["x^2 + y^2 - 1 = 0", "x - y = 0"]);
    let t = tticad(&fl, &Options::default()).unwrap();
    let e = ec_cad(&fl, &Options::default()).unwrap();
    assert_eq!(t.cells.len(), e.cells.len());
}

#[test]
fn univariate_formulae() {
    let fl = designated(&["x"], &["x^2 - 2 = 0", "x - 1 = 0 /\\ x^3 > 0"]);
    for (mode, cells) in [
        (Mode::Full, 9),
        (Mode::EcProduct, 9),
        (Mode::Tticad, 7),
        (Mode::Rescad, 7),
    ] {
        let r = run(&fl, mode, &Options::default()).unwrap();
        assert!(r.ok(), "{mode:?}");
        assert_eq!(r.cells.len(), cells, "{mode:?}");
        assert!(crate::check::verify(&r, 100, 2).passed());
    }
}

#[test]
fn stacks_have_odd_length_and_increasing_sections() {
    let fl = designated(&["x", "y"], &["x^2 + y^2 - 1 = 0 /\\ x*y - 1/4 < 0"]);
    let r = run(&fl, Mode::Full, &Options::default()).unwrap();
    for level in 0..r.cad.depth() {
        for node in &r.cad.levels[level] {
            let kids = &r.cad.levels[level + 1][node.children.clone()];
            assert_eq!(kids.len() % 2, 1);
            for (j, k) in kids.iter().enumerate() {
                assert_eq!(k.index[..level], node.index[..]);
                assert_eq!(k.index[level] as usize, j + 1);
            }
            let secs: Vec<&AlgNum> = kids
                .iter()
                .skip(1)
                .step_by(2)
                .map(|k| &k.sample.coords()[level])
                .collect();
            for w in secs.windows(2) {
                assert_eq!(w[0].cmp_exact(w[1]), std::cmp::Ordering::Less);
            }
        }
    }
}

#[test]
fn timeout_is_reported() {
    let fl = designated(&["x", "y"], &["x^2 + y^2 - 1 = 0"]);
    let opts = Options {
        deadline: Some(Instant::now() - std::time::Duration::from_secs(1)),
    };
    assert!(matches!(run(&fl, Mode::Tticad, &opts), Err(EngineError::Timeout)));
}
