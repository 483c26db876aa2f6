//! Projection operators: McCallum's `P`, the reduced operator for a single
//! equational constraint, and the truth-table invariant operator over a list
//! of constraint pairs, together with the excluded set and the ResCAD set.
//!
//! Every operator works on one level `v` (the variable being eliminated) and
//! returns a [`PolySet`] free of `v`.

use crate::poly::{discriminant, exact_div, resultant, squarefree_basis_in, MultiPoly, PolySet, Provenance, Var};

/// The polynomials `A` of one formula and its designated equational
/// constraints `E ⊆ A`.
#[derive(Clone, Debug)]
pub struct ConstraintPair {
    pub a: PolySet,
    pub e: PolySet,
}

impl ConstraintPair {
    pub fn new(a: PolySet, e: PolySet) -> Self {
        debug_assert!(e.is_subset(&a));
        ConstraintPair { a, e }
    }
}

/// A squarefree basis shared by all pairs at one level, with each pair's
/// `B_i` (basis of `prim(A_i)`) and `F_i` (basis of `prim(E_i)`) as index
/// lists into it. Sharing the basis keeps the `F_i` of different pairs either
/// identical or coprime.
#[derive(Clone, Debug)]
pub struct LevelBases {
    pub v: Var,
    pub basis: Vec<MultiPoly>,
    pub contents: PolySet,
    pub b: Vec<Vec<usize>>,
    pub f: Vec<Vec<usize>>,
}

impl LevelBases {
    pub fn new(pairs: &[ConstraintPair], v: Var) -> Self {
        let all: Vec<&MultiPoly> = pairs.iter().flat_map(|p| p.a.iter()).collect();
        let (basis, contents) = squarefree_basis_in(all.iter().copied(), v);
        let mut cset = PolySet::new();
        for c in &contents {
            cset.insert(c, Provenance::Content);
        }
        let divisors = |set: &PolySet| -> Vec<usize> {
            let mut idx: Vec<usize> = basis
                .iter()
                .enumerate()
                .filter(|(_, s)| set.iter().any(|q| exact_div(q, s).is_ok()))
                .map(|(k, _)| k)
                .collect();
            idx.sort_unstable();
            idx
        };
        let b = pairs.iter().map(|p| divisors(&p.a)).collect();
        let f = pairs.iter().map(|p| divisors(&p.e)).collect();
        LevelBases {
            v,
            basis,
            contents: cset,
            b,
            f,
        }
    }

    pub fn pairs(&self) -> usize {
        self.b.len()
    }

    pub fn b_polys(&self, i: usize) -> Vec<MultiPoly> {
        self.b[i].iter().map(|&k| self.basis[k].clone()).collect()
    }

    pub fn f_polys(&self, i: usize) -> Vec<MultiPoly> {
        self.f[i].iter().map(|&k| self.basis[k].clone()).collect()
    }

    /// Union of all `F_i`, in basis order.
    pub fn all_f(&self) -> Vec<MultiPoly> {
        let mut idx: Vec<usize> = self.f.iter().flatten().copied().collect();
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter().map(|k| self.basis[k].clone()).collect()
    }
}

/// Coefficients of `p` with respect to `v` that the projection must keep.
///
/// The leading coefficient always; when projecting onto a single variable
/// nothing else, since a univariate leading coefficient only vanishes at
/// isolated points. Otherwise further coefficients are taken in descending
/// degree until one is a nonzero constant.
pub fn necessary_coeffs(p: &MultiPoly, v: Var) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    for c in p.mvar_decompose(v) {
        if c.is_zero() {
            continue;
        }
        let stop = c.is_constant() || v == 1;
        out.push(c);
        if stop {
            break;
        }
    }
    out
}

/// McCallum's operator on a squarefree basis: necessary coefficients,
/// discriminants and pairwise resultants.
pub fn mccallum_project(basis: &[MultiPoly], v: Var) -> PolySet {
    let mut out = PolySet::new();
    for p in basis {
        for c in necessary_coeffs(p, v) {
            out.insert(&c, Provenance::Coefficient);
        }
        if let Ok(Some(d)) = discriminant(p, v) {
            out.insert(&d, Provenance::Discriminant);
        }
    }
    for (i, p) in basis.iter().enumerate() {
        for q in &basis[i + 1..] {
            insert_resultant(&mut out, p, q, v, Provenance::Resultant);
        }
    }
    out
}

fn insert_resultant(out: &mut PolySet, p: &MultiPoly, q: &MultiPoly, v: Var, prov: Provenance) {
    if p.canonical() == q.canonical() {
        return;
    }
    if let Ok(r) = resultant(p, q, v) {
        out.insert(&r, prov);
    }
}

/// The reduced projection of a pair given as bases: `P(F) ∪ {res(f, g) :
/// f ∈ F, g ∈ B \ F}`.
pub fn reduced_project(f: &[MultiPoly], b: &[MultiPoly], v: Var) -> PolySet {
    let mut out = mccallum_project(f, v);
    for p in f {
        for g in b.iter().filter(|g| !f.contains(g)) {
            insert_resultant(&mut out, p, g, v, Provenance::Resultant);
        }
    }
    out
}

/// Resultants between constraint bases of different pairs, skipping
/// identical polynomials.
pub fn cross_resultants(fs: &[Vec<MultiPoly>], v: Var) -> PolySet {
    let mut out = PolySet::new();
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            for p in &fs[i] {
                for q in &fs[j] {
                    insert_resultant(&mut out, p, q, v, Provenance::CrossResultant);
                }
            }
        }
    }
    out
}

/// Polynomials of `P(B)` that the reduced projection leaves out.
pub fn excluded_polys(f: &[MultiPoly], b: &[MultiPoly], v: Var) -> PolySet {
    mccallum_project(b, v).difference(&reduced_project(f, b, v))
}

/// One step of the sign-invariant projection applied to an arbitrary set:
/// polynomials free of `v` pass through, the rest contribute their contents
/// and `P` of their squarefree basis. Returns the basis and the projected set.
pub fn full_project(polys: &PolySet, v: Var) -> (Vec<MultiPoly>, PolySet) {
    let mut out = PolySet::new();
    let mut top = Vec::new();
    for (p, prov) in polys.entries() {
        match p.mvar() {
            Some(m) if m == v => top.push(p),
            Some(m) if m < v => {
                out.insert(p, *prov);
            }
            _ => {}
        }
    }
    let (basis, contents) = squarefree_basis_in(top, v);
    for c in &contents {
        out.insert(c, Provenance::Content);
    }
    out.extend(&mccallum_project(&basis, v));
    (basis, out)
}

/// The truth-table invariant projection `C ∪ ⋃ P_{F_i}(B_i) ∪ Res^×(F)`.
/// Polynomials of the pairs with main variable below `v` enter via `C`.
pub fn tticad_project(pairs: &[ConstraintPair], v: Var) -> (LevelBases, PolySet) {
    let lb = LevelBases::new(pairs, v);
    let mut out = lb.contents.clone();
    let mut fs = Vec::new();
    for i in 0..lb.pairs() {
        let f = lb.f_polys(i);
        out.extend(&reduced_project(&f, &lb.b_polys(i), v));
        fs.push(f);
    }
    out.extend(&cross_resultants(&fs, v));
    (lb, out)
}

/// Merges all pairs into the single pair `(⋃A_i, ⋃E_i)`.
pub fn merge_pairs(pairs: &[ConstraintPair]) -> ConstraintPair {
    let mut a = PolySet::new();
    let mut e = PolySet::new();
    for p in pairs {
        a.extend(&p.a);
        e.extend(&p.e);
    }
    ConstraintPair { a, e }
}

/// The reduced projection with the product of all constraints as the single
/// equational constraint: `C ∪ P_F(B)` for the merged pair.
pub fn ec_project(pairs: &[ConstraintPair], v: Var) -> (LevelBases, PolySet) {
    tticad_project(&[merge_pairs(pairs)], v)
}

/// Excluded polynomials of pair `i` at the level of `lb`.
pub fn pair_excluded(lb: &LevelBases, i: usize) -> PolySet {
    excluded_polys(&lb.f_polys(i), &lb.b_polys(i), lb.v)
}

/// The ResCAD set `E ∪ ⋃ {res(f, g) : f ∈ E_i, g ∈ A_i \ E_i}`.
pub fn rescad_set(pairs: &[ConstraintPair], v: Var) -> PolySet {
    let mut out = PolySet::new();
    for p in pairs {
        for f in p.e.iter() {
            out.insert(f, Provenance::Input);
        }
    }
    for p in pairs {
        for f in p.e.iter() {
            for g in p.a.iter().filter(|g| !p.e.contains(g)) {
                if f.degree_in(v) == 0 && g.degree_in(v) == 0 {
                    continue;
                }
                insert_resultant(&mut out, f, g, v, Provenance::Resultant);
            }
        }
    }
    out
}

/// Repeated sign-invariant projection of `set` from level `top` down to the
/// first variable. Entry `k` holds the polynomials with main variable `k`.
pub fn projection_levels(set: &PolySet, top: Var) -> Vec<PolySet> {
    let mut levels = vec![PolySet::new(); top + 1];
    let mut cur = set.clone();
    for v in (0..=top).rev() {
        levels[v] = cur.at_level(v);
        if v > 0 {
            cur = full_project(&cur, v).1;
        }
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarOrder};
    use std::sync::Arc;

    fn xy() -> Arc<VarOrder> {
        VarOrder::new(["x", "y"]).unwrap()
    }

    fn set(o: &Arc<VarOrder>, ps: &[&str]) -> PolySet {
        let mut s = PolySet::new();
        for p in ps {
            s.insert(&parse_poly(p, o).unwrap(), Provenance::Input);
        }
        s
    }

    fn worked(o: &Arc<VarOrder>) -> Vec<ConstraintPair> {
        let f1 = "x^2 + y^2 - 1";
        let g1 = "x*y - 1/4";
        let f2 = "(x-4)^2 + (y-1)^2 - 1";
        let g2 = "(x-4)*(y-1) - 1/4";
        vec![
            ConstraintPair::new(set(o, &[f1, g1]), set(o, &[f1])),
            ConstraintPair::new(set(o, &[f2, g2]), set(o, &[f2])),
        ]
    }

    #[test]
    fn reduced_sets_of_worked_example() {
        let o = xy();
        let pairs = worked(&o);
        let lb = LevelBases::new(&pairs, 1);
        let p1 = reduced_project(&lb.f_polys(0), &lb.b_polys(0), 1);
        assert!(p1.set_eq(&set(&o, &["x^2 - 1", "x^4 - x^2 + 1/16"])));
        let p2 = reduced_project(&lb.f_polys(1), &lb.b_polys(1), 1);
        assert!(p2.set_eq(&set(&o, &["x^2 - 8*x + 15", "x^4 - 16*x^3 + 95*x^2 - 248*x + 3841/16"])));
        let fs = vec![lb.f_polys(0), lb.f_polys(1)];
        assert!(cross_resultants(&fs, 1).set_eq(&set(&o, &["68*x^2 - 272*x + 285"])));
    }

    #[test]
    fn mccallum_examples() {
        let o = xy();
        let p = |s: &str| parse_poly(s, &o).unwrap();
        assert!(mccallum_project(&[p("x^2+y^2-1")], 1).set_eq(&set(&o, &["x^2-1"])));
        assert!(mccallum_project(&[p("y-x")], 1).is_empty());
        let pg = mccallum_project(&[p("x^2+y^2-1"), p("4*x*y-1")], 1);
        assert!(pg.contains(&p("x")));
        assert!(pg.contains(&p("16*x^4-16*x^2+1")));
    }

    #[test]
    fn excluded_union_law() {
        let o = xy();
        let pairs = worked(&o);
        let lb = LevelBases::new(&pairs, 1);
        for i in 0..2 {
            let b = lb.b_polys(i);
            let f = lb.f_polys(i);
            let ex = excluded_polys(&f, &b, 1);
            let mut union = reduced_project(&f, &b, 1);
            union.extend(&ex);
            assert!(union.set_eq(&mccallum_project(&b, 1)));
        }
        assert!(pair_excluded(&lb, 0).contains(&parse_poly("x", &o).unwrap()));
        // A = E leaves nothing out
        let e = vec![parse_poly("x^2+y^2-1", &o).unwrap()];
        assert!(excluded_polys(&e, &e, 1).is_empty());
    }

    #[test]
    fn shared_constraint_has_no_cross_resultant() {
        let o = xy();
        let f = parse_poly("x^2+y^2-1", &o).unwrap();
        assert!(cross_resultants(&[vec![f.clone()], vec![f]], 1).is_empty());
        assert!(cross_resultants(&[vec![parse_poly("y-x", &o).unwrap()]], 1).is_empty());
    }

    #[test]
    fn rescad_set_of_worked_example() {
        let o = xy();
        let pairs = worked(&o);
        let r = rescad_set(&pairs, 1);
        let p = |s: &str| parse_poly(s, &o).unwrap();
        let mut want = set(&o, &["x^2 + y^2 - 1", "(x-4)^2 + (y-1)^2 - 1"]);
        want.insert(
            &resultant(&p("x^2+y^2-1"), &p("4*x*y-1"), 1).unwrap(),
            Provenance::Resultant,
        );
        want.insert(
            &resultant(&p("(x-4)^2+(y-1)^2-1"), &p("4*(x-4)*(y-1)-1"), 1).unwrap(),
            Provenance::Resultant,
        );
        assert!(r.set_eq(&want));
        let (_, pr) = full_project(&r, 1);
        let (_, pt) = tticad_project(&pairs, 1);
        assert!(pr.set_eq(&pt));
    }

    #[test]
    fn projection_never_contains_eliminated_variable() {
        let o = VarOrder::new(["x", "y", "z"]).unwrap();
        let s = set(&o, &["x*z^2 + y*z - 1", "z - x*y", "y^2 + x - 3"]);
        let (_, out) = full_project(&s, 2);
        assert!(out.iter().all(|p| !p.involves(2)));
        let levels = projection_levels(&s, 2);
        assert_eq!(levels.len(), 3);
        assert!(levels[0].iter().all(|p| p.mvar() == Some(0)));
    }
}
