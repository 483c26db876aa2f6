//! Squarefree decomposition and pairwise-coprime squarefree bases.

use super::gcd::{content_prim, exact_div, gcd};
use super::{MultiPoly, Var};

/// Yun's algorithm: the nonconstant squarefree factors `s₁, s₂, …` of the
/// primitive part of `p` with respect to `v`, where `prim(p) = ∏ sᵢ^i` up to
/// sign. Factors of the content (which are free of `v`) are not returned.
pub fn squarefree_factors(p: &MultiPoly, v: Var) -> Vec<MultiPoly> {
    let (_, f) = content_prim(p, v);
    if f.degree_in(v) == 0 {
        return Vec::new();
    }
    let df = f.derivative(v);
    let a0 = gcd(&f, &df);
    let mut b = exact_div(&f, &a0).expect("gcd divides");
    let c = exact_div(&df, &a0).expect("gcd divides");
    let mut d = &c - &b.derivative(v);
    let mut out = Vec::new();
    while b.degree_in(v) > 0 {
        let a = gcd(&b, &d);
        b = exact_div(&b, &a).expect("gcd divides");
        let c = exact_div(&d, &a).expect("gcd divides");
        d = &c - &b.derivative(v);
        if a.degree_in(v) > 0 {
            out.push(a.canonical());
        }
    }
    out
}

/// A pairwise-coprime list of canonical squarefree polynomials of positive
/// degree in their main variables whose products generate the same zero sets
/// as the inputs. Contents are split off and refined as polynomials in their
/// own main variables. Output order is deterministic for a given input order.
pub fn squarefree_basis<'a, I>(polys: I) -> Vec<MultiPoly>
where
    I: IntoIterator<Item = &'a MultiPoly>,
{
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut pending: Vec<MultiPoly> = polys.into_iter().cloned().collect();
    pending.reverse();
    while let Some(p) = pending.pop() {
        let v = match p.mvar() {
            None => continue,
            Some(v) => v,
        };
        let (c, _) = content_prim(&p, v);
        if c.mvar().is_some() {
            pending.push(c);
        }
        for s in squarefree_factors(&p, v) {
            insert_coprime(&mut basis, s);
        }
    }
    basis
}

/// Finest squarefree basis at one level: the primitive parts (with respect
/// to `v`) of the inputs that have positive degree in `v` are split into
/// pairwise-coprime squarefree factors. Also returns the nonconstant contents,
/// which for inputs free of `v` are the inputs themselves.
pub fn squarefree_basis_in<'a, I>(polys: I, v: Var) -> (Vec<MultiPoly>, Vec<MultiPoly>)
where
    I: IntoIterator<Item = &'a MultiPoly>,
{
    let mut basis = Vec::new();
    let mut contents = Vec::new();
    for p in polys {
        let (c, q) = content_prim(p, v);
        if !c.is_constant() {
            contents.push(c.canonical());
        }
        if q.degree_in(v) > 0 {
            for s in squarefree_factors(&q, v) {
                insert_coprime(&mut basis, s);
            }
        }
    }
    (basis, contents)
}

fn insert_coprime(basis: &mut Vec<MultiPoly>, mut x: MultiPoly) {
    let mut i = 0;
    while i < basis.len() && !x.is_constant() {
        let g = gcd(&x, &basis[i]);
        if g.is_constant() {
            i += 1;
            continue;
        }
        let rest = exact_div(&basis[i], &g).expect("gcd divides").canonical();
        x = exact_div(&x, &g).expect("gcd divides");
        basis[i] = g.canonical();
        i += 1;
        if !rest.is_constant() {
            basis.insert(i, rest);
            i += 1;
        }
    }
    if !x.is_constant() {
        basis.push(x.canonical());
    }
}
