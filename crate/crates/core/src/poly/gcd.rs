//! Exact division, pseudo-remainders, contents and gcds in `ℤ[x₁,…,xₙ]`.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MultiPoly, PolyError, Var};

/// Exact quotient `a / b`. Fails with [`PolyError::InexactDivision`] when `b`
/// does not divide `a` in `ℤ[x₁,…,xₙ]`.
pub fn exact_div(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if b.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if a.is_zero() {
        return Ok(MultiPoly::zero(a.order()));
    }
    let v = match b.mvar() {
        None => {
            let k = b.constant_value().unwrap();
            if a.terms().any(|(_, c)| !(c % &k).is_zero()) {
                return Err(PolyError::InexactDivision);
            }
            return Ok(a.div_integer(&k));
        }
        Some(v) => v,
    };
    let db = b.degree_in(v);
    let lb = b.leading_coeff_in(v);
    let mut q = MultiPoly::zero(a.order());
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            return Err(PolyError::InexactDivision);
        }
        let lr = r.leading_coeff_in(v);
        let qc = exact_div(&lr, &lb)?.shift(v, dr - db);
        r = &r - &(&qc * b);
        q = &q + &qc;
    }
    Ok(q)
}

/// Pseudo-remainder of `a` by `b` in `v`: `lc(b)^(deg a − deg b + 1)·a − q·b`.
/// Returns `a` unchanged when `deg_v a < deg_v b`.
pub fn prem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    if a.is_zero() || da < db {
        return a.clone();
    }
    let lb = b.leading_coeff_in(v);
    let mut r = a.clone();
    let mut e = da - db + 1;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.leading_coeff_in(v).shift(v, dr - db);
        r = &(&r * &lb) - &(&lr * b);
        e -= 1;
    }
    &r * &lb.pow(e)
}

/// Content with respect to `v` (gcd of the coefficients, normalised to a
/// positive leading coefficient) and the corresponding primitive part.
pub fn content_prim(p: &MultiPoly, v: Var) -> (MultiPoly, MultiPoly) {
    if p.is_zero() {
        return (MultiPoly::zero(p.order()), MultiPoly::zero(p.order()));
    }
    let mut c = MultiPoly::zero(p.order());
    for k in p.coeffs_in(v).iter().rev() {
        if k.is_zero() {
            continue;
        }
        c = gcd(&c, k);
        if c.is_constant() && c.constant_value().unwrap().is_one() {
            break;
        }
    }
    let prim = exact_div(p, &c).expect("content divides");
    (c, prim)
}

fn prim_part(p: &MultiPoly, v: Var) -> MultiPoly {
    content_prim(p, v).1
}

/// Greatest common divisor, normalised to canonical sign. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.canonical_sign();
    }
    if b.is_zero() {
        return a.canonical_sign();
    }
    let v = match (a.mvar(), b.mvar()) {
        (None, None) => {
            let g = a.constant_value().unwrap().gcd(&b.constant_value().unwrap());
            return MultiPoly::constant(a.order(), g);
        }
        (x, y) => x.max(y).unwrap(),
    };
    let (ca, pa) = content_prim(a, v);
    let (cb, pb) = content_prim(b, v);
    let c = gcd(&ca, &cb);
    if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 {
        return c;
    }
    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = loop {
        let r = prem(&r0, &r1, v);
        if r.is_zero() {
            break r1;
        }
        if r.degree_in(v) == 0 {
            break MultiPoly::one(a.order());
        }
        r0 = r1;
        r1 = prim_part(&r, v);
    };
    (&c * &prim_part(&g, v)).canonical_sign()
}

impl MultiPoly {
    /// Same polynomial or its negation, whichever has a positive leading term.
    pub fn canonical_sign(&self) -> MultiPoly {
        use num_traits::Signed;
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}
