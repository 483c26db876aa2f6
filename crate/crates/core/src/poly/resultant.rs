//! Resultants via the subresultant pseudo-remainder sequence, and discriminants.

use super::gcd::{exact_div, prem};
use super::{MultiPoly, PolyError, Var};

/// `res_v(a, b)`. Errors when both operands have degree 0 in `v`.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, v: Var) -> Result<MultiPoly, PolyError> {
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    if da == 0 && db == 0 {
        return Err(PolyError::UndefinedResultant(a.order().name(v).to_string()));
    }
    let order = a.order();
    if a.is_zero() || b.is_zero() {
        return Ok(MultiPoly::zero(order));
    }
    if db == 0 {
        return Ok(b.pow(da));
    }
    if da == 0 {
        return Ok(a.pow(db));
    }
    let mut negate = false;
    let (mut pa, mut pb) = (a.clone(), b.clone());
    if da < db {
        std::mem::swap(&mut pa, &mut pb);
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
    }
    let mut g = MultiPoly::one(order);
    let mut h = MultiPoly::one(order);
    loop {
        let d_a = pa.degree_in(v);
        let d_b = pb.degree_in(v);
        let delta = d_a - d_b;
        if d_a % 2 == 1 && d_b % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&pa, &pb, v);
        pa = pb;
        if r.is_zero() {
            return Ok(MultiPoly::zero(order));
        }
        pb = exact_div(&r, &(&g * &h.pow(delta)))?;
        g = pa.leading_coeff_in(v);
        if delta > 0 {
            h = exact_div(&g.pow(delta), &h.pow(delta - 1))?;
        }
        if pb.degree_in(v) == 0 {
            let d = pa.degree_in(v);
            let res = exact_div(&pb.pow(d), &h.pow(d - 1))?;
            return Ok(if negate { -res } else { res });
        }
    }
}

/// The element of degree one in `v` of the subresultant PRS of `a` and `b`,
/// if the sequence has one. It is a multiple of the first subresultant by a
/// power of its own leading coefficient over a power of earlier ones, so at
/// any point where its leading coefficient is nonzero it is proportional to
/// the specialised first subresultant.
pub fn linear_subresultant(a: &MultiPoly, b: &MultiPoly, v: Var) -> Option<MultiPoly> {
    let (mut pa, mut pb) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if pb.is_zero() || pb.degree_in(v) == 0 {
        return None;
    }
    if pb.degree_in(v) == 1 {
        return Some(pb);
    }
    let order = a.order();
    let mut g = MultiPoly::one(order);
    let mut h = MultiPoly::one(order);
    loop {
        let delta = pa.degree_in(v) - pb.degree_in(v);
        let r = prem(&pa, &pb, v);
        pa = pb;
        if r.is_zero() {
            return None;
        }
        pb = exact_div(&r, &(&g * &h.pow(delta))).ok()?;
        g = pa.leading_coeff_in(v);
        if delta > 0 {
            h = exact_div(&g.pow(delta), &h.pow(delta - 1)).ok()?;
        }
        match pb.degree_in(v) {
            0 => return None,
            1 => return Some(pb),
            _ => {}
        }
    }
}

/// `disc_v(p) = (−1)^(d(d−1)/2) · res_v(p, p′) / lc_v(p)`. Returns `None`
/// when `deg_v p < 2`, where the discriminant is not part of any projection.
pub fn discriminant(p: &MultiPoly, v: Var) -> Result<Option<MultiPoly>, PolyError> {
    let d = p.degree_in(v);
    if d < 2 {
        return Ok(None);
    }
    let r = resultant(p, &p.derivative(v), v)?;
    let q = exact_div(&r, &p.leading_coeff_in(v))?;
    let sign_flip = (d as u64 * (d as u64 - 1) / 2) % 2 == 1;
    Ok(Some(if sign_flip { -q } else { q }))
}
