//! Sample points with algebraic coordinates.
//!
//! A point `(α₁,…,α_k)` is stored together with a primitive element `γ` of
//! `ℚ(α₁,…,α_k)` and expressions `αᵢ = Aᵢ(γ)`. Evaluating a polynomial at the
//! point therefore happens in a single simple extension, where zero tests are
//! exact (see [`Field`]).

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{linear_subresultant, resultant, MultiPoly, VarOrder};

use super::algnum::AlgNum;
use super::field::{Elt, Field, KPoly};
use super::isolate::{isolate_real_roots, RootInterval};
use super::upoly::*;
use super::Sign;

/// When `pending` holds a polynomial, the last coordinate is a root of it
/// over the field of the earlier ones and has no expression in the field
/// yet. Finding a primitive element for it is the dearest step of lifting,
/// and cells of the top level never need one, so it waits until something
/// lifts over the point.
#[derive(Clone, Debug)]
pub struct SamplePoint {
    coords: Vec<AlgNum>,
    field: Field,
    exprs: Vec<Elt>,
    pending: Option<KPoly>,
}

/// A real root of a polynomial specialised at a sample point, together with
/// the squarefree univariate polynomial over the point's field it came from.
#[derive(Clone, Debug)]
pub struct LiftRoot {
    pub value: AlgNum,
    kpoly: KPoly,
}

#[derive(Clone, Debug)]
pub enum LiftRoots {
    /// The polynomial vanishes identically over the point.
    Nullified,
    Roots(Vec<LiftRoot>),
}

impl Default for SamplePoint {
    fn default() -> Self {
        Self::origin()
    }
}

impl SamplePoint {
    /// The point in `ℝ⁰`.
    pub fn origin() -> Self {
        SamplePoint {
            coords: Vec::new(),
            field: Field::rationals(),
            exprs: Vec::new(),
            pending: None,
        }
    }

    pub fn from_rationals(xs: &[BigRational]) -> Self {
        SamplePoint {
            coords: xs.iter().cloned().map(AlgNum::Rational).collect(),
            field: Field::rationals(),
            exprs: xs.iter().map(Field::constant).collect(),
            pending: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[AlgNum] {
        &self.coords
    }

    /// Degree of the field holding the coordinates that have expressions.
    pub fn field_degree(&self) -> usize {
        self.field.degree()
    }

    pub fn prefix(&self, k: usize) -> SamplePoint {
        if k == self.dim() {
            return self.clone();
        }
        SamplePoint {
            coords: self.coords[..k].to_vec(),
            field: self.field.clone(),
            exprs: self.exprs[..k].to_vec(),
            pending: None,
        }
    }

    /// The point without its pending coordinate.
    fn base(&self) -> SamplePoint {
        SamplePoint {
            coords: self.coords[..self.exprs.len()].to_vec(),
            field: self.field.clone(),
            exprs: self.exprs.clone(),
            pending: None,
        }
    }

    /// Gives the pending coordinate its expression in a primitive element.
    fn materialize(&mut self) {
        if let Some(kpoly) = self.pending.take() {
            let root = LiftRoot {
                value: self.coords.last().unwrap().clone(),
                kpoly,
            };
            self.coords.pop();
            *self = self.primitive_extend(&root);
        }
    }

    /// Substitutes the coordinates into `p` and returns the coefficients in
    /// the next variable `x_{k+1}`. Variables above `x_{k+1}` must not occur.
    fn specialize(&self, p: &MultiPoly) -> KPoly {
        debug_assert!(self.pending.is_none());
        let k = self.dim();
        let d = if k < p.nvars() { p.degree_in(k) as usize } else { 0 };
        let mut coeffs: KPoly = vec![Vec::new(); d + 1];
        let mut cache: HashMap<(usize, u32), Elt> = HashMap::new();
        for (e, c) in p.terms() {
            debug_assert!(e.iter().skip(k + 1).all(|&x| x == 0));
            let mut val = Field::constant(&BigRational::from_integer(c.clone()));
            for (i, &ei) in e.iter().enumerate().take(k) {
                if ei == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, ei))
                    .or_insert_with(|| self.field.pow(&self.exprs[i], ei))
                    .clone();
                val = self.field.mul(&val, &pw);
            }
            let j = if k < e.len() { e[k] as usize } else { 0 };
            coeffs[j] = qadd(&coeffs[j], &val);
        }
        coeffs
    }

    /// Exact sign of `p` at the point; `p` may only involve `x₁..x_k`.
    pub fn sign(&mut self, p: &MultiPoly) -> Sign {
        if self.pending.is_some() {
            return self.pending_sign(p);
        }
        if !self.field.is_rational() {
            if let Some(s) = self.interval_sign(p) {
                return s;
            }
        }
        let spec = self.specialize(p);
        debug_assert!(spec.len() <= 1);
        match spec.first() {
            None => Sign::Zero,
            Some(e) => self.field.sign(e),
        }
    }

    /// Sign of `p` from interval arithmetic on the coordinates' isolating
    /// intervals, refined twice before giving up. Arithmetic in a large
    /// extension is far dearer, and most signs are not zero.
    fn interval_sign(&mut self, p: &MultiPoly) -> Option<Sign> {
        let zero = BigRational::zero();
        for round in 0..3 {
            let boxes: Vec<(BigRational, BigRational)> = self.coords.iter().map(AlgNum::interval).collect();
            let (lo, hi) = eval_box(p, &boxes);
            if lo > zero {
                return Some(Sign::Pos);
            }
            if hi < zero {
                return Some(Sign::Neg);
            }
            if round < 2 {
                for c in &mut self.coords {
                    let (a, b) = c.interval();
                    c.refine_to(&((b - a) / BigRational::from_integer(BigInt::from(1u32 << 16))));
                }
            }
        }
        None
    }

    /// Sign at a point whose last coordinate `β` is pending, a root of the
    /// squarefree `q` over the field `K` of the others. Zero is decided by
    /// `gcd_K(p(…, y), q)`, which vanishes at `β` exactly when it changes
    /// sign across the isolating interval of `β`; a nonzero sign is then
    /// settled by refining intervals.
    fn pending_sign(&mut self, p: &MultiPoly) -> Sign {
        if let Some(s) = self.interval_sign(p) {
            return s;
        }
        let mut base = self.base();
        let mut h = base.specialize(p);
        base.field.ktrim(&mut h);
        let q = self.pending.as_ref().unwrap();
        let beta = self.coords.last().unwrap();
        let zero = match h.len() {
            0 => true,
            1 => {
                let s = base.field.sign(&h[0]);
                self.field = base.field;
                return s;
            }
            _ => match beta.as_rational() {
                Some(r) => {
                    let v = base.field.keval_rational(&h, r);
                    base.field.is_zero(&v)
                }
                None => {
                    let g = base.field.kgcd(&h, q);
                    let (lo, hi) = beta.interval();
                    g.len() > 1 && {
                        let a = base.field.keval_rational(&g, &lo);
                        let b = base.field.keval_rational(&g, &hi);
                        base.field.sign(&a) * base.field.sign(&b) == Sign::Neg
                    }
                }
            },
        };
        self.field = base.field;
        if zero {
            return Sign::Zero;
        }
        loop {
            if let Some(s) = self.interval_sign(p) {
                return s;
            }
        }
    }

    /// True when `p` specialised at the point is the zero polynomial in
    /// `x_{k+1}`.
    pub fn nullifies(&mut self, p: &MultiPoly) -> bool {
        self.materialize();
        let mut q = self.specialize(p);
        self.field.ktrim(&mut q);
        q.is_empty()
    }

    /// Real roots in `x_{k+1}` of `p` specialised at the point, ascending.
    pub fn roots(&mut self, p: &MultiPoly) -> LiftRoots {
        self.materialize();
        let mut q = self.specialize(p);
        self.field.ktrim(&mut q);
        if q.is_empty() {
            return LiftRoots::Nullified;
        }
        if q.len() == 1 {
            return LiftRoots::Roots(Vec::new());
        }
        if self.field.is_rational() {
            let r = self.field.generator();
            let r = r.as_rational().unwrap().clone();
            let z = zsqfree(&z_from_q(&q.iter().map(|c| qeval(c, &r)).collect::<Vec<_>>()));
            let kpoly: KPoly = z
                .iter()
                .map(|c| Field::constant(&BigRational::from_integer(c.clone())))
                .collect();
            let roots = AlgNum::roots_of(&z)
                .into_iter()
                .map(|value| LiftRoot {
                    value,
                    kpoly: kpoly.clone(),
                })
                .collect();
            return LiftRoots::Roots(roots);
        }
        let qs = self.field.ksqfree(&q);
        let n = zsqfree(&norm(self.field.modulus(), &qs));
        let mut out = Vec::new();
        for iv in isolate_real_roots(&n) {
            if iv.is_exact() {
                let v = self.field.keval_rational(&qs, &iv.lo);
                if self.field.is_zero(&v) {
                    out.push(LiftRoot {
                        value: AlgNum::Rational(iv.lo.clone()),
                        kpoly: qs.clone(),
                    });
                }
            } else {
                let a = self.field.keval_rational(&qs, &iv.lo);
                let b = self.field.keval_rational(&qs, &iv.hi);
                if self.field.sign(&a) * self.field.sign(&b) == Sign::Neg {
                    out.push(LiftRoot {
                        value: AlgNum::from_interval(&n, &iv),
                        kpoly: qs.clone(),
                    });
                }
            }
        }
        LiftRoots::Roots(out)
    }

    /// Appends a rational coordinate.
    pub fn extend_rational(&self, r: &BigRational) -> SamplePoint {
        let mut s = self.clone();
        s.materialize();
        s.coords.push(AlgNum::Rational(r.clone()));
        s.exprs.push(Field::constant(r));
        s
    }

    /// Appends a root found by [`SamplePoint::roots`] at this point.
    pub fn extend(&self, root: &LiftRoot) -> SamplePoint {
        if let AlgNum::Rational(r) = &root.value {
            return self.extend_rational(r);
        }
        let mut s = self.clone();
        s.materialize();
        if s.field.is_rational() {
            return s.primitive_extend(root);
        }
        s.coords.push(root.value.clone());
        s.pending = Some(root.kpoly.clone());
        s
    }

    /// Extends by an irrational root, computing a primitive element for the
    /// enlarged field.
    fn primitive_extend(&self, root: &LiftRoot) -> SamplePoint {
        if self.field.is_rational() {
            let g = self.field.gen_elt();
            let consts: Vec<Elt> = self
                .exprs
                .iter()
                .map(|a| self.field.reduce(&compose(&self.field, a, &g)))
                .collect();
            let field = Field::from_algnum(&root.value);
            let mut exprs = consts;
            exprs.push(field.gen_elt());
            let mut coords = self.coords.clone();
            coords.push(root.value.clone());
            return SamplePoint {
                coords,
                field,
                exprs,
                pending: None,
            };
        }
        let mut s: i64 = 1;
        loop {
            if let Some(p) = self.try_primitive(root, s) {
                return p;
            }
            s = if s > 0 { -s } else { -s + 1 };
        }
    }

    fn try_primitive(&self, root: &LiftRoot, s: i64) -> Option<SamplePoint> {
        let order = VarOrder::new(["t", "z"]).unwrap();
        let qb = kpoly_to_bivariate(&root.kpoly, &order);
        let t = MultiPoly::var(&order, 0);
        let z = MultiPoly::var(&order, 1);
        let shift = &z - &t.scale(&BigInt::from(s));
        let sp = qb.compose(1, &shift);
        let m = MultiPoly::from_univariate(&order, 0, self.field.modulus());
        let d = resultant(&m, &sp, 0).ok()?.to_univariate(1);
        let dsq = zsqfree(&d);
        let ivs = isolate_real_roots(&dsq);
        let delta = locate_sum(&ivs, &dsq, self.field.clone(), root.value.clone(), s)?;
        let mut e = Field::from_algnum(&delta);
        // gcd over ℚ(δ)[t] of M(t) and S(t, δ) is linear exactly when the
        // degree-one subresultant keeps its degree at δ
        let lin = linear_subresultant(&m, &sp, 0)?.coeffs_in(0);
        let c0 = e.reduce(&q_from_z(&lin[0].to_univariate(1)));
        let c1 = e.reduce(&q_from_z(&lin[1].to_univariate(1)));
        if e.is_zero(&c1) {
            return None;
        }
        let inv = e.inv(&c1);
        let gamma = e.mul(&qneg(&c0), &inv);
        let beta = e.sub(&e.gen_elt(), &qscale(&gamma, &BigRational::from_integer(s.into())));
        let mut exprs: Vec<Elt> = self.exprs.iter().map(|a| e.reduce(&compose(&e, a, &gamma))).collect();
        exprs.push(e.reduce(&beta));
        let mut coords = self.coords.clone();
        coords.push(root.value.clone());
        Some(SamplePoint {
            coords,
            field: e,
            exprs,
            pending: None,
        })
    }
}

fn imul(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    let prods = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = prods.iter().min().unwrap().clone();
    let hi = prods.iter().max().unwrap().clone();
    (lo, hi)
}

/// An interval containing every value of `p` over the box.
fn eval_box(p: &MultiPoly, boxes: &[(BigRational, BigRational)]) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for (e, c) in p.terms() {
        let c = BigRational::from_integer(c.clone());
        let mut t = (c.clone(), c);
        for (i, &ei) in e.iter().enumerate() {
            for _ in 0..ei {
                t = imul(&t, &boxes[i]);
            }
        }
        lo += t.0;
        hi += t.1;
    }
    (lo, hi)
}

/// `a(g)` computed in the field.
fn compose(f: &Field, a: &Elt, g: &Elt) -> Elt {
    let mut acc: Elt = Vec::new();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, g), &Field::constant(c));
    }
    acc
}

/// Clears denominators of a polynomial over `ℚ(γ)` into `ℤ[t, y]`.
fn kpoly_to_bivariate(p: &KPoly, order: &Arc<VarOrder>) -> MultiPoly {
    let mut l = BigInt::one();
    for c in p {
        for x in c {
            l = l.lcm(x.denom());
        }
    }
    let mut terms = Vec::new();
    for (j, c) in p.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            if !x.is_zero() {
                terms.push((vec![i as u32, j as u32], x.numer() * (&l / x.denom())));
            }
        }
    }
    MultiPoly::from_terms(order, terms)
}

/// `res_t(M(t), Q(t, y))`, a univariate polynomial vanishing at every root of
/// `Q(γ, y)`.
fn norm(m: &[BigInt], q: &KPoly) -> ZPoly {
    let order = VarOrder::new(["t", "y"]).unwrap();
    let qb = kpoly_to_bivariate(q, &order);
    let mm = MultiPoly::from_univariate(&order, 0, m);
    if qb.degree_in(0) == 0 {
        return qb.to_univariate(1);
    }
    resultant(&mm, &qb, 0)
        .expect("modulus has positive degree")
        .to_univariate(1)
}

/// Identifies `δ = β + s·γ` among the roots of `dsq` by refining the
/// enclosures of `β` and `γ` until exactly one isolating interval meets the
/// enclosure of the sum.
fn locate_sum(ivs: &[RootInterval], dsq: &[BigInt], mut gamma: Field, mut beta: AlgNum, s: i64) -> Option<AlgNum> {
    let sr = BigRational::from_integer(s.into());
    let mut ivs: Vec<RootInterval> = ivs.to_vec();
    for _ in 0..400 {
        let (glo, ghi) = {
            let (a, b) = gamma.interval();
            if gamma.is_rational() {
                let r = gamma.generator().as_rational().unwrap().clone();
                (r.clone(), r)
            } else {
                (a.clone(), b.clone())
            }
        };
        let (blo, bhi) = beta.interval();
        let (slo, shi) = if s > 0 {
            (&blo + &sr * &glo, &bhi + &sr * &ghi)
        } else {
            (&blo + &sr * &ghi, &bhi + &sr * &glo)
        };
        let hits: Vec<usize> = ivs
            .iter()
            .enumerate()
            .filter(|(_, iv)| {
                if iv.is_exact() {
                    slo <= iv.lo && iv.lo <= shi
                } else {
                    iv.lo < shi && slo < iv.hi
                }
            })
            .map(|(i, _)| i)
            .collect();
        if hits.len() == 1 {
            return Some(AlgNum::from_interval(dsq, &ivs[hits[0]]));
        }
        gamma.refine();
        beta.refine();
        for iv in ivs.iter_mut() {
            super::isolate::bisect(dsq, iv);
        }
    }
    None
}
