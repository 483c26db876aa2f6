//! Real algebraic numbers given by a squarefree integer polynomial and an
//! isolating interval.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::isolate::{bisect, isolate_real_roots, RootInterval};
use super::upoly::{descartes, zgcd, zprimitive, zsign_at, zsqfree, ZPoly};
use super::Sign;

#[derive(Clone, Debug)]
pub enum AlgNum {
    Rational(BigRational),
    /// The unique root of `poly` in the open interval `(lo, hi)`; `poly` is
    /// squarefree, primitive, and changes sign strictly between the endpoints.
    Root {
        poly: Arc<ZPoly>,
        lo: BigRational,
        hi: BigRational,
    },
}

impl AlgNum {
    pub fn from_integer(n: i64) -> Self {
        AlgNum::Rational(BigRational::from_integer(n.into()))
    }

    /// Builds a number from a polynomial and an interval produced by
    /// [`isolate_real_roots`] on that polynomial (or its squarefree part).
    pub fn from_interval(poly: &[BigInt], iv: &RootInterval) -> Self {
        if iv.is_exact() {
            return AlgNum::Rational(iv.lo.clone());
        }
        let q = zsqfree(poly);
        if q.len() == 2 {
            return AlgNum::Rational(BigRational::new(-q[0].clone(), q[1].clone()));
        }
        AlgNum::Root {
            poly: Arc::new(q),
            lo: iv.lo.clone(),
            hi: iv.hi.clone(),
        }
    }

    /// All real roots of `p`, ascending.
    pub fn roots_of(p: &[BigInt]) -> Vec<AlgNum> {
        let q = zsqfree(p);
        isolate_real_roots(&q)
            .iter()
            .map(|iv| AlgNum::from_interval(&q, iv))
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgNum::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            AlgNum::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Defining polynomial (linear for rationals), primitive, positive lc.
    pub fn defpoly(&self) -> ZPoly {
        match self {
            AlgNum::Rational(r) => vec![-r.numer().clone(), r.denom().clone()],
            AlgNum::Root { poly, .. } => (**poly).clone(),
        }
    }

    /// Closed interval `[lo, hi]` containing the number.
    pub fn interval(&self) -> (BigRational, BigRational) {
        match self {
            AlgNum::Rational(r) => (r.clone(), r.clone()),
            AlgNum::Root { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    /// Halves the isolating interval; may turn the number into a rational.
    pub fn refine(&mut self) {
        if let AlgNum::Root { poly, lo, hi } = self {
            let mut iv = RootInterval {
                lo: lo.clone(),
                hi: hi.clone(),
            };
            bisect(poly, &mut iv);
            if iv.is_exact() {
                *self = AlgNum::Rational(iv.lo);
            } else {
                *lo = iv.lo;
                *hi = iv.hi;
            }
        }
    }

    /// Refines until the interval width is at most `eps`.
    pub fn refine_to(&mut self, eps: &BigRational) {
        while let AlgNum::Root { lo, hi, .. } = self {
            if &(&*hi - &*lo) <= eps {
                break;
            }
            self.refine();
        }
    }

    /// Replaces the defining polynomial by the factor `g` of it, which must
    /// vanish at this number.
    fn with_poly(&self, g: ZPoly) -> AlgNum {
        match self {
            AlgNum::Root { lo, hi, .. } => {
                let g = zprimitive(&g);
                if g.len() == 2 {
                    AlgNum::Rational(BigRational::new(-g[0].clone(), g[1].clone()))
                } else {
                    AlgNum::Root {
                        poly: Arc::new(g),
                        lo: lo.clone(),
                        hi: hi.clone(),
                    }
                }
            }
            r => r.clone(),
        }
    }

    /// True when `g` (a divisor of the defining polynomial) vanishes here.
    fn root_of_divisor(&self, g: &[BigInt]) -> bool {
        match self {
            AlgNum::Rational(r) => zsign_at(g, r) == Sign::Zero,
            AlgNum::Root { lo, hi, .. } => g.len() > 1 && zsign_at(g, lo) * zsign_at(g, hi) == Sign::Neg,
        }
    }

    /// Sign of the integer polynomial `p` at this number.
    pub fn sign_of(&self, p: &[BigInt]) -> Sign {
        match self {
            AlgNum::Rational(r) => zsign_at(p, r),
            AlgNum::Root { poly, .. } => {
                if p.iter().all(Zero::is_zero) {
                    return Sign::Zero;
                }
                let g = zgcd(poly, p);
                if self.root_of_divisor(&g) {
                    return Sign::Zero;
                }
                let mut a = self.clone();
                loop {
                    match &a {
                        AlgNum::Rational(r) => return zsign_at(p, r),
                        AlgNum::Root { lo, hi, .. } => {
                            let sl = zsign_at(p, lo);
                            if sl != Sign::Zero && sl == zsign_at(p, hi) && descartes(p, lo, hi) == 0 {
                                return sl;
                            }
                        }
                    }
                    a.refine();
                }
            }
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &AlgNum) -> Ordering {
        match (self, other) {
            (AlgNum::Rational(a), AlgNum::Rational(b)) => a.cmp(b),
            (AlgNum::Rational(_), AlgNum::Root { .. }) => other.cmp_exact(self).reverse(),
            (AlgNum::Root { .. }, AlgNum::Rational(r)) => {
                let mut a = self.clone();
                loop {
                    match &a {
                        AlgNum::Rational(x) => return x.cmp(r),
                        AlgNum::Root { poly, lo, hi } => {
                            if r <= lo {
                                return Ordering::Greater;
                            }
                            if r >= hi {
                                return Ordering::Less;
                            }
                            if zsign_at(poly, r) == Sign::Zero {
                                return Ordering::Equal;
                            }
                        }
                    }
                    a.refine();
                }
            }
            (AlgNum::Root { poly: pa, .. }, AlgNum::Root { poly: pb, .. }) => {
                let g = zgcd(pa, pb);
                let same = g.len() > 1 && self.root_of_divisor(&g) && other.root_of_divisor(&g);
                let (mut a, mut b) = if same {
                    (self.with_poly(g.clone()), other.with_poly(g.clone()))
                } else {
                    (self.clone(), other.clone())
                };
                loop {
                    if a.is_rational() || b.is_rational() {
                        return a.cmp_exact(&b);
                    }
                    let (alo, ahi) = a.interval();
                    let (blo, bhi) = b.interval();
                    if ahi <= blo {
                        return Ordering::Less;
                    }
                    if bhi <= alo {
                        return Ordering::Greater;
                    }
                    if same {
                        // both are roots of g; g has a single root in each
                        // interval, so a root of g in the overlap is both
                        let lo = alo.clone().max(blo.clone());
                        let hi = ahi.clone().min(bhi.clone());
                        if zsign_at(&g, &lo) * zsign_at(&g, &hi) == Sign::Neg {
                            return Ordering::Equal;
                        }
                    }
                    a.refine();
                    b.refine();
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut a = self.clone();
        let eps = BigRational::new(1.into(), BigInt::from(1u64 << 52));
        loop {
            match &a {
                AlgNum::Rational(r) => return r.to_f64().unwrap_or(f64::NAN),
                AlgNum::Root { lo, hi, .. } => {
                    let w = hi - lo;
                    let scale = lo.abs().max(hi.abs()).max(BigRational::from_integer(1.into()));
                    if w <= &eps * &scale {
                        let mid: BigRational = (lo + hi) / BigRational::from_integer(2.into());
                        return mid.to_f64().unwrap_or(f64::NAN);
                    }
                }
            }
            a.refine();
        }
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgNum::Rational(r) => write!(f, "{}", r),
            AlgNum::Root { .. } => write!(f, "~{:.6}", self.to_f64()),
        }
    }
}
