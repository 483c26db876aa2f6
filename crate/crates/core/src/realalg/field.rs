//! Arithmetic in `ℚ(γ)` for a real algebraic `γ`, and in `ℚ(γ)[y]`.
//!
//! `γ` is given by a squarefree (not necessarily irreducible) polynomial `M`
//! and an isolating interval. Elements are polynomials in `t` reduced modulo
//! `M`. Zero tests split `M`: for an element `a`, `g = gcd(M, a)` either
//! vanishes at `γ` (then `a(γ) = 0` and `M := g`) or not (then `M := M/g`,
//! after which `a` is invertible). Either way the computation stays exact
//! for `γ` itself.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algnum::AlgNum;
use super::isolate::{bisect, RootInterval};
use super::upoly::*;
use super::Sign;

#[derive(Clone, Debug)]
pub struct Field {
    m: ZPoly,
    lo: BigRational,
    hi: BigRational,
}

/// Element of `ℚ(γ)`, a polynomial in `t`.
pub type Elt = QPoly;
/// Polynomial in `y` over `ℚ(γ)`, ascending coefficients.
pub type KPoly = Vec<Elt>;

/// `a = z / d` with `z` integral and `d` the least common denominator.
fn split_denominator(a: &[BigRational]) -> (ZPoly, BigInt) {
    let d = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z = a.iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (z, d)
}

impl Field {
    /// `ℚ` itself, presented as `ℚ(0)`.
    pub fn rationals() -> Self {
        Self::rational(&BigRational::zero())
    }

    pub fn rational(r: &BigRational) -> Self {
        let one = BigRational::one();
        Field {
            m: vec![-r.numer().clone(), r.denom().clone()],
            lo: r - &one,
            hi: r + &one,
        }
    }

    pub fn from_algnum(a: &AlgNum) -> Self {
        match a {
            AlgNum::Rational(r) => Self::rational(r),
            AlgNum::Root { poly, lo, hi } => Field {
                m: (**poly).clone(),
                lo: lo.clone(),
                hi: hi.clone(),
            },
        }
    }

    pub fn degree(&self) -> usize {
        self.m.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn modulus(&self) -> &ZPoly {
        &self.m
    }

    /// The generator `γ` as a standalone algebraic number.
    pub fn generator(&self) -> AlgNum {
        if self.m.len() == 2 {
            return AlgNum::Rational(BigRational::new(-self.m[0].clone(), self.m[1].clone()));
        }
        AlgNum::Root {
            poly: std::sync::Arc::new(self.m.clone()),
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// The element `t` (that is, `γ`).
    pub fn gen_elt(&self) -> Elt {
        self.reduce(&[BigRational::zero(), BigRational::one()])
    }

    pub fn constant(r: &BigRational) -> Elt {
        if r.is_zero() {
            Vec::new()
        } else {
            vec![r.clone()]
        }
    }

    pub fn reduce(&self, a: &[BigRational]) -> Elt {
        if a.len() < self.m.len() {
            let mut v = a.to_vec();
            qtrim(&mut v);
            return v;
        }
        let (z, d) = split_denominator(a);
        self.reduce_scaled(z, d)
    }

    /// `z / d` reduced modulo `M`, with the arithmetic done in `ℤ[t]`.
    fn reduce_scaled(&self, z: ZPoly, d: BigInt) -> Elt {
        let dm = self.m.len() - 1;
        let lm = &self.m[dm];
        let mut r = z;
        ztrim(&mut r);
        let mut den = d;
        while r.len() > dm {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lm;
            }
            den *= lm;
            for (j, mc) in self.m.iter().enumerate() {
                r[dr - dm + j] -= &lr * mc;
            }
            ztrim(&mut r);
        }
        let mut out: Elt = r.into_iter().map(|c| BigRational::new(c, den.clone())).collect();
        qtrim(&mut out);
        out
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let (za, da) = split_denominator(a);
        let (zb, db) = split_denominator(b);
        self.reduce_scaled(zmul(&za, &zb), da * db)
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        qadd(a, b)
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        qsub(a, b)
    }

    pub fn pow(&self, a: &Elt, mut k: u32) -> Elt {
        let mut base = a.clone();
        let mut acc = vec![BigRational::one()];
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn set_modulus(&mut self, g: ZPoly) {
        self.m = zprimitive(&g);
        if self.m.len() == 2 {
            let r = BigRational::new(-self.m[0].clone(), self.m[1].clone());
            *self = Self::rational(&r);
        }
    }

    /// Exact zero test at `γ`; splits the modulus as a side effect.
    pub fn is_zero(&mut self, a: &Elt) -> bool {
        let a = self.reduce(a);
        if a.is_empty() {
            return true;
        }
        if a.len() == 1 {
            return false;
        }
        let g = zgcd(&self.m, &z_from_q(&a));
        if g.len() <= 1 {
            return false;
        }
        let vanishes = if self.m.len() == 2 {
            true
        } else {
            zsign_at(&g, &self.lo) * zsign_at(&g, &self.hi) == Sign::Neg
        };
        if vanishes {
            self.set_modulus(g);
        } else {
            let rest = zdiv_exact(&self.m, &g);
            self.set_modulus(rest);
        }
        vanishes
    }

    /// Halves the isolating interval of `γ`.
    pub fn refine(&mut self) {
        if self.m.len() == 2 {
            return;
        }
        let mut iv = RootInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        };
        bisect(&self.m, &mut iv);
        if iv.is_exact() {
            *self = Self::rational(&iv.lo);
        } else {
            self.lo = iv.lo;
            self.hi = iv.hi;
        }
    }

    /// Exact sign of `a(γ)`.
    pub fn sign(&mut self, a: &Elt) -> Sign {
        if self.is_zero(a) {
            return Sign::Zero;
        }
        let a = self.reduce(a);
        loop {
            if self.m.len() == 2 {
                let r = BigRational::new(-self.m[0].clone(), self.m[1].clone());
                return Sign::of(&qeval(&a, &r));
            }
            let (lo, hi) = qeval_interval(&a, &self.lo, &self.hi);
            if lo > BigRational::zero() {
                return Sign::Pos;
            }
            if hi < BigRational::zero() {
                return Sign::Neg;
            }
            self.refine();
        }
    }

    /// Inverse of an element already known to be nonzero at `γ` (after
    /// [`Field::is_zero`] returned false, the element is a unit).
    pub fn inv(&mut self, a: &Elt) -> Elt {
        let a = self.reduce(a);
        if a.is_empty() {
            panic!("inverse of zero");
        }
        let za = z_from_q(&a);
        let k = a.last().unwrap() / BigRational::from_integer(za.last().unwrap().clone());
        if let Some(s) = zinv_mod(&za, &self.m) {
            return self.reduce(&qscale(&s, &k.recip()));
        }
        // not yet split against this element
        let nz = !self.is_zero(&a);
        assert!(nz, "inverse of zero");
        self.inv(&a)
    }

    // ---- polynomials over the field ----

    /// Removes leading coefficients that vanish at `γ`.
    pub fn ktrim(&mut self, p: &mut KPoly) {
        while let Some(l) = p.last() {
            if self.is_zero(&l.clone()) {
                p.pop();
            } else {
                break;
            }
        }
        for c in p.iter_mut() {
            *c = self.reduce(c);
        }
    }

    pub fn kmonic(&mut self, p: &KPoly) -> KPoly {
        let l = self.inv(p.last().expect("nonzero"));
        p.iter().map(|c| self.mul(c, &l)).collect()
    }

    /// Remainder of `a` by the trimmed nonzero `b`.
    pub fn krem(&mut self, a: &KPoly, b: &KPoly) -> KPoly {
        self.kdivrem(a, b).1
    }

    pub fn kdivrem(&mut self, a: &KPoly, b: &KPoly) -> (KPoly, KPoly) {
        let b = self.kmonic(b);
        let db = b.len() - 1;
        let mut r = a.clone();
        self.ktrim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![Vec::new(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let lc = r[dr].clone();
            for (j, bc) in b.iter().enumerate() {
                let t = self.mul(&lc, bc);
                r[dr - db + j] = self.sub(&r[dr - db + j], &t);
            }
            r.pop();
            q[dr - db] = lc;
            self.ktrim(&mut r);
        }
        (q, r)
    }

    /// Monic gcd over `ℚ(γ)`.
    pub fn kgcd(&mut self, a: &KPoly, b: &KPoly) -> KPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        self.ktrim(&mut a);
        self.ktrim(&mut b);
        while !b.is_empty() {
            let r = self.krem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.kmonic(&a)
        }
    }

    pub fn kderiv(&self, p: &KPoly) -> KPoly {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| qscale(c, &BigRational::from_integer(BigInt::from(i))))
            .collect()
    }

    /// Squarefree part (monic) of a trimmed nonzero polynomial.
    pub fn ksqfree(&mut self, p: &KPoly) -> KPoly {
        let mut p = p.clone();
        self.ktrim(&mut p);
        if p.len() <= 2 {
            return self.kmonic(&p);
        }
        let g = self.kgcd(&p, &self.kderiv(&p));
        if g.len() <= 1 {
            return self.kmonic(&p);
        }
        let (q, _) = self.kdivrem(&p, &g);
        self.kmonic(&q)
    }

    /// `p(γ, r)` for rational `r`.
    pub fn keval_rational(&self, p: &KPoly, r: &BigRational) -> Elt {
        let mut acc: Elt = Vec::new();
        for c in p.iter().rev() {
            acc = qadd(&qscale(&acc, r), c);
        }
        self.reduce(&acc)
    }

    /// `p(γ, e)` for a field element `e`.
    pub fn keval(&self, p: &KPoly, e: &Elt) -> Elt {
        let mut acc: Elt = Vec::new();
        for c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, e), c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt2_reducible() -> Field {
        // γ = sqrt 2 presented as a root of (t^2 - 2)(t^2 - 3)
        let m: ZPoly = [6i64, 0, -5, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        Field {
            m,
            lo: q(13, 10),
            hi: q(3, 2),
        }
    }

    #[test]
    fn zero_test_splits_reducible_modulus() {
        let mut k = sqrt2_reducible();
        // t^2 - 3 is nonzero at sqrt 2
        assert!(!k.is_zero(&vec![q(-3, 1), q(0, 1), q(1, 1)]));
        assert_eq!(k.degree(), 2);
        // t^2 - 2 vanishes
        assert!(k.is_zero(&vec![q(-2, 1), q(0, 1), q(1, 1)]));
    }

    #[test]
    fn signs_and_inverses() {
        let mut k = sqrt2_reducible();
        assert_eq!(k.sign(&vec![q(3, 1), q(-2, 1)]), Sign::Pos);
        assert_eq!(k.sign(&vec![q(17, 12), q(-1, 1)]), Sign::Pos);
        assert_eq!(k.sign(&vec![q(140, 99), q(-1, 1)]), Sign::Neg);
        let t = k.gen_elt();
        let inv = k.inv(&t);
        let one = k.mul(&t, &inv);
        assert_eq!(one, vec![q(1, 1)]);
    }

    #[test]
    fn gcd_over_extension() {
        let mut k = sqrt2_reducible();
        k.is_zero(&vec![q(-2, 1), q(0, 1), q(1, 1)]);
        let t = k.gen_elt();
        // (y - t)(y + 1) and (y - t)(y - 5)
        let a: KPoly = vec![qneg(&t), qsub(&[q(1, 1)], &t), vec![q(1, 1)]];
        let b: KPoly = vec![qscale(&t, &q(5, 1)), qsub(&[q(-5, 1)], &t), vec![q(1, 1)]];
        let g = k.kgcd(&a, &b);
        assert_eq!(g, vec![qneg(&t), vec![q(1, 1)]]);
    }
}
