//! Dense univariate polynomials over ℤ (`ZPoly`) and ℚ (`QPoly`), stored as
//! coefficient vectors in ascending degree with no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Sign;

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn ztrim(p: &mut ZPoly) {
    while p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
}

pub fn qtrim(p: &mut QPoly) {
    while p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
}

/// Degree, with `None` for the zero polynomial.
pub fn deg<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Sign of `p(x)` computed exactly in integers.
pub fn zsign_at(p: &[BigInt], x: &BigRational) -> Sign {
    Sign::of(&zeval_scaled(p, x))
}

/// `den(x)^deg · p(x)`, an integer with the sign of `p(x)`.
pub fn zeval_scaled(p: &[BigInt], x: &BigRational) -> BigInt {
    let n = x.numer();
    let d = x.denom();
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    // Horner above multiplies c_i by d^(deg-i); acc = Σ c_i n^i d^(deg-i)
    acc
}

pub fn zeval(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

pub fn zderiv(p: &[BigInt]) -> ZPoly {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

pub fn zcontent(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn zprimitive(p: &[BigInt]) -> ZPoly {
    let mut g = zcontent(p);
    if g.is_zero() {
        return Vec::new();
    }
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    p.iter().map(|c| c / &g).collect()
}

pub fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Pseudo-remainder `lc(b)^(da-db+1)·a mod b`.
pub fn zprem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut r: ZPoly = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        ztrim(&mut r);
    }
    r
}

/// Exact division in ℤ[x]; panics in debug builds if the division is inexact.
pub fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    if a.len() <= db {
        return Vec::new();
    }
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(&b[db]);
        debug_assert!(rem.is_zero(), "inexact univariate division");
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &qc * bc;
        }
        q[dr - db] = qc;
        ztrim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact univariate division");
    q
}

/// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn zgcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut a = zprimitive(a);
    let mut b = zprimitive(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = zprimitive(&zprem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Squarefree part, primitive with positive leading coefficient.
pub fn zsqfree(p: &[BigInt]) -> ZPoly {
    let p = zprimitive(p);
    if p.len() <= 2 {
        return p;
    }
    let g = zgcd(&p, &zderiv(&p));
    zprimitive(&zdiv_exact(&p, &g))
}

/// `D^d · p((n + m·x) / D)` for integers `n, m, D` with `D > 0`.
pub fn zcompose_linear(p: &[BigInt], n: &BigInt, m: &BigInt, d: &BigInt) -> ZPoly {
    let mut acc: ZPoly = Vec::new();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        // acc = acc·(n + m x) + c·D^k
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] += a * n;
            next[i + 1] += a * m;
        }
        next[0] += c * &dpow;
        dpow *= d;
        acc = next;
    }
    ztrim(&mut acc);
    acc
}

/// `p(x + 1)`.
pub fn ztaylor_shift1(p: &[BigInt]) -> ZPoly {
    let mut a: ZPoly = p.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
    a
}

pub fn sign_variations(p: &[BigInt]) -> usize {
    let mut last: Option<bool> = None;
    let mut v = 0;
    for c in p {
        if c.is_zero() {
            continue;
        }
        let s = c.is_positive();
        if let Some(l) = last {
            if l != s {
                v += 1;
            }
        }
        last = Some(s);
    }
    v
}

/// Descartes bound for the number of roots of `p` in the open interval
/// `(a, b)`. Exact when it returns 0 or 1.
pub fn descartes(p: &[BigInt], a: &BigRational, b: &BigRational) -> usize {
    let l = a.denom().lcm(b.denom());
    let an = a.numer() * (&l / a.denom());
    let bn = b.numer() * (&l / b.denom());
    let mut r = zcompose_linear(p, &an, &(&bn - &an), &l);
    r.reverse();
    sign_variations(&ztaylor_shift1(&r))
}

pub fn q_from_z(p: &[BigInt]) -> QPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Primitive integer multiple with positive leading coefficient.
pub fn z_from_q(p: &[BigRational]) -> ZPoly {
    let l = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: ZPoly = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    zprimitive(&z)
}

pub fn qadd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    qtrim(&mut out);
    out
}

pub fn qneg(a: &[BigRational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn qsub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    qadd(a, &qneg(b))
}

pub fn qscale(a: &[BigRational], k: &BigRational) -> QPoly {
    if k.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * k).collect()
}

pub fn qmul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = b.len() - 1;
    let mut r: QPoly = a.to_vec();
    qtrim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let qc = &r[dr] * &inv;
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &qc * bc;
        }
        r.pop();
        qtrim(&mut r);
        q[dr - db] = qc;
    }
    qtrim(&mut q);
    (q, r)
}

pub fn qrem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    qdivrem(a, b).1
}

pub fn qmonic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => qscale(a, &l.recip()),
    }
}

/// Extended Euclid: returns `(g, s)` with `g = gcd(a, m)` monic and
/// `s·a ≡ g (mod m)`.
pub fn qext_gcd(a: &[BigRational], m: &[BigRational]) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (m.to_vec(), qrem(a, m));
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    if r1.is_empty() {
        return (qmonic(&r0), Vec::new());
    }
    while !r1.is_empty() {
        let (q, r) = qdivrem(&r0, &r1);
        let s = qsub(&s0, &qmul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let l = r0.last().unwrap().recip();
    (qscale(&r0, &l), qscale(&s0, &l))
}

/// Inverse of `a` modulo `m` in `ℚ[x]`, or `None` when they share a factor.
/// Runs a primitive remainder sequence in `ℤ[x]` that carries the cofactor
/// of `a`; the remainders stay small where Euclid over `ℚ` blows up.
pub fn zinv_mod(a: &[BigInt], m: &[BigInt]) -> Option<QPoly> {
    let mut r0: ZPoly = m.to_vec();
    let mut s0: QPoly = Vec::new();
    let mut r1: ZPoly = a.to_vec();
    ztrim(&mut r1);
    let mut s1: QPoly = vec![BigRational::one()];
    loop {
        match r1.len() {
            0 => return None,
            1 => return Some(qscale(&s1, &BigRational::from_integer(r1[0].clone()).recip())),
            _ => {}
        }
        // r0 ← prem(r0, r1), with s0 kept so that r0 ≡ s0·a (mod m)
        let db = r1.len() - 1;
        let lb = r1[db].clone();
        let lbq = BigRational::from_integer(lb.clone());
        while r0.len() > db {
            let dr = r0.len() - 1;
            let lr = r0[dr].clone();
            let shift = dr - db;
            for c in r0.iter_mut() {
                *c *= &lb;
            }
            for (j, bc) in r1.iter().enumerate() {
                r0[shift + j] -= &lr * bc;
            }
            ztrim(&mut r0);
            let mut t = vec![BigRational::zero(); shift];
            t.extend(qscale(&s1, &BigRational::from_integer(lr)));
            s0 = qsub(&qscale(&s0, &lbq), &t);
        }
        let c = zcontent(&r0);
        if !c.is_zero() {
            r0 = r0.iter().map(|x| x / &c).collect();
            s0 = qscale(&s0, &BigRational::from_integer(c).recip());
        }
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut s0, &mut s1);
    }
}

pub fn qeval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Interval enclosure of `p([lo, hi])` by interval Horner evaluation.
pub fn qeval_interval(p: &[BigRational], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for c in p.iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}
