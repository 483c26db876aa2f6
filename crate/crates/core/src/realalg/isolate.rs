//! Real root isolation for integer polynomials by Descartes bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::{descartes, zsign_at, zsqfree, ZPoly};
use super::Sign;

/// An isolating interval. `lo == hi` marks an exact rational root; otherwise
/// the open interval `(lo, hi)` contains exactly one root, and the polynomial
/// is nonzero with opposite signs at both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Power of two strictly greater than the absolute value of every root.
pub fn root_bound(p: &[BigInt]) -> BigRational {
    let lc = p.last().expect("nonzero polynomial").abs();
    let mut m = BigInt::zero();
    for c in &p[..p.len() - 1] {
        let q = (c.abs() + &lc - 1u32) / &lc;
        if q > m {
            m = q;
        }
    }
    let bound = m + 1u32;
    let mut b = BigInt::one();
    while b <= bound {
        b <<= 1;
    }
    BigRational::from_integer(b)
}

/// Isolating intervals for the distinct real roots of `p`, ascending.
pub fn isolate_real_roots(p: &[BigInt]) -> Vec<RootInterval> {
    let q = zsqfree(p);
    if q.len() <= 1 {
        return Vec::new();
    }
    if q.len() == 2 {
        let r = BigRational::new(-q[0].clone(), q[1].clone());
        return vec![RootInterval { lo: r.clone(), hi: r }];
    }
    let b = root_bound(&q);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = BigRational::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        match descartes(&q, &lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / &two;
                if zsign_at(&q, &mid) == Sign::Zero {
                    out.push(RootInterval {
                        lo: mid.clone(),
                        hi: mid.clone(),
                    });
                }
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    for iv in out.iter_mut() {
        if !iv.is_exact() {
            *iv = tighten_endpoints(&q, iv.clone());
            *iv = detect_rational(&q, iv.clone());
        }
    }
    out
}

/// If the root in `iv` is rational, returns it as an exact interval. A
/// rational root `a/b` of `q` has `b | lc(q)`, and once the interval is
/// shorter than `1/lc²` it holds at most one fraction with such a
/// denominator, which is then the simplest fraction in the interval.
fn detect_rational(q: &ZPoly, mut iv: RootInterval) -> RootInterval {
    let lc = q.last().unwrap().abs();
    let width = BigRational::new(BigInt::one(), &lc * &lc);
    while !iv.is_exact() && &iv.hi - &iv.lo >= width {
        bisect(q, &mut iv);
    }
    if iv.is_exact() {
        return iv;
    }
    let r = simplest_between(&iv.lo, &iv.hi);
    if r.denom() <= &lc && zsign_at(q, &r) == Sign::Zero {
        return RootInterval { lo: r.clone(), hi: r };
    }
    iv
}

/// The fraction with the smallest denominator in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo < hi);
    let zero = BigRational::zero();
    if lo < &zero && hi > &zero {
        return zero;
    }
    if hi <= &zero {
        return -simplest_between(&-hi, &-lo);
    }
    // 0 <= lo < hi
    let n = lo.floor() + BigRational::one();
    if &n < hi {
        return n;
    }
    let m = lo.floor();
    // lo, hi in [m, m+1]; x = m + 1/y with y in (1/(hi-m), 1/(lo-m))
    let ylo = (hi - &m).recip();
    let y = if lo == &m {
        ylo.floor() + BigRational::one()
    } else {
        simplest_between(&ylo, &(lo - &m).recip())
    };
    m + y.recip()
}

/// Shrinks an interval holding exactly one root until neither endpoint is a
/// root of `q`. May discover that the root is rational.
fn tighten_endpoints(q: &ZPoly, mut iv: RootInterval) -> RootInterval {
    let two = BigRational::from_integer(2.into());
    loop {
        let slo = zsign_at(q, &iv.lo);
        let shi = zsign_at(q, &iv.hi);
        if slo != Sign::Zero && shi != Sign::Zero {
            return iv;
        }
        let mid = (&iv.lo + &iv.hi) / &two;
        if zsign_at(q, &mid) == Sign::Zero {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if descartes(q, &iv.lo, &mid) == 1 {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
}

/// Halves an isolating interval of a root of the squarefree `q`.
pub fn bisect(q: &[BigInt], iv: &mut RootInterval) {
    if iv.is_exact() {
        return;
    }
    let mid = (&iv.lo + &iv.hi) / BigRational::from_integer(2.into());
    let sm = zsign_at(q, &mid);
    if sm == Sign::Zero {
        iv.lo = mid.clone();
        iv.hi = mid;
    } else if sm == zsign_at(q, &iv.lo) {
        iv.lo = mid;
    } else {
        iv.hi = mid;
    }
}

#[cfg(test)]
mod tests {
    use super::super::upoly::zmul;
    use super::*;
    use proptest::prelude::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Sturm-sequence root count on (a, b], an independent oracle.
    fn sturm_count(p: &[BigInt], a: &BigRational, b: &BigRational) -> usize {
        use super::super::upoly::{q_from_z, qdivrem, qeval, qneg, zderiv};
        let mut seq = vec![q_from_z(p), q_from_z(&zderiv(p))];
        while seq.last().unwrap().len() > 1 {
            let n = seq.len();
            let r = qneg(&qdivrem(&seq[n - 2], &seq[n - 1]).1);
            if r.is_empty() {
                break;
            }
            seq.push(r);
        }
        let var = |x: &BigRational| {
            let signs: Vec<bool> = seq
                .iter()
                .map(|s| qeval(s, x))
                .filter(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        var(a) - var(b)
    }

    #[test]
    fn worked_example_polynomials() {
        // 16x^4 - 16x^2 + 1 has four real roots, ±sqrt(2±sqrt3)/2
        let roots = isolate_real_roots(&z(&[1, 0, -16, 0, 16]));
        assert_eq!(roots.len(), 4);
        // 68x^2 - 272x + 285 has none
        assert!(isolate_real_roots(&z(&[285, -272, 68])).is_empty());
        let r = isolate_real_roots(&z(&[-1, 0, 1]));
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(RootInterval::is_exact));
    }

    #[test]
    fn simplest_fractions() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(simplest_between(&q(3, 10), &q(1, 2)), q(1, 3));
        assert_eq!(simplest_between(&q(-7, 2), &q(-3, 1)), q(-10, 3));
        assert_eq!(simplest_between(&q(-1, 2), &q(3, 1)), q(0, 1));
        assert_eq!(simplest_between(&q(3, 1), &q(7, 2)), q(10, 3));
        assert_eq!(simplest_between(&q(3, 2), &q(5, 2)), q(2, 1));
    }

    #[test]
    fn rational_roots_become_exact() {
        // (3x - 2)(x^2 - 2)(7x + 5)
        let p = zmul(&zmul(&z(&[-2, 3]), &z(&[-2, 0, 1])), &z(&[5, 7]));
        let roots = isolate_real_roots(&p);
        let exact: Vec<_> = roots.iter().filter(|r| r.is_exact()).map(|r| r.lo.clone()).collect();
        assert_eq!(
            exact,
            vec![
                BigRational::new((-5).into(), 7.into()),
                BigRational::new(2.into(), 3.into())
            ]
        );
    }

    #[test]
    fn rational_midpoint_roots_are_exact() {
        // roots 0, 1/2, 1, and ±sqrt(2)
        let p = zmul(&zmul(&z(&[0, 1]), &z(&[-1, 2])), &zmul(&z(&[-1, 1]), &z(&[-2, 0, 1])));
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 5);
        let exact: Vec<_> = roots.iter().filter(|r| r.is_exact()).map(|r| r.lo.clone()).collect();
        assert_eq!(exact.len(), 3);
        for r in roots.iter().filter(|r| !r.is_exact()) {
            assert!(zsign_at(&p, &r.lo) != Sign::Zero && zsign_at(&p, &r.hi) != Sign::Zero);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn agrees_with_sturm(coeffs in prop::collection::vec(-20i64..21, 2..8)) {
            let p = z(&coeffs);
            prop_assume!(!p.last().unwrap().is_zero());
            let q = zsqfree(&p);
            let roots = isolate_real_roots(&p);
            let b = root_bound(&q);
            prop_assert_eq!(roots.len(), sturm_count(&q, &-b.clone(), &b));
            for w in roots.windows(2) {
                prop_assert!(w[0].hi <= w[1].lo);
            }
            for r in &roots {
                if r.is_exact() {
                    prop_assert_eq!(zsign_at(&q, &r.lo), Sign::Zero);
                } else {
                    prop_assert_eq!(sturm_count(&q, &r.lo, &r.hi), 1);
                    prop_assert!(zsign_at(&q, &r.lo) != zsign_at(&q, &r.hi));
                }
            }
        }
    }
}
