//! Stack construction over a single base cell.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use crate::poly::MultiPoly;
use crate::realalg::{AlgNum, LiftRoot, LiftRoots, SamplePoint};

/// One cell of a stack before it is placed in the decomposition.
#[derive(Clone, Debug)]
pub struct StackCell {
    pub sample: SamplePoint,
    pub section: bool,
    /// A section of one of the delineating polynomials.
    pub delineating: bool,
}

/// True iff every coefficient of `f` in the next variable vanishes at the
/// sample. The coefficients are sign-invariant on the whole cell (they belong
/// to, or divide elements of, the projection set below), so the answer holds
/// cell-wide.
pub fn nullified(f: &MultiPoly, sample: &mut SamplePoint) -> bool {
    sample.nullifies(f)
}

/// Sections are the merged distinct real roots of the lifting polynomials at
/// the sample; sectors get rational samples. Polynomials vanishing
/// identically at the sample are skipped (the caller has already decided how
/// to treat them). `delineating[k]` marks `lifting[k]` as one whose sections
/// are used for point location.
pub fn build_stack(base: &mut SamplePoint, lifting: &[MultiPoly], delineating: &[bool]) -> Vec<StackCell> {
    let mut roots: Vec<(LiftRoot, bool)> = Vec::new();
    for (h, &d) in lifting.iter().zip(delineating) {
        let rs = match base.roots(h) {
            LiftRoots::Nullified => continue,
            LiftRoots::Roots(rs) => rs,
        };
        for r in rs {
            match roots.binary_search_by(|(x, _)| x.value.cmp_exact(&r.value)) {
                Ok(k) => roots[k].1 |= d,
                Err(k) => roots.insert(k, (r, d)),
            }
        }
    }
    let mut cells = Vec::with_capacity(2 * roots.len() + 1);
    let sector = |x: BigRational| StackCell {
        sample: base.extend_rational(&x),
        section: false,
        delineating: false,
    };
    if roots.is_empty() {
        cells.push(sector(BigRational::from_integer(0.into())));
        return cells;
    }
    cells.push(sector(below(&roots[0].0.value)));
    for k in 0..roots.len() {
        let (r, d) = &roots[k];
        cells.push(StackCell {
            sample: base.extend(r),
            section: true,
            delineating: *d,
        });
        let x = match roots.get(k + 1) {
            Some((next, _)) => rational_between(&r.value, &next.value),
            None => above(&r.value),
        };
        cells.push(sector(x));
    }
    cells
}

/// Largest integer strictly below `a` after refining it to width at most 1.
fn below(a: &AlgNum) -> BigRational {
    let mut a = a.clone();
    a.refine_to(&BigRational::one());
    let (lo, _) = a.interval();
    lo.ceil() - BigRational::one()
}

/// Smallest integer strictly above `a` after refining it to width at most 1.
fn above(a: &AlgNum) -> BigRational {
    let mut a = a.clone();
    a.refine_to(&BigRational::one());
    let (_, hi) = a.interval();
    hi.floor() + BigRational::one()
}

/// A rational strictly between `a < b`: the simplest fraction in the gap
/// between their isolating intervals, once each interval is at most an
/// eighth of the gap.
pub fn rational_between(a: &AlgNum, b: &AlgNum) -> BigRational {
    debug_assert_eq!(a.cmp_exact(b), Ordering::Less);
    let (mut a, mut b) = (a.clone(), b.clone());
    let eight = BigRational::from_integer(8.into());
    loop {
        let (alo, ahi) = a.interval();
        let (blo, bhi) = b.interval();
        if ahi < blo {
            let gap = &blo - &ahi;
            let wa = (&ahi - &alo) * &eight <= gap;
            let wb = (&bhi - &blo) * &eight <= gap;
            if wa && wb {
                return crate::realalg::simplest_between(&ahi, &blo);
            }
            if !wa {
                a.refine();
            }
            if !wb {
                b.refine();
            }
        } else {
            a.refine();
            b.refine();
        }
    }
}

/// A partial derivative of `h` with respect to the base variables, of least
/// total order, that is not nullified at the sample. Multi-indices of equal
/// order are tried in lexicographic order.
pub fn delineating_poly(h: &MultiPoly, sample: &mut SamplePoint) -> Option<MultiPoly> {
    let k = sample.dim();
    let top = h.total_degree();
    for order in 1..=top {
        for beta in multi_indices(k, order) {
            let mut d = h.clone();
            for (v, &e) in beta.iter().enumerate() {
                for _ in 0..e {
                    d = d.derivative(v);
                }
            }
            if d.is_zero() {
                continue;
            }
            if !sample.nullifies(&d) {
                return Some(d.canonical());
            }
        }
    }
    None
}

/// Exponent vectors of length `k` summing to `total`, in descending
/// lexicographic order.
fn multi_indices(k: usize, total: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in multi_indices(k - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Distinct real roots of the given polynomials at a point, ascending.
/// Polynomials nullified at the point are skipped, as in [`build_stack`].
pub fn merged_roots(point: &mut SamplePoint, polys: &[MultiPoly]) -> Vec<LiftRoot> {
    let mut roots: Vec<LiftRoot> = Vec::new();
    for h in polys {
        if let LiftRoots::Roots(rs) = point.roots(h) {
            for r in rs {
                if let Err(k) = roots.binary_search_by(|x| x.value.cmp_exact(&r.value)) {
                    roots.insert(k, r);
                }
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarOrder};
    use crate::realalg::Sign;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn circle_stacks() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let c = parse_poly("x^2 + y^2 - 1", &o).unwrap();
        let mut s = SamplePoint::from_rationals(&[q(0, 1)]);
        let st = build_stack(&mut s, std::slice::from_ref(&c), &[true]);
        assert_eq!(st.len(), 5);
        let mut s1 = SamplePoint::from_rationals(&[q(1, 1)]);
        assert_eq!(build_stack(&mut s1, std::slice::from_ref(&c), &[true]).len(), 3);
        assert_eq!(build_stack(&mut s1, &[], &[]).len(), 1);
        for cell in &st {
            let mut p = cell.sample.clone();
            assert_eq!(p.sign(&c) == Sign::Zero, cell.section);
        }
    }

    #[test]
    fn sector_samples_prefer_simple_fractions() {
        // roots ±sqrt(2 - sqrt 3)/2 of 16x^4 - 16x^2 + 1 straddle 0
        let o = VarOrder::new(["x"]).unwrap();
        let p = parse_poly("16*x^4 - 16*x^2 + 1", &o).unwrap();
        let mut origin = SamplePoint::origin();
        let st = build_stack(&mut origin, &[p], &[true]);
        assert_eq!(st.len(), 9);
        assert_eq!(st[4].sample.coords()[0].as_rational(), Some(&q(0, 1)));
        assert_eq!(st[0].sample.coords()[0].as_rational(), Some(&q(-1, 1)));
        assert_eq!(st[8].sample.coords()[0].as_rational(), Some(&q(1, 1)));
    }

    #[test]
    fn delineating_derivative_at_a_point() {
        // z*x + z*y - x - y = (z - 1)(x + y) vanishes identically over x = y = 0
        let o = VarOrder::new(["x", "y", "z"]).unwrap();
        let f = parse_poly("z*x + z*y - x - y", &o).unwrap();
        let mut s = SamplePoint::from_rationals(&[q(0, 1), q(0, 1)]);
        assert!(nullified(&f, &mut s));
        let d = delineating_poly(&f, &mut s).unwrap();
        assert_eq!(d, parse_poly("z - 1", &o).unwrap());
        let mut t = SamplePoint::from_rationals(&[q(1, 1), q(0, 1)]);
        assert!(!nullified(&f, &mut t));
        assert_eq!(multi_indices(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
