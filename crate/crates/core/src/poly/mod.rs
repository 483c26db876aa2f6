//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Variables are identified by their position in a [`VarOrder`]; position 0 is
//! the lowest variable `x₁`, the last position is the highest `xₙ`. Every
//! polynomial carries a reference to the order it was built over and binary
//! operations require both operands to share it.

mod gcd;
pub(crate) mod parse;
mod polyset;
mod resultant;
mod sqfree;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use parse::parse_poly;
pub use polyset::{PolySet, Provenance};
pub use resultant::{discriminant, linear_subresultant, resultant};
pub use sqfree::{squarefree_basis, squarefree_basis_in, squarefree_factors};

/// Index of a variable inside a [`VarOrder`] (0 = lowest).
pub type Var = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("inexact division")]
    InexactDivision,
    #[error("resultant undefined: both operands have degree 0 in {0}")]
    UndefinedResultant(String),
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("variable order must be nonempty")]
    EmptyOrder,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// Ordered list of variable names, lowest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarOrder {
    names: Vec<String>,
}

impl VarOrder {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(PolyError::EmptyOrder);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarOrder { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name)
    }
}

/// A polynomial in `ℤ[x₁,…,xₙ]`, stored as a map from exponent vectors to
/// nonzero coefficients. The zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    order: Arc<VarOrder>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(order: &Arc<VarOrder>) -> Self {
        MultiPoly {
            order: order.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: &Arc<VarOrder>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; order.len()], c);
        }
        MultiPoly {
            order: order.clone(),
            terms,
        }
    }

    pub fn one(order: &Arc<VarOrder>) -> Self {
        Self::constant(order, 1)
    }

    pub fn var(order: &Arc<VarOrder>, v: Var) -> Self {
        let mut e = vec![0; order.len()];
        e[v] = 1;
        Self::monomial(order, e, BigInt::one())
    }

    pub fn monomial(order: &Arc<VarOrder>, exps: Vec<u32>, c: BigInt) -> Self {
        assert_eq!(exps.len(), order.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly {
            order: order.clone(),
            terms,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(order: &Arc<VarOrder>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(order);
        for (e, c) in terms {
            assert_eq!(e.len(), order.len());
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn order(&self) -> &Arc<VarOrder> {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// The constant value if the polynomial has no variables.
    pub fn constant_value(&self) -> Option<BigInt> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_default())
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Highest variable that occurs, `None` for constants.
    pub fn mvar(&self) -> Option<Var> {
        (0..self.nvars()).rev().find(|&v| self.terms.keys().any(|e| e[v] > 0))
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    /// Variables that occur, ascending.
    pub fn variables(&self) -> Vec<Var> {
        (0..self.nvars()).filter(|&v| self.involves(v)).collect()
    }

    /// Coefficients with respect to `v`, ascending by degree. A polynomial of
    /// degree 0 in `v` yields a single coefficient; zero yields `[0]`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(&self.order); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// Coefficients with respect to `v` in descending degree (leading first).
    pub fn mvar_decompose(&self, v: Var) -> Vec<MultiPoly> {
        let mut c = self.coeffs_in(v);
        c.reverse();
        c
    }

    pub fn from_coeffs_in(order: &Arc<VarOrder>, v: Var, coeffs: &[MultiPoly]) -> Self {
        let mut p = Self::zero(order);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                debug_assert_eq!(e[v], 0);
                let mut e2 = e.clone();
                e2[v] = k as u32;
                p.add_term(e2, a.clone());
            }
        }
        p
    }

    pub fn leading_coeff_in(&self, v: Var) -> MultiPoly {
        let d = self.degree_in(v);
        let mut out = Self::zero(&self.order);
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// The term that is greatest when exponent vectors are compared from the
    /// highest variable downwards.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| a.iter().rev().cmp(b.iter().rev()))
    }

    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Canonical representative up to a nonzero rational scalar: integer
    /// content 1 and positive leading coefficient. Nonzero constants map to 1.
    pub fn canonical(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.integer_content();
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            g = -g;
        }
        self.div_integer(&g)
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || *self == self.canonical()
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return Self::zero(&self.order);
        }
        MultiPoly {
            order: self.order.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Divides every coefficient by `k`; `k` must divide all of them.
    pub fn div_integer(&self, k: &BigInt) -> MultiPoly {
        MultiPoly {
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert!((c % k).is_zero());
                    (e.clone(), c / k)
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.order);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut p = Self::zero(&self.order);
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                p.add_term(e2, c * BigInt::from(e[v]));
            }
        }
        p
    }

    /// `x_v^k · self`.
    pub fn shift(&self, v: Var, k: u32) -> MultiPoly {
        MultiPoly {
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[v] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes the rational `r = a/b` for `v` and multiplies through by
    /// `b^deg_v`, so the result is an integer polynomial with the same sign
    /// as the true specialization.
    pub fn substitute_rational(&self, v: Var, r: &BigRational) -> MultiPoly {
        let d = self.degree_in(v);
        let num = r.numer();
        let den = r.denom();
        let mut num_pows = vec![BigInt::one()];
        let mut den_pows = vec![BigInt::one()];
        for i in 1..=d as usize {
            num_pows.push(&num_pows[i - 1] * num);
            den_pows.push(&den_pows[i - 1] * den);
        }
        let mut p = Self::zero(&self.order);
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            p.add_term(e2, c * &num_pows[k] * &den_pows[d as usize - k]);
        }
        p
    }

    /// Substitutes `q` for the variable `v`.
    pub fn compose(&self, v: Var, q: &MultiPoly) -> MultiPoly {
        let coeffs = self.coeffs_in(v);
        let mut acc = Self::zero(&self.order);
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Exact value at a rational point (one entry per variable).
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-expresses the polynomial over another order that contains all of
    /// its variables, using `map[i]` as the target index of source variable `i`.
    pub fn remap(&self, target: &Arc<VarOrder>, map: &[Var]) -> MultiPoly {
        let mut p = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[map[i]] += k;
                }
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Coefficients of a polynomial that only involves `v`, ascending.
    pub fn to_univariate(&self, v: Var) -> Vec<BigInt> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![BigInt::zero(); d + 1];
        for (e, c) in &self.terms {
            debug_assert!(e.iter().enumerate().all(|(i, &k)| i == v || k == 0));
            out[e[v] as usize] += c;
        }
        out
    }

    pub fn from_univariate(order: &Arc<VarOrder>, v: Var, coeffs: &[BigInt]) -> Self {
        let mut p = Self::zero(order);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; order.len()];
            e[v] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Sum of the total degrees of all monomials.
    pub fn sotd(&self) -> u64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as u64).sum::<u64>())
            .sum()
    }

    fn check_order(&self, other: &MultiPoly) {
        debug_assert!(
            Arc::ptr_eq(&self.order, &other.order) || self.order == other.order,
            "polynomials over different variable orders"
        );
    }
}

pub use gcd::{content_prim, exact_div, gcd, prem};

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_order(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_order(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_order(rhs);
        let mut out = MultiPoly::zero(&self.order);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            order: self.order.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    /// Infix form, terms in descending lexicographic order from the highest
    /// variable, e.g. `x^2 + y^2 - 1`. Parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.iter().rev().cmp(a.iter().rev()));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for v in (0..e.len()).rev() {
                match e[v] {
                    0 => {}
                    1 => factors.push(self.order.name(v).to_string()),
                    k => factors.push(format!("{}^{}", self.order.name(v), k)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
