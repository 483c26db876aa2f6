//! Quantifier-free Tarski formulae: parsing, printing, polynomial extraction,
//! equational-constraint designation and evaluation from sign data.
//!
//! Grammar (atoms compare polynomials; `p rel q` means `p - q rel 0`):
//!
//! ```text
//! disj    := conj ('\/' conj)*
//! conj    := unary ('/\' unary)*
//! unary   := '~' unary | '(' disj ')' | atom
//! atom    := expr rel expr
//! rel     := '=' | '!=' | '<' | '<=' | '>' | '>='
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::poly::parse::{lex, PolyParser, Tok, Token};
use crate::poly::{MultiPoly, PolyError, PolySet, Provenance, VarOrder};
use crate::projection::{projection_levels, tticad_project, ConstraintPair};
use crate::realalg::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("formula {0} has no equational constraint to designate")]
    NoEquation(usize),
    #[error("atom {atom} of formula {formula} is not an eligible equational constraint")]
    BadDesignation { formula: usize, atom: usize },
    #[error("no sign given for `{0}`")]
    MissingSign(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rel {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Rel {
    pub fn holds(self, s: Sign) -> bool {
        match self {
            Rel::Eq => s == Sign::Zero,
            Rel::Ne => s != Sign::Zero,
            Rel::Lt => s == Sign::Neg,
            Rel::Le => s != Sign::Pos,
            Rel::Gt => s == Sign::Pos,
            Rel::Ge => s != Sign::Neg,
        }
    }

    /// The relation satisfied by `-p` whenever `p` satisfies `self`.
    pub fn mirror(self) -> Rel {
        match self {
            Rel::Lt => Rel::Gt,
            Rel::Le => Rel::Ge,
            Rel::Gt => Rel::Lt,
            Rel::Ge => Rel::Le,
            r => r,
        }
    }

    /// Logical negation.
    pub fn negate(self) -> Rel {
        match self {
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Lt => Rel::Ge,
            Rel::Le => Rel::Gt,
            Rel::Gt => Rel::Le,
            Rel::Ge => Rel::Lt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }

    fn from_tok(t: &Tok) -> Option<Rel> {
        Some(match t {
            Tok::Eq => Rel::Eq,
            Tok::Ne => Rel::Ne,
            Tok::Lt => Rel::Lt,
            Tok::Le => Rel::Le,
            Tok::Gt => Rel::Gt,
            Tok::Ge => Rel::Ge,
            _ => return None,
        })
    }
}

/// `poly rel 0` with `poly` canonical. Constant atoms keep a constant of the
/// right sign (`-1`, `0` or `1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub poly: MultiPoly,
    pub rel: Rel,
}

impl Atom {
    pub fn new(p: &MultiPoly, rel: Rel) -> Atom {
        if p.is_constant() {
            let s = p.constant_value().map(|c| Sign::of(&c)).unwrap_or(Sign::Zero);
            return Atom {
                poly: MultiPoly::constant(p.order(), s.to_i8()),
                rel,
            };
        }
        let flipped = p.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false);
        Atom {
            poly: p.canonical(),
            rel: if flipped { rel.mirror() } else { rel },
        }
    }

    /// Sign of the constant polynomial of a constant atom.
    fn constant_sign(&self) -> Option<Sign> {
        self.poly.constant_value().map(|c| Sign::of(&c))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.poly, self.rel.symbol())
    }
}

/// Formula tree over the atoms of a [`Formula`], referenced by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Qff {
    Atom(usize),
    And(Vec<Qff>),
    Or(Vec<Qff>),
    Not(Box<Qff>),
}

/// Negation normal form: literals are atoms with a polarity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nnf {
    Lit { atom: usize, positive: bool },
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

impl Qff {
    pub fn nnf(&self) -> Nnf {
        self.nnf_with(true)
    }

    fn nnf_with(&self, positive: bool) -> Nnf {
        match self {
            Qff::Atom(i) => Nnf::Lit { atom: *i, positive },
            Qff::Not(c) => c.nnf_with(!positive),
            Qff::And(cs) | Qff::Or(cs) => {
                let kids = cs.iter().map(|c| c.nnf_with(positive)).collect();
                if matches!(self, Qff::And(_)) == positive {
                    Nnf::And(kids)
                } else {
                    Nnf::Or(kids)
                }
            }
        }
    }

    fn eval(&self, lit: &mut dyn FnMut(usize) -> Result<bool, FormulaError>) -> Result<bool, FormulaError> {
        Ok(match self {
            Qff::Atom(i) => lit(*i)?,
            Qff::Not(c) => !c.eval(lit)?,
            Qff::And(cs) => {
                let mut v = true;
                for c in cs {
                    v &= c.eval(lit)?;
                }
                v
            }
            Qff::Or(cs) => {
                let mut v = false;
                for c in cs {
                    v |= c.eval(lit)?;
                }
                v
            }
        })
    }
}

impl Nnf {
    fn eval(&self, lit: &mut dyn FnMut(usize) -> Result<bool, FormulaError>) -> Result<bool, FormulaError> {
        Ok(match self {
            Nnf::Lit { atom, positive } => lit(*atom)? == *positive,
            Nnf::And(cs) => {
                let mut v = true;
                for c in cs {
                    v &= c.eval(lit)?;
                }
                v
            }
            Nnf::Or(cs) => {
                let mut v = false;
                for c in cs {
                    v |= c.eval(lit)?;
                }
                v
            }
        })
    }

    /// Literals that are conjuncts at the top of the formula.
    fn top_conjuncts(&self) -> Vec<(usize, bool)> {
        match self {
            Nnf::Lit { atom, positive } => vec![(*atom, *positive)],
            Nnf::And(cs) => cs.iter().flat_map(Nnf::top_conjuncts).collect(),
            Nnf::Or(_) => Vec::new(),
        }
    }
}

/// A parsed formula: its atoms in order of appearance, the tree, and the
/// designated equational constraint (an atom index), if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub atoms: Vec<Atom>,
    pub tree: Qff,
    pub ec: Option<usize>,
}

impl Formula {
    pub fn parse(text: &str, order: &Arc<VarOrder>) -> Result<Formula, FormulaError> {
        let toks = lex(text)?;
        let mut p = FormulaParser {
            toks: &toks,
            pos: 0,
            order,
            atoms: Vec::new(),
        };
        let tree = p.disj()?;
        if toks[p.pos].tok != Tok::End {
            return Err(syntax(toks[p.pos].pos, "unexpected trailing input").into());
        }
        Ok(Formula {
            atoms: p.atoms,
            tree,
            ec: None,
        })
    }

    pub fn order(&self) -> &Arc<VarOrder> {
        self.atoms[0].poly.order()
    }

    /// The distinct nonconstant atom polynomials.
    pub fn polys(&self) -> PolySet {
        let mut s = PolySet::new();
        for a in &self.atoms {
            s.insert(&a.poly, Provenance::Input);
        }
        s
    }

    /// Atom indices that may be designated: equations of positive degree that
    /// are top-level conjuncts once negations are pushed to the atoms.
    pub fn eligible_ecs(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .tree
            .nnf()
            .top_conjuncts()
            .into_iter()
            .filter(|&(i, pos)| {
                let a = &self.atoms[i];
                let rel = if pos { a.rel } else { a.rel.negate() };
                rel == Rel::Eq && !a.poly.is_constant()
            })
            .map(|(i, _)| i)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn ec_poly(&self) -> Option<&MultiPoly> {
        self.ec.map(|i| &self.atoms[i].poly)
    }

    /// The constraint pair `(A, E)` for the designated equation.
    pub fn constraint_pair(&self) -> Option<ConstraintPair> {
        let f = self.ec_poly()?;
        let mut e = PolySet::new();
        e.insert(f, Provenance::Input);
        Some(ConstraintPair::new(self.polys(), e))
    }

    /// Evaluates with the sign of each atom polynomial supplied by `sign`.
    pub fn eval_by<F>(&self, mut sign: F) -> Result<bool, FormulaError>
    where
        F: FnMut(&MultiPoly) -> Option<Sign>,
    {
        let mut lit = |i: usize| {
            let a = &self.atoms[i];
            let s = match a.constant_sign() {
                Some(s) => s,
                None => sign(&a.poly).ok_or_else(|| FormulaError::MissingSign(a.poly.to_string()))?,
            };
            Ok(a.rel.holds(s))
        };
        self.tree.eval(&mut lit)
    }

    /// Evaluates from a map keyed by canonical polynomials.
    pub fn evaluate(&self, signs: &BTreeMap<MultiPoly, Sign>) -> Result<bool, FormulaError> {
        self.eval_by(|p| signs.get(p).copied())
    }

    /// Evaluation through the negation normal form.
    pub fn evaluate_nnf(&self, signs: &BTreeMap<MultiPoly, Sign>) -> Result<bool, FormulaError> {
        let mut lit = |i: usize| {
            let a = &self.atoms[i];
            let s = match a.constant_sign() {
                Some(s) => s,
                None => *signs
                    .get(&a.poly)
                    .ok_or_else(|| FormulaError::MissingSign(a.poly.to_string()))?,
            };
            Ok(a.rel.holds(s))
        };
        self.tree.nnf().eval(&mut lit)
    }

    fn fmt_tree(&self, t: &Qff, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, cs: &[Qff], op: &str| -> fmt::Result {
            for (k, c) in cs.iter().enumerate() {
                if k > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "(")?;
                self.fmt_tree(c, f)?;
                write!(f, ")")?;
            }
            Ok(())
        };
        match t {
            Qff::Atom(i) => write!(f, "{}", self.atoms[*i]),
            Qff::And(cs) => join(f, cs, "/\\"),
            Qff::Or(cs) => join(f, cs, "\\/"),
            Qff::Not(c) => {
                write!(f, "~(")?;
                self.fmt_tree(c, f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_tree(&self.tree, f)
    }
}

fn syntax(pos: usize, msg: &str) -> PolyError {
    PolyError::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

struct FormulaParser<'a> {
    toks: &'a [Token],
    pos: usize,
    order: &'a Arc<VarOrder>,
    atoms: Vec<Atom>,
}

impl FormulaParser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn disj(&mut self) -> Result<Qff, FormulaError> {
        let mut kids = vec![self.conj()?];
        while *self.peek() == Tok::Or {
            self.pos += 1;
            kids.push(self.conj()?);
        }
        Ok(if kids.len() == 1 {
            kids.pop().unwrap()
        } else {
            Qff::Or(kids)
        })
    }

    fn conj(&mut self) -> Result<Qff, FormulaError> {
        let mut kids = vec![self.unary()?];
        while *self.peek() == Tok::And {
            self.pos += 1;
            kids.push(self.unary()?);
        }
        Ok(if kids.len() == 1 {
            kids.pop().unwrap()
        } else {
            Qff::And(kids)
        })
    }

    fn unary(&mut self) -> Result<Qff, FormulaError> {
        if *self.peek() == Tok::Not {
            self.pos += 1;
            return Ok(Qff::Not(Box::new(self.unary()?)));
        }
        let start = self.pos;
        let natoms = self.atoms.len();
        let atom_err = match self.atom() {
            Ok(q) => return Ok(q),
            Err(e) => e,
        };
        if self.toks[start].tok != Tok::LParen {
            return Err(atom_err);
        }
        // a parenthesised subformula rather than a polynomial
        self.pos = start + 1;
        self.atoms.truncate(natoms);
        let inner = self.disj()?;
        if *self.peek() != Tok::RParen {
            return Err(syntax(self.toks[self.pos].pos, "expected `)`").into());
        }
        self.pos += 1;
        Ok(inner)
    }

    fn atom(&mut self) -> Result<Qff, FormulaError> {
        let mut pp = PolyParser {
            toks: self.toks,
            pos: self.pos,
            order: self.order,
        };
        let lhs = pp.expr()?;
        let rel = match Rel::from_tok(pp.peek()) {
            Some(r) => r,
            None => return Err(syntax(pp.here(), "expected a relation").into()),
        };
        pp.bump();
        let rhs = pp.expr()?;
        self.pos = pp.pos;
        let diff = lhs.add(&rhs, true).cleared();
        let atom = Atom::new(&diff, rel);
        self.atoms.push(atom);
        Ok(Qff::Atom(self.atoms.len() - 1))
    }
}

/// How to pick the designated equational constraint of each formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EcStrategy {
    /// Use the given atom index where present, else the first eligible one.
    Manual(Vec<Option<usize>>),
    /// Minimise the sum of total degrees of the projection closure.
    Sotd,
}

/// The formulae `φ_1, …, φ_t` over one variable order.
#[derive(Clone, Debug)]
pub struct FormulaList {
    pub order: Arc<VarOrder>,
    pub formulas: Vec<Formula>,
}

impl FormulaList {
    pub fn parse<S: AsRef<str>>(texts: &[S], order: &Arc<VarOrder>) -> Result<Self, FormulaError> {
        let formulas = texts
            .iter()
            .map(|t| Formula::parse(t.as_ref(), order))
            .collect::<Result<_, _>>()?;
        Ok(FormulaList {
            order: order.clone(),
            formulas,
        })
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// All atom polynomials of all formulae.
    pub fn polys(&self) -> PolySet {
        let mut s = PolySet::new();
        for f in &self.formulas {
            s.extend(&f.polys());
        }
        s
    }

    /// Constraint pairs; every formula must carry a designation.
    pub fn pairs(&self) -> Result<Vec<ConstraintPair>, FormulaError> {
        self.formulas
            .iter()
            .enumerate()
            .map(|(i, f)| f.constraint_pair().ok_or(FormulaError::NoEquation(i)))
            .collect()
    }

    pub fn designate(&mut self, strategy: &EcStrategy) -> Result<(), FormulaError> {
        let eligible: Vec<Vec<usize>> = self.formulas.iter().map(Formula::eligible_ecs).collect();
        for (i, e) in eligible.iter().enumerate() {
            if e.is_empty() {
                return Err(FormulaError::NoEquation(i));
            }
        }
        match strategy {
            EcStrategy::Manual(choice) => {
                for (i, f) in self.formulas.iter_mut().enumerate() {
                    let pick = match choice.get(i).copied().flatten().or(f.ec) {
                        Some(a) if eligible[i].contains(&a) => a,
                        Some(a) => return Err(FormulaError::BadDesignation { formula: i, atom: a }),
                        None => eligible[i][0],
                    };
                    f.ec = Some(pick);
                }
            }
            EcStrategy::Sotd => {
                let mut best: Option<(u64, Vec<usize>)> = None;
                for combo in product(&eligible) {
                    for (f, &a) in self.formulas.iter_mut().zip(&combo) {
                        f.ec = Some(a);
                    }
                    let score = closure_sotd(&self.pairs()?, self.order.len());
                    if best.as_ref().is_none_or(|(b, _)| score < *b) {
                        best = Some((score, combo));
                    }
                }
                let (_, combo) = best.expect("at least one combination");
                for (f, a) in self.formulas.iter_mut().zip(combo) {
                    f.ec = Some(a);
                }
            }
        }
        Ok(())
    }
}

/// Cartesian product in lexicographic order (first formula varies slowest).
fn product(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out
}

/// `sotd(𝔓 ∪ P̄(𝔓))` for the pairs over `n` variables. With one variable the
/// constraint polynomials themselves are scored.
pub fn closure_sotd(pairs: &[ConstraintPair], n: usize) -> u64 {
    if n < 2 {
        let mut e = PolySet::new();
        for p in pairs {
            e.extend(&p.e);
        }
        return e.sotd();
    }
    let (_, proj) = tticad_project(pairs, n - 1);
    let mut all = PolySet::new();
    for level in projection_levels(&proj, n - 2) {
        all.extend(&level);
    }
    all.extend(&proj);
    all.sotd()
}

/// One way to split a conjunction into formulae, with a designation for each
/// group (conjunct indices) and its heuristic score.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Composition {
    pub groups: Vec<Vec<usize>>,
    pub ecs: Vec<usize>,
    pub sotd: u64,
}

/// Enumerates every partition of the conjuncts into formulae that each hold
/// an equation, with every choice of designated equation, scored by
/// [`closure_sotd`]. Nothing is chosen.
pub fn compositions(conjuncts: &[Formula]) -> Vec<Composition> {
    let n = match conjuncts.first() {
        Some(f) => f.order().len(),
        None => return Vec::new(),
    };
    let is_eq: Vec<bool> = conjuncts
        .iter()
        .map(|c| c.eligible_ecs().len() == 1 && c.atoms.len() == 1)
        .collect();
    let mut out = Vec::new();
    for groups in set_partitions(conjuncts.len()) {
        let eqs: Vec<Vec<usize>> = groups
            .iter()
            .map(|g| g.iter().copied().filter(|&k| is_eq[k]).collect())
            .collect();
        if eqs.iter().any(Vec::is_empty) {
            continue;
        }
        for ecs in product(&eqs) {
            let pairs: Vec<ConstraintPair> = groups
                .iter()
                .zip(&ecs)
                .map(|(g, &e)| {
                    let mut a = PolySet::new();
                    for &k in g {
                        a.extend(&conjuncts[k].polys());
                    }
                    ConstraintPair::new(a, conjuncts[e].polys())
                })
                .collect();
            out.push(Composition {
                groups: groups.clone(),
                ecs,
                sotd: closure_sotd(&pairs, n),
            });
        }
    }
    out
}

/// All set partitions of `0..n`, blocks in order of their least element.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[b].push(k);
                next.push(q);
            }
            let mut q = p;
            q.push(vec![k]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Splits a formula into its top-level conjuncts as standalone formulae.
pub fn conjuncts(f: &Formula) -> Vec<Formula> {
    let parts: Vec<&Qff> = match &f.tree {
        Qff::And(cs) => cs.iter().collect(),
        t => vec![t],
    };
    parts
        .into_iter()
        .map(|t| {
            let mut atoms = Vec::new();
            let tree = reindex(t, &f.atoms, &mut atoms);
            Formula { atoms, tree, ec: None }
        })
        .collect()
}

fn reindex(t: &Qff, src: &[Atom], dst: &mut Vec<Atom>) -> Qff {
    match t {
        Qff::Atom(i) => {
            dst.push(src[*i].clone());
            Qff::Atom(dst.len() - 1)
        }
        Qff::Not(c) => Qff::Not(Box::new(reindex(c, src, dst))),
        Qff::And(cs) => Qff::And(cs.iter().map(|c| reindex(c, src, dst)).collect()),
        Qff::Or(cs) => Qff::Or(cs.iter().map(|c| reindex(c, src, dst)).collect()),
    }
}
