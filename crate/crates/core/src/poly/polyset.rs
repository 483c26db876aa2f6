//! Sets of canonical polynomials with provenance tags.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::MultiPoly;

/// How a projection polynomial came about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Input,
    Content,
    Coefficient,
    Discriminant,
    Resultant,
    CrossResultant,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Input => "input",
            Provenance::Content => "content",
            Provenance::Coefficient => "coefficient",
            Provenance::Discriminant => "discriminant",
            Provenance::Resultant => "resultant",
            Provenance::CrossResultant => "cross_resultant",
        };
        f.write_str(s)
    }
}

/// Insertion-ordered set of canonical, nonconstant polynomials. Inserting a
/// polynomial that is already present (up to a nonzero constant factor) keeps
/// the first provenance.
#[derive(Clone, Debug, Default)]
pub struct PolySet {
    items: Vec<(MultiPoly, Provenance)>,
    keys: BTreeSet<MultiPoly>,
}

impl PolySet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true when the polynomial was new. Zero and constants are dropped.
    pub fn insert(&mut self, p: &MultiPoly, prov: Provenance) -> bool {
        if p.is_constant() {
            return false;
        }
        let c = p.canonical();
        if self.keys.contains(&c) {
            return false;
        }
        self.keys.insert(c.clone());
        self.items.push((c, prov));
        true
    }

    pub fn extend(&mut self, other: &PolySet) {
        for (p, prov) in &other.items {
            self.insert(p, *prov);
        }
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.keys.contains(&p.canonical())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiPoly> {
        self.items.iter().map(|(p, _)| p)
    }

    pub fn entries(&self) -> &[(MultiPoly, Provenance)] {
        &self.items
    }

    pub fn provenance(&self, p: &MultiPoly) -> Option<Provenance> {
        let c = p.canonical();
        self.items.iter().find(|(q, _)| *q == c).map(|(_, pr)| *pr)
    }

    pub fn is_subset(&self, other: &PolySet) -> bool {
        self.keys.is_subset(&other.keys)
    }

    pub fn set_eq(&self, other: &PolySet) -> bool {
        self.keys == other.keys
    }

    /// Elements of `self` not in `other`, in `self`'s order.
    pub fn difference(&self, other: &PolySet) -> PolySet {
        let mut out = PolySet::new();
        for (p, prov) in &self.items {
            if !other.keys.contains(p) {
                out.insert(p, *prov);
            }
        }
        out
    }

    /// Elements whose main variable is `v`.
    pub fn at_level(&self, v: usize) -> PolySet {
        let mut out = PolySet::new();
        for (p, prov) in &self.items {
            if p.mvar() == Some(v) {
                out.insert(p, *prov);
            }
        }
        out
    }

    /// Elements whose main variable is strictly below `v`.
    pub fn below(&self, v: usize) -> PolySet {
        let mut out = PolySet::new();
        for (p, prov) in &self.items {
            if p.mvar().map(|m| m < v).unwrap_or(false) {
                out.insert(p, *prov);
            }
        }
        out
    }

    /// Sum of total degrees of all monomials of all elements.
    pub fn sotd(&self) -> u64 {
        self.iter().map(MultiPoly::sotd).sum()
    }

    /// Elements sorted canonically, for order-independent output.
    pub fn sorted(&self) -> Vec<&MultiPoly> {
        self.keys.iter().collect()
    }
}

impl<'a> FromIterator<&'a MultiPoly> for PolySet {
    fn from_iter<T: IntoIterator<Item = &'a MultiPoly>>(iter: T) -> Self {
        let mut s = PolySet::new();
        for p in iter {
            s.insert(p, Provenance::Input);
        }
        s
    }
}

impl fmt::Display for PolySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (p, _)) in self.items.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_poly, VarOrder};
    use super::*;

    #[test]
    fn dedups_up_to_scalar_and_drops_constants() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let mut s = PolySet::new();
        assert!(s.insert(&parse_poly("2*x-2", &o).unwrap(), Provenance::Coefficient));
        assert!(!s.insert(&parse_poly("1-x", &o).unwrap(), Provenance::Resultant));
        assert!(!s.insert(&parse_poly("-3", &o).unwrap(), Provenance::Content));
        assert_eq!(s.len(), 1);
        assert_eq!(
            s.provenance(&parse_poly("x-1", &o).unwrap()),
            Some(Provenance::Coefficient)
        );
    }

    #[test]
    fn levels_and_difference() {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let all: PolySet = ["x^2-1", "y^2+x", "4*x*y-1"]
            .iter()
            .map(|s| parse_poly(s, &o).unwrap())
            .collect::<Vec<_>>()
            .iter()
            .collect();
        assert_eq!(all.at_level(1).len(), 2);
        assert_eq!(all.below(1).len(), 1);
        let d = all.difference(&all.at_level(1));
        assert!(d.set_eq(&all.below(1)));
        assert_eq!(all.sotd(), 2 + 3 + 2);
    }
}
