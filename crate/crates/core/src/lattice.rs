//! Finite complete lattices.
//!
//! Elements are dense ids `0..n`. The order is stored as a full boolean
//! table and binary joins and meets are tabulated once at construction, so
//! every query after that is a table lookup.

use std::fmt;

use crate::error::{QError, Result};

/// Element id inside a single lattice.
pub type Elem = usize;

/// An axiom failure found by [`validate_lattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeViolation {
    NotReflexive(Elem),
    NotAntisymmetric(Elem, Elem),
    NotTransitive(Elem, Elem, Elem),
    /// The subset has no least upper bound.
    NoJoin(Vec<Elem>),
    /// The subset has no greatest lower bound.
    NoMeet(Vec<Elem>),
    /// The order table is not square or is empty.
    Malformed(String),
}

impl fmt::Display for LatticeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeViolation::NotReflexive(x) => write!(f, "not reflexive at {x}"),
            LatticeViolation::NotAntisymmetric(x, y) => {
                write!(f, "not antisymmetric: {x} <= {y} <= {x}")
            }
            LatticeViolation::NotTransitive(x, y, z) => {
                write!(f, "not transitive: {x} <= {y} <= {z} but not {x} <= {z}")
            }
            LatticeViolation::NoJoin(s) => write!(f, "no sup for {s:?}"),
            LatticeViolation::NoMeet(s) => write!(f, "no inf for {s:?}"),
            LatticeViolation::Malformed(m) => write!(f, "malformed order table: {m}"),
        }
    }
}

/// Result of [`validate_lattice`]; empty means the relation is a complete lattice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeReport {
    pub violations: Vec<LatticeViolation>,
}

impl LatticeReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `leq[x][y]` (meaning `x <= y`) is a complete lattice order.
///
/// Poset axioms are checked first; sups and infs are only examined when the
/// relation is a partial order. For a finite poset, having a bottom and all
/// binary joins is equivalent to completeness, so the witnesses reported are
/// the empty set and pairs.
pub fn validate_lattice(leq: &[Vec<bool>]) -> LatticeReport {
    let mut violations = Vec::new();
    let n = leq.len();
    if n == 0 {
        violations.push(LatticeViolation::Malformed("empty carrier".into()));
        return LatticeReport { violations };
    }
    if let Some((i, row)) = leq.iter().enumerate().find(|(_, r)| r.len() != n) {
        violations.push(LatticeViolation::Malformed(format!(
            "row {i} has {} entries, expected {n}",
            row.len()
        )));
        return LatticeReport { violations };
    }
    for x in 0..n {
        if !leq[x][x] {
            violations.push(LatticeViolation::NotReflexive(x));
        }
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if leq[x][y] && leq[y][x] {
                violations.push(LatticeViolation::NotAntisymmetric(x, y));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !leq[x][y] {
                continue;
            }
            for z in 0..n {
                if leq[y][z] && !leq[x][z] {
                    violations.push(LatticeViolation::NotTransitive(x, y, z));
                }
            }
        }
    }
    if !violations.is_empty() {
        return LatticeReport { violations };
    }

    let le = |x: usize, y: usize| leq[x][y];
    if least_upper_bound(n, &le, &[]).is_none() {
        violations.push(LatticeViolation::NoJoin(vec![]));
    }
    if greatest_lower_bound(n, &le, &[]).is_none() {
        violations.push(LatticeViolation::NoMeet(vec![]));
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if least_upper_bound(n, &le, &[x, y]).is_none() {
                violations.push(LatticeViolation::NoJoin(vec![x, y]));
            }
            if greatest_lower_bound(n, &le, &[x, y]).is_none() {
                violations.push(LatticeViolation::NoMeet(vec![x, y]));
            }
        }
    }
    LatticeReport { violations }
}

fn least_upper_bound(n: usize, le: &impl Fn(usize, usize) -> bool, s: &[Elem]) -> Option<Elem> {
    let uppers: Vec<Elem> = (0..n).filter(|&u| s.iter().all(|&x| le(x, u))).collect();
    uppers
        .iter()
        .copied()
        .find(|&u| uppers.iter().all(|&v| le(u, v)))
}

fn greatest_lower_bound(n: usize, le: &impl Fn(usize, usize) -> bool, s: &[Elem]) -> Option<Elem> {
    let lowers: Vec<Elem> = (0..n).filter(|&l| s.iter().all(|&x| le(l, x))).collect();
    lowers
        .iter()
        .copied()
        .find(|&l| lowers.iter().all(|&v| le(v, l)))
}

/// A validated finite complete lattice with symbolic element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    /// Builds a lattice from element names and the full order table.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        if names.len() != leq.len() {
            return Err(QError::InvalidLattice(format!(
                "{} names for {} rows",
                names.len(),
                leq.len()
            )));
        }
        let report = validate_lattice(&leq);
        if let Some(v) = report.violations.first() {
            return Err(QError::InvalidLattice(v.to_string()));
        }
        let n = names.len();
        let le = |x: usize, y: usize| leq[x][y];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                join[x * n + y] = least_upper_bound(n, &le, &[x, y]).expect("validated");
                meet[x * n + y] = greatest_lower_bound(n, &le, &[x, y]).expect("validated");
            }
        }
        let bottom = least_upper_bound(n, &le, &[]).expect("validated");
        let top = greatest_lower_bound(n, &le, &[]).expect("validated");
        Ok(FiniteLattice {
            names,
            leq: leq.into_iter().flatten().collect(),
            join,
            meet,
            bottom,
            top,
        })
    }

    /// Builds a lattice from names and an order predicate.
    pub fn from_order(names: Vec<String>, le: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let n = names.len();
        let table = (0..n).map(|x| (0..n).map(|y| le(x, y)).collect()).collect();
        Self::new(names, table)
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        Self::from_order(names, |x, y| x <= y).expect("a nonempty chain is a complete lattice")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    fn check(&self, x: Elem) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(QError::OutOfCarrier {
                elem: x,
                size: self.len(),
            })
        }
    }

    /// `x <= y`; unchecked, panics on out-of-carrier ids.
    #[inline]
    pub fn le(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.len() + y]
    }

    /// Binary join; unchecked.
    #[inline]
    pub fn join2(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.len() + y]
    }

    /// Binary meet; unchecked.
    #[inline]
    pub fn meet2(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.len() + y]
    }

    pub fn leq(&self, x: Elem, y: Elem) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.le(x, y))
    }

    /// Supremum of `s`; the empty join is the bottom.
    pub fn join(&self, s: &[Elem]) -> Result<Elem> {
        s.iter().try_fold(self.bottom, |acc, &x| {
            self.check(x)?;
            Ok(self.join2(acc, x))
        })
    }

    /// Infimum of `s`; the empty meet is the top.
    pub fn meet(&self, s: &[Elem]) -> Result<Elem> {
        s.iter().try_fold(self.top, |acc, &x| {
            self.check(x)?;
            Ok(self.meet2(acc, x))
        })
    }

    /// Restriction to a subset closed under the inherited joins (including the
    /// bottom). Meets are recomputed inside the subset.
    pub(crate) fn sub_join_closed(&self, carrier: &[Elem]) -> Result<Self> {
        let names = carrier.iter().map(|&x| self.names[x].clone()).collect();
        Self::from_order(names, |i, j| self.le(carrier[i], carrier[j]))
    }

    /// Cover relation of the order, used for compact serialization.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y
                    && self.le(x, y)
                    && !(0..n).any(|z| z != x && z != y && self.le(x, z) && self.le(z, y))
                {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3() -> FiniteLattice {
        FiniteLattice::chain(["0", "m", "1"])
    }

    /// Tropical lattice {0..4} with x ⊑ y iff x ≥ y numerically.
    fn trop4() -> FiniteLattice {
        let names = (0..=4).map(|i| i.to_string()).collect();
        FiniteLattice::from_order(names, |x, y| x >= y).unwrap()
    }

    fn powerset2() -> FiniteLattice {
        // bitmask encoding: 0 = {}, 1 = {a}, 2 = {b}, 3 = {a,b}
        FiniteLattice::from_order(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            |x, y| x & y == x,
        )
        .unwrap()
    }

    #[test]
    fn chain_is_valid() {
        let table: Vec<Vec<bool>> = (0..3).map(|x| (0..3).map(|y| x <= y).collect()).collect();
        assert!(validate_lattice(&table).is_ok());
    }

    #[test]
    fn antichain_has_no_sup() {
        let table = vec![vec![true, false], vec![false, true]];
        let report = validate_lattice(&table);
        assert!(report.violations.contains(&LatticeViolation::NoJoin(vec![0, 1])));
        assert!(report.violations.contains(&LatticeViolation::NoJoin(vec![])));
        assert_eq!(
            report.violations.iter().find(|v| matches!(v, LatticeViolation::NoJoin(s) if s.len() == 2)).unwrap().to_string(),
            "no sup for [0, 1]"
        );
    }

    #[test]
    fn powerset_valid_against_all_subsets() {
        // Oracle: every one of the 16 subsets has a sup and an inf.
        let l = powerset2();
        for mask in 0u32..16 {
            let s: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
            let le = |x: usize, y: usize| l.le(x, y);
            assert_eq!(least_upper_bound(4, &le, &s), Some(l.join(&s).unwrap()));
            assert_eq!(greatest_lower_bound(4, &le, &s), Some(l.meet(&s).unwrap()));
        }
    }

    #[test]
    fn non_posets_are_reported() {
        let table = vec![vec![false, true], vec![true, true]];
        let r = validate_lattice(&table);
        assert!(r.violations.contains(&LatticeViolation::NotReflexive(0)));
        assert!(r.violations.contains(&LatticeViolation::NotAntisymmetric(0, 1)));
        let table = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        let r = validate_lattice(&table);
        assert_eq!(r.violations, vec![LatticeViolation::NotTransitive(0, 1, 2)]);
    }

    #[test]
    fn joins_in_chain_and_tropical() {
        let l = q3();
        assert_eq!(l.join(&[0, 1]).unwrap(), 1);
        assert_eq!(l.join(&[]).unwrap(), l.bottom());
        assert_eq!(l.meet(&[]).unwrap(), l.top());
        let t = trop4();
        assert_eq!(t.join(&[1, 3]).unwrap(), 1);
        assert_eq!(t.bottom(), 4);
        assert_eq!(t.top(), 0);
    }

    #[test]
    fn leq_examples() {
        let l = q3();
        assert!(l.leq(0, 1).unwrap());
        assert!(!l.leq(2, 1).unwrap());
        assert!(trop4().leq(4, 2).unwrap());
        assert!(matches!(l.leq(3, 0), Err(QError::OutOfCarrier { elem: 3, size: 3 })));
        assert!(l.join(&[0, 7]).is_err());
    }

    #[test]
    fn lattice_laws_exhaustive_on_fixtures() {
        for l in [q3(), trop4(), powerset2(), FiniteLattice::chain(["0", "1"])] {
            for x in l.elements() {
                assert_eq!(l.join2(x, x), x);
                assert_eq!(l.meet2(x, x), x);
                for y in l.elements() {
                    let j = l.join2(x, y);
                    assert!(l.le(x, j) && l.le(y, j));
                    assert!(l.le(l.meet2(x, y), x));
                    assert_eq!(j, l.join2(y, x));
                    assert_eq!(l.meet2(x, y), l.meet2(y, x));
                    // minimality of the join by scan
                    for u in l.elements() {
                        if l.le(x, u) && l.le(y, u) {
                            assert!(l.le(j, u));
                        }
                    }
                    for z in l.elements() {
                        assert_eq!(l.join2(l.join2(x, y), z), l.join2(x, l.join2(y, z)));
                        assert_eq!(l.meet2(l.meet2(x, y), z), l.meet2(x, l.meet2(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn covers_of_powerset() {
        let c = powerset2().covers();
        assert_eq!(c, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
