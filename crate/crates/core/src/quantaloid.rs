//! Finite quantaloids given by explicit tables.
//!
//! Composition is stored as one table per composable object triple, which
//! makes exhaustive validation possible and keeps results bit-exact.

use std::fmt;

use crate::error::{QError, Result};
use crate::lattice::{Elem, FiniteLattice};

pub mod fixtures;
mod idm;

pub use idm::{build_idm, Idm};

/// Object of a base quantaloid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

/// A base arrow `elem: src -> dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: ObjId,
    pub dst: ObjId,
    pub elem: Elem,
}

impl Arrow {
    pub fn new(src: ObjId, dst: ObjId, elem: Elem) -> Self {
        Arrow { src, dst, elem }
    }

    /// Endo-arrow on `obj`.
    pub fn endo(obj: ObjId, elem: Elem) -> Self {
        Arrow {
            src: obj,
            dst: obj,
            elem,
        }
    }
}

/// A splitting `u ∘ f = t`, `f ∘ u = 1_B` of a monad `t` on `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Splitting {
    /// The splitting object `B`.
    pub object: ObjId,
    /// `f: A -> B`.
    pub f: Elem,
    /// `u: B -> A`.
    pub u: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Associativity,
    LeftUnit,
    RightUnit,
    LeftSupDistribution,
    RightSupDistribution,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Associativity => "associativity fails",
            Law::LeftUnit => "unit law fails (left)",
            Law::RightUnit => "unit law fails (right)",
            Law::LeftSupDistribution => "sup-distribution fails (left argument)",
            Law::RightSupDistribution => "sup-distribution fails (right argument)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantaloidViolation {
    pub law: Law,
    pub witness: String,
}

impl fmt::Display for QuantaloidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuantaloidReport {
    pub violations: Vec<QuantaloidViolation>,
}

impl QuantaloidReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite quantaloid: hom lattices, composition tables and identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantaloid {
    name: String,
    objects: Vec<String>,
    /// `homs[src * n + dst]`
    homs: Vec<FiniteLattice>,
    /// `comp[(a * n + b) * n + c][g * |hom(a,b)| + f] = g ∘ f` for `f: a -> b`, `g: b -> c`.
    comp: Vec<Vec<Elem>>,
    ids: Vec<Elem>,
}

impl Quantaloid {
    /// Assembles a quantaloid from raw tables, checking only shapes.
    ///
    /// Use [`Quantaloid::validated`] or [`validate_quantaloid`] to check the axioms.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        homs: Vec<FiniteLattice>,
        comp: Vec<Vec<Elem>>,
        ids: Vec<Elem>,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n || comp.len() != n * n * n || ids.len() != n {
            return Err(QError::InvalidQuantaloid(format!(
                "{n} objects need {} homs, {} composition tables and {n} identities",
                n * n,
                n * n * n
            )));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let table = &comp[(a * n + b) * n + c];
                    let ab = homs[a * n + b].len();
                    let bc = homs[b * n + c].len();
                    let ac = homs[a * n + c].len();
                    if table.len() != ab * bc {
                        return Err(QError::InvalidQuantaloid(format!(
                            "composition table {}->{}->{} has {} entries, expected {}",
                            objects[a],
                            objects[b],
                            objects[c],
                            table.len(),
                            ab * bc
                        )));
                    }
                    if let Some(&bad) = table.iter().find(|&&x| x >= ac) {
                        return Err(QError::OutOfCarrier { elem: bad, size: ac });
                    }
                }
            }
            if ids[a] >= homs[a * n + a].len() {
                return Err(QError::OutOfCarrier {
                    elem: ids[a],
                    size: homs[a * n + a].len(),
                });
            }
        }
        Ok(Quantaloid {
            name: name.into(),
            objects,
            homs,
            comp,
            ids,
        })
    }

    /// Builds the composition tables from a function `(a, b, c, g, f) -> g ∘ f`.
    pub fn from_fn(
        name: impl Into<String>,
        objects: Vec<String>,
        homs: Vec<FiniteLattice>,
        ids: Vec<Elem>,
        compose: impl Fn(usize, usize, usize, Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n {
            return Err(QError::InvalidQuantaloid(format!(
                "{n} objects need {} homs",
                n * n
            )));
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = homs[a * n + b].len();
                    let bc = homs[b * n + c].len();
                    let mut table = Vec::with_capacity(ab * bc);
                    for g in 0..bc {
                        for f in 0..ab {
                            table.push(compose(a, b, c, g, f));
                        }
                    }
                    comp.push(table);
                }
            }
        }
        Self::new(name, objects, homs, comp, ids)
    }

    /// A one-object quantaloid (quantale) with object `*`.
    pub fn quantale(
        name: impl Into<String>,
        lattice: FiniteLattice,
        unit: Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        Self::from_fn(name, vec!["*".into()], vec![lattice], vec![unit], |_, _, _, g, f| {
            mul(g, f)
        })
    }

    /// Like [`Quantaloid::new`] but rejects tables that fail [`validate_quantaloid`].
    pub fn validated(self) -> Result<Self> {
        let report = validate_quantaloid(&self);
        match report.violations.first() {
            None => Ok(self),
            Some(v) => Err(QError::InvalidQuantaloid(v.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.objects[a.0]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId)
    }

    pub fn check_object(&self, a: ObjId) -> Result<()> {
        if a.0 < self.objects.len() {
            Ok(())
        } else {
            Err(QError::UnknownObject(a.0))
        }
    }

    pub fn check_arrow(&self, x: Arrow) -> Result<()> {
        self.check_object(x.src)?;
        self.check_object(x.dst)?;
        let size = self.hom(x.src, x.dst).len();
        if x.elem < size {
            Ok(())
        } else {
            Err(QError::OutOfCarrier { elem: x.elem, size })
        }
    }

    /// The hom lattice of arrows `src -> dst`.
    #[inline]
    pub fn hom(&self, src: ObjId, dst: ObjId) -> &FiniteLattice {
        &self.homs[src.0 * self.objects.len() + dst.0]
    }

    #[inline]
    pub fn identity(&self, a: ObjId) -> Elem {
        self.ids[a.0]
    }

    /// `g ∘ f` for `f: a -> b` and `g: b -> c`; unchecked.
    #[inline]
    pub fn comp(&self, a: ObjId, b: ObjId, c: ObjId, g: Elem, f: Elem) -> Elem {
        let n = self.objects.len();
        let ab = self.homs[a.0 * n + b.0].len();
        self.comp[(a.0 * n + b.0) * n + c.0][g * ab + f]
    }

    /// Checked composition `g ∘ f`.
    pub fn compose(&self, g: Arrow, f: Arrow) -> Result<Arrow> {
        self.check_arrow(g)?;
        self.check_arrow(f)?;
        if f.dst != g.src {
            return Err(QError::IncompatibleObjects(format!(
                "cannot compose {} after {}",
                self.arrow_name(g),
                self.arrow_name(f)
            )));
        }
        Ok(Arrow::new(
            f.src,
            g.dst,
            self.comp(f.src, f.dst, g.dst, g.elem, f.elem),
        ))
    }

    pub fn arrow_name(&self, x: Arrow) -> String {
        let name = self.hom(x.src, x.dst).name(x.elem);
        if self.objects.len() == 1 {
            name.to_string()
        } else {
            format!(
                "{}:{}->{}",
                name,
                self.object_name(x.src),
                self.object_name(x.dst)
            )
        }
    }

    /// `[f, h]`: the largest `x: X -> A` with `f ∘ x <= h`, for `f: A -> B`, `h: X -> B`.
    pub fn lifting(&self, f: Arrow, h: Arrow) -> Result<Arrow> {
        self.check_arrow(f)?;
        self.check_arrow(h)?;
        if f.dst != h.dst {
            return Err(QError::IncompatibleObjects(format!(
                "lifting needs a common target, got {} and {}",
                self.arrow_name(f),
                self.arrow_name(h)
            )));
        }
        Ok(Arrow::new(
            h.src,
            f.src,
            self.lift(h.src, f.src, f.dst, f.elem, h.elem),
        ))
    }

    /// Unchecked lifting for `f: a -> b`, `h: x -> b`, returning an element of `hom(x, a)`.
    pub(crate) fn lift(&self, x: ObjId, a: ObjId, b: ObjId, f: Elem, h: Elem) -> Elem {
        let target = self.hom(x, b);
        let dom = self.hom(x, a);
        dom.elements()
            .filter(|&c| target.le(self.comp(x, a, b, f, c), h))
            .fold(dom.bottom(), |acc, c| dom.join2(acc, c))
    }

    /// `{f, h}`: the largest `x: B -> Y` with `x ∘ f <= h`, for `f: A -> B`, `h: A -> Y`.
    pub fn extension(&self, f: Arrow, h: Arrow) -> Result<Arrow> {
        self.check_arrow(f)?;
        self.check_arrow(h)?;
        if f.src != h.src {
            return Err(QError::IncompatibleObjects(format!(
                "extension needs a common source, got {} and {}",
                self.arrow_name(f),
                self.arrow_name(h)
            )));
        }
        Ok(Arrow::new(
            f.dst,
            h.dst,
            self.extend(f.src, f.dst, h.dst, f.elem, h.elem),
        ))
    }

    /// Unchecked extension for `f: a -> b`, `h: a -> y`, returning an element of `hom(b, y)`.
    pub(crate) fn extend(&self, a: ObjId, b: ObjId, y: ObjId, f: Elem, h: Elem) -> Elem {
        let target = self.hom(a, y);
        let cod = self.hom(b, y);
        cod.elements()
            .filter(|&c| target.le(self.comp(a, b, y, c, f), h))
            .fold(cod.bottom(), |acc, c| cod.join2(acc, c))
    }

    pub fn is_idempotent(&self, a: ObjId, e: Elem) -> bool {
        self.comp(a, a, a, e, e) == e
    }

    /// All idempotent endo-arrows on `a`, in element order.
    pub fn idempotents(&self, a: ObjId) -> Result<Vec<Arrow>> {
        self.check_object(a)?;
        Ok(self
            .hom(a, a)
            .elements()
            .filter(|&e| self.is_idempotent(a, e))
            .map(|e| Arrow::endo(a, e))
            .collect())
    }

    pub fn is_monad(&self, a: ObjId, t: Elem) -> bool {
        let l = self.hom(a, a);
        l.le(self.identity(a), t) && l.le(self.comp(a, a, a, t, t), t)
    }

    /// All monads `1_a <= t`, `t ∘ t <= t` on `a`.
    pub fn monads(&self, a: ObjId) -> Result<Vec<Arrow>> {
        self.check_object(a)?;
        Ok(self
            .hom(a, a)
            .elements()
            .filter(|&t| self.is_monad(a, t))
            .map(|t| Arrow::endo(a, t))
            .collect())
    }

    /// First splitting of the monad `t` in scan order: objects by id, then `(f, u)`
    /// lexicographically by element id.
    pub fn split_monad(&self, t: Arrow) -> Result<Option<Splitting>> {
        self.check_arrow(t)?;
        if t.src != t.dst || !self.is_monad(t.src, t.elem) {
            return Err(QError::NotMonad(self.arrow_name(t)));
        }
        Ok(self.find_splitting(t.src, t.elem))
    }

    /// Splitting search without the monad precondition; also splits idempotents.
    pub(crate) fn find_splitting(&self, a: ObjId, t: Elem) -> Option<Splitting> {
        for b in self.objects() {
            let id_b = self.identity(b);
            for f in self.hom(a, b).elements() {
                for u in self.hom(b, a).elements() {
                    if self.comp(a, b, a, u, f) == t && self.comp(b, a, b, f, u) == id_b {
                        return Some(Splitting { object: b, f, u });
                    }
                }
            }
        }
        None
    }
}

/// Exhaustively checks associativity, units and sup-distribution.
///
/// Sup-distribution is checked on the empty join and on binary joins, which
/// covers arbitrary joins in a finite lattice.
pub fn validate_quantaloid(q: &Quantaloid) -> QuantaloidReport {
    let mut violations = Vec::new();
    let objs: Vec<ObjId> = q.objects().collect();
    let name = |a: ObjId, b: ObjId, x: Elem| q.arrow_name(Arrow::new(a, b, x));

    for &a in &objs {
        for &b in &objs {
            let ab = q.hom(a, b);
            for f in ab.elements() {
                if q.comp(a, b, b, q.identity(b), f) != f {
                    violations.push(QuantaloidViolation {
                        law: Law::LeftUnit,
                        witness: format!("1 ∘ {} != {}", name(a, b, f), name(a, b, f)),
                    });
                }
                if q.comp(a, a, b, f, q.identity(a)) != f {
                    violations.push(QuantaloidViolation {
                        law: Law::RightUnit,
                        witness: format!("{} ∘ 1 != {}", name(a, b, f), name(a, b, f)),
                    });
                }
            }
        }
    }

    for &a in &objs {
        for &b in &objs {
            for &c in &objs {
                let (ab, bc, ac) = (q.hom(a, b), q.hom(b, c), q.hom(a, c));
                // g ∘ (f1 ∨ f2) and g ∘ 0
                for g in bc.elements() {
                    if q.comp(a, b, c, g, ab.bottom()) != ac.bottom() {
                        violations.push(QuantaloidViolation {
                            law: Law::LeftSupDistribution,
                            witness: format!("{} ∘ 0 != 0", name(b, c, g)),
                        });
                    }
                    for f1 in ab.elements() {
                        for f2 in ab.elements() {
                            let lhs = q.comp(a, b, c, g, ab.join2(f1, f2));
                            let rhs = ac.join2(q.comp(a, b, c, g, f1), q.comp(a, b, c, g, f2));
                            if lhs != rhs {
                                violations.push(QuantaloidViolation {
                                    law: Law::LeftSupDistribution,
                                    witness: format!(
                                        "{} ∘ ({} ∨ {}) = {} but the join of composites is {}",
                                        name(b, c, g),
                                        name(a, b, f1),
                                        name(a, b, f2),
                                        name(a, c, lhs),
                                        name(a, c, rhs)
                                    ),
                                });
                            }
                        }
                    }
                }
                for f in ab.elements() {
                    if q.comp(a, b, c, bc.bottom(), f) != ac.bottom() {
                        violations.push(QuantaloidViolation {
                            law: Law::RightSupDistribution,
                            witness: format!("0 ∘ {} != 0", name(a, b, f)),
                        });
                    }
                    for g1 in bc.elements() {
                        for g2 in bc.elements() {
                            let lhs = q.comp(a, b, c, bc.join2(g1, g2), f);
                            let rhs = ac.join2(q.comp(a, b, c, g1, f), q.comp(a, b, c, g2, f));
                            if lhs != rhs {
                                violations.push(QuantaloidViolation {
                                    law: Law::RightSupDistribution,
                                    witness: format!(
                                        "({} ∨ {}) ∘ {} = {} but the join of composites is {}",
                                        name(b, c, g1),
                                        name(b, c, g2),
                                        name(a, b, f),
                                        name(a, c, lhs),
                                        name(a, c, rhs)
                                    ),
                                });
                            }
                        }
                    }
                }
                for &d in &objs {
                    let cd = q.hom(c, d);
                    for f in ab.elements() {
                        for g in bc.elements() {
                            let gf = q.comp(a, b, c, g, f);
                            for h in cd.elements() {
                                let left = q.comp(a, c, d, h, gf);
                                let right = q.comp(a, b, d, q.comp(b, c, d, h, g), f);
                                if left != right {
                                    violations.push(QuantaloidViolation {
                                        law: Law::Associativity,
                                        witness: format!(
                                            "({} ∘ {}) ∘ {} != {} ∘ ({} ∘ {})",
                                            name(c, d, h),
                                            name(b, c, g),
                                            name(a, b, f),
                                            name(c, d, h),
                                            name(b, c, g),
                                            name(a, b, f)
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    QuantaloidReport { violations }
}
