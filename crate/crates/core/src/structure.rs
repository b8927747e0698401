//! Enriched structures over a base quantaloid and their classification,
//! semidistributors between them, and object maps.

use std::fmt;
use std::sync::Arc;

use crate::error::{QError, Result};
use crate::lattice::Elem;
use crate::matrix::{compose_unchecked, leq_unchecked, QMatrix, TypedSet};
use crate::quantaloid::{Arrow, ObjId, Quantaloid};

pub(crate) fn same_base(a: &Arc<Quantaloid>, b: &Arc<Quantaloid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Which of the nested structure notions a hom-matrix satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Classification {
    pub semicategory: bool,
    pub regular: bool,
    pub totally_regular: bool,
    pub category: bool,
    pub normal: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "semicategory: {}\nregular: {}\ntotally_regular: {}\ncategory: {}\nnormal: {}",
            mark(self.semicategory),
            mark(self.regular),
            mark(self.totally_regular),
            mark(self.category),
            mark(self.normal)
        )
    }
}

/// A typed object set with a square hom-matrix; `hom(a2, a)` is an arrow `t(a) -> t(a2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedStructure {
    base: Arc<Quantaloid>,
    hom: QMatrix,
    flags: Classification,
}

impl EnrichedStructure {
    pub fn new(base: Arc<Quantaloid>, obs: Arc<TypedSet>, entries: Vec<Elem>) -> Result<Self> {
        let hom = QMatrix::new(&base, obs.clone(), obs, entries)?;
        Ok(Self::from_checked(base, hom))
    }

    /// Wraps a square matrix whose row and column sets coincide.
    pub fn from_matrix(base: Arc<Quantaloid>, hom: QMatrix) -> Result<Self> {
        if hom.rows() != hom.cols() {
            return Err(QError::ShapeMismatch("hom-matrix must be square on one object set".into()));
        }
        let hom = QMatrix::new(&base, hom.rows().clone(), hom.rows().clone(), hom.entries().to_vec())?;
        Ok(Self::from_checked(base, hom))
    }

    pub(crate) fn from_checked(base: Arc<Quantaloid>, hom: QMatrix) -> Self {
        let flags = classify_matrix(&base, &hom);
        EnrichedStructure { base, hom, flags }
    }

    /// `*_X`: one object of type `x` whose hom is the identity.
    pub fn star_identity(base: Arc<Quantaloid>, x: ObjId) -> Result<Self> {
        base.check_object(x)?;
        let id = base.identity(x);
        Self::star(base, Arrow::endo(x, id))
    }

    /// `*_e`: one object of type `dom(e)` whose hom is the idempotent `e`.
    pub fn star_idempotent(base: Arc<Quantaloid>, e: Arrow) -> Result<Self> {
        base.check_arrow(e)?;
        if e.src != e.dst || !base.is_idempotent(e.src, e.elem) {
            return Err(QError::NotIdempotent(base.arrow_name(e)));
        }
        Self::star(base, e)
    }

    /// One object whose hom is the given endo-arrow.
    pub fn star(base: Arc<Quantaloid>, e: Arrow) -> Result<Self> {
        base.check_arrow(e)?;
        if e.src != e.dst {
            return Err(QError::IncompatibleObjects("a one-object hom must be an endo-arrow".into()));
        }
        let obs = Arc::new(TypedSet::new(vec!["*".into()], vec![e.src])?);
        Self::new(base, obs, vec![e.elem])
    }

    pub fn base(&self) -> &Arc<Quantaloid> {
        &self.base
    }

    pub fn obs(&self) -> &Arc<TypedSet> {
        self.hom.rows()
    }

    pub fn hom_matrix(&self) -> &QMatrix {
        &self.hom
    }

    /// `A(a2, a): t(a) -> t(a2)`.
    #[inline]
    pub fn hom(&self, a2: usize, a: usize) -> Elem {
        self.hom.get(a2, a)
    }

    pub fn n_objects(&self) -> usize {
        self.hom.n_rows()
    }

    #[inline]
    pub fn type_of(&self, a: usize) -> ObjId {
        self.obs().type_of(a)
    }

    pub fn flags(&self) -> Classification {
        self.flags
    }

    pub fn is_regular(&self) -> bool {
        self.flags.regular
    }

    pub fn is_totally_regular(&self) -> bool {
        self.flags.totally_regular
    }

    pub fn is_category(&self) -> bool {
        self.flags.category
    }

    pub fn require_totally_regular(&self) -> Result<()> {
        if self.flags.totally_regular {
            Ok(())
        } else {
            Err(QError::NotTotallyRegular)
        }
    }

    pub fn require_category(&self) -> Result<()> {
        if self.flags.category {
            Ok(())
        } else {
            Err(QError::NotCategory)
        }
    }

    pub(crate) fn comp(&self, a: ObjId, b: ObjId, c: ObjId, g: Elem, f: Elem) -> Elem {
        self.base.comp(a, b, c, g, f)
    }

    /// Same hom-matrix, renamed objects.
    pub fn with_object_names(&self, names: Vec<String>) -> Result<Self> {
        let obs = Arc::new(TypedSet::new(names, self.obs().types().to_vec())?);
        Ok(EnrichedStructure {
            base: self.base.clone(),
            hom: self.hom.retyped(obs.clone(), obs)?,
            flags: self.flags,
        })
    }
}

/// Recomputes the classification flags of a structure.
pub fn classify(s: &EnrichedStructure) -> Classification {
    classify_matrix(&s.base, &s.hom)
}

fn classify_matrix(q: &Quantaloid, hom: &QMatrix) -> Classification {
    let obs = hom.rows();
    let n = obs.len();
    let hh = compose_unchecked(q, hom, hom);
    let semicategory = leq_unchecked(q, &hh, hom);
    let regular = hh == *hom;
    let absorbs = |a: usize| {
        let ta = obs.type_of(a);
        let e = hom.get(a, a);
        (0..n).all(|a2| {
            let t2 = obs.type_of(a2);
            q.comp(ta, ta, t2, hom.get(a2, a), e) == hom.get(a2, a)
                && q.comp(t2, ta, ta, e, hom.get(a, a2)) == hom.get(a, a2)
        })
    };
    let totally_regular = semicategory && (0..n).all(absorbs);
    let category = semicategory
        && (0..n).all(|a| {
            let ta = obs.type_of(a);
            q.hom(ta, ta).le(q.identity(ta), hom.get(a, a))
        });
    let normal = category && (0..n).all(|a| hom.get(a, a) == q.identity(obs.type_of(a)));
    Classification {
        semicategory,
        regular,
        totally_regular,
        category,
        normal,
    }
}

/// Objects `a` whose endo-hom is absorbed by every hom into and out of `a`.
pub fn stable_objects(s: &EnrichedStructure) -> Result<Vec<usize>> {
    if !s.is_regular() {
        return Err(QError::NotRegular);
    }
    let n = s.n_objects();
    Ok((0..n)
        .filter(|&a| {
            let ta = s.type_of(a);
            let e = s.hom(a, a);
            (0..n).all(|a2| {
                let t2 = s.type_of(a2);
                s.comp(ta, ta, t2, s.hom(a2, a), e) == s.hom(a2, a)
                    && s.comp(t2, ta, ta, e, s.hom(a, a2)) == s.hom(a, a2)
            })
        })
        .collect())
}

/// Stability read off directly from its definition: some one-object regular
/// structure `*_e` admits a regular semifunctor into `s` with value `a`.
///
/// Only idempotents `e` at `t(a)` need to be tried, since those are exactly
/// the one-object regular structures of that type.
pub fn stable_objects_by_definition(s: &Arc<EnrichedStructure>) -> Result<Vec<usize>> {
    if !s.is_regular() {
        return Err(QError::NotRegular);
    }
    let q = s.base();
    let mut out = Vec::new();
    for a in 0..s.n_objects() {
        let ta = s.type_of(a);
        for e in q.idempotents(ta)? {
            let star = Arc::new(EnrichedStructure::star_idempotent(q.clone(), e)?);
            let f = ObjectMap::new(star, s.clone(), vec![a])?;
            if check_object_map_general(&f).regular_semifunctor {
                out.push(a);
                break;
            }
        }
    }
    Ok(out)
}

/// Action and regularity flags of a semidistributor matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemiDistFlags {
    pub semidistributor: bool,
    pub regular: bool,
}

/// A matrix `Φ: A ⇸ B`: rows are the objects of `B`, columns those of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiDistributor {
    dom: Arc<EnrichedStructure>,
    cod: Arc<EnrichedStructure>,
    mat: QMatrix,
    flags: SemiDistFlags,
}

impl SemiDistributor {
    pub fn new(dom: Arc<EnrichedStructure>, cod: Arc<EnrichedStructure>, mat: QMatrix) -> Result<Self> {
        if !same_base(dom.base(), cod.base()) {
            return Err(QError::DifferentBases);
        }
        if mat.rows() != cod.obs() || mat.cols() != dom.obs() {
            return Err(QError::ShapeMismatch(
                "semidistributor rows must be codomain objects and columns domain objects".into(),
            ));
        }
        let mat = QMatrix::new(dom.base(), cod.obs().clone(), dom.obs().clone(), mat.entries().to_vec())?;
        Ok(Self::from_checked(dom, cod, mat))
    }

    pub fn from_entries(dom: Arc<EnrichedStructure>, cod: Arc<EnrichedStructure>, entries: Vec<Elem>) -> Result<Self> {
        if !same_base(dom.base(), cod.base()) {
            return Err(QError::DifferentBases);
        }
        let mat = QMatrix::new(dom.base(), cod.obs().clone(), dom.obs().clone(), entries)?;
        Ok(Self::from_checked(dom, cod, mat))
    }

    pub(crate) fn from_checked(dom: Arc<EnrichedStructure>, cod: Arc<EnrichedStructure>, mat: QMatrix) -> Self {
        let flags = if dom.is_totally_regular() && cod.is_totally_regular() {
            semidist_flags_local(&dom, &cod, &mat)
        } else {
            semidist_flags_general(&dom, &cod, &mat)
        };
        SemiDistributor { dom, cod, mat, flags }
    }

    /// The hom-matrix of a structure as its own identity semidistributor.
    pub fn identity(s: Arc<EnrichedStructure>) -> Self {
        let mat = s.hom_matrix().clone();
        Self::from_checked(s.clone(), s, mat)
    }

    pub fn dom(&self) -> &Arc<EnrichedStructure> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<EnrichedStructure> {
        &self.cod
    }

    pub fn mat(&self) -> &QMatrix {
        &self.mat
    }

    pub fn base(&self) -> &Arc<Quantaloid> {
        self.dom.base()
    }

    /// `Φ(b, a)`.
    #[inline]
    pub fn get(&self, b: usize, a: usize) -> Elem {
        self.mat.get(b, a)
    }

    pub fn flags(&self) -> SemiDistFlags {
        self.flags
    }

    pub fn is_regular(&self) -> bool {
        self.flags.regular
    }

    /// `Ψ ⊗ Φ` for `Φ = self: A ⇸ B` and `Ψ: B ⇸ C`.
    pub fn then(&self, psi: &SemiDistributor) -> Result<SemiDistributor> {
        if psi.dom.obs() != self.cod.obs() || psi.dom.hom_matrix() != self.cod.hom_matrix() {
            return Err(QError::ShapeMismatch("composable semidistributors must share the middle structure".into()));
        }
        let mat = compose_unchecked(self.base(), &psi.mat, &self.mat);
        Ok(Self::from_checked(self.dom.clone(), psi.cod.clone(), mat))
    }
}

/// Flags of a semidistributor, using the elementwise characterization when both
/// ends are totally regular and the matrix equations otherwise.
pub fn check_semidistributor(phi: &SemiDistributor) -> SemiDistFlags {
    phi.flags
}

/// Flags straight from the matrix definitions: `B ⊗ Φ ≤ Φ`, `Φ ⊗ A ≤ Φ`, and
/// equalities for regularity.
pub fn check_semidistributor_general(phi: &SemiDistributor) -> SemiDistFlags {
    semidist_flags_general(&phi.dom, &phi.cod, &phi.mat)
}

fn semidist_flags_general(dom: &EnrichedStructure, cod: &EnrichedStructure, mat: &QMatrix) -> SemiDistFlags {
    let q = dom.base();
    let left = compose_unchecked(q, cod.hom_matrix(), mat);
    let right = compose_unchecked(q, mat, dom.hom_matrix());
    SemiDistFlags {
        semidistributor: leq_unchecked(q, &left, mat) && leq_unchecked(q, &right, mat),
        regular: left == *mat && right == *mat,
    }
}

/// Elementwise characterization between totally regular structures: action
/// inequalities plus absorption of the endo-homs at both ends.
pub(crate) fn semidist_flags_local(dom: &EnrichedStructure, cod: &EnrichedStructure, mat: &QMatrix) -> SemiDistFlags {
    let q = dom.base();
    let (na, nb) = (dom.n_objects(), cod.n_objects());
    let mut semidistributor = true;
    'outer: for b in 0..nb {
        let tb = cod.type_of(b);
        for a in 0..na {
            let ta = dom.type_of(a);
            let x = mat.get(b, a);
            for b2 in 0..nb {
                let t2 = cod.type_of(b2);
                if !q.hom(ta, t2).le(q.comp(ta, tb, t2, cod.hom(b2, b), x), mat.get(b2, a)) {
                    semidistributor = false;
                    break 'outer;
                }
            }
            for a2 in 0..na {
                let t2 = dom.type_of(a2);
                if !q.hom(t2, tb).le(q.comp(t2, ta, tb, x, dom.hom(a, a2)), mat.get(b, a2)) {
                    semidistributor = false;
                    break 'outer;
                }
            }
        }
    }
    let regular = semidistributor
        && (0..nb).all(|b| {
            let tb = cod.type_of(b);
            (0..na).all(|a| {
                let ta = dom.type_of(a);
                let x = mat.get(b, a);
                q.comp(ta, tb, tb, cod.hom(b, b), x) == x && q.comp(ta, ta, tb, x, dom.hom(a, a)) == x
            })
        });
    SemiDistFlags {
        semidistributor,
        regular,
    }
}

/// Semifunctor, functor and regular-semifunctor flags of an object map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MapFlags {
    pub semifunctor: bool,
    pub functor: bool,
    pub regular_semifunctor: bool,
}

/// A type-preserving mapping of objects between structures over one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectMap {
    dom: Arc<EnrichedStructure>,
    cod: Arc<EnrichedStructure>,
    map: Vec<usize>,
}

impl ObjectMap {
    pub fn new(dom: Arc<EnrichedStructure>, cod: Arc<EnrichedStructure>, map: Vec<usize>) -> Result<Self> {
        if !same_base(dom.base(), cod.base()) {
            return Err(QError::DifferentBases);
        }
        if map.len() != dom.n_objects() {
            return Err(QError::ShapeMismatch(format!(
                "object map has {} values for {} objects",
                map.len(),
                dom.n_objects()
            )));
        }
        for (a, &b) in map.iter().enumerate() {
            if b >= cod.n_objects() {
                return Err(QError::UnknownObject(b));
            }
            if cod.type_of(b) != dom.type_of(a) {
                return Err(QError::NotTypePreserving(a));
            }
        }
        Ok(ObjectMap { dom, cod, map })
    }

    pub fn identity(s: Arc<EnrichedStructure>) -> Self {
        let map = (0..s.n_objects()).collect();
        ObjectMap {
            dom: s.clone(),
            cod: s,
            map,
        }
    }

    pub fn dom(&self) -> &Arc<EnrichedStructure> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<EnrichedStructure> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `G ∘ F` for `F = self` and `G: cod(F) -> C`.
    pub fn then(&self, g: &ObjectMap) -> Result<ObjectMap> {
        if g.dom.obs() != self.cod.obs() || g.dom.hom_matrix() != self.cod.hom_matrix() {
            return Err(QError::ShapeMismatch("object maps are not composable".into()));
        }
        Ok(ObjectMap {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            map: self.map.iter().map(|&a| g.map[a]).collect(),
        })
    }

    /// `B(-, F-): A ⇸ B`, entry `(b, a) = B(b, Fa)`.
    pub fn represented(&self) -> QMatrix {
        QMatrix::from_fn(self.cod.obs().clone(), self.dom.obs().clone(), |b, a| self.cod.hom(b, self.map[a]))
    }

    /// `B(F-, -): B ⇸ A`, entry `(a, b) = B(Fa, b)`.
    pub fn corepresented(&self) -> QMatrix {
        QMatrix::from_fn(self.dom.obs().clone(), self.cod.obs().clone(), |a, b| self.cod.hom(self.map[a], b))
    }
}

fn is_semifunctor(f: &ObjectMap) -> bool {
    let (a_s, b_s) = (&f.dom, &f.cod);
    let n = a_s.n_objects();
    (0..n).all(|a2| {
        (0..n).all(|a| {
            let (ta, t2) = (a_s.type_of(a), a_s.type_of(a2));
            a_s.base().hom(ta, t2).le(a_s.hom(a2, a), b_s.hom(f.map[a2], f.map[a]))
        })
    })
}

/// Flags of an object map, using the elementwise characterization when both
/// ends are totally regular and the matrix equations otherwise.
pub fn check_object_map(f: &ObjectMap) -> MapFlags {
    if f.dom.is_totally_regular() && f.cod.is_totally_regular() {
        check_object_map_local(f)
    } else {
        check_object_map_general(f)
    }
}

/// Flags straight from the definitions: `B(-,F-) ⊗ A = B(-,F-)` and
/// `A ⊗ B(F-,-) = B(F-,-)` for regularity.
pub fn check_object_map_general(f: &ObjectMap) -> MapFlags {
    let semifunctor = is_semifunctor(f);
    let q = f.dom.base();
    let rep = f.represented();
    let corep = f.corepresented();
    let regular = semifunctor
        && f.dom.is_regular()
        && f.cod.is_regular()
        && compose_unchecked(q, &rep, f.dom.hom_matrix()) == rep
        && compose_unchecked(q, f.dom.hom_matrix(), &corep) == corep;
    MapFlags {
        semifunctor,
        functor: semifunctor && f.dom.is_category() && f.cod.is_category(),
        regular_semifunctor: regular,
    }
}

fn check_object_map_local(f: &ObjectMap) -> MapFlags {
    let semifunctor = is_semifunctor(f);
    let q = f.dom.base();
    let (na, nb) = (f.dom.n_objects(), f.cod.n_objects());
    let regular = semifunctor
        && (0..na).all(|a| {
            let ta = f.dom.type_of(a);
            let e = f.dom.hom(a, a);
            let fa = f.map[a];
            (0..nb).all(|b| {
                let tb = f.cod.type_of(b);
                q.comp(ta, ta, tb, f.cod.hom(b, fa), e) == f.cod.hom(b, fa)
                    && q.comp(tb, ta, ta, e, f.cod.hom(fa, b)) == f.cod.hom(fa, b)
            })
        });
    MapFlags {
        semifunctor,
        functor: semifunctor && f.dom.is_category() && f.cod.is_category(),
        regular_semifunctor: regular,
    }
}

/// The pair `(B(-,F-), B(F-,-))` induced by a semifunctor.
pub fn induced_pair(f: &ObjectMap) -> Result<(SemiDistributor, SemiDistributor)> {
    if !is_semifunctor(f) {
        return Err(QError::NotSemifunctor);
    }
    let left = SemiDistributor::from_checked(f.dom.clone(), f.cod.clone(), f.represented());
    let right = SemiDistributor::from_checked(f.cod.clone(), f.dom.clone(), f.corepresented());
    Ok((left, right))
}

/// Local order on parallel object maps: `F <= G` iff `B(-,F-) <= B(-,G-)`.
pub fn semifunctor_leq(f: &ObjectMap, g: &ObjectMap) -> Result<bool> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(QError::ShapeMismatch("object maps are not parallel".into()));
    }
    Ok(leq_unchecked(f.dom.base(), &f.represented(), &g.represented()))
}

/// `F <= G` and `G <= F`.
pub fn semifunctors_equivalent(f: &ObjectMap, g: &ObjectMap) -> Result<bool> {
    Ok(semifunctor_leq(f, g)? && semifunctor_leq(g, f)?)
}

/// The full subgraph on `subset` (in the given order) and its inclusion.
pub fn full_subgraph(s: &Arc<EnrichedStructure>, subset: &[usize]) -> Result<(Arc<EnrichedStructure>, ObjectMap)> {
    for &a in subset {
        if a >= s.n_objects() {
            return Err(QError::UnknownObject(a));
        }
    }
    let obs = Arc::new(s.obs().restrict(subset));
    let hom = s.hom_matrix().restrict(obs.clone(), subset, obs, subset);
    let sub = Arc::new(EnrichedStructure::from_checked(s.base().clone(), hom));
    let incl = ObjectMap::new(sub.clone(), s.clone(), subset.to_vec())?;
    Ok((sub, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::fixtures::{q2, q3, trop};

    fn star(q: &Arc<Quantaloid>, name: &str) -> Arc<EnrichedStructure> {
        let x = ObjId(0);
        let e = q.hom(x, x).find(name).unwrap();
        Arc::new(EnrichedStructure::star(q.clone(), Arrow::endo(x, e)).unwrap())
    }

    fn flags(s: bool, r: bool, t: bool, c: bool, n: bool) -> Classification {
        Classification {
            semicategory: s,
            regular: r,
            totally_regular: t,
            category: c,
            normal: n,
        }
    }

    #[test]
    fn classify_examples() {
        let q = Arc::new(q3());
        assert_eq!(star(&q, "m").flags(), flags(true, true, true, false, false));
        assert_eq!(star(&q, "1").flags(), flags(true, true, true, true, true));
        let t = Arc::new(trop(4).unwrap());
        let s = star(&t, "2");
        assert!(s.flags().semicategory);
        assert!(!s.flags().regular && !s.flags().totally_regular);
    }

    #[test]
    fn stable_objects_examples() {
        let q = Arc::new(q3());
        assert_eq!(stable_objects(&star(&q, "m")).unwrap(), vec![0]);
        let t = Arc::new(trop(4).unwrap());
        assert_eq!(stable_objects(&star(&t, "4")).unwrap(), vec![0]);
        assert_eq!(stable_objects(&star(&t, "2")), Err(QError::NotRegular));
        assert_eq!(stable_objects_by_definition(&star(&t, "4")).unwrap(), vec![0]);
    }

    #[test]
    fn regular_but_not_totally_regular() {
        // Two points over Trop4: distances 0 from a0 everywhere, 1 into and at a1.
        let t = Arc::new(trop(4).unwrap());
        let obs = Arc::new(TypedSet::numbered("a", vec![ObjId(0); 2]));
        let s = Arc::new(EnrichedStructure::new(t, obs, vec![0, 0, 1, 1]).unwrap());
        assert!(s.flags().regular);
        assert!(!s.flags().totally_regular);
        assert_eq!(stable_objects(&s).unwrap(), vec![0]);
        assert_eq!(stable_objects_by_definition(&s).unwrap(), vec![0]);
        // regularity at a1 depends on a0, so the full subgraph on a1 loses it
        let (sub, _) = full_subgraph(&s, &[1]).unwrap();
        assert!(sub.flags().semicategory && !sub.flags().regular);
    }

    #[test]
    fn semidistributor_examples() {
        let q = Arc::new(q3());
        let (sm, c1) = (star(&q, "m"), star(&q, "1"));
        let phi = SemiDistributor::from_entries(sm.clone(), c1.clone(), vec![1]).unwrap();
        assert_eq!(phi.flags(), SemiDistFlags { semidistributor: true, regular: true });
        let phi = SemiDistributor::from_entries(sm.clone(), c1.clone(), vec![2]).unwrap();
        assert_eq!(phi.flags(), SemiDistFlags { semidistributor: true, regular: false });
        assert_eq!(check_semidistributor_general(&phi), phi.flags());
        assert!(SemiDistributor::identity(sm).is_regular());
    }

    #[test]
    fn object_map_examples() {
        let q = Arc::new(q3());
        let (sm, c1) = (star(&q, "m"), star(&q, "1"));
        let id = ObjectMap::identity(sm.clone());
        assert!(check_object_map(&id).regular_semifunctor);
        let f = ObjectMap::new(sm.clone(), c1.clone(), vec![0]).unwrap();
        let fl = check_object_map(&f);
        assert!(fl.semifunctor && !fl.regular_semifunctor && !fl.functor);
        assert_eq!(check_object_map_general(&f), fl);
        let (l, r) = induced_pair(&f).unwrap();
        assert_eq!(l.mat().entries(), &[2]);
        assert_eq!(r.mat().entries(), &[2]);
        // pointing map *_m -> S_m
        let (l, r) = induced_pair(&id).unwrap();
        assert_eq!((l.mat().entries(), r.mat().entries()), (&[1][..], &[1][..]));
    }

    #[test]
    fn type_preservation_is_enforced() {
        let q = Arc::new(crate::quantaloid::build_idm(&q2()));
        let a = Arc::new(EnrichedStructure::star_identity(q.clone(), ObjId(0)).unwrap());
        let b = Arc::new(EnrichedStructure::star_identity(q, ObjId(1)).unwrap());
        assert_eq!(ObjectMap::new(a, b, vec![0]).unwrap_err(), QError::NotTypePreserving(0));
    }

    #[test]
    fn isolated_object_subgraph_is_a_category() {
        let q = Arc::new(q2());
        let obs = Arc::new(TypedSet::numbered("a", vec![ObjId(0); 2]));
        let s = Arc::new(EnrichedStructure::new(q, obs, vec![1, 0, 0, 0]).unwrap());
        assert!(s.is_totally_regular() && !s.is_category());
        let (sub, incl) = full_subgraph(&s, &[0]).unwrap();
        assert!(sub.flags().category);
        assert!(check_object_map(&incl).regular_semifunctor);
    }

    #[test]
    fn local_order() {
        let q = Arc::new(q2());
        let obs = Arc::new(TypedSet::numbered("a", vec![ObjId(0); 2]));
        // a0 <= a1 in the order: A(a0, a1) = 0, A(a1, a0) = 1
        let s = Arc::new(EnrichedStructure::new(q.clone(), obs, vec![1, 0, 1, 1]).unwrap());
        let one = Arc::new(EnrichedStructure::star_identity(q, ObjId(0)).unwrap());
        let f0 = ObjectMap::new(one.clone(), s.clone(), vec![0]).unwrap();
        let f1 = ObjectMap::new(one, s, vec![1]).unwrap();
        assert!(semifunctor_leq(&f1, &f0).unwrap());
        assert!(!semifunctor_leq(&f0, &f1).unwrap());
        assert!(!semifunctors_equivalent(&f0, &f1).unwrap());
    }
}
