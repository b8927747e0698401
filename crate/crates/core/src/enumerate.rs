//! Exhaustive generators: structures of bounded size, semidistributors
//! between two structures, and type-preserving object maps.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::budget::{Exhausted, Meter};
use crate::lattice::Elem;
use crate::matrix::{QMatrix, TypedSet};
use crate::quantaloid::{ObjId, Quantaloid};
use crate::structure::{Classification, EnrichedStructure, ObjectMap, SemiDistributor};

/// Mixed-radix counter over `0..sizes[0] x 0..sizes[1] x ...`, last digit fastest.
#[derive(Debug, Clone)]
pub struct Odometer {
    sizes: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl Odometer {
    pub fn new(sizes: Vec<usize>) -> Self {
        let done = sizes.contains(&0);
        Odometer {
            digits: vec![0; sizes.len()],
            sizes,
            done,
        }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.sizes[i] {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// Every structure with exactly `n` objects over `q`: all typings, then all hom-matrices.
pub fn structures(q: &Arc<Quantaloid>, n: usize) -> impl Iterator<Item = EnrichedStructure> + '_ {
    Odometer::new(vec![q.n_objects(); n]).flat_map(move |typing| {
        let obs = Arc::new(TypedSet::numbered("a", typing.into_iter().map(ObjId).collect()));
        let mut sizes = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                sizes.push(q.hom(obs.type_of(c), obs.type_of(r)).len());
            }
        }
        Odometer::new(sizes).map(move |entries| {
            let hom = QMatrix::from_raw(obs.clone(), obs.clone(), entries);
            EnrichedStructure::from_checked(q.clone(), hom)
        })
    })
}

/// Every structure with at most `max_objects` objects whose classification passes `keep`.
pub fn structures_up_to(
    q: &Arc<Quantaloid>,
    max_objects: usize,
    keep: impl Fn(&Classification) -> bool,
) -> Vec<Arc<EnrichedStructure>> {
    (0..=max_objects)
        .flat_map(|n| structures(q, n))
        .filter(|s| keep(&s.flags()))
        .map(Arc::new)
        .collect()
}

/// Totally regular structures with at most `max_objects` objects.
pub fn totally_regular_up_to(q: &Arc<Quantaloid>, max_objects: usize) -> Vec<Arc<EnrichedStructure>> {
    structures_up_to(q, max_objects, |f| f.totally_regular)
}

/// Regular structures with at most `max_objects` objects.
pub fn regular_up_to(q: &Arc<Quantaloid>, max_objects: usize) -> Vec<Arc<EnrichedStructure>> {
    structures_up_to(q, max_objects, |f| f.regular)
}

/// Categories with at most `max_objects` objects.
pub fn categories_up_to(q: &Arc<Quantaloid>, max_objects: usize) -> Vec<Arc<EnrichedStructure>> {
    structures_up_to(q, max_objects, |f| f.category)
}

/// Visits every semidistributor matrix `dom ⇸ cod` (rows `cod`, columns `dom`)
/// in lexicographic row-major order, pruning on the action inequalities as
/// entries are placed. With `regular_only`, only regular ones are visited, and
/// between totally regular ends candidates are pre-filtered by endo-hom absorption.
pub(crate) fn for_each_semidistributor(
    dom: &Arc<EnrichedStructure>,
    cod: &Arc<EnrichedStructure>,
    regular_only: bool,
    meter: &mut Meter,
    mut visit: impl FnMut(SemiDistributor) -> ControlFlow<()>,
) -> Result<(), Exhausted> {
    let q = dom.base().clone();
    let (na, nb) = (dom.n_objects(), cod.n_objects());
    let absorb = regular_only && dom.is_totally_regular() && cod.is_totally_regular();
    let candidates: Vec<Vec<Elem>> = (0..nb)
        .flat_map(|b| (0..na).map(move |a| (b, a)))
        .map(|(b, a)| {
            let (ta, tb) = (dom.type_of(a), cod.type_of(b));
            q.hom(ta, tb)
                .elements()
                .filter(|&x| {
                    !absorb
                        || (q.comp(ta, tb, tb, cod.hom(b, b), x) == x
                            && q.comp(ta, ta, tb, x, dom.hom(a, a)) == x)
                })
                .collect()
        })
        .collect();
    let mut entries = vec![0; na * nb];
    let mut stop = false;
    place(
        &q, dom, cod, &candidates, 0, &mut entries, regular_only, meter, &mut visit, &mut stop,
    )
}

#[allow(clippy::too_many_arguments)]
fn place(
    q: &Arc<Quantaloid>,
    dom: &Arc<EnrichedStructure>,
    cod: &Arc<EnrichedStructure>,
    candidates: &[Vec<Elem>],
    k: usize,
    entries: &mut Vec<Elem>,
    regular_only: bool,
    meter: &mut Meter,
    visit: &mut impl FnMut(SemiDistributor) -> ControlFlow<()>,
    stop: &mut bool,
) -> Result<(), Exhausted> {
    let na = dom.n_objects();
    if k == entries.len() {
        meter.tick()?;
        let mat = QMatrix::from_raw(cod.obs().clone(), dom.obs().clone(), entries.clone());
        let phi = SemiDistributor::from_checked(dom.clone(), cod.clone(), mat);
        let f = phi.flags();
        if f.semidistributor && (!regular_only || f.regular) && visit(phi).is_break() {
            *stop = true;
        }
        return Ok(());
    }
    let (b, a) = (k / na.max(1), k % na.max(1));
    for &x in &candidates[k] {
        meter.tick()?;
        entries[k] = x;
        if consistent(q, dom, cod, entries, b, a) {
            place(q, dom, cod, candidates, k + 1, entries, regular_only, meter, visit, stop)?;
            if *stop {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Action inequalities between entry `(b, a)` and every already-placed entry
/// in the same row or column.
fn consistent(
    q: &Quantaloid,
    dom: &EnrichedStructure,
    cod: &EnrichedStructure,
    entries: &[Elem],
    b: usize,
    a: usize,
) -> bool {
    let na = dom.n_objects();
    let at = |b: usize, a: usize| entries[b * na + a];
    let (ta, tb) = (dom.type_of(a), cod.type_of(b));
    let x = at(b, a);
    // same column: rows b2 <= b
    for b2 in 0..=b {
        let t2 = cod.type_of(b2);
        let y = at(b2, a);
        if !q.hom(ta, t2).le(q.comp(ta, tb, t2, cod.hom(b2, b), x), y)
            || !q.hom(ta, tb).le(q.comp(ta, t2, tb, cod.hom(b, b2), y), x)
        {
            return false;
        }
    }
    // same row: columns a2 <= a
    for a2 in 0..=a {
        let t2 = dom.type_of(a2);
        let y = at(b, a2);
        if !q.hom(t2, tb).le(q.comp(t2, ta, tb, x, dom.hom(a, a2)), y)
            || !q.hom(ta, tb).le(q.comp(ta, t2, tb, y, dom.hom(a2, a)), x)
        {
            return false;
        }
    }
    true
}

/// All regular semidistributors `dom ⇸ cod`, in lexicographic order.
pub fn regular_semidistributors(dom: &Arc<EnrichedStructure>, cod: &Arc<EnrichedStructure>) -> Vec<SemiDistributor> {
    let mut out = Vec::new();
    let _ = for_each_semidistributor(dom, cod, true, &mut Meter::unlimited(), |phi| {
        out.push(phi);
        ControlFlow::Continue(())
    });
    out
}

/// All semidistributors `dom ⇸ cod`, in lexicographic order.
pub fn semidistributors(dom: &Arc<EnrichedStructure>, cod: &Arc<EnrichedStructure>) -> Vec<SemiDistributor> {
    let mut out = Vec::new();
    let _ = for_each_semidistributor(dom, cod, false, &mut Meter::unlimited(), |phi| {
        out.push(phi);
        ControlFlow::Continue(())
    });
    out
}

/// Every type-preserving object map `dom -> cod`, lexicographic in the values.
pub fn object_maps(dom: &Arc<EnrichedStructure>, cod: &Arc<EnrichedStructure>) -> Vec<ObjectMap> {
    let choices: Vec<Vec<usize>> = (0..dom.n_objects())
        .map(|a| (0..cod.n_objects()).filter(|&b| cod.type_of(b) == dom.type_of(a)).collect())
        .collect();
    Odometer::new(choices.iter().map(Vec::len).collect())
        .map(|digits| {
            let map = digits.iter().zip(&choices).map(|(&d, c)| c[d]).collect();
            ObjectMap::new(dom.clone(), cod.clone(), map).expect("type-preserving by construction")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::fixtures::{n3, q2, q3};
    use crate::structure::check_semidistributor_general;

    #[test]
    fn odometer_counts() {
        assert_eq!(Odometer::new(vec![2, 3]).count(), 6);
        assert_eq!(Odometer::new(vec![]).count(), 1);
        assert_eq!(Odometer::new(vec![2, 0]).count(), 0);
        let v: Vec<_> = Odometer::new(vec![2, 2]).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn structure_counts() {
        let q = Arc::new(q3());
        assert_eq!(structures(&q, 0).count(), 1);
        assert_eq!(structures(&q, 1).count(), 3);
        assert_eq!(structures(&q, 2).count(), 81);
        // one-object regular structures are exactly the idempotents
        assert_eq!(regular_up_to(&Arc::new(n3()), 1).len(), 1 + 3);
    }

    /// The pruned generator must agree with filtering the full product.
    #[test]
    fn generator_matches_unpruned_filter() {
        for base in [q2(), q3(), n3()] {
            let q = Arc::new(base);
            let corpus = structures_up_to(&q, 2, |f| f.semicategory);
            for dom in corpus.iter().filter(|s| s.n_objects() <= 2) {
                for cod in corpus.iter().filter(|s| s.n_objects() <= 1) {
                    let mut all = Vec::new();
                    let mut reg = Vec::new();
                    for m in Odometer::new(vec![q.hom(ObjId(0), ObjId(0)).len(); dom.n_objects() * cod.n_objects()]) {
                        let phi = SemiDistributor::from_entries(dom.clone(), cod.clone(), m).unwrap();
                        let fl = check_semidistributor_general(&phi);
                        if fl.semidistributor {
                            all.push(phi.mat().clone());
                        }
                        if fl.semidistributor && fl.regular {
                            reg.push(phi.mat().clone());
                        }
                    }
                    let got: Vec<_> = semidistributors(dom, cod).iter().map(|p| p.mat().clone()).collect();
                    assert_eq!(got, all);
                    if dom.is_regular() && cod.is_regular() {
                        let got: Vec<_> = regular_semidistributors(dom, cod).iter().map(|p| p.mat().clone()).collect();
                        assert_eq!(got, reg);
                    }
                }
            }
        }
    }

    #[test]
    fn object_maps_respect_types() {
        let q = Arc::new(crate::quantaloid::build_idm(&q2()));
        let two = structures(&q, 2).next().unwrap();
        let one = structures(&q, 1).last().unwrap();
        let (two, one) = (Arc::new(two), Arc::new(one));
        // object types: two = (0, 0), one = (1)
        assert!(object_maps(&two, &one).is_empty());
        assert_eq!(object_maps(&one, &one).len(), 1);
    }
}
