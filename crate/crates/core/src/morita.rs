//! Isomorphism in the calculus of regular semidistributors, equivalence of
//! structures by regular semifunctors, and removal of isolated objects.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::budget::{Budget, Exhausted, Meter, SearchOutcome};
use crate::cauchy::{cauchy_complete_trs, right_adjoint_candidate, skeleton};
use crate::enumerate::for_each_semidistributor;
use crate::error::{QError, Result};
use crate::matrix::compose_unchecked;
use crate::quantaloid::fixtures;
use crate::structure::{
    check_object_map, full_subgraph, induced_pair, same_base, semifunctors_equivalent, EnrichedStructure, ObjectMap,
    SemiDistributor,
};

/// `Ψ ⊗ Φ = A` and `Φ ⊗ Ψ = B` exactly, for `Φ: A ⇸ B` and `Ψ: B ⇸ A`.
pub fn is_inverse_pair(phi: &SemiDistributor, psi: &SemiDistributor) -> Result<bool> {
    if psi.dom() != phi.cod() || psi.cod() != phi.dom() {
        return Err(QError::ShapeMismatch("the pair must run in opposite directions between the same structures".into()));
    }
    let q = phi.base();
    Ok(compose_unchecked(q, psi.mat(), phi.mat()) == *phi.dom().hom_matrix()
        && compose_unchecked(q, phi.mat(), psi.mat()) == *phi.cod().hom_matrix())
}

/// Mutually inverse regular semidistributors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub forward: SemiDistributor,
    pub backward: SemiDistributor,
}

/// Regular semifunctors `F: A -> B`, `G: B -> A` with `G ∘ F ≅ 1` and `F ∘ G ≅ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivWitness {
    pub f: ObjectMap,
    pub g: ObjectMap,
}

fn within_size(budget: &Budget, s: &EnrichedStructure) -> bool {
    let q = s.base();
    s.n_objects() <= budget.max_objects
        && q.objects().all(|x| q.objects().all(|y| q.hom(x, y).len() <= budget.max_hom_size))
}

fn require_pair(a: &EnrichedStructure, b: &EnrichedStructure) -> Result<()> {
    if !same_base(a.base(), b.base()) {
        return Err(QError::DifferentBases);
    }
    a.require_totally_regular()?;
    b.require_totally_regular()
}

/// The first regular `Φ: A ⇸ B` (lexicographic order) with an inverse.
///
/// An inverse of `Φ` is in particular a right adjoint, and right adjoints are
/// unique, so only the canonical candidate needs to be tested.
pub fn search_isomorphism(
    a: &Arc<EnrichedStructure>,
    b: &Arc<EnrichedStructure>,
    budget: &Budget,
) -> Result<SearchOutcome<IsoWitness>> {
    require_pair(a, b)?;
    if !within_size(budget, a) || !within_size(budget, b) {
        return Ok(SearchOutcome::BudgetExceeded);
    }
    let mut meter = budget.meter();
    let mut found = None;
    let run = for_each_semidistributor(a, b, true, &mut meter, |phi| {
        let psi = right_adjoint_candidate(&phi).expect("regular by construction");
        let psi = SemiDistributor::from_checked(b.clone(), a.clone(), psi);
        if is_inverse_pair(&phi, &psi).expect("shapes match") {
            found = Some(IsoWitness {
                forward: phi,
                backward: psi,
            });
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(match (found, run) {
        (Some(w), _) => SearchOutcome::Found(w),
        (None, Err(Exhausted)) => SearchOutcome::BudgetExceeded,
        (None, Ok(())) => SearchOutcome::NotFound,
    })
}

/// Candidate values for a regular semifunctor out of `a`: iso-class
/// representatives of `b` of the right type at which the endo-hom of the source
/// is absorbed and below the endo-hom of the target.
fn regular_targets(a: &EnrichedStructure, b: &EnrichedStructure, b_reps: &[usize], x: usize) -> Vec<usize> {
    let q = a.base();
    let (tx, e) = (a.type_of(x), a.hom(x, x));
    b_reps
        .iter()
        .copied()
        .filter(|&y| {
            b.type_of(y) == tx
                && q.hom(tx, tx).le(e, b.hom(y, y))
                && (0..b.n_objects()).all(|z| {
                    let tz = b.type_of(z);
                    q.comp(tx, tx, tz, b.hom(z, y), e) == b.hom(z, y) && q.comp(tz, tx, tx, e, b.hom(y, z)) == b.hom(y, z)
                })
        })
        .collect()
}

/// Enumerates maps on `sources` (indices into `a`) with values in `choices`,
/// checking the semifunctor inequality against earlier assignments.
fn backtrack(
    a: &EnrichedStructure,
    b: &EnrichedStructure,
    sources: &[usize],
    choices: &[Vec<usize>],
    k: usize,
    vals: &mut Vec<usize>,
    meter: &mut Meter,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> std::result::Result<ControlFlow<()>, Exhausted> {
    if k == sources.len() {
        return Ok(visit(vals));
    }
    let q = a.base();
    let xk = sources[k];
    let tk = a.type_of(xk);
    for &y in &choices[k] {
        meter.tick()?;
        vals[k] = y;
        let ok = (0..=k).all(|j| {
            let xj = sources[j];
            let tj = a.type_of(xj);
            q.hom(tk, tj).le(a.hom(xj, xk), b.hom(vals[j], y)) && q.hom(tj, tk).le(a.hom(xk, xj), b.hom(y, vals[j]))
        });
        if ok && backtrack(a, b, sources, choices, k + 1, vals, meter, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Searches regular semifunctors `F: A -> B` and `G: B -> A` forming an equivalence.
///
/// Maps are enumerated on one representative per isomorphism class and with
/// representative values, then extended constantly along classes; this loses
/// nothing because a regular semifunctor has equal columns on isomorphic objects.
/// Every returned witness is re-verified on the full structures.
pub fn search_equivalence(
    a: &Arc<EnrichedStructure>,
    b: &Arc<EnrichedStructure>,
    budget: &Budget,
) -> Result<SearchOutcome<EquivWitness>> {
    require_pair(a, b)?;
    let (_, a_incl, a_class) = skeleton(a)?;
    let (_, b_incl, b_class) = skeleton(b)?;
    let (a_reps, b_reps) = (a_incl.map().to_vec(), b_incl.map().to_vec());
    let f_choices: Vec<Vec<usize>> = a_reps.iter().map(|&x| regular_targets(a, b, &b_reps, x)).collect();
    let mut meter = budget.meter();
    let mut found = None;
    let mut f_vals = vec![0; a_reps.len()];
    let run = backtrack(a, b, &a_reps, &f_choices, 0, &mut f_vals, &mut meter, &mut |fv| {
        let f_map: Vec<usize> = a_class.iter().map(|&c| fv[c]).collect();
        let f = ObjectMap::new(a.clone(), b.clone(), f_map).expect("typed");
        if !check_object_map(&f).regular_semifunctor {
            return ControlFlow::Continue(());
        }
        // G(y) must satisfy F(G y) ≅ y
        let g_choices: Vec<Vec<usize>> = b_reps
            .iter()
            .map(|&y| {
                regular_targets(b, a, &a_reps, y)
                    .into_iter()
                    .filter(|&x| (0..b.n_objects()).all(|z| b.hom(z, f.apply(x)) == b.hom(z, y)))
                    .collect()
            })
            .collect();
        let mut g_vals = vec![0; b_reps.len()];
        let mut inner = Meter::unlimited();
        let _ = backtrack(b, a, &b_reps, &g_choices, 0, &mut g_vals, &mut inner, &mut |gv| {
            let g_map: Vec<usize> = b_class.iter().map(|&c| gv[c]).collect();
            let g = ObjectMap::new(b.clone(), a.clone(), g_map).expect("typed");
            if is_equivalence(&f, &g) {
                found = Some(EquivWitness { f: f.clone(), g });
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if found.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(match (found, run) {
        (Some(w), _) => SearchOutcome::Found(w),
        (None, Err(Exhausted)) => SearchOutcome::BudgetExceeded,
        (None, Ok(_)) => SearchOutcome::NotFound,
    })
}

/// Both maps regular semifunctors, `G ∘ F ≅ 1_A` and `F ∘ G ≅ 1_B`.
pub fn is_equivalence(f: &ObjectMap, g: &ObjectMap) -> bool {
    let check = || -> Result<bool> {
        Ok(check_object_map(f).regular_semifunctor
            && check_object_map(g).regular_semifunctor
            && semifunctors_equivalent(&f.then(g)?, &ObjectMap::identity(f.dom().clone()))?
            && semifunctors_equivalent(&g.then(f)?, &ObjectMap::identity(g.dom().clone()))?)
    };
    check().unwrap_or(false)
}

/// Both sides of the Morita correspondence for a pair of structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaReport {
    pub isomorphism: SearchOutcome<IsoWitness>,
    /// Equivalence between the two Cauchy completions.
    pub equivalence: SearchOutcome<EquivWitness>,
}

impl MoritaReport {
    /// Both searches conclusive and in agreement.
    pub fn agree(&self) -> bool {
        !self.isomorphism.is_exceeded()
            && !self.equivalence.is_exceeded()
            && self.isomorphism.is_found() == self.equivalence.is_found()
    }
}

/// Runs [`search_isomorphism`] on `A, B` and [`search_equivalence`] on their completions.
pub fn morita_check(a: &Arc<EnrichedStructure>, b: &Arc<EnrichedStructure>, budget: &Budget) -> Result<MoritaReport> {
    let isomorphism = search_isomorphism(a, b, budget)?;
    let (acc, bcc) = (cauchy_complete_trs(a)?, cauchy_complete_trs(b)?);
    let equivalence = search_equivalence(&acc.completed, &bcc.completed, budget)?;
    Ok(MoritaReport {
        isomorphism,
        equivalence,
    })
}

/// Result of removing isolated objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stripped {
    pub stripped: Arc<EnrichedStructure>,
    pub inclusion: ObjectMap,
    /// `A(i-, -): A ⇸ Â` forward and `A(-, i-): Â ⇸ A` backward.
    pub witness: IsoWitness,
    pub verified: bool,
}

fn integral_base(a: &EnrichedStructure) -> bool {
    let q = a.base();
    if **q == fixtures::q2() {
        return true;
    }
    q.name()
        .strip_prefix("trop:")
        .and_then(|n| n.parse::<usize>().ok())
        .and_then(|n| fixtures::trop(n).ok())
        .is_some_and(|t| **q == t)
}

/// Drops the objects `a` with `1 ⋢ A(a,a)` from a totally regular structure
/// over the Boolean or a truncated tropical quantale, where such objects have
/// only bottom homs.
pub fn strip_isolated(a: &Arc<EnrichedStructure>) -> Result<Stripped> {
    if !integral_base(a) {
        return Err(QError::UnsupportedBase(a.base().name().to_string()));
    }
    a.require_totally_regular()?;
    let q = a.base();
    let keep: Vec<usize> = (0..a.n_objects())
        .filter(|&x| {
            let t = a.type_of(x);
            q.hom(t, t).le(q.identity(t), a.hom(x, x))
        })
        .collect();
    let (stripped, inclusion) = full_subgraph(a, &keep)?;
    let (left, right) = induced_pair(&inclusion)?;
    let verified = is_inverse_pair(&right, &left)?;
    Ok(Stripped {
        stripped,
        inclusion,
        witness: IsoWitness {
            forward: right,
            backward: left,
        },
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::TypedSet;
    use crate::quantaloid::fixtures::{q2, q3, trop};
    use crate::quantaloid::{Arrow, ObjId, Quantaloid};

    fn star(q: &Arc<Quantaloid>, name: &str) -> Arc<EnrichedStructure> {
        let x = ObjId(0);
        let e = q.hom(x, x).find(name).unwrap();
        Arc::new(EnrichedStructure::star(q.clone(), Arrow::endo(x, e)).unwrap())
    }

    fn isolated_q2() -> Arc<EnrichedStructure> {
        let q = Arc::new(q2());
        let obs = Arc::new(TypedSet::numbered("a", vec![ObjId(0); 2]));
        Arc::new(EnrichedStructure::new(q, obs, vec![1, 0, 0, 0]).unwrap())
    }

    #[test]
    fn inverse_pair_examples() {
        let q = Arc::new(q3());
        let (sm, c1) = (star(&q, "m"), star(&q, "1"));
        let phi = SemiDistributor::from_entries(sm.clone(), c1.clone(), vec![1]).unwrap();
        let psi = SemiDistributor::from_entries(c1.clone(), sm.clone(), vec![1]).unwrap();
        assert!(!is_inverse_pair(&phi, &psi).unwrap());
        let id = SemiDistributor::identity(c1);
        assert!(is_inverse_pair(&id, &id).unwrap());
        assert!(is_inverse_pair(&phi, &phi).is_err());
    }

    #[test]
    fn isomorphism_searches() {
        let b = Budget::default();
        let q = Arc::new(q3());
        let (sm, c1) = (star(&q, "m"), star(&q, "1"));
        assert_eq!(search_isomorphism(&sm, &c1, &b).unwrap(), SearchOutcome::NotFound);
        assert!(search_isomorphism(&c1, &c1, &b).unwrap().is_found());
        let r = morita_check(&sm, &c1, &b).unwrap();
        assert!(r.agree() && !r.isomorphism.is_found());

        let a = isolated_q2();
        let s = strip_isolated(&a).unwrap();
        assert!(s.verified && s.stripped.is_category());
        assert_eq!(s.stripped.n_objects(), 1);
        assert!(search_isomorphism(&a, &s.stripped, &b).unwrap().is_found());
        let r = morita_check(&a, &s.stripped, &b).unwrap();
        assert!(r.agree() && r.isomorphism.is_found());
    }

    #[test]
    fn strip_rejects_other_bases() {
        let q = Arc::new(q3());
        assert!(matches!(strip_isolated(&star(&q, "1")), Err(QError::UnsupportedBase(_))));
        let t = Arc::new(trop(4).unwrap());
        let obs = Arc::new(TypedSet::numbered("p", vec![ObjId(0); 2]));
        let s = Arc::new(EnrichedStructure::new(t, obs, vec![0, 4, 4, 4]).unwrap());
        let out = strip_isolated(&s).unwrap();
        assert!(out.verified);
        assert_eq!(out.stripped.n_objects(), 1);
    }

    #[test]
    fn budget_is_reported() {
        let q = Arc::new(q3());
        let c1 = star(&q, "1");
        let tiny = Budget { max_steps: 0, ..Budget::default() };
        assert_eq!(search_isomorphism(&c1, &c1, &tiny).unwrap(), SearchOutcome::BudgetExceeded);
        let small = Budget { max_objects: 0, ..Budget::default() };
        assert_eq!(search_isomorphism(&c1, &c1, &small).unwrap(), SearchOutcome::BudgetExceeded);
    }
}
