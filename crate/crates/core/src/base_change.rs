//! Change of base along the split-idempotent completion: totally regular
//! structures over a base correspond to normal categories over its completion.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cauchy::{is_cauchy_complete_cat, is_cauchy_complete_trs, is_left_adjoint};
use crate::enumerate::{regular_semidistributors, structures_up_to, totally_regular_up_to};
use crate::error::{QError, Result};
use crate::matrix::{compose_unchecked, leq_unchecked, sup, QMatrix, TypedSet};
use crate::morita::is_inverse_pair;
use crate::quantaloid::{Arrow, Idm, ObjId, Quantaloid, Splitting};
use crate::structure::{same_base, EnrichedStructure, SemiDistributor};

/// A totally regular structure and its image over the completed base, where
/// object `a` is retyped at the idempotent `A(a,a)` and homs are unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReshuffleWitness {
    pub source: Arc<EnrichedStructure>,
    pub target: Arc<EnrichedStructure>,
}

fn require_idm_base(idm: &Idm, s: &EnrichedStructure) -> Result<()> {
    if same_base(idm.base(), s.base()) {
        Ok(())
    } else {
        Err(QError::DifferentBases)
    }
}

/// Retypes the objects of a totally regular structure at their endo-homs.
pub fn reshuffle(idm: &Idm, a: &Arc<EnrichedStructure>) -> Result<ReshuffleWitness> {
    require_idm_base(idm, a)?;
    a.require_totally_regular()?;
    let n = a.n_objects();
    let types: Vec<ObjId> = (0..n)
        .map(|x| {
            idm.object_for(Arrow::endo(a.type_of(x), a.hom(x, x)))
                .expect("endo-homs of a totally regular structure are idempotent")
        })
        .collect();
    let obs = Arc::new(TypedSet::new(a.obs().names().to_vec(), types.clone())?);
    let hom = QMatrix::from_fn(obs.clone(), obs, |y, x| {
        idm.from_base(types[x], types[y], a.hom(y, x))
            .expect("homs are absorbed by the endo-homs at both ends")
    });
    let target = Arc::new(EnrichedStructure::from_checked(idm.quantaloid().clone(), hom));
    Ok(ReshuffleWitness {
        source: a.clone(),
        target,
    })
}

/// Reads a normal category over the completed base back as a structure over the base.
pub fn unreshuffle(idm: &Idm, c: &Arc<EnrichedStructure>) -> Result<Arc<EnrichedStructure>> {
    if !same_base(idm.quantaloid(), c.base()) {
        return Err(QError::NotIdmBase);
    }
    if !c.flags().normal {
        return Err(QError::NotNormal);
    }
    let n = c.n_objects();
    let types: Vec<ObjId> = (0..n).map(|x| idm.idempotent(c.type_of(x)).src).collect();
    let obs = Arc::new(TypedSet::new(c.obs().names().to_vec(), types)?);
    let hom = QMatrix::from_fn(obs.clone(), obs, |y, x| idm.to_base(c.type_of(x), c.type_of(y), c.hom(y, x)));
    Ok(Arc::new(EnrichedStructure::from_checked(idm.base().clone(), hom)))
}

/// Transports a regular semidistributor between totally regular structures to
/// one between their reshuffles.
pub fn reshuffle_semidistributor(
    idm: &Idm,
    phi: &SemiDistributor,
    dom: &ReshuffleWitness,
    cod: &ReshuffleWitness,
) -> Result<SemiDistributor> {
    if dom.source != *phi.dom() || cod.source != *phi.cod() {
        return Err(QError::ShapeMismatch("witnesses do not match the semidistributor's ends".into()));
    }
    if !phi.is_regular() {
        return Err(QError::NotRegularSemidistributor);
    }
    let (ta, tb) = (dom.target.obs(), cod.target.obs());
    let mat = QMatrix::from_fn(tb.clone(), ta.clone(), |b, a| {
        idm.from_base(ta.type_of(a), tb.type_of(b), phi.get(b, a))
            .expect("regular semidistributors are absorbed by the endo-homs")
    });
    Ok(SemiDistributor::from_checked(dom.target.clone(), cod.target.clone(), mat))
}

/// The inverse transport of [`reshuffle_semidistributor`].
pub fn unreshuffle_semidistributor(
    idm: &Idm,
    phi: &SemiDistributor,
    dom: &ReshuffleWitness,
    cod: &ReshuffleWitness,
) -> Result<SemiDistributor> {
    if dom.target != *phi.dom() || cod.target != *phi.cod() {
        return Err(QError::ShapeMismatch("witnesses do not match the semidistributor's ends".into()));
    }
    let (ta, tb) = (phi.dom().obs(), phi.cod().obs());
    let mat = QMatrix::from_fn(cod.source.obs().clone(), dom.source.obs().clone(), |b, a| {
        idm.to_base(ta.type_of(a), tb.type_of(b), phi.get(b, a))
    });
    Ok(SemiDistributor::from_checked(dom.source.clone(), cod.source.clone(), mat))
}

/// A splitting of every endo-hom of a category, one per object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingChoice {
    pub splittings: Vec<Splitting>,
}

/// The first splitting of each endo-hom, in the base's scan order.
pub fn default_splitting(a: &EnrichedStructure) -> Result<SplittingChoice> {
    a.require_category()?;
    let q = a.base();
    let mut splittings = Vec::with_capacity(a.n_objects());
    for x in 0..a.n_objects() {
        let t = Arrow::endo(a.type_of(x), a.hom(x, x));
        match q.split_monad(t)? {
            Some(s) => splittings.push(s),
            None => {
                return Err(QError::NoSplitting {
                    object: a.obs().name(x).to_string(),
                    monad: q.arrow_name(t),
                })
            }
        }
    }
    Ok(SplittingChoice { splittings })
}

fn check_choice(a: &EnrichedStructure, choice: &SplittingChoice) -> Result<()> {
    if choice.splittings.len() != a.n_objects() {
        return Err(QError::ShapeMismatch("one splitting per object is required".into()));
    }
    let q = a.base();
    for (x, s) in choice.splittings.iter().enumerate() {
        let ta = a.type_of(x);
        q.check_object(s.object)?;
        q.check_arrow(Arrow::new(ta, s.object, s.f))?;
        q.check_arrow(Arrow::new(s.object, ta, s.u))?;
        let uf = q.comp(ta, s.object, ta, s.u, s.f);
        let fu = q.comp(s.object, ta, s.object, s.f, s.u);
        if uf != a.hom(x, x) || fu != q.identity(s.object) {
            return Err(QError::NoSplitting {
                object: a.obs().name(x).to_string(),
                monad: q.arrow_name(Arrow::endo(ta, a.hom(x, x))),
            });
        }
    }
    Ok(())
}

/// A category made normal by splitting its endo-homs, with the comparison pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    /// `Ã(a', a) = f_{a'} ∘ A(a', a) ∘ u_a`, objects typed at the splitting objects.
    pub normal: Arc<EnrichedStructure>,
    /// `Φ(a', a) = f_{a'} ∘ A(a', a)`: `A ⇸ Ã`.
    pub phi: SemiDistributor,
    /// `Ψ(a', a) = A(a', a) ∘ u_a`: `Ã ⇸ A`.
    pub psi: SemiDistributor,
    pub choice: SplittingChoice,
    /// `Ψ ⊗ Φ = A` and `Φ ⊗ Ψ = Ã`.
    pub inverse: bool,
}

/// Normalizes a category along a splitting of its endo-homs (the default one if none is given).
pub fn normalize_category(a: &Arc<EnrichedStructure>, choice: Option<SplittingChoice>) -> Result<Normalized> {
    a.require_category()?;
    let choice = match choice {
        Some(c) => {
            check_choice(a, &c)?;
            c
        }
        None => default_splitting(a)?,
    };
    let q = a.base();
    let sp = &choice.splittings;
    let names = a.obs().names().to_vec();
    let obs = Arc::new(TypedSet::new(names, sp.iter().map(|s| s.object).collect())?);
    let hom = QMatrix::from_fn(obs.clone(), obs.clone(), |y, x| {
        let (tx, ty) = (a.type_of(x), a.type_of(y));
        let au = q.comp(sp[x].object, tx, ty, a.hom(y, x), sp[x].u);
        q.comp(sp[x].object, ty, sp[y].object, sp[y].f, au)
    });
    let normal = Arc::new(EnrichedStructure::from_checked(q.clone(), hom));
    let phi_mat = QMatrix::from_fn(obs.clone(), a.obs().clone(), |y, x| {
        q.comp(a.type_of(x), a.type_of(y), sp[y].object, sp[y].f, a.hom(y, x))
    });
    let psi_mat = QMatrix::from_fn(a.obs().clone(), obs, |y, x| {
        q.comp(sp[x].object, a.type_of(x), a.type_of(y), a.hom(y, x), sp[x].u)
    });
    let phi = SemiDistributor::from_checked(a.clone(), normal.clone(), phi_mat);
    let psi = SemiDistributor::from_checked(normal.clone(), a.clone(), psi_mat);
    let inverse = is_inverse_pair(&phi, &psi)?;
    Ok(Normalized {
        normal,
        phi,
        psi,
        choice,
        inverse,
    })
}

/// Outcome of the transport checks across the change of base.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BaseChangeReport {
    pub structures: usize,
    pub semidistributor_pairs: usize,
    pub composites: usize,
    pub normal_categories: usize,
    /// Failures, one line each.
    pub failures: Vec<String>,
}

impl BaseChangeReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, over all totally regular structures with at most `max_objects`
/// objects: table-identical round trips, exact transport of suprema, order,
/// adjointness and completeness, transport of composition on `samples`
/// seeded composable triples, and that every normal category over the
/// completed base with at most `max_objects` objects is a reshuffle.
pub fn verify_base_change(q: &Arc<Quantaloid>, max_objects: usize, samples: usize, seed: u64) -> Result<BaseChangeReport> {
    let idm = Idm::build(q);
    let mut r = BaseChangeReport::default();
    let corpus = totally_regular_up_to(q, max_objects);
    let mut witnesses = Vec::with_capacity(corpus.len());
    for a in &corpus {
        let w = reshuffle(&idm, a)?;
        if !w.target.flags().normal {
            r.failures.push(format!("reshuffle of {:?} is not normal", a.hom_matrix().entries()));
        }
        if unreshuffle(&idm, &w.target)? != *a {
            r.failures.push(format!("round trip changes {:?}", a.hom_matrix().entries()));
        }
        let trs = is_cauchy_complete_trs(a)?.complete;
        let cat = is_cauchy_complete_cat(&w.target)?.complete;
        if trs != cat {
            r.failures.push(format!("completeness differs on {:?}: {trs} vs {cat}", a.hom_matrix().entries()));
        }
        witnesses.push(w);
    }
    r.structures = corpus.len();

    // suprema, order and adjointness on every pair of parallel semidistributors
    let mut hom_sets: Vec<(usize, usize, Vec<SemiDistributor>, Vec<SemiDistributor>)> = Vec::new();
    for (i, wa) in witnesses.iter().enumerate() {
        for (j, wb) in witnesses.iter().enumerate() {
            let src = regular_semidistributors(&wa.source, &wb.source);
            let mut img = Vec::with_capacity(src.len());
            for phi in &src {
                let hat = reshuffle_semidistributor(&idm, phi, wa, wb)?;
                if unreshuffle_semidistributor(&idm, &hat, wa, wb)? != *phi {
                    r.failures.push(format!("semidistributor round trip fails on {:?}", phi.mat().entries()));
                }
                if !hat.is_regular() {
                    r.failures.push(format!("image of {:?} is not a distributor", phi.mat().entries()));
                }
                let left = is_left_adjoint(phi)?.is_some();
                let left_hat = is_left_adjoint(&hat)?.is_some();
                if left != left_hat {
                    r.failures.push(format!("adjointness differs on {:?}", phi.mat().entries()));
                }
                img.push(hat);
            }
            for x in 0..src.len() {
                for y in 0..src.len() {
                    r.semidistributor_pairs += 1;
                    let le = leq_unchecked(q, src[x].mat(), src[y].mat());
                    let le_hat = leq_unchecked(idm.quantaloid(), img[x].mat(), img[y].mat());
                    if le != le_hat {
                        r.failures.push(format!("order differs on {:?} <= {:?}", src[x].mat().entries(), src[y].mat().entries()));
                    }
                    let s = sup(q, &[src[x].mat().clone(), src[y].mat().clone()])?;
                    let s_hat = sup(idm.quantaloid(), &[img[x].mat().clone(), img[y].mat().clone()])?;
                    let s_phi = SemiDistributor::from_checked(wa.source.clone(), wb.source.clone(), s);
                    if reshuffle_semidistributor(&idm, &s_phi, wa, wb)?.mat() != &s_hat {
                        r.failures.push(format!("suprema differ on {:?}, {:?}", src[x].mat().entries(), src[y].mat().entries()));
                    }
                }
            }
            hom_sets.push((i, j, src, img));
        }
    }

    // composition on seeded composable triples
    let n = witnesses.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        let (Some(&i), Some(&j), Some(&k)) = (idx.choose(&mut rng), idx.choose(&mut rng), idx.choose(&mut rng)) else {
            break;
        };
        let (first, first_hat) = (&hom_sets[i * n + j].2, &hom_sets[i * n + j].3);
        let (second, second_hat) = (&hom_sets[j * n + k].2, &hom_sets[j * n + k].3);
        if first.is_empty() || second.is_empty() {
            continue;
        }
        let x = (0..first.len()).collect::<Vec<_>>();
        let y = (0..second.len()).collect::<Vec<_>>();
        let (&x, &y) = (x.choose(&mut rng).expect("nonempty"), y.choose(&mut rng).expect("nonempty"));
        r.composites += 1;
        let comp = compose_unchecked(q, second[y].mat(), first[x].mat());
        let comp = SemiDistributor::from_checked(witnesses[i].source.clone(), witnesses[k].source.clone(), comp);
        let comp_hat = compose_unchecked(idm.quantaloid(), second_hat[y].mat(), first_hat[x].mat());
        if reshuffle_semidistributor(&idm, &comp, &witnesses[i], &witnesses[k])?.mat() != &comp_hat {
            r.failures.push(format!(
                "composition differs on {:?} then {:?}",
                first[x].mat().entries(),
                second[y].mat().entries()
            ));
        }
    }

    // every small normal category over the completion is hit
    for c in structures_up_to(idm.quantaloid(), max_objects, |f| f.normal) {
        r.normal_categories += 1;
        let back = unreshuffle(&idm, &c)?;
        let hit = back.is_totally_regular() && reshuffle(&idm, &back).map(|w| w.target == c).unwrap_or(false);
        if !hit {
            r.failures.push(format!("normal category {:?} is not a reshuffle", c.hom_matrix().entries()));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::fixtures::{n3, q2, q3};

    fn star(q: &Arc<Quantaloid>, name: &str) -> Arc<EnrichedStructure> {
        let x = ObjId(0);
        let e = q.hom(x, x).find(name).unwrap();
        Arc::new(EnrichedStructure::star(q.clone(), Arrow::endo(x, e)).unwrap())
    }

    #[test]
    fn reshuffle_examples() {
        let idm = Idm::build(&q3());
        let q = idm.base().clone();
        let sm = star(&q, "m");
        let w = reshuffle(&idm, &sm).unwrap();
        assert_eq!(idm.quantaloid().object_name(w.target.type_of(0)), "m");
        assert!(w.target.flags().normal);
        assert_eq!(unreshuffle(&idm, &w.target).unwrap(), sm);

        // a category is retyped at identities
        let c1 = star(&q, "1");
        let w = reshuffle(&idm, &c1).unwrap();
        assert_eq!(idm.quantaloid().object_name(w.target.type_of(0)), "1");
        assert!(unreshuffle(&idm, &star(idm.quantaloid(), "0")).is_ok());
        assert_eq!(unreshuffle(&idm, &sm), Err(QError::NotIdmBase));
    }

    #[test]
    fn normalize_over_the_completion_of_n3() {
        let idm = Idm::build(&n3());
        let iq = idm.quantaloid().clone();
        let one = iq.find_object("1").unwrap();
        let t = iq.hom(one, one).find("t").unwrap();
        let obs = Arc::new(TypedSet::new(vec!["a".into()], vec![one]).unwrap());
        let a = Arc::new(EnrichedStructure::new(iq.clone(), obs, vec![t]).unwrap());
        assert!(a.is_category() && !a.flags().normal);
        let n = normalize_category(&a, None).unwrap();
        assert!(n.inverse && n.normal.flags().normal);
        assert_eq!(iq.object_name(n.normal.type_of(0)), "t");
        let to = n.normal.type_of(0);
        let bt = idm.to_base(one, one, t);
        assert_eq!(idm.to_base(one, to, n.phi.get(0, 0)), bt);
        assert_eq!(idm.to_base(to, one, n.psi.get(0, 0)), bt);
        assert_eq!(idm.to_base(to, to, n.normal.hom(0, 0)), bt);
    }

    #[test]
    fn normalize_rejects_unsplit_monad() {
        let q = Arc::new(n3());
        let a = star(&q, "t");
        let err = normalize_category(&a, None).unwrap_err();
        assert!(matches!(err, QError::NoSplitting { .. }));
        assert!(err.to_string().contains("does not split"));
    }

    #[test]
    fn normalize_already_normal_is_identity() {
        let q = Arc::new(q2());
        let obs = Arc::new(TypedSet::numbered("a", vec![ObjId(0); 2]));
        let a = Arc::new(EnrichedStructure::new(q, obs, vec![1, 0, 1, 1]).unwrap());
        let n = normalize_category(&a, None).unwrap();
        assert!(n.inverse);
        assert_eq!(n.normal.hom_matrix().entries(), a.hom_matrix().entries());
        assert_eq!(n.phi.mat().entries(), a.hom_matrix().entries());
    }

    /// Over a base whose monads do not split, a probe `*_1` may converge to an
    /// object with a strictly larger endo-hom. The reshuffled category has no
    /// object of the probe's type, so the two completeness notions part ways.
    #[test]
    fn completeness_flags_can_differ_over_n3() {
        let q = Arc::new(n3());
        let idm = Idm::build(&q);
        let obs = Arc::new(TypedSet::numbered("a", vec![ObjId(0); 2]));
        let a = Arc::new(EnrichedStructure::new(q.clone(), obs, vec![0, 0, 0, 2]).unwrap());
        assert!(is_cauchy_complete_trs(&a).unwrap().complete);
        let domains = totally_regular_up_to(&q, 2);
        assert!(crate::cauchy::completeness_by_definition(&a, &domains).unwrap().is_none());
        let w = reshuffle(&idm, &a).unwrap();
        let cat = is_cauchy_complete_cat(&w.target).unwrap();
        assert!(!cat.complete);
        assert_eq!(idm.quantaloid().object_name(cat.non_converging[0].idempotent.src), "1");
        let r = verify_base_change(&q, 2, 10, 0).unwrap();
        assert!(r.failures.iter().any(|f| f.starts_with("completeness differs")));
    }

    #[test]
    fn transport_on_q2() {
        let r = verify_base_change(&Arc::new(q2()), 2, 50, 7).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        assert!(r.normal_categories > 0 && r.composites > 0);
    }
}
