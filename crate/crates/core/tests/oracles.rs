//! Kernels checked against exhaustive searches on small corpora.

use std::sync::Arc;

use qorder_core::enumerate::{object_maps, regular_semidistributors, semidistributors, totally_regular_up_to};
use qorder_core::fixtures::{n3, q2, q3};
use qorder_core::*;

fn corpora() -> Vec<Vec<Arc<EnrichedStructure>>> {
    [q2(), q3(), n3()]
        .into_iter()
        .map(|q| totally_regular_up_to(&Arc::new(q), 2))
        .collect()
}

/// The canonical candidate is a right adjoint exactly when some regular
/// semidistributor is, and then it is that one.
#[test]
fn right_adjoint_candidate_matches_search() {
    for corpus in corpora() {
        for a in &corpus {
            for b in &corpus {
                let backs = regular_semidistributors(b, a);
                for phi in regular_semidistributors(a, b) {
                    let found: Vec<&SemiDistributor> =
                        backs.iter().filter(|psi| is_adjoint_pair(&phi, psi).unwrap()).collect();
                    match is_left_adjoint(&phi).unwrap() {
                        Some(pair) => {
                            assert_eq!(found.len(), 1);
                            assert_eq!(found[0].mat(), pair.right.mat());
                        }
                        None => assert!(found.is_empty()),
                    }
                }
            }
        }
    }
}

/// Regular semidistributors from the local shortcut agree with the matrix equalities.
#[test]
fn local_semidistributor_check_matches_general() {
    for corpus in corpora() {
        for a in corpus.iter().filter(|s| s.n_objects() <= 2) {
            for b in corpus.iter().filter(|s| s.n_objects() <= 1) {
                for phi in semidistributors(a, b) {
                    assert_eq!(check_semidistributor(&phi), check_semidistributor_general(&phi));
                }
            }
        }
    }
}

/// The local regular-semifunctor test agrees with the matrix equalities.
#[test]
fn local_object_map_check_matches_general() {
    for corpus in corpora() {
        for a in &corpus {
            for b in &corpus {
                for f in object_maps(a, b) {
                    assert_eq!(check_object_map(&f), check_object_map_general(&f), "{:?}", f.map());
                }
            }
        }
    }
}

/// Convergence through the kernel against a scan of all object maps.
#[test]
fn convergence_matches_brute_force() {
    for corpus in corpora() {
        for a in &corpus {
            for b in &corpus {
                let maps = object_maps(a, b);
                for phi in regular_semidistributors(a, b) {
                    let Some(pair) = is_left_adjoint(&phi).unwrap() else { continue };
                    let brute: Vec<&ObjectMap> = maps
                        .iter()
                        .filter(|f| {
                            check_object_map(f).semifunctor
                                && f.represented() == *pair.left.mat()
                                && f.corepresented() == *pair.right.mat()
                        })
                        .collect();
                    match converges(&pair).unwrap() {
                        Some(f) => {
                            assert!(brute.iter().any(|g| g.map() == f.map()));
                            assert!(check_object_map(&f).regular_semifunctor);
                        }
                        None => assert!(brute.is_empty()),
                    }
                }
            }
        }
    }
}

/// The skeleton keeps one object per isomorphism class, where isomorphism is
/// decided by the existence of an inverse pair of object maps.
#[test]
fn skeleton_matches_isomorphism_classes() {
    for corpus in corpora() {
        for s in &corpus {
            let (_, _, class_of) = skeleton(s).unwrap();
            let n = s.n_objects();
            let q = s.base();
            for x in 0..n {
                for y in 0..n {
                    let (tx, ty) = (s.type_of(x), s.type_of(y));
                    let iso = tx == ty
                        && s.hom(x, x) == s.hom(y, y)
                        && q.hom(tx, tx).le(s.hom(x, x), s.hom(x, y))
                        && q.hom(tx, tx).le(s.hom(x, x), s.hom(y, x));
                    assert_eq!(iso, class_of[x] == class_of[y], "{} {x} {y}", describe(s));
                }
            }
        }
    }
}
