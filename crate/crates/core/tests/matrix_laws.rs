use std::sync::Arc;

use proptest::prelude::*;
use qorder_core::enumerate::Odometer;
use qorder_core::fixtures::{fixture, n3, q2, q3};
use qorder_core::*;

fn bases() -> Vec<Arc<Quantaloid>> {
    ["q2", "q3", "p2", "n3", "trop:4", "idm:n3", "idm:q3"]
        .iter()
        .map(|n| Arc::new(fixture(n).unwrap()))
        .collect()
}

/// A typed set of `types.len()` elements, types reduced modulo the base's objects.
fn typed(q: &Quantaloid, prefix: &str, types: &[usize]) -> Arc<TypedSet> {
    Arc::new(TypedSet::numbered(prefix, types.iter().map(|t| ObjId(t % q.n_objects())).collect()))
}

/// Matrix with entries reduced modulo the size of each hom lattice.
fn matrix(q: &Quantaloid, rows: &Arc<TypedSet>, cols: &Arc<TypedSet>, raw: &[usize]) -> QMatrix {
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for r in 0..rows.len() {
        for c in 0..cols.len() {
            let n = q.hom(cols.type_of(c), rows.type_of(r)).len();
            entries.push(raw[(r * cols.len() + c) % raw.len()] % n);
        }
    }
    QMatrix::new(q, rows.clone(), cols.clone(), entries).unwrap()
}

fn sizes() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative_and_unital(
        b in 0usize..7,
        ta in sizes(), tb in sizes(), tc in sizes(), td in sizes(),
        raw in prop::collection::vec(0usize..16, 1..48),
    ) {
        let q = &bases()[b];
        let (sa, sb, sc, sd) = (typed(q, "a", &ta), typed(q, "b", &tb), typed(q, "c", &tc), typed(q, "d", &td));
        let phi = matrix(q, &sb, &sa, &raw);
        let psi = matrix(q, &sc, &sb, &raw[raw.len() / 3..]);
        let chi = matrix(q, &sd, &sc, &raw[raw.len() / 2..]);
        let left = compose(q, &chi, &compose(q, &psi, &phi).unwrap()).unwrap();
        let right = compose(q, &compose(q, &chi, &psi).unwrap(), &phi).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(compose(q, &QMatrix::identity(q, sb.clone()), &phi).unwrap(), phi.clone());
        prop_assert_eq!(compose(q, &phi, &QMatrix::identity(q, sa.clone())).unwrap(), phi);
    }

    #[test]
    fn composition_distributes_over_suprema(
        b in 0usize..7,
        ta in sizes(), tb in sizes(), tc in sizes(),
        raw in prop::collection::vec(0usize..16, 1..48),
    ) {
        let q = &bases()[b];
        let (sa, sb, sc) = (typed(q, "a", &ta), typed(q, "b", &tb), typed(q, "c", &tc));
        let phi1 = matrix(q, &sb, &sa, &raw);
        let phi2 = matrix(q, &sb, &sa, &raw[raw.len() / 2..]);
        let psi = matrix(q, &sc, &sb, &raw[raw.len() / 3..]);
        let joined = compose(q, &psi, &sup(q, &[phi1.clone(), phi2.clone()]).unwrap()).unwrap();
        let separately = sup(q, &[compose(q, &psi, &phi1).unwrap(), compose(q, &psi, &phi2).unwrap()]).unwrap();
        prop_assert_eq!(joined, separately);
        // the empty supremum is absorbing
        let bottom = QMatrix::bottom(q, sb.clone(), sa.clone());
        prop_assert_eq!(compose(q, &psi, &bottom).unwrap(), QMatrix::bottom(q, sc, sa));
    }

    #[test]
    fn residuals_are_adjoint_on_random_instances(
        b in 0usize..7,
        ta in sizes(), tb in sizes(), tc in sizes(),
        raw in prop::collection::vec(0usize..16, 1..48),
    ) {
        let q = &bases()[b];
        let (sa, sb, sc) = (typed(q, "a", &ta), typed(q, "b", &tb), typed(q, "c", &tc));
        let phi = matrix(q, &sb, &sa, &raw);
        let theta = matrix(q, &sb, &sc, &raw[raw.len() / 2..]);
        let lift = mat_lifting(q, &phi, &theta).unwrap();
        prop_assert!(leq_matrix(q, &compose(q, &phi, &lift).unwrap(), &theta).unwrap());
        let theta2 = matrix(q, &sc, &sa, &raw[raw.len() / 3..]);
        let ext = mat_extension(q, &phi, &theta2).unwrap();
        prop_assert!(leq_matrix(q, &compose(q, &ext, &phi).unwrap(), &theta2).unwrap());
    }
}

/// Every matrix of the given shape.
fn all_matrices(q: &Quantaloid, rows: &Arc<TypedSet>, cols: &Arc<TypedSet>) -> Vec<QMatrix> {
    let mut sizes = Vec::new();
    for r in 0..rows.len() {
        for c in 0..cols.len() {
            sizes.push(q.hom(cols.type_of(c), rows.type_of(r)).len());
        }
    }
    Odometer::new(sizes)
        .map(|e| QMatrix::new(q, rows.clone(), cols.clone(), e).unwrap())
        .collect()
}

/// `X <= Φ \ Θ` iff `Φ ⊗ X <= Θ`, and `X <= Θ / Φ` iff `X ⊗ Φ <= Θ`, over
/// every matrix with at most two rows and columns.
#[test]
fn matrix_residuals_against_brute_force() {
    for q in [q2(), q3(), n3()] {
        let x = ObjId(0);
        let sets: Vec<Arc<TypedSet>> = (1..=2).map(|n| Arc::new(TypedSet::numbered("s", vec![x; n]))).collect();
        for sa in &sets {
            for sb in &sets {
                for sc in &sets {
                    let xs_lift = all_matrices(&q, sa, sc);
                    let xs_ext = all_matrices(&q, sc, sb);
                    for phi in all_matrices(&q, sb, sa) {
                        for theta in all_matrices(&q, sb, sc) {
                            let l = mat_lifting(&q, &phi, &theta).unwrap();
                            for xm in &xs_lift {
                                let lhs = leq_matrix(&q, &compose(&q, &phi, xm).unwrap(), &theta).unwrap();
                                assert_eq!(lhs, leq_matrix(&q, xm, &l).unwrap());
                            }
                        }
                        for theta in all_matrices(&q, sc, sa) {
                            let e = mat_extension(&q, &phi, &theta).unwrap();
                            for xm in &xs_ext {
                                let lhs = leq_matrix(&q, &compose(&q, xm, &phi).unwrap(), &theta).unwrap();
                                assert_eq!(lhs, leq_matrix(&q, xm, &e).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn shape_errors_are_reported() {
    let q = q3();
    let s1 = Arc::new(TypedSet::numbered("a", vec![ObjId(0)]));
    let s2 = Arc::new(TypedSet::numbered("b", vec![ObjId(0); 2]));
    let m = QMatrix::bottom(&q, s1.clone(), s2.clone());
    assert!(matches!(compose(&q, &m, &m), Err(QError::ShapeMismatch(_))));
    assert!(matches!(QMatrix::new(&q, s1.clone(), s1.clone(), vec![7]), Err(QError::OutOfCarrier { .. })));
    assert!(matches!(QMatrix::new(&q, s1, s2, vec![0]), Err(QError::ShapeMismatch(_))));
}
