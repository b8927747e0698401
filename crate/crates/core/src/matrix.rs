//! Typed sets and matrices of base arrows: composition by joins of
//! composites, entrywise suprema and order, and matrix residuals.

use std::sync::Arc;

use crate::error::{QError, Result};
use crate::lattice::Elem;
use crate::quantaloid::{ObjId, Quantaloid};

/// A finite sequence of named elements, each typed by a base object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypedSet {
    names: Vec<String>,
    types: Vec<ObjId>,
}

impl TypedSet {
    pub fn new(names: Vec<String>, types: Vec<ObjId>) -> Result<Self> {
        if names.len() != types.len() {
            return Err(QError::ShapeMismatch(format!(
                "{} names for {} types",
                names.len(),
                types.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(QError::ShapeMismatch(format!("duplicate element name `{n}`")));
            }
        }
        Ok(TypedSet { names, types })
    }

    /// Elements named `{prefix}0`, `{prefix}1`, ... with the given types.
    pub fn numbered(prefix: &str, types: Vec<ObjId>) -> Self {
        let names = (0..types.len()).map(|i| format!("{prefix}{i}")).collect();
        TypedSet { names, types }
    }

    pub fn empty() -> Self {
        TypedSet {
            names: vec![],
            types: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn type_of(&self, i: usize) -> ObjId {
        self.types[i]
    }

    pub fn types(&self) -> &[ObjId] {
        &self.types
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sub-set on the given indices, in that order.
    pub fn restrict(&self, subset: &[usize]) -> Self {
        TypedSet {
            names: subset.iter().map(|&i| self.names[i].clone()).collect(),
            types: subset.iter().map(|&i| self.types[i]).collect(),
        }
    }

    pub fn check_against(&self, q: &Quantaloid) -> Result<()> {
        self.types.iter().try_for_each(|&t| q.check_object(t))
    }
}

fn same_set(a: &Arc<TypedSet>, b: &Arc<TypedSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A matrix `rows x cols` whose entry `(r, c)` is a base arrow `type(c) -> type(r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: Arc<TypedSet>,
    cols: Arc<TypedSet>,
    entries: Vec<Elem>,
}

/// Monad and idempotence flags of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonadFlags {
    pub monad: bool,
    pub idempotent: bool,
}

impl QMatrix {
    /// Row-major entries; every entry is range-checked against its hom lattice.
    pub fn new(
        q: &Quantaloid,
        rows: Arc<TypedSet>,
        cols: Arc<TypedSet>,
        entries: Vec<Elem>,
    ) -> Result<Self> {
        rows.check_against(q)?;
        cols.check_against(q)?;
        if entries.len() != rows.len() * cols.len() {
            return Err(QError::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows.len(),
                cols.len()
            )));
        }
        for r in 0..rows.len() {
            for c in 0..cols.len() {
                let size = q.hom(cols.type_of(c), rows.type_of(r)).len();
                let x = entries[r * cols.len() + c];
                if x >= size {
                    return Err(QError::OutOfCarrier { elem: x, size });
                }
            }
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Unchecked constructor for entries produced by the algebra itself.
    pub(crate) fn from_raw(rows: Arc<TypedSet>, cols: Arc<TypedSet>, entries: Vec<Elem>) -> Self {
        debug_assert_eq!(entries.len(), rows.len() * cols.len());
        QMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(
        rows: Arc<TypedSet>,
        cols: Arc<TypedSet>,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for r in 0..rows.len() {
            for c in 0..cols.len() {
                entries.push(f(r, c));
            }
        }
        Self::from_raw(rows, cols, entries)
    }

    /// All-bottom matrix.
    pub fn bottom(q: &Quantaloid, rows: Arc<TypedSet>, cols: Arc<TypedSet>) -> Self {
        let (r2, c2) = (rows.clone(), cols.clone());
        Self::from_fn(rows, cols, |r, c| {
            q.hom(c2.type_of(c), r2.type_of(r)).bottom()
        })
    }

    /// Identity of the matrix quantaloid: identities on the diagonal, bottoms elsewhere.
    pub fn identity(q: &Quantaloid, set: Arc<TypedSet>) -> Self {
        let s = set.clone();
        Self::from_fn(set.clone(), set, |r, c| {
            if r == c {
                q.identity(s.type_of(r))
            } else {
                q.hom(s.type_of(c), s.type_of(r)).bottom()
            }
        })
    }

    pub fn rows(&self) -> &Arc<TypedSet> {
        &self.rows
    }

    pub fn cols(&self) -> &Arc<TypedSet> {
        &self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.entries[r * self.cols.len() + c]
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, x: Elem) {
        let n = self.cols.len();
        self.entries[r * n + c] = x;
    }

    /// Column `c` as a vector indexed by rows.
    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.n_rows()).map(|r| self.get(r, c)).collect()
    }

    /// Row `r` as a vector indexed by columns.
    pub fn row(&self, r: usize) -> Vec<Elem> {
        (0..self.n_cols()).map(|c| self.get(r, c)).collect()
    }

    /// Same entries over different (equally typed) row and column sets.
    pub fn retyped(&self, rows: Arc<TypedSet>, cols: Arc<TypedSet>) -> Result<Self> {
        if rows.types() != self.rows.types() || cols.types() != self.cols.types() {
            return Err(QError::ShapeMismatch("retyping must keep element types".into()));
        }
        Ok(Self::from_raw(rows, cols, self.entries.clone()))
    }

    /// Sub-matrix on the given row and column indices.
    pub fn restrict(&self, rows: Arc<TypedSet>, row_idx: &[usize], cols: Arc<TypedSet>, col_idx: &[usize]) -> Self {
        Self::from_fn(rows, cols, |r, c| self.get(row_idx[r], col_idx[c]))
    }

    pub(crate) fn same_shape(&self, other: &QMatrix) -> bool {
        same_set(&self.rows, &other.rows) && same_set(&self.cols, &other.cols)
    }

    /// Entry names, row-major, for display.
    pub fn entry_names(&self, q: &Quantaloid) -> Vec<Vec<String>> {
        (0..self.n_rows())
            .map(|r| {
                (0..self.n_cols())
                    .map(|c| {
                        q.hom(self.cols.type_of(c), self.rows.type_of(r))
                            .name(self.get(r, c))
                            .to_string()
                    })
                    .collect()
            })
            .collect()
    }
}

/// `Ψ ⊗ Φ` with `(Ψ ⊗ Φ)(c, a) = ⋁_b Ψ(c, b) ∘ Φ(b, a)`; an empty middle set gives bottoms.
pub fn compose(q: &Quantaloid, psi: &QMatrix, phi: &QMatrix) -> Result<QMatrix> {
    if !same_set(&psi.cols, &phi.rows) {
        return Err(QError::ShapeMismatch(
            "middle typed sets of the composite differ".into(),
        ));
    }
    Ok(compose_unchecked(q, psi, phi))
}

pub(crate) fn compose_unchecked(q: &Quantaloid, psi: &QMatrix, phi: &QMatrix) -> QMatrix {
    let (rows, mid, cols) = (&psi.rows, &phi.rows, &phi.cols);
    QMatrix::from_fn(rows.clone(), cols.clone(), |c, a| {
        let (ta, tc) = (cols.type_of(a), rows.type_of(c));
        let hom = q.hom(ta, tc);
        (0..mid.len()).fold(hom.bottom(), |acc, b| {
            let tb = mid.type_of(b);
            hom.join2(acc, q.comp(ta, tb, tc, psi.get(c, b), phi.get(b, a)))
        })
    })
}

/// Entrywise supremum of a nonempty family of parallel matrices.
pub fn sup(q: &Quantaloid, family: &[QMatrix]) -> Result<QMatrix> {
    let (first, rest) = family
        .split_first()
        .ok_or_else(|| QError::ShapeMismatch("supremum of an empty family".into()))?;
    let mut out = first.clone();
    for m in rest {
        if !m.same_shape(first) {
            return Err(QError::ShapeMismatch("supremum of non-parallel matrices".into()));
        }
        for r in 0..out.n_rows() {
            for c in 0..out.n_cols() {
                let hom = q.hom(out.cols.type_of(c), out.rows.type_of(r));
                let j = hom.join2(out.get(r, c), m.get(r, c));
                out.set(r, c, j);
            }
        }
    }
    Ok(out)
}

/// Entrywise order.
pub fn leq_matrix(q: &Quantaloid, a: &QMatrix, b: &QMatrix) -> Result<bool> {
    if !a.same_shape(b) {
        return Err(QError::ShapeMismatch("comparing non-parallel matrices".into()));
    }
    Ok(leq_unchecked(q, a, b))
}

pub(crate) fn leq_unchecked(q: &Quantaloid, a: &QMatrix, b: &QMatrix) -> bool {
    (0..a.n_rows()).all(|r| {
        (0..a.n_cols()).all(|c| {
            q.hom(a.cols.type_of(c), a.rows.type_of(r))
                .le(a.get(r, c), b.get(r, c))
        })
    })
}

/// `[Φ, Θ]`: the largest `X: C -> A` with `Φ ⊗ X <= Θ`, for `Φ: A -> B` and `Θ: C -> B`.
///
/// Computed entrywise as `X(a, c) = ⋀_b [Φ(b, a), Θ(b, c)]`.
pub fn mat_lifting(q: &Quantaloid, phi: &QMatrix, theta: &QMatrix) -> Result<QMatrix> {
    if !same_set(&phi.rows, &theta.rows) {
        return Err(QError::ShapeMismatch("lifting needs a common codomain".into()));
    }
    Ok(lifting_unchecked(q, phi, theta))
}

pub(crate) fn lifting_unchecked(q: &Quantaloid, phi: &QMatrix, theta: &QMatrix) -> QMatrix {
    let (a_set, b_set, c_set) = (&phi.cols, &phi.rows, &theta.cols);
    QMatrix::from_fn(a_set.clone(), c_set.clone(), |a, c| {
        let (ta, tc) = (a_set.type_of(a), c_set.type_of(c));
        let hom = q.hom(tc, ta);
        (0..b_set.len()).fold(hom.top(), |acc, b| {
            let tb = b_set.type_of(b);
            hom.meet2(acc, q.lift(tc, ta, tb, phi.get(b, a), theta.get(b, c)))
        })
    })
}

/// `{Φ, Θ}`: the largest `X: B -> C` with `X ⊗ Φ <= Θ`, for `Φ: A -> B` and `Θ: A -> C`.
///
/// Computed entrywise as `X(c, b) = ⋀_a {Φ(b, a), Θ(c, a)}`.
pub fn mat_extension(q: &Quantaloid, phi: &QMatrix, theta: &QMatrix) -> Result<QMatrix> {
    if !same_set(&phi.cols, &theta.cols) {
        return Err(QError::ShapeMismatch("extension needs a common domain".into()));
    }
    let (a_set, b_set, c_set) = (&phi.cols, &phi.rows, &theta.rows);
    Ok(QMatrix::from_fn(c_set.clone(), b_set.clone(), |c, b| {
        let (tb, tc) = (b_set.type_of(b), c_set.type_of(c));
        let hom = q.hom(tb, tc);
        (0..a_set.len()).fold(hom.top(), |acc, a| {
            let ta = a_set.type_of(a);
            hom.meet2(acc, q.extend(ta, tb, tc, phi.get(b, a), theta.get(c, a)))
        })
    }))
}

/// Monad (`1 <= M` on the diagonal and `M ⊗ M <= M`) and idempotence (`M ⊗ M = M`) flags.
pub fn is_monad_matrix(q: &Quantaloid, m: &QMatrix) -> Result<MonadFlags> {
    if !same_set(&m.rows, &m.cols) {
        return Err(QError::ShapeMismatch("monad check needs a square matrix".into()));
    }
    let mm = compose_unchecked(q, m, m);
    let unit = (0..m.n_rows()).all(|i| {
        let t = m.rows.type_of(i);
        q.hom(t, t).le(q.identity(t), m.get(i, i))
    });
    Ok(MonadFlags {
        monad: unit && leq_unchecked(q, &mm, m),
        idempotent: mm == *m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::fixtures::{n3, q2, q3, trop};

    const STAR: ObjId = ObjId(0);

    fn set(n: usize) -> Arc<TypedSet> {
        Arc::new(TypedSet::numbered("x", vec![STAR; n]))
    }

    fn mat(q: &Quantaloid, rows: &Arc<TypedSet>, cols: &Arc<TypedSet>, e: &[Elem]) -> QMatrix {
        QMatrix::new(q, rows.clone(), cols.clone(), e.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let q = q3();
        let one = set(1);
        let m = mat(&q, &one, &one, &[1]);
        assert_eq!(compose(&q, &m, &m).unwrap().entries(), &[1]);

        let q = q2();
        let (two, one) = (set(2), set(1));
        let psi = mat(&q, &two, &one, &[1, 0]);
        let phi = mat(&q, &one, &two, &[1, 0]);
        assert_eq!(compose(&q, &psi, &phi).unwrap().entries(), &[1, 0, 0, 0]);
        // mismatched middle set
        assert!(compose(&q, &phi, &phi).is_err());
    }

    #[test]
    fn empty_middle_set_gives_bottom() {
        let q = trop(3).unwrap();
        let (zero, one) = (set(0), set(1));
        let psi = mat(&q, &one, &zero, &[]);
        let phi = mat(&q, &zero, &one, &[]);
        assert_eq!(compose(&q, &psi, &phi).unwrap().entries(), &[3]);
    }

    #[test]
    fn sup_and_order_examples() {
        let q = q3();
        let one = set(1);
        let a = mat(&q, &one, &one, &[0]);
        let b = mat(&q, &one, &one, &[1]);
        assert_eq!(sup(&q, &[a.clone(), b.clone()]).unwrap(), b);
        assert_eq!(sup(&q, std::slice::from_ref(&a)).unwrap(), a);
        assert!(sup(&q, &[]).is_err());
        let two = set(2);
        let x = mat(&q, &one, &two, &[0, 1]);
        let y = mat(&q, &one, &two, &[1, 1]);
        assert!(leq_matrix(&q, &x, &y).unwrap());
        assert!(!leq_matrix(&q, &y, &x).unwrap());
        assert!(leq_matrix(&q, &x, &a).is_err());
    }

    #[test]
    fn residual_examples() {
        let q = q3();
        let one = set(1);
        let m = mat(&q, &one, &one, &[1]);
        let zero = mat(&q, &one, &one, &[0]);
        assert_eq!(mat_extension(&q, &m, &zero).unwrap().entries(), &[0]);
        assert_eq!(mat_lifting(&q, &m, &zero).unwrap().entries(), &[0]);

        // Φ = [1 0]: A (2 elements) -> B (1 element), Θ = [1 0]: A -> C.
        let q = q2();
        let two = set(2);
        let phi = mat(&q, &one, &two, &[1, 0]);
        let x = mat_extension(&q, &phi, &phi).unwrap();
        assert_eq!(x.entries(), &[1]);
        assert_eq!(x.n_rows(), 1);
        assert!(mat_lifting(&q, &phi, &mat(&q, &two, &two, &[1, 0, 0, 1])).is_err());
    }

    #[test]
    fn monad_matrix_examples() {
        let q = q2();
        let two = set(2);
        let top = mat(&q, &two, &two, &[1, 1, 1, 1]);
        assert_eq!(
            is_monad_matrix(&q, &top).unwrap(),
            MonadFlags { monad: true, idempotent: true }
        );
        let q = q3();
        let one = set(1);
        let m = mat(&q, &one, &one, &[1]);
        assert_eq!(
            is_monad_matrix(&q, &m).unwrap(),
            MonadFlags { monad: false, idempotent: true }
        );
        let t = trop(4).unwrap();
        let two_t = mat(&t, &one, &one, &[2]);
        assert_eq!(
            is_monad_matrix(&t, &two_t).unwrap(),
            MonadFlags { monad: false, idempotent: false }
        );
        assert!(is_monad_matrix(&q, &mat(&q, &one, &set(2), &[0, 0])).is_err());
    }

    #[test]
    fn rejects_out_of_carrier_entries() {
        let q = n3();
        let one = set(1);
        assert!(QMatrix::new(&q, one.clone(), one.clone(), vec![3]).is_err());
        assert!(QMatrix::new(&q, one.clone(), one, vec![0, 0]).is_err());
    }
}
