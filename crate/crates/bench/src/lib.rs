//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use qorder_core::enumerate::totally_regular_up_to;
use qorder_core::fixtures::fixture;
use qorder_core::{EnrichedStructure, ObjId, QMatrix, Quantaloid, TypedSet};

pub fn base(name: &str) -> Arc<Quantaloid> {
    Arc::new(fixture(name).expect("known fixture"))
}

/// All totally regular structures over `name` with at most `n` objects.
pub fn corpus(name: &str, n: usize) -> Vec<Arc<EnrichedStructure>> {
    totally_regular_up_to(&base(name), n)
}

/// A square matrix over the first object of `q` with deterministic,
/// well-spread entries.
pub fn square(q: &Quantaloid, n: usize, salt: usize) -> QMatrix {
    let x = ObjId(0);
    let set = Arc::new(TypedSet::numbered("x", vec![x; n]));
    let size = q.hom(x, x).len();
    let entries = (0..n * n).map(|i| (i * 7 + salt * 13 + i / n) % size).collect();
    QMatrix::new(q, set.clone(), set, entries).expect("entries are in range")
}
