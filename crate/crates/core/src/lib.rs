//! Finite quantaloids, matrices over them, and the regular-semicategory
//! toolkit built on top: classification, Cauchy completion, base change and
//! Morita equivalence checks.

pub mod base_change;
pub mod budget;
pub mod cauchy;
pub mod checks;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod morita;
pub mod quantaloid;
pub mod structure;

pub use budget::{Budget, SearchOutcome, BUDGET_ENV};
pub use cauchy::{
    cauchy_complete_cat, cauchy_complete_trs, complete_regular, completeness_by_definition, converges,
    factor_through_completion, is_adjoint_pair, is_cauchy_complete_cat, is_cauchy_complete_trs, is_left_adjoint,
    left_adjoint_probes, right_adjoint_candidate, search_other_factorization, skeleton, yoneda_check, AdjointPair,
    Completeness, CompletionResult, Probe, ProbeKind, YonedaReport,
};
pub use error::{QError, Result};
pub use lattice::{validate_lattice, Elem, FiniteLattice, LatticeReport, LatticeViolation};
pub use matrix::{
    compose, is_monad_matrix, leq_matrix, mat_extension, mat_lifting, sup, MonadFlags, QMatrix, TypedSet,
};
pub use morita::{
    is_equivalence, is_inverse_pair, morita_check, search_equivalence, search_isomorphism, strip_isolated,
    EquivWitness, IsoWitness, MoritaReport, Stripped,
};
pub use quantaloid::{
    build_idm, fixtures, validate_quantaloid, Arrow, Idm, Law, ObjId, Quantaloid, QuantaloidReport,
    QuantaloidViolation, Splitting,
};
pub use structure::{
    check_object_map, check_object_map_general, check_semidistributor, check_semidistributor_general, classify,
    full_subgraph, induced_pair, semifunctor_leq, semifunctors_equivalent, stable_objects,
    stable_objects_by_definition, Classification, EnrichedStructure, MapFlags, ObjectMap, SemiDistFlags,
    SemiDistributor,
};
pub use base_change::{
    default_splitting, normalize_category, reshuffle, reshuffle_semidistributor, unreshuffle,
    unreshuffle_semidistributor, verify_base_change, BaseChangeReport, Normalized, ReshuffleWitness, SplittingChoice,
};
pub use checks::{describe, run_suite, CheckConfig, CheckReport, Suite};
