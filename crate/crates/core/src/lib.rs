//! Exact computations on finitely presented groups: derived series, coset
//! enumeration, Reidemeister–Schreier rewriting, Smith normal forms, low-index
//! subgroups and finite Galois covers.
//!
//! ```
//! use dsp_core::{explore_derived_series, parse_presentation, Limits, Outcome};
//!
//! let q8 = parse_presentation("gens: a b\nrel: a^4\nrel: a^2 b^-2\nrel: b^-1 a b a")
//!     .unwrap()
//!     .presentation;
//! let report = explore_derived_series(&q8, &Limits::default());
//! assert_eq!(report.outcome, Outcome::Stabilized { level: 2 });
//! ```

pub mod abelianization;
pub mod coset_enum;
pub mod derived_series;
pub mod finite_quotients;
pub mod presentation;
pub mod subgroup_rewriting;

pub use abelianization::{
    abelian_invariants, abelian_quotient_map, abelianized_relation_matrix, smith_normal_form,
    AbelianInvariants, AbelianQuotient, IntegerMatrix, SmithForm,
};
pub use coset_enum::{
    coset_action, enumerate_cosets, is_normal, verify_table, CosetTable, EnumerationError,
};
pub use derived_series::{
    classify_outcome, derived_subgroup_presentation, explore_derived_series, DerivedError,
    DerivedSeriesReport, DerivedStep, Limits, Outcome, Resource, StabilityVerdict,
};
pub use finite_quotients::{
    conjugacy_class_size, corollary_check, galois_closure, is_binary_icosahedral,
    is_perfect_finite, low_index_search, low_index_subgroups, permutation_image, CorollaryVerdict,
    FiniteGroupError, FiniteGroupRep, GaloisCoverDatum, GaloisError, GaloisOptions, LowIndexError,
    LowIndexOptions, Permutation,
};
pub use presentation::{
    commutator, cyclically_reduce, free_reduce, parse_presentation, parse_presentation_with_budget,
    ParseError, ParsedPresentation, Presentation, Word,
};
pub use subgroup_rewriting::{
    rewrite_subgroup_presentation, schreier_transversal, simplify_presentation, RewriteError,
    SchreierData, Simplified,
};
