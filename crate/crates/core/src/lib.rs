//! Median join-semilattices, the preference spaces that embed into them, and
//! the aggregation rules and axioms defined over those spaces.

pub mod checks;
pub mod coalition;
pub mod context;
pub mod corpus;
pub mod error;
pub mod poset;
pub mod profile;
pub mod relation;
pub mod rules;
pub mod spaces;
pub mod verify;

pub use checks::{
    axiom, canonical_lu_preorder, check, check_iia_between, is_bmu_monotonic, is_isotonic,
    is_locally_unimodal, is_m_independent, is_monotonic_m_independent, is_rich, is_strategy_proof,
    Axiom, CheckReport, OutcomePreference, Predicate, Witness,
};
pub use coalition::{classify_family, Coalition, FamilyClass, FilterFamily, OrderFilterN};
pub use context::{classify, Betweenness, ContextOptions, MedianContext, StructureReport};
pub use error::{Error, Result};
pub use poset::Poset;
pub use profile::{ProfileCube, ProfileJson, Vote};
pub use relation::{BinRel, Flavor, GroundSet, RelationJson};
pub use spaces::{
    condorcet_winner, enumerate_space, kemeny_distance, IsoMap, RelationSpace, SpaceOptions,
    SpaceSpec,
};
pub use rules::{
    co_majority, eval, extract_filters, generalized_ck, minimal_monotonic_retract, sponsorship_eval,
    strict_ck, tabulate, BoundRule, FilterForm, RuleSpec, RuleTable, Target, TieBreak,
};
pub use verify::{
    verify_claims, verify_corollary1, verify_prop1, verify_prop3, verify_prop5, verify_theorem1,
    Verification,
};
