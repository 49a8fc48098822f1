//! Embeddings, automorphism groups, conjugations, Mobius maps on the
//! transcendental layer, and the verdict-producing classifiers for the
//! galois / tame / strong / absolute hierarchy.

pub mod classify;
pub mod conjugation;
pub mod embedding;
pub mod mobius;

pub use classify::{
    absolute_galois_refute, classify, galois_over_subfield, is_quasi_galois_wrt,
    plain_galois_classify, strong_galois_classify, tame_galois_search, Classification,
    SearchBounds, Verdict,
};
pub use conjugation::{
    build_conjugation, unique_conjugation_check, Conjugation, ConjugationReport, Containment,
    ElementConjugation, ElementContainment,
};
pub use embedding::{
    analyze_over, automorphism_group, embeddings_over, AutGroup, Embedding, ExtensionAnalysis,
};
pub use mobius::{compose_mixed_automorphism, mobius_fixed_test, MobiusMap};
