//! Subgroup lattice computations and the theorem-level verifications.

pub mod centralizer;
pub mod context;
pub mod sandwich;
pub mod subgroup;
pub mod theorems;

pub use centralizer::{verify_centralizer_lemmas, CentralizerReport};
pub use context::LatticeContext;
pub use sandwich::{
    extract_unipotent, join_compatibility, sandwich_classify, verify_level_theorem, verify_levels,
    verify_root_unipotents, LevelReport, SandwichResult, Verdict,
};
pub use subgroup::{
    centralizer, commutator_subgroup, e_conjugacy_orbits, normal_closure, subgroup_closure, Subgroup,
};
pub use theorems::{
    simplicity_check, verify_commutator_formula, verify_parabolic_independence, verify_structure_theorems,
};
