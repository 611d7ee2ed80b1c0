//! Matrix models of split Chevalley groups over Z/m.

pub mod calculus;
pub mod checks;
pub mod gauss;
pub mod hypothesis;
pub mod matrix;
pub mod model;
pub mod ring;
pub mod subgroups;
pub mod table;

pub use checks::{
    check_calculus, check_root_pairs, commutator_identity_check, CalculusOptions, CalculusReport, RootPairReport,
};
pub use calculus::{
    chevalley_commutator_decompose, lemma_abe_witness, lemma_const_check, levi_conjugation_decompose,
    sum_formula_decompose, unipotent_factor,
};
pub use gauss::gauss_cell_membership;
pub use hypothesis::{hypothesis_check, HypothesisReport};
pub use matrix::Mat;
pub use model::{GroupModel, ModelKind, ParabolicBlocks, Position, Sp4Parabolic};
pub use ring::{jacobson_radical, ring_ideals, ZmIdeal, ZmRing};
pub use subgroups::{
    center, congruence_subgroup, elementary_subgroup, full_congruence_subgroup, relative_elementary_subgroup,
};
pub use table::{group_elements, ElementTable, DEFAULT_CAP};
