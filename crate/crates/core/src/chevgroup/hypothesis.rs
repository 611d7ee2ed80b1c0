use serde::Serialize;

use super::model::{GroupModel, ModelKind};
use crate::rootsys::structure_constant_primes;

/// Which hypotheses of the normal structure theorem a model satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub model: String,
    pub root_system: String,
    /// The absolute root systems of the supported models are irreducible
    /// by construction.
    pub irreducible: bool,
    pub structure_primes: Vec<u32>,
    pub structure_constants_invertible: bool,
    pub isotropic_rank: usize,
    pub isotropic_rank_ok: bool,
    /// Some residue field of Z/m is F_2.
    pub residue_field_two: bool,
    /// Type C_2 or G_2 over a ring with residue field F_2, where E(R) may
    /// fail to be perfect.
    pub perfectness_exception: bool,
    pub passes: bool,
}

pub fn hypothesis_check(model: &GroupModel) -> HypothesisReport {
    let sys = model.abs_system();
    let primes: Vec<u32> = structure_constant_primes(sys).into_iter().collect();
    let ring = model.ring();
    let invertible = primes.iter().all(|&p| ring.is_unit(p));
    let rank = match model.kind() {
        ModelKind::Sl => model.degree() - 1,
        ModelKind::Sp4 => 2,
    };
    let residue_two = model.modulus().is_multiple_of(2);
    let exception = residue_two && model.kind() == ModelKind::Sp4;
    HypothesisReport {
        model: model.name(),
        root_system: sys.rtype().to_string(),
        irreducible: true,
        structure_primes: primes,
        structure_constants_invertible: invertible,
        isotropic_rank: rank,
        isotropic_rank_ok: rank >= 2,
        residue_field_two: residue_two,
        perfectness_exception: exception,
        passes: invertible && rank >= 2 && !exception,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevgroup::model::Sp4Parabolic;

    #[test]
    fn examples() {
        let r = hypothesis_check(&GroupModel::sl(3, 4, vec![1, 1, 1]).unwrap());
        assert!(r.passes);
        assert_eq!(r.isotropic_rank, 2);
        let r = hypothesis_check(&GroupModel::sp4(2, Sp4Parabolic::Borel).unwrap());
        assert!(!r.passes && !r.structure_constants_invertible && r.perfectness_exception);
        let r = hypothesis_check(&GroupModel::sp4(3, Sp4Parabolic::Borel).unwrap());
        assert!(r.passes);
        assert_eq!(r.structure_primes, vec![2]);
        let r = hypothesis_check(&GroupModel::sl(2, 5, vec![1, 1]).unwrap());
        assert!(!r.passes && !r.isotropic_rank_ok);
    }
}
