use crate::chevgroup::hypothesis::{hypothesis_check, HypothesisReport};
use crate::chevgroup::model::GroupModel;
use crate::chevgroup::ring::{ring_ideals, ZmIdeal};
use crate::chevgroup::subgroups::{
    center, congruence_subgroup, elementary_subgroup, full_congruence_subgroup, relative_elementary_subgroup,
};
use crate::chevgroup::table::{group_elements, ElementTable};
use crate::error::Result;
use crate::lattice::subgroup::{e_conjugacy_orbits, e_normal_closure, Subgroup};
use crate::par::Exec;

/// A tabulated model together with its distinguished subgroups and the
/// normal closures of its E-conjugacy classes.
pub struct LatticeContext {
    pub model: GroupModel,
    pub table: ElementTable,
    pub hypotheses: HypothesisReport,
    pub cap: usize,
    /// Every ideal of Z/m, ordered by generator.
    pub ideals: Vec<ZmIdeal>,
    pub elementary: Subgroup,
    pub center: Subgroup,
    /// G(R,q), C(R,q) and E(R,q), indexed like `ideals`.
    pub congruence: Vec<Subgroup>,
    pub full_congruence: Vec<Subgroup>,
    pub relative_elementary: Vec<Subgroup>,
    pub orbits: Vec<Vec<u32>>,
    /// Index into `closures` of the normal closure of each orbit.
    pub orbit_closure: Vec<usize>,
    /// Distinct normal closures, in order of first appearance.
    pub closures: Vec<Subgroup>,
    orbit_of: Vec<u32>,
}

impl LatticeContext {
    pub fn build(model: GroupModel, cap: usize, exec: Exec) -> Result<Self> {
        let table = group_elements(&model, cap, exec)?;
        let ideals = ring_ideals(model.ring());
        let elementary = elementary_subgroup(&table);
        let center = center(&table);
        let congruence = ideals.iter().map(|&q| congruence_subgroup(&table, q)).collect();
        let full_congruence = ideals
            .iter()
            .map(|&q| full_congruence_subgroup(&model, &table, q, cap, exec))
            .collect::<Result<Vec<_>>>()?;
        let relative_elementary = ideals
            .iter()
            .map(|&q| relative_elementary_subgroup(&model, &table, q))
            .collect::<Result<Vec<_>>>()?;

        let orbits = e_conjugacy_orbits(&table);
        let mut orbit_of = vec![0u32; table.len()];
        for (k, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                orbit_of[x as usize] = k as u32;
            }
        }
        let raw = exec.map(&orbits, |orbit| e_normal_closure(&table, &orbit[..1]));
        let mut closures: Vec<Subgroup> = Vec::new();
        let mut orbit_closure = Vec::with_capacity(raw.len());
        for h in raw {
            match closures.iter().position(|c| *c == h) {
                Some(i) => orbit_closure.push(i),
                None => {
                    orbit_closure.push(closures.len());
                    closures.push(h);
                }
            }
        }
        Ok(Self {
            hypotheses: hypothesis_check(&model),
            model,
            table,
            cap,
            ideals,
            elementary,
            center,
            congruence,
            full_congruence,
            relative_elementary,
            orbits,
            orbit_closure,
            closures,
            orbit_of,
        })
    }

    pub fn exec(&self) -> Exec {
        self.table.exec()
    }

    pub fn orbit_of(&self, x: u32) -> usize {
        self.orbit_of[x as usize] as usize
    }

    /// The normal closure ⟨x⟩^E, shared by the whole orbit of x.
    pub fn closure_of(&self, x: u32) -> &Subgroup {
        &self.closures[self.orbit_closure[self.orbit_of(x)]]
    }

    /// Ideals q with E(R,q) ⊆ H ⊆ C(R,q).
    pub fn admissible_ideals(&self, h: &Subgroup) -> Vec<ZmIdeal> {
        self.ideals
            .iter()
            .enumerate()
            .filter(|&(k, _)| self.relative_elementary[k].is_subgroup_of(h) && h.is_subgroup_of(&self.full_congruence[k]))
            .map(|(_, &q)| q)
            .collect()
    }

    pub fn ideal_index(&self, q: ZmIdeal) -> usize {
        self.ideals.iter().position(|&p| p == q).expect("ideal of this ring")
    }
}
