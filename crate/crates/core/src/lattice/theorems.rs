//! Whole-group checks: the commutator formula, independence of the
//! parabolic, normality, centrality, perfectness and simplicity.

use serde::Serialize;

use super::context::LatticeContext;
use super::subgroup::{commutator_subgroup, e_normal_closure, Subgroup};
use crate::chevgroup::model::{GroupModel, ModelKind, ParabolicBlocks, Sp4Parabolic};
use crate::chevgroup::ring::ZmIdeal;
use crate::chevgroup::subgroups::relative_elementary_subgroup;
use crate::chevgroup::table::ScanCheck;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealComparison {
    pub ideal: ZmIdeal,
    /// Orders of the subgroups being compared, in report order.
    pub orders: Vec<usize>,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorFormulaReport {
    /// Orders are [G(R,q), E(R)] then E(R,q).
    pub ideals: Vec<IdealComparison>,
}

impl CommutatorFormulaReport {
    pub fn holds(&self) -> bool {
        self.ideals.iter().all(|c| c.equal)
    }
}

/// [G(R,q), E(R)] against E(R,q) for every ideal.
pub fn verify_commutator_formula(ctx: &LatticeContext) -> CommutatorFormulaReport {
    let ideals = ctx
        .ideals
        .iter()
        .enumerate()
        .map(|(k, &q)| {
            let left = commutator_subgroup(&ctx.table, &ctx.congruence[k], &ctx.elementary);
            let right = &ctx.relative_elementary[k];
            IdealComparison { ideal: q, orders: vec![left.order(), right.order()], equal: left == *right }
        })
        .collect();
    CommutatorFormulaReport { ideals }
}

/// Every strictly proper parabolic of the model's type: all compositions
/// of n with at least two parts for SL_n, the three standard ones for Sp4.
pub fn proper_parabolics(kind: ModelKind, n: usize) -> Vec<ParabolicBlocks> {
    match kind {
        ModelKind::Sp4 => [Sp4Parabolic::Borel, Sp4Parabolic::LineStabilizer, Sp4Parabolic::Siegel]
            .into_iter()
            .map(ParabolicBlocks::Sp4)
            .collect(),
        ModelKind::Sl => {
            let mut out = Vec::new();
            // Compositions of n correspond to subsets of the n − 1 cut points.
            for mask in (1u32..1 << (n - 1)).rev() {
                let mut blocks = Vec::new();
                let mut size = 1;
                for cut in 0..n - 1 {
                    if mask >> (n - 2 - cut) & 1 == 1 {
                        blocks.push(size);
                        size = 1;
                    } else {
                        size += 1;
                    }
                }
                blocks.push(size);
                out.push(ParabolicBlocks::Sl(blocks));
            }
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicIndependenceReport {
    pub parabolics: Vec<String>,
    /// Orders of E_P(R,q), one per parabolic.
    pub ideals: Vec<IdealComparison>,
}

impl ParabolicIndependenceReport {
    pub fn holds(&self) -> bool {
        self.parabolics.len() >= 2 && self.ideals.iter().all(|c| c.equal)
    }
}

/// E_P(R,q) for every proper parabolic P, compared across P.
pub fn verify_parabolic_independence(ctx: &LatticeContext) -> Result<ParabolicIndependenceReport> {
    let parabolics = proper_parabolics(ctx.model.kind(), ctx.model.degree());
    let models: Vec<GroupModel> = parabolics
        .iter()
        .map(|p| ctx.model.with_parabolic(p.clone()))
        .collect::<Result<_>>()?;
    let mut ideals = Vec::new();
    for &q in &ctx.ideals {
        let groups: Vec<Subgroup> = models
            .iter()
            .map(|m| relative_elementary_subgroup(m, &ctx.table, q))
            .collect::<Result<_>>()?;
        ideals.push(IdealComparison {
            ideal: q,
            orders: groups.iter().map(Subgroup::order).collect(),
            equal: groups.windows(2).all(|w| w[0] == w[1]),
        });
    }
    Ok(ParabolicIndependenceReport { parabolics: parabolics.iter().map(|p| p.to_string()).collect(), ideals })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub group_order: usize,
    pub elementary_order: usize,
    /// Enumeration of G(R) by its defining equations.
    pub predicate_scan: Option<ScanCheck>,
    pub elementary_normal: bool,
    pub centralizer_order: usize,
    pub center_order: usize,
    pub scalar_order: usize,
    pub centralizer_is_center: bool,
    pub derived_order: usize,
    pub derived_index: usize,
    pub perfect: bool,
    pub hall_witt_checked: usize,
    /// Closures H with [[H,E],E] ≠ [H,E].
    pub hall_witt_failures: Vec<usize>,
}

impl StructureReport {
    /// Everything except perfectness, which has a known exception.
    pub fn unconditional_holds(&self) -> bool {
        self.elementary_normal && self.centralizer_is_center && self.hall_witt_failures.is_empty()
    }
}

pub fn verify_structure_theorems(ctx: &LatticeContext) -> StructureReport {
    let table = &ctx.table;
    let e = &ctx.elementary;
    let scan = table.scan();
    // G(R) is the table when the predicate scan agrees with the closure.
    let group_order = scan.map_or(table.len(), |s| s.matches);
    let e_gens = e.generators(table).to_vec();
    let normal_flags = ctx.exec().map_range(table.len(), |g| {
        e_gens.iter().all(|&x| e.contains(table.conj(x, g as u32)))
    });
    let elementary_normal = normal_flags.iter().all(|&b| b) && scan.is_none_or(|s| s.agrees);

    let centralizer = super::subgroup::centralizer(table, e);
    let scalars = table.filter(|g| g.is_scalar_mod(table.ring().modulus()));
    let scalar_group = Subgroup::from_elements(table, &scalars).expect("scalar matrices form a subgroup");

    let derived = commutator_subgroup(table, e, e);

    let hall_witt = ctx.exec().map(&ctx.closures, |h| {
        let he = commutator_subgroup(table, h, e);
        commutator_subgroup(table, &he, e) == he
    });

    StructureReport {
        group_order,
        elementary_order: e.order(),
        predicate_scan: scan,
        elementary_normal,
        centralizer_order: centralizer.order(),
        center_order: ctx.center.order(),
        scalar_order: scalar_group.order(),
        centralizer_is_center: centralizer == ctx.center && ctx.center == scalar_group,
        derived_order: derived.order(),
        derived_index: e.order() / derived.order(),
        perfect: derived == *e,
        hall_witt_checked: hall_witt.len(),
        hall_witt_failures: hall_witt.iter().enumerate().filter(|(_, ok)| !**ok).map(|(k, _)| k).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub per_element: bool,
    pub closures_checked: usize,
    pub full: usize,
    pub central: usize,
    /// Seeds whose normal closure is neither central nor the whole group.
    pub counterexamples: Vec<u32>,
}

impl SimplicityReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Every non-identity element's normal closure is the whole group, or is
/// central when the element is. With `per_element` every element is closed
/// separately; otherwise one seed per orbit.
pub fn simplicity_check(ctx: &LatticeContext, per_element: bool) -> SimplicityReport {
    let table = &ctx.table;
    let seeds: Vec<u32> = if per_element {
        (0..table.len() as u32).filter(|&x| x != table.identity()).collect()
    } else {
        ctx.orbits.iter().map(|o| o[0]).filter(|&x| x != table.identity()).collect()
    };
    let verdicts = ctx.exec().map(&seeds, |&x| {
        let h = if per_element { e_normal_closure(table, &[x]) } else { ctx.closure_of(x).clone() };
        if h.order() == table.len() {
            Some(true)
        } else if ctx.center.contains(x) && h.is_subgroup_of(&ctx.center) {
            Some(false)
        } else {
            None
        }
    });
    SimplicityReport {
        per_element,
        closures_checked: seeds.len(),
        full: verdicts.iter().filter(|v| **v == Some(true)).count(),
        central: verdicts.iter().filter(|v| **v == Some(false)).count(),
        counterexamples: seeds.iter().zip(&verdicts).filter(|(_, v)| v.is_none()).map(|(&x, _)| x).collect(),
    }
}
