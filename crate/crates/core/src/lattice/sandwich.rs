//! Sandwich classification of E-normalized subgroups, their levels, and
//! the root unipotents they contain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::context::LatticeContext;
use super::subgroup::{e_normal_closure, Subgroup};
use crate::chevgroup::ring::{jacobson_radical, ZmIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Unique,
    None,
    Multiple,
}

impl Verdict {
    pub fn from_count(n: usize) -> Self {
        match n {
            0 => Verdict::None,
            1 => Verdict::Unique,
            _ => Verdict::Multiple,
        }
    }
}

/// Where ⟨g⟩^E sits among the sandwiches E(R,q) ⊆ H ⊆ C(R,q).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichResult {
    /// Least element of the orbit, used as the seed.
    pub seed: u32,
    pub orbit: usize,
    pub orbit_size: usize,
    /// Index of the normal closure among the distinct closures.
    pub closure: usize,
    pub closure_order: usize,
    pub admissible: Vec<ZmIdeal>,
    pub verdict: Verdict,
}

pub fn sandwich_classify(ctx: &LatticeContext) -> Vec<SandwichResult> {
    let admissible: Vec<Vec<ZmIdeal>> = ctx.closures.iter().map(|h| ctx.admissible_ideals(h)).collect();
    ctx.orbits
        .iter()
        .enumerate()
        .map(|(k, orbit)| {
            let c = ctx.orbit_closure[k];
            SandwichResult {
                seed: orbit[0],
                orbit: k,
                orbit_size: orbit.len(),
                closure: c,
                closure_order: ctx.closures[c].order(),
                admissible: admissible[c].clone(),
                verdict: Verdict::from_count(admissible[c].len()),
            }
        })
        .collect()
}

/// The unique admissible ideal of H, if there is exactly one.
pub fn level(ctx: &LatticeContext, h: &Subgroup) -> Option<ZmIdeal> {
    match ctx.admissible_ideals(h).as_slice() {
        [q] => Some(*q),
        _ => None,
    }
}

/// (v, index of X_α(v)) for every v ∈ V_α, per relative root.
pub fn root_unipotents(ctx: &LatticeContext) -> Vec<Vec<(Vec<u32>, u32)>> {
    let model = &ctx.model;
    (0..model.rel_roots().len())
        .map(|a| {
            model
                .module_elements(a)
                .into_iter()
                .map(|v| {
                    let x = model.relative_root_element(a, &v).expect("coordinates of V_α");
                    let i = ctx.table.index_of(&x).expect("root elements lie in the group");
                    (v, i)
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootIntersection {
    pub root: String,
    /// |H ∩ X_α(V_α)|.
    pub in_subgroup: usize,
    /// |X_α(qV_α)|.
    pub expected: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub subgroup: usize,
    pub order: usize,
    pub level: ZmIdeal,
    pub normalized_by_e: bool,
    pub roots: Vec<RootIntersection>,
    pub equal: bool,
}

/// Compares H ∩ X_α(V_α) with X_α(qV_α) for every relative root α.
pub fn verify_level_theorem(ctx: &LatticeContext, h: &Subgroup, q: ZmIdeal) -> LevelReport {
    let unipotents = root_unipotents(ctx);
    level_report(ctx, &unipotents, h, q)
}

fn level_report(ctx: &LatticeContext, unipotents: &[Vec<(Vec<u32>, u32)>], h: &Subgroup, q: ZmIdeal) -> LevelReport {
    let roots: Vec<RootIntersection> = unipotents
        .iter()
        .enumerate()
        .map(|(a, elems)| {
            let mut in_subgroup = 0;
            let mut expected = 0;
            let mut equal = true;
            for (v, x) in elems {
                let inside = h.contains(*x);
                let at_level = v.iter().all(|&c| q.contains(c));
                in_subgroup += usize::from(inside);
                expected += usize::from(at_level);
                equal &= inside == at_level;
            }
            RootIntersection { root: ctx.model.rel_root(a).label.clone(), in_subgroup, expected, equal }
        })
        .collect();
    LevelReport {
        subgroup: 0,
        order: h.order(),
        level: q,
        normalized_by_e: h.is_normalized_by(&ctx.table, ctx.table.generators()),
        equal: roots.iter().all(|r| r.equal),
        roots,
    }
}

/// Level reports for every distinct orbit closure that has a level.
pub fn verify_levels(ctx: &LatticeContext) -> Vec<LevelReport> {
    let unipotents = root_unipotents(ctx);
    ctx.closures
        .iter()
        .enumerate()
        .filter_map(|(k, h)| {
            let q = level(ctx, h)?;
            let mut rep = level_report(ctx, &unipotents, h, q);
            rep.subgroup = k;
            Some(rep)
        })
        .collect()
}

/// Some X_α(v) ∈ H with v ≠ 0, as (relative root index, v).
pub fn extract_unipotent(ctx: &LatticeContext, h: &Subgroup) -> Option<(usize, Vec<u32>)> {
    find_unipotent(&root_unipotents(ctx), h)
}

fn find_unipotent(unipotents: &[Vec<(Vec<u32>, u32)>], h: &Subgroup) -> Option<(usize, Vec<u32>)> {
    unipotents.iter().enumerate().find_map(|(a, elems)| {
        elems
            .iter()
            .find(|(v, x)| v.iter().any(|&c| c != 0) && h.contains(*x))
            .map(|(v, _)| (a, v.clone()))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnipotentWitness {
    pub root: String,
    pub value: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractReport {
    pub subgroup: usize,
    pub order: usize,
    pub central: bool,
    pub witness: Option<UnipotentWitness>,
    /// H ∩ G(R, Rad R).
    pub radical_order: usize,
    pub radical_central: bool,
    pub radical_witness: Option<UnipotentWitness>,
    /// Every noncentral subgroup examined contains a root unipotent.
    pub holds: bool,
}

/// Root unipotents in every distinct orbit closure and in its intersection
/// with the congruence subgroup of the Jacobson radical.
pub fn verify_root_unipotents(ctx: &LatticeContext) -> Vec<ExtractReport> {
    let unipotents = root_unipotents(ctx);
    let rad = jacobson_radical(ctx.model.ring());
    let rad_group = &ctx.congruence[ctx.ideal_index(rad)];
    let witness = |found: Option<(usize, Vec<u32>)>| {
        found.map(|(a, value)| UnipotentWitness { root: ctx.model.rel_root(a).label.clone(), value })
    };
    ctx.closures
        .iter()
        .enumerate()
        .map(|(k, h)| {
            let central = h.is_subgroup_of(&ctx.center);
            let found = witness(find_unipotent(&unipotents, h));
            let k_rad = h.intersection(&ctx.table, rad_group);
            let radical_central = k_rad.is_subgroup_of(&ctx.center);
            let radical_found = witness(find_unipotent(&unipotents, &k_rad));
            ExtractReport {
                subgroup: k,
                order: h.order(),
                central,
                holds: (central || found.is_some()) && (radical_central || radical_found.is_some()),
                witness: found,
                radical_order: k_rad.order(),
                radical_central,
                radical_witness: radical_found,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub pairs: usize,
    /// Pairs where some level is undefined.
    pub skipped: usize,
    pub failures: Vec<(u32, u32)>,
}

impl JoinReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.skipped < self.pairs
    }
}

/// The level of ⟨g, g'⟩^E against the sum of the levels of ⟨g⟩^E and
/// ⟨g'⟩^E, on random pairs.
pub fn join_compatibility(ctx: &LatticeContext, pairs: usize, seed: u64) -> JoinReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ctx.table.len() as u32;
    let samples: Vec<(u32, u32)> = (0..pairs).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect();
    let outcomes = ctx.exec().map(&samples, |&(g, h)| {
        let (Some(a), Some(b)) = (level(ctx, ctx.closure_of(g)), level(ctx, ctx.closure_of(h))) else {
            return None;
        };
        let joint = e_normal_closure(&ctx.table, &[g, h]);
        Some(level(ctx, &joint) == Some(a.sum(&b)))
    });
    JoinReport {
        pairs,
        skipped: outcomes.iter().filter(|o| o.is_none()).count(),
        failures: samples
            .iter()
            .zip(&outcomes)
            .filter(|(_, o)| **o == Some(false))
            .map(|(p, _)| *p)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevgroup::model::{GroupModel, Position};
    use crate::chevgroup::table::DEFAULT_CAP;
    use crate::par::Exec;

    fn ideal(d: u32, m: u32) -> ZmIdeal {
        ZmIdeal::new(d, m).unwrap()
    }

    #[test]
    fn sl3_mod4_examples() {
        let model = GroupModel::sl(3, 4, vec![1, 1, 1]).unwrap();
        let ctx = LatticeContext::build(model.clone(), DEFAULT_CAP, Exec::Parallel).unwrap();
        let index = |p, t| ctx.table.index_of(&model.elementary_generator(p, t).unwrap()).unwrap();

        let e12_2 = index(Position::Entry(1, 2), 2);
        let h = ctx.closure_of(e12_2);
        assert_eq!(ctx.admissible_ideals(h), vec![ideal(2, 4)]);
        let (a, v) = extract_unipotent(&ctx, h).unwrap();
        assert!(h.contains(ctx.table.index_of(&model.relative_root_element(a, &v).unwrap()).unwrap()));

        let trivial = ctx.closure_of(ctx.table.identity());
        assert_eq!(ctx.admissible_ideals(trivial), vec![ideal(4, 4)]);
        assert!(extract_unipotent(&ctx, trivial).is_none());

        let full = ctx.closure_of(index(Position::Entry(1, 2), 1));
        assert_eq!(full.order(), 43008);
        assert_eq!(ctx.admissible_ideals(full), vec![ideal(1, 4)]);

        assert!(sandwich_classify(&ctx).iter().all(|r| r.verdict == Verdict::Unique));
    }

    #[test]
    fn level_of_e13_closure() {
        let model = GroupModel::sl(3, 4, vec![1, 1, 1]).unwrap();
        let ctx = LatticeContext::build(model.clone(), DEFAULT_CAP, Exec::Parallel).unwrap();
        let x = ctx.table.index_of(&model.elementary_generator(Position::Entry(1, 3), 2).unwrap()).unwrap();
        let h = ctx.closure_of(x);
        let rep = verify_level_theorem(&ctx, h, ideal(2, 4));
        assert!(rep.equal && rep.normalized_by_e);
        let r12 = rep.roots.iter().find(|r| r.root == "(1,2)").unwrap();
        assert_eq!((r12.in_subgroup, r12.expected), (2, 2));

        let rep = verify_level_theorem(&ctx, ctx.closure_of(ctx.table.identity()), ideal(4, 4));
        assert!(rep.equal && rep.roots.iter().all(|r| r.in_subgroup == 1));
        let rep = verify_level_theorem(&ctx, &ctx.elementary, ideal(1, 4));
        assert!(rep.equal && rep.roots.iter().all(|r| r.in_subgroup == 4));
    }

    #[test]
    fn joins_and_unipotents_on_sl3_mod4() {
        let ctx = LatticeContext::build(GroupModel::sl(3, 4, vec![1, 1, 1]).unwrap(), DEFAULT_CAP, Exec::Parallel).unwrap();
        let join = join_compatibility(&ctx, 50, 3);
        assert!(join.holds(), "{join:?}");
        assert!(verify_root_unipotents(&ctx).iter().all(|r| r.holds));
        assert!(verify_levels(&ctx).iter().all(|r| r.equal));
    }
}
