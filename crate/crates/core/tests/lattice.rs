use std::sync::OnceLock;

use proptest::prelude::*;
use sandwich_core::chevgroup::{GroupModel, DEFAULT_CAP};
use sandwich_core::lattice::sandwich::{extract_unipotent, join_compatibility, level};
use sandwich_core::lattice::subgroup::e_normal_closure;
use sandwich_core::lattice::LatticeContext;
use sandwich_core::Exec;

fn ctx() -> &'static LatticeContext {
    static CELL: OnceLock<LatticeContext> = OnceLock::new();
    CELL.get_or_init(|| LatticeContext::build(GroupModel::sl(3, 4, vec![1, 1, 1]).unwrap(), DEFAULT_CAP, Exec::Parallel).unwrap())
}

#[test]
fn distinguished_subgroups_are_nested_and_monotone() {
    let c = ctx();
    for (i, q) in c.ideals.iter().enumerate() {
        assert!(c.relative_elementary[i].is_subgroup_of(&c.congruence[i]));
        assert!(c.congruence[i].is_subgroup_of(&c.full_congruence[i]));
        for (j, p) in c.ideals.iter().enumerate() {
            if q.is_subset_of(p) {
                assert!(c.congruence[i].is_subgroup_of(&c.congruence[j]));
                assert!(c.relative_elementary[i].is_subgroup_of(&c.relative_elementary[j]));
            }
        }
    }
    // G(R,(2)) in SL_3(Z/4) is the kernel of reduction: 43008 / 168.
    let two = c.ideals.iter().position(|q| q.generator() == 2).unwrap();
    assert_eq!(c.congruence[two].order(), 256);
}

#[test]
fn noncentral_closures_contain_a_root_unipotent() {
    let c = ctx();
    for h in &c.closures {
        match extract_unipotent(c, h) {
            Some((a, v)) => {
                let x = c.model.relative_root_element(a, &v).unwrap();
                assert!(h.contains(c.table.index_of(&x).unwrap()));
            }
            None => assert!(h.is_subgroup_of(&c.center)),
        }
    }
}

#[test]
fn sampled_joins_have_summed_levels() {
    let rep = join_compatibility(ctx(), 40, 11);
    assert!(rep.holds(), "{rep:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_level_is_the_sum(g in 0u32..43008, h in 0u32..43008) {
        let c = ctx();
        let closure = e_normal_closure(&c.table, &[g, h]);
        prop_assert!(closure.contains(g) && closure.contains(h));
        prop_assert!(closure.is_normalized_by(&c.table, c.table.generators()));
        let (a, b) = (level(c, c.closure_of(g)).unwrap(), level(c, c.closure_of(h)).unwrap());
        prop_assert_eq!(level(c, &closure), Some(a.sum(&b)));
    }
}
