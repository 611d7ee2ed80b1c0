//! The distinguished subgroups of a tabulated model: E(R), G(R,q), C(R,q),
//! E(R,q), the center.

use rustc_hash::FxHashSet;

use super::model::GroupModel;
use super::ring::ZmIdeal;
use super::table::{group_elements, ElementTable};
use crate::error::{Error, Result};
use crate::lattice::subgroup::{centralizer, e_normal_closure, subgroup_closure, Subgroup};
use crate::par::Exec;

fn check_fit(model: &GroupModel, table: &ElementTable) -> Result<()> {
    if table.fits(model) {
        Ok(())
    } else {
        Err(Error::InvalidModel(format!("element table does not enumerate {}", model.name())))
    }
}

/// The whole tabulated group.
pub fn whole_group(table: &ElementTable) -> Subgroup {
    Subgroup::full(table)
}

/// ⟨x_δ(1) : δ ∈ Φ⟩.
pub fn elementary_subgroup(table: &ElementTable) -> Subgroup {
    subgroup_closure(table, table.generators())
}

/// G(R, q) = ker(G(R) → G(R/q)).
pub fn congruence_subgroup(table: &ElementTable, q: ZmIdeal) -> Subgroup {
    let d = q.generator();
    let members = table.filter(|g| g.is_identity_mod(d));
    Subgroup::from_elements(table, &members).expect("kernels are subgroups")
}

pub fn center(table: &ElementTable) -> Subgroup {
    centralizer(table, &whole_group(table))
}

/// Keys of the central elements of G(Z/d), computed in a fresh model.
pub fn quotient_center_keys(model: &GroupModel, d: u32, cap: usize, exec: Exec) -> Result<FxHashSet<u64>> {
    let quotient = model.over(d)?;
    let table = group_elements(&quotient, cap, exec)?;
    Ok(center(&table).elements().map(|i| table.element(i).key()).collect())
}

/// C(R, q): the preimage of the center of G(R/q).
pub fn full_congruence_subgroup(
    model: &GroupModel,
    table: &ElementTable,
    q: ZmIdeal,
    cap: usize,
    exec: Exec,
) -> Result<Subgroup> {
    check_fit(model, table)?;
    let d = q.generator();
    if d == 1 {
        return Ok(whole_group(table));
    }
    let central = if d == model.modulus() {
        center(table).elements().map(|i| table.element(i).key()).collect()
    } else {
        quotient_center_keys(model, d, cap, exec)?
    };
    let members = table.filter(|g| central.contains(&g.reduce_mod(d).key()));
    Ok(Subgroup::from_elements(table, &members).expect("preimages of subgroups are subgroups"))
}

/// X_α(v) for every α ∈ Φ_P and v ∈ qV_α.
pub fn level_unipotents(model: &GroupModel, table: &ElementTable, q: ZmIdeal) -> Vec<u32> {
    let mut out = Vec::new();
    for a in 0..model.rel_roots().len() {
        for v in model.module_elements(a) {
            if v.iter().all(|&x| q.contains(x)) {
                let g = model.relative_root_element(a, &v).expect("valid coordinates");
                out.push(table.index_of(&g).expect("root elements lie in the group"));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// E(R, q): the normal closure in E(R) of the q-valued relative root
/// elements of U_P and U_{P⁻}.
pub fn relative_elementary_subgroup(model: &GroupModel, table: &ElementTable, q: ZmIdeal) -> Result<Subgroup> {
    check_fit(model, table)?;
    Ok(e_normal_closure(table, &level_unipotents(model, table, q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevgroup::model::Sp4Parabolic;
    use crate::chevgroup::ring::ZmIdeal;
    use crate::chevgroup::table::DEFAULT_CAP;

    fn ideal(d: u32, m: u32) -> ZmIdeal {
        ZmIdeal::new(d, m).unwrap()
    }

    #[test]
    fn sl3_mod4_subgroups() {
        let model = GroupModel::sl(3, 4, vec![1, 1, 1]).unwrap();
        let table = group_elements(&model, DEFAULT_CAP, Exec::Parallel).unwrap();
        assert_eq!(elementary_subgroup(&table).order(), 43008);
        assert_eq!(congruence_subgroup(&table, ideal(1, 4)).order(), 43008);
        assert_eq!(congruence_subgroup(&table, ideal(4, 4)).order(), 1);
        let g2 = congruence_subgroup(&table, ideal(2, 4));
        assert_eq!(g2.order(), 256);
        let c2 = full_congruence_subgroup(&model, &table, ideal(2, 4), DEFAULT_CAP, Exec::Parallel).unwrap();
        assert_eq!(c2, g2);
        let e2 = relative_elementary_subgroup(&model, &table, ideal(2, 4)).unwrap();
        assert_eq!(e2.order(), 256);
        assert!(relative_elementary_subgroup(&model, &table, ideal(4, 4)).unwrap().is_trivial());
        assert_eq!(relative_elementary_subgroup(&model, &table, ideal(1, 4)).unwrap().order(), 43008);
        assert!(center(&table).is_trivial());
    }

    #[test]
    fn sp4_mod3_center() {
        let model = GroupModel::sp4(3, Sp4Parabolic::Borel).unwrap();
        let table = group_elements(&model, DEFAULT_CAP, Exec::Parallel).unwrap();
        let z = center(&table);
        assert_eq!(z.order(), 2);
        assert!(z.elements().all(|i| table.element(i).is_scalar_mod(3)));
    }

    #[test]
    fn sl3_mod7_center_has_order_three() {
        let model = GroupModel::sl(3, 7, vec![1, 1, 1]).unwrap();
        let table = group_elements(&model, 6_000_000, Exec::Parallel).unwrap();
        let z = full_congruence_subgroup(&model, &table, ideal(7, 7), 6_000_000, Exec::Parallel).unwrap();
        assert_eq!(z.order(), 3);
    }
}
