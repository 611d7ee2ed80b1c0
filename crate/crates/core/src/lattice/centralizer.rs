//! Brute-force checks of the centralizer lemmas for unipotent radicals and
//! root subgroups.

use itertools::Itertools;
use serde::Serialize;

use crate::chevgroup::calculus::{compose, unipotent_factor, Component};
use crate::chevgroup::hypothesis::hypothesis_check;
use crate::chevgroup::matrix::Mat;
use crate::chevgroup::model::{GroupModel, ParabolicBlocks};
use crate::chevgroup::table::ElementTable;
use crate::error::{Error, Result};
use crate::lattice::theorems::proper_parabolics;

/// g is block upper triangular for the model's parabolic.
pub fn in_parabolic(model: &GroupModel, g: &Mat) -> bool {
    let n = model.degree();
    (0..n).all(|i| {
        (0..n).all(|j| match model.position_rel(i, j) {
            Some(r) if !model.rel_root(r).is_positive() => g.get(i, j) == 0,
            _ => true,
        })
    })
}

fn commutes(model: &GroupModel, x: &Mat, y: &Mat) -> bool {
    model.mul(x, y) == model.mul(y, x)
}

/// X_α(v) for every v ∈ V_α.
fn root_subgroup(model: &GroupModel, a: usize) -> Vec<Mat> {
    model
        .module_elements(a)
        .iter()
        .map(|v| model.relative_root_element(a, v).expect("coordinates of V_α"))
        .collect()
}

/// Every product ∏ X_α(v_α) over the roots in `roots`, with its components.
fn products(model: &GroupModel, roots: &[usize]) -> Vec<(Vec<Component>, Mat)> {
    if roots.is_empty() {
        return vec![(Vec::new(), model.identity())];
    }
    roots
        .iter()
        .map(|&a| model.module_elements(a).into_iter().map(move |v| (a, v)))
        .multi_cartesian_product()
        .map(|parts| {
            let x = compose(model, &parts).expect("coordinates of V_α");
            (parts, x)
        })
        .collect()
}

/// Diagonal matrices in the group: the Levi subgroup of the Borel.
fn torus(model: &GroupModel) -> Vec<Mat> {
    let units = model.ring().units();
    (0..model.degree())
        .map(|_| units.iter().copied())
        .multi_cartesian_product()
        .map(|d| {
            let mut g = Mat::zero(model.degree());
            for (i, &x) in d.iter().enumerate() {
                g.set(i, i, x);
            }
            g
        })
        .filter(|g| model.in_group(g))
        .collect()
}

fn borel(model: &GroupModel) -> Result<GroupModel> {
    model.with_parabolic(ParabolicBlocks::borel(model.kind(), model.degree()))
}

fn simple_roots(model: &GroupModel) -> Vec<usize> {
    model.positive_rel_roots().into_iter().filter(|&a| model.rel_root(a).root.height() == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UCentCase {
    pub parabolic: String,
    /// Elements g with [g, U_P] = 1.
    pub centralizing: usize,
    pub counterexamples: Vec<u32>,
}

/// Over a field: every g with [g, U_P] = 1 lies in P, for every proper
/// parabolic P.
pub fn verify_u_cent_field(model: &GroupModel, table: &ElementTable) -> Result<Vec<UCentCase>> {
    if !model.ring().is_field() {
        return Err(Error::Precondition(format!("{} is not over a field", model.name())));
    }
    let mut out = Vec::new();
    for p in proper_parabolics(model.kind(), model.degree()) {
        let pm = model.with_parabolic(p.clone())?;
        let gens: Vec<Mat> = pm
            .positive_rel_roots()
            .into_iter()
            .flat_map(|a| {
                crate::chevgroup::calculus::standard_basis(&pm, a)
                    .into_iter()
                    .map(move |e| (a, e))
            })
            .map(|(a, e)| pm.relative_root_element(a, &e).expect("basis vector"))
            .collect();
        let central = table.filter(|g| gens.iter().all(|u| commutes(&pm, g, u)));
        out.push(UCentCase {
            parabolic: p.to_string(),
            centralizing: central.len(),
            counterexamples: central.into_iter().filter(|&g| !in_parabolic(&pm, &table.element(g))).collect(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentrBetaCase {
    pub beta: String,
    pub side: &'static str,
    pub examined: usize,
    pub commuting: usize,
    pub counterexamples: usize,
}

/// For Q the Borel and β simple: every x ∈ U_{Q±} commuting with
/// X_β(V_β) has nonzero components only at α with α + β ∉ Φ_Q ∪ {0}.
pub fn verify_centr_beta(model: &GroupModel) -> Result<Vec<CentrBetaCase>> {
    let q = borel(model)?;
    let mut out = Vec::new();
    for b in simple_roots(&q) {
        let xb = root_subgroup(&q, b);
        let neg_b = q.rel_index(&q.rel_root(b).root.neg());
        for (side, psi) in [("U+", q.positive_rel_roots()), ("U-", q.negative_rel_roots())] {
            let mut case = CentrBetaCase {
                beta: q.rel_root(b).label.clone(),
                side,
                examined: 0,
                commuting: 0,
                counterexamples: 0,
            };
            for (parts, x) in products(&q, &psi) {
                case.examined += 1;
                if !xb.iter().all(|y| commutes(&q, &x, y)) {
                    continue;
                }
                case.commuting += 1;
                debug_assert_eq!(unipotent_factor(&q, &psi, &x).ok().as_ref(), Some(&parts));
                let bad = parts.iter().any(|(a, v)| {
                    v.iter().any(|&c| c != 0) && (q.rel_sum(*a, b).is_some() || Some(*a) == neg_b)
                });
                case.counterexamples += usize::from(bad);
            }
            out.push(case);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallLeviCase {
    pub beta: String,
    /// Largest m with mβ a root.
    pub multiple: i32,
    pub examined: usize,
    pub commuting: usize,
    pub counterexamples: usize,
}

/// For Q the Borel and β simple: every x ∈ U_{(β)} L_Q U_{(−β)} commuting
/// with X_β(V_β) lies in X_{mβ}(V_{mβ}) L_Q.
pub fn verify_small_levi_b(model: &GroupModel) -> Result<Vec<SmallLeviCase>> {
    let q = borel(model)?;
    let levi = torus(&q);
    let mut out = Vec::new();
    for b in simple_roots(&q) {
        let up: Vec<usize> = (1..=4).filter_map(|k| q.rel_multiple(b, k)).collect();
        let down: Vec<usize> = (1..=4).filter_map(|k| q.rel_multiple(b, -k)).collect();
        let multiple = (1..=4).filter(|&k| q.rel_multiple(b, k).is_some()).max().expect("β is a root");
        let top = q.rel_multiple(b, multiple).expect("mβ is a root");
        let xb = root_subgroup(&q, b);
        let x_top = root_subgroup(&q, top);
        let (us, ws) = (products(&q, &up), products(&q, &down));
        let mut case =
            SmallLeviCase { beta: q.rel_root(b).label.clone(), multiple, examined: 0, commuting: 0, counterexamples: 0 };
        for (_, u) in &us {
            for t in &levi {
                let ut = q.mul(u, t);
                for (_, w) in &ws {
                    let x = q.mul(&ut, w);
                    case.examined += 1;
                    if !xb.iter().all(|y| commutes(&q, &x, y)) {
                        continue;
                    }
                    case.commuting += 1;
                    let inside = x_top.iter().any(|y| {
                        let l = q.mul(&q.inverse(y), &x);
                        q.is_levi(&l) && q.in_group(&l)
                    });
                    case.counterexamples += usize::from(!inside);
                }
            }
        }
        out.push(case);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerReport {
    pub model: String,
    /// Absent when the base ring is not a field.
    pub u_cent_field: Option<Vec<UCentCase>>,
    /// Per modulus: the moduli where the hypotheses hold are checked.
    pub centr_beta: Vec<(u32, Vec<CentrBetaCase>)>,
    pub small_levi_b: Vec<(u32, Vec<SmallLeviCase>)>,
}

impl CentralizerReport {
    pub fn counterexamples(&self) -> usize {
        self.u_cent_field.iter().flatten().map(|c| c.counterexamples.len()).sum::<usize>()
            + self.centr_beta.iter().flat_map(|(_, v)| v).map(|c| c.counterexamples).sum::<usize>()
            + self.small_levi_b.iter().flat_map(|(_, v)| v).map(|c| c.counterexamples).sum::<usize>()
    }

    pub fn holds(&self) -> bool {
        self.counterexamples() == 0
    }
}

/// u-cent-field over the table's field, and centr-beta, small-levi-b over
/// the model's ring and over each extra modulus where the hypotheses hold.
pub fn verify_centralizer_lemmas(model: &GroupModel, table: &ElementTable, extra_moduli: &[u32]) -> Result<CentralizerReport> {
    let u_cent_field = if model.ring().is_field() { Some(verify_u_cent_field(model, table)?) } else { None };
    let mut moduli = vec![model.modulus()];
    for &m in extra_moduli {
        if !moduli.contains(&m) && hypothesis_check(&model.over(m)?).passes {
            moduli.push(m);
        }
    }
    let mut centr_beta = Vec::new();
    let mut small_levi_b = Vec::new();
    for m in moduli {
        let over = model.over(m)?;
        centr_beta.push((m, verify_centr_beta(&over)?));
        small_levi_b.push((m, verify_small_levi_b(&over)?));
    }
    Ok(CentralizerReport { model: model.name(), u_cent_field, centr_beta, small_levi_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevgroup::model::Sp4Parabolic;
    use crate::chevgroup::table::{group_elements, DEFAULT_CAP};
    use crate::par::Exec;

    #[test]
    fn sl3_mod2_u_cent_field() {
        let model = GroupModel::sl(3, 2, vec![1, 1, 1]).unwrap();
        let table = group_elements(&model, DEFAULT_CAP, Exec::Parallel).unwrap();
        let cases = verify_u_cent_field(&model, &table).unwrap();
        assert_eq!(cases.len(), 3);
        // The center of U_B is X_{(1,3)}(F_2).
        assert_eq!(cases[0].centralizing, 2);
        assert!(cases.iter().all(|c| c.counterexamples.is_empty()));
    }

    #[test]
    fn sl3_mod3_centr_beta() {
        let model = GroupModel::sl(3, 3, vec![1, 1, 1]).unwrap();
        let cases = verify_centr_beta(&model).unwrap();
        assert_eq!(cases.len(), 4);
        assert!(cases.iter().all(|c| c.examined == 27 && c.commuting > 0 && c.counterexamples == 0));
    }

    #[test]
    fn sp4_mod3_small_levi() {
        let model = GroupModel::sp4(3, Sp4Parabolic::Borel).unwrap();
        let cases = verify_small_levi_b(&model).unwrap();
        assert!(cases.iter().all(|c| c.multiple == 1 && c.counterexamples == 0 && c.commuting > 0));
    }

    #[test]
    fn non_field_rings() {
        let model = GroupModel::sl(3, 4, vec![1, 1, 1]).unwrap();
        let table = group_elements(&model, DEFAULT_CAP, Exec::Parallel).unwrap();
        let rep = verify_centralizer_lemmas(&model, &table, &[9]).unwrap();
        assert!(rep.u_cent_field.is_none());
        assert_eq!(rep.centr_beta.len(), 2);
        assert!(rep.holds());
    }
}
