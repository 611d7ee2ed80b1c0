//! Root-element calculus on the matrix models: factoring unipotents into
//! relative root elements and reading off the polynomial maps of the sum
//! formula, Levi conjugation and the Chevalley commutator formula.

use std::collections::BTreeSet;

use serde::Serialize;

use super::matrix::Mat;
use super::model::GroupModel;
use crate::error::{Error, Result};

/// (relative root index, coordinates in V_α).
pub type Component = (usize, Vec<u32>);

/// One factor X_{iα+jβ}(N_{αβij}(u, v)) of a commutator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub rel: usize,
    pub value: Vec<u32>,
}

/// X_α(v)X_α(w) = X_α(v+w) · ∏_{i>1} X_{iα}(q^i(v, w)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumDecomposition {
    pub sum: Vec<u32>,
    /// (i, index of iα, q^i(v, w)) for every multiple iα in Φ_P.
    pub higher: Vec<(u32, usize, Vec<u32>)>,
}

/// Product of relative root elements in the given order.
pub fn compose(model: &GroupModel, parts: &[Component]) -> Result<Mat> {
    parts.iter().try_fold(model.identity(), |acc, (rel, v)| {
        Ok(model.mul(&acc, &model.relative_root_element(*rel, v)?))
    })
}

/// Order in which U_Ψ is factored, and whether factors are peeled from
/// the left. The canonical order is by height, then coordinates; it is
/// peelable from the left when Ψ is positive and from the right when Ψ is
/// negative. Other unipotent sets use a positive functional instead.
fn factor_order(model: &GroupModel, psi: &[usize]) -> Result<(Vec<usize>, bool)> {
    let set: BTreeSet<usize> = psi.iter().copied().collect();
    for &a in &set {
        for &b in &set {
            if let Some(s) = model.rel_sum(a, b) {
                if !set.contains(&s) {
                    return Err(Error::Precondition(format!(
                        "Ψ is not closed: {} + {} = {} is missing",
                        model.rel_root(a).label,
                        model.rel_root(b).label,
                        model.rel_root(s).label
                    )));
                }
            }
        }
    }
    let order: Vec<usize> = set.iter().copied().collect();
    let heights: Vec<i32> = order.iter().map(|&a| model.rel_root(a).root.height()).collect();
    if heights.iter().all(|&h| h > 0) {
        return Ok((order, true));
    }
    if heights.iter().all(|&h| h < 0) {
        return Ok((order, false));
    }
    let rank = model.rel_roots().first().map_or(0, |s| s.root.coords().len());
    let mut f = vec![-2i32; rank];
    loop {
        let value = |a: usize| -> i32 {
            model.rel_root(a).root.coords().iter().zip(&f).map(|(c, w)| c * w).sum()
        };
        if order.iter().all(|&a| value(a) > 0) {
            let mut by_f = order.clone();
            by_f.sort_by_key(|&a| (value(a), a));
            return Ok((by_f, true));
        }
        // Next weight vector in [-2, 2]^rank.
        let mut k = 0;
        while k < rank && f[k] == 2 {
            f[k] = -2;
            k += 1;
        }
        if k == rank {
            return Err(Error::Precondition("Ψ is not contained in an open half-space".into()));
        }
        f[k] += 1;
    }
}

/// Coordinates of X_α(v) read from the marker entries of a matrix.
fn read_components(model: &GroupModel, rel: usize, x: &Mat) -> Vec<u32> {
    let ring = model.ring();
    model
        .rel_root(rel)
        .fiber
        .iter()
        .map(|&d| {
            let (i, j, s) = model.abs_roots()[d].entries[0];
            ring.mul(x.get(i, j), ring.reduce(s as i64))
        })
        .collect()
}

fn negate(model: &GroupModel, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&x| model.ring().neg(x)).collect()
}

/// Writes x ∈ U_Ψ as ∏ X_α(v_α), the product in canonical order. Every
/// root of Ψ appears in the result, zero components included.
pub fn unipotent_factor(model: &GroupModel, psi: &[usize], x: &Mat) -> Result<Vec<Component>> {
    let (order, from_left) = factor_order(model, psi)?;
    let mut rest = *x;
    let mut parts: Vec<Component> = Vec::with_capacity(order.len());
    let walk: Vec<usize> = if from_left { order.clone() } else { order.iter().rev().copied().collect() };
    for &a in &walk {
        let v = read_components(model, a, &rest);
        let inv = model.relative_root_element(a, &negate(model, &v))?;
        rest = if from_left { model.mul(&inv, &rest) } else { model.mul(&rest, &inv) };
        parts.push((a, v));
    }
    if !rest.is_identity() {
        return Err(Error::NotInSubgroup(format!("{x} is not in U_Ψ")));
    }
    if !from_left {
        parts.reverse();
    }
    Ok(parts)
}

fn check_not_opposite(model: &GroupModel, a: usize, b: usize) -> Result<()> {
    let (ra, rb) = (&model.rel_root(a).root, &model.rel_root(b).root);
    for m in 1..=4 {
        for k in 1..=4 {
            if ra.scale(m).add(&rb.scale(k)).is_zero() {
                return Err(Error::Precondition(format!(
                    "{}·{} = −{}·{}",
                    m,
                    model.rel_root(a).label,
                    k,
                    model.rel_root(b).label
                )));
            }
        }
    }
    Ok(())
}

/// {iα + jβ : i, j > 0} ∩ Φ_P with the first (i, j) producing each root.
fn positive_combinations(model: &GroupModel, a: usize, b: usize) -> Vec<(u32, u32, usize)> {
    let (ra, rb) = (&model.rel_root(a).root, &model.rel_root(b).root);
    let mut out: Vec<(u32, u32, usize)> = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            if let Some(r) = model.rel_index(&ra.scale(i).add(&rb.scale(j))) {
                if !out.iter().any(|&(_, _, s)| s == r) {
                    out.push((i as u32, j as u32, r));
                }
            }
        }
    }
    out
}

/// Every component of [X_α(u), X_β(v)], zero ones included.
pub fn commutator_components(
    model: &GroupModel,
    a: usize,
    u: &[u32],
    b: usize,
    v: &[u32],
) -> Result<Vec<CommutatorTerm>> {
    check_not_opposite(model, a, b)?;
    let combos = positive_combinations(model, a, b);
    let c = model.commutator(&model.relative_root_element(a, u)?, &model.relative_root_element(b, v)?);
    let psi: Vec<usize> = combos.iter().map(|&(_, _, r)| r).collect();
    if psi.is_empty() {
        return if c.is_identity() {
            Ok(Vec::new())
        } else {
            Err(Error::NotInSubgroup("commutator of roots with no positive combination".into()))
        };
    }
    let parts = unipotent_factor(model, &psi, &c)?;
    Ok(parts
        .into_iter()
        .map(|(rel, value)| {
            let &(i, j, _) = combos.iter().find(|&&(_, _, r)| r == rel).expect("from Ψ");
            CommutatorTerm { i, j, rel, value }
        })
        .collect())
}

/// The generalized Chevalley commutator formula read off the matrix
/// [X_α(u), X_β(v)]; only nonzero terms are listed.
pub fn chevalley_commutator_decompose(
    model: &GroupModel,
    a: usize,
    u: &[u32],
    b: usize,
    v: &[u32],
) -> Result<Vec<CommutatorTerm>> {
    Ok(commutator_components(model, a, u, b, v)?
        .into_iter()
        .filter(|t| t.value.iter().any(|&x| x != 0))
        .collect())
}

fn multiples(model: &GroupModel, a: usize, from: i32) -> Vec<(u32, usize)> {
    (from..=4).filter_map(|i| model.rel_multiple(a, i).map(|r| (i as u32, r))).collect()
}

pub fn sum_formula_decompose(model: &GroupModel, a: usize, v: &[u32], w: &[u32]) -> Result<SumDecomposition> {
    let ring = model.ring();
    let sum: Vec<u32> = v.iter().zip(w).map(|(&x, &y)| ring.add(x, y)).collect();
    let prod = model.mul(&model.relative_root_element(a, v)?, &model.relative_root_element(a, w)?);
    let rest = model.mul(&model.inverse(&model.relative_root_element(a, &sum)?), &prod);
    let mults = multiples(model, a, 2);
    if mults.is_empty() {
        if !rest.is_identity() {
            return Err(Error::NotInSubgroup("X_α(v)X_α(w) ≠ X_α(v+w)".into()));
        }
        return Ok(SumDecomposition { sum, higher: Vec::new() });
    }
    let psi: Vec<usize> = mults.iter().map(|&(_, r)| r).collect();
    let parts = unipotent_factor(model, &psi, &rest)?;
    let higher = mults
        .iter()
        .map(|&(i, r)| {
            let v = parts.iter().find(|(s, _)| *s == r).expect("factored").1.clone();
            (i, r, v)
        })
        .collect();
    Ok(SumDecomposition { sum, higher })
}

/// g X_α(v) g⁻¹ = ∏_{i≥1} X_{iα}(φ^i(v)) for g in the Levi. Returns
/// (i, index of iα, φ^i(v)) for every multiple iα in Φ_P.
pub fn levi_conjugation_decompose(
    model: &GroupModel,
    g: &Mat,
    a: usize,
    v: &[u32],
) -> Result<Vec<(u32, usize, Vec<u32>)>> {
    if !model.in_group(g) || !model.is_levi(g) {
        return Err(Error::NotInSubgroup(format!("{g} is not in the Levi subgroup")));
    }
    let y = model.mul(&model.mul(g, &model.relative_root_element(a, v)?), &model.inverse(g));
    let mults = multiples(model, a, 1);
    let psi: Vec<usize> = mults.iter().map(|&(_, r)| r).collect();
    let parts = unipotent_factor(model, &psi, &y)?;
    Ok(mults
        .iter()
        .map(|&(i, r)| (i, r, parts.iter().find(|(s, _)| *s == r).expect("factored").1.clone()))
        .collect())
}

/// Standard basis of V_α.
pub fn standard_basis(model: &GroupModel, a: usize) -> Vec<Vec<u32>> {
    let d = model.rel_root(a).dim();
    (0..d).map(|k| (0..d).map(|l| u32::from(k == l)).collect()).collect()
}

/// Index of a generator e_i of V_α with N_{αβ11}(e_i, u) ≠ 0, or None when
/// every generator gives zero.
pub fn lemma_abe_witness(
    model: &GroupModel,
    a: usize,
    b: usize,
    u: &[u32],
    gens: &[Vec<u32>],
) -> Result<Option<usize>> {
    let target = model
        .rel_sum(a, b)
        .ok_or_else(|| Error::Precondition("α + β is not a relative root".into()))?;
    if u.iter().all(|&x| x % model.modulus() == 0) {
        return Err(Error::Precondition("u must be nonzero".into()));
    }
    for (i, e) in gens.iter().enumerate() {
        let terms = commutator_components(model, a, e, b, u)?;
        let t = terms.iter().find(|t| t.rel == target && t.i == 1 && t.j == 1);
        if t.is_some_and(|t| t.value.iter().any(|&x| x != 0)) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Additive subgroup of (Z/m)^d generated by the given vectors.
pub fn additive_span(m: u32, d: usize, gens: &BTreeSet<Vec<u32>>) -> BTreeSet<Vec<u32>> {
    let mut span: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; d]]);
    for g in gens {
        if span.contains(g) {
            continue;
        }
        let mut frontier: Vec<Vec<u32>> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let y: Vec<u32> = x.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    span
}

fn image_11(model: &GroupModel, a: usize, b: usize, target: usize, out: &mut BTreeSet<Vec<u32>>) -> Result<()> {
    for u in model.module_elements(a) {
        for v in model.module_elements(b) {
            for t in commutator_components(model, a, &u, b, &v)? {
                if t.rel == target && t.i == 1 && t.j == 1 {
                    out.insert(t.value);
                }
            }
        }
    }
    Ok(())
}

/// Whether the images of N_{αβ11}, together with N_{α−β,2β,11} and
/// N_{α−β,β,12} when α − β is a relative root, generate V_{α+β}.
pub fn lemma_const_check(model: &GroupModel, a: usize, b: usize) -> Result<bool> {
    check_not_opposite(model, a, b)?;
    let target = model
        .rel_sum(a, b)
        .ok_or_else(|| Error::Precondition("α + β is not a relative root".into()))?;
    let mut images: BTreeSet<Vec<u32>> = BTreeSet::new();
    image_11(model, a, b, target, &mut images)?;
    let diff = model.rel_index(&model.rel_root(a).root.sub(&model.rel_root(b).root));
    if let Some(d) = diff {
        if let Some(b2) = model.rel_multiple(b, 2) {
            if check_not_opposite(model, d, b2).is_ok() {
                image_11(model, d, b2, target, &mut images)?;
            }
        }
        if check_not_opposite(model, d, b).is_ok() {
            for u in model.module_elements(d) {
                for v in model.module_elements(b) {
                    for t in commutator_components(model, d, &u, b, &v)? {
                        if t.rel == target && t.i == 1 && t.j == 2 {
                            images.insert(t.value);
                        }
                    }
                }
            }
        }
    }
    let dim = model.rel_root(target).dim();
    let span = additive_span(model.modulus(), dim, &images);
    Ok(span.len() == (model.modulus() as usize).pow(dim as u32))
}
