//! Property checks of the root-element calculus on a tabulated model.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::calculus::{
    commutator_components, compose, lemma_abe_witness, lemma_const_check, levi_conjugation_decompose, standard_basis,
    sum_formula_decompose, unipotent_factor, Component,
};
use super::gauss::{check_gauss_cell, GaussCheck};
use super::matrix::Mat;
use super::model::GroupModel;
use super::table::ElementTable;
use crate::error::Error;

/// Gauss-cell brute force is only attempted up to this group order.
pub const GAUSS_BRUTE_FORCE_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CalculusOptions {
    pub triples: usize,
    pub pairs: usize,
    pub seed: u64,
}

impl Default for CalculusOptions {
    fn default() -> Self {
        Self { triples: 1000, pairs: 100, seed: 0x5eed }
    }
}

/// z·[x, yz]·z⁻¹ = [z⁻¹, x]·[x, y].
pub fn commutator_identity_check(model: &GroupModel, x: &Mat, y: &Mat, z: &Mat) -> bool {
    let zi = model.inverse(z);
    let lhs = model.mul(&model.mul(z, &model.commutator(x, &model.mul(y, z))), &zi);
    let rhs = model.mul(&model.commutator(&zi, x), &model.commutator(x, y));
    lhs == rhs
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CalculusReport {
    pub model: String,
    pub identity_triples: usize,
    pub identity_failures: usize,
    /// Ordered root pairs with at least one positive combination iα+jβ.
    pub homogeneity_pairs: usize,
    pub homogeneity_samples: usize,
    pub homogeneity_failures: usize,
    pub sum_samples: usize,
    pub sum_failures: usize,
    /// Samples where some q^i(v, w) is nonzero.
    pub sum_higher_nonzero: usize,
    pub levi_samples: usize,
    pub levi_failures: usize,
    pub factor_samples: usize,
    pub factor_failures: usize,
    /// |U_P| and |U_{P⁻}| found in the table versus ∏|V_α|.
    pub radical_orders: [(usize, usize); 2],
    pub gauss: Option<GaussCheck>,
    pub errors: Vec<String>,
}

impl CalculusReport {
    pub fn passed(&self) -> bool {
        self.identity_failures == 0
            && self.homogeneity_failures == 0
            && self.sum_failures == 0
            && self.levi_failures == 0
            && self.factor_failures == 0
            && self.radical_orders.iter().all(|(a, b)| a == b)
            && self.gauss.is_none_or(|g| g.passed())
            && self.errors.is_empty()
    }
}

fn scale(model: &GroupModel, r: u32, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&x| model.ring().mul(r, x)).collect()
}

fn random_vec(model: &GroupModel, dim: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..dim).map(|_| rng.random_range(0..model.modulus())).collect()
}

/// All pairs when there are at most `limit`, otherwise `limit` random ones.
fn sample_pairs(model: &GroupModel, a: usize, b: usize, limit: usize, rng: &mut ChaCha8Rng) -> Vec<(Vec<u32>, Vec<u32>)> {
    let (da, db) = (model.rel_root(a).dim(), model.rel_root(b).dim());
    let total = (model.modulus() as usize).pow((da + db) as u32);
    if total <= limit {
        let (va, vb) = (model.module_elements(a), model.module_elements(b));
        va.iter().flat_map(|u| vb.iter().map(move |v| (u.clone(), v.clone()))).collect()
    } else {
        (0..limit).map(|_| (random_vec(model, da, rng), random_vec(model, db, rng))).collect()
    }
}

fn check_identity(model: &GroupModel, table: &ElementTable, opts: &CalculusOptions, rng: &mut ChaCha8Rng, rep: &mut CalculusReport) {
    let n = table.len() as u32;
    for t in 0..opts.triples {
        let [x, y, z] = if t == 0 {
            [table.identity(); 3]
        } else {
            [0; 3].map(|_| rng.random_range(0..n))
        };
        let [x, y, z] = [x, y, z].map(|i| table.element(i));
        rep.identity_triples += 1;
        rep.identity_failures += usize::from(!commutator_identity_check(model, &x, &y, &z));
    }
}

fn check_homogeneity(model: &GroupModel, opts: &CalculusOptions, rng: &mut ChaCha8Rng, rep: &mut CalculusReport) {
    let roots = model.rel_roots().len();
    let ring = model.ring();
    for a in 0..roots {
        for b in 0..roots {
            // Opposite pairs fall outside the formula.
            let Ok(probe) = commutator_components(model, a, &vec![0; model.rel_root(a).dim()], b, &vec![0; model.rel_root(b).dim()]) else {
                continue;
            };
            if probe.is_empty() {
                continue;
            }
            rep.homogeneity_pairs += 1;
            for (u, v) in sample_pairs(model, a, b, opts.pairs, rng) {
                rep.homogeneity_samples += 1;
                let base = match commutator_components(model, a, &u, b, &v) {
                    Ok(t) => t,
                    Err(e) => {
                        rep.errors.push(e.to_string());
                        continue;
                    }
                };
                let ok = (0..model.modulus()).all(|r| {
                    let left = commutator_components(model, a, &scale(model, r, &u), b, &v);
                    let right = commutator_components(model, a, &u, b, &scale(model, r, &v));
                    let (Ok(left), Ok(right)) = (left, right) else {
                        return false;
                    };
                    base.iter().zip(&left).zip(&right).all(|((t, l), rt)| {
                        l.value == scale(model, ring.pow(r, t.i), &t.value)
                            && rt.value == scale(model, ring.pow(r, t.j), &t.value)
                    })
                });
                rep.homogeneity_failures += usize::from(!ok);
            }
        }
    }
}

fn check_sum_formula(model: &GroupModel, opts: &CalculusOptions, rng: &mut ChaCha8Rng, rep: &mut CalculusReport) {
    let ring = model.ring();
    for a in 0..model.rel_roots().len() {
        for (v, w) in sample_pairs(model, a, a, opts.pairs, rng) {
            rep.sum_samples += 1;
            let ok = (|| -> crate::Result<bool> {
                let dec = sum_formula_decompose(model, a, &v, &w)?;
                let prod = model.mul(&model.relative_root_element(a, &v)?, &model.relative_root_element(a, &w)?);
                let mut parts: Vec<Component> = vec![(a, dec.sum.clone())];
                parts.extend(dec.higher.iter().map(|(_, r, q)| (*r, q.clone())));
                if dec.higher.iter().any(|(_, _, q)| q.iter().any(|&x| x != 0)) {
                    rep.sum_higher_nonzero += 1;
                }
                let mut ok = compose(model, &parts)? == prod;
                for r in 0..model.modulus() {
                    let scaled = sum_formula_decompose(model, a, &scale(model, r, &v), &scale(model, r, &w))?;
                    ok &= scaled
                        .higher
                        .iter()
                        .zip(&dec.higher)
                        .all(|((i, _, s), (_, _, q))| *s == scale(model, ring.pow(r, *i), q));
                }
                Ok(ok)
            })();
            match ok {
                Ok(ok) => rep.sum_failures += usize::from(!ok),
                Err(e) => rep.errors.push(e.to_string()),
            }
        }
    }
}

fn check_levi(model: &GroupModel, table: &ElementTable, opts: &CalculusOptions, rng: &mut ChaCha8Rng, rep: &mut CalculusReport) {
    let ring = model.ring();
    let levi = table.filter(|g| model.is_levi(g));
    let chosen: Vec<u32> = levi.choose_multiple(rng, 16).copied().collect();
    for a in 0..model.rel_roots().len() {
        let dim = model.rel_root(a).dim();
        for &g in &chosen {
            let g = table.element(g);
            for _ in 0..opts.pairs.div_ceil(16).max(1) {
                rep.levi_samples += 1;
                let v = random_vec(model, dim, rng);
                let ok = (|| -> crate::Result<bool> {
                    let base = levi_conjugation_decompose(model, &g, a, &v)?;
                    let parts: Vec<Component> = base.iter().map(|(_, r, x)| (*r, x.clone())).collect();
                    let conj = model.mul(&model.mul(&g, &model.relative_root_element(a, &v)?), &model.inverse(&g));
                    let mut sorted = parts.clone();
                    sorted.sort_by_key(|(r, _)| *r);
                    let mut ok = compose(model, &sorted)? == conj;
                    for r in 0..model.modulus() {
                        let scaled = levi_conjugation_decompose(model, &g, a, &scale(model, r, &v))?;
                        ok &= scaled
                            .iter()
                            .zip(&base)
                            .all(|((i, _, s), (_, _, x))| *s == scale(model, ring.pow(r, *i), x));
                    }
                    Ok(ok)
                })();
                match ok {
                    Ok(ok) => rep.levi_failures += usize::from(!ok),
                    Err(e) => rep.errors.push(e.to_string()),
                }
            }
        }
    }
}

fn check_factorization(model: &GroupModel, table: &ElementTable, opts: &CalculusOptions, rng: &mut ChaCha8Rng, rep: &mut CalculusReport) {
    for (side, psi) in [model.positive_rel_roots(), model.negative_rel_roots()].into_iter().enumerate() {
        for s in 0..opts.pairs {
            rep.factor_samples += 1;
            let parts: Vec<Component> = psi
                .iter()
                .map(|&a| {
                    let dim = model.rel_root(a).dim();
                    (a, if s == 0 { vec![0; dim] } else { random_vec(model, dim, rng) })
                })
                .collect();
            let ok = compose(model, &parts).and_then(|x| unipotent_factor(model, &psi, &x));
            rep.factor_failures += usize::from(ok.map_or(true, |back| back != parts));
        }
        let expected: usize = psi
            .iter()
            .map(|&a| (model.modulus() as usize).pow(model.rel_root(a).dim() as u32))
            .product();
        let members = table.filter(|x| {
            unipotent_factor(model, &psi, x).is_ok_and(|parts| compose(model, &parts).is_ok_and(|y| y == *x))
        });
        rep.radical_orders[side] = (members.len(), expected);
    }
}

/// Runs every calculus property on the model. The Gauss cell is compared
/// with brute force when the group has at most
/// [`GAUSS_BRUTE_FORCE_LIMIT`] elements.
pub fn check_calculus(model: &GroupModel, table: &ElementTable, opts: &CalculusOptions) -> CalculusReport {
    let mut rep = CalculusReport { model: model.name(), ..Default::default() };
    if !table.fits(model) {
        rep.errors.push(Error::InvalidModel("table does not match the model".into()).to_string());
        return rep;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    check_identity(model, table, opts, &mut rng, &mut rep);
    check_homogeneity(model, opts, &mut rng, &mut rep);
    check_sum_formula(model, opts, &mut rng, &mut rep);
    check_levi(model, table, opts, &mut rng, &mut rep);
    check_factorization(model, table, opts, &mut rng, &mut rep);
    if table.len() <= GAUSS_BRUTE_FORCE_LIMIT {
        rep.gauss = Some(check_gauss_cell(model, table));
    }
    rep
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RootPairFailure {
    pub alpha: String,
    pub beta: String,
    /// The u ∈ V_β for which no basis vector of V_α works.
    pub u: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RootPairReport {
    /// Pairs (α, β) of non-opposite relative roots with α + β a root.
    pub pairs: usize,
    pub abe_cases: usize,
    pub abe_failures: Vec<RootPairFailure>,
    pub const_failures: Vec<RootPairFailure>,
}

impl RootPairReport {
    pub fn abe_holds(&self) -> bool {
        self.abe_failures.is_empty()
    }

    pub fn const_holds(&self) -> bool {
        self.const_failures.is_empty()
    }
}

/// For every pair α, β with α + β a root: some basis vector e_i of V_α has
/// N_{αβ11}(e_i, u) ≠ 0 for each nonzero u ∈ V_β, and the constant images
/// generate V_{α+β}.
pub fn check_root_pairs(model: &GroupModel) -> RootPairReport {
    let mut rep = RootPairReport::default();
    let n = model.rel_roots().len();
    for a in 0..n {
        for b in 0..n {
            if model.rel_sum(a, b).is_none() {
                continue;
            }
            // Pairs like 2β and −β are proportional and excluded.
            let Ok(const_ok) = lemma_const_check(model, a, b) else {
                continue;
            };
            rep.pairs += 1;
            let label = |x: usize| model.rel_root(x).label.clone();
            if !const_ok {
                rep.const_failures.push(RootPairFailure { alpha: label(a), beta: label(b), u: None });
            }
            let gens = standard_basis(model, a);
            for u in model.module_elements(b).into_iter().filter(|u| u.iter().any(|&x| x != 0)) {
                rep.abe_cases += 1;
                if !matches!(lemma_abe_witness(model, a, b, &u, &gens), Ok(Some(_))) {
                    rep.abe_failures.push(RootPairFailure { alpha: label(a), beta: label(b), u: Some(u) });
                }
            }
        }
    }
    rep
}
