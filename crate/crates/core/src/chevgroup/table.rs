use std::sync::OnceLock;

use rustc_hash::FxHashSet;
use serde::Serialize;

use super::matrix::Mat;
use super::model::{GroupModel, ModelKind};
use super::ring::ZmRing;
use crate::error::{Error, Result};
use crate::par::Exec;

pub const DEFAULT_CAP: usize = 2_000_000;

/// Predicate scans are skipped above this many candidate matrices.
const SCAN_LIMIT: u64 = 1 << 24;

/// Outcome of enumerating the group a second way, by testing the defining
/// predicate on candidate matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanCheck {
    pub candidates: u64,
    pub matches: usize,
    pub agrees: bool,
}

/// Every element of the model group, sorted by packed key. Indices into
/// this table are the element handles used everywhere else.
#[derive(Debug)]
pub struct ElementTable {
    kind: ModelKind,
    n: usize,
    ring: ZmRing,
    keys: Vec<u64>,
    identity: u32,
    gens: Vec<u32>,
    inverse: Vec<u32>,
    scan: Option<ScanCheck>,
    exec: Exec,
    right: OnceLock<Vec<Vec<u32>>>,
    conj: OnceLock<Vec<Vec<u32>>>,
}

/// Exact group order from the standard product formulas.
pub fn order_formula(model: &GroupModel) -> u64 {
    let m = model.modulus() as f64;
    let primes = model.ring().prime_factors();
    let (dim, exps): (i32, Vec<i32>) = match model.kind() {
        ModelKind::Sl => {
            let n = model.degree() as i32;
            (n * n - 1, (2..=n).collect())
        }
        ModelKind::Sp4 => (10, vec![2, 4]),
    };
    let mut order = m.powi(dim);
    for p in primes {
        for &k in &exps {
            order *= 1.0 - (p as f64).powi(-k);
        }
    }
    order.round() as u64
}

/// Enumerates the group by BFS closure of the elementary generators, and
/// when feasible cross-checks against a predicate scan.
pub fn group_elements(model: &GroupModel, cap: usize, exec: Exec) -> Result<ElementTable> {
    let estimate = order_formula(model);
    if estimate > cap as u64 {
        return Err(Error::SizeCap { estimate, cap });
    }
    let ring = model.ring();
    let n = model.degree();
    let gens = model.generators();
    let id = model.identity();

    let mut seen: FxHashSet<u64> = FxHashSet::default();
    seen.insert(id.key());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let products = exec.map(&frontier, |g| gens.iter().map(|h| g.mul(h, ring)).collect::<Vec<_>>());
        let mut next = Vec::new();
        for p in products.into_iter().flatten() {
            if seen.insert(p.key()) {
                next.push(p);
            }
        }
        if seen.len() > cap {
            return Err(Error::SizeCap { estimate: seen.len() as u64, cap });
        }
        frontier = next;
    }
    let mut keys: Vec<u64> = seen.into_iter().collect();
    keys.sort_unstable();
    if keys.len() as u64 != estimate {
        return Err(Error::InvalidModel(format!(
            "{}: generator closure has {} elements, the order formula gives {estimate}",
            model.name(),
            keys.len()
        )));
    }

    let scan = scan_group(model, exec).map(|(candidates, found)| ScanCheck {
        candidates,
        matches: found.len(),
        agrees: found == keys,
    });
    if let Some(s) = scan {
        if !s.agrees {
            return Err(Error::InvalidModel(format!(
                "{}: generator closure has {} elements but the predicate scan found {}",
                model.name(),
                keys.len(),
                s.matches
            )));
        }
    }

    let lookup = |k: u64| keys.binary_search(&k).expect("closed under products") as u32;
    let identity = lookup(id.key());
    let gen_idx: Vec<u32> = gens.iter().map(|g| lookup(g.key())).collect();
    let inverse = exec.map_range(keys.len(), |i| {
        let g = Mat::from_key(n, keys[i]);
        lookup(g.inverse(ring).expect("invertible").key())
    });
    Ok(ElementTable {
        kind: model.kind(),
        n,
        ring,
        keys,
        identity,
        gens: gen_idx,
        inverse,
        scan,
        exec,
        right: OnceLock::new(),
        conj: OnceLock::new(),
    })
}

/// Sorted keys of every matrix satisfying the model predicate, with the
/// number of candidates examined; None when the search space is too big.
fn scan_group(model: &GroupModel, exec: Exec) -> Option<(u64, Vec<u64>)> {
    let m = model.modulus() as u64;
    let n = model.degree();
    match model.kind() {
        ModelKind::Sl => {
            let total = m.checked_pow((n * n) as u32)?;
            if total > SCAN_LIMIT {
                return None;
            }
            let ring = model.ring();
            let rest = m.pow((n * n - n) as u32);
            let first_rows = m.pow(n as u32) as usize;
            let chunks = exec.map_range(first_rows, |r| {
                let mut out = Vec::new();
                for x in 0..rest {
                    let g = digits_to_mat(n, m, r as u64 * rest + x);
                    if g.det(ring) == 1 {
                        out.push(g.key());
                    }
                }
                out
            });
            Some((total, chunks.concat()))
        }
        ModelKind::Sp4 => {
            let vecs: Vec<[i64; 4]> = (0..m.pow(4))
                .map(|x| {
                    let mut v = [0i64; 4];
                    let mut y = x;
                    for slot in v.iter_mut().rev() {
                        *slot = (y % m) as i64;
                        y /= m;
                    }
                    v
                })
                .collect();
            let mi = m as i64;
            let omega = |x: &[i64; 4], y: &[i64; 4]| {
                (x[0] * y[3] + x[1] * y[2] - x[2] * y[1] - x[3] * y[0]).rem_euclid(mi)
            };
            let chunks = exec.map(&vecs, |r0| {
                let mut out = Vec::new();
                for r1 in vecs.iter().filter(|r1| omega(r0, r1) == 0) {
                    for r2 in vecs.iter().filter(|r2| omega(r0, r2) == 0 && omega(r1, r2) == 1) {
                        for r3 in vecs.iter().filter(|r3| {
                            omega(r0, r3) == 1 && omega(r1, r3) == 0 && omega(r2, r3) == 0
                        }) {
                            let rows: Vec<Vec<i64>> = [r0, r1, r2, r3].iter().map(|r| r.to_vec()).collect();
                            out.push(Mat::from_rows(&rows, model.ring()).key());
                        }
                    }
                }
                out
            });
            Some((m.pow(16), chunks.concat()))
        }
    }
}

/// Reads x in base m, most significant digit first, as a matrix.
fn digits_to_mat(n: usize, m: u64, mut x: u64) -> Mat {
    let mut g = Mat::zero(n);
    for idx in (0..n * n).rev() {
        g.set(idx / n, idx % n, (x % m) as u32);
        x /= m;
    }
    g
}

impl ElementTable {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn ring(&self) -> ZmRing {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn scan(&self) -> Option<ScanCheck> {
        self.scan
    }

    /// Whether the table enumerates the given model's group.
    pub fn fits(&self, model: &GroupModel) -> bool {
        model.kind() == self.kind && model.degree() == self.n && model.ring() == self.ring
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    /// Indices of x_δ(1), one per absolute root, in root order.
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn element(&self, i: u32) -> Mat {
        Mat::from_key(self.n, self.keys[i as usize])
    }

    pub fn index_of(&self, g: &Mat) -> Option<u32> {
        if g.size() != self.n {
            return None;
        }
        self.keys.binary_search(&g.key()).ok().map(|i| i as u32)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.element(a).mul(&self.element(b), self.ring);
        self.index_of(&p).expect("closed under products")
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// t⁻¹xt.
    pub fn conj(&self, x: u32, t: u32) -> u32 {
        self.mul(self.mul(self.inv(t), x), t)
    }

    /// x⁻¹y⁻¹xy.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let r = self.ring;
        let p = self
            .element(self.inv(x))
            .mul(&self.element(self.inv(y)), r)
            .mul(&self.element(x), r)
            .mul(&self.element(y), r);
        self.index_of(&p).expect("closed under products")
    }

    /// right_table()[s][x] = x · gen_s.
    pub fn right_table(&self) -> &[Vec<u32>] {
        self.right.get_or_init(|| {
            self.gens
                .iter()
                .map(|&g| self.exec.map_range(self.len(), |x| self.mul(x as u32, g)))
                .collect()
        })
    }

    /// conj_table()[s][x] = gen_s⁻¹ · x · gen_s.
    pub fn conj_table(&self) -> &[Vec<u32>] {
        self.conj.get_or_init(|| {
            self.gens
                .iter()
                .map(|&g| self.exec.map_range(self.len(), |x| self.conj(x as u32, g)))
                .collect()
        })
    }

    /// Elements satisfying a predicate on matrices, in index order.
    pub fn filter<F>(&self, pred: F) -> Vec<u32>
    where
        F: Fn(&Mat) -> bool + Sync + Send,
    {
        self.exec
            .map_range(self.len(), |i| pred(&self.element(i as u32)).then_some(i as u32))
            .into_iter()
            .flatten()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevgroup::model::Sp4Parabolic;

    fn table(model: &GroupModel) -> ElementTable {
        group_elements(model, DEFAULT_CAP, Exec::Parallel).unwrap()
    }

    #[test]
    fn small_orders() {
        let sl32 = GroupModel::sl(3, 2, vec![1, 1, 1]).unwrap();
        let t = table(&sl32);
        assert_eq!(t.len(), 168);
        assert_eq!(order_formula(&sl32), 168);
        assert!(t.scan().unwrap().agrees);
        let sp = GroupModel::sp4(2, Sp4Parabolic::Borel).unwrap();
        let t = table(&sp);
        assert_eq!(t.len(), 720);
        assert_eq!(t.scan().unwrap().matches, 720);
    }

    #[test]
    fn sl3_mod4_order_matches_kernel_count() {
        let model = GroupModel::sl(3, 4, vec![1, 1, 1]).unwrap();
        let t = table(&model);
        assert_eq!(t.len(), 168 * 256);
        assert_eq!(t.len(), 43008);
    }

    #[test]
    fn cap_is_enforced() {
        let model = GroupModel::sl(3, 7, vec![1, 1, 1]).unwrap();
        match group_elements(&model, DEFAULT_CAP, Exec::Sequential) {
            Err(Error::SizeCap { estimate, cap }) => {
                assert_eq!(estimate, 5_630_688);
                assert_eq!(cap, DEFAULT_CAP);
            }
            other => panic!("expected a size error, got {other:?}"),
        }
    }

    #[test]
    fn tables_are_consistent() {
        let model = GroupModel::sl(3, 3, vec![1, 1, 1]).unwrap();
        let t = table(&model);
        assert_eq!(t.len(), 5616);
        let right = t.right_table();
        let conj = t.conj_table();
        for (s, &g) in t.generators().iter().enumerate() {
            for x in (0..t.len() as u32).step_by(37) {
                assert_eq!(right[s][x as usize], t.mul(x, g));
                assert_eq!(conj[s][x as usize], t.mul(t.mul(t.inv(g), x), g));
                assert_eq!(t.mul(x, t.inv(x)), t.identity());
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let model = GroupModel::sp4(3, Sp4Parabolic::Borel).unwrap();
        let a = group_elements(&model, DEFAULT_CAP, Exec::Sequential).unwrap();
        let b = group_elements(&model, DEFAULT_CAP, Exec::Parallel).unwrap();
        assert_eq!(a.keys, b.keys);
        assert_eq!(a.len(), 51840);
    }
}
