use rustc_hash::FxHashSet;
use serde::Serialize;

use super::calculus::unipotent_factor;
use super::matrix::{det_i64, Mat};
use super::model::GroupModel;
use super::ring::ZmRing;
use super::table::ElementTable;

/// g = u · l · v with u ∈ U_P, l ∈ L_P, v ∈ U_{P⁻}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussFactors {
    pub u: Mat,
    pub l: Mat,
    pub v: Mat,
}

type Dense = Vec<Vec<u32>>;

fn block(g: &Dense, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Dense {
    rows.map(|i| g[i][cols.clone()].to_vec()).collect()
}

fn dmul(a: &Dense, b: &Dense, ring: ZmRing) -> Dense {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| ring.reduce((0..inner).map(|k| (row[k] * b[k][j]) as i64).sum()))
                .collect()
        })
        .collect()
}

fn ddet(a: &Dense, ring: ZmRing) -> u32 {
    let rows: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    ring.reduce(det_i64(&rows))
}

fn dinv(a: &Dense, ring: ZmRing) -> Option<Dense> {
    let n = a.len();
    let d = ring.inv(ddet(a, ring))?;
    Some(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let minor: Dense = (0..n)
                            .filter(|&r| r != j)
                            .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                            .collect();
                        let cof = ddet(&minor, ring);
                        let cof = if (i + j) % 2 == 0 { cof } else { ring.neg(cof) };
                        ring.mul(cof, d)
                    })
                    .collect()
            })
            .collect(),
    )
}

fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

/// Stitches [[a, b], [c, d]].
fn join(a: &Dense, b: &Dense, c: &Dense, d: &Dense) -> Dense {
    let top = a.iter().zip(b).map(|(x, y)| [x.as_slice(), y.as_slice()].concat());
    let bottom = c.iter().zip(d).map(|(x, y)| [x.as_slice(), y.as_slice()].concat());
    top.chain(bottom).collect()
}

fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![0; c]; r]
}

/// Peels off the last diagonal block: with g = [[A, B], [C, D]] and D
/// invertible, g = [[I, BD⁻¹], [0, I]] · diag(A − BD⁻¹C, D) · [[I, 0], [D⁻¹C, I]].
fn factor(g: &Dense, blocks: &[usize], ring: ZmRing) -> Option<(Dense, Dense, Dense)> {
    let n = g.len();
    if blocks.len() == 1 {
        return Some((identity(n), g.clone(), identity(n)));
    }
    let t = *blocks.last().expect("nonempty");
    let s = n - t;
    let (a, b, c, d) = (block(g, 0..s, 0..s), block(g, 0..s, s..n), block(g, s..n, 0..s), block(g, s..n, s..n));
    let d_inv = dinv(&d, ring)?;
    let x = dmul(&b, &d_inv, ring);
    let y = dmul(&d_inv, &c, ring);
    let xc = dmul(&x, &c, ring);
    let schur: Dense = a
        .iter()
        .zip(&xc)
        .map(|(r, q)| r.iter().zip(q).map(|(&p, &z)| ring.sub(p, z)).collect())
        .collect();
    let (u1, l1, v1) = factor(&schur, &blocks[..blocks.len() - 1], ring)?;
    let u = join(&u1, &x, &zeros(t, s), &identity(t));
    let l = join(&l1, &zeros(s, t), &zeros(t, s), &d);
    let v = join(&v1, &zeros(s, t), &y, &identity(t));
    Some((u, l, v))
}

fn to_mat(d: &Dense, ring: ZmRing) -> Mat {
    let rows: Vec<Vec<i64>> = d.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    Mat::from_rows(&rows, ring)
}

/// The unique factorization of g through the main Gauss cell
/// U_P · L_P · U_{P⁻}, or None when g lies outside it.
pub fn gauss_cell_membership(model: &GroupModel, g: &Mat) -> Option<GaussFactors> {
    let ring = model.ring();
    let dense: Dense = g.rows();
    let (u, l, v) = factor(&dense, &model.parabolic().block_sizes(), ring)?;
    let f = GaussFactors { u: to_mat(&u, ring), l: to_mat(&l, ring), v: to_mat(&v, ring) };
    debug_assert_eq!(f.u.mul(&f.l, ring).mul(&f.v, ring), *g);
    Some(f)
}

/// Whether every trailing principal block minor of g is invertible.
pub fn trailing_minors_invertible(model: &GroupModel, g: &Mat) -> bool {
    let ring = model.ring();
    let n = model.degree();
    let dense = g.rows();
    let mut start = n;
    let blocks = model.parabolic().block_sizes();
    for &size in blocks[1..].iter().rev() {
        start -= size;
        if !ring.is_unit(ddet(&block(&dense, start..n, start..n), ring)) {
            return false;
        }
    }
    true
}

/// Membership of each table element in U_P · L_P · U_{P⁻}, found by
/// multiplying out every triple.
pub fn gauss_cell_brute_force(model: &GroupModel, table: &ElementTable) -> Vec<bool> {
    let pos = model.positive_rel_roots();
    let neg = model.negative_rel_roots();
    let upper = table.filter(|g| unipotent_factor(model, &pos, g).is_ok());
    let lower = table.filter(|g| unipotent_factor(model, &neg, g).is_ok());
    let levi = table.filter(|g| model.is_levi(g));
    let ring = model.ring();
    let mut cell: FxHashSet<u32> = FxHashSet::default();
    for &u in &upper {
        for &l in &levi {
            let ul = table.element(u).mul(&table.element(l), ring);
            for &v in &lower {
                let g = ul.mul(&table.element(v), ring);
                cell.insert(table.index_of(&g).expect("closed"));
            }
        }
    }
    (0..table.len() as u32).map(|i| cell.contains(&i)).collect()
}

/// Agreement between the factorization, the minor test and brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaussCheck {
    pub elements: usize,
    pub cell_size: usize,
    pub disagreements: usize,
    pub round_trip_failures: usize,
}

impl GaussCheck {
    pub fn passed(&self) -> bool {
        self.disagreements == 0 && self.round_trip_failures == 0
    }
}

pub fn check_gauss_cell(model: &GroupModel, table: &ElementTable) -> GaussCheck {
    let brute = gauss_cell_brute_force(model, table);
    let pos = model.positive_rel_roots();
    let neg = model.negative_rel_roots();
    let ring = model.ring();
    let mut check = GaussCheck { elements: table.len(), cell_size: 0, disagreements: 0, round_trip_failures: 0 };
    for (i, &expected) in brute.iter().enumerate() {
        let g = table.element(i as u32);
        let f = gauss_cell_membership(model, &g);
        check.cell_size += usize::from(f.is_some());
        if f.is_some() != expected || trailing_minors_invertible(model, &g) != expected {
            check.disagreements += 1;
        }
        if let Some(f) = f {
            let ok = f.u.mul(&f.l, ring).mul(&f.v, ring) == g
                && unipotent_factor(model, &pos, &f.u).is_ok()
                && unipotent_factor(model, &neg, &f.v).is_ok()
                && model.is_levi(&f.l)
                && model.in_group(&f.l);
            check.round_trip_failures += usize::from(!ok);
        }
    }
    check
}
