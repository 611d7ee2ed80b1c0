use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::matrix::Mat;
use super::ring::ZmRing;
use crate::error::{Error, Result};
use crate::relroots::{build_relative, RelativeDatum, RelativeRoot};
use crate::rootsys::{build_root_system, Family, Root, RootSystem, RootSystemType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModelKind {
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "Sp4")]
    Sp4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sp4Parabolic {
    Borel,
    /// Stabilizer of an isotropic line; its radical is a Heisenberg group.
    LineStabilizer,
    Siegel,
}

impl FromStr for Sp4Parabolic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "borel" => Ok(Self::Borel),
            "line" | "line_stabilizer" | "heisenberg" => Ok(Self::LineStabilizer),
            "siegel" => Ok(Self::Siegel),
            _ => Err(Error::InvalidModel(format!(
                "unknown Sp4 parabolic {s:?}; expected borel, line or siegel"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum ParabolicBlocks {
    Sl(Vec<usize>),
    Sp4(Sp4Parabolic),
}

impl ParabolicBlocks {
    pub fn borel(kind: ModelKind, n: usize) -> Self {
        match kind {
            ModelKind::Sl => ParabolicBlocks::Sl(vec![1; n]),
            ModelKind::Sp4 => ParabolicBlocks::Sp4(Sp4Parabolic::Borel),
        }
    }

    /// Diagonal block sizes of the parabolic viewed inside GL_n.
    pub fn block_sizes(&self) -> Vec<usize> {
        match self {
            ParabolicBlocks::Sl(b) => b.clone(),
            ParabolicBlocks::Sp4(Sp4Parabolic::Borel) => vec![1, 1, 1, 1],
            ParabolicBlocks::Sp4(Sp4Parabolic::LineStabilizer) => vec![1, 2, 1],
            ParabolicBlocks::Sp4(Sp4Parabolic::Siegel) => vec![2, 2],
        }
    }
}

impl fmt::Display for ParabolicBlocks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParabolicBlocks::Sl(b) => {
                let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            ParabolicBlocks::Sp4(Sp4Parabolic::Borel) => write!(f, "borel"),
            ParabolicBlocks::Sp4(Sp4Parabolic::LineStabilizer) => write!(f, "line"),
            ParabolicBlocks::Sp4(Sp4Parabolic::Siegel) => write!(f, "siegel"),
        }
    }
}

/// Position for [`GroupModel::elementary_generator`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Position {
    /// 1-based matrix position (i, j), i ≠ j; SL models only.
    Entry(usize, usize),
    /// An absolute root in simple-root coordinates.
    Root(Root),
}

/// A root of the absolute system with its nilpotent N_δ, so that
/// x_δ(t) = I + t·N_δ. `entries` lists (row, col, ±1); the first entry is
/// the marker used to read coordinates back off a matrix.
#[derive(Debug, Clone)]
pub struct AbsoluteRoot {
    pub root: Root,
    pub entries: Vec<(usize, usize, i32)>,
    /// Index of the relative root it projects to; None for Levi roots.
    pub rel: Option<usize>,
}

/// A relative root α together with the coordinate module V_α, realized as
/// (Z/m)^fiber with one coordinate per absolute root in the fiber.
#[derive(Debug, Clone)]
pub struct RelRootSpace {
    pub root: RelativeRoot,
    pub label: String,
    pub fiber: Vec<usize>,
}

impl RelRootSpace {
    pub fn dim(&self) -> usize {
        self.fiber.len()
    }

    pub fn is_positive(&self) -> bool {
        self.root.height() > 0
    }
}

#[derive(Debug, Clone)]
pub struct GroupModel {
    kind: ModelKind,
    n: usize,
    ring: ZmRing,
    parabolic: ParabolicBlocks,
    abs_system: RootSystem,
    abs_roots: Vec<AbsoluteRoot>,
    rel_roots: Vec<RelRootSpace>,
    position_rel: Vec<Vec<Option<usize>>>,
}

impl GroupModel {
    pub fn sl(n: usize, m: u32, blocks: Vec<usize>) -> Result<Self> {
        Self::new(ModelKind::Sl, n, m, ParabolicBlocks::Sl(blocks))
    }

    pub fn sp4(m: u32, parabolic: Sp4Parabolic) -> Result<Self> {
        Self::new(ModelKind::Sp4, 4, m, ParabolicBlocks::Sp4(parabolic))
    }

    pub fn new(kind: ModelKind, n: usize, m: u32, parabolic: ParabolicBlocks) -> Result<Self> {
        let ring = ZmRing::new(m)?;
        match (kind, &parabolic) {
            (ModelKind::Sl, ParabolicBlocks::Sl(blocks)) => {
                if !(2..=4).contains(&n) {
                    return Err(Error::InvalidModel(format!("SL_{n} unsupported; need 2 ≤ n ≤ 4")));
                }
                if blocks.len() < 2 || blocks.contains(&0) || blocks.iter().sum::<usize>() != n {
                    return Err(Error::InvalidModel(format!(
                        "blocks {blocks:?} are not a proper composition of {n}"
                    )));
                }
                Ok(Self::build_sl(n, ring, blocks.clone()))
            }
            (ModelKind::Sp4, ParabolicBlocks::Sp4(p)) => {
                if n != 4 {
                    return Err(Error::InvalidModel("Sp4 has degree 4".into()));
                }
                Ok(Self::build_sp4(ring, *p))
            }
            _ => Err(Error::InvalidModel(format!(
                "parabolic {parabolic} does not fit the model kind"
            ))),
        }
    }

    fn build_sl(n: usize, ring: ZmRing, blocks: Vec<usize>) -> Self {
        let abs_system = build_root_system(RootSystemType::new(Family::A, n - 1).expect("rank ≥ 1"));
        let block_of: Vec<usize> = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, &size)| std::iter::repeat_n(b, size))
            .collect();
        let k = blocks.len();
        let mut rel_roots: Vec<RelRootSpace> = Vec::new();
        for bi in 0..k {
            for bj in 0..k {
                if bi != bj {
                    rel_roots.push(RelRootSpace {
                        root: RelativeRoot::new(interval_coords(k - 1, bi, bj)),
                        label: format!("({},{})", bi + 1, bj + 1),
                        fiber: Vec::new(),
                    });
                }
            }
        }
        rel_roots.sort_by(|a, b| (a.root.height(), &a.root).cmp(&(b.root.height(), &b.root)));

        let mut abs_roots: Vec<Option<AbsoluteRoot>> = vec![None; abs_system.roots().len()];
        // Row-major over (a, b) so that fibers list block entries row-major.
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let root = Root::new(interval_coords(n - 1, a, b));
                let idx = abs_system.index_of(&root).expect("ε_a − ε_b is a root");
                let rel = (block_of[a] != block_of[b]).then(|| {
                    let coords = RelativeRoot::new(interval_coords(k - 1, block_of[a], block_of[b]));
                    let r = rel_roots.iter().position(|s| s.root == coords).expect("block pair");
                    rel_roots[r].fiber.push(idx);
                    r
                });
                abs_roots[idx] = Some(AbsoluteRoot { root, entries: vec![(a, b, 1)], rel });
            }
        }
        let abs_roots: Vec<AbsoluteRoot> = abs_roots.into_iter().map(|r| r.expect("every root placed")).collect();
        Self::finish(ModelKind::Sl, n, ring, ParabolicBlocks::Sl(blocks), abs_system, abs_roots, rel_roots)
    }

    fn build_sp4(ring: ZmRing, p: Sp4Parabolic) -> Self {
        let abs_system = build_root_system(RootSystemType::new(Family::C, 2).expect("C2"));
        // Basis e1, e2, e_{-2}, e_{-1}; form J = antidiag(1, 1, -1, -1).
        // (root coordinates, matrix entries (row, column, sign) of its nilpotent)
        type Entry = ([i32; 2], Vec<(usize, usize, i32)>);
        let table: [Entry; 8] = [
            ([1, 0], vec![(0, 1, 1), (2, 3, -1)]),
            ([0, 1], vec![(1, 2, 1)]),
            ([1, 1], vec![(0, 2, 1), (1, 3, 1)]),
            ([2, 1], vec![(0, 3, 1)]),
            ([-1, 0], vec![(1, 0, 1), (3, 2, -1)]),
            ([0, -1], vec![(2, 1, 1)]),
            ([-1, -1], vec![(2, 0, 1), (3, 1, 1)]),
            ([-2, -1], vec![(3, 0, 1)]),
        ];
        let j: Vec<usize> = match p {
            Sp4Parabolic::Borel => vec![0, 1],
            Sp4Parabolic::LineStabilizer => vec![0],
            Sp4Parabolic::Siegel => vec![1],
        };
        let rel = build_relative(RelativeDatum::new(abs_system.clone(), j, &[]).expect("valid datum"));
        let mut rel_roots: Vec<RelRootSpace> = rel
            .rel_roots()
            .iter()
            .map(|a| RelRootSpace { root: a.clone(), label: a.to_string(), fiber: Vec::new() })
            .collect();
        let mut abs_roots: Vec<Option<AbsoluteRoot>> = vec![None; abs_system.roots().len()];
        for (coords, entries) in table {
            let root = Root::new(coords.to_vec());
            let idx = abs_system.index_of(&root).expect("C2 root");
            let image = rel.project(&root);
            let r = (!image.is_zero())
                .then(|| rel_roots.iter().position(|s| s.root == image).expect("projected root"));
            abs_roots[idx] = Some(AbsoluteRoot { root, entries, rel: r });
        }
        let abs_roots: Vec<AbsoluteRoot> = abs_roots.into_iter().map(|r| r.expect("every root placed")).collect();
        for (idx, a) in abs_roots.iter().enumerate() {
            if let Some(r) = a.rel {
                rel_roots[r].fiber.push(idx);
            }
        }
        Self::finish(ModelKind::Sp4, 4, ring, ParabolicBlocks::Sp4(p), abs_system, abs_roots, rel_roots)
    }

    fn finish(
        kind: ModelKind,
        n: usize,
        ring: ZmRing,
        parabolic: ParabolicBlocks,
        abs_system: RootSystem,
        abs_roots: Vec<AbsoluteRoot>,
        rel_roots: Vec<RelRootSpace>,
    ) -> Self {
        let mut position_rel = vec![vec![None; n]; n];
        for a in &abs_roots {
            for &(i, j, _) in &a.entries {
                position_rel[i][j] = a.rel;
            }
        }
        Self { kind, n, ring, parabolic, abs_system, abs_roots, rel_roots, position_rel }
    }

    /// Same group, different parabolic.
    pub fn with_parabolic(&self, parabolic: ParabolicBlocks) -> Result<Self> {
        Self::new(self.kind, self.n, self.ring.modulus(), parabolic)
    }

    /// The model over Z/d for a divisor d ≥ 2 of m.
    pub fn over(&self, d: u32) -> Result<Self> {
        Self::new(self.kind, self.n, d, self.parabolic.clone())
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> ZmRing {
        self.ring
    }

    pub fn modulus(&self) -> u32 {
        self.ring.modulus()
    }

    pub fn parabolic(&self) -> &ParabolicBlocks {
        &self.parabolic
    }

    pub fn abs_system(&self) -> &RootSystem {
        &self.abs_system
    }

    pub fn abs_roots(&self) -> &[AbsoluteRoot] {
        &self.abs_roots
    }

    pub fn rel_roots(&self) -> &[RelRootSpace] {
        &self.rel_roots
    }

    pub fn rel_root(&self, idx: usize) -> &RelRootSpace {
        &self.rel_roots[idx]
    }

    pub fn rel_index(&self, a: &RelativeRoot) -> Option<usize> {
        self.rel_roots.iter().position(|s| &s.root == a)
    }

    pub fn rel_by_label(&self, label: &str) -> Option<usize> {
        self.rel_roots.iter().position(|s| s.label == label)
    }

    /// Relative root of the 1-based block pair (i, j) of an SL model.
    pub fn block_root(&self, i: usize, j: usize) -> Option<usize> {
        match self.kind {
            ModelKind::Sl => self.rel_by_label(&format!("({i},{j})")),
            ModelKind::Sp4 => None,
        }
    }

    pub fn positive_rel_roots(&self) -> Vec<usize> {
        (0..self.rel_roots.len()).filter(|&i| self.rel_roots[i].is_positive()).collect()
    }

    pub fn negative_rel_roots(&self) -> Vec<usize> {
        (0..self.rel_roots.len()).filter(|&i| !self.rel_roots[i].is_positive()).collect()
    }

    /// Index of kα when it is a relative root.
    pub fn rel_multiple(&self, idx: usize, k: i32) -> Option<usize> {
        self.rel_index(&self.rel_roots[idx].root.scale(k))
    }

    /// Index of α + β when it is a relative root.
    pub fn rel_sum(&self, a: usize, b: usize) -> Option<usize> {
        self.rel_index(&self.rel_roots[a].root.add(&self.rel_roots[b].root))
    }

    /// Relative root carried by a matrix position; None on the Levi.
    pub fn position_rel(&self, i: usize, j: usize) -> Option<usize> {
        self.position_rel[i][j]
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.n)
    }

    pub fn form(&self) -> Option<Mat> {
        (self.kind == ModelKind::Sp4).then(|| {
            Mat::from_rows(
                &[vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, -1, 0, 0], vec![-1, 0, 0, 0]],
                self.ring,
            )
        })
    }

    pub fn in_group(&self, g: &Mat) -> bool {
        if g.size() != self.n {
            return false;
        }
        match self.form() {
            None => g.det(self.ring) == 1,
            Some(j) => g.transpose().mul(&j, self.ring).mul(g, self.ring) == j,
        }
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        a.mul(b, self.ring)
    }

    pub fn inverse(&self, g: &Mat) -> Mat {
        g.inverse(self.ring).expect("group elements are invertible")
    }

    /// x⁻¹y⁻¹xy.
    pub fn commutator(&self, x: &Mat, y: &Mat) -> Mat {
        let r = self.ring;
        self.inverse(x).mul(&self.inverse(y), r).mul(x, r).mul(y, r)
    }

    /// The nilpotent N_δ over the model's ring.
    pub fn root_nilpotent(&self, idx: usize) -> Mat {
        let mut n = Mat::zero(self.n);
        for &(i, j, s) in &self.abs_roots[idx].entries {
            n.set(i, j, self.ring.reduce(s as i64));
        }
        n
    }

    /// x_δ(t) for the absolute root with the given index.
    pub fn root_element(&self, idx: usize, t: u32) -> Mat {
        self.identity().add(&self.root_nilpotent(idx).scale(t, self.ring), self.ring)
    }

    pub fn elementary_generator(&self, pos: Position, t: u32) -> Result<Mat> {
        let idx = match pos {
            Position::Entry(i, j) => {
                if self.kind != ModelKind::Sl {
                    return Err(Error::Precondition("matrix positions address SL models only".into()));
                }
                if i == j {
                    return Err(Error::Precondition(format!("diagonal position ({i},{j})")));
                }
                if i == 0 || j == 0 || i > self.n || j > self.n {
                    return Err(Error::Precondition(format!("position ({i},{j}) out of range")));
                }
                let root = Root::new(interval_coords(self.n - 1, i - 1, j - 1));
                self.abs_system.index_of(&root).expect("off-diagonal positions are roots")
            }
            Position::Root(r) => self
                .abs_system
                .index_of(&r)
                .ok_or_else(|| Error::NotARoot(format!("{r} in {}", self.abs_system.rtype())))?,
        };
        Ok(self.root_element(idx, self.ring.reduce(t as i64)))
    }

    /// x_δ(1) for every absolute root: the generating set of E(R).
    pub fn generators(&self) -> Vec<Mat> {
        (0..self.abs_roots.len()).map(|i| self.root_element(i, 1)).collect()
    }

    /// Σ_k v_k N_{fiber[k]}.
    pub fn rel_nilpotent(&self, rel: usize, v: &[u32]) -> Mat {
        let space = &self.rel_roots[rel];
        assert_eq!(v.len(), space.dim(), "coordinate vector has the wrong length for {}", space.label);
        let mut n = Mat::zero(self.n);
        for (&idx, &c) in space.fiber.iter().zip(v) {
            n = n.add(&self.root_nilpotent(idx).scale(c, self.ring), self.ring);
        }
        n
    }

    /// X_α(v) = I + Σ v_k N_{δ_k}. The nilpotent squares to zero in every
    /// supported model, so this is a group element; for Sp4's BC1 system it
    /// equals x_{α1}(v1) x_{α1+α2}(v2) x_{2α1+α2}(−v1·v2).
    pub fn relative_root_element(&self, rel: usize, v: &[u32]) -> Result<Mat> {
        if rel >= self.rel_roots.len() {
            return Err(Error::NotARoot(format!("relative root index {rel}")));
        }
        if v.len() != self.rel_roots[rel].dim() {
            return Err(Error::Precondition(format!(
                "V_{} has dimension {}, got {} coordinates",
                self.rel_roots[rel].label,
                self.rel_roots[rel].dim(),
                v.len()
            )));
        }
        let v: Vec<u32> = v.iter().map(|&x| x % self.modulus()).collect();
        let n = self.rel_nilpotent(rel, &v);
        debug_assert!(n.mul(&n, self.ring) == Mat::zero(self.n));
        Ok(self.identity().add(&n, self.ring))
    }

    /// g lies in the Levi L_P: no entries at positions carrying a relative
    /// root.
    pub fn is_levi(&self, g: &Mat) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.position_rel[i][j].is_none() || g.get(i, j) == 0))
    }

    /// Every vector of V_α, in lexicographic order.
    pub fn module_elements(&self, rel: usize) -> Vec<Vec<u32>> {
        let dim = self.rel_roots[rel].dim();
        let m = self.modulus();
        let total = (m as usize).pow(dim as u32);
        (0..total)
            .map(|mut x| {
                let mut v = vec![0; dim];
                for slot in v.iter_mut().rev() {
                    *slot = (x % m as usize) as u32;
                    x /= m as usize;
                }
                v
            })
            .collect()
    }

    pub fn name(&self) -> String {
        match self.kind {
            ModelKind::Sl => format!("SL{}(Z/{})", self.n, self.modulus()),
            ModelKind::Sp4 => format!("Sp4(Z/{})", self.modulus()),
        }
    }
}

/// Coordinates of ε_a − ε_b in the simple roots of A_{len}: +1 on a..b
/// when a < b, −1 on b..a otherwise.
fn interval_coords(len: usize, a: usize, b: usize) -> Vec<i32> {
    let mut c = vec![0; len];
    let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
    for x in &mut c[lo..hi] {
        *x = s;
    }
    c
}
