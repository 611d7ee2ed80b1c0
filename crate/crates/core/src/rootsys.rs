//! Irreducible crystallographic root systems in simple-root coordinates.
//!
//! Roots are integer vectors over the simple roots (Bourbaki numbering). The
//! geometry lives entirely in the Cartan matrix and the integral symmetric
//! form derived from it, so every computation here is exact.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest rank constructed directly (E_8).
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let reason = match family {
            Family::A if rank < 1 => Some("type A needs rank >= 1"),
            Family::B | Family::C if rank < 2 => Some("types B and C need rank >= 2"),
            Family::D if rank < 3 => Some("type D needs rank >= 3"),
            Family::E if !(6..=8).contains(&rank) => Some("type E needs rank 6, 7 or 8"),
            Family::F if rank != 4 => Some("type F exists only in rank 4"),
            Family::G if rank != 2 => Some("type G exists only in rank 2"),
            _ if rank > MAX_RANK => Some("rank above 8 is not supported"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InvalidRootSystem {
                family: family.letter(),
                rank,
                reason,
            }),
            None => Ok(Self { family, rank }),
        }
    }

    /// Simply-laced covers used to unfold B, C, F and G systems; C_n needs
    /// A_{2n-1}, which exceeds the public rank cap.
    pub(crate) fn unfolding_cover(family: Family, rank: usize) -> Result<Self> {
        match Self::new(family, rank.min(MAX_RANK)) {
            Ok(_) if rank < 2 * MAX_RANK => Ok(Self { family, rank }),
            Ok(_) => Err(Error::InvalidRootSystem { family: family.letter(), rank, reason: "cover rank too large" }),
            Err(e) => Err(e),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of roots, from the classical formulas.
    pub fn expected_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Every supported type with rank at most `max_rank`, in a fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<RootSystemType> {
        let mut out = Vec::new();
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for rank in 1..=max_rank.min(MAX_RANK) {
                if let Ok(t) = RootSystemType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().map(|c| c.to_ascii_uppercase());
        let family = match letter {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::NotARoot(format!("unknown root system type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::NotARoot(format!("unknown root system type {s:?}")))?;
        RootSystemType::new(family, rank)
    }
}

/// A root, written in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coords: Vec<i32>) -> Self {
        Root(coords)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// A permutation of simple-root indices preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        Self {
            perm: (0..rank).collect(),
        }
    }

    pub fn from_perm(perm: Vec<usize>) -> Self {
        Self { perm }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DiagramAutomorphism) -> DiagramAutomorphism {
        DiagramAutomorphism {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    /// Image of a root: the coefficient of α_i moves to α_σ(i).
    pub fn apply(&self, root: &Root) -> Root {
        let mut out = vec![0; root.0.len()];
        for (i, &c) in root.0.iter().enumerate() {
            out[self.perm[i]] = c;
        }
        Root(out)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    rtype: RootSystemType,
    simple_roots: Vec<Root>,
    /// Sorted by (height, coordinates).
    roots: Vec<Root>,
    cartan: Vec<Vec<i32>>,
    /// (α_i, α_i) / 2; short roots have squared length 2.
    half_norms: Vec<i32>,
}

fn bonds(rtype: RootSystemType) -> Vec<(usize, usize, i32)> {
    // (long, short, multiplicity); simply-laced bonds use multiplicity 1 and
    // are symmetric.
    let n = rtype.rank();
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, 1)).collect_vec();
    match rtype.family() {
        Family::A => chain(n),
        Family::B => {
            let mut b = chain(n - 1);
            b.push((n - 2, n - 1, 2));
            b
        }
        Family::C => {
            let mut b = chain(n - 1);
            b.push((n - 1, n - 2, 2));
            b
        }
        Family::D => {
            let mut b = chain(n - 1);
            b.push((n - 3, n - 1, 1));
            b
        }
        Family::E => {
            // α1-α3-α4-...-αn with α2 attached to α4
            let mut b = vec![(0, 2, 1), (1, 3, 1)];
            for i in 2..n - 1 {
                b.push((i, i + 1, 1));
            }
            b
        }
        Family::F => vec![(0, 1, 1), (1, 2, 2), (2, 3, 1)],
        Family::G => vec![(1, 0, 3)],
    }
}

fn half_norms(rtype: RootSystemType) -> Vec<i32> {
    let n = rtype.rank();
    match rtype.family() {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
        Family::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![1, 3],
    }
}

/// Builds the full root system by closing the simple roots under the simple
/// reflections.
pub fn build_root_system(rtype: RootSystemType) -> RootSystem {
    let n = rtype.rank();
    let mut cartan = vec![vec![0i32; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (long, short, mult) in bonds(rtype) {
        // cartan[i][j] = <α_i, α_j^∨>
        cartan[long][short] = -mult;
        cartan[short][long] = -1;
    }
    let simple_roots = (0..n).map(|i| Root::simple(n, i)).collect_vec();

    let mut seen: HashSet<Root> = simple_roots.iter().cloned().collect();
    let mut queue: VecDeque<Root> = simple_roots.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let pairing: i32 = (0..n).map(|k| r.0[k] * cartan[k][i]).sum();
            let mut c = r.0.clone();
            c[i] -= pairing;
            let image = Root(c);
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut roots = seen.into_iter().collect_vec();
    roots.sort_by(|a, b| (a.height(), &a.0).cmp(&(b.height(), &b.0)));

    RootSystem {
        rtype,
        simple_roots,
        roots,
        cartan,
        half_norms: half_norms(rtype),
    }
}

impl RootSystem {
    pub fn rtype(&self) -> RootSystemType {
        self.rtype
    }

    pub fn rank(&self) -> usize {
        self.rtype.rank()
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn is_simply_laced(&self) -> bool {
        self.rtype.family().is_simply_laced()
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.roots
            .binary_search_by(|x| (x.height(), &x.0).cmp(&(r.height(), &r.0)))
            .ok()
    }

    pub fn contains(&self, r: &Root) -> bool {
        r.0.len() == self.rank() && self.index_of(r).is_some()
    }

    /// The symmetric form (a, b) on the root lattice.
    pub fn pairing(&self, a: &Root, b: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += (a.0[i] * b.0[j] * self.cartan[i][j] * self.half_norms[j]) as i64;
            }
        }
        s
    }

    /// <a, b^∨> = 2(a,b)/(b,b).
    pub fn coroot_pairing(&self, a: &Root, b: &Root) -> i64 {
        2 * self.pairing(a, b) / self.pairing(b, b)
    }

    pub fn reflect(&self, a: &Root, b: &Root) -> Root {
        a.sub(&b.scale(self.coroot_pairing(a, b) as i32))
    }

    pub fn highest_root(&self) -> &Root {
        self.roots.last().expect("root systems are nonempty")
    }

    pub fn is_long(&self, r: &Root) -> bool {
        let max = self.pairing(self.highest_root(), self.highest_root());
        self.pairing(r, r) == max
    }
}

/// `a + b` when it is a root.
pub fn root_sum(sys: &RootSystem, a: &Root, b: &Root) -> Option<Root> {
    let s = a.add(b);
    sys.contains(&s).then_some(s)
}

/// Primes that occur among the structure constants.
pub fn structure_constant_primes(sys: &RootSystem) -> BTreeSet<u32> {
    match sys.rtype().family() {
        Family::A | Family::D | Family::E => BTreeSet::new(),
        Family::B | Family::C | Family::F => BTreeSet::from([2]),
        Family::G => BTreeSet::from([2, 3]),
    }
}

/// All permutations of the simple roots preserving the Cartan matrix.
/// The identity comes first.
pub fn diagram_automorphisms(sys: &RootSystem) -> Vec<DiagramAutomorphism> {
    let n = sys.rank();
    let c = &sys.cartan;
    let mut out = (0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|i| (0..n).all(|j| c[p[i]][p[j]] == c[i][j])))
        .map(DiagramAutomorphism::from_perm)
        .collect_vec();
    out.sort();
    out
}

/// Every subgroup of a (small) automorphism group, each sorted with the
/// identity first. Subgroups are listed by increasing order.
pub fn automorphism_subgroups(group: &[DiagramAutomorphism]) -> Vec<Vec<DiagramAutomorphism>> {
    let mut found: BTreeSet<Vec<DiagramAutomorphism>> = BTreeSet::new();
    let nontrivial = group.iter().filter(|g| !g.is_identity()).cloned().collect_vec();
    let rank = group.first().map(|g| g.perm.len()).unwrap_or(0);
    for mask in 0u32..(1 << nontrivial.len()) {
        let gens = (0..nontrivial.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| nontrivial[i].clone())
            .collect_vec();
        found.insert(generate_group(rank, &gens));
    }
    let mut out = found.into_iter().collect_vec();
    out.sort_by_key(|g| g.len());
    out
}

/// Closure of `gens` under composition, sorted.
pub fn generate_group(rank: usize, gens: &[DiagramAutomorphism]) -> Vec<DiagramAutomorphism> {
    let mut set: BTreeSet<DiagramAutomorphism> = BTreeSet::from([DiagramAutomorphism::identity(rank)]);
    let mut frontier = vec![DiagramAutomorphism::identity(rank)];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = s.compose(&g);
            if set.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    set.into_iter().collect()
}

/// Exhaustive consistency checks of one root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystemCheck {
    pub root_system: String,
    pub roots: usize,
    pub expected_roots: usize,
    pub negation_closed: bool,
    pub reflection_stable: bool,
    /// Every coroot pairing lies in [−3, 3].
    pub pairings_bounded: bool,
    /// Every β + kα string is unbroken of length at most 4.
    pub strings_unbroken: bool,
    pub automorphisms: usize,
    pub automorphisms_preserve_pairing: bool,
    pub structure_primes: Vec<u32>,
}

impl RootSystemCheck {
    pub fn passed(&self) -> bool {
        self.roots == self.expected_roots
            && self.negation_closed
            && self.reflection_stable
            && self.pairings_bounded
            && self.strings_unbroken
            && self.automorphisms_preserve_pairing
    }
}

pub fn check_root_system(rtype: RootSystemType) -> RootSystemCheck {
    let s = build_root_system(rtype);
    let roots = s.roots();
    let mut reflection_stable = true;
    let mut pairings_bounded = true;
    let mut strings_unbroken = true;
    for a in roots {
        for b in roots {
            reflection_stable &= s.contains(&s.reflect(a, b));
            pairings_bounded &= (-3..=3).contains(&s.coroot_pairing(a, b));
            if a != b && *a != b.neg() {
                let ks = (-4..=4).filter(|&k| s.contains(&b.add(&a.scale(k)))).collect_vec();
                let (lo, hi) = (ks[0], ks[ks.len() - 1]);
                strings_unbroken &= ks.len() as i32 == hi - lo + 1 && ks.len() <= 4;
            }
        }
    }
    let autos = diagram_automorphisms(&s);
    let automorphisms_preserve_pairing = autos.iter().all(|sigma| {
        roots.iter().all(|a| {
            let sa = sigma.apply(a);
            s.contains(&sa) && s.simple_roots().iter().all(|b| s.pairing(a, b) == s.pairing(&sa, &sigma.apply(b)))
        })
    });
    RootSystemCheck {
        root_system: rtype.to_string(),
        roots: roots.len(),
        expected_roots: rtype.expected_root_count(),
        negation_closed: roots.iter().all(|a| s.contains(&a.neg())),
        reflection_stable,
        pairings_bounded,
        strings_unbroken,
        automorphisms: autos.len(),
        automorphisms_preserve_pairing,
        structure_primes: structure_constant_primes(&s).into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap())
    }

    #[test]
    fn small_systems() {
        let a2 = sys("A2");
        assert_eq!(a2.roots().len(), 6);
        assert!(a2.contains(&Root::new(vec![1, 1])));
        assert!(a2.contains(&Root::new(vec![-1, -1])));

        let c2 = sys("C2");
        assert_eq!(c2.roots().len(), 8);
        assert!(c2.contains(&Root::new(vec![2, 1])));
        assert_eq!(c2.cartan(), &[vec![2, -1], vec![-2, 2]]);

        let g2 = sys("G2");
        assert_eq!(g2.roots().len(), 12);
        assert_eq!(g2.highest_root(), &Root::new(vec![3, 2]));
    }

    #[test]
    fn root_counts_and_reflection_stability() {
        for t in RootSystemType::all_up_to_rank(8) {
            let s = build_root_system(t);
            assert_eq!(s.roots().len(), t.expected_root_count(), "{t}");
            for a in s.roots() {
                assert!(a.is_positive() || a.neg().is_positive(), "{t}: {a}");
                assert!(s.contains(&a.neg()));
            }
            if t.rank() <= 6 {
                for a in s.roots() {
                    for b in s.roots() {
                        let k = s.coroot_pairing(a, b);
                        assert!((-3..=3).contains(&k));
                        assert!(s.contains(&s.reflect(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn root_strings_are_unbroken() {
        for t in RootSystemType::all_up_to_rank(5) {
            let s = build_root_system(t);
            for a in s.roots() {
                for b in s.roots() {
                    if a == b || *a == b.neg() {
                        continue;
                    }
                    let ks = (-4..=4).filter(|&k| s.contains(&b.add(&a.scale(k)))).collect_vec();
                    let (lo, hi) = (ks[0], *ks.last().unwrap());
                    assert_eq!(ks.len() as i32, hi - lo + 1, "{t}");
                    assert!(ks.len() <= 4);
                }
            }
        }
    }

    #[test]
    fn sums() {
        let a2 = sys("A2");
        let a1 = Root::new(vec![1, 0]);
        let a2r = Root::new(vec![0, 1]);
        assert_eq!(root_sum(&a2, &a1, &a2r), Some(Root::new(vec![1, 1])));
        assert_eq!(root_sum(&a2, &a1, &a1), None);
        let c2 = sys("C2");
        assert_eq!(
            root_sum(&c2, &Root::new(vec![1, 0]), &Root::new(vec![1, 1])),
            Some(Root::new(vec![2, 1]))
        );
    }

    #[test]
    fn root_sum_symmetries() {
        for t in RootSystemType::all_up_to_rank(4) {
            let s = build_root_system(t);
            for a in s.roots() {
                for b in s.roots() {
                    let ab = root_sum(&s, a, b);
                    assert_eq!(ab, root_sum(&s, b, a));
                    assert_eq!(ab.map(|r| r.neg()), root_sum(&s, &a.neg(), &b.neg()));
                }
            }
        }
    }

    #[test]
    fn primes() {
        assert!(structure_constant_primes(&sys("A3")).is_empty());
        assert_eq!(structure_constant_primes(&sys("C2")), BTreeSet::from([2]));
        assert_eq!(structure_constant_primes(&sys("G2")), BTreeSet::from([2, 3]));
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(diagram_automorphisms(&sys("A3")).len(), 2);
        assert_eq!(diagram_automorphisms(&sys("D4")).len(), 6);
        assert_eq!(diagram_automorphisms(&sys("C2")).len(), 1);
        assert_eq!(diagram_automorphisms(&sys("E6")).len(), 2);
        assert_eq!(diagram_automorphisms(&sys("E7")).len(), 1);
        assert_eq!(automorphism_subgroups(&diagram_automorphisms(&sys("D4"))).len(), 6);
    }

    #[test]
    fn automorphisms_preserve_roots_and_pairing() {
        for t in RootSystemType::all_up_to_rank(8) {
            let s = build_root_system(t);
            for sigma in diagram_automorphisms(&s) {
                for a in s.roots() {
                    let sa = sigma.apply(a);
                    assert!(s.contains(&sa), "{t}");
                    if t.rank() <= 6 {
                        for b in s.roots() {
                            assert_eq!(s.pairing(a, b), s.pairing(&sa, &sigma.apply(b)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn consistency_report() {
        let c = check_root_system("G2".parse().unwrap());
        assert!(c.passed(), "{c:?}");
        assert_eq!((c.roots, c.automorphisms, c.structure_primes.clone()), (12, 1, vec![2, 3]));
        assert!(check_root_system("E8".parse().unwrap()).passed());
    }

    #[test]
    fn invalid_types() {
        assert!(RootSystemType::new(Family::B, 1).is_err());
        assert!(RootSystemType::new(Family::E, 5).is_err());
        assert!(RootSystemType::new(Family::G, 3).is_err());
        assert!("X3".parse::<RootSystemType>().is_err());
        assert!(RootSystemType::new(Family::A, 9).is_err());
    }
}
