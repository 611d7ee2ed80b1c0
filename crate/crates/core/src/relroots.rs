//! Relative root systems Φ_{J,Γ}: the image of a root system under the
//! projection that kills the simple roots outside J and identifies the
//! Γ-orbits inside J.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rootsys::{
    automorphism_subgroups, build_root_system, diagram_automorphisms, generate_group, Family, Root,
    RootSystem, RootSystemType, DiagramAutomorphism,
};

#[derive(Debug, Clone)]
pub struct RelativeDatum {
    base: RootSystem,
    j: Vec<usize>,
    gamma: Vec<DiagramAutomorphism>,
}

impl RelativeDatum {
    /// `gamma` may be any set of automorphisms; the group they generate is
    /// used.
    pub fn new(
        base: RootSystem,
        j: impl IntoIterator<Item = usize>,
        gamma: &[DiagramAutomorphism],
    ) -> Result<Self> {
        let n = base.rank();
        let c = base.cartan();
        for g in gamma {
            let p = g.perm();
            let is_perm = p.len() == n && p.iter().copied().collect::<BTreeSet<_>>().len() == n
                && p.iter().all(|&i| i < n);
            if !is_perm || !(0..n).all(|i| (0..n).all(|k| c[p[i]][p[k]] == c[i][k])) {
                return Err(Error::InvalidAutomorphismGroup(format!(
                    "{:?} does not preserve the Cartan matrix of {}",
                    p,
                    base.rtype()
                )));
            }
        }
        let gamma = generate_group(n, gamma);
        let j: Vec<usize> = j.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(&bad) = j.iter().find(|&&i| i >= n) {
            return Err(Error::Precondition(format!("simple root index {bad} out of range")));
        }
        let jset: BTreeSet<usize> = j.iter().copied().collect();
        if gamma.iter().any(|g| j.iter().any(|&i| !jset.contains(&g.image(i)))) {
            return Err(Error::NotGammaInvariant);
        }
        Ok(Self { base, j, gamma })
    }

    pub fn base(&self) -> &RootSystem {
        &self.base
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn gamma(&self) -> &[DiagramAutomorphism] {
        &self.gamma
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RelativeRoot(Vec<i32>);

impl RelativeRoot {
    pub fn new(coords: Vec<i32>) -> Self {
        RelativeRoot(coords)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &RelativeRoot) -> RelativeRoot {
        RelativeRoot(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RelativeRoot) -> RelativeRoot {
        RelativeRoot(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RelativeRoot {
        RelativeRoot(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: i32) -> RelativeRoot {
        RelativeRoot(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for RelativeRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

fn rel_key(r: &RelativeRoot) -> (i32, &[i32]) {
    (r.height(), &r.0)
}

#[derive(Debug, Clone)]
pub struct RelativeRootSystem {
    datum: RelativeDatum,
    /// Γ-orbits on J, ordered by least member.
    orbits: Vec<Vec<usize>>,
    /// k × rank matrix of π.
    projection: Vec<Vec<i32>>,
    /// Sorted by (height, coordinates).
    rel_roots: Vec<RelativeRoot>,
    fibers: HashMap<RelativeRoot, Vec<Root>>,
    kernel_roots: Vec<Root>,
}

pub fn build_relative(datum: RelativeDatum) -> RelativeRootSystem {
    let n = datum.base.rank();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = BTreeSet::new();
    for &i in &datum.j {
        if seen.contains(&i) {
            continue;
        }
        let orbit: BTreeSet<usize> = datum.gamma.iter().map(|g| g.image(i)).collect();
        seen.extend(orbit.iter().copied());
        orbits.push(orbit.into_iter().collect());
    }
    let mut projection = vec![vec![0; n]; orbits.len()];
    for (k, orbit) in orbits.iter().enumerate() {
        for &i in orbit {
            projection[k][i] = 1;
        }
    }

    let mut fibers: HashMap<RelativeRoot, Vec<Root>> = HashMap::new();
    let mut kernel_roots = Vec::new();
    for r in datum.base.roots() {
        let image = apply_projection(&projection, r);
        if image.is_zero() {
            kernel_roots.push(r.clone());
        } else {
            fibers.entry(image).or_default().push(r.clone());
        }
    }
    let mut rel_roots = fibers.keys().cloned().collect_vec();
    rel_roots.sort_by(|a, b| rel_key(a).cmp(&rel_key(b)));

    RelativeRootSystem {
        datum,
        orbits,
        projection,
        rel_roots,
        fibers,
        kernel_roots,
    }
}

fn apply_projection(projection: &[Vec<i32>], r: &Root) -> RelativeRoot {
    RelativeRoot(
        projection
            .iter()
            .map(|row| row.iter().zip(r.coords()).map(|(p, c)| p * c).sum())
            .collect(),
    )
}

impl RelativeRootSystem {
    pub fn datum(&self) -> &RelativeDatum {
        &self.datum
    }

    pub fn base(&self) -> &RootSystem {
        &self.datum.base
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn projection_matrix(&self) -> &[Vec<i32>] {
        &self.projection
    }

    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    pub fn project(&self, r: &Root) -> RelativeRoot {
        apply_projection(&self.projection, r)
    }

    pub fn rel_roots(&self) -> &[RelativeRoot] {
        &self.rel_roots
    }

    pub fn contains(&self, a: &RelativeRoot) -> bool {
        a.0.len() == self.rank()
            && self.rel_roots.binary_search_by(|x| rel_key(x).cmp(&rel_key(a))).is_ok()
    }

    pub fn fiber(&self, a: &RelativeRoot) -> &[Root] {
        self.fibers.get(a).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Roots of the base system in π^{-1}(0).
    pub fn kernel_roots(&self) -> &[Root] {
        &self.kernel_roots
    }

    pub fn is_positive(&self, a: &RelativeRoot) -> bool {
        a.0.iter().all(|&c| c >= 0)
    }
}

/// π(Π) ∩ Φ_{J,Γ}, sorted.
pub fn relative_simple_roots(rel: &RelativeRootSystem) -> Vec<RelativeRoot> {
    let mut out = rel
        .base()
        .simple_roots()
        .iter()
        .map(|r| rel.project(r))
        .filter(|a| !a.is_zero())
        .collect_vec();
    out.sort_by(|a, b| rel_key(a).cmp(&rel_key(b)));
    out.dedup();
    out
}

/// Every μ in π^{-1}(a+b) splits as μ1 + μ2 with μ1 ∈ π^{-1}(a),
/// μ2 ∈ π^{-1}(b).
pub fn check_fiber_additivity(
    rel: &RelativeRootSystem,
    a: &RelativeRoot,
    b: &RelativeRoot,
) -> Result<bool> {
    let sum = a.add(b);
    if !rel.contains(a) || !rel.contains(b) || !rel.contains(&sum) {
        return Err(Error::Precondition(format!(
            "{a} + {b} is not a relative root"
        )));
    }
    let fb: BTreeSet<&Root> = rel.fiber(b).iter().collect();
    Ok(rel
        .fiber(&sum)
        .iter()
        .all(|mu| rel.fiber(a).iter().any(|mu1| fb.contains(&mu.sub(mu1)))))
}

/// For distinct simple relative roots a, b with a+b a relative root:
/// a + jb is a relative root whenever jb is.
pub fn check_adjacent_simple(
    rel: &RelativeRootSystem,
    a: &RelativeRoot,
    b: &RelativeRoot,
) -> Result<bool> {
    let simple = relative_simple_roots(rel);
    if a == b || !simple.contains(a) || !simple.contains(b) || !rel.contains(&a.add(b)) {
        return Err(Error::Precondition(format!(
            "{a}, {b} are not distinct adjacent simple relative roots"
        )));
    }
    Ok((1..=4)
        .filter(|&j| rel.contains(&b.scale(j)))
        .all(|j| rel.contains(&a.add(&b.scale(j)))))
}

/// A simply-laced system Φ' together with, for each root of Φ', its image
/// in the base system's coordinates. For simply-laced bases this is the
/// identity.
#[derive(Debug, Clone)]
struct Unfolding {
    cover: RootSystem,
    images: Vec<Root>,
}

fn unfolding_source(t: RootSystemType) -> Option<(RootSystemType, Vec<usize>)> {
    // (simply-laced cover, generator of Γ' as a permutation)
    let n = t.rank();
    let cover = |f, r| RootSystemType::unfolding_cover(f, r).expect("valid cover type");
    match t.family() {
        Family::A | Family::D | Family::E => None,
        Family::C => {
            let r = 2 * n - 1;
            Some((cover(Family::A, r), (0..r).rev().collect()))
        }
        Family::B => {
            let r = n + 1;
            let mut p = (0..r).collect_vec();
            p.swap(r - 2, r - 1);
            Some((cover(Family::D, r), p))
        }
        Family::F => Some((cover(Family::E, 6), vec![5, 1, 4, 3, 2, 0])),
        Family::G => Some((cover(Family::D, 4), vec![2, 1, 3, 0])),
    }
}

fn unfold(base: &RootSystem) -> Unfolding {
    match unfolding_source(base.rtype()) {
        None => Unfolding {
            cover: base.clone(),
            images: base.roots().to_vec(),
        },
        Some((cover_type, perm)) => {
            let cover = build_root_system(cover_type);
            let folded = fold(&cover, &[DiagramAutomorphism::from_perm(perm)])
                .expect("standard folding data is valid");
            let (target, order) =
                identify_folding(&folded).expect("standard folding is identifiable");
            debug_assert_eq!(target, base.rtype());
            let images = cover
                .roots()
                .iter()
                .map(|r| permute_coords(&folded.project(r), &order))
                .collect();
            Unfolding { cover, images }
        }
    }
}

fn permute_coords(a: &RelativeRoot, order: &[usize]) -> Root {
    let mut out = vec![0; a.0.len()];
    for (k, &c) in a.0.iter().enumerate() {
        out[order[k]] = c;
    }
    Root::new(out)
}

/// Both readings of the Σ(β) formula: "for all a ∈ π^{-1}(α)" and "for some
/// a ∈ π^{-1}(α)". They coincide whenever the lemma holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaForms {
    pub for_all: Vec<RelativeRoot>,
    pub for_some: Vec<RelativeRoot>,
}

pub fn sigma_set_forms(rel: &RelativeRootSystem, b: &RelativeRoot) -> Result<SigmaForms> {
    if !relative_simple_roots(rel).contains(b) {
        return Err(Error::Precondition(format!("{b} is not a simple relative root")));
    }
    let unfolding = unfold(rel.base());
    let cover = &unfolding.cover;
    let mut lifted: HashMap<RelativeRoot, Vec<&Root>> = HashMap::new();
    for (r, image) in cover.roots().iter().zip(&unfolding.images) {
        lifted.entry(rel.project(image)).or_default().push(r);
    }
    let rank = cover.rank();
    let fiber_sum = lifted
        .get(b)
        .into_iter()
        .flatten()
        .fold(Root::new(vec![0; rank]), |acc, r| acc.add(r));

    let mut for_all = Vec::new();
    let mut for_some = Vec::new();
    for alpha in rel.rel_roots() {
        let pairings = lifted[alpha].iter().map(|a| cover.pairing(a, &fiber_sum)).collect_vec();
        if pairings.iter().all(|&p| p >= 0) {
            for_all.push(alpha.clone());
        }
        if pairings.iter().any(|&p| p >= 0) {
            for_some.push(alpha.clone());
        }
    }
    Ok(SigmaForms { for_all, for_some })
}

/// The parabolic set Σ(b) attached to a simple relative root.
pub fn sigma_set(rel: &RelativeRootSystem, b: &RelativeRoot) -> Result<Vec<RelativeRoot>> {
    Ok(sigma_set_forms(rel, b)?.for_all)
}

/// Folds a simply-laced system by a group of diagram automorphisms
/// (J = all simple roots).
pub fn fold(simply_laced: &RootSystem, gamma: &[DiagramAutomorphism]) -> Result<RelativeRootSystem> {
    if !simply_laced.is_simply_laced() {
        return Err(Error::Precondition(format!(
            "{} is not simply laced",
            simply_laced.rtype()
        )));
    }
    let datum = RelativeDatum::new(simply_laced.clone(), 0..simply_laced.rank(), gamma)?;
    Ok(build_relative(datum))
}

/// Recognizes a folded system as one of the standard reduced types and
/// returns the type together with the map from quotient-basis index to
/// Bourbaki index that makes the root sets coincide.
pub fn identify_folding(rel: &RelativeRootSystem) -> Option<(RootSystemType, Vec<usize>)> {
    let base = rel.base().rtype();
    let k = rel.rank();
    let orbit_sizes = rel.orbits().iter().map(Vec::len).max().unwrap_or(1);
    let target = match (base.family(), orbit_sizes) {
        (_, 1) => base,
        (Family::A, 2) if base.rank() % 2 == 1 => RootSystemType::new(Family::C, k).ok()?,
        (Family::D, 2) => RootSystemType::new(Family::B, k).ok()?,
        (Family::E, 2) if base.rank() == 6 => RootSystemType::new(Family::F, 4).ok()?,
        (Family::D, 3) if base.rank() == 4 => RootSystemType::new(Family::G, 2).ok()?,
        _ => return None,
    };
    let target_sys = build_root_system(target);
    let want: BTreeSet<&Root> = target_sys.roots().iter().collect();
    (0..k).permutations(k).find_map(|order| {
        let got: BTreeSet<Root> = rel.rel_roots().iter().map(|a| permute_coords(a, &order)).collect();
        (got.len() == want.len() && got.iter().all(|r| want.contains(r))).then_some((target, order))
    })
}

/// Cartan matrix of a reduced relative system read off from root strings
/// through its simple roots: entry (i, j) is minus the largest q with
/// a_i + q a_j a relative root.
pub fn string_cartan(rel: &RelativeRootSystem, order: &[usize]) -> Vec<Vec<i32>> {
    let k = rel.rank();
    let mut simple = vec![RelativeRoot::new(vec![0; k]); k];
    for (q, &target) in order.iter().enumerate() {
        let mut c = vec![0; k];
        c[q] = 1;
        simple[target] = RelativeRoot::new(c);
    }
    let mut out = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            out[i][j] = if i == j {
                2
            } else {
                -(0..=4)
                    .take_while(|&q| rel.contains(&simple[i].add(&simple[j].scale(q))))
                    .last()
                    .unwrap_or(0)
            };
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct DatumCheck {
    pub base: String,
    pub j: Vec<usize>,
    pub gamma_order: usize,
    pub rel_root_count: usize,
    pub adjacency_checks: usize,
    pub fiber_checks: usize,
    pub sigma_checks: usize,
    pub failures: Vec<String>,
    /// Simple relative roots b for which the literal statement "Σ contains
    /// every α with α+b not a relative root" would force -b into Σ.
    pub literal_minus_b_exclusions: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FoldingCheck {
    pub source: String,
    pub gamma_order: usize,
    pub expected: String,
    pub identified: Option<String>,
    pub cartan_matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelrootsReport {
    pub data: Vec<DatumCheck>,
    pub foldings: Vec<FoldingCheck>,
    pub datum_count: usize,
    pub total_checks: usize,
    pub counterexamples: usize,
}

impl RelrootsReport {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0
            && self
                .foldings
                .iter()
                .all(|f| f.identified.as_deref() == Some(f.expected.as_str()) && f.cartan_matches)
    }
}

/// Runs every combinatorial check on one relative root system.
pub fn check_datum(rel: &RelativeRootSystem) -> DatumCheck {
    let base = rel.base();
    let mut out = DatumCheck {
        base: base.rtype().to_string(),
        j: rel.datum().j().to_vec(),
        gamma_order: rel.datum().gamma().len(),
        rel_root_count: rel.rel_roots().len(),
        ..Default::default()
    };
    let roots = rel.rel_roots();

    // invariants of π
    for mu in base.roots() {
        let image = rel.project(mu);
        for sigma in rel.datum().gamma() {
            if rel.project(&sigma.apply(mu)) != image {
                out.failures.push(format!("π not Γ-invariant at {mu}"));
            }
        }
    }
    let fiber_total: usize = roots.iter().map(|a| rel.fiber(a).len()).sum();
    if fiber_total + rel.kernel_roots().len() != base.roots().len() {
        out.failures.push("fibers do not partition the roots".into());
    }

    for a in roots {
        for b in roots {
            if rel.contains(&a.add(b)) {
                out.fiber_checks += 1;
                if !check_fiber_additivity(rel, a, b).unwrap_or(false) {
                    out.failures.push(format!("fiber additivity fails for {a} + {b}"));
                }
            }
        }
    }

    let simple = relative_simple_roots(rel);
    for a in &simple {
        for b in &simple {
            if a != b && rel.contains(&a.add(b)) {
                out.adjacency_checks += 1;
                if !check_adjacent_simple(rel, a, b).unwrap_or(false) {
                    out.failures.push(format!("adjacent simple roots fail for {a}, {b}"));
                }
            }
        }
    }

    for b in &simple {
        out.sigma_checks += 1;
        let forms = match sigma_set_forms(rel, b) {
            Ok(f) => f,
            Err(e) => {
                out.failures.push(format!("sigma({b}): {e}"));
                continue;
            }
        };
        if forms.for_all != forms.for_some {
            out.failures.push(format!("sigma({b}): for-all and for-some forms differ"));
        }
        let sigma: BTreeSet<&RelativeRoot> = forms.for_all.iter().collect();
        for a1 in &sigma {
            for a2 in &sigma {
                let s = a1.add(a2);
                if rel.contains(&s) && !sigma.contains(&s) {
                    out.failures.push(format!("sigma({b}) not closed: {a1} + {a2}"));
                }
            }
        }
        if roots.iter().any(|a| !sigma.contains(a) && !sigma.contains(&a.neg())) {
            out.failures.push(format!("sigma({b}) ∪ -sigma({b}) is not everything"));
        }
        if sigma.len() == roots.len() {
            out.failures.push(format!("sigma({b}) is not proper"));
        }
        for a in roots {
            let s = a.add(b);
            if !s.is_zero() && !rel.contains(&s) && !sigma.contains(a) {
                out.failures.push(format!("sigma({b}) misses {a}"));
            }
        }
        if !sigma.contains(&b.neg()) {
            out.literal_minus_b_exclusions += 1;
        }
    }
    out
}

/// Every (Φ, J, Γ) with rank(Φ) ≤ `max_rank` and J nonempty, plus E_6 with
/// all of its automorphism subgroups.
pub fn enumerate_data(max_rank: usize) -> Vec<RelativeDatum> {
    let mut types = RootSystemType::all_up_to_rank(max_rank);
    let e6 = RootSystemType::new(Family::E, 6).expect("E6");
    if !types.contains(&e6) {
        types.push(e6);
    }
    let mut out = Vec::new();
    for t in types {
        let sys = build_root_system(t);
        let n = sys.rank();
        for gamma in automorphism_subgroups(&diagram_automorphisms(&sys)) {
            for mask in 1u32..(1 << n) {
                let j = (0..n).filter(|i| mask & (1 << i) != 0);
                if let Ok(d) = RelativeDatum::new(sys.clone(), j, &gamma) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// The standard foldings A_{2n-1} → C_n, D_{n+1} → B_n, E_6 → F_4,
/// D_4 → G_2, for covers of rank ≤ 8.
pub fn standard_foldings() -> Vec<(RootSystemType, Vec<usize>, RootSystemType)> {
    let mut out = Vec::new();
    for t in RootSystemType::all_up_to_rank(8) {
        let target = match t.family() {
            Family::A if t.rank() % 2 == 1 && t.rank() >= 3 => {
                RootSystemType::new(Family::C, t.rank().div_ceil(2)).ok()
            }
            Family::D => RootSystemType::new(Family::B, t.rank() - 1).ok(),
            Family::E if t.rank() == 6 => RootSystemType::new(Family::F, 4).ok(),
            _ => None,
        };
        if let Some(target) = target {
            let (_, perm) = unfolding_source(target).expect("non-simply-laced target");
            out.push((t, perm, target));
        }
    }
    out.push((
        RootSystemType::new(Family::D, 4).expect("D4"),
        vec![2, 1, 3, 0],
        RootSystemType::new(Family::G, 2).expect("G2"),
    ));
    out
}

pub fn check_folding(source: RootSystemType, perm: Vec<usize>, expected: RootSystemType) -> FoldingCheck {
    let sys = build_root_system(source);
    let gamma = vec![DiagramAutomorphism::from_perm(perm)];
    let folded = fold(&sys, &gamma).expect("valid folding data");
    let identified = identify_folding(&folded);
    let cartan_matches = identified
        .as_ref()
        .map(|(t, order)| string_cartan(&folded, order) == build_root_system(*t).cartan())
        .unwrap_or(false);
    FoldingCheck {
        source: source.to_string(),
        gamma_order: folded.datum().gamma().len(),
        expected: expected.to_string(),
        identified: identified.map(|(t, _)| t.to_string()),
        cartan_matches,
    }
}

pub fn verify_relroots_suite(max_rank: usize, exec: Exec) -> RelrootsReport {
    let data = enumerate_data(max_rank);
    let checks = exec.map(&data, |d| check_datum(&build_relative(d.clone())));
    let foldings = standard_foldings()
        .into_iter()
        .map(|(s, p, t)| check_folding(s, p, t))
        .collect_vec();
    let total_checks = checks
        .iter()
        .map(|c| c.adjacency_checks + c.fiber_checks + c.sigma_checks)
        .sum();
    let counterexamples = checks.iter().map(|c| c.failures.len()).sum();
    RelrootsReport {
        datum_count: checks.len(),
        data: checks,
        foldings,
        total_checks,
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(t: &str, j: &[usize], gamma: &[Vec<usize>]) -> RelativeRootSystem {
        let sys = build_root_system(t.parse().unwrap());
        let gamma = gamma.iter().cloned().map(DiagramAutomorphism::from_perm).collect_vec();
        build_relative(RelativeDatum::new(sys, j.iter().copied(), &gamma).unwrap())
    }

    fn rr(c: &[i32]) -> RelativeRoot {
        RelativeRoot::new(c.to_vec())
    }

    fn set(v: &[RelativeRoot]) -> BTreeSet<RelativeRoot> {
        v.iter().cloned().collect()
    }

    #[test]
    fn a2_parabolic() {
        let r = rel("A2", &[0], &[]);
        assert_eq!(r.rel_roots(), &[rr(&[-1]), rr(&[1])]);
        let fiber: BTreeSet<_> = r.fiber(&rr(&[1])).iter().cloned().collect();
        assert_eq!(fiber, BTreeSet::from([Root::new(vec![1, 0]), Root::new(vec![1, 1])]));
        assert_eq!(relative_simple_roots(&r), vec![rr(&[1])]);
        assert_eq!(r.kernel_roots().len(), 2);
    }

    #[test]
    fn a3_folded_bc1() {
        let r = rel("A3", &[0, 2], &[vec![2, 1, 0]]);
        assert_eq!(set(r.rel_roots()), set(&[rr(&[-2]), rr(&[-1]), rr(&[1]), rr(&[2])]));
        assert_eq!(relative_simple_roots(&r), vec![rr(&[1])]);
        assert!(check_fiber_additivity(&r, &rr(&[1]), &rr(&[1])).unwrap());
        assert_eq!(sigma_set(&r, &rr(&[1])).unwrap(), vec![rr(&[1]), rr(&[2])]);
        assert!(check_adjacent_simple(&r, &rr(&[1]), &rr(&[1])).is_err());
    }

    #[test]
    fn identity_projection() {
        for t in ["A2", "C2", "G2", "B3"] {
            let sys = build_root_system(t.parse().unwrap());
            let r = rel(t, &(0..sys.rank()).collect_vec(), &[]);
            assert_eq!(r.rel_roots().len(), sys.roots().len());
            for a in r.rel_roots() {
                assert_eq!(r.fiber(a).len(), 1);
                assert_eq!(r.fiber(a)[0].coords(), a.coords());
            }
        }
        let c2 = rel("C2", &[0, 1], &[]);
        assert_eq!(relative_simple_roots(&c2), vec![rr(&[0, 1]), rr(&[1, 0])]);
    }

    #[test]
    fn sigma_a2() {
        let r = rel("A2", &[0, 1], &[]);
        assert_eq!(
            set(&sigma_set(&r, &rr(&[1, 0])).unwrap()),
            set(&[rr(&[1, 0]), rr(&[1, 1]), rr(&[0, -1])])
        );
        assert_eq!(
            set(&sigma_set(&r, &rr(&[0, 1])).unwrap()),
            set(&[rr(&[0, 1]), rr(&[1, 1]), rr(&[-1, 0])])
        );
        assert!(sigma_set(&r, &rr(&[1, 1])).is_err());
    }

    #[test]
    fn adjacency_examples() {
        let c3 = rel("C3", &[0, 1], &[]);
        let simple = relative_simple_roots(&c3);
        let mut checked = 0;
        for a in &simple {
            for b in &simple {
                if a != b && c3.contains(&a.add(b)) {
                    assert!(check_adjacent_simple(&c3, a, b).unwrap());
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);

        let a4 = rel("A4", &[0, 3], &[vec![3, 2, 1, 0]]);
        assert_eq!(relative_simple_roots(&a4).len(), 1);
        let a4b = rel("A4", &[0, 1, 2, 3], &[vec![3, 2, 1, 0]]);
        let simple = relative_simple_roots(&a4b);
        let mut with_double = 0;
        for a in &simple {
            for b in &simple {
                if a != b && a4b.contains(&a.add(b)) {
                    assert!(check_adjacent_simple(&a4b, a, b).unwrap());
                    if a4b.contains(&b.scale(2)) {
                        with_double += 1;
                    }
                }
            }
        }
        assert!(with_double > 0);
    }

    #[test]
    fn gamma_invariance_is_enforced() {
        let sys = build_root_system("A3".parse().unwrap());
        let swap = DiagramAutomorphism::from_perm(vec![2, 1, 0]);
        assert_eq!(
            RelativeDatum::new(sys.clone(), [0], &[swap]).unwrap_err(),
            Error::NotGammaInvariant
        );
        let bogus = DiagramAutomorphism::from_perm(vec![1, 0, 2]);
        assert!(RelativeDatum::new(sys, [0, 1, 2], &[bogus]).is_err());
    }

    #[test]
    fn foldings() {
        let a3 = build_root_system("A3".parse().unwrap());
        let f = fold(&a3, &[DiagramAutomorphism::from_perm(vec![2, 1, 0])]).unwrap();
        assert_eq!(identify_folding(&f).unwrap().0.to_string(), "C2");

        let d4 = build_root_system("D4".parse().unwrap());
        let f = fold(&d4, &[DiagramAutomorphism::from_perm(vec![2, 1, 3, 0])]).unwrap();
        assert_eq!(f.rel_roots().len(), 12);
        let (t, order) = identify_folding(&f).unwrap();
        assert_eq!(t.to_string(), "G2");
        assert_eq!(string_cartan(&f, &order), vec![vec![2, -1], vec![-3, 2]]);

        let a2 = build_root_system("A2".parse().unwrap());
        let f = fold(&a2, &[]).unwrap();
        assert_eq!(identify_folding(&f).unwrap().0.to_string(), "A2");

        assert!(fold(&build_root_system("B3".parse().unwrap()), &[]).is_err());

        for (s, p, t) in standard_foldings() {
            let c = check_folding(s, p, t);
            assert_eq!(c.identified.as_deref(), Some(c.expected.as_str()), "{c:?}");
            assert!(c.cartan_matches, "{c:?}");
        }
    }

    #[test]
    fn projection_is_additive() {
        let r = rel("D4", &[0, 2, 3], &[vec![2, 1, 3, 0]]);
        let roots = r.base().roots();
        for a in roots {
            for b in roots {
                let s = a.add(b);
                assert_eq!(r.project(&s), r.project(a).add(&r.project(b)));
            }
        }
    }

    #[test]
    fn non_simply_laced_sigma_via_unfolding() {
        for t in ["B3", "C3", "F4", "G2"] {
            let sys = build_root_system(t.parse().unwrap());
            let r = rel(t, &(0..sys.rank()).collect_vec(), &[]);
            let check = check_datum(&r);
            assert!(check.failures.is_empty(), "{t}: {:?}", check.failures);
            assert_eq!(check.sigma_checks, sys.rank());
        }
    }
}
