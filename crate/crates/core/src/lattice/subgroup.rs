use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::chevgroup::table::ElementTable;
use crate::error::{Error, Result};

/// A subgroup of the tabulated group: a bitset over element indices plus a
/// generating set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    bits: FixedBitSet,
    order: usize,
    /// Generators as an abstract group; chosen greedily on first use when
    /// the construction did not produce them.
    gens: OnceLock<Vec<u32>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(table: &ElementTable) -> Self {
        ClosureBuilder::new(table).finish()
    }

    /// The whole table. The table is the closure of its generators, so
    /// they generate this subgroup.
    pub fn full(table: &ElementTable) -> Self {
        let mut bits = FixedBitSet::with_capacity(table.len());
        bits.insert_range(..);
        Subgroup { bits, order: table.len(), gens: OnceLock::from(table.generators().to_vec()) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    /// Generators as an abstract group.
    pub fn generators(&self, table: &ElementTable) -> &[u32] {
        self.gens.get_or_init(|| {
            let mut b = ClosureBuilder::new(table);
            for x in self.elements() {
                if !b.contains(x) {
                    b.add_generator(x);
                }
            }
            debug_assert_eq!(b.order(), self.order);
            b.gens
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Index in a containing group.
    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order / self.order
    }

    /// Wraps an element set known to be a subgroup, picking generators
    /// greedily. Fails if the set is not closed.
    pub fn from_elements(table: &ElementTable, elements: &[u32]) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(table.len());
        for &x in elements {
            bits.insert(x as usize);
        }
        let mut b = ClosureBuilder::new(table);
        for &x in elements {
            if !b.contains(x) {
                b.add_generator(x);
                if !b.bits.is_subset(&bits) {
                    return Err(Error::NotInSubgroup("element set is not closed under products".into()));
                }
            }
        }
        let h = b.finish();
        if h.bits != bits {
            return Err(Error::NotInSubgroup("element set does not contain the identity".into()));
        }
        Ok(h)
    }

    /// Whether conjugation by every normalizer maps the subgroup into itself.
    pub fn is_normalized_by(&self, table: &ElementTable, normalizers: &[u32]) -> bool {
        self.generators(table)
            .iter()
            .all(|&g| normalizers.iter().all(|&t| self.contains(conjugate(table, g, t))))
    }

    /// H ∩ K.
    pub fn intersection(&self, table: &ElementTable, other: &Subgroup) -> Subgroup {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        let elements: Vec<u32> = bits.ones().map(|i| i as u32).collect();
        Subgroup::from_elements(table, &elements).expect("intersections are subgroups")
    }
}

/// t⁻¹xt, through the Cayley table when t is an elementary generator.
pub fn conjugate(table: &ElementTable, x: u32, t: u32) -> u32 {
    match table.generators().iter().position(|&g| g == t) {
        Some(s) => table.conj_table()[s][x as usize],
        None => table.conj(x, t),
    }
}

/// Incrementally grown subgroup ⟨gens⟩. Invariant: the element list is
/// closed under right multiplication by every generator added so far.
pub struct ClosureBuilder<'a> {
    table: &'a ElementTable,
    bits: FixedBitSet,
    elems: Vec<u32>,
    gens: Vec<u32>,
    /// Cayley-table slot of each generator, when it has one.
    slots: Vec<Option<usize>>,
}

impl<'a> ClosureBuilder<'a> {
    pub fn new(table: &'a ElementTable) -> Self {
        let mut bits = FixedBitSet::with_capacity(table.len());
        bits.insert(table.identity() as usize);
        Self { table, bits, elems: vec![table.identity()], gens: Vec::new(), slots: Vec::new() }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    fn times(&self, x: u32, k: usize) -> u32 {
        match self.slots[k] {
            Some(s) => self.table.right_table()[s][x as usize],
            None => self.table.mul(x, self.gens[k]),
        }
    }

    fn push(&mut self, x: u32) {
        if !self.bits.put(x as usize) {
            self.elems.push(x);
        }
    }

    /// Adds a generator; returns false if it was already in the subgroup.
    pub fn add_generator(&mut self, g: u32) -> bool {
        if self.contains(g) {
            return false;
        }
        self.gens.push(g);
        self.slots.push(self.table.generators().iter().position(|&h| h == g));
        let k = self.gens.len() - 1;
        let old = self.elems.len();
        for i in 0..old {
            let p = self.times(self.elems[i], k);
            self.push(p);
        }
        let mut cursor = old;
        while cursor < self.elems.len() {
            let x = self.elems[cursor];
            for j in 0..self.gens.len() {
                let p = self.times(x, j);
                self.push(p);
            }
            cursor += 1;
        }
        true
    }

    pub fn finish(self) -> Subgroup {
        Subgroup { order: self.elems.len(), bits: self.bits, gens: OnceLock::from(self.gens) }
    }
}

/// ⟨seeds⟩.
pub fn subgroup_closure(table: &ElementTable, seeds: &[u32]) -> Subgroup {
    let mut b = ClosureBuilder::new(table);
    for &s in seeds {
        b.add_generator(s);
    }
    b.finish()
}

/// Smallest subgroup containing the seeds and normalized by every element
/// of `normalizers`.
pub fn normal_closure(table: &ElementTable, seeds: &[u32], normalizers: &[u32]) -> Subgroup {
    if normalizers == table.generators() {
        return e_normal_closure(table, seeds);
    }
    let mut b = ClosureBuilder::new(table);
    for &s in seeds {
        b.add_generator(s);
    }
    let mut i = 0;
    while i < b.gens.len() {
        let g = b.gens[i];
        for &t in normalizers {
            let c = conjugate(table, g, t);
            b.add_generator(c);
        }
        i += 1;
    }
    b.finish()
}

/// Normal closure under the elementary generators. A set containing 1
/// that is closed under right multiplication by the seeds and under
/// conjugation by E is closed under multiplication by every E-conjugate of
/// a seed, so it is exactly ⟨seeds^E⟩.
pub fn e_normal_closure(table: &ElementTable, seeds: &[u32]) -> Subgroup {
    let conj = table.conj_table();
    let ring = table.ring();
    let seed_mats: Vec<_> = seeds.iter().map(|&s| table.element(s)).collect();
    let mut bits = FixedBitSet::with_capacity(table.len());
    bits.insert(table.identity() as usize);
    let mut queue = vec![table.identity()];
    let mut cursor = 0;
    while cursor < queue.len() {
        let x = queue[cursor];
        cursor += 1;
        let xm = table.element(x);
        for s in &seed_mats {
            let y = table.index_of(&xm.mul(s, ring)).expect("closed under products");
            if !bits.put(y as usize) {
                queue.push(y);
            }
        }
        for c in conj {
            let y = c[x as usize];
            if !bits.put(y as usize) {
                queue.push(y);
            }
        }
    }
    Subgroup { order: queue.len(), bits, gens: OnceLock::new() }
}

/// [X, Y]: the normal closure of the commutators of generators under both
/// generating sets. When one side is the whole table, closing under E
/// alone suffices since the other side lies in E.
pub fn commutator_subgroup(table: &ElementTable, x: &Subgroup, y: &Subgroup) -> Subgroup {
    let (xg, yg) = (x.generators(table), y.generators(table));
    let seeds: Vec<u32> = xg
        .iter()
        .flat_map(|&a| yg.iter().map(move |&b| table.commutator(a, b)))
        .collect();
    if x.order() == table.len() || y.order() == table.len() {
        return e_normal_closure(table, &seeds);
    }
    let normalizers: Vec<u32> = xg.iter().chain(yg).copied().collect();
    normal_closure(table, &seeds, &normalizers)
}

/// Orbits of conjugation by the elementary generators, each sorted, listed
/// by least element.
pub fn e_conjugacy_orbits(table: &ElementTable) -> Vec<Vec<u32>> {
    let conj = table.conj_table();
    let mut seen = FixedBitSet::with_capacity(table.len());
    let mut orbits = Vec::new();
    for x in 0..table.len() {
        if seen.put(x) {
            continue;
        }
        let mut orbit = vec![x as u32];
        let mut cursor = 0;
        while cursor < orbit.len() {
            let y = orbit[cursor] as usize;
            for c in conj {
                let z = c[y];
                if !seen.put(z as usize) {
                    orbit.push(z);
                }
            }
            cursor += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Elements commuting with every generator of `s`.
pub fn centralizer(table: &ElementTable, s: &Subgroup) -> Subgroup {
    let ring = table.ring();
    let gens: Vec<_> = s.generators(table).iter().map(|&g| table.element(g)).collect();
    let members = table.filter(|x| gens.iter().all(|g| x.mul(g, ring) == g.mul(x, ring)));
    Subgroup::from_elements(table, &members).expect("centralizers are subgroups")
}
