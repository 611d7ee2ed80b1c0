use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported modulus; matrix entries are packed in four bits.
pub const MAX_MODULUS: u32 = 16;

/// The ring Z/m, elements kept in [0, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ZmRing {
    m: u32,
}

impl ZmRing {
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(Error::InvalidModel(format!(
                "modulus {m} outside the supported range 2..={MAX_MODULUS}"
            )));
        }
        Ok(Self { m })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.m as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.m
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.m - b % self.m) % self.m
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.m
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.m - a % self.m) % self.m
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        (0..e).fold(1 % self.m, |acc, _| self.mul(acc, a))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.m).find(|&x| self.mul(a, x) == 1)
    }

    pub fn is_unit(&self, a: u32) -> bool {
        gcd(a, self.m) == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.m
    }

    pub fn units(&self) -> Vec<u32> {
        (1..self.m).filter(|&a| self.is_unit(a)).collect()
    }

    pub fn prime_factors(&self) -> Vec<u32> {
        prime_factors(self.m)
    }

    pub fn is_field(&self) -> bool {
        self.prime_factors() == [self.m]
    }

    /// Z/d for a divisor d of m.
    pub fn quotient(&self, q: ZmIdeal) -> Option<ZmRing> {
        (q.generator() > 1).then(|| ZmRing { m: q.generator() })
    }
}

impl fmt::Display for ZmRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.m)
    }
}

/// The ideal dZ/mZ; d = m is the zero ideal, d = 1 the unit ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZmIdeal {
    d: u32,
    m: u32,
}

/// Serialized as its display form, e.g. "(2)".
impl Serialize for ZmIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl ZmIdeal {
    pub fn new(d: u32, m: u32) -> Result<Self> {
        if d == 0 || m == 0 || !m.is_multiple_of(d) {
            return Err(Error::InvalidModel(format!("{d} does not divide {m}")));
        }
        Ok(Self { d, m })
    }

    pub fn zero(ring: ZmRing) -> Self {
        Self { d: ring.m, m: ring.m }
    }

    pub fn unit(ring: ZmRing) -> Self {
        Self { d: 1, m: ring.m }
    }

    pub fn generator(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d == self.m
    }

    pub fn is_unit(&self) -> bool {
        self.d == 1
    }

    pub fn contains(&self, x: u32) -> bool {
        x.is_multiple_of(self.d)
    }

    /// Inclusion of ideals: (d) ⊆ (d') iff d' | d.
    pub fn is_subset_of(&self, other: &ZmIdeal) -> bool {
        self.d.is_multiple_of(other.d)
    }

    pub fn sum(&self, other: &ZmIdeal) -> ZmIdeal {
        ZmIdeal { d: gcd(self.d, other.d), m: self.m }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        (0..self.m).step_by(self.d as usize)
    }
}

impl fmt::Display for ZmIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.d)
    }
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All ideals of Z/m, by increasing generator.
pub fn ring_ideals(ring: ZmRing) -> Vec<ZmIdeal> {
    (1..=ring.m)
        .filter(|d| ring.m.is_multiple_of(*d))
        .map(|d| ZmIdeal { d, m: ring.m })
        .collect()
}

/// The Jacobson radical of Z/m, generated by the product of the distinct
/// primes dividing m.
pub fn jacobson_radical(ring: ZmRing) -> ZmIdeal {
    ZmIdeal {
        d: ring.prime_factors().iter().product(),
        m: ring.m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(m: u32) -> ZmRing {
        ZmRing::new(m).unwrap()
    }

    #[test]
    fn ideals() {
        let gens = |m| ring_ideals(r(m)).iter().map(|q| q.generator()).collect::<Vec<_>>();
        assert_eq!(gens(4), vec![1, 2, 4]);
        assert_eq!(gens(6), vec![1, 2, 3, 6]);
        assert_eq!(gens(2), vec![1, 2]);
    }

    #[test]
    fn radicals() {
        assert_eq!(jacobson_radical(r(4)).generator(), 2);
        assert!(jacobson_radical(r(6)).is_zero());
        assert_eq!(jacobson_radical(r(12)).generator(), 6);
    }

    #[test]
    fn arithmetic() {
        let z = r(9);
        assert_eq!(z.inv(2), Some(5));
        assert_eq!(z.inv(3), None);
        assert_eq!(z.sub(1, 5), 5);
        assert_eq!(z.units().len(), 6);
        assert!(r(7).is_field());
        assert!(!r(4).is_field());
        assert!(ZmRing::new(1).is_err());
        assert!(ZmIdeal::new(3, 4).is_err());
    }

    #[test]
    fn ideal_order() {
        let z = r(12);
        let q2 = ZmIdeal::new(2, 12).unwrap();
        let q4 = ZmIdeal::new(4, 12).unwrap();
        let q3 = ZmIdeal::new(3, 12).unwrap();
        assert!(q4.is_subset_of(&q2));
        assert!(!q2.is_subset_of(&q4));
        assert!(ZmIdeal::zero(z).is_subset_of(&q3));
        assert_eq!(q4.sum(&q3), ZmIdeal::unit(z));
        assert_eq!(q4.elements().collect::<Vec<_>>(), vec![0, 4, 8]);
    }
}
