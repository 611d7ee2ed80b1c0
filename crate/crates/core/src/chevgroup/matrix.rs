use std::fmt;

use super::ring::ZmRing;

/// Square matrix of size at most 4 over Z/m with m ≤ 16, stored with a
/// fixed row stride of 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat {
    n: u8,
    e: [u8; 16],
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        assert!((1..=4).contains(&n), "matrix size {n} unsupported");
        Self { n: n as u8, e: [0; 16] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.e[i * 4 + i] = 1;
        }
        m
    }

    /// Builds from rows, reducing entries modulo the ring.
    pub fn from_rows(rows: &[Vec<i64>], ring: ZmRing) -> Self {
        let mut m = Self::zero(rows.len());
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), rows.len(), "matrix must be square");
            for (j, &x) in row.iter().enumerate() {
                m.e[i * 4 + j] = ring.reduce(x) as u8;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * 4 + j] as u32
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.e[i * 4 + j] = x as u8;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }

    pub fn mul(&self, other: &Mat, ring: ZmRing) -> Mat {
        let n = self.size();
        let mut out = Mat::zero(n);
        let m = ring.modulus();
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u32;
                for k in 0..n {
                    s += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, s % m);
            }
        }
        out
    }

    pub fn add(&self, other: &Mat, ring: ZmRing) -> Mat {
        let mut out = *self;
        for k in 0..16 {
            out.e[k] = ring.add(self.e[k] as u32, other.e[k] as u32) as u8;
        }
        out
    }

    pub fn sub(&self, other: &Mat, ring: ZmRing) -> Mat {
        let mut out = *self;
        for k in 0..16 {
            out.e[k] = ring.sub(self.e[k] as u32, other.e[k] as u32) as u8;
        }
        out
    }

    pub fn scale(&self, t: u32, ring: ZmRing) -> Mat {
        let mut out = *self;
        for k in 0..16 {
            out.e[k] = ring.mul(self.e[k] as u32, t) as u8;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let n = self.size();
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn det(&self, ring: ZmRing) -> u32 {
        let rows: Vec<Vec<i64>> = (0..self.size())
            .map(|i| (0..self.size()).map(|j| self.get(i, j) as i64).collect())
            .collect();
        ring.reduce(det_i64(&rows))
    }

    /// Inverse via the adjugate; None if the determinant is not a unit.
    pub fn inverse(&self, ring: ZmRing) -> Option<Mat> {
        let n = self.size();
        let dinv = ring.inv(self.det(ring))?;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| self.get(r, c) as i64)
                            .collect()
                    })
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let cof = ring.reduce(sign * det_i64(&minor));
                out.set(i, j, ring.mul(cof, dinv));
            }
        }
        Some(out)
    }

    /// Entrywise reduction to a smaller modulus dividing the current one.
    pub fn reduce_mod(&self, d: u32) -> Mat {
        let mut out = *self;
        for k in 0..16 {
            out.e[k] = (self.e[k] as u32 % d) as u8;
        }
        out
    }

    /// Congruent to the identity modulo d.
    pub fn is_identity_mod(&self, d: u32) -> bool {
        self.reduce_mod(d) == Mat::identity(self.size()).reduce_mod(d)
    }

    /// Scalar matrix modulo d.
    pub fn is_scalar_mod(&self, d: u32) -> bool {
        let r = self.reduce_mod(d);
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| if i == j { r.get(i, i) == r.get(0, 0) } else { r.get(i, j) == 0 })
        })
    }

    /// Nibble packing, first entry most significant, so that key order is
    /// lexicographic order of the entries.
    pub fn key(&self) -> u64 {
        let n = self.size();
        let mut k = 0u64;
        for i in 0..n {
            for j in 0..n {
                k = (k << 4) | self.get(i, j) as u64;
            }
        }
        k
    }

    pub fn from_key(n: usize, key: u64) -> Mat {
        let mut out = Mat::zero(n);
        let mut k = key;
        for idx in (0..n * n).rev() {
            out.set(idx / n, idx % n, (k & 0xf) as u32);
            k >>= 4;
        }
        out
    }
}

/// Cofactor expansion along the first row. Sizes are at most 4.
pub fn det_i64(rows: &[Vec<i64>]) -> i64 {
    match rows.len() {
        0 => 1,
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * rows[0][c] * det_i64(&minor)
            })
            .sum(),
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(m: u32) -> ZmRing {
        ZmRing::new(m).unwrap()
    }

    #[test]
    fn inverse_of_small_matrix() {
        let z = ring(7);
        let a = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]], z);
        let inv = a.inverse(z).unwrap();
        assert!(a.mul(&inv, z).is_identity());
        let singular = Mat::from_rows(&[vec![2, 0], vec![0, 2]], ring(4));
        assert!(singular.inverse(ring(4)).is_none());
    }

    #[test]
    fn key_order_is_lexicographic() {
        let z = ring(3);
        let a = Mat::from_rows(&[vec![0, 2], vec![2, 2]], z);
        let b = Mat::from_rows(&[vec![1, 0], vec![0, 0]], z);
        assert!(a.key() < b.key());
        assert_eq!(Mat::from_key(2, a.key()), a);
    }

    fn arb_mat(n: usize, m: u32) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(0..m as i64, n * n).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(n).map(|c| c.to_vec()).collect();
            Mat::from_rows(&rows, ZmRing::new(m).unwrap())
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in arb_mat(4, 6), b in arb_mat(4, 6)) {
            let z = ring(6);
            prop_assert_eq!(a.mul(&b, z).det(z), z.mul(a.det(z), b.det(z)));
        }

        #[test]
        fn key_roundtrip(a in arb_mat(3, 16)) {
            prop_assert_eq!(Mat::from_key(3, a.key()), a);
        }

        #[test]
        fn inverse_when_unit_det(a in arb_mat(3, 5)) {
            let z = ring(5);
            match a.inverse(z) {
                Some(inv) => prop_assert!(inv.mul(&a, z).is_identity()),
                None => prop_assert_eq!(a.det(z), 0),
            }
        }
    }
}
