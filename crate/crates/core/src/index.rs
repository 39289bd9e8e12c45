//! Binary multi-indices, minor vectors and symmetric matrices.
//!
//! A [`BinaryIndex`] `I = [i_1, ..., i_n]` is stored as the integer
//! `sum_k i_k 2^(k-1)`: factor 1 is the least significant bit. The same
//! encoding is the position of `z_I` inside a [`MinorVector`].

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;

pub type Rational = num_rational::BigRational;

/// Largest factor count the index type accepts.
pub const MAX_FACTORS: usize = 24;

pub fn rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryIndex {
    n: usize,
    encoding: usize,
}

impl BinaryIndex {
    pub fn new(n: usize, encoding: usize) -> Result<Self> {
        if n > MAX_FACTORS {
            return Err(Error::TooLarge {
                n,
                max: MAX_FACTORS,
            });
        }
        if encoding >> n != 0 {
            return Err(Error::IndexOutOfRange { encoding, n });
        }
        Ok(Self { n, encoding })
    }

    /// Builds an index from `[i_1, ..., i_n]`; nonzero entries count as 1.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let encoding = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .fold(0usize, |acc, (k, _)| acc | 1 << k);
        Self::new(bits.len(), encoding)
    }

    pub fn zero(n: usize) -> Self {
        Self { n, encoding: 0 }
    }

    pub fn ones(n: usize) -> Self {
        Self {
            n,
            encoding: (1 << n) - 1,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn encoding(&self) -> usize {
        self.encoding
    }

    pub fn bits(&self) -> Vec<u8> {
        (1..=self.n).map(|k| self.bit(k)).collect()
    }

    /// Bit `i_k` for a 1-based factor `k`.
    pub fn bit(&self, k: usize) -> u8 {
        debug_assert!((1..=self.n).contains(&k));
        ((self.encoding >> (k - 1)) & 1) as u8
    }

    pub fn with_bit(&self, k: usize, value: u8) -> Self {
        let mask = 1 << (k - 1);
        let encoding = if value == 0 {
            self.encoding & !mask
        } else {
            self.encoding | mask
        };
        Self {
            n: self.n,
            encoding,
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            encoding: !self.encoding & ((1 << self.n) - 1),
        }
    }

    /// `|I|`, the number of ones.
    pub fn cardinality(&self) -> usize {
        self.encoding.count_ones() as usize
    }

    /// The concatenated index `(J, K)`: `self` occupies the low factors.
    pub fn concat(&self, other: &BinaryIndex) -> Self {
        Self {
            n: self.n + other.n,
            encoding: self.encoding | other.encoding << self.n,
        }
    }

    /// Zero-based positions of the ones.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&k| self.encoding >> k & 1 == 1)
            .collect()
    }

    pub fn all(n: usize) -> impl Iterator<Item = BinaryIndex> {
        (0..1usize << n).map(move |encoding| BinaryIndex { n, encoding })
    }
}

impl fmt::Display for BinaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for k in 1..=self.n {
            if k > 1 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.bit(k))?;
        }
        write!(f, "]")
    }
}

/// A dense vector of `2^n` coordinates `z_I`, ordered by index encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorVector {
    n: usize,
    coords: Vec<Rational>,
}

impl MinorVector {
    pub fn new(n: usize, coords: Vec<Rational>) -> Result<Self> {
        if n > MAX_FACTORS {
            return Err(Error::TooLarge {
                n,
                max: MAX_FACTORS,
            });
        }
        if coords.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: coords.len(),
            });
        }
        Ok(Self { n, coords })
    }

    /// Infers `n` from the coordinate count, which must be a power of two.
    pub fn from_coords(coords: Vec<Rational>) -> Result<Self> {
        let len = coords.len();
        if !len.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: len.next_power_of_two(),
                found: len,
            });
        }
        Self::new(len.trailing_zeros() as usize, coords)
    }

    pub fn from_integers(n: usize, values: &[i64]) -> Result<Self> {
        Self::new(n, values.iter().map(|&v| rational(v)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            coords: vec![Rational::zero(); 1 << n],
        }
    }

    /// The coordinate vector `e_I`.
    pub fn unit(index: BinaryIndex) -> Self {
        let mut v = Self::zeros(index.n());
        v.coords[index.encoding()] = Rational::one();
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn get(&self, index: &BinaryIndex) -> &Rational {
        debug_assert_eq!(index.n(), self.n);
        &self.coords[index.encoding()]
    }

    pub fn set(&mut self, index: &BinaryIndex, value: Rational) {
        self.coords[index.encoding()] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self {
            n: self.n,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Splits along factor `k` into the halves with `i_k = 0` and `i_k = 1`,
    /// each an `(n-1)`-factor vector with the remaining factors in order.
    pub fn split_factor(&self, k: usize) -> (MinorVector, MinorVector) {
        let low_mask = (1usize << (k - 1)) - 1;
        let mut zero = Vec::with_capacity(self.len() / 2);
        let mut one = Vec::with_capacity(self.len() / 2);
        for e in 0..self.len() / 2 {
            let full = (e & low_mask) | (e & !low_mask) << 1;
            zero.push(self.coords[full].clone());
            one.push(self.coords[full | 1 << (k - 1)].clone());
        }
        (
            MinorVector {
                n: self.n - 1,
                coords: zero,
            },
            MinorVector {
                n: self.n - 1,
                coords: one,
            },
        )
    }
}

impl Index<usize> for MinorVector {
    type Output = Rational;

    fn index(&self, encoding: usize) -> &Rational {
        &self.coords[encoding]
    }
}

impl Index<&BinaryIndex> for MinorVector {
    type Output = Rational;

    fn index(&self, index: &BinaryIndex) -> &Rational {
        self.get(index)
    }
}

/// An `n x n` symmetric matrix with rational entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SymmetricMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let entries: Vec<Rational> = rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational(v)).collect())
                .collect(),
        )
    }

    /// Builds the matrix from its upper triangle; `f(i, j)` is called for `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                entries[j * n + i] = v.clone();
                entries[i * n + j] = v;
            }
        }
        Self { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(vec![Rational::one(); n])
    }

    pub fn diagonal(diag: Vec<Rational>) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a_{i,j}` with zero-based `i, j`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    /// Sets `a_{i,j}` and `a_{j,i}` together.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[j * self.n + i] = value.clone();
        self.entries[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    /// Principal submatrix on the zero-based positions in `keep`.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Vec<Rational> {
        keep.iter()
            .flat_map(|&i| keep.iter().map(move |&j| self.get(i, j).clone()))
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(self.n, &self.entries)
    }

    pub fn inverse(&self) -> Result<SymmetricMatrix> {
        let entries = linalg::inverse(self.n, &self.entries).ok_or(Error::Singular)?;
        Ok(Self { n: self.n, entries })
    }

    /// `diag(P, Q)`.
    pub fn block_diagonal(&self, other: &SymmetricMatrix) -> SymmetricMatrix {
        let n = self.n + other.n;
        Self::from_upper(n, |i, j| match (i < self.n, j < self.n) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - self.n, j - self.n).clone(),
            _ => Rational::zero(),
        })
    }

    /// `D A D` for the diagonal sign matrix with `D_ii = -1` where `flip[i]`.
    pub fn sign_conjugate(&self, flip: &[bool]) -> SymmetricMatrix {
        Self::from_upper(self.n, |i, j| {
            let v = self.get(i, j).clone();
            if flip[i] != flip[j] {
                -v
            } else {
                v
            }
        })
    }

    /// `P_sigma A P_sigma^T`: row/column `i` of `A` moves to position `sigma[i]`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<SymmetricMatrix> {
        if !is_permutation(sigma, self.n) {
            return Err(Error::InvalidPermutation { n: self.n });
        }
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[sigma[i] * self.n + sigma[j]] = self.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// True when `other = D self D` for some diagonal `D` with entries `+-1`.
    #[allow(clippy::needless_range_loop)]
    pub fn is_sign_conjugate_of(&self, other: &SymmetricMatrix) -> bool {
        if self.n != other.n {
            return false;
        }
        // Propagate the sign of D along nonzero off-diagonal entries.
        let mut sign: Vec<Option<bool>> = vec![None; self.n];
        for root in 0..self.n {
            if sign[root].is_some() {
                continue;
            }
            sign[root] = Some(false);
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                let si = sign[i].unwrap();
                for j in 0..self.n {
                    let (a, b) = (self.get(i, j), other.get(i, j));
                    if i == j {
                        if a != b {
                            return false;
                        }
                        continue;
                    }
                    let flipped = if *a == *b {
                        false
                    } else if *a == -b {
                        true
                    } else {
                        return false;
                    };
                    if a.is_zero() {
                        continue;
                    }
                    match sign[j] {
                        None => {
                            sign[j] = Some(si ^ flipped);
                            stack.push(j);
                        }
                        Some(sj) if sj != si ^ flipped => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn is_permutation(sigma: &[usize], n: usize) -> bool {
    if sigma.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    sigma
        .iter()
        .all(|&s| s < n && !std::mem::replace(&mut seen[s], true))
}

/// Per-factor weights; `x^0` counts `-1` and `x^1` counts `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|w| -w).collect())
    }

    /// The multiset of components, sorted ascending.
    pub fn sorted(&self) -> Vec<i64> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        assert_eq!(
            BinaryIndex::from_bits(&[0, 0, 0]).unwrap().complement(),
            BinaryIndex::from_bits(&[1, 1, 1]).unwrap()
        );
        assert_eq!(
            BinaryIndex::from_bits(&[1, 0, 1]).unwrap().complement(),
            BinaryIndex::from_bits(&[0, 1, 0]).unwrap()
        );
        for i in BinaryIndex::all(4) {
            assert_eq!(i.complement().complement(), i);
        }
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(BinaryIndex::from_bits(&[0, 0, 0]).unwrap().cardinality(), 0);
        assert_eq!(BinaryIndex::from_bits(&[1, 1, 1]).unwrap().cardinality(), 3);
        assert_eq!(
            BinaryIndex::from_bits(&[1, 0, 1, 0]).unwrap().cardinality(),
            2
        );
    }

    #[test]
    fn encoding_is_little_endian() {
        let i = BinaryIndex::from_bits(&[1, 1, 0]).unwrap();
        assert_eq!(i.encoding(), 3);
        assert_eq!(BinaryIndex::from_bits(&[0, 0, 1]).unwrap().encoding(), 4);
        assert_eq!(i.to_string(), "[1,1,0]");
    }

    #[test]
    fn encoding_round_trip() {
        for n in 0..=8 {
            for i in BinaryIndex::all(n) {
                assert_eq!(BinaryIndex::from_bits(&i.bits()).unwrap(), i);
            }
        }
        assert!(BinaryIndex::new(3, 8).is_err());
    }

    #[test]
    fn access_by_index_matches_encoding() {
        let z = MinorVector::from_integers(3, &[10, 11, 12, 13, 14, 15, 16, 17]).unwrap();
        for i in BinaryIndex::all(3) {
            assert_eq!(z.get(&i), &z[i.encoding()]);
        }
        assert!(MinorVector::from_integers(3, &[1, 2]).is_err());
    }

    #[test]
    fn split_factor_halves() {
        let z = MinorVector::from_integers(3, &[0, 1, 2, 3, 4, 5, 6, 7]).unwrap();
        let (a, b) = z.split_factor(2);
        assert_eq!(a, MinorVector::from_integers(2, &[0, 1, 4, 5]).unwrap());
        assert_eq!(b, MinorVector::from_integers(2, &[2, 3, 6, 7]).unwrap());
    }

    #[test]
    fn symmetric_matrix_rejects_asymmetry() {
        assert_eq!(
            SymmetricMatrix::from_integers(&[&[1, 2], &[3, 4]]),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
    }

    #[test]
    fn sign_conjugacy() {
        let a = SymmetricMatrix::from_integers(&[&[1, 2, 3], &[2, 4, 5], &[3, 5, 6]]).unwrap();
        let b = a.sign_conjugate(&[false, true, false]);
        assert!(a.is_sign_conjugate_of(&b));
        let mut c = a.clone();
        c.set(0, 1, rational(-2));
        assert!(!a.is_sign_conjugate_of(&c));
    }
}
