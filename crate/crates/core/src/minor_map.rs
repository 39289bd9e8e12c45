//! The principal-minor map `[A, t] -> [t^(n-|I|) det(A_I) X^I]`.

use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::{is_permutation, BinaryIndex, MinorVector, Rational, SymmetricMatrix};

/// `det(A_I)`, keeping row and column `k` iff `i_k = 1`. The empty minor is 1.
pub fn principal_minor(a: &SymmetricMatrix, index: &BinaryIndex) -> Result<Rational> {
    if index.n() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: index.n(),
        });
    }
    let keep = index.support();
    Ok(crate::linalg::determinant(
        keep.len(),
        &a.principal_submatrix(&keep),
    ))
}

/// All `2^n` coordinates `t^(n-|I|) det(A_I)`.
pub fn minor_vector(a: &SymmetricMatrix, t: &Rational) -> MinorVector {
    let n = a.n();
    let coords: Vec<Rational> = (0..1usize << n)
        .into_par_iter()
        .map(|e| {
            let index = BinaryIndex::new(n, e).expect("encoding in range");
            let minor = principal_minor(a, &index).expect("dimensions agree");
            if t.is_one() || minor.is_zero() {
                minor
            } else {
                minor * Pow::pow(t, (n - index.cardinality()) as u32)
            }
        })
        .collect();
    MinorVector::new(n, coords).expect("length is 2^n")
}

/// `z1 (x) z2`, with `z1` on the low factors: `(z1 (x) z2)_(J,K) = z1_J z2_K`.
pub fn tensor_product(z1: &MinorVector, z2: &MinorVector) -> MinorVector {
    let mut coords = Vec::with_capacity(z1.len() * z2.len());
    for b in z2.coords() {
        for a in z1.coords() {
            coords.push(a * b);
        }
    }
    MinorVector::new(z1.n() + z2.n(), coords).expect("length is 2^(p+q)")
}

/// Minor vector of `A^{-1}` read off from the minors of `A` in reverse
/// order: coordinate `I` is `det(A_{I^c}) / det(A)`.
pub fn reversed_minors(a: &SymmetricMatrix) -> Result<MinorVector> {
    let z = minor_vector(a, &Rational::one());
    let det = z[z.len() - 1].clone();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let coords = BinaryIndex::all(a.n())
        .map(|i| z.get(&i.complement()) / &det)
        .collect();
    MinorVector::new(a.n(), coords)
}

/// Relabels tensor factors: bit `k` of the input becomes bit `sigma[k]`
/// (zero-based). Matches [`SymmetricMatrix::permuted`], so that
/// `permute_factors(phi(A), s) = phi(permuted(A, s))`.
pub fn permute_factors(z: &MinorVector, sigma: &[usize]) -> Result<MinorVector> {
    let n = z.n();
    if !is_permutation(sigma, n) {
        return Err(Error::InvalidPermutation { n });
    }
    let mut out = vec![Rational::zero(); z.len()];
    for (e, c) in z.coords().iter().enumerate() {
        let target = (0..n)
            .filter(|&k| e >> k & 1 == 1)
            .fold(0usize, |acc, k| acc | 1 << sigma[k]);
        out[target] = c.clone();
    }
    MinorVector::new(n, out)
}
