#![allow(dead_code)]

use pminor_core::index::rational;
use pminor_core::{BinaryIndex, MinorVector, Monomial, Rational, TensorPolynomial};
use rand::Rng;

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> MinorVector {
    loop {
        let coords: Vec<i64> = (0..1usize << n)
            .map(|_| rng.gen_range(-bound..=bound))
            .collect();
        let z = MinorVector::from_integers(n, &coords).unwrap();
        if !z.is_zero() {
            return z;
        }
    }
}

/// A nonzero homogeneous polynomial of degree `d` with up to `terms` random
/// monomials and small integer coefficients.
pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    n: usize,
    d: usize,
    terms: usize,
) -> TensorPolynomial {
    loop {
        let p = TensorPolynomial::from_terms(
            n,
            (0..terms).map(|_| {
                let vars: Vec<usize> = (0..d).map(|_| rng.gen_range(0..1usize << n)).collect();
                let mut c = rng.gen_range(-5..=5);
                if c == 0 {
                    c = 1;
                }
                (rational(c), Monomial::from_vars(vars))
            }),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn top_index(n: usize) -> BinaryIndex {
    BinaryIndex::ones(n)
}

pub fn bump_top(z: &MinorVector) -> MinorVector {
    let mut out = z.clone();
    let top = top_index(z.n());
    out.set(&top, z.get(&top) + Rational::from_integer(1.into()));
    out
}
