//! Cayley's 2x2x2 hyperdeterminant and the hyperdeterminantal module.
//!
//! For `n >= 3` the module is spanned by the hyperdeterminants on each
//! triple of factors together with all of their lowering images in the
//! remaining factors. Each triple contributes `5^(n-3)` weight vectors.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::{rational, BinaryIndex, MinorVector, Rational, WeightVector};
use crate::poly::{Monomial, TensorPolynomial};
use crate::rep::{self, binomial};

/// The twelve terms as (coefficient, four variables `[i1,i2,i3]` packed as
/// `i1 + 2 i2 + 4 i3`).
const CAYLEY_TERMS: [(i64, [usize; 4]); 12] = [
    (1, [0b000, 0b000, 0b111, 0b111]),
    (1, [0b001, 0b001, 0b110, 0b110]),
    (1, [0b010, 0b010, 0b101, 0b101]),
    (1, [0b100, 0b100, 0b011, 0b011]),
    (-2, [0b000, 0b001, 0b110, 0b111]),
    (-2, [0b000, 0b010, 0b101, 0b111]),
    (-2, [0b000, 0b100, 0b011, 0b111]),
    (-2, [0b001, 0b010, 0b110, 0b101]),
    (-2, [0b001, 0b100, 0b110, 0b011]),
    (-2, [0b010, 0b100, 0b101, 0b011]),
    (4, [0b000, 0b110, 0b101, 0b011]),
    (4, [0b100, 0b010, 0b001, 0b111]),
];

fn check_triple(n: usize, triple: [usize; 3]) -> Result<()> {
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    let [i, j, k] = triple;
    if i == 0 || k > n || !(i < j && j < k) {
        return Err(Error::InvalidTriple(triple));
    }
    Ok(())
}

/// Hyperdeterminant on factors `triple` (1-based, increasing), with every
/// other factor fixed to `fill` (0 or 1).
fn hyperdet_with_fill(n: usize, triple: [usize; 3], fill: u8) -> Result<TensorPolynomial> {
    check_triple(n, triple)?;
    let base = if fill == 0 {
        BinaryIndex::zero(n)
    } else {
        BinaryIndex::ones(n)
    };
    let embed = |local: usize| -> usize {
        (0..3)
            .fold(base, |idx, b| {
                idx.with_bit(triple[b], (local >> b & 1) as u8)
            })
            .encoding()
    };
    Ok(TensorPolynomial::from_terms(
        n,
        CAYLEY_TERMS.iter().map(|(c, vars)| {
            (
                rational(*c),
                Monomial::from_vars(vars.iter().map(|&v| embed(v))),
            )
        }),
    ))
}

/// Cayley's hyperdeterminant in the variables `X^I` supported on `triple`,
/// with zeros in all other factors. Its weight is 0 on the triple and -4
/// elsewhere; it is a highest weight vector.
pub fn cayley_hyperdet(n: usize, triple: [usize; 3]) -> Result<TensorPolynomial> {
    hyperdet_with_fill(n, triple, 0)
}

/// The lowest weight vector of the same summand: the hyperdeterminant in the
/// variables with ones outside the triple. It equals
/// `lower_to_lowest(cayley_hyperdet(n, triple))` up to a positive scalar.
pub fn lowest_hyperdet(n: usize, triple: [usize; 3]) -> Result<TensorPolynomial> {
    hyperdet_with_fill(n, triple, 1)
}

/// `binom(n, 3) * 5^(n-3)`.
pub fn hd_dimension(n: usize) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    Ok(binomial(n as u64, 3) * num_traits::pow(BigInt::from(5), n - 3))
}

/// All 3-subsets of `1..=n` in lexicographic order.
pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisEntry {
    pub triple: [usize; 3],
    /// Lowering counts on the factors outside the triple, in increasing factor order.
    pub exponents: Vec<usize>,
    pub polynomial: TensorPolynomial,
    pub weight: WeightVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBasis {
    pub n: usize,
    pub entries: Vec<BasisEntry>,
}

impl ModuleBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Values of every entry at `z`, in basis order.
    pub fn evaluate_all(&self, z: &MinorVector) -> Result<Vec<Rational>> {
        self.entries
            .par_iter()
            .map(|e| e.polynomial.evaluate(z))
            .collect()
    }

    /// The lowest-numbered entry that does not vanish at `z`, with its value.
    pub fn first_nonzero(&self, z: &MinorVector) -> Result<Option<(usize, Rational)>> {
        let values = self.evaluate_all(z)?;
        Ok(values
            .into_iter()
            .enumerate()
            .find(|(_, v)| !num_traits::Zero::is_zero(v)))
    }
}

/// Weight basis of the hyperdeterminantal module: triples in lexicographic
/// order, and for each triple the lowering box `{0..4}^(n-3)` in odometer
/// order (last factor fastest). Entries are normalized to integer content 1.
pub fn hd_basis(n: usize) -> Result<ModuleBasis> {
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    let per_triple: Vec<Vec<BasisEntry>> = triples(n)
        .into_par_iter()
        .map(|triple| {
            let hwv = cayley_hyperdet(n, triple)?;
            let depths: Vec<usize> = (1..=n)
                .map(|k| if triple.contains(&k) { 0 } else { 4 })
                .collect();
            let vectors = rep::weight_basis(&hwv, &depths)?;
            Ok(vectors
                .into_iter()
                .map(|(polynomial, weight)| {
                    let exponents = (1..=n)
                        .filter(|k| !triple.contains(k))
                        .map(|k| ((weight.components()[k - 1] + 4) / 2) as usize)
                        .collect();
                    BasisEntry {
                        triple,
                        exponents,
                        polynomial,
                        weight,
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(ModuleBasis {
        n,
        entries: per_triple.into_iter().flatten().collect(),
    })
}

/// `a_f b_g - a_g b_f` where `f = a_f X^2 + b_f X + c_f` in the top variable.
pub fn top_variable_commutator(
    f: &TensorPolynomial,
    g: &TensorPolynomial,
) -> Result<TensorPolynomial> {
    let (af, bf, _) = f.split_by_top_variable()?;
    let (ag, bg, _) = g.split_by_top_variable()?;
    Ok(&(&af * &bg) - &(&ag * &bf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::SymmetricMatrix;
    use crate::minor_map::minor_vector;

    fn z3(values: [i64; 8]) -> MinorVector {
        MinorVector::from_integers(3, &values).unwrap()
    }

    #[test]
    fn hyperdet_evaluations() {
        let h = cayley_hyperdet(3, [1, 2, 3]).unwrap();
        assert_eq!(h.num_terms(), 12);
        assert_eq!(h.degree(), 4);
        assert_eq!(
            h.evaluate(&z3([1, 0, 0, 0, 0, 0, 0, 1])).unwrap(),
            rational(1)
        );
        assert_eq!(
            h.evaluate(&z3([1, 1, 1, 0, 1, 0, 0, 0])).unwrap(),
            rational(0)
        );
        assert_eq!(
            h.evaluate(&z3([1, 1, 1, 0, 1, 0, 0, 1])).unwrap(),
            rational(5)
        );
        let ones = SymmetricMatrix::from_integers(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).unwrap();
        assert_eq!(
            h.evaluate(&minor_vector(&ones, &rational(1))).unwrap(),
            rational(0)
        );
    }

    #[test]
    fn hyperdet_weights() {
        let h = cayley_hyperdet(4, [1, 2, 3]).unwrap();
        assert_eq!(h.weight_of().unwrap(), WeightVector(vec![0, 0, 0, -4]));
        let h = cayley_hyperdet(4, [1, 2, 4]).unwrap();
        assert_eq!(h.weight_of().unwrap(), WeightVector(vec![0, 0, -4, 0]));
        for k in 1..=4 {
            assert!(h.raise(k).unwrap().is_zero());
        }
    }

    #[test]
    fn invalid_triples() {
        assert!(cayley_hyperdet(3, [1, 1, 2]).is_err());
        assert!(cayley_hyperdet(3, [1, 2, 4]).is_err());
        assert!(cayley_hyperdet(2, [1, 2, 3]).is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(hd_dimension(3).unwrap(), BigInt::from(1));
        assert_eq!(hd_dimension(4).unwrap(), BigInt::from(20));
        assert_eq!(hd_dimension(5).unwrap(), BigInt::from(250));
        assert!(hd_dimension(2).is_err());
    }

    #[test]
    fn small_bases() {
        let b3 = hd_basis(3).unwrap();
        assert_eq!(b3.len(), 1);
        assert_eq!(
            b3.entries[0].polynomial,
            cayley_hyperdet(3, [1, 2, 3]).unwrap()
        );
        let b4 = hd_basis(4).unwrap();
        assert_eq!(b4.len(), 20);
        for t in triples(4) {
            assert_eq!(b4.entries.iter().filter(|e| e.triple == t).count(), 5);
        }
        assert_eq!(b4.entries[0].exponents, vec![0]);
        assert_eq!(b4.entries[4].exponents, vec![4]);
    }

    #[test]
    fn top_split_of_hyperdet() {
        let h = cayley_hyperdet(3, [1, 2, 3]).unwrap();
        let x = |bits: &[u8]| TensorPolynomial::variable(BinaryIndex::from_bits(bits).unwrap());
        let (a, b, _) = h.split_by_top_variable().unwrap();
        assert_eq!(a, x(&[0, 0, 0]).pow(2));
        let pairs = &(&(&x(&[1, 0, 0]) * &x(&[0, 1, 1])) + &(&x(&[0, 1, 0]) * &x(&[1, 0, 1])))
            + &(&x(&[0, 0, 1]) * &x(&[1, 1, 0]));
        let expected = &(&x(&[0, 0, 0]) * &pairs).scaled(&rational(-2))
            + &(&(&x(&[1, 0, 0]) * &x(&[0, 1, 0])) * &x(&[0, 0, 1])).scaled(&rational(4));
        assert_eq!(b, expected);
    }

    #[test]
    fn lowest_hyperdet_is_the_lowered_one() {
        for n in 3..=5 {
            for t in triples(n) {
                let (low, _) = rep::lower_to_lowest(&cayley_hyperdet(n, t).unwrap()).unwrap();
                assert_eq!(
                    low.normalized(),
                    lowest_hyperdet(n, t).unwrap().normalized()
                );
            }
        }
    }
}
