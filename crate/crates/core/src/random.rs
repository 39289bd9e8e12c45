//! Seeded generators for random test and experiment inputs.

use rand::Rng;

use crate::index::{rational, Rational, SymmetricMatrix};

/// Symmetric matrix with independent integer entries in `[-bound, bound]`.
/// With `nonzero_off_diagonal`, off-diagonal entries avoid zero.
pub fn integer_symmetric<R: Rng>(
    rng: &mut R,
    n: usize,
    bound: i64,
    nonzero_off_diagonal: bool,
) -> SymmetricMatrix {
    SymmetricMatrix::from_upper(n, |i, j| {
        let v = loop {
            let v = rng.gen_range(-bound..=bound);
            if i == j || !nonzero_off_diagonal || v != 0 {
                break v;
            }
        };
        rational(v)
    })
}

/// Rational with numerator in `[-bound, bound]` and denominator in `[1, max_den]`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    Rational::new(
        rng.gen_range(-bound..=bound).into(),
        rng.gen_range(1..=max_den).into(),
    )
}

/// Symmetric matrix with small rational entries.
pub fn rational_symmetric<R: Rng>(
    rng: &mut R,
    n: usize,
    bound: i64,
    max_den: i64,
) -> SymmetricMatrix {
    SymmetricMatrix::from_upper(n, |_, _| small_rational(rng, bound, max_den))
}

/// A random integer 2x2 matrix of determinant 1, as a product of shears.
pub fn sl2_integer<R: Rng>(rng: &mut R, bound: i64) -> [[Rational; 2]; 2] {
    let s = rng.gen_range(-bound..=bound);
    let t = rng.gen_range(-bound..=bound);
    // [[1, s], [0, 1]] * [[1, 0], [t, 1]]
    [
        [rational(1 + s * t), rational(s)],
        [rational(t), rational(1)],
    ]
}
