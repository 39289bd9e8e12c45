//! Exact dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::index::Rational;

/// Determinant of a row-major `size x size` rational matrix.
///
/// Sizes up to 3 use cofactor expansion; larger matrices are scaled to
/// integers row by row and reduced with Bareiss elimination.
pub fn determinant(size: usize, entries: &[Rational]) -> Rational {
    debug_assert_eq!(entries.len(), size * size);
    match size {
        0 => Rational::one(),
        1 => entries[0].clone(),
        2 => &entries[0] * &entries[3] - &entries[1] * &entries[2],
        3 => {
            let e = entries;
            &e[0] * (&e[4] * &e[8] - &e[5] * &e[7]) - &e[1] * (&e[3] * &e[8] - &e[5] * &e[6])
                + &e[2] * (&e[3] * &e[7] - &e[4] * &e[6])
        }
        _ => {
            let (rows, scale) = integer_rows(size, entries);
            Rational::new(bareiss_determinant(rows), scale)
        }
    }
}

/// Clears denominators row by row. Returns the integer rows and the product
/// of the row multipliers, so that `det(entries) = det(rows) / scale`.
fn integer_rows(size: usize, entries: &[Rational]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = entries
        .chunks(size)
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    (rows, scale)
}

/// Fraction-free Gaussian elimination on a square integer matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[size - 1][size - 1]
}

/// Rank of a rational matrix given as rows (all of equal length).
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pivot_row[col] - &factor * p;
            }
            let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(size: usize, entries: &[Rational]) -> Option<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = entries.chunks(size).map(<[_]>::to_vec).collect();
    let mut inv: Vec<Vec<Rational>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..size {
        let p = (col..size).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pivot = a[col][col].clone();
        for j in 0..size {
            a[col][j] = &a[col][j] / &pivot;
            inv[col][j] = &inv[col][j] / &pivot;
        }
        for r in 0..size {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..size {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv.into_iter().flatten().collect())
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}
