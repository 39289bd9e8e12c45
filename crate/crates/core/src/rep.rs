//! Symmetric-group characters, multiplicities in `S^d(V_1 (x) ... (x) V_n)`,
//! and weight-vector tools for `sl(2)^n`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::{Rational, WeightVector};
use crate::poly::TensorPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Accepts a weakly decreasing list of positive parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `d`, in decreasing lexicographic order.
    pub fn all(d: usize) -> Vec<Partition> {
        fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=left.min(max)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of `d` with at most two parts: `(d), (d-1,1), ...`.
    pub fn two_row(d: usize) -> Vec<Partition> {
        (0..=d / 2)
            .map(|s| Partition::new(vec![d - s, s]).expect("decreasing"))
            .collect()
    }

    /// Size of the centralizer `z_lambda = prod_i i^(m_i) m_i!` of a cycle type.
    pub fn centralizer_size(&self) -> BigInt {
        let mut mult: HashMap<usize, usize> = HashMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_default() += 1;
        }
        mult.into_iter()
            .map(|(i, m)| {
                num_traits::pow(BigInt::from(i), m) * (1..=m).map(BigInt::from).product::<BigInt>()
            })
            .product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"2,2"` or `"(2,2)"`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Partition::new(Vec::new());
        }
        let parts = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

type CharKey = (Vec<usize>, Vec<usize>);

fn character_cache() -> &'static Mutex<HashMap<CharKey, i64>> {
    static CACHE: OnceLock<Mutex<HashMap<CharKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Irreducible character `chi_shape` on the class of cycle type `cycle_type`,
/// by the Murnaghan-Nakayama rule.
pub fn character(shape: &Partition, cycle_type: &Partition) -> Result<i64> {
    if shape.size() != cycle_type.size() {
        return Err(Error::SizeMismatch(shape.size(), cycle_type.size()));
    }
    Ok(mn_character(&shape.0, &cycle_type.0))
}

fn mn_character(shape: &[usize], cycle_type: &[usize]) -> i64 {
    if cycle_type.is_empty() {
        return 1;
    }
    let key = (shape.to_vec(), cycle_type.to_vec());
    if let Some(&v) = character_cache().lock().unwrap().get(&key) {
        return v;
    }
    // Beta-set of the shape; removing a rim hook of length r moves one bead
    // from b to b - r, with sign (-1)^(beads strictly between).
    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let r = cycle_type[0];
    let rest = &cycle_type[1..];
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let m = next.len();
        let new_shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (m - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_character(&new_shape, rest);
    }
    character_cache().lock().unwrap().insert(key, total);
    total
}

/// Multiplicity of `S_{pi_1} V_1 (x) ... (x) S_{pi_n} V_n` in
/// `S^d(V_1 (x) ... (x) V_n)`: `(1/d!) sum_sigma prod_i chi_{pi_i}(sigma)`,
/// summed over cycle types with weights `1/z_lambda`.
pub fn invariant_dim(partitions: &[Partition]) -> Result<u64> {
    let Some(first) = partitions.first() else {
        return Ok(1);
    };
    let d = first.size();
    if let Some(p) = partitions.iter().find(|p| p.size() != d) {
        return Err(Error::SizeMismatch(d, p.size()));
    }
    let mut total = Rational::zero();
    for lambda in Partition::all(d) {
        let prod: i64 = partitions
            .iter()
            .map(|p| mn_character(&p.0, &lambda.0))
            .product();
        if prod != 0 {
            total += Rational::new(BigInt::from(prod), lambda.centralizer_size());
        }
    }
    debug_assert!(total.is_integer());
    Ok(total
        .to_integer()
        .try_into()
        .expect("multiplicity fits in u64"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicSummand {
    pub partitions: Vec<Partition>,
    pub multiplicity: u64,
}

/// All tuples of two-row partitions of `d` with nonzero multiplicity in
/// `S^d(C^2 (x) ... (x) C^2)` (`n` factors), in odometer order over
/// [`Partition::two_row`] with the last factor varying fastest.
pub fn decompose_symmetric_power(d: usize, n: usize) -> Vec<IsotypicSummand> {
    let rows = Partition::two_row(d);
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let partitions: Vec<Partition> = digits.iter().map(|&i| rows[i].clone()).collect();
        let multiplicity = invariant_dim(&partitions).expect("equal sizes");
        if multiplicity > 0 {
            out.push(IsotypicSummand {
                partitions,
                multiplicity,
            });
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < rows.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Dimension of `S_pi C^2`, namely `pi_1 - pi_2 + 1`.
pub fn sl2_dim(p: &Partition) -> Result<usize> {
    match p.parts() {
        [] => Ok(1),
        [a] => Ok(a + 1),
        [a, b] => Ok(a - b + 1),
        _ => Err(Error::TooManyParts(p.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicIdentification {
    pub partitions: Vec<Partition>,
    pub multiplicity: u64,
    /// Set when the multiplicity exceeds 1, so degree and weight do not pin
    /// down how the module is embedded.
    pub ambiguous: bool,
}

/// The summand `S_{pi_1} (x) ... (x) S_{pi_n}` containing a highest weight
/// vector of degree `d` and weight `w`: `pi_i = ((d - w_i)/2, (d + w_i)/2)`.
pub fn identify_isotypic(d: usize, w: &WeightVector) -> Result<IsotypicIdentification> {
    let partitions = w
        .components()
        .iter()
        .map(|&wi| {
            let di = d as i64;
            if (di + wi) % 2 != 0 || wi.abs() > di || wi > 0 {
                return Err(Error::ParityViolation {
                    weight: wi,
                    degree: d,
                });
            }
            Partition::new(vec![((di - wi) / 2) as usize, ((di + wi) / 2) as usize])
        })
        .collect::<Result<Vec<_>>>()?;
    let multiplicity = invariant_dim(&partitions)?;
    Ok(IsotypicIdentification {
        ambiguous: multiplicity > 1,
        partitions,
        multiplicity,
    })
}

/// Applies `lower(., 1)` as often as it stays nonzero, then factor 2, and so
/// on through factor `n`. Returns the resulting lowest weight vector with
/// its weight.
pub fn lower_to_lowest(p: &TensorPolynomial) -> Result<(TensorPolynomial, WeightVector)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut current = p.clone();
    for k in 1..=p.n() {
        loop {
            let next = current.lower(k)?;
            if next.is_zero() {
                break;
            }
            current = next;
        }
    }
    let w = current.weight_of()?;
    Ok((current, w))
}

/// The `sl(2)` string length below a highest weight: `max(0, -w_k)` per factor.
pub fn natural_depths(w: &WeightVector) -> Vec<usize> {
    w.components()
        .iter()
        .map(|&x| (-x).max(0) as usize)
        .collect()
}

/// Weight vectors `lower_n^{e_n} ... lower_1^{e_1} (hwv)` over the box
/// `0 <= e_k <= depths[k]`, normalized, in odometer order with the last
/// factor varying fastest. Zero images are skipped.
pub fn weight_basis(
    hwv: &TensorPolynomial,
    depths: &[usize],
) -> Result<Vec<(TensorPolynomial, WeightVector)>> {
    let n = hwv.n();
    if depths.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: depths.len(),
        });
    }
    hwv.weight_of()?;
    for k in 1..=n {
        if !hwv.raise(k)?.is_zero() {
            return Err(Error::NotHighestWeight { factor: k });
        }
    }
    let mut out = Vec::new();
    descend(hwv.clone(), 1, depths, &mut out)?;
    Ok(out)
}

fn descend(
    p: TensorPolynomial,
    k: usize,
    depths: &[usize],
    out: &mut Vec<(TensorPolynomial, WeightVector)>,
) -> Result<()> {
    if k > depths.len() {
        let normalized = p.normalized();
        let w = normalized.weight_of()?;
        out.push((normalized, w));
        return Ok(());
    }
    let mut current = p;
    for e in 0..=depths[k - 1] {
        if current.is_zero() {
            break;
        }
        let next = if e < depths[k - 1] {
            Some(current.lower(k)?)
        } else {
            None
        };
        descend(current, k + 1, depths, out)?;
        match next {
            Some(n) => current = n,
            None => break,
        }
    }
    Ok(())
}

/// Brute-force `(1/d!) sum over all permutations`, used to cross-check
/// [`invariant_dim`].
pub fn invariant_dim_by_permutations(partitions: &[Partition]) -> Result<u64> {
    let d = partitions.first().map(Partition::size).unwrap_or(0);
    if let Some(p) = partitions.iter().find(|p| p.size() != d) {
        return Err(Error::SizeMismatch(d, p.size()));
    }
    let mut perm: Vec<usize> = (0..d).collect();
    let mut total = 0i64;
    let mut count = 0i64;
    loop {
        let ct = cycle_type(&perm);
        total += partitions
            .iter()
            .map(|p| mn_character(&p.0, &ct.0))
            .product::<i64>();
        count += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    debug_assert_eq!(total % count, 0);
    Ok((total / count) as u64)
}

/// Cycle type of a permutation in one-line notation.
pub fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition(parts)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `d! / z_lambda`, the size of the conjugacy class of cycle type `lambda`.
pub fn class_size(lambda: &Partition) -> BigInt {
    let fact: BigInt = (1..=lambda.size()).map(BigInt::from).product();
    fact / lambda.centralizer_size()
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}
