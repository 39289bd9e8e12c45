//! Sparse polynomials in the tensor coordinates `X^I`.
//!
//! A polynomial on `V_1 (x) ... (x) V_n` with `V_k = C^2` has one variable per
//! binary index. Factor `k` carries an `sl(2)` action: [`TensorPolynomial::lower`]
//! sends `X^I` with `i_k = 0` to `X^I` with `i_k = 1` and kills the rest, and
//! [`TensorPolynomial::raise`] is its transpose. Both act as derivations.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::index::{is_permutation, BinaryIndex, MinorVector, Rational, WeightVector, MAX_FACTORS};

/// A product of variables, kept as the sorted multiset of their index encodings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    vars: SmallVec<[u32; 6]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut vars: SmallVec<[u32; 6]> = vars.into_iter().map(|v| v as u32).collect();
        vars.sort_unstable();
        Self { vars }
    }

    /// From `(encoding, exponent)` pairs; zero exponents are skipped.
    pub fn from_exponents(pairs: &[(usize, usize)]) -> Self {
        Self::from_vars(
            pairs
                .iter()
                .flat_map(|&(v, e)| std::iter::repeat_n(v, e)),
        )
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    /// Variable encodings with multiplicity, ascending.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.vars.iter().map(|&v| v as usize)
    }

    /// `(encoding, exponent)` pairs, ascending by encoding.
    pub fn exponents(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut i = 0;
        std::iter::from_fn(move || {
            let v = *self.vars.get(i)?;
            let start = i;
            while i < self.vars.len() && self.vars[i] == v {
                i += 1;
            }
            Some((v as usize, i - start))
        })
    }

    pub fn exponent_of(&self, var: usize) -> usize {
        self.vars.iter().filter(|&&v| v as usize == var).count()
    }

    pub fn weight(&self, n: usize) -> WeightVector {
        let mut w = vec![0i64; n];
        for v in self.vars() {
            for (k, wk) in w.iter_mut().enumerate() {
                *wk += if v >> k & 1 == 1 { 1 } else { -1 };
            }
        }
        WeightVector(w)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars);
        vars.sort_unstable();
        Monomial { vars }
    }

    fn replace_one(&self, from: u32, to: u32) -> Monomial {
        let mut vars = self.vars.clone();
        let pos = vars
            .iter()
            .position(|&v| v == from)
            .expect("variable present");
        vars[pos] = to;
        vars.sort_unstable();
        Monomial { vars }
    }

    fn without_var(&self, var: u32) -> Monomial {
        Monomial {
            vars: self.vars.iter().copied().filter(|&v| v != var).collect(),
        }
    }
}

impl Ord for Monomial {
    /// Graded order: degree first, then lexicographic on `(encoding, exponent)` pairs.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents().cmp(other.exponents()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
    constant: Rational,
}

impl TensorPolynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
            constant: Rational::zero(),
        }
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
            constant: value,
        }
    }

    pub fn variable(index: BinaryIndex) -> Self {
        Self::term(
            index.n(),
            Rational::one(),
            Monomial::from_vars([index.encoding()]),
        )
    }

    pub fn term(n: usize, coeff: Rational, monomial: Monomial) -> Self {
        let mut p = Self::zero(n);
        p.add_term(monomial, coeff);
        p
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, combining like terms.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut p = Self::zero(n);
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        if monomial.degree() == 0 {
            self.constant += coeff;
            return;
        }
        debug_assert!(monomial.vars().all(|v| v >> self.n == 0));
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn from_accumulator(n: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in acc {
            if c.is_zero() {
                continue;
            }
            if m.degree() == 0 {
                p.constant = c;
            } else {
                p.terms.insert(m, c);
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    /// Non-constant terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len() + usize::from(!self.constant.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        if monomial.degree() == 0 {
            return self.constant.clone();
        }
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, degree: usize) -> bool {
        if degree == 0 {
            return self.terms.is_empty();
        }
        self.constant.is_zero() && self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
            constant: &self.constant * factor,
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::constant(self.n, Rational::one());
        for _ in 0..exponent {
            out = &out * self;
        }
        out
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            })
        }
    }

    /// Substitutes `z_I` for every `X^I`.
    pub fn evaluate(&self, z: &MinorVector) -> Result<Rational> {
        self.check_n(z.n())?;
        // Work with integers: z = Z / zden, coefficients = C / cden. Each degree
        // class then contributes sum(C * prod Z) / (cden * zden^degree).
        let zden = z
            .coords()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let zint: Vec<BigInt> = z
            .coords()
            .iter()
            .map(|c| c.numer() * (&zden / c.denom()))
            .collect();
        let cden = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut by_degree: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut prod = c.numer() * (&cden / c.denom());
            for v in m.vars() {
                if zint[v].is_zero() {
                    prod = BigInt::zero();
                    break;
                }
                prod *= &zint[v];
            }
            if !prod.is_zero() {
                *by_degree.entry(m.degree()).or_insert_with(BigInt::zero) += prod;
            }
        }
        let mut total = self.constant.clone();
        for (d, s) in by_degree {
            total += Rational::new(s, &cden * num_traits::pow(zden.clone(), d));
        }
        Ok(total)
    }

    /// Common weight of all monomials.
    pub fn weight_of(&self) -> Result<WeightVector> {
        let mut weights = self.terms.keys().map(|m| m.weight(self.n));
        if !self.constant.is_zero() {
            // The constant has weight zero; it only agrees with weight-zero monomials.
            return weights
                .all(|w| w == WeightVector::zero(self.n))
                .then(|| WeightVector::zero(self.n))
                .ok_or(Error::NotAWeightVector);
        }
        let first = weights.next().ok_or(Error::ZeroPolynomial)?;
        if weights.all(|w| w == first) {
            Ok(first)
        } else {
            Err(Error::NotAWeightVector)
        }
    }

    fn check_factor(&self, k: usize) -> Result<()> {
        if (1..=self.n).contains(&k) {
            Ok(())
        } else {
            Err(Error::FactorOutOfRange {
                factor: k,
                n: self.n,
            })
        }
    }

    /// Derivation extending `x_k^0 -> x_k^1`, `x_k^1 -> 0` on factor `k` (1-based).
    pub fn lower(&self, k: usize) -> Result<Self> {
        self.check_factor(k)?;
        Ok(self.shift(k, 0))
    }

    /// Derivation extending `x_k^1 -> x_k^0`, `x_k^0 -> 0` on factor `k` (1-based).
    pub fn raise(&self, k: usize) -> Result<Self> {
        self.check_factor(k)?;
        Ok(self.shift(k, 1))
    }

    fn shift(&self, k: usize, from_bit: usize) -> Self {
        let mask = 1u32 << (k - 1);
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            for (v, e) in m.exponents() {
                let v = v as u32;
                if (v & mask != 0) != (from_bit == 1) {
                    continue;
                }
                let image = m.replace_one(v, v ^ mask);
                let coeff = c * Rational::from_integer(BigInt::from(e));
                *acc.entry(image).or_insert_with(Rational::zero) += coeff;
            }
        }
        Self::from_accumulator(self.n, acc)
    }

    /// Substitutes a linear form (over `new_n` factors) for each variable.
    /// `forms[I]` lists `(encoding, coefficient)` pairs.
    pub fn substitute_linear(&self, new_n: usize, forms: &[Vec<(usize, Rational)>]) -> Self {
        let linear: Vec<TensorPolynomial> = forms
            .iter()
            .map(|f| {
                TensorPolynomial::from_terms(
                    new_n,
                    f.iter()
                        .map(|(v, c)| (c.clone(), Monomial::from_vars([*v]))),
                )
            })
            .collect();
        let mut out = Self::constant(new_n, self.constant.clone());
        for (m, c) in &self.terms {
            let mut prod = Self::constant(new_n, c.clone());
            for v in m.vars() {
                prod = &prod * &linear[v];
                if prod.is_zero() {
                    break;
                }
            }
            out = &out + &prod;
        }
        out
    }

    /// The augmentation `p (x) gamma^d` onto a new last factor `n+1`: every
    /// `X^I` becomes `gamma_0 X^(I,0) + gamma_1 X^(I,1)`.
    pub fn augment(&self, gamma: [&Rational; 2]) -> Self {
        let top = 1usize << self.n;
        let forms: Vec<Vec<(usize, Rational)>> = (0..top)
            .map(|v| vec![(v, gamma[0].clone()), (v | top, gamma[1].clone())])
            .collect();
        self.substitute_linear(self.n + 1, &forms)
    }

    /// Coefficient of `t_1 ... t_d` in `p(t_1 v_1 + ... + t_d v_d)`, where `d`
    /// is the degree of the homogeneous polynomial `p`. With this
    /// normalization `F(v, ..., v) = d! p(v)`.
    pub fn polarize_eval(&self, vectors: &[&MinorVector]) -> Result<Rational> {
        let d = self.degree();
        if !self.is_homogeneous(d) {
            return Err(Error::NotHomogeneous { degree: d });
        }
        if vectors.len() != d {
            return Err(Error::WrongVectorCount {
                expected: d,
                found: vectors.len(),
            });
        }
        for v in vectors {
            self.check_n(v.n())?;
        }
        if d == 0 {
            return Ok(self.constant.clone());
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let vars: Vec<usize> = m.vars().collect();
            total += c * permanent(d, |row, col| &vectors[col][vars[row]]);
        }
        Ok(total)
    }

    /// The polarization divided by `d!`, so that `F(v, ..., v) = p(v)`.
    pub fn polarize_eval_normalized(&self, vectors: &[&MinorVector]) -> Result<Rational> {
        let raw = self.polarize_eval(vectors)?;
        let fact: BigInt = (1..=vectors.len()).map(BigInt::from).product();
        Ok(raw / Rational::from_integer(fact))
    }

    /// Whether `p` vanishes identically on the span of `basis`, decided by
    /// testing the polarization on every multiset of basis vectors of size `d`
    /// for each homogeneous component of degree `d`.
    pub fn linear_subspace_vanishes(&self, basis: &[&MinorVector]) -> Result<bool> {
        for v in basis {
            self.check_n(v.n())?;
        }
        if !self.constant.is_zero() {
            return Ok(false);
        }
        let degrees: Vec<usize> = self
            .terms
            .keys()
            .map(Monomial::degree)
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        for d in degrees {
            let component = Self {
                n: self.n,
                terms: self
                    .terms
                    .iter()
                    .filter(|(m, _)| m.degree() == d)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect(),
                constant: Rational::zero(),
            };
            let mut vanishes = true;
            for_each_multiset(basis.len(), d, &mut |choice| {
                let vecs: Vec<&MinorVector> = choice.iter().map(|&i| basis[i]).collect();
                if !component
                    .polarize_eval(&vecs)
                    .expect("homogeneous")
                    .is_zero()
                {
                    vanishes = false;
                }
                vanishes
            });
            if !vanishes {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Writes `p = a X_top^2 + b X_top + c` with `X_top = X^[1,...,1]`.
    pub fn split_by_top_variable(&self) -> Result<(Self, Self, Self)> {
        let top = ((1usize << self.n) - 1) as u32;
        let mut parts = [
            Self::zero(self.n),
            Self::zero(self.n),
            Self::constant(self.n, self.constant.clone()),
        ];
        for (m, c) in &self.terms {
            let e = m.exponent_of(top as usize);
            if e > 2 {
                return Err(Error::TopDegreeTooHigh { degree: e });
            }
            parts[2 - e].add_term(m.without_var(top), c.clone());
        }
        let [a, b, c] = parts;
        Ok((a, b, c))
    }

    /// Scales to integer coefficients with content 1 and a positive
    /// coefficient on the greatest monomial.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs = self.terms.values().chain(std::iter::once(&self.constant));
        let den = coeffs
            .clone()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let content = coeffs
            .map(|c| c.numer() * (&den / c.denom()))
            .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
        let leading = self.terms.values().next_back().unwrap_or(&self.constant);
        let mut factor = Rational::new(den, content);
        if leading.is_negative() {
            factor = -factor;
        }
        self.scaled(&factor)
    }

    /// Degree in the single variable `X^I`.
    pub fn degree_in(&self, index: &BinaryIndex) -> usize {
        self.terms
            .keys()
            .map(|m| m.exponent_of(index.encoding()))
            .max()
            .unwrap_or(0)
    }
}

/// Permanent of the `d x d` matrix given by `entry(row, col)`, via a
/// subset dynamic program.
fn permanent<'a>(d: usize, entry: impl Fn(usize, usize) -> &'a Rational) -> Rational {
    let mut dp = vec![Rational::zero(); 1 << d];
    dp[0] = Rational::one();
    for mask in 0..(1usize << d) - 1 {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        for col in 0..d {
            if mask >> col & 1 == 0 {
                let x = entry(row, col);
                if !x.is_zero() {
                    let add = &dp[mask] * x;
                    dp[mask | 1 << col] += add;
                }
            }
        }
    }
    dp.pop().unwrap()
}

/// Calls `f` on every nondecreasing sequence of length `size` over
/// `0..count` until it returns false.
fn for_each_multiset(count: usize, size: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(
        count: usize,
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..count {
            cur.push(i);
            let go_on = rec(count, size, i, cur, f);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    if count == 0 {
        return;
    }
    rec(count, size, 0, &mut Vec::with_capacity(size), f);
}

impl Add for &TensorPolynomial {
    type Output = TensorPolynomial;

    fn add(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out.constant += &rhs.constant;
        out
    }
}

impl Sub for &TensorPolynomial {
    type Output = TensorPolynomial;

    fn sub(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &TensorPolynomial {
    type Output = TensorPolynomial;

    fn neg(self) -> TensorPolynomial {
        self.scaled(&-Rational::one())
    }
}

impl Mul for &TensorPolynomial {
    type Output = TensorPolynomial;

    fn mul(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        debug_assert_eq!(self.n, rhs.n);
        let lhs_terms: Vec<(Monomial, &Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c))
            .chain((!self.constant.is_zero()).then(|| (Monomial::one(), &self.constant)))
            .collect();
        let rhs_terms: Vec<(Monomial, &Rational)> = rhs
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c))
            .chain((!rhs.constant.is_zero()).then(|| (Monomial::one(), &rhs.constant)))
            .collect();
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(lhs_terms.len() * rhs_terms.len());
        for (m1, c1) in &lhs_terms {
            for (m2, c2) in &rhs_terms {
                *acc.entry(m1.times(m2)).or_insert_with(Rational::zero) += *c1 * *c2;
            }
        }
        TensorPolynomial::from_accumulator(self.n, acc)
    }
}

impl fmt::Display for TensorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let factors: Vec<String> = m
                .exponents()
                .map(|(v, e)| {
                    let idx = BinaryIndex::new(self.n, v).expect("in range");
                    if e == 1 {
                        format!("X{idx}")
                    } else {
                        format!("X{idx}^{e}")
                    }
                })
                .collect();
            write!(f, "{}", factors.join("*"))?;
        }
        if !self.constant.is_zero() {
            let (sign, mag) = if self.constant.is_negative() {
                ("-", -&self.constant)
            } else {
                ("+", self.constant.clone())
            };
            write!(f, " {sign} {mag}")?;
        }
        Ok(())
    }
}

type Mat2 = [[Rational; 2]; 2];

/// An element of `GL(2)^n` followed by a permutation of the factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    factor_matrices: Vec<Mat2>,
    /// Zero-based: factor `k` moves to position `permutation[k]`.
    permutation: Vec<usize>,
}

fn det2(m: &Mat2) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn inverse2(m: &Mat2) -> Mat2 {
    let d = det2(m);
    [
        [&m[1][1] / &d, -&m[0][1] / &d],
        [-&m[1][0] / &d, &m[0][0] / &d],
    ]
}

fn identity2() -> Mat2 {
    [
        [Rational::one(), Rational::zero()],
        [Rational::zero(), Rational::one()],
    ]
}

impl GroupElement {
    pub fn new(factor_matrices: Vec<Mat2>, permutation: Vec<usize>) -> Result<Self> {
        let n = factor_matrices.len();
        if n > MAX_FACTORS {
            return Err(Error::TooLarge {
                n,
                max: MAX_FACTORS,
            });
        }
        if !is_permutation(&permutation, n) {
            return Err(Error::InvalidPermutation { n });
        }
        if let Some(k) = factor_matrices.iter().position(|m| det2(m).is_zero()) {
            return Err(Error::SingularFactor { factor: k + 1 });
        }
        Ok(Self {
            factor_matrices,
            permutation,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            factor_matrices: vec![identity2(); n],
            permutation: (0..n).collect(),
        }
    }

    pub fn from_permutation(permutation: Vec<usize>) -> Result<Self> {
        Self::new(vec![identity2(); permutation.len()], permutation)
    }

    pub fn from_matrices(factor_matrices: Vec<Mat2>) -> Result<Self> {
        let n = factor_matrices.len();
        Self::new(factor_matrices, (0..n).collect())
    }

    /// The Weyl element `[[0, -1], [1, 0]]` on each listed factor (1-based).
    pub fn flips(n: usize, factors: &[usize]) -> Self {
        let mut g = Self::identity(n);
        for &k in factors {
            g.factor_matrices[k - 1] = [
                [Rational::zero(), -Rational::one()],
                [Rational::one(), Rational::zero()],
            ];
        }
        g
    }

    pub fn n(&self) -> usize {
        self.factor_matrices.len()
    }

    pub fn factor_matrices(&self) -> &[Mat2] {
        &self.factor_matrices
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// True iff every factor matrix has determinant 1.
    pub fn is_sl2(&self) -> bool {
        self.factor_matrices.iter().all(|m| det2(m).is_one())
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == self.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n(),
                found: n,
            })
        }
    }

    /// Contracts each factor with its matrix, then relabels factors.
    pub fn act_point(&self, z: &MinorVector) -> Result<MinorVector> {
        self.check_n(z.n())?;
        let mut coords = z.coords().to_vec();
        for (k, m) in self.factor_matrices.iter().enumerate() {
            apply_factor(&mut coords, k, m);
        }
        crate::minor_map::permute_factors(&MinorVector::new(z.n(), coords)?, &self.permutation)
    }

    /// Inverse of [`Self::act_point`].
    pub fn act_point_inverse(&self, z: &MinorVector) -> Result<MinorVector> {
        self.check_n(z.n())?;
        let mut inv = vec![0; self.n()];
        for (k, &s) in self.permutation.iter().enumerate() {
            inv[s] = k;
        }
        let mut coords = crate::minor_map::permute_factors(z, &inv)?.into_coords();
        for (k, m) in self.factor_matrices.iter().enumerate() {
            apply_factor(&mut coords, k, &inverse2(m));
        }
        MinorVector::new(z.n(), coords)
    }

    /// Transforms a polynomial so that `act(p)(act_point(z)) = p(z)`.
    pub fn act(&self, p: &TensorPolynomial) -> Result<TensorPolynomial> {
        self.check_n(p.n())?;
        let n = p.n();
        // (g^-1 y)_J = sum_I col_I[J] y_I with col_I = g^-1 e_I.
        let mut forms: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); 1 << n];
        for i in BinaryIndex::all(n) {
            let col = self.act_point_inverse(&MinorVector::unit(i))?;
            for (j, c) in col.coords().iter().enumerate() {
                if !c.is_zero() {
                    forms[j].push((i.encoding(), c.clone()));
                }
            }
        }
        Ok(p.substitute_linear(n, &forms))
    }
}

/// `z'_(..a..) = sum_b m[a][b] z_(..b..)` on zero-based factor `k`.
fn apply_factor(coords: &mut [Rational], k: usize, m: &Mat2) {
    if *m == identity2() {
        return;
    }
    let bit = 1usize << k;
    for e in 0..coords.len() {
        if e & bit != 0 {
            continue;
        }
        let (z0, z1) = (coords[e].clone(), coords[e | bit].clone());
        coords[e] = &m[0][0] * &z0 + &m[0][1] * &z1;
        coords[e | bit] = &m[1][0] * &z0 + &m[1][1] * &z1;
    }
}
