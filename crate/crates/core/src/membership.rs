//! Deciding whether a vector is the vector of principal minors of a
//! symmetric matrix.
//!
//! Three procedures are offered:
//!
//! * **basis**: evaluate every element of the hyperdeterminantal module basis.
//!   Over the complex numbers the common zeros are exactly the minor vectors.
//! * **reconstruct**: build a candidate matrix from the coordinates with
//!   `|I| <= 3` and verify all `2^n` minors.
//! * **prefilter**: the cheap recursive halving test; it can only reject.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperdet::{self, ModuleBasis};
use crate::index::{BinaryIndex, MinorVector, Rational, SymmetricMatrix};
use crate::linalg;
use crate::minor_map::{minor_vector, principal_minor};
use crate::poly::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NonMember,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReconstructMode {
    Exact,
    /// Complex floating point; values within `tol * max(1, |target|)` agree.
    Numeric {
        tol: f64,
    },
}

impl ReconstructMode {
    pub const DEFAULT_TOL: f64 = 1e-9;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Basis,
    Reconstruct(ReconstructMode),
    Prefilter,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Basis => "basis",
            Method::Reconstruct(_) => "reconstruct",
            Method::Prefilter => "prefilter",
        }
    }
}

/// A symmetric matrix over the complex numbers in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSymmetricMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexSymmetricMatrix {
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn principal_minor(&self, index: &BinaryIndex) -> Complex64 {
        let keep = index.support();
        let m: Vec<Complex64> = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        complex_determinant(keep.len(), m)
    }

    pub fn minor_vector(&self) -> Vec<Complex64> {
        BinaryIndex::all(self.n)
            .map(|i| self.principal_minor(&i))
            .collect()
    }
}

fn complex_determinant(size: usize, mut m: Vec<Complex64>) -> Complex64 {
    let mut det = Complex64::one();
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&a, &b| {
                m[a * size + col]
                    .norm()
                    .total_cmp(&m[b * size + col].norm())
            })
            .unwrap();
        if m[pivot * size + col].norm() == 0.0 {
            return Complex64::zero();
        }
        if pivot != col {
            for j in 0..size {
                m.swap(pivot * size + j, col * size + j);
            }
            det = -det;
        }
        let p = m[col * size + col];
        det *= p;
        for r in col + 1..size {
            let f = m[r * size + col] / p;
            for j in col..size {
                let v = m[col * size + j];
                m[r * size + j] -= f * v;
            }
        }
    }
    det
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReconstructedMatrix {
    Exact(SymmetricMatrix),
    Numeric(ComplexSymmetricMatrix),
}

/// Failure of the recursive prefilter: the 2x2x2 slice on `triple` with the
/// other factors fixed as listed has a nonzero hyperdeterminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefilterFailure {
    pub triple: [usize; 3],
    /// `(factor, bit)` for every factor outside the triple (1-based).
    pub fixed: Vec<(usize, u8)>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// `n <= 2`: every point of `P^(2^n - 1)` is a limit of minor vectors.
    SmallN,
    /// Basis entry `index` evaluates to the nonzero `value`.
    BasisFailure {
        index: usize,
        value: Rational,
    },
    /// Every basis entry vanishes.
    BasisVanishes {
        count: usize,
    },
    /// `chart^-1 (scale * phi(matrix, 1))` equals the input. `chart` is the
    /// identity unless the leading coordinate was zero.
    Matrix {
        matrix: ReconstructedMatrix,
        scale: Rational,
        chart: GroupElement,
    },
    /// Reconstruction proved no matrix exists (in the given chart).
    NoMatrix {
        reason: Error,
        chart: GroupElement,
    },
    Prefilter(PrefilterFailure),
    /// The procedure could not decide.
    Undecided {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub method: Method,
    pub chart_moves: usize,
}

/// Runs membership checks, caching one module basis per `n`.
pub struct Checker {
    bases: Mutex<HashMap<usize, Arc<ModuleBasis>>>,
    max_chart_moves: usize,
    seed: u64,
}

impl Default for Checker {
    fn default() -> Self {
        Self::new(0)
    }
}

impl Checker {
    pub const DEFAULT_CHART_MOVES: usize = 8;

    pub fn new(seed: u64) -> Self {
        Self {
            bases: Mutex::new(HashMap::new()),
            max_chart_moves: Self::DEFAULT_CHART_MOVES,
            seed,
        }
    }

    pub fn with_max_chart_moves(mut self, moves: usize) -> Self {
        self.max_chart_moves = moves;
        self
    }

    pub fn basis(&self, n: usize) -> Result<Arc<ModuleBasis>> {
        if let Some(b) = self.bases.lock().unwrap().get(&n) {
            return Ok(b.clone());
        }
        let basis = Arc::new(hyperdet::hd_basis(n)?);
        self.bases.lock().unwrap().insert(n, basis.clone());
        Ok(basis)
    }

    pub fn check(&self, z: &MinorVector, method: Method) -> Result<MembershipReport> {
        if z.is_zero() {
            return Err(Error::ZeroVector);
        }
        let report = |verdict, certificate, chart_moves| MembershipReport {
            verdict,
            certificate,
            method,
            chart_moves,
        };
        if z.n() <= 2 {
            return Ok(report(Verdict::Member, Certificate::SmallN, 0));
        }
        match method {
            Method::Basis => {
                let basis = self.basis(z.n())?;
                Ok(match basis.first_nonzero(z)? {
                    Some((index, value)) => report(
                        Verdict::NonMember,
                        Certificate::BasisFailure { index, value },
                        0,
                    ),
                    None => report(
                        Verdict::Member,
                        Certificate::BasisVanishes { count: basis.len() },
                        0,
                    ),
                })
            }
            Method::Prefilter => Ok(match prefilter_failure(z)? {
                Some(f) => report(Verdict::NonMember, Certificate::Prefilter(f), 0),
                None => report(
                    Verdict::Indeterminate,
                    Certificate::Undecided {
                        reason: "every 2x2x2 slice has vanishing hyperdeterminant".into(),
                    },
                    0,
                ),
            }),
            Method::Reconstruct(mode) => {
                let (chart, moved, moves) = self.move_to_chart(z)?;
                let outcome = match mode {
                    ReconstructMode::Exact => {
                        reconstruct_exact(&moved).map(ReconstructedMatrix::Exact)
                    }
                    ReconstructMode::Numeric { tol } => {
                        reconstruct_numeric(&moved, tol).map(ReconstructedMatrix::Numeric)
                    }
                };
                Ok(match outcome {
                    Ok(matrix) => {
                        let scale = moved[0].clone();
                        report(
                            Verdict::Member,
                            Certificate::Matrix {
                                matrix,
                                scale,
                                chart,
                            },
                            moves,
                        )
                    }
                    Err(e @ Error::NonSquare { .. }) => report(
                        Verdict::Indeterminate,
                        Certificate::Undecided {
                            reason: e.to_string(),
                        },
                        moves,
                    ),
                    Err(reason @ (Error::NoConsistentSigns | Error::VerificationFailed { .. })) => {
                        report(
                            Verdict::NonMember,
                            Certificate::NoMatrix { reason, chart },
                            moves,
                        )
                    }
                    Err(e) => return Err(e),
                })
            }
        }
    }

    /// Moves `z` into the chart `z_[0..0] != 0` with a determinant-one group
    /// element: the Weyl flip on the support of a randomly chosen nonzero
    /// coordinate carries that coordinate to position `[0, ..., 0]`.
    fn move_to_chart(&self, z: &MinorVector) -> Result<(GroupElement, MinorVector, usize)> {
        if !z[0].is_zero() {
            return Ok((GroupElement::identity(z.n()), z.clone(), 0));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let nonzero: Vec<usize> = (0..z.len()).filter(|&e| !z[e].is_zero()).collect();
        for moves in 1..=self.max_chart_moves {
            let pick = nonzero[rng.gen_range(0..nonzero.len())];
            let factors: Vec<usize> = BinaryIndex::new(z.n(), pick)?
                .support()
                .iter()
                .map(|k| k + 1)
                .collect();
            let g = GroupElement::flips(z.n(), &factors);
            let moved = g.act_point(z)?;
            if !moved[0].is_zero() {
                return Ok((g, moved, moves));
            }
        }
        Err(Error::ZeroLeadingCoordinate)
    }
}

/// Convenience wrapper around a fresh [`Checker`].
pub fn is_member(z: &MinorVector, method: Method) -> Result<MembershipReport> {
    Checker::default().check(z, method)
}

/// The recursive halving test. `false` means `z` is certainly not a minor
/// vector; `true` is inconclusive.
pub fn recursive_prefilter(z: &MinorVector) -> Result<bool> {
    Ok(prefilter_failure(z)?.is_none())
}

/// Splits `z` along each factor into its two halves and recurses until three
/// factors remain, where Cayley's hyperdeterminant is evaluated. Each half is
/// identified by the factors fixed so far, so repeated halves are visited once.
pub fn prefilter_failure(z: &MinorVector) -> Result<Option<PrefilterFailure>> {
    if z.is_zero() {
        return Err(Error::ZeroVector);
    }
    if z.n() < 3 {
        return Ok(None);
    }
    let hyperdet = hyperdet::cayley_hyperdet(3, [1, 2, 3])?;
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let labels: Vec<usize> = (1..=z.n()).collect();
    Ok(prefilter_rec(z, &labels, 0, 0, &hyperdet, &mut seen))
}

fn prefilter_rec(
    z: &MinorVector,
    labels: &[usize],
    fixed_mask: usize,
    fixed_bits: usize,
    hyperdet: &crate::poly::TensorPolynomial,
    seen: &mut HashSet<(usize, usize)>,
) -> Option<PrefilterFailure> {
    if !seen.insert((fixed_mask, fixed_bits)) {
        return None;
    }
    if labels.len() == 3 {
        let value = hyperdet.evaluate(z).expect("three factors");
        if value.is_zero() {
            return None;
        }
        let n = labels.len() + fixed_mask.count_ones() as usize;
        let fixed = (1..=n)
            .filter(|k| fixed_mask >> (k - 1) & 1 == 1)
            .map(|k| (k, (fixed_bits >> (k - 1) & 1) as u8))
            .collect();
        return Some(PrefilterFailure {
            triple: [labels[0], labels[1], labels[2]],
            fixed,
            value,
        });
    }
    for (pos, &label) in labels.iter().enumerate() {
        let (zero, one) = z.split_factor(pos + 1);
        let rest: Vec<usize> = labels.iter().copied().filter(|&l| l != label).collect();
        let bit = 1usize << (label - 1);
        for (half, value) in [(zero, 0usize), (one, bit)] {
            if half.is_zero() {
                continue;
            }
            if let Some(f) = prefilter_rec(
                &half,
                &rest,
                fixed_mask | bit,
                fixed_bits | value,
                hyperdet,
                seen,
            ) {
                return Some(f);
            }
        }
    }
    None
}

/// Coordinates scaled so that `z_[0..0] = 1`.
fn normalize_leading(z: &MinorVector) -> Result<MinorVector> {
    if z.is_zero() {
        return Err(Error::ZeroVector);
    }
    let lead = z[0].clone();
    if lead.is_zero() {
        return Err(Error::ZeroLeadingCoordinate);
    }
    Ok(z.scaled(&(Rational::one() / lead)))
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    (1 << i | 1 << j) & ((1 << n) - 1)
}

type TripleCheck<'a> = dyn FnMut(&[Vec<i8>], [usize; 3]) -> bool + 'a;

/// Off-diagonal sign search shared by the exact and numeric paths.
///
/// `nonzero[i][j]` marks the off-diagonal entries that carry a sign. Signs on
/// a spanning forest of that graph are fixed to `+`; the remaining edges are
/// assigned by backtracking, and every triple `{i,j,k}` is checked by
/// `triple_ok` as soon as its edges are all assigned. `on_complete` receives
/// each full assignment and returns true to stop.
fn search_signs(
    n: usize,
    nonzero: &[Vec<bool>],
    mut triple_ok: impl FnMut(&[Vec<i8>], [usize; 3]) -> bool,
    mut on_complete: impl FnMut(&[Vec<i8>]) -> bool,
) {
    let mut sign = vec![vec![0i8; n]; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut free_edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !nonzero[i][j] {
                continue;
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                sign[i][j] = 1;
                sign[j][i] = 1;
            } else {
                free_edges.push((i, j));
            }
        }
    }
    // Triples become checkable after the last of their free edges is set.
    let position: HashMap<(usize, usize), usize> = free_edges
        .iter()
        .enumerate()
        .map(|(p, &e)| (e, p + 1))
        .collect();
    let mut checks: Vec<Vec<[usize; 3]>> = vec![Vec::new(); free_edges.len() + 1];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let at = [(i, j), (i, k), (j, k)]
                    .iter()
                    .map(|e| position.get(e).copied().unwrap_or(0))
                    .max()
                    .unwrap();
                checks[at].push([i, j, k]);
            }
        }
    }
    if !checks[0].iter().all(|&t| triple_ok(&sign, t)) {
        return;
    }
    fn rec(
        depth: usize,
        free_edges: &[(usize, usize)],
        checks: &[Vec<[usize; 3]>],
        sign: &mut Vec<Vec<i8>>,
        triple_ok: &mut TripleCheck,
        on_complete: &mut dyn FnMut(&[Vec<i8>]) -> bool,
    ) -> bool {
        if depth == free_edges.len() {
            return on_complete(sign);
        }
        let (i, j) = free_edges[depth];
        for s in [1i8, -1] {
            sign[i][j] = s;
            sign[j][i] = s;
            if checks[depth + 1].iter().all(|&t| triple_ok(sign, t))
                && rec(depth + 1, free_edges, checks, sign, triple_ok, on_complete)
            {
                return true;
            }
        }
        false
    }
    rec(
        0,
        &free_edges,
        &checks,
        &mut sign,
        &mut triple_ok,
        &mut on_complete,
    );
}

/// Reconstructs a rational symmetric matrix whose minor vector is `z`
/// (after scaling to `z_[0..0] = 1`). The result is unique up to `D A D`.
pub fn reconstruct_exact(z: &MinorVector) -> Result<SymmetricMatrix> {
    let w = normalize_leading(z)?;
    let n = w.n();
    let diag: Vec<Rational> = (0..n).map(|i| w[1 << i].clone()).collect();
    let mut magnitude = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = &diag[i] * &diag[j] - &w[pair_index(n, i, j)];
            let m = linalg::rational_sqrt(&s).ok_or_else(|| Error::NonSquare {
                i: i + 1,
                j: j + 1,
                value: s.to_string(),
            })?;
            magnitude[i][j] = m.clone();
            magnitude[j][i] = m;
        }
    }
    let nonzero: Vec<Vec<bool>> = magnitude
        .iter()
        .map(|r| r.iter().map(|m| !m.is_zero()).collect())
        .collect();
    let build = |sign: &[Vec<i8>]| {
        SymmetricMatrix::from_upper(n, |i, j| {
            if i == j {
                diag[i].clone()
            } else if sign[i][j] < 0 {
                -&magnitude[i][j]
            } else {
                magnitude[i][j].clone()
            }
        })
    };
    let triple_ok = |sign: &[Vec<i8>], [i, j, k]: [usize; 3]| {
        let e = |a: usize, b: usize| -> Rational {
            if a == b {
                diag[a].clone()
            } else if sign[a][b] < 0 {
                -&magnitude[a][b]
            } else {
                magnitude[a][b].clone()
            }
        };
        let m = [
            e(i, i),
            e(i, j),
            e(i, k),
            e(j, i),
            e(j, j),
            e(j, k),
            e(k, i),
            e(k, j),
            e(k, k),
        ];
        linalg::determinant(3, &m) == w[1 << i | 1 << j | 1 << k]
    };
    let mut found = None;
    let mut first_mismatch = None;
    search_signs(n, &nonzero, triple_ok, |sign| {
        let a = build(sign);
        let mismatch = BinaryIndex::all(n)
            .filter(|i| i.cardinality() > 3)
            .find(|i| principal_minor(&a, i).expect("same n") != *w.get(i));
        match mismatch {
            None => {
                found = Some(a);
                true
            }
            Some(i) => {
                first_mismatch.get_or_insert(i.encoding());
                false
            }
        }
    });
    match (found, first_mismatch) {
        (Some(a), _) => Ok(a),
        (None, Some(encoding)) => Err(Error::VerificationFailed { encoding }),
        (None, None) => Err(Error::NoConsistentSigns),
    }
}

/// Floating-point reconstruction over the complex numbers; off-diagonal
/// entries are principal square roots of `a_ii a_jj - z_ij`, so negative
/// values give imaginary entries.
pub fn reconstruct_numeric(z: &MinorVector, tol: f64) -> Result<ComplexSymmetricMatrix> {
    let w = normalize_leading(z)?;
    let n = w.n();
    let wf: Vec<Complex64> = w
        .coords()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    let close =
        |x: Complex64, target: Complex64| (x - target).norm() <= tol * target.norm().max(1.0);
    let diag: Vec<Complex64> = (0..n).map(|i| wf[1 << i]).collect();
    let mut magnitude = vec![vec![Complex64::zero(); n]; n];
    let mut nonzero = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = diag[i] * diag[j] - wf[pair_index(n, i, j)];
            let scale = (diag[i] * diag[j])
                .norm()
                .max(wf[pair_index(n, i, j)].norm())
                .max(1.0);
            if s.norm() > tol * scale {
                let m = s.sqrt();
                magnitude[i][j] = m;
                magnitude[j][i] = m;
                nonzero[i][j] = true;
                nonzero[j][i] = true;
            }
        }
    }
    let entry = |sign: &[Vec<i8>], a: usize, b: usize| -> Complex64 {
        if a == b {
            diag[a]
        } else {
            magnitude[a][b] * f64::from(sign[a][b])
        }
    };
    let build = |sign: &[Vec<i8>]| {
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| entry(sign, i, j))
            .collect();
        ComplexSymmetricMatrix::new(n, entries).expect("symmetric by construction")
    };
    let triple_ok = |sign: &[Vec<i8>], [i, j, k]: [usize; 3]| {
        let m = vec![
            entry(sign, i, i),
            entry(sign, i, j),
            entry(sign, i, k),
            entry(sign, j, i),
            entry(sign, j, j),
            entry(sign, j, k),
            entry(sign, k, i),
            entry(sign, k, j),
            entry(sign, k, k),
        ];
        close(complex_determinant(3, m), wf[1 << i | 1 << j | 1 << k])
    };
    let mut found = None;
    let mut first_mismatch = None;
    search_signs(n, &nonzero, triple_ok, |sign| {
        let a = build(sign);
        let mismatch = BinaryIndex::all(n)
            .filter(|i| i.cardinality() > 3)
            .find(|i| !close(a.principal_minor(i), wf[i.encoding()]));
        match mismatch {
            None => {
                found = Some(a);
                true
            }
            Some(i) => {
                first_mismatch.get_or_insert(i.encoding());
                false
            }
        }
    });
    match (found, first_mismatch) {
        (Some(a), _) => Ok(a),
        (None, Some(encoding)) => Err(Error::VerificationFailed { encoding }),
        (None, None) => Err(Error::NoConsistentSigns),
    }
}

/// Multiset of agreement counts `#{I : det(B_I) = det(A_I)}` over all
/// off-diagonal sign patterns `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignFlipProfile {
    pub n: usize,
    /// Agreement count -> number of patterns attaining it.
    pub counts: BTreeMap<usize, u64>,
    pub patterns_checked: u64,
}

impl SignFlipProfile {
    pub fn distinct_counts(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }
}

pub const MAX_SIGN_FLIP_N: usize = 6;

pub fn sign_flip_profile(a: &SymmetricMatrix) -> Result<SignFlipProfile> {
    let n = a.n();
    if n > MAX_SIGN_FLIP_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_SIGN_FLIP_N,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let base = minor_vector(a, &Rational::one());
    let patterns = 1u64 << pairs.len();
    let counts = (0..patterns)
        .into_par_iter()
        .map(|pattern| {
            let mut b = a.clone();
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if pattern >> bit & 1 == 1 {
                    b.set(i, j, -a.get(i, j));
                }
            }
            let zb = minor_vector(&b, &Rational::one());
            zb.coords()
                .iter()
                .zip(base.coords())
                .filter(|(x, y)| x == y)
                .count()
        })
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, c| {
            *acc.entry(c).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(SignFlipProfile {
        n,
        counts,
        patterns_checked: patterns,
    })
}

/// Agreement counts reported for generic 4x4 and 5x5 matrices.
pub fn reference_profile(n: usize) -> Option<&'static [usize]> {
    match n {
        4 => Some(&[11, 13, 16]),
        5 => Some(&[16, 19, 20, 21, 23, 25, 32]),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct SignFlipTrial {
    pub matrix: SymmetricMatrix,
    pub profile: SignFlipProfile,
    /// Whether the distinct counts equal [`reference_profile`].
    pub matches_reference: bool,
    /// Whether `2^n - 1` agreements ever occur.
    pub forbidden_present: bool,
}

/// Profiles of up to `trials` seeded random integer matrices (entries in
/// `[-9, 9]`, off-diagonals nonzero). Stops after the first trial whose
/// profile matches the reference counts.
pub fn sign_flip_experiment(n: usize, seed: u64, trials: usize) -> Result<Vec<SignFlipTrial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..trials {
        let matrix = crate::random::integer_symmetric(&mut rng, n, 9, true);
        let profile = sign_flip_profile(&matrix)?;
        let matches_reference =
            reference_profile(n).is_some_and(|r| profile.distinct_counts() == r);
        let forbidden_present = profile.counts.contains_key(&((1usize << n) - 1));
        out.push(SignFlipTrial {
            matrix,
            profile,
            matches_reference,
            forbidden_present,
        });
        if matches_reference {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::rational;

    fn phi(a: &SymmetricMatrix) -> MinorVector {
        minor_vector(a, &rational(1))
    }

    fn tridiagonal() -> SymmetricMatrix {
        SymmetricMatrix::from_integers(&[
            &[1, 1, 0, 0],
            &[1, 2, 1, 0],
            &[0, 1, 3, 1],
            &[0, 0, 1, 4],
        ])
        .unwrap()
    }

    #[test]
    fn basis_method_examples() {
        let z = phi(&tridiagonal());
        assert_eq!(
            is_member(&z, Method::Basis).unwrap().verdict,
            Verdict::Member
        );
        let mut bumped = z.clone();
        let top = BinaryIndex::ones(4);
        bumped.set(&top, z.get(&top) + rational(1));
        let report = is_member(&bumped, Method::Basis).unwrap();
        assert_eq!(report.verdict, Verdict::NonMember);
        assert!(matches!(
            report.certificate,
            Certificate::BasisFailure { .. }
        ));
        let e0 = MinorVector::unit(BinaryIndex::zero(4));
        assert_eq!(
            is_member(&e0, Method::Basis).unwrap().verdict,
            Verdict::Member
        );
        assert_eq!(
            is_member(&MinorVector::zeros(4), Method::Basis),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn small_n_is_always_member() {
        let z = MinorVector::from_integers(2, &[1, 2, 3, 100]).unwrap();
        for m in [
            Method::Basis,
            Method::Prefilter,
            Method::Reconstruct(ReconstructMode::Exact),
        ] {
            assert_eq!(is_member(&z, m).unwrap().verdict, Verdict::Member);
        }
    }

    #[test]
    fn prefilter_examples() {
        let z3 = MinorVector::from_integers(3, &[1, 1, 1, 0, 1, 0, 0, 1]).unwrap();
        let failure = prefilter_failure(&z3).unwrap().unwrap();
        assert_eq!(failure.value, rational(5));
        assert_eq!(failure.triple, [1, 2, 3]);
        // n = 4 vector whose x_4^0 half is the bad 3-factor vector.
        let mut coords: Vec<Rational> = z3.coords().to_vec();
        coords.extend(phi(&SymmetricMatrix::identity(3)).into_coords());
        let z4 = MinorVector::new(4, coords).unwrap();
        assert!(!recursive_prefilter(&z4).unwrap());
        assert!(recursive_prefilter(&phi(&tridiagonal())).unwrap());
    }

    #[test]
    fn reconstruct_examples() {
        let d = SymmetricMatrix::diagonal(vec![rational(1), rational(2), rational(3)]);
        assert_eq!(reconstruct_exact(&phi(&d)).unwrap(), d);
        let a = SymmetricMatrix::from_integers(&[&[1, 1, 0], &[1, 2, 1], &[0, 1, 3]]).unwrap();
        let r = reconstruct_exact(&phi(&a)).unwrap();
        assert!(r.is_sign_conjugate_of(&a));
        assert_eq!(phi(&r), phi(&a));

        let a4 = tridiagonal();
        let mut z = phi(&a4);
        let top = BinaryIndex::ones(4);
        z.set(&top, z.get(&top) + rational(1));
        assert_eq!(
            reconstruct_exact(&z),
            Err(Error::VerificationFailed { encoding: 15 })
        );
    }

    #[test]
    fn reconstruct_error_paths() {
        let z = MinorVector::from_integers(2, &[0, 1, 1, 1]).unwrap();
        assert_eq!(reconstruct_exact(&z), Err(Error::ZeroLeadingCoordinate));
        // a11 a22 - z12 = 2 is not a square.
        let z = MinorVector::from_integers(2, &[1, 1, 3, 1]).unwrap();
        assert!(matches!(
            reconstruct_exact(&z),
            Err(Error::NonSquare { i: 1, j: 2, .. })
        ));
        let c = reconstruct_numeric(&z, 1e-9).unwrap();
        assert!((c.get(0, 1) * c.get(0, 1) - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn numeric_reconstruction_allows_imaginary_entries() {
        // z_12 = a11 a22 + 4 means a12^2 = -4.
        let z = MinorVector::from_integers(3, &[1, 1, 2, 6, 3, 3, 6, 18]).unwrap();
        let c = reconstruct_numeric(&z, 1e-9).unwrap();
        let minors = c.minor_vector();
        for (m, t) in minors.iter().zip(z.coords()) {
            assert!((m - Complex64::new(t.to_f64().unwrap(), 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn chart_move_for_zero_leading_coordinate() {
        let a = tridiagonal();
        let z = minor_vector(&a, &rational(0));
        let report = Checker::new(3)
            .check(&z, Method::Reconstruct(ReconstructMode::Exact))
            .unwrap();
        assert_eq!(report.verdict, Verdict::Member);
        assert_eq!(report.chart_moves, 1);
        let Certificate::Matrix {
            matrix: ReconstructedMatrix::Exact(m),
            scale,
            chart,
        } = report.certificate
        else {
            panic!("expected a matrix certificate");
        };
        let rebuilt = chart.act_point_inverse(&phi(&m).scaled(&scale)).unwrap();
        assert_eq!(rebuilt, z);
    }

    #[test]
    fn sign_flip_diagonal_and_limits() {
        let d = SymmetricMatrix::diagonal(vec![rational(1), rational(2), rational(3), rational(4)]);
        let p = sign_flip_profile(&d).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(16, 64)]));
        assert_eq!(p.patterns_checked, 64);
        assert!(sign_flip_profile(&SymmetricMatrix::identity(7)).is_err());
    }
}
