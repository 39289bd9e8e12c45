//! Versioned JSON documents.
//!
//! Every file is `{"kind": ..., "schema_version": 1, "payload": {...}}`.
//! Rationals are written as `"p/q"` in lowest terms with `q > 0`; on input a
//! bare integer (string or number) is also accepted.

use std::fmt;
use std::path::Path;

use anyhow::{bail, Context};
use num_traits::{One, Zero};
use pminor_core::hyperdet::{BasisEntry, ModuleBasis};
use pminor_core::membership::{ComplexSymmetricMatrix, ReconstructedMatrix};
use pminor_core::{
    GroupElement, MinorVector, Monomial, Rational, SymmetricMatrix, TensorPolynomial, WeightVector,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const MINOR_ORDER: &str = "lsb-factor-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Matrix,
    Minors,
    Polynomial,
    Basis,
    Report,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub kind: Kind,
    pub schema_version: u32,
    pub payload: serde_json::Value,
}

impl Document {
    pub fn new<T: Serialize>(kind: Kind, payload: &T) -> anyhow::Result<Self> {
        Ok(Self {
            kind,
            schema_version: SCHEMA_VERSION,
            payload: serde_json::to_value(payload)?,
        })
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let doc: Document = serde_json::from_str(text).context("malformed document")?;
        if doc.schema_version != SCHEMA_VERSION {
            bail!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            );
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn payload<T: DeserializeOwned>(&self, expected: Kind) -> anyhow::Result<T> {
        if self.kind != expected {
            bail!("expected a {expected} document, found {}", self.kind);
        }
        serde_json::from_value(self.payload.clone())
            .with_context(|| format!("malformed {expected} payload"))
    }
}

/// A rational number in `"p/q"` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Q(Rational::from_integer(v.into()))),
            Raw::Text(s) => parse_rational(&s).map(Q).map_err(serde::de::Error::custom),
        }
    }
}

pub fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let s = s.trim();
    let value: Rational = s
        .parse()
        .map_err(|_| anyhow::anyhow!("not a rational number: {s:?}"))?;
    Ok(value)
}

fn qs(values: &[Rational]) -> Vec<Q> {
    values.iter().cloned().map(Q).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorsPayload {
    pub n: usize,
    pub order: String,
    pub coords: Vec<Q>,
}

impl MinorsPayload {
    pub fn from_vector(z: &MinorVector) -> Self {
        Self {
            n: z.n(),
            order: MINOR_ORDER.into(),
            coords: qs(z.coords()),
        }
    }

    pub fn to_vector(&self) -> anyhow::Result<MinorVector> {
        if self.order != MINOR_ORDER {
            bail!(
                "unsupported coordinate order {:?} (expected {MINOR_ORDER:?})",
                self.order
            );
        }
        Ok(MinorVector::new(
            self.n,
            self.coords.iter().map(|q| q.0.clone()).collect(),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "kebab-case")]
pub enum MatrixPayload {
    Rational {
        n: usize,
        rows: Vec<Vec<Q>>,
    },
    /// Entries as `[re, im]` pairs.
    Complex {
        n: usize,
        rows: Vec<Vec<[f64; 2]>>,
    },
}

impl MatrixPayload {
    pub fn from_matrix(a: &SymmetricMatrix) -> Self {
        MatrixPayload::Rational {
            n: a.n(),
            rows: a.rows().iter().map(|r| qs(r)).collect(),
        }
    }

    pub fn from_complex(a: &ComplexSymmetricMatrix) -> Self {
        let n = a.n();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| [a.get(i, j).re, a.get(i, j).im]).collect())
            .collect();
        MatrixPayload::Complex { n, rows }
    }

    pub fn from_reconstructed(m: &ReconstructedMatrix) -> Self {
        match m {
            ReconstructedMatrix::Exact(a) => Self::from_matrix(a),
            ReconstructedMatrix::Numeric(a) => Self::from_complex(a),
        }
    }

    pub fn to_matrix(&self) -> anyhow::Result<SymmetricMatrix> {
        match self {
            MatrixPayload::Rational { n, rows } => {
                if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
                    bail!("matrix must have {n} rows of {n} entries");
                }
                Ok(SymmetricMatrix::new(
                    rows.iter()
                        .map(|r| r.iter().map(|q| q.0.clone()).collect())
                        .collect(),
                )?)
            }
            MatrixPayload::Complex { .. } => bail!("expected a rational matrix"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermPayload {
    pub coefficient: Q,
    /// `[encoding, exponent]` pairs.
    pub monomial: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialPayload {
    pub n: usize,
    pub order: String,
    pub terms: Vec<TermPayload>,
    pub constant: Q,
}

impl PolynomialPayload {
    pub fn from_polynomial(p: &TensorPolynomial) -> Self {
        Self {
            n: p.n(),
            order: MINOR_ORDER.into(),
            terms: p
                .terms()
                .map(|(m, c)| TermPayload {
                    coefficient: Q(c.clone()),
                    monomial: m.exponents().map(|(v, e)| [v, e]).collect(),
                })
                .collect(),
            constant: Q(p.constant_term().clone()),
        }
    }

    pub fn to_polynomial(&self) -> anyhow::Result<TensorPolynomial> {
        if self.order != MINOR_ORDER {
            bail!("unsupported variable order {:?}", self.order);
        }
        if self.n > pminor_core::index::MAX_FACTORS {
            bail!("n = {} is too large", self.n);
        }
        for t in &self.terms {
            if let Some([v, _]) = t.monomial.iter().find(|[v, _]| *v >= 1 << self.n) {
                bail!("variable {v} out of range for n = {}", self.n);
            }
        }
        let p = TensorPolynomial::from_terms(
            self.n,
            self.terms.iter().map(|t| {
                let pairs: Vec<(usize, usize)> = t.monomial.iter().map(|&[v, e]| (v, e)).collect();
                (t.coefficient.0.clone(), Monomial::from_exponents(&pairs))
            }),
        );
        Ok(&p + &TensorPolynomial::constant(self.n, self.constant.0.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisEntryPayload {
    pub triple: [usize; 3],
    pub exponents: Vec<usize>,
    pub weight: Vec<i64>,
    pub polynomial: PolynomialPayload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisPayload {
    pub n: usize,
    pub count: usize,
    /// SHA-256 of the compact JSON encoding of `entries`.
    pub digest: String,
    pub entries: Vec<BasisEntryPayload>,
}

pub fn entries_digest(entries: &[BasisEntryPayload]) -> String {
    let bytes = serde_json::to_vec(entries).expect("entries serialize");
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl BasisPayload {
    pub fn from_basis(basis: &ModuleBasis) -> Self {
        let entries: Vec<BasisEntryPayload> = basis
            .entries
            .iter()
            .map(|e| BasisEntryPayload {
                triple: e.triple,
                exponents: e.exponents.clone(),
                weight: e.weight.components().to_vec(),
                polynomial: PolynomialPayload::from_polynomial(&e.polynomial),
            })
            .collect();
        Self {
            n: basis.n,
            count: entries.len(),
            digest: entries_digest(&entries),
            entries,
        }
    }

    pub fn to_basis(&self) -> anyhow::Result<ModuleBasis> {
        if self.count != self.entries.len() {
            bail!(
                "count {} does not match {} entries",
                self.count,
                self.entries.len()
            );
        }
        let digest = entries_digest(&self.entries);
        if digest != self.digest {
            bail!(
                "digest mismatch: file says {}, content hashes to {digest}",
                self.digest
            );
        }
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Ok(BasisEntry {
                    triple: e.triple,
                    exponents: e.exponents.clone(),
                    polynomial: e.polynomial.to_polynomial()?,
                    weight: WeightVector(e.weight.clone()),
                })
            })
            .collect::<anyhow::Result<_>>()?;
        Ok(ModuleBasis { n: self.n, entries })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartPayload {
    pub matrices: Vec<[[Q; 2]; 2]>,
    pub permutation: Vec<usize>,
}

impl ChartPayload {
    pub fn from_element(g: &GroupElement) -> Self {
        Self {
            matrices: g
                .factor_matrices()
                .iter()
                .map(|m| {
                    [
                        [Q(m[0][0].clone()), Q(m[0][1].clone())],
                        [Q(m[1][0].clone()), Q(m[1][1].clone())],
                    ]
                })
                .collect(),
            permutation: g.permutation().to_vec(),
        }
    }

    pub fn to_element(&self) -> anyhow::Result<GroupElement> {
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                [
                    [m[0][0].0.clone(), m[0][1].0.clone()],
                    [m[1][0].0.clone(), m[1][1].0.clone()],
                ]
            })
            .collect();
        Ok(GroupElement::new(matrices, self.permutation.clone())?)
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(k, &p)| k == p)
            && self.matrices.iter().all(|m| {
                m[0][0].0.is_one()
                    && m[1][1].0.is_one()
                    && m[0][1].0.is_zero()
                    && m[1][0].0.is_zero()
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CertificatePayload {
    SmallN,
    BasisFailure {
        index: usize,
        triple: [usize; 3],
        exponents: Vec<usize>,
        value: Q,
    },
    BasisVanishes {
        count: usize,
    },
    Matrix {
        matrix: MatrixPayload,
        scale: Q,
        chart: ChartPayload,
    },
    NoMatrix {
        reason: String,
        chart: ChartPayload,
    },
    Prefilter {
        triple: [usize; 3],
        fixed: Vec<[usize; 2]>,
        value: Q,
    },
    Undecided {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummandPayload {
    pub partitions: Vec<Vec<usize>>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementCount {
    pub agreements: usize,
    pub patterns: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignFlipTrialPayload {
    pub matrix: MatrixPayload,
    /// Increasing in `agreements`.
    pub counts: Vec<AgreementCount>,
    pub patterns_checked: u64,
    pub matches_reference: bool,
    pub forbidden_count: usize,
    pub forbidden_present: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum ReportPayload {
    Check {
        n: usize,
        method: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mode: Option<String>,
        verdict: String,
        chart_moves: usize,
        seed: u64,
        certificate: CertificatePayload,
    },
    Multiplicity {
        partitions: Vec<Vec<usize>>,
        multiplicity: u64,
    },
    Decompose {
        d: usize,
        n: usize,
        summands: Vec<SummandPayload>,
    },
    LowerToLowest {
        polynomial: PolynomialPayload,
        weight: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        isotypic: Option<SummandPayload>,
    },
    SignFlip {
        n: usize,
        seed: u64,
        reference: Option<Vec<usize>>,
        matched: bool,
        trials: Vec<SignFlipTrialPayload>,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational(" 3/6 ").unwrap(),
            Rational::new(1.into(), 2.into())
        );
        assert_eq!(
            parse_rational("-4").unwrap(),
            Rational::from_integer((-4).into())
        );
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("2/0").is_err());
    }

    #[test]
    fn kind_names() {
        assert_eq!(Kind::Minors.to_string(), "minors");
        assert_eq!(
            serde_json::from_str::<Kind>("\"basis\"").unwrap(),
            Kind::Basis
        );
    }

    #[test]
    fn minors_order_marker_is_required() {
        let p = MinorsPayload {
            n: 1,
            order: "msb".into(),
            coords: vec![Q(Rational::one()), Q(Rational::zero())],
        };
        assert!(p.to_vector().is_err());
    }
}
