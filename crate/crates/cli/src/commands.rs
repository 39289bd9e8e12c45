//! Subcommand bodies. Each returns the output document, a one-line summary
//! and the process exit code.

use anyhow::{bail, Context};
use pminor_core::hyperdet::hd_basis;
use pminor_core::membership::{
    reconstruct_exact, reconstruct_numeric, reference_profile, sign_flip_experiment, Certificate,
    Checker, Method, ReconstructMode, Verdict,
};
use pminor_core::minor_map::minor_vector;
use pminor_core::rep::{
    decompose_symmetric_power, identify_isotypic, invariant_dim, lower_to_lowest, Partition,
};
use pminor_core::{Error, Rational};

use crate::document::{
    AgreementCount, BasisPayload, CertificatePayload, ChartPayload, Document, Kind, MatrixPayload,
    MinorsPayload, PolynomialPayload, ReportPayload, SignFlipTrialPayload, SummandPayload, Q,
};

pub const EXIT_MEMBER: u8 = 0;
pub const EXIT_NON_MEMBER: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INDETERMINATE: u8 = 3;

#[derive(Debug)]
pub struct Output {
    pub document: Document,
    pub summary: String,
    pub exit: u8,
}

fn ok(document: Document, summary: String) -> Output {
    Output {
        document,
        summary,
        exit: EXIT_MEMBER,
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Member => "member",
        Verdict::NonMember => "non-member",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Member => EXIT_MEMBER,
        Verdict::NonMember => EXIT_NON_MEMBER,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

fn mode_name(mode: ReconstructMode) -> String {
    match mode {
        ReconstructMode::Exact => "exact".into(),
        ReconstructMode::Numeric { tol } => format!("numeric (tol {tol:e})"),
    }
}

fn partitions_payload(ps: &[Partition]) -> Vec<Vec<usize>> {
    ps.iter().map(|p| p.parts().to_vec()).collect()
}

pub fn minors(matrix: &Document, t: &Rational) -> anyhow::Result<Output> {
    let a = matrix.payload::<MatrixPayload>(Kind::Matrix)?.to_matrix()?;
    let z = minor_vector(&a, t);
    let summary = format!("n = {}, coordinates = {}", z.n(), z.len());
    Ok(ok(
        Document::new(Kind::Minors, &MinorsPayload::from_vector(&z))?,
        summary,
    ))
}

pub fn check(minors: &Document, method: Method, seed: u64) -> anyhow::Result<Output> {
    let z = minors.payload::<MinorsPayload>(Kind::Minors)?.to_vector()?;
    let checker = Checker::new(seed);
    let report = checker.check(&z, method)?;
    let certificate = match &report.certificate {
        Certificate::SmallN => CertificatePayload::SmallN,
        Certificate::BasisFailure { index, value } => {
            let entry = &checker.basis(z.n())?.entries[*index];
            CertificatePayload::BasisFailure {
                index: *index,
                triple: entry.triple,
                exponents: entry.exponents.clone(),
                value: Q(value.clone()),
            }
        }
        Certificate::BasisVanishes { count } => CertificatePayload::BasisVanishes { count: *count },
        Certificate::Matrix {
            matrix,
            scale,
            chart,
        } => CertificatePayload::Matrix {
            matrix: MatrixPayload::from_reconstructed(matrix),
            scale: Q(scale.clone()),
            chart: ChartPayload::from_element(chart),
        },
        Certificate::NoMatrix { reason, chart } => CertificatePayload::NoMatrix {
            reason: reason.to_string(),
            chart: ChartPayload::from_element(chart),
        },
        Certificate::Prefilter(f) => CertificatePayload::Prefilter {
            triple: f.triple,
            fixed: f.fixed.iter().map(|&(k, b)| [k, b as usize]).collect(),
            value: Q(f.value.clone()),
        },
        Certificate::Undecided { reason } => CertificatePayload::Undecided {
            reason: reason.clone(),
        },
    };
    let mode = match method {
        Method::Reconstruct(m) => Some(mode_name(m)),
        _ => None,
    };
    let detail = match &certificate {
        CertificatePayload::BasisFailure { index, value, .. } => {
            format!(" (basis entry #{index} evaluates to {value})")
        }
        CertificatePayload::Prefilter { triple, value, .. } => {
            format!(" (slice on {triple:?} has hyperdeterminant {value})")
        }
        CertificatePayload::NoMatrix { reason, .. } | CertificatePayload::Undecided { reason } => {
            format!(" ({reason})")
        }
        _ => String::new(),
    };
    let payload = ReportPayload::Check {
        n: z.n(),
        method: method.name().into(),
        mode,
        verdict: verdict_name(report.verdict).into(),
        chart_moves: report.chart_moves,
        seed,
        certificate,
    };
    Ok(Output {
        document: Document::new(Kind::Report, &payload)?,
        summary: format!("verdict: {}{detail}", verdict_name(report.verdict)),
        exit: exit_code(report.verdict),
    })
}

pub fn reconstruct(minors: &Document, mode: ReconstructMode) -> anyhow::Result<Output> {
    let z = minors.payload::<MinorsPayload>(Kind::Minors)?.to_vector()?;
    let result = match mode {
        ReconstructMode::Exact => reconstruct_exact(&z).map(|a| MatrixPayload::from_matrix(&a)),
        ReconstructMode::Numeric { tol } => {
            reconstruct_numeric(&z, tol).map(|a| MatrixPayload::from_complex(&a))
        }
    };
    match result {
        Ok(matrix) => Ok(ok(
            Document::new(Kind::Matrix, &matrix)?,
            format!("reconstructed a {}x{} matrix", z.n(), z.n()),
        )),
        Err(e @ Error::NonSquare { .. }) => {
            let payload = ReportPayload::Check {
                n: z.n(),
                method: "reconstruct".into(),
                mode: Some(mode_name(mode)),
                verdict: "indeterminate".into(),
                chart_moves: 0,
                seed: 0,
                certificate: CertificatePayload::Undecided {
                    reason: format!("{e}; try --mode numeric"),
                },
            };
            Ok(Output {
                document: Document::new(Kind::Report, &payload)?,
                summary: format!("indeterminate: {e}"),
                exit: EXIT_INDETERMINATE,
            })
        }
        Err(e @ (Error::NoConsistentSigns | Error::VerificationFailed { .. })) => {
            let payload = ReportPayload::Check {
                n: z.n(),
                method: "reconstruct".into(),
                mode: Some(mode_name(mode)),
                verdict: "non-member".into(),
                chart_moves: 0,
                seed: 0,
                certificate: CertificatePayload::NoMatrix {
                    reason: e.to_string(),
                    chart: ChartPayload::from_element(&pminor_core::GroupElement::identity(z.n())),
                },
            };
            Ok(Output {
                document: Document::new(Kind::Report, &payload)?,
                summary: format!("non-member: {e}"),
                exit: EXIT_NON_MEMBER,
            })
        }
        Err(Error::ZeroLeadingCoordinate) => {
            bail!("the [0,...,0] coordinate is zero; `check --method reconstruct` moves to another chart first")
        }
        Err(e) => Err(e.into()),
    }
}

pub fn basis(n: usize) -> anyhow::Result<Output> {
    let basis = hd_basis(n)?;
    let payload = BasisPayload::from_basis(&basis);
    let summary = format!(
        "n = {n}, entries = {}, digest = {}",
        payload.count, payload.digest
    );
    Ok(ok(Document::new(Kind::Basis, &payload)?, summary))
}

pub fn parse_partitions(text: &str) -> anyhow::Result<Vec<Partition>> {
    text.split(';')
        .map(|s| {
            s.trim()
                .parse::<Partition>()
                .with_context(|| format!("bad partition {s:?}"))
        })
        .collect()
}

pub fn multiplicity(text: &str) -> anyhow::Result<Output> {
    let partitions = parse_partitions(text)?;
    let multiplicity = invariant_dim(&partitions)?;
    let payload = ReportPayload::Multiplicity {
        partitions: partitions_payload(&partitions),
        multiplicity,
    };
    Ok(ok(
        Document::new(Kind::Report, &payload)?,
        format!("multiplicity = {multiplicity}"),
    ))
}

pub fn decompose(d: usize, n: usize) -> anyhow::Result<Output> {
    let summands: Vec<SummandPayload> = decompose_symmetric_power(d, n)
        .into_iter()
        .map(|s| SummandPayload {
            partitions: partitions_payload(&s.partitions),
            multiplicity: s.multiplicity,
        })
        .collect();
    let summary = summands
        .iter()
        .map(|s| {
            let shapes: Vec<String> = s.partitions.iter().map(|p| format!("{p:?}")).collect();
            format!("{} x {}", s.multiplicity, shapes.join(" (x) "))
        })
        .collect::<Vec<_>>()
        .join("\n");
    let payload = ReportPayload::Decompose { d, n, summands };
    Ok(ok(Document::new(Kind::Report, &payload)?, summary))
}

pub fn lower(polynomial: &Document) -> anyhow::Result<Output> {
    let p = polynomial
        .payload::<PolynomialPayload>(Kind::Polynomial)?
        .to_polynomial()?;
    let (low, weight) = lower_to_lowest(&p)?;
    let degree = low.degree();
    let isotypic = if low.is_homogeneous(degree) {
        identify_isotypic(degree, &weight.negated())
            .ok()
            .map(|id| SummandPayload {
                partitions: partitions_payload(&id.partitions),
                multiplicity: id.multiplicity,
            })
    } else {
        None
    };
    let summary = format!("lowest weight {weight}");
    let payload = ReportPayload::LowerToLowest {
        polynomial: PolynomialPayload::from_polynomial(&low),
        weight: weight.components().to_vec(),
        isotypic,
    };
    Ok(ok(Document::new(Kind::Report, &payload)?, summary))
}

pub fn sign_flip(n: usize, seed: u64, trials: usize) -> anyhow::Result<Output> {
    let results = sign_flip_experiment(n, seed, trials)?;
    let forbidden_count = (1usize << n) - 1;
    let mut lines = Vec::new();
    let trials: Vec<SignFlipTrialPayload> = results
        .iter()
        .enumerate()
        .map(|(k, t)| {
            lines.push(format!(
                "trial {}: counts {:?}; {forbidden_count} {}; reference {}",
                k + 1,
                t.profile.counts,
                if t.forbidden_present {
                    "present"
                } else {
                    "absent"
                },
                if t.matches_reference {
                    "matched"
                } else {
                    "not matched"
                },
            ));
            SignFlipTrialPayload {
                matrix: MatrixPayload::from_matrix(&t.matrix),
                counts: t
                    .profile
                    .counts
                    .iter()
                    .map(|(&agreements, &patterns)| AgreementCount {
                        agreements,
                        patterns,
                    })
                    .collect(),
                patterns_checked: t.profile.patterns_checked,
                matches_reference: t.matches_reference,
                forbidden_count,
                forbidden_present: t.forbidden_present,
            }
        })
        .collect();
    let payload = ReportPayload::SignFlip {
        n,
        seed,
        reference: reference_profile(n).map(<[usize]>::to_vec),
        matched: trials.iter().any(|t| t.matches_reference),
        trials,
    };
    Ok(ok(Document::new(Kind::Report, &payload)?, lines.join("\n")))
}
