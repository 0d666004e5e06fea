//! Text, JSON and CSV renderings. Exponents are reduced fractions and big
//! integers are decimal strings, so JSON output parses back losslessly.

use std::fmt::Write as _;

use num_bigint::BigInt;
use qtheta_core::verify::{Mismatch, VerificationReport};
use qtheta_core::{QExponent, ZetaSeries};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchJson {
    pub q_exp: String,
    pub zeta_exp: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub identity: String,
    pub n: u32,
    pub order: String,
    pub matched: bool,
    pub first_mismatch: Option<MismatchJson>,
    pub compared_terms: usize,
    pub elapsed_ms: u64,
}

impl From<&Mismatch> for MismatchJson {
    fn from(m: &Mismatch) -> Self {
        MismatchJson {
            q_exp: m.q_exp.to_string(),
            zeta_exp: m.zeta_exp,
            lhs: m.lhs.to_string(),
            rhs: m.rhs.to_string(),
        }
    }
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            identity: r.identity.to_string(),
            n: r.n,
            order: r.order.to_string(),
            matched: r.matched,
            first_mismatch: r.first_mismatch.as_ref().map(MismatchJson::from),
            compared_terms: r.compared_terms,
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub q_exp: String,
    pub zeta_exp: i64,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauJson {
    pub m: u32,
    pub tau: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauOutput {
    pub values: Vec<TauJson>,
    pub report: ReportJson,
}

pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&ReportJson::from(report)).expect("plain data serializes"),
        Format::Text => {
            let mut s = format!(
                "{} n={} order={} {} terms={} elapsed={}ms",
                report.identity,
                report.n,
                report.order,
                if report.matched { "matched" } else { "MISMATCH" },
                report.compared_terms,
                report.elapsed.as_millis()
            );
            if let Some(m) = &report.first_mismatch {
                let _ = write!(
                    s,
                    " first at q^({}) zeta^{}: lhs={} rhs={}",
                    m.q_exp, m.zeta_exp, m.lhs, m.rhs
                );
            }
            s
        }
    }
}

/// Terms sorted by `(q exponent, zeta exponent)`.
fn sorted_terms(series: &ZetaSeries) -> Vec<(QExponent, i64, &BigInt)> {
    let mut terms: Vec<_> = series.terms().collect();
    terms.sort_by_key(|a| (a.0, a.1));
    terms
}

pub fn emit_coeffs(series: &ZetaSeries, format: Format) -> String {
    let terms = sorted_terms(series);
    match format {
        Format::Json => {
            let rows: Vec<TermJson> = terms
                .into_iter()
                .map(|(q, x, c)| TermJson {
                    q_exp: q.to_string(),
                    zeta_exp: x,
                    coeff: c.to_string(),
                })
                .collect();
            serde_json::to_string(&rows).expect("plain data serializes")
        }
        Format::Text => {
            let mut s = String::new();
            for (q, x, c) in terms {
                let _ = writeln!(s, "q^({q}) zeta^{x}  {c}");
            }
            s
        }
    }
}

pub fn emit_tau(values: &[(u32, BigInt)], report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let out = TauOutput {
                values: values
                    .iter()
                    .map(|(m, t)| TauJson {
                        m: *m,
                        tau: t.to_string(),
                    })
                    .collect(),
                report: report.into(),
            };
            serde_json::to_string(&out).expect("plain data serializes")
        }
        Format::Text => {
            let mut s = String::new();
            for (m, t) in values {
                let _ = writeln!(s, "{m} {t}");
            }
            s.push_str(&emit_report(report, Format::Text));
            s.push('\n');
            s
        }
    }
}
