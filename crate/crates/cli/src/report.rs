//! JSON shapes for verification reports and compile provenance.

use hangnail_core::compile::Provenance;
use hangnail_core::verify::{VerifyMode, VerifyReport};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct CounterexampleDto {
    /// Present nails, 1-based ascending.
    pub state: Vec<u32>,
    pub expected_hang: bool,
    pub got_nontrivial: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReportDto {
    pub verified: bool,
    pub verdict: String,
    pub mode: &'static str,
    pub states_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub counterexamples: Vec<CounterexampleDto>,
    pub counterexamples_total: u64,
    pub written_length: u64,
    pub reduced_length: u64,
}

impl From<&VerifyReport> for VerifyReportDto {
    fn from(r: &VerifyReport) -> Self {
        let (mode, seed) = match r.mode {
            VerifyMode::Exhaustive => ("exhaustive", None),
            VerifyMode::Sampled { seed, .. } => ("sampled", Some(seed)),
        };
        let verdict = match (r.mode, r.clean()) {
            (VerifyMode::Exhaustive, true) => "verified".to_string(),
            (VerifyMode::Sampled { trials, .. }, true) => {
                format!("no counterexample found in {trials} trials")
            }
            (_, false) => "counterexample found".to_string(),
        };
        VerifyReportDto {
            verified: r.verified(),
            verdict,
            mode,
            states_checked: r.states_checked,
            seed,
            counterexamples: r
                .counterexamples
                .iter()
                .map(|c| CounterexampleDto {
                    state: c.state.present().collect(),
                    expected_hang: c.expected_hang,
                    got_nontrivial: c.got_nontrivial,
                })
                .collect(),
            counterexamples_total: r.counterexamples_total,
            written_length: r.written_length,
            reduced_length: r.reduced_length,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ProvenanceDto {
    pub method: &'static str,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u32>,
    pub written_length: u64,
    pub reduced_length: u64,
}

impl ProvenanceDto {
    pub fn new(p: &Provenance, written_length: u64, reduced_length: u64) -> Self {
        ProvenanceDto {
            method: p.method.as_str(),
            n: p.n,
            k: p.k,
            depth: p.depth,
            seed: p.seed,
            attempts: p.attempts,
            written_length,
            reduced_length,
        }
    }
}
