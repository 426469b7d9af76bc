use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use typforge::monoids::{CertifiedClaim, MonoidPresentation, PresentationSpec};

/// A claim together with the index of the presentation it is about.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub context: String,
    pub presentation: usize,
    pub claim: CertifiedClaim,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub command: Vec<String>,
    pub input_digest: String,
    /// `decided` or `unknown`.
    pub status: String,
    pub summary: String,
    pub result: Value,
    pub presentations: Vec<PresentationSpec>,
    pub certificates: Vec<CertificateEntry>,
    /// Hash of every field above.
    pub report_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Result of one command before it is wrapped in a report.
#[derive(Default)]
pub struct Outcome {
    pub input: Value,
    pub summary: String,
    pub result: Value,
    pub presentations: Vec<PresentationSpec>,
    pub certificates: Vec<CertificateEntry>,
    pub undecided: bool,
    pub rejected: bool,
    pub dot: Option<String>,
}

impl Outcome {
    pub fn new(input: Value, summary: impl Into<String>, result: impl Serialize) -> Self {
        Outcome {
            input,
            summary: summary.into(),
            result: serde_json::to_value(result).expect("results serialize"),
            ..Outcome::default()
        }
    }

    pub fn presentation(&mut self, p: &MonoidPresentation) -> usize {
        let spec = p.to_spec();
        if let Some(i) = self.presentations.iter().position(|q| *q == spec) {
            return i;
        }
        self.presentations.push(spec);
        self.presentations.len() - 1
    }

    pub fn certify(&mut self, p: &MonoidPresentation, context: impl Into<String>, claim: Option<CertifiedClaim>) {
        if let Some(claim) = claim {
            let presentation = self.presentation(p);
            self.certificates.push(CertificateEntry { context: context.into(), presentation, claim });
        }
    }

    pub fn unknown(mut self, undecided: bool) -> Self {
        self.undecided |= undecided;
        self
    }

    pub fn exit_code(&self) -> u8 {
        if self.rejected {
            1
        } else if self.undecided {
            3
        } else {
            0
        }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn into_report(self, command: Vec<String>, timing_ms: Option<u64>) -> RunReport {
        let input_digest = sha256_hex(&serde_json::to_vec(&self.input).expect("input serializes"));
        let mut report = RunReport {
            tool: format!("typforge {}", env!("CARGO_PKG_VERSION")),
            command,
            input_digest,
            status: if self.undecided { "unknown" } else { "decided" }.into(),
            summary: self.summary,
            result: self.result,
            presentations: self.presentations,
            certificates: self.certificates,
            report_digest: String::new(),
            timing_ms: None,
        };
        report.report_digest = sha256_hex(&serde_json::to_vec(&report).expect("report serializes"));
        report.timing_ms = timing_ms;
        report
    }
}
