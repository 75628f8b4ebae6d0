//! Decision pipelines for |P:P'| = p² and |P:Z(P)| = p² on character tables.

mod center;
mod commutator;

use std::fmt;

use serde::Serialize;

pub use center::{detect_center_index_p2, detect_normal_p_abelian};
pub use commutator::{almost_simple_commutator, compute_k, detect_commutator_index_p2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Answer::Yes => Some(true),
            Answer::No => Some(false),
            Answer::Unknown => None,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "Yes",
            Answer::No => "No",
            Answer::Unknown => "Unknown",
        })
    }
}

/// The pipeline branch that produced a verdict.
///
/// Codes marked *unknown* are the only ones that accompany [`Answer::Unknown`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReasonCode {
    /// v_p(|G|) < 2.
    SylowTooSmall,
    /// The principal block has only p'-degree characters.
    AbelianSylow,
    /// A non almost simple reduced group, decided by centralizer orders of p-elements.
    CentralizerCriterion,
    /// Some p-element has |C_G(x)|_p = p², which forces |P:P'| = p² in any group.
    CentralizerCertificate,
    /// Sylow subgroup inside the simple socle; decided from socle data.
    SocleLookup,
    /// Sylow subgroup not inside the socle; decided from extension data.
    ExtensionLookup,
    /// Socle PSL or PSU with p dividing dimension, field degree and q − ε.
    LinearGroupCriterion,
    /// Socle D4, E6 or ²E6 at p = 3: degree pattern rules out |P:P'| = 9.
    LieDegreePattern,
    CaseA,
    CaseB,
    CaseC,
    CaseD,
    /// Every case pattern demonstrably fails.
    NoCaseMatches,
    /// *unknown*: no data for the socle or the extension.
    SocleDataMissing,
    /// *unknown*: the D4/E6 degree pattern leaves the Sylow type open.
    LieDegreePatternUntested,
    /// *unknown*: the layer of the group cannot be pinned down from the lattice.
    LayerAmbiguous,
    /// *unknown*: a minimal normal subgroup could not be typed.
    RecognitionFailed,
    /// *unknown*: the table is inconsistent with a required computation.
    TableInconsistent,
    /// *unknown*: p is not a prime.
    InvalidPrime,
}

impl ReasonCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReasonCode::SylowTooSmall => "SYLOW_TOO_SMALL",
            ReasonCode::AbelianSylow => "ABELIAN_SYLOW",
            ReasonCode::CentralizerCriterion => "CENTRALIZER_CRITERION",
            ReasonCode::CentralizerCertificate => "CENTRALIZER_CERTIFICATE",
            ReasonCode::SocleLookup => "SOCLE_LOOKUP",
            ReasonCode::ExtensionLookup => "EXTENSION_LOOKUP",
            ReasonCode::LinearGroupCriterion => "LINEAR_GROUP_CRITERION",
            ReasonCode::LieDegreePattern => "LIE_DEGREE_PATTERN",
            ReasonCode::CaseA => "CASE_A",
            ReasonCode::CaseB => "CASE_B",
            ReasonCode::CaseC => "CASE_C",
            ReasonCode::CaseD => "CASE_D",
            ReasonCode::NoCaseMatches => "NO_CASE_MATCHES",
            ReasonCode::SocleDataMissing => "SOCLE_DATA_MISSING",
            ReasonCode::LieDegreePatternUntested => "LIE_DEGREE_PATTERN_UNTESTED",
            ReasonCode::LayerAmbiguous => "LAYER_AMBIGUOUS",
            ReasonCode::RecognitionFailed => "RECOGNITION_FAILED",
            ReasonCode::TableInconsistent => "TABLE_INCONSISTENT",
            ReasonCode::InvalidPrime => "INVALID_PRIME",
        }
    }

    pub fn is_unknown_code(&self) -> bool {
        matches!(
            self,
            ReasonCode::SocleDataMissing
                | ReasonCode::LieDegreePatternUntested
                | ReasonCode::LayerAmbiguous
                | ReasonCode::RecognitionFailed
                | ReasonCode::TableInconsistent
                | ReasonCode::InvalidPrime
        )
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    /// Quotient by the largest normal p'-subgroup.
    OpPrime,
    /// Quotient by the intersection of the kernels of the p'-degree characters.
    PPrimeKernels,
}

/// One quotient step: the order of the subgroup factored out and of the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub kind: ReductionKind,
    pub removed: u64,
    pub result_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub code: ReasonCode,
    pub trace: Vec<String>,
    pub reductions: Vec<Reduction>,
}

impl Verdict {
    pub fn decided(answer: bool, code: ReasonCode, trace: Vec<String>) -> Self {
        debug_assert!(!code.is_unknown_code());
        Verdict { answer: Answer::from_bool(answer), code, trace, reductions: Vec::new() }
    }

    pub fn unknown(code: ReasonCode, trace: Vec<String>) -> Self {
        debug_assert!(code.is_unknown_code());
        Verdict { answer: Answer::Unknown, code, trace, reductions: Vec::new() }
    }

    pub fn is_unknown(&self) -> bool {
        self.answer == Answer::Unknown
    }

    fn with_history(mut self, mut trace: Vec<String>, reductions: Vec<Reduction>) -> Self {
        trace.append(&mut self.trace);
        self.trace = trace;
        self.reductions = reductions;
        self
    }
}
