//! Versioned report schema shared by the JSON and text renderers.

use dsp_core::{AbelianInvariants, DerivedStep};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// An integer written as a JSON number when it fits in `u64`, as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BigNumber {
    Small(u64),
    Large(String),
}

impl From<&BigInt> for BigNumber {
    fn from(n: &BigInt) -> Self {
        match n.to_u64() {
            Some(v) => BigNumber::Small(v),
            None => BigNumber::Large(n.to_string()),
        }
    }
}

impl From<usize> for BigNumber {
    fn from(n: usize) -> Self {
        BigNumber::Small(n as u64)
    }
}

impl std::fmt::Display for BigNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BigNumber::Small(v) => write!(f, "{v}"),
            BigNumber::Large(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitsReport {
    pub max_depth: usize,
    pub max_cosets: usize,
    pub max_index: usize,
    pub letter_budget: usize,
    pub torsion_cap: usize,
    pub node_budget: usize,
    pub audit_budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub betti: usize,
    pub torsion: Vec<BigNumber>,
}

impl From<&AbelianInvariants> for InvariantsReport {
    fn from(inv: &AbelianInvariants) -> Self {
        InvariantsReport {
            betti: inv.betti,
            torsion: inv.torsion.iter().map(BigNumber::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub level: usize,
    pub generators: usize,
    pub relators: usize,
    pub betti: usize,
    pub torsion: Vec<BigNumber>,
    pub index_in_root: BigNumber,
    /// The subgroup presentation in input file format.
    pub presentation: String,
}

impl From<&DerivedStep> for StepReport {
    fn from(s: &DerivedStep) -> Self {
        StepReport {
            level: s.level,
            generators: s.presentation.generator_count(),
            relators: s.presentation.relators().len(),
            betti: s.invariants.betti,
            torsion: s.invariants.torsion.iter().map(BigNumber::from).collect(),
            index_in_root: BigNumber::from(&s.index_in_root),
            presentation: s.presentation.serialize(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeReport {
    pub kind: String,
    pub level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resource: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub index: usize,
    pub normal: bool,
    /// Size of the conjugacy class.
    pub conjugates: usize,
    pub betti: usize,
    pub torsion: Vec<BigNumber>,
    /// Permutation of the cosets induced by each generator.
    pub generator_images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    /// `low-index` for a searched class, `regular` for the trivial subgroup.
    pub source: String,
    pub subgroup_index: usize,
    pub deck_order: BigNumber,
    pub deck_perfect: bool,
    pub cover_generators: usize,
    pub cover_relators: usize,
    pub cover_betti: usize,
    pub cover_torsion: Vec<BigNumber>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub limits: LimitsReport,
    pub steps: Vec<StepReport>,
    pub outcome: Option<OutcomeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abelianization: Option<InvariantsReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subgroups: Vec<SubgroupReport>,
    pub verdicts: Vec<VerdictReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }
}
