//! Published outcome data embedded in the binary: the A·T class
//! probabilities and the G·C amplitude table, with their comparison
//! tolerances. Versioned so golden comparisons can detect asset changes.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

const RAW: &str = include_str!("../data/reference.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub version: u32,
    pub tolerances: Tolerances,
    pub at: AtReference,
    pub gc: GcReference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Published probabilities carry two decimals.
    pub probability: f64,
    pub amplitude: f64,
    /// Tolerance for closed-form values.
    pub exact: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtReference {
    pub third_pair: ThirdPair,
    pub classes: Vec<AtClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThirdPair {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtClass {
    pub bell_12: String,
    pub bell_34: String,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GcReference {
    pub group_probability: f64,
    pub groups: Vec<GcGroup>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GcGroup {
    pub j: u8,
    pub m: u8,
    pub rows: Vec<GcRow>,
}

/// One printed table row; `a`, `b` carry the printed (not phase-normalized) signs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GcRow {
    pub l: usize,
    pub a: f64,
    pub b: f64,
    pub probability: f64,
}

/// Raw JSON of the embedded asset.
pub fn reference_json() -> &'static str {
    RAW
}

pub fn reference() -> &'static Reference {
    static PARSED: OnceLock<Reference> = OnceLock::new();
    PARSED.get_or_init(|| serde_json::from_str(RAW).expect("embedded reference data is valid"))
}

/// Closed-form A·T class probabilities: `(2+√2)/8` when both bonds end in the
/// same Bell state, `(2-√2)/8` otherwise.
pub fn at_exact_probability(bell_12: &str, bell_34: &str) -> f64 {
    let r2 = std::f64::consts::SQRT_2;
    if bell_12 == bell_34 {
        (2.0 + r2) / 8.0
    } else {
        (2.0 - r2) / 8.0
    }
}
