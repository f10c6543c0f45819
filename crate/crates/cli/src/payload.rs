use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A command result: everything printed is rendered from this value, so a
/// cached payload renders exactly like a fresh one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Payload {
    pub kind: Kind,
    /// Whether every requested property holds; decides the exit code.
    pub ok: bool,
    pub data: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Bounds,
    Verify,
    Search,
    Certify,
    Shapes,
    CompareGh,
    GhConstruction,
    CheckCertificate,
}

impl Payload {
    pub fn new(kind: Kind, ok: bool, data: impl Serialize) -> Self {
        let data = serde_json::to_value(data).expect("results serialize");
        Payload { kind, ok, data }
    }
}
