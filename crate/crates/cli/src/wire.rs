//! JSON request/response schemas for `ball eval` and `soc eval`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Ball,
    Soc,
}

/// Evaluation request. Ball requests carry `center` and `radius`; cone
/// requests carry `dimension`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub point: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionOut {
    pub label: String,
    /// `|x - c| - r` for balls.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signed_distance: Option<f64>,
    /// `(z1 - |z2|, -z1 - |z2|)` for cones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margins: Option<[f64; 2]>,
    pub tolerance: f64,
}

/// Either a dense matrix (rows) or the string `"not_differentiable"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DerivativeOut {
    Matrix(Vec<Vec<f64>>),
    Label(String),
}

pub const NOT_DIFFERENTIABLE: &str = "not_differentiable";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub geometry: Geometry,
    pub projection: Vec<f64>,
    pub region: RegionOut,
    pub derivative: DerivativeOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directional_derivative: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction_class: Option<String>,
}
