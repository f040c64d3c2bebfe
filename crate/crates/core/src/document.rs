//! JSON model documents (`"schema": 1`).
//!
//! ```json
//! {
//!   "schema": 1,
//!   "px": [0.5, 0.5],
//!   "py1_given_x": [[0.9, 0.1], [0.1, 0.9]],
//!   "py2_given_x": [[0.8, 0.2], [0.2, 0.8]],
//!   "pz_given_x": [[0.7, 0.3], [0.3, 0.7]],
//!   "aux": {
//!     "pq": [1.0],
//!     "pu1_given_y1_q": [[[1.0, 0.0], [0.0, 1.0]]],
//!     "pu2_given_y2_q": [[[1.0, 0.0], [0.0, 1.0]]],
//!     "pv1_given_u1_q": [[[1.0], [1.0]]],
//!     "pv2_given_u2_q": [[[1.0], [1.0]]]
//!   },
//!   "distortion": [[0.0, 1.0], [1.0, 0.0]]
//! }
//! ```
//!
//! Kernels are row-major: `p*_given_x[x][y]` and `p*_given_*_q[q][input][output]`.
//! `pz_given_x`, the `V` kernels, `aux` and `distortion` are optional; missing
//! ones default to constants (and to the all-constant auxiliary system).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::discrete::DiscreteDistortion;
use crate::error::{Error, Result};
use crate::info::{constant_kernel, AuxiliarySystem, DiscreteCeoModel, QKernel};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxDocument {
    pub pq: Vec<f64>,
    pub pu1_given_y1_q: QKernel,
    pub pu2_given_y2_q: QKernel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pv1_given_u1_q: Option<QKernel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pv2_given_u2_q: Option<QKernel>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema: u32,
    pub px: Vec<f64>,
    pub py1_given_x: Vec<Vec<f64>>,
    pub py2_given_x: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pz_given_x: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distortion: Option<Vec<Vec<f64>>>,
}

/// A validated model, auxiliary system and distortion measure.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub model: DiscreteCeoModel,
    pub aux: AuxiliarySystem,
    pub distortion: DiscreteDistortion,
}

fn u_width(k: &QKernel) -> usize {
    k.first().and_then(|s| s.first()).map_or(0, Vec::len)
}

impl ModelDocument {
    pub fn into_instance(self) -> Result<Instance> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::InvalidParameter(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let model = match self.pz_given_x {
            Some(z) => DiscreteCeoModel::new(self.px, self.py1_given_x, self.py2_given_x, z)?,
            None => DiscreteCeoModel::without_side_information(self.px, self.py1_given_x, self.py2_given_x)?,
        };
        let aux = match self.aux {
            None => AuxiliarySystem::constant(&model),
            Some(a) => {
                let nq = a.pq.len();
                let v1 = a
                    .pv1_given_u1_q
                    .unwrap_or_else(|| constant_kernel(nq, u_width(&a.pu1_given_y1_q)));
                let v2 = a
                    .pv2_given_u2_q
                    .unwrap_or_else(|| constant_kernel(nq, u_width(&a.pu2_given_y2_q)));
                AuxiliarySystem::new(a.pq, a.pu1_given_y1_q, a.pu2_given_y2_q, v1, v2)?
            }
        };
        let distortion = match self.distortion {
            Some(m) => DiscreteDistortion::Matrix(m),
            None => DiscreteDistortion::LogLoss,
        };
        Ok(Instance { model, aux, distortion })
    }

    pub fn from_instance(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            px: model.px().to_vec(),
            py1_given_x: model.py_given_x(1).to_vec(),
            py2_given_x: model.py_given_x(2).to_vec(),
            pz_given_x: Some(model.pz_given_x().to_vec()),
            aux: Some(AuxDocument {
                pq: aux.pq().to_vec(),
                pu1_given_y1_q: aux.pu_given_y_q(1).clone(),
                pu2_given_y2_q: aux.pu_given_y_q(2).clone(),
                pv1_given_u1_q: Some(aux.pv_given_u_q(1).clone()),
                pv2_given_u2_q: Some(aux.pv_given_u_q(2).clone()),
            }),
            distortion: None,
        }
    }
}

pub fn parse_instance(json: &str) -> Result<Instance> {
    let doc: ModelDocument = serde_json::from_str(json)?;
    doc.into_instance()
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
        "schema": 1,
        "px": [0.5, 0.5],
        "py1_given_x": [[0.9, 0.1], [0.1, 0.9]],
        "py2_given_x": [[0.8, 0.2], [0.2, 0.8]],
        "aux": {
            "pq": [1.0],
            "pu1_given_y1_q": [[[1.0, 0.0], [0.0, 1.0]]],
            "pu2_given_y2_q": [[[0.75, 0.25], [0.25, 0.75]]]
        }
    }"#;

    #[test]
    fn minimal_document() {
        let inst = parse_instance(DOC).unwrap();
        assert_eq!(inst.model.nz(), 1);
        assert_eq!(inst.aux.nv(1), 1);
        assert_eq!(inst.aux.nu(2), 2);
        assert_eq!(inst.distortion, DiscreteDistortion::LogLoss);
    }

    #[test]
    fn round_trip_through_json() {
        let inst = parse_instance(DOC).unwrap();
        let doc = ModelDocument::from_instance(&inst.model, &inst.aux);
        let back = parse_instance(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn corrupted_row_is_named() {
        let bad = DOC.replace("[0.75, 0.25], [0.25, 0.75]", "[0.75, 0.25], [0.25, 0.65]");
        let err = parse_instance(&bad).unwrap_err().to_string();
        assert!(err.contains("pu2_given_y2_q[q=0] row 1"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_instance("{\n  \"schema\": 1,\n  \"px\": [0.5, \n}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line"), "{err}");
        let err = parse_instance(&DOC.replace("\"schema\": 1", "\"schema\": 2")).unwrap_err();
        assert!(err.to_string().contains("schema"));
        let err = parse_instance(&DOC.replace("\"px\"", "\"p_x\"")).unwrap_err();
        assert!(err.to_string().contains("p_x"), "{err}");
    }
}
