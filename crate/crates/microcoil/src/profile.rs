//! Field profiles: ordered field samples along the axis or across it, tagged
//! with the producing model, serialized as CSV (`d_m,x_m,H_A_per_m`) or JSON.

use serde_json::json;

use crate::error::{Error, Result};
use crate::fmt::{round_sig9, sig9};
use crate::units::{Current, Length, MagneticFieldH};

/// One field value at an axial distance `d` and lateral offset `x` from the
/// coil center.
#[derive(Debug, Clone, Copy)]
pub struct FieldSample {
    pub d: Length,
    pub x: Length,
    pub h: MagneticFieldH,
}

/// Which model produced a profile, for what coil and drive current.
#[derive(Debug, Clone)]
pub struct ProfileMetadata {
    pub model: String,
    pub coil: String,
    pub current: Current,
}

/// Ordered list of samples from one coil, one current, one model.
///
/// Sample positions must strictly increase in (d, x) lexicographic order, so
/// axial scans (x fixed) and lateral scans (d fixed) are both covered.
#[derive(Debug, Clone)]
pub struct FieldProfile {
    samples: Vec<FieldSample>,
    metadata: ProfileMetadata,
    /// Reference H used for a normalized column, when the producer defines one
    /// (lateral profiles normalize to the x=0 value).
    normalization: Option<f64>,
}

impl FieldProfile {
    pub fn new(samples: Vec<FieldSample>, metadata: ProfileMetadata) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidArgument(
                "a profile needs at least 2 samples".into(),
            ));
        }
        for pair in samples.windows(2) {
            let a = (pair[0].d.value(), pair[0].x.value());
            let b = (pair[1].d.value(), pair[1].x.value());
            if b <= a {
                return Err(Error::InvalidArgument(format!(
                    "profile positions must strictly increase, got {a:?} then {b:?}"
                )));
            }
        }
        Ok(Self {
            samples,
            metadata,
            normalization: None,
        })
    }

    pub fn with_normalization(mut self, reference_h: MagneticFieldH) -> Result<Self> {
        if reference_h.value() == 0.0 {
            return Err(Error::InvalidArgument(
                "cannot normalize a profile to a zero reference value".into(),
            ));
        }
        self.normalization = Some(reference_h.value());
        Ok(self)
    }

    pub fn samples(&self) -> &[FieldSample] {
        &self.samples
    }

    pub fn metadata(&self) -> &ProfileMetadata {
        &self.metadata
    }

    pub fn normalization(&self) -> Option<f64> {
        self.normalization
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(if self.normalization.is_some() {
            "d_m,x_m,H_A_per_m,H_norm\n"
        } else {
            "d_m,x_m,H_A_per_m\n"
        });
        for s in &self.samples {
            out.push_str(&sig9(s.d.value()));
            out.push(',');
            out.push_str(&sig9(s.x.value()));
            out.push(',');
            out.push_str(&sig9(s.h.value()));
            if let Some(reference) = self.normalization {
                out.push(',');
                out.push_str(&sig9(s.h.value() / reference));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let samples: Vec<serde_json::Value> = self
            .samples
            .iter()
            .map(|s| {
                let mut row = json!({
                    "d_m": round_sig9(s.d.value()),
                    "x_m": round_sig9(s.x.value()),
                    "H_A_per_m": round_sig9(s.h.value()),
                });
                if let Some(reference) = self.normalization {
                    row["H_norm"] = json!(round_sig9(s.h.value() / reference));
                }
                row
            })
            .collect();
        json!({
            "metadata": {
                "model": self.metadata.model,
                "coil": self.metadata.coil,
                "current_A": round_sig9(self.metadata.current.value()),
            },
            "samples": samples,
        })
    }
}
