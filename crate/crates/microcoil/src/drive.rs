//! Substrate-limited drive current, Joule losses, and drive efficiency.
//!
//! The substrate's heat-sinking ability caps the current density a track can
//! carry, so the peak drive current is j_max·w·t. At that current the coil
//! produces its maximum center field ("memf" below) and dissipates
//! P = R·I_max² = ρ_e·ℓ·j_max²·S; the field-per-watt ratio measures drive
//! efficiency. A turn-count sweep over a fixed-footprint coil family shows
//! how all three trade off against N.

use serde::Deserialize;

use crate::analytic::center_field;
use crate::error::{Error, Result};
use crate::fmt::sig9;
use crate::geometry::{
    CoilGeometry, CoilShape, LengthMethod, MIN_FABRICABLE_TRACK_WIDTH_M,
};
use crate::units::{Current, CurrentDensity, Length, MagneticFieldH, Power, Resistance, Resistivity};

/// Sweep normalization is pinned to this turn count.
pub const NORMALIZATION_TURNS: u32 = 40;

/// A named current-density limit standing in for a packaging/heat-sinking
/// configuration.
#[derive(Debug, Clone)]
pub struct SubstrateProfile {
    name: String,
    j_max: CurrentDensity,
}

#[derive(Deserialize)]
struct SubstrateFile {
    name: String,
    #[serde(rename = "j_max_A_per_m2")]
    j_max_a_per_m2: f64,
}

impl SubstrateProfile {
    pub fn new(name: impl Into<String>, j_max: CurrentDensity) -> Result<Self> {
        if j_max.value() <= 0.0 {
            return Err(Error::InvalidArgument(
                "substrate current-density limit must be positive".into(),
            ));
        }
        Ok(Self {
            name: name.into(),
            j_max,
        })
    }

    /// Built-in profiles:
    /// - `kapton`: 0.6 mA/µm² (6·10⁸ A/m²), a polymer film with poor heat sinking.
    /// - `silicon_on_wafer`: 6 mA/µm² (6·10⁹ A/m²), full-wafer heat sinking.
    /// - `silicon_to220_glued`: 3.5·10⁹ A/m², calibrated so the 40-turn
    ///   reference coil (5 µm × 10 µm track) tops out at 175 mA. This number
    ///   is a calibration from that current figure, not a measured limit.
    pub fn builtin(name: &str) -> Option<Self> {
        let j = match name {
            "kapton" => 6e8,
            "silicon_on_wafer" => 6e9,
            "silicon_to220_glued" => 3.5e9,
            _ => return None,
        };
        Some(Self {
            name: name.to_string(),
            j_max: CurrentDensity::amperes_per_square_meter(j),
        })
    }

    pub fn builtin_names() -> [&'static str; 3] {
        ["kapton", "silicon_on_wafer", "silicon_to220_glued"]
    }

    /// Loads `{"name": ..., "j_max_A_per_m2": ...}` from JSON text.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: SubstrateFile = serde_json::from_str(text)?;
        Self::new(
            file.name,
            CurrentDensity::amperes_per_square_meter(file.j_max_a_per_m2),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn j_max(&self) -> CurrentDensity {
        self.j_max
    }
}

/// Conductor material constants.
#[derive(Debug, Clone, Copy)]
pub struct MaterialProps {
    resistivity: Resistivity,
}

impl MaterialProps {
    pub fn new(resistivity: Resistivity) -> Result<Self> {
        if resistivity.value() <= 0.0 {
            return Err(Error::InvalidArgument(
                "resistivity must be positive".into(),
            ));
        }
        Ok(Self { resistivity })
    }

    /// Electrodeposited copper, ρ_e = 1.7·10⁻⁸ Ω·m.
    pub fn copper() -> Self {
        Self {
            resistivity: Resistivity::ohm_meters(1.7e-8),
        }
    }

    pub fn resistivity(&self) -> Resistivity {
        self.resistivity
    }
}

impl Default for MaterialProps {
    fn default() -> Self {
        Self::copper()
    }
}

/// Everything the substrate limit implies for one coil.
#[derive(Debug, Clone, Copy)]
pub struct DriveReport {
    pub i_max: Current,
    /// Center field at `i_max` (maximum effective magnetic field).
    pub memf: MagneticFieldH,
    pub resistance: Resistance,
    pub p_jmax: Power,
    /// memf / p_jmax, in A·m⁻¹ per W.
    pub efficiency_ratio: f64,
    pub length_method: LengthMethod,
}

/// Largest drive current the substrate allows: j_max · w · t.
pub fn max_current(coil: &CoilGeometry, substrate: &SubstrateProfile) -> Current {
    Current::amperes(substrate.j_max().value() * coil.cross_section().value())
}

/// Track resistance and worst-case Joule loss at the substrate-limited
/// current. Returns (R, P) with R = ρ_e·ℓ/S and P = R·I_max²; the equivalent
/// factorization P = ρ_e·ℓ·j_max²·S agrees to machine precision.
pub fn joule_loss_max(
    coil: &CoilGeometry,
    substrate: &SubstrateProfile,
    material: &MaterialProps,
    method: LengthMethod,
) -> Result<(Resistance, Power)> {
    let length = coil.mean_track_length(method)?;
    let section = coil.cross_section().value();
    let resistance = material.resistivity().value() * length.value() / section;
    let i_max = max_current(coil, substrate).value();
    let power = resistance * i_max * i_max;
    Ok((Resistance::ohms(resistance), Power::watts(power)))
}

/// Assembles the full drive picture for one coil on one substrate.
pub fn drive_report(
    coil: &CoilGeometry,
    substrate: &SubstrateProfile,
    material: &MaterialProps,
    method: LengthMethod,
) -> Result<DriveReport> {
    let i_max = max_current(coil, substrate);
    let (resistance, p_jmax) = joule_loss_max(coil, substrate, material, method)?;
    let memf = center_field(coil, i_max).h;
    Ok(DriveReport {
        i_max,
        memf,
        resistance,
        p_jmax,
        efficiency_ratio: memf.value() / p_jmax.value(),
        length_method: method,
    })
}

/// Fixed-footprint coil family for the turn-count sweep: shape, outer radius,
/// inner-radius target, and thickness are fixed; for each N the track width
/// and spacing are equal, w = s = (R_max − R_min_target)/(2N − 1), which
/// fills the annulus [R_min_target, R_max] exactly.
#[derive(Debug, Clone, Copy)]
pub struct SweepFamily {
    shape: CoilShape,
    outer_radius: Length,
    inner_radius_target: Length,
    thickness: Length,
}

impl SweepFamily {
    pub fn new(
        shape: CoilShape,
        outer_radius: Length,
        inner_radius_target: Length,
        thickness: Length,
    ) -> Result<Self> {
        if inner_radius_target.value() <= 0.0 {
            return Err(Error::InvalidArgument(
                "family inner radius target must be positive".into(),
            ));
        }
        if outer_radius.value() <= inner_radius_target.value() {
            return Err(Error::InvalidArgument(
                "family outer radius must exceed the inner radius target".into(),
            ));
        }
        if thickness.value() <= 0.0 {
            return Err(Error::InvalidArgument(
                "family track thickness must be positive".into(),
            ));
        }
        Ok(Self {
            shape,
            outer_radius,
            inner_radius_target,
            thickness,
        })
    }

    /// The round 0.1 mm → 0.5 mm family with 10 µm thick tracks (w = s = 5 µm
    /// at N = 40).
    pub fn reference() -> Self {
        Self {
            shape: CoilShape::Round,
            outer_radius: Length::micrometers(500.0),
            inner_radius_target: Length::micrometers(100.0),
            thickness: Length::micrometers(10.0),
        }
    }

    /// Track width (= spacing) for a member with `turns` turns.
    pub fn track_pitch(&self, turns: u32) -> Length {
        let span = self.outer_radius.value() - self.inner_radius_target.value();
        Length::meters(span / (2.0 * turns as f64 - 1.0))
    }

    pub fn coil_for(&self, turns: u32) -> Result<CoilGeometry> {
        let w = self.track_pitch(turns);
        CoilGeometry::new(self.shape, turns, self.outer_radius, w, w, self.thickness)
    }
}

/// One sweep row. `feasible` is false when the implied track width falls
/// below the 5 µm fabrication floor; the row is still computed.
#[derive(Debug, Clone, Copy)]
pub struct TurnsSweepRow {
    pub turns: u32,
    pub track_width: Length,
    pub feasible: bool,
    pub i_max: Current,
    pub memf: MagneticFieldH,
    pub p_jmax: Power,
    pub ratio: f64,
    /// (memf, P, ratio) divided by their 40-turn values, when requested.
    pub normalized: Option<(f64, f64, f64)>,
}

/// Evaluates the family for every N in [n_min, n_max]. With `normalize`, each
/// row also carries its columns divided by the [`NORMALIZATION_TURNS`] row,
/// which must lie inside the range.
pub fn turns_sweep(
    family: &SweepFamily,
    n_min: u32,
    n_max: u32,
    substrate: &SubstrateProfile,
    material: &MaterialProps,
    method: LengthMethod,
    normalize: bool,
) -> Result<Vec<TurnsSweepRow>> {
    if n_min < 1 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "turn range [{n_min}, {n_max}] is empty or starts below 1"
        )));
    }
    if normalize && !(n_min..=n_max).contains(&NORMALIZATION_TURNS) {
        return Err(Error::InvalidArgument(format!(
            "normalization needs the {NORMALIZATION_TURNS}-turn row inside the sweep range"
        )));
    }
    let mut rows = Vec::with_capacity((n_max - n_min + 1) as usize);
    for turns in n_min..=n_max {
        let coil = family.coil_for(turns)?;
        let report = drive_report(&coil, substrate, material, method)?;
        rows.push(TurnsSweepRow {
            turns,
            track_width: coil.track_width(),
            feasible: coil.track_width().value() >= MIN_FABRICABLE_TRACK_WIDTH_M,
            i_max: report.i_max,
            memf: report.memf,
            p_jmax: report.p_jmax,
            ratio: report.efficiency_ratio,
            normalized: None,
        });
    }
    if normalize {
        let anchor = rows
            .iter()
            .find(|r| r.turns == NORMALIZATION_TURNS)
            .copied()
            .expect("anchor row checked above");
        for row in &mut rows {
            row.normalized = Some((
                row.memf.value() / anchor.memf.value(),
                row.p_jmax.value() / anchor.p_jmax.value(),
                row.ratio / anchor.ratio,
            ));
        }
    }
    Ok(rows)
}

/// CSV rendering with 9-significant-digit values. Normalized columns appear
/// only when present on the rows.
pub fn sweep_to_csv(rows: &[TurnsSweepRow]) -> String {
    let normalized = rows.first().is_some_and(|r| r.normalized.is_some());
    let mut out = String::from("N,memf_A_per_m,P_W,ratio_A_per_m_per_W");
    if normalized {
        out.push_str(",memf_norm,P_norm,ratio_norm");
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}",
            row.turns,
            sig9(row.memf.value()),
            sig9(row.p_jmax.value()),
            sig9(row.ratio)
        ));
        if let Some((m, p, r)) = row.normalized {
            out.push_str(&format!(",{},{},{}", sig9(m), sig9(p), sig9(r)));
        }
        out.push('\n');
    }
    out
}

/// JSON rendering carrying the same values as the CSV plus the feasibility
/// flag and implied track width.
pub fn sweep_to_json(rows: &[TurnsSweepRow]) -> String {
    use crate::fmt::round_sig9;
    let entries: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::json!({
                "N": row.turns,
                "track_width_um": round_sig9(row.track_width.as_micrometers()),
                "feasible": row.feasible,
                "I_max_mA": round_sig9(row.i_max.as_milliamperes()),
                "memf_A_per_m": round_sig9(row.memf.value()),
                "P_W": round_sig9(row.p_jmax.value()),
                "ratio_A_per_m_per_W": round_sig9(row.ratio),
            });
            if let Some((m, p, r)) = row.normalized {
                obj["memf_norm"] = round_sig9(m).into();
                obj["P_norm"] = round_sig9(p).into();
                obj["ratio_norm"] = round_sig9(r).into();
            }
            obj
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::Value::Array(entries)).expect("serializable")
}
