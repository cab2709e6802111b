//! Packaging scenarios: how the coil-to-device stack sets the drive current
//! and separation, and what field the device actually sees.
//!
//! Six built-in configurations cover a coil and an actuated device stacked
//! with silicon wafers (280 µm each) and polymer films (25 µm): two
//! wafer-mounted drives at 300 mA and four polymer-film variants at 30 mA.
//! Each scenario fixes its drive current by definition — it is a property of
//! the packaging, not recomputed from the coil — so results stay comparable
//! across coils.

use crate::analytic::on_axis_field;
use crate::drive::SubstrateProfile;
use crate::error::{Error, Result};
use crate::fmt::{compact, sig9};
use crate::geometry::CoilGeometry;
use crate::units::{Current, Length, MagneticFieldH};

/// Built-in configuration labels, in presentation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioId {
    S1,
    S2,
    K1,
    K2,
    K3,
    K4,
}

impl ScenarioId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioId::S1 => "S1",
            ScenarioId::S2 => "S2",
            ScenarioId::K1 => "K1",
            ScenarioId::K2 => "K2",
            ScenarioId::K3 => "K3",
            ScenarioId::K4 => "K4",
        }
    }

    pub fn all() -> [ScenarioId; 6] {
        [
            ScenarioId::S1,
            ScenarioId::S2,
            ScenarioId::K1,
            ScenarioId::K2,
            ScenarioId::K3,
            ScenarioId::K4,
        ]
    }
}

/// Whether a scenario's drive current is pinned or only bounded from above
/// (in which case its field is an upper bound too).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurrentLimitKind {
    Exact,
    UpperBound,
}

/// One packaging configuration: a drive current (exact or bound), the
/// coil-to-device separation the stack imposes, and the substrate that
/// justifies the current.
#[derive(Debug, Clone)]
pub struct Scenario {
    id: ScenarioId,
    description: &'static str,
    substrate: SubstrateProfile,
    drive_current: Current,
    separation: Length,
    limit_kind: CurrentLimitKind,
    note: Option<&'static str>,
}

const WAFER_NOTE: &str = "S1/S2 drive at 300 mA, the full-wafer heat-sinking limit for a 5 um x 10 um track; a package glued to a TO220-style header caps the same track near 175 mA.";

impl Scenario {
    pub fn new(
        id: ScenarioId,
        description: &'static str,
        substrate: SubstrateProfile,
        drive_current: Current,
        separation: Length,
        limit_kind: CurrentLimitKind,
        note: Option<&'static str>,
    ) -> Result<Self> {
        if drive_current.value() <= 0.0 {
            return Err(Error::InvalidArgument(
                "scenario drive current must be positive".into(),
            ));
        }
        if separation.value() <= 0.0 {
            return Err(Error::InvalidArgument(
                "scenario separation must be positive".into(),
            ));
        }
        Ok(Self {
            id,
            description,
            substrate,
            drive_current,
            separation,
            limit_kind,
            note,
        })
    }

    /// The six built-in configurations, in S1, S2, K1, K2, K3, K4 order.
    /// Wafer thickness is taken as 280 µm and polymer film thickness as
    /// 25 µm throughout.
    pub fn builtins() -> Vec<Scenario> {
        let wafer = SubstrateProfile::builtin("silicon_on_wafer").expect("builtin");
        let kapton = SubstrateProfile::builtin("kapton").expect("builtin");
        let ma = Current::milliamperes;
        let um = Length::micrometers;
        vec![
            Scenario::new(
                ScenarioId::S1,
                "coil on a wafer, device on the opposite face (one wafer apart)",
                wafer.clone(),
                ma(300.0),
                um(280.0),
                CurrentLimitKind::Exact,
                Some(WAFER_NOTE),
            )
            .expect("valid builtin"),
            Scenario::new(
                ScenarioId::S2,
                "coil and device on the outer faces of two stacked wafers",
                wafer,
                ma(300.0),
                um(560.0),
                CurrentLimitKind::Exact,
                Some(WAFER_NOTE),
            )
            .expect("valid builtin"),
            Scenario::new(
                ScenarioId::K1,
                "coil on a polymer film sandwiched between two wafers, device outside",
                kapton.clone(),
                ma(30.0),
                um(560.0),
                CurrentLimitKind::UpperBound,
                None,
            )
            .expect("valid builtin"),
            Scenario::new(
                ScenarioId::K2,
                "film-sandwiched coil, device one wafer away",
                kapton.clone(),
                ma(30.0),
                um(280.0),
                CurrentLimitKind::UpperBound,
                None,
            )
            .expect("valid builtin"),
            Scenario::new(
                ScenarioId::K3,
                "coil on a polymer film glued to the back of the device wafer",
                kapton.clone(),
                ma(30.0),
                um(305.0),
                CurrentLimitKind::Exact,
                None,
            )
            .expect("valid builtin"),
            Scenario::new(
                ScenarioId::K4,
                "coil and device on opposite faces of one polymer film",
                kapton,
                ma(30.0),
                um(25.0),
                CurrentLimitKind::Exact,
                None,
            )
            .expect("valid builtin"),
        ]
    }

    pub fn id(&self) -> ScenarioId {
        self.id
    }

    pub fn description(&self) -> &'static str {
        self.description
    }

    pub fn substrate(&self) -> &SubstrateProfile {
        &self.substrate
    }

    pub fn drive_current(&self) -> Current {
        self.drive_current
    }

    pub fn separation(&self) -> Length {
        self.separation
    }

    pub fn limit_kind(&self) -> CurrentLimitKind {
        self.limit_kind
    }

    pub fn note(&self) -> Option<&'static str> {
        self.note
    }
}

/// Field a given coil delivers under one scenario.
#[derive(Debug, Clone, Copy)]
pub struct ScenarioResult {
    pub id: ScenarioId,
    pub i_max: Current,
    pub separation: Length,
    pub h_max: MagneticFieldH,
    pub limit_kind: CurrentLimitKind,
    pub note: Option<&'static str>,
}

/// On-axis field at the scenario separation and drive current. For
/// `UpperBound` scenarios the result is itself an upper bound.
pub fn evaluate_scenario(coil: &CoilGeometry, scenario: &Scenario) -> ScenarioResult {
    ScenarioResult {
        id: scenario.id(),
        i_max: scenario.drive_current(),
        separation: scenario.separation(),
        h_max: on_axis_field(coil, scenario.drive_current(), scenario.separation()),
        limit_kind: scenario.limit_kind(),
        note: scenario.note(),
    }
}

/// All six built-in scenarios evaluated for one coil, in presentation order.
pub fn scenario_table(coil: &CoilGeometry) -> Vec<ScenarioResult> {
    Scenario::builtins()
        .iter()
        .map(|s| evaluate_scenario(coil, s))
        .collect()
}

fn bound_marker(kind: CurrentLimitKind) -> &'static str {
    match kind {
        CurrentLimitKind::Exact => "=",
        CurrentLimitKind::UpperBound => "<",
    }
}

/// CSV rendering: `scenario,I_max_mA,bound,d_um,H_A_per_m`.
pub fn table_to_csv(results: &[ScenarioResult]) -> String {
    let mut out = String::from("scenario,I_max_mA,bound,d_um,H_A_per_m\n");
    for r in results {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.id.as_str(),
            sig9(r.i_max.as_milliamperes()),
            bound_marker(r.limit_kind),
            sig9(r.separation.as_micrometers()),
            sig9(r.h_max.value()),
        ));
    }
    out
}

/// Aligned text rendering; bounded rows print as `<30` / `<205.5`, and any
/// scenario notes follow once as footnotes.
pub fn table_to_text(results: &[ScenarioResult]) -> String {
    let mut rows: Vec<[String; 4]> = vec![[
        "scenario".into(),
        "I_max (mA)".into(),
        "d (um)".into(),
        "H (A/m)".into(),
    ]];
    for r in results {
        let lt = if r.limit_kind == CurrentLimitKind::UpperBound {
            "<"
        } else {
            ""
        };
        rows.push([
            r.id.as_str().to_string(),
            format!("{lt}{}", compact(r.i_max.as_milliamperes())),
            compact(r.separation.as_micrometers()),
            format!("{lt}{}", compact(r.h_max.value())),
        ]);
    }
    let widths: Vec<usize> = (0..4)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    let mut seen: Vec<&str> = Vec::new();
    for r in results {
        if let Some(note) = r.note {
            if !seen.contains(&note) {
                seen.push(note);
                out.push_str(&format!("note: {note}\n"));
            }
        }
    }
    out
}
