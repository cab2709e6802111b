//! Exhaustive constrained search over discrete coil design grids.
//!
//! The design space is small (tens of turn counts, a handful of track
//! options), so every feasible grid point is evaluated and ranked — no
//! heuristics. Infeasible points are skipped but tallied so callers can see
//! how binding the constraints are. Ranking is a total order (objective
//! descending, then smaller N, w, s, t), which makes results independent of
//! enumeration order.

use serde::Deserialize;

use crate::drive::{drive_report, DriveReport, MaterialProps, SubstrateProfile};
use crate::error::{Error, Result};
use crate::fmt::sig9;
use crate::geometry::{CoilGeometry, CoilShape, LengthMethod};
use crate::units::Length;

/// Fabrication and footprint limits a design must respect.
#[derive(Debug, Clone, Copy)]
pub struct DesignConstraints {
    min_track_width: Length,
    min_spacing: Length,
    max_thickness: Length,
    outer_radius: Length,
    n_min: u32,
    n_max: u32,
}

#[derive(Deserialize)]
struct ConstraintsFile {
    min_track_width_um: Option<f64>,
    min_spacing_um: Option<f64>,
    max_thickness_um: Option<f64>,
    outer_radius_um: Option<f64>,
    n_min: Option<u32>,
    n_max: Option<u32>,
}

impl DesignConstraints {
    pub fn new(
        min_track_width: Length,
        min_spacing: Length,
        max_thickness: Length,
        outer_radius: Length,
        n_min: u32,
        n_max: u32,
    ) -> Result<Self> {
        for (value, what) in [
            (min_track_width, "minimum track width"),
            (min_spacing, "minimum spacing"),
            (max_thickness, "maximum thickness"),
            (outer_radius, "outer radius"),
        ] {
            if value.value() <= 0.0 {
                return Err(Error::InvalidArgument(format!("{what} must be positive")));
            }
        }
        if n_min < 1 || n_min > n_max {
            return Err(Error::InvalidArgument(format!(
                "turn range [{n_min}, {n_max}] is empty or starts below 1"
            )));
        }
        Ok(Self {
            min_track_width,
            min_spacing,
            max_thickness,
            outer_radius,
            n_min,
            n_max,
        })
    }

    /// Loads constraints from JSON; absent keys keep their defaults.
    /// Keys: `min_track_width_um`, `min_spacing_um`, `max_thickness_um`,
    /// `outer_radius_um`, `n_min`, `n_max`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: ConstraintsFile = serde_json::from_str(text)?;
        let d = Self::default();
        Self::new(
            file.min_track_width_um
                .map_or(d.min_track_width, Length::micrometers),
            file.min_spacing_um.map_or(d.min_spacing, Length::micrometers),
            file.max_thickness_um
                .map_or(d.max_thickness, Length::micrometers),
            file.outer_radius_um
                .map_or(d.outer_radius, Length::micrometers),
            file.n_min.unwrap_or(d.n_min),
            file.n_max.unwrap_or(d.n_max),
        )
    }

    pub fn min_track_width(&self) -> Length {
        self.min_track_width
    }

    pub fn min_spacing(&self) -> Length {
        self.min_spacing
    }

    pub fn max_thickness(&self) -> Length {
        self.max_thickness
    }

    /// The footprint is fixed: every candidate uses this outer radius.
    pub fn outer_radius(&self) -> Length {
        self.outer_radius
    }

    pub fn n_range(&self) -> (u32, u32) {
        (self.n_min, self.n_max)
    }
}

impl Default for DesignConstraints {
    /// 5 µm lithography floor for width and spacing, 20 µm photoresist
    /// ceiling for thickness, 500 µm footprint, 1–40 turns.
    fn default() -> Self {
        Self {
            min_track_width: Length::micrometers(5.0),
            min_spacing: Length::micrometers(5.0),
            max_thickness: Length::micrometers(20.0),
            outer_radius: Length::micrometers(500.0),
            n_min: 1,
            n_max: 40,
        }
    }
}

/// What the search maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Center field at the substrate-limited current.
    MaxMemf,
    /// Field per watt of Joule loss.
    MaxEfficiencyRatio,
}

impl Objective {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "memf" => Ok(Objective::MaxMemf),
            "ratio" => Ok(Objective::MaxEfficiencyRatio),
            other => Err(Error::InvalidArgument(format!(
                "objective must be \"memf\" or \"ratio\", got \"{other}\""
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::MaxMemf => "memf",
            Objective::MaxEfficiencyRatio => "ratio",
        }
    }

    fn score(self, report: &DriveReport) -> f64 {
        match self {
            Objective::MaxMemf => report.memf.value(),
            Objective::MaxEfficiencyRatio => report.efficiency_ratio,
        }
    }
}

/// Track dimensions to try for each turn count.
#[derive(Debug, Clone)]
pub enum TrackGrid {
    /// Independent width × spacing × thickness combinations.
    Explicit {
        widths: Vec<Length>,
        spacings: Vec<Length>,
        thicknesses: Vec<Length>,
    },
    /// Width and spacing tied to the turn count so the spiral fills
    /// [inner_radius_target, outer_radius] exactly:
    /// w = s = (R_out − R_in)/(2N − 1).
    FamilyRule {
        inner_radius_target: Length,
        thicknesses: Vec<Length>,
    },
}

/// The full candidate grid.
#[derive(Debug, Clone)]
pub struct SearchGrid {
    shape: CoilShape,
    turns: Vec<u32>,
    tracks: TrackGrid,
}

impl SearchGrid {
    pub fn new(shape: CoilShape, turns: Vec<u32>, tracks: TrackGrid) -> Result<Self> {
        if turns.is_empty() {
            return Err(Error::InvalidArgument("turn grid is empty".into()));
        }
        let empty = match &tracks {
            TrackGrid::Explicit {
                widths,
                spacings,
                thicknesses,
            } => widths.is_empty() || spacings.is_empty() || thicknesses.is_empty(),
            TrackGrid::FamilyRule { thicknesses, .. } => thicknesses.is_empty(),
        };
        if empty {
            return Err(Error::InvalidArgument("track grid is empty".into()));
        }
        Ok(Self {
            shape,
            turns,
            tracks,
        })
    }

    /// (turns, width, spacing, thickness) tuples in grid enumeration order.
    fn candidates(&self, outer_radius: Length) -> Vec<(u32, Length, Length, Length)> {
        let mut out = Vec::new();
        for &n in &self.turns {
            match &self.tracks {
                TrackGrid::Explicit {
                    widths,
                    spacings,
                    thicknesses,
                } => {
                    for &w in widths {
                        for &s in spacings {
                            for &t in thicknesses {
                                out.push((n, w, s, t));
                            }
                        }
                    }
                }
                TrackGrid::FamilyRule {
                    inner_radius_target,
                    thicknesses,
                } => {
                    let span = outer_radius.value() - inner_radius_target.value();
                    let w = Length::meters(span / (2.0 * n as f64 - 1.0));
                    for &t in thicknesses {
                        out.push((n, w, w, t));
                    }
                }
            }
        }
        out
    }
}

/// One evaluated design in ranked position `rank` (1 = best).
#[derive(Debug, Clone, Copy)]
pub struct RankedDesign {
    pub rank: usize,
    pub coil: CoilGeometry,
    pub report: DriveReport,
}

/// How many grid points were evaluated or skipped, and why.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchDiagnostics {
    pub evaluated: usize,
    /// Combinations whose spiral does not fit the footprint (inner radius
    /// would be non-positive).
    pub skipped_infeasible_geometry: usize,
    /// Combinations violating the fabrication constraints or turn range.
    pub skipped_constraint_violations: usize,
}

/// Ranked feasible designs plus skip counts.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub ranked: Vec<RankedDesign>,
    pub diagnostics: SearchDiagnostics,
}

/// Evaluates every grid point against the constraints, ranks the feasible
/// ones by the objective (descending), and breaks ties toward smaller
/// (N, w, s, t). Errors if nothing is feasible.
pub fn grid_search(
    constraints: &DesignConstraints,
    objective: Objective,
    substrate: &SubstrateProfile,
    material: &MaterialProps,
    method: LengthMethod,
    grid: &SearchGrid,
) -> Result<SearchOutcome> {
    let (n_min, n_max) = constraints.n_range();
    let mut diagnostics = SearchDiagnostics::default();
    let mut scored: Vec<(f64, RankedDesign)> = Vec::new();
    for (n, w, s, t) in grid.candidates(constraints.outer_radius()) {
        let within = (n_min..=n_max).contains(&n)
            && w.value() >= constraints.min_track_width().value()
            && s.value() >= constraints.min_spacing().value()
            && t.value() > 0.0
            && t.value() <= constraints.max_thickness().value();
        if !within {
            diagnostics.skipped_constraint_violations += 1;
            continue;
        }
        let coil = match CoilGeometry::new(grid.shape, n, constraints.outer_radius(), w, s, t) {
            Ok(coil) => coil,
            Err(_) => {
                diagnostics.skipped_infeasible_geometry += 1;
                continue;
            }
        };
        let report = drive_report(&coil, substrate, material, method)?;
        diagnostics.evaluated += 1;
        scored.push((
            objective.score(&report),
            RankedDesign {
                rank: 0,
                coil,
                report,
            },
        ));
    }
    if scored.is_empty() {
        return Err(Error::EmptyFeasibleSet {
            skipped: diagnostics.skipped_infeasible_geometry
                + diagnostics.skipped_constraint_violations,
        });
    }
    scored.sort_by(|a, b| {
        b.0.total_cmp(&a.0).then_with(|| {
            let ka = design_key(&a.1.coil);
            let kb = design_key(&b.1.coil);
            ka.partial_cmp(&kb).expect("finite keys")
        })
    });
    let ranked = scored
        .into_iter()
        .enumerate()
        .map(|(i, (_, mut d))| {
            d.rank = i + 1;
            d
        })
        .collect();
    Ok(SearchOutcome {
        ranked,
        diagnostics,
    })
}

fn design_key(coil: &CoilGeometry) -> (u32, f64, f64, f64) {
    (
        coil.turns(),
        coil.track_width().value(),
        coil.track_spacing().value(),
        coil.track_thickness().value(),
    )
}

/// CSV rendering: `rank,N,w_um,s_um,t_um,I_max_mA,memf,P_W,ratio`.
pub fn results_to_csv(outcome: &SearchOutcome) -> String {
    let mut out = String::from("rank,N,w_um,s_um,t_um,I_max_mA,memf,P_W,ratio\n");
    for d in &outcome.ranked {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            d.rank,
            d.coil.turns(),
            sig9(d.coil.track_width().as_micrometers()),
            sig9(d.coil.track_spacing().as_micrometers()),
            sig9(d.coil.track_thickness().as_micrometers()),
            sig9(d.report.i_max.as_milliamperes()),
            sig9(d.report.memf.value()),
            sig9(d.report.p_jmax.value()),
            sig9(d.report.efficiency_ratio),
        ));
    }
    out
}
