//! Parametric spiral-coil geometry: turn radii recurrences, track length,
//! cross-section.
//!
//! A coil is N concentric turns. Turn n (1 = innermost) occupies the radial
//! interval [R_max − (N−n)(w+s) − w, R_max − (N−n)(w+s)]; square coils use
//! the same recurrences with "radius" read as half-side.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fmt::compact;
use crate::units::{Area, Length};

/// Narrowest track the fabrication process resolves, in meters.
pub const MIN_FABRICABLE_TRACK_WIDTH_M: f64 = 5e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoilShape {
    Round,
    Square,
}

impl CoilShape {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "round" => Ok(CoilShape::Round),
            "square" => Ok(CoilShape::Square),
            other => Err(Error::InvalidArgument(format!(
                "coil shape must be \"round\" or \"square\", got \"{other}\""
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoilShape::Round => "round",
            CoilShape::Square => "square",
        }
    }
}

/// How the mean track length is computed.
///
/// `ClosedForm` is the quadratic-in-N closed expression
/// π[2N·R_max − N·w − (w+s)(N−1)(N+2)] and applies to round coils only.
/// `CenterlineSum` adds up the centerline perimeter of every turn
/// (2π·r for round turns, 8·a for square turns). The two differ by exactly
/// 2π(N−1)(w+s) on round coils; neither is canonical, so callers choose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthMethod {
    ClosedForm,
    CenterlineSum,
}

impl LengthMethod {
    pub fn name(self) -> &'static str {
        match self {
            LengthMethod::ClosedForm => "closed-form",
            LengthMethod::CenterlineSum => "centerline-sum",
        }
    }
}

/// One turn of the spiral, as a radial interval.
#[derive(Debug, Clone, Copy)]
pub struct TurnAnnulus {
    index: u32,
    inner_radius: Length,
    outer_radius: Length,
}

impl TurnAnnulus {
    /// 1-based turn index, innermost first.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn inner_radius(&self) -> Length {
        self.inner_radius
    }

    pub fn outer_radius(&self) -> Length {
        self.outer_radius
    }

    /// Midline of the track; the filament radius used by on-axis models.
    pub fn centerline_radius(&self) -> Length {
        Length::meters(0.5 * (self.inner_radius.value() + self.outer_radius.value()))
    }
}

/// Validated spiral-coil description. `outer_radius` is the outer edge of the
/// outermost turn; for square coils it is the half-side of that turn.
#[derive(Debug, Clone, Copy)]
pub struct CoilGeometry {
    shape: CoilShape,
    turns: u32,
    outer_radius: Length,
    track_width: Length,
    track_spacing: Length,
    track_thickness: Length,
}

impl CoilGeometry {
    pub fn new(
        shape: CoilShape,
        turns: u32,
        outer_radius: Length,
        track_width: Length,
        track_spacing: Length,
        track_thickness: Length,
    ) -> Result<Self> {
        if turns == 0 {
            return Err(Error::InvalidGeometry("turn count must be at least 1".into()));
        }
        if track_width.value() <= 0.0 {
            return Err(Error::InvalidGeometry("track width must be positive".into()));
        }
        if track_spacing.value() < 0.0 {
            return Err(Error::InvalidGeometry("track spacing must be non-negative".into()));
        }
        if track_thickness.value() <= 0.0 {
            return Err(Error::InvalidGeometry("track thickness must be positive".into()));
        }
        if outer_radius.value() <= 0.0 {
            return Err(Error::InvalidGeometry("outer radius must be positive".into()));
        }
        let coil = Self {
            shape,
            turns,
            outer_radius,
            track_width,
            track_spacing,
            track_thickness,
        };
        let inner = coil.inner_radius().value();
        if inner <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "turns do not fit: innermost radius would be {:.3} um",
                inner * 1e6
            )));
        }
        Ok(coil)
    }

    pub fn shape(&self) -> CoilShape {
        self.shape
    }

    pub fn turns(&self) -> u32 {
        self.turns
    }

    pub fn outer_radius(&self) -> Length {
        self.outer_radius
    }

    pub fn track_width(&self) -> Length {
        self.track_width
    }

    pub fn track_spacing(&self) -> Length {
        self.track_spacing
    }

    pub fn track_thickness(&self) -> Length {
        self.track_thickness
    }

    /// Inner edge of the innermost turn: R_max − (N−1)(w+s) − w.
    pub fn inner_radius(&self) -> Length {
        let n = self.turns as f64;
        let w = self.track_width.value();
        let s = self.track_spacing.value();
        Length::meters(self.outer_radius.value() - (n - 1.0) * (w + s) - w)
    }

    /// Rectangular track cross-section w·t.
    pub fn cross_section(&self) -> Area {
        Area::square_meters(self.track_width.value() * self.track_thickness.value())
    }

    /// All N turns, innermost first.
    pub fn turn_annuli(&self) -> Vec<TurnAnnulus> {
        let big_n = self.turns as f64;
        let w = self.track_width.value();
        let s = self.track_spacing.value();
        let r_max = self.outer_radius.value();
        (1..=self.turns)
            .map(|n| {
                let inner = r_max - (big_n - n as f64) * (w + s) - w;
                TurnAnnulus {
                    index: n,
                    inner_radius: Length::meters(inner),
                    outer_radius: Length::meters(inner + w),
                }
            })
            .collect()
    }

    /// Centerline radii (half-sides for square coils) of all turns, in meters,
    /// innermost first.
    pub fn centerline_radii_m(&self) -> Vec<f64> {
        self.turn_annuli()
            .iter()
            .map(|a| a.centerline_radius().value())
            .collect()
    }

    /// Total conductor length used for resistance estimates.
    pub fn mean_track_length(&self, method: LengthMethod) -> Result<Length> {
        let meters = match (method, self.shape) {
            (LengthMethod::ClosedForm, CoilShape::Square) => {
                return Err(Error::ClosedFormLengthForSquare)
            }
            (LengthMethod::ClosedForm, CoilShape::Round) => {
                let n = self.turns as f64;
                let w = self.track_width.value();
                let s = self.track_spacing.value();
                std::f64::consts::PI
                    * (2.0 * n * self.outer_radius.value() - n * w - (w + s) * (n - 1.0) * (n + 2.0))
            }
            (LengthMethod::CenterlineSum, shape) => {
                let per_unit_radius = match shape {
                    CoilShape::Round => 2.0 * std::f64::consts::PI,
                    CoilShape::Square => 8.0,
                };
                self.centerline_radii_m().iter().map(|r| per_unit_radius * r).sum()
            }
        };
        if meters <= 0.0 {
            return Err(Error::DegenerateTrackLength { meters });
        }
        Ok(Length::meters(meters))
    }

    /// Reads the JSON coil description (lengths in micrometers).
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: CoilFile = serde_json::from_str(text)?;
        CoilGeometry::new(
            CoilShape::parse(&file.shape)?,
            file.turns,
            Length::micrometers(file.outer_radius_um),
            Length::micrometers(file.track_width_um),
            Length::micrometers(file.track_spacing_um),
            Length::micrometers(file.track_thickness_um),
        )
    }
}

impl std::fmt::Display for CoilGeometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} N={} R_max={}um w={}um s={}um t={}um",
            self.shape.name(),
            self.turns,
            compact(self.outer_radius.as_micrometers()),
            compact(self.track_width.as_micrometers()),
            compact(self.track_spacing.as_micrometers()),
            compact(self.track_thickness.as_micrometers()),
        )
    }
}

/// On-disk coil description; all lengths in micrometers.
#[derive(Debug, Deserialize)]
struct CoilFile {
    shape: String,
    turns: u32,
    outer_radius_um: f64,
    track_width_um: f64,
    track_spacing_um: f64,
    track_thickness_um: f64,
}
