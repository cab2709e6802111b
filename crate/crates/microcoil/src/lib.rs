//! Field, loss, and design models for planar spiral microcoils.
//!
//! A microcoil here is a flat copper spiral (round or square, ~1 mm
//! footprint) driven hard enough that the substrate's heat sinking limits
//! the current. The crate computes:
//!
//! - closed-form center and on-axis fields ([`analytic`]),
//! - an independent straight-segment Biot–Savart check of those formulas,
//!   plus off-axis profiles and sensor-window averaging ([`biot_savart`]),
//! - substrate-limited drive current, Joule losses, and field-per-watt
//!   efficiency, including a turn-count sweep ([`drive`]),
//! - packaging scenarios relating coil-device stacking to delivered field
//!   ([`scenarios`]),
//! - exhaustive constrained design search ([`search`]).
//!
//! All fields are magnetic field strength H in A·m⁻¹ (no magnetic materials
//! anywhere, so B = µ₀H). Quantities carry SI newtypes ([`units`]) to keep
//! the mm/µm/mA zoo from silently corrupting results.

pub mod analytic;
pub mod biot_savart;
pub mod drive;
pub mod error;
pub mod fmt;
pub mod geometry;
pub mod profile;
pub mod scenarios;
pub mod search;
pub mod units;

pub use error::{Error, Result};
pub use geometry::{CoilGeometry, CoilShape, LengthMethod};
pub use units::{Current, Length, MagneticFieldH};
