//! Closed-form field models for spiral coils.
//!
//! Center field treats each round turn as a uniform annular current sheet:
//! H_n = I·ln(R_out/R_in) / (2(R_out−R_in)), summed over turns. On-axis
//! fields use the filament approximation with one loop per turn at the
//! centerline radius (round) or centerline half-side (square). All models are
//! linear in current and homogeneous of degree −1 in length.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{CoilGeometry, CoilShape, TurnAnnulus};
use crate::profile::{FieldProfile, FieldSample, ProfileMetadata};
use crate::units::{Current, Length, MagneticFieldH};

/// Model tag for round-coil center fields.
pub const ROUND_CENTER_MODEL: &str = "annular-sheet-sum";
/// Model tag for square-coil center fields. The annular-sheet derivation only
/// covers round turns; square coils fall back to exact square filament loops
/// at the track centerline, which is a model extension, and outputs say so.
pub const SQUARE_CENTER_MODEL: &str = "square-loop-centerline-sum (model extension)";
/// Model tag for on-axis filament-loop fields.
pub const ON_AXIS_MODEL: &str = "on-axis-filament-sum";

/// Center field with the tag of the model that produced it.
#[derive(Debug, Clone, Copy)]
pub struct CenterField {
    pub h: MagneticFieldH,
    pub model: &'static str,
}

/// Center field of a single annular turn carrying `current` spread uniformly
/// across its width.
pub fn center_field_per_turn(annulus: &TurnAnnulus, current: Current) -> MagneticFieldH {
    let r_in = annulus.inner_radius().value();
    let r_out = annulus.outer_radius().value();
    let factor = (r_out / r_in).ln() / (2.0 * (r_out - r_in));
    MagneticFieldH::amperes_per_meter(current.value() * factor)
}

fn round_center_factor(coil: &CoilGeometry) -> f64 {
    let big_n = coil.turns() as f64;
    let w = coil.track_width().value();
    let s = coil.track_spacing().value();
    let r_max = coil.outer_radius().value();
    let sum: f64 = (1..=coil.turns())
        .map(|n| {
            let inner = r_max - (big_n - n as f64) * (w + s) - w;
            (1.0 + w / inner).ln()
        })
        .sum();
    sum / (2.0 * w)
}

fn square_center_factor(coil: &CoilGeometry) -> f64 {
    coil.centerline_radii_m()
        .iter()
        .map(|a| 2f64.sqrt() / (PI * a))
        .sum()
}

/// Field at the coil center. Round coils use the annular-sheet sum; square
/// coils use exact square filament loops (see [`SQUARE_CENTER_MODEL`]).
pub fn center_field(coil: &CoilGeometry, current: Current) -> CenterField {
    let (factor, model) = match coil.shape() {
        CoilShape::Round => (round_center_factor(coil), ROUND_CENTER_MODEL),
        CoilShape::Square => (square_center_factor(coil), SQUARE_CENTER_MODEL),
    };
    CenterField {
        h: MagneticFieldH::amperes_per_meter(current.value() * factor),
        model,
    }
}

fn round_on_axis_factor(radii_m: &[f64], d_m: f64) -> f64 {
    0.5 * radii_m
        .iter()
        .map(|r| r * r / (d_m * d_m + r * r).powf(1.5))
        .sum::<f64>()
}

fn square_on_axis_factor(half_sides_m: &[f64], d_m: f64) -> f64 {
    (2.0 / PI)
        * half_sides_m
            .iter()
            .map(|a| {
                let dd = d_m * d_m;
                a * a / ((dd + a * a) * (dd + 2.0 * a * a).sqrt())
            })
            .sum::<f64>()
}

/// Literal trigonometric form of the square-loop on-axis term; algebraically
/// identical to the closed form used by `square_on_axis_factor`, kept for the
/// machine-precision regression test.
#[allow(dead_code)]
fn square_on_axis_factor_trig(half_sides_m: &[f64], d_m: f64) -> f64 {
    (2.0 / PI)
        * half_sides_m
            .iter()
            .map(|a| {
                let hypotenuse = (d_m * d_m + a * a).sqrt();
                a / (d_m * d_m + a * a) * (a / hypotenuse).atan().sin()
            })
            .sum::<f64>()
}

/// On-axis field at signed axial distance `d` from the coil plane. The field
/// is even in `d`; negative distances are reflected.
pub fn on_axis_field(coil: &CoilGeometry, current: Current, d: Length) -> MagneticFieldH {
    let d_m = d.value().abs();
    let radii = coil.centerline_radii_m();
    let factor = match coil.shape() {
        CoilShape::Round => round_on_axis_factor(&radii, d_m),
        CoilShape::Square => square_on_axis_factor(&radii, d_m),
    };
    MagneticFieldH::amperes_per_meter(current.value() * factor)
}

/// Uniformly sampled on-axis profile over [d_start, d_end].
pub fn on_axis_profile(
    coil: &CoilGeometry,
    current: Current,
    d_start: Length,
    d_end: Length,
    samples: usize,
) -> Result<FieldProfile> {
    if d_start.value() < 0.0 {
        return Err(Error::InvalidArgument(
            "profile start distance must be non-negative".into(),
        ));
    }
    if d_end.value() <= d_start.value() {
        return Err(Error::InvalidArgument(
            "profile end distance must exceed the start".into(),
        ));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("a profile needs at least 2 samples".into()));
    }
    let span = d_end.value() - d_start.value();
    let points = (0..samples).map(|i| {
        let d = if i + 1 == samples {
            d_end
        } else {
            Length::meters(d_start.value() + span * i as f64 / (samples - 1) as f64)
        };
        FieldSample {
            d,
            x: Length::meters(0.0),
            h: on_axis_field(coil, current, d),
        }
    });
    FieldProfile::new(
        points.collect(),
        ProfileMetadata {
            model: format!("{ON_AXIS_MODEL} ({})", coil.shape().name()),
            coil: coil.to_string(),
            current,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::Length;

    fn um(v: f64) -> Length {
        Length::micrometers(v)
    }

    fn amp(v: f64) -> Current {
        Current::amperes(v)
    }

    fn reference_coil() -> CoilGeometry {
        CoilGeometry::new(CoilShape::Round, 40, um(500.0), um(5.0), um(5.0), um(10.0)).unwrap()
    }

    /// Coil whose single turn has its centerline exactly at 500 um.
    fn single_turn(shape: CoilShape) -> CoilGeometry {
        CoilGeometry::new(shape, 1, um(502.5), um(5.0), um(5.0), um(10.0)).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn annular_turn_matches_concentric_filament_oracle() {
        // oracle: split the annulus into 1e5 concentric filament loops at the
        // midpoint radii, each carrying I/1e5 and contributing I_k/(2 r_k)
        let coil =
            CoilGeometry::new(CoilShape::Round, 1, um(105.0), um(5.0), um(5.0), um(10.0)).unwrap();
        let annulus = coil.turn_annuli()[0];
        let n = 100_000;
        let (r_in, width) = (100e-6, 5e-6);
        let oracle: f64 = (0..n)
            .map(|k| {
                let r = r_in + (k as f64 + 0.5) * width / n as f64;
                (1.0 / n as f64) / (2.0 * r)
            })
            .sum();
        let value = center_field_per_turn(&annulus, amp(1.0)).value();
        assert!(rel(value, oracle) < 1e-6, "{value} vs oracle {oracle}");
        assert!(rel(value, 4879.016416943205) < 1e-12);
    }

    #[test]
    fn vanishing_width_tends_to_filament_loop() {
        // w -> 0 at fixed 500 um centerline: limit is I/(2R) = 1000 A/m
        let coil = CoilGeometry::new(
            CoilShape::Round,
            1,
            um(500.0 + 5e-4),
            um(1e-3),
            um(5.0),
            um(10.0),
        )
        .unwrap();
        let h = center_field_per_turn(&coil.turn_annuli()[0], amp(1.0)).value();
        assert!(rel(h, 1000.0) < 1e-9, "{h}");
    }

    #[test]
    fn per_turn_field_is_linear_in_current() {
        let coil = reference_coil();
        let annulus = coil.turn_annuli()[0];
        let h1 = center_field_per_turn(&annulus, amp(0.3)).value();
        let h2 = center_field_per_turn(&annulus, amp(0.6)).value();
        assert_eq!(h2, 2.0 * h1);
    }

    #[test]
    fn reference_coil_center_field_at_175_ma() {
        let cf = center_field(&reference_coil(), Current::milliamperes(175.0));
        assert_eq!(cf.model, ROUND_CENTER_MODEL);
        assert!(rel(cf.h.value(), 13907.67187916143) < 1e-12, "{}", cf.h.value());
        assert!(rel(cf.h.value(), 14000.0) < 0.10);
    }

    #[test]
    fn center_field_equals_sum_of_turn_fields() {
        let coil = reference_coil();
        let whole = center_field(&coil, amp(1.0)).h.value();
        let summed: f64 = coil
            .turn_annuli()
            .iter()
            .map(|a| center_field_per_turn(a, amp(1.0)).value())
            .sum();
        assert!(rel(whole, summed) < 1e-12);
    }

    #[test]
    fn single_turn_center_field_and_filament_cross_check() {
        let coil =
            CoilGeometry::new(CoilShape::Round, 1, um(500.0), um(5.0), um(5.0), um(10.0)).unwrap();
        let h = center_field(&coil, amp(1.0)).h.value();
        assert!(rel(h, 1005.0335853501451) < 1e-12, "{h}");
        // filament loop at the 497.5 um centerline
        let filament = 1.0 / (2.0 * 497.5e-6);
        assert!(rel(h, filament) < 1e-5);
    }

    #[test]
    fn zero_current_gives_zero_field() {
        assert_eq!(center_field(&reference_coil(), amp(0.0)).h.value(), 0.0);
        assert_eq!(
            on_axis_field(&reference_coil(), amp(0.0), um(100.0)).value(),
            0.0
        );
    }

    #[test]
    fn square_center_field_is_the_loop_sum_and_tagged_as_extension() {
        let coil = single_turn(CoilShape::Square);
        let cf = center_field(&coil, amp(1.0));
        assert_eq!(cf.model, SQUARE_CENTER_MODEL);
        assert!(rel(cf.h.value(), 2f64.sqrt() / (PI * 500e-6)) < 1e-12);
    }

    #[test]
    fn round_single_loop_on_axis_values() {
        let coil = single_turn(CoilShape::Round);
        let at0 = on_axis_field(&coil, amp(1.0), um(0.0)).value();
        assert!(rel(at0, 1000.0) < 1e-9, "{at0}");
        let at_r = on_axis_field(&coil, amp(1.0), um(500.0)).value();
        assert!(rel(at_r, 353.5533905932737) < 1e-9, "{at_r}");
    }

    #[test]
    fn square_single_loop_on_axis_center() {
        let coil = single_turn(CoilShape::Square);
        let at0 = on_axis_field(&coil, amp(1.0), um(0.0)).value();
        assert!(rel(at0, 900.3163161571061) < 1e-9, "{at0}");
    }

    #[test]
    fn table_row_s1_level_field() {
        let h = on_axis_field(&reference_coil(), Current::milliamperes(300.0), um(280.0)).value();
        assert!(rel(h, 6896.007194868275) < 1e-12, "{h}");
        assert!(rel(h, 6900.0) < 0.15);
    }

    #[test]
    fn trig_and_closed_square_terms_agree_to_machine_precision() {
        let sides = [102.5e-6, 305e-6, 497.5e-6];
        for &d in &[0.0, 25e-6, 280e-6, 2e-3, 50e-3] {
            let closed = square_on_axis_factor(&sides, d);
            let trig = square_on_axis_factor_trig(&sides, d);
            assert!(rel(closed, trig) < 1e-14, "d={d}: {closed} vs {trig}");
        }
    }

    #[test]
    fn negative_distances_reflect() {
        let coil = reference_coil();
        let plus = on_axis_field(&coil, amp(0.3), um(280.0)).value();
        let minus = on_axis_field(&coil, amp(0.3), um(-280.0)).value();
        assert_eq!(plus, minus);
    }

    #[test]
    fn on_axis_consistency_with_center_field_for_narrow_tracks() {
        // filament sum at d=0 vs annular-sheet center field: within 1% when w << R_min
        let coil = reference_coil();
        let filament_sum = on_axis_field(&coil, amp(1.0), um(0.0)).value();
        let sheet = center_field(&coil, amp(1.0)).h.value();
        assert!(rel(filament_sum, sheet) < 0.01, "{filament_sum} vs {sheet}");
    }

    #[test]
    fn profile_is_monotone_and_anchored_at_center() {
        let profile = on_axis_profile(
            &reference_coil(),
            Current::milliamperes(300.0),
            um(0.0),
            um(1000.0),
            101,
        )
        .unwrap();
        assert_eq!(profile.samples().len(), 101);
        let h0 = profile.samples()[0].h.value();
        assert!(rel(h0, 23840.301141432617) < 1e-12, "{h0}");
        for pair in profile.samples().windows(2) {
            assert!(pair[1].h.value() < pair[0].h.value());
        }
        let last = profile.samples().last().unwrap();
        assert_eq!(last.d.value(), 1e-3);
    }

    #[test]
    fn zero_current_profile_is_all_zero() {
        let profile =
            on_axis_profile(&reference_coil(), amp(0.0), um(0.0), um(1000.0), 11).unwrap();
        assert!(profile.samples().iter().all(|s| s.h.value() == 0.0));
    }

    #[test]
    fn profile_argument_validation() {
        let coil = reference_coil();
        assert!(on_axis_profile(&coil, amp(1.0), um(-1.0), um(10.0), 5).is_err());
        assert!(on_axis_profile(&coil, amp(1.0), um(10.0), um(10.0), 5).is_err());
        assert!(on_axis_profile(&coil, amp(1.0), um(0.0), um(10.0), 1).is_err());
    }
}
