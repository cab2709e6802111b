//! Exact straight-segment Biot–Savart evaluation of coils discretized into
//! concentric filament loops.
//!
//! This is the numerical cross-check for the closed-form models in
//! [`crate::analytic`]: round turns become inscribed regular polygons (error
//! falls off as 1/k² in the segment count), square turns are represented
//! exactly by four segments, and finite track width is refined by splitting
//! each turn into several concentric filaments. Segment sums always run in a
//! fixed order (turn, then filament, then segment) so results are
//! bit-reproducible.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{CoilGeometry, CoilShape};
use crate::profile::{FieldProfile, FieldSample, ProfileMetadata};
use crate::units::{Current, Length, MagneticFieldH};

/// Cartesian point/vector in meters (x, y, z).
pub type Point3 = [f64; 3];

/// Observation points closer than this to a conductor segment are rejected
/// instead of producing unbounded values.
pub const SINGULARITY_LIMIT_M: f64 = 1e-12;
/// Coarser polygons than this misrepresent a circle too badly to be useful.
pub const MIN_SEGMENTS_PER_TURN: usize = 8;
/// Minimum number of points for the averaged-sensor quadrature.
pub const MIN_SENSOR_SAMPLES: usize = 64;

/// Model tag attached to profiles produced by this module.
pub const ORACLE_MODEL: &str = "biot_savart";

fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: Point3, b: Point3) -> Point3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: Point3, s: f64) -> Point3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

fn point_segment_distance(a: Point3, b: Point3, p: Point3) -> f64 {
    let ab = sub(b, a);
    let t = (dot(sub(p, a), ab) / dot(ab, ab)).clamp(0.0, 1.0);
    norm(sub(p, add(a, scale(ab, t))))
}

/// H field of a finite straight filament segment from `a` to `b` carrying
/// `current`, evaluated at `p`. Uses the symmetric two-endpoint form
/// (Hanson & Hirshman), which is exact and well conditioned everywhere off
/// the segment.
pub fn segment_field(a: Point3, b: Point3, current: Current, p: Point3) -> Result<Point3> {
    if a == b {
        return Err(Error::InvalidArgument(
            "segment endpoints must be distinct".into(),
        ));
    }
    if point_segment_distance(a, b, p) < SINGULARITY_LIMIT_M {
        return Err(Error::Singularity {
            limit_m: SINGULARITY_LIMIT_M,
        });
    }
    let r1 = sub(p, a);
    let r2 = sub(p, b);
    let n1 = norm(r1);
    let n2 = norm(r2);
    let denom = n1 * n2 * (n1 * n2 + dot(r1, r2));
    let coeff = current.value() / (4.0 * PI) * (n1 + n2) / denom;
    Ok(scale(cross(r1, r2), coeff))
}

/// One closed or open polyline conductor carrying a fixed current.
#[derive(Debug, Clone)]
pub struct FilamentPath {
    points: Vec<Point3>,
    current: Current,
    closed: bool,
}

impl FilamentPath {
    pub fn new(points: Vec<Point3>, current: Current, closed: bool) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "a filament path needs at least 2 points".into(),
            ));
        }
        for pair in points.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidArgument(
                    "consecutive path points must be distinct".into(),
                ));
            }
        }
        if closed && points.first() == points.last() {
            return Err(Error::InvalidArgument(
                "closed paths must not repeat their first point".into(),
            ));
        }
        Ok(Self {
            points,
            current,
            closed,
        })
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn current(&self) -> Current {
        self.current
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }
}

/// Discretization fineness for the filament model.
#[derive(Debug, Clone, Copy)]
pub struct DiscretizationSpec {
    segments_per_turn: usize,
    filaments_per_track_width: usize,
}

impl DiscretizationSpec {
    pub fn new(segments_per_turn: usize, filaments_per_track_width: usize) -> Result<Self> {
        if segments_per_turn < MIN_SEGMENTS_PER_TURN {
            return Err(Error::InvalidArgument(format!(
                "segments per turn must be at least {MIN_SEGMENTS_PER_TURN}, got {segments_per_turn}"
            )));
        }
        if filaments_per_track_width < 1 {
            return Err(Error::InvalidArgument(
                "filaments per track width must be at least 1".into(),
            ));
        }
        Ok(Self {
            segments_per_turn,
            filaments_per_track_width,
        })
    }

    /// Polygon edge count approximating each round loop; ignored for square
    /// coils, whose four segments are exact.
    pub fn segments_per_turn(&self) -> usize {
        self.segments_per_turn
    }

    pub fn filaments_per_track_width(&self) -> usize {
        self.filaments_per_track_width
    }
}

impl Default for DiscretizationSpec {
    fn default() -> Self {
        Self {
            segments_per_turn: 720,
            filaments_per_track_width: 1,
        }
    }
}

/// Where the averaging window of [`sensor_averaged_field`] sits relative to
/// the requested distance. The physical sensor orientation is not pinned
/// down by the device geometry alone, so both conventions are offered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowAnchor {
    /// Window spans [d, d + window_length]; the sensor extends away from the
    /// coil. This is the default reading.
    StartsAt,
    /// Window spans [d − window_length/2, d + window_length/2].
    CenteredAt,
}

/// Midpoint radii (round) or half-sides (square) of all filament loops,
/// innermost turn first, filaments inner to outer within each turn.
fn filament_loops(coil: &CoilGeometry, spec: DiscretizationSpec) -> Vec<f64> {
    let f = spec.filaments_per_track_width as f64;
    let mut radii = Vec::with_capacity(coil.turns() as usize * spec.filaments_per_track_width);
    for annulus in coil.turn_annuli() {
        let inner = annulus.inner_radius().value();
        let width = annulus.outer_radius().value() - inner;
        for i in 0..spec.filaments_per_track_width {
            radii.push(inner + (i as f64 + 0.5) * width / f);
        }
    }
    radii
}

/// Vertices of one filament loop in the z=0 plane, counter-clockwise so that
/// positive current produces a +z field.
fn loop_vertices_into(buf: &mut Vec<Point3>, shape: CoilShape, radius: f64, segments: usize) {
    buf.clear();
    match shape {
        CoilShape::Round => {
            for j in 0..segments {
                let theta = 2.0 * PI * j as f64 / segments as f64;
                buf.push([radius * theta.cos(), radius * theta.sin(), 0.0]);
            }
        }
        CoilShape::Square => {
            buf.push([radius, -radius, 0.0]);
            buf.push([radius, radius, 0.0]);
            buf.push([-radius, radius, 0.0]);
            buf.push([-radius, -radius, 0.0]);
        }
    }
}

fn polyline_field(points: &[Point3], closed: bool, current: Current, p: Point3) -> Result<Point3> {
    let mut acc = [0.0; 3];
    for pair in points.windows(2) {
        acc = add(acc, segment_field(pair[0], pair[1], current, p)?);
    }
    if closed {
        acc = add(
            acc,
            segment_field(*points.last().unwrap(), points[0], current, p)?,
        );
    }
    Ok(acc)
}

/// Field of a single path at `p`.
pub fn path_field(path: &FilamentPath, p: Point3) -> Result<Point3> {
    polyline_field(&path.points, path.closed, path.current, p)
}

/// Field of a collection of paths at `p`, summed in slice order.
pub fn field_of_paths(paths: &[FilamentPath], p: Point3) -> Result<Point3> {
    let mut acc = [0.0; 3];
    for path in paths {
        acc = add(acc, path_field(path, p)?);
    }
    Ok(acc)
}

/// Materializes the filament model of a coil: per turn,
/// `filaments_per_track_width` concentric closed loops spanning the track
/// width, each carrying `current / filaments_per_track_width`.
///
/// For very fine discretizations prefer [`field_at`], which streams the loops
/// instead of storing every vertex.
pub fn spiral_to_filaments(
    coil: &CoilGeometry,
    current: Current,
    spec: DiscretizationSpec,
) -> Vec<FilamentPath> {
    let per_filament = Current::amperes(current.value() / spec.filaments_per_track_width as f64);
    let mut paths = Vec::new();
    let mut buf = Vec::new();
    for radius in filament_loops(coil, spec) {
        loop_vertices_into(&mut buf, coil.shape(), radius, spec.segments_per_turn);
        paths.push(FilamentPath::new(buf.clone(), per_filament, true).expect("valid loop"));
    }
    paths
}

/// Field of the discretized coil at an arbitrary point. Loops are generated
/// on the fly, so memory stays constant even at 10⁵ filaments per track.
pub fn field_at(
    coil: &CoilGeometry,
    current: Current,
    p: Point3,
    spec: DiscretizationSpec,
) -> Result<Point3> {
    let per_filament = Current::amperes(current.value() / spec.filaments_per_track_width as f64);
    let mut acc = [0.0; 3];
    let mut buf = Vec::new();
    for radius in filament_loops(coil, spec) {
        loop_vertices_into(&mut buf, coil.shape(), radius, spec.segments_per_turn);
        acc = add(acc, polyline_field(&buf, true, per_filament, p)?);
    }
    Ok(acc)
}

/// Axial field component sampled across lateral offsets x ∈ [−half_width,
/// +half_width] at fixed standoff `d`, with values additionally normalized to
/// the on-axis (x=0) field.
///
/// Zero current is rejected because the normalization reference would vanish.
pub fn lateral_profile(
    coil: &CoilGeometry,
    current: Current,
    d: Length,
    half_width: Length,
    samples: usize,
    spec: DiscretizationSpec,
) -> Result<FieldProfile> {
    if d.value() <= 0.0 {
        return Err(Error::InvalidArgument(
            "lateral profiles need a positive standoff distance".into(),
        ));
    }
    if half_width.value() <= 0.0 {
        return Err(Error::InvalidArgument(
            "lateral half-width must be positive".into(),
        ));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("a profile needs at least 2 samples".into()));
    }
    let paths = spiral_to_filaments(coil, current, spec);
    let l = half_width.value();
    let mut points = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = -l + 2.0 * l * (i as f64 / (samples - 1) as f64);
        let h = field_of_paths(&paths, [x, 0.0, d.value()])?[2];
        points.push(FieldSample {
            d,
            x: Length::meters(x),
            h: MagneticFieldH::amperes_per_meter(h),
        });
    }
    let reference = field_of_paths(&paths, [0.0, 0.0, d.value()])?[2];
    FieldProfile::new(
        points,
        ProfileMetadata {
            model: ORACLE_MODEL.to_string(),
            coil: coil.to_string(),
            current,
        },
    )?
    .with_normalization(MagneticFieldH::amperes_per_meter(reference))
}

/// Mean axial field over a straight sensor of length `window` lying on the
/// coil axis, placed per `anchor`, computed as the plain mean of `samples`
/// uniformly spaced point evaluations (endpoints included).
pub fn sensor_averaged_field(
    coil: &CoilGeometry,
    current: Current,
    d: Length,
    window: Length,
    anchor: WindowAnchor,
    samples: usize,
    spec: DiscretizationSpec,
) -> Result<MagneticFieldH> {
    if d.value() < 0.0 {
        return Err(Error::InvalidArgument(
            "sensor distance must be non-negative".into(),
        ));
    }
    if window.value() <= 0.0 {
        return Err(Error::InvalidArgument(
            "sensor window length must be positive".into(),
        ));
    }
    if samples < MIN_SENSOR_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "sensor averaging needs at least {MIN_SENSOR_SAMPLES} samples, got {samples}"
        )));
    }
    let z0 = match anchor {
        WindowAnchor::StartsAt => d.value(),
        WindowAnchor::CenteredAt => d.value() - window.value() / 2.0,
    };
    let paths = spiral_to_filaments(coil, current, spec);
    let mut sum = 0.0;
    for i in 0..samples {
        let z = z0 + window.value() * (i as f64 / (samples - 1) as f64);
        sum += field_of_paths(&paths, [0.0, 0.0, z])?[2];
    }
    Ok(MagneticFieldH::amperes_per_meter(sum / samples as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;

    fn um(v: f64) -> Length {
        Length::micrometers(v)
    }

    fn amp(v: f64) -> Current {
        Current::amperes(v)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    fn reference_coil(shape: CoilShape) -> CoilGeometry {
        CoilGeometry::new(shape, 40, um(500.0), um(5.0), um(5.0), um(10.0)).unwrap()
    }

    /// Literal perpendicular-distance/angle form of the finite-segment field,
    /// used only to cross-check the production formula.
    fn segment_field_by_angles(a: Point3, b: Point3, current: Current, p: Point3) -> Point3 {
        let ab = sub(b, a);
        let len = norm(ab);
        let axis = scale(ab, 1.0 / len);
        let foot = add(a, scale(axis, dot(sub(p, a), axis)));
        let rho_vec = sub(p, foot);
        let rho = norm(rho_vec);
        let sin_a = dot(sub(a, foot), axis) / norm(sub(p, a));
        let sin_b = dot(sub(b, foot), axis) / norm(sub(p, b));
        let magnitude = current.value() / (4.0 * PI * rho) * (sin_b - sin_a);
        let dir = cross(axis, rho_vec);
        scale(dir, magnitude / norm(dir))
    }

    #[test]
    fn segment_field_matches_angle_form() {
        let a = [0.1, -0.2, 0.05];
        let b = [-0.3, 0.4, 0.2];
        let points = [[0.5, 0.5, 0.5], [-1.0, 0.3, -0.2], [0.0, 0.0, 1.0]];
        for p in points {
            let fast = segment_field(a, b, amp(2.5), p).unwrap();
            let literal = segment_field_by_angles(a, b, amp(2.5), p);
            for axis in 0..3 {
                assert!(
                    (fast[axis] - literal[axis]).abs() <= 1e-12 * norm(literal).max(1e-30),
                    "{fast:?} vs {literal:?}"
                );
            }
        }
    }

    #[test]
    fn square_loop_center_is_exact() {
        let a = 500e-6;
        let loop_pts = [[a, -a, 0.0], [a, a, 0.0], [-a, a, 0.0], [-a, -a, 0.0]];
        let h = polyline_field(&loop_pts, true, amp(1.0), [0.0, 0.0, 0.0]).unwrap();
        assert!(rel(h[2], 2f64.sqrt() / (PI * a)) < 1e-12, "{}", h[2]);
        assert!(h[0].abs() < 1e-9 * h[2] && h[1].abs() < 1e-9 * h[2]);
    }

    #[test]
    fn reversing_a_segment_negates_the_field() {
        let a = [0.0, 0.0, -0.3];
        let b = [0.1, 0.0, 0.4];
        let p = [0.2, -0.1, 0.05];
        let fwd = segment_field(a, b, amp(1.3), p).unwrap();
        let bwd = segment_field(b, a, amp(1.3), p).unwrap();
        assert_eq!(fwd, scale(bwd, -1.0));
    }

    #[test]
    fn collinear_chain_approaches_the_infinite_line() {
        let rho = 1e-3;
        let span = 1e4 * rho;
        // three collinear segments along z through the origin
        let zs = [-span, -span / 3.0, span / 3.0, span];
        let pts: Vec<Point3> = zs.iter().map(|&z| [0.0, 0.0, z]).collect();
        let h = polyline_field(&pts, false, amp(2.0), [rho, 0.0, 0.0]).unwrap();
        let expected = 2.0 / (2.0 * PI * rho);
        assert!(rel(h[1], expected) < 1e-6, "{} vs {expected}", h[1]);
    }

    #[test]
    fn points_on_or_near_the_conductor_are_rejected() {
        let a = [0.0, 0.0, 0.0];
        let b = [1.0, 0.0, 0.0];
        assert!(matches!(
            segment_field(a, b, amp(1.0), [0.5, 0.0, 0.0]),
            Err(Error::Singularity { .. })
        ));
        assert!(matches!(
            segment_field(a, b, amp(1.0), [0.5, 1e-13, 0.0]),
            Err(Error::Singularity { .. })
        ));
        assert!(segment_field(a, b, amp(1.0), [0.5, 1e-9, 0.0]).is_ok());
        assert!(matches!(
            segment_field(a, a, amp(1.0), [0.5, 1.0, 0.0]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn path_validation() {
        let p0 = [0.0, 0.0, 0.0];
        let p1 = [1.0, 0.0, 0.0];
        let p2 = [1.0, 1.0, 0.0];
        assert!(FilamentPath::new(vec![p0], amp(1.0), false).is_err());
        assert!(FilamentPath::new(vec![p0, p0], amp(1.0), false).is_err());
        assert!(FilamentPath::new(vec![p0, p1, p2, p0], amp(1.0), true).is_err());
        let closed = FilamentPath::new(vec![p0, p1, p2], amp(1.0), true).unwrap();
        assert_eq!(closed.segment_count(), 3);
        let open = FilamentPath::new(vec![p0, p1, p2], amp(1.0), false).unwrap();
        assert_eq!(open.segment_count(), 2);
    }

    #[test]
    fn discretization_validation() {
        assert!(DiscretizationSpec::new(7, 1).is_err());
        assert!(DiscretizationSpec::new(8, 0).is_err());
        let spec = DiscretizationSpec::default();
        assert_eq!(spec.segments_per_turn(), 720);
        assert_eq!(spec.filaments_per_track_width(), 1);
    }

    #[test]
    fn filament_counting_and_centerline_reproduction() {
        let square = reference_coil(CoilShape::Square);
        let spec = DiscretizationSpec::new(16, 2).unwrap();
        let paths = spiral_to_filaments(&square, amp(1.0), spec);
        assert_eq!(paths.len(), 80);
        let total_segments: usize = paths.iter().map(|p| p.segment_count()).sum();
        assert_eq!(total_segments, 4 * 40 * 2);
        assert!(paths.iter().all(|p| rel(p.current().value(), 0.5) < 1e-15));

        let round = reference_coil(CoilShape::Round);
        let single = DiscretizationSpec::new(16, 1).unwrap();
        let paths = spiral_to_filaments(&round, amp(1.0), single);
        let radii: Vec<f64> = paths.iter().map(|p| norm(p.points()[0])).collect();
        let expected = round.centerline_radii_m();
        for (got, want) in radii.iter().zip(expected.iter()) {
            assert!(rel(*got, *want) < 1e-12);
        }
    }

    #[test]
    fn square_oracle_matches_closed_form_on_axis() {
        let coil = reference_coil(CoilShape::Square);
        let spec = DiscretizationSpec::new(8, 1).unwrap();
        for d_um in [0.0, 280.0, 2000.0] {
            let oracle = field_at(&coil, amp(0.3), [0.0, 0.0, d_um * 1e-6], spec).unwrap()[2];
            let closed = analytic::on_axis_field(&coil, amp(0.3), um(d_um)).value();
            assert!(rel(oracle, closed) < 1e-9, "d={d_um}: {oracle} vs {closed}");
        }
    }

    #[test]
    fn round_oracle_converges_to_closed_form_on_axis() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(4096, 1).unwrap();
        for d_um in [0.0, 280.0, 2000.0] {
            let oracle = field_at(&coil, amp(0.3), [0.0, 0.0, d_um * 1e-6], spec).unwrap()[2];
            let closed = analytic::on_axis_field(&coil, amp(0.3), um(d_um)).value();
            assert!(rel(oracle, closed) < 1e-5, "d={d_um}: {oracle} vs {closed}");
        }
    }

    #[test]
    fn polygon_error_drops_fourfold_per_doubling() {
        let coil = reference_coil(CoilShape::Round);
        let exact = analytic::on_axis_field(&coil, amp(1.0), um(0.0)).value();
        let err = |k: usize| {
            let spec = DiscretizationSpec::new(k, 1).unwrap();
            let h = field_at(&coil, amp(1.0), [0.0, 0.0, 0.0], spec).unwrap()[2];
            (h - exact).abs() / exact
        };
        let ratio = err(512) / err(1024);
        assert!((3.4..=4.6).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn fine_filament_sum_matches_annular_sheet_center_field() {
        // one 100..105 um annular turn split into many filaments
        let coil =
            CoilGeometry::new(CoilShape::Round, 1, um(105.0), um(5.0), um(5.0), um(10.0)).unwrap();
        let spec = DiscretizationSpec::new(256, 2000).unwrap();
        let oracle = field_at(&coil, amp(1.0), [0.0, 0.0, 0.0], spec).unwrap()[2];
        assert!(rel(oracle, 4879.016416943205) < 1e-3, "{oracle}");
    }

    #[test]
    fn axial_component_is_even_in_lateral_offset() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(64, 1).unwrap();
        for x_um in [120.0, 300.0, 499.0] {
            let hp = field_at(&coil, amp(0.3), [x_um * 1e-6, 0.0, 2e-3], spec).unwrap()[2];
            let hm = field_at(&coil, amp(0.3), [-x_um * 1e-6, 0.0, 2e-3], spec).unwrap()[2];
            assert!(rel(hp, hm) < 1e-12, "x={x_um}: {hp} vs {hm}");
        }
    }

    #[test]
    fn transverse_components_vanish_on_axis() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(64, 1).unwrap();
        let h = field_at(&coil, amp(0.3), [0.0, 0.0, 2e-3], spec).unwrap();
        assert!(h[0].abs() < 1e-9 * h[2]);
        assert!(h[1].abs() < 1e-9 * h[2]);
    }

    #[test]
    fn superposition_of_two_coils() {
        let inner =
            CoilGeometry::new(CoilShape::Round, 1, um(200.0), um(5.0), um(5.0), um(10.0)).unwrap();
        let outer =
            CoilGeometry::new(CoilShape::Round, 1, um(400.0), um(5.0), um(5.0), um(10.0)).unwrap();
        let spec = DiscretizationSpec::new(32, 1).unwrap();
        let p = [50e-6, -30e-6, 150e-6];
        let separate = add(
            field_at(&inner, amp(0.2), p, spec).unwrap(),
            field_at(&outer, amp(0.2), p, spec).unwrap(),
        );
        let mut combined_paths = spiral_to_filaments(&inner, amp(0.2), spec);
        combined_paths.extend(spiral_to_filaments(&outer, amp(0.2), spec));
        let combined = field_of_paths(&combined_paths, p).unwrap();
        for axis in 0..3 {
            assert!((separate[axis] - combined[axis]).abs() <= 1e-13 * norm(separate).max(1e-30));
        }
    }

    #[test]
    fn lateral_profile_shape_and_normalization() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(256, 1).unwrap();
        let profile =
            lateral_profile(&coil, amp(0.3), um(2000.0), um(500.0), 5, spec).unwrap();
        assert_eq!(profile.samples().len(), 5);
        let h: Vec<f64> = profile.samples().iter().map(|s| s.h.value()).collect();
        let h0 = profile.normalization().unwrap();
        assert!(rel(h[2], h0) < 1e-12); // middle sample sits exactly at x=0
        assert!(rel(h[0], h[4]) < 1e-12 && rel(h[1], h[3]) < 1e-12);
        assert!(h[1] < h[2] && h[0] < h[1]);
        assert!(h[4] / h0 >= 0.75, "edge ratio {}", h[4] / h0);
        assert_eq!(profile.metadata().model, ORACLE_MODEL);
    }

    #[test]
    fn lateral_profile_validation() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(64, 1).unwrap();
        assert!(lateral_profile(&coil, amp(0.3), um(0.0), um(500.0), 5, spec).is_err());
        assert!(lateral_profile(&coil, amp(0.3), um(2000.0), um(0.0), 5, spec).is_err());
        assert!(lateral_profile(&coil, amp(0.3), um(2000.0), um(500.0), 1, spec).is_err());
        // zero current has no usable normalization reference
        assert!(lateral_profile(&coil, amp(0.0), um(2000.0), um(500.0), 5, spec).is_err());
    }

    #[test]
    fn sensor_average_lies_between_the_window_endpoints() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(128, 1).unwrap();
        let d = um(2000.0);
        let window = um(2000.0);
        let avg = sensor_averaged_field(&coil, amp(0.3), d, window, WindowAnchor::StartsAt, 64, spec)
            .unwrap()
            .value();
        let near = field_at(&coil, amp(0.3), [0.0, 0.0, 2e-3], spec).unwrap()[2];
        let far = field_at(&coil, amp(0.3), [0.0, 0.0, 4e-3], spec).unwrap()[2];
        assert!(avg < near && avg > far, "{far} < {avg} < {near}");
    }

    #[test]
    fn tiny_window_degenerates_to_the_point_sample() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(128, 1).unwrap();
        let avg = sensor_averaged_field(
            &coil,
            amp(0.3),
            um(2000.0),
            um(1.0),
            WindowAnchor::StartsAt,
            64,
            spec,
        )
        .unwrap()
        .value();
        let point = field_at(&coil, amp(0.3), [0.0, 0.0, 2e-3], spec).unwrap()[2];
        assert!(rel(avg, point) < 1e-3, "{avg} vs {point}");
    }

    #[test]
    fn centered_window_equals_shifted_starting_window() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(128, 1).unwrap();
        let centered = sensor_averaged_field(
            &coil,
            amp(0.3),
            um(3000.0),
            um(2000.0),
            WindowAnchor::CenteredAt,
            64,
            spec,
        )
        .unwrap()
        .value();
        let started = sensor_averaged_field(
            &coil,
            amp(0.3),
            um(2000.0),
            um(2000.0),
            WindowAnchor::StartsAt,
            64,
            spec,
        )
        .unwrap()
        .value();
        assert!(rel(centered, started) < 1e-12);
        assert!(centered > 0.0);
    }

    #[test]
    fn sensor_average_validation() {
        let coil = reference_coil(CoilShape::Round);
        let spec = DiscretizationSpec::new(64, 1).unwrap();
        let anchor = WindowAnchor::StartsAt;
        assert!(
            sensor_averaged_field(&coil, amp(0.3), um(-1.0), um(2000.0), anchor, 64, spec).is_err()
        );
        assert!(
            sensor_averaged_field(&coil, amp(0.3), um(2000.0), um(0.0), anchor, 64, spec).is_err()
        );
        assert!(
            sensor_averaged_field(&coil, amp(0.3), um(2000.0), um(2000.0), anchor, 63, spec)
                .is_err()
        );
    }
}
