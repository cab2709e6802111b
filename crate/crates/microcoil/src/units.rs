//! Semantic scalar quantities with one canonical SI unit each.
//!
//! Everything internal is SI (meters, amperes, watts, ...); micrometer,
//! millimeter and milliampere conversions exist only at I/O boundaries.

macro_rules! quantity {
    ($name:ident, $ctor:ident, $si_doc:literal) => {
        #[doc = concat!("Scalar quantity stored in ", $si_doc, ".")]
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
        pub struct $name(f64);

        impl $name {
            #[doc = concat!("Wraps a value given in ", $si_doc, ". Panics on NaN/infinite input.")]
            #[track_caller]
            pub fn $ctor(value: f64) -> Self {
                assert!(
                    value.is_finite(),
                    concat!(stringify!($name), " must be finite, got {}"),
                    value
                );
                Self(value)
            }

            #[doc = concat!("Value in ", $si_doc, ".")]
            pub const fn value(self) -> f64 {
                self.0
            }
        }
    };
}

quantity!(Length, meters, "meters");
quantity!(Current, amperes, "amperes");
quantity!(CurrentDensity, amperes_per_square_meter, "amperes per square meter");
quantity!(MagneticFieldH, amperes_per_meter, "amperes per meter (H field)");
quantity!(Power, watts, "watts");
quantity!(Resistance, ohms, "ohms");
quantity!(Resistivity, ohm_meters, "ohm-meters");
quantity!(Area, square_meters, "square meters");

impl Length {
    pub fn micrometers(value: f64) -> Self {
        Self::meters(value * 1e-6)
    }

    pub fn millimeters(value: f64) -> Self {
        Self::meters(value * 1e-3)
    }

    pub fn as_micrometers(self) -> f64 {
        self.0 * 1e6
    }

    pub fn as_millimeters(self) -> f64 {
        self.0 * 1e3
    }
}

impl Current {
    pub fn milliamperes(value: f64) -> Self {
        Self::amperes(value * 1e-3)
    }

    pub fn as_milliamperes(self) -> f64 {
        self.0 * 1e3
    }
}
