use crate::channel::Pauli;
use crate::noise::Location;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("expected a pure state, got Bloch norm {0}")]
    NotPure(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("no shift rule for {pauli} at location {location}")]
    NoShiftRule { location: Location, pauli: Pauli },

    #[error("channel at location {0} is not a Pauli mixture and cannot be shifted")]
    NotPauliMixture(Location),

    #[error("noise does not match the injection variant: {0}")]
    VariantMismatch(String),

    #[error("octahedron norm is not strictly decreasing near strength {at}")]
    NotMonotone { at: f64 },

    #[error("resource stays outside the octahedron up to strength {s_max}")]
    NoThreshold { s_max: f64 },

    #[error("expected one sign change on ({lo}, {hi}), found {found}; check the polynomial coefficients")]
    RootCount { lo: f64, hi: f64, found: usize },

    #[error("circuit error: {0}")]
    Circuit(String),
}

/// Checks `lo <= value <= hi`, rejecting NaN.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, lo, hi })
    }
}
