//! Moves the noise of an injection circuit onto the resource at location 1.
//!
//! Pauli errors after the resource are either absorbed by a measurement or are
//! equivalent to a Pauli on the resource:
//!
//! | location | X        | Y        | Z        |
//! |----------|----------|----------|----------|
//! | 2, 3     | absorbed | Z        | Z        |
//! | 4        | X        | Y        | Z        |
//! | 5, 6     | X        | X        | absorbed |
//!
//! Location 4 relies on the Bell-projector identity
//! `(P ⊗ I) B (P ⊗ I) = (I ⊗ P) B (I ⊗ P)`; the oracle checks every entry.

use nalgebra::Matrix3;

use crate::bloch::BlochVector;
use crate::channel::{AffineChannel, Pauli};
use crate::error::{check_range, Error, Result};
use crate::noise::{InjectionVariant, Location, LocationNoise, PairDistribution, ResourceSpec};

const PAULI_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftOutcome {
    Absorbed,
    EffectivePauli(Pauli),
}

impl ShiftOutcome {
    pub fn as_pauli(self) -> Pauli {
        match self {
            ShiftOutcome::Absorbed => Pauli::I,
            ShiftOutcome::EffectivePauli(p) => p,
        }
    }
}

/// Where a Pauli at `location` ends up. Location 1 and the control input
/// already sit on the resource. Location 7 needs the gate and goes through
/// [`shift_through_gate`].
pub fn shift_rule(location: Location, pauli: Pauli) -> Result<ShiftOutcome> {
    use Pauli::*;
    use ShiftOutcome::*;
    if pauli == I {
        return Ok(Absorbed);
    }
    let out = match (location, pauli) {
        (Location::One | Location::ControlInput | Location::Four, p) => EffectivePauli(p),
        (Location::Two | Location::Three, X) => Absorbed,
        (Location::Two | Location::Three, _) => EffectivePauli(Z),
        (Location::Five | Location::Six, Z) => Absorbed,
        (Location::Five | Location::Six, _) => EffectivePauli(X),
        (Location::Seven, p) => return Err(Error::NoShiftRule { location, pauli: p }),
    };
    Ok(out)
}

/// A Pauli on `|+>` before the resource gate. Only Z through a phase gate
/// stays a Pauli.
pub fn shift_through_gate(pauli: Pauli, resource: &ResourceSpec) -> Result<ShiftOutcome> {
    match pauli {
        Pauli::I => Ok(ShiftOutcome::Absorbed),
        Pauli::Z if resource.is_phase_gate() => Ok(ShiftOutcome::EffectivePauli(Pauli::Z)),
        p => Err(Error::NoShiftRule {
            location: Location::Seven,
            pauli: p,
        }),
    }
}

/// Pushes a single-location Pauli distribution to location 1.
pub fn shift_distribution(location: Location, probs: [f64; 4]) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for p in Pauli::ALL {
        out[shift_rule(location, p)?.as_pauli().index()] += probs[p.index()];
    }
    Ok(out)
}

/// Reduces the joint noise after the CNOT to a Pauli distribution at location 1.
pub fn reduce_pair_noise(dist: &PairDistribution) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (top, bottom, p) in dist.iter() {
        // Locations 2 and 5 never reject a Pauli.
        let a = shift_rule(Location::Two, top).map_or(Pauli::I, ShiftOutcome::as_pauli);
        let b = shift_rule(Location::Five, bottom).map_or(Pauli::I, ShiftOutcome::as_pauli);
        out[a.compose(b).index()] += p;
    }
    out
}

/// Noise acting on the resource in place of the whole circuit's noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveMap {
    /// Applied to the ideal resource before a perfect teleportation.
    pub channel: AffineChannel,
    /// Set when the channel is diagonal with zero offset.
    pub diagonal_factors: Option<[f64; 3]>,
    /// `s` when the non-Pauli noise maps the resource `b` to `s b`.
    pub scalar_prefactor: Option<f64>,
}

impl EffectiveMap {
    pub fn apply(&self, b: BlochVector) -> BlochVector {
        self.channel.apply(b)
    }
}

fn pauli_part(noise: &LocationNoise, location: Location) -> Result<[f64; 4]> {
    match noise.get(location) {
        None => Ok([1.0, 0.0, 0.0, 0.0]),
        Some(ch) => ch
            .pauli_probabilities(PAULI_TOL)
            .ok_or(Error::NotPauliMixture(location)),
    }
}

/// Noise on the resource wire up to the CNOT, in circuit order: location 7
/// (conjugated through the gate), location 1, then the control input.
fn resource_chain(noise: &LocationNoise, resource: &ResourceSpec) -> Result<AffineChannel> {
    let mut chain = AffineChannel::identity();
    if let Some(seven) = noise.get(Location::Seven) {
        chain = conjugate_through_gate(seven, resource)?;
    }
    Ok(chain
        .then(&noise.channel(Location::One))
        .then(&noise.channel(Location::ControlInput)))
}

/// `R ∘ ch ∘ R^T` for the resource gate's Bloch rotation `R`.
fn conjugate_through_gate(ch: &AffineChannel, resource: &ResourceSpec) -> Result<AffineChannel> {
    let rot: Matrix3<f64> = resource.gate_rotation().ok_or_else(|| {
        Error::VariantMismatch("location 7 noise needs a gate resource".into())
    })?;
    Ok(AffineChannel::new(
        rot * ch.matrix * rot.transpose(),
        rot * ch.offset,
    ))
}

/// Combines all location noise into one channel on the resource.
///
/// The resource-wire chain (which may be non-unital) acts first; the Pauli
/// noise from locations 2 to 6, which enters after the CNOT, is shifted to
/// location 1 and applied afterwards.
pub fn effective_map(noise: &LocationNoise, resource: &ResourceSpec) -> Result<EffectiveMap> {
    if noise.variant() != resource.variant() {
        return Err(Error::VariantMismatch(format!(
            "{} noise with a {} resource",
            noise.variant(),
            resource.variant()
        )));
    }
    let chain = resource_chain(noise, resource)?;

    let mut shifted = AffineChannel::pauli_mixture(reduce_pair_noise(noise.pair()));
    for loc in [Location::Three, Location::Four, Location::Six] {
        let dist = shift_distribution(loc, pauli_part(noise, loc)?)?;
        shifted = shifted.then(&AffineChannel::pauli_mixture(dist));
    }
    let channel = chain.then(&shifted);

    let diagonal_factors = channel
        .is_diagonal(PAULI_TOL)
        .then(|| channel.diagonal_factors());
    let b = resource.bloch();
    let image = chain.apply(b);
    let s = image.dot(b);
    let scalar_prefactor = (image.max_abs_diff(b.scale(s)) <= PAULI_TOL).then_some(s);

    Ok(EffectiveMap {
        channel,
        diagonal_factors,
        scalar_prefactor,
    })
}

/// Closed-form Knill effective factors `(A^n B^2, A^n B^3, A^n B^2)` with
/// `A = 1 - 16 gamma / 15`, `B = 1 - 8 gamma / 15`.
pub fn knill_effective_formula(gamma: f64, variant: InjectionVariant) -> Result<[f64; 3]> {
    check_range("gamma", gamma, 0.0, 15.0 / 16.0)?;
    let a = (1.0 - 16.0 * gamma / 15.0).powi(variant.exponent());
    let b = 1.0 - 8.0 * gamma / 15.0;
    Ok([a * b * b, a * b * b * b, a * b * b])
}
