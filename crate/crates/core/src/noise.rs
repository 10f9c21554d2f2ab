//! Noise models on the two teleportation state-injection circuits.
//!
//! Wire layout shared by both variants (time runs left to right):
//!
//! ```text
//! A: [7: |+> prep] [gate] --1-- --ci-- ●---2---3--- X-measure
//!                                      │
//! B: ---- Bell half ----------4------- ⊕---5---6--- Z-measure
//! C: ---- Bell half --------------------------------- output (corrected)
//! ```
//!
//! Location 7 and the gate exist only for [`InjectionVariant::GateResource`].
//! `ci` ("control input") is the control wire immediately before the CNOT,
//! used when a model replaces the CNOT by noise followed by a perfect CNOT.
//! Locations 2 and 5 carry a joint two-qubit Pauli distribution.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{Matrix2, Matrix3, Rotation3, Unit, Vector3};
use num_complex::Complex64;

use crate::bloch::{phase_state, BlochVector, PhaseAngle};
use crate::channel::{AffineChannel, Pauli};
use crate::error::{check_range, Error, Result};

const DIST_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InjectionVariant {
    /// A prepared non-Clifford state is teleported in; locations 1 to 6.
    StateResource,
    /// A non-Clifford gate acts on `|+>` first; adds location 7.
    GateResource,
}

impl InjectionVariant {
    /// Number of times the CNOT-pair and gate noise hit the resource.
    pub fn exponent(self) -> i32 {
        match self {
            InjectionVariant::StateResource => 1,
            InjectionVariant::GateResource => 2,
        }
    }

    pub fn locations(self) -> &'static [Location] {
        use Location::*;
        match self {
            InjectionVariant::StateResource => &[One, ControlInput, Two, Three, Four, Five, Six],
            InjectionVariant::GateResource => {
                &[One, ControlInput, Two, Three, Four, Five, Six, Seven]
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InjectionVariant::StateResource => "state",
            InjectionVariant::GateResource => "gate",
        }
    }
}

impl fmt::Display for InjectionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Location {
    One,
    ControlInput,
    Two,
    Three,
    Four,
    Five,
    Six,
    Seven,
}

impl Location {
    /// Locations that take a single-qubit channel (2 and 5 share the pair).
    pub const SINGLE: [Location; 6] = [
        Location::One,
        Location::ControlInput,
        Location::Three,
        Location::Four,
        Location::Six,
        Location::Seven,
    ];
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Location::One => "1",
            Location::ControlInput => "control-input",
            Location::Two => "2",
            Location::Three => "3",
            Location::Four => "4",
            Location::Five => "5",
            Location::Six => "6",
            Location::Seven => "7",
        };
        f.write_str(s)
    }
}

/// Joint Pauli distribution over `(top, bottom)` pairs, indexed
/// `4 * top + bottom` with [`Pauli::index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDistribution([f64; 16]);

impl PairDistribution {
    pub fn new(probs: [f64; 16]) -> Result<Self> {
        validate_distribution(&probs)?;
        Ok(Self(probs))
    }

    pub fn identity() -> Self {
        Self::point(Pauli::I, Pauli::I)
    }

    pub fn point(top: Pauli, bottom: Pauli) -> Self {
        let mut p = [0.0; 16];
        p[4 * top.index() + bottom.index()] = 1.0;
        Self(p)
    }

    /// Identity with probability `1 - t`, each non-identity pair with `t / 15`.
    pub fn uniform_non_identity(t: f64) -> Result<Self> {
        check_range("t", t, 0.0, 1.0)?;
        let mut p = [t / 15.0; 16];
        p[0] = 1.0 - t;
        Ok(Self(p))
    }

    pub fn prob(&self, top: Pauli, bottom: Pauli) -> f64 {
        self.0[4 * top.index() + bottom.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pauli, Pauli, f64)> + '_ {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| (Pauli::from_index(i / 4), Pauli::from_index(i % 4), p))
    }

    pub fn probabilities(&self) -> &[f64; 16] {
        &self.0
    }
}

fn validate_distribution(probs: &[f64]) -> Result<()> {
    if let Some(p) = probs.iter().find(|p| !(**p >= -DIST_TOL)) {
        return Err(Error::InvalidDistribution(format!("negative or NaN entry {p}")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > DIST_TOL {
        return Err(Error::InvalidDistribution(format!("sums to {total}")));
    }
    Ok(())
}

/// What kind of non-Clifford resource is injected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResourceKind {
    PhaseState(PhaseAngle),
    PhaseGate(PhaseAngle),
    GeneralState(BlochVector),
    /// A gate identified by its output on `|+>`.
    GeneralGate(BlochVector),
}

/// A resource and the pure Bloch vector of the ideal state at location 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceSpec {
    kind: ResourceKind,
    bloch: BlochVector,
}

impl ResourceSpec {
    pub fn phase_state(theta: f64) -> Result<Self> {
        let a = PhaseAngle::new(theta)?;
        Ok(Self {
            kind: ResourceKind::PhaseState(a),
            bloch: phase_state(a),
        })
    }

    pub fn phase_gate(theta: f64) -> Result<Self> {
        let a = PhaseAngle::new(theta)?;
        Ok(Self {
            kind: ResourceKind::PhaseGate(a),
            bloch: phase_state(a),
        })
    }

    pub fn general_state(b: BlochVector) -> Result<Self> {
        let b = BlochVector::pure(b.x, b.y, b.z)?;
        Ok(Self {
            kind: ResourceKind::GeneralState(b),
            bloch: b,
        })
    }

    pub fn general_gate(output: BlochVector) -> Result<Self> {
        let b = BlochVector::pure(output.x, output.y, output.z)?;
        Ok(Self {
            kind: ResourceKind::GeneralGate(b),
            bloch: b,
        })
    }

    /// A state or gate resource with the given ideal Bloch vector.
    pub fn general(variant: InjectionVariant, b: BlochVector) -> Result<Self> {
        match variant {
            InjectionVariant::StateResource => Self::general_state(b),
            InjectionVariant::GateResource => Self::general_gate(b),
        }
    }

    /// A phase state or phase gate resource.
    pub fn phase(variant: InjectionVariant, theta: f64) -> Result<Self> {
        match variant {
            InjectionVariant::StateResource => Self::phase_state(theta),
            InjectionVariant::GateResource => Self::phase_gate(theta),
        }
    }

    pub fn kind(&self) -> ResourceKind {
        self.kind
    }

    pub fn bloch(&self) -> BlochVector {
        self.bloch
    }

    pub fn variant(&self) -> InjectionVariant {
        match self.kind {
            ResourceKind::PhaseState(_) | ResourceKind::GeneralState(_) => {
                InjectionVariant::StateResource
            }
            ResourceKind::PhaseGate(_) | ResourceKind::GeneralGate(_) => {
                InjectionVariant::GateResource
            }
        }
    }

    pub fn is_phase_gate(&self) -> bool {
        matches!(self.kind, ResourceKind::PhaseGate(_))
    }

    /// Bloch rotation of the gate. Phase gates rotate about z; a general gate
    /// is taken to be the minimal rotation carrying +x onto its output.
    pub fn gate_rotation(&self) -> Option<Matrix3<f64>> {
        let (axis, angle) = self.gate_axis_angle()?;
        Some(Rotation3::from_axis_angle(&axis, angle).into_inner())
    }

    /// The gate as a 2x2 unitary (global phase fixed so `U = exp(-i angle n.sigma / 2)`).
    pub fn gate_unitary(&self) -> Option<Matrix2<Complex64>> {
        let (axis, angle) = self.gate_axis_angle()?;
        let (s, c) = (angle / 2.0).sin_cos();
        let n = axis.into_inner();
        let i = Complex64::new(0.0, 1.0);
        let mut u = Pauli::I.matrix() * Complex64::new(c, 0.0);
        for (k, p) in [Pauli::X, Pauli::Y, Pauli::Z].iter().enumerate() {
            u -= p.matrix() * (i * s * n[k]);
        }
        Some(u)
    }

    fn gate_axis_angle(&self) -> Option<(Unit<Vector3<f64>>, f64)> {
        match self.kind {
            ResourceKind::PhaseGate(a) => Some((Vector3::z_axis(), a.radians())),
            ResourceKind::GeneralGate(b) => {
                let from = Vector3::x();
                let to = b.to_vector();
                let cross = from.cross(&to);
                let cos = from.dot(&to).clamp(-1.0, 1.0);
                if cross.norm() < 1e-15 {
                    if cos > 0.0 {
                        Some((Vector3::z_axis(), 0.0))
                    } else {
                        Some((Vector3::z_axis(), std::f64::consts::PI))
                    }
                } else {
                    let angle = cross.norm().atan2(cos);
                    Some((Unit::new_normalize(cross), angle))
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for ResourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ResourceKind::PhaseState(a) => write!(f, "phase-state:{}", a.radians()),
            ResourceKind::PhaseGate(a) => write!(f, "phase-gate:{}", a.radians()),
            ResourceKind::GeneralState(b) => write!(f, "state:{},{},{}", b.x, b.y, b.z),
            ResourceKind::GeneralGate(b) => write!(f, "gate:{},{},{}", b.x, b.y, b.z),
        }
    }
}

/// Channels assigned to the locations of one injection circuit.
///
/// Unset single-qubit locations are noiseless.
#[derive(Debug, Clone, PartialEq)]
pub struct LocationNoise {
    variant: InjectionVariant,
    single: BTreeMap<Location, AffineChannel>,
    pair: PairDistribution,
}

impl LocationNoise {
    pub fn noiseless(variant: InjectionVariant) -> Self {
        Self {
            variant,
            single: BTreeMap::new(),
            pair: PairDistribution::identity(),
        }
    }

    pub fn variant(&self) -> InjectionVariant {
        self.variant
    }

    /// Assigns a single-qubit channel. Rejects locations 2 and 5 (use
    /// [`LocationNoise::with_pair`]), location 7 on the state variant, and
    /// channels failing the Choi test.
    pub fn with(self, location: Location, channel: AffineChannel) -> Result<Self> {
        if !channel.choi_psd_check() {
            return Err(Error::InvalidDistribution(format!(
                "channel at location {location} is not completely positive"
            )));
        }
        self.set(location, channel)
    }

    /// [`LocationNoise::with`] without the Choi test, for the model
    /// constructors whose channels are CPTP by construction.
    fn set(mut self, location: Location, channel: AffineChannel) -> Result<Self> {
        if matches!(location, Location::Two | Location::Five) {
            return Err(Error::VariantMismatch(format!(
                "location {location} takes the joint pair distribution"
            )));
        }
        if !self.variant.locations().contains(&location) {
            return Err(Error::VariantMismatch(format!(
                "location {location} does not exist in the {} variant",
                self.variant
            )));
        }
        self.single.insert(location, channel);
        Ok(self)
    }

    pub fn with_pair(mut self, pair: PairDistribution) -> Self {
        self.pair = pair;
        self
    }

    /// The channel at `location`, or `None` when noiseless.
    pub fn get(&self, location: Location) -> Option<&AffineChannel> {
        self.single.get(&location)
    }

    /// The channel at `location`, identity when unset.
    pub fn channel(&self, location: Location) -> AffineChannel {
        self.single.get(&location).copied().unwrap_or_default()
    }

    pub fn pair(&self) -> &PairDistribution {
        &self.pair
    }

    pub fn assigned(&self) -> impl Iterator<Item = (Location, &AffineChannel)> {
        self.single.iter().map(|(l, c)| (*l, c))
    }
}

fn pauli_noise(p: Pauli, t: f64) -> Result<AffineChannel> {
    AffineChannel::mix_with(&AffineChannel::pauli(p), t)
}

/// Knill's gamma model on an injection circuit; location 4 stays noiseless.
///
/// Preparations (location 1 for states, 7 for gates) produce the orthogonal
/// state with probability `4 gamma / 15`, the X measurement is preceded by Z
/// and the Z measurement by X with that probability, a gate is followed by
/// each of X, Y, Z with that probability, and the CNOT by each of the 15
/// non-identity pairs with probability `gamma / 15`.
pub fn knill_location_noise(gamma: f64, variant: InjectionVariant) -> Result<LocationNoise> {
    check_range("gamma", gamma, 0.0, 15.0 / 16.0)?;
    let single = 4.0 * gamma / 15.0;
    let prep_flip = AffineChannel::orthogonal_flip(single)?;
    let noise = LocationNoise::noiseless(variant)
        .set(Location::Three, pauli_noise(Pauli::Z, single)?)?
        .set(Location::Six, pauli_noise(Pauli::X, single)?)?
        .with_pair(PairDistribution::uniform_non_identity(gamma)?);
    match variant {
        InjectionVariant::StateResource => noise.set(Location::One, prep_flip),
        InjectionVariant::GateResource => noise.set(Location::Seven, prep_flip)?.set(
            Location::One,
            AffineChannel::pauli_mixture([1.0 - 3.0 * single, single, single, single]),
        ),
    }
}

/// Adversarial error-per-gate choice: opposite noise aligned with the resource
/// at location 1 and before the CNOT, `N^Z_p` at 3 and 4 (`N^Y_p` at 4 when
/// `general`), `N^X_p` at 6. The gate variant adds opposite noise aligned with
/// `|+>` at location 7.
pub fn epg_location_noise(
    p: f64,
    resource: &ResourceSpec,
    general: bool,
) -> Result<LocationNoise> {
    check_range("p", p, 0.0, 1.0)?;
    let variant = resource.variant();
    let aligned = AffineChannel::opposite_noise(resource.bloch(), p)?;
    let at_four = if general { Pauli::Y } else { Pauli::Z };
    let noise = LocationNoise::noiseless(variant)
        .set(Location::One, aligned)?
        .set(Location::ControlInput, aligned)?
        .set(Location::Three, pauli_noise(Pauli::Z, p)?)?
        .set(Location::Four, pauli_noise(at_four, p)?)?
        .set(Location::Six, pauli_noise(Pauli::X, p)?)?;
    match variant {
        InjectionVariant::StateResource => Ok(noise),
        InjectionVariant::GateResource => noise.set(
            Location::Seven,
            AffineChannel::opposite_noise(BlochVector::PLUS_X, p)?,
        ),
    }
}

/// Noise-model families that can be applied to an injection circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseModel {
    Knill,
    /// Error-per-gate; `general` puts `N^Y_p` rather than `N^Z_p` at location 4.
    Epg { general: bool },
}

impl NoiseModel {
    pub fn location_noise(&self, strength: f64, resource: &ResourceSpec) -> Result<LocationNoise> {
        match self {
            NoiseModel::Knill => knill_location_noise(strength, resource.variant()),
            NoiseModel::Epg { general } => epg_location_noise(strength, resource, *general),
        }
    }

    /// Upper end of the bisection bracket. On `[0, s]` the octahedron norm of
    /// every shipped resource's image is strictly decreasing.
    pub fn search_max(&self) -> f64 {
        match self {
            NoiseModel::Knill => 15.0 / 16.0,
            // The aligned-chain scalar of the gate variant vanishes near 0.206.
            NoiseModel::Epg { .. } => 0.2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NoiseModel::Knill => "knill",
            NoiseModel::Epg { general: false } => "epg",
            NoiseModel::Epg { general: true } => "epg-general",
        }
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `N^Z_p` applied twice.
pub fn dephasing_two_hit_model(p: f64) -> Result<AffineChannel> {
    let n = pauli_noise(Pauli::Z, p)?;
    Ok(n.compose(&n))
}

/// `N^D_t`.
pub fn independent_depolarizing(t: f64) -> Result<AffineChannel> {
    AffineChannel::mix_with(&AffineChannel::depolarizing(), t)
}

/// Distribution over the `4^k` Pauli strings on `k` qubits after a `k`-qubit
/// gate: identity with probability `1 - t`, every other string `t / (4^k - 1)`.
/// Strings are indexed in base 4 with the first qubit most significant.
pub fn simultaneous_depolarizing(t: f64, qubits: u32) -> Result<Vec<f64>> {
    check_range("t", t, 0.0, 1.0)?;
    if !(1..=8).contains(&qubits) {
        return Err(Error::InvalidDistribution(format!(
            "qubit count {qubits} outside 1..=8"
        )));
    }
    let n = 4usize.pow(qubits);
    let mut probs = vec![t / (n - 1) as f64; n];
    probs[0] = 1.0 - t;
    validate_distribution(&probs)?;
    Ok(probs)
}

/// With probability `p_tilde` apply `rho -> (rho + Z rho Z) / 2`; equal to `N^Z_{p_tilde/2}`.
pub fn totally_dephasing(p_tilde: f64) -> Result<AffineChannel> {
    check_range("p_tilde", p_tilde, 0.0, 1.0)?;
    let half = AffineChannel::mix_with(&AffineChannel::pauli(Pauli::Z), 0.5)?;
    AffineChannel::mix_with(&half, p_tilde)
}

/// Per-wire probability `t` such that two independent `N^Z_t` have total
/// error probability `t^2 + 2 t (1 - t) = p`.
pub fn epg_split(p: f64) -> Result<f64> {
    check_range("p", p, 0.0, 1.0)?;
    Ok(1.0 - (1.0 - p).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    #[test]
    fn knill_zero_is_noiseless() {
        for v in [InjectionVariant::StateResource, InjectionVariant::GateResource] {
            let n = knill_location_noise(0.0, v).unwrap();
            for loc in Location::SINGLE {
                assert!(n.channel(loc).max_abs_diff(&AffineChannel::identity()) < 1e-15);
            }
            assert_eq!(*n.pair(), PairDistribution::identity());
        }
    }

    #[test]
    fn knill_pair_weights() {
        let n = knill_location_noise(0.15, InjectionVariant::StateResource).unwrap();
        for (top, bot, p) in n.pair().iter() {
            if (top, bot) == (Pauli::I, Pauli::I) {
                assert!((p - 0.85).abs() < 1e-15);
            } else {
                assert!((p - 0.01).abs() < 1e-15);
            }
        }
        assert!(n.get(Location::Four).is_none());
        assert!(n.get(Location::Seven).is_none());
    }

    #[test]
    fn knill_single_locations() {
        let g = 0.3;
        let t = 4.0 * g / 15.0;
        let s = knill_location_noise(g, InjectionVariant::StateResource).unwrap();
        assert!(s.channel(Location::One).max_abs_diff(&AffineChannel::diagonal([1.0 - 2.0 * t; 3])) < 1e-15);
        assert!(s.channel(Location::Three).max_abs_diff(&AffineChannel::diagonal([1.0 - 2.0 * t, 1.0 - 2.0 * t, 1.0])) < 1e-15);
        assert!(s.channel(Location::Six).max_abs_diff(&AffineChannel::diagonal([1.0, 1.0 - 2.0 * t, 1.0 - 2.0 * t])) < 1e-15);

        let gt = knill_location_noise(g, InjectionVariant::GateResource).unwrap();
        assert!(gt.channel(Location::Seven).max_abs_diff(&AffineChannel::diagonal([1.0 - 2.0 * t; 3])) < 1e-15);
        assert!(gt.channel(Location::One).max_abs_diff(&AffineChannel::diagonal([1.0 - 4.0 * t; 3])) < 1e-15);
    }

    #[test]
    fn knill_rejects_out_of_range() {
        assert!(knill_location_noise(-0.01, InjectionVariant::StateResource).is_err());
        assert!(knill_location_noise(0.94, InjectionVariant::GateResource).is_err());
        assert!(knill_location_noise(15.0 / 16.0, InjectionVariant::GateResource).is_ok());
    }

    #[test]
    fn knill_is_affine_in_gamma() {
        let v = InjectionVariant::GateResource;
        let (a, b) = (0.1, 0.7);
        let na = knill_location_noise(a, v).unwrap();
        let nb = knill_location_noise(b, v).unwrap();
        let nm = knill_location_noise((a + b) / 2.0, v).unwrap();
        for loc in Location::SINGLE {
            let mid = (na.channel(loc).matrix + nb.channel(loc).matrix) / 2.0;
            assert!((mid - nm.channel(loc).matrix).amax() < 1e-15);
        }
        for i in 0..16 {
            let mid = (na.pair().probabilities()[i] + nb.pair().probabilities()[i]) / 2.0;
            assert!((mid - nm.pair().probabilities()[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn epg_zero_is_noiseless() {
        let r = ResourceSpec::phase_gate(0.4).unwrap();
        let n = epg_location_noise(0.0, &r, true).unwrap();
        for loc in Location::SINGLE {
            assert!(n.channel(loc).max_abs_diff(&AffineChannel::identity()) < 1e-15);
        }
    }

    #[test]
    fn epg_state_aligned_chain() {
        let p = 0.03;
        let r = ResourceSpec::phase_state(FRAC_PI_4).unwrap();
        let n = epg_location_noise(p, &r, false).unwrap();
        let chain = n.channel(Location::One).then(&n.channel(Location::ControlInput));
        let b = BlochVector::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0);
        let want = b.scale((1.0 - p) * (1.0 - 2.0 * p) - p);
        assert!(chain.apply(b).max_abs_diff(want) < 1e-15);
        assert!(n.get(Location::Seven).is_none());
    }

    #[test]
    fn epg_gate_aligned_chain() {
        // Location 7 acts before the phase gate; conjugating it through the
        // gate aligns it with the resource.
        let p = 0.04;
        let theta = 0.9;
        let r = ResourceSpec::phase_gate(theta).unwrap();
        let n = epg_location_noise(p, &r, false).unwrap();
        let rot = AffineChannel::rotation(r.gate_rotation().unwrap());
        let chain = n
            .channel(Location::Seven)
            .then(&rot)
            .then(&n.channel(Location::One))
            .then(&n.channel(Location::ControlInput));
        let out = chain.apply(BlochVector::PLUS_X);
        let want = r.bloch().scale((1.0 - p) * (1.0 - 4.0 * p + 2.0 * p * p) - p);
        assert!(out.max_abs_diff(want) < 1e-15);
    }

    #[test]
    fn epg_general_uses_y_at_four() {
        let r = ResourceSpec::general_state(BlochVector::PLUS_Y).unwrap();
        let n = epg_location_noise(0.1, &r, true).unwrap();
        assert!(n.channel(Location::Four).max_abs_diff(&AffineChannel::diagonal([0.8, 1.0, 0.8])) < 1e-15);
        assert!(epg_location_noise(1.2, &r, true).is_err());
    }

    #[test]
    fn every_emitted_channel_is_cptp() {
        let resources = [
            ResourceSpec::phase_state(0.3).unwrap(),
            ResourceSpec::phase_gate(1.3).unwrap(),
            ResourceSpec::general_state(BlochVector::direction(1.0, 2.0, 3.0).unwrap()).unwrap(),
            ResourceSpec::general_gate(BlochVector::direction(-1.0, 0.5, 0.2).unwrap()).unwrap(),
        ];
        for r in &resources {
            for s in [0.0, 0.05, 0.2, 0.5, 0.9] {
                for n in [
                    knill_location_noise(s, r.variant()).unwrap(),
                    epg_location_noise(s, r, false).unwrap(),
                    epg_location_noise(s, r, true).unwrap(),
                ] {
                    for (_, ch) in n.assigned() {
                        assert!(ch.choi_psd_check());
                    }
                    let total: f64 = n.pair().probabilities().iter().sum();
                    assert!((total - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn location_noise_rejects_bad_assignments() {
        let n = LocationNoise::noiseless(InjectionVariant::StateResource);
        assert!(n.clone().with(Location::Seven, AffineChannel::identity()).is_err());
        assert!(n.clone().with(Location::Two, AffineChannel::identity()).is_err());
        assert!(n.with(Location::Three, AffineChannel::diagonal([1.0, 1.0, -1.0])).is_err());
        assert!(PairDistribution::new([0.1; 16]).is_err());
    }

    #[test]
    fn standalone_models() {
        let t = 0.3;
        assert_eq!(
            independent_depolarizing(t).unwrap(),
            AffineChannel::mix_with(&AffineChannel::depolarizing(), t).unwrap()
        );
        let two = simultaneous_depolarizing(t, 2).unwrap();
        assert_eq!(two.len(), 16);
        assert!(two[1..].iter().all(|&p| (p - t / 15.0).abs() < 1e-15));
        assert!((two.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(simultaneous_depolarizing(t, 0).is_err());
        assert!(simultaneous_depolarizing(1.2, 1).is_err());

        let td = totally_dephasing(0.159).unwrap();
        let nz = pauli_noise(Pauli::Z, 0.0795).unwrap();
        assert!(td.max_abs_diff(&nz) < 1e-15);

        let p = 0.2;
        let two_hit = dephasing_two_hit_model(p).unwrap();
        assert!((two_hit.matrix[(0, 0)] - (1.0 - 2.0 * p).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn epg_split_examples() {
        assert_eq!(epg_split(0.0).unwrap(), 0.0);
        assert!((epg_split(0.75).unwrap() - 0.5).abs() < 1e-15);
        assert!(epg_split(1.5).is_err());
    }

    #[test]
    fn resource_gate_unitary_matches_rotation() {
        let r = ResourceSpec::general_gate(BlochVector::direction(0.2, -0.7, 0.4).unwrap()).unwrap();
        let rot = r.gate_rotation().unwrap();
        let out = rot * Vector3::x();
        assert!((out - r.bloch().to_vector()).amax() < 1e-14);
        let u = r.gate_unitary().unwrap();
        assert!((u * u.adjoint() - Matrix2::identity()).camax() < 1e-14);
        // antipodal output
        let r = ResourceSpec::general_gate(BlochVector::new(-1.0, 0.0, 0.0)).unwrap();
        assert!((r.gate_rotation().unwrap() * Vector3::x() + Vector3::x()).amax() < 1e-14);
    }

    #[test]
    fn phase_gate_matches_general_gate_in_plane() {
        let theta = 0.7;
        let a = ResourceSpec::phase_gate(theta).unwrap();
        let b = ResourceSpec::general_gate(a.bloch()).unwrap();
        assert!((a.gate_rotation().unwrap() - b.gate_rotation().unwrap()).amax() < 1e-14);
    }
}
