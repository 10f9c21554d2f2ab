//! Dense density-matrix simulation of the noisy injection circuits.
//!
//! Nothing here uses the shifting rules: the circuit is simulated gate by
//! gate, both measurement outcomes are summed with their Pauli corrections,
//! and the input-to-output channel is read off by tomography on four inputs.
//! Agreement with [`crate::shift::effective_map`] is therefore a real check.

use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_complex::Complex64;

use crate::bloch::BlochVector;
use crate::channel::{AffineChannel, Pauli};
use crate::error::{Error, Result};
use crate::noise::{InjectionVariant, Location, LocationNoise, NoiseModel, PairDistribution, ResourceSpec};
use crate::threshold::{octahedron_threshold, ThresholdResult};

pub const MAX_QUBITS: usize = 6;
const TRACE_TOL: f64 = 1e-12;

type CMatrix = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn to_dmatrix(m: &Matrix2<Complex64>) -> CMatrix {
    CMatrix::from_fn(2, 2, |r, col| m[(r, col)])
}

fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[c(h), c(h), c(h), c(-h)])
}

fn s_gate() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), Complex64::new(0.0, 1.0)])
}

/// `U(theta) = |0><0| + e^{i theta} |1><1|`.
pub fn phase_gate(theta: f64) -> Matrix2<Complex64> {
    Matrix2::new(c(1.0), c(0.0), c(0.0), Complex64::from_polar(1.0, theta))
}

fn cnot() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for (r, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(r, col)] = c(1.0);
    }
    m
}

/// Bloch rotation `R_jk = Tr(sigma_j U sigma_k U^dag) / 2` of a qubit unitary.
pub fn bloch_rotation(u: &Matrix2<Complex64>) -> Matrix3<f64> {
    let paulis = [Pauli::X, Pauli::Y, Pauli::Z].map(Pauli::matrix);
    Matrix3::from_fn(|j, k| {
        let m = paulis[j] * u * paulis[k] * u.adjoint();
        0.5 * (m[(0, 0)] + m[(1, 1)]).re
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    X,
    Z,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Phase { wire: usize, theta: f64 },
    Unitary { wire: usize, matrix: Matrix2<Complex64> },
    Cnot { control: usize, target: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelNoise {
    Single { wire: usize, channel: AffineChannel },
    Pair { top: usize, bottom: usize, dist: PairDistribution },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircuitStep {
    /// Discard whatever is on `wire` and prepare `state` there.
    PrepareState { wire: usize, state: BlochVector },
    Gate(Gate),
    Channel { location: Location, noise: ChannelNoise },
    /// Measure `wire` and apply `correction` to `target` on the -1 outcome;
    /// both outcomes are kept.
    MeasureWithCorrection {
        wire: usize,
        basis: Basis,
        target: usize,
        correction: Pauli,
    },
    Discard(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub labels: Vec<&'static str>,
    pub input: usize,
    pub output: usize,
    pub steps: Vec<CircuitStep>,
}

/// Density matrix over a set of wires; the first listed wire is the most
/// significant bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiQubitState {
    rho: CMatrix,
    wires: Vec<usize>,
}

impl MultiQubitState {
    /// Product state; `states[k]` goes on wire `k`.
    pub fn product(states: &[BlochVector]) -> Result<Self> {
        if states.is_empty() || states.len() > MAX_QUBITS {
            return Err(Error::Circuit(format!(
                "{} qubits outside 1..={MAX_QUBITS}",
                states.len()
            )));
        }
        let mut rho = CMatrix::from_element(1, 1, c(1.0));
        for b in states {
            let single = crate::bloch::bloch_to_density(*b)?;
            rho = rho.kronecker(&to_dmatrix(single.matrix()));
        }
        Ok(Self {
            rho,
            wires: (0..states.len()).collect(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.wires.len()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    fn position(&self, wire: usize) -> Result<usize> {
        self.wires
            .iter()
            .position(|&w| w == wire)
            .ok_or_else(|| Error::Circuit(format!("wire {wire} is not active")))
    }

    fn shift(&self, pos: usize) -> usize {
        self.n_qubits() - 1 - pos
    }

    /// Lifts an operator on `wires` (first wire most significant) to the full space.
    fn embed(&self, op: &CMatrix, wires: &[usize]) -> Result<CMatrix> {
        let shifts: Vec<usize> = wires
            .iter()
            .map(|&w| self.position(w).map(|p| self.shift(p)))
            .collect::<Result<_>>()?;
        let mask: usize = shifts.iter().map(|s| 1 << s).sum();
        let sub = |idx: usize| {
            shifts
                .iter()
                .fold(0usize, |acc, s| (acc << 1) | ((idx >> s) & 1))
        };
        let dim = self.rho.nrows();
        Ok(CMatrix::from_fn(dim, dim, |r, col| {
            if r & !mask == col & !mask {
                op[(sub(r), sub(col))]
            } else {
                c(0.0)
            }
        }))
    }

    pub fn apply_unitary(&mut self, op: &CMatrix, wires: &[usize]) -> Result<()> {
        let u = self.embed(op, wires)?;
        self.rho = &u * &self.rho * u.adjoint();
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        match gate {
            Gate::H(w) => self.apply_unitary(&hadamard(), &[*w]),
            Gate::S(w) => self.apply_unitary(&s_gate(), &[*w]),
            Gate::Phase { wire, theta } => {
                self.apply_unitary(&to_dmatrix(&phase_gate(*theta)), &[*wire])
            }
            Gate::Unitary { wire, matrix } => {
                let dev = (matrix * matrix.adjoint() - Matrix2::identity()).camax();
                if dev > 1e-12 {
                    return Err(Error::Circuit(format!("gate is not unitary ({dev:e})")));
                }
                self.apply_unitary(&to_dmatrix(matrix), &[*wire])
            }
            Gate::Cnot { control, target } => self.apply_unitary(&cnot(), &[*control, *target]),
        }
    }

    /// Applies a single-qubit channel through its action on matrix units.
    pub fn apply_channel(&mut self, wire: usize, channel: &AffineChannel) -> Result<()> {
        let s = self.shift(self.position(wire)?);
        let mut table = [[Matrix2::<Complex64>::zeros(); 2]; 2];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = channel.image_of_unit(i, j);
            }
        }
        let dim = self.rho.nrows();
        let bit = 1usize << s;
        let mut out = CMatrix::zeros(dim, dim);
        for r in 0..dim {
            for col in 0..dim {
                let (k, l) = ((r >> s) & 1, (col >> s) & 1);
                let mut acc = c(0.0);
                for i in 0..2 {
                    for j in 0..2 {
                        let ri = (r & !bit) | (i << s);
                        let cj = (col & !bit) | (j << s);
                        acc += table[i][j][(k, l)] * self.rho[(ri, cj)];
                    }
                }
                out[(r, col)] = acc;
            }
        }
        self.rho = out;
        Ok(())
    }

    pub fn apply_pair(&mut self, top: usize, bottom: usize, dist: &PairDistribution) -> Result<()> {
        let mut out = CMatrix::zeros(self.rho.nrows(), self.rho.ncols());
        for (a, b, p) in dist.iter() {
            if p == 0.0 {
                continue;
            }
            let op = to_dmatrix(&a.matrix()).kronecker(&to_dmatrix(&b.matrix()));
            let k = self.embed(&op, &[top, bottom])?;
            out += (&k * &self.rho * k.adjoint()) * c(p);
        }
        self.rho = out;
        Ok(())
    }

    pub fn measure_with_correction(
        &mut self,
        wire: usize,
        basis: Basis,
        target: usize,
        correction: Pauli,
    ) -> Result<()> {
        let axis = match basis {
            Basis::X => Pauli::X,
            Basis::Z => Pauli::Z,
        };
        let id = to_dmatrix(&Pauli::I.matrix());
        let sigma = to_dmatrix(&axis.matrix());
        let plus = (&id + &sigma) * c(0.5);
        let minus = (&id - &sigma) * c(0.5);
        let fix = self.embed(&to_dmatrix(&correction.matrix()), &[target])?;
        let k_plus = self.embed(&plus, &[wire])?;
        let k_minus = &fix * self.embed(&minus, &[wire])?;
        self.rho = &k_plus * &self.rho * k_plus.adjoint() + &k_minus * &self.rho * k_minus.adjoint();
        Ok(())
    }

    /// Traces out `wire`.
    pub fn discard(&mut self, wire: usize) -> Result<()> {
        let pos = self.position(wire)?;
        if self.n_qubits() == 1 {
            return Err(Error::Circuit("cannot discard the last wire".into()));
        }
        let s = self.shift(pos);
        let low = (1usize << s) - 1;
        let insert = |idx: usize, b: usize| ((idx & !low) << 1) | (b << s) | (idx & low);
        let dim = self.rho.nrows() / 2;
        let rho = &self.rho;
        self.rho = CMatrix::from_fn(dim, dim, |r, col| {
            rho[(insert(r, 0), insert(col, 0))] + rho[(insert(r, 1), insert(col, 1))]
        });
        self.wires.remove(pos);
        Ok(())
    }

    /// Bloch vector of a single remaining wire.
    pub fn single_bloch(&self) -> Result<BlochVector> {
        if self.n_qubits() != 1 {
            return Err(Error::Circuit(format!(
                "{} wires remain, expected 1",
                self.n_qubits()
            )));
        }
        let m = &self.rho;
        Ok(BlochVector::new(
            2.0 * m[(0, 1)].re,
            -2.0 * m[(0, 1)].im,
            (m[(0, 0)] - m[(1, 1)]).re,
        ))
    }
}

impl Circuit {
    /// Runs the circuit with `input` on the input wire and `|0>` elsewhere.
    pub fn run(&self, input: BlochVector) -> Result<MultiQubitState> {
        let mut init = vec![BlochVector::PLUS_Z; self.labels.len()];
        init[self.input] = input;
        let mut state = MultiQubitState::product(&init)?;
        for step in &self.steps {
            match step {
                CircuitStep::PrepareState { wire, state: b } => {
                    let reset = AffineChannel::new(Matrix3::zeros(), b.to_vector());
                    state.apply_channel(*wire, &reset)?;
                }
                CircuitStep::Gate(g) => state.apply_gate(g)?,
                CircuitStep::Channel { noise, .. } => match noise {
                    ChannelNoise::Single { wire, channel } => state.apply_channel(*wire, channel)?,
                    ChannelNoise::Pair { top, bottom, dist } => state.apply_pair(*top, *bottom, dist)?,
                },
                CircuitStep::MeasureWithCorrection {
                    wire,
                    basis,
                    target,
                    correction,
                } => state.measure_with_correction(*wire, *basis, *target, *correction)?,
                CircuitStep::Discard(w) => state.discard(*w)?,
            }
        }
        Ok(state)
    }
}

const WIRE_RESOURCE: usize = 0;
const WIRE_BELL_IN: usize = 1;
const WIRE_OUTPUT: usize = 2;

/// The teleportation injection circuit with `noise` at its locations.
///
/// The input wire carries the resource state (state variant) or the `|+>`
/// that the resource gate acts on (gate variant).
pub fn build_injection_circuit(resource: &ResourceSpec, noise: &LocationNoise) -> Result<Circuit> {
    if noise.variant() != resource.variant() {
        return Err(Error::VariantMismatch(format!(
            "{} noise with a {} resource",
            noise.variant(),
            resource.variant()
        )));
    }
    let (a, b, out) = (WIRE_RESOURCE, WIRE_BELL_IN, WIRE_OUTPUT);
    let single = |location: Location, wire: usize| {
        noise.get(location).map(|ch| CircuitStep::Channel {
            location,
            noise: ChannelNoise::Single { wire, channel: *ch },
        })
    };
    let mut steps = vec![
        CircuitStep::PrepareState { wire: b, state: BlochVector::PLUS_Z },
        CircuitStep::PrepareState { wire: out, state: BlochVector::PLUS_Z },
        CircuitStep::Gate(Gate::H(b)),
        CircuitStep::Gate(Gate::Cnot { control: b, target: out }),
    ];
    if resource.variant() == InjectionVariant::GateResource {
        steps.extend(single(Location::Seven, a));
        let u = resource
            .gate_unitary()
            .ok_or_else(|| Error::Circuit("gate resource without a unitary".into()))?;
        steps.push(CircuitStep::Gate(Gate::Unitary { wire: a, matrix: u }));
    }
    steps.extend(single(Location::One, a));
    steps.extend(single(Location::ControlInput, a));
    steps.extend(single(Location::Four, b));
    steps.push(CircuitStep::Gate(Gate::Cnot { control: a, target: b }));
    if *noise.pair() != PairDistribution::identity() {
        steps.push(CircuitStep::Channel {
            location: Location::Two,
            noise: ChannelNoise::Pair { top: a, bottom: b, dist: *noise.pair() },
        });
    }
    steps.extend(single(Location::Three, a));
    steps.extend(single(Location::Six, b));
    steps.extend([
        CircuitStep::MeasureWithCorrection { wire: a, basis: Basis::X, target: out, correction: Pauli::Z },
        CircuitStep::MeasureWithCorrection { wire: b, basis: Basis::Z, target: out, correction: Pauli::X },
        CircuitStep::Discard(a),
        CircuitStep::Discard(b),
    ]);
    Ok(Circuit {
        labels: vec!["resource", "bell-in", "output"],
        input: a,
        output: out,
        steps,
    })
}

/// Input-to-output channel by tomography on the maximally mixed state and the
/// +1 eigenstates of X, Y, Z.
pub fn simulate_channel(circuit: &Circuit) -> Result<AffineChannel> {
    let run = |b: BlochVector| -> Result<BlochVector> {
        let state = circuit.run(b)?;
        let tr = state.trace();
        if (tr - c(1.0)).norm() > TRACE_TOL {
            return Err(Error::Circuit(format!("trace {tr} after the circuit")));
        }
        state.single_bloch()
    };
    let offset = run(BlochVector::ORIGIN)?.to_vector();
    let mut matrix = Matrix3::zeros();
    for (k, e) in [BlochVector::PLUS_X, BlochVector::PLUS_Y, BlochVector::PLUS_Z]
        .into_iter()
        .enumerate()
    {
        matrix.set_column(k, &(run(e)?.to_vector() - offset));
    }
    Ok(AffineChannel::new(matrix, offset))
}

/// Channel acting on the ideal resource state: the simulated channel, with the
/// ideal gate undone for gate resources.
pub fn oracle_effective_channel(resource: &ResourceSpec, noise: &LocationNoise) -> Result<AffineChannel> {
    let channel = simulate_channel(&build_injection_circuit(resource, noise)?)?;
    match resource.gate_unitary() {
        None => Ok(channel),
        Some(u) => {
            let undo = AffineChannel::rotation(bloch_rotation(&u).transpose());
            Ok(channel.compose(&undo))
        }
    }
}

/// Threshold with every evaluation done by simulation.
pub fn oracle_threshold(model: NoiseModel, resource: &ResourceSpec) -> Result<ThresholdResult> {
    octahedron_threshold(
        |s| oracle_effective_channel(resource, &model.location_noise(s, resource)?),
        resource.bloch(),
        model.search_max(),
    )
}
