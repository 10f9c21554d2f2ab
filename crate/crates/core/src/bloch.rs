//! Single-qubit states on the Bloch ball and the stabilizer octahedron.
//!
//! Convention: `rho = (I + x X + y Y + z Z) / 2`. The octahedron is the convex
//! hull of the six Pauli eigenstates, i.e. the unit ball of the l1 norm.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::{Matrix2, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Slack on `|b| <= 1` for physical states.
pub const STATE_TOL: f64 = 1e-12;
/// Slack on `|b| = 1` when a pure state is required.
pub const PURITY_TOL: f64 = 1e-9;
/// Default slack on the octahedron face.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ORIGIN: BlochVector = BlochVector::new(0.0, 0.0, 0.0);
    pub const PLUS_X: BlochVector = BlochVector::new(1.0, 0.0, 0.0);
    pub const PLUS_Y: BlochVector = BlochVector::new(0.0, 1.0, 0.0);
    pub const PLUS_Z: BlochVector = BlochVector::new(0.0, 0.0, 1.0);

    /// Unchecked constructor; use [`BlochVector::state`] for inputs that must
    /// describe a physical qubit.
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// A physical state: finite components and `|b| <= 1 + STATE_TOL`.
    pub fn state(x: f64, y: f64, z: f64) -> Result<Self> {
        let b = Self::new(x, y, z);
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::InvalidState(format!("non-finite Bloch vector {b}")));
        }
        if !b.is_physical() {
            return Err(Error::InvalidState(format!(
                "Bloch vector {b} has norm {} > 1",
                b.norm()
            )));
        }
        Ok(b)
    }

    /// A pure state; rejects vectors whose norm differs from 1 by more than
    /// [`PURITY_TOL`].
    pub fn pure(x: f64, y: f64, z: f64) -> Result<Self> {
        let b = Self::new(x, y, z);
        b.require_pure()?;
        Ok(b)
    }

    /// Unit vector along `(x, y, z)`.
    pub fn direction(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidState(format!(
                "cannot normalise ({x}, {y}, {z})"
            )));
        }
        Ok(Self::new(x / n, y / n, z / n))
    }

    /// Point on the unit sphere from polar angle (from +z) and azimuth.
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        let s = polar.sin();
        Self::new(s * azimuth.cos(), s * azimuth.sin(), polar.cos())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(s * self.x, s * self.y, s * self.z)
    }

    pub fn is_physical(self) -> bool {
        self.norm() <= 1.0 + STATE_TOL
    }

    pub fn is_pure(self) -> bool {
        (self.norm() - 1.0).abs() <= PURITY_TOL
    }

    fn require_pure(self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            Err(Error::NotPure(self.norm()))
        }
    }

    /// `|x| + |y| + |z|`. At most 1 exactly on the stabilizer octahedron.
    pub fn octahedron_norm(self) -> f64 {
        self.x.abs() + self.y.abs() + self.z.abs()
    }

    pub fn in_octahedron(self, tol: f64) -> bool {
        self.octahedron_norm() <= 1.0 + tol
    }

    /// The pure state diametrically opposite a pure `self`.
    pub fn antipode(self) -> Result<Self> {
        self.require_pure()?;
        Ok(self.scale(-1.0))
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Angle of a phase state or phase gate, kept in `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PhaseAngle(f64);

impl PhaseAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidState(format!("non-finite phase angle {theta}")));
        }
        let mut t = theta.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs.
        if t >= TAU {
            t = 0.0;
        }
        Ok(Self(t))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// `(cos theta, sin theta, 0)`: the Bloch vector of `(|0> + e^{i theta}|1>)/sqrt 2`.
pub fn phase_state(theta: PhaseAngle) -> BlochVector {
    let (s, c) = theta.radians().sin_cos();
    BlochVector::new(c, s, 0.0)
}

/// A validated single-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2(Matrix2<Complex64>);

impl DensityMatrix2 {
    const TOL: f64 = 1e-12;

    /// Validates hermiticity, unit trace and positivity.
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        let herm = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > Self::TOL {
            return Err(Error::InvalidState(format!(
                "matrix is not Hermitian (deviation {herm:e})"
            )));
        }
        let trace = m[(0, 0)] + m[(1, 1)];
        if (trace - Complex64::new(1.0, 0.0)).norm() > Self::TOL {
            return Err(Error::InvalidState(format!("trace {trace} != 1")));
        }
        // Eigenvalues of a unit-trace Hermitian 2x2 are (1 +- r) / 2.
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let off = m[(0, 1)];
        let r = (((a - d) / 2.0).powi(2) + off.norm_sqr()).sqrt();
        let min_eig = (a + d) / 2.0 - r;
        if min_eig < -Self::TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }
}

/// `rho = (I + x X + y Y + z Z) / 2`.
pub fn bloch_to_density(b: BlochVector) -> Result<DensityMatrix2> {
    let b = BlochVector::state(b.x, b.y, b.z)?;
    let half = |re: f64, im: f64| Complex64::new(re / 2.0, im / 2.0);
    DensityMatrix2::new(Matrix2::new(
        half(1.0 + b.z, 0.0),
        half(b.x, -b.y),
        half(b.x, b.y),
        half(1.0 - b.z, 0.0),
    ))
}

/// Inverse of [`bloch_to_density`]: `x = 2 Re rho01`, `y = -2 Im rho01`, `z = rho00 - rho11`.
pub fn density_to_bloch(rho: &DensityMatrix2) -> BlochVector {
    let m = rho.matrix();
    BlochVector::new(
        2.0 * m[(0, 1)].re,
        -2.0 * m[(0, 1)].im,
        m[(0, 0)].re - m[(1, 1)].re,
    )
}
