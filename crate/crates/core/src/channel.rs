//! Qubit channels as affine maps `b -> M b + c` on the Bloch ball.

use std::fmt;

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;

use crate::bloch::BlochVector;
use crate::error::{check_range, Result};

/// Tolerance of [`AffineChannel::choi_psd_check`].
pub const CHOI_TOL: f64 = 1e-10;

/// A Pauli operator, identified with its conjugation channel (phases dropped).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Pauli {
        Self::ALL[i & 3]
    }

    /// (x-bit, z-bit) in the symplectic picture: `Y ~ XZ`.
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// Product as channels; commutative.
    pub fn compose(self, other: Pauli) -> Pauli {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        Pauli::from_bits(ax ^ bx, az ^ bz)
    }

    /// Signs of the Bloch components after conjugation by this Pauli.
    pub fn bloch_signs(self) -> [f64; 3] {
        match self {
            Pauli::I => [1.0, 1.0, 1.0],
            Pauli::X => [1.0, -1.0, -1.0],
            Pauli::Y => [-1.0, 1.0, -1.0],
            Pauli::Z => [-1.0, -1.0, 1.0],
        }
    }

    pub fn matrix(self) -> Matrix2<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => Matrix2::new(l, o, o, l),
            Pauli::X => Matrix2::new(o, l, l, o),
            Pauli::Y => Matrix2::new(o, -i, i, o),
            Pauli::Z => Matrix2::new(l, o, o, -l),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        };
        f.write_str(s)
    }
}

/// Single-qubit channel acting on Bloch vectors as `b -> matrix * b + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineChannel {
    pub matrix: Matrix3<f64>,
    pub offset: Vector3<f64>,
}

impl Default for AffineChannel {
    fn default() -> Self {
        Self::identity()
    }
}

impl AffineChannel {
    pub fn new(matrix: Matrix3<f64>, offset: Vector3<f64>) -> Self {
        Self { matrix, offset }
    }

    pub fn identity() -> Self {
        Self::new(Matrix3::identity(), Vector3::zeros())
    }

    pub fn diagonal(factors: [f64; 3]) -> Self {
        Self::new(
            Matrix3::from_diagonal(&Vector3::from(factors)),
            Vector3::zeros(),
        )
    }

    pub fn pauli(p: Pauli) -> Self {
        Self::diagonal(p.bloch_signs())
    }

    /// `D(rho) = (rho + X rho X + Y rho Y + Z rho Z) / 4`, which sends every
    /// state to the maximally mixed one.
    pub fn depolarizing() -> Self {
        Self::new(Matrix3::zeros(), Vector3::zeros())
    }

    /// `N^Q_t = (1 - t) id + t Q`.
    pub fn mix_with(q: &AffineChannel, t: f64) -> Result<Self> {
        check_range("t", t, 0.0, 1.0)?;
        Ok(Self::new(
            Matrix3::identity() * (1.0 - t) + q.matrix * t,
            q.offset * t,
        ))
    }

    /// `O^sigma_t(rho) = (1 - t) rho + t psi_perp`, replacing the state by the
    /// pure state antipodal to the fixed reference `sigma` with probability `t`.
    pub fn opposite_noise(sigma: BlochVector, t: f64) -> Result<Self> {
        let perp = sigma.antipode()?;
        check_range("t", t, 0.0, 1.0)?;
        Ok(Self::new(
            Matrix3::identity() * (1.0 - t),
            perp.to_vector() * t,
        ))
    }

    /// Random Pauli channel with probabilities indexed by [`Pauli::index`].
    pub fn pauli_mixture(probs: [f64; 4]) -> Self {
        let mut f = [0.0; 3];
        for p in Pauli::ALL {
            let s = p.bloch_signs();
            for k in 0..3 {
                f[k] += probs[p.index()] * s[k];
            }
        }
        Self::diagonal(f)
    }

    /// With probability `t` the state is replaced by its antipode. As an
    /// affine map this is the isotropic contraction by `1 - 2t`, realised as
    /// X, Y and Z each with probability `t/2`.
    pub fn orthogonal_flip(t: f64) -> Result<Self> {
        check_range("t", t, 0.0, 2.0 / 3.0)?;
        let e = t / 2.0;
        Ok(Self::pauli_mixture([1.0 - 3.0 * e, e, e, e]))
    }

    /// Conjugation by a unitary whose Bloch rotation is `rotation`.
    pub fn rotation(rotation: Matrix3<f64>) -> Self {
        Self::new(rotation, Vector3::zeros())
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &AffineChannel) -> Self {
        Self::new(
            self.matrix * inner.matrix,
            self.matrix * inner.offset + self.offset,
        )
    }

    /// `next ∘ self`: apply `self` first.
    pub fn then(&self, next: &AffineChannel) -> Self {
        next.compose(self)
    }

    pub fn apply(&self, b: BlochVector) -> BlochVector {
        BlochVector::from_vector(&(self.matrix * b.to_vector() + self.offset))
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let off_diag = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .all(|(i, j)| self.matrix[(i, j)].abs() <= tol);
        off_diag && self.offset.amax() <= tol
    }

    pub fn diagonal_factors(&self) -> [f64; 3] {
        [self.matrix[(0, 0)], self.matrix[(1, 1)], self.matrix[(2, 2)]]
    }

    /// Probabilities `(I, X, Y, Z)` when this is a Pauli channel, i.e. diagonal,
    /// unital, and with non-negative weights.
    pub fn pauli_probabilities(&self, tol: f64) -> Option<[f64; 4]> {
        if !self.is_diagonal(tol) {
            return None;
        }
        let [fx, fy, fz] = self.diagonal_factors();
        let probs = [
            (1.0 + fx + fy + fz) / 4.0,
            (1.0 + fx - fy - fz) / 4.0,
            (1.0 - fx + fy - fz) / 4.0,
            (1.0 - fx - fy + fz) / 4.0,
        ];
        if probs.iter().any(|&p| p < -tol) {
            return None;
        }
        Some(probs.map(|p| p.max(0.0)))
    }

    pub fn max_abs_diff(&self, other: &AffineChannel) -> f64 {
        let m = (self.matrix - other.matrix).amax();
        let c = (self.offset - other.offset).amax();
        m.max(c)
    }

    /// Image of the Pauli basis element `sigma_k` (k = 0 is the identity) as a 2x2 matrix.
    fn image_of_pauli(&self, k: usize) -> Matrix2<Complex64> {
        let xyz = [Pauli::X, Pauli::Y, Pauli::Z].map(Pauli::matrix);
        let coeffs: [f64; 3] = if k == 0 {
            [self.offset[0], self.offset[1], self.offset[2]]
        } else {
            [
                self.matrix[(0, k - 1)],
                self.matrix[(1, k - 1)],
                self.matrix[(2, k - 1)],
            ]
        };
        let mut out = if k == 0 {
            Pauli::I.matrix()
        } else {
            Matrix2::zeros()
        };
        for (c, s) in coeffs.iter().zip(xyz.iter()) {
            out += s * Complex64::new(*c, 0.0);
        }
        out
    }

    /// The channel's action on the matrix unit `|i><j|`.
    pub fn image_of_unit(&self, i: usize, j: usize) -> Matrix2<Complex64> {
        let half = Complex64::new(0.5, 0.0);
        let ihalf = Complex64::new(0.0, 0.5);
        // |0><0| = (I+Z)/2, |1><1| = (I-Z)/2, |0><1| = (X+iY)/2, |1><0| = (X-iY)/2
        let p = |k| self.image_of_pauli(k);
        match (i, j) {
            (0, 0) => (p(0) + p(3)) * half,
            (1, 1) => (p(0) - p(3)) * half,
            (0, 1) => p(1) * half + p(2) * ihalf,
            (1, 0) => p(1) * half - p(2) * ihalf,
            _ => panic!("matrix unit index out of range"),
        }
    }

    /// `J = sum_ij |i><j| ⊗ Phi(|i><j|)`.
    pub fn choi_matrix(&self) -> Matrix4<Complex64> {
        let mut j = Matrix4::zeros();
        for a in 0..2 {
            for b in 0..2 {
                let img = self.image_of_unit(a, b);
                for r in 0..2 {
                    for c in 0..2 {
                        j[(2 * a + r, 2 * b + c)] = img[(r, c)];
                    }
                }
            }
        }
        j
    }

    /// True iff the Choi matrix is positive semidefinite and the map is trace
    /// preserving, both within [`CHOI_TOL`].
    pub fn choi_psd_check(&self) -> bool {
        let j = self.choi_matrix();
        if !j.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        // Tr_out J = I
        for a in 0..2 {
            for b in 0..2 {
                let t = j[(2 * a, 2 * b)] + j[(2 * a + 1, 2 * b + 1)];
                let want = if a == b { 1.0 } else { 0.0 };
                if (t - Complex64::new(want, 0.0)).norm() > CHOI_TOL {
                    return false;
                }
            }
        }
        let herm = (j - j.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > CHOI_TOL {
            return false;
        }
        let eig = j.symmetric_eigenvalues();
        eig.iter().all(|&e| e >= -CHOI_TOL)
    }
}
