//! Threshold estimate with one level of noisy decoding before injection.
//!
//! The threshold is the root of `p(e) = -1/2 - f1(e) / f2(e)` with
//!
//! ```text
//! f1(e) = (16e - 15)^5 (225 - 180e + 32e^2)^2 (16875 - 40500e + 46800e^2 - 23040e^3 + 4096e^4)
//! f2(e) = 1125 sqrt(2) (576650390625 - 3536789062500e + ... + 17179869184e^10)
//! ```
//!
//! `f1` and `f2` have coefficients far above `2^53` and nearly cancel, so
//! both are evaluated with compensated Horner; `f1` is also evaluated in its
//! factored form as an independent check.

use crate::error::{Error, Result};
use crate::threshold::bisect;

/// Lowest-degree first.
const F1_LINEAR: [i128; 2] = [-15, 16];
const F1_QUADRATIC: [i128; 3] = [225, -180, 32];
const F1_QUARTIC: [i128; 5] = [16875, -40500, 46800, -23040, 4096];
const F2_PREFACTOR: f64 = 1125.0;
const F2_COEFFS: [i128; 11] = [
    576_650_390_625,
    -3_536_789_062_500,
    11_768_793_750_000,
    -24_002_325_000_000,
    32_367_600_000_000,
    -29_499_033_600_000,
    18_141_511_680_000,
    -7_375_159_296_000,
    1_887_436_800_000,
    -273_804_165_120,
    17_179_869_184,
];

/// Search interval for the root.
pub const ROOT_INTERVAL: (f64, f64) = (0.0, 0.5);
const SCAN_STEPS: usize = 5000;
const ROOT_TOL: f64 = 1e-13;

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// An integer coefficient split as `hi + lo` with both parts exact doubles.
#[derive(Debug, Clone, Copy)]
struct SplitCoeff {
    hi: f64,
    lo: f64,
}

impl SplitCoeff {
    fn new(c: i128) -> Self {
        let hi = c as f64;
        let lo = (c - hi as i128) as f64;
        Self { hi, lo }
    }
}

/// Compensated Horner evaluation; coefficients lowest-degree first.
fn compensated_horner(coeffs: &[SplitCoeff], x: f64) -> f64 {
    let mut iter = coeffs.iter().rev();
    let lead = iter.next().expect("non-empty polynomial");
    let mut s = lead.hi;
    let mut c = lead.lo;
    for a in iter {
        let (p, pi) = two_prod(s, x);
        let (sum, sigma) = two_sum(p, a.hi);
        s = sum;
        c = c.mul_add(x, pi + sigma + a.lo);
    }
    s + c
}

/// The decoding polynomial, with `f1` available in expanded and factored form.
#[derive(Debug, Clone)]
pub struct PolynomialSpec {
    f1_expanded: Vec<SplitCoeff>,
    f2: Vec<SplitCoeff>,
}

impl Default for PolynomialSpec {
    fn default() -> Self {
        Self::new()
    }
}

impl PolynomialSpec {
    pub fn new() -> Self {
        let mut f1 = vec![1i128];
        for _ in 0..5 {
            f1 = poly_mul(&f1, &F1_LINEAR);
        }
        for _ in 0..2 {
            f1 = poly_mul(&f1, &F1_QUADRATIC);
        }
        f1 = poly_mul(&f1, &F1_QUARTIC);
        Self {
            f1_expanded: f1.into_iter().map(SplitCoeff::new).collect(),
            f2: F2_COEFFS.iter().copied().map(SplitCoeff::new).collect(),
        }
    }

    /// Integer coefficients of expanded `f1`, lowest-degree first.
    pub fn f1_coefficients(&self) -> Vec<i128> {
        self.f1_expanded
            .iter()
            .map(|c| c.hi as i128 + c.lo as i128)
            .collect()
    }

    pub fn f1_expanded(&self, e: f64) -> f64 {
        compensated_horner(&self.f1_expanded, e)
    }

    pub fn f1_factored(&self, e: f64) -> f64 {
        let eval = |coeffs: &[i128]| {
            let split: Vec<SplitCoeff> = coeffs.iter().copied().map(SplitCoeff::new).collect();
            compensated_horner(&split, e)
        };
        eval(&F1_LINEAR).powi(5) * eval(&F1_QUADRATIC).powi(2) * eval(&F1_QUARTIC)
    }

    pub fn f2(&self, e: f64) -> f64 {
        F2_PREFACTOR * std::f64::consts::SQRT_2 * compensated_horner(&self.f2, e)
    }

    pub fn p(&self, e: f64) -> f64 {
        -0.5 - self.f1_expanded(e) / self.f2(e)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodingRoot {
    pub e_c: f64,
    /// `p(e_c)`.
    pub residual: f64,
    /// Sign changes of `p` on `[-4, 4]` outside the search interval.
    pub other_real_roots: Vec<f64>,
}

fn sign_changes(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> Vec<(f64, f64)> {
    let xs: Vec<f64> = (0..=steps)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .collect();
    xs.windows(2)
        .filter(|w| f(w[0]).signum() != f(w[1]).signum())
        .map(|w| (w[0], w[1]))
        .collect()
}

/// Sole real root of `p` in `(0, 0.5)`.
pub fn decoding_polynomial_root() -> Result<DecodingRoot> {
    let poly = PolynomialSpec::new();
    let (lo, hi) = ROOT_INTERVAL;
    if !sign_changes(|e| poly.f2(e), lo, hi, SCAN_STEPS).is_empty() {
        return Err(Error::RootCount { lo, hi, found: 0 });
    }
    // Open interval: skip the endpoints themselves.
    let eps = 1e-9;
    let brackets = sign_changes(|e| poly.p(e), lo + eps, hi - eps, SCAN_STEPS);
    if brackets.len() != 1 {
        return Err(Error::RootCount {
            lo,
            hi,
            found: brackets.len(),
        });
    }
    let (a, b) = brackets[0];
    let (e_c, _) = bisect(|e| Ok(poly.p(e)), a, b, ROOT_TOL)?;

    let other_real_roots = sign_changes(|e| poly.p(e), -4.0, 4.0, 8 * SCAN_STEPS)
        .into_iter()
        .map(|(a, b)| 0.5 * (a + b))
        .filter(|r| !(*r > lo && *r < hi))
        .collect();
    Ok(DecodingRoot {
        e_c,
        residual: poly.p(e_c),
        other_real_roots,
    })
}
