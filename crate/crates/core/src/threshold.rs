//! Minimal noise that drives a resource into the stabilizer octahedron.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::bloch::BlochVector;
use crate::channel::AffineChannel;
use crate::error::{Error, Result};
use crate::noise::{NoiseModel, ResourceSpec};
use crate::shift::effective_map;

/// Final bracket width of the threshold bisection.
pub const BRACKET_TOL: f64 = 1e-12;
/// Samples of the monotonicity guard.
pub const MONOTONE_SAMPLES: usize = 100;
/// Resources within this distance outside the octahedron count as inside, so
/// stabilizer vertices survive rounding in simulated channels.
pub const INSIDE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub strength: f64,
    /// `octahedron_norm(image) - 1` at `strength`.
    pub residual: f64,
    /// Width of the final bisection interval.
    pub bracket: f64,
    /// The resource was already inside the octahedron without noise.
    pub already_inside: bool,
}

/// Bisection for a root of `f` on `[lo, hi]` with `f(lo)` and `f(hi)` of
/// opposite sign. Returns the midpoint of the final bracket and its width.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok((lo, 0.0));
    }
    if f_hi == 0.0 {
        return Ok((hi, 0.0));
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::RootCount { lo, hi, found: 0 });
    }
    let lo_positive = f_lo > 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid)?;
        if v == 0.0 {
            return Ok((mid, 0.0));
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), hi - lo))
}

/// Smallest strength in `[0, s_max]` at which `family(s)` maps `resource` onto
/// the octahedron surface.
///
/// `g(s) = octahedron_norm(family(s)(resource)) - 1` must be strictly
/// decreasing; this is checked on [`MONOTONE_SAMPLES`] points first.
pub fn octahedron_threshold<F>(family: F, resource: BlochVector, s_max: f64) -> Result<ThresholdResult>
where
    F: Fn(f64) -> Result<AffineChannel>,
{
    let g = |s: f64| -> Result<f64> { Ok(family(s)?.apply(resource).octahedron_norm() - 1.0) };
    let g0 = g(0.0)?;
    if g0 <= INSIDE_TOL {
        return Ok(ThresholdResult {
            strength: 0.0,
            residual: g0,
            bracket: 0.0,
            already_inside: true,
        });
    }
    let mut prev = g0;
    for i in 1..=MONOTONE_SAMPLES {
        let s = s_max * i as f64 / MONOTONE_SAMPLES as f64;
        let v = g(s)?;
        if v >= prev {
            return Err(Error::NotMonotone { at: s });
        }
        prev = v;
    }
    if prev > 0.0 {
        return Err(Error::NoThreshold { s_max });
    }
    let (strength, bracket) = bisect(g, 0.0, s_max, BRACKET_TOL)?;
    Ok(ThresholdResult {
        strength,
        residual: g(strength)?,
        bracket,
        already_inside: false,
    })
}

/// Threshold of an injection circuit under `model`, through the shift engine.
pub fn injection_threshold(model: NoiseModel, resource: &ResourceSpec) -> Result<ThresholdResult> {
    octahedron_threshold(
        |s| Ok(effective_map(&model.location_noise(s, resource)?, resource)?.channel),
        resource.bloch(),
        model.search_max(),
    )
}

/// Two rounds of `N^Z_p` against the single-round phase-gate threshold `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingBound {
    /// Per-round `N^Z` strength.
    pub p: f64,
    /// Same bound for the totally-dephasing parameterisation, `2 p`.
    pub p_tilde: f64,
    /// Single-round threshold `(1 - 1/sqrt 2) / 2`.
    pub q: f64,
}

/// Solves `(1 - 2p)^2 = 1 - 2q`.
pub fn two_hit_dephasing_threshold() -> DephasingBound {
    let q = 0.5 * (1.0 - FRAC_1_SQRT_2);
    let p = 0.5 * (1.0 - FRAC_1_SQRT_2.sqrt());
    DephasingBound { p, p_tilde: 2.0 * p, q }
}

/// Left-hand side of the error-per-gate phase equation: one round of `N^Z_p`
/// and one of `N^Z_t` with `t = 1 - sqrt(1 - p)`.
pub fn epg_phase_lhs(p: f64) -> f64 {
    (1.0 - 2.0 * p) * (1.0 - 2.0 * (1.0 - (1.0 - p).sqrt()))
}

/// Root in `[0, 0.5]` of `epg_phase_lhs(p) = target`.
pub fn epg_phase_threshold_with_target(target: f64) -> Result<f64> {
    let (p, _) = bisect(|p| Ok(epg_phase_lhs(p) - target), 0.0, 0.5, 1e-15)?;
    Ok(p)
}

/// Error-per-gate bound for phase gates and phase states in any Clifford
/// architecture: `epg_phase_lhs(p) = 1/sqrt 2`.
pub fn epg_phase_threshold_general() -> Result<f64> {
    epg_phase_threshold_with_target(FRAC_1_SQRT_2)
}

/// Single-round depolarizing strength that makes `U(pi/4)` a Clifford mixture.
pub fn depolarizing_single_hit() -> f64 {
    (6.0 - 2.0 * 2f64.sqrt()) / 7.0
}

/// Two rounds of `N^D_p`: `(1 - p)^2 = 1 - (6 - 2 sqrt 2) / 7`.
pub fn depolarizing_two_hit_threshold() -> f64 {
    1.0 - (1.0 - depolarizing_single_hit()).sqrt()
}
