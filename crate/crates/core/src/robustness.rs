//! Searches for the resource that needs the most noise to become classical.
//!
//! The bound that holds for a whole resource family is the largest
//! per-resource threshold, so every scan here is a maximisation of
//! [`injection_threshold`] over the family.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::noise::{InjectionVariant, NoiseModel, ResourceSpec};
use crate::threshold::{bisect, injection_threshold};

pub const PHASE_GRID: usize = 512;
pub const SPHERE_GRID: usize = 64;
/// Target precision of the refined maximiser (radians).
pub const ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePoint {
    /// `[theta]` for phase scans, `[polar, azimuth]` for sphere scans.
    pub params: Vec<f64>,
    pub bloch: BlochVector,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub best_resource: ResourceSpec,
    pub best_threshold: f64,
    /// Refined maximiser in the same parameterisation as the profile.
    pub best_params: Vec<f64>,
    pub profile: Vec<ProfilePoint>,
}

fn threshold_of(model: NoiseModel, resource: &ResourceSpec) -> Result<f64> {
    Ok(injection_threshold(model, resource)?.strength)
}

/// Index of the first maximum.
fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_section_max<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

/// Phase states (or phase gates) `theta` in `[0, pi/2]`: a 512-point grid then
/// golden-section refinement around the best grid point.
pub fn scan_phase_resources(model: NoiseModel, variant: InjectionVariant) -> Result<ScanResult> {
    let step = FRAC_PI_2 / (PHASE_GRID - 1) as f64;
    let profile: Vec<ProfilePoint> = (0..PHASE_GRID)
        .into_par_iter()
        .map(|i| {
            let theta = i as f64 * step;
            let r = ResourceSpec::phase(variant, theta)?;
            Ok(ProfilePoint {
                params: vec![theta],
                bloch: r.bloch(),
                threshold: threshold_of(model, &r)?,
            })
        })
        .collect::<Result<_>>()?;

    let values: Vec<f64> = profile.iter().map(|p| p.threshold).collect();
    let best = argmax(&values);
    let lo = best.saturating_sub(1) as f64 * step;
    let hi = (best + 1).min(PHASE_GRID - 1) as f64 * step;
    let (theta, refined) = golden_section_max(
        |t| threshold_of(model, &ResourceSpec::phase(variant, t)?),
        lo,
        hi,
        ANGLE_TOL,
    )?;
    let (theta, best_threshold) = if refined >= values[best] {
        (theta, refined)
    } else {
        (profile[best].params[0], values[best])
    };
    Ok(ScanResult {
        best_resource: ResourceSpec::phase(variant, theta)?,
        best_threshold,
        best_params: vec![theta],
        profile,
    })
}

/// Every pure state (or gate output) in the positive octant, which covers the
/// sphere by octahedral symmetry of the shipped models: a 64 x 64 grid in
/// (polar, azimuth) followed by a shrinking compass search.
pub fn scan_general_resources(model: NoiseModel, variant: InjectionVariant) -> Result<ScanResult> {
    let step = FRAC_PI_2 / (SPHERE_GRID - 1) as f64;
    let eval = |polar: f64, azimuth: f64| -> Result<f64> {
        let polar = polar.clamp(0.0, FRAC_PI_2);
        let azimuth = azimuth.clamp(0.0, FRAC_PI_2);
        let r = ResourceSpec::general(variant, BlochVector::from_angles(polar, azimuth))?;
        threshold_of(model, &r)
    };
    let profile: Vec<ProfilePoint> = (0..SPHERE_GRID * SPHERE_GRID)
        .into_par_iter()
        .map(|k| {
            let polar = (k / SPHERE_GRID) as f64 * step;
            let azimuth = (k % SPHERE_GRID) as f64 * step;
            Ok(ProfilePoint {
                params: vec![polar, azimuth],
                bloch: BlochVector::from_angles(polar, azimuth),
                threshold: eval(polar, azimuth)?,
            })
        })
        .collect::<Result<_>>()?;

    let values: Vec<f64> = profile.iter().map(|p| p.threshold).collect();
    let best = argmax(&values);
    let (mut polar, mut azimuth) = (profile[best].params[0], profile[best].params[1]);
    let mut value = values[best];
    let mut h = step;
    while h > ANGLE_TOL {
        let mut moved = false;
        for (dp, da) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let (p, a) = (
                (polar + dp).clamp(0.0, FRAC_PI_2),
                (azimuth + da).clamp(0.0, FRAC_PI_2),
            );
            let v = eval(p, a)?;
            if v > value {
                polar = p;
                azimuth = a;
                value = v;
                moved = true;
                break;
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    let b = BlochVector::from_angles(polar, azimuth);
    Ok(ScanResult {
        best_resource: ResourceSpec::general(variant, b)?,
        best_threshold: value,
        best_params: vec![polar, azimuth],
        profile,
    })
}

/// Unit vector maximising `f_x |x| + f_y |y| + f_z |z|` on the sphere:
/// `(f_x, f_y, f_z) / |f|` by Cauchy-Schwarz.
pub fn analytic_diagonal_optimum(factors: [f64; 3]) -> Result<BlochVector> {
    if factors.iter().any(|f| !(*f > 0.0)) {
        return Err(Error::InvalidState(format!(
            "factors must be positive, got {factors:?}"
        )));
    }
    BlochVector::direction(factors[0], factors[1], factors[2])
}

/// Largest threshold over resources for a diagonal family: the strength at
/// which `|f|` (restricted to x, y for phase resources) reaches 1.
pub fn analytic_diagonal_threshold<F>(factors: F, phase_only: bool, s_max: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<[f64; 3]>,
{
    let norm = |s: f64| -> Result<f64> {
        let f = factors(s)?;
        let z = if phase_only { 0.0 } else { f[2] * f[2] };
        Ok((f[0] * f[0] + f[1] * f[1] + z).sqrt() - 1.0)
    };
    Ok(bisect(norm, 0.0, s_max, 1e-14)?.0)
}
