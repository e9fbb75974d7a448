//! Seeded theorem-level verification suites.
//!
//! Each trial draws a spectrum from the generator catalog (restricted to
//! parameter ranges where the exact asymptotic rules decide everything) plus
//! a compatible state, then checks one implication of the characterization:
//! region criterion holds => evolved states are Beurling members; criterion
//! fails => a synthesized counterexample refutes Roumieu membership with a
//! valid certificate. Disagreements are data, not errors.

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Mutex;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::json;

use crate::calculus::{SpectralModel, Verdict3};
use crate::counterexample::{
    certify_refutation, select_escaping, synthesize_bounded, synthesize_unbounded, Regime,
    DEFAULT_S_GRID,
};
use crate::error::Error;
use crate::evolution::{admissible_two_sided, evolve_complex_unchecked, translate_solution};
use crate::gevrey::{class0_membership, class_membership, growth_type_check, ClassQuery, Flavor, GrowthCheck};
use crate::region::search_b;
use crate::spectrum::{AffineShape, Atom, GeneratorLaw, SpectrumSpec};
use crate::state::{CoefficientLaw, StateVector};

pub const DEFAULT_B_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
pub const DEFAULT_TRIAL_TRUNCATION: u32 = 4096;

/// One disagreement record: enough to replay the trial.
#[derive(Debug, Clone)]
pub struct Disagreement {
    pub trial: u32,
    pub spectrum: String,
    pub seed: u64,
    pub detail: String,
}

/// Aggregate result of a suite run.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: String,
    pub trials: u32,
    pub agreements: u32,
    pub disagreements: Vec<Disagreement>,
    pub inconclusives: u32,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite,
            "trials": self.trials,
            "agreements": self.agreements,
            "inconclusives": self.inconclusives,
            "disagreements": self.disagreements.iter().map(|d| json!({
                "trial": d.trial,
                "seed": d.seed,
                "spectrum": d.spectrum,
                "detail": d.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn consistent(&self) -> bool {
        self.agreements + self.disagreements.len() as u32 + self.inconclusives == self.trials
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TrialOutcome {
    Agree,
    Inconclusive,
}

fn trial_seed(seed: u64, trial: u32) -> u64 {
    seed.wrapping_add((trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Worker-pool map over trial indices; deterministic because each slot is a
/// pure function of (seed, index). Thread count is capped by the
/// GEVREY_SPECTRAL_THREADS environment variable.
fn run_trials<F>(trials: u32, f: F) -> Vec<Result<(TrialOutcome, String), (String, String)>>
where
    F: Fn(u32) -> Result<(TrialOutcome, String), (String, String)> + Sync,
{
    let threads = thread_budget(trials);
    let results: Mutex<Vec<Option<Result<(TrialOutcome, String), (String, String)>>>> =
        Mutex::new(vec![None; trials as usize]);
    let next = AtomicU32::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= trials {
                    break;
                }
                let out = f(i);
                results.lock().unwrap()[i as usize] = Some(out);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("trial completed"))
        .collect()
}

fn thread_budget(trials: u32) -> u32 {
    let hw = std::thread::available_parallelism()
        .map(|n| n.get() as u32)
        .unwrap_or(1);
    let cap = std::env::var("GEVREY_SPECTRAL_THREADS")
        .ok()
        .and_then(|v| v.parse::<u32>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(hw.min(8));
    cap.min(hw.min(8)).min(trials.max(1))
}

fn assemble(suite: &str, seed: u64, outcomes: Vec<Result<(TrialOutcome, String), (String, String)>>) -> VerifyReport {
    let trials = outcomes.len() as u32;
    let mut agreements = 0;
    let mut inconclusives = 0;
    let mut disagreements = Vec::new();
    for (i, out) in outcomes.into_iter().enumerate() {
        match out {
            Ok((TrialOutcome::Agree, _)) => agreements += 1,
            Ok((TrialOutcome::Inconclusive, _)) => inconclusives += 1,
            Err((spectrum, detail)) => disagreements.push(Disagreement {
                trial: i as u32,
                spectrum,
                seed: trial_seed(seed, i as u32),
                detail,
            }),
        }
    }
    VerifyReport {
        suite: suite.into(),
        trials,
        agreements,
        disagreements,
        inconclusives,
    }
}

fn spec_string(spec: &SpectrumSpec) -> String {
    String::from_utf8(spec.serialize_canonical()).expect("utf8 json")
}

// ---------------------------------------------------------------------------
// catalog draws
// ---------------------------------------------------------------------------

fn draw_sign(rng: &mut ChaCha12Rng) -> f64 {
    if rng.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// A spectrum whose escape set is bounded at order `beta` (criterion holds),
/// together with a state admissible for every real time.
fn draw_passing(rng: &mut ChaCha12Rng, beta: f64) -> (SpectrumSpec, StateVector) {
    let law = if rng.random_bool(0.5) {
        GeneratorLaw::RealPower {
            sigma: draw_sign(rng) * rng.random_range(0.5..2.0),
            p: rng.random_range(0.5..1.8),
        }
    } else {
        // beta0 stays at or below the tested order, so the parabola edge lies
        // inside the region (at the tie, |c| >= 0.5 beats the smallest slope).
        let u: f64 = rng.random_range(0.0..1.0);
        GeneratorLaw::ParabolaEdge {
            c: draw_sign(rng) * rng.random_range(0.5..2.0),
            q: rng.random_range(0.5..1.8),
            beta0: 1.0 + (beta - 1.0) * u,
        }
    };
    let spec = SpectrumSpec::generator(law, DEFAULT_TRIAL_TRUNCATION).expect("catalog law valid");
    let f = StateVector::from_law(CoefficientLaw::ExpQuadratic {
        a: rng.random_range(0.5..2.0),
    });
    (spec, f)
}

/// A spectrum violating the criterion at order `beta` (escape certified for
/// every slope).
fn draw_failing(rng: &mut ChaCha12Rng, beta: f64) -> SpectrumSpec {
    let law = match rng.random_range(0..3) {
        0 => GeneratorLaw::ImaginaryExponential {
            s: rng.random_range(0.3..2.0),
            r: rng.random_range(1.3..2.5),
        },
        // |a| stays small so the strips reach the line within the truncation
        1 => GeneratorLaw::AffineCustom {
            a: draw_sign(rng) * rng.random_range(0.0..0.8),
            b: draw_sign(rng) * rng.random_range(0.5..2.0),
            shape: AffineShape::ImagLinear,
        },
        _ => GeneratorLaw::ParabolaEdge {
            c: draw_sign(rng) * rng.random_range(0.5..1.0),
            q: rng.random_range(beta..2.0 * beta),
            beta0: 2.0 * beta,
        },
    };
    SpectrumSpec::generator(law, DEFAULT_TRIAL_TRUNCATION).expect("catalog law valid")
}

fn draw_finite_list(rng: &mut ChaCha12Rng) -> (SpectrumSpec, StateVector) {
    let n = rng.random_range(3..10u32);
    let atoms: Vec<Atom> = (1..=n)
        .map(|k| {
            Atom::new(
                k,
                Complex64::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)),
            )
            .expect("finite atom")
        })
        .collect();
    let spec = SpectrumSpec::finite_list(atoms).expect("distinct indices");
    let coeffs: Vec<(u32, Complex64)> = (1..=n)
        .map(|k| {
            (
                k,
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            )
        })
        .collect();
    (spec, StateVector::from_complex_coeffs(&coeffs))
}

// ---------------------------------------------------------------------------
// suite: theorem_real
// ---------------------------------------------------------------------------

/// Per trial: when the region criterion certifiably holds, translated orbit
/// states must be Beurling members of order beta; when it certifiably fails,
/// the synthesized counterexample must be an admissible two-sided seed whose
/// Roumieu refutation certificate validates.
pub fn run_verify_theorem_real(trials: u32, seed: u64, beta_grid: &[f64]) -> Result<VerifyReport, Error> {
    if trials == 0 || beta_grid.is_empty() {
        return Err(Error::ParamRange {
            name: "trials/beta_grid".into(),
            msg: "must be nonempty".into(),
        });
    }
    let betas = beta_grid.to_vec();
    let outcomes = run_trials(trials, |i| {
        let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(seed, i));
        let beta = betas[(i as usize) % betas.len()];
        if i % 2 == 0 {
            theorem_real_passing_trial(&mut rng, beta)
        } else {
            theorem_real_failing_trial(&mut rng, beta)
        }
    });
    Ok(assemble("theorem_real", seed, outcomes))
}

fn theorem_real_passing_trial(
    rng: &mut ChaCha12Rng,
    beta: f64,
) -> Result<(TrialOutcome, String), (String, String)> {
    let (spec, f) = draw_passing(rng, beta);
    let spec_json = spec_string(&spec);
    let verdict = search_b(&spec, beta, DEFAULT_TRIAL_TRUNCATION, &DEFAULT_B_GRID)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    if !verdict.complement_bounded {
        return Err((spec_json, "expected the criterion to hold".into()));
    }
    let model = SpectralModel::new(spec, DEFAULT_TRIAL_TRUNCATION)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    let adm = admissible_two_sided(&model, &f, &[-1.0, 1.0])
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    if adm.verdict != Verdict3::Yes {
        return Err((spec_json, "drawn state not certifiably admissible".into()));
    }
    let mut inconclusive = false;
    for t0 in [-1.0, 0.0, 1.0] {
        let y = translate_solution(&model, &f, t0)
            .map_err(|e| (spec_json.clone(), e.to_string()))?;
        let v = class_membership(
            &model,
            &y,
            &ClassQuery {
                beta,
                flavor: Flavor::Beurling,
                s_grid: DEFAULT_S_GRID.to_vec(),
            },
        )
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
        match v.member {
            Verdict3::Yes => {}
            Verdict3::No => {
                return Err((
                    spec_json,
                    format!("criterion holds but membership fails at t0 = {t0}"),
                ))
            }
            Verdict3::Inconclusive => inconclusive = true,
        }
    }
    Ok((
        if inconclusive {
            TrialOutcome::Inconclusive
        } else {
            TrialOutcome::Agree
        },
        spec_json,
    ))
}

fn theorem_real_failing_trial(
    rng: &mut ChaCha12Rng,
    beta: f64,
) -> Result<(TrialOutcome, String), (String, String)> {
    let spec = draw_failing(rng, beta);
    let spec_json = spec_string(&spec);
    let verdict = search_b(&spec, beta, DEFAULT_TRIAL_TRUNCATION, &DEFAULT_B_GRID)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    if verdict.complement_bounded {
        return Err((spec_json, "expected the criterion to fail".into()));
    }
    let selection = select_escaping(&spec, beta, 6, DEFAULT_TRIAL_TRUNCATION)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    let (f, cert) = match selection.regime {
        Regime::BoundedReal => {
            let (f, _hs, cert) =
                synthesize_bounded(&selection).map_err(|e| (spec_json.clone(), e.to_string()))?;
            (f, cert)
        }
        Regime::UnboundedPos | Regime::UnboundedNeg => {
            let (f, _h, _hs, cert) =
                synthesize_unbounded(&selection).map_err(|e| (spec_json.clone(), e.to_string()))?;
            (f, cert)
        }
    };
    if !cert.is_valid() {
        return Err((spec_json, "synthesis certificate invalid".into()));
    }
    let model = SpectralModel::new(spec, DEFAULT_TRIAL_TRUNCATION)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    let adm = admissible_two_sided(&model, &f, &[-1.0, 1.0])
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    if adm.verdict != Verdict3::Yes {
        return Err((spec_json, "counterexample not two-sided admissible".into()));
    }
    match certify_refutation(&model, &f, beta, &DEFAULT_S_GRID) {
        Ok(c) if c.is_valid() => Ok((TrialOutcome::Agree, spec_json)),
        Ok(_) => Err((spec_json, "refutation certificate invalid".into())),
        Err(e) => Err((spec_json, e.to_string())),
    }
}

// ---------------------------------------------------------------------------
// suite: ol1
// ---------------------------------------------------------------------------

/// Contrapositive of the sub-analytic order theorem: any unbounded catalog
/// spectrum carries a state outside every Roumieu class of order < 1, while
/// bounded (finite-list) spectra put every state inside all of them,
/// including the order-zero exponential-type bound.
pub fn run_verify_ol1(trials: u32, seed: u64, beta_grid: &[f64]) -> Result<VerifyReport, Error> {
    if trials == 0 || beta_grid.is_empty() || beta_grid.iter().any(|&b| !(0.0..1.0).contains(&b)) {
        return Err(Error::ParamRange {
            name: "beta_grid".into(),
            msg: "must be nonempty and inside [0, 1)".into(),
        });
    }
    let betas = beta_grid.to_vec();
    let outcomes = run_trials(trials, |i| {
        let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(seed, i));
        if i % 2 == 0 {
            ol1_unbounded_trial(&mut rng, &betas)
        } else {
            ol1_bounded_trial(&mut rng, &betas)
        }
    });
    Ok(assemble("ol1", seed, outcomes))
}

fn ol1_unbounded_trial(
    rng: &mut ChaCha12Rng,
    betas: &[f64],
) -> Result<(TrialOutcome, String), (String, String)> {
    let law = match rng.random_range(0..3) {
        0 => GeneratorLaw::RealPower {
            sigma: draw_sign(rng) * rng.random_range(0.5..2.0),
            p: rng.random_range(1.0..2.5),
        },
        1 => GeneratorLaw::ImaginaryExponential {
            s: rng.random_range(0.3..2.0),
            r: rng.random_range(1.3..2.5),
        },
        _ => GeneratorLaw::ParabolaEdge {
            c: draw_sign(rng) * rng.random_range(0.5..2.0),
            q: rng.random_range(1.0..2.5),
            beta0: rng.random_range(1.0..3.0),
        },
    };
    let spec = SpectrumSpec::generator(law, DEFAULT_TRIAL_TRUNCATION).expect("catalog law valid");
    let spec_json = spec_string(&spec);
    let model = SpectralModel::new(spec, DEFAULT_TRIAL_TRUNCATION)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    let f = StateVector::from_law(CoefficientLaw::ExpLinear { a: 1.0 });
    for &beta in betas {
        if beta == 0.0 {
            let v = class0_membership(&model, &f, &[1.0, 1e3, 1e6]);
            if v.member != Verdict3::No {
                return Err((spec_json, "order-zero class accepted an unbounded-support state".into()));
            }
            continue;
        }
        let v = class_membership(
            &model,
            &f,
            &ClassQuery {
                beta,
                flavor: Flavor::Roumieu,
                s_grid: DEFAULT_S_GRID.to_vec(),
            },
        )
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
        match v.member {
            Verdict3::No => {}
            Verdict3::Yes => {
                return Err((
                    spec_json,
                    format!("unbounded spectrum admitted Roumieu membership at beta = {beta}"),
                ))
            }
            Verdict3::Inconclusive => return Ok((TrialOutcome::Inconclusive, spec_json)),
        }
    }
    Ok((TrialOutcome::Agree, spec_json))
}

fn ol1_bounded_trial(
    rng: &mut ChaCha12Rng,
    betas: &[f64],
) -> Result<(TrialOutcome, String), (String, String)> {
    let (spec, f) = draw_finite_list(rng);
    let spec_json = spec_string(&spec);
    let model = SpectralModel::new(spec, 64).map_err(|e| (spec_json.clone(), e.to_string()))?;
    for &beta in betas {
        if beta == 0.0 {
            continue;
        }
        let v = class_membership(
            &model,
            &f,
            &ClassQuery {
                beta,
                flavor: Flavor::Beurling,
                s_grid: DEFAULT_S_GRID.to_vec(),
            },
        )
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
        if v.member != Verdict3::Yes {
            return Err((spec_json, format!("finite spectrum rejected at beta = {beta}")));
        }
    }
    // order zero: bounded support plus the exponential-type growth bound
    let v0 = class0_membership(&model, &f, &[1e6]);
    if v0.member != Verdict3::Yes {
        return Err((spec_json, "order-zero class rejected a finite state".into()));
    }
    let gamma = model
        .atoms()
        .iter()
        .map(|a| a.lambda.norm())
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let samples: Vec<(Complex64, f64)> = (1..=24)
        .flat_map(|i| {
            let radius = 0.33 * i as f64;
            [
                Complex64::new(radius, 0.0),
                Complex64::new(-radius, 0.0),
                Complex64::new(0.0, radius),
                Complex64::new(radius / 2.0, radius / 2.0),
            ]
        })
        .map(|z| {
            let y = evolve_complex_unchecked(&model, &f, z);
            (z, y.log_norm(model.atoms()))
        })
        .collect();
    let log_f = f.log_norm(model.atoms());
    match growth_type_check(&samples, 0.0, &[gamma]) {
        GrowthCheck::Holds { log_m, .. } => {
            if log_m <= log_f + (1.0f64 + 1e-9).ln() {
                Ok((TrialOutcome::Agree, spec_json))
            } else {
                Err((spec_json, format!(
                    "growth constant exceeds ||f||: log_m = {log_m}, log ||f|| = {log_f}"
                )))
            }
        }
        other => Err((spec_json, format!("growth bound failed: {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// suite: smoothness_improvement
// ---------------------------------------------------------------------------

/// Translated-solution smoothness jump: on criterion-passing spectra,
/// analytic (Roumieu order 1) membership at t0 = 0 propagates to every
/// sampled t0 and upgrades to entire (Beurling order 1); on failing spectra
/// the synthesized state already fails at t0 = 0.
pub fn run_verify_smoothness_improvement(trials: u32, seed: u64) -> Result<VerifyReport, Error> {
    if trials == 0 {
        return Err(Error::ParamRange {
            name: "trials".into(),
            msg: "must be >= 1".into(),
        });
    }
    let outcomes = run_trials(trials, |i| {
        let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(seed, i));
        match i % 3 {
            0 => smoothness_passing_trial(&mut rng),
            1 => smoothness_failing_trial(&mut rng),
            _ => smoothness_single_atom_trial(&mut rng),
        }
    });
    Ok(assemble("smoothness_improvement", seed, outcomes))
}

fn smoothness_passing_trial(
    rng: &mut ChaCha12Rng,
) -> Result<(TrialOutcome, String), (String, String)> {
    let (spec, f) = draw_passing(rng, 1.0);
    let spec_json = spec_string(&spec);
    let model = SpectralModel::new(spec, DEFAULT_TRIAL_TRUNCATION)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    let mut verdicts = Vec::new();
    for t0 in [0.0, -1.0, -0.5, 0.5, 1.0] {
        let y = translate_solution(&model, &f, t0)
            .map_err(|e| (spec_json.clone(), e.to_string()))?;
        let v = class_membership(
            &model,
            &y,
            &ClassQuery {
                beta: 1.0,
                flavor: Flavor::Roumieu,
                s_grid: DEFAULT_S_GRID.to_vec(),
            },
        )
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
        verdicts.push(v.member);
    }
    if verdicts.iter().any(|&v| v == Verdict3::Inconclusive) {
        return Ok((TrialOutcome::Inconclusive, spec_json));
    }
    if verdicts[0] == Verdict3::Yes && verdicts.iter().any(|&v| v == Verdict3::No) {
        return Err((spec_json, "analyticity at 0 failed to propagate".into()));
    }
    // the jump: entire, i.e. Beurling of order 1
    let b = class_membership(
        &model,
        &f,
        &ClassQuery {
            beta: 1.0,
            flavor: Flavor::Beurling,
            s_grid: DEFAULT_S_GRID.to_vec(),
        },
    )
    .map_err(|e| (spec_json.clone(), e.to_string()))?;
    match b.member {
        Verdict3::Yes => Ok((TrialOutcome::Agree, spec_json)),
        Verdict3::No => Err((spec_json, "no Beurling upgrade on a passing spectrum".into())),
        Verdict3::Inconclusive => Ok((TrialOutcome::Inconclusive, spec_json)),
    }
}

fn smoothness_failing_trial(
    rng: &mut ChaCha12Rng,
) -> Result<(TrialOutcome, String), (String, String)> {
    let spec = draw_failing(rng, 1.0);
    let spec_json = spec_string(&spec);
    let selection = select_escaping(&spec, 1.0, 6, DEFAULT_TRIAL_TRUNCATION)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    let f = match selection.regime {
        Regime::BoundedReal => {
            synthesize_bounded(&selection)
                .map_err(|e| (spec_json.clone(), e.to_string()))?
                .0
        }
        _ => {
            synthesize_unbounded(&selection)
                .map_err(|e| (spec_json.clone(), e.to_string()))?
                .0
        }
    };
    let model = SpectralModel::new(spec, DEFAULT_TRIAL_TRUNCATION)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    let v = class_membership(
        &model,
        &f,
        &ClassQuery {
            beta: 1.0,
            flavor: Flavor::Roumieu,
            s_grid: DEFAULT_S_GRID.to_vec(),
        },
    )
    .map_err(|e| (spec_json.clone(), e.to_string()))?;
    match v.member {
        Verdict3::No => Ok((TrialOutcome::Agree, spec_json)),
        Verdict3::Yes => Err((spec_json, "synthesized state is analytic at 0".into())),
        Verdict3::Inconclusive => Ok((TrialOutcome::Inconclusive, spec_json)),
    }
}

fn smoothness_single_atom_trial(
    rng: &mut ChaCha12Rng,
) -> Result<(TrialOutcome, String), (String, String)> {
    let atom = Atom::new(
        1,
        Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)),
    )
    .expect("finite atom");
    let spec = SpectrumSpec::finite_list(vec![atom]).expect("one atom");
    let spec_json = spec_string(&spec);
    let model = SpectralModel::new(spec, 4).map_err(|e| (spec_json.clone(), e.to_string()))?;
    let f = StateVector::coordinate(1);
    for t0 in [0.0, -1.0, 1.0] {
        let y = translate_solution(&model, &f, t0)
            .map_err(|e| (spec_json.clone(), e.to_string()))?;
        for flavor in [Flavor::Roumieu, Flavor::Beurling] {
            let v = class_membership(
                &model,
                &y,
                &ClassQuery {
                    beta: 1.0,
                    flavor,
                    s_grid: vec![1.0],
                },
            )
            .map_err(|e| (spec_json.clone(), e.to_string()))?;
            if v.member != Verdict3::Yes {
                return Err((spec_json, "single-atom state not entire".into()));
            }
        }
    }
    Ok((TrialOutcome::Agree, spec_json))
}

// ---------------------------------------------------------------------------
// suite: self_adjoint
// ---------------------------------------------------------------------------

/// Real-spectrum entireness: with the spectrum on the real axis the region
/// criterion holds vacuously (empty escape, radius 0) and every admissible
/// state generates a Beurling order-1 (entire) solution.
pub fn run_verify_self_adjoint(trials: u32, seed: u64) -> Result<VerifyReport, Error> {
    if trials == 0 {
        return Err(Error::ParamRange {
            name: "trials".into(),
            msg: "must be >= 1".into(),
        });
    }
    let outcomes = run_trials(trials, |i| {
        let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(seed, i));
        self_adjoint_trial(&mut rng, i)
    });
    Ok(assemble("self_adjoint", seed, outcomes))
}

fn self_adjoint_trial(
    rng: &mut ChaCha12Rng,
    trial: u32,
) -> Result<(TrialOutcome, String), (String, String)> {
    // real spectra: unbounded power laws, slow affine shapes, finite lists
    let (spec, f) = match trial % 4 {
        0 => {
            let spec = SpectrumSpec::generator(
                GeneratorLaw::RealPower {
                    sigma: draw_sign(rng) * rng.random_range(0.5..2.0),
                    p: rng.random_range(0.5..1.8),
                },
                DEFAULT_TRIAL_TRUNCATION,
            )
            .expect("catalog law valid");
            let f = StateVector::from_law(CoefficientLaw::ExpQuadratic {
                a: rng.random_range(0.5..2.0),
            });
            (spec, f)
        }
        1 => {
            let b = draw_sign(rng) * rng.random_range(0.5..2.0);
            let spec = SpectrumSpec::generator(
                GeneratorLaw::AffineCustom {
                    a: b.signum() * rng.random_range(0.0..2.0),
                    b,
                    shape: AffineShape::Sqrt,
                },
                DEFAULT_TRIAL_TRUNCATION,
            )
            .expect("catalog law valid");
            let f = StateVector::from_law(CoefficientLaw::ExpQuadratic {
                a: rng.random_range(0.5..2.0),
            });
            (spec, f)
        }
        2 => {
            let b = draw_sign(rng) * rng.random_range(0.5..2.0);
            let spec = SpectrumSpec::generator(
                GeneratorLaw::AffineCustom {
                    a: b.signum() * rng.random_range(0.0..2.0),
                    b,
                    shape: AffineShape::Log,
                },
                DEFAULT_TRIAL_TRUNCATION,
            )
            .expect("catalog law valid");
            let f = StateVector::from_law(CoefficientLaw::ExpLinear {
                a: rng.random_range(0.5..2.0),
            });
            (spec, f)
        }
        _ => {
            let n = rng.random_range(3..10u32);
            let atoms: Vec<Atom> = (1..=n)
                .map(|k| {
                    Atom::new(k, Complex64::new(rng.random_range(-5.0..5.0), 0.0))
                        .expect("finite atom")
                })
                .collect();
            let spec = SpectrumSpec::finite_list(atoms).expect("distinct indices");
            let coeffs: Vec<(u32, Complex64)> = (1..=n)
                .map(|k| {
                    (
                        k,
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                    )
                })
                .collect();
            (spec, StateVector::from_complex_coeffs(&coeffs))
        }
    };
    let spec_json = spec_string(&spec);

    // the criterion holds with empty escape for any slope: radius 0
    let verdict = search_b(&spec, 1.0, DEFAULT_TRIAL_TRUNCATION, &DEFAULT_B_GRID)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    if !verdict.complement_bounded || verdict.radius != Some(0.0) {
        return Err((spec_json, "real spectrum escaped the region".into()));
    }

    let model = SpectralModel::new(spec, DEFAULT_TRIAL_TRUNCATION)
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    let adm = admissible_two_sided(&model, &f, &[-1.0, 1.0])
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
    if adm.verdict != Verdict3::Yes {
        return Err((spec_json, "drawn state not certifiably admissible".into()));
    }
    let mut inconclusive = false;
    for t0 in [-1.0, 0.0, 1.0] {
        let y = translate_solution(&model, &f, t0)
            .map_err(|e| (spec_json.clone(), e.to_string()))?;
        let v = class_membership(
            &model,
            &y,
            &ClassQuery {
                beta: 1.0,
                flavor: Flavor::Beurling,
                s_grid: DEFAULT_S_GRID.to_vec(),
            },
        )
        .map_err(|e| (spec_json.clone(), e.to_string()))?;
        match v.member {
            Verdict3::Yes => {}
            Verdict3::No => return Err((spec_json, format!("not entire at t0 = {t0}"))),
            Verdict3::Inconclusive => inconclusive = true,
        }
    }
    Ok((
        if inconclusive {
            TrialOutcome::Inconclusive
        } else {
            TrialOutcome::Agree
        },
        spec_json,
    ))
}
