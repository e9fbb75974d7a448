//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`). Tolerances
//! are pinned here, not configured.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use gevrey_spectral::calculus::{
    apply_borel, domain_test_direct, domain_test_dual, BorelFunction, SpectralModel, SpectralSet,
    Verdict3,
};
use gevrey_spectral::counterexample::{
    certify_refutation, select_escaping, synthesize_bounded, synthesize_unbounded, Regime,
};
use gevrey_spectral::evolution::{
    admissible_two_sided, derivative_chain, evolve, evolve_complex_unchecked,
    mild_residual_profile, mild_solution_check,
};
use gevrey_spectral::gevrey::{
    class_membership, estimate_order, growth_type_check, ClassQuery, Flavor, GrowthCheck,
};
use gevrey_spectral::numerics::log_l2_norm;
use gevrey_spectral::region::{complement_bounded, Region};
use gevrey_spectral::spectrum::{Atom, GeneratorLaw, SpectrumSpec};
use gevrey_spectral::state::{CoefficientLaw, StateVector};
use gevrey_spectral::verify::{
    run_verify_self_adjoint, run_verify_theorem_real,
};

fn report(id: u32, name: &str, pass: bool) {
    println!(
        "criterion {id} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({name}) failed");
}

fn rel_err(model: &SpectralModel, a: &StateVector, b: &StateVector) -> f64 {
    let diff_logs: Vec<f64> = model
        .atoms()
        .iter()
        .map(|at| a.coefficient(at).log_abs_diff(b.coefficient(at)))
        .collect();
    let log_diff = log_l2_norm(diff_logs.into_iter());
    (log_diff - b.log_norm(model.atoms())).exp()
}

// -------------------------------------------------------------------------
// 1. Region criterion soundness
// -------------------------------------------------------------------------
#[test]
fn criterion_1_region_criterion_soundness() {
    let start = std::time::Instant::now();
    let report_tr = run_verify_theorem_real(100, 7, &[1.0, 2.0]).unwrap();
    let elapsed = start.elapsed();
    let pass = report_tr.consistent()
        && report_tr.disagreements.is_empty()
        && report_tr.inconclusives <= 5
        && elapsed.as_secs() < 60;
    if !pass {
        eprintln!(
            "disagreements: {:?}, inconclusives: {}, elapsed: {elapsed:?}",
            report_tr.disagreements, report_tr.inconclusives
        );
    }
    report(1, "region criterion soundness", pass);
}

// -------------------------------------------------------------------------
// 2. Self-adjoint entireness
// -------------------------------------------------------------------------
#[test]
fn criterion_2_self_adjoint_entireness() {
    let rep = run_verify_self_adjoint(20, 7).unwrap();
    let pass = rep.consistent() && rep.disagreements.is_empty() && rep.inconclusives == 0;
    if !pass {
        eprintln!("{:?}", rep.disagreements);
    }
    report(2, "self-adjoint entireness", pass);
}

// -------------------------------------------------------------------------
// 3. Counterexample conjunction
// -------------------------------------------------------------------------
#[test]
fn criterion_3_counterexample_conjunction() {
    let s_grid = [0.1, 0.5, 1.0, 2.0];
    let mut pass = true;
    for seed in 0..10u64 {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for beta in [1.0, 2.0] {
            // imaginary exponential and a region-violating parabola edge
            let specs = vec![
                SpectrumSpec::generator(
                    GeneratorLaw::ImaginaryExponential {
                        s: rng.random_range(0.3..2.0),
                        r: rng.random_range(1.3..2.5),
                    },
                    4096,
                )
                .unwrap(),
                SpectrumSpec::generator(
                    GeneratorLaw::ParabolaEdge {
                        c: if rng.random_bool(0.5) { 1.0 } else { -1.0 }
                            * rng.random_range(0.5..1.0),
                        q: rng.random_range(beta..2.0 * beta),
                        beta0: 2.0 * beta,
                    },
                    4096,
                )
                .unwrap(),
            ];
            for spec in specs {
                let selection = match select_escaping(&spec, beta, 6, 4096) {
                    Ok(s) => s,
                    Err(e) => {
                        eprintln!("seed {seed} beta {beta}: selection failed: {e}");
                        pass = false;
                        continue;
                    }
                };
                let f = match selection.regime {
                    Regime::BoundedReal => synthesize_bounded(&selection).unwrap().0,
                    _ => synthesize_unbounded(&selection).unwrap().0,
                };
                let model = SpectralModel::new(spec, 4096).unwrap();
                let adm = admissible_two_sided(&model, &f, &[-1.0, 1.0]).unwrap();
                if adm.verdict != Verdict3::Yes {
                    eprintln!("seed {seed} beta {beta}: not admissible");
                    pass = false;
                }
                match certify_refutation(&model, &f, beta, &s_grid) {
                    Ok(cert) if cert.is_valid() => {}
                    other => {
                        eprintln!("seed {seed} beta {beta}: refutation failed: {other:?}");
                        pass = false;
                    }
                }
            }
        }
    }
    report(3, "counterexample conjunction", pass);
}

// -------------------------------------------------------------------------
// 4. Oracle equivalence of the direct and dual domain tests
// -------------------------------------------------------------------------
#[test]
fn criterion_4_oracle_equivalence() {
    let mut rng = ChaCha12Rng::seed_from_u64(4242);
    let mut agree = 0u32;
    let total = 500u32;
    for trial in 0..total {
        let model = draw_small_model(&mut rng);
        let f = draw_state(&mut rng, &model);
        let func = draw_function(&mut rng);
        let duals = draw_duals(&mut rng, &model);
        let direct = domain_test_direct(&model, &func, &f);
        let dual = domain_test_dual(&model, &func, &f, &duals);
        if direct.verdict == dual.verdict {
            agree += 1;
        } else {
            eprintln!(
                "trial {trial}: direct {:?} vs dual {:?} on {func:?} law {}",
                direct.verdict,
                dual.verdict,
                f.law.name()
            );
        }
    }
    report(4, "oracle equivalence", agree == total);
}

fn draw_small_model(rng: &mut ChaCha12Rng) -> SpectralModel {
    let n = rng.random_range(8..=64u32);
    let spec = match rng.random_range(0..4) {
        0 => {
            let atoms: Vec<Atom> = (1..=n)
                .map(|k| {
                    Atom::new(
                        k,
                        Complex64::new(rng.random_range(-6.0..6.0), rng.random_range(-6.0..6.0)),
                    )
                    .unwrap()
                })
                .collect();
            SpectrumSpec::finite_list(atoms).unwrap()
        }
        1 => SpectrumSpec::generator(
            GeneratorLaw::RealPower {
                sigma: if rng.random_bool(0.5) { 1.0 } else { -1.0 }
                    * rng.random_range(0.5..2.0),
                p: rng.random_range(0.5..2.5),
            },
            n,
        )
        .unwrap(),
        2 => SpectrumSpec::generator(
            GeneratorLaw::ImaginaryExponential {
                s: rng.random_range(0.3..2.0),
                r: rng.random_range(1.2..1.6),
            },
            n,
        )
        .unwrap(),
        _ => SpectrumSpec::generator(
            GeneratorLaw::ParabolaEdge {
                c: if rng.random_bool(0.5) { 1.0 } else { -1.0 } * rng.random_range(0.3..2.0),
                q: rng.random_range(0.5..2.0),
                beta0: rng.random_range(1.0..3.0),
            },
            n,
        )
        .unwrap(),
    };
    SpectralModel::new(spec, n).unwrap()
}

fn draw_state(rng: &mut ChaCha12Rng, model: &SpectralModel) -> StateVector {
    match rng.random_range(0..4) {
        0 => {
            let mut coeffs: Vec<(u32, Complex64)> = Vec::new();
            for a in model.atoms() {
                if rng.random_bool(0.7) {
                    coeffs.push((
                        a.index,
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                    ));
                }
            }
            StateVector::from_complex_coeffs(&coeffs)
        }
        1 => StateVector::from_law(CoefficientLaw::InverseSquare),
        2 => StateVector::from_law(CoefficientLaw::ExpLinear {
            a: rng.random_range(0.3..2.0),
        }),
        _ => StateVector::from_law(CoefficientLaw::ExpQuadratic {
            a: rng.random_range(0.3..2.0),
        }),
    }
}

fn draw_function(rng: &mut ChaCha12Rng) -> BorelFunction {
    match rng.random_range(0..5) {
        0 => BorelFunction::Power {
            n: rng.random_range(0..=4),
        },
        1 => BorelFunction::ExpT {
            t: rng.random_range(-2.0..2.0),
        },
        2 => BorelFunction::ExpAbsRoot {
            s: rng.random_range(0.1..2.0),
            beta: rng.random_range(1.0..3.0),
        },
        3 => BorelFunction::Indicator(SpectralSet::AbsLe {
            radius: rng.random_range(0.5..20.0),
        }),
        _ => BorelFunction::Product(vec![
            BorelFunction::Power {
                n: rng.random_range(1..=2),
            },
            BorelFunction::ExpT {
                t: rng.random_range(-1.0..1.0),
            },
        ]),
    }
}

fn draw_duals(rng: &mut ChaCha12Rng, model: &SpectralModel) -> Vec<StateVector> {
    let count = rng.random_range(1..=2);
    (0..count)
        .map(|_| {
            let g = if rng.random_bool(0.5) {
                let mut coeffs: Vec<(u32, Complex64)> = Vec::new();
                for a in model.atoms() {
                    if rng.random_bool(0.5) {
                        coeffs.push((
                            a.index,
                            Complex64::new(
                                rng.random_range(-1.0..1.0),
                                rng.random_range(-1.0..1.0),
                            ),
                        ));
                    }
                }
                let v = StateVector::from_complex_coeffs(&coeffs);
                if v.log_norm(model.atoms()) == f64::NEG_INFINITY {
                    StateVector::coordinate(1)
                } else {
                    v
                }
            } else {
                StateVector::from_law(CoefficientLaw::ExpLinear {
                    a: rng.random_range(0.3..2.0),
                })
            };
            g.normalized(model.atoms())
        })
        .collect()
}

// -------------------------------------------------------------------------
// 5. Analytic identities
// -------------------------------------------------------------------------
#[test]
fn criterion_5_analytic_identities() {
    let mut rng = ChaCha12Rng::seed_from_u64(55);
    let mut pass = true;

    // group law on 100 admissible triples
    for _ in 0..100 {
        let model = draw_admissible_model(&mut rng);
        let f = StateVector::from_law(CoefficientLaw::ExpQuadratic {
            a: rng.random_range(0.5..2.0),
        });
        let s = rng.random_range(-1.0..1.0);
        let t = rng.random_range(-1.0..1.0);
        let two = evolve(&model, &evolve(&model, &f, s).unwrap(), t).unwrap();
        let one = evolve(&model, &f, s + t).unwrap();
        let err = rel_err(&model, &two, &one);
        if !(err <= 1e-12) {
            eprintln!("group law violated: rel err {err}");
            pass = false;
        }
    }

    // evolve(f, 0) = f exactly
    {
        let model = draw_admissible_model(&mut rng);
        let f = StateVector::from_law(CoefficientLaw::ExpQuadratic { a: 1.0 });
        let y = evolve(&model, &f, 0.0).unwrap();
        for atom in model.atoms() {
            if y.coefficient(atom) != f.coefficient(atom) {
                eprintln!("evolve at 0 not exact");
                pass = false;
            }
        }
    }

    // derivative chain vs one-shot powers
    for _ in 0..20 {
        let n_atoms = rng.random_range(4..16u32);
        let atoms: Vec<Atom> = (1..=n_atoms)
            .map(|k| {
                Atom::new(
                    k,
                    Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)),
                )
                .unwrap()
            })
            .collect();
        let model =
            SpectralModel::new(SpectrumSpec::finite_list(atoms).unwrap(), n_atoms).unwrap();
        let coeffs: Vec<(u32, Complex64)> = (1..=n_atoms)
            .map(|k| {
                (
                    k,
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                )
            })
            .collect();
        let f = StateVector::from_complex_coeffs(&coeffs);
        let t = rng.random_range(-0.5..0.5);
        let chain = derivative_chain(&model, &f, t, 5).unwrap();
        for n in 1..=5u32 {
            let direct = apply_borel(
                &model,
                &BorelFunction::Power { n },
                &evolve(&model, &f, t).unwrap(),
                true,
            )
            .unwrap();
            let err = rel_err(&model, &chain[n as usize], &direct);
            if !(err <= 1e-12) {
                eprintln!("derivative chain mismatch at n={n}: {err}");
                pass = false;
            }
        }
    }

    // unitary norm conservation, exact to 1e-13
    for _ in 0..20 {
        let model = SpectralModel::new(
            SpectrumSpec::generator(
                GeneratorLaw::ImaginaryExponential {
                    s: rng.random_range(0.3..2.0),
                    r: rng.random_range(1.2..1.8),
                },
                64,
            )
            .unwrap(),
            64,
        )
        .unwrap();
        let f = StateVector::from_law(CoefficientLaw::ExpLinear {
            a: rng.random_range(0.3..2.0),
        });
        let n0 = f.norm(model.atoms());
        let y = evolve(&model, &f, rng.random_range(-5.0..5.0)).unwrap();
        let n1 = y.norm(model.atoms());
        if !((n1 - n0).abs() <= 1e-13 * n0) {
            eprintln!("unitary norm drift: {n0} -> {n1}");
            pass = false;
        }
    }

    report(5, "analytic identities", pass);
}

fn draw_admissible_model(rng: &mut ChaCha12Rng) -> SpectralModel {
    let spec = if rng.random_bool(0.5) {
        SpectrumSpec::generator(
            GeneratorLaw::RealPower {
                sigma: if rng.random_bool(0.5) { 1.0 } else { -1.0 }
                    * rng.random_range(0.5..2.0),
                p: rng.random_range(0.5..1.8),
            },
            128,
        )
        .unwrap()
    } else {
        SpectrumSpec::generator(
            GeneratorLaw::ImaginaryExponential {
                s: rng.random_range(0.3..2.0),
                r: rng.random_range(1.2..1.6),
            },
            64,
        )
        .unwrap()
    };
    let n = spec.truncation_default;
    SpectralModel::new(spec, n).unwrap()
}

// -------------------------------------------------------------------------
// 6. Mild-solution identity
// -------------------------------------------------------------------------
#[test]
fn criterion_6_mild_solution_identity() {
    let mut rng = ChaCha12Rng::seed_from_u64(66);
    let mut pass = true;
    for _ in 0..20 {
        let n_atoms = rng.random_range(2..8u32);
        let atoms: Vec<Atom> = (1..=n_atoms)
            .map(|k| {
                // |lambda| <= 4
                let r = rng.random_range(0.0..4.0);
                let th = rng.random_range(0.0..std::f64::consts::TAU);
                Atom::new(k, Complex64::from_polar(r, th)).unwrap()
            })
            .collect();
        let model =
            SpectralModel::new(SpectrumSpec::finite_list(atoms).unwrap(), n_atoms).unwrap();
        let coeffs: Vec<(u32, Complex64)> = (1..=n_atoms)
            .map(|k| {
                (
                    k,
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                )
            })
            .collect();
        let f = StateVector::from_complex_coeffs(&coeffs);
        let t0 = rng.random_range(-0.25..0.25);
        let t = t0 + 0.5;
        let residual = mild_solution_check(&model, &f, t0, t, 129).unwrap();
        if !(residual <= 1e-8) {
            eprintln!("mild residual too large: {residual}");
            pass = false;
        }
        // observed convergence order under node doubling
        let profile = mild_residual_profile(&model, &f, t0, t, &[17, 33, 65]).unwrap();
        if profile[2].1 > 1e-13 {
            let order = (profile[0].1 / profile[2].1).log2() / 2.0;
            if !(order >= 3.5) {
                eprintln!("observed order {order} below 3.5 ({profile:?})");
                pass = false;
            }
        }
    }
    report(6, "mild-solution identity", pass);
}

// -------------------------------------------------------------------------
// 7. Estimator calibration
// -------------------------------------------------------------------------
#[test]
fn criterion_7_estimator_calibration() {
    let start = std::time::Instant::now();
    let mut pass = true;

    let line = SpectralModel::new(
        SpectrumSpec::generator(GeneratorLaw::RealPower { sigma: 1.0, p: 1.0 }, 10_000).unwrap(),
        10_000,
    )
    .unwrap();

    // independent oracle: brute-force scaled partial sums of
    // sum_k k^{2n} e^{-2k} around the dominant index, without log-sum-exp
    let oracle_log_m = |n: u32, decay: fn(f64) -> f64| -> f64 {
        let peak = (1..=10_000u64)
            .map(|k| {
                let kf = k as f64;
                2.0 * n as f64 * kf.ln() + decay(kf)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = (1..=10_000u64)
            .map(|k| {
                let kf = k as f64;
                (2.0 * n as f64 * kf.ln() + decay(kf) - peak).exp()
            })
            .sum();
        0.5 * (peak + sum.ln())
    };

    let per_estimate_budget = 5.0f64;
    let f1 = StateVector::from_law(CoefficientLaw::ExpLinear { a: 1.0 });
    let t1 = std::time::Instant::now();
    let est1 = estimate_order(&line, &f1, 40).unwrap();
    if t1.elapsed().as_secs_f64() > per_estimate_budget {
        eprintln!("exp_linear estimate too slow: {:?}", t1.elapsed());
        pass = false;
    }
    if !((est1.beta_hat - 1.0).abs() <= 0.1) {
        eprintln!("exp_linear beta_hat {}", est1.beta_hat);
        pass = false;
    }
    // spot-check the norms against the oracle at a few orders
    for &(n, _, _) in est1.profile.iter().filter(|&&(n, _, _)| n % 10 == 0) {
        let want = oracle_log_m(n, |k| -2.0 * k);
        let got = est1
            .profile
            .iter()
            .find(|&&(m, _, _)| m == n)
            .map(|&(_, y, _)| y)
            .unwrap();
        if !((got - want).abs() <= 1e-9 * want.abs().max(1.0)) {
            eprintln!("norm mismatch vs oracle at n={n}: {got} vs {want}");
            pass = false;
        }
    }

    let f2 = StateVector::from_law(CoefficientLaw::ExpQuadratic { a: 1.0 });
    let t2 = std::time::Instant::now();
    let est2 = estimate_order(&line, &f2, 40).unwrap();
    if t2.elapsed().as_secs_f64() > per_estimate_budget {
        eprintln!("exp_quadratic estimate too slow: {:?}", t2.elapsed());
        pass = false;
    }
    if !((est2.beta_hat - 0.5).abs() <= 0.1) {
        eprintln!("exp_quadratic beta_hat {}", est2.beta_hat);
        pass = false;
    }

    let single = SpectralModel::new(
        SpectrumSpec::finite_list(vec![Atom::new(1, Complex64::new(2.0, 0.0)).unwrap()]).unwrap(),
        4,
    )
    .unwrap();
    let t3 = std::time::Instant::now();
    let est3 = estimate_order(&single, &StateVector::coordinate(1), 40).unwrap();
    if t3.elapsed().as_secs_f64() > per_estimate_budget {
        eprintln!("single-atom estimate too slow: {:?}", t3.elapsed());
        pass = false;
    }
    if !(est3.beta_hat.abs() <= 0.05) || !((est3.alpha_hat - 2.0).abs() <= 1e-6 * 2.0) {
        eprintln!(
            "single atom beta_hat {} alpha_hat {}",
            est3.beta_hat, est3.alpha_hat
        );
        pass = false;
    }

    let _total = start.elapsed();
    report(7, "estimator calibration", pass);
}

// -------------------------------------------------------------------------
// 8. Sub-analytic order contrapositive
// -------------------------------------------------------------------------
#[test]
fn criterion_8_ol1_contrapositive() {
    let mut pass = true;
    let line = SpectralModel::new(
        SpectrumSpec::generator(GeneratorLaw::RealPower { sigma: 1.0, p: 1.0 }, 2048).unwrap(),
        2048,
    )
    .unwrap();
    let f = StateVector::from_law(CoefficientLaw::ExpLinear { a: 1.0 });
    for beta in [0.25, 0.5, 0.75] {
        let v = class_membership(
            &line,
            &f,
            &ClassQuery {
                beta,
                flavor: Flavor::Roumieu,
                s_grid: vec![0.1, 0.5, 1.0, 2.0],
            },
        )
        .unwrap();
        if v.member != Verdict3::No {
            eprintln!("membership not refuted at beta = {beta}: {:?}", v.member);
            pass = false;
        }
    }

    // bounded spectra: exponential-type growth with gamma = max |lambda|,
    // M = ||f|| (1 + 1e-9)
    let mut rng = ChaCha12Rng::seed_from_u64(88);
    for _ in 0..10 {
        let n_atoms = rng.random_range(2..8u32);
        let atoms: Vec<Atom> = (1..=n_atoms)
            .map(|k| {
                Atom::new(
                    k,
                    Complex64::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)),
                )
                .unwrap()
            })
            .collect();
        let model =
            SpectralModel::new(SpectrumSpec::finite_list(atoms).unwrap(), n_atoms).unwrap();
        let coeffs: Vec<(u32, Complex64)> = (1..=n_atoms)
            .map(|k| {
                (
                    k,
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                )
            })
            .collect();
        let f = StateVector::from_complex_coeffs(&coeffs);
        let gamma = model
            .atoms()
            .iter()
            .map(|a| a.lambda.norm())
            .fold(0.0f64, f64::max)
            .max(1e-9);
        let samples: Vec<(Complex64, f64)> = (1..=24)
            .flat_map(|i| {
                let radius = 0.4 * i as f64;
                [
                    Complex64::new(radius, 0.0),
                    Complex64::new(-radius, 0.0),
                    Complex64::new(0.0, radius),
                    Complex64::new(radius / 2.0, -radius / 2.0),
                ]
            })
            .map(|z| (z, evolve_complex_unchecked(&model, &f, z).log_norm(model.atoms())))
            .collect();
        match growth_type_check(&samples, 0.0, &[gamma]) {
            GrowthCheck::Holds { log_m, .. } => {
                let cap = f.log_norm(model.atoms()) + (1.0f64 + 1e-9).ln();
                if log_m > cap {
                    eprintln!("growth constant too large: {log_m} vs {cap}");
                    pass = false;
                }
            }
            other => {
                eprintln!("growth check failed: {other:?}");
                pass = false;
            }
        }
    }
    report(8, "sub-analytic order contrapositive", pass);
}

// -------------------------------------------------------------------------
// 9. Format stability
// -------------------------------------------------------------------------
#[test]
fn criterion_9_format_stability() {
    let mut pass = true;
    // verify reports: identical seeds give identical bytes
    let a = run_verify_theorem_real(20, 7, &[1.0, 2.0]).unwrap();
    let b = run_verify_theorem_real(20, 7, &[1.0, 2.0]).unwrap();
    let ja = gevrey_spectral::report::to_canonical_json(&a.to_json());
    let jb = gevrey_spectral::report::to_canonical_json(&b.to_json());
    if ja != jb {
        eprintln!("verify report bytes differ across identical runs");
        pass = false;
    }

    // region verdicts and spectra serialize to identical bytes across runs
    let spec = SpectrumSpec::generator(
        GeneratorLaw::ParabolaEdge {
            c: -1.5,
            q: 2.0,
            beta0: 3.0,
        },
        512,
    )
    .unwrap();
    let v1 = complement_bounded(&spec, &Region::symmetric(1.0, 1.0).unwrap(), 512).unwrap();
    let v2 = complement_bounded(&spec, &Region::symmetric(1.0, 1.0).unwrap(), 512).unwrap();
    let b1 = gevrey_spectral::report::to_canonical_json(&v1.to_json());
    let b2 = gevrey_spectral::report::to_canonical_json(&v2.to_json());
    if b1 != b2 {
        eprintln!("region verdict bytes differ");
        pass = false;
    }
    if spec.serialize_canonical() != spec.serialize_canonical() {
        eprintln!("spectrum bytes differ");
        pass = false;
    }

    // estimator CSV across two computations
    let line = SpectralModel::new(
        SpectrumSpec::generator(GeneratorLaw::RealPower { sigma: 1.0, p: 1.0 }, 512).unwrap(),
        512,
    )
    .unwrap();
    let f = StateVector::from_law(CoefficientLaw::ExpLinear { a: 1.0 });
    let csv = |est: &gevrey_spectral::gevrey::OrderEstimate| {
        let mut t = gevrey_spectral::report::CsvTable::new(&["n", "log_m_n", "fitted_log_m_n"]);
        for &(n, y, fy) in &est.profile {
            t.push_row(vec![
                gevrey_spectral::report::CsvCell::Int(n as i64),
                gevrey_spectral::report::CsvCell::Float(y),
                gevrey_spectral::report::CsvCell::Float(fy),
            ]);
        }
        t.to_bytes()
    };
    let e1 = estimate_order(&line, &f, 20).unwrap();
    let e2 = estimate_order(&line, &f, 20).unwrap();
    if csv(&e1) != csv(&e2) {
        eprintln!("estimator CSV differs");
        pass = false;
    }
    report(9, "format stability", pass);
}
