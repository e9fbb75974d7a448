//! Property tests for the structural invariants: serialization round-trips,
//! prefix stability, region monotonicity, total-variation bounds, projection
//! algebra, and the orbit group law.

use num_complex::Complex64;
use proptest::prelude::*;

use gevrey_spectral::calculus::{
    apply_borel, project, variation, BorelFunction, SpectralModel, Verdict3,
};
use gevrey_spectral::evolution::evolve;
use gevrey_spectral::gevrey::{class_membership, ClassQuery, Flavor};
use gevrey_spectral::numerics::log_l2_norm;
use gevrey_spectral::region::{complement_bounded, in_region, search_b, Region};
use gevrey_spectral::spectrum::{
    parse_spectrum, AffineShape, Atom, GeneratorLaw, SpectrumSpec,
};
use gevrey_spectral::state::{parse_state, CoefficientLaw, StateVector};

fn generator_strategy() -> impl Strategy<Value = GeneratorLaw> {
    prop_oneof![
        (0.1f64..3.0, 0.1f64..2.5, prop::bool::ANY).prop_map(|(sigma, p, neg)| {
            GeneratorLaw::RealPower {
                sigma: if neg { -sigma } else { sigma },
                p,
            }
        }),
        (0.1f64..3.0, 1.05f64..2.5).prop_map(|(s, r)| GeneratorLaw::ImaginaryExponential { s, r }),
        ((-2.0f64..2.0).prop_filter("c finite", |c| c.is_finite()), 0.2f64..2.5, 1.0f64..4.0)
            .prop_map(|(c, q, beta0)| GeneratorLaw::ParabolaEdge { c, q, beta0 }),
        (0.0f64..2.0, 0.2f64..2.0, prop::bool::ANY, 0usize..5).prop_map(|(a, b, neg, which)| {
            let shape = [
                AffineShape::Linear,
                AffineShape::Sqrt,
                AffineShape::Log,
                AffineShape::ImagLinear,
                AffineShape::ImagQuadratic,
            ][which];
            let b = if neg { -b } else { b };
            // real shapes keep a*b >= 0 so moduli stay monotone
            let a = if matches!(shape, AffineShape::Linear | AffineShape::Sqrt | AffineShape::Log)
            {
                a * b.signum()
            } else if neg {
                -a
            } else {
                a
            };
            GeneratorLaw::AffineCustom { a, b, shape }
        }),
    ]
}

fn finite_spec_strategy() -> impl Strategy<Value = SpectrumSpec> {
    prop::collection::vec((-8.0f64..8.0, -8.0f64..8.0), 1..12).prop_map(|points| {
        let atoms: Vec<Atom> = points
            .into_iter()
            .enumerate()
            .map(|(i, (re, im))| Atom::new(i as u32 + 1, Complex64::new(re, im)).unwrap())
            .collect();
        SpectrumSpec::finite_list(atoms).unwrap()
    })
}

fn spec_strategy() -> impl Strategy<Value = SpectrumSpec> {
    prop_oneof![
        generator_strategy().prop_map(|law| SpectrumSpec::generator(law, 64).unwrap()),
        finite_spec_strategy(),
    ]
}

fn finite_state_strategy(n: u32) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n as usize).prop_map(|coeffs| {
        let entries: Vec<(u32, Complex64)> = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, (re, im))| (i as u32 + 1, Complex64::new(re, im)))
            .collect();
        StateVector::from_complex_coeffs(&entries)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// parse . serialize is the identity on valid specs (canonical bytes).
    #[test]
    fn spectrum_round_trip(spec in spec_strategy(), negate in prop::bool::ANY) {
        let spec = if negate { spec.negate() } else { spec };
        let bytes = spec.serialize_canonical();
        let back = parse_spectrum(&bytes).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.serialize_canonical(), bytes);
    }

    /// materialize(spec, N) is a prefix of materialize(spec, N') for N <= N'.
    #[test]
    fn materialize_prefix(spec in spec_strategy(), n in 1u32..40, extra in 0u32..40) {
        let short = spec.materialize(n).unwrap();
        let long = spec.materialize(n + extra).unwrap();
        prop_assert!(short.len() <= long.len());
        for (a, b) in short.iter().zip(&long) {
            prop_assert_eq!(a, b);
        }
    }

    /// Region membership can only switch off as b grows; real points always in.
    #[test]
    fn region_monotone_in_b(
        re in -20.0f64..20.0,
        im in -20.0f64..20.0,
        beta in 1.0f64..4.0,
        b_small in 0.01f64..2.0,
        factor in 1.0f64..8.0,
    ) {
        let lambda = Complex64::new(re, im);
        let small = Region::symmetric(beta, b_small).unwrap();
        let large = Region::symmetric(beta, b_small * factor).unwrap();
        // larger slope -> smaller region
        prop_assert!(!in_region(lambda, &large) || in_region(lambda, &small));
        prop_assert!(in_region(Complex64::new(re, 0.0), &small));
    }

    /// The criterion is vacuously true on finite spectra.
    #[test]
    fn finite_list_always_bounded(
        spec in finite_spec_strategy(),
        beta in 1.0f64..4.0,
        b in 0.05f64..4.0,
    ) {
        let v = complement_bounded(&spec, &Region::symmetric(beta, b).unwrap(), 64).unwrap();
        prop_assert!(v.complement_bounded);
        prop_assert!(v.radius.is_some());
    }

    /// Total variation: additive over disjoint sets, and the total mass obeys
    /// v(f, g*, C) <= 4 M ||f|| ||g|| (Cauchy-Schwarz gives the sharper 1x).
    #[test]
    fn variation_additivity_and_mass(
        spec in finite_spec_strategy(),
        cut in -8.0f64..8.0,
    ) {
        let n = spec.materialize(64).unwrap().len() as u32;
        let model = SpectralModel::new(spec, n).unwrap();
        let f = StateVector::from_law(CoefficientLaw::InverseSquare);
        let g = StateVector::from_law(CoefficientLaw::ExpLinear { a: 0.5 });
        let left = variation(&model, &f, &g, |l| l.re < cut);
        let right = variation(&model, &f, &g, |l| l.re >= cut);
        let total = variation(&model, &f, &g, |_| true);
        prop_assert!((left + right - total).abs() <= 1e-12 * total.max(1.0));
        let mass_bound = 4.0 * model.m_bound * f.norm(model.atoms()) * g.norm(model.atoms());
        prop_assert!(total <= mass_bound * (1.0 + 1e-12));
    }

    /// Spectral projections: idempotent, commuting, norm-contractive.
    #[test]
    fn projection_algebra(
        spec in finite_spec_strategy(),
        cut1 in -6.0f64..6.0,
        cut2 in 0.0f64..8.0,
    ) {
        let n = spec.materialize(64).unwrap().len() as u32;
        let model = SpectralModel::new(spec, n).unwrap();
        let f = StateVector::from_law(CoefficientLaw::ExpLinear { a: 0.3 });
        let p1 = |l: Complex64| l.re <= cut1;
        let p2 = |l: Complex64| l.norm() <= cut2;
        let a = project(&model, p1, &project(&model, p1, &f));
        let b = project(&model, p1, &f);
        for (x, y) in a.materialize(model.atoms()).iter().zip(b.materialize(model.atoms())) {
            prop_assert_eq!(x.log_abs, y.log_abs);
        }
        let ab = project(&model, p1, &project(&model, p2, &f));
        let both = project(&model, |l| p1(l) && p2(l), &f);
        for (x, y) in ab.materialize(model.atoms()).iter().zip(both.materialize(model.atoms())) {
            prop_assert_eq!(x.log_abs, y.log_abs);
        }
        prop_assert!(b.norm(model.atoms()) <= model.m_bound * f.norm(model.atoms()) * (1.0 + 1e-12));
    }

    /// ||e^{tA} f|| bound of the pairing form: the evaluated integral
    /// int |F| dv(f, g*, .) <= 4 M ||F(A) f|| ||g*|| on finite instances.
    #[test]
    fn pairing_bound_cond_i(
        spec in finite_spec_strategy(),
        t in -1.0f64..1.0,
    ) {
        let n = spec.materialize(64).unwrap().len() as u32;
        let model = SpectralModel::new(spec, n).unwrap();
        let f = StateVector::from_law(CoefficientLaw::ExpLinear { a: 0.4 });
        let g = StateVector::from_law(CoefficientLaw::InverseSquare).normalized(model.atoms());
        let func = BorelFunction::ExpT { t };
        let lhs: f64 = model
            .atoms()
            .iter()
            .map(|a| {
                (func.log_abs(a.lambda)
                    + f.coefficient(a).log_abs
                    + g.coefficient(a).log_abs)
                    .exp()
            })
            .sum();
        let ff = apply_borel(&model, &func, &f, false).unwrap();
        let rhs = 4.0 * model.m_bound * ff.norm(model.atoms()) * g.norm(model.atoms());
        prop_assert!(lhs <= rhs * (1.0 + 1e-12), "lhs {lhs} rhs {rhs}");
    }

    /// Orbit group law and the exact identity at t = 0 on finite instances.
    #[test]
    fn orbit_group_law(
        spec in finite_spec_strategy(),
        s in -1.0f64..1.0,
        t in -1.0f64..1.0,
    ) {
        let n = spec.materialize(64).unwrap().len() as u32;
        let model = SpectralModel::new(spec, n).unwrap();
        let f = StateVector::from_law(CoefficientLaw::ExpLinear { a: 0.5 });
        let two = evolve(&model, &evolve(&model, &f, s).unwrap(), t).unwrap();
        let one = evolve(&model, &f, s + t).unwrap();
        let diff: Vec<f64> = model
            .atoms()
            .iter()
            .map(|a| two.coefficient(a).log_abs_diff(one.coefficient(a)))
            .collect();
        let rel = (log_l2_norm(diff.into_iter()) - one.log_norm(model.atoms())).exp();
        prop_assert!(rel <= 1e-12, "rel {rel}");
        let y0 = evolve(&model, &f, 0.0).unwrap();
        for atom in model.atoms() {
            prop_assert_eq!(y0.coefficient(atom), f.coefficient(atom));
        }
    }

    /// State JSON round-trips value-faithfully (coefficients are stored in
    /// polar log form, so cartesian wire values can move by an ulp) and the
    /// canonical bytes are deterministic.
    #[test]
    fn state_round_trip(f in finite_state_strategy(12)) {
        let spec = SpectrumSpec::generator(
            GeneratorLaw::RealPower { sigma: 1.0, p: 1.0 },
            12,
        )
        .unwrap();
        let atoms = spec.materialize(12).unwrap();
        let bytes = f.serialize_canonical(&atoms);
        prop_assert_eq!(f.serialize_canonical(&atoms), bytes.clone());
        let back = parse_state(&bytes).unwrap();
        for atom in &atoms {
            let a = f.coefficient(atom).to_complex();
            let b = back.coefficient(atom).to_complex();
            prop_assert!(
                (a - b).norm() <= 4.0 * f64::EPSILON * a.norm().max(1.0),
                "coefficient moved: {a} vs {b}"
            );
        }
    }

    /// The orbit-splitting identity: e^{tA+} f = e^{tA} E(Re >= 0) f + E(Re < 0) f.
    #[test]
    fn split_orbit_identity(
        f in finite_state_strategy(32),
        t in -0.9f64..0.9,
    ) {
        let mut atoms = Vec::new();
        let mut rng_state = 0x9E3779B97F4A7C15u64;
        for k in 1..=32u32 {
            // deterministic pseudo-random atoms spread over both half-planes
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let re = ((rng_state >> 11) as f64 / (1u64 << 53) as f64) * 6.0 - 3.0;
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let im = ((rng_state >> 11) as f64 / (1u64 << 53) as f64) * 6.0 - 3.0;
            atoms.push(Atom::new(k, Complex64::new(re, im)).unwrap());
        }
        let model = SpectralModel::new(SpectrumSpec::finite_list(atoms).unwrap(), 32).unwrap();
        let (_minus, plus) = gevrey_spectral::calculus::split_operator(&model);
        let lhs = evolve(&plus, &f, t).unwrap();
        let rhs_a = evolve(&model, &project(&model, |l| l.re >= 0.0, &f), t).unwrap();
        let rhs_b = project(&model, |l| l.re < 0.0, &f);
        for ((pa, oa), atom) in plus.atoms().iter().zip(model.atoms()).zip(model.atoms()) {
            let want_log = gevrey_spectral::numerics::sum_log_complex(&[
                rhs_a.coefficient(oa),
                rhs_b.coefficient(atom),
            ]);
            let got = lhs.coefficient(pa);
            let d = got.log_abs_diff(want_log);
            prop_assert!(
                d <= got.log_abs - 25.0 || d == f64::NEG_INFINITY,
                "split identity off by {d} at scale {}",
                got.log_abs
            );
        }
    }
}

// Non-proptest structural checks that want specific instances.

#[test]
fn coordinate_vectors_are_analytic_members() {
    // beta = 1 membership of every coordinate vector: single-atom support
    let spec = SpectrumSpec::generator(GeneratorLaw::ImaginaryExponential { s: 1.0, r: 2.0 }, 24)
        .unwrap();
    let model = SpectralModel::new(spec, 24).unwrap();
    for k in [1u32, 5, 17] {
        let v = class_membership(
            &model,
            &StateVector::coordinate(k),
            &ClassQuery {
                beta: 1.0,
                flavor: Flavor::Roumieu,
                s_grid: vec![0.25],
            },
        )
        .unwrap();
        assert_eq!(v.member, Verdict3::Yes);
        assert_eq!(v.witness_s, Some(0.25));
    }
}

#[test]
fn roumieu_yes_implies_beurling_yes_at_larger_order() {
    // on catalog generators the closed-form tails give the inclusion chain
    let cases = vec![
        (
            GeneratorLaw::RealPower { sigma: 1.0, p: 1.0 },
            CoefficientLaw::ExpLinear { a: 1.0 },
            1.0,
        ),
        (
            GeneratorLaw::RealPower { sigma: 1.0, p: 1.0 },
            CoefficientLaw::ExpQuadratic { a: 1.0 },
            0.5,
        ),
        (
            GeneratorLaw::ParabolaEdge { c: 1.0, q: 1.0, beta0: 2.0 },
            CoefficientLaw::ExpLinear { a: 1.0 },
            1.0,
        ),
    ];
    for (law, coeff, beta) in cases {
        let spec = SpectrumSpec::generator(law, 256).unwrap();
        let model = SpectralModel::new(spec, 256).unwrap();
        let f = StateVector::from_law(coeff);
        let grid = vec![0.1, 0.5, 1.0, 2.0];
        let roumieu = class_membership(
            &model,
            &f,
            &ClassQuery {
                beta,
                flavor: Flavor::Roumieu,
                s_grid: grid.clone(),
            },
        )
        .unwrap();
        assert_eq!(roumieu.member, Verdict3::Yes, "{law:?}");
        for factor in [1.5, 2.0, 4.0] {
            let beurling = class_membership(
                &model,
                &f,
                &ClassQuery {
                    beta: beta * factor,
                    flavor: Flavor::Beurling,
                    s_grid: grid.clone(),
                },
            )
            .unwrap();
            assert_eq!(
                beurling.member,
                Verdict3::Yes,
                "{law:?} at order {}",
                beta * factor
            );
        }
    }
}

#[test]
fn witness_certificate_replays_through_domain_test() {
    // a Roumieu witness replays as a convergent domain test
    let spec =
        SpectrumSpec::generator(GeneratorLaw::RealPower { sigma: 1.0, p: 1.0 }, 256).unwrap();
    let model = SpectralModel::new(spec, 256).unwrap();
    let f = StateVector::from_law(CoefficientLaw::ExpLinear { a: 1.0 });
    let v = class_membership(
        &model,
        &f,
        &ClassQuery {
            beta: 1.0,
            flavor: Flavor::Roumieu,
            s_grid: vec![0.25, 0.5, 1.0],
        },
    )
    .unwrap();
    assert_eq!(v.member, Verdict3::Yes);
    let s = v.witness_s.unwrap();
    let replay = gevrey_spectral::calculus::domain_test_direct(
        &model,
        &BorelFunction::ExpAbsRoot { s, beta: 1.0 },
        &f,
    );
    assert_eq!(replay.verdict, Verdict3::Yes);
}

#[test]
fn search_b_monotone_in_beta_for_exact_families() {
    let specs = vec![
        SpectrumSpec::generator(GeneratorLaw::ParabolaEdge { c: 0.7, q: 1.5, beta0: 2.5 }, 512)
            .unwrap(),
        SpectrumSpec::generator(GeneratorLaw::RealPower { sigma: -1.0, p: 1.2 }, 512).unwrap(),
        SpectrumSpec::generator(GeneratorLaw::ImaginaryExponential { s: 1.0, r: 1.5 }, 64)
            .unwrap(),
    ];
    let grid = [0.25, 0.5, 1.0, 2.0];
    for spec in specs {
        let mut seen = false;
        for beta in [1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0] {
            let ok = search_b(&spec, beta, 512, &grid).unwrap().complement_bounded;
            assert!(!seen || ok, "monotonicity broken at beta {beta} for {spec:?}");
            seen = seen || ok;
        }
    }
}
