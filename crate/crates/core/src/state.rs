//! State vectors `f = sum_k f_k e_k` in the orthonormal spectral basis.
//!
//! Coefficients are either an explicit finite map or a closed-form law, and
//! always carry an accumulated exponential factor `e^{t A}` so that orbits of
//! law-type states keep their closed form. Everything is stored and summed in
//! the log domain; `e^{s k^2}`-scale coefficients are routine here.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::counterexample::EscapeSelection;
use crate::error::Error;
use crate::numerics::{log_sum_exp, LogComplex};
use crate::series::{GrowthBounds, GrowthExpr, Scale};
use crate::spectrum::{Atom, SpectrumSpec};

/// Closed catalog of coefficient laws.
#[derive(Debug, Clone)]
pub enum CoefficientLaw {
    /// Explicit finitely-supported coefficients, keyed by atom index.
    Finite(BTreeMap<u32, LogComplex>),
    /// `f_k = k^{-2}`
    InverseSquare,
    /// `f_k = e^{-a k}`
    ExpLinear { a: f64 },
    /// `f_k = e^{-a k^2}`
    ExpQuadratic { a: f64 },
    /// `f_k = e^{-a k Re lambda_k}`
    ExpLambdaRe { a: f64 },
    /// Counterexample weights `counter^{-2}` on the selected atoms.
    SelectionInvSquare { selection: Arc<EscapeSelection> },
    /// Counterexample weights `e^{-w n Re lambda_n}` on the selected atoms,
    /// with `w = 1` for the refuted state and `w = 1/2` for its majorant.
    SelectionExpRe {
        selection: Arc<EscapeSelection>,
        half: bool,
    },
}

impl CoefficientLaw {
    pub fn name(&self) -> &'static str {
        match self {
            CoefficientLaw::Finite(_) => "finite",
            CoefficientLaw::InverseSquare => "inverse_square",
            CoefficientLaw::ExpLinear { .. } => "exp_linear",
            CoefficientLaw::ExpQuadratic { .. } => "exp_quadratic",
            CoefficientLaw::ExpLambdaRe { .. } => "exp_lambda_re",
            CoefficientLaw::SelectionInvSquare { .. } => "selection_inverse_square",
            CoefficientLaw::SelectionExpRe { .. } => "selection_exp_re",
        }
    }
}

/// A vector in the sequence-space model.
#[derive(Debug, Clone)]
pub struct StateVector {
    pub law: CoefficientLaw,
    /// Accumulated orbit parameter: the stored vector is `e^{exp_t A} f_law`.
    pub exp_t: f64,
    /// Global scalar multiplier, as a log-magnitude (normalization keeps the
    /// law form this way).
    pub log_scale: f64,
}

impl StateVector {
    pub fn from_law(law: CoefficientLaw) -> Self {
        StateVector {
            law,
            exp_t: 0.0,
            log_scale: 0.0,
        }
    }

    pub fn zero() -> Self {
        Self::from_law(CoefficientLaw::Finite(BTreeMap::new()))
    }

    /// Unit coordinate vector `e_k`.
    pub fn coordinate(k: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert(k, LogComplex::ONE);
        Self::from_law(CoefficientLaw::Finite(m))
    }

    pub fn from_complex_coeffs(entries: &[(u32, Complex64)]) -> Self {
        let mut m = BTreeMap::new();
        for &(k, z) in entries {
            let lc = LogComplex::from_complex(z);
            if !lc.is_zero() {
                m.insert(k, lc);
            }
        }
        Self::from_law(CoefficientLaw::Finite(m))
    }

    pub fn from_log_coeffs(entries: &[(u32, LogComplex)]) -> Self {
        let mut m = BTreeMap::new();
        for &(k, lc) in entries {
            if !lc.is_zero() {
                m.insert(k, lc);
            }
        }
        Self::from_law(CoefficientLaw::Finite(m))
    }

    /// The law coefficient at an atom, before the folded exponential factor.
    fn law_coefficient(&self, atom: &Atom) -> LogComplex {
        let k = atom.index;
        match &self.law {
            CoefficientLaw::Finite(m) => m.get(&k).copied().unwrap_or(LogComplex::ZERO),
            CoefficientLaw::InverseSquare => LogComplex::from_log_abs(-2.0 * (k as f64).ln()),
            CoefficientLaw::ExpLinear { a } => LogComplex::from_log_abs(-a * k as f64),
            CoefficientLaw::ExpQuadratic { a } => {
                LogComplex::from_log_abs(-a * (k as f64) * (k as f64))
            }
            CoefficientLaw::ExpLambdaRe { a } => {
                LogComplex::from_log_abs(-a * (k as f64) * atom.lambda.re)
            }
            CoefficientLaw::SelectionInvSquare { selection } => selection
                .counter_for_atom(k)
                .map(|n| LogComplex::from_log_abs(-2.0 * (n as f64).ln()))
                .unwrap_or(LogComplex::ZERO),
            CoefficientLaw::SelectionExpRe { selection, half } => selection
                .entry_for_atom(k)
                .map(|e| {
                    let w = if *half { 0.5 } else { 1.0 };
                    LogComplex::from_log_abs(-w * e.counter as f64 * e.lambda.re)
                })
                .unwrap_or(LogComplex::ZERO),
        }
    }

    /// Coefficient including the folded `e^{exp_t A}` factor and the global
    /// scale.
    pub fn coefficient(&self, atom: &Atom) -> LogComplex {
        let base = self.law_coefficient(atom);
        if base.is_zero() {
            return base;
        }
        if self.exp_t == 0.0 {
            return base.scale_log(self.log_scale);
        }
        LogComplex::new(
            base.log_abs + self.exp_t * atom.lambda.re + self.log_scale,
            base.arg + self.exp_t * atom.lambda.im,
        )
    }

    pub fn materialize(&self, atoms: &[Atom]) -> Vec<LogComplex> {
        atoms.iter().map(|a| self.coefficient(a)).collect()
    }

    /// log of the l2 norm over the given atoms.
    pub fn log_norm(&self, atoms: &[Atom]) -> f64 {
        let logs: Vec<f64> = atoms
            .iter()
            .map(|a| 2.0 * self.coefficient(a).log_abs)
            .collect();
        0.5 * log_sum_exp(&logs)
    }

    pub fn norm(&self, atoms: &[Atom]) -> f64 {
        self.log_norm(atoms).exp()
    }

    /// Scales so the norm over `atoms` is 1, keeping the law form. No-op on
    /// the zero vector.
    pub fn normalized(&self, atoms: &[Atom]) -> StateVector {
        let ln = self.log_norm(atoms);
        if ln == f64::NEG_INFINITY {
            return self.clone();
        }
        let mut out = self.clone();
        out.log_scale -= ln;
        out
    }

    /// True when the vector provably has finitely many nonzero coefficients
    /// over the full (untruncated) spectrum.
    pub fn has_finite_support(&self, spectrum: &SpectrumSpec) -> bool {
        if spectrum.is_finite() {
            return true;
        }
        match &self.law {
            CoefficientLaw::Finite(_) => true,
            // A selection that is not certified to continue indefinitely is,
            // as far as this artifact can tell, finitely supported.
            CoefficientLaw::SelectionInvSquare { selection }
            | CoefficientLaw::SelectionExpRe { selection, .. } => !selection.escape_certified,
            _ => false,
        }
    }

    /// Closed-form eventual bounds on `ln |f_k|` as a function of the plain
    /// atom index k, for the law part only (the folded exponential factor is
    /// composed by the caller, which knows the spectrum's `Re lambda_k`).
    ///
    /// Selection-backed laws live on the selection counters, not on k; they
    /// are handled by the dedicated counterexample series builders.
    pub fn law_log_bounds(&self, spectrum: &SpectrumSpec) -> Option<GrowthBounds> {
        let base = match &self.law {
            CoefficientLaw::InverseSquare => GrowthBounds::exact(GrowthExpr::log(-2.0)),
            CoefficientLaw::ExpLinear { a } => GrowthBounds::exact(GrowthExpr::pow(-a, 1.0)),
            CoefficientLaw::ExpQuadratic { a } => GrowthBounds::exact(GrowthExpr::pow(-a, 2.0)),
            CoefficientLaw::ExpLambdaRe { a } => {
                let re = spectrum.re_bounds()?;
                let lo = mul_by_k(&re.lo)?;
                let hi = mul_by_k(&re.hi)?;
                GrowthBounds::new(lo, hi).scale(-a)
            }
            CoefficientLaw::Finite(_)
            | CoefficientLaw::SelectionInvSquare { .. }
            | CoefficientLaw::SelectionExpRe { .. } => return None,
        };
        Some(GrowthBounds::new(
            base.lo.add_constant(self.log_scale),
            base.hi.add_constant(self.log_scale),
        ))
    }
}

/// Multiplies a growth expression by k; leaves the algebra on exponentials.
fn mul_by_k(expr: &GrowthExpr) -> Option<GrowthExpr> {
    let mut terms = Vec::new();
    for &(c, s) in &expr.terms {
        match s {
            Scale::Pow { rho, eta } => terms.push((c, Scale::Pow { rho: rho + 1.0, eta })),
            Scale::Exp { .. } => {
                if c != 0.0 {
                    return None;
                }
            }
        }
    }
    if expr.constant != 0.0 {
        terms.push((expr.constant, Scale::Pow { rho: 1.0, eta: 0 }));
    }
    Some(GrowthExpr {
        terms,
        constant: 0.0,
    })
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawCoeff {
    k: u32,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawState {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<RawCoeff>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    law: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
}

pub fn parse_state(text: &[u8]) -> Result<StateVector, Error> {
    let raw: RawState = serde_json::from_slice(text).map_err(|e| Error::Parse {
        what: "state".into(),
        msg: e.to_string(),
    })?;
    match raw.kind.as_str() {
        "finite" => {
            let coeffs = raw.coeffs.ok_or_else(|| Error::Parse {
                what: "state".into(),
                msg: "finite state requires \"coeffs\"".into(),
            })?;
            let entries: Vec<(u32, Complex64)> = coeffs
                .iter()
                .map(|c| (c.k, Complex64::new(c.re, c.im)))
                .collect();
            for c in &coeffs {
                if c.k == 0 {
                    return Err(Error::Parse {
                        what: "state".into(),
                        msg: "coefficient index must be >= 1".into(),
                    });
                }
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(Error::Parse {
                        what: "state".into(),
                        msg: format!("coefficient {} is not finite", c.k),
                    });
                }
            }
            Ok(StateVector::from_complex_coeffs(&entries))
        }
        "law" => {
            let name = raw.law.as_deref().ok_or_else(|| Error::Parse {
                what: "state".into(),
                msg: "law state requires \"law\"".into(),
            })?;
            let need_a = || {
                let a = raw.a.ok_or_else(|| Error::Parse {
                    what: "state".into(),
                    msg: "missing parameter \"a\"".into(),
                })?;
                if !(a > 0.0) || !a.is_finite() {
                    return Err(Error::ParamRange {
                        name: "a".into(),
                        msg: "out of range: requires a > 0".into(),
                    });
                }
                Ok(a)
            };
            let law = match name {
                "inverse_square" => CoefficientLaw::InverseSquare,
                "exp_linear" => CoefficientLaw::ExpLinear { a: need_a()? },
                "exp_quadratic" => CoefficientLaw::ExpQuadratic { a: need_a()? },
                "exp_lambda_re" => CoefficientLaw::ExpLambdaRe { a: need_a()? },
                other => {
                    return Err(Error::Parse {
                        what: "state".into(),
                        msg: format!("unknown law \"{other}\""),
                    })
                }
            };
            Ok(StateVector::from_law(law))
        }
        other => Err(Error::Parse {
            what: "state".into(),
            msg: format!("unknown kind \"{other}\""),
        }),
    }
}

impl StateVector {
    /// Canonical JSON. Pure catalog laws serialize as laws; anything else
    /// (explicit coefficients, selection weights, folded orbit factors) is
    /// materialized over the given atoms.
    ///
    /// Coefficients are stored in polar log form, so the cartesian wire
    /// values are faithful to within an ulp; identical states always produce
    /// identical bytes.
    pub fn serialize_canonical(&self, atoms: &[Atom]) -> Vec<u8> {
        let law_raw = |name: &str, a: Option<f64>| RawState {
            kind: "law".into(),
            law: Some(name.into()),
            a,
            ..RawState::default()
        };
        let pristine = self.exp_t == 0.0 && self.log_scale == 0.0;
        let raw = match (&self.law, pristine) {
            (CoefficientLaw::InverseSquare, true) => law_raw("inverse_square", None),
            (CoefficientLaw::ExpLinear { a }, true) => law_raw("exp_linear", Some(*a)),
            (CoefficientLaw::ExpQuadratic { a }, true) => law_raw("exp_quadratic", Some(*a)),
            (CoefficientLaw::ExpLambdaRe { a }, true) => law_raw("exp_lambda_re", Some(*a)),
            _ => {
                let coeffs: Vec<RawCoeff> = atoms
                    .iter()
                    .filter_map(|a| {
                        let z = self.coefficient(a);
                        if z.is_zero() {
                            None
                        } else {
                            let c = z.to_complex();
                            Some(RawCoeff {
                                k: a.index,
                                re: c.re,
                                im: c.im,
                            })
                        }
                    })
                    .collect();
                RawState {
                    kind: "finite".into(),
                    coeffs: Some(coeffs),
                    ..RawState::default()
                }
            }
        };
        let value = serde_json::to_value(raw).expect("state serializes");
        crate::report::to_canonical_json(&value)
    }
}
