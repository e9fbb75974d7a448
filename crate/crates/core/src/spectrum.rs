//! Atomic spectra: finite lists of spectral points or closed-form generators.
//!
//! A generator family carries, besides the pointwise law `k -> lambda_k`,
//! exact (or sandwiched) closed forms for `Re lambda_k`, `|Im lambda_k|`,
//! `ln |lambda_k|` and `|lambda_k|^{1/beta}` as [`GrowthBounds`]. Those closed
//! forms are what make region criteria and domain tests decidable for the
//! whole infinite spectrum instead of just a materialized prefix.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::series::{GrowthBounds, GrowthExpr};

/// One spectral point `lambda_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub index: u32,
    pub lambda: Complex64,
}

impl Atom {
    pub fn new(index: u32, lambda: Complex64) -> Result<Self, Error> {
        if index == 0 {
            return Err(Error::InvalidSpectrum("atom index must be >= 1".into()));
        }
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::InvalidSpectrum(format!(
                "atom {index} has a non-finite value"
            )));
        }
        Ok(Atom { index, lambda })
    }
}

/// Shape catalog for the affine generator `lambda_k = a + b*g(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AffineShape {
    /// g(k) = k
    Linear,
    /// g(k) = sqrt(k)
    Sqrt,
    /// g(k) = ln(1 + k)
    Log,
    /// g(k) = i k
    ImagLinear,
    /// g(k) = i k^2
    ImagQuadratic,
}

impl AffineShape {
    fn name(&self) -> &'static str {
        match self {
            AffineShape::Linear => "linear",
            AffineShape::Sqrt => "sqrt",
            AffineShape::Log => "log",
            AffineShape::ImagLinear => "imag_linear",
            AffineShape::ImagQuadratic => "imag_quadratic",
        }
    }

    fn parse(s: &str) -> Option<AffineShape> {
        match s {
            "linear" => Some(AffineShape::Linear),
            "sqrt" => Some(AffineShape::Sqrt),
            "log" => Some(AffineShape::Log),
            "imag_linear" => Some(AffineShape::ImagLinear),
            "imag_quadratic" => Some(AffineShape::ImagQuadratic),
            _ => None,
        }
    }

    fn is_real(&self) -> bool {
        matches!(self, AffineShape::Linear | AffineShape::Sqrt | AffineShape::Log)
    }
}

/// Closed-form spectrum generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorLaw {
    /// `lambda_k = sigma * k^p`, real axis.
    RealPower { sigma: f64, p: f64 },
    /// `lambda_k = i * s * r^k`, imaginary axis, exponential moduli.
    ImaginaryExponential { s: f64, r: f64 },
    /// `lambda_k = c*|m_k|^{1/beta0} + i*m_k` with `m_k = k^q`.
    ParabolaEdge { c: f64, q: f64, beta0: f64 },
    /// `lambda_k = a + b*g(k)` for g in a fixed catalog.
    AffineCustom { a: f64, b: f64, shape: AffineShape },
}

impl GeneratorLaw {
    pub fn family_name(&self) -> &'static str {
        match self {
            GeneratorLaw::RealPower { .. } => "real_power",
            GeneratorLaw::ImaginaryExponential { .. } => "imaginary_exponential",
            GeneratorLaw::ParabolaEdge { .. } => "parabola_edge",
            GeneratorLaw::AffineCustom { .. } => "affine_custom",
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let err = |name: &str, msg: &str| {
            Err(Error::ParamRange {
                name: name.into(),
                msg: msg.into(),
            })
        };
        match *self {
            GeneratorLaw::RealPower { sigma, p } => {
                if !(p > 0.0) || !p.is_finite() {
                    return err("p", "out of range: requires p > 0");
                }
                if sigma == 0.0 || !sigma.is_finite() {
                    return err("sigma", "out of range: requires sigma != 0");
                }
            }
            GeneratorLaw::ImaginaryExponential { s, r } => {
                if !(r > 1.0) || !r.is_finite() {
                    return err("r", "out of range: requires r > 1");
                }
                if s == 0.0 || !s.is_finite() {
                    return err("s", "out of range: requires s != 0");
                }
            }
            GeneratorLaw::ParabolaEdge { c, q, beta0 } => {
                if !(q > 0.0) || !q.is_finite() {
                    return err("q", "out of range: requires q > 0");
                }
                if !(beta0 >= 1.0) || !beta0.is_finite() {
                    return err("beta0", "out of range: requires beta0 >= 1");
                }
                if !c.is_finite() {
                    return err("c", "out of range: must be finite");
                }
            }
            GeneratorLaw::AffineCustom { a, b, shape } => {
                if b == 0.0 || !b.is_finite() {
                    return err("b", "out of range: requires b != 0");
                }
                if !a.is_finite() {
                    return err("a", "out of range: must be finite");
                }
                if shape.is_real() && a * b < 0.0 {
                    return err("a", "out of range: real shapes require a*b >= 0 so |lambda_k| is monotone");
                }
            }
        }
        Ok(())
    }

    /// Pointwise evaluation; pure and deterministic.
    pub fn lambda(&self, k: u32) -> Complex64 {
        let kf = k as f64;
        match *self {
            GeneratorLaw::RealPower { sigma, p } => Complex64::new(sigma * kf.powf(p), 0.0),
            GeneratorLaw::ImaginaryExponential { s, r } => Complex64::new(0.0, s * r.powf(kf)),
            GeneratorLaw::ParabolaEdge { c, q, beta0 } => {
                let m = kf.powf(q);
                Complex64::new(c * m.powf(1.0 / beta0), m)
            }
            GeneratorLaw::AffineCustom { a, b, shape } => match shape {
                AffineShape::Linear => Complex64::new(a + b * kf, 0.0),
                AffineShape::Sqrt => Complex64::new(a + b * kf.sqrt(), 0.0),
                AffineShape::Log => Complex64::new(a + b * (1.0 + kf).ln(), 0.0),
                AffineShape::ImagLinear => Complex64::new(a, b * kf),
                AffineShape::ImagQuadratic => Complex64::new(a, b * kf * kf),
            },
        }
    }

    /// Signed `Re lambda_k` as eventual bounds (exact for every family).
    pub fn re_bounds(&self) -> GrowthBounds {
        match *self {
            GeneratorLaw::RealPower { sigma, p } => GrowthBounds::exact(GrowthExpr::pow(sigma, p)),
            GeneratorLaw::ImaginaryExponential { .. } => GrowthBounds::exact(GrowthExpr::zero()),
            GeneratorLaw::ParabolaEdge { c, q, beta0 } => {
                GrowthBounds::exact(GrowthExpr::pow(c, q / beta0))
            }
            GeneratorLaw::AffineCustom { a, b, shape } => match shape {
                AffineShape::Linear => {
                    GrowthBounds::exact(GrowthExpr::pow(b, 1.0).add_constant(a))
                }
                AffineShape::Sqrt => GrowthBounds::exact(GrowthExpr::pow(b, 0.5).add_constant(a)),
                AffineShape::Log => {
                    // ln k <= ln(1+k) <= ln k + ln 2 for k >= 1
                    let base = GrowthExpr::log(b).add_constant(a);
                    let shifted = base.add_constant(b * 2.0f64.ln());
                    if b > 0.0 {
                        GrowthBounds::new(base, shifted)
                    } else {
                        GrowthBounds::new(shifted, base)
                    }
                }
                AffineShape::ImagLinear | AffineShape::ImagQuadratic => {
                    GrowthBounds::exact(GrowthExpr::constant(a))
                }
            },
        }
    }

    /// `|Im lambda_k|^{1/beta}` as eventual bounds (exact for every family).
    pub fn abs_im_root_bounds(&self, beta: f64) -> GrowthBounds {
        match *self {
            GeneratorLaw::RealPower { .. } => GrowthBounds::exact(GrowthExpr::zero()),
            GeneratorLaw::ImaginaryExponential { s, r } => GrowthBounds::exact(GrowthExpr::exp_k(
                s.abs().powf(1.0 / beta),
                r.ln() / beta,
            )),
            GeneratorLaw::ParabolaEdge { q, .. } => {
                GrowthBounds::exact(GrowthExpr::pow(1.0, q / beta))
            }
            GeneratorLaw::AffineCustom { b, shape, .. } => match shape {
                AffineShape::Linear | AffineShape::Sqrt | AffineShape::Log => {
                    GrowthBounds::exact(GrowthExpr::zero())
                }
                AffineShape::ImagLinear => {
                    GrowthBounds::exact(GrowthExpr::pow(b.abs().powf(1.0 / beta), 1.0 / beta))
                }
                AffineShape::ImagQuadratic => {
                    GrowthBounds::exact(GrowthExpr::pow(b.abs().powf(1.0 / beta), 2.0 / beta))
                }
            },
        }
    }

    /// `ln |lambda_k|` as eventual bounds; `None` when the shape leaves the
    /// expression algebra (affine log shape).
    pub fn log_abs_bounds(&self) -> Option<GrowthBounds> {
        match *self {
            GeneratorLaw::RealPower { sigma, p } => Some(GrowthBounds::exact(
                GrowthExpr::log(p).add_constant(sigma.abs().ln()),
            )),
            GeneratorLaw::ImaginaryExponential { s, r } => Some(GrowthBounds::exact(
                GrowthExpr::pow(r.ln(), 1.0).add_constant(s.abs().ln()),
            )),
            GeneratorLaw::ParabolaEdge { c, q, .. } => {
                let base = GrowthExpr::log(q);
                Some(GrowthBounds::new(
                    base.clone(),
                    base.add_constant(0.5 * (1.0 + c * c).ln()),
                ))
            }
            GeneratorLaw::AffineCustom { a, b, shape } => match shape {
                AffineShape::Linear => Some(eventual_log_abs_linear(a, b, 1.0)),
                AffineShape::Sqrt => Some(eventual_log_abs_linear(a, b, 0.5)),
                AffineShape::Log => None,
                AffineShape::ImagLinear => Some(GrowthBounds::new(
                    GrowthExpr::log(1.0).add_constant(b.abs().ln()),
                    GrowthExpr::log(1.0).add_constant(0.5 * (a * a + b * b).ln()),
                )),
                AffineShape::ImagQuadratic => Some(GrowthBounds::new(
                    GrowthExpr::log(2.0).add_constant(b.abs().ln()),
                    GrowthExpr::log(2.0).add_constant(0.5 * (a * a + b * b).ln()),
                )),
            },
        }
    }

    /// `|lambda_k|^{1/beta}` as eventual bounds; `None` outside the algebra.
    pub fn abs_root_bounds(&self, beta: f64) -> Option<GrowthBounds> {
        let ib = 1.0 / beta;
        match *self {
            GeneratorLaw::RealPower { sigma, p } => Some(GrowthBounds::exact(GrowthExpr::pow(
                sigma.abs().powf(ib),
                p * ib,
            ))),
            GeneratorLaw::ImaginaryExponential { s, r } => Some(GrowthBounds::exact(
                GrowthExpr::exp_k(s.abs().powf(ib), r.ln() * ib),
            )),
            GeneratorLaw::ParabolaEdge { c, q, .. } => {
                // k^q <= |lambda_k| <= sqrt(1+c^2) k^q for all k >= 1
                Some(GrowthBounds::new(
                    GrowthExpr::pow(1.0, q * ib),
                    GrowthExpr::pow((1.0 + c * c).powf(0.5 * ib), q * ib),
                ))
            }
            GeneratorLaw::AffineCustom { a, b, shape } => match shape {
                AffineShape::Linear => Some(eventual_abs_root_linear(a, b, 1.0, beta)),
                AffineShape::Sqrt => Some(eventual_abs_root_linear(a, b, 0.5, beta)),
                AffineShape::Log if beta == 1.0 => {
                    // |a + b ln(1+k)| between (|b|/2) ln k and (|a|+2|b|) ln k eventually
                    Some(GrowthBounds::new(
                        GrowthExpr::log(b.abs() / 2.0),
                        GrowthExpr::log(b.abs() * 2.0 + a.abs()),
                    ))
                }
                AffineShape::Log => None,
                AffineShape::ImagLinear => Some(GrowthBounds::new(
                    GrowthExpr::pow(b.abs().powf(ib), ib),
                    GrowthExpr::pow((a * a + b * b).powf(0.5 * ib), ib),
                )),
                AffineShape::ImagQuadratic => Some(GrowthBounds::new(
                    GrowthExpr::pow(b.abs().powf(ib), 2.0 * ib),
                    GrowthExpr::pow((a * a + b * b).powf(0.5 * ib), 2.0 * ib),
                )),
            },
        }
    }
}

/// `|a + b k^pow|`: eventually between `(|b|/2) k^pow` and `2(|a|+|b|) k^pow`.
fn eventual_log_abs_linear(a: f64, b: f64, pow: f64) -> GrowthBounds {
    GrowthBounds::new(
        GrowthExpr::log(pow).add_constant((b.abs() / 2.0).ln()),
        GrowthExpr::log(pow).add_constant((2.0 * (a.abs() + b.abs())).ln()),
    )
}

fn eventual_abs_root_linear(a: f64, b: f64, pow: f64, beta: f64) -> GrowthBounds {
    let ib = 1.0 / beta;
    GrowthBounds::new(
        GrowthExpr::pow((b.abs() / 2.0).powf(ib), pow * ib),
        GrowthExpr::pow((2.0 * (a.abs() + b.abs())).powf(ib), pow * ib),
    )
}

/// An atomic spectrum: a finite list or a generator, with a default
/// truncation and an optional global negation `lambda -> -lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSpec {
    pub kind: SpectrumKind,
    pub truncation_default: u32,
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumKind {
    FiniteList(Vec<Atom>),
    Generator(GeneratorLaw),
}

pub const DEFAULT_TRUNCATION: u32 = 256;

impl SpectrumSpec {
    pub fn finite_list(atoms: Vec<Atom>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        let mut sorted = atoms;
        sorted.sort_by_key(|a| a.index);
        for a in &sorted {
            if !seen.insert(a.index) {
                return Err(Error::InvalidSpectrum(format!(
                    "duplicate atom index {}",
                    a.index
                )));
            }
        }
        Ok(SpectrumSpec {
            truncation_default: (sorted.len() as u32).max(1),
            kind: SpectrumKind::FiniteList(sorted),
            negated: false,
        })
    }

    pub fn generator(law: GeneratorLaw, truncation_default: u32) -> Result<Self, Error> {
        law.validate()?;
        if truncation_default == 0 {
            return Err(Error::ParamRange {
                name: "truncation_default".into(),
                msg: "must be >= 1".into(),
            });
        }
        Ok(SpectrumSpec {
            kind: SpectrumKind::Generator(law),
            truncation_default,
            negated: false,
        })
    }

    pub fn generator_law(&self) -> Option<&GeneratorLaw> {
        match &self.kind {
            SpectrumKind::Generator(law) => Some(law),
            SpectrumKind::FiniteList(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, SpectrumKind::FiniteList(_))
    }

    /// Spectrum with every point negated. An involution.
    pub fn negate(&self) -> SpectrumSpec {
        SpectrumSpec {
            kind: self.kind.clone(),
            truncation_default: self.truncation_default,
            negated: !self.negated,
        }
    }

    fn raw_lambda(&self, atom: &Atom) -> Complex64 {
        if self.negated {
            -atom.lambda
        } else {
            atom.lambda
        }
    }

    /// Materializes atoms with indices `1..=n` (a finite list yields its first
    /// `min(n, len)` atoms). Deterministic; a prefix of any longer call.
    pub fn materialize(&self, n: u32) -> Result<Vec<Atom>, Error> {
        if n == 0 {
            return Err(Error::ParamRange {
                name: "N".into(),
                msg: "must be >= 1".into(),
            });
        }
        match &self.kind {
            SpectrumKind::FiniteList(atoms) => Ok(atoms
                .iter()
                .take(n as usize)
                .map(|a| Atom {
                    index: a.index,
                    lambda: self.raw_lambda(a),
                })
                .collect()),
            SpectrumKind::Generator(law) => {
                let mut out = Vec::with_capacity(n as usize);
                for k in 1..=n {
                    let mut lambda = law.lambda(k);
                    if self.negated {
                        lambda = -lambda;
                    }
                    if !lambda.re.is_finite() || !lambda.im.is_finite() {
                        return Err(Error::AtomOverflow {
                            k,
                            family: law.family_name().into(),
                        });
                    }
                    out.push(Atom { index: k, lambda });
                }
                Ok(out)
            }
        }
    }

    /// Largest truncation `<= requested` whose atoms are all finite.
    /// Generator moduli are monotone, so this is a simple downward search.
    pub fn safe_truncation(&self, requested: u32) -> u32 {
        match &self.kind {
            SpectrumKind::FiniteList(atoms) => requested.min(atoms.len() as u32).max(1),
            SpectrumKind::Generator(law) => {
                let finite_at = |k: u32| {
                    let l = law.lambda(k);
                    l.re.is_finite() && l.im.is_finite()
                };
                if finite_at(requested) {
                    return requested;
                }
                let (mut lo, mut hi) = (1u32, requested);
                while lo + 1 < hi {
                    let mid = lo + (hi - lo) / 2;
                    if finite_at(mid) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }

    pub fn re_bounds(&self) -> Option<GrowthBounds> {
        let b = self.generator_law()?.re_bounds();
        Some(if self.negated { b.neg() } else { b })
    }

    pub fn abs_im_root_bounds(&self, beta: f64) -> Option<GrowthBounds> {
        Some(self.generator_law()?.abs_im_root_bounds(beta))
    }

    pub fn log_abs_bounds(&self) -> Option<GrowthBounds> {
        self.generator_law()?.log_abs_bounds()
    }

    pub fn abs_root_bounds(&self, beta: f64) -> Option<GrowthBounds> {
        self.generator_law()?.abs_root_bounds(beta)
    }
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawAtom {
    k: u32,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    atoms: Option<Vec<RawAtom>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_default: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    negated: Option<bool>,
}

/// Parses the spectrum JSON document. Unknown fields, unknown families and
/// out-of-range parameters are rejected with named messages.
pub fn parse_spectrum(text: &[u8]) -> Result<SpectrumSpec, Error> {
    let raw: RawSpectrum = serde_json::from_slice(text).map_err(|e| Error::Parse {
        what: "spectrum".into(),
        msg: e.to_string(),
    })?;
    let require = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| Error::Parse {
            what: "spectrum".into(),
            msg: format!("missing parameter \"{name}\""),
        })
    };
    let mut spec = match raw.kind.as_str() {
        "finite_list" => {
            let atoms = raw.atoms.ok_or_else(|| Error::Parse {
                what: "spectrum".into(),
                msg: "finite_list requires \"atoms\"".into(),
            })?;
            let atoms = atoms
                .into_iter()
                .map(|a| Atom::new(a.k, Complex64::new(a.re, a.im)))
                .collect::<Result<Vec<_>, _>>()?;
            if atoms.is_empty() {
                return Err(Error::InvalidSpectrum("finite_list must be nonempty".into()));
            }
            SpectrumSpec::finite_list(atoms)?
        }
        "generator" => {
            let family = raw.family.as_deref().ok_or_else(|| Error::Parse {
                what: "spectrum".into(),
                msg: "generator requires \"family\"".into(),
            })?;
            let law = match family {
                "real_power" => GeneratorLaw::RealPower {
                    sigma: require("sigma", raw.sigma)?,
                    p: require("p", raw.p)?,
                },
                "imaginary_exponential" => GeneratorLaw::ImaginaryExponential {
                    s: require("s", raw.s)?,
                    r: require("r", raw.r)?,
                },
                "parabola_edge" => GeneratorLaw::ParabolaEdge {
                    c: require("c", raw.c)?,
                    q: require("q", raw.q)?,
                    beta0: require("beta0", raw.beta0)?,
                },
                "affine_custom" => {
                    let g = raw.g.as_deref().ok_or_else(|| Error::Parse {
                        what: "spectrum".into(),
                        msg: "affine_custom requires \"g\"".into(),
                    })?;
                    let shape = AffineShape::parse(g).ok_or_else(|| Error::Parse {
                        what: "spectrum".into(),
                        msg: format!("unknown shape \"{g}\""),
                    })?;
                    GeneratorLaw::AffineCustom {
                        a: require("a", raw.a)?,
                        b: require("b", raw.b)?,
                        shape,
                    }
                }
                other => {
                    return Err(Error::Parse {
                        what: "spectrum".into(),
                        msg: format!("unknown family \"{other}\""),
                    })
                }
            };
            SpectrumSpec::generator(law, raw.truncation_default.unwrap_or(DEFAULT_TRUNCATION))?
        }
        other => {
            return Err(Error::Parse {
                what: "spectrum".into(),
                msg: format!("unknown kind \"{other}\""),
            })
        }
    };
    if let Some(n) = raw.truncation_default {
        if n == 0 {
            return Err(Error::ParamRange {
                name: "truncation_default".into(),
                msg: "must be >= 1".into(),
            });
        }
        spec.truncation_default = n;
    }
    spec.negated = raw.negated.unwrap_or(false);
    Ok(spec)
}

impl SpectrumSpec {
    fn to_raw(&self) -> RawSpectrum {
        let mut raw = RawSpectrum {
            truncation_default: Some(self.truncation_default),
            negated: if self.negated { Some(true) } else { None },
            ..RawSpectrum::default()
        };
        match &self.kind {
            SpectrumKind::FiniteList(atoms) => {
                raw.kind = "finite_list".into();
                raw.atoms = Some(
                    atoms
                        .iter()
                        .map(|a| RawAtom {
                            k: a.index,
                            re: a.lambda.re,
                            im: a.lambda.im,
                        })
                        .collect(),
                );
            }
            SpectrumKind::Generator(law) => {
                raw.kind = "generator".into();
                raw.family = Some(law.family_name().into());
                match *law {
                    GeneratorLaw::RealPower { sigma, p } => {
                        raw.sigma = Some(sigma);
                        raw.p = Some(p);
                    }
                    GeneratorLaw::ImaginaryExponential { s, r } => {
                        raw.s = Some(s);
                        raw.r = Some(r);
                    }
                    GeneratorLaw::ParabolaEdge { c, q, beta0 } => {
                        raw.c = Some(c);
                        raw.q = Some(q);
                        raw.beta0 = Some(beta0);
                    }
                    GeneratorLaw::AffineCustom { a, b, shape } => {
                        raw.a = Some(a);
                        raw.b = Some(b);
                        raw.g = Some(shape.name().into());
                    }
                }
            }
        }
        raw
    }

    /// Canonical JSON bytes: keys sorted, floats in canonical form.
    pub fn serialize_canonical(&self) -> Vec<u8> {
        let value = serde_json::to_value(self.to_raw()).expect("spectrum serializes");
        crate::report::to_canonical_json(&value)
    }
}
