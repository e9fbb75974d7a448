//! The two-sided power region and the complement-boundedness criterion.
//!
//! The region with order `beta >= 1` and slopes `b- , b+ > 0` is the set of
//! complex points with `Re lambda <= -b-*|Im lambda|^{1/beta}` or
//! `Re lambda >= b+*|Im lambda|^{1/beta}` (both inclusive; ties belong to the
//! region). The criterion asks whether the part of the spectrum escaping the
//! region is bounded. On a materialized prefix that is undecidable, so a
//! finite-prefix stall heuristic is always paired with the exact per-family
//! asymptotic rule, and the exact answer wins whenever it applies.

use num_complex::Complex64;
use serde_json::json;

use crate::error::Error;
use crate::report::{CsvCell, CsvTable};
use crate::series::GrowthBounds;
use crate::spectrum::{Atom, SpectrumSpec};

/// Parameters of the region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub beta: f64,
    pub b_minus: f64,
    pub b_plus: f64,
}

impl Region {
    pub fn new(beta: f64, b_minus: f64, b_plus: f64) -> Result<Self, Error> {
        if !(beta >= 1.0) || !beta.is_finite() {
            return Err(Error::ParamRange {
                name: "beta".into(),
                msg: "out of range: requires beta >= 1".into(),
            });
        }
        if !(b_minus > 0.0) || !(b_plus > 0.0) {
            return Err(Error::ParamRange {
                name: "b".into(),
                msg: "out of range: requires b_minus > 0 and b_plus > 0".into(),
            });
        }
        Ok(Region {
            beta,
            b_minus,
            b_plus,
        })
    }

    pub fn symmetric(beta: f64, b: f64) -> Result<Self, Error> {
        Self::new(beta, b, b)
    }
}

/// Membership in the closed region.
pub fn in_region(lambda: Complex64, region: &Region) -> bool {
    let w = lambda.im.abs().powf(1.0 / region.beta);
    lambda.re <= -region.b_minus * w || lambda.re >= region.b_plus * w
}

/// How the verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictBasis {
    FiniteSpectrum,
    ExactFamilyRule,
    PrefixHeuristic,
}

impl VerdictBasis {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictBasis::FiniteSpectrum => "finite_spectrum",
            VerdictBasis::ExactFamilyRule => "exact_family_rule",
            VerdictBasis::PrefixHeuristic => "prefix_heuristic",
        }
    }
}

/// Result of the boundedness criterion.
#[derive(Debug, Clone)]
pub struct RegionVerdict {
    pub complement_bounded: bool,
    /// sup |lambda| over escaping materialized atoms when bounded (0 if none).
    pub radius: Option<f64>,
    /// Up to 10 escaping atoms of maximal modulus when unbounded.
    pub witnesses: Vec<Atom>,
    pub b_found: Option<(f64, f64)>,
    pub basis: VerdictBasis,
    pub truncation: u32,
}

impl RegionVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "complement_bounded": self.complement_bounded,
            "radius": self.radius,
            "witnesses": self.witnesses.iter().map(|a| json!({
                "k": a.index, "re": a.lambda.re, "im": a.lambda.im,
            })).collect::<Vec<_>>(),
            "b_found": self.b_found.map(|(m, p)| json!({"b_minus": m, "b_plus": p})),
            "basis": self.basis.as_str(),
            "truncation": self.truncation,
        })
    }
}

/// Certified: expression eventually `>= 0`.
fn eventually_nonnegative(bounds: &GrowthBounds) -> bool {
    bounds.lo.eventual_sign() != std::cmp::Ordering::Less
}

/// Certified: expression eventually `< 0`.
fn eventually_negative(bounds: &GrowthBounds) -> bool {
    bounds.hi.eventual_sign() == std::cmp::Ordering::Less
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EventualMembership {
    InRegion,
    Escaping,
    Unknown,
}

/// Exact asymptotic rule: where does the generator tail end up relative to
/// the region?
fn eventual_membership(spec: &SpectrumSpec, region: &Region) -> EventualMembership {
    let (re, im_root) = match (spec.re_bounds(), spec.abs_im_root_bounds(region.beta)) {
        (Some(re), Some(im)) => (re, im),
        _ => return EventualMembership::Unknown,
    };
    let d_plus = re.add(&im_root.scale(-region.b_plus));
    let d_minus = re.neg().add(&im_root.scale(-region.b_minus));
    if eventually_nonnegative(&d_plus) || eventually_nonnegative(&d_minus) {
        EventualMembership::InRegion
    } else if eventually_negative(&d_plus) && eventually_negative(&d_minus) {
        EventualMembership::Escaping
    } else {
        EventualMembership::Unknown
    }
}

/// Certified for the greedy escape construction: for every slope `b > 0` the
/// strip `-b|Im|^{1/beta} < Re < b|Im|^{1/beta}` eventually contains the tail.
pub fn strip_escape_certified(spec: &SpectrumSpec, beta: f64) -> bool {
    let (re, im_root) = match (spec.re_bounds(), spec.abs_im_root_bounds(beta)) {
        (Some(re), Some(im)) => (re, im),
        _ => return false,
    };
    // |Re| must be eventually dominated by eps * |Im|^{1/beta} for every
    // eps > 0: check eps-scaled differences for a decreasing eps sample.
    for eps in [1.0, 1e-2, 1e-4, 1e-8] {
        let upper = re.hi.add(&im_root.lo.scale(-eps));
        let lower = re.lo.scale(-1.0).add(&im_root.lo.scale(-eps));
        if upper.eventual_sign() != std::cmp::Ordering::Less
            || lower.eventual_sign() != std::cmp::Ordering::Less
        {
            return false;
        }
    }
    true
}

fn escaping_atoms<'a>(atoms: &'a [Atom], region: &Region) -> Vec<&'a Atom> {
    atoms.iter().filter(|a| !in_region(a.lambda, region)).collect()
}

/// Escaping atoms of maximal modulus, ties broken by index; at most 10.
fn pick_witnesses(escaping: &[&Atom]) -> Vec<Atom> {
    let mut sorted: Vec<&Atom> = escaping.to_vec();
    sorted.sort_by(|a, b| {
        b.lambda
            .norm()
            .partial_cmp(&a.lambda.norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.index.cmp(&b.index))
    });
    sorted.into_iter().take(10).copied().collect()
}

/// Decides whether the escaping part of the spectrum is bounded, over the
/// materialized prefix of (at most) `n` atoms; the requested truncation is
/// clamped to the overflow-safe range of the generator.
pub fn complement_bounded(
    spec: &SpectrumSpec,
    region: &Region,
    n: u32,
) -> Result<RegionVerdict, Error> {
    if n == 0 {
        return Err(Error::ParamRange {
            name: "N".into(),
            msg: "must be >= 1".into(),
        });
    }
    let n = spec.safe_truncation(n);
    let atoms = spec.materialize(n)?;
    let escaping = escaping_atoms(&atoms, region);
    let max_escape_radius = escaping
        .iter()
        .map(|a| a.lambda.norm())
        .fold(0.0f64, f64::max);

    if spec.is_finite() {
        return Ok(RegionVerdict {
            complement_bounded: true,
            radius: Some(max_escape_radius),
            witnesses: Vec::new(),
            b_found: None,
            basis: VerdictBasis::FiniteSpectrum,
            truncation: n,
        });
    }

    // Prefix stall heuristic: unbounded-looking iff some escaping atom sits in
    // the top decile of moduli among atoms 1..n.
    let mut moduli: Vec<f64> = atoms.iter().map(|a| a.lambda.norm()).collect();
    moduli.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let cutoff = moduli[(atoms.len() * 9) / 10..][0];
    let heuristic_bounded = !escaping.iter().any(|a| a.lambda.norm() >= cutoff);

    // Exact per-family rule, preferred whenever it decides.
    let (bounded, basis) = match eventual_membership(spec, region) {
        EventualMembership::InRegion => (true, VerdictBasis::ExactFamilyRule),
        EventualMembership::Escaping => (false, VerdictBasis::ExactFamilyRule),
        EventualMembership::Unknown => (heuristic_bounded, VerdictBasis::PrefixHeuristic),
    };

    Ok(if bounded {
        RegionVerdict {
            complement_bounded: true,
            radius: Some(max_escape_radius),
            witnesses: Vec::new(),
            b_found: None,
            basis,
            truncation: n,
        }
    } else {
        RegionVerdict {
            complement_bounded: false,
            radius: None,
            witnesses: pick_witnesses(&escaping),
            b_found: None,
            basis,
            truncation: n,
        }
    })
}

/// Grid search for a symmetric slope pair making the criterion hold. Returns
/// the verdict of the first success (ascending grid order), or the verdict at
/// the largest grid value when every slope fails.
// TODO: asymmetric (b_minus, b_plus) grid search behind a flag; the symmetric
// tie is all the existence question needs.
pub fn search_b(
    spec: &SpectrumSpec,
    beta: f64,
    n: u32,
    grid: &[f64],
) -> Result<RegionVerdict, Error> {
    if grid.is_empty() {
        return Err(Error::ParamRange {
            name: "grid".into(),
            msg: "must be nonempty".into(),
        });
    }
    let mut grid = grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mut last = None;
    for &g in &grid {
        let region = Region::symmetric(beta, g)?;
        let mut verdict = complement_bounded(spec, &region, n)?;
        if verdict.complement_bounded {
            verdict.b_found = Some((g, g));
            return Ok(verdict);
        }
        last = Some(verdict);
    }
    Ok(last.expect("nonempty grid"))
}

/// Smallest order in `beta_grid` for which some slope on `b_grid` makes the
/// criterion hold.
pub fn minimal_beta(
    spec: &SpectrumSpec,
    beta_grid: &[f64],
    n: u32,
    b_grid: &[f64],
) -> Result<Option<f64>, Error> {
    if beta_grid.is_empty() {
        return Err(Error::ParamRange {
            name: "beta_grid".into(),
            msg: "must be nonempty".into(),
        });
    }
    let mut betas = beta_grid.to_vec();
    betas.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    for &beta in &betas {
        if search_b(spec, beta, n, b_grid)?.complement_bounded {
            return Ok(Some(beta));
        }
    }
    Ok(None)
}

/// Sampled boundary curves `Re = +b+ |Im|^{1/beta}` and `Re = -b- |Im|^{1/beta}`
/// for external plotting.
pub fn boundary_csv(region: &Region, im_max: f64, samples: u32) -> CsvTable {
    let mut table = CsvTable::new(&["im", "re_plus", "re_minus"]);
    let n = samples.max(2);
    for i in 0..n {
        let im = im_max * i as f64 / (n - 1) as f64;
        let w = im.abs().powf(1.0 / region.beta);
        table.push_row(vec![
            CsvCell::Float(im),
            CsvCell::Float(region.b_plus * w),
            CsvCell::Float(-region.b_minus * w),
        ]);
    }
    table
}
