//! Convergence certification for the positive series this crate cares about.
//!
//! Every series that has to be decided here has terms of the form
//! `a_k = exp(g(k))` where the exponent `g` is a sum of a few elementary
//! growth shapes: `c*e^{mu k}`, `c*k^rho*(ln k)^eta`, and a constant. That
//! closed algebra is what [`GrowthExpr`] captures, and on it the
//! converge/diverge question is decided exactly by scale dominance. Quantities
//! that are only known up to eventual two-sided bounds travel as
//! [`GrowthBounds`]; divergence is then certified from the lower bound and
//! convergence from the upper one, with an honest `Inconclusive` in between.
//!
//! For data with no usable closed form there is a windowed trend heuristic
//! ([`judge_window`]) that never upgrades a guess to a certainty.

use serde::{Deserialize, Serialize};

/// Outcome of a series judgment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesVerdict {
    Converges,
    Diverges,
    Inconclusive,
}

/// Which rule produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JudgmentRule {
    /// Finitely many nonzero terms.
    FiniteSum,
    /// Terms do not tend to zero (here: they tend to infinity).
    TermTest,
    /// Consecutive-term ratio eventually bounded below 1.
    Ratio,
    /// Comparison with an integrable majorant `e^{-c k^rho}`.
    Comparison,
    /// Terms behave like `k^c`; converges iff `c < -1`.
    PSeries,
    /// A divergent closed-form minorant taken from the construction itself.
    Minorant,
    /// Windowed numeric trend only; not a proof.
    WindowTrend,
    /// No rule applied.
    None,
}

/// A replayable record of one series judgment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesJudgment {
    pub verdict: SeriesVerdict,
    pub rule: JudgmentRule,
    /// Sampled (k, log a_k) pairs backing the record.
    pub window: Vec<(u64, f64)>,
}

impl SeriesJudgment {
    pub fn inconclusive() -> Self {
        SeriesJudgment {
            verdict: SeriesVerdict::Inconclusive,
            rule: JudgmentRule::None,
            window: Vec::new(),
        }
    }

    pub fn finite() -> Self {
        SeriesJudgment {
            verdict: SeriesVerdict::Converges,
            rule: JudgmentRule::FiniteSum,
            window: Vec::new(),
        }
    }
}

/// One growth scale: `e^{mu k}` or `k^rho (ln k)^eta`.
///
/// Ordered by dominance as `k -> inf`: any exponential beats any power, larger
/// `mu` beats smaller, then `(rho, eta)` lexicographically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    Exp { mu: f64 },
    Pow { rho: f64, eta: u8 },
}

impl Scale {
    fn key(&self) -> (u8, f64, f64) {
        match *self {
            Scale::Exp { mu } => (1, mu, 0.0),
            Scale::Pow { rho, eta } => (0, rho, eta as f64),
        }
    }

    fn dominates(&self, other: &Scale) -> std::cmp::Ordering {
        let (a1, a2, a3) = self.key();
        let (b1, b2, b3) = other.key();
        (a1, a2, a3)
            .partial_cmp(&(b1, b2, b3))
            .unwrap_or(std::cmp::Ordering::Equal)
    }

    fn is_log_only(&self) -> bool {
        matches!(*self, Scale::Pow { rho, eta } if rho == 0.0 && eta == 1)
    }

    fn eval(&self, k: f64) -> f64 {
        match *self {
            Scale::Exp { mu } => (mu * k).exp(),
            Scale::Pow { rho, eta } => {
                let lnk = k.ln();
                k.powf(rho) * lnk.powi(eta as i32)
            }
        }
    }
}

/// Exponent of a positive series term: `g(k) = sum c_i * scale_i(k) + const`.
#[derive(Debug, Clone, Default)]
pub struct GrowthExpr {
    pub terms: Vec<(f64, Scale)>,
    pub constant: f64,
}

impl GrowthExpr {
    pub fn constant(c: f64) -> Self {
        GrowthExpr {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `c * k^rho`
    pub fn pow(c: f64, rho: f64) -> Self {
        GrowthExpr {
            terms: vec![(c, Scale::Pow { rho, eta: 0 })],
            constant: 0.0,
        }
    }

    /// `c * ln k`
    pub fn log(c: f64) -> Self {
        GrowthExpr {
            terms: vec![(c, Scale::Pow { rho: 0.0, eta: 1 })],
            constant: 0.0,
        }
    }

    /// `c * k^rho * (ln k)^eta`
    pub fn pow_log(c: f64, rho: f64, eta: u8) -> Self {
        GrowthExpr {
            terms: vec![(c, Scale::Pow { rho, eta })],
            constant: 0.0,
        }
    }

    /// `c * e^{mu k}` with `mu > 0`.
    pub fn exp_k(c: f64, mu: f64) -> Self {
        GrowthExpr {
            terms: vec![(c, Scale::Exp { mu })],
            constant: 0.0,
        }
    }

    pub fn add(&self, other: &GrowthExpr) -> GrowthExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        GrowthExpr {
            terms,
            constant: self.constant + other.constant,
        }
    }

    pub fn scale(&self, c: f64) -> GrowthExpr {
        GrowthExpr {
            terms: self.terms.iter().map(|&(a, s)| (c * a, s)).collect(),
            constant: c * self.constant,
        }
    }

    pub fn add_constant(&self, c: f64) -> GrowthExpr {
        GrowthExpr {
            terms: self.terms.clone(),
            constant: self.constant + c,
        }
    }

    pub fn eval(&self, k: u64) -> f64 {
        let kf = k as f64;
        let mut acc = self.constant;
        for &(c, s) in &self.terms {
            if c != 0.0 {
                acc += c * s.eval(kf);
            }
        }
        acc
    }

    /// Eventual sign of the expression as `k -> inf`, by scale dominance:
    /// the first surviving coefficient decides; with no scale terms left the
    /// constant does. `Equal` means the expression is eventually ~0 (or an
    /// exactly zero constant).
    pub fn eventual_sign(&self) -> std::cmp::Ordering {
        for (sum, sum_abs, _) in self.merged() {
            if effectively_zero(sum, sum_abs) {
                continue;
            }
            return if sum > 0.0 {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            };
        }
        if self.constant > 0.0 {
            std::cmp::Ordering::Greater
        } else if self.constant < 0.0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Equal
        }
    }

    /// `Some(Greater)` when the expression tends to +inf, `Some(Less)` for
    /// -inf, `None` when it stays bounded (no surviving growth term).
    pub fn eventual_unbounded(&self) -> Option<std::cmp::Ordering> {
        for (sum, sum_abs, _) in self.merged() {
            if effectively_zero(sum, sum_abs) {
                continue;
            }
            return Some(if sum > 0.0 {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            });
        }
        None
    }

    /// Terms merged by identical scale, dropping coefficients that cancel.
    /// Returned sorted by descending dominance.
    fn merged(&self) -> Vec<(f64, f64, Scale)> {
        let mut groups: Vec<(f64, f64, Scale)> = Vec::new(); // (sum, sum_abs, scale)
        for &(c, s) in &self.terms {
            debug_assert!(
                !matches!(s, Scale::Pow { rho: 0.0, eta: 0 }),
                "constant-valued scale term; use the constant field"
            );
            if let Some(g) = groups
                .iter_mut()
                .find(|g| g.2.dominates(&s) == std::cmp::Ordering::Equal)
            {
                g.0 += c;
                g.1 += c.abs();
            } else {
                groups.push((c, c.abs(), s));
            }
        }
        groups.sort_by(|a, b| b.2.dominates(&a.2));
        groups
    }
}

const COEFF_ZERO_REL: f64 = 1e-12;

fn effectively_zero(sum: f64, sum_abs: f64) -> bool {
    sum == 0.0 || sum.abs() <= COEFF_ZERO_REL * sum_abs
}

/// Fixed window of sample indices used in judgment records.
pub fn sample_indices(max_k: u64) -> Vec<u64> {
    let mut ks = Vec::new();
    let mut k = 1u64;
    while k <= max_k.min(8) {
        ks.push(k);
        k += 1;
    }
    let mut k = 12u64;
    while k <= max_k {
        ks.push(k);
        let next = k + k / 2;
        if next == k {
            break;
        }
        k = next;
    }
    ks
}

fn record_window(expr: &GrowthExpr) -> Vec<(u64, f64)> {
    sample_indices(1 << 20)
        .into_iter()
        .map(|k| (k, expr.eval(k)))
        .take_while(|&(_, g)| g.is_finite() || g == f64::NEG_INFINITY)
        .take(40)
        .collect()
}

/// Exact judgment of `sum_k exp(g(k))` over an infinite index range.
pub fn judge_exact(expr: &GrowthExpr) -> SeriesJudgment {
    let window = record_window(expr);
    let merged = expr.merged();
    for (sum, sum_abs, scale) in merged {
        if effectively_zero(sum, sum_abs) {
            continue;
        }
        let (verdict, rule) = if scale.is_log_only() {
            // terms ~ k^sum
            if sum < -1.0 {
                (SeriesVerdict::Converges, JudgmentRule::PSeries)
            } else {
                (SeriesVerdict::Diverges, JudgmentRule::PSeries)
            }
        } else if sum > 0.0 {
            (SeriesVerdict::Diverges, JudgmentRule::TermTest)
        } else {
            let rule = match scale {
                Scale::Exp { .. } => JudgmentRule::Ratio,
                Scale::Pow { .. } => JudgmentRule::Comparison,
            };
            (SeriesVerdict::Converges, rule)
        };
        return SeriesJudgment {
            verdict,
            rule,
            window,
        };
    }
    // g(k) -> constant: terms tend to a positive limit.
    SeriesJudgment {
        verdict: SeriesVerdict::Diverges,
        rule: JudgmentRule::TermTest,
        window,
    }
}

/// Eventual two-sided bounds on an exponent: `lo(k) <= g(k) <= hi(k)` for all
/// sufficiently large k.
#[derive(Debug, Clone)]
pub struct GrowthBounds {
    pub lo: GrowthExpr,
    pub hi: GrowthExpr,
}

impl GrowthBounds {
    pub fn exact(expr: GrowthExpr) -> Self {
        GrowthBounds {
            lo: expr.clone(),
            hi: expr,
        }
    }

    pub fn new(lo: GrowthExpr, hi: GrowthExpr) -> Self {
        GrowthBounds { lo, hi }
    }

    pub fn add(&self, other: &GrowthBounds) -> GrowthBounds {
        GrowthBounds {
            lo: self.lo.add(&other.lo),
            hi: self.hi.add(&other.hi),
        }
    }

    pub fn scale(&self, c: f64) -> GrowthBounds {
        if c >= 0.0 {
            GrowthBounds {
                lo: self.lo.scale(c),
                hi: self.hi.scale(c),
            }
        } else {
            GrowthBounds {
                lo: self.hi.scale(c),
                hi: self.lo.scale(c),
            }
        }
    }

    pub fn neg(&self) -> GrowthBounds {
        self.scale(-1.0)
    }

    pub fn is_exact(&self) -> bool {
        self.lo.constant == self.hi.constant && self.lo.terms == self.hi.terms
    }
}

/// Sandwich judgment: divergence certified from the lower bound, convergence
/// from the upper one.
pub fn judge_bounds(bounds: &GrowthBounds) -> SeriesJudgment {
    let lo = judge_exact(&bounds.lo);
    if lo.verdict == SeriesVerdict::Diverges {
        return lo;
    }
    let hi = judge_exact(&bounds.hi);
    if hi.verdict == SeriesVerdict::Converges {
        return hi;
    }
    SeriesJudgment {
        verdict: SeriesVerdict::Inconclusive,
        rule: JudgmentRule::None,
        window: lo.window,
    }
}

/// How `sum exp(p*r(k) + l(k))` behaves as the parameter `p` ranges over
/// `(0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamBehavior {
    /// Converges for every p > 0.
    AllConverge,
    /// Diverges for every p > 0.
    AllDiverge,
    /// Converges for 0 < p < threshold, diverges for p > threshold.
    ConvergeBelow(f64),
    /// Not resolved by the scale walk.
    Unknown,
}

/// Scale-dominance analysis of `p*r + l`, exact on the algebra.
pub fn analyze_param(r: &GrowthExpr, l: &GrowthExpr) -> ParamBehavior {
    // Merge the union of scales, tracking per-scale (cr, cl).
    let rm = r.merged();
    let lm = l.merged();
    let mut scales: Vec<Scale> = Vec::new();
    for (_, _, s) in rm.iter().chain(lm.iter()) {
        if !scales
            .iter()
            .any(|t| t.dominates(s) == std::cmp::Ordering::Equal)
        {
            scales.push(*s);
        }
    }
    scales.sort_by(|a, b| b.dominates(a));

    let coeff_at = |m: &[(f64, f64, Scale)], s: &Scale| -> f64 {
        m.iter()
            .find(|g| g.2.dominates(s) == std::cmp::Ordering::Equal)
            .map(|g| if effectively_zero(g.0, g.1) { 0.0 } else { g.0 })
            .unwrap_or(0.0)
    };

    for s in &scales {
        let cr = coeff_at(&rm, s);
        let cl = coeff_at(&lm, s);
        if cr == 0.0 && cl == 0.0 {
            continue;
        }
        if s.is_log_only() {
            // terms ~ k^(cl + p*cr); diverge iff exponent >= -1
            if cr == 0.0 {
                return if cl < -1.0 {
                    ParamBehavior::AllConverge
                } else {
                    ParamBehavior::AllDiverge
                };
            }
            if cr > 0.0 {
                let split = (-1.0 - cl) / cr;
                return if split <= 0.0 {
                    ParamBehavior::AllDiverge
                } else {
                    ParamBehavior::ConvergeBelow(split)
                };
            }
            // cr < 0: diverges for small p iff cl >= -1, converges for large p.
            return ParamBehavior::Unknown;
        }
        // Super-logarithmic dominant scale: sign of (cl + p*cr) decides.
        if cr == 0.0 {
            return if cl > 0.0 {
                ParamBehavior::AllDiverge
            } else {
                ParamBehavior::AllConverge
            };
        }
        if cr > 0.0 {
            return if cl >= 0.0 {
                ParamBehavior::AllDiverge
            } else {
                ParamBehavior::ConvergeBelow(-cl / cr)
            };
        }
        // cr < 0
        return if cl <= 0.0 {
            ParamBehavior::AllConverge
        } else {
            ParamBehavior::Unknown
        };
    }
    // g(k) = const + p*const: positive terms with a positive limit.
    ParamBehavior::AllDiverge
}

/// Parametric series `sum exp(p * R(k) + L(k))`, with both contributions only
/// known through eventual bounds.
#[derive(Debug, Clone)]
pub struct ParamSeries {
    pub r: GrowthBounds,
    pub l: GrowthBounds,
}

impl ParamSeries {
    /// Judgment at a fixed parameter value `p >= 0`.
    pub fn judge_at(&self, p: f64) -> SeriesJudgment {
        let inst = self.r.scale(p).add(&self.l);
        judge_bounds(&inst)
    }

    /// Certified: diverges for every p > 0.
    pub fn diverges_for_all(&self) -> bool {
        analyze_param(&self.r.lo, &self.l.lo) == ParamBehavior::AllDiverge
    }

    /// Certified: converges for every p > 0.
    pub fn converges_for_all(&self) -> bool {
        analyze_param(&self.r.hi, &self.l.hi) == ParamBehavior::AllConverge
    }

    /// A value below which convergence is certified, if one exists.
    pub fn convergence_witness(&self) -> Option<f64> {
        match analyze_param(&self.r.hi, &self.l.hi) {
            ParamBehavior::AllConverge => Some(1.0),
            ParamBehavior::ConvergeBelow(x) if x > 0.0 => Some(x / 2.0),
            _ => None,
        }
    }

    /// A value above which divergence is certified, if one exists.
    pub fn divergence_witness(&self) -> Option<f64> {
        match analyze_param(&self.r.lo, &self.l.lo) {
            ParamBehavior::AllDiverge => Some(1.0),
            ParamBehavior::ConvergeBelow(x) => Some(2.0 * x.max(0.5)),
            _ => None,
        }
    }
}

/// Trend heuristic on sampled (k, log a_k) data. Only clear, persistent trends
/// produce a verdict; anything ambiguous is `Inconclusive`.
pub fn judge_window(samples: &[(u64, f64)]) -> SeriesJudgment {
    let finite: Vec<(u64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(_, v)| v != f64::NEG_INFINITY)
        .collect();
    if finite.is_empty() {
        return SeriesJudgment {
            verdict: SeriesVerdict::Converges,
            rule: JudgmentRule::FiniteSum,
            window: samples.to_vec(),
        };
    }
    if finite.len() < 8 {
        return SeriesJudgment {
            verdict: SeriesVerdict::Inconclusive,
            rule: JudgmentRule::WindowTrend,
            window: samples.to_vec(),
        };
    }
    let tail = &finite[finite.len() / 2..];
    // Per-step slope over the tail, normalized by the index gap.
    let slopes: Vec<f64> = tail
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / ((w[1].0 - w[0].0) as f64))
        .collect();
    let last = tail.last().unwrap().1;
    if slopes.iter().all(|&s| s > 1e-9) && last > 0.0 {
        return SeriesJudgment {
            verdict: SeriesVerdict::Diverges,
            rule: JudgmentRule::WindowTrend,
            window: samples.to_vec(),
        };
    }
    if slopes.iter().all(|&s| s < -1e-3) {
        return SeriesJudgment {
            verdict: SeriesVerdict::Converges,
            rule: JudgmentRule::WindowTrend,
            window: samples.to_vec(),
        };
    }
    SeriesJudgment {
        verdict: SeriesVerdict::Inconclusive,
        rule: JudgmentRule::WindowTrend,
        window: samples.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_converges() {
        // sum e^{-k}
        let j = judge_exact(&GrowthExpr::pow(-1.0, 1.0));
        assert_eq!(j.verdict, SeriesVerdict::Converges);
    }

    #[test]
    fn geometric_diverges() {
        // sum e^{k}
        let j = judge_exact(&GrowthExpr::pow(1.0, 1.0));
        assert_eq!(j.verdict, SeriesVerdict::Diverges);
        assert_eq!(j.rule, JudgmentRule::TermTest);
    }

    #[test]
    fn p_series_boundaries() {
        // sum k^{-2} converges, sum k^{-1} diverges, sum k^{-1.0000001} converges
        assert_eq!(
            judge_exact(&GrowthExpr::log(-2.0)).verdict,
            SeriesVerdict::Converges
        );
        assert_eq!(
            judge_exact(&GrowthExpr::log(-1.0)).verdict,
            SeriesVerdict::Diverges
        );
        assert_eq!(
            judge_exact(&GrowthExpr::log(-1.0000001)).verdict,
            SeriesVerdict::Converges
        );
    }

    #[test]
    fn constant_terms_diverge() {
        assert_eq!(
            judge_exact(&GrowthExpr::constant(-50.0)).verdict,
            SeriesVerdict::Diverges
        );
    }

    #[test]
    fn exact_cancellation_falls_through() {
        // k - k + (-2 ln k): p-series
        let e = GrowthExpr::pow(1.0, 1.0)
            .add(&GrowthExpr::pow(-1.0, 1.0))
            .add(&GrowthExpr::log(-2.0));
        let j = judge_exact(&e);
        assert_eq!(j.verdict, SeriesVerdict::Converges);
        assert_eq!(j.rule, JudgmentRule::PSeries);
    }

    #[test]
    fn exponential_dominates_power() {
        // e^{0.01 k} - k^3: diverges
        let e = GrowthExpr::exp_k(0.01, 1.0).add(&GrowthExpr::pow(-1.0, 3.0));
        assert_eq!(judge_exact(&e).verdict, SeriesVerdict::Diverges);
    }

    #[test]
    fn sub_root_decay_converges() {
        // sum e^{-sqrt(k)}
        let j = judge_exact(&GrowthExpr::pow(-1.0, 0.5));
        assert_eq!(j.verdict, SeriesVerdict::Converges);
        assert_eq!(j.rule, JudgmentRule::Comparison);
    }

    #[test]
    fn log_squared_scale() {
        // e^{-(ln k)^2} = k^{-ln k}: converges; e^{+(ln k)^2} diverges
        assert_eq!(
            judge_exact(&GrowthExpr::pow_log(-1.0, 0.0, 2)).verdict,
            SeriesVerdict::Converges
        );
        assert_eq!(
            judge_exact(&GrowthExpr::pow_log(1.0, 0.0, 2)).verdict,
            SeriesVerdict::Diverges
        );
    }

    #[test]
    fn param_threshold_linear_case() {
        // exp(p*2k - 2k): converges for p < 1, diverges for p > 1
        let r = GrowthExpr::pow(2.0, 1.0);
        let l = GrowthExpr::pow(-2.0, 1.0);
        match analyze_param(&r, &l) {
            ParamBehavior::ConvergeBelow(x) => assert!((x - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn param_all_diverge_when_r_dominates() {
        // exp(p*k^2 - 2k): diverges for every p > 0
        let r = GrowthExpr::pow(1.0, 2.0);
        let l = GrowthExpr::pow(-2.0, 1.0);
        assert_eq!(analyze_param(&r, &l), ParamBehavior::AllDiverge);
    }

    #[test]
    fn param_all_converge_when_l_dominates() {
        // exp(p*k - 2k^2)
        let r = GrowthExpr::pow(1.0, 1.0);
        let l = GrowthExpr::pow(-2.0, 2.0);
        assert_eq!(analyze_param(&r, &l), ParamBehavior::AllConverge);
    }

    #[test]
    fn param_series_witnesses() {
        let ps = ParamSeries {
            r: GrowthBounds::exact(GrowthExpr::pow(2.0, 1.0)),
            l: GrowthBounds::exact(GrowthExpr::pow(-2.0, 1.0)),
        };
        assert!(!ps.diverges_for_all());
        assert!(!ps.converges_for_all());
        let w = ps.convergence_witness().unwrap();
        assert!(w > 0.0 && w < 1.0);
        assert_eq!(ps.judge_at(w).verdict, SeriesVerdict::Converges);
        let d = ps.divergence_witness().unwrap();
        assert!(d > 1.0);
        assert_eq!(ps.judge_at(d).verdict, SeriesVerdict::Diverges);
        // On the boundary p = 1 the exponent vanishes: constant terms diverge.
        assert_eq!(ps.judge_at(1.0).verdict, SeriesVerdict::Diverges);
    }

    #[test]
    fn bounds_gap_is_inconclusive() {
        // exponent between -2k and -k + 3k = ... make a genuine gap:
        // lo = -3k (converges), hi = +k (diverges): sandwich cannot decide.
        let b = GrowthBounds::new(GrowthExpr::pow(-3.0, 1.0), GrowthExpr::pow(1.0, 1.0));
        assert_eq!(judge_bounds(&b).verdict, SeriesVerdict::Inconclusive);
    }

    #[test]
    fn window_trends() {
        let growing: Vec<(u64, f64)> = (1..40).map(|k| (k, 0.5 * k as f64)).collect();
        assert_eq!(judge_window(&growing).verdict, SeriesVerdict::Diverges);
        let decaying: Vec<(u64, f64)> = (1..40).map(|k| (k, -0.5 * k as f64)).collect();
        assert_eq!(judge_window(&decaying).verdict, SeriesVerdict::Converges);
        let flat: Vec<(u64, f64)> = (1..40).map(|k| (k, (k as f64).sin())).collect();
        assert_eq!(judge_window(&flat).verdict, SeriesVerdict::Inconclusive);
        let empty: Vec<(u64, f64)> = (1..40).map(|k| (k, f64::NEG_INFINITY)).collect();
        assert_eq!(judge_window(&empty).verdict, SeriesVerdict::Converges);
    }
}
