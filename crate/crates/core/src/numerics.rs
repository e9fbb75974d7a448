//! Log-domain complex arithmetic and deterministic stable summation.
//!
//! Series terms in this crate routinely span far more than the ~600 orders of
//! magnitude an `f64` can hold (`e^{s k^2}`-scale factors appear by design), so
//! every coefficient is carried as a (log-magnitude, phase) pair and sums are
//! taken through log-sum-exp. All reductions use a fixed pairwise tree so the
//! result is bit-stable regardless of how the inputs were produced.

use num_complex::Complex64;

/// A complex number stored as `exp(log_abs) * exp(i * arg)`.
///
/// `log_abs = -inf` encodes zero (with `arg = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub log_abs: f64,
    pub arg: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_abs: f64::NEG_INFINITY,
        arg: 0.0,
    };

    pub const ONE: LogComplex = LogComplex {
        log_abs: 0.0,
        arg: 0.0,
    };

    pub fn new(log_abs: f64, arg: f64) -> Self {
        if log_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self { log_abs, arg }
        }
    }

    /// A positive real value given by its natural log.
    pub fn from_log_abs(log_abs: f64) -> Self {
        Self::new(log_abs, 0.0)
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            Self::ZERO
        } else {
            Self {
                log_abs: z.norm().ln(),
                arg: z.arg(),
            }
        }
    }

    /// Converts back to a plain complex number. Over/underflows saturate; the
    /// caller is responsible for only doing this on values of sane magnitude.
    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let r = self.log_abs.exp();
        Complex64::new(r * self.arg.cos(), r * self.arg.sin())
    }

    pub fn is_zero(self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    pub fn mul(self, other: LogComplex) -> LogComplex {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        Self {
            log_abs: self.log_abs + other.log_abs,
            arg: self.arg + other.arg,
        }
    }

    /// Multiplies by `exp(log_factor)` (a positive real scale).
    pub fn scale_log(self, log_factor: f64) -> LogComplex {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self {
            log_abs: self.log_abs + log_factor,
            arg: self.arg,
        }
    }

    /// Rotates by `phase` radians.
    pub fn rotate(self, phase: f64) -> LogComplex {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self {
            log_abs: self.log_abs,
            arg: self.arg + phase,
        }
    }

    /// `-self` (a half-turn rotation).
    pub fn neg(self) -> LogComplex {
        self.rotate(std::f64::consts::PI)
    }

    /// `|self - other|` as a log-magnitude, evaluated at a common scale.
    pub fn log_abs_diff(self, other: LogComplex) -> f64 {
        if self.is_zero() {
            return other.log_abs;
        }
        if other.is_zero() {
            return self.log_abs;
        }
        let m = self.log_abs.max(other.log_abs);
        let a = Complex64::from_polar((self.log_abs - m).exp(), self.arg);
        let b = Complex64::from_polar((other.log_abs - m).exp(), other.arg);
        let d = (a - b).norm();
        if d == 0.0 {
            f64::NEG_INFINITY
        } else {
            m + d.ln()
        }
    }
}

/// `log(sum_i exp(terms_i))` for nonnegative summands given by their logs.
///
/// Empty input and all-`-inf` input both yield `-inf`. The inner accumulation
/// is a fixed-order pairwise tree.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let scaled: Vec<f64> = terms.iter().map(|&t| (t - max).exp()).collect();
    max + pairwise_sum(&scaled).ln()
}

/// Pairwise (cascade) summation with a fixed reduction tree.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Sum of log-domain complex values, computed at the scale of the largest
/// summand with a fixed pairwise tree.
pub fn sum_log_complex(values: &[LogComplex]) -> LogComplex {
    let max = values
        .iter()
        .map(|v| v.log_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return LogComplex::ZERO;
    }
    let scaled: Vec<Complex64> = values
        .iter()
        .map(|v| {
            if v.is_zero() {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar((v.log_abs - max).exp(), v.arg)
            }
        })
        .collect();
    let total = pairwise_sum_complex(&scaled);
    if total.re == 0.0 && total.im == 0.0 {
        return LogComplex::ZERO;
    }
    LogComplex {
        log_abs: max + total.norm().ln(),
        arg: total.arg(),
    }
}

fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
        }
    }
}

/// log(|sum|) where the summands are nonnegative reals given by their logs and
/// the sum is known to be a norm-squared style quantity: sqrt through logs.
pub fn log_l2_norm(log_abs_values: impl Iterator<Item = f64>) -> f64 {
    let doubled: Vec<f64> = log_abs_values.map(|l| 2.0 * l).collect();
    0.5 * log_sum_exp(&doubled)
}

/// Relative difference of two log-magnitudes as a plain ratio
/// `|exp(a) - exp(b)| / exp(b)`, computed without leaving the log domain.
pub fn rel_err_from_logs(log_a: f64, log_b: f64) -> f64 {
    if log_b == f64::NEG_INFINITY {
        if log_a == f64::NEG_INFINITY {
            return 0.0;
        }
        return f64::INFINITY;
    }
    ((log_a - log_b).exp() - 1.0).abs()
}
