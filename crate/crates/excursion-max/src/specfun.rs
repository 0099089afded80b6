//! Digamma evaluation on the real line and in the complex plane.
//!
//! The evaluator shifts the argument upward with `ψ(z+1) = ψ(z) + 1/z` until
//! it reaches the asymptotic region, then applies the Bernoulli expansion
//! `ψ(w) ≈ ln w − 1/(2w) − Σ B_{2k}/(2k·w^{2k})`. The defining series
//! `ψ(z) = −γ − 1/z + Σ z/(n(z+n))` converges far too slowly for production
//! use; it is kept as an independent oracle in the test suite.

use num_complex::Complex64;

use crate::error::{NumericError, Result};

/// Euler–Mascheroni constant, stored as a literal rather than computed.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// Tolerances and budgets governing every series, quadrature, and
/// root-finding evaluation in the crate.
///
/// An evaluator receiving an `EvalControl` either meets the tolerance or
/// reports failure; it never silently returns an unconverged value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalControl {
    /// Relative tolerance (dimensionless, > 0).
    pub rel_tol: f64,
    /// Absolute tolerance (dimensionless, > 0).
    pub abs_tol: f64,
    /// Cap on series terms per evaluation (≥ 1).
    pub max_terms: usize,
    /// Cap on function evaluations per quadrature or root-find (≥ 1).
    pub max_evals: usize,
}

impl Default for EvalControl {
    fn default() -> Self {
        EvalControl {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_terms: 10_000_000,
            max_evals: 100_000,
        }
    }
}

impl EvalControl {
    /// Control with both tolerances set to `tol` scaled variants:
    /// `rel_tol = tol`, `abs_tol = tol / 100`.
    pub fn with_tol(tol: f64) -> Self {
        EvalControl {
            rel_tol: tol,
            abs_tol: tol * 1e-2,
            ..EvalControl::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(NumericError::domain(
                "EvalControl",
                format!("tolerances must be positive, got rel_tol={} abs_tol={}", self.rel_tol, self.abs_tol),
            ));
        }
        if self.max_terms == 0 || self.max_evals == 0 {
            return Err(NumericError::domain(
                "EvalControl",
                "max_terms and max_evals must be at least 1",
            ));
        }
        Ok(())
    }

    /// Absolute target for a value of the given magnitude.
    pub(crate) fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude.abs())
    }
}

/// `B_{2k}/(2k)` for k = 1..8, the coefficients of the asymptotic expansion.
const ASYMP_COEFF: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Shift threshold such that the first omitted asymptotic term, of size
/// `|B_16/16| / w^16`, is below `target`.
fn shift_threshold(target: f64) -> f64 {
    let t = target.clamp(1e-300, 1.0);
    10f64.max((ASYMP_COEFF[7].abs() / t).powf(1.0 / 16.0))
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)` for real `x`.
///
/// Poles at `x ∈ {0, −1, −2, …}` are reported as errors, as is any failure
/// to reach the requested tolerance.
pub fn digamma_real(x: f64, ctl: &EvalControl) -> Result<f64> {
    ctl.validate()?;
    if !x.is_finite() {
        return Err(NumericError::domain("digamma_real", format!("non-finite argument {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(NumericError::Pole { re: x, im: 0.0 });
    }
    // Reflection for negative arguments: ψ(x) = ψ(1−x) − π·cot(πx).
    if x < 0.0 {
        let cot = 1.0 / (std::f64::consts::PI * x).tan();
        return Ok(digamma_real_positive(1.0 - x, ctl)? - std::f64::consts::PI * cot);
    }
    digamma_real_positive(x, ctl)
}

fn digamma_real_positive(x: f64, ctl: &EvalControl) -> Result<f64> {
    let threshold = shift_threshold(ctl.abs_tol.min(ctl.rel_tol));
    let mut shift = 0.0;
    let mut w = x;
    while w < threshold {
        shift -= 1.0 / w;
        w += 1.0;
    }
    let (tail, last_term) = asymptotic_real(w);
    let value = shift + tail;
    let err = last_term.abs();
    if err > ctl.target(value) {
        return Err(NumericError::NonConvergence {
            what: "digamma_real asymptotic expansion",
            used: ASYMP_COEFF.len(),
            unit: "terms",
            err_estimate: err,
        });
    }
    Ok(value)
}

fn asymptotic_real(w: f64) -> (f64, f64) {
    let inv2 = 1.0 / (w * w);
    let mut acc = w.ln() - 0.5 / w;
    let mut pow = inv2;
    let mut last = 0.0;
    for c in ASYMP_COEFF {
        last = c * pow;
        acc -= last;
        pow *= inv2;
    }
    (acc, last)
}

/// Digamma for complex `z`, with `ψ(conj z) = conj ψ(z)` holding up to
/// rounding.
pub fn digamma_complex(z: Complex64, ctl: &EvalControl) -> Result<Complex64> {
    ctl.validate()?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(NumericError::domain("digamma_complex", format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(NumericError::Pole { re: z.re, im: z.im });
    }
    // Reflection keeps the recurrence below from walking an unbounded
    // distance when Re z is very negative.
    if z.re < 0.0 {
        let pi = std::f64::consts::PI;
        let cot = cot_pi(z);
        return Ok(digamma_complex_shifted(Complex64::new(1.0, 0.0) - z, ctl)? - pi * cot);
    }
    digamma_complex_shifted(z, ctl)
}

/// cot(πz), saturating to ∓i for large |Im z| where cos/sin overflow.
fn cot_pi(z: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    if z.im > 25.0 {
        Complex64::new(0.0, -1.0)
    } else if z.im < -25.0 {
        Complex64::new(0.0, 1.0)
    } else {
        let pz = pi * z;
        pz.cos() / pz.sin()
    }
}

fn digamma_complex_shifted(z: Complex64, ctl: &EvalControl) -> Result<Complex64> {
    let threshold = shift_threshold(ctl.abs_tol.min(ctl.rel_tol));
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    // |w| ≥ threshold suffices for the expansion; when Im is large no real
    // shift is needed at all.
    while w.re < threshold && w.norm() < threshold {
        shift -= w.inv();
        w += 1.0;
    }
    let (tail, last_term) = asymptotic_complex(w);
    let value = shift + tail;
    let err = last_term;
    if err > ctl.target(value.norm()) {
        return Err(NumericError::NonConvergence {
            what: "digamma_complex asymptotic expansion",
            used: ASYMP_COEFF.len(),
            unit: "terms",
            err_estimate: err,
        });
    }
    Ok(value)
}

fn asymptotic_complex(w: Complex64) -> (Complex64, f64) {
    let inv2 = (w * w).inv();
    let mut acc = w.ln() - 0.5 * w.inv();
    let mut pow = inv2;
    let mut last = 0.0;
    for c in ASYMP_COEFF {
        let term = c * pow;
        last = term.norm();
        acc -= term;
        pow *= inv2;
    }
    (acc, last)
}
