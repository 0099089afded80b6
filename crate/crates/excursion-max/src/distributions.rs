//! Closed-form laws and kernels: the arcsine law, the Kolmogorov–Smirnov
//! distribution of the bridge maximum `b*`, the meander-maximum function `F`
//! in its Gaussian and theta forms, the alternating kernel
//! `A(u) = Σ (−1)^{k−1} k/(k²+u)` in series and digamma form, and the
//! survival function of `b*·√(g/(1−g))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{NumericError, Result};
use crate::quadrature::{self, QuadratureResult};
use crate::specfun::{digamma_complex, EvalControl};

/// Value of a truncated series together with truncation accounting.
///
/// For alternating series with monotone terms, `tail_bound` is the first
/// omitted term's magnitude; elsewhere it is a good-faith bound on the
/// remainder actually left unaccounted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// Density of the arcsine law on (0, 1): `1/(π√(x(1−x)))`.
pub fn arcsine_pdf(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(NumericError::domain("arcsine_pdf", format!("x must lie in (0,1), got {x}")));
    }
    Ok(1.0 / (PI * (x * (1.0 - x)).sqrt()))
}

/// Distribution function of the arcsine law, `(2/π)·asin(√x)` on [0, 1],
/// clamped outside.
pub fn arcsine_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        (2.0 / PI) * x.sqrt().asin()
    }
}

/// Below this point the alternating series for `P(b* > x)` is abandoned for
/// the theta form of the complement, which is then indistinguishable from 0.
const KS_THETA_BRANCH: f64 = 0.05;

/// Survival function of the bridge maximum:
/// `P(b* > x) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²x²}`.
pub fn ks_survival(x: f64, ctl: &EvalControl) -> Result<SeriesValue> {
    ctl.validate()?;
    if !(x > 0.0) {
        return Err(NumericError::domain("ks_survival", format!("x must be positive, got {x}")));
    }
    if x < KS_THETA_BRANCH {
        // 1 − theta-form CDF; the complement here is below 1e−200
        let cdf = ks_cdf_theta(x, ctl)?;
        return Ok(SeriesValue {
            value: (1.0 - cdf.value).clamp(0.0, 1.0),
            terms_used: cdf.terms_used,
            tail_bound: cdf.tail_bound,
        });
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut k = 1usize;
    loop {
        let kk = k as f64;
        sum += sign * (-2.0 * kk * kk * x * x).exp();
        let next = 2.0 * (-2.0 * (kk + 1.0) * (kk + 1.0) * x * x).exp();
        if next <= ctl.target(2.0 * sum) {
            return Ok(SeriesValue {
                value: (2.0 * sum).clamp(0.0, 1.0),
                terms_used: k,
                tail_bound: next,
            });
        }
        if k >= ctl.max_terms {
            return Err(NumericError::NonConvergence {
                what: "ks_survival alternating series",
                used: k,
                unit: "terms",
                err_estimate: next,
            });
        }
        sign = -sign;
        k += 1;
    }
}

/// CDF of `b*` through the theta-transformed series
/// `(√(2π)/x) Σ_{k≥1} e^{−(2k−1)²π²/(8x²)}`, rapidly convergent for small x.
fn ks_cdf_theta(x: f64, ctl: &EvalControl) -> Result<SeriesValue> {
    let pref = (2.0 * PI).sqrt() / x;
    let q = PI * PI / (8.0 * x * x);
    let mut sum = 0.0;
    let mut k = 1usize;
    loop {
        let m = (2 * k - 1) as f64;
        sum += (-m * m * q).exp();
        let m_next = (2 * k + 1) as f64;
        let next = pref * (-m_next * m_next * q).exp();
        // successive terms drop by at least e^{−8q}, far below 1/2 here
        if 2.0 * next <= ctl.target(pref * sum) {
            return Ok(SeriesValue { value: pref * sum, terms_used: k, tail_bound: 2.0 * next });
        }
        if k >= ctl.max_terms {
            return Err(NumericError::NonConvergence {
                what: "ks theta series",
                used: k,
                unit: "terms",
                err_estimate: next,
            });
        }
        k += 1;
    }
}

/// CDF of `b*`: 0 for x ≤ 0, otherwise `1 − ks_survival(x)`.
pub fn ks_cdf(x: f64, ctl: &EvalControl) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 - ks_survival(x, ctl)?.value)
}

/// Quantile of the Kolmogorov–Smirnov law: the x with
/// `|ks_survival(x) − (1−p)| ≤ abs_tol`.
pub fn ks_quantile(p: f64, ctl: &EvalControl) -> Result<f64> {
    invert_monotone_cdf(|x| ks_cdf(x, ctl), p, ctl, "ks_quantile")
}

/// Bisection to a bracket of width `abs_tol`, then one secant refinement.
/// The CDF must be 0 at 0 and reach `p` at some finite argument.
fn invert_monotone_cdf<F>(cdf: F, p: f64, ctl: &EvalControl, what: &'static str) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    ctl.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(NumericError::domain(what, format!("p must lie in (0,1), got {p}")));
    }
    let mut evals = 0usize;
    let mut lo = 0.0f64;
    let mut flo = -p;
    let mut hi = 1.0f64;
    let mut fhi = loop {
        let f = cdf(hi)? - p;
        evals += 1;
        if f >= 0.0 {
            break f;
        }
        hi *= 2.0;
        if hi > 1e6 || evals >= ctl.max_evals {
            return Err(NumericError::NonConvergence {
                what,
                used: evals,
                unit: "evaluations",
                err_estimate: -f,
            });
        }
    };
    let mut mid = 0.5 * hi;
    let mut fmid;
    loop {
        mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            fmid = cdf(mid)? - p;
            break;
        }
        fmid = cdf(mid)? - p;
        evals += 1;
        if fmid < 0.0 {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
        if (hi - lo) <= ctl.abs_tol && fmid.abs() <= ctl.abs_tol {
            break;
        }
        if evals >= ctl.max_evals {
            return Err(NumericError::NonConvergence {
                what,
                used: evals,
                unit: "evaluations",
                err_estimate: fmid.abs(),
            });
        }
    }
    // one secant refinement inside the final bracket
    if fhi != flo {
        let x = lo - flo * (hi - lo) / (fhi - flo);
        if x > lo && x < hi {
            let fx = cdf(x)? - p;
            if fx.abs() <= fmid.abs() {
                return Ok(x);
            }
        }
    }
    Ok(mid)
}

/// Gaussian-form series for the meander-maximum function:
/// `F(x) = √(2/π) Σ_{k∈ℤ} { e^{−2k²x²} − e^{−(2k+1)²x²/2} }`.
pub fn f_gauss(x: f64, ctl: &EvalControl) -> Result<SeriesValue> {
    ctl.validate()?;
    if !(x > 0.0) {
        return Err(NumericError::domain("f_gauss", format!("x must be positive, got {x}")));
    }
    let c = (2.0 / PI).sqrt();
    let term = |k: i64| -> f64 {
        let kk = k as f64;
        let odd = 2.0 * kk + 1.0;
        (-2.0 * kk * kk * x * x).exp() - (-odd * odd * x * x / 2.0).exp()
    };
    // magnitude envelope of the pair (k, −k), used for the stopping rule
    let pair_bound = |k: i64| -> f64 {
        let kk = k as f64;
        let up = 2.0 * kk + 1.0;
        let dn = 2.0 * kk - 1.0;
        2.0 * (-2.0 * kk * kk * x * x).exp()
            + (-up * up * x * x / 2.0).exp()
            + (-dn * dn * x * x / 2.0).exp()
    };
    let mut sum = term(0);
    let mut k = 1i64;
    loop {
        sum += term(k) + term(-k);
        let next = pair_bound(k + 1);
        if 2.0 * next <= ctl.target(c * sum) / c {
            let value = (c * sum).clamp(0.0, c);
            return Ok(SeriesValue { value, terms_used: (2 * k + 1) as usize, tail_bound: 2.0 * c * next });
        }
        if 2 * k as usize >= ctl.max_terms {
            return Err(NumericError::NonConvergence {
                what: "f_gauss series",
                used: 2 * k as usize,
                unit: "terms",
                err_estimate: next,
            });
        }
        k += 1;
    }
}

/// Theta-form series for the same function:
/// `F(x) = (4/x) Σ_{k≥0} exp{−(2k+1)²π²/(2x²)}`, rapidly convergent for
/// small x.
pub fn f_theta(x: f64, ctl: &EvalControl) -> Result<SeriesValue> {
    ctl.validate()?;
    if !(x > 0.0) {
        return Err(NumericError::domain("f_theta", format!("x must be positive, got {x}")));
    }
    let pref = 4.0 / x;
    let q = PI * PI / (2.0 * x * x);
    let mut sum = 0.0;
    let mut k = 0usize;
    loop {
        let odd = (2 * k + 1) as f64;
        sum += (-odd * odd * q).exp();
        let odd_next = (2 * k + 3) as f64;
        let next = pref * (-odd_next * odd_next * q).exp();
        // ratio of consecutive terms is e^{−8(k+1)q} < 1/2 whenever the
        // series needs more than one term, so 2× the next term bounds the tail
        if 2.0 * next <= ctl.target(pref * sum) {
            return Ok(SeriesValue { value: pref * sum, terms_used: k + 1, tail_bound: 2.0 * next });
        }
        if k >= ctl.max_terms {
            return Err(NumericError::NonConvergence {
                what: "f_theta series",
                used: k,
                unit: "terms",
                err_estimate: next,
            });
        }
        k += 1;
    }
}

/// Term-wise derivative of the Gaussian-form series for `F`;
/// `√(π/2)·f_prime_gauss` is the density of the meander maximum.
pub fn f_prime_gauss(x: f64, ctl: &EvalControl) -> Result<SeriesValue> {
    ctl.validate()?;
    if !(x > 0.0) {
        return Err(NumericError::domain("f_prime_gauss", format!("x must be positive, got {x}")));
    }
    let c = (2.0 / PI).sqrt();
    let term = |k: i64| -> f64 {
        let kk = k as f64;
        let odd = 2.0 * kk + 1.0;
        -4.0 * kk * kk * x * (-2.0 * kk * kk * x * x).exp()
            + odd * odd * x * (-odd * odd * x * x / 2.0).exp()
    };
    let pair_bound = |k: i64| -> f64 {
        let kk = k as f64;
        let up = 2.0 * kk + 1.0;
        let dn = 2.0 * kk - 1.0;
        8.0 * kk * kk * x * (-2.0 * kk * kk * x * x).exp()
            + up * up * x * (-up * up * x * x / 2.0).exp()
            + dn * dn * x * (-dn * dn * x * x / 2.0).exp()
    };
    let mut sum = term(0);
    let mut k = 1i64;
    loop {
        sum += term(k) + term(-k);
        let next = pair_bound(k + 1);
        if 2.0 * next <= ctl.target(c * sum) / c {
            return Ok(SeriesValue { value: c * sum, terms_used: (2 * k + 1) as usize, tail_bound: 2.0 * c * next });
        }
        if 2 * k as usize >= ctl.max_terms {
            return Err(NumericError::NonConvergence {
                what: "f_prime_gauss series",
                used: 2 * k as usize,
                unit: "terms",
                err_estimate: next,
            });
        }
        k += 1;
    }
}

/// CDF of the meander maximum, `√(π/2)·F(x)`: theta form below the branch
/// point x = 1, Gaussian form at and above it (each side needs only a few
/// terms there).
pub fn meander_max_cdf(x: f64, ctl: &EvalControl) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    let f = if x < 1.0 { f_theta(x, ctl)? } else { f_gauss(x, ctl)? };
    Ok(((PI / 2.0).sqrt() * f.value).clamp(0.0, 1.0))
}

/// Quantile of the meander maximum.
pub fn meander_max_quantile(p: f64, ctl: &EvalControl) -> Result<f64> {
    invert_monotone_cdf(|x| meander_max_cdf(x, ctl), p, ctl, "meander_max_quantile")
}

fn a_series_q(s: f64, u: f64) -> f64 {
    s / (s * s + u)
}

fn a_series_q1(s: f64, u: f64) -> f64 {
    (u - s * s) / (s * s + u).powi(2)
}

/// One paired term `q(2k−1) − q(2k)` of the kernel series; pairing makes the
/// series absolutely convergent with O(1/k²) terms.
fn a_pair(k: usize, u: f64) -> f64 {
    let odd = (2 * k - 1) as f64;
    let even = (2 * k) as f64;
    a_series_q(odd, u) - a_series_q(even, u)
}

/// Partial paired sum to `m` pairs plus the analytic midpoint tail:
/// `∫_{m+1/2}^∞ [q(2t−1) − q(2t)] dt = ¼·ln((4a²+u)/((2a−1)²+u))`
/// and the first midpoint correction `p'(a)/24`.
fn a_direct_estimate(u: f64, m: usize) -> f64 {
    let mut sum = 0.0;
    for k in 1..=m {
        sum += a_pair(k, u);
    }
    let a = m as f64 + 0.5;
    let tail = 0.25 * (((2.0 * a) * (2.0 * a) + u) / ((2.0 * a - 1.0) * (2.0 * a - 1.0) + u)).ln();
    let correction = (2.0 * a_series_q1(2.0 * a - 1.0, u) - 2.0 * a_series_q1(2.0 * a, u)) / 24.0;
    sum + tail + correction
}

/// Kernel `A(u) = Σ_{k≥1} (−1)^{k−1} k/(k²+u)` evaluated from its defining
/// series with consecutive terms paired, independent of the digamma route.
pub fn a_direct(u: f64, ctl: &EvalControl) -> Result<SeriesValue> {
    ctl.validate()?;
    if !(u >= 0.0) {
        return Err(NumericError::domain("a_direct", format!("u must be nonnegative, got {u}")));
    }
    let mut m = 512usize.max((4.0 * u.sqrt()).ceil() as usize);
    loop {
        let coarse = a_direct_estimate(u, m);
        let fine = a_direct_estimate(u, 2 * m);
        let diff = (fine - coarse).abs();
        let tail_bound = diff + 4.0 * f64::EPSILON * fine.abs();
        if tail_bound <= ctl.target(fine).max(f64::EPSILON * fine.abs()) {
            return Ok(SeriesValue { value: fine, terms_used: 4 * m, tail_bound });
        }
        if 8 * m > ctl.max_terms {
            return Err(NumericError::NonConvergence {
                what: "a_direct paired series",
                used: 4 * m,
                unit: "terms",
                err_estimate: tail_bound,
            });
        }
        m *= 4;
    }
}

/// Same kernel through the digamma identity
/// `A(u) = ½·Re[ψ(i√u/2) − ψ((1+i√u)/2)]`, real by conjugate symmetry.
///
/// The identity is singular term-by-term at u = 0 even though A(0) = ln 2 is
/// finite, so u = 0 delegates to [`a_direct`].
pub fn a_digamma(u: f64, ctl: &EvalControl) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(NumericError::domain("a_digamma", format!("u must be nonnegative, got {u}")));
    }
    if u == 0.0 {
        return Ok(a_direct(0.0, ctl)?.value);
    }
    let s = u.sqrt();
    let p1 = digamma_complex(Complex64::new(0.0, s / 2.0), ctl)?;
    let p2 = digamma_complex(Complex64::new(0.5, s / 2.0), ctl)?;
    Ok(0.5 * (p1 - p2).re)
}

/// Survival function of `b*·√(g(1)/(1−g(1)))`:
/// `(2/π) ∫_0^∞ A(u) e^{−2x²u} du/√u`, evaluated after the substitution
/// `u = v²` which removes the endpoint singularity:
/// `(4/π) ∫_0^∞ A(v²) e^{−2x²v²} dv`.
pub fn x_survival(x: f64, ctl: &EvalControl) -> Result<QuadratureResult> {
    ctl.validate()?;
    if !(x > 0.0) {
        return Err(NumericError::domain("x_survival", format!("x must be positive, got {x}")));
    }
    // truncation from |A| ≤ 1: (4/π)∫_V^∞ e^{−2x²v²} dv ≤ e^{−2x²V²}/(πx²V)
    let mut v_max = 1.0 / x;
    let mut tail = f64::INFINITY;
    for _ in 0..64 {
        tail = (-2.0 * x * x * v_max * v_max).exp() / (PI * x * x * v_max);
        if tail <= ctl.abs_tol / 4.0 {
            break;
        }
        v_max *= 2.0;
    }
    let inner = EvalControl { abs_tol: ctl.abs_tol / 2.0, rel_tol: ctl.rel_tol / 2.0, ..*ctl };
    let integrand = |v: f64| Ok(a_digamma(v * v, ctl)? * (-2.0 * x * x * v * v).exp());
    let raw = quadrature::integrate_finite(integrand, 0.0, v_max, &inner)?;
    let value = (4.0 / PI * raw.value).clamp(0.0, 1.0);
    let err_estimate = 4.0 / PI * raw.err_estimate + tail;
    Ok(QuadratureResult {
        value,
        err_estimate,
        evals: raw.evals,
        converged: err_estimate <= ctl.target(value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::digamma_complex;

    fn ctl() -> EvalControl {
        EvalControl::default()
    }

    #[test]
    fn arcsine_pdf_values() {
        let v = arcsine_pdf(0.5).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-15);
        let a = arcsine_pdf(0.13).unwrap();
        let b = arcsine_pdf(1.0 - 0.13).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert!(arcsine_pdf(0.0).is_err());
        assert!(arcsine_pdf(1.0).is_err());
        assert!(arcsine_pdf(-3.0).is_err());
    }

    #[test]
    fn arcsine_pdf_normalizes() {
        // integrable endpoint singularities: give the adaptive rule room
        let c = EvalControl { abs_tol: 1e-11, rel_tol: 1e-11, max_evals: 2_000_000, ..ctl() };
        let r = quadrature::integrate_finite(|x| arcsine_pdf(x), 0.0, 1.0, &c).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "got {} err {}", r.value, r.err_estimate);
    }

    #[test]
    fn arcsine_cdf_values() {
        assert_eq!(arcsine_cdf(0.0), 0.0);
        assert_eq!(arcsine_cdf(1.0), 1.0);
        assert_eq!(arcsine_cdf(-0.2), 0.0);
        assert!((arcsine_cdf(0.5) - 0.5).abs() < 1e-15);
        // asin(1/2) = π/6
        assert!((arcsine_cdf(0.25) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ks_survival_at_one() {
        // first three alternating terms: 2(e^{−2} − e^{−8} + e^{−18}), tail < 2e^{−32}
        let expected = 2.0 * ((-2.0f64).exp() - (-8.0f64).exp() + (-18.0f64).exp());
        let s = ks_survival(1.0, &ctl()).unwrap();
        assert!((s.value - expected).abs() < 1e-13, "got {}", s.value);
        assert!(s.tail_bound < 2.0 * (-32.0f64).exp() * 1.001);
    }

    #[test]
    fn ks_survival_near_zero_is_one() {
        let s = ks_survival(0.05, &ctl()).unwrap();
        assert!(s.value >= 0.999 && s.value <= 1.0, "got {}", s.value);
        let s = ks_survival(0.01, &ctl()).unwrap();
        assert!((s.value - 1.0).abs() < 1e-15);
        assert!(s.tail_bound < 1e-15);
    }

    #[test]
    fn ks_survival_far_tail() {
        // one term dominates: 2e^{−50}
        let s = ks_survival(5.0, &ctl()).unwrap();
        assert!((s.value - 2.0 * (-50.0f64).exp()).abs() < 1e-30, "got {}", s.value);
        assert!(ks_survival(0.0, &ctl()).is_err());
        assert!(ks_survival(-1.0, &ctl()).is_err());
    }

    #[test]
    fn ks_quantile_round_trip() {
        let c = ctl();
        let p = ks_cdf(0.9, &c).unwrap();
        let x = ks_quantile(p, &c).unwrap();
        assert!((x - 0.9).abs() < 1e-8, "got {x}");
    }

    #[test]
    fn ks_median() {
        // frozen from bisecting the alternating series itself at 1e−12
        let x = ks_quantile(0.5, &ctl()).unwrap();
        assert!((x - 0.82757).abs() < 1e-5, "got {x}");
        assert!((x - 0.8275735551899077).abs() < 1e-9, "got {x}");
    }

    #[test]
    fn ks_quantile_monotone() {
        let c = ctl();
        let mut prev = 0.0;
        for i in 1..20 {
            let q = ks_quantile(i as f64 / 20.0, &c).unwrap();
            assert!(q > prev, "not increasing at p={}", i as f64 / 20.0);
            prev = q;
        }
        assert!(ks_quantile(0.0, &c).is_err());
        assert!(ks_quantile(1.0, &c).is_err());
    }

    #[test]
    fn f_gauss_limit_at_infinity() {
        let v = f_gauss(10.0, &ctl()).unwrap();
        assert!((v.value - (2.0 / PI).sqrt()).abs() < 1e-12, "got {}", v.value);
    }

    #[test]
    fn f_series_agree_at_branch_region() {
        for x in [0.3, 0.7, 1.0, 1.5] {
            let g = f_gauss(x, &ctl()).unwrap().value;
            let t = f_theta(x, &ctl()).unwrap().value;
            assert!((g - t).abs() < 1e-12, "x={x}: {g} vs {t}");
        }
    }

    #[test]
    fn f_theta_deep_left_tail() {
        // single-term evaluation: (4/x)·e^{−π²/(2x²)} at x = 0.1
        let v = f_theta(0.1, &ctl()).unwrap();
        let expected = 40.0 * (-PI * PI * 50.0).exp();
        assert!(v.value > 0.0);
        assert!((v.value - expected).abs() <= 1e-12 * expected, "got {:e}", v.value);
        assert!(f_theta(0.0, &ctl()).is_err());
        assert!(f_gauss(-1.0, &ctl()).is_err());
    }

    #[test]
    fn theta_sum_increasing_in_x() {
        // x·F_theta(x)/4 = Σ e^{−(2k+1)²π²/(2x²)}, increasing term by term
        let c = ctl();
        let mut prev = 0.0;
        for i in 1..=20 {
            let x = 0.25 * i as f64;
            let s = x * f_theta(x, &c).unwrap().value / 4.0;
            assert!(s > prev, "not increasing at x={x}");
            prev = s;
        }
    }

    #[test]
    fn meander_cdf_endpoints_and_monotonicity() {
        let c = ctl();
        assert_eq!(meander_max_cdf(0.0, &c).unwrap(), 0.0);
        assert_eq!(meander_max_cdf(-2.0, &c).unwrap(), 0.0);
        assert!((meander_max_cdf(10.0, &c).unwrap() - 1.0).abs() < 1e-12);
        let mut prev = -1.0;
        for i in 1..=50 {
            let v = meander_max_cdf(0.1 * i as f64, &c).unwrap();
            assert!(v >= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn meander_quantile_round_trip() {
        let c = ctl();
        let q = meander_max_quantile(0.5, &c).unwrap();
        assert!((meander_max_cdf(q, &c).unwrap() - 0.5).abs() < 1e-8);
        let q1 = meander_max_quantile(0.1, &c).unwrap();
        let q9 = meander_max_quantile(0.999, &c).unwrap();
        assert!(q1 < q && q < q9);
        assert!(q9.is_finite());
    }

    /// Alternating harmonic series accelerated by repeated averaging of
    /// partial sums; independent of both kernel routes.
    fn ln2_oracle() -> f64 {
        let n = 2000usize;
        let mut partials = Vec::with_capacity(9);
        let mut s = 0.0;
        let mut sign = 1.0;
        for k in 1..=(n + 8) {
            s += sign / k as f64;
            sign = -sign;
            if k >= n {
                partials.push(s);
            }
        }
        for _ in 0..8 {
            for i in 0..partials.len() - 1 {
                partials[i] = 0.5 * (partials[i] + partials[i + 1]);
            }
            partials.pop();
        }
        partials[0]
    }

    #[test]
    fn a_direct_at_zero_is_ln2() {
        let oracle = ln2_oracle();
        assert!((oracle - std::f64::consts::LN_2).abs() < 1e-13, "oracle {oracle}");
        let v = a_direct(0.0, &ctl()).unwrap();
        assert!((v.value - oracle).abs() < 1e-12, "got {}", v.value);
    }

    #[test]
    fn a_direct_decays_at_infinity() {
        let v = a_direct(1e6, &ctl()).unwrap();
        assert!(v.value > 0.0 && v.value < 1e-3, "got {}", v.value);
    }

    #[test]
    fn kernel_routes_agree() {
        let c = ctl();
        for u in [1.0, 4.0] {
            let dir = a_direct(u, &c).unwrap().value;
            let dig = a_digamma(u, &c).unwrap();
            assert!((dir - dig).abs() < 1e-10, "u={u}: {dir} vs {dig}");
        }
        assert!(a_direct(-1.0, &c).is_err());
        assert!(a_digamma(-1.0, &c).is_err());
    }

    #[test]
    fn digamma_combination_matches_direct_kernel_at_one() {
        // ½·Re[ψ(i/2) − ψ((1+i)/2)] against the defining series at u = 1
        let c = ctl();
        let p1 = digamma_complex(Complex64::new(0.0, 0.5), &c).unwrap();
        let p2 = digamma_complex(Complex64::new(0.5, 0.5), &c).unwrap();
        let combo = 0.5 * (p1 - p2).re;
        let dir = a_direct(1.0, &c).unwrap().value;
        assert!((combo - dir).abs() < 1e-9, "{combo} vs {dir}");
    }

    #[test]
    fn kernel_bounded_by_ln2() {
        let c = ctl();
        let mut u = 1e-3;
        while u <= 100.0 {
            let v = a_digamma(u, &c).unwrap();
            assert!(v > 0.0 && v <= std::f64::consts::LN_2 + 1e-9, "u={u} gives {v}");
            u *= 1.6;
        }
    }

    #[test]
    fn x_survival_basics() {
        let c = ctl();
        let near_one = x_survival(0.01, &c).unwrap();
        assert!(near_one.value >= 0.99, "got {}", near_one.value);
        assert!(near_one.converged);
        // the arcsine endpoint makes the tail heavy: survival ~ ln2·√(2/π)/x
        let far = x_survival(20.0, &c).unwrap();
        let asymptote = std::f64::consts::LN_2 * (2.0 / PI).sqrt() / 20.0;
        assert!((far.value - asymptote).abs() < 2e-4, "got {} vs {asymptote}", far.value);
        let mut prev = 1.0;
        for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let v = x_survival(x, &c).unwrap().value;
            assert!(v < prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
        assert!(x_survival(0.0, &c).is_err());
    }
}
