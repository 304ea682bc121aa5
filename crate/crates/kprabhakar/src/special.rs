//! k-deformed special functions: k-Gamma, the Pochhammer k-symbol, and the
//! three-parameter k-Mittag-Leffler series.
//!
//! The k-Gamma function is the one-parameter deformation
//!
//! ```text
//! Gamma_k(x) = k^(x/k - 1) * Gamma(x/k),    Gamma_k(x + k) = x * Gamma_k(x),
//! ```
//!
//! which reduces to the classical Gamma at k = 1. The Pochhammer k-symbol is
//! the rising product
//!
//! ```text
//! (g)_{n,k} = g * (g + k) * ... * (g + (n-1)k),
//! ```
//!
//! and the k-Mittag-Leffler function is the entire series
//!
//! ```text
//! E_{k,rho,beta}^gamma(z) = sum_{n>=0} (gamma)_{n,k} z^n / (Gamma_k(rho*n + beta) * n!),
//! ```
//!
//! which collapses to exp(z) at (k, rho, beta, gamma) = (1, 1, 1, 1) and to the
//! constant 1/Gamma_k(beta) when gamma = 0. Terms are accumulated in log space
//! with explicit sign tracking so that large arguments, alternating signs, and
//! shifted orders (beta - j*k, possibly nonpositive) are all handled by one
//! code path.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Largest argument `exp` can take before overflowing to infinity.
const MAX_EXP_ARG: f64 = 709.78;

/// Hard cap on the number of series terms.
const TERM_CAP: usize = 10_000;

/// The parameter tuple (k, rho, beta, gamma, omega) governing the whole
/// operator family.
///
/// Invariants enforced at construction: k > 0, rho > 0, beta > 0, gamma >= 0,
/// omega finite. The boundary-value modules additionally require
/// 1 < beta/k <= 2 and omega >= 0, checked by [`OperatorParams::validate_bvp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    k: f64,
    rho: f64,
    beta: f64,
    gamma: f64,
    omega: f64,
}

impl OperatorParams {
    pub fn new(k: f64, rho: f64, beta: f64, gamma: f64, omega: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::domain("k must be a positive finite real"));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::domain("rho must be a positive finite real"));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::domain("beta must be a positive finite real"));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::domain("gamma must be a nonnegative finite real"));
        }
        if !omega.is_finite() {
            return Err(Error::domain("omega must be finite"));
        }
        Ok(Self { k, rho, beta, gamma, omega })
    }

    /// The classical reduction (k, rho, beta, gamma, omega) = (1, 1, 2, 0, 0),
    /// under which every operator in the crate collapses to the textbook
    /// second-order case.
    pub fn classical() -> Self {
        Self { k: 1.0, rho: 1.0, beta: 2.0, gamma: 0.0, omega: 0.0 }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// The effective fractional order beta/k.
    pub fn order(&self) -> f64 {
        self.beta / self.k
    }

    /// Gate for the boundary-value modules: 1 < beta/k <= 2 and omega >= 0.
    pub fn validate_bvp(&self) -> Result<()> {
        let order = self.order();
        if !(order > 1.0 && order <= 2.0) {
            return Err(Error::domain(format!(
                "boundary-value operators require 1 < beta/k <= 2 (got beta/k = {order})"
            )));
        }
        if self.omega < 0.0 {
            return Err(Error::domain(
                "boundary-value operators require omega >= 0; \
                 use the exploratory scan to bypass this gate",
            ));
        }
        Ok(())
    }
}

/// A truncated k-Mittag-Leffler evaluation: the value, the number of terms
/// summed, and a geometric estimate of the discarded tail.
///
/// On successful return `tail_bound <= tol * |value|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// ln|Gamma(x)| and the sign of Gamma(x); `None` at a pole.
fn signed_ln_gamma(x: f64) -> Option<(f64, f64)> {
    if x > 0.0 {
        return Some((ln_gamma(x), 1.0));
    }
    let nearest = x.round();
    if nearest <= 0.0 && (x - nearest).abs() <= 1e-12 * x.abs().max(1.0) {
        return None;
    }
    // Reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x)) for x < 0.
    let s = (std::f64::consts::PI * x).sin();
    let ln_abs = std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - x);
    Some((ln_abs, s.signum()))
}

/// ln|Gamma_k(x)| and sign via the scaling identity
/// ln Gamma_k(x) = (x/k - 1) ln k + ln Gamma(x/k); `None` at a pole.
fn signed_ln_k_gamma(x: f64, k: f64) -> Option<(f64, f64)> {
    let (ln_abs, sign) = signed_ln_gamma(x / k)?;
    Some(((x / k - 1.0) * k.ln() + ln_abs, sign))
}

/// Natural log of the k-Gamma function, `ln Gamma_k(x)` for x > 0, k > 0.
pub fn ln_k_gamma(x: f64, k: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain("k_gamma requires x > 0"));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::domain("k_gamma requires k > 0"));
    }
    Ok((x / k - 1.0) * k.ln() + ln_gamma(x / k))
}

/// The k-Gamma function Gamma_k(x) = k^(x/k - 1) Gamma(x/k).
///
/// Computed in log space; if the final exponentiation would overflow the
/// error carries the log-space value.
pub fn k_gamma(x: f64, k: f64) -> Result<f64> {
    let ln_value = ln_k_gamma(x, k)?;
    if ln_value > MAX_EXP_ARG {
        return Err(Error::Overflow { ln_value });
    }
    Ok(ln_value.exp())
}

/// The Pochhammer k-symbol (g)_{n,k} = g (g+k) ... (g+(n-1)k).
///
/// Empty product 1 at n = 0; identically 0 for g = 0 and n >= 1, the limit
/// of the Gamma_k-ratio form.
pub fn k_pochhammer(g: f64, n: u32, k: f64) -> Result<f64> {
    if !(g.is_finite() && g >= 0.0) {
        return Err(Error::domain("k_pochhammer requires g >= 0"));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::domain("k_pochhammer requires k > 0"));
    }
    Ok((0..n).map(|i| g + i as f64 * k).product())
}

/// One series coefficient c_n = (gamma)_{n,k} / (Gamma_k(rho n + beta) n!)
/// in signed log form. `sign == 0` encodes an exactly-zero coefficient.
#[derive(Debug, Clone, Copy)]
struct Coeff {
    ln_abs: f64,
    sign: f64,
}

/// Coefficient table for one k-Mittag-Leffler series.
///
/// This is the raw evaluator: it accepts shifted (possibly nonpositive) beta
/// and signed gamma, which the derivative operator needs. Public entry points
/// go through validated [`OperatorParams`].
#[derive(Debug, Clone)]
pub(crate) struct MlSeries {
    k: f64,
    rho: f64,
    beta: f64,
    gamma: f64,
    coeffs: Vec<Coeff>,
    // running state for extending `coeffs`
    ln_poch: f64,
    poch_sign: f64,
    ln_factorial: f64,
}

impl MlSeries {
    pub(crate) fn new(k: f64, rho: f64, beta: f64, gamma: f64) -> Self {
        Self {
            k,
            rho,
            beta,
            gamma,
            coeffs: Vec::new(),
            ln_poch: 0.0,
            poch_sign: 1.0,
            ln_factorial: 0.0,
        }
    }

    pub(crate) fn for_params(p: &OperatorParams) -> Self {
        Self::new(p.k, p.rho, p.beta, p.gamma)
    }

    /// Extend the coefficient table through index `n`.
    fn ensure(&mut self, n: usize) -> Result<()> {
        while self.coeffs.len() <= n {
            let idx = self.coeffs.len();
            if idx > 0 {
                // (gamma)_{idx,k} = (gamma)_{idx-1,k} * (gamma + (idx-1) k)
                let factor = self.gamma + (idx as f64 - 1.0) * self.k;
                self.poch_sign *= factor.signum();
                self.ln_poch += factor.abs().ln();
                self.ln_factorial += (idx as f64).ln();
            }
            let arg = self.rho * idx as f64 + self.beta;
            let coeff = if self.poch_sign == 0.0 {
                Coeff { ln_abs: f64::NEG_INFINITY, sign: 0.0 }
            } else {
                let (ln_g, sign_g) = signed_ln_k_gamma(arg, self.k)
                    .ok_or(Error::GammaPole { index: idx, argument: arg })?;
                Coeff {
                    ln_abs: self.ln_poch - ln_g - self.ln_factorial,
                    sign: self.poch_sign * sign_g,
                }
            };
            self.coeffs.push(coeff);
        }
        Ok(())
    }

    /// Extend the table until coefficients are negligible for every argument
    /// with |z| <= z_abs_max, so that [`MlSeries::eval`] can run on a shared
    /// immutable reference afterwards.
    pub(crate) fn prepare(&mut self, z_abs_max: f64) -> Result<()> {
        let ln_z = if z_abs_max > 0.0 { z_abs_max.ln() } else { f64::NEG_INFINITY };
        let mut n = 0usize;
        loop {
            self.ensure(n)?;
            let c = self.coeffs[n];
            if c.sign == 0.0 {
                return Ok(());
            }
            let ln_term = if ln_z == f64::NEG_INFINITY && n > 0 {
                f64::NEG_INFINITY
            } else {
                c.ln_abs + n as f64 * ln_z
            };
            if ln_term < -800.0 {
                return Ok(());
            }
            n += 1;
            if n >= TERM_CAP {
                return Err(Error::SeriesDivergence { partial: f64::NAN, terms_used: n });
            }
        }
    }

    /// Sum the series at `z` using the prepared coefficient table.
    pub(crate) fn eval(&self, z: f64, tol: f64) -> Result<SeriesResult> {
        let c0 = self.coeffs.first().ok_or(Error::SeriesDivergence {
            partial: f64::NAN,
            terms_used: 0,
        })?;
        let first = c0.sign * c0.ln_abs.exp();
        if z == 0.0 {
            return Ok(SeriesResult { value: first, terms_used: 1, tail_bound: 0.0 });
        }

        let ln_abs_z = z.abs().ln();
        let sign_z = z.signum();
        let mut partial = first;
        let mut sign_zn = 1.0;
        let mut prev_abs = first.abs();
        for n in 1..TERM_CAP {
            let c = match self.coeffs.get(n) {
                Some(c) => *c,
                None => {
                    return Err(Error::SeriesDivergence { partial, terms_used: n });
                }
            };
            sign_zn *= sign_z;
            let term = if c.sign == 0.0 {
                0.0
            } else {
                c.sign * sign_zn * (c.ln_abs + n as f64 * ln_abs_z).exp()
            };
            if !term.is_finite() {
                return Err(Error::SeriesDivergence { partial, terms_used: n });
            }
            partial += term;
            let abs_t = term.abs();
            if abs_t == 0.0 {
                return Ok(SeriesResult { value: partial, terms_used: n + 1, tail_bound: 0.0 });
            }
            let ratio = abs_t / prev_abs;
            if ratio < 1.0 {
                let tail = abs_t * ratio / (1.0 - ratio);
                let budget = tol * partial.abs().max(f64::MIN_POSITIVE);
                if abs_t <= budget && tail <= budget {
                    return Ok(SeriesResult { value: partial, terms_used: n + 1, tail_bound: tail });
                }
            }
            prev_abs = abs_t;
        }
        Err(Error::SeriesDivergence { partial, terms_used: TERM_CAP })
    }

    /// Extend-as-needed evaluation for one-off arguments.
    pub(crate) fn eval_extending(&mut self, z: f64, tol: f64) -> Result<SeriesResult> {
        self.prepare(z.abs())?;
        self.eval(z, tol)
    }
}

/// The k-Mittag-Leffler function E_{k,rho,beta}^gamma evaluated at `z`.
///
/// Sums the defining series in fixed ascending order, stopping once the term
/// ratio drops below 1 and the geometric tail estimate falls below
/// `tol * |partial sum|`. The omega field of `p` is not consumed here; callers
/// form the argument z themselves (typically z = omega * x^(rho/k)).
pub fn ml_k(p: &OperatorParams, z: f64, tol: f64) -> Result<SeriesResult> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain("ml_k requires tol > 0"));
    }
    MlSeries::for_params(p).eval_extending(z, tol)
}

/// j-th derivative of the power-weighted k-Mittag-Leffler profile
///
/// ```text
/// d^j/dx^j [ x^(beta/k - 1) E_{k,rho,beta}^gamma(omega x^(rho/k)) ]
///     = x^(beta/k - (j+1)) / k^j * E_{k,rho,beta-jk}^gamma(omega x^(rho/k)),
/// ```
///
/// evaluated through the shifted series on the right. If a term of the
/// shifted series lands on a Gamma_k pole the error names the term index.
pub fn ml_weighted_derivative(p: &OperatorParams, x: f64, j: u32, tol: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain("ml_weighted_derivative requires x > 0"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain("ml_weighted_derivative requires tol > 0"));
    }
    let shifted = p.beta - j as f64 * p.k;
    let mut series = MlSeries::new(p.k, p.rho, shifted, p.gamma);
    let z = p.omega * x.powf(p.rho / p.k);
    let e = series.eval_extending(z, tol)?;
    Ok(x.powf(p.beta / p.k - (j as f64 + 1.0)) / p.k.powi(j as i32) * e.value)
}
