//! Bessel polynomials `J_n^mu(x)` on the real line and Laguerre polynomials
//! `L_n^nu(y)`.
//!
//! The Bessel polynomial is the terminating series
//! `J_n^mu(x) = 2F0(-n, n + 2mu + 1; ; -x)`, orthogonal on `[0, inf)` under the
//! weight `x^(2mu) e^(-1/x)` provided `mu < -N - 1/2` for the largest degree `N`
//! in use. Degrees stay small (that constraint caps them), so polynomials are
//! kept as dense coefficient vectors and the differential and shift identities
//! are checked exactly in coefficient space.

use std::fmt;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_real_line, Integral, Tolerance};

/// Dense real polynomial; `coefficients[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coefficients: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial, trimming exact-zero leading coefficients.
    pub fn new(mut coefficients: Vec<f64>) -> Self {
        while coefficients.len() > 1 && coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self::new(vec![0.0])
    }

    pub fn one() -> Self {
        Self::new(vec![1.0])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Evaluates `exp(log_prefactor) * p(e^t)` without overflowing when `t`
    /// is large: for `t > 0` the leading power is folded into the exponent and
    /// the remaining sum is evaluated in `e^-t`.
    pub fn eval_at_exp(&self, t: f64, log_prefactor: f64) -> f64 {
        if t <= 0.0 {
            let p = self.eval(t.exp());
            if p == 0.0 {
                return 0.0;
            }
            return log_prefactor.exp() * p;
        }
        let w = (-t).exp();
        let reversed = self.coefficients.iter().fold(0.0, |acc, &c| acc * w + c);
        if reversed == 0.0 {
            return 0.0;
        }
        (log_prefactor + self.degree() as f64 * t).exp() * reversed
    }

    pub fn derivative(&self) -> Self {
        if self.coefficients.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * factor).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        Self::new(
            (0..len)
                .map(|k| {
                    self.coefficients.get(k).copied().unwrap_or(0.0)
                        + other.coefficients.get(k).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coefficients.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} x")?,
                _ => write!(f, "{c} x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Bessel-polynomial parameters: `mu` together with the largest degree used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselParamSet {
    mu: f64,
    max_degree: usize,
}

impl BesselParamSet {
    pub fn new(mu: f64, max_degree: usize) -> Result<Self> {
        check_bessel_domain(mu, max_degree)?;
        Ok(Self { mu, max_degree })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }
}

/// `nu > -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreParamSet {
    nu: f64,
}

impl LaguerreParamSet {
    pub fn new(nu: f64) -> Result<Self> {
        check_laguerre_domain(nu)?;
        Ok(Self { nu })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

fn check_bessel_domain(mu: f64, n: usize) -> Result<()> {
    let bound = -(n as f64) - 0.5;
    if !mu.is_finite() || mu >= bound {
        return Err(Error::Domain(format!(
            "Bessel polynomial of degree {n} needs mu < {bound}, got mu = {mu}"
        )));
    }
    Ok(())
}

pub(crate) fn check_laguerre_domain(nu: f64) -> Result<()> {
    if !nu.is_finite() || nu <= -1.0 {
        return Err(Error::Domain(format!("Laguerre index needs nu > -1, got {nu}")));
    }
    Ok(())
}

/// Coefficients of the terminating `2F0` series with no domain check.
///
/// Coefficient `k` is `(-n)_k (n + 2mu + 1)_k (-1)^k / k!`.
fn bessel_series(mu: f64, n: usize) -> Poly {
    let nf = n as f64;
    let upper = nf + 2.0 * mu + 1.0;
    let mut coefficients = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    coefficients.push(c);
    for k in 0..n {
        let kf = k as f64;
        c *= -(kf - nf) * (upper + kf) / (kf + 1.0);
        coefficients.push(c);
    }
    Poly::new(coefficients)
}

/// Exact coefficients of `J_n^mu`. Requires `mu < -n - 1/2`.
pub fn bessel_coeffs(mu: f64, n: usize) -> Result<Poly> {
    check_bessel_domain(mu, n)?;
    Ok(bessel_series(mu, n))
}

pub fn bessel_eval(mu: f64, n: usize, x: f64) -> Result<f64> {
    Ok(bessel_coeffs(mu, n)?.eval(x))
}

/// `J_0^mu(x), ..., J_nmax^mu(x)` from the upward three-term recursion.
pub fn bessel_recursion(mu: f64, nmax: usize, x: f64) -> Result<Vec<f64>> {
    check_bessel_domain(mu, nmax)?;
    let mut values = Vec::with_capacity(nmax + 1);
    values.push(1.0);
    let mut prev = 0.0;
    for n in 0..nmax {
        let nf = n as f64;
        let cur = values[n];
        let diag = -mu / ((nf + mu) * (nf + mu + 1.0));
        let lower = nf / ((nf + mu) * (2.0 * nf + 2.0 * mu + 1.0));
        let upper = (nf + 2.0 * mu + 1.0) / ((nf + mu + 1.0) * (2.0 * nf + 2.0 * mu + 1.0));
        let next = (2.0 * x * cur - diag * cur + lower * prev) / upper;
        prev = cur;
        values.push(next);
    }
    Ok(values)
}

/// `ln` of the orthogonality norm `-n! Gamma(-n - 2mu) / (2n + 2mu + 1)`.
pub fn bessel_ln_norm(mu: f64, n: usize) -> Result<f64> {
    check_bessel_domain(mu, n)?;
    let nf = n as f64;
    Ok(ln_gamma(nf + 1.0) + ln_gamma(-nf - 2.0 * mu) - (-(2.0 * nf + 2.0 * mu + 1.0)).ln())
}

/// `int_0^inf x^(2mu) e^(-1/x) [J_n^mu(x)]^2 dx`.
pub fn bessel_norm(mu: f64, n: usize) -> Result<f64> {
    let ln = bessel_ln_norm(mu, n)?;
    let value = ln.exp();
    if !value.is_finite() {
        return Err(Error::Range(format!(
            "Bessel norm for mu = {mu}, n = {n} overflows (ln = {ln})"
        )));
    }
    Ok(value)
}

/// Basis normalization `G_n = 1 / sqrt(bessel_norm(mu, n))`.
pub fn bessel_gn(mu: f64, n: usize) -> Result<f64> {
    let ln = bessel_ln_norm(mu, n)?;
    let value = (-0.5 * ln).exp();
    if value == 0.0 || !value.is_finite() {
        return Err(Error::Range(format!(
            "G_n for mu = {mu}, n = {n} is outside f64 range (ln norm = {ln})"
        )));
    }
    Ok(value)
}

/// The Bessel-polynomial identities checked by [`bessel_identity_residuals`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselIdentity {
    /// Three-term recursion for `2x J_n`.
    Recursion,
    /// Second-order differential equation.
    DifferentialEquation,
    /// `J_n' = n(n + 2mu + 1) J_{n-1}^{mu+1}`.
    ForwardShift,
    /// `x^2 J_n' = -(2mu x + 1) J_n + J_{n+1}^{mu-1}`.
    BackwardShift,
    /// `J_{n+1}^{mu-1}` expanded in `J_{n-1}, J_n, J_{n+1}`.
    LoweredExpansion,
    /// `2x^2 J_n'` expanded in `J_{n-1}, J_n, J_{n+1}`.
    BackwardShiftExpanded,
}

impl BesselIdentity {
    pub const ALL: [BesselIdentity; 6] = [
        BesselIdentity::Recursion,
        BesselIdentity::DifferentialEquation,
        BesselIdentity::ForwardShift,
        BesselIdentity::BackwardShift,
        BesselIdentity::LoweredExpansion,
        BesselIdentity::BackwardShiftExpanded,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BesselIdentity::Recursion => "bessel_recursion",
            BesselIdentity::DifferentialEquation => "bessel_differential_equation",
            BesselIdentity::ForwardShift => "bessel_forward_shift",
            BesselIdentity::BackwardShift => "bessel_backward_shift",
            BesselIdentity::LoweredExpansion => "bessel_lowered_expansion",
            BesselIdentity::BackwardShiftExpanded => "bessel_backward_shift_expanded",
        }
    }
}

/// Residual of one identity at one degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResidual {
    pub identity: BesselIdentity,
    pub n: usize,
    /// Largest absolute coefficient of left minus right.
    pub absolute: f64,
    /// `absolute` divided by the largest coefficient among the terms.
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub mu: f64,
    pub nmax: usize,
    pub residuals: Vec<IdentityResidual>,
}

impl IdentityReport {
    pub fn max_relative(&self, identity: BesselIdentity) -> f64 {
        self.residuals
            .iter()
            .filter(|r| r.identity == identity)
            .fold(0.0, |m, r| m.max(r.relative))
    }

    pub fn worst(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.relative))
    }
}

/// Sums `terms`, returning the residual against the largest term coefficient.
fn residual_of(identity: BesselIdentity, n: usize, terms: &[Poly]) -> IdentityResidual {
    let total = terms.iter().fold(Poly::zero(), |acc, t| acc.add(t));
    let scale = terms.iter().map(Poly::max_abs_coefficient).fold(0.0, f64::max);
    let absolute = total.max_abs_coefficient();
    IdentityResidual {
        identity,
        n,
        absolute,
        relative: if scale > 0.0 { absolute / scale } else { absolute },
    }
}

/// Evaluates every Bessel identity for `n = 0..=nmax` in coefficient space.
///
/// Identities with rational coefficients are multiplied through by
/// `(n + mu)(n + mu + 1)(2n + 2mu + 1)`, which leaves the relative residual
/// unchanged wherever the original form is defined, and keeps it defined
/// where one of those factors vanishes.
pub fn bessel_identity_residuals(mu: f64, nmax: usize) -> Result<IdentityReport> {
    if !mu.is_finite() {
        return Err(Error::Domain(format!("mu must be finite, got {mu}")));
    }
    let j = |m: f64, n: isize| -> Poly {
        if n < 0 {
            Poly::zero()
        } else {
            bessel_series(m, n as usize)
        }
    };
    let x = Poly::x();
    let x2 = x.mul(&x);
    let mut residuals = Vec::with_capacity(6 * (nmax + 1));

    for n in 0..=nmax {
        let ni = n as isize;
        let nf = n as f64;
        let jn = j(mu, ni);
        let jm1 = j(mu, ni - 1);
        let jp1 = j(mu, ni + 1);
        let djn = jn.derivative();
        let eig = nf * (nf + 2.0 * mu + 1.0);
        let s0 = nf + mu;
        let s1 = nf + mu + 1.0;
        let s2 = 2.0 * nf + 2.0 * mu + 1.0;
        let clear = s0 * s1 * s2;

        residuals.push(residual_of(
            BesselIdentity::Recursion,
            n,
            &[
                x.mul(&jn).scale(2.0 * clear),
                jn.scale(mu * s2),
                jm1.scale(nf * s1),
                jp1.scale(-(nf + 2.0 * mu + 1.0) * s0),
            ],
        ));

        residuals.push(residual_of(
            BesselIdentity::DifferentialEquation,
            n,
            &[
                x2.mul(&djn.derivative()),
                Poly::new(vec![1.0, 2.0 * (mu + 1.0)]).mul(&djn),
                jn.scale(-eig),
            ],
        ));

        residuals.push(residual_of(
            BesselIdentity::ForwardShift,
            n,
            &[djn.clone(), j(mu + 1.0, ni - 1).scale(-eig)],
        ));

        let lowered = j(mu - 1.0, ni + 1);
        residuals.push(residual_of(
            BesselIdentity::BackwardShift,
            n,
            &[
                x2.mul(&djn),
                Poly::new(vec![1.0, 2.0 * mu]).mul(&jn),
                lowered.scale(-1.0),
            ],
        ));

        residuals.push(residual_of(
            BesselIdentity::LoweredExpansion,
            n,
            &[
                lowered.scale(2.0 * clear),
                jn.scale(-(nf + 1.0) * (nf + 2.0 * mu) * s2),
                jm1.scale(-nf * (nf + 1.0) * s1),
                jp1.scale(-(nf + 2.0 * mu) * (nf + 2.0 * mu + 1.0) * s0),
            ],
        ));

        residuals.push(residual_of(
            BesselIdentity::BackwardShiftExpanded,
            n,
            &[
                x2.mul(&djn).scale(2.0 * clear),
                jn.scale(eig * s2),
                jm1.scale(-eig * s1),
                jp1.scale(-eig * s0),
            ],
        ));
    }

    Ok(IdentityReport { mu, nmax, residuals })
}

/// Numeric `int_0^inf x^(2mu) e^(-1/x) J_n^mu J_m^mu dx` after `x = e^t`.
///
/// `tol.abs` should be set when `n != m`, since the result is then zero.
pub fn bessel_orthogonality_numeric(mu: f64, n: usize, m: usize, tol: Tolerance) -> Result<Integral> {
    let jn = bessel_coeffs(mu, n)?;
    let jm = bessel_coeffs(mu, m)?;
    let product = jn.mul(&jm);
    // dx = e^t dt folds one power of x into the weight
    let exponent = 2.0 * mu + 1.0;
    integrate_real_line(
        |t| {
            let log_weight = exponent * t - (-t).exp();
            if log_weight == f64::NEG_INFINITY {
                return 0.0;
            }
            product.eval_at_exp(t, log_weight)
        },
        tol,
    )
}

/// `L_n^nu(x)` by upward recursion from `L_0 = 1`, `L_1 = nu + 1 - x`.
pub fn laguerre_eval(nu: f64, n: usize, x: f64) -> Result<f64> {
    check_laguerre_domain(nu)?;
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = nu + 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + nu + 1.0 - x) * cur - (kf + nu) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalization `A_n = sqrt(n! / Gamma(n + nu + 1))` of the Laguerre basis.
pub fn laguerre_norm_factor(nu: f64, n: usize) -> Result<f64> {
    check_laguerre_domain(nu)?;
    let nf = n as f64;
    Ok((0.5 * (ln_gamma(nf + 1.0) - ln_gamma(nf + nu + 1.0))).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    /// Generalized binomial `C(a, k)` for real `a`.
    fn binom(a: f64, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (a - i as f64) / (i as f64 + 1.0))
    }

    /// Coefficients of `n! (-x)^n L_n^{-(2n+2mu+1)}(1/x)` from the explicit
    /// Laguerre sum `L_n^a(t) = sum_j (-1)^j C(n + a, n - j) t^j / j!`.
    fn laguerre_form(mu: f64, n: usize) -> Vec<f64> {
        let a = -(2.0 * n as f64 + 2.0 * mu + 1.0);
        let nfact: f64 = (1..=n).map(|i| i as f64).product();
        let sign_n = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut out = vec![0.0; n + 1];
        for jj in 0..=n {
            let jfact: f64 = (1..=jj).map(|i| i as f64).product();
            let sign_j = if jj % 2 == 0 { 1.0 } else { -1.0 };
            out[n - jj] = nfact * sign_n * sign_j * binom(n as f64 + a, n - jj) / jfact;
        }
        out
    }

    #[test]
    fn coeffs_low_degree() {
        assert_eq!(bessel_coeffs(-8.0, 0).unwrap().coefficients(), &[1.0]);
        assert_eq!(bessel_coeffs(-8.0, 1).unwrap().coefficients(), &[1.0, -14.0]);
    }

    #[test]
    fn coeffs_match_laguerre_form() {
        for n in 0..=6 {
            let got = bessel_coeffs(-8.0, n).unwrap();
            let want = laguerre_form(-8.0, n);
            assert_eq!(got.coefficients().len(), want.len());
            for (g, w) in got.coefficients().iter().zip(&want) {
                assert!(close(*g, *w, 1e-13), "n={n}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn coeffs_reject_half_integer_edge() {
        assert!(bessel_coeffs(-2.5, 2).is_err());
        assert!(bessel_coeffs(-2.0, 2).is_err());
        assert!(bessel_coeffs(-2.51, 2).is_ok());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(bessel_eval(-8.0, 5, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_eval(-8.0, 1, 1.0).unwrap(), -13.0);
        assert_eq!(bessel_eval(-8.0, 0, 0.7).unwrap(), 1.0);
    }

    #[test]
    fn horner_matches_recursion() {
        for &mu in &[-6.5, -8.0, -10.0] {
            let nmax = (-mu - 0.5f64).ceil() as usize - 1;
            for i in 0..=60 {
                let x = 0.01 * (1e4f64).powf(i as f64 / 60.0);
                let rec = bessel_recursion(mu, nmax, x).unwrap();
                for (n, r) in rec.iter().enumerate() {
                    let coeffs = bessel_coeffs(mu, n).unwrap();
                    let h = coeffs.eval(x);
                    // relative to the condition scale sum |c_k| x^k, which
                    // stays meaningful next to a zero of J_n
                    let scale: f64 = coeffs
                        .coefficients()
                        .iter()
                        .enumerate()
                        .map(|(k, c)| c.abs() * x.powi(k as i32))
                        .sum();
                    assert!((h - r).abs() <= 1e-12 * scale, "mu={mu} n={n} x={x}: {h} vs {r}");
                }
            }
        }
    }

    #[test]
    fn recursion_is_definite() {
        let mu = -8.0;
        let big_n = 7;
        for n in 1..big_n {
            let nf = n as f64;
            let lower = -nf / ((nf + mu) * (2.0 * nf + 2.0 * mu + 1.0));
            let upper = (nf + 2.0 * mu + 1.0) / ((nf + mu + 1.0) * (2.0 * nf + 2.0 * mu + 1.0));
            assert_eq!(lower.signum(), upper.signum(), "n={n}");
        }
    }

    #[test]
    fn norm_examples() {
        let fact14: f64 = (1..=14).map(|i| i as f64).product();
        assert!(close(bessel_norm(-8.0, 0).unwrap(), fact14, 1e-12));
        assert!(close(bessel_norm(-1.0, 0).unwrap(), 1.0, 1e-12));
        assert!(close(bessel_gn(-8.0, 0).unwrap(), fact14.sqrt().recip(), 1e-12));
        assert!(close(bessel_gn(-1.0, 0).unwrap(), 1.0, 1e-12));
        for n in 0..=6 {
            let g = bessel_gn(-8.0, n).unwrap();
            assert!(close(g * g * bessel_norm(-8.0, n).unwrap(), 1.0, 1e-12));
        }
    }

    #[test]
    fn norm_overflow_reported() {
        assert!(matches!(bessel_norm(-200.0, 0), Err(Error::Range(_))));
        assert!(bessel_ln_norm(-200.0, 0).unwrap().is_finite());
    }

    #[test]
    fn identity_suite() {
        for &mu in &[-6.5, -8.0, -10.0] {
            let report = bessel_identity_residuals(mu, 6).unwrap();
            assert!(report.worst() <= 1e-10, "mu={mu}: {report:?}");
        }
    }

    #[test]
    fn differential_equation_exact_at_degree_zero() {
        let report = bessel_identity_residuals(-8.0, 0).unwrap();
        let r = report
            .residuals
            .iter()
            .find(|r| r.identity == BesselIdentity::DifferentialEquation)
            .unwrap();
        assert_eq!(r.absolute, 0.0);
    }

    #[test]
    fn forward_shift_degree_one_by_hand() {
        let mu = -8.0;
        let d = bessel_coeffs(mu, 1).unwrap().derivative();
        assert_eq!(d.coefficients(), &[2.0 * (mu + 1.0)]);
        let shifted = bessel_coeffs(mu + 1.0, 0).unwrap().scale(2.0 * mu + 2.0);
        assert_eq!(d, shifted);
    }

    #[test]
    fn broken_identity_is_detected() {
        // perturbing one term must show up as a large residual
        let r = residual_of(
            BesselIdentity::ForwardShift,
            1,
            &[Poly::new(vec![1.0, 2.0]), Poly::new(vec![-1.0, -2.1])],
        );
        assert!(r.relative > 1e-3);
    }

    #[test]
    fn orthogonality_examples() {
        let mu = -8.0;
        let n0 = bessel_norm(mu, 0).unwrap();
        let tol = Tolerance::relative(1e-10).with_abs(1e-12 * n0);
        let r = bessel_orthogonality_numeric(mu, 0, 0, tol).unwrap();
        assert!(close(r.value, n0, 1e-8));
        let r = bessel_orthogonality_numeric(mu, 0, 1, tol).unwrap();
        assert!(r.value.abs() <= 1e-8 * n0);
        let n3 = bessel_norm(mu, 3).unwrap();
        let r = bessel_orthogonality_numeric(mu, 3, 3, Tolerance::relative(1e-10)).unwrap();
        assert!(close(r.value, n3, 1e-8));
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre_eval(0.0, 0, 3.7).unwrap(), 1.0);
        assert_eq!(laguerre_eval(0.0, 1, 1.0).unwrap(), 0.0);
        assert_eq!(laguerre_eval(0.0, 2, 0.0).unwrap(), 1.0);
        assert!(laguerre_eval(-1.0, 2, 0.0).is_err());
    }

    #[test]
    fn laguerre_explicit_degree_two() {
        // L_2^nu(x) = ((nu+1)(nu+2) - 2(nu+2)x + x^2) / 2
        for &nu in &[0.0, 0.5, 2.0] {
            for &x in &[0.0, 0.3, 2.0, 7.5] {
                let want = ((nu + 1.0) * (nu + 2.0) - 2.0 * (nu + 2.0) * x + x * x) / 2.0;
                assert!(close(laguerre_eval(nu, 2, x).unwrap(), want, 1e-14));
            }
        }
    }

    #[test]
    fn laguerre_orthonormal() {
        for &nu in &[0.0, 0.5, 2.0] {
            for n in 0..=10 {
                for m in 0..=n {
                    let an = laguerre_norm_factor(nu, n).unwrap();
                    let am = laguerre_norm_factor(nu, m).unwrap();
                    // y = e^t, weight y^nu e^-y dy = e^{(nu+1)t - e^t} dt
                    let f = |t: f64| {
                        let y = t.exp();
                        let w = ((nu + 1.0) * t - y).exp();
                        if w == 0.0 {
                            return 0.0;
                        }
                        an * am * w * laguerre_eval(nu, n, y).unwrap() * laguerre_eval(nu, m, y).unwrap()
                    };
                    let r = integrate_real_line(f, Tolerance::relative(1e-12).with_abs(1e-13)).unwrap();
                    let want = if n == m { 1.0 } else { 0.0 };
                    assert!((r.value - want).abs() < 1e-10, "nu={nu} n={n} m={m}: {}", r.value);
                }
            }
        }
    }

    #[test]
    fn eval_at_exp_matches_direct() {
        let p = bessel_coeffs(-8.0, 4).unwrap();
        for &t in &[-3.0f64, -0.5, 0.0, 0.7, 4.0] {
            let direct = (-2.0 * t).exp() * p.eval(t.exp());
            assert!(close(p.eval_at_exp(t, -2.0 * t), direct, 1e-13));
        }
        // far tail stays finite
        assert_eq!(p.eval_at_exp(1e4, -20.0 * 1e4), 0.0);
    }

    #[test]
    fn param_sets() {
        assert!(BesselParamSet::new(-8.0, 7).is_ok());
        assert!(BesselParamSet::new(-7.5, 7).is_err());
        assert!(LaguerreParamSet::new(-0.999).is_ok());
        assert!(LaguerreParamSet::new(-1.0).is_err());
    }
}
