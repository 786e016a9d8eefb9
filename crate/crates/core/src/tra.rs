//! Tridiagonal representation of the exponentially confining well
//!
//! `V(x) = (lambda^2 / 2) (e^(-2 lambda x) / 4 - A- e^(-lambda x) + A+ e^(lambda x))`.
//!
//! With `y = e^(lambda x)` the basis `G_n y^(mu + 1/2) e^(-1/(2y)) J_n^mu(y)`,
//! `mu = -A-`, turns the wave equation into a three-term recursion whose
//! Jacobi matrix, scaled by `lambda^2 A+ / 8`, is the Hamiltonian in that
//! basis. `A+ = 0` reduces to the Morse potential, whose representation is
//! diagonal.

use serde::Serialize;

use crate::eigen::{eig_tridiag, SymTridiag};
use crate::error::{Error, Result};
use crate::polynomials::{bessel_coeffs, bessel_gn, Poly};

/// Below this `A+` the tridiagonal route is replaced by the Morse closed form.
pub const MORSE_THRESHOLD: f64 = 1e-12;

/// Physical parameters of the well, atomic units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialParams {
    lambda: f64,
    a_minus: f64,
    a_plus: f64,
}

impl PotentialParams {
    pub fn new(lambda: f64, a_minus: f64, a_plus: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda == 0.0 {
            return Err(Error::Domain(format!(
                "lambda must be finite and nonzero, got {lambda}"
            )));
        }
        if !a_minus.is_finite() {
            return Err(Error::Domain(format!("A- must be finite, got {a_minus}")));
        }
        if !a_plus.is_finite() || a_plus < 0.0 {
            return Err(Error::Domain(format!("A+ must be finite and >= 0, got {a_plus}")));
        }
        Ok(Self {
            lambda,
            a_minus,
            a_plus,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn a_minus(&self) -> f64 {
        self.a_minus
    }

    pub fn a_plus(&self) -> f64 {
        self.a_plus
    }

    pub fn is_morse(&self) -> bool {
        self.a_plus < MORSE_THRESHOLD
    }

    /// `V(x)`. Overflows to `+inf` far out on either wall.
    pub fn potential(&self, x: f64) -> f64 {
        let lx = self.lambda * x;
        let em = (-lx).exp();
        // factored so that a huge e^(-lambda x) gives +inf, not inf - inf
        let mut inner = em * (0.25 * em - self.a_minus);
        if self.a_plus != 0.0 {
            inner += self.a_plus * lx.exp();
        }
        0.5 * self.lambda * self.lambda * inner
    }
}

pub fn potential_value(p: &PotentialParams, x: f64) -> f64 {
    p.potential(x)
}

/// Number of Bessel basis functions usable for a given `A-`:
/// the largest `D` with `D + 1/2 < A-`, or zero.
pub fn tra_capacity(a_minus: f64) -> usize {
    if !(a_minus > 0.5) {
        return 0;
    }
    let mut d = (a_minus - 0.5).floor();
    if d + 0.5 >= a_minus {
        d -= 1.0;
    }
    d.max(0.0) as usize
}

/// Derived basis bookkeeping for a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraConfig {
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub capacity: usize,
    /// `-4 / A+`; absent on the Morse branch.
    pub gamma: Option<f64>,
}

impl TraConfig {
    pub fn new(p: &PotentialParams) -> Self {
        let mu = -p.a_minus;
        Self {
            mu,
            alpha: mu + 0.5,
            beta: 0.5,
            capacity: tra_capacity(p.a_minus),
            gamma: (!p.is_morse()).then(|| -4.0 / p.a_plus),
        }
    }
}

/// Diagonal `a_n` and, when `n + 1 < D`, off-diagonal `b_n` of the recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionCoeffs {
    pub a: f64,
    pub b: Option<f64>,
}

fn diag_coeff(mu: f64, gamma: f64, n: usize) -> f64 {
    let nf = n as f64;
    -2.0 * mu / ((nf + mu) * (nf + mu + 1.0)) + gamma * (nf + mu + 0.5).powi(2)
}

fn offdiag_coeff(mu: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    let radicand = -(nf + 1.0) * (nf + 2.0 * mu + 1.0) / ((nf + mu + 0.5) * (nf + mu + 1.5));
    if !(radicand > 0.0) || !radicand.is_finite() {
        return Err(Error::Domain(format!(
            "b_{n} radicand {radicand} is not positive; mu = {mu} exceeds the basis capacity"
        )));
    }
    Ok(-radicand.sqrt() / (nf + mu + 1.0))
}

pub fn tra_recursion_coeffs(p: &PotentialParams, n: usize) -> Result<RecursionCoeffs> {
    let cfg = TraConfig::new(p);
    let gamma = cfg.gamma.ok_or(Error::MorseBranch(p.a_plus))?;
    if n >= cfg.capacity {
        return Err(Error::OutOfRange {
            index: n,
            len: cfg.capacity,
        });
    }
    let b = if n + 1 < cfg.capacity {
        Some(offdiag_coeff(cfg.mu, n)?)
    } else {
        None
    };
    Ok(RecursionCoeffs {
        a: diag_coeff(cfg.mu, gamma, n),
        b,
    })
}

/// `B_0(z), ..., B_{count-1}(z)` from the forward recursion with
/// `B_0 = 1`, `B_{-1} = 0`.
pub fn b_poly_sequence(mu: f64, gamma: f64, z: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let bound = -(count as f64 - 1.0) - 0.5;
    if !(mu < bound) {
        return Err(Error::Domain(format!(
            "B_n up to degree {} needs mu < {bound}, got {mu}",
            count - 1
        )));
    }
    let mut values = Vec::with_capacity(count);
    values.push(1.0);
    let mut prev = 0.0;
    for n in 0..count - 1 {
        let nf = n as f64;
        let lower = nf / ((nf + mu) * (nf + mu + 0.5));
        let upper = (nf + 2.0 * mu + 1.0) / ((nf + mu + 1.0) * (nf + mu + 0.5));
        let cur = values[n];
        let next = ((z - diag_coeff(mu, gamma, n)) * cur + lower * prev) / upper;
        prev = cur;
        values.push(next);
    }
    Ok(values)
}

/// The bare Jacobi matrix of `(a_n, b_n)`, without the energy prefactor.
pub fn tra_jacobi_matrix(p: &PotentialParams) -> Result<SymTridiag> {
    let cfg = TraConfig::new(p);
    let gamma = cfg.gamma.ok_or(Error::MorseBranch(p.a_plus))?;
    if cfg.capacity == 0 {
        return Err(Error::EmptySpectrum(format!(
            "A- = {} leaves no Bessel basis functions (need A- > 3/2)",
            p.a_minus
        )));
    }
    let diag = (0..cfg.capacity).map(|n| diag_coeff(cfg.mu, gamma, n)).collect();
    let off = (0..cfg.capacity - 1)
        .map(|n| offdiag_coeff(cfg.mu, n))
        .collect::<Result<Vec<_>>>()?;
    SymTridiag::new(diag, off)
}

/// `lambda^2 A+ / 8`, converting eigenvalues `z = 4 eps / A+` to energies.
pub fn energy_scale(p: &PotentialParams) -> f64 {
    p.lambda * p.lambda * p.a_plus / 8.0
}

/// Hamiltonian matrix in the Bessel basis.
pub fn tra_hamiltonian(p: &PotentialParams) -> Result<SymTridiag> {
    Ok(tra_jacobi_matrix(p)?.scaled(energy_scale(p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Tra,
    Morse,
    Laguerre,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Tra => "tra",
            Method::Morse => "morse",
            Method::Laguerre => "laguerre",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumMeta {
    pub params: PotentialParams,
    pub basis_size: usize,
    pub nu: Option<f64>,
    pub k: Option<usize>,
    pub note: Option<String>,
}

/// Bound-state energies in ascending order, with where they came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub energies: Vec<f64>,
    pub method: Method,
    pub meta: SpectrumMeta,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
}

/// Lowest energies from the Bessel-basis Hamiltonian, or the Morse closed form
/// when `A+` vanishes.
pub fn tra_spectrum(p: &PotentialParams) -> Result<Spectrum> {
    if p.is_morse() {
        return Ok(morse_spectrum(p.lambda, p.a_minus));
    }
    let capacity = tra_capacity(p.a_minus);
    let meta = |note: Option<String>| SpectrumMeta {
        params: *p,
        basis_size: capacity,
        nu: None,
        k: None,
        note,
    };
    if capacity == 0 {
        return Ok(Spectrum {
            energies: Vec::new(),
            method: Method::Tra,
            meta: meta(Some(format!(
                "A- = {} admits no Bessel basis functions (need A- > 3/2)",
                p.a_minus
            ))),
        });
    }
    let eig = eig_tridiag(&tra_hamiltonian(p)?, false)?;
    Ok(Spectrum {
        energies: eig.values,
        method: Method::Tra,
        meta: meta(None),
    })
}

/// Morse-limit energies `-(lambda^2/2)(n - A- + 1/2)^2` for `n < A- - 1/2`.
pub fn morse_spectrum(lambda: f64, a_minus: f64) -> Spectrum {
    let count = morse_level_count(a_minus);
    let energies = (0..count)
        .map(|n| -0.5 * lambda * lambda * (n as f64 - a_minus + 0.5).powi(2))
        .collect::<Vec<_>>();
    let note = (count == 0).then(|| format!("A- = {a_minus}: no bound states below A- = 1/2"));
    Spectrum {
        energies,
        method: Method::Morse,
        meta: SpectrumMeta {
            params: PotentialParams {
                lambda,
                a_minus,
                a_plus: 0.0,
            },
            basis_size: count,
            nu: None,
            k: None,
            note,
        },
    }
}

/// Number of Morse states strictly below threshold; the zero-energy state at
/// integer `A- - 1/2` is not counted.
pub fn morse_level_count(a_minus: f64) -> usize {
    if !(a_minus > 0.5) {
        return 0;
    }
    let top = a_minus - 0.5;
    let mut n = top.ceil() as usize;
    while n > 0 && (n as f64) >= top {
        n -= 1;
    }
    // n is now the largest index strictly below top
    n + 1
}

/// Sampled wavefunction of one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionGrid {
    pub x: Vec<f64>,
    pub psi: Vec<f64>,
    pub energy: f64,
    pub normalized: bool,
}

impl WavefunctionGrid {
    pub fn peak(&self) -> f64 {
        self.psi.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    /// Number of sign changes, ignoring samples below `floor * peak`.
    pub fn node_count(&self, floor: f64) -> usize {
        let cut = floor * self.peak();
        let mut last = 0.0f64;
        let mut nodes = 0;
        for &v in &self.psi {
            if v.abs() <= cut {
                continue;
            }
            if last != 0.0 && v.signum() != last.signum() {
                nodes += 1;
            }
            last = v;
        }
        nodes
    }

    /// Rescales `psi` so that `lambda * int psi^2 dx = 1` by the trapezoid rule.
    pub fn normalize_trapezoid(&mut self, lambda: f64) {
        let norm = lambda.abs() * trapezoid(&self.x, |i| self.psi[i] * self.psi[i]);
        if norm > 0.0 && norm.is_finite() {
            let s = norm.sqrt().recip();
            self.psi.iter_mut().for_each(|v| *v *= s);
            self.normalized = true;
        }
    }
}

pub(crate) fn trapezoid<F: Fn(usize) -> f64>(x: &[f64], f: F) -> f64 {
    (1..x.len())
        .map(|i| 0.5 * (x[i] - x[i - 1]) * (f(i) + f(i - 1)))
        .sum()
}

/// Evaluates `exp((1/2 - A-) lambda x - e^(-lambda x) / 2) * poly(e^(lambda x))`.
fn bessel_envelope_eval(poly: &Poly, lambda: f64, a_minus: f64, x: f64) -> f64 {
    let t = lambda * x;
    let log_env = (0.5 - a_minus) * t - 0.5 * (-t).exp();
    if log_env == f64::NEG_INFINITY {
        return 0.0;
    }
    poly.eval_at_exp(t, log_env)
}

/// Morse eigenfunction `G_n y^(1/2 - A-) e^(-1/(2y)) J_n^(-A-)(y)`, `y = e^(lambda x)`.
pub fn morse_wavefunction(lambda: f64, a_minus: f64, n: usize, xgrid: &[f64]) -> Result<WavefunctionGrid> {
    let count = morse_level_count(a_minus);
    if n >= count {
        return Err(Error::OutOfRange { index: n, len: count });
    }
    let mu = -a_minus;
    let poly = bessel_coeffs(mu, n)?.scale(bessel_gn(mu, n)?);
    Ok(WavefunctionGrid {
        x: xgrid.to_vec(),
        psi: xgrid
            .iter()
            .map(|&x| bessel_envelope_eval(&poly, lambda, a_minus, x))
            .collect(),
        energy: -0.5 * lambda * lambda * (n as f64 - a_minus + 0.5).powi(2),
        normalized: true,
    })
}

/// Pointwise Morse eigenfunction, for quadrature.
pub fn morse_wavefunction_at(lambda: f64, a_minus: f64, n: usize) -> Result<impl Fn(f64) -> f64> {
    let count = morse_level_count(a_minus);
    if n >= count {
        return Err(Error::OutOfRange { index: n, len: count });
    }
    let mu = -a_minus;
    let poly = bessel_coeffs(mu, n)?.scale(bessel_gn(mu, n)?);
    Ok(move |x: f64| bessel_envelope_eval(&poly, lambda, a_minus, x))
}

/// Expansion coefficients `G_n B_n(4 eps / A+; -4 / A+)`, `eps = 2E / lambda^2`.
pub fn tra_expansion_coefficients(p: &PotentialParams, energy: f64) -> Result<Vec<f64>> {
    let cfg = TraConfig::new(p);
    let gamma = cfg.gamma.ok_or(Error::MorseBranch(p.a_plus))?;
    if cfg.capacity == 0 {
        return Err(Error::EmptySpectrum(format!(
            "A- = {} admits no Bessel basis functions",
            p.a_minus
        )));
    }
    let eps = 2.0 * energy / (p.lambda * p.lambda);
    let z = 4.0 * eps / p.a_plus;
    let b = b_poly_sequence(cfg.mu, gamma, z, cfg.capacity)?;
    b.iter()
        .enumerate()
        .map(|(n, bn)| Ok(bessel_gn(cfg.mu, n)? * bn))
        .collect()
}

/// The polynomial `sum_n c_n J_n^mu(y)` multiplying the basis envelope.
fn tra_series_poly(p: &PotentialParams, energy: f64) -> Result<Poly> {
    let mu = -p.a_minus;
    let coeffs = tra_expansion_coefficients(p, energy)?;
    coeffs.iter().enumerate().try_fold(Poly::zero(), |acc, (n, c)| {
        Ok(acc.add(&bessel_coeffs(mu, n)?.scale(*c)))
    })
}

/// Un-normalized wavefunction for an arbitrary energy.
pub fn tra_wavefunction_at_energy(
    p: &PotentialParams,
    energy: f64,
    xgrid: &[f64],
) -> Result<WavefunctionGrid> {
    let poly = tra_series_poly(p, energy)?;
    Ok(WavefunctionGrid {
        x: xgrid.to_vec(),
        psi: xgrid
            .iter()
            .map(|&x| bessel_envelope_eval(&poly, p.lambda, p.a_minus, x))
            .collect(),
        energy,
        normalized: false,
    })
}

/// Un-normalized wavefunction of state `m` at its Bessel-basis energy.
pub fn tra_wavefunction(p: &PotentialParams, m: usize, xgrid: &[f64]) -> Result<WavefunctionGrid> {
    if p.is_morse() {
        return Err(Error::MorseBranch(p.a_plus));
    }
    let spectrum = tra_spectrum(p)?;
    let energy = *spectrum.energies.get(m).ok_or(Error::OutOfRange {
        index: m,
        len: spectrum.len(),
    })?;
    tra_wavefunction_at_energy(p, energy, xgrid)
}
