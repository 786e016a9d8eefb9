//! Reference spectra from a complete Laguerre basis.
//!
//! With `y = e^(-lambda x)` and basis `A_n y^alpha e^(-y/2) L_n^nu(y)`,
//! `2 alpha = nu + 1`, the basis is orthonormal and the Hamiltonian needs only
//! `<m|y|n>` (tridiagonal, exact) and `<m|1/y|n>`, which is taken from the
//! Gauss rule built on the same tridiagonal matrix. The latter is divergent
//! as an integral at `nu = 0`; the quadrature defines it.

use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{eig_dense_sym, eig_tridiag, DenseSym, SymTridiag};
use crate::error::{Error, Result};
use crate::polynomials::check_laguerre_domain;
use crate::tra::{Method, PotentialParams, Spectrum, SpectrumMeta};

pub const DEFAULT_NU: f64 = 0.0;
pub const DEFAULT_K: usize = 100;
pub const DEFAULT_PLATEAU_TOLERANCE: f64 = 1e-6;

/// Largest tolerated `max |H - H^T|` relative to `max |H|` at construction.
const ASYMMETRY_REL_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaguerreBasisConfig {
    nu: f64,
    k: usize,
}

impl LaguerreBasisConfig {
    pub fn new(nu: f64, k: usize) -> Result<Self> {
        check_laguerre_domain(nu)?;
        if k == 0 {
            return Err(Error::Domain("Laguerre basis size K must be >= 1".into()));
        }
        Ok(Self { nu, k })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `alpha = (nu + 1) / 2`, the orthonormal choice.
    pub fn alpha(&self) -> f64 {
        0.5 * (self.nu + 1.0)
    }
}

impl Default for LaguerreBasisConfig {
    fn default() -> Self {
        Self {
            nu: DEFAULT_NU,
            k: DEFAULT_K,
        }
    }
}

/// `<m|y|n>`: diagonal `2n + nu + 1`, off-diagonal `-sqrt((n+1)(n+nu+1))`.
pub fn laguerre_t_matrix(nu: f64, k: usize) -> Result<SymTridiag> {
    let cfg = LaguerreBasisConfig::new(nu, k)?;
    let diag = (0..cfg.k).map(|n| 2.0 * n as f64 + nu + 1.0).collect();
    let off = (0..cfg.k - 1)
        .map(|n| {
            let nf = n as f64;
            -((nf + 1.0) * (nf + nu + 1.0)).sqrt()
        })
        .collect();
    SymTridiag::new(diag, off)
}

/// Gauss rule from the eigen-decomposition of `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    /// Ascending zeros of `L_K^nu`.
    pub nodes: Vec<f64>,
    /// Row-major `K x K`; entry `(m, k)` is component `m` of the eigenvector
    /// belonging to `nodes[k]`.
    pub vectors: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn lambda(&self, m: usize, k: usize) -> f64 {
        self.vectors[m * self.len() + k]
    }

    /// `sum_k p(xi_k) Lambda_{m,k} Lambda_{n,k}`.
    pub fn matrix_element<F: Fn(f64) -> f64>(&self, p: F, m: usize, n: usize) -> f64 {
        let k = self.len();
        (0..k)
            .map(|j| p(self.nodes[j]) * self.vectors[m * k + j] * self.vectors[n * k + j])
            .sum()
    }
}

pub fn gauss_laguerre_quadrature(nu: f64, k: usize) -> Result<QuadratureRule> {
    let t = laguerre_t_matrix(nu, k)?;
    let eig = eig_tridiag(&t, true)?;
    Ok(QuadratureRule {
        nodes: eig.values,
        vectors: eig.vectors.expect("vectors requested"),
    })
}

/// `<m|1/y|n>` by the Gauss rule.
pub fn inverse_moment_matrix(nu: f64, k: usize) -> Result<DenseSym> {
    inverse_moment_from_rule(&gauss_laguerre_quadrature(nu, k)?)
}

fn inverse_moment_from_rule(rule: &QuadratureRule) -> Result<DenseSym> {
    if let Some(bad) = rule.nodes.iter().find(|&&x| !(x > 0.0)) {
        return Err(Error::Domain(format!("quadrature node {bad} is not positive")));
    }
    let k = rule.len();
    let inv: Vec<f64> = rule.nodes.iter().map(|x| x.recip()).collect();
    DenseSym::from_lower_fn(k, |m, n| {
        (0..k)
            .map(|j| inv[j] * rule.vectors[m * k + j] * rule.vectors[n * k + j])
            .sum()
    })
}

/// Hamiltonian in the orthonormal Laguerre basis, assembled entry by entry.
///
/// The `delta_{m,n-1}` term cancels against the `n`-dependent coefficient of
/// `T`, making the matrix symmetric analytically; the computed matrix is
/// checked, not symmetrized, and an asymmetry beyond rounding is an error.
pub fn laguerre_hamiltonian(p: &PotentialParams, cfg: &LaguerreBasisConfig) -> Result<DenseSym> {
    let nu = cfg.nu;
    let t = laguerre_t_matrix(nu, cfg.k)?;
    let q = inverse_moment_matrix(nu, cfg.k)?;
    let lam2 = p.lambda() * p.lambda();
    let (a_minus, a_plus) = (p.a_minus(), p.a_plus());

    let entry = |m: usize, n: usize| {
        let nf = n as f64;
        let mut v = 0.0;
        if m + 1 == n {
            v -= (nf * (nf + nu)).sqrt();
        }
        if m == n {
            v += nf + 0.25 * (nu + 1.0) * (nu + 1.0);
        }
        v -= (nf + 0.5 * nu + 1.0 - a_minus) * t.get(m, n);
        v -= a_plus * q.get(m, n);
        -0.5 * lam2 * v
    };

    // first pass sizes the tolerance off the matrix scale
    let mut scale: f64 = 0.0;
    for m in 0..cfg.k {
        for n in m.saturating_sub(1)..(m + 2).min(cfg.k) {
            scale = scale.max(entry(m, n).abs());
        }
    }
    let tol = ASYMMETRY_REL_TOLERANCE * scale.max(1.0);
    DenseSym::from_fn(cfg.k, tol, entry)
}

/// Lowest `count` eigenvalues of the Laguerre-basis Hamiltonian.
pub fn laguerre_spectrum(p: &PotentialParams, cfg: &LaguerreBasisConfig, count: usize) -> Result<Spectrum> {
    if count > cfg.k {
        return Err(Error::Domain(format!(
            "requested {count} levels from a basis of size {}",
            cfg.k
        )));
    }
    let h = laguerre_hamiltonian(p, cfg)?;
    let mut eig = eig_dense_sym(&h, false)?;
    eig.values.truncate(count);
    Ok(Spectrum {
        energies: eig.values,
        method: Method::Laguerre,
        meta: SpectrumMeta {
            params: *p,
            basis_size: cfg.k,
            nu: Some(cfg.nu),
            k: Some(cfg.k),
            note: None,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlateauPoint {
    pub nu: f64,
    pub energies: Vec<f64>,
}

/// Sensitivity of the reference spectrum to the free basis parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlateauReport {
    pub k: usize,
    pub tolerance: f64,
    /// One entry per grid value, sorted by `nu`.
    pub points: Vec<PlateauPoint>,
    /// Per level, max minus min across the whole grid.
    pub spread: Vec<f64>,
    /// Widest contiguous `nu` range whose per-level spread stays within
    /// `tolerance`, as `(nu_lo, nu_hi)`.
    pub plateau: Option<(f64, f64)>,
}

impl PlateauReport {
    pub fn max_spread(&self) -> f64 {
        self.spread.iter().fold(0.0, |m, s| m.max(*s))
    }
}

fn level_spread(points: &[PlateauPoint], count: usize) -> Vec<f64> {
    (0..count)
        .map(|lvl| {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), pt| {
                    (lo.min(pt.energies[lvl]), hi.max(pt.energies[lvl]))
                });
            if points.is_empty() {
                0.0
            } else {
                hi - lo
            }
        })
        .collect()
}

/// Solves the reference problem at each `nu` and measures per-level spread.
pub fn plateau_scan(
    p: &PotentialParams,
    nu_grid: &[f64],
    k: usize,
    count: usize,
    tolerance: f64,
) -> Result<PlateauReport> {
    let mut grid = nu_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let points = grid
        .par_iter()
        .map(|&nu| {
            let cfg = LaguerreBasisConfig::new(nu, k)?;
            Ok(PlateauPoint {
                nu,
                energies: laguerre_spectrum(p, &cfg, count)?.energies,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let spread = level_spread(&points, count);

    let mut best: Option<(usize, usize)> = None;
    for start in 0..points.len() {
        for end in start..points.len() {
            let window = &points[start..=end];
            if level_spread(window, count).iter().any(|s| *s > tolerance) {
                break;
            }
            let wider = match best {
                None => true,
                Some((a, b)) => points[end].nu - points[start].nu > points[b].nu - points[a].nu,
            };
            if wider {
                best = Some((start, end));
            }
        }
    }

    Ok(PlateauReport {
        k,
        tolerance,
        plateau: best.map(|(a, b)| (points[a].nu, points[b].nu)),
        points,
        spread,
    })
}
