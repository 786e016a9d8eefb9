//! Self-verification suite run by `expwell verify`.

use serde::Serialize;

use expwell::eigen::{bisect_eigenvalues, eig_tridiag};
use expwell::polynomials::{bessel_identity_residuals, bessel_norm, bessel_orthogonality_numeric};
use expwell::quadrature::{integrate_real_line, Tolerance};
use expwell::refspec::{
    gauss_laguerre_quadrature, laguerre_hamiltonian, laguerre_spectrum, laguerre_t_matrix, plateau_scan,
    LaguerreBasisConfig,
};
use expwell::tra::{
    morse_spectrum, morse_wavefunction_at, tra_expansion_coefficients, tra_hamiltonian, tra_spectrum,
};
use expwell::{PotentialParams, Result};

use crate::reference::{max_deviation, TABLE1, TABLE2, TABLE3, TABLE4};
use crate::{TABLE1_A_MINUS, TABLE1_A_PLUS, TABLE2_A_MINUS, TABLE2_A_PLUS};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub check: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn from_result(name: &str, tolerance: f64, r: Result<f64>) -> Self {
        match r {
            Ok(res) => Check {
                check: name.into(),
                max_residual: res,
                tolerance,
                pass: res <= tolerance,
                detail: None,
            },
            Err(e) => Check {
                check: name.into(),
                max_residual: f64::INFINITY,
                tolerance,
                pass: false,
                detail: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    /// JSON with non-finite residuals written as `null`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn table1_params() -> Result<Vec<PotentialParams>> {
    TABLE1_A_MINUS
        .iter()
        .map(|&am| PotentialParams::new(1.0, am, TABLE1_A_PLUS))
        .collect()
}

fn table2_params() -> Result<Vec<PotentialParams>> {
    TABLE2_A_PLUS
        .iter()
        .map(|&ap| PotentialParams::new(1.0, TABLE2_A_MINUS, ap))
        .collect()
}

fn tra_columns(params: &[PotentialParams]) -> Result<Vec<Vec<f64>>> {
    params.iter().map(|p| Ok(tra_spectrum(p)?.energies)).collect()
}

fn laguerre_columns(params: &[PotentialParams], count: usize) -> Result<Vec<Vec<f64>>> {
    let cfg = LaguerreBasisConfig::new(0.0, 100)?;
    params
        .iter()
        .map(|p| Ok(laguerre_spectrum(p, &cfg, count)?.energies))
        .collect()
}

fn morse_closed_form() -> Result<f64> {
    Ok(max_deviation(&[morse_spectrum(1.0, 6.0).energies], &[TABLE4[0]]))
}

fn identity_suite() -> Result<f64> {
    [-6.5, -8.0, -10.0].iter().try_fold(0.0f64, |m, &mu| {
        Ok(m.max(bessel_identity_residuals(mu, 6)?.worst()))
    })
}

fn bessel_orthogonality() -> Result<f64> {
    let mu = -8.0;
    let norms = (0..=5).map(|n| bessel_norm(mu, n)).collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for n in 0..=5 {
        for m in 0..=n {
            let scale = (norms[n] * norms[m]).sqrt();
            let tol = Tolerance::relative(1e-12).with_abs(1e-12 * scale);
            let got = bessel_orthogonality_numeric(mu, n, m, tol)?.value;
            let want = if n == m { norms[n] } else { 0.0 };
            worst = worst.max((got - want).abs() / scale);
        }
    }
    Ok(worst)
}

fn quadrature_exactness() -> Result<f64> {
    let k = 100;
    let rule = gauss_laguerre_quadrature(0.0, k)?;
    let t = laguerre_t_matrix(0.0, k)?;
    let mut worst = 0.0f64;
    for m in 0..k {
        for n in 0..k {
            let delta = if m == n { 1.0 } else { 0.0 };
            worst = worst
                .max((rule.matrix_element(|x| x, m, n) - t.get(m, n)).abs())
                .max((rule.matrix_element(|_| 1.0, m, n) - delta).abs());
        }
    }
    Ok(worst)
}

fn hamiltonian_symmetry() -> Result<f64> {
    let cfg = LaguerreBasisConfig::new(0.0, 100)?;
    let mut params = table1_params()?;
    params.extend(table2_params()?);
    params.iter().try_fold(0.0f64, |m, p| {
        Ok(m.max(laguerre_hamiltonian(p, &cfg)?.asymmetry()))
    })
}

const PLATEAU_NU: [f64; 5] = [-0.5, 0.0, 0.5, 1.0, 2.0];

fn plateau_spread(k: usize, levels: usize) -> Result<f64> {
    table2_params()?.iter().try_fold(0.0f64, |m, p| {
        Ok(m.max(plateau_scan(p, &PLATEAU_NU, k, levels, 1e-6)?.max_spread()))
    })
}

fn morse_gram() -> Result<f64> {
    let states = (0..=4)
        .map(|n| morse_wavefunction_at(1.0, 6.0, n))
        .collect::<Result<Vec<_>>>()?;
    let tol = Tolerance::relative(1e-12).with_abs(1e-13);
    let mut worst = 0.0f64;
    for n in 0..states.len() {
        for m in 0..=n {
            let (f, g) = (&states[n], &states[m]);
            let overlap = integrate_real_line(|x| f(x) * g(x), tol)?.value;
            let want = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((overlap - want).abs());
        }
    }
    Ok(worst)
}

/// Largest deviation of `v_n / ((-1)^n G_n B_n)` from its value at `n = 0`.
pub fn duality_residual(p: &PotentialParams) -> Result<f64> {
    let eig = eig_tridiag(&tra_hamiltonian(p)?, true)?;
    let mut worst = 0.0f64;
    for (k, &e) in eig.values.iter().enumerate() {
        let v = eig.vector(k).expect("vectors requested");
        let c = tra_expansion_coefficients(p, e)?;
        let ratio: Vec<f64> = v
            .iter()
            .zip(&c)
            .enumerate()
            .map(|(n, (vn, cn))| if n % 2 == 0 { vn / cn } else { -vn / cn })
            .collect();
        for r in &ratio {
            worst = worst.max((r / ratio[0] - 1.0).abs());
        }
    }
    Ok(worst)
}

fn sturm_agreement() -> Result<f64> {
    let mut params = table1_params()?;
    params.extend(table2_params()?.into_iter().filter(|p| !p.is_morse()));
    params.iter().try_fold(0.0f64, |m, p| {
        let h = tra_hamiltonian(p)?;
        let ql = eig_tridiag(&h, false)?.values;
        let bis = bisect_eigenvalues(&h, 1e-13);
        Ok(ql.iter().zip(&bis).fold(m, |m, (a, b)| m.max((a - b).abs())))
    })
}

fn low_level_agreement() -> Result<f64> {
    let p = PotentialParams::new(1.0, 8.0, 2.0)?;
    let tra = tra_spectrum(&p)?.energies;
    let lag = laguerre_spectrum(&p, &LaguerreBasisConfig::new(0.0, 100)?, 4)?.energies;
    Ok(tra.iter().zip(&lag).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

/// Runs every check. Failures are recorded, never raised.
pub fn run_verify() -> VerifyReport {
    let mut checks = vec![
        Check::from_result("morse_closed_form", 1e-12, morse_closed_form()),
        Check::from_result(
            "tra_table1",
            5e-7,
            table1_params()
                .and_then(|p| tra_columns(&p))
                .map(|c| max_deviation(&c, &TABLE1)),
        ),
        Check::from_result(
            "tra_table2",
            5e-7,
            table2_params()
                .and_then(|p| tra_columns(&p[1..]))
                .map(|c| max_deviation(&c, &TABLE2[1..])),
        ),
        Check::from_result(
            "laguerre_table3",
            1e-5,
            table1_params()
                .and_then(|p| laguerre_columns(&p, 8))
                .map(|c| max_deviation(&c, &TABLE3)),
        ),
        Check::from_result(
            "laguerre_table4",
            1e-5,
            table2_params()
                .and_then(|p| laguerre_columns(&p, 6))
                .map(|c| max_deviation(&c, &TABLE4)),
        ),
        Check::from_result("tra_laguerre_low_levels", 1e-5, low_level_agreement()),
        Check::from_result("bessel_identities", 1e-10, identity_suite()),
        Check::from_result("bessel_orthogonality", 1e-8, bessel_orthogonality()),
        Check::from_result("gauss_laguerre_exactness", 1e-12, quadrature_exactness()),
        Check::from_result("hamiltonian_symmetry", 1e-12, hamiltonian_symmetry()),
        Check::from_result("plateau_six_levels", 1e-6, plateau_spread(100, 6)),
        Check::from_result("plateau_lowest_four_levels", 1e-6, plateau_spread(100, 4)),
        Check::from_result("morse_wavefunction_gram", 1e-8, morse_gram()),
        Check::from_result(
            "eigenvector_duality",
            1e-8,
            PotentialParams::new(1.0, 8.0, 2.0).and_then(|p| duality_residual(&p)),
        ),
        Check::from_result("tridiagonal_vs_sturm", 1e-10, sturm_agreement()),
    ];

    // spread at K = 100 relative to K = 20 must be below one
    let narrowing = plateau_spread(100, 6).and_then(|wide| Ok(wide / plateau_spread(20, 6)?));
    checks.push(Check::from_result("plateau_narrows_with_k", 1.0, narrowing));
    if let Some(c) = checks.last_mut() {
        c.pass = c.pass && c.max_residual < 1.0;
    }

    VerifyReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}
