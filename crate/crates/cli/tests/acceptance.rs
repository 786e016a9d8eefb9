//! Acceptance criteria, one test each. Every test writes a single
//! `criterion N ... PASS|FAIL` line straight to stdout (bypassing capture)
//! before asserting.

use std::io::Write;

use expwell::eigen::eig_tridiag;
use expwell::polynomials::{bessel_identity_residuals, bessel_orthogonality_numeric, BesselIdentity};
use expwell::quadrature::Tolerance;
use expwell::refspec::{
    gauss_laguerre_quadrature, laguerre_hamiltonian, laguerre_spectrum, plateau_scan, LaguerreBasisConfig,
};
use expwell::tra::{
    morse_spectrum, morse_wavefunction, tra_expansion_coefficients, tra_hamiltonian, tra_spectrum,
};
use expwell::PotentialParams;

const TABLE1: [(f64, &[f64]); 3] = [
    (
        8.0,
        &[
            -28.053627, -21.029931, -14.992219, -9.927105, -5.801982, -2.518657, 0.948521,
        ],
    ),
    (6.0, &[-15.025220, -9.975990, -5.880414, -2.662228, 0.418853]),
    (4.0, &[-5.960092, -2.808535, -0.106373]),
];

const TABLE2: [(f64, &[f64]); 4] = [
    (0.0, &[-15.125000, -10.125000, -6.125000, -3.125000, -1.125000]),
    (4.0, &[-14.925872, -9.828860, -5.645103, -2.229669, 2.004504]),
    (8.0, &[-14.728422, -9.539719, -5.195514, -1.374691, 5.213347]),
    (12.0, &[-14.532562, -9.256701, -4.765950, -0.509143, 8.439356]),
];

const TABLE3: [(f64, &[f64]); 3] = [
    (
        8.0,
        &[
            -28.053627, -21.029931, -14.992219, -9.927105, -5.801990, -2.530695, 0.093216, 2.391258,
        ],
    ),
    (
        6.0,
        &[
            -15.025220, -9.975990, -5.880416, -2.667212, -0.146643, 2.014391, 4.103609, 6.224812,
        ],
    ),
    (
        4.0,
        &[
            -5.960092, -2.809728, -0.410359, 1.581097, 3.496007, 5.470629, 7.493054, 9.682386,
        ],
    ),
];

const TABLE4: [(f64, &[f64]); 4] = [
    (
        0.0,
        &[-15.125000, -10.125000, -6.125000, -3.125000, -1.125000, -0.125000],
    ),
    (
        4.0,
        &[-14.925872, -9.828860, -5.645149, -2.262598, 0.549743, 3.095928],
    ),
    (
        8.0,
        &[-14.728422, -9.539720, -5.196474, -1.542214, 1.669961, 4.694312],
    ),
    (
        12.0,
        &[-14.532562, -9.256705, -4.770689, -0.896463, 2.607619, 5.962793],
    ),
];

fn report(id: u32, name: &str, measured: f64, tolerance: f64, pass: bool) {
    let line = format!(
        "criterion {id:>2} {name:<40} measured {measured:.3e} tolerance {tolerance:.1e} {}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.1e}")).collect::<Vec<_>>().join(" ")
}

fn params(a_minus: f64, a_plus: f64) -> PotentialParams {
    PotentialParams::new(1.0, a_minus, a_plus).unwrap()
}

fn deviation(computed: &[f64], printed: &[f64]) -> f64 {
    if computed.len() < printed.len() {
        return f64::INFINITY;
    }
    printed
        .iter()
        .zip(computed)
        .fold(0.0, |m, (p, c)| m.max((p - c).abs()))
}

fn laguerre_k100(p: &PotentialParams, count: usize) -> Vec<f64> {
    let cfg = LaguerreBasisConfig::new(0.0, 100).unwrap();
    laguerre_spectrum(p, &cfg, count).unwrap().energies
}

#[test]
fn criterion_01_morse_closed_form() {
    let tol = 1e-12;
    let e = morse_spectrum(1.0, 6.0).energies;
    let printed = TABLE4[0].1;
    let dev = if e.len() == printed.len() {
        deviation(&e, printed)
    } else {
        f64::INFINITY
    };
    let pass = dev <= tol;
    report(1, "Morse closed form, A- = 6", dev, tol, pass);
    assert!(pass, "levels {e:?}");
}

#[test]
fn criterion_02_tra_tables() {
    let tol = 5e-7;
    let mut worst = 0.0f64;
    for (a_minus, printed) in TABLE1 {
        let e = tra_spectrum(&params(a_minus, 2.0)).unwrap().energies;
        assert_eq!(e.len(), printed.len(), "row count, A- = {a_minus}");
        worst = worst.max(deviation(&e, printed));
    }
    for (a_plus, printed) in &TABLE2[1..] {
        let e = tra_spectrum(&params(6.0, *a_plus)).unwrap().energies;
        assert_eq!(e.len(), printed.len(), "row count, A+ = {a_plus}");
        worst = worst.max(deviation(&e, printed));
    }
    let pass = worst <= tol;
    report(2, "Bessel-basis tables", worst, tol, pass);
    assert!(pass);
}

#[test]
fn criterion_03_laguerre_tables() {
    let tol = 1e-5;
    let mut worst = 0.0f64;
    for (a_minus, printed) in TABLE3 {
        worst = worst.max(deviation(&laguerre_k100(&params(a_minus, 2.0), 8), printed));
    }
    for (a_plus, printed) in TABLE4 {
        worst = worst.max(deviation(&laguerre_k100(&params(6.0, a_plus), 6), printed));
    }
    let pass = worst <= tol;
    report(3, "Laguerre-basis tables, K = 100", worst, tol, pass);
    assert!(pass);
}

#[test]
fn criterion_04_cross_method_degradation() {
    let p = params(8.0, 2.0);
    let tra = tra_spectrum(&p).unwrap().energies;
    let lag = laguerre_k100(&p, 7);
    let diff: Vec<f64> = tra.iter().zip(&lag).map(|(a, b)| (a - b).abs()).collect();
    let low = diff[..=3].iter().cloned().fold(0.0, f64::max);
    let pass = low < 1e-5 && diff[6] > 1e-3;
    report(4, "low levels agree, n = 6 degraded", low, 1e-5, pass);
    assert!(pass, "differences {diff:?}");
}

#[test]
fn criterion_05_identity_suite() {
    let tol = 1e-10;
    let mut worst = 0.0f64;
    for mu in [-6.5, -8.0, -10.0] {
        let r = bessel_identity_residuals(mu, 6).unwrap();
        for id in BesselIdentity::ALL {
            let covered = r.residuals.iter().filter(|x| x.identity == id).count();
            assert!(covered > 0, "{} missing at mu = {mu}", id.name());
        }
        worst = worst.max(r.worst());
    }
    let pass = worst <= tol;
    report(5, "Bessel polynomial identities", worst, tol, pass);
    assert!(pass);
}

/// `-n! Gamma(-n - 2 mu) / (2n + 2mu + 1)` at integer `mu`, by factorials.
fn norm_oracle(mu: i32, n: u32) -> f64 {
    let fact = |k: u32| (1..=k).fold(1.0f64, |a, b| a * b as f64);
    let gamma_arg = (-(n as i32) - 2 * mu) as u32;
    -fact(n) * fact(gamma_arg - 1) / (2 * n as i32 + 2 * mu + 1) as f64
}

#[test]
fn criterion_06_orthogonality() {
    let tol = 1e-8;
    let mut worst = 0.0f64;
    for n in 0..=5u32 {
        for m in 0..=5u32 {
            let scale = (norm_oracle(-8, n) * norm_oracle(-8, m)).sqrt();
            let t = Tolerance::relative(1e-12).with_abs(1e-12 * scale);
            let v = bessel_orthogonality_numeric(-8.0, n as usize, m as usize, t)
                .unwrap()
                .value;
            let want = if n == m { norm_oracle(-8, n) } else { 0.0 };
            worst = worst.max((v - want).abs() / scale);
        }
    }
    let pass = worst <= tol;
    report(6, "Bessel Gram matrix, mu = -8", worst, tol, pass);
    assert!(pass);
}

#[test]
fn criterion_07_quadrature_exactness() {
    let tol = 1e-12;
    let k = 100;
    let rule = gauss_laguerre_quadrature(0.0, k).unwrap();
    let t = |m: usize, n: usize| -> f64 {
        if m == n {
            2.0 * n as f64 + 1.0
        } else if m.abs_diff(n) == 1 {
            -(m.max(n) as f64)
        } else {
            0.0
        }
    };
    let mut worst = 0.0f64;
    for m in 0..k {
        for n in 0..k {
            let (mut y, mut one) = (0.0, 0.0);
            for j in 0..k {
                let w = rule.lambda(m, j) * rule.lambda(n, j);
                y += rule.nodes[j] * w;
                one += w;
            }
            let delta = if m == n { 1.0 } else { 0.0 };
            worst = worst.max((y - t(m, n)).abs()).max((one - delta).abs());
        }
    }
    let pass = worst <= tol;
    report(7, "Gauss rule reproduces T and identity", worst, tol, pass);
    assert!(pass);
}

#[test]
fn criterion_08_hamiltonian_symmetry() {
    let tol = 1e-12;
    let cfg = LaguerreBasisConfig::new(0.0, 100).unwrap();
    let sets = TABLE3
        .iter()
        .map(|(am, _)| params(*am, 2.0))
        .chain(TABLE4.iter().map(|(ap, _)| params(6.0, *ap)));
    let mut worst = 0.0f64;
    for p in sets {
        let h = laguerre_hamiltonian(&p, &cfg).unwrap();
        for i in 0..h.dim() {
            for j in 0..i {
                worst = worst.max((h.get(i, j) - h.get(j, i)).abs());
            }
        }
    }
    let pass = worst <= tol;
    report(8, "Laguerre Hamiltonian symmetry", worst, tol, pass);
    assert!(pass);
}

#[test]
fn criterion_09_plateau_of_stability() {
    let tol = 1e-6;
    let nu = [-0.5, 0.0, 0.5, 1.0, 2.0];
    let (mut wide, mut narrow) = (0.0f64, 0.0f64);
    for (a_plus, _) in TABLE4 {
        let p = params(6.0, a_plus);
        wide = wide.max(plateau_scan(&p, &nu, 100, 6, tol).unwrap().max_spread());
        narrow = narrow.max(plateau_scan(&p, &nu, 20, 6, tol).unwrap().max_spread());
    }
    let pass = wide <= tol && narrow > wide;
    report(9, "nu-independence at K = 100, six levels", wide, tol, pass);
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "             spread K = 20: {narrow:.3e}, K = 100: {wide:.3e}"
    );
    drop(out);
    assert!(pass, "K = 100 spread {wide:e}, K = 20 spread {narrow:e}");
}

#[test]
fn criterion_10_morse_orthonormality() {
    let tol = 1e-8;
    // trapezoid sums converge geometrically for these smooth, fast-decaying integrands
    let h = 0.005;
    let x: Vec<f64> = (0..=(33.0 / h) as usize).map(|i| -8.0 + h * i as f64).collect();
    let psi: Vec<Vec<f64>> = (0..=4)
        .map(|n| morse_wavefunction(1.0, 6.0, n, &x).unwrap().psi)
        .collect();
    let mut worst = 0.0f64;
    for n in 0..=4 {
        for m in 0..=4 {
            let s: f64 = psi[n].iter().zip(&psi[m]).map(|(a, b)| a * b).sum::<f64>() * h;
            let want = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((s - want).abs());
        }
    }
    let pass = worst <= tol;
    report(10, "Morse eigenfunction Gram matrix", worst, tol, pass);
    assert!(pass);
}

#[test]
fn criterion_11_eigenvector_recursion_duality() {
    let tol = 1e-8;
    let p = params(8.0, 2.0);
    let eig = eig_tridiag(&tra_hamiltonian(&p).unwrap(), true).unwrap();
    let mut worst = 0.0f64;
    let mut per_state = Vec::new();
    for (k, &e) in eig.values.iter().enumerate() {
        let v = eig.vector(k).unwrap();
        let c = tra_expansion_coefficients(&p, e).unwrap();
        // the symmetric matrix carries +b_n off the diagonal, so components alternate in sign
        let ratio: Vec<f64> = (0..v.len())
            .map(|n| v[n] / c[n] * if n % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let dev = ratio
            .iter()
            .fold(0.0f64, |m, r| m.max((r / ratio[0] - 1.0).abs()));
        per_state.push(dev);
        worst = worst.max(dev);
    }
    let pass = worst <= tol;
    report(11, "eigenvector proportional to G_n B_n", worst, tol, pass);
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "             per-state ratio deviation: {}",
        fmt_list(&per_state)
    );
    drop(out);
    assert!(pass, "per-state deviation {}", fmt_list(&per_state));
}

#[test]
fn criterion_12_tables_byte_identical() {
    let dirs: Vec<_> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    let first = expwell_cli::cmd_tables(dirs[0].path()).unwrap();
    expwell_cli::cmd_tables(dirs[1].path()).unwrap();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_expwell"))
        .args(["tables", "--out"])
        .arg(dirs[2].path())
        .output()
        .unwrap();
    assert!(status.status.success());
    let mut differing = 0usize;
    for path in &first {
        let name = path.file_name().unwrap();
        let x = std::fs::read(path).unwrap();
        for d in &dirs[1..] {
            if std::fs::read(d.path().join(name)).unwrap() != x {
                differing += 1;
            }
        }
    }
    let pass = differing == 0 && first.len() == 4;
    report(
        12,
        "tables byte-identical across runs",
        differing as f64,
        0.0,
        pass,
    );
    assert!(pass);
}
