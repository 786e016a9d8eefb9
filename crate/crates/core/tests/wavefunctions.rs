use expwell::eigen::eig_tridiag;
use expwell::tra::{
    morse_wavefunction, tra_expansion_coefficients, tra_hamiltonian, tra_spectrum, tra_wavefunction,
};
use expwell::{PotentialParams, WavefunctionGrid};

fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn fig_params() -> PotentialParams {
    PotentialParams::new(1.0, 8.0, 2.0).unwrap()
}

/// Distances from the main peak to 1% of it, left and right.
fn decay_lengths(g: &WavefunctionGrid) -> (f64, f64) {
    let peak = g.peak();
    let first = g.psi.iter().position(|v| v.abs() >= 0.25 * peak).unwrap();
    let last = g.psi.iter().rposition(|v| v.abs() >= 0.25 * peak).unwrap();
    let l = (0..first).rev().find(|&i| g.psi[i].abs() < 0.01 * peak).unwrap();
    let r = (last..g.psi.len())
        .find(|&i| g.psi[i].abs() < 0.01 * peak)
        .unwrap();
    (g.x[first] - g.x[l], g.x[r] - g.x[last])
}

#[test]
fn left_tail_shorter_than_right() {
    let x = grid(-6.0, 12.0, 3601);
    for m in 0..6 {
        let g = tra_wavefunction(&fig_params(), m, &x).unwrap();
        assert!(!g.normalized);
        let (l, r) = decay_lengths(&g);
        assert!(l < r, "state {m}: left {l}, right {r}");
    }
}

#[test]
fn vanishes_at_grid_extremes() {
    let x = grid(-8.0, 8.0, 1601);
    for m in 0..5 {
        let g = tra_wavefunction(&fig_params(), m, &x).unwrap();
        let peak = g.peak();
        assert!(g.psi[0].abs() < 1e-6 * peak, "state {m}");
        assert!(g.psi[x.len() - 1].abs() < 1e-6 * peak, "state {m}");
    }
    // the top state's right tail is a power law in e^(lambda x) and needs more room
    let g = tra_wavefunction(&fig_params(), 5, &grid(-8.0, 10.0, 1801)).unwrap();
    assert!(g.psi[1800].abs() < 1e-6 * g.peak());
}

#[test]
fn coefficients_proportional_to_eigenvectors_for_upper_states() {
    // lower states have components spanning ~14 decades; their trailing
    // G_n B_n are dominated by rounding in the forward recursion
    let p = fig_params();
    let eig = eig_tridiag(&tra_hamiltonian(&p).unwrap(), true).unwrap();
    for k in 4..eig.values.len() {
        let v = eig.vector(k).unwrap();
        let c = tra_expansion_coefficients(&p, eig.values[k]).unwrap();
        let r0 = v[0] / c[0];
        for n in 0..v.len() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let r = sign * v[n] / c[n];
            assert!((r / r0 - 1.0).abs() < 1e-8, "state {k}, component {n}");
        }
    }
}

#[test]
fn coefficients_match_eigenvectors_normwise() {
    let p = PotentialParams::new(1.0, 6.0, 4.0).unwrap();
    let eig = eig_tridiag(&tra_hamiltonian(&p).unwrap(), true).unwrap();
    for k in 2..eig.values.len() {
        let v = eig.vector(k).unwrap();
        let c = tra_expansion_coefficients(&p, eig.values[k]).unwrap();
        let s: Vec<f64> = c
            .iter()
            .enumerate()
            .map(|(n, x)| if n % 2 == 0 { *x } else { -x })
            .collect();
        let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dot: f64 = v.iter().zip(&s).map(|(a, b)| a * b).sum::<f64>() / norm;
        let dev = v
            .iter()
            .zip(&s)
            .fold(0.0f64, |m, (a, b)| m.max((a - dot * b / norm).abs()));
        assert!(dev < 1e-8, "state {k}: {dev:e}");
    }
}

#[test]
fn normalization_makes_unit_norm() {
    let x = grid(-6.0, 12.0, 3601);
    let mut g = tra_wavefunction(&fig_params(), 2, &x).unwrap();
    g.normalize_trapezoid(1.0);
    assert!(g.normalized);
    let h = x[1] - x[0];
    let s: f64 = g.psi.iter().map(|v| v * v).sum::<f64>() * h;
    assert!((s - 1.0).abs() < 1e-6);
}

#[test]
fn morse_states_match_spectrum_ordering() {
    let x = grid(-8.0, 20.0, 2801);
    let energies = tra_spectrum(&PotentialParams::new(1.0, 6.0, 0.0).unwrap())
        .unwrap()
        .energies;
    for (n, e) in energies.iter().enumerate() {
        let g = morse_wavefunction(1.0, 6.0, n, &x).unwrap();
        assert_eq!(g.energy, *e);
        assert_eq!(g.node_count(1e-6), n);
    }
}

#[test]
fn state_index_checked() {
    let x = grid(-1.0, 1.0, 3);
    assert!(tra_wavefunction(&fig_params(), 7, &x).is_err());
    assert!(tra_wavefunction(&PotentialParams::new(1.0, 8.0, 0.0).unwrap(), 0, &x).is_err());
    assert!(morse_wavefunction(1.0, 6.0, 6, &x).is_err());
}
