//! Symmetric eigensolvers.
//!
//! Tridiagonal matrices go through implicit-shift QL with a Wilkinson shift;
//! dense symmetric matrices are first reduced by Householder reflections. A
//! Sturm-sequence bisection solver is kept alongside as an independent check
//! of the QL path.

use serde::Serialize;

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: `diag` has length `D`, `off` length `D - 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymTridiag {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidMatrix("tridiagonal matrix needs D >= 1".into()));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::InvalidMatrix(format!(
                "off-diagonal length {} does not match diagonal length {}",
                off.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite tridiagonal entry".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Entry `(i, j)`; zero outside the three central bands.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.off[i.min(j)],
            _ => 0.0,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            diag: self.diag.iter().map(|d| d * factor).collect(),
            off: self.off.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn to_dense(&self) -> DenseSym {
        let n = self.dim();
        DenseSym::from_lower_fn(n, |i, j| self.get(i, j)).expect("tridiagonal entries are finite")
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }
}

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSym {
    n: usize,
    data: Vec<f64>,
    asymmetry: f64,
}

impl DenseSym {
    /// Evaluates `f` on the lower triangle and mirrors it, so the result is
    /// exactly symmetric.
    pub fn from_lower_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix needs dimension >= 1".into()));
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self::checked(n, data, 0.0)
    }

    /// Evaluates `f` on every entry and rejects the matrix if
    /// `max |A - A^T|` exceeds `tolerance`. Entries are kept as evaluated.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, tolerance: f64, mut f: F) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix needs dimension >= 1".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::checked(n, data, tolerance)
    }

    fn checked(n: usize, data: Vec<f64>, tolerance: f64) -> Result<Self> {
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite matrix entry".into()));
        }
        let mut asymmetry: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                asymmetry = asymmetry.max((data[i * n + j] - data[j * n + i]).abs());
            }
        }
        if asymmetry > tolerance {
            return Err(Error::Asymmetric {
                max_asymmetry: asymmetry,
                tolerance,
            });
        }
        Ok(Self { n, data, asymmetry })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_lower_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// `max |A - A^T|` measured at construction.
    pub fn asymmetry(&self) -> f64 {
        self.asymmetry
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `A v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// Eigenvalues in ascending order, with optional eigenvectors.
///
/// Eigenvectors are stored row-major as a `D x D` matrix whose column `k`
/// belongs to `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigResult {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<f64>>,
}

impl EigResult {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Component `i` of eigenvector `k`.
    pub fn vector_component(&self, i: usize, k: usize) -> Option<f64> {
        let n = self.dim();
        self.vectors.as_ref().map(|v| v[i * n + k])
    }

    pub fn vector(&self, k: usize) -> Option<Vec<f64>> {
        let n = self.dim();
        self.vectors
            .as_ref()
            .map(|v| (0..n).map(|i| v[i * n + k]).collect())
    }

    fn sort_ascending(&mut self) {
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        // sort_by is stable, so ties keep their QL order
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        self.values = order.iter().map(|&k| self.values[k]).collect();
        if let Some(v) = &self.vectors {
            let mut sorted = vec![0.0; n * n];
            for (dst, &src) in order.iter().enumerate() {
                for i in 0..n {
                    sorted[i * n + dst] = v[i * n + src];
                }
            }
            self.vectors = Some(sorted);
        }
    }
}

/// Sweep budget per matrix dimension.
pub const MAX_SWEEPS_PER_DIM: usize = 50;

/// Implicit QL on `d` (diagonal) and `e` (sub-diagonal, `e[i]` couples
/// `i` and `i + 1`, with the last slot unused). When `z` holds a row-major
/// orthogonal matrix, the rotations are accumulated into its columns.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<(), usize> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let budget = MAX_SWEEPS_PER_DIM * n;
    let mut sweeps = 0usize;

    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > budget {
                return Err(sweeps);
            }

            // Wilkinson shift from the leading 2x2 block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zk1 = z[k * n + i + 1];
                        let zk = z[k * n + i];
                        z[k * n + i + 1] = s * zk + c * zk1;
                        z[k * n + i] = c * zk - s * zk1;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn finish(mut d: Vec<f64>, mut e: Vec<f64>, mut z: Option<Vec<f64>>) -> Result<EigResult> {
    let outcome = ql_implicit(&mut d, &mut e, z.as_deref_mut());
    let mut result = EigResult {
        values: d,
        vectors: z,
    };
    result.sort_ascending();
    match outcome {
        Ok(()) => Ok(result),
        Err(iterations) => Err(Error::NonConvergence {
            iterations,
            partial: Box::new(result),
        }),
    }
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
pub fn eig_tridiag(m: &SymTridiag, want_vectors: bool) -> Result<EigResult> {
    let n = m.dim();
    let d = m.diag.clone();
    let mut e = m.off.clone();
    e.push(0.0);
    let z = want_vectors.then(|| identity_data(n));
    finish(d, e, z)
}

fn identity_data(n: usize) -> Vec<f64> {
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    z
}

/// Householder reduction of the lower triangle to tridiagonal form.
///
/// Returns `(d, e, q)` where `e[i]` couples `i` and `i + 1` and `q` is the
/// accumulated orthogonal transform (row-major) when requested.
fn householder_tridiagonalize(a: &DenseSym, want_q: bool) -> (Vec<f64>, Vec<f64>, Option<Vec<f64>>) {
    let n = a.dim();
    // work on the lower triangle; symmetric strictly by reading only i >= j
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let x = a.get(i, j);
            v[i * n + j] = x;
            v[j * n + i] = x;
        }
    }
    let mut d: Vec<f64> = (0..n).map(|j| v[(n - 1) * n + j]).collect();
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[j * n + i] = f;
                g = e[j] + v[j * n + j] * f;
                for k in (j + 1)..i {
                    g += v[k * n + j] * d[k];
                    e[k] += v[k * n + j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    let q = if want_q {
        for i in 0..n.saturating_sub(1) {
            v[(n - 1) * n + i] = v[i * n + i];
            v[i * n + i] = 1.0;
            let h = d[i + 1];
            if h != 0.0 {
                for k in 0..=i {
                    d[k] = v[k * n + i + 1] / h;
                }
                for j in 0..=i {
                    let mut g = 0.0;
                    for k in 0..=i {
                        g += v[k * n + i + 1] * v[k * n + j];
                    }
                    for k in 0..=i {
                        v[k * n + j] -= g * d[k];
                    }
                }
            }
            for k in 0..=i {
                v[k * n + i + 1] = 0.0;
            }
        }
        for j in 0..n {
            d[j] = v[(n - 1) * n + j];
            v[(n - 1) * n + j] = 0.0;
        }
        v[(n - 1) * n + n - 1] = 1.0;
        Some(v)
    } else {
        for j in 0..n {
            d[j] = v[j * n + j];
        }
        None
    };

    // shift sub-diagonal so that e[i] couples i and i + 1
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    (d, e, q)
}

/// All eigenvalues of a dense symmetric matrix, ascending.
pub fn eig_dense_sym(m: &DenseSym, want_vectors: bool) -> Result<EigResult> {
    let (d, e, q) = householder_tridiagonalize(m, want_vectors);
    finish(d, e, q)
}

/// Number of eigenvalues of `m` strictly below `x` (Sturm sequence count).
pub fn sturm_count(m: &SymTridiag, x: f64) -> usize {
    let n = m.dim();
    let mut count = 0;
    let mut q = m.diag[0] - x;
    // pivots that land on zero are nudged, which only moves x by ~eps
    let tiny = f64::MIN_POSITIVE.sqrt();
    for i in 0..n {
        if i > 0 {
            let e = m.off[i - 1];
            q = (m.diag[i] - x) - e * e / q;
        }
        if q == 0.0 {
            q = -tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of `m` by Sturm-count bisection to absolute width `tol`.
pub fn bisect_eigenvalues(m: &SymTridiag, tol: f64) -> Vec<f64> {
    let (lo0, hi0) = m.gershgorin();
    let pad = f64::EPSILON * lo0.abs().max(hi0.abs()).max(1.0);
    let (lo0, hi0) = (lo0 - pad, hi0 + pad);
    (0..m.dim())
        .map(|k| {
            // find the (k+1)-th smallest: count(x) > k
            let (mut lo, mut hi) = (lo0, hi0);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if sturm_count(m, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}
