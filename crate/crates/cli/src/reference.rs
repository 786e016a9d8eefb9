//! Published energy tables, `lambda = 1`, one slice per column.

/// Bessel-basis levels, `A+ = 2`, columns `A- = 8, 6, 4`.
pub const TABLE1: [&[f64]; 3] = [
    &[
        -28.053627, -21.029931, -14.992219, -9.927105, -5.801982, -2.518657, 0.948521,
    ],
    &[-15.025220, -9.975990, -5.880414, -2.662228, 0.418853],
    &[-5.960092, -2.808535, -0.106373],
];

/// Bessel-basis levels, `A- = 6`, columns `A+ = 0, 4, 8, 12`.
pub const TABLE2: [&[f64]; 4] = [
    &[-15.125000, -10.125000, -6.125000, -3.125000, -1.125000],
    &[-14.925872, -9.828860, -5.645103, -2.229669, 2.004504],
    &[-14.728422, -9.539719, -5.195514, -1.374691, 5.213347],
    &[-14.532562, -9.256701, -4.765950, -0.509143, 8.439356],
];

/// Laguerre-basis levels (`K = 100`, `nu = 0`) for the Table 1 parameters.
pub const TABLE3: [&[f64]; 3] = [
    &[
        -28.053627, -21.029931, -14.992219, -9.927105, -5.801990, -2.530695, 0.093216, 2.391258,
    ],
    &[
        -15.025220, -9.975990, -5.880416, -2.667212, -0.146643, 2.014391, 4.103609, 6.224812,
    ],
    &[
        -5.960092, -2.809728, -0.410359, 1.581097, 3.496007, 5.470629, 7.493054, 9.682386,
    ],
];

/// Laguerre-basis levels (`K = 100`, `nu = 0`) for the Table 2 parameters.
pub const TABLE4: [&[f64]; 4] = [
    &[-15.125000, -10.125000, -6.125000, -3.125000, -1.125000, -0.125000],
    &[-14.925872, -9.828860, -5.645149, -2.262598, 0.549743, 3.095928],
    &[-14.728422, -9.539720, -5.196474, -1.542214, 1.669961, 4.694312],
    &[-14.532562, -9.256705, -4.770689, -0.896463, 2.607619, 5.962793],
];

/// Largest `|computed - printed|` over every printed cell; infinite when a
/// computed column is too short.
pub fn max_deviation(computed: &[Vec<f64>], printed: &[&[f64]]) -> f64 {
    if computed.len() != printed.len() {
        return f64::INFINITY;
    }
    computed
        .iter()
        .zip(printed)
        .map(|(c, p)| {
            if c.len() < p.len() {
                return f64::INFINITY;
            }
            c.iter()
                .zip(p.iter())
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
        })
        .fold(0.0, f64::max)
}
