//! Eigenpairs of Hermitian tridiagonal matrices.
//!
//! A diagonal phase transform makes the matrix real symmetric, which is then
//! diagonalized by implicit QL with Wilkinson shifts.

use num_complex::Complex64;

pub(crate) struct TridiagEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[row][col]`; column `l` belongs to `values[l]`.
    pub vectors: Vec<Vec<Complex64>>,
}

const MAX_SWEEPS: usize = 60;

/// `diag` has length `n`, `upper[i]` is the `(i, i+1)` entry.
pub(crate) fn hermitian_tridiagonal_eigen(diag: &[f64], upper: &[Complex64]) -> Option<TridiagEigen> {
    let n = diag.len();
    debug_assert_eq!(upper.len() + 1, n.max(1));

    // D^dagger M D is real with off-diagonals |upper_i|
    let mut phase = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..upper.len() {
        let r = upper[i].norm();
        let unit = if r == 0.0 { Complex64::new(1.0, 0.0) } else { upper[i] / r };
        phase[i + 1] = phase[i] * unit.conj();
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = upper.iter().map(|z| z.norm()).collect();
    e.push(0.0);
    let mut z = vec![vec![0.0f64; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    ql_implicit(&mut d, &mut e, &mut z)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = (0..n)
        .map(|r| order.iter().map(|&k| phase[r] * z[r][k]).collect())
        .collect();
    Some(TridiagEigen { values, vectors })
}

/// In place: `d` becomes the eigenvalues, column `k` of `z` the eigenvector.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut [Vec<f64>]) -> Option<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return None;
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Some(())
}
