//! Small dense symmetric linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Relative cutoff below which eigenvalues count as zero in
/// [`pseudo_inverse_sym`].
pub const PINV_CUTOFF: f64 = 1e-12;

/// Absolute slack (scaled by `1 + ‖A‖`) under which a negative eigenvalue
/// still counts as PSD.
pub const PSD_TOLERANCE: f64 = 1e-9;

pub fn symmetrize(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let s = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = s;
            a[(j, i)] = s;
        }
    }
}

/// Eigen-decomposition of a symmetric matrix with ascending eigenvalues;
/// eigenvectors are the matching columns.
pub fn sym_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(a.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Smallest eigenvalue with a unit eigenvector, `None` for a 0×0 matrix.
pub fn min_eigen(a: &DMatrix<f64>) -> Option<(f64, DVector<f64>)> {
    let (values, vectors) = sym_eigen(a);
    values.first().map(|&v| (v, vectors.column(0).into_owned()))
}

/// Largest absolute eigenvalue (spectral norm of a symmetric matrix).
pub fn spectral_norm(a: &DMatrix<f64>) -> f64 {
    sym_eigen(a).0.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Result of a PSD test: raw smallest eigenvalue, the threshold it was
/// compared against, and the eigenvector that attains it.
#[derive(Debug, Clone)]
pub struct PsdCheck {
    pub min_eigenvalue: f64,
    pub threshold: f64,
    pub vector: Option<DVector<f64>>,
}

impl PsdCheck {
    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue >= self.threshold
    }
}

/// PSD test: `λ_min ≥ −1e-9·(1 + ‖A‖)`. The empty matrix is PSD.
pub fn psd_check(a: &DMatrix<f64>) -> PsdCheck {
    let (values, vectors) = sym_eigen(a);
    let norm = values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let threshold = -PSD_TOLERANCE * (1.0 + norm);
    match values.first() {
        Some(&v) => PsdCheck {
            min_eigenvalue: v,
            threshold,
            vector: Some(vectors.column(0).into_owned()),
        },
        None => PsdCheck { min_eigenvalue: 0.0, threshold, vector: None },
    }
}

/// Moore-Penrose pseudo-inverse of a symmetric matrix; eigenvalues with
/// `|λ| ≤ 1e-12·max|λ|` are dropped.
pub fn pseudo_inverse_sym(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let (values, vectors) = sym_eigen(a);
    let max = values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let mut out = DMatrix::zeros(n, n);
    if max == 0.0 {
        return out;
    }
    for (k, &v) in values.iter().enumerate() {
        if v.abs() > PINV_CUTOFF * max {
            let col = vectors.column(k);
            out += (col * col.transpose()) / v;
        }
    }
    symmetrize(&mut out);
    out
}

/// Generalized symmetric-definite problem `A v = λ M v` with diagonal
/// positive `M`. Eigenvalues ascending; eigenvectors are `M`-orthonormal
/// columns.
pub fn generalized_eigen_diag(a: &DMatrix<f64>, mass: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let inv_sqrt: Vec<f64> = mass.iter().map(|m| 1.0 / m.sqrt()).collect();
    let mut c = DMatrix::from_fn(n, n, |i, j| a[(i, j)] * inv_sqrt[i] * inv_sqrt[j]);
    symmetrize(&mut c);
    let (values, mut vectors) = sym_eigen(&c);
    for i in 0..n {
        for j in 0..n {
            vectors[(i, j)] *= inv_sqrt[i];
        }
    }
    (values, vectors)
}

/// Flips `v` so its first non-negligible coordinate is positive.
pub fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * max) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}
