//! Harmonic extension, normal derivative, the Dirichlet-to-Neumann map and
//! the Laplacian and Steklov spectra.
//!
//! Everything is materialized through the symmetric form matrix
//! `L` (`L_xx = Σ_y w_xy`, `L_xy = −w_xy`) so that `−Δ = M⁻¹L`. The DtN map
//! is `Λ = M_B⁻¹ S` with `S` the Schur complement of the interior block,
//! and both spectra are solved as symmetric-definite generalized problems.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{BoundaryGraph, WeightedGraph};
use crate::linalg::{fix_sign, generalized_eigen_diag, symmetrize};
use crate::operators::{differential, inner_product_forms, laplacian, VertexFunction};

/// Values closer than `1e-8·(1 + |value|)` are reported as one eigenvalue.
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Laplacian,
    Steklov,
}

/// Ascending eigenvalues with measure-orthonormal eigenfunctions.
///
/// Laplacian eigenfunctions live on `V`, Steklov eigenfunctions on `B`
/// (in boundary order). Each eigenfunction's first non-negligible
/// coordinate is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub values: Vec<f64>,
    pub functions: Vec<VertexFunction>,
}

impl Spectrum {
    /// The second eigenvalue (`μ₂` or `σ₂`), absent for one-point domains.
    pub fn second(&self) -> Option<f64> {
        self.values.get(1).copied()
    }

    /// Distinct eigenvalues with multiplicities.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((rep, count))
                    if (v - *rep).abs() <= MULTIPLICITY_TOLERANCE * (1.0 + rep.abs()) =>
                {
                    *count += 1
                }
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

/// `Λ` as the symmetric pair `(S, M_B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DtnOperator {
    pub boundary_order: Vec<usize>,
    pub schur_matrix: DMatrix<f64>,
    pub measures: Vec<f64>,
}

impl DtnOperator {
    /// `Λf = M_B⁻¹ S f` for `f` on the boundary.
    pub fn apply(&self, f: &VertexFunction) -> Result<VertexFunction> {
        f.check_domain(self.boundary_order.len())?;
        let s = &self.schur_matrix * DVector::from_column_slice(f.values());
        Ok(VertexFunction::from_fn(s.len(), |i| s[i] / self.measures[i]))
    }

    /// Dense matrix of `Λ` itself (not symmetric unless `M_B` is scalar).
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.measures.len();
        DMatrix::from_fn(n, n, |i, j| self.schur_matrix[(i, j)] / self.measures[i])
    }
}

/// Symmetric form matrix `L` with `uᵀLu = ⟨du, du⟩`.
pub fn form_matrix(g: &WeightedGraph) -> DMatrix<f64> {
    let n = g.len();
    let mut l = DMatrix::zeros(n, n);
    for e in g.edges() {
        l[(e.u, e.u)] += e.weight;
        l[(e.v, e.v)] += e.weight;
        l[(e.u, e.v)] -= e.weight;
        l[(e.v, e.u)] -= e.weight;
    }
    l
}

fn submatrix(l: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| l[(rows[i], cols[j])])
}

/// Cholesky factor of the interior block, with the component diagnosis
/// when it is singular.
fn interior_factor(bg: &BoundaryGraph, l: &DMatrix<f64>) -> Result<nalgebra::Cholesky<f64, nalgebra::Dyn>> {
    let interior = bg.interior();
    let induced = bg.induced_interior_graph();
    for comp in induced.components() {
        let touches = comp.iter().any(|&i| {
            bg.neighbors(interior[i]).iter().any(|&(y, _)| bg.is_boundary(y))
        });
        if !touches {
            return Err(Error::SingularInteriorSystem {
                component: comp.iter().map(|&i| induced.id(i).to_string()).collect(),
            });
        }
    }
    submatrix(l, interior, interior).cholesky().ok_or_else(|| Error::SingularInteriorSystem {
        component: bg.interior_ids().into_iter().map(str::to_string).collect(),
    })
}

/// The function equal to `f` on `B` and harmonic on `Ω`.
pub fn harmonic_extension(bg: &BoundaryGraph, f: &VertexFunction) -> Result<VertexFunction> {
    f.check_domain(bg.boundary().len())?;
    let l = form_matrix(bg.graph());
    let chol = interior_factor(bg, &l)?;
    Ok(extend_with(bg, &l, &chol, f))
}

fn extend_with(
    bg: &BoundaryGraph,
    l: &DMatrix<f64>,
    chol: &nalgebra::Cholesky<f64, nalgebra::Dyn>,
    f: &VertexFunction,
) -> VertexFunction {
    let (b, o) = (bg.boundary(), bg.interior());
    let rhs = -(submatrix(l, o, b) * DVector::from_column_slice(f.values()));
    let inner = chol.solve(&rhs);
    let mut u = vec![0.0; bg.len()];
    for (i, &x) in b.iter().enumerate() {
        u[x] = f[i];
    }
    for (i, &x) in o.iter().enumerate() {
        u[x] = inner[i];
    }
    VertexFunction::new(u)
}

/// `∂u/∂n = −Δu` on the boundary, in boundary order.
pub fn normal_derivative(bg: &BoundaryGraph, u: &VertexFunction) -> Result<VertexFunction> {
    let lap = laplacian(bg.graph(), u)?;
    Ok(VertexFunction::new(bg.boundary().iter().map(|&x| -lap[x]).collect()))
}

/// `S = L_BB − L_BΩ L_ΩΩ⁻¹ L_ΩB`, symmetrized.
pub fn dtn_operator(bg: &BoundaryGraph) -> Result<DtnOperator> {
    let l = form_matrix(bg.graph());
    let chol = interior_factor(bg, &l)?;
    let (b, o) = (bg.boundary(), bg.interior());
    let l_ob = submatrix(&l, o, b);
    let mut s = submatrix(&l, b, b) - l_ob.transpose() * chol.solve(&l_ob);
    symmetrize(&mut s);
    Ok(DtnOperator {
        boundary_order: b.to_vec(),
        schur_matrix: s,
        measures: b.iter().map(|&x| bg.measure(x)).collect(),
    })
}

fn spectrum_from(kind: SpectrumKind, values: Vec<f64>, vectors: DMatrix<f64>) -> Spectrum {
    let functions = (0..values.len())
        .map(|k| {
            let mut v: Vec<f64> = vectors.column(k).iter().copied().collect();
            fix_sign(&mut v);
            VertexFunction::new(v)
        })
        .collect();
    Spectrum { kind, values, functions }
}

/// Steklov eigenvalues `0 = σ₁ < σ₂ ≤ …` from `S f = σ M_B f`.
pub fn steklov_spectrum(bg: &BoundaryGraph) -> Result<Spectrum> {
    let dtn = dtn_operator(bg)?;
    let (values, vectors) = generalized_eigen_diag(&dtn.schur_matrix, &dtn.measures);
    Ok(spectrum_from(SpectrumKind::Steklov, values, vectors))
}

/// Laplacian eigenvalues `0 = μ₁ < μ₂ ≤ …` from `L u = μ M u`.
pub fn laplacian_spectrum(g: &WeightedGraph) -> Spectrum {
    let (values, vectors) = generalized_eigen_diag(&form_matrix(g), g.measures());
    spectrum_from(SpectrumKind::Laplacian, values, vectors)
}

/// What the harmonic extension `u` of a `σ₂`-eigenfunction looks like.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenfunctionDiagnostics {
    pub sigma2: f64,
    pub mu2: f64,
    /// Harmonic extension of the `σ₂` eigenfunction (unit `⟨·,·⟩_B` norm).
    pub extension: VertexFunction,
    /// `sqrt(⟨u, u⟩_Ω)`.
    pub interior_norm: f64,
    /// `⟨du, du⟩ / ⟨u, u⟩`.
    pub rayleigh_quotient: f64,
    /// `‖Lu − μ₂ M u‖₂`.
    pub mu2_residual: f64,
    pub is_mu2_eigenfunction: bool,
}

/// Inspects the `σ₂` eigenfunction of `spectrum` (from
/// [`steklov_spectrum`] on the same graph).
pub fn steklov_eigenfunction_diagnostics(
    bg: &BoundaryGraph,
    spectrum: &Spectrum,
) -> Result<EigenfunctionDiagnostics> {
    if spectrum.kind != SpectrumKind::Steklov {
        return Err(Error::InvalidParams("expected a Steklov spectrum".into()));
    }
    let (sigma2, f) = match (spectrum.values.get(1), spectrum.functions.get(1)) {
        (Some(&s), Some(f)) => (s, f),
        _ => {
            return Err(Error::PreconditionViolated(
                "sigma_2 needs at least two boundary vertices".into(),
            ))
        }
    };
    let g = bg.graph();
    let u = harmonic_extension(bg, f)?;
    let interior_norm = bg
        .interior()
        .iter()
        .map(|&x| u[x] * u[x] * g.measure(x))
        .sum::<f64>()
        .sqrt();
    let du = differential(g, &u)?;
    let energy = inner_product_forms(g, &du, &du, None)?;
    let mass: f64 = (0..g.len()).map(|x| u[x] * u[x] * g.measure(x)).sum();
    let mu2 = laplacian_spectrum(g).second().unwrap_or(0.0);
    let lu = form_matrix(g) * DVector::from_column_slice(u.values());
    let mu2_residual = (0..g.len())
        .map(|x| (lu[x] - mu2 * g.measure(x) * u[x]).powi(2))
        .sum::<f64>()
        .sqrt();
    let scale = 1.0 + mu2 * mass.sqrt();
    Ok(EigenfunctionDiagnostics {
        sigma2,
        mu2,
        interior_norm,
        rayleigh_quotient: energy / mass,
        mu2_residual,
        is_mu2_eigenfunction: mu2_residual <= 1e-8 * scale,
        extension: u,
    })
}
