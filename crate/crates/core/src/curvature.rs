//! Curvature-dimension condition `CD(K, n)` at vertices, the curvature
//! function `K(x, n)`, and Lichnerowicz bound verification.
//!
//! At a vertex `x` the condition is positive semidefiniteness of
//! `A_x = Q(Γ₂) − (1/n)Q(Δ²) − K·Q(Γ)` on functions over the 2-ball with
//! `f(x) = 0`. With that gauge `Q(Γ)` is diagonal on the neighbours `S₁`
//! and zero on the sphere `S₂`, so the largest admissible `K` is the
//! smallest eigenvalue of `D^{-1/2} (P − R T⁺ Rᵀ) D^{-1/2}` where
//! `[[P, R], [Rᵀ, T]]` is the `K`-free part split along `S₁ | S₂`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::graph::{BoundaryGraph, WeightedGraph};
use crate::linalg::{min_eigen, pseudo_inverse_sym, psd_check, symmetrize};
use crate::operators::{gamma2_form, gamma_form, laplacian_square_form, QuadraticForm, VertexFunction};
use crate::steklov::{laplacian_spectrum, steklov_spectrum};

/// Relative tolerance for `λ₂ = nK/(n−1)` and the bound itself.
pub const BOUND_TOLERANCE: f64 = 1e-8;

/// Adds `scale · src` into `dst`, matching coordinates by vertex.
fn embed(dst: &mut DMatrix<f64>, dst_index: &[usize], src: &QuadraticForm, scale: f64) {
    let pos: Vec<usize> = src
        .index()
        .iter()
        .map(|v| dst_index.iter().position(|w| w == v).expect("form support inside the 2-ball"))
        .collect();
    let m = src.matrix();
    for (i, &pi) in pos.iter().enumerate() {
        for (j, &pj) in pos.iter().enumerate() {
            dst[(pi, pj)] += scale * m[(i, j)];
        }
    }
}

/// `Q(Γ₂) − (1/n)Q(Δ²) − K·Q(Γ)` at `x`, over the 2-ball with `x` pinned.
fn cd_form_with(g: &WeightedGraph, x: usize, k: f64, inv_n: f64) -> QuadraticForm {
    let g2 = gamma2_form(g, x);
    let index = g2.index().to_vec();
    let mut a = g2.matrix().clone();
    if inv_n != 0.0 {
        embed(&mut a, &index, &laplacian_square_form(g, x), -inv_n);
    }
    if k != 0.0 {
        embed(&mut a, &index, &gamma_form(g, x), -k);
    }
    symmetrize(&mut a);
    QuadraticForm::new(index, a).pinned(x)
}

/// The pinned form `A_x` whose PSD-ness is `CD(K, n)` at `x`.
pub fn cd_form(g: &WeightedGraph, x: usize, k: f64, n: Dimension) -> QuadraticForm {
    cd_form_with(g, x, k, n.reciprocal())
}

/// Outcome of the CD test at one vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexVerdict {
    pub vertex: usize,
    pub holds: bool,
    /// Raw smallest eigenvalue of `A_x` (callers may tighten the threshold).
    pub min_eigenvalue: f64,
    pub threshold: f64,
    /// On failure: a function on `V` (zero outside the 2-ball) with
    /// `Γ₂(f,f)(x) < (1/n)(Δf)²(x) + KΓ(f,f)(x)`.
    pub witness: Option<VertexFunction>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdVerdict {
    pub holds: bool,
    pub vertices: Vec<VertexVerdict>,
}

impl CdVerdict {
    pub fn first_violation(&self) -> Option<&VertexVerdict> {
        self.vertices.iter().find(|v| !v.holds)
    }
}

fn verdict_at(g: &WeightedGraph, x: usize, k: f64, n: Dimension) -> VertexVerdict {
    let a = cd_form(g, x, k, n);
    let check = psd_check(a.matrix());
    let holds = check.is_psd();
    let witness = (!holds).then(|| {
        let v = check.vector.as_ref().expect("failing form is non-empty");
        let mut f = vec![0.0; g.len()];
        for (i, &y) in a.index().iter().enumerate() {
            f[y] = v[i];
        }
        VertexFunction::new(f)
    });
    VertexVerdict {
        vertex: x,
        holds,
        min_eigenvalue: check.min_eigenvalue,
        threshold: check.threshold,
        witness,
    }
}

/// Checks `CD(K, n)` at `vertex`, or at every vertex when `None`.
pub fn cd_check(g: &WeightedGraph, k: f64, n: Dimension, vertex: Option<usize>) -> Result<CdVerdict> {
    if !k.is_finite() {
        return Err(Error::InvalidParams(format!("K = {k} is not finite")));
    }
    let vertices: Vec<VertexVerdict> = match vertex {
        Some(x) => {
            if x >= g.len() {
                return Err(Error::UnknownVertex(x.to_string()));
            }
            vec![verdict_at(g, x, k, n)]
        }
        None => (0..g.len()).into_par_iter().map(|x| verdict_at(g, x, k, n)).collect(),
    };
    Ok(CdVerdict { holds: vertices.iter().all(|v| v.holds), vertices })
}

/// `K(x, n)` together with its minimizing direction.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureResult {
    pub vertex: usize,
    pub n: Dimension,
    pub kappa: f64,
    /// Minimizer on `V` (zero outside the 2-ball, `f(x) = 0`), normalized
    /// so that `Γ(f,f)(x) = 1`.
    pub witness: VertexFunction,
    /// The `S₂` block of the `K`-free form is PSD.
    pub kernel_ok: bool,
    pub kernel_min_eigenvalue: f64,
}

/// `sup{K : CD(K, n) holds at x}`.
pub fn curvature_at(g: &WeightedGraph, x: usize, n: Dimension) -> Result<CurvatureResult> {
    curvature_with(g, x, n.reciprocal()).map(|(kappa, witness, kernel_ok, kmin)| CurvatureResult {
        vertex: x,
        n,
        kappa,
        witness,
        kernel_ok,
        kernel_min_eigenvalue: kmin,
    })
}

/// Same as [`curvature_at`] for any positive real dimension, including
/// `n ≤ 1`. Used for the interior condition `CD(K_Ω, n − 2)`.
pub(crate) fn curvature_at_real_dimension(g: &WeightedGraph, x: usize, n: f64) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::InvalidDimensionParam(n));
    }
    let inv = if n.is_infinite() { 0.0 } else { 1.0 / n };
    curvature_with(g, x, inv).map(|r| r.0)
}

fn curvature_with(
    g: &WeightedGraph,
    x: usize,
    inv_n: f64,
) -> Result<(f64, VertexFunction, bool, f64)> {
    if x >= g.len() {
        return Err(Error::UnknownVertex(x.to_string()));
    }
    let s1: Vec<usize> = g.neighbors(x).iter().map(|&(y, _)| y).collect();
    if s1.is_empty() {
        return Err(Error::IsolatedVertex(g.id(x).to_string()));
    }
    let a0 = cd_form_with(g, x, 0.0, inv_n);
    // index is [S₁ sorted, S₂ sorted]
    let index = a0.index();
    let k1 = s1.len();
    let k2 = index.len() - k1;
    debug_assert_eq!(&index[..k1], s1.as_slice());
    let m = a0.matrix();
    let p = m.view((0, 0), (k1, k1)).into_owned();
    let r = m.view((0, k1), (k1, k2)).into_owned();
    let t = m.view((k1, k1), (k2, k2)).into_owned();

    let kernel = psd_check(&t);
    let t_pinv = pseudo_inverse_sym(&t);
    let mut schur = &p - &r * &t_pinv * r.transpose();
    symmetrize(&mut schur);

    let mx = g.measure(x);
    let d_inv_sqrt: Vec<f64> =
        g.neighbors(x).iter().map(|&(_, w)| (2.0 * mx / w).sqrt()).collect();
    let mut scaled = DMatrix::from_fn(k1, k1, |i, j| schur[(i, j)] * d_inv_sqrt[i] * d_inv_sqrt[j]);
    symmetrize(&mut scaled);
    let (kappa, y) = min_eigen(&scaled).expect("x has neighbours");

    let f1 = DVector::from_fn(k1, |i, _| y[i] * d_inv_sqrt[i]);
    let f2 = -(&t_pinv * r.transpose() * &f1);
    let mut witness = vec![0.0; g.len()];
    for i in 0..k1 {
        witness[index[i]] = f1[i];
    }
    for i in 0..k2 {
        witness[index[k1 + i]] = f2[i];
    }
    Ok((kappa, VertexFunction::new(witness), kernel.is_psd(), kernel.min_eigenvalue))
}

/// Curvature table: `kappa[v][j] = K(v, n_grid[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    pub n_grid: Vec<Dimension>,
    pub kappa: Vec<Vec<f64>>,
    /// Per grid value, the largest `K` with `CD(K, n)` on the whole graph.
    pub global_min: Vec<f64>,
}

pub fn curvature_profile(g: &WeightedGraph, n_grid: &[Dimension]) -> Result<CurvatureProfile> {
    let rows: Vec<Result<Vec<f64>>> = (0..g.len())
        .into_par_iter()
        .map(|x| n_grid.iter().map(|&n| curvature_at(g, x, n).map(|r| r.kappa)).collect())
        .collect();
    let kappa = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let global_min = (0..n_grid.len())
        .map(|j| kappa.iter().map(|row| row[j]).fold(f64::INFINITY, f64::min))
        .collect();
    Ok(CurvatureProfile { n_grid: n_grid.to_vec(), kappa, global_min })
}

/// Graph whose second eigenvalue is compared against the bound: `μ₂` for a
/// closed graph, `σ₂` for a graph with boundary.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Closed(&'a WeightedGraph),
    WithBoundary(&'a BoundaryGraph),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LichnerowiczReport {
    pub cd_holds: bool,
    pub bound: f64,
    /// `μ₂` or `σ₂`; `None` when the domain has a single point.
    pub spectral_value: Option<f64>,
    pub slack: Option<f64>,
    pub bound_holds: bool,
    pub equality: bool,
}

/// Checks `λ₂ ≥ nK/(n−1)` for a graph satisfying `CD(K, n)` with `K > 0`.
pub fn verify_lichnerowicz(subject: Subject<'_>, k: f64, n: Dimension) -> Result<LichnerowiczReport> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParams(format!("K = {k} must be positive and finite")));
    }
    let (g, value) = match subject {
        Subject::Closed(g) => (g, laplacian_spectrum(g).second()),
        Subject::WithBoundary(bg) => (bg.graph(), steklov_spectrum(bg)?.second()),
    };
    let cd_holds = cd_check(g, k, n, None)?.holds;
    let bound = n.bound(k);
    let slack = value.map(|v| v - bound);
    let tol = BOUND_TOLERANCE * bound;
    Ok(LichnerowiczReport {
        cd_holds,
        bound,
        spectral_value: value,
        slack,
        bound_holds: slack.is_some_and(|s| s >= -tol),
        equality: slack.is_some_and(|s| s.abs() <= tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let v: Vec<(String, f64)> = (1..=n).map(|i| (i.to_string(), 1.0)).collect();
        let e: Vec<(String, String, f64)> =
            edges.iter().map(|&(a, b)| (a.to_string(), b.to_string(), 1.0)).collect();
        WeightedGraph::build(&v, &e).unwrap()
    }

    fn p3() -> WeightedGraph {
        unit(3, &[(1, 2), (2, 3)])
    }

    fn c4() -> WeightedGraph {
        unit(4, &[(1, 2), (2, 3), (3, 4), (4, 1)])
    }

    #[test]
    fn p3_satisfies_cd_half_two() {
        let v = cd_check(&p3(), 0.5, Dimension::Finite(2.0), None).unwrap();
        assert!(v.holds, "{v:?}");
        let v = cd_check(&p3(), 0.51, Dimension::Finite(2.0), Some(1)).unwrap();
        assert!(!v.holds);
        let w = v.vertices[0].witness.as_ref().unwrap();
        let a = cd_form(&p3(), 1, 0.51, Dimension::Finite(2.0));
        assert!(a.evaluate(w) < 0.0);
    }

    #[test]
    fn cd_check_with_zero_curvature() {
        assert!(cd_check(&c4(), 0.0, Dimension::Finite(2.0), None).unwrap().holds);
    }

    #[test]
    fn curvature_of_unit_examples() {
        let r = curvature_at(&p3(), 1, Dimension::Finite(2.0)).unwrap();
        assert!((r.kappa - 0.5).abs() < 1e-10, "{}", r.kappa);
        assert!(r.kernel_ok);
        for x in 0..4 {
            let r = curvature_at(&c4(), x, Dimension::Infinite).unwrap();
            assert!((r.kappa - 2.0).abs() < 1e-10);
        }
        let k2 = curvature_at(&p3(), 1, Dimension::Finite(2.0)).unwrap().kappa;
        let k4 = curvature_at(&p3(), 1, Dimension::Finite(4.0)).unwrap().kappa;
        let ki = curvature_at(&p3(), 1, Dimension::Infinite).unwrap().kappa;
        assert!(k2 <= k4 + 1e-12 && k4 <= ki + 1e-12, "{k2} {k4} {ki}");
    }

    #[test]
    fn witness_attains_kappa() {
        let g = p3();
        let r = curvature_at(&g, 0, Dimension::Finite(3.0)).unwrap();
        let gamma = gamma_form(&g, 0).evaluate(&r.witness);
        assert!((gamma - 1.0).abs() < 1e-10);
        let a0 = cd_form(&g, 0, 0.0, Dimension::Finite(3.0)).evaluate(&r.witness);
        assert!((a0 - r.kappa).abs() < 1e-8);
    }

    #[test]
    fn isolated_vertex_has_no_curvature() {
        let single = WeightedGraph::build::<&str>(&[("a", 1.0)], &[]).unwrap();
        assert_eq!(
            curvature_at(&single, 0, Dimension::Infinite),
            Err(Error::IsolatedVertex("a".into()))
        );
    }

    #[test]
    fn profiles() {
        let p = curvature_profile(&p3(), &[Dimension::Finite(2.0), Dimension::Infinite]).unwrap();
        assert!((p.global_min[0] - 0.5).abs() < 1e-10);
        let p = curvature_profile(&c4(), &[Dimension::Infinite]).unwrap();
        assert!(p.kappa.iter().all(|row| (row[0] - 2.0).abs() < 1e-10));
        let p = curvature_profile(&c4(), &[]).unwrap();
        assert!(p.global_min.is_empty());
    }

    #[test]
    fn lichnerowicz_reports() {
        let bg = BoundaryGraph::attach(p3(), &["1", "3"]).unwrap();
        let r = verify_lichnerowicz(Subject::WithBoundary(&bg), 0.5, Dimension::Finite(2.0)).unwrap();
        assert!(r.cd_holds && r.equality);
        assert_eq!(r.bound, 1.0);
        let r = verify_lichnerowicz(Subject::Closed(&p3()), 0.5, Dimension::Finite(2.0)).unwrap();
        assert!(r.equality);
        let bg = BoundaryGraph::attach(c4(), &["1", "3"]).unwrap();
        let r = verify_lichnerowicz(Subject::WithBoundary(&bg), 2.0, Dimension::Infinite).unwrap();
        assert!(r.cd_holds && r.equality);
        assert!(verify_lichnerowicz(Subject::Closed(&p3()), 0.0, Dimension::Infinite).is_err());
    }
}
