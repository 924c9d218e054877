//! Discrete differential operators on a weighted graph: the Laplacian `Δ`,
//! the differential `d`, the carré du champ `Γ` and its iterate `Γ₂`,
//! together with the local quadratic forms that represent `Γ(f,f)(x)`,
//! `Γ₂(f,f)(x)` and `(Δf)²(x)` as matrices in the values of `f`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{BoundaryGraph, WeightedGraph};
use crate::linalg::symmetrize;

/// A real function on a vertex set, stored in the set's dense order.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn constant(len: usize, c: f64) -> Self {
        Self { values: vec![c; len] }
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self { values: (0..len).map(f).collect() }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Errors unless the function is defined on exactly `expected` vertices.
    pub fn check_domain(&self, expected: usize) -> Result<()> {
        if self.values.len() == expected {
            Ok(())
        } else {
            Err(Error::DomainMismatch { expected, found: self.values.len() })
        }
    }

    pub fn pointwise_product(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn restrict(&self, subset: &[usize]) -> Self {
        Self::new(subset.iter().map(|&x| self.values[x]).collect())
    }
}

impl std::ops::Index<usize> for VertexFunction {
    type Output = f64;

    fn index(&self, x: usize) -> &f64 {
        &self.values[x]
    }
}

/// A 1-form: a skew-symmetric function on ordered pairs of adjacent
/// vertices, stored once per edge in the edge's declared orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    edges: Vec<(usize, usize)>,
    values: Vec<f64>,
}

impl OneForm {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on the stored orientation of edge `e`.
    pub fn edge_value(&self, e: usize) -> f64 {
        self.values[e]
    }

    /// `α(x, y)`: the stored value, its negative for the reversed pair, and
    /// zero on non-adjacent pairs.
    pub fn value(&self, x: usize, y: usize) -> f64 {
        for (&(u, v), &a) in self.edges.iter().zip(&self.values) {
            if u == x && v == y {
                return a;
            }
            if u == y && v == x {
                return -a;
            }
        }
        0.0
    }
}

/// Symmetric quadratic form over an ordered list of vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    index: Vec<usize>,
    matrix: DMatrix<f64>,
}

impl QuadraticForm {
    pub fn new(index: Vec<usize>, mut matrix: DMatrix<f64>) -> Self {
        assert_eq!(matrix.nrows(), index.len());
        assert_eq!(matrix.ncols(), index.len());
        symmetrize(&mut matrix);
        Self { index, matrix }
    }

    pub fn index(&self) -> &[usize] {
        &self.index
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// `fᵀQf` with `f` read at the form's vertices.
    pub fn evaluate(&self, f: &VertexFunction) -> f64 {
        let local = DVector::from_iterator(self.dim(), self.index.iter().map(|&x| f[x]));
        local.dot(&(&self.matrix * &local))
    }

    /// Drops the coordinate of vertex `x` (pins `f(x) = 0`).
    pub fn pinned(&self, x: usize) -> QuadraticForm {
        match self.index.iter().position(|&y| y == x) {
            Some(p) => QuadraticForm {
                index: self.index.iter().copied().filter(|&y| y != x).collect(),
                matrix: self.matrix.clone().remove_row(p).remove_column(p),
            },
            None => self.clone(),
        }
    }
}

fn check(g: &WeightedGraph, f: &VertexFunction) -> Result<()> {
    f.check_domain(g.len())
}

/// `Δu(x) = (1/m_x) Σ_y (u(y) − u(x)) w_xy`.
pub fn laplacian(g: &WeightedGraph, u: &VertexFunction) -> Result<VertexFunction> {
    check(g, u)?;
    Ok(VertexFunction::from_fn(g.len(), |x| laplacian_at(g, u, x)))
}

pub(crate) fn laplacian_at(g: &WeightedGraph, u: &VertexFunction, x: usize) -> f64 {
    let s: f64 = g.neighbors(x).iter().map(|&(y, w)| (u[y] - u[x]) * w).sum();
    s / g.measure(x)
}

/// `du(x, y) = u(y) − u(x)` on every edge.
pub fn differential(g: &WeightedGraph, u: &VertexFunction) -> Result<OneForm> {
    check(g, u)?;
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let values = edges.iter().map(|&(a, b)| u[b] - u[a]).collect();
    Ok(OneForm { edges, values })
}

/// `⟨u, v⟩_S = Σ_{x∈S} u(x) v(x) m_x`; `S = V` when `subset` is `None`.
pub fn inner_product_functions(
    g: &WeightedGraph,
    u: &VertexFunction,
    v: &VertexFunction,
    subset: Option<&[usize]>,
) -> Result<f64> {
    check(g, u)?;
    check(g, v)?;
    Ok(match subset {
        Some(s) => s.iter().map(|&x| u[x] * v[x] * g.measure(x)).sum(),
        None => (0..g.len()).map(|x| u[x] * v[x] * g.measure(x)).sum(),
    })
}

/// `⟨α, β⟩_S = Σ_{{x,y}∈S} α(x,y) β(x,y) w_xy` over edge indices `S`
/// (all edges when `None`).
pub fn inner_product_forms(
    g: &WeightedGraph,
    alpha: &OneForm,
    beta: &OneForm,
    subset: Option<&[usize]>,
) -> Result<f64> {
    let m = g.edges().len();
    for form in [alpha, beta] {
        if form.len() != m {
            return Err(Error::DomainMismatch { expected: m, found: form.len() });
        }
    }
    let term = |e: usize| alpha.values[e] * beta.values[e] * g.edges()[e].weight;
    Ok(match subset {
        Some(s) => s.iter().map(|&e| term(e)).sum(),
        None => (0..m).map(term).sum(),
    })
}

/// `Γ(u,v)(x) = (1/2m_x) Σ_y (u(x) − u(y))(v(x) − v(y)) w_xy`.
pub fn gamma(g: &WeightedGraph, u: &VertexFunction, v: &VertexFunction) -> Result<VertexFunction> {
    check(g, u)?;
    check(g, v)?;
    Ok(VertexFunction::from_fn(g.len(), |x| {
        let s: f64 = g
            .neighbors(x)
            .iter()
            .map(|&(y, w)| (u[x] - u[y]) * (v[x] - v[y]) * w)
            .sum();
        s / (2.0 * g.measure(x))
    }))
}

/// `Γ₂(u,v) = ½(ΔΓ(u,v) − Γ(Δu,v) − Γ(u,Δv))`.
pub fn gamma2(g: &WeightedGraph, u: &VertexFunction, v: &VertexFunction) -> Result<VertexFunction> {
    let lap_u = laplacian(g, u)?;
    let lap_v = laplacian(g, v)?;
    let lap_gamma = laplacian(g, &gamma(g, u, v)?)?;
    let a = gamma(g, &lap_u, v)?;
    let b = gamma(g, u, &lap_v)?;
    Ok(VertexFunction::from_fn(g.len(), |x| 0.5 * (lap_gamma[x] - a[x] - b[x])))
}

/// Dense coordinates for a local vertex set.
struct LocalSpace {
    index: Vec<usize>,
    pos: Vec<usize>,
}

impl LocalSpace {
    fn new(g: &WeightedGraph, index: Vec<usize>) -> Self {
        let mut pos = vec![usize::MAX; g.len()];
        for (i, &x) in index.iter().enumerate() {
            pos[x] = i;
        }
        Self { index, pos }
    }

    fn dim(&self) -> usize {
        self.index.len()
    }

    fn at(&self, x: usize) -> usize {
        let p = self.pos[x];
        debug_assert!(p != usize::MAX, "vertex {x} outside the local space");
        p
    }

    /// Row vector `l` with `l·f = Δf(z)`.
    fn laplacian_row(&self, g: &WeightedGraph, z: usize) -> DVector<f64> {
        let mut row = DVector::zeros(self.dim());
        let mz = g.measure(z);
        for &(y, w) in g.neighbors(z) {
            row[self.at(y)] += w / mz;
            row[self.at(z)] -= w / mz;
        }
        row
    }

    /// Adds `scale · Q_Γ(z)` where `fᵀQ_Γ(z)f = Γ(f,f)(z)`.
    fn add_gamma(&self, g: &WeightedGraph, z: usize, scale: f64, out: &mut DMatrix<f64>) {
        let c = scale / (2.0 * g.measure(z));
        let pz = self.at(z);
        for &(y, w) in g.neighbors(z) {
            let py = self.at(y);
            out[(pz, pz)] += c * w;
            out[(py, py)] += c * w;
            out[(pz, py)] -= c * w;
            out[(py, pz)] -= c * w;
        }
    }
}

/// Vertices within distance `radius` of `x`: `x` first, then by distance
/// and index.
fn local_index(g: &WeightedGraph, x: usize, radius: usize) -> Vec<usize> {
    g.ball(x, radius)
}

/// Form over the closed 1-ball with `fᵀQf = Γ(f,f)(x)`.
pub fn gamma_form(g: &WeightedGraph, x: usize) -> QuadraticForm {
    let space = LocalSpace::new(g, local_index(g, x, 1));
    let mut q = DMatrix::zeros(space.dim(), space.dim());
    space.add_gamma(g, x, 1.0, &mut q);
    QuadraticForm::new(space.index, q)
}

/// Rank-one form over the closed 1-ball with `fᵀQf = (Δf(x))²`.
pub fn laplacian_square_form(g: &WeightedGraph, x: usize) -> QuadraticForm {
    let space = LocalSpace::new(g, local_index(g, x, 1));
    let row = space.laplacian_row(g, x);
    let q = &row * row.transpose();
    QuadraticForm::new(space.index, q)
}

/// Form over the closed 2-ball with `fᵀQf = Γ₂(f,f)(x)`, obtained by
/// expanding `½ΔΓ(f,f)(x) − Γ(Δf,f)(x)` term by term.
pub fn gamma2_form(g: &WeightedGraph, x: usize) -> QuadraticForm {
    let space = LocalSpace::new(g, local_index(g, x, 2));
    let d = space.dim();
    let mx = g.measure(x);
    let mut q = DMatrix::zeros(d, d);

    // ½ΔΓ(f,f)(x) = (1/2m_x) Σ_y w_xy (Γ(f,f)(y) − Γ(f,f)(x))
    for &(y, w) in g.neighbors(x) {
        let c = w / (2.0 * mx);
        space.add_gamma(g, y, c, &mut q);
        space.add_gamma(g, x, -c, &mut q);
    }

    // Γ(Δf,f)(x) = (1/2m_x) Σ_y w_xy (Δf(x) − Δf(y))(f(x) − f(y))
    let lx = space.laplacian_row(g, x);
    let px = space.at(x);
    for &(y, w) in g.neighbors(x) {
        let c = w / (2.0 * mx);
        let a = &lx - space.laplacian_row(g, y);
        let mut b = DVector::zeros(d);
        b[px] += 1.0;
        b[space.at(y)] -= 1.0;
        let outer = &a * b.transpose();
        q -= (&outer + outer.transpose()) * (0.5 * c);
    }
    QuadraticForm::new(space.index, q)
}

/// Residual of Green's formula
/// `|⟨Δu,v⟩_Ω + ⟨du,dv⟩ − ⟨∂u/∂n, v⟩_B|`.
pub fn check_green_identity(bg: &BoundaryGraph, u: &VertexFunction, v: &VertexFunction) -> Result<f64> {
    let g = bg.graph();
    let lap = laplacian(g, u)?;
    let du = differential(g, u)?;
    let dv = differential(g, v)?;
    let interior = inner_product_functions(g, &lap, v, Some(bg.interior()))?;
    let energy = inner_product_forms(g, &du, &dv, None)?;
    let normal = VertexFunction::from_fn(g.len(), |x| -lap[x]);
    let boundary = inner_product_functions(g, &normal, v, Some(bg.boundary()))?;
    Ok((interior + energy - boundary).abs())
}
