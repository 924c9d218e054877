//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's numerics; only graph accessors.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use stekcurv::{two_point_boundary, BoundaryGraph, Dimension, VertexFunction, WeightedGraph};

pub fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
    let v: Vec<(String, f64)> = (1..=n).map(|i| (i.to_string(), 1.0)).collect();
    let e: Vec<(String, String, f64)> =
        edges.iter().map(|&(a, b)| (a.to_string(), b.to_string(), 1.0)).collect();
    WeightedGraph::build(&v, &e).unwrap()
}

pub fn complete_unit(s: usize) -> WeightedGraph {
    let v: Vec<(String, f64)> = (1..=s).map(|i| (format!("x{i}"), 1.0)).collect();
    let mut e = Vec::new();
    for i in 1..=s {
        for j in (i + 1)..=s {
            e.push((format!("x{i}"), format!("x{j}"), 1.0));
        }
    }
    WeightedGraph::build(&v, &e).unwrap()
}

/// `|a − b| ≤ tol · max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// Entrywise agreement relative to the larger sup-norm of the two vectors.
pub fn close_vec(a: &[f64], b: &[f64], tol: f64) -> bool {
    let scale = a.iter().chain(b).fold(1.0f64, |s, v| s.max(v.abs()));
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * scale)
}

// ---------------------------------------------------------------- dense

pub fn weight_matrix(g: &WeightedGraph) -> Vec<Vec<f64>> {
    let mut w = vec![vec![0.0; g.len()]; g.len()];
    for e in g.edges() {
        w[e.u][e.v] = e.weight;
        w[e.v][e.u] = e.weight;
    }
    w
}

/// `Δu` from the dense weight matrix.
pub fn dense_laplacian(g: &WeightedGraph, u: &[f64]) -> Vec<f64> {
    let w = weight_matrix(g);
    (0..g.len())
        .map(|x| (0..g.len()).map(|y| w[x][y] * (u[y] - u[x])).sum::<f64>() / g.measure(x))
        .collect()
}

/// `Γ(u, v) = ½(Δ(uv) − vΔu − uΔv)`.
pub fn gamma_by_product_rule(g: &WeightedGraph, u: &[f64], v: &[f64]) -> Vec<f64> {
    let uv: Vec<f64> = u.iter().zip(v).map(|(a, b)| a * b).collect();
    let (luv, lu, lv) = (dense_laplacian(g, &uv), dense_laplacian(g, u), dense_laplacian(g, v));
    (0..g.len()).map(|x| 0.5 * (luv[x] - v[x] * lu[x] - u[x] * lv[x])).collect()
}

/// `Γ₂(u, u)` built from [`gamma_by_product_rule`] and [`dense_laplacian`].
pub fn gamma2_by_product_rule(g: &WeightedGraph, u: &[f64]) -> Vec<f64> {
    let gam = gamma_by_product_rule(g, u, u);
    let lg = dense_laplacian(g, &gam);
    let lu = dense_laplacian(g, u);
    let glu = gamma_by_product_rule(g, &lu, u);
    (0..g.len()).map(|x| 0.5 * lg[x] - glu[x]).collect()
}

/// Gaussian elimination with partial pivoting; `a` is row-major square.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(c, p);
        b.swap(c, p);
        for r in (c + 1)..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = ((r + 1)..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

/// Harmonic extension by solving `Δu = 0` on `Ω` row by row.
pub fn dense_extension(bg: &BoundaryGraph, f: &[f64]) -> Vec<f64> {
    let g = bg.graph();
    let w = weight_matrix(g);
    let om = bg.interior();
    let mut u = vec![0.0; g.len()];
    for (i, &b) in bg.boundary().iter().enumerate() {
        u[b] = f[i];
    }
    let a: Vec<Vec<f64>> = om
        .iter()
        .map(|&x| {
            om.iter()
                .map(|&y| if x == y { -(0..g.len()).map(|z| w[x][z]).sum::<f64>() } else { w[x][y] })
                .collect()
        })
        .collect();
    let rhs: Vec<f64> =
        om.iter().map(|&x| -bg.boundary().iter().map(|&b| w[x][b] * u[b]).sum::<f64>()).collect();
    for (i, v) in solve(a, rhs).into_iter().enumerate() {
        u[om[i]] = v;
    }
    u
}

/// `Λ` column by column: extend each boundary indicator and take `−Δu` on `B`.
pub fn dense_dtn(bg: &BoundaryGraph) -> Vec<Vec<f64>> {
    let nb = bg.boundary().len();
    let mut out = vec![vec![0.0; nb]; nb];
    for j in 0..nb {
        let mut e = vec![0.0; nb];
        e[j] = 1.0;
        let u = dense_extension(bg, &e);
        let lu = dense_laplacian(bg.graph(), &u);
        for (i, &b) in bg.boundary().iter().enumerate() {
            out[i][j] = -lu[b];
        }
    }
    out
}

/// Cyclic Jacobi eigenvalues of a symmetric matrix, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Spectrum of `−Δ` via `M^{-1/2} L M^{-1/2}`.
pub fn oracle_laplacian_spectrum(g: &WeightedGraph) -> Vec<f64> {
    let w = weight_matrix(g);
    let n = g.len();
    let a = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let l = if i == j { w[i].iter().sum::<f64>() } else { -w[i][j] };
                    l / (g.measure(i) * g.measure(j)).sqrt()
                })
                .collect()
        })
        .collect();
    jacobi_eigenvalues(a)
}

/// Steklov spectrum from the composed `Λ`, symmetrized by `M_B^{1/2}`.
pub fn oracle_steklov_spectrum(bg: &BoundaryGraph) -> Vec<f64> {
    let l = dense_dtn(bg);
    let mb: Vec<f64> = bg.boundary().iter().map(|&b| bg.measure(b)).collect();
    let nb = mb.len();
    let a = (0..nb)
        .map(|i| (0..nb).map(|j| l[i][j] * (mb[i] / mb[j]).sqrt()).collect())
        .collect();
    let mut s: Vec<Vec<f64>> = a;
    for i in 0..nb {
        for j in (i + 1)..nb {
            let v = 0.5 * (s[i][j] + s[j][i]);
            s[i][j] = v;
            s[j][i] = v;
        }
    }
    jacobi_eigenvalues(s)
}

// ---------------------------------------------------- two-point boundary formulas

/// Data of a graph with the two-point boundary structure with `B = {b1, b2}` at indices 0, 1.
pub struct TwoPoint {
    pub bg: BoundaryGraph,
    pub interior: stekcurv::InducedGraph,
    pub m: f64,
    pub deg: f64,
    pub deg_b: f64,
}

impl TwoPoint {
    pub fn new(bg: BoundaryGraph, k: f64, n: Dimension) -> Self {
        let b = bg.boundary();
        assert_eq!(b, &[0, 1]);
        let m = bg.measure(0);
        let interior = bg.induced_interior_graph();
        TwoPoint {
            m,
            deg: n.lichnerowicz_factor() * k,
            deg_b: n.boundary_degree_factor() * k,
            interior,
            bg,
        }
    }

    fn restrict(&self, f: &[f64]) -> Vec<f64> {
        self.interior.parent_index().iter().map(|&p| f[p]).collect()
    }

    fn omega_dot(&self, f: &[f64], g: &[f64]) -> f64 {
        self.interior.parent_index().iter().map(|&p| f[p] * g[p] * self.bg.measure(p)).sum()
    }

    fn omega_sum(&self, f: &[f64]) -> f64 {
        self.omega_dot(f, &vec![1.0; f.len()])
    }

    /// `⟨df, df⟩` over interior edges.
    fn omega_energy(&self, f: &[f64]) -> f64 {
        let p = self.interior.parent_index();
        self.interior.edges().iter().map(|e| (f[p[e.v]] - f[p[e.u]]).powi(2) * e.weight).sum()
    }

    fn local(&self, x: usize) -> usize {
        self.interior.parent_index().iter().position(|&p| p == x).unwrap()
    }

    pub fn gamma(&self, f: &[f64], g: &[f64], x: usize) -> f64 {
        let db = self.deg_b;
        if x < 2 {
            let m = self.m;
            let one = vec![1.0; f.len()];
            return db / (4.0 * m) * self.omega_dot(f, g)
                - db / (4.0 * m) * f[x] * self.omega_dot(g, &one)
                - db / (4.0 * m) * g[x] * self.omega_dot(f, &one)
                + self.deg / 2.0 * f[x] * g[x];
        }
        let (fo, go) = (self.restrict(f), self.restrict(g));
        let gom = gamma_by_product_rule(&self.interior, &fo, &go)[self.local(x)];
        gom + db / 2.0 * f[x] * g[x] - db / 4.0 * (f[0] + f[1]) * g[x] - db / 4.0 * (g[0] + g[1]) * f[x]
            + db / 4.0 * (f[0] * g[0] + f[1] * g[1])
    }

    pub fn laplacian(&self, f: &[f64], x: usize) -> f64 {
        let db = self.deg_b;
        if x < 2 {
            return db / (2.0 * self.m) * self.omega_sum(f) - self.deg * f[x];
        }
        let lo = dense_laplacian(&self.interior, &self.restrict(f))[self.local(x)];
        lo - db * f[x] + db / 2.0 * (f[0] + f[1])
    }

    /// `Γ₂(f, f)(x)` for `f` vanishing at `x`.
    pub fn gamma2_pinned(&self, f: &[f64], x: usize) -> f64 {
        assert_eq!(f[x], 0.0);
        let (db, dg, m) = (self.deg_b, self.deg, self.m);
        let s = self.omega_sum(f);
        if x < 2 {
            let o = f[1 - x];
            return db / (2.0 * m) * self.omega_energy(f)
                + db * (3.0 * db - dg) / (8.0 * m) * self.omega_dot(f, f)
                + db * db / (8.0 * m * m) * s * s
                + db * dg / 8.0 * o * o
                - db * db / (4.0 * m) * s * o;
        }
        let fo = self.restrict(f);
        let i = self.local(x);
        let g2 = gamma2_by_product_rule(&self.interior, &fo)[i];
        let g1 = gamma_by_product_rule(&self.interior, &fo, &fo)[i];
        g2 + db * g1
            + db * db / (8.0 * m) * self.omega_dot(f, f)
            + db / 8.0 * (3.0 * dg * f[0] * f[0] + 2.0 * db * f[0] * f[1] + 3.0 * dg * f[1] * f[1])
            - db * db / (4.0 * m) * s * (f[0] + f[1])
    }
}

// ------------------------------------------------------------- random

pub fn random_function(rng: &mut impl Rng, n: usize) -> VertexFunction {
    VertexFunction::new((0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
}

/// Connected graph on `nv` vertices: a random spanning tree plus edges with
/// probability `p`; measures and weights uniform in `[0.2, 3)`.
pub fn random_connected(rng: &mut impl Rng, nv: usize, p: f64) -> WeightedGraph {
    let v: Vec<(String, f64)> = (0..nv).map(|i| (format!("v{i}"), rng.gen_range(0.2..3.0))).collect();
    let mut adj = vec![vec![false; nv]; nv];
    for i in 1..nv {
        let j = rng.gen_range(0..i);
        adj[i][j] = true;
        adj[j][i] = true;
    }
    for i in 0..nv {
        for j in (i + 1)..nv {
            if !adj[i][j] && rng.gen_bool(p) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let mut e = Vec::new();
    for i in 0..nv {
        for j in (i + 1)..nv {
            if adj[i][j] {
                e.push((format!("v{i}"), format!("v{j}"), rng.gen_range(0.2..3.0)));
            }
        }
    }
    WeightedGraph::build(&v, &e).unwrap()
}

/// Random independent boundary with nonempty interior.
pub fn random_boundary(rng: &mut impl Rng, g: WeightedGraph) -> Option<BoundaryGraph> {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.shuffle(rng);
    let mut b: Vec<usize> = Vec::new();
    for &x in &order {
        if b.len() + 1 < g.len() && b.iter().all(|&y| !g.is_adjacent(x, y)) && (b.is_empty() || rng.gen_bool(0.5)) {
            b.push(x);
        }
    }
    let ids: Vec<String> = b.iter().map(|&x| g.id(x).to_string()).collect();
    BoundaryGraph::attach(g, &ids).ok()
}

pub fn random_boundary_graph(rng: &mut impl Rng, max_vertices: usize) -> BoundaryGraph {
    loop {
        let nv = rng.gen_range(2..=max_vertices);
        let p = rng.gen_range(0.2..1.0);
        let g = random_connected(rng, nv, p);
        if let Some(bg) = random_boundary(rng, g) {
            return bg;
        }
    }
}

pub fn random_dimension(rng: &mut impl Rng) -> Dimension {
    *[
        Dimension::Finite(1.5),
        Dimension::Finite(2.0),
        Dimension::Finite(2.5),
        Dimension::Finite(3.0),
        Dimension::Finite(5.0),
        Dimension::Finite(10.0),
        Dimension::Infinite,
    ]
    .choose(rng)
    .unwrap()
}

/// A random graph with the two-point boundary structure for the returned `(K, n)`.
pub fn random_two_point(rng: &mut impl Rng, max_interior: usize) -> (BoundaryGraph, f64, Dimension) {
    let s = rng.gen_range(1..=max_interior);
    let p = rng.gen_range(0.3..1.0);
    let interior = random_connected(rng, s, p);
    let k = rng.gen_range(0.3..2.0);
    let m = rng.gen_range(0.5..2.0);
    let n = random_dimension(rng);
    let v: Vec<(String, f64)> = (0..s).map(|i| (interior.id(i).to_string(), interior.measure(i))).collect();
    let e: Vec<(String, String, f64)> = interior
        .edges()
        .iter()
        .map(|e| (interior.id(e.u).to_string(), interior.id(e.v).to_string(), e.weight))
        .collect();
    (two_point_boundary(&v, &e, n, k, m, ["b1", "b2"]).unwrap(), k, n)
}
