use nalgebra::{DMatrix, DVector};

use super::{rel_eq, CONDITION_TOLERANCE};
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::graph::BoundaryGraph;
use crate::linalg::{psd_check, symmetrize};
use crate::operators::{gamma2_form, gamma_form, laplacian_square_form, QuadraticForm, VertexFunction};

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionVerdict {
    pub passed: bool,
    /// Witness on failure, short summary on success.
    pub detail: String,
}

impl ConditionVerdict {
    pub(crate) fn pass(detail: impl Into<String>) -> Self {
        Self { passed: true, detail: detail.into() }
    }

    pub(crate) fn fail(detail: impl Into<String>) -> Self {
        Self { passed: false, detail: detail.into() }
    }
}

/// Verdicts `cond1` to `cond4` of the equality characterization.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryConditions {
    /// `|B| = 2` and every interior vertex is adjacent to both.
    pub cond1: ConditionVerdict,
    /// `m₁ = m₂` and `w₁ₓ = w₂ₓ` for all interior `x`.
    pub cond2: ConditionVerdict,
    /// `Deg(1) = Deg(2) = nK/(n−1)`.
    pub cond3: ConditionVerdict,
    /// `Deg_b(x) = (n+2)K/(n−1)` for all interior `x`.
    pub cond4: ConditionVerdict,
}

impl NecessaryConditions {
    pub fn all_pass(&self) -> bool {
        self.cond1.passed && self.cond2.passed && self.cond3.passed && self.cond4.passed
    }
}

fn check_params(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("K = {k} must be positive and finite")))
    }
}

pub fn check_necessary_conditions(bg: &BoundaryGraph, k: f64, n: Dimension) -> Result<NecessaryConditions> {
    check_params(k)?;
    let tol = CONDITION_TOLERANCE;
    let b = bg.boundary();
    let omega = bg.interior();

    let cond1 = if b.len() != 2 {
        ConditionVerdict::fail(format!("|B| = {} (expected 2)", b.len()))
    } else {
        match omega.iter().find(|&&x| !(bg.is_adjacent(x, b[0]) && bg.is_adjacent(x, b[1]))) {
            Some(&x) => ConditionVerdict::fail(format!(
                "interior vertex `{}` is not adjacent to both boundary vertices",
                bg.id(x)
            )),
            None => ConditionVerdict::pass("every interior vertex sees both boundary vertices"),
        }
    };

    let cond2 = if b.len() != 2 {
        ConditionVerdict::fail("requires |B| = 2")
    } else if !rel_eq(bg.measure(b[0]), bg.measure(b[1]), tol) {
        ConditionVerdict::fail(format!(
            "m(`{}`) = {} differs from m(`{}`) = {}",
            bg.id(b[0]),
            bg.measure(b[0]),
            bg.id(b[1]),
            bg.measure(b[1])
        ))
    } else {
        match omega.iter().find(|&&x| !rel_eq(bg.weight(b[0], x), bg.weight(b[1], x), tol)) {
            Some(&x) => ConditionVerdict::fail(format!(
                "boundary weights at `{}` differ: {} vs {}",
                bg.id(x),
                bg.weight(b[0], x),
                bg.weight(b[1], x)
            )),
            None => ConditionVerdict::pass("equal boundary measures and weights"),
        }
    };

    let deg_target = n.bound(k);
    let cond3 = match b.iter().find(|&&x| !rel_eq(bg.degree_at(x), deg_target, tol)) {
        _ if b.len() != 2 => ConditionVerdict::fail("requires |B| = 2"),
        Some(&x) => ConditionVerdict::fail(format!(
            "Deg(`{}`) = {} but nK/(n-1) = {}",
            bg.id(x),
            bg.degree_at(x),
            deg_target
        )),
        None => ConditionVerdict::pass(format!("Deg = {deg_target} on the boundary")),
    };

    let degb_target = n.boundary_degree_factor() * k;
    let mut cond4 = ConditionVerdict::pass(format!("Deg_b = {degb_target} on the interior"));
    for &x in omega {
        let d = bg.boundary_degree_at(x)?;
        if !rel_eq(d, degb_target, tol) {
            cond4 = ConditionVerdict::fail(format!(
                "Deg_b(`{}`) = {} but (n+2)K/(n-1) = {}",
                bg.id(x),
                d,
                degb_target
            ));
            break;
        }
    }

    Ok(NecessaryConditions { cond1, cond2, cond3, cond4 })
}

/// The interior quadratic form of `cond5` at one interior vertex,
/// over `ℝ^Ω` with the vertex's own coordinate removed.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorFormAssembly {
    /// Dense index (in the whole graph) of the pinned interior vertex.
    pub vertex: usize,
    /// Positions inside the interior ordering of the remaining coordinates.
    pub coordinates: Vec<usize>,
    pub matrix: DMatrix<f64>,
    pub n: Dimension,
    pub k: f64,
    /// Common boundary measure.
    pub m: f64,
}

impl InteriorFormAssembly {
    /// Value at `f ∈ ℝ^Ω` (interior order); `f(vertex)` is ignored.
    pub fn evaluate(&self, f: &VertexFunction) -> f64 {
        let v = DVector::from_iterator(
            self.coordinates.len(),
            self.coordinates.iter().map(|&i| f[i]),
        );
        v.dot(&(&self.matrix * &v))
    }
}

fn embed(dst: &mut DMatrix<f64>, form: &QuadraticForm, scale: f64) {
    let idx = form.index();
    let m = form.matrix();
    for (i, &a) in idx.iter().enumerate() {
        for (j, &b) in idx.iter().enumerate() {
            dst[(a, b)] += scale * m[(i, j)];
        }
    }
}

/// Assembles, on the induced interior graph,
/// `Γ₂^Ω − (1/(n−2))(Δ_Ω f)² + (3K/(n−1))Γ^Ω + c₁⟨f,f⟩_Ω − c₂⟨f,1⟩_Ω Δ_Ω f − c₃⟨f,1⟩_Ω²`
/// at `x` (and its `n = ∞` limit), pinned at `f(x) = 0`.
pub fn assemble_interior_form(
    bg: &BoundaryGraph,
    k: f64,
    n: Dimension,
    x: usize,
) -> Result<InteriorFormAssembly> {
    if x >= bg.len() {
        return Err(Error::UnknownVertex(x.to_string()));
    }
    let pos = bg
        .interior_position(x)
        .ok_or_else(|| Error::NotInteriorVertex(bg.id(x).to_string()))?;
    if let Dimension::Finite(nv) = n {
        if nv <= 2.0 {
            return Err(Error::PreconditionViolated(format!(
                "the interior form needs n > 2, got n = {nv}"
            )));
        }
    }
    let conds = check_necessary_conditions(bg, k, n)?;
    if !conds.all_pass() {
        return Err(Error::PreconditionViolated(
            "cond1 to cond4 must hold before assembling the interior form".into(),
        ));
    }
    let m = bg.measure(bg.boundary()[0]);
    let h = bg.induced_interior_graph();
    let dim = h.len();
    let mass = DVector::from_column_slice(h.measures());
    let mut q = DMatrix::zeros(dim, dim);
    embed(&mut q, &gamma2_form(&h, pos), 1.0);
    match n {
        Dimension::Infinite => {
            let c1 = k * k / (8.0 * m);
            let c3 = k * k / (8.0 * m * m);
            for i in 0..dim {
                q[(i, i)] += c1 * mass[i];
            }
            q -= &mass * mass.transpose() * c3;
        }
        Dimension::Finite(nv) => {
            let (n1, n2, np2) = (nv - 1.0, nv - 2.0, nv + 2.0);
            embed(&mut q, &laplacian_square_form(&h, pos), -1.0 / n2);
            embed(&mut q, &gamma_form(&h, pos), 3.0 * k / n1);
            let c1 = np2 * np2 * k * k / (8.0 * m * n1 * n1);
            let c2 = np2 * k / (n1 * n2 * m);
            let c3 = nv * np2 * np2 * k * k / (8.0 * n2 * n1 * n1 * m * m);
            for i in 0..dim {
                q[(i, i)] += c1 * mass[i];
            }
            // ⟨f,1⟩_Ω · Δ_Ω f(x) as a symmetric bilinear form
            let mut lap_row = DVector::zeros(dim);
            for &(y, w) in h.neighbors(pos) {
                lap_row[y] += w / h.measure(pos);
                lap_row[pos] -= w / h.measure(pos);
            }
            let cross = &mass * lap_row.transpose();
            q -= (&cross + cross.transpose()) * (0.5 * c2);
            q -= &mass * mass.transpose() * c3;
        }
    }
    symmetrize(&mut q);
    let coordinates: Vec<usize> = (0..dim).filter(|&i| i != pos).collect();
    let matrix = q.remove_row(pos).remove_column(pos);
    Ok(InteriorFormAssembly { vertex: x, coordinates, matrix, n, k, m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteriorBranch {
    /// `1 < n < 2`: no equality graphs exist.
    BelowTwo,
    /// `n = 2`: condition reads `|Ω| = 1`.
    Two,
    /// `n > 2` (or infinite): PSD test of the interior form at every vertex.
    AboveTwo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteriorVertexVerdict {
    pub vertex: usize,
    pub passed: bool,
    pub min_eigenvalue: f64,
    pub threshold: f64,
    /// On failure: `f ∈ ℝ^Ω` (interior order) with negative form value.
    pub witness: Option<VertexFunction>,
}

/// Verdict `cond5`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorInequality {
    pub passed: bool,
    pub branch: InteriorBranch,
    pub vertices: Vec<InteriorVertexVerdict>,
    pub explanation: String,
}

const N_EQUALS_TWO: f64 = 1e-12;

pub fn check_interior_inequality(bg: &BoundaryGraph, k: f64, n: Dimension) -> Result<InteriorInequality> {
    if !check_necessary_conditions(bg, k, n)?.all_pass() {
        return Err(Error::PreconditionViolated(
            "cond1 to cond4 must hold before checking cond5".into(),
        ));
    }
    let omega = bg.interior();
    if let Dimension::Finite(nv) = n {
        if (nv - 2.0).abs() <= N_EQUALS_TWO {
            let passed = omega.len() == 1;
            return Ok(InteriorInequality {
                passed,
                branch: InteriorBranch::Two,
                vertices: Vec::new(),
                explanation: format!("n = 2 requires |Omega| = 1; |Omega| = {}", omega.len()),
            });
        }
        if nv < 2.0 {
            return Ok(InteriorInequality {
                passed: false,
                branch: InteriorBranch::BelowTwo,
                vertices: Vec::new(),
                explanation: "1 < n < 2: CD(K, n) fails at every interior vertex under cond1 to cond4"
                    .into(),
            });
        }
    }
    let mut vertices = Vec::with_capacity(omega.len());
    for &x in omega {
        let form = assemble_interior_form(bg, k, n, x)?;
        let check = psd_check(&form.matrix);
        let passed = check.is_psd();
        let witness = (!passed).then(|| {
            let v = check.vector.as_ref().expect("failing form is non-empty");
            let mut f = vec![0.0; omega.len()];
            for (i, &c) in form.coordinates.iter().enumerate() {
                f[c] = v[i];
            }
            VertexFunction::new(f)
        });
        vertices.push(InteriorVertexVerdict {
            vertex: x,
            passed,
            min_eigenvalue: check.min_eigenvalue,
            threshold: check.threshold,
            witness,
        });
    }
    let passed = vertices.iter().all(|v| v.passed);
    let explanation = match vertices.iter().find(|v| !v.passed) {
        Some(v) => format!(
            "interior form at `{}` has eigenvalue {} < {}",
            bg.id(v.vertex),
            v.min_eigenvalue,
            v.threshold
        ),
        None => "interior form is PSD at every interior vertex".into(),
    };
    Ok(InteriorInequality { passed, branch: InteriorBranch::AboveTwo, vertices, explanation })
}
