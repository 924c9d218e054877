use super::{rel_eq, CONDITION_TOLERANCE};
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::graph::BoundaryGraph;

/// Which rigid family a graph belongs to.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    UnitPath3,
    UnitSquare,
    UnitSquareDiag,
    WeightedPath3 { n: Dimension, k: f64, m: f64 },
    WeightedSquare { k: f64, m: f64 },
    GeneralEquality,
    NotRigid,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::UnitPath3 => "unit_path3",
            Classification::UnitSquare => "unit_square",
            Classification::UnitSquareDiag => "unit_square_diag",
            Classification::WeightedPath3 { .. } => "weighted_path3",
            Classification::WeightedSquare { .. } => "weighted_square",
            Classification::GeneralEquality => "general_equality",
            Classification::NotRigid => "not_rigid",
        }
    }

    /// The forced `(K, n)` of the family, when the family fixes them.
    pub fn params(&self) -> Option<(f64, Dimension)> {
        match *self {
            Classification::UnitPath3 => Some((0.5, Dimension::Finite(2.0))),
            Classification::UnitSquare | Classification::UnitSquareDiag => {
                Some((2.0, Dimension::Infinite))
            }
            Classification::WeightedPath3 { n, k, .. } => Some((k, n)),
            Classification::WeightedSquare { k, .. } => Some((k, Dimension::Infinite)),
            Classification::GeneralEquality | Classification::NotRigid => None,
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Brute-force isomorphism test against a template that keeps the
/// boundary set in place.
fn isomorphic_to(bg: &BoundaryGraph, order: usize, edges: &[(usize, usize)], boundary: &[usize]) -> bool {
    if bg.len() != order || bg.edges().len() != edges.len() || bg.boundary().len() != boundary.len() {
        return false;
    }
    permutations(order).into_iter().any(|p| {
        boundary.iter().all(|&t| bg.is_boundary(p[t]))
            && edges.iter().all(|&(a, b)| bg.is_adjacent(p[a], p[b]))
    })
}

/// Matches a unit-weight graph against the three unit rigid graphs.
pub fn classify_unit_weight(bg: &BoundaryGraph) -> Result<Classification> {
    if !bg.is_unit_weight() {
        return Err(Error::WrongWeightClass("graph is not unit-weight".into()));
    }
    let cycle = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let with_diag = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)];
    Ok(if isomorphic_to(bg, 3, &[(0, 1), (1, 2)], &[0, 2]) {
        Classification::UnitPath3
    } else if isomorphic_to(bg, 4, &cycle, &[0, 2]) {
        Classification::UnitSquare
    } else if isomorphic_to(bg, 4, &with_diag, &[0, 2]) {
        Classification::UnitSquareDiag
    } else {
        Classification::NotRigid
    })
}

/// Matches a graph with edgeless interior against the weighted path and
/// weighted square families for the given `(K, n)`.
pub fn classify_partial(bg: &BoundaryGraph, k: f64, n: Dimension) -> Result<Classification> {
    if !bg.induced_interior_graph().is_edgeless() {
        return Err(Error::WrongHypothesis("interior graph has edges".into()));
    }
    let tol = CONDITION_TOLERANCE;
    let b = bg.boundary();
    let omega = bg.interior();
    if b.len() != 2 || !rel_eq(bg.measure(b[0]), bg.measure(b[1]), tol) {
        return Ok(Classification::NotRigid);
    }
    let m = bg.measure(b[0]);
    let weights_are = |target: f64| {
        omega
            .iter()
            .all(|&x| b.iter().all(|&y| rel_eq(bg.weight(x, y), target, tol)))
    };
    match omega.len() {
        1 => {
            let x = omega[0];
            let w = m * n.bound(k);
            let mx = n.interior_volume_factor() * m;
            if weights_are(w) && rel_eq(bg.measure(x), mx, tol) {
                return Ok(Classification::WeightedPath3 { n, k, m });
            }
        }
        2 if n.is_infinite()
            && weights_are(0.5 * m * k) && omega.iter().all(|&x| rel_eq(bg.measure(x), m, tol)) => {
                return Ok(Classification::WeightedSquare { k, m });
            }
        _ => {}
    }
    Ok(Classification::NotRigid)
}

/// For normalized weights (`Deg ≡ 1`): only `(K, n) = (1, ∞)` and edgeless
/// interiors can be rigid.
pub fn classify_normalized(bg: &BoundaryGraph) -> Result<Classification> {
    if let Some(x) = (0..bg.len()).find(|&x| !rel_eq(bg.degree_at(x), 1.0, CONDITION_TOLERANCE)) {
        return Err(Error::WrongWeightClass(format!(
            "Deg(`{}`) = {} but normalized weights need Deg = 1",
            bg.id(x),
            bg.degree_at(x)
        )));
    }
    if !bg.induced_interior_graph().is_edgeless() {
        return Ok(Classification::NotRigid);
    }
    classify_partial(bg, 1.0, Dimension::Infinite)
}
