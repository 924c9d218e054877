use super::conditions::check_interior_inequality;
use crate::curvature::curvature_at_real_dimension;
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::families::two_point_boundary;
use crate::graph::{BoundaryGraph, WeightedGraph};

/// Upper limit of the interior weight scale search.
pub const LAMBDA_MAX: f64 = 1e8;
/// Bisection stops once `hi/lo ≤ 1 + LAMBDA_RESOLUTION`.
const LAMBDA_RESOLUTION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct RigidFamily {
    pub graph: BoundaryGraph,
    /// Scale actually applied to the interior weights.
    pub lambda: f64,
    /// Least scale (to bisection resolution) at which the interior
    /// inequality holds; `None` when `lambda` was supplied.
    pub threshold_lambda: Option<f64>,
    /// `min_x K(x, n−2)` of the interior; `None` for a single vertex.
    pub interior_curvature: Option<f64>,
}

/// Joins `B = {b1, b2}` to every vertex of a complete `interior` with
/// boundary data satisfying cond1 to cond4 for `(K, n)` and scales the
/// interior weights by `lambda` (searched when `None`).
///
/// The search finds the least `λ ≥ 1` passing the interior inequality and
/// returns the graph at twice that value.
pub fn construct_rigid_family(
    interior: &WeightedGraph,
    n: Dimension,
    k: f64,
    m: f64,
    lambda: Option<f64>,
) -> Result<RigidFamily> {
    if let Dimension::Finite(nv) = n {
        if nv <= 2.0 {
            return Err(Error::InvalidParams(format!("construction needs n > 2, got {nv}")));
        }
    }
    if !(k > 0.0 && k.is_finite() && m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParams(format!("need K > 0 and m > 0, got K = {k}, m = {m}")));
    }
    for x in 0..interior.len() {
        for y in (x + 1)..interior.len() {
            if !interior.is_adjacent(x, y) {
                return Err(Error::InteriorNotComplete(
                    interior.id(x).to_string(),
                    interior.id(y).to_string(),
                ));
            }
        }
    }
    let interior_curvature = if interior.len() >= 2 {
        let dim = match n {
            Dimension::Finite(nv) => nv - 2.0,
            Dimension::Infinite => f64::INFINITY,
        };
        let mut kappa = f64::INFINITY;
        for x in 0..interior.len() {
            kappa = kappa.min(curvature_at_real_dimension(interior, x, dim)?);
        }
        if !(kappa > 0.0) {
            return Err(Error::InteriorCurvatureNotPositive { dimension: dim, kappa });
        }
        Some(kappa)
    } else {
        None
    };

    let vertices = interior.vertex_specs();
    let build = |lambda: f64| -> Result<BoundaryGraph> {
        let edges: Vec<(String, String, f64)> = interior
            .edge_specs()
            .into_iter()
            .map(|(a, b, w)| (a, b, w * lambda))
            .collect();
        two_point_boundary(&vertices, &edges, n, k, m, ["b1", "b2"])
    };
    let passes = |lambda: f64| -> Result<bool> {
        Ok(check_interior_inequality(&build(lambda)?, k, n)?.passed)
    };

    if let Some(l) = lambda {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidParams(format!("lambda = {l} must be positive")));
        }
        return Ok(RigidFamily { graph: build(l)?, lambda: l, threshold_lambda: None, interior_curvature });
    }

    let threshold = if passes(1.0)? {
        1.0
    } else {
        let mut lo = 1.0;
        let mut hi = 2.0;
        while !passes(hi)? {
            lo = hi;
            hi *= 2.0;
            if hi > LAMBDA_MAX {
                return Err(Error::FeasibilitySearchFailed { lambda_max: LAMBDA_MAX });
            }
        }
        while hi / lo > 1.0 + LAMBDA_RESOLUTION {
            let mid = (lo * hi).sqrt();
            if passes(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let lambda = 2.0 * threshold;
    Ok(RigidFamily {
        graph: build(lambda)?,
        lambda,
        threshold_lambda: Some(threshold),
        interior_curvature,
    })
}
