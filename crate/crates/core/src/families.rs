//! Constructors for the rigid example graphs and for the general
//! two-point-boundary construction over an arbitrary interior.

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::graph::{BoundaryGraph, WeightedGraph};

#[derive(Debug, Clone, PartialEq)]
pub enum ExampleFamily {
    /// Unit-weight path `1 – 2 – 3` with `B = {1, 3}`.
    UnitPath3,
    /// Unit-weight 4-cycle `1 2 3 4` with `B = {1, 3}`.
    UnitSquare,
    /// Unit-weight 4-cycle plus the diagonal `{2, 4}`, `B = {1, 3}`.
    UnitSquareDiag,
    /// Path `1 – x – 2`, `B = {1, 2}`, `m₁ = m₂ = m`,
    /// `w₁ₓ = w₂ₓ = mnK/(n−1)`, `m_x = 2nm/(n+2)`.
    WeightedPath3 { n: Dimension, k: f64, m: f64 },
    /// Square with diagonal boundary `{1, 2}` and interior `{x, y}`; all
    /// measures `m`, all weights `mK/2`.
    WeightedSquare { k: f64, m: f64 },
    /// `B = {b1, b2}` joined to a unit complete graph on `interior_size`
    /// vertices whose weights are scaled by `lambda`.
    CompleteInterior { interior_size: usize, n: Dimension, k: f64, m: f64, lambda: f64 },
}

impl ExampleFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ExampleFamily::UnitPath3 => "unit_path3",
            ExampleFamily::UnitSquare => "unit_square",
            ExampleFamily::UnitSquareDiag => "unit_square_diag",
            ExampleFamily::WeightedPath3 { .. } => "weighted_path3",
            ExampleFamily::WeightedSquare { .. } => "weighted_square",
            ExampleFamily::CompleteInterior { .. } => "complete_interior",
        }
    }
}

fn invalid(family: &ExampleFamily, reason: impl Into<String>) -> Error {
    Error::InvalidFamilyParams { family: family.name().to_string(), reason: reason.into() }
}

fn positive(family: &ExampleFamily, name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(family, format!("{name} = {v} must be positive and finite")))
    }
}

fn unit_graph(n: usize, edges: &[(usize, usize)], boundary: &[&str]) -> Result<BoundaryGraph> {
    let v: Vec<(String, f64)> = (1..=n).map(|i| (i.to_string(), 1.0)).collect();
    let e: Vec<(String, String, f64)> =
        edges.iter().map(|&(a, b)| (a.to_string(), b.to_string(), 1.0)).collect();
    BoundaryGraph::attach(WeightedGraph::build(&v, &e)?, boundary)
}

/// Builds the graph of the requested family.
pub fn make_example(family: &ExampleFamily) -> Result<BoundaryGraph> {
    match *family {
        ExampleFamily::UnitPath3 => unit_graph(3, &[(1, 2), (2, 3)], &["1", "3"]),
        ExampleFamily::UnitSquare => unit_graph(4, &[(1, 2), (2, 3), (3, 4), (4, 1)], &["1", "3"]),
        ExampleFamily::UnitSquareDiag => {
            unit_graph(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)], &["1", "3"])
        }
        ExampleFamily::WeightedPath3 { n, k, m } => {
            positive(family, "K", k)?;
            positive(family, "m", m)?;
            let interior = [("x".to_string(), 1.0)];
            two_point_boundary(&interior, &[], n, k, m, ["1", "2"])
        }
        ExampleFamily::WeightedSquare { k, m } => {
            positive(family, "K", k)?;
            positive(family, "m", m)?;
            let interior = [("x".to_string(), 1.0), ("y".to_string(), 1.0)];
            two_point_boundary(&interior, &[], Dimension::Infinite, k, m, ["1", "2"])
        }
        ExampleFamily::CompleteInterior { interior_size, n, k, m, lambda } => {
            positive(family, "K", k)?;
            positive(family, "m", m)?;
            positive(family, "lambda", lambda)?;
            if interior_size == 0 {
                return Err(invalid(family, "interior_size must be at least 1"));
            }
            let vertices: Vec<(String, f64)> =
                (1..=interior_size).map(|i| (format!("x{i}"), 1.0)).collect();
            let mut edges = Vec::new();
            for i in 1..=interior_size {
                for j in (i + 1)..=interior_size {
                    edges.push((format!("x{i}"), format!("x{j}"), lambda));
                }
            }
            two_point_boundary(&vertices, &edges, n, k, m, ["b1", "b2"])
        }
    }
}

/// Unit complete graph on `x1 … x{size}`.
pub fn complete_graph(size: usize) -> Result<WeightedGraph> {
    let vertices: Vec<(String, f64)> = (1..=size).map(|i| (format!("x{i}"), 1.0)).collect();
    let mut edges = Vec::new();
    for i in 1..=size {
        for j in (i + 1)..=size {
            edges.push((format!("x{i}"), format!("x{j}"), 1.0));
        }
    }
    WeightedGraph::build(&vertices, &edges)
}

/// Attaches `B = {b1, b2}` to an interior given by vertex and edge specs so
/// that the two boundary measures are `m`, each interior vertex has equal
/// weights `w_x` to both boundary vertices, `Deg(b) = nK/(n−1)` and
/// `Deg_b(x) = (n+2)K/(n−1)`.
///
/// Interior measures are rescaled by a common factor to reach the forced
/// total `V_Ω = 2nm/(n+2)`; interior edge weights are kept.
pub fn two_point_boundary<S: AsRef<str>>(
    interior_vertices: &[(S, f64)],
    interior_edges: &[(S, S, f64)],
    n: Dimension,
    k: f64,
    m: f64,
    boundary_ids: [&str; 2],
) -> Result<BoundaryGraph> {
    if !(k > 0.0 && k.is_finite() && m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParams(format!("need K > 0 and m > 0, got K = {k}, m = {m}")));
    }
    if interior_vertices.is_empty() {
        return Err(Error::EmptyInterior);
    }
    let mut ids = boundary_ids.map(str::to_string);
    let taken = |id: &str| interior_vertices.iter().any(|(v, _)| v.as_ref() == id);
    for id in &mut ids {
        while taken(id) {
            id.push('\'');
        }
    }
    let volume: f64 = interior_vertices.iter().map(|(_, mx)| *mx).sum();
    let target = n.interior_volume_factor() * m;
    let scale = target / volume;
    let deg_b = n.boundary_degree_factor() * k;

    let mut vertices: Vec<(String, f64)> = vec![(ids[0].clone(), m), (ids[1].clone(), m)];
    let mut edges: Vec<(String, String, f64)> = Vec::new();
    for (id, mx) in interior_vertices {
        vertices.push((id.as_ref().to_string(), mx * scale));
    }
    for (a, b, w) in interior_edges {
        edges.push((a.as_ref().to_string(), b.as_ref().to_string(), *w));
    }
    for bid in &ids {
        for (id, mx) in interior_vertices {
            edges.push((bid.clone(), id.as_ref().to_string(), 0.5 * deg_b * mx * scale));
        }
    }
    let graph = WeightedGraph::build(&vertices, &edges)?;
    BoundaryGraph::attach(graph, &ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_path3_formulas() {
        let bg = make_example(&ExampleFamily::WeightedPath3 {
            n: Dimension::Finite(3.0),
            k: 2.0 / 3.0,
            m: 1.0,
        })
        .unwrap();
        let x = bg.index_of("x").unwrap();
        assert!((bg.measure(x) - 1.2).abs() < 1e-15);
        assert!((bg.weight(0, x) - 1.0).abs() < 1e-15);
        assert!((bg.weight(1, x) - 1.0).abs() < 1e-15);
        assert!((bg.degree_at(x) - 5.0 / 3.0).abs() < 1e-14);
        assert!((bg.boundary_degree("x").unwrap() - 5.0 / 3.0).abs() < 1e-14);
        assert!((bg.volume(&["x"]).unwrap() - 1.2).abs() < 1e-15);

        let bg = make_example(&ExampleFamily::WeightedPath3 { n: Dimension::Infinite, k: 1.0, m: 1.0 })
            .unwrap();
        let x = bg.index_of("x").unwrap();
        assert_eq!(bg.measure(x), 2.0);
        assert_eq!(bg.weight(0, x), 1.0);
    }

    #[test]
    fn weighted_square_with_k2_is_unit_c4() {
        let bg = make_example(&ExampleFamily::WeightedSquare { k: 2.0, m: 1.0 }).unwrap();
        assert!(bg.is_unit_weight());
        assert_eq!(bg.edges().len(), 4);
        assert!(bg.induced_interior_graph().is_edgeless());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(
            make_example(&ExampleFamily::WeightedPath3 { n: Dimension::Infinite, k: -1.0, m: 1.0 }),
            Err(Error::InvalidFamilyParams { .. })
        ));
        assert!(matches!(
            make_example(&ExampleFamily::CompleteInterior {
                interior_size: 0,
                n: Dimension::Finite(3.0),
                k: 1.0,
                m: 1.0,
                lambda: 1.0
            }),
            Err(Error::InvalidFamilyParams { .. })
        ));
    }

    #[test]
    fn complete_interior_satisfies_boundary_data() {
        let n = Dimension::Finite(5.0);
        let bg = make_example(&ExampleFamily::CompleteInterior {
            interior_size: 3,
            n,
            k: 1.0,
            m: 2.0,
            lambda: 4.0,
        })
        .unwrap();
        assert_eq!(bg.boundary_ids(), vec!["b1", "b2"]);
        for &b in bg.boundary() {
            assert!((bg.degree_at(b) - n.bound(1.0)).abs() < 1e-12);
        }
        for &x in bg.interior() {
            assert!((bg.boundary_degree_at(x).unwrap() - 7.0 / 4.0).abs() < 1e-12);
        }
        let vol = bg.volume_of_indices(bg.interior());
        assert!((vol - 2.0 * 5.0 * 2.0 / 7.0).abs() < 1e-12);
        assert_eq!(bg.induced_interior_graph().edges().len(), 3);
    }

    #[test]
    fn boundary_ids_avoid_collisions() {
        let bg = two_point_boundary(&[("b1", 1.0)], &[], Dimension::Infinite, 1.0, 1.0, ["b1", "b2"])
            .unwrap();
        assert_eq!(bg.boundary_ids(), vec!["b1'", "b2"]);
    }
}
