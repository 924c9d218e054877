//! Weighted graphs `(G, m, w)` and graphs with boundary `(G, B)`.
//!
//! Vertex ids are opaque strings; internally every vertex gets a dense index
//! in declaration order, and all vectors (functions, spectra, reports) follow
//! that order.

use std::collections::{HashMap, VecDeque};
use std::ops::Deref;

use crate::error::{Error, Result};

/// An undirected edge between dense vertex indices, as declared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// A finite, simple, connected weighted graph with positive vertex measure
/// and positive symmetric edge weights. Immutable after construction.
///
/// The only way to obtain a disconnected instance is through
/// [`InducedGraph`], which wraps it and says so.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    measure: Vec<f64>,
    edges: Vec<Edge>,
    // sorted by neighbour index
    adjacency: Vec<Vec<(usize, f64)>>,
}

fn check_positive(what: impl FnOnce() -> String, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveValue { what: what(), value })
    }
}

impl WeightedGraph {
    /// Builds and validates a connected weighted graph from vertex
    /// `(id, measure)` and edge `(u, v, weight)` lists.
    pub fn build<S: AsRef<str>>(vertices: &[(S, f64)], edges: &[(S, S, f64)]) -> Result<Self> {
        let g = Self::build_unchecked_connectivity(vertices, edges)?;
        if g.ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let dist = g.hop_distances(0);
        if let Some(i) = dist.iter().position(Option::is_none) {
            return Err(Error::Disconnected(g.ids[i].clone()));
        }
        Ok(g)
    }

    fn build_unchecked_connectivity<S: AsRef<str>>(
        vertices: &[(S, f64)],
        edges: &[(S, S, f64)],
    ) -> Result<Self> {
        let mut ids = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        let mut measure = Vec::with_capacity(vertices.len());
        for (id, m) in vertices {
            let id = id.as_ref();
            if index.insert(id.to_string(), ids.len()).is_some() {
                return Err(Error::DuplicateVertex(id.to_string()));
            }
            check_positive(|| format!("measure of vertex `{id}`"), *m)?;
            ids.push(id.to_string());
            measure.push(*m);
        }
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); ids.len()];
        let mut out = Vec::with_capacity(edges.len());
        for (a, b, w) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index.get(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let v = *index.get(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            if u == v {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if adjacency[u].iter().any(|&(y, _)| y == v) {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            check_positive(|| format!("weight of edge {{`{a}`, `{b}`}}"), *w)?;
            adjacency[u].push((v, *w));
            adjacency[v].push((u, *w));
            out.push(Edge { u, v, weight: *w });
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(y, _)| y);
        }
        Ok(Self { ids, index, measure, edges: out, adjacency })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn measures(&self) -> &[f64] {
        &self.measure
    }

    pub fn measure(&self, x: usize) -> f64 {
        self.measure[x]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `x` with edge weights, sorted by vertex index.
    pub fn neighbors(&self, x: usize) -> &[(usize, f64)] {
        &self.adjacency[x]
    }

    /// `w_xy`, zero when `x` and `y` are not adjacent.
    pub fn weight(&self, x: usize, y: usize) -> f64 {
        let list = &self.adjacency[x];
        match list.binary_search_by_key(&y, |&(z, _)| z) {
            Ok(i) => list[i].1,
            Err(_) => 0.0,
        }
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.weight(x, y) > 0.0
    }

    /// `Deg(x) = (1/m_x) Σ_y w_xy` by dense index.
    pub fn degree_at(&self, x: usize) -> f64 {
        self.adjacency[x].iter().map(|&(_, w)| w).sum::<f64>() / self.measure[x]
    }

    /// Weighted degree of the vertex with the given id.
    pub fn weighted_degree(&self, id: &str) -> Result<f64> {
        Ok(self.degree_at(self.index_of(id)?))
    }

    /// `V_S = Σ_{x∈S} m_x`.
    pub fn volume<S: AsRef<str>>(&self, set: &[S]) -> Result<f64> {
        let mut total = 0.0;
        for id in set {
            total += self.measure[self.index_of(id.as_ref())?];
        }
        Ok(total)
    }

    pub fn volume_of_indices(&self, set: &[usize]) -> f64 {
        set.iter().map(|&x| self.measure[x]).sum()
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn hop_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for &(y, _) in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Vertices at hop distance at most `radius` from `x`, ordered by
    /// distance and then by index.
    pub fn ball(&self, x: usize, radius: usize) -> Vec<usize> {
        let dist = self.hop_distances(x);
        let mut ball: Vec<(usize, usize)> = dist
            .iter()
            .enumerate()
            .filter_map(|(y, d)| d.filter(|&d| d <= radius).map(|d| (d, y)))
            .collect();
        ball.sort_unstable();
        ball.into_iter().map(|(_, y)| y).collect()
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let comp: Vec<usize> = self
                .hop_distances(s)
                .iter()
                .enumerate()
                .filter_map(|(y, d)| d.map(|_| y))
                .collect();
            for &y in &comp {
                seen[y] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when `m ≡ 1` and `w ≡ 1` exactly.
    pub fn is_unit_weight(&self) -> bool {
        self.measure.iter().all(|&m| m == 1.0) && self.edges.iter().all(|e| e.weight == 1.0)
    }

    /// Copy with every edge weight multiplied by `lambda` (measures unchanged).
    pub fn scale_weights(&self, lambda: f64) -> Result<Self> {
        check_positive(|| "weight scale".to_string(), lambda)?;
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight *= lambda;
        }
        for list in &mut g.adjacency {
            for (_, w) in list.iter_mut() {
                *w *= lambda;
            }
        }
        Ok(g)
    }

    pub(crate) fn vertex_specs(&self) -> Vec<(String, f64)> {
        self.ids.iter().cloned().zip(self.measure.iter().copied()).collect()
    }

    pub(crate) fn edge_specs(&self) -> Vec<(String, String, f64)> {
        self.edges
            .iter()
            .map(|e| (self.ids[e.u].clone(), self.ids[e.v].clone(), e.weight))
            .collect()
    }
}

/// The graph induced on a vertex subset. It inherits measures and weights
/// but may be disconnected or edgeless, so it is kept apart from validated
/// [`WeightedGraph`] values; it still dereferences to one so every operator
/// applies to it.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedGraph {
    graph: WeightedGraph,
    /// Dense index in the parent graph for each vertex of the induced graph.
    parent_index: Vec<usize>,
}

impl InducedGraph {
    pub fn parent_index(&self) -> &[usize] {
        &self.parent_index
    }

    pub fn is_edgeless(&self) -> bool {
        self.graph.edges.is_empty()
    }

    pub fn as_graph(&self) -> &WeightedGraph {
        &self.graph
    }
}

impl Deref for InducedGraph {
    type Target = WeightedGraph;

    fn deref(&self) -> &WeightedGraph {
        &self.graph
    }
}

impl WeightedGraph {
    /// Subgraph induced on `subset` (dense indices, kept in the given order).
    pub fn induced(&self, subset: &[usize]) -> InducedGraph {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &x) in subset.iter().enumerate() {
            local[x] = i;
        }
        let mut adjacency = vec![Vec::new(); subset.len()];
        let mut edges = Vec::new();
        for e in &self.edges {
            let (a, b) = (local[e.u], local[e.v]);
            if a != usize::MAX && b != usize::MAX {
                adjacency[a].push((b, e.weight));
                adjacency[b].push((a, e.weight));
                edges.push(Edge { u: a, v: b, weight: e.weight });
            }
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(y, _)| y);
        }
        let ids: Vec<String> = subset.iter().map(|&x| self.ids[x].clone()).collect();
        let index = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        let measure = subset.iter().map(|&x| self.measure[x]).collect();
        InducedGraph {
            graph: WeightedGraph { ids, index, measure, edges, adjacency },
            parent_index: subset.to_vec(),
        }
    }
}

/// A weighted graph with a validated vertex boundary `B` and interior
/// `Ω = V \ B`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGraph {
    graph: WeightedGraph,
    is_boundary: Vec<bool>,
    boundary: Vec<usize>,
    interior: Vec<usize>,
}

impl BoundaryGraph {
    /// Attaches boundary `b` (a set of vertex ids) to `graph`.
    ///
    /// `B` must be a non-empty independent set with non-empty complement,
    /// and every boundary vertex needs an interior neighbour.
    pub fn attach<S: AsRef<str>>(graph: WeightedGraph, b: &[S]) -> Result<Self> {
        let mut is_boundary = vec![false; graph.len()];
        for id in b {
            is_boundary[graph.index_of(id.as_ref())?] = true;
        }
        let boundary: Vec<usize> = (0..graph.len()).filter(|&x| is_boundary[x]).collect();
        let interior: Vec<usize> = (0..graph.len()).filter(|&x| !is_boundary[x]).collect();
        if boundary.is_empty() {
            return Err(Error::EmptyBoundary);
        }
        if interior.is_empty() {
            return Err(Error::EmptyInterior);
        }
        for e in graph.edges() {
            if is_boundary[e.u] && is_boundary[e.v] {
                let (a, b) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
                return Err(Error::BoundaryNotIndependent(
                    graph.id(a).to_string(),
                    graph.id(b).to_string(),
                ));
            }
        }
        for &x in &boundary {
            if graph.neighbors(x).is_empty() {
                return Err(Error::BoundaryVertexIsolatedFromInterior(graph.id(x).to_string()));
            }
        }
        Ok(Self { graph, is_boundary, boundary, interior })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    /// Boundary vertices in vertex order.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// Interior vertices in vertex order.
    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn is_boundary(&self, x: usize) -> bool {
        self.is_boundary[x]
    }

    pub fn boundary_ids(&self) -> Vec<&str> {
        self.boundary.iter().map(|&x| self.graph.id(x)).collect()
    }

    pub fn interior_ids(&self) -> Vec<&str> {
        self.interior.iter().map(|&x| self.graph.id(x)).collect()
    }

    /// `Deg_b(x) = (1/m_x) Σ_{y∈B} w_xy` for interior `x` (dense index).
    pub fn boundary_degree_at(&self, x: usize) -> Result<f64> {
        if self.is_boundary[x] {
            return Err(Error::NotInteriorVertex(self.graph.id(x).to_string()));
        }
        let g = &self.graph;
        let s: f64 = g
            .neighbors(x)
            .iter()
            .filter(|&&(y, _)| self.is_boundary[y])
            .map(|&(_, w)| w)
            .sum();
        Ok(s / g.measure(x))
    }

    pub fn boundary_degree(&self, id: &str) -> Result<f64> {
        self.boundary_degree_at(self.graph.index_of(id)?)
    }

    /// Graph induced on `Ω`; may be disconnected or edgeless.
    pub fn induced_interior_graph(&self) -> InducedGraph {
        self.graph.induced(&self.interior)
    }

    /// Position of a boundary vertex inside [`Self::boundary`].
    pub fn boundary_position(&self, x: usize) -> Option<usize> {
        self.boundary.binary_search(&x).ok()
    }

    /// Position of an interior vertex inside [`Self::interior`].
    pub fn interior_position(&self, x: usize) -> Option<usize> {
        self.interior.binary_search(&x).ok()
    }
}

impl Deref for BoundaryGraph {
    type Target = WeightedGraph;

    fn deref(&self) -> &WeightedGraph {
        &self.graph
    }
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
    fn builds_unit_path() {
        let g = p3();
        assert_eq!(g.len(), 3);
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(0, 2), 0.0);
        assert!(g.is_unit_weight());
    }

    #[test]
    fn single_vertex_is_connected() {
        let g = WeightedGraph::build::<&str>(&[("a", 1.0)], &[]).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.is_connected());
    }

    #[test]
    fn validation_errors_name_the_offender() {
        let v = [("1", 1.0), ("2", 1.0)];
        assert_eq!(
            WeightedGraph::build(&v, &[("1", "2", 1.0), ("1", "2", 2.0)]),
            Err(Error::DuplicateEdge("1".into(), "2".into()))
        );
        assert_eq!(
            WeightedGraph::build(&v, &[("1", "2", 1.0), ("2", "1", 2.0)]),
            Err(Error::DuplicateEdge("2".into(), "1".into()))
        );
        assert_eq!(
            WeightedGraph::build(&v, &[("1", "1", 1.0)]),
            Err(Error::SelfLoop("1".into()))
        );
        assert_eq!(
            WeightedGraph::build(&[("1", 1.0), ("1", 1.0)], &[]),
            Err(Error::DuplicateVertex("1".into()))
        );
        assert!(matches!(
            WeightedGraph::build(&[("1", -1.0)], &[]),
            Err(Error::NonPositiveValue { .. })
        ));
        assert!(matches!(
            WeightedGraph::build(&v, &[("1", "2", 0.0)]),
            Err(Error::NonPositiveValue { .. })
        ));
        assert_eq!(WeightedGraph::build(&v, &[]), Err(Error::Disconnected("2".into())));
        assert_eq!(
            WeightedGraph::build(&v, &[("1", "3", 1.0)]),
            Err(Error::UnknownVertex("3".into()))
        );
    }

    #[test]
    fn attach_boundary_cases() {
        let bg = BoundaryGraph::attach(p3(), &["1", "3"]).unwrap();
        assert_eq!(bg.interior_ids(), vec!["2"]);

        assert_eq!(
            BoundaryGraph::attach(c4(), &["1", "2"]),
            Err(Error::BoundaryNotIndependent("1".into(), "2".into()))
        );
        let bg = BoundaryGraph::attach(c4(), &["1", "3"]).unwrap();
        assert_eq!(bg.interior_ids(), vec!["2", "4"]);

        assert_eq!(BoundaryGraph::attach::<&str>(p3(), &[]), Err(Error::EmptyBoundary));
        let k2 = unit(2, &[(1, 2)]);
        assert_eq!(BoundaryGraph::attach(k2, &["1", "2"]), Err(Error::EmptyInterior));
        let single = WeightedGraph::build::<&str>(&[("a", 1.0)], &[]).unwrap();
        assert_eq!(BoundaryGraph::attach(single.clone(), &["a"]), Err(Error::EmptyInterior));
        assert_eq!(BoundaryGraph::attach(p3(), &["9"]), Err(Error::UnknownVertex("9".into())));
    }

    #[test]
    fn degrees_and_volume() {
        let g = p3();
        assert_eq!(g.weighted_degree("2").unwrap(), 2.0);
        assert_eq!(g.weighted_degree("1").unwrap(), 1.0);
        assert_eq!(g.weighted_degree("x"), Err(Error::UnknownVertex("x".into())));
        assert_eq!(g.volume::<&str>(&[]).unwrap(), 0.0);
        assert_eq!(g.volume(&["1", "2", "3"]).unwrap(), 3.0);

        let bg = BoundaryGraph::attach(p3(), &["1", "3"]).unwrap();
        assert_eq!(bg.boundary_degree("2").unwrap(), 2.0);
        assert_eq!(bg.boundary_degree("1"), Err(Error::NotInteriorVertex("1".into())));
        let bg = BoundaryGraph::attach(c4(), &["1", "3"]).unwrap();
        assert_eq!(bg.boundary_degree("2").unwrap(), 2.0);

        let p5 = unit(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let bg = BoundaryGraph::attach(p5, &["1", "5"]).unwrap();
        assert_eq!(bg.boundary_degree("3").unwrap(), 0.0);
    }

    #[test]
    fn induced_interior_graphs() {
        let bg = BoundaryGraph::attach(c4(), &["1", "3"]).unwrap();
        let h = bg.induced_interior_graph();
        assert_eq!(h.ids(), &["2".to_string(), "4".to_string()]);
        assert!(h.is_edgeless());
        assert!(!h.is_connected());

        let diag = unit(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)]);
        let bg = BoundaryGraph::attach(diag, &["1", "3"]).unwrap();
        let h = bg.induced_interior_graph();
        assert_eq!(h.edges().len(), 1);
        assert_eq!(h.weight(0, 1), 1.0);

        let bg = BoundaryGraph::attach(p3(), &["1", "3"]).unwrap();
        let h = bg.induced_interior_graph();
        assert_eq!(h.len(), 1);
        assert_eq!(h.parent_index(), &[1]);
    }

    #[test]
    fn balls_are_ordered_by_distance() {
        let g = unit(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(g.ball(2, 2), vec![2, 1, 3, 0, 4]);
        assert_eq!(g.ball(0, 1), vec![0, 1]);
    }
}
