use crate::error::Result;
use crate::graph::{BoundaryGraph, WeightedGraph};
use crate::operators::VertexFunction;

/// Result of searching the interior for two disjoint radius-2 balls.
#[derive(Debug, Clone, PartialEq)]
pub struct BallScan {
    /// First pair `(x, y)` (indices in the scanned graph, `x < y`) whose
    /// radius-2 balls are disjoint.
    pub pair: Option<(usize, usize)>,
    pub pair_ids: Option<(String, String)>,
    pub connected: bool,
    /// Hop diameter; `None` when disconnected.
    pub diameter: Option<usize>,
}

/// Radius-2 balls around `x` and `y` are disjoint exactly when
/// `d(x, y) ≥ 5` (or the two lie in different components).
pub fn disjoint_ball_scan(interior: &WeightedGraph) -> BallScan {
    let dist: Vec<Vec<Option<usize>>> = (0..interior.len()).map(|x| interior.hop_distances(x)).collect();
    let mut pair = None;
    'outer: for x in 0..interior.len() {
        for y in (x + 1)..interior.len() {
            if dist[x][y].is_none_or(|d| d > 4) {
                pair = Some((x, y));
                break 'outer;
            }
        }
    }
    let connected = dist.iter().all(|row| row.iter().all(Option::is_some));
    let diameter = connected.then(|| {
        dist.iter().flat_map(|row| row.iter().map(|d| d.unwrap_or(0))).max().unwrap_or(0)
    });
    BallScan {
        pair,
        pair_ids: pair.map(|(x, y)| (interior.id(x).to_string(), interior.id(y).to_string())),
        connected,
        diameter,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoBallResidual {
    pub x: usize,
    pub z: usize,
    /// `(u(z)+u(x))/2 − Σ_y u(y) w_xy w_yz/m_y / Σ_y w_xy w_yz/m_y`.
    pub residual: f64,
}

/// Residuals of the averaging identity over every pair at distance 2.
pub fn two_ball_identity_check(bg: &BoundaryGraph, u: &VertexFunction) -> Result<Vec<TwoBallResidual>> {
    let g = bg.graph();
    u.check_domain(g.len())?;
    let mut out = Vec::new();
    for x in 0..g.len() {
        let dist = g.hop_distances(x);
        for z in (x + 1)..g.len() {
            if dist[z] != Some(2) {
                continue;
            }
            let (mut num, mut den) = (0.0, 0.0);
            for &(y, wxy) in g.neighbors(x) {
                let wyz = g.weight(y, z);
                if wyz > 0.0 {
                    let c = wxy * wyz / g.measure(y);
                    num += u[y] * c;
                    den += c;
                }
            }
            out.push(TwoBallResidual { x, z, residual: 0.5 * (u[z] + u[x]) - num / den });
        }
    }
    Ok(out)
}
