use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dimension parameter `n` of the curvature-dimension condition.
///
/// `Infinite` is a first-class value: every formula that carries a `1/n`
/// factor drops that term instead of substituting a large number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dimension {
    Finite(f64),
    Infinite,
}

impl Dimension {
    /// Validated constructor: finite values must exceed 1.
    pub fn new(n: f64) -> Result<Self> {
        if n.is_infinite() && n > 0.0 {
            return Ok(Dimension::Infinite);
        }
        if n.is_finite() && n > 1.0 {
            Ok(Dimension::Finite(n))
        } else {
            Err(Error::InvalidDimensionParam(n))
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Dimension::Infinite)
    }

    pub fn value(self) -> f64 {
        match self {
            Dimension::Finite(n) => n,
            Dimension::Infinite => f64::INFINITY,
        }
    }

    /// `1/n`, zero at infinity.
    pub fn reciprocal(self) -> f64 {
        match self {
            Dimension::Finite(n) => 1.0 / n,
            Dimension::Infinite => 0.0,
        }
    }

    /// `n/(n-1)`, one at infinity.
    pub fn lichnerowicz_factor(self) -> f64 {
        match self {
            Dimension::Finite(n) => n / (n - 1.0),
            Dimension::Infinite => 1.0,
        }
    }

    /// `(n+2)/(n-1)`, one at infinity.
    pub fn boundary_degree_factor(self) -> f64 {
        match self {
            Dimension::Finite(n) => (n + 2.0) / (n - 1.0),
            Dimension::Infinite => 1.0,
        }
    }

    /// Total interior volume `2n/(n+2)` per unit boundary measure; 2 at infinity.
    pub fn interior_volume_factor(self) -> f64 {
        match self {
            Dimension::Finite(n) => 2.0 * n / (n + 2.0),
            Dimension::Infinite => 2.0,
        }
    }

    /// Lichnerowicz bound `nK/(n-1)` (`K` when `n` is infinite).
    pub fn bound(self, k: f64) -> f64 {
        self.lichnerowicz_factor() * k
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "Inf" | "INF" | "∞") {
            return Ok(Dimension::Infinite);
        }
        let n: f64 = t
            .parse()
            .map_err(|_| Error::InvalidParams(format!("cannot parse dimension `{s}`")))?;
        Dimension::new(n)
    }
}

/// A curvature-dimension pair `(K, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureParams {
    pub k: f64,
    pub n: Dimension,
}

impl CurvatureParams {
    pub fn new(k: f64, n: Dimension) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::InvalidParams(format!("K = {k} is not finite")));
        }
        Ok(Self { k, n })
    }

    pub fn bound(&self) -> f64 {
        self.n.bound(self.k)
    }
}
