//! Equality in the Steklov Lichnerowicz bound `σ₂ ≥ nK/(n−1)`.
//!
//! [`check_rigidity`] evaluates the bound directly and, independently, the
//! five structural conditions that characterize equality for graphs
//! satisfying `CD(K, n)`; the report exposes both so their agreement can be
//! audited. Classifiers recognise the explicit rigid families.

mod classify;
mod conditions;
mod construct;
mod structure;

pub use classify::{classify_normalized, classify_partial, classify_unit_weight, Classification};
pub use conditions::{
    assemble_interior_form, check_interior_inequality, check_necessary_conditions,
    ConditionVerdict, InteriorBranch, InteriorFormAssembly, InteriorInequality,
    InteriorVertexVerdict, NecessaryConditions,
};
pub use construct::{construct_rigid_family, RigidFamily, LAMBDA_MAX};
pub use structure::{disjoint_ball_scan, two_ball_identity_check, BallScan, TwoBallResidual};

use crate::curvature::{cd_check, BOUND_TOLERANCE};
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::graph::BoundaryGraph;
use crate::steklov::{steklov_eigenfunction_diagnostics, steklov_spectrum};

/// Relative tolerance for every structural condition check.
pub const CONDITION_TOLERANCE: f64 = 1e-9;

pub(crate) fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Side information gathered while checking rigidity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RigidityDiagnostics {
    /// `sqrt(⟨u,u⟩_Ω)` for the harmonic extension `u` of a `σ₂` eigenfunction.
    pub interior_eigenfunction_norm: Option<f64>,
    pub mu2: Option<f64>,
    pub mu2_residual: Option<f64>,
    /// `u` is also a `μ₂` eigenfunction.
    pub mu2_coincides: Option<bool>,
    /// Largest residual of the distance-2 averaging identity on `u`.
    pub two_ball_max_residual: Option<f64>,
    pub ball_scan: Option<BallScan>,
    /// Smallest eigenvalue over all vertex CD forms.
    pub cd_min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RigidityReport {
    pub k: f64,
    pub n: Dimension,
    pub cd_holds: bool,
    pub bound: f64,
    pub sigma2: Option<f64>,
    /// `σ₂ − nK/(n−1)`, always exposed raw.
    pub slack: Option<f64>,
    /// `σ₂ = nK/(n−1)` within relative `1e-8`.
    pub bound_equality: bool,
    pub conditions: NecessaryConditions,
    pub cond5: ConditionVerdict,
    pub interior: Option<InteriorInequality>,
    /// `None` when `CD(K, n)` fails (the characterization does not apply);
    /// otherwise whether `bound_equality` agrees with `cond1` to `cond5`.
    pub biconditional_consistent: Option<bool>,
    pub classification: Classification,
    pub diagnostics: RigidityDiagnostics,
}

impl RigidityReport {
    pub fn all_conditions(&self) -> bool {
        self.conditions.all_pass() && self.cond5.passed
    }
}

/// Full rigidity audit of `bg` against `(K, n)`.
pub fn check_rigidity(bg: &BoundaryGraph, k: f64, n: Dimension) -> Result<RigidityReport> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParams(format!("K = {k} must be positive and finite")));
    }
    let g = bg.graph();
    let cd = cd_check(g, k, n, None)?;
    let cd_min_eigenvalue =
        cd.vertices.iter().map(|v| v.min_eigenvalue).fold(f64::INFINITY, f64::min);
    let spectrum = steklov_spectrum(bg)?;
    let bound = n.bound(k);
    let sigma2 = spectrum.second();
    let slack = sigma2.map(|s| s - bound);
    let bound_equality = slack.is_some_and(|s| s.abs() <= BOUND_TOLERANCE * bound);

    let conditions = check_necessary_conditions(bg, k, n)?;
    let (cond5, interior) = if conditions.all_pass() {
        let ineq = check_interior_inequality(bg, k, n)?;
        (ConditionVerdict { passed: ineq.passed, detail: ineq.explanation.clone() }, Some(ineq))
    } else {
        (ConditionVerdict::fail("not evaluated: cond1 to cond4 do not all hold"), None)
    };
    let all = conditions.all_pass() && cond5.passed;
    let biconditional_consistent = cd.holds.then_some(bound_equality == all);

    let mut diagnostics = RigidityDiagnostics { cd_min_eigenvalue, ..Default::default() };
    if sigma2.is_some() {
        let d = steklov_eigenfunction_diagnostics(bg, &spectrum)?;
        let residuals = two_ball_identity_check(bg, &d.extension)?;
        diagnostics.two_ball_max_residual =
            Some(residuals.iter().map(|r| r.residual.abs()).fold(0.0, f64::max));
        diagnostics.interior_eigenfunction_norm = Some(d.interior_norm);
        diagnostics.mu2 = Some(d.mu2);
        diagnostics.mu2_residual = Some(d.mu2_residual);
        diagnostics.mu2_coincides = Some(d.is_mu2_eigenfunction);
    }
    diagnostics.ball_scan = Some(disjoint_ball_scan(&bg.induced_interior_graph()));

    let classification = if cd.holds && bound_equality {
        classify_equality(bg, k, n)
    } else {
        Classification::NotRigid
    };

    Ok(RigidityReport {
        k,
        n,
        cd_holds: cd.holds,
        bound,
        sigma2,
        slack,
        bound_equality,
        conditions,
        cond5,
        interior,
        biconditional_consistent,
        classification,
        diagnostics,
    })
}

fn classify_equality(bg: &BoundaryGraph, k: f64, n: Dimension) -> Classification {
    if bg.is_unit_weight() {
        if let Ok(c) = classify_unit_weight(bg) {
            if c != Classification::NotRigid {
                return c;
            }
        }
    }
    if bg.induced_interior_graph().is_edgeless() {
        if let Ok(c) = classify_partial(bg, k, n) {
            if c != Classification::NotRigid {
                return c;
            }
        }
    }
    Classification::GeneralEquality
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_example, ExampleFamily};
    use crate::graph::WeightedGraph;

    #[test]
    fn unit_path3_is_rigid() {
        let bg = make_example(&ExampleFamily::UnitPath3).unwrap();
        let r = check_rigidity(&bg, 0.5, Dimension::Finite(2.0)).unwrap();
        assert!(r.cd_holds && r.bound_equality && r.all_conditions());
        assert_eq!(r.classification, Classification::UnitPath3);
        assert_eq!(r.biconditional_consistent, Some(true));
        assert!(r.diagnostics.interior_eigenfunction_norm.unwrap() < 1e-10);
        assert!(r.diagnostics.two_ball_max_residual.unwrap() < 1e-10);
        assert_eq!(r.diagnostics.mu2_coincides, Some(true));
    }

    #[test]
    fn unit_square_diag_is_rigid() {
        let bg = make_example(&ExampleFamily::UnitSquareDiag).unwrap();
        let r = check_rigidity(&bg, 2.0, Dimension::Infinite).unwrap();
        assert!(r.cd_holds && r.bound_equality && r.all_conditions(), "{r:?}");
        assert_eq!(r.classification, Classification::UnitSquareDiag);
    }

    #[test]
    fn p5_is_not_rigid() {
        let v: Vec<(String, f64)> = (1..=5).map(|i| (i.to_string(), 1.0)).collect();
        let e: Vec<(String, String, f64)> =
            (1..5).map(|i| (i.to_string(), (i + 1).to_string(), 1.0)).collect();
        let bg = BoundaryGraph::attach(WeightedGraph::build(&v, &e).unwrap(), &["1", "5"]).unwrap();
        let n = Dimension::Infinite;
        let k = crate::curvature::curvature_profile(bg.graph(), &[n]).unwrap().global_min[0];
        if k > 0.0 {
            let r = check_rigidity(&bg, k, n).unwrap();
            assert!(!r.bound_equality);
            assert!(!r.all_conditions());
        }
        let r = check_rigidity(&bg, 0.1, Dimension::Finite(3.0)).unwrap();
        assert!(!r.conditions.cond1.passed);
        assert_eq!(r.classification, Classification::NotRigid);
    }

    #[test]
    fn rejects_nonpositive_k() {
        let bg = make_example(&ExampleFamily::UnitPath3).unwrap();
        assert!(check_rigidity(&bg, 0.0, Dimension::Infinite).is_err());
    }
}
