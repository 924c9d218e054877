//! Bakry-Émery curvature and Steklov spectra on finite weighted graphs with
//! boundary, with an audit of equality in the Steklov Lichnerowicz bound.
//!
//! A [`WeightedGraph`] carries vertex measures `m_x` and symmetric edge
//! weights `w_xy`; a [`BoundaryGraph`] additionally marks an independent
//! boundary set `B` with interior `Ω = V \ B`.
//!
//! ```
//! use stekcurv::{make_example, steklov_spectrum, ExampleFamily};
//!
//! let p3 = make_example(&ExampleFamily::UnitPath3).unwrap();
//! let sigma = steklov_spectrum(&p3).unwrap();
//! assert!((sigma.second().unwrap() - 1.0).abs() < 1e-12);
//! ```

pub mod curvature;
pub mod dimension;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod rigidity;
pub mod steklov;

pub use curvature::{
    cd_check, cd_form, curvature_at, curvature_profile, verify_lichnerowicz, CdVerdict,
    CurvatureProfile, CurvatureResult, LichnerowiczReport, Subject, VertexVerdict,
    BOUND_TOLERANCE,
};
pub use dimension::{CurvatureParams, Dimension};
pub use error::{Error, Result};
pub use families::{complete_graph, make_example, two_point_boundary, ExampleFamily};
pub use graph::{BoundaryGraph, Edge, InducedGraph, WeightedGraph};
pub use io::{parse_graph_file, serialize_graph};
pub use operators::{
    check_green_identity, differential, gamma, gamma2, gamma2_form, gamma_form,
    inner_product_forms, inner_product_functions, laplacian, laplacian_square_form, OneForm,
    QuadraticForm, VertexFunction,
};
pub use rigidity::{
    assemble_interior_form, check_interior_inequality, check_necessary_conditions,
    check_rigidity, classify_normalized, classify_partial, classify_unit_weight,
    construct_rigid_family, disjoint_ball_scan, two_ball_identity_check, BallScan,
    Classification, ConditionVerdict, InteriorBranch, InteriorFormAssembly, InteriorInequality,
    NecessaryConditions, RigidFamily, RigidityDiagnostics, RigidityReport, TwoBallResidual,
};
pub use steklov::{
    dtn_operator, harmonic_extension, laplacian_spectrum, normal_derivative,
    steklov_eigenfunction_diagnostics, steklov_spectrum, DtnOperator, EigenfunctionDiagnostics,
    Spectrum, SpectrumKind,
};
