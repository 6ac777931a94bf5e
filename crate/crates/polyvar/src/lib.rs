//! Spectra, curvature measures, and Reilly residuals of polygonal and
//! star-shaped 1-varifolds.
//!
//! The pipeline, end to end:
//!
//! * [`geometry`] — polygons and star graphs in `R^N`, validation, and the
//!   vertex curvature vectors of the associated varifolds;
//! * [`spectral`] — the finite-dimensional reduction of the eigenvalue
//!   problem to weighted cycle and star Laplacians, a dense symmetric
//!   eigensolver, and closed-form spectra;
//! * [`transfer`] — the independent transfer-matrix route: eigenvalues as
//!   roots of `det(M(lambda) - I)` for the monodromy `M`;
//! * [`families`] — exact generators for every equality family (regular,
//!   losange, trapeze, fake-regular, stationary star) and seeded random
//!   simple polygons;
//! * [`reilly`] — Reilly residuals, the Hsiung-Minkowski identity, the
//!   sphere reference values, and the equality-case classifier;
//! * [`oracle`] — brute-force cross-checks (characteristic-polynomial
//!   bisection, Monte-Carlo Rayleigh bounds) sharing no linear algebra
//!   with the main solver.
//!
//! Everything is a pure function of immutable inputs and safe to call
//! concurrently.
//!
//! ```
//! use polyvar::{families, reilly, spectral};
//!
//! let square = families::regular_polygon(4, 1.0)?;
//! let sol = spectral::polygon_spectrum(&square, spectral::DEFAULT_CLUSTER_TOL)?;
//! assert_eq!(sol.spectrum.multiplicities, vec![1, 2, 1]); // {0, 2 (x2), 4}
//!
//! let report = reilly::reilly_report_polygon(&square, reilly::DEFAULT_EQUALITY_TOL)?;
//! assert!(report.equality);
//! assert_eq!(report.classification, reilly::EqualityClass::Regular);
//! # Ok::<(), polyvar::Error>(())
//! ```

pub mod error;
pub mod families;
pub mod geometry;
pub mod oracle;
pub mod reilly;
pub mod spectral;
pub mod transfer;

pub use error::Error;
pub use families::{FamilyDescriptor, Shape};
pub use geometry::{
    center_at_vertex_barycenter, curvature_vectors, curvature_vectors_star, planar_dimension,
    validate_polygon, CurvatureMeasure, Point, Polygon, StarGraph,
};
pub use reilly::{
    classify_equality, hsiung_minkowski_residual, reilly_report_polygon, reilly_report_star,
    sphere_reference, EqualityClass, ReillyReport, SphereReference, DEFAULT_EQUALITY_TOL,
};
pub use spectral::{
    closed_form_spectrum, cycle_laplacian, eigensolve, first_order_residual, lambda1,
    polygon_spectrum, reconstruct_eigenfunction, star_laplacian, star_spectrum,
    ClosedFormFamily, ClosedFormSpectrum, EigenSolution, PiecewiseAffine, Spectrum, SymMatrix,
    DEFAULT_CLUSTER_TOL,
};
pub use transfer::{
    characteristic, find_eigenvalues_transfer, monodromy, transfer_matrix, Mat2,
    DEFAULT_GRID_POINTS, DEFAULT_ROOT_TOL,
};
