//! Exact and asymptotic numerics for the Stirling, Chebyshev-Stirling, and
//! Jacobi-Stirling numbers of the second kind.
//!
//! The exact layer computes every number by at least two independent routes
//! (triangular recurrences, explicit alternating sums, a forward-difference
//! connection) in unbounded-precision integer and rational arithmetic. The
//! polynomial layer carries the row generating polynomials and the
//! Euler-Frobenius polynomials with Sturm-chain root certificates. The
//! analytic layer evaluates bilateral Eisenstein sums with certified
//! truncation, the normal density and distribution function, and the
//! correction terms of the local normal approximation. On top of those,
//! the asymptotics layer builds the closed-form approximants and the
//! convergence diagnostics for the central limit behavior of the
//! coefficient rows.
//!
//! Start with the runnable programs under `examples/`; each one exercises
//! a single capability end to end. The thin `stirling` binary exposes the
//! same functionality as subcommands (`exact`, `table`, `approx`,
//! `moments`, `verify`).

pub mod asympt;
pub mod cli;
pub mod eisenstein;
pub mod error;
pub mod exact;
pub mod gauss;
pub mod poly;
pub mod real;
pub mod series;
pub mod sturm;
pub mod suites;

pub use asympt::{
    approximant, cdf_distance, clt_residual, moment_gap, moments_exact, ratio_report,
    rowsum_gap, seq_params, ApproxParts, ApproxReport, CdfDistance, CltResidual, MomentGaps,
    MomentSet, SeqParams,
};
pub use eisenstein::{eisenstein, eisenstein_remainder_bound, zeta_upper, EisensteinSum};
pub use error::{Error, Result};
pub use exact::{
    chebyshev_explicit, chebyshev_from_stirling, family_row, fixed_j_leading_term,
    jacobi_explicit, modified_row, row_sum, stirling_explicit, Family, Kind, RowSumKind,
    Triangle,
};
pub use gauss::{edgeworth_term, gaussian_cdf, gaussian_pdf, hermite_poly, hermite_value};
pub use poly::{
    euler_frobenius, euler_frobenius_worpitzky, l_connection_holds, l_poly,
    q_connection_holds, q_poly, unimodality_check, RatPoly, RowShape,
};
pub use real::{bits_for_digits, omega, DEFAULT_PREC};
pub use series::{
    l_generating_identity, q_generating_identity, vertical_generating_identity, Series,
};
pub use sturm::{count_roots_at_most, sturm_count, RootCertificate};
pub use suites::{run_suite, CaseFailure, Suite, SuiteOptions, SuiteReport};
