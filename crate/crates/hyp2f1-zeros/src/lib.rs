//! Exact decision procedures for the real zeros of terminating Gauss
//! hypergeometric polynomials with rational parameters.
//!
//! Given `(n, b, c)`, the crate builds the degree-`n` polynomial with exact
//! rational coefficients, decides whether all of its zeros are real and
//! simple by a division-algorithm sign sequence, classifies `(c, b)` into
//! the parameter regions where that answer is known in closed form, predicts
//! how many zeros fall in `(-inf,0)`, `(0,1)` and `(1,inf)`, and
//! cross-validates every claim against both closed-form coefficient formulas
//! and a floating-point root finder.
//!
//! Modules:
//! - [`ratpoly`]: exact rational polynomial arithmetic
//! - [`hyp2f1`]: polynomial construction, reflection and Jacobi identities
//! - [`sturm`]: the division sequence and its sign criterion
//! - [`closedform`]: closed forms for the sequence quantities, with crosschecks
//! - [`regions`]: parameter-plane classification and census predictions
//! - [`oracle`]: floating-point root finding for cross-validation
//! - [`verify`]: the agreement suite run by the CLI and the acceptance tests

pub mod closedform;
pub mod hyp2f1;
pub mod oracle;
pub mod ratpoly;
pub mod regions;
pub mod sturm;
pub mod verify;

pub use closedform::{crosscheck, CkFactor, ClosedFormError, CrosscheckReport};
pub use hyp2f1::{build_2f1, pochhammer, Hyp2f1Error, HypParams, JacobiParams, JacobiRep};
pub use oracle::{census, find_roots, min_gap, OracleConfig, OracleError, RootSet};
pub use ratpoly::{parse_rational, BigRational, RatPoly, RatPolyError};
pub use regions::{
    hilbert_klein_counts, main_region, orthogonality_region, predict_counts, smalln_real_simple,
    Prediction, RegionLabel, RegionScheme, RegionsError, ZeroReport,
};
pub use sturm::{classify_2f1, run_sequence, SequenceTrace, SturmError, ZeroNature};
pub use verify::{all_passed, run_suite, CheckOutcome, Level};
