//! Multiple zeta values, multiple polylogarithms and two-parameter
//! weighted sums, with a registry of identities checked numerically.
//!
//! The numeric core is generic over [`Scalar`]/[`RealField`]; the aliases
//! at the bottom of this file fix the scalar to the MPFR-backed [`Real`].

pub mod cache;
pub mod error;
pub mod eval;
pub mod generating;
pub mod identities;
pub mod index;
pub mod polylog;
pub mod real;
pub mod report;
pub mod scalar;
pub mod series;
pub mod weighted;
pub mod zeta;

pub use cache::{CacheStats, ImportSummary, ZetaCache};
pub use error::{MzvError, Result};
pub use eval::Evaluator;
pub use generating::{g_series, log_gamma_series, sin_expansion_series, thm1_lhs_series, thm1_rhs_series, zeta_pair_series};
pub use identities::{check_identity, instances, psi_finite_difference, psi_stencil, psi_step, psi_tolerance, run_suite, IdentityId, IdentityReport, Params};
pub use index::{admissible_indices, all_admissible_up_to, compositions, Letter, MultiIndex, Word};
pub use polylog::{li_index, li_word, DEFAULT_Z_MAX};
pub use real::{Precision, Real, DEFAULT_DIGITS, MIN_DIGITS};
pub use report::{write_reports, Format, Summary};
pub use scalar::{RealField, Scalar};
pub use series::{pow_linear_form, LinearForm, TruncatedSeries1, TruncatedSeries2};
pub use weighted::{binomial, pochhammer_desc, s_derivative, s_hat_polylog, s_weighted, t_double, z_coeff};
pub use zeta::{naive_tail_bound, zeta_convolution, zeta_naive, NaiveZeta};

pub type RealEvaluator = Evaluator<Real>;
pub type RealCache = ZetaCache<Real>;
pub type Series1 = TruncatedSeries1<Real>;
pub type Series2 = TruncatedSeries2<Real>;
pub type RealReport = IdentityReport<Real>;
pub type ExactSeries2 = TruncatedSeries2<num_rational::BigRational>;
