//! Weight-enumerator statistics for a bibliometric record corpus.
//!
//! The corpus of deceased fellows is encoded as a trivariate polynomial
//! whose terms are `a^age * p^publications * c^citations`, one per
//! record. Means, central moments, skewness, kurtosis, and correlations
//! all fall out of Euler differential operators applied to that
//! polynomial, evaluated at the all-ones point, in exact rational
//! arithmetic. A direct brute-force oracle over the records verifies
//! every moment the operator path produces.

pub mod cli;
pub mod corpus;
pub mod numeric;
pub mod poly;
pub mod report;
pub mod stats;

pub use corpus::{load_corpus, parse_record_line, validate_corpus, Corpus, FellowRecord};
pub use poly::{build_enumerator, monomial_from_record, parse_polynomial, Polynomial, Var};
pub use stats::{stats_summary, verify_moments, MultiIndex, StatsSummary};
