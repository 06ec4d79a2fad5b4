//! Finite quantale-enriched and quantale-normed categories.
//!
//! Exact kernels for quantales, normed sets, V-categories and distributors,
//! finite normed categories with their distributor calculus, and sequential
//! normed colimits. Every decision is computed by exhaustive enumeration
//! under an explicit [`Budget`].

pub mod budget;
pub mod error;
pub mod quantale;
pub mod unionfind;
pub mod normed_set;
pub mod vcat;
pub mod category;
pub mod ncat;
pub mod seqlim;
pub mod cli;

pub use budget::Budget;
pub use error::{Error, Result, Violation};
pub use quantale::{AnyQuantale, Extended, FiniteQuantale, LawvereQuantale, Quantale};
