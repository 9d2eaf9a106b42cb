//! Exact arithmetic functions on divisor lattices, the pseudometrics they
//! generate, the preorders and quotient partitions those induce on `ℤ`,
//! and sieve-based scanners for equal function values.
//!
//! ```
//! use divorder::functions::parse_function;
//! use divorder::metrics::{build_table, verify_pseudometric, Combinator, PseudometricSpec};
//! use divorder::orders::{induced_preorder, quotient_by_preorder};
//!
//! let h = parse_function("recip").unwrap();
//! let spec = PseudometricSpec::new(h, Combinator::AddH, 12).unwrap();
//! assert!(verify_pseudometric(&build_table(&spec)).is_metric());
//! let blocks = quotient_by_preorder(&induced_preorder(&spec));
//! assert_eq!(blocks.len(), 6);
//! ```
//!
//! Values are `BigRational`s throughout. Irrational functions such as
//! `log x` carry an exact order key instead and only enter preorders.

pub mod arith;
pub mod cli;
pub mod error;
pub mod functions;
pub mod metrics;
pub mod orders;
pub mod scanners;

pub use error::{Error, Result};
