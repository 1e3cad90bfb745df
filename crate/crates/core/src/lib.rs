//! Exact interval exchange transformations.
//!
//! The crate provides exact surd arithmetic ([`exact`]), interval exchange
//! transformations as group elements ([`iet`]), the scissors congruence
//! invariant ([`saf`]) and constructive factorizations with recomposable
//! certificates ([`factor`]).

pub mod exact;
pub mod factor;
pub mod iet;
pub mod saf;
pub mod sample;

pub use exact::{Rational, SurdReal};
pub use iet::{Iet, IetError, Interval, OrderResult, RotationSpec, SwapSpec};
pub use saf::{saf, wedge, TensorQQ};
