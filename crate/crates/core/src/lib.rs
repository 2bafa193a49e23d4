//! Computable abstract hyperbolic sets.
//!
//! Points are bi-infinite symbol strings with a dot marking present time;
//! the similarity map shifts the dot one place right. The crate puts a
//! weighted metric on this index space and checks its diameter and
//! separation conditions. [`certify`] builds chaos witnesses on unstable
//! sets. [`horseshoe`] realizes the same symbolic structure on the
//! invariant set of an affine Smale horseshoe.

pub mod certify;
mod error;
pub mod horseshoe;
pub mod metric;
pub mod sample;
pub mod symbolic;

pub use error::{Error, Result};
pub use metric::{DistanceBound, MetricParams};
pub use symbolic::{Alphabet, BiSequence, CylinderSet, Word};
