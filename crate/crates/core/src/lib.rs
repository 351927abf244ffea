pub mod cli;
pub mod error;
pub mod exact;
pub mod families;
pub mod identities;
pub mod selftest;
pub mod series;
pub mod stirling;

pub use error::{Error, Result};
pub use exact::{BiPoly, Rational};
pub use families::{build_family, FamilyId, FamilyTable};
pub use series::Series;
pub use stirling::MultiIndex;
