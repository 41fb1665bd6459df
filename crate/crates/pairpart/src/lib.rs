//! Two-colored pair partitions and the categories they generate.

pub mod brackets;
pub mod closure;
pub mod error;
pub mod metrics;
pub mod partition;
pub mod patterns;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use partition::{enumerate_p2nb, enumerate_pair_partitions, Color, Corner, CyclicInterval, Direction, Openness, Partition, Point, Row};
pub use patterns::BracketPattern;
pub use report::Report;
pub use suites::{verify_suite, SuiteParams};
