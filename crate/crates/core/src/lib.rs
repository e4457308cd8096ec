pub mod error;
pub mod exact;
pub mod poly;
pub mod partitions;
pub mod linalg;
pub mod flat;
pub mod viete;
pub mod strata;
pub mod flow;
pub mod json;
pub mod grid;
pub mod checks;
pub mod cli;
