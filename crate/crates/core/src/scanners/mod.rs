//! Sieve-backed scanners: exact value collisions, multiply perfect
//! numbers, and counts of quotient partitions.

mod census;
mod checkpoint;
mod collisions;
mod sieve;

pub use census::{
    partition_bounds, partition_census, scan_multiperfect, shape_without_one, CensusEntry,
    CensusReport, MultiperfectHit, MultiperfectReport, PartitionBounds,
};
pub use checkpoint::Checkpoint;
pub use collisions::{
    scan_collisions, Collision, CollisionGroup, RatKey, ScanMode, ScanOptions, ScanReport,
    SCHEMA_VERSION,
};
pub use sieve::{LinearSieve, SIEVE_LIMIT};

#[cfg(test)]
mod tests;
