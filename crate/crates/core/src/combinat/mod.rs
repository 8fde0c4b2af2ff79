//! Set partitions of `{1, …, b}`, complete Bell polynomials, and the
//! `R`/`M` polynomials in `P = p^k` attached to a set of levels.

mod bell;
mod levels;
mod partition;

pub use bell::{
    bell_number, complete_bell, complete_bell_determinant, signed_partition_sum,
    stirling_second, MAX_BELL_ORDER,
};
pub use levels::{m_coefficient, m_product, r_polynomial, r_product, r_value, theta, LevelSet, PolyInPk};
pub use partition::{
    cuts, enumerate_partitions, multiplicity, refines, SetPartition, SetPartitions,
    MAX_PARTITION_SIZE,
};
