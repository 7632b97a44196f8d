//! Schensted-type insertion on rc-graphs (pipe dreams), its inverse, Schubert
//! polynomials and generalized Littlewood-Richardson coefficients.

pub mod cli;
pub mod error;
pub mod insertion;
pub mod inverse;
pub mod lr;
pub mod perm;
pub mod rcgraph;
pub mod schubert;
pub mod tableau;

pub use error::{Error, ErrorClass, Result};
pub use perm::{partition_of_shuffle, shuffle_from_partition, Partition, Permutation};
pub use rcgraph::{Graph, Place, StrandMap};
