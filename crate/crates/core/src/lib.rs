//! Fixed points of Young subgroups on Specht modules over GF(p), with the
//! linear algebra, tableau combinatorics and module machinery they rest on.

pub mod gfp;
pub mod homological;
pub mod invariants;
pub mod partition;
pub mod poly;
pub mod specht;
pub mod symgroup;
pub mod tableaux;
pub mod verify;

pub use gfp::{Field, Matrix};
pub use partition::Partition;
pub use specht::ModuleRep;
