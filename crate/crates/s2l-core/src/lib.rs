//! Core domain model for a desk-scale two-domain imitation-learning testbed:
//! trajectory datasets with a bit-exact archive format, a deterministic
//! kinematic manipulation simulator with a configurable source/target domain
//! gap, scripted expert policies that emit actions together with stage
//! indices, and the language layer that turns stages into scene descriptions
//! and embeds them.

pub mod data;
pub mod geom;
pub mod lang;
pub mod rng;
pub mod scripted;
pub mod sim;
pub mod task;

pub use data::{DataError, DatasetManifest, Domain, Frame, Image, Suite, Trajectory};
pub use task::TaskSpec;
