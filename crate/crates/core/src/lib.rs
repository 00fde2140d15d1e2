//! Fusion systems, bifree double Burnside modules, cohomological Mackey
//! functors and characteristic idempotents, all in exact arithmetic.

pub mod groups;
pub mod bisets;
pub mod catalog;
pub mod charidem;
pub mod cohomology;
pub mod fusion;
pub mod linalg;
pub mod mackey;
pub mod mislin;
pub mod report;

pub use groups::{Group, GroupError, GroupMono, Subgroup};
pub use fusion::{FusionError, FusionSystem};
pub use bisets::{BisetLabel, BurnsideElement, Ring};
