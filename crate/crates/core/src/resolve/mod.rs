//! Embedded resolution and the exact invariants read off from it.

pub mod invariants;
pub mod puiseux;
pub mod tree;

pub use invariants::{
    branch_count, fiber, intersection_multiplicity, lct_exact, lct_relative_fiber, mld_germ,
    mld_relative_fiber, Configuration, RelativeLct,
};
pub use puiseux::{first_puiseux_pair, PuiseuxPair};
pub use tree::{Exceptional, ResolutionTree, TerminalPoint};
