//! Rainbow-poset colorings of the Boolean lattice `B_n`.
//!
//! The crate covers the whole pipeline for small, exactly checkable
//! instances: subset arithmetic on `B_n`, finite posets and copy detection
//! inside set families, colorings and rainbow-copy validation, generators for
//! the explicit extremal colorings, an exact feasibility search for the
//! extremal functions `f(n,l,P)` / `F(n,l,P)`, and the closed-form values and
//! numeric checks that go with them.
//!
//! The crate is `no_std` (it needs `alloc`). File formats and the command
//! line live in the companion `rainbow-poset-cli` crate.
#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod bitset;
mod copy_search;

pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod lattice;
pub mod poset;
pub mod solver;

pub use coloring::{class_stats, validate, validate_incremental, ClassStats, Coloring, RainbowWitness, Validation, Warning};
pub use error::{Error, Result};
pub use lattice::{canonicalize, comparable, cone, interval_size, ConeKind, GroundSet, Interval, SubsetId};
pub use poset::{build_poset, find_copy, Mode, Poset, PosetFamily};
pub use solver::{solve_min_class, ColoringKind, SolveOptions, SolveResult, SolveStatus};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
