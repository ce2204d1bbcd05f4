//! Sum-network coding workbench.
//!
//! A sum-network is a directed acyclic multigraph with designated sources and
//! terminals in which every terminal must recover the componentwise sum of
//! all source message blocks. This crate models such networks, verifies
//! fractional network codes (linear and table form), searches for codes
//! exhaustively and at random, constructs the standard time-sharing and
//! duality-based achievability schemes, and reports capacity bounds. All
//! arithmetic is exact; rates are rationals and alphabets are finite.

pub mod algebra;
pub mod capacity;
pub mod catalog;
pub mod cli;
pub mod codec;
pub mod duality;
pub mod netgraph;
pub mod oracles;
pub mod schemes;
pub mod search;

pub use algebra::{Alphabet, AlphabetSpec, FMatrix};
pub use capacity::{report, CapacityReport};
pub use codec::{verify_linear, verify_table, Code, LinearCode, Rate, TableCode};
pub use netgraph::SumNetwork;
