//! Common-centroid placement of analog transistor arrays with a
//! multi-objective simulated annealer.
//!
//! [`placement`] holds the grid model and the moves that keep an array
//! common-centroid, [`objectives`] scores a placement, [`amosa`] searches,
//! and [`cli_io`] reads netlists and writes reports. [`oracle`] has slow
//! brute-force references for testing.

pub mod amosa;
pub mod cli_io;
pub mod error;
pub mod objectives;
pub mod oracle;
pub mod placement;

pub use amosa::{run, select_solution, Annealer, Archive, SaConfig, Solution};
pub use error::{Error, Result};
pub use objectives::{evaluate, ObjectiveVector};
pub use placement::{check_cc, is_cc, DeviceSpec, GridDims, Netlist, Placement};
