//! Parameter sweeps, figure data and the validation battery behind the
//! `spin-manifold` binary.

pub mod error;
pub mod grid;
pub mod output;
pub mod sweep;
pub mod validate;

pub use error::{CliError, CliResult};
pub use grid::Grid;
pub use output::{Cell, OutputFormat, SweepResult};
pub use sweep::{run_sweep, Quantity, SweepSpec};
pub use validate::{validate_suite, ValidateOptions, ValidationReport};

/// Version string echoed into every output's metadata.
pub const TOOL_VERSION: &str = concat!("spin-manifold ", env!("CARGO_PKG_VERSION"));
