//! File formats, reports, rendering and the bundled benchmark set.

mod bench;
mod netlist_file;
mod render;
mod report;

pub use bench::{
    bundled, format_table, run_benchmark, run_benchmarks, suite, BenchRow, Benchmark, ReferenceRow,
};
pub use netlist_file::{parse_netlist, DeviceEntry, GridEntry, NetlistFile, RouteNetEntry};
pub use render::{
    device_glyphs, parse_rendered, render_placement, render_with_netlist, DUMMY_GLYPH, EMPTY_GLYPH,
};
pub use report::{BoundsEntry, ReportEntry, RunReport};
