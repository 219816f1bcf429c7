use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::netlist_file::NetlistFile;
use super::report::RunReport;
use crate::amosa::{Annealer, SaConfig};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveVector;
use crate::placement::{GridDims, Netlist};

const BUNDLED: [&str; 12] = [
    include_str!("../../benchmarks/mirrors_cm1.json"),
    include_str!("../../benchmarks/mirrors_cm2.json"),
    include_str!("../../benchmarks/mirrors_cm3.json"),
    include_str!("../../benchmarks/mirrors_cm4.json"),
    include_str!("../../benchmarks/mirrors_cm5.json"),
    include_str!("../../benchmarks/mixed_cm1.json"),
    include_str!("../../benchmarks/mixed_cm2.json"),
    include_str!("../../benchmarks/mixed_cdip1.json"),
    include_str!("../../benchmarks/mixed_cdip2.json"),
    include_str!("../../benchmarks/mixed_cdlp1.json"),
    include_str!("../../benchmarks/mixed_cdlp2.json"),
    include_str!("../../benchmarks/toy.json"),
];

/// Published reference values for a benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub dispersion: f64,
    pub lde: f64,
    pub routing_cost: u64,
    pub diffusion_breaks: u32,
    pub dummy_count: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Benchmark {
    pub name: String,
    pub suite: String,
    pub circuit: String,
    /// Opaque metadata, echoed but never used.
    pub k: Option<String>,
    pub netlist: NetlistFile,
    pub reference: Option<ReferenceRow>,
}

impl Benchmark {
    /// `suite/name`, unique across the bundled set.
    pub fn id(&self) -> String {
        format!("{}/{}", self.suite, self.name)
    }

    pub fn build(&self) -> Result<(Netlist, GridDims)> {
        let nl = self.netlist.build()?;
        let grid = match self.netlist.grid_for(&nl)? {
            Some(g) => g,
            None => GridDims::new(2, nl.total_units().div_ceil(2))?,
        };
        Ok((nl, grid))
    }

    pub fn units(&self) -> Vec<u32> {
        self.netlist.devices.iter().map(|d| d.units).collect()
    }
}

pub fn bundled() -> Vec<Benchmark> {
    BUNDLED
        .iter()
        .map(|t| serde_json::from_str(t).expect("bundled benchmark parses"))
        .collect()
}

/// Benchmarks of a named suite: `mirrors`, `mixed`, `standard` (both),
/// `toy`, or `all`. A single benchmark can be named by its id.
pub fn suite(name: &str) -> Result<Vec<Benchmark>> {
    let all = bundled();
    let picked: Vec<Benchmark> = match name {
        "all" => all,
        "standard" => all.into_iter().filter(|b| b.suite != "toy").collect(),
        _ => all
            .into_iter()
            .filter(|b| b.suite == name || b.id().eq_ignore_ascii_case(name))
            .collect(),
    };
    if picked.is_empty() {
        return Err(Error::UnknownBenchmark(name.to_string()));
    }
    Ok(picked)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub id: String,
    pub units: Vec<u32>,
    pub grid: GridDims,
    pub selected: ObjectiveVector,
    /// Fewest (breaks, dummies) among archive members, lexicographically.
    pub best_breaks_dummies: (u32, u32),
    pub archive_len: usize,
    pub reference: Option<ReferenceRow>,
}

pub fn run_benchmark(b: &Benchmark, cfg: &SaConfig) -> Result<(BenchRow, RunReport)> {
    let (nl, grid) = b.build()?;
    let result = Annealer::new(&nl, grid, cfg.clone())?.run()?;
    let report = RunReport::new(&nl, grid, cfg, &result)?;
    let best = report
        .archive
        .iter()
        .map(|e| (e.objectives.diffusion_breaks, e.objectives.dummy_count))
        .min()
        .expect("non-empty archive");
    let row = BenchRow {
        id: b.id(),
        units: b.units(),
        grid,
        selected: report.archive[report.selected].objectives,
        best_breaks_dummies: best,
        archive_len: report.archive.len(),
        reference: b.reference,
    };
    Ok((row, report))
}

pub fn run_benchmarks(list: &[Benchmark], cfg: &SaConfig) -> Result<Vec<BenchRow>> {
    list.iter().map(|b| run_benchmark(b, cfg).map(|r| r.0)).collect()
}

/// Fixed-width text table; identical rows give identical bytes.
pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:<16} {:>5} | {:>6} {:>6} {:>6} {:>3} {:>3} | {:>7} {:>4} | {:>6} {:>6} {:>6} {:>3} {:>3}",
        "test", "units", "grid", "disp", "lde", "route", "db", "dm", "best", "arch", "r.disp", "r.lde",
        "r.rte", "rdb", "rdm"
    );
    for r in rows {
        let units = format!(
            "[{}]",
            r.units.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(",")
        );
        let o = &r.selected;
        let _ = write!(
            out,
            "{:<14} {:<16} {:>5} | {:>6.3} {:>6.3} {:>6} {:>3} {:>3} | {:>7} {:>4} |",
            r.id,
            units,
            r.grid.to_string(),
            o.dispersion(),
            o.lde_mismatch,
            o.routing_cost,
            o.diffusion_breaks,
            o.dummy_count,
            format!("{}/{}", r.best_breaks_dummies.0, r.best_breaks_dummies.1),
            r.archive_len,
        );
        match r.reference {
            Some(p) => {
                let _ = writeln!(
                    out,
                    " {:>6.2} {:>6.2} {:>6} {:>3} {:>3}",
                    p.dispersion, p.lde, p.routing_cost, p.diffusion_breaks, p.dummy_count
                );
            }
            None => {
                let _ = writeln!(out, " {:>6} {:>6} {:>6} {:>3} {:>3}", "-", "-", "-", "-", "-");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_set_is_complete() {
        let all = bundled();
        assert_eq!(all.len(), 12);
        assert_eq!(suite("mirrors").unwrap().len(), 5);
        assert_eq!(suite("mixed").unwrap().len(), 6);
        assert_eq!(suite("standard").unwrap().len(), 11);
        assert_eq!(suite("mixed/CDIP:1").unwrap()[0].units(), vec![6, 6, 10, 10]);
        for b in &all {
            let (nl, grid) = b.build().unwrap();
            assert!(grid.cells() >= nl.total_units() as usize, "{}", b.id());
        }
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(suite("nine"), Err(Error::UnknownBenchmark("nine".into())));
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(format_table(&[]).lines().count(), 1);
    }

    #[test]
    fn small_run_is_byte_stable() {
        let cfg = SaConfig {
            t_min: 1e-1,
            iters_per_temp: 10,
            seed: 4,
            ..SaConfig::default()
        };
        let list = suite("toy").unwrap();
        let a = format_table(&run_benchmarks(&list, &cfg).unwrap());
        let b = format_table(&run_benchmarks(&list, &cfg).unwrap());
        assert_eq!(a, b);
        assert!(a.contains("toy/AB8"));
    }
}
