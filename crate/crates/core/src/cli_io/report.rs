use serde::{Deserialize, Serialize};

use super::netlist_file::NetlistFile;
use super::render::render_with_netlist;
use crate::amosa::{select_index, AnnealResult, Archive, SaConfig, Solution};
use crate::error::{Error, Result};
use crate::objectives::{ObjectiveRanges, ObjectiveVector};
use crate::placement::{GridDims, Netlist, Placement};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    /// Rendered rows, row 1 first; informational only.
    pub layout: Vec<String>,
    pub objectives: ObjectiveVector,
    pub placement: Placement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsEntry {
    pub db_max: u32,
    pub dummy_max: u32,
}

/// Everything one optimization run produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub netlist: NetlistFile,
    pub grid: GridDims,
    pub seed: u64,
    pub config: SaConfig,
    pub bounds: BoundsEntry,
    pub steps: u64,
    pub evaluations: u64,
    pub ranges: ObjectiveRanges,
    pub selected: usize,
    pub archive: Vec<ReportEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<f64>,
}

impl RunReport {
    /// Archive members are listed sorted by objective vector.
    pub fn new(nl: &Netlist, grid: GridDims, config: &SaConfig, result: &AnnealResult) -> Result<Self> {
        let sorted: Archive = result.archive.sorted().into_iter().collect();
        let selected = select_index(&sorted, &config.selection_weights)?;
        Ok(RunReport {
            netlist: NetlistFile::from_netlist(nl, Some(grid)),
            grid,
            seed: config.seed,
            config: config.clone(),
            bounds: BoundsEntry {
                db_max: result.bounds.db_max,
                dummy_max: result.bounds.dummy_max,
            },
            steps: result.steps,
            evaluations: result.evaluations,
            ranges: result.ranges,
            selected,
            archive: sorted
                .solutions()
                .iter()
                .map(|s| ReportEntry {
                    layout: render_with_netlist(&s.placement, nl)
                        .split('\n')
                        .map(String::from)
                        .collect(),
                    objectives: s.objectives,
                    placement: s.placement.clone(),
                })
                .collect(),
            wall_clock_ms: None,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: RunReport = serde_json::from_str(text).map_err(|e| Error::Io(format!("report: {e}")))?;
        r.check()?;
        Ok(r)
    }

    fn check(&self) -> Result<()> {
        let nl = self.netlist.build()?;
        for (i, e) in self.archive.iter().enumerate() {
            if e.placement.dims() != self.grid {
                return Err(Error::Io(format!("report: archive[{i}] has the wrong grid")));
            }
            e.placement
                .validate(&nl)
                .map_err(|err| Error::Io(format!("report: archive[{i}]: {err}")))?;
        }
        if self.selected >= self.archive.len() {
            return Err(Error::Io(format!(
                "report: selected index {} out of {} solutions",
                self.selected,
                self.archive.len()
            )));
        }
        Ok(())
    }

    pub fn archive(&self) -> Archive {
        self.archive
            .iter()
            .map(|e| Solution {
                placement: e.placement.clone(),
                objectives: e.objectives,
            })
            .collect()
    }

    pub fn netlist(&self) -> Result<Netlist> {
        self.netlist.build()
    }
}
