//! Netlists, unit grids and common-centroid placements.
//!
//! A [`Placement`] assigns every grid cell either a unit of some device, a
//! dummy, or nothing. Units of one device are interchangeable, so every
//! constructor here renumbers unit indices in row-major order; two placements
//! with the same device pattern are therefore equal.

mod diffusion;
mod netlist;
mod transform;

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use diffusion::{
    chain_orientation, count_diffusion_breaks, count_dummies, diffusion_report, dummy_sites,
    orient, DiffusionReport, Site, SweepDirection,
};
pub use netlist::{DeviceId, DeviceSpec, GridDims, NetId, Netlist, Pos, RouteNet, MAX_GRID_SIDE};
pub use transform::{
    enumerate_perturbations, swap_mirrored, transform_xx180, transform_xy180, PerturbBounds,
};
pub(crate) use transform::mirror_half;

/// What occupies a grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CellContent {
    Unit { device: DeviceId, index: u32 },
    Dummy,
    Empty,
}

impl CellContent {
    pub fn device(&self) -> Option<DeviceId> {
        match *self {
            CellContent::Unit { device, .. } => Some(device),
            _ => None,
        }
    }
}

/// A grid cell. `flip` set means the unit sits drain-left instead of source-left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub content: CellContent,
    #[serde(default)]
    pub flip: bool,
}

impl Cell {
    pub const EMPTY: Cell = Cell {
        content: CellContent::Empty,
        flip: false,
    };
    pub const DUMMY: Cell = Cell {
        content: CellContent::Dummy,
        flip: false,
    };
}

/// Label of a cell ignoring unit numbering and orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Device(DeviceId),
    Dummy,
    Empty,
}

impl From<CellContent> for Slot {
    fn from(c: CellContent) -> Self {
        match c {
            CellContent::Unit { device, .. } => Slot::Device(device),
            CellContent::Dummy => Slot::Dummy,
            CellContent::Empty => Slot::Empty,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Placement {
    dims: GridDims,
    cells: Vec<Cell>,
}

impl Placement {
    /// Builds a placement from per-cell slots in row-major order, numbering
    /// each device's units in row-major order.
    pub fn from_slots(dims: GridDims, slots: &[Slot]) -> Result<Self> {
        if slots.len() != dims.cells() {
            return Err(Error::Placement(format!(
                "expected {} cells for a {dims} grid, got {}",
                dims.cells(),
                slots.len()
            )));
        }
        let mut next: BTreeMap<DeviceId, u32> = BTreeMap::new();
        let cells = slots
            .iter()
            .map(|slot| {
                let content = match *slot {
                    Slot::Device(device) => {
                        let n = next.entry(device).or_insert(0);
                        let index = *n;
                        *n += 1;
                        CellContent::Unit { device, index }
                    }
                    Slot::Dummy => CellContent::Dummy,
                    Slot::Empty => CellContent::Empty,
                };
                Cell {
                    content,
                    flip: false,
                }
            })
            .collect();
        Ok(Placement { dims, cells })
    }

    /// Builds a placement from explicit cells, checking it against `nl`.
    pub fn from_cells(dims: GridDims, cells: Vec<Cell>, nl: &Netlist) -> Result<Self> {
        let p = Placement { dims, cells };
        p.validate(nl)?;
        Ok(p)
    }

    /// Convenience constructor from device rows such as `["ABBA", "BAAB"]`.
    /// Device names must be single characters; `.` is a dummy, `_` is empty.
    pub fn from_rows(nl: &Netlist, rows: &[&str]) -> Result<Self> {
        let n_rows = rows.len() as u32;
        let n_cols = rows.first().map(|r| r.chars().count()).unwrap_or(0) as u32;
        let dims = GridDims::new(n_rows, n_cols)?;
        let mut slots = Vec::with_capacity(dims.cells());
        for row in rows {
            if row.chars().count() as u32 != n_cols {
                return Err(Error::Placement("ragged rows".into()));
            }
            for ch in row.chars() {
                slots.push(match ch {
                    '.' | '·' => Slot::Dummy,
                    '_' | ' ' => Slot::Empty,
                    c => Slot::Device(nl.device_id(&c.to_string()).ok_or_else(|| {
                        Error::Placement(format!("unknown device '{c}'"))
                    })?),
                });
            }
        }
        let p = Placement::from_slots(dims, &slots)?;
        p.validate(nl)?;
        Ok(p)
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, pos: Pos) -> &Cell {
        &self.cells[self.dims.index(pos)]
    }

    pub fn slot(&self, index: usize) -> Slot {
        self.cells[index].content.into()
    }

    pub fn slots(&self) -> Vec<Slot> {
        self.cells.iter().map(|c| c.content.into()).collect()
    }

    /// Positions of every unit of `device`, in row-major order.
    pub fn unit_positions(&self, device: DeviceId) -> Vec<Pos> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.content.device() == Some(device))
            .map(|(i, _)| self.dims.pos(i))
            .collect()
    }

    /// Same pattern, unit numbering reset to row-major order, orientation cleared.
    pub fn canonical(&self) -> Placement {
        Placement::from_slots(self.dims, &self.slots()).expect("dims unchanged")
    }

    pub(crate) fn with_flips(&self, flips: &[bool]) -> Placement {
        let cells = self
            .cells
            .iter()
            .zip(flips)
            .map(|(c, &flip)| Cell {
                content: c.content,
                flip: flip && matches!(c.content, CellContent::Unit { .. }),
            })
            .collect();
        Placement {
            dims: self.dims,
            cells,
        }
    }

    /// The placement rotated by 180 degrees.
    pub fn rotate180(&self) -> Placement {
        let mut slots = self.slots();
        slots.reverse();
        Placement::from_slots(self.dims, &slots).expect("dims unchanged")
    }

    /// Mirror about the vertical axis (column x maps to n_cols + 1 - x).
    pub fn mirror_x(&self) -> Placement {
        let cols = self.dims.n_cols as usize;
        let slots: Vec<Slot> = self
            .slots()
            .chunks(cols)
            .flat_map(|row| row.iter().rev().copied().collect::<Vec<_>>())
            .collect();
        Placement::from_slots(self.dims, &slots).expect("dims unchanged")
    }

    /// Mirror about the horizontal axis (row y maps to n_rows + 1 - y).
    pub fn mirror_y(&self) -> Placement {
        let cols = self.dims.n_cols as usize;
        let slots: Vec<Slot> = self
            .slots()
            .chunks(cols)
            .rev()
            .flat_map(|row| row.to_vec())
            .collect();
        Placement::from_slots(self.dims, &slots).expect("dims unchanged")
    }

    /// Checks that every unit of `nl` appears exactly once and nothing else does.
    pub fn validate(&self, nl: &Netlist) -> Result<()> {
        if self.cells.len() != self.dims.cells() {
            return Err(Error::Placement(format!(
                "cell array has {} entries for a {} grid",
                self.cells.len(),
                self.dims
            )));
        }
        let mut seen: Vec<Vec<bool>> = nl
            .devices()
            .iter()
            .map(|d| vec![false; d.unit_count as usize])
            .collect();
        for (i, cell) in self.cells.iter().enumerate() {
            if let CellContent::Unit { device, index } = cell.content {
                let units = seen.get_mut(device.index()).ok_or_else(|| {
                    Error::Placement(format!("cell {i} names unknown device #{}", device.0))
                })?;
                let name = &nl.device(device).name;
                let slot = units.get_mut(index as usize).ok_or_else(|| {
                    Error::Placement(format!(
                        "cell {i}: unit index {index} out of range for '{name}'"
                    ))
                })?;
                if *slot {
                    return Err(Error::Placement(format!(
                        "unit {index} of '{name}' placed twice"
                    )));
                }
                *slot = true;
            }
        }
        for (d, units) in nl.devices().iter().zip(&seen) {
            if let Some(missing) = units.iter().position(|s| !s) {
                return Err(Error::Placement(format!(
                    "unit {missing} of '{}' is not placed",
                    d.name
                )));
            }
        }
        Ok(())
    }
}

/// Exact centroid of each device and whether they all sit on the array center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentroidReport {
    pub centroids: BTreeMap<DeviceId, (Ratio<i64>, Ratio<i64>)>,
    pub center: (Ratio<i64>, Ratio<i64>),
    pub is_cc: bool,
}

/// Computes every device centroid in exact arithmetic.
pub fn check_cc(p: &Placement) -> CentroidReport {
    let mut sums: BTreeMap<DeviceId, (i64, i64, i64)> = BTreeMap::new();
    for (i, cell) in p.cells.iter().enumerate() {
        if let Some(d) = cell.content.device() {
            let pos = p.dims.pos(i);
            let e = sums.entry(d).or_insert((0, 0, 0));
            e.0 += pos.x as i64;
            e.1 += pos.y as i64;
            e.2 += 1;
        }
    }
    let center = (
        Ratio::new(p.dims.n_cols as i64 + 1, 2),
        Ratio::new(p.dims.n_rows as i64 + 1, 2),
    );
    let centroids: BTreeMap<_, _> = sums
        .into_iter()
        .map(|(d, (sx, sy, n))| (d, (Ratio::new(sx, n), Ratio::new(sy, n))))
        .collect();
    let is_cc = centroids.values().all(|c| *c == center);
    CentroidReport {
        centroids,
        center,
        is_cc,
    }
}

pub fn is_cc(p: &Placement) -> bool {
    check_cc(p).is_cc
}
