use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest grid side accepted. Keeps the exact well-proximity sums inside `i128`.
pub const MAX_GRID_SIDE: u32 = 64;

/// A net label such as `VDD` or `n1`. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct NetId(String);

impl NetId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::Netlist("net label must not be empty".into()));
        }
        Ok(NetId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for NetId {
    type Error = Error;
    fn try_from(value: String) -> Result<Self> {
        NetId::new(value)
    }
}

impl From<NetId> for String {
    fn from(value: NetId) -> Self {
        value.0
    }
}

impl fmt::Display for NetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Index of a device inside its [`Netlist`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeviceId(pub u16);

impl DeviceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One matched transistor, split into `unit_count` identical units.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviceSpec {
    pub name: String,
    pub unit_count: u32,
    pub gate_net: NetId,
    pub source_net: NetId,
    pub drain_net: NetId,
}

impl DeviceSpec {
    pub fn new(
        name: impl Into<String>,
        unit_count: u32,
        gate: &str,
        source: &str,
        drain: &str,
    ) -> Result<Self> {
        Ok(DeviceSpec {
            name: name.into(),
            unit_count,
            gate_net: NetId::new(gate)?,
            source_net: NetId::new(source)?,
            drain_net: NetId::new(drain)?,
        })
    }

    /// The two diffusion terminals, in unflipped (source-left) order.
    pub fn diffusion_nets(&self) -> (&NetId, &NetId) {
        (&self.source_net, &self.drain_net)
    }
}

/// A net whose pins are every unit of its member devices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteNet {
    pub net: NetId,
    pub members: Vec<DeviceId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    devices: Vec<DeviceSpec>,
    route_nets: Vec<RouteNet>,
    // interned (source, drain) net ids per device
    terminals: Vec<[u32; 2]>,
}

impl Netlist {
    /// Builds a validated netlist. `route_nets` pairs a net with device names.
    pub fn new(devices: Vec<DeviceSpec>, route_nets: Vec<(NetId, Vec<String>)>) -> Result<Self> {
        if devices.is_empty() {
            return Err(Error::Netlist("no devices".into()));
        }
        if devices.len() > u16::MAX as usize {
            return Err(Error::Netlist("too many devices".into()));
        }
        let mut seen = HashSet::new();
        for (i, d) in devices.iter().enumerate() {
            if d.name.is_empty() {
                return Err(Error::Netlist(format!("devices[{i}]: name must not be empty")));
            }
            if !seen.insert(d.name.as_str()) {
                return Err(Error::Netlist(format!(
                    "devices[{i}]: duplicate device name '{}'",
                    d.name
                )));
            }
            if d.unit_count == 0 {
                return Err(Error::Netlist(format!(
                    "devices[{i}] '{}': unit count must be positive",
                    d.name
                )));
            }
        }
        let mut resolved = Vec::with_capacity(route_nets.len());
        for (net, members) in route_nets {
            let mut ids = Vec::with_capacity(members.len());
            for m in &members {
                let idx = devices.iter().position(|d| &d.name == m).ok_or_else(|| {
                    Error::Netlist(format!("route net '{net}' references unknown device '{m}'"))
                })?;
                let id = DeviceId(idx as u16);
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
            resolved.push(RouteNet { net, members: ids });
        }
        let mut interned: Vec<&str> = Vec::new();
        let mut terminals = Vec::with_capacity(devices.len());
        for d in &devices {
            let mut pair = [0u32; 2];
            for (slot, n) in pair.iter_mut().zip([&d.source_net, &d.drain_net]) {
                *slot = match interned.iter().position(|m| *m == n.as_str()) {
                    Some(i) => i as u32,
                    None => {
                        interned.push(n.as_str());
                        (interned.len() - 1) as u32
                    }
                };
            }
            terminals.push(pair);
        }
        Ok(Netlist {
            devices,
            route_nets: resolved,
            terminals,
        })
    }

    /// Netlist whose route nets are one net per device, connecting that device's units.
    pub fn with_device_nets(devices: Vec<DeviceSpec>) -> Result<Self> {
        let nets = devices
            .iter()
            .map(|d| Ok((NetId::new(d.name.clone())?, vec![d.name.clone()])))
            .collect::<Result<Vec<_>>>()?;
        Netlist::new(devices, nets)
    }

    pub fn devices(&self) -> &[DeviceSpec] {
        &self.devices
    }

    pub fn device(&self, id: DeviceId) -> &DeviceSpec {
        &self.devices[id.index()]
    }

    pub fn device_ids(&self) -> impl Iterator<Item = DeviceId> + '_ {
        (0..self.devices.len()).map(|i| DeviceId(i as u16))
    }

    pub fn device_id(&self, name: &str) -> Option<DeviceId> {
        self.devices
            .iter()
            .position(|d| d.name == name)
            .map(|i| DeviceId(i as u16))
    }

    /// Interned (source, drain) net ids; equal ids mean the same net.
    pub fn terminals(&self, id: DeviceId) -> [u32; 2] {
        self.terminals[id.index()]
    }

    pub fn route_nets(&self) -> &[RouteNet] {
        &self.route_nets
    }

    pub fn unit_count(&self, id: DeviceId) -> u32 {
        self.devices[id.index()].unit_count
    }

    pub fn total_units(&self) -> u32 {
        self.devices.iter().map(|d| d.unit_count).sum()
    }
}

/// Array dimensions. Columns run along x, rows along y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridDims {
    pub n_rows: u32,
    pub n_cols: u32,
}

impl GridDims {
    pub fn new(n_rows: u32, n_cols: u32) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Grid(format!(
                "dimensions must be positive, got {n_rows}x{n_cols}"
            )));
        }
        if n_rows > MAX_GRID_SIDE || n_cols > MAX_GRID_SIDE {
            return Err(Error::Grid(format!(
                "dimensions {n_rows}x{n_cols} exceed the {MAX_GRID_SIDE} cell side limit"
            )));
        }
        Ok(GridDims { n_rows, n_cols })
    }

    /// Checks that the grid can hold every unit of `nl`.
    pub fn for_netlist(n_rows: u32, n_cols: u32, nl: &Netlist) -> Result<Self> {
        let dims = GridDims::new(n_rows, n_cols)?;
        if dims.cells() < nl.total_units() as usize {
            return Err(Error::Grid(format!(
                "{n_rows}x{n_cols} grid has {} cells but the netlist has {} units",
                dims.cells(),
                nl.total_units()
            )));
        }
        Ok(dims)
    }

    pub fn cells(&self) -> usize {
        self.n_rows as usize * self.n_cols as usize
    }

    /// Number of cells in each mirrored half; an odd grid also has a center cell.
    pub fn half_len(&self) -> usize {
        self.cells() / 2
    }

    pub fn center_cell(&self) -> Option<usize> {
        (self.cells() % 2 == 1).then(|| self.cells() / 2)
    }

    /// Row-major index of the cell at 1-based `pos`.
    pub fn index(&self, pos: Pos) -> usize {
        (pos.y as usize - 1) * self.n_cols as usize + (pos.x as usize - 1)
    }

    pub fn pos(&self, index: usize) -> Pos {
        let cols = self.n_cols as usize;
        Pos {
            x: (index % cols) as u32 + 1,
            y: (index / cols) as u32 + 1,
        }
    }

    pub fn contains(&self, pos: Pos) -> bool {
        (1..=self.n_cols).contains(&pos.x) && (1..=self.n_rows).contains(&pos.y)
    }

    /// Index of the 180-degree image of `index`.
    pub fn rotate_index(&self, index: usize) -> usize {
        self.cells() - 1 - index
    }

    /// Shape used when none is given: two rows up to 24 units, otherwise the
    /// most square exact factorization (two rows again if the count is prime).
    pub fn default_for(total_units: u32) -> Result<Self> {
        let total = total_units.max(1);
        if total <= 24 {
            return GridDims::new(2.min(total), total.div_ceil(2));
        }
        let mut rows = (total as f64).sqrt().floor() as u32;
        while rows > 1 && !total.is_multiple_of(rows) {
            rows -= 1;
        }
        if rows == 1 {
            GridDims::new(2, total.div_ceil(2))
        } else {
            GridDims::new(rows, total / rows)
        }
    }
}

impl fmt::Display for GridDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.n_rows, self.n_cols)
    }
}

/// 1-based cell coordinate: `x` is the column, `y` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub x: u32,
    pub y: u32,
}

impl Pos {
    pub fn new(x: u32, y: u32) -> Self {
        Pos { x, y }
    }
}
