use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::placement::{DeviceSpec, GridDims, NetId, Netlist};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceEntry {
    pub name: String,
    pub units: u32,
    pub gate: String,
    pub source: String,
    pub drain: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouteNetEntry {
    pub net: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridEntry {
    pub rows: u32,
    pub cols: u32,
}

/// On-disk netlist. Without `route_nets` every device gets its own net.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetlistFile {
    pub devices: Vec<DeviceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route_nets: Option<Vec<RouteNetEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridEntry>,
}

impl NetlistFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Netlist(e.to_string()))
    }

    pub fn build(&self) -> Result<Netlist> {
        let devices = self
            .devices
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let net = |field: &str, v: &str| {
                    NetId::new(v).map_err(|_| {
                        Error::Netlist(format!("devices[{i}].{field}: net name must not be empty"))
                    })
                };
                Ok(DeviceSpec {
                    name: d.name.clone(),
                    unit_count: d.units,
                    gate_net: net("gate", &d.gate)?,
                    source_net: net("source", &d.source)?,
                    drain_net: net("drain", &d.drain)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match &self.route_nets {
            None => Netlist::with_device_nets(devices),
            Some(nets) => {
                let nets = nets
                    .iter()
                    .enumerate()
                    .map(|(i, n)| {
                        let id = NetId::new(n.net.as_str()).map_err(|_| {
                            Error::Netlist(format!("route_nets[{i}].net: net name must not be empty"))
                        })?;
                        Ok((id, n.members.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Netlist::new(devices, nets)
            }
        }
    }

    /// Grid from the file, checked against the netlist's unit count.
    pub fn grid_for(&self, nl: &Netlist) -> Result<Option<GridDims>> {
        self.grid
            .map(|g| GridDims::for_netlist(g.rows, g.cols, nl))
            .transpose()
    }

    pub fn from_netlist(nl: &Netlist, grid: Option<GridDims>) -> Self {
        NetlistFile {
            devices: nl
                .devices()
                .iter()
                .map(|d| DeviceEntry {
                    name: d.name.clone(),
                    units: d.unit_count,
                    gate: d.gate_net.to_string(),
                    source: d.source_net.to_string(),
                    drain: d.drain_net.to_string(),
                })
                .collect(),
            route_nets: Some(
                nl.route_nets()
                    .iter()
                    .map(|r| RouteNetEntry {
                        net: r.net.to_string(),
                        members: r.members.iter().map(|&m| nl.device(m).name.clone()).collect(),
                    })
                    .collect(),
            ),
            grid: grid.map(|g| GridEntry {
                rows: g.n_rows,
                cols: g.n_cols,
            }),
        }
    }
}

/// Parses and validates a JSON netlist.
pub fn parse_netlist(text: &str) -> Result<Netlist> {
    NetlistFile::parse(text)?.build()
}
