use super::archive::Solution;
use crate::error::{Error, Result};
use crate::placement::{
    count_diffusion_breaks, count_dummies, mirror_half, DeviceId, GridDims, Netlist, Placement,
};

/// Above this many devices the chain order is built greedily instead of by
/// trying every permutation.
pub const EXHAUSTIVE_ORDER_LIMIT: usize = 8;

/// Starting solution: each device's half of the units placed as one group
/// in the first half of the array, the other half as its 180-degree image.
///
/// The group order is the one whose full array has the fewest diffusion
/// breaks, then dummies; earlier orders win ties. A device with an odd unit
/// count takes the center cell, which needs an odd-by-odd grid and at most
/// one such device.
pub fn initial_placement(nl: &Netlist, dims: GridDims) -> Result<Solution> {
    let cells = dims.cells();
    if cells < nl.total_units() as usize {
        return Err(Error::Grid(format!(
            "{dims} grid has {cells} cells but the netlist has {} units",
            nl.total_units()
        )));
    }
    let odd: Vec<DeviceId> = nl.device_ids().filter(|&d| nl.unit_count(d) % 2 == 1).collect();
    let center = match odd.as_slice() {
        [] => None,
        [d] if dims.center_cell().is_some() => Some(*d),
        [d] => {
            return Err(Error::Infeasible(format!(
                "'{}' has an odd unit count but a {dims} grid has no center cell",
                nl.device(*d).name
            )))
        }
        _ => {
            return Err(Error::Infeasible(format!(
                "{} devices have odd unit counts; at most one can use the center cell",
                odd.len()
            )))
        }
    };

    let build = |order: &[DeviceId]| -> Result<(Placement, (u32, u32))> {
        let half: Vec<DeviceId> = order
            .iter()
            .flat_map(|&d| std::iter::repeat_n(d, nl.unit_count(d) as usize / 2))
            .collect();
        let p = mirror_half(&half, center, dims)?;
        let key = (count_diffusion_breaks(&p, nl), count_dummies(&p, nl));
        Ok((p, key))
    };

    let ids: Vec<DeviceId> = nl.device_ids().collect();
    let best = if ids.len() <= EXHAUSTIVE_ORDER_LIMIT {
        let mut best: Option<(Placement, (u32, u32))> = None;
        for order in permutations(&ids) {
            let (p, key) = build(&order)?;
            if best.as_ref().is_none_or(|(_, k)| key < *k) {
                best = Some((p, key));
            }
        }
        best.expect("at least one device").0
    } else {
        let mut order: Vec<DeviceId> = Vec::with_capacity(ids.len());
        let mut left = ids.clone();
        while !left.is_empty() {
            let mut pick = 0;
            let mut pick_key = None;
            for (k, &d) in left.iter().enumerate() {
                order.push(d);
                let (_, key) = build(&order)?;
                order.pop();
                if pick_key.is_none_or(|pk| key < pk) {
                    pick = k;
                    pick_key = Some(key);
                }
            }
            order.push(left.remove(pick));
        }
        build(&order)?.0
    };
    Solution::evaluate(best, nl)
}

/// All orderings of `items` in lexicographic order of positions.
fn permutations(items: &[DeviceId]) -> Vec<Vec<DeviceId>> {
    fn go(rest: &mut Vec<DeviceId>, cur: &mut Vec<DeviceId>, out: &mut Vec<Vec<DeviceId>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let d = rest.remove(i);
            cur.push(d);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, d);
        }
    }
    let mut out = Vec::new();
    go(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}
