//! Perturbation moves that keep the array close to common-centroid form.
//!
//! The grid is split into a first half (row-major indices below
//! `cells / 2`), the 180-degree image of that half, and for odd cell counts
//! a self-symmetric center cell.

use rand::Rng;

use super::{count_diffusion_breaks, count_dummies, is_cc};
use super::{DeviceId, GridDims, Netlist, Placement, Pos, Slot};
use crate::error::{Error, Result};

/// Swaps the cells at `a` and `b` and, identically, their 180-degree images.
pub fn swap_mirrored(p: &Placement, a: Pos, b: Pos) -> Result<Placement> {
    let dims = p.dims();
    let mut slots = p.slots();
    let mut idx = [0usize; 2];
    for (k, pos) in [a, b].into_iter().enumerate() {
        if !dims.contains(pos) {
            return Err(Error::Transform(format!("({}, {}) is off the grid", pos.x, pos.y)));
        }
        let i = dims.index(pos);
        if i >= dims.half_len() {
            return Err(Error::Transform(format!(
                "({}, {}) is not in the first half of the array",
                pos.x, pos.y
            )));
        }
        if !matches!(slots[i], Slot::Device(_)) {
            return Err(Error::Transform(format!("({}, {}) holds no unit", pos.x, pos.y)));
        }
        idx[k] = i;
    }
    slots.swap(idx[0], idx[1]);
    slots.swap(dims.rotate_index(idx[0]), dims.rotate_index(idx[1]));
    Placement::from_slots(dims, &slots)
}

pub(crate) fn mirror_half(
    half: &[DeviceId],
    center: Option<DeviceId>,
    dims: GridDims,
) -> Result<Placement> {
    if half.len() > dims.half_len() {
        return Err(Error::Transform(format!(
            "{} units do not fit in half of a {dims} grid ({} cells)",
            half.len(),
            dims.half_len()
        )));
    }
    let mut slots = vec![Slot::Empty; dims.cells()];
    for (i, &d) in half.iter().enumerate() {
        slots[i] = Slot::Device(d);
        slots[dims.rotate_index(i)] = Slot::Device(d);
    }
    if let Some(d) = center {
        let c = dims.center_cell().ok_or_else(|| {
            Error::Infeasible(format!("a {dims} grid has no center cell"))
        })?;
        slots[c] = Slot::Device(d);
    }
    Placement::from_slots(dims, &slots)
}

/// Places `half` sequentially in the first half and its 180-degree image,
/// with the same device labels, in the second. Unused cells stay empty.
pub fn transform_xx180(half: &[DeviceId], dims: GridDims) -> Result<Placement> {
    mirror_half(half, None, dims)
}

/// Exchanges the labels of devices `x` and `y` inside the second half.
pub fn transform_xy180(p: &Placement, nl: &Netlist, x: DeviceId, y: DeviceId) -> Result<Placement> {
    if x == y {
        return Err(Error::Transform("XY/180 needs two distinct devices".into()));
    }
    let (nx, ny) = (nl.unit_count(x), nl.unit_count(y));
    if nx != ny {
        return Err(Error::Transform(format!(
            "'{}' has {nx} units but '{}' has {ny}",
            nl.device(x).name,
            nl.device(y).name
        )));
    }
    let dims = p.dims();
    let mut slots = p.slots();
    let second = dims.cells() - dims.half_len();
    let count = |d| slots[second..].iter().filter(|s| **s == Slot::Device(d)).count();
    if count(x) != count(y) {
        return Err(Error::Transform(format!(
            "second half holds {} units of '{}' but {} of '{}'",
            count(x),
            nl.device(x).name,
            count(y),
            nl.device(y).name
        )));
    }
    for s in &mut slots[second..] {
        if *s == Slot::Device(x) {
            *s = Slot::Device(y);
        } else if *s == Slot::Device(y) {
            *s = Slot::Device(x);
        }
    }
    Placement::from_slots(dims, &slots)
}

/// Upper bounds a perturbed placement must respect to be kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerturbBounds {
    pub db_max: u32,
    pub dummy_max: u32,
}

impl PerturbBounds {
    pub const UNBOUNDED: PerturbBounds = PerturbBounds {
        db_max: u32::MAX,
        dummy_max: u32::MAX,
    };

    pub fn admits(&self, p: &Placement, nl: &Netlist) -> bool {
        count_diffusion_breaks(p, nl) <= self.db_max && count_dummies(p, nl) <= self.dummy_max
    }
}

/// One random mirrored swap followed by every XY/180 variant of the result.
///
/// Keeps only candidates that are common-centroid and within `bounds`, in
/// a fixed order: the swapped placement first, then XY pairs in
/// lexicographic device order.
pub fn enumerate_perturbations<R: Rng + ?Sized>(
    p: &Placement,
    nl: &Netlist,
    bounds: &PerturbBounds,
    rng: &mut R,
) -> Vec<Placement> {
    let dims = p.dims();
    let units: Vec<usize> = (0..dims.half_len())
        .filter(|&i| matches!(p.slot(i), Slot::Device(_)))
        .collect();
    let swapped = if units.len() >= 2 {
        let i = rng.random_range(0..units.len());
        let mut j = rng.random_range(0..units.len() - 1);
        if j >= i {
            j += 1;
        }
        swap_mirrored(p, dims.pos(units[i]), dims.pos(units[j])).expect("first-half units")
    } else {
        p.canonical()
    };

    let mut out = vec![swapped.clone()];
    let ids: Vec<DeviceId> = nl.device_ids().collect();
    for (k, &x) in ids.iter().enumerate() {
        for &y in &ids[k + 1..] {
            if nl.unit_count(x) != nl.unit_count(y) {
                continue;
            }
            if let Ok(q) = transform_xy180(&swapped, nl, x, y) {
                out.push(q);
            }
        }
    }
    out.retain(|q| is_cc(q) && bounds.admits(q, nl));
    out
}
