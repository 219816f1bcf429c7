#![allow(dead_code)]

use ccplace::placement::{DeviceId, DeviceSpec, GridDims, Netlist, Placement, Slot};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub nl: Netlist,
    pub placement: Placement,
}

/// Random netlist whose devices draw diffusion nets from a small pool, so
/// some neighbours can share and some cannot.
fn netlist(counts: &[u32], rng: &mut ChaCha8Rng) -> Netlist {
    let names = ["A", "B", "C", "D", "E"];
    let devices = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let s = format!("n{}", rng.random_range(0..4));
            let d = format!("n{}", rng.random_range(0..4));
            DeviceSpec::new(names[i], n, "g", &s, &d).unwrap()
        })
        .collect();
    Netlist::with_device_nets(devices).unwrap()
}

/// Mirrored random fill of a `rows x cols` grid with `k` devices, sometimes
/// with dummy or empty cells; every device gets at least one cell pair.
pub fn random_cc(seed: u64, rows: u32, cols: u32, k: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = GridDims::new(rows, cols).unwrap();
    let half = dims.half_len();
    let k = k.min(half).max(1);
    let mut first: Vec<Slot> = (0..half)
        .map(|i| {
            if i < k {
                Slot::Device(DeviceId(i as u16))
            } else {
                match rng.random_range(0..10) {
                    0 => Slot::Empty,
                    1 => Slot::Dummy,
                    _ => Slot::Device(DeviceId(rng.random_range(0..k) as u16)),
                }
            }
        })
        .collect();
    for i in (1..first.len()).rev() {
        first.swap(i, rng.random_range(0..=i));
    }
    let mut slots = vec![Slot::Empty; dims.cells()];
    for (i, s) in first.iter().enumerate() {
        slots[i] = *s;
        slots[dims.rotate_index(i)] = *s;
    }
    finish(dims, slots, k, &mut rng)
}

/// Uniformly random labels, no symmetry.
pub fn random_any(seed: u64, rows: u32, cols: u32, k: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = GridDims::new(rows, cols).unwrap();
    let k = k.min(dims.cells()).max(1);
    let mut slots: Vec<Slot> = (0..dims.cells())
        .map(|i| {
            if i < k {
                Slot::Device(DeviceId(i as u16))
            } else {
                match rng.random_range(0..10) {
                    0 => Slot::Empty,
                    1 => Slot::Dummy,
                    _ => Slot::Device(DeviceId(rng.random_range(0..k) as u16)),
                }
            }
        })
        .collect();
    for i in (1..slots.len()).rev() {
        slots.swap(i, rng.random_range(0..=i));
    }
    finish(dims, slots, k, &mut rng)
}

fn finish(dims: GridDims, slots: Vec<Slot>, k: usize, rng: &mut ChaCha8Rng) -> Instance {
    let mut counts = vec![0u32; k];
    for s in &slots {
        if let Slot::Device(d) = s {
            counts[d.index()] += 1;
        }
    }
    let nl = netlist(&counts, rng);
    let placement = Placement::from_slots(dims, &slots).unwrap();
    placement.validate(&nl).unwrap();
    Instance { nl, placement }
}

pub fn pair_netlist() -> Netlist {
    Netlist::with_device_nets(vec![
        DeviceSpec::new("A", 4, "G", "S", "G").unwrap(),
        DeviceSpec::new("B", 4, "G", "S", "OUT").unwrap(),
    ])
    .unwrap()
}
