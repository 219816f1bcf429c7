//! Slow brute-force references used to cross-check the fast paths.
//!
//! Everything here is written independently of the main evaluation code and
//! refuses inputs larger than an [`OracleBudget`].

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::objectives::Point;
use crate::placement::{DeviceId, GridDims, Netlist, Placement, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_cells: usize,
    pub max_pins: usize,
    pub max_placements: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_cells: 32,
            max_pins: 4,
            max_placements: 1_000_000,
        }
    }
}

/// Dispersion recounted from an explicit list of neighbour pairs.
pub fn dispersion_oracle(p: &Placement, budget: &OracleBudget) -> Result<Ratio<i64>> {
    let dims = p.dims();
    if dims.cells() > budget.max_cells {
        return Err(Error::OverBudget(format!("{} cells > {}", dims.cells(), budget.max_cells)));
    }
    let mut pairs: Vec<(Slot, Slot)> = Vec::new();
    for y in 1..=dims.n_rows {
        for x in 1..=dims.n_cols {
            let here = label(p, x, y);
            if x < dims.n_cols {
                pairs.push((here, label(p, x + 1, y)));
            }
            if y < dims.n_rows {
                pairs.push((here, label(p, x, y + 1)));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::Objective("no neighbour pairs".into()));
    }
    let total = pairs.len() as i64;
    let mixed = pairs
        .iter()
        .filter(|(a, b)| match (a, b) {
            (Slot::Device(u), Slot::Device(v)) => u != v,
            _ => false,
        })
        .count() as i64;
    // mixed pairs count +1, all others -1, averaged over pairs
    Ok(Ratio::new(mixed - (total - mixed), total))
}

fn label(p: &Placement, x: u32, y: u32) -> Slot {
    let dims = p.dims();
    p.slot(((y - 1) * dims.n_cols + (x - 1)) as usize)
}

fn manhattan(a: Point, b: Point) -> i64 {
    (a.x - b.x).abs() + (a.y - b.y).abs()
}

/// Minimum spanning tree weight by Kruskal's algorithm.
pub fn kruskal_rmst(pins: &[Point]) -> i64 {
    let n = pins.len();
    let mut edges: Vec<(i64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((manhattan(pins[i], pins[j]), i, j));
        }
    }
    edges.sort();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut total = 0;
    for (w, i, j) in edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
            total += w;
        }
    }
    total
}

/// Exact minimum rectilinear Steiner tree weight.
///
/// An optimal tree exists whose Steiner points lie on the Hanan grid and
/// number at most `pins - 2`, so trying every such subset and taking the
/// spanning tree of pins plus subset is exhaustive.
pub fn steiner_oracle(pins: &[Point], budget: &OracleBudget) -> Result<i64> {
    if pins.len() > budget.max_pins {
        return Err(Error::OverBudget(format!("{} pins > {}", pins.len(), budget.max_pins)));
    }
    let uniq: Vec<Point> = pins.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if uniq.len() <= 2 {
        return Ok(kruskal_rmst(&uniq));
    }
    let xs: BTreeSet<i64> = uniq.iter().map(|p| p.x).collect();
    let ys: BTreeSet<i64> = uniq.iter().map(|p| p.y).collect();
    let hanan: Vec<Point> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| Point::new(x, y)))
        .filter(|p| !uniq.contains(p))
        .collect();
    let mut best = kruskal_rmst(&uniq);
    let mut chosen = Vec::new();
    subsets(&hanan, 0, uniq.len() - 2, &mut chosen, &mut |extra| {
        let mut all = uniq.clone();
        all.extend_from_slice(extra);
        best = best.min(kruskal_rmst(&all));
    });
    Ok(best)
}

fn subsets(
    items: &[Point],
    from: usize,
    left: usize,
    chosen: &mut Vec<Point>,
    visit: &mut impl FnMut(&[Point]),
) {
    visit(chosen);
    if left == 0 {
        return;
    }
    for i in from..items.len() {
        chosen.push(items[i]);
        subsets(items, i + 1, left - 1, chosen, visit);
        chosen.pop();
    }
}

/// Whether every device's units average to the array center, checked by
/// plain integer sums.
fn centroid_ok(labels: &[Option<DeviceId>], dims: GridDims, devices: usize) -> bool {
    let (w, h) = (dims.n_cols as i64, dims.n_rows as i64);
    let mut sums = vec![(0i64, 0i64, 0i64); devices];
    for (i, l) in labels.iter().enumerate() {
        if let Some(d) = l {
            let s = &mut sums[d.index()];
            s.0 += (i as i64 % w) + 1;
            s.1 += (i as i64 / w) + 1;
            s.2 += 1;
        }
    }
    // centroid (sx/n, sy/n) equals ((w+1)/2, (h+1)/2)
    sums.iter().all(|&(sx, sy, n)| 2 * sx == n * (w + 1) && 2 * sy == n * (h + 1))
}

/// Every assignment of device labels to cells (remaining cells empty) whose
/// devices all have the array center as centroid. Placements differing only
/// by unit numbering count once.
pub fn cc_enumerate(nl: &Netlist, dims: GridDims, budget: &OracleBudget) -> Result<Vec<Placement>> {
    let cells = dims.cells();
    if cells > budget.max_cells {
        return Err(Error::OverBudget(format!("{cells} cells > {}", budget.max_cells)));
    }
    let counts: Vec<usize> = nl.device_ids().map(|d| nl.unit_count(d) as usize).collect();
    let units: usize = counts.iter().sum();
    if units > cells {
        return Err(Error::Grid(format!("{units} units do not fit in {cells} cells")));
    }
    // multinomial count of label assignments
    let mut total: f64 = 1.0;
    let mut free = cells;
    for &c in &counts {
        total *= binomial(free, c);
        free -= c;
    }
    if total > budget.max_placements as f64 {
        return Err(Error::OverBudget(format!(
            "{total:.0} assignments > {}",
            budget.max_placements
        )));
    }
    let mut labels = vec![None; cells];
    let mut out = Vec::new();
    assign(&counts, 0, 0, &mut labels, &mut |l| {
        if centroid_ok(l, dims, counts.len()) {
            let slots: Vec<Slot> = l.iter().map(|x| x.map_or(Slot::Empty, Slot::Device)).collect();
            out.push(Placement::from_slots(dims, &slots).expect("sized grid"));
        }
    });
    Ok(out)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Places the units of device `dev` onwards, each device's cells chosen in
/// increasing order starting at `from`.
fn assign(
    counts: &[usize],
    dev: usize,
    placed: usize,
    labels: &mut Vec<Option<DeviceId>>,
    visit: &mut impl FnMut(&[Option<DeviceId>]),
) {
    if dev == counts.len() {
        visit(labels);
        return;
    }
    if placed == counts[dev] {
        assign(counts, dev + 1, 0, labels, visit);
        return;
    }
    let start = if placed == 0 {
        0
    } else {
        labels
            .iter()
            .rposition(|l| *l == Some(DeviceId(dev as u16)))
            .map_or(0, |i| i + 1)
    };
    for i in start..labels.len() {
        if labels[i].is_none() {
            labels[i] = Some(DeviceId(dev as u16));
            assign(counts, dev, placed + 1, labels, visit);
            labels[i] = None;
        }
    }
}

/// Groups placements that differ only by swapping the labels of devices
/// with equal unit counts.
pub fn topology_classes(placements: &[Placement], nl: &Netlist) -> Vec<Vec<Placement>> {
    let ids: Vec<DeviceId> = nl.device_ids().collect();
    let mut perms: Vec<Vec<DeviceId>> = vec![Vec::new()];
    for _ in &ids {
        let mut next = Vec::new();
        for p in &perms {
            for &d in &ids {
                if !p.contains(&d) {
                    let mut q = p.clone();
                    q.push(d);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    perms.retain(|p| p.iter().enumerate().all(|(i, d)| nl.unit_count(ids[i]) == nl.unit_count(*d)));

    let mut classes: BTreeMap<Vec<Slot>, Vec<Placement>> = BTreeMap::new();
    for p in placements {
        let slots = p.slots();
        let key = perms
            .iter()
            .map(|perm| {
                slots
                    .iter()
                    .map(|s| match s {
                        Slot::Device(d) => Slot::Device(perm[d.index()]),
                        other => *other,
                    })
                    .collect::<Vec<_>>()
            })
            .min()
            .expect("identity permutation");
        classes.entry(key).or_default().push(p.clone());
    }
    classes.into_values().collect()
}

/// Fewest diffusion breaks over every orientation of every unit, found by
/// trying all flip patterns of each run of adjacent units.
pub fn diffusion_breaks_oracle(p: &Placement, nl: &Netlist) -> Result<u32> {
    let dims = p.dims();
    let mut total = 0;
    for y in 0..dims.n_rows {
        let mut run: Vec<[u32; 2]> = Vec::new();
        for x in 0..=dims.n_cols {
            let slot = if x < dims.n_cols {
                p.slot((y * dims.n_cols + x) as usize)
            } else {
                Slot::Empty
            };
            match slot {
                Slot::Device(d) => run.push(nl.terminals(d)),
                _ => {
                    total += min_breaks(&run)?;
                    run.clear();
                }
            }
        }
    }
    Ok(total)
}

fn min_breaks(run: &[[u32; 2]]) -> Result<u32> {
    if run.len() > 20 {
        return Err(Error::OverBudget(format!("run of {} units", run.len())));
    }
    let mut best = u32::MAX;
    for mask in 0u32..(1 << run.len()) {
        let side = |i: usize, right: bool| {
            let flipped = mask >> i & 1 == 1;
            run[i][(right ^ flipped) as usize]
        };
        let breaks = (1..run.len()).filter(|&i| side(i - 1, true) != side(i, false)).count();
        best = best.min(breaks as u32);
    }
    Ok(if run.is_empty() { 0 } else { best })
}
