//! Diffusion sharing between horizontally adjacent units, and the dummies
//! needed to fill the resulting breaks.
//!
//! Each unit exposes its source and drain as its two diffusion edges and may
//! be flipped. Two neighbours share diffusion when the touching edges carry
//! the same net. Within every maximal run of units in a row the orientation
//! is chosen by a two-state dynamic program that minimizes breaks; among
//! optimal choices it prefers sharing with the neighbour on the sweep's
//! leading side. Dummy and empty cells end a run without a break.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{CellContent, GridDims, Netlist, Placement};

/// A dummy location in doubled coordinates: cell `(x, y)` is `(2x, 2y)` and
/// the gap between columns `x` and `x + 1` of row `y` is `(2x + 1, 2y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site {
    pub x2: u32,
    pub y2: u32,
}

impl Site {
    pub fn gap_after(x: u32, y: u32) -> Site {
        Site {
            x2: 2 * x + 1,
            y2: 2 * y,
        }
    }

    pub fn cell(x: u32, y: u32) -> Site {
        Site {
            x2: 2 * x,
            y2: 2 * y,
        }
    }

    pub fn mirror_x(self, dims: GridDims) -> Site {
        Site {
            x2: 2 * (dims.n_cols + 1) - self.x2,
            y2: self.y2,
        }
    }

    pub fn mirror_y(self, dims: GridDims) -> Site {
        Site {
            x2: self.x2,
            y2: 2 * (dims.n_rows + 1) - self.y2,
        }
    }

    pub fn rot180(self, dims: GridDims) -> Site {
        self.mirror_x(dims).mirror_y(dims)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepDirection {
    LeftToRight,
    RightToLeft,
}

/// Minimum-break orientation of one run of units.
///
/// `terms[i]` holds the (source, drain) nets of unit `i`. Returns the flip of
/// every unit and the indices `i` whose right-hand neighbour `i + 1` is
/// separated by a break.
pub fn chain_orientation(terms: &[[u32; 2]]) -> (Vec<bool>, Vec<usize>) {
    let m = terms.len();
    if m == 0 {
        return (Vec::new(), Vec::new());
    }
    let left = |i: usize, flip: bool| terms[i][flip as usize];
    let right = |i: usize, flip: bool| terms[i][!flip as usize];
    let link = |i: usize, a: bool, b: bool| (right(i, a) != left(i + 1, b)) as u32;

    // best[i][o]: fewest breaks among units i.. given unit i has flip o
    let mut best = vec![[0u32; 2]; m];
    for i in (0..m - 1).rev() {
        for o in [false, true] {
            best[i][o as usize] = [false, true]
                .iter()
                .map(|&n| link(i, o, n) + best[i + 1][n as usize])
                .min()
                .unwrap();
        }
    }

    let mut flips = Vec::with_capacity(m);
    let mut breaks = Vec::new();
    let mut cur = best[0][1] < best[0][0];
    flips.push(cur);
    for i in 1..m {
        let target = best[i - 1][cur as usize];
        let mut pick: Option<(u32, bool)> = None;
        for next in [false, true] {
            let l = link(i - 1, cur, next);
            if l + best[i][next as usize] == target && pick.is_none_or(|(pl, _)| l < pl) {
                pick = Some((l, next));
            }
        }
        let (l, next) = pick.expect("dynamic program is consistent");
        if l == 1 {
            breaks.push(i - 1);
        }
        flips.push(next);
        cur = next;
    }
    (flips, breaks)
}

/// Breaks, orientation and dummy sites for one sweep direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffusionReport {
    pub direction: SweepDirection,
    pub breaks: Vec<Site>,
    pub flips: Vec<bool>,
    pub dummies: BTreeSet<Site>,
}

fn sweep(p: &Placement, nl: &Netlist, direction: SweepDirection) -> DiffusionReport {
    let dims = p.dims();
    let cols = dims.n_cols as usize;
    let mut flips = vec![false; dims.cells()];
    let mut breaks = Vec::new();
    let mut explicit = Vec::new();

    for row in 0..dims.n_rows as usize {
        let base = row * cols;
        let y = row as u32 + 1;
        let mut col = 0;
        while col < cols {
            match p.cells()[base + col].content {
                CellContent::Unit { .. } => {}
                CellContent::Dummy => {
                    explicit.push(Site::cell(col as u32 + 1, y));
                    col += 1;
                    continue;
                }
                CellContent::Empty => {
                    col += 1;
                    continue;
                }
            }
            let start = col;
            while col < cols && matches!(p.cells()[base + col].content, CellContent::Unit { .. }) {
                col += 1;
            }
            // run covers columns start..col (0-based)
            let mut terms: Vec<[u32; 2]> = (start..col)
                .map(|c| nl.terminals(p.cells()[base + c].content.device().unwrap()))
                .collect();
            let len = terms.len();
            match direction {
                SweepDirection::LeftToRight => {
                    let (f, b) = chain_orientation(&terms);
                    for (k, flip) in f.into_iter().enumerate() {
                        flips[base + start + k] = flip;
                    }
                    for k in b {
                        breaks.push(Site::gap_after((start + k) as u32 + 1, y));
                    }
                }
                SweepDirection::RightToLeft => {
                    terms.reverse();
                    let (f, b) = chain_orientation(&terms);
                    for (k, flip) in f.into_iter().enumerate() {
                        // seen from the right, source-left reads as drain-left
                        flips[base + start + len - 1 - k] = !flip;
                    }
                    for k in b {
                        let left = start + len - 2 - k;
                        breaks.push(Site::gap_after(left as u32 + 1, y));
                    }
                }
            }
        }
    }
    breaks.sort();
    let mut dummies = BTreeSet::new();
    for site in breaks.iter().chain(&explicit) {
        dummies.insert(*site);
        dummies.insert(site.mirror_x(dims));
        dummies.insert(site.mirror_y(dims));
        dummies.insert(site.rot180(dims));
    }
    DiffusionReport {
        direction,
        breaks,
        flips,
        dummies,
    }
}

/// Sweeps in both directions and keeps the one needing fewer dummies
/// (left-to-right on ties). Break counts agree between directions; taking the
/// smaller symmetric closure keeps the dummy count independent of mirroring.
pub fn diffusion_report(p: &Placement, nl: &Netlist) -> DiffusionReport {
    let ltr = sweep(p, nl, SweepDirection::LeftToRight);
    let rtl = sweep(p, nl, SweepDirection::RightToLeft);
    debug_assert_eq!(ltr.breaks.len(), rtl.breaks.len());
    if rtl.dummies.len() < ltr.dummies.len() {
        rtl
    } else {
        ltr
    }
}

pub fn count_diffusion_breaks(p: &Placement, nl: &Netlist) -> u32 {
    sweep(p, nl, SweepDirection::LeftToRight).breaks.len() as u32
}

/// Dummy sites: every break and explicit dummy, closed under both mirrors
/// and the 180-degree rotation of the grid.
pub fn dummy_sites(p: &Placement, nl: &Netlist) -> BTreeSet<Site> {
    diffusion_report(p, nl).dummies
}

pub fn count_dummies(p: &Placement, nl: &Netlist) -> u32 {
    dummy_sites(p, nl).len() as u32
}

/// Returns `p` with every unit's flip set to the chosen orientation.
pub fn orient(p: &Placement, nl: &Netlist) -> Placement {
    p.with_flips(&diffusion_report(p, nl).flips)
}
