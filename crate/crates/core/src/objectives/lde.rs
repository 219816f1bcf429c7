use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::placement::{DeviceId, Netlist, Placement};

/// How a device's well-proximity sum is turned into its mismatch term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LdeMode {
    /// Divide each device's sum by its unit count.
    #[default]
    PerUnitMean,
    /// Use the raw per-device sum.
    Sum,
}

/// Exact simplified inverse well-proximity sum of one device:
/// `sum over units of 1/x + 1/(r+1-x) + 1/y + 1/(c+1-y)` with `r = n_cols`
/// and `c = n_rows`.
pub fn inv_wpe_exact(p: &Placement, device: DeviceId) -> Ratio<i128> {
    let dims = p.dims();
    let (r, c) = (dims.n_cols as i128, dims.n_rows as i128);
    p.unit_positions(device)
        .into_iter()
        .map(|pos| {
            let (x, y) = (pos.x as i128, pos.y as i128);
            Ratio::new(1, x) + Ratio::new(1, r + 1 - x) + Ratio::new(1, y) + Ratio::new(1, c + 1 - y)
        })
        .fold(Ratio::from_integer(0), |acc, t| acc + t)
}

pub fn inv_wpe(p: &Placement, device: DeviceId) -> f64 {
    to_f64(inv_wpe_exact(p, device))
}

/// Sum over device pairs of the absolute difference of their well-proximity terms.
pub fn lde_mismatch_exact(p: &Placement, nl: &Netlist, mode: LdeMode) -> Ratio<i128> {
    let terms: Vec<Ratio<i128>> = nl
        .device_ids()
        .map(|d| {
            let s = inv_wpe_exact(p, d);
            match mode {
                LdeMode::PerUnitMean => s / Ratio::from_integer(nl.unit_count(d) as i128),
                LdeMode::Sum => s,
            }
        })
        .collect();
    let mut total = Ratio::from_integer(0);
    for (k, a) in terms.iter().enumerate() {
        for b in &terms[k + 1..] {
            let diff = a - b;
            total += if diff < Ratio::from_integer(0) { -diff } else { diff };
        }
    }
    total
}

pub fn lde_mismatch(p: &Placement, nl: &Netlist) -> f64 {
    to_f64(lde_mismatch_exact(p, nl, LdeMode::PerUnitMean))
}

fn to_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::placement::DeviceSpec;

    fn ab(a: u32, b: u32) -> Netlist {
        Netlist::with_device_nets(vec![
            DeviceSpec::new("A", a, "g", "s", "a").unwrap(),
            DeviceSpec::new("B", b, "g", "s", "b").unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn diagonal_pair_on_2x2() {
        // each unit: 1/1 + 1/2 + 1/1 + 1/2 = 3
        let nl = ab(2, 2);
        let p = Placement::from_rows(&nl, &["AB", "BA"]).unwrap();
        assert_eq!(inv_wpe_exact(&p, DeviceId(0)), Ratio::from_integer(6));
        assert_eq!(inv_wpe(&p, DeviceId(1)), 6.0);
        assert_eq!(lde_mismatch(&p, &nl), 0.0);
    }

    #[test]
    fn single_cell() {
        let nl = Netlist::with_device_nets(vec![DeviceSpec::new("A", 1, "g", "s", "d").unwrap()])
            .unwrap();
        let p = Placement::from_rows(&nl, &["A"]).unwrap();
        assert_eq!(inv_wpe(&p, DeviceId(0)), 4.0);
        assert_eq!(lde_mismatch(&p, &nl), 0.0);
    }

    #[test]
    fn rotated_image_devices_match() {
        // B's units are the 180-degree image of A's
        let nl = ab(3, 3);
        let p = Placement::from_rows(&nl, &["AA_", "A_B", "_BB"]).unwrap();
        let a = inv_wpe_exact(&p, DeviceId(0));
        let b = inv_wpe_exact(&p, DeviceId(1));
        assert_eq!(a, b);
    }

    #[test]
    fn clustered_columns_mismatch() {
        let nl = ab(4, 4);
        let t3 = Placement::from_rows(&nl, &["ABBA", "ABBA"]).unwrap();
        assert!(lde_mismatch(&t3, &nl) > 0.0);
        for rows in [["ABAB", "BABA"], ["AABB", "BBAA"], ["ABBA", "BAAB"]] {
            let p = Placement::from_rows(&nl, &rows).unwrap();
            assert_eq!(lde_mismatch(&p, &nl), 0.0, "{rows:?}");
        }
    }

    #[test]
    fn sum_mode_penalizes_unit_count() {
        // B has twice the units, so its raw sum dwarfs A's
        let nl = ab(2, 4);
        let p = Placement::from_rows(&nl, &["BAB", "BAB"]).unwrap();
        let mean = lde_mismatch_exact(&p, &nl, LdeMode::PerUnitMean);
        let sum = lde_mismatch_exact(&p, &nl, LdeMode::Sum);
        assert!(sum > mean);
    }
}
