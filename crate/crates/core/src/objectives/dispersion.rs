use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::placement::{Placement, Slot};

/// Degree of dispersion as an exact ratio.
///
/// Over every pair of 4-neighbour cells, an edge scores 1 when both cells hold
/// units of different devices (dummy or empty cells never score). With `E`
/// edges and `k` scoring ones the value is `(2k - E) / E`, where
/// `E = 2 n_c n_r - (n_c + n_r)`.
pub fn dispersion_ratio(p: &Placement) -> Result<Ratio<i64>> {
    let dims = p.dims();
    let (rows, cols) = (dims.n_rows as usize, dims.n_cols as usize);
    let edges = 2 * (rows * cols) as i64 - (rows + cols) as i64;
    if edges == 0 {
        return Err(Error::Objective("dispersion is undefined on a 1x1 grid".into()));
    }
    let slots = p.slots();
    let ok = |a: Slot, b: Slot| match (a, b) {
        (Slot::Device(x), Slot::Device(y)) => x != y,
        _ => false,
    };
    let mut hits = 0i64;
    for r in 0..rows {
        for c in 0..cols {
            let here = slots[r * cols + c];
            if c + 1 < cols && ok(here, slots[r * cols + c + 1]) {
                hits += 1;
            }
            if r + 1 < rows && ok(here, slots[(r + 1) * cols + c]) {
                hits += 1;
            }
        }
    }
    Ok(Ratio::new(2 * hits - edges, edges))
}

pub fn dispersion(p: &Placement) -> Result<f64> {
    let r = dispersion_ratio(p)?;
    Ok(*r.numer() as f64 / *r.denom() as f64)
}
