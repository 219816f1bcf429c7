use crate::error::{Error, Result};

/// `a` dominates `b`: no component of `a` is larger and the vectors differ.
pub fn dominates_slice(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).all(|(x, y)| x <= y) && a != b
}

/// Amount of domination between two vectors: the product over differing
/// components of `|a_i - b_i| / R_i`. A non-positive range counts as 1.
pub fn delta_dom_slice(a: &[f64], b: &[f64], ranges: &[f64]) -> Result<f64> {
    debug_assert!(a.len() == b.len() && a.len() == ranges.len());
    if a == b {
        return Err(Error::Objective("amount of domination between equal vectors".into()));
    }
    Ok(a.iter()
        .zip(b)
        .zip(ranges)
        .filter(|((x, y), _)| x != y)
        .map(|((x, y), &r)| (x - y).abs() / if r > 0.0 { r } else { 1.0 })
        .product())
}
