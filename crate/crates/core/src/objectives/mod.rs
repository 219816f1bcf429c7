//! Objective evaluation and Pareto arithmetic.

mod dispersion;
mod domination;
mod lde;
mod routing;

pub use dispersion::{dispersion, dispersion_ratio};
pub use domination::{delta_dom_slice, dominates_slice};
pub use lde::{inv_wpe, inv_wpe_exact, lde_mismatch, lde_mismatch_exact, LdeMode};
pub use routing::{
    canonical_pins, rmst, routing_cost, steiner_cost, steiner_improve, trial_add_steiner, NodeKind,
    Point, RouteNode, RoutingGraph,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::placement::{count_diffusion_breaks, count_dummies, Netlist, Placement};

pub const OBJECTIVE_NAMES: [&str; 5] =
    ["neg_dispersion", "lde_mismatch", "routing_cost", "diffusion_breaks", "dummy_count"];

/// Five minimized objectives of one placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub neg_dispersion: f64,
    pub lde_mismatch: f64,
    pub routing_cost: u64,
    pub diffusion_breaks: u32,
    pub dummy_count: u32,
}

impl ObjectiveVector {
    pub fn as_array(&self) -> [f64; 5] {
        [
            self.neg_dispersion,
            self.lde_mismatch,
            self.routing_cost as f64,
            self.diffusion_breaks as f64,
            self.dummy_count as f64,
        ]
    }

    pub fn dispersion(&self) -> f64 {
        -self.neg_dispersion
    }

    /// Total order used to break ties: component-wise lexicographic.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b) = (self.as_array(), other.as_array());
        a.iter()
            .zip(&b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Running per-component minimum and maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveRanges {
    pub min: [f64; 5],
    pub max: [f64; 5],
}

impl ObjectiveRanges {
    pub fn new(first: &ObjectiveVector) -> Self {
        let a = first.as_array();
        ObjectiveRanges { min: a, max: a }
    }

    pub fn update(&mut self, v: &ObjectiveVector) {
        for (i, x) in v.as_array().into_iter().enumerate() {
            self.min[i] = self.min[i].min(x);
            self.max[i] = self.max[i].max(x);
        }
    }

    /// Span of each component; a collapsed component reports 1.
    pub fn spans(&self) -> [f64; 5] {
        std::array::from_fn(|i| {
            let r = self.max[i] - self.min[i];
            if r > 0.0 { r } else { 1.0 }
        })
    }
}

pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    dominates_slice(&a.as_array(), &b.as_array())
}

pub fn delta_dom(a: &ObjectiveVector, b: &ObjectiveVector, r: &ObjectiveRanges) -> Result<f64> {
    delta_dom_slice(&a.as_array(), &b.as_array(), &r.spans())
}

pub fn evaluate(p: &Placement, nl: &Netlist) -> Result<ObjectiveVector> {
    Ok(ObjectiveVector {
        neg_dispersion: -dispersion(p)?,
        lde_mismatch: lde_mismatch(p, nl),
        routing_cost: routing_cost(p, nl),
        diffusion_breaks: count_diffusion_breaks(p, nl),
        dummy_count: count_dummies(p, nl),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::placement::DeviceSpec;

    fn v(a: [f64; 5]) -> ObjectiveVector {
        ObjectiveVector {
            neg_dispersion: a[0],
            lde_mismatch: a[1],
            routing_cost: a[2] as u64,
            diffusion_breaks: a[3] as u32,
            dummy_count: a[4] as u32,
        }
    }

    #[test]
    fn checkerboard_vector() {
        let nl = Netlist::with_device_nets(vec![
            DeviceSpec::new("A", 2, "g", "s", "a").unwrap(),
            DeviceSpec::new("B", 2, "g", "s", "b").unwrap(),
        ])
        .unwrap();
        let p = Placement::from_rows(&nl, &["AB", "BA"]).unwrap();
        let o = evaluate(&p, &nl).unwrap();
        assert_eq!(o.neg_dispersion, -1.0);
        assert_eq!(o.lde_mismatch, 0.0);
        assert_eq!(o.routing_cost, 4);
        assert_eq!((o.diffusion_breaks, o.dummy_count), (0, 0));
        assert_eq!(evaluate(&p.rotate180(), &nl).unwrap(), o);
    }

    #[test]
    fn ranges_and_delta() {
        let a = v([0.0, 0.0, 1.0, 0.0, 0.0]);
        let b = v([0.5, 0.0, 3.0, 0.0, 0.0]);
        let mut r = ObjectiveRanges::new(&a);
        r.update(&b);
        assert_eq!(r.spans(), [0.5, 1.0, 2.0, 1.0, 1.0]);
        assert!(dominates(&a, &b));
        assert!((delta_dom(&a, &b, &r).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lex_order() {
        let a = v([0.0, 1.0, 0.0, 0.0, 0.0]);
        let b = v([0.0, 2.0, 0.0, 0.0, 0.0]);
        assert!(a.lex_cmp(&b).is_lt());
        assert!(a.lex_cmp(&a).is_eq());
    }
}
