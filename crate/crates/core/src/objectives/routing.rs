//! Routing-cost estimate: a rectilinear minimum spanning tree built with
//! Prim's algorithm, then improved by repeatedly inserting the single
//! Steiner point with the largest positive gain.

use serde::{Deserialize, Serialize};

use crate::placement::{GridDims, Netlist, Placement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn manhattan(self, other: Point) -> i64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Pin,
    Steiner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteNode {
    pub pos: Point,
    pub kind: NodeKind,
}

/// A tree over pins and Steiner points. Edge weights are Manhattan distances
/// between their endpoints and are never stored separately.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoutingGraph {
    pub nodes: Vec<RouteNode>,
    pub edges: Vec<(usize, usize)>,
}

impl RoutingGraph {
    pub fn weight(&self, (u, v): (usize, usize)) -> i64 {
        self.nodes[u].pos.manhattan(self.nodes[v].pos)
    }

    pub fn total_weight(&self) -> i64 {
        self.edges.iter().map(|&e| self.weight(e)).sum()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, k));
            adj[v].push((u, k));
        }
        adj
    }

    /// Drops Steiner nodes left with at most one neighbour.
    fn prune(&mut self) {
        loop {
            let mut degree = vec![0usize; self.nodes.len()];
            for &(u, v) in &self.edges {
                degree[u] += 1;
                degree[v] += 1;
            }
            let Some(dead) = (0..self.nodes.len())
                .find(|&i| self.nodes[i].kind == NodeKind::Steiner && degree[i] <= 1)
            else {
                return;
            };
            self.edges.retain(|&(u, v)| u != dead && v != dead);
            self.nodes.remove(dead);
            for e in &mut self.edges {
                if e.0 > dead {
                    e.0 -= 1;
                }
                if e.1 > dead {
                    e.1 -= 1;
                }
            }
        }
    }
}

/// Rectilinear minimum spanning tree over `pins` (Prim, O(n^2)).
///
/// Grows from pin 0. Among equal-weight frontier edges the one reaching the
/// smallest new node index wins, then the smallest tree node index.
pub fn rmst(pins: &[Point]) -> RoutingGraph {
    let n = pins.len();
    let nodes = pins
        .iter()
        .map(|&pos| RouteNode {
            pos,
            kind: NodeKind::Pin,
        })
        .collect();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n > 1 {
        let mut in_tree = vec![false; n];
        // (weight, tree endpoint) of the cheapest link into the tree
        let mut key: Vec<(i64, usize)> = vec![(i64::MAX, usize::MAX); n];
        in_tree[0] = true;
        for v in 1..n {
            key[v] = (pins[0].manhattan(pins[v]), 0);
        }
        for _ in 1..n {
            let v = (0..n)
                .filter(|&v| !in_tree[v])
                .min_by_key(|&v| (key[v].0, v))
                .expect("nodes remain");
            in_tree[v] = true;
            edges.push((key[v].1, v));
            for w in 0..n {
                if !in_tree[w] {
                    let cand = (pins[v].manhattan(pins[w]), v);
                    if cand < key[w] {
                        key[w] = cand;
                    }
                }
            }
        }
    }
    RoutingGraph { nodes, edges }
}

/// Tree rooted at one node: parent links and, for every node, the heaviest
/// edge on its path to the root.
struct Rooted {
    parent: Vec<usize>,
    heaviest: Vec<Option<(i64, usize)>>,
}

fn root_at(g: &RoutingGraph, adj: &[Vec<(usize, usize)>], root: usize) -> Rooted {
    let n = g.nodes.len();
    let mut parent = vec![usize::MAX; n];
    let mut heaviest: Vec<Option<(i64, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(u) = stack.pop() {
        for &(v, k) in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            parent[v] = u;
            let w = g.weight(g.edges[k]);
            heaviest[v] = match heaviest[u] {
                Some((hw, hk)) if hw >= w => Some((hw, hk)),
                _ => Some((w, k)),
            };
            stack.push(v);
        }
    }
    Rooted { parent, heaviest }
}

/// Which edge closes the cycle created by a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Removal {
    /// An existing tree edge on the path back to the node.
    Tree(usize),
    /// The new link from the Steiner point to the near endpoint.
    SteinerLink,
}

#[derive(Debug, Clone, Copy)]
struct Trial {
    node: usize,
    edge: usize,
    steiner: Point,
    near: usize,
    removal: Removal,
    gain: i64,
}

/// `None` when the Steiner point would land on an endpoint of the edge.
fn trial(g: &RoutingGraph, rooted: &Rooted, node: usize, edge: usize) -> Option<Trial> {
    let (u, v) = g.edges[edge];
    let (pu, pv, pn) = (g.nodes[u].pos, g.nodes[v].pos, g.nodes[node].pos);
    let steiner = Point::new(
        pn.x.clamp(pu.x.min(pv.x), pu.x.max(pv.x)),
        pn.y.clamp(pu.y.min(pv.y), pu.y.max(pv.y)),
    );
    if steiner == pu || steiner == pv {
        return None;
    }
    // the endpoint of (u, v) that is closer to `node` along the tree
    let near = if rooted.parent[v] == u { u } else { v };
    let link = steiner.manhattan(g.nodes[near].pos);
    let (removal, heaviest) = match rooted.heaviest[near] {
        Some((w, k)) if w >= link => (Removal::Tree(k), w),
        _ => (Removal::SteinerLink, link),
    };
    Some(Trial {
        node,
        edge,
        steiner,
        near,
        removal,
        gain: heaviest - pn.manhattan(steiner),
    })
}

fn apply(g: &RoutingGraph, t: &Trial) -> RoutingGraph {
    let (u, v) = g.edges[t.edge];
    let mut out = g.clone();
    let p = out.nodes.len();
    out.nodes.push(RouteNode {
        pos: t.steiner,
        kind: NodeKind::Steiner,
    });
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.edges.len() + 2);
    for (k, &e) in g.edges.iter().enumerate() {
        if k == t.edge || t.removal == Removal::Tree(k) {
            continue;
        }
        edges.push(e);
    }
    for other in [u, v] {
        if !(t.removal == Removal::SteinerLink && other == t.near) {
            edges.push((p, other));
        }
    }
    edges.push((t.node, p));
    out.edges = edges;
    out.prune();
    out
}

/// Tries a Steiner point for `node` on the bounding box of `edge`.
///
/// The edge is split at the box point closest to `node`, the node is linked
/// to that point, and the heaviest other edge on the resulting cycle is
/// dropped. Returns the weight reduction and the new tree; a Steiner point
/// landing on an endpoint of `edge` leaves the tree unchanged with gain 0.
///
/// Panics if `node` is an endpoint of `edge` or `edge` is out of range.
pub fn trial_add_steiner(g: &RoutingGraph, node: usize, edge: usize) -> (i64, RoutingGraph) {
    let (u, v) = g.edges[edge];
    assert!(node != u && node != v, "node must not be an endpoint of the edge");
    let rooted = root_at(g, &g.adjacency(), node);
    match trial(g, &rooted, node, edge) {
        Some(t) => (t.gain, apply(g, &t)),
        None => (0, g.clone()),
    }
}

/// Improves `g` until no single Steiner insertion reduces its weight.
pub fn steiner_improve(mut g: RoutingGraph) -> RoutingGraph {
    loop {
        let adj = g.adjacency();
        let mut best: Option<Trial> = None;
        for node in 0..g.nodes.len() {
            let rooted = root_at(&g, &adj, node);
            for (edge, &(u, v)) in g.edges.iter().enumerate() {
                if u == node || v == node {
                    continue;
                }
                if let Some(t) = trial(&g, &rooted, node, edge) {
                    if t.gain > 0 && best.is_none_or(|b| t.gain > b.gain) {
                        best = Some(t);
                    }
                }
            }
        }
        match best {
            Some(t) => g = apply(&g, &t),
            None => return g,
        }
    }
}

/// Steiner-improved tree weight for a set of pins.
pub fn steiner_cost(pins: &[Point]) -> i64 {
    steiner_improve(rmst(pins)).total_weight()
}

/// Pins of a net mapped into a canonical frame: among the placement's grid
/// symmetries, the image whose sorted pin list is smallest. The heuristic's
/// result then does not depend on how the array is mirrored or rotated.
pub fn canonical_pins(pins: &[Point], dims: GridDims) -> Vec<Point> {
    let (w, h) = (dims.n_cols as i64 + 1, dims.n_rows as i64 + 1);
    let images: [fn(Point, i64, i64) -> Point; 4] = [
        |p, _, _| p,
        |p, w, _| Point::new(w - p.x, p.y),
        |p, _, h| Point::new(p.x, h - p.y),
        |p, w, h| Point::new(w - p.x, h - p.y),
    ];
    images
        .iter()
        .map(|f| {
            let mut v: Vec<Point> = pins.iter().map(|&p| f(p, w, h)).collect();
            v.sort();
            v
        })
        .min()
        .unwrap_or_default()
}

/// Sum of the Steiner-improved tree weights of every route net. Pins are
/// the cell coordinates of all units of the net's member devices.
pub fn routing_cost(p: &Placement, nl: &Netlist) -> u64 {
    nl.route_nets()
        .iter()
        .map(|net| {
            let pins: Vec<Point> = net
                .members
                .iter()
                .flat_map(|&d| p.unit_positions(d))
                .map(|pos| Point::new(pos.x as i64, pos.y as i64))
                .collect();
            if pins.len() < 2 {
                return 0;
            }
            steiner_cost(&canonical_pins(&pins, p.dims())) as u64
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::placement::{DeviceSpec, Netlist, Placement};

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn is_tree(g: &RoutingGraph) -> bool {
        let n = g.nodes.len();
        if g.edges.len() + 1 != n {
            return false;
        }
        let adj = g.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    #[test]
    fn rmst_small_cases() {
        assert_eq!(rmst(&pts(&[(3, 3)])).total_weight(), 0);
        assert_eq!(rmst(&pts(&[(0, 0), (2, 0), (1, 1)])).total_weight(), 4);
        assert_eq!(rmst(&pts(&[(0, 0), (1, 0), (2, 0)])).total_weight(), 2);
    }

    #[test]
    fn rmst_tie_break_is_lowest_index() {
        let g = rmst(&pts(&[(0, 0), (2, 0), (1, 1)]));
        assert_eq!(g.edges, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn l_shaped_three_pins() {
        let g = rmst(&pts(&[(0, 0), (2, 0), (1, 1)]));
        let (gain, h) = trial_add_steiner(&g, 2, 0);
        assert_eq!(gain, 1);
        assert_eq!(h.total_weight(), 3);
        assert!(h.nodes.iter().any(|n| n.kind == NodeKind::Steiner && n.pos == Point::new(1, 0)));
        assert!(is_tree(&h));
        assert_eq!(steiner_cost(&pts(&[(0, 0), (2, 0), (1, 1)])), 3);
    }

    /// Three units: u and v four apart on one row, n two rows above their
    /// midpoint. The tree u-v, u-n gains weight(u,n) - weight(n,p) = 4 - 2.
    #[test]
    fn three_unit_gain_of_two() {
        let g = rmst(&pts(&[(0, 0), (4, 0), (2, 2)]));
        assert_eq!(g.edges, vec![(0, 1), (0, 2)]);
        let (gain, h) = trial_add_steiner(&g, 2, 0);
        assert_eq!(gain, 4 - 2);
        assert_eq!(h.total_weight(), g.total_weight() - 2);
        assert!(is_tree(&h));
    }

    #[test]
    fn steiner_point_on_endpoint_is_degenerate() {
        // collinear: the closest box point to n is v itself
        let g = rmst(&pts(&[(0, 0), (2, 0), (3, 0)]));
        let e = g.edges.iter().position(|&e| e == (0, 1)).unwrap();
        let (gain, h) = trial_add_steiner(&g, 2, e);
        assert_eq!(gain, 0);
        assert_eq!(h, g);
        // corner case: the box point is the far corner v
        let g = RoutingGraph {
            nodes: pts(&[(0, 0), (2, 2), (3, 3)])
                .into_iter()
                .map(|pos| RouteNode { pos, kind: NodeKind::Pin })
                .collect(),
            edges: vec![(0, 1), (1, 2)],
        };
        let (gain, h) = trial_add_steiner(&g, 2, 0);
        assert_eq!(gain, 0);
        assert_eq!(h, g);
    }

    #[test]
    fn improvement_never_increases_weight() {
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        for _ in 0..300 {
            let n = (next() % 8 + 1) as usize;
            let mut pins: Vec<Point> = Vec::new();
            while pins.len() < n {
                let p = Point::new(next() % 9, next() % 9);
                if !pins.contains(&p) {
                    pins.push(p);
                }
            }
            let base = rmst(&pins);
            let improved = steiner_improve(base.clone());
            assert!(improved.total_weight() <= base.total_weight());
            assert!(is_tree(&improved));
            let pin_count = improved.nodes.iter().filter(|n| n.kind == NodeKind::Pin).count();
            assert_eq!(pin_count, n);
        }
    }

    #[test]
    fn routing_cost_of_two_device_topologies() {
        let nl = Netlist::with_device_nets(vec![
            DeviceSpec::new("A", 4, "g", "s", "a").unwrap(),
            DeviceSpec::new("B", 4, "g", "s", "b").unwrap(),
        ])
        .unwrap();
        let cost = |rows: [&str; 2]| routing_cost(&Placement::from_rows(&nl, &rows).unwrap(), &nl);
        // hand-derived per-device minimum Steiner lengths: 5+5, 4+4, 5+3, 5+5
        assert_eq!(cost(["ABAB", "BABA"]), 10);
        assert_eq!(cost(["AABB", "BBAA"]), 8);
        assert_eq!(cost(["ABBA", "ABBA"]), 8);
        assert_eq!(cost(["ABBA", "BAAB"]), 10);
    }

    #[test]
    fn single_unit_net_costs_nothing() {
        let nl = Netlist::with_device_nets(vec![DeviceSpec::new("A", 1, "g", "s", "a").unwrap()])
            .unwrap();
        let p = Placement::from_rows(&nl, &["A_"]).unwrap();
        assert_eq!(routing_cost(&p, &nl), 0);
    }

    #[test]
    fn cost_is_symmetric_under_grid_mirrors() {
        let nl = Netlist::with_device_nets(vec![
            DeviceSpec::new("A", 4, "g", "s", "a").unwrap(),
            DeviceSpec::new("B", 4, "g", "s", "b").unwrap(),
        ])
        .unwrap();
        let p = Placement::from_rows(&nl, &["ABAA_", "BB_AB"]).unwrap();
        let c = routing_cost(&p, &nl);
        assert_eq!(routing_cost(&p.rotate180(), &nl), c);
        assert_eq!(routing_cost(&p.mirror_x(), &nl), c);
        assert_eq!(routing_cost(&p.mirror_y(), &nl), c);
    }
}
