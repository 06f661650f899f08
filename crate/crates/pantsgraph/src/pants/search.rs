//! Layered breadth-first search over a cutoff-truncated move graph.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use super::Cutoff;
use crate::error::{Error, Result};

/// An undirected graph explored lazily: `adjacent(u)` contains `v` exactly
/// when `adjacent(v)` contains `u`, for the same cutoff.
pub trait MoveGraph {
    type Node: Clone;
    type Key: Clone + Ord + Hash + Debug;

    fn key(&self, node: &Self::Node) -> Self::Key;

    fn adjacent(&self, node: &Self::Node, cutoff: &Cutoff) -> Result<Vec<Self::Node>>;
}

#[derive(Clone, Debug)]
pub struct Found<N> {
    pub distance: u32,
    pub path: Vec<N>,
    /// False when the vertex budget stopped the search inside the layer that
    /// produced the path.
    pub exact: bool,
    pub visited: usize,
}

struct Side<G: MoveGraph> {
    seen: HashMap<G::Key, (G::Node, u32, Option<G::Key>)>,
    frontier: Vec<G::Key>,
    radius: u32,
}

impl<G: MoveGraph> Side<G> {
    fn new(g: &G, start: G::Node) -> Self {
        let k = g.key(&start);
        let mut seen = HashMap::new();
        seen.insert(k.clone(), (start, 0, None));
        Side { seen, frontier: vec![k], radius: 0 }
    }

    fn chain(&self, from: &G::Key) -> Vec<G::Node> {
        let mut out = Vec::new();
        let mut cur = Some(from.clone());
        while let Some(k) = cur {
            let (n, _, parent) = &self.seen[&k];
            out.push(n.clone());
            cur = parent.clone();
        }
        out
    }
}

fn sorted_neighbours<G: MoveGraph>(g: &G, node: &G::Node, cutoff: &Cutoff) -> Result<Vec<(G::Key, G::Node)>> {
    let mut adj: Vec<(G::Key, G::Node)> = g.adjacent(node, cutoff)?.into_iter().map(|n| (g.key(&n), n)).collect();
    adj.sort_by(|a, b| a.0.cmp(&b.0));
    adj.dedup_by(|a, b| a.0 == b.0);
    Ok(adj)
}

/// Shortest path between `from` and `to` in the truncated graph.
///
/// Frontiers grow one full layer at a time, the smaller one first. The first
/// layer that closes a path also certifies it: any shorter path would have
/// met in an earlier layer. Vertices are expanded and neighbours visited in
/// key order, and the meeting vertex is the least key among the shortest
/// closings, so paths do not depend on hash order.
pub fn bidirectional<G: MoveGraph>(g: &G, from: G::Node, to: G::Node, cutoff: &Cutoff) -> Result<Found<G::Node>> {
    cutoff.check()?;
    if g.key(&from) == g.key(&to) {
        return Ok(Found { distance: 0, path: vec![from], exact: true, visited: 1 });
    }
    let not_found = || Error::NotFound { radius: cutoff.max_radius, twist: cutoff.max_twist };
    let mut fwd: Side<G> = Side::new(g, from);
    let mut bwd: Side<G> = Side::new(g, to);
    while fwd.radius + bwd.radius < cutoff.max_radius {
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        if this.frontier.is_empty() {
            return Err(not_found());
        }
        let depth = this.radius + 1;
        let mut next = Vec::new();
        let mut best: Option<(u32, G::Key)> = None;
        let mut exhausted_budget = false;
        let layer = std::mem::take(&mut this.frontier);
        for k in &layer {
            let node = this.seen[k].0.clone();
            for (nk, n) in sorted_neighbours(g, &node, cutoff)? {
                if this.seen.contains_key(&nk) {
                    continue;
                }
                if let Some((_, od, _)) = other.seen.get(&nk) {
                    let cand = (depth + od, nk.clone());
                    if best.as_ref().map_or(true, |b| cand < *b) {
                        best = Some(cand);
                    }
                }
                this.seen.insert(nk.clone(), (n, depth, Some(k.clone())));
                next.push(nk);
            }
            if this.seen.len() + other.seen.len() > cutoff.max_vertices {
                exhausted_budget = true;
                break;
            }
        }
        next.sort();
        this.frontier = next;
        this.radius = depth;
        if let Some((total, meet)) = best {
            let mut path = fwd.chain(&meet);
            path.reverse();
            let tail = bwd.chain(&meet);
            path.extend(tail.into_iter().skip(1));
            return Ok(Found {
                distance: total,
                path,
                exact: !exhausted_budget,
                visited: fwd.seen.len() + bwd.seen.len(),
            });
        }
        if exhausted_budget {
            return Err(not_found());
        }
    }
    Err(not_found())
}

/// Distances from `from` to every vertex within `radius`, by plain layered
/// search; used to answer many queries sharing a source.
pub fn spheres<G: MoveGraph>(g: &G, from: G::Node, cutoff: &Cutoff, radius: u32) -> Result<HashMap<G::Key, u32>> {
    let mut dist = HashMap::new();
    let k0 = g.key(&from);
    dist.insert(k0, 0);
    let mut frontier = vec![from];
    for d in 1..=radius {
        let mut next = Vec::new();
        for node in &frontier {
            for n in g.adjacent(node, cutoff)? {
                let k = g.key(&n);
                if !dist.contains_key(&k) {
                    dist.insert(k, d);
                    next.push(n);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(dist)
}
