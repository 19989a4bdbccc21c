use std::collections::VecDeque;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{automorphism_group_order, clique_number, AutOrder, BitGraph};
use crate::{Error, Result};

pub const DEFAULT_AUT_BUDGET: Duration = Duration::from_secs(60);

/// Path length, with a distinguished value for "no path" / "no cycle".
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GraphInvariants {
    pub vertices: usize,
    pub valency: Option<usize>,
    pub diameter: Distance,
    pub girth: Distance,
    pub clique_number: usize,
    pub aut_order: AutOrder,
}

/// Largest BFS distance from `s`, or `Infinite` if some vertex is unreachable.
pub fn eccentricity(g: &BitGraph, s: usize) -> Distance {
    let w = g.words();
    let mut seen = vec![0u64; w];
    seen[s / 64] |= 1 << (s % 64);
    let mut frontier = seen.clone();
    let mut reached = 1;
    let mut depth = 0;
    while reached < g.order() {
        let mut next = vec![0u64; w];
        for (k, &word) in frontier.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let u = 64 * k + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (nw, rw) in next.iter_mut().zip(g.row(u)) {
                    *nw |= rw;
                }
            }
        }
        for (nw, sw) in next.iter_mut().zip(&mut seen) {
            *nw &= !*sw;
            *sw |= *nw;
        }
        let added: usize = next.iter().map(|x| x.count_ones() as usize).sum();
        if added == 0 {
            return Distance::Infinite;
        }
        reached += added;
        depth += 1;
        frontier = next;
    }
    Distance::Finite(depth)
}

pub fn diameter(g: &BitGraph) -> Distance {
    (0..g.order())
        .map(|s| eccentricity(g, s))
        .max()
        .unwrap_or(Distance::Finite(0))
}

/// Length of a shortest cycle, `Infinite` for forests.
pub fn girth(g: &BitGraph) -> Distance {
    let v = g.order();
    let mut best = u32::MAX;
    let mut dist = vec![u32::MAX; v];
    let mut parent = vec![usize::MAX; v];
    let mut queue = VecDeque::new();
    for s in 0..v {
        dist.fill(u32::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            // any cycle found deeper cannot beat the current best
            if 2 * dist[u] >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == u32::MAX {
        Distance::Infinite
    } else {
        Distance::Finite(best)
    }
}

pub fn invariants(g: &BitGraph) -> Result<GraphInvariants> {
    invariants_with_budget(g, Some(DEFAULT_AUT_BUDGET))
}

/// Computes all invariants. When the automorphism search runs out of
/// `aut_budget`, the order is reported as a flagged lower bound.
pub fn invariants_with_budget(
    g: &BitGraph,
    aut_budget: Option<Duration>,
) -> Result<GraphInvariants> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let diameter = if g.is_circulant() {
        // vertex-transitive: one source suffices
        eccentricity(g, 0)
    } else {
        diameter(g)
    };
    Ok(GraphInvariants {
        vertices: g.order(),
        valency: g.valency(),
        diameter,
        girth: girth(g),
        clique_number: clique_number(g),
        aut_order: automorphism_group_order(g, aut_budget),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantSupport;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pentagon() {
        let g = CirculantSupport::new(5, vec![2, 5]).unwrap().adjacency();
        let inv = invariants(&g).unwrap();
        assert_eq!(inv.valency, Some(2));
        assert_eq!(inv.diameter, Distance::Finite(2));
        assert_eq!(inv.girth, Distance::Finite(5));
        assert_eq!(inv.clique_number, 2);
        assert_eq!(inv.aut_order.to_string(), "10");
        assert!(inv.aut_order.exact);
    }

    #[test]
    fn disconnected_and_acyclic() {
        let g = BitGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(diameter(&g), Distance::Infinite);
        assert_eq!(girth(&g), Distance::Infinite);
        let tree = BitGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(diameter(&tree), Distance::Finite(2));
        assert_eq!(girth(&tree), Distance::Infinite);
        assert!(matches!(invariants(&BitGraph::empty(0)), Err(Error::EmptyGraph)));
    }

    #[test]
    fn single_source_diameter_matches_all_pairs_on_circulants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=30 {
            for _ in 0..8 {
                let mask = rng.random::<u64>() & ((1 << CirculantSupport::num_free(n)) - 1);
                let g = CirculantSupport::from_free_mask(n, mask).unwrap().adjacency();
                assert_eq!(eccentricity(&g, 0), diameter(&g), "n={n} mask={mask:b}");
            }
        }
    }

    #[test]
    fn triangle_iff_clique_at_least_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 3..=24 {
            for _ in 0..6 {
                let mask = rng.random::<u64>() & ((1 << CirculantSupport::num_free(n)) - 1);
                let g = CirculantSupport::from_free_mask(n, mask).unwrap().adjacency();
                assert_eq!(girth(&g) == Distance::Finite(3), clique_number(&g) >= 3);
            }
        }
    }
}
