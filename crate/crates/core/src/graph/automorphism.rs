//! Automorphism group order by individualisation–refinement.
//!
//! The first path of the search tree individualises the smallest vertex of
//! the first non-singleton cell at every level, giving a base
//! `v_0, v_1, …`. The group order is the product over levels of the orbit
//! length of `v_L` in the pointwise stabiliser of `v_0..v_{L-1}`. An orbit
//! member `w` is confirmed by finding a leaf below `w` whose labelling maps
//! the first leaf onto an automorphism. Levels are processed deepest first
//! and orbits are tracked with a union-find over the generators found so far.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::BitGraph;

/// Order of the automorphism group; `exact == false` marks a lower bound
/// returned after the search budget ran out.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AutOrder {
    #[serde(with = "biguint_string")]
    pub value: BigUint,
    pub exact: bool,
}

impl fmt::Display for AutOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.value)
        } else {
            write!(f, ">={}", self.value)
        }
    }
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Order of the dihedral group generated by rotation and reflection of `Z_n`,
/// which acts on every circulant graph of order `n`.
pub fn dihedral_lower_bound(n: usize) -> u64 {
    match n {
        0 | 1 => 1,
        2 => 2,
        _ => 2 * n as u64,
    }
}

type Cells = Vec<Vec<usize>>;

struct Timeout;

struct Refiner<'a> {
    g: &'a BitGraph,
    deadline: Option<Instant>,
}

impl Refiner<'_> {
    fn mask(&self, cell: &[usize]) -> Vec<u64> {
        let mut m = vec![0u64; self.g.words()];
        for &v in cell {
            m[v / 64] |= 1 << (v % 64);
        }
        m
    }

    fn count_into(&self, v: usize, mask: &[u64]) -> u32 {
        self.g
            .row(v)
            .iter()
            .zip(mask)
            .map(|(r, m)| (r & m).count_ones())
            .sum()
    }

    /// Coarsest equitable refinement. Fragments replace the split cell in
    /// order of increasing neighbour count, so the result commutes with
    /// relabelling.
    fn refine(&self, mut cells: Cells) -> Cells {
        let mut queue: Vec<Vec<u64>> = cells.iter().rev().map(|c| self.mask(c)).collect();
        while let Some(splitter) = queue.pop() {
            let mut k = 0;
            while k < cells.len() {
                if cells[k].len() == 1 {
                    k += 1;
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cells[k]
                    .iter()
                    .map(|&v| (self.count_into(v, &splitter), v))
                    .collect();
                if keyed.iter().all(|&(c, _)| c == keyed[0].0) {
                    k += 1;
                    continue;
                }
                keyed.sort_unstable();
                let mut frags: Cells = Vec::new();
                let mut last = None;
                for (c, v) in keyed {
                    if last != Some(c) {
                        frags.push(Vec::new());
                        last = Some(c);
                    }
                    frags.last_mut().expect("pushed").push(v);
                }
                let nf = frags.len();
                for f in frags.iter().rev() {
                    queue.push(self.mask(f));
                }
                cells.splice(k..=k, frags);
                k += nf;
            }
        }
        cells
    }

    fn individualize(&self, cells: &Cells, target: usize, v: usize) -> Cells {
        let mut out = Vec::with_capacity(cells.len() + 1);
        out.extend_from_slice(&cells[..target]);
        out.push(vec![v]);
        out.push(cells[target].iter().copied().filter(|&x| x != v).collect());
        out.extend_from_slice(&cells[target + 1..]);
        self.refine(out)
    }

    fn check_time(&self) -> Result<(), Timeout> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Timeout),
            _ => Ok(()),
        }
    }
}

fn target_cell(cells: &Cells) -> Option<usize> {
    cells.iter().position(|c| c.len() > 1)
}

fn shape(cells: &Cells) -> Vec<usize> {
    cells.iter().map(Vec::len).collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

struct Tree<'a> {
    refiner: Refiner<'a>,
    /// Partitions along the first path; `path[L]` is the node at depth `L`.
    path: Vec<Cells>,
    shapes: Vec<Vec<usize>>,
    leaf: Vec<usize>,
}

impl Tree<'_> {
    /// Searches below `cells` (at `depth`) for a leaf that yields an automorphism.
    fn find_automorphism(&self, cells: Cells, depth: usize) -> Result<Option<Vec<usize>>, Timeout> {
        self.refiner.check_time()?;
        if shape(&cells) != self.shapes[depth] {
            return Ok(None);
        }
        let Some(t) = target_cell(&cells) else {
            let mut perm = vec![0; self.leaf.len()];
            for (k, &v) in self.leaf.iter().enumerate() {
                perm[v] = cells[k][0];
            }
            return Ok(is_automorphism(self.refiner.g, &perm).then_some(perm));
        };
        for &x in &cells[t] {
            let child = self.refiner.individualize(&cells, t, x);
            if let Some(p) = self.find_automorphism(child, depth + 1)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

fn is_automorphism(g: &BitGraph, perm: &[usize]) -> bool {
    (0..g.order()).all(|u| {
        (0..g.order()).all(|v| g.has_edge(u, v) == g.has_edge(perm[u], perm[v]))
    })
}

/// Computes `|Aut(g)|`. If `budget` expires, returns a lower bound flagged
/// inexact: the dihedral order for circulant graphs, otherwise 1.
pub fn automorphism_group_order(g: &BitGraph, budget: Option<Duration>) -> AutOrder {
    let v = g.order();
    let refiner = Refiner {
        g,
        deadline: budget.map(|b| Instant::now() + b),
    };
    let fallback = || AutOrder {
        value: BigUint::from(if g.is_circulant() {
            dihedral_lower_bound(v)
        } else {
            1
        }),
        exact: false,
    };
    if v == 0 {
        return AutOrder {
            value: BigUint::from(1u32),
            exact: true,
        };
    }

    let mut path = vec![refiner.refine(vec![(0..v).collect()])];
    let mut base = Vec::new();
    while let Some(t) = target_cell(path.last().expect("non-empty")) {
        let node = path.last().expect("non-empty");
        let b = node[t][0];
        base.push((t, b));
        let child = refiner.individualize(node, t, b);
        path.push(child);
    }
    let leaf: Vec<usize> = path.last().expect("non-empty").iter().map(|c| c[0]).collect();
    let shapes = path.iter().map(shape).collect();
    let tree = Tree {
        refiner,
        path,
        shapes,
        leaf,
    };

    let mut orbits = UnionFind((0..v).collect());
    let mut order = BigUint::from(1u32);
    for level in (0..base.len()).rev() {
        let (t, b) = base[level];
        let cell = tree.path[level][t].clone();
        for &w in &cell {
            if orbits.find(w) == orbits.find(b) {
                continue;
            }
            let child = tree.refiner.individualize(&tree.path[level], t, w);
            match tree.find_automorphism(child, level + 1) {
                Ok(Some(perm)) => {
                    for (x, &y) in perm.iter().enumerate() {
                        orbits.union(x, y);
                    }
                }
                Ok(None) => {}
                Err(Timeout) => return fallback(),
            }
        }
        let root = orbits.find(b);
        let len = cell.iter().filter(|&&w| orbits.find(w) == root).count();
        order *= BigUint::from(len);
    }
    AutOrder {
        value: order,
        exact: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantSupport;

    fn order(g: &BitGraph) -> String {
        let a = automorphism_group_order(g, None);
        assert!(a.exact);
        a.value.to_string()
    }

    fn brute_force(g: &BitGraph) -> usize {
        fn rec(g: &BitGraph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> usize {
            let k = perm.len();
            if k == g.order() {
                return 1;
            }
            let mut total = 0;
            for w in 0..g.order() {
                if used[w] || (0..k).any(|i| g.has_edge(i, k) != g.has_edge(perm[i], w)) {
                    continue;
                }
                used[w] = true;
                perm.push(w);
                total += rec(g, perm, used);
                perm.pop();
                used[w] = false;
            }
            total
        }
        rec(g, &mut Vec::new(), &mut vec![false; g.order()])
    }

    #[test]
    fn known_orders() {
        let c5 = CirculantSupport::new(5, vec![2, 5]).unwrap().adjacency();
        assert_eq!(order(&c5), "10");
        let k4 = CirculantSupport::new(4, vec![2, 3, 4]).unwrap().adjacency();
        assert_eq!(order(&k4), "24");
        assert_eq!(order(&BitGraph::empty(6)), "720");
        // Petersen graph
        let pet = BitGraph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(order(&pet), "120");
    }

    #[test]
    fn matches_brute_force_on_small_circulants() {
        for n in 1..=9 {
            for mask in 0..(1u64 << CirculantSupport::num_free(n)) {
                let g = CirculantSupport::from_free_mask(n, mask).unwrap().adjacency();
                assert_eq!(order(&g), brute_force(&g).to_string(), "n={n} mask={mask:b}");
            }
        }
    }

    #[test]
    fn matches_brute_force_on_irregular_graph() {
        let g = BitGraph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)])
            .unwrap();
        assert_eq!(order(&g), brute_force(&g).to_string());
    }

    #[test]
    fn expired_budget_reports_dihedral_bound() {
        let g = CirculantSupport::new(12, vec![2, 12]).unwrap().adjacency();
        let a = automorphism_group_order(&g, Some(Duration::ZERO));
        assert!(!a.exact);
        assert_eq!(a.value, BigUint::from(24u32));
        assert_eq!(a.to_string(), ">=24");
    }
}
