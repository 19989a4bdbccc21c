//! Maximum clique by branch and bound with a greedy-colouring bound.
//!
//! Vertices are relabelled along a degeneracy ordering (highest core first),
//! then candidates are coloured greedily at every node; a branch is cut when
//! the current clique plus the number of colours cannot beat the incumbent.

use super::BitGraph;

type Set = Vec<u64>;

fn is_empty(s: &Set) -> bool {
    s.iter().all(|&w| w == 0)
}

fn and(a: &Set, b: &[u64]) -> Set {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn clear(s: &mut Set, v: usize) {
    s[v / 64] &= !(1 << (v % 64));
}

fn first(s: &Set) -> Option<usize> {
    s.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, &w)| 64 * k + w.trailing_zeros() as usize)
}

/// Degeneracy ordering: repeatedly strip a minimum-degree vertex; returned in
/// reverse removal order so dense cores come first.
fn degeneracy_order(g: &BitGraph) -> Vec<usize> {
    let v = g.order();
    let mut deg: Vec<usize> = (0..v).map(|i| g.degree(i)).collect();
    let mut removed = vec![false; v];
    let mut order = Vec::with_capacity(v);
    for _ in 0..v {
        let u = (0..v)
            .filter(|&i| !removed[i])
            .min_by_key(|&i| (deg[i], i))
            .expect("vertices remain");
        removed[u] = true;
        order.push(u);
        for w in g.neighbors(u) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct Search<'a> {
    rows: &'a [Set],
    best: usize,
}

impl Search<'_> {
    /// Greedy colouring of `p`; returns vertices sorted by colour and their colours.
    fn colour(&self, p: &Set) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = p.clone();
        let mut verts = Vec::new();
        let mut colours = Vec::new();
        let mut c = 0;
        while !is_empty(&uncoloured) {
            c += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first(&q) {
                clear(&mut q, v);
                clear(&mut uncoloured, v);
                for (qw, rw) in q.iter_mut().zip(&self.rows[v]) {
                    *qw &= !rw;
                }
                verts.push(v);
                colours.push(c);
            }
        }
        (verts, colours)
    }

    fn expand(&mut self, size: usize, mut p: Set) {
        let (verts, colours) = self.colour(&p);
        for k in (0..verts.len()).rev() {
            if size + colours[k] <= self.best {
                return;
            }
            let v = verts[k];
            let np = and(&p, &self.rows[v]);
            if is_empty(&np) {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(size + 1, np);
            }
            clear(&mut p, v);
        }
    }
}

pub fn clique_number(g: &BitGraph) -> usize {
    let v = g.order();
    if v == 0 {
        return 0;
    }
    let order = degeneracy_order(g);
    let words = g.words();
    // relabel: new index k is old vertex order[k]
    let mut pos = vec![0; v];
    for (k, &u) in order.iter().enumerate() {
        pos[u] = k;
    }
    let rows: Vec<Set> = order
        .iter()
        .map(|&u| {
            let mut r = vec![0u64; words];
            for w in g.neighbors(u) {
                let k = pos[w];
                r[k / 64] |= 1 << (k % 64);
            }
            r
        })
        .collect();
    let mut all = vec![0u64; words];
    for k in 0..v {
        all[k / 64] |= 1 << (k % 64);
    }
    let mut s = Search { rows: &rows, best: 1 };
    s.expand(0, all);
    s.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantSupport;

    fn brute_force(g: &BitGraph) -> usize {
        let v = g.order();
        (0u32..(1 << v))
            .filter(|&m| {
                (0..v).all(|i| {
                    (m >> i) & 1 == 0 || (0..v).all(|j| j == i || (m >> j) & 1 == 0 || g.has_edge(i, j))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_graphs() {
        assert_eq!(clique_number(&BitGraph::empty(3)), 1);
        let k4 = CirculantSupport::new(4, vec![2, 3, 4]).unwrap().adjacency();
        assert_eq!(clique_number(&k4), 4);
        let c5 = CirculantSupport::new(5, vec![2, 5]).unwrap().adjacency();
        assert_eq!(clique_number(&c5), 2);
    }

    #[test]
    fn matches_brute_force_on_small_circulants() {
        for n in 1..=14 {
            for mask in 0..(1u64 << CirculantSupport::num_free(n)) {
                let g = CirculantSupport::from_free_mask(n, mask).unwrap().adjacency();
                assert_eq!(clique_number(&g), brute_force(&g), "n={n} mask={mask:b}");
            }
        }
    }

    #[test]
    fn matches_brute_force_on_irregular_graph() {
        let g = BitGraph::from_edges(
            7,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (3, 5), (2, 5), (2, 4), (5, 6)],
        )
        .unwrap();
        assert_eq!(clique_number(&g), brute_force(&g));
        assert_eq!(clique_number(&g), 4);
    }
}
