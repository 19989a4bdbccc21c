//! Simple undirected graphs on bit-row adjacency matrices, and the invariants
//! reported for circulant graphs: valency, diameter, girth, clique number and
//! automorphism group order.

mod automorphism;
mod clique;
mod invariants;

pub use automorphism::{automorphism_group_order, dihedral_lower_bound, AutOrder};
pub use clique::clique_number;
pub use invariants::{
    diameter, eccentricity, girth, invariants, invariants_with_budget, Distance, GraphInvariants,
    DEFAULT_AUT_BUDGET,
};

use crate::{Error, Result};

/// Words needed for a row of `v` bits.
pub(crate) fn row_words(v: usize) -> usize {
    v.div_ceil(64).max(1)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitGraph {
    v: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn empty(v: usize) -> Self {
        let words = row_words(v);
        BitGraph {
            v,
            words,
            rows: vec![0; v * words],
        }
    }

    /// Builds a graph from a dense 0/1 matrix and checks that it is simple.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self> {
        let v = matrix.len();
        let mut g = BitGraph::empty(v);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != v {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: v,
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if x {
                    g.set_arc(i, j);
                }
            }
        }
        g.check_simple()?;
        Ok(g)
    }

    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = BitGraph::empty(v);
        for &(a, b) in edges {
            if a >= v || b >= v {
                return Err(Error::NotSimple(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::NotSimple(format!("loop at {a}")));
            }
            g.set_arc(a, b);
            g.set_arc(b, a);
        }
        Ok(g)
    }

    /// Sets the single matrix entry `(i, j)`; callers keep the matrix symmetric.
    pub(crate) fn set_arc(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (self.row(i)[j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.v).filter(|&j| self.has_edge(i, j)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.v).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Common degree, or `None` for irregular graphs.
    pub fn valency(&self) -> Option<usize> {
        let d0 = if self.v == 0 { 0 } else { self.degree(0) };
        (0..self.v).all(|i| self.degree(i) == d0).then_some(d0)
    }

    /// Verifies symmetry and an empty diagonal.
    pub fn check_simple(&self) -> Result<()> {
        for i in 0..self.v {
            if self.has_edge(i, i) {
                return Err(Error::NotSimple(format!("loop at vertex {i}")));
            }
            for j in (i + 1)..self.v {
                if self.has_edge(i, j) != self.has_edge(j, i) {
                    return Err(Error::NotSimple(format!("asymmetric entry ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// True when `x ↦ x + 1 (mod v)` is an automorphism, i.e. every row is the
    /// previous row shifted by one.
    pub fn is_circulant(&self) -> bool {
        let v = self.v;
        (0..v).all(|i| (0..v).all(|j| self.has_edge(i, j) == self.has_edge(0, (j + v - i) % v)))
    }

    /// Row `i` as a single lane, for graphs with at most `L::BITS` vertices.
    pub(crate) fn row_lane<L: crate::lane::Lane>(&self, i: usize) -> L {
        L::from_words(self.row(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_matrix_rejects_non_simple_input() {
        let asym = vec![vec![false, true], vec![false, false]];
        assert!(matches!(BitGraph::from_matrix(&asym), Err(Error::NotSimple(_))));
        let looped = vec![vec![true]];
        assert!(BitGraph::from_matrix(&looped).is_err());
        let ok = vec![vec![false, true], vec![true, false]];
        let g = BitGraph::from_matrix(&ok).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.valency(), Some(1));
    }

    #[test]
    fn path_is_neither_regular_nor_circulant() {
        let p3 = BitGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.valency(), None);
        assert!(!p3.is_circulant());
    }
}
