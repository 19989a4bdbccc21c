//! Circulant connection sets.
//!
//! A circulant graph of order `n` is fixed by the first row `(r_1, …, r_n)` of
//! its adjacency matrix. Positions are 1-indexed as in the published tables:
//! position `i` in the support means `r_i = 1`, i.e. vertex `0` is adjacent to
//! vertex `i - 1`. A valid support never contains `1` and is closed under
//! `i ↦ n + 2 - i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::BitGraph;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SupportRepr", into = "SupportRepr")]
pub struct CirculantSupport {
    n: usize,
    positions: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SupportRepr {
    n: usize,
    support: Vec<usize>,
}

impl TryFrom<SupportRepr> for CirculantSupport {
    type Error = Error;
    fn try_from(r: SupportRepr) -> Result<Self> {
        CirculantSupport::new(r.n, r.support)
    }
}

impl From<CirculantSupport> for SupportRepr {
    fn from(s: CirculantSupport) -> Self {
        SupportRepr {
            n: s.n,
            support: s.positions,
        }
    }
}

/// Mirror of a 1-indexed position under `i ↦ n + 2 - i`.
fn mirror(n: usize, i: usize) -> usize {
    n + 2 - i
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Units of `Z/nZ` in increasing order.
pub fn units_mod(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

impl CirculantSupport {
    /// Validates a 1-indexed support. Duplicates are rejected, order is not significant.
    pub fn new(n: usize, mut positions: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSupport("order must be positive".into()));
        }
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSupport("repeated position".into()));
        }
        for &i in &positions {
            if i == 1 {
                return Err(Error::InvalidSupport(
                    "position 1 would be a loop (r_1 must be 0)".into(),
                ));
            }
            if i == 0 || i > n {
                return Err(Error::InvalidSupport(format!(
                    "position {i} outside 2..={n}"
                )));
            }
            if positions.binary_search(&mirror(n, i)).is_err() {
                return Err(Error::InvalidSupport(format!(
                    "position {i} present but its mirror {} is not",
                    mirror(n, i)
                )));
            }
        }
        Ok(CirculantSupport { n, positions })
    }

    /// Closes `half` (positions in `2..=⌊n/2⌋+1`) under the mirror map.
    pub fn from_generators(n: usize, half: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSupport("order must be positive".into()));
        }
        let top = n / 2 + 1;
        let mut positions = Vec::with_capacity(2 * half.len());
        for &i in half {
            if i < 2 || i > top {
                return Err(Error::InvalidSupport(format!(
                    "generator {i} outside 2..={top}"
                )));
            }
            positions.push(i);
            positions.push(mirror(n, i));
        }
        positions.sort_unstable();
        positions.dedup();
        Ok(CirculantSupport { n, positions })
    }

    /// Free positions `2..=⌊n/2⌋+1`; bit `k` of a free mask selects position `k + 2`.
    pub fn free_positions(n: usize) -> Vec<usize> {
        (2..=n / 2 + 1).filter(|&i| i <= n).collect()
    }

    pub fn num_free(n: usize) -> usize {
        Self::free_positions(n).len()
    }

    pub fn from_free_mask(n: usize, mask: u64) -> Result<Self> {
        let half: Vec<usize> = Self::free_positions(n)
            .into_iter()
            .enumerate()
            .filter(|(k, _)| (mask >> k) & 1 == 1)
            .map(|(_, i)| i)
            .collect();
        Self::from_generators(n, &half)
    }

    pub fn free_mask(&self) -> u64 {
        Self::free_positions(self.n)
            .into_iter()
            .enumerate()
            .filter(|(_, i)| self.contains(*i))
            .fold(0, |m, (k, _)| m | (1 << k))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// `|S|`, which is the valency of the circulant graph.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    /// 0-indexed neighbour offsets of vertex 0.
    pub fn offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions.iter().map(|i| i - 1)
    }

    pub fn adjacency(&self) -> BitGraph {
        let n = self.n;
        let mut g = BitGraph::empty(n);
        for j in 0..n {
            for off in self.offsets() {
                g.set_arc(j, (j + off) % n);
            }
        }
        g
    }

    /// Image of the connection set under `x ↦ a·x`. The resulting graph is
    /// isomorphic to the original one.
    pub fn multiplier_image(&self, a: usize) -> Result<Self> {
        let n = self.n;
        if gcd(a % n, n) != 1 {
            return Err(Error::NotAUnit(a, n));
        }
        let mut positions: Vec<usize> = self.offsets().map(|off| (a * off) % n + 1).collect();
        positions.sort_unstable();
        Ok(CirculantSupport { n, positions })
    }

    /// True when this support is lexicographically smallest among all its
    /// multiplier images.
    pub fn is_multiplier_canonical(&self) -> bool {
        units_mod(self.n).into_iter().skip(1).all(|a| {
            let img = self
                .multiplier_image(a)
                .expect("units_mod yields units only");
            self.positions <= img.positions
        })
    }
}

impl fmt::Display for CirculantSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (k, i) in self.positions.iter().enumerate() {
            if k == 0 {
                write!(f, " {i}")?;
            } else {
                write!(f, ",{i}")?;
            }
        }
        Ok(())
    }
}

/// Parses a comma separated list of positions, e.g. `2, 3, 6, 8`.
pub fn parse_positions(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad position {t:?}")))
        })
        .collect()
}

impl FromStr for CirculantSupport {
    type Err = Error;

    /// Parses `n: i1,i2,...,ik`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `n: positions`, got {s:?}")))?;
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad order {n:?}")))?;
        CirculantSupport::new(n, parse_positions(rest)?)
    }
}

/// Reads a support file: one `n: i1,...,ik` per line, `#` comments allowed.
pub fn parse_support_lines(text: &str) -> Result<Vec<CirculantSupport>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_close_under_mirror() {
        let s = CirculantSupport::from_generators(34, &[2, 3, 6, 8, 9]).unwrap();
        assert_eq!(s.positions(), &[2, 3, 6, 8, 9, 27, 28, 30, 33, 34]);

        let s = CirculantSupport::from_generators(38, &[2, 3, 5, 7, 10, 11, 20]).unwrap();
        assert!(s.contains(20));
        assert_eq!(s.len(), 13);

        assert!(CirculantSupport::from_generators(6, &[]).unwrap().is_empty());
    }

    #[test]
    fn generator_range_is_enforced() {
        assert!(CirculantSupport::from_generators(10, &[1]).is_err());
        assert!(CirculantSupport::from_generators(10, &[7]).is_err());
        assert!(CirculantSupport::from_generators(10, &[6]).is_ok());
    }

    #[test]
    fn invalid_supports_are_rejected() {
        assert!(CirculantSupport::new(5, vec![1]).is_err());
        assert!(CirculantSupport::new(5, vec![2]).is_err());
        assert!(CirculantSupport::new(5, vec![2, 6]).is_err());
        assert!(CirculantSupport::new(5, vec![2, 2, 5]).is_err());
        assert!(CirculantSupport::new(5, vec![5, 2]).is_ok());
    }

    #[test]
    fn odd_orders_have_even_support() {
        for n in (1..=21).step_by(2) {
            for mask in 0..(1u64 << CirculantSupport::num_free(n)) {
                let s = CirculantSupport::from_free_mask(n, mask).unwrap();
                assert_eq!(s.len() % 2, 0);
                assert_eq!(s.free_mask(), mask);
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let c5 = CirculantSupport::new(5, vec![2, 5]).unwrap().adjacency();
        for v in 0..5 {
            let mut want = vec![(v + 1) % 5, (v + 4) % 5];
            want.sort_unstable();
            assert_eq!(c5.neighbors(v), want);
        }
        let k4 = CirculantSupport::new(4, vec![2, 3, 4]).unwrap().adjacency();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(k4.has_edge(u, v), u != v);
            }
        }
    }

    #[test]
    fn adjacency_is_symmetric_for_all_small_supports() {
        for n in 1..=10 {
            for mask in 0..(1u64 << CirculantSupport::num_free(n)) {
                let s = CirculantSupport::from_free_mask(n, mask).unwrap();
                let g = s.adjacency();
                g.check_simple().unwrap();
                assert!(g.is_circulant());
                for v in 0..n {
                    assert_eq!(g.degree(v), s.len());
                }
            }
        }
    }

    #[test]
    fn multiplier_examples() {
        let s = CirculantSupport::new(13, vec![2, 13]).unwrap();
        assert_eq!(s.multiplier_image(1).unwrap(), s);
        assert_eq!(s.multiplier_image(12).unwrap(), s);
        assert_eq!(s.multiplier_image(2).unwrap().positions(), &[3, 12]);
        assert!(matches!(
            CirculantSupport::new(12, vec![2, 12]).unwrap().multiplier_image(4),
            Err(Error::NotAUnit(4, 12))
        ));
    }

    #[test]
    fn text_format_round_trips() {
        let s: CirculantSupport = "34: 2, 3, 6, 8, 9, 27, 28, 30, 33, 34".parse().unwrap();
        assert_eq!(s.to_string(), "34: 2,3,6,8,9,27,28,30,33,34");
        assert_eq!(s.to_string().parse::<CirculantSupport>().unwrap(), s);
        let e: CirculantSupport = "7:".parse().unwrap();
        assert!(e.is_empty());
        let many = parse_support_lines("# header\n5: 2,5\n\n4: 3 # K2 x2\n").unwrap();
        assert_eq!(many.len(), 2);
    }
}
