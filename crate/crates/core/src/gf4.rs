//! GF(4) elements and vectors.
//!
//! An element is `a + bω` with `a, b ∈ GF(2)` and `ω² = ω + 1`; the fourth
//! element `ω + 1` is written `ϖ`. Vectors keep the `a` and `b` coordinates in
//! two parallel bit planes so that addition is a word XOR and the Hamming
//! weight is a population count of `a | b`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Gf4 {
    a: bool,
    b: bool,
}

impl Gf4 {
    pub const ZERO: Gf4 = Gf4 { a: false, b: false };
    pub const ONE: Gf4 = Gf4 { a: true, b: false };
    pub const OMEGA: Gf4 = Gf4 { a: false, b: true };
    pub const OMEGA_BAR: Gf4 = Gf4 { a: true, b: true };

    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::OMEGA, Gf4::OMEGA_BAR];

    pub const fn new(a: bool, b: bool) -> Self {
        Gf4 { a, b }
    }

    /// Coefficient of `1`.
    pub fn a(self) -> bool {
        self.a
    }

    /// Coefficient of `ω`.
    pub fn b(self) -> bool {
        self.b
    }

    pub fn is_zero(self) -> bool {
        !self.a && !self.b
    }

    /// `ω · (a + bω) = b + (a + b)ω`.
    pub fn mul_omega(self) -> Self {
        Gf4 {
            a: self.b,
            b: self.a ^ self.b,
        }
    }

    /// Frobenius map `x ↦ x²`, which is also conjugation.
    pub fn square(self) -> Self {
        Gf4 {
            a: self.a ^ self.b,
            b: self.b,
        }
    }

    /// Absolute trace `x + x²` into GF(2); equals the `ω` coefficient.
    pub fn trace(self) -> bool {
        self.b
    }

    pub fn to_char(self) -> char {
        match (self.a, self.b) {
            (false, false) => '0',
            (true, false) => '1',
            (false, true) => 'w',
            (true, true) => 'W',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Gf4::ZERO),
            '1' => Some(Gf4::ONE),
            'w' => Some(Gf4::OMEGA),
            'W' => Some(Gf4::OMEGA_BAR),
            _ => None,
        }
    }
}

impl std::ops::Add for Gf4 {
    type Output = Gf4;
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4 {
            a: self.a ^ rhs.a,
            b: self.b ^ rhs.b,
        }
    }
}

impl std::ops::Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        // (a1 + b1ω)(a2 + b2ω) = (a1a2 + b1b2) + (a1b2 + a2b1 + b1b2)ω
        let bb = self.b & rhs.b;
        Gf4 {
            a: (self.a & rhs.a) ^ bb,
            b: (self.a & rhs.b) ^ (self.b & rhs.a) ^ bb,
        }
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Length-`n` vector over GF(4) in two bit planes.
///
/// Bits at positions `>= n` in the backing words are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf4Vector {
    n: usize,
    plane_a: Vec<u64>,
    plane_b: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn mask_tail(n: usize, words: &mut [u64]) {
    let rem = n % 64;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
}

impl Gf4Vector {
    pub fn zeros(n: usize) -> Self {
        Gf4Vector {
            n,
            plane_a: vec![0; words_for(n)],
            plane_b: vec![0; words_for(n)],
        }
    }

    /// Builds a vector from raw planes; bits beyond `n` are cleared.
    pub fn from_planes(n: usize, mut plane_a: Vec<u64>, mut plane_b: Vec<u64>) -> Result<Self> {
        let w = words_for(n);
        if plane_a.len() != w || plane_b.len() != w {
            return Err(Error::LengthMismatch {
                left: plane_a.len().max(plane_b.len()),
                right: w,
            });
        }
        mask_tail(n, &mut plane_a);
        mask_tail(n, &mut plane_b);
        Ok(Gf4Vector {
            n,
            plane_a,
            plane_b,
        })
    }

    pub fn from_elements(elements: &[Gf4]) -> Self {
        let mut v = Gf4Vector::zeros(elements.len());
        for (i, &e) in elements.iter().enumerate() {
            v.set(i, e);
        }
        v
    }

    /// Unit vector `e · e_i`.
    pub fn unit(n: usize, i: usize, e: Gf4) -> Self {
        let mut v = Gf4Vector::zeros(n);
        v.set(i, e);
        v
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn plane_a(&self) -> &[u64] {
        &self.plane_a
    }

    pub fn plane_b(&self) -> &[u64] {
        &self.plane_b
    }

    pub fn get(&self, i: usize) -> Gf4 {
        assert!(i < self.n, "index {i} out of range for length {}", self.n);
        let (w, s) = (i / 64, i % 64);
        Gf4::new(
            (self.plane_a[w] >> s) & 1 == 1,
            (self.plane_b[w] >> s) & 1 == 1,
        )
    }

    pub fn set(&mut self, i: usize, e: Gf4) {
        assert!(i < self.n, "index {i} out of range for length {}", self.n);
        let (w, s) = (i / 64, i % 64);
        let m = 1u64 << s;
        self.plane_a[w] = (self.plane_a[w] & !m) | if e.a() { m } else { 0 };
        self.plane_b[w] = (self.plane_b[w] & !m) | if e.b() { m } else { 0 };
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf4> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    fn check_len(&self, other: &Gf4Vector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Gf4Vector) -> Result<Gf4Vector> {
        self.check_len(other)?;
        let zip = |x: &[u64], y: &[u64]| x.iter().zip(y).map(|(p, q)| p ^ q).collect();
        Ok(Gf4Vector {
            n: self.n,
            plane_a: zip(&self.plane_a, &other.plane_a),
            plane_b: zip(&self.plane_b, &other.plane_b),
        })
    }

    /// Multiplies every coordinate by `ω`: `(a, b) ↦ (b, a ⊕ b)`.
    pub fn scale_omega(&self) -> Gf4Vector {
        Gf4Vector {
            n: self.n,
            plane_a: self.plane_b.clone(),
            plane_b: self
                .plane_a
                .iter()
                .zip(&self.plane_b)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Trace inner product `Σ x_i y_i² + x_i² y_i`, computed as the parity of
    /// `a_x·b_y ⊕ b_x·a_y` over all coordinates.
    pub fn trace_inner_product(&self, other: &Gf4Vector) -> Result<bool> {
        self.check_len(other)?;
        let ones: u32 = (0..self.plane_a.len())
            .map(|k| {
                ((self.plane_a[k] & other.plane_b[k]) ^ (self.plane_b[k] & other.plane_a[k]))
                    .count_ones()
            })
            .sum();
        Ok(ones & 1 == 1)
    }

    pub fn weight(&self) -> usize {
        self.plane_a
            .iter()
            .zip(&self.plane_b)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Cyclic shift by `s` positions: coordinate `i` moves to `i + s mod n`.
    pub fn rotate(&self, s: usize) -> Gf4Vector {
        let mut out = Gf4Vector::zeros(self.n);
        if self.n == 0 {
            return out;
        }
        for i in 0..self.n {
            out.set((i + s) % self.n, self.get(i));
        }
        out
    }
}

impl fmt::Display for Gf4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.elements() {
            write!(f, "{}", e.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Gf4Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let elements = s
            .trim()
            .chars()
            .map(|c| {
                Gf4::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("invalid GF(4) symbol {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Gf4Vector::from_elements(&elements))
    }
}
