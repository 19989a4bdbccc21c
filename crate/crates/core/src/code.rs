//! The additive code `C(Γ)` generated over GF(2) by the rows of `A_Γ + ωI`.
//!
//! Row `i` has `1`-plane equal to row `i` of the adjacency matrix and
//! `ω`-plane equal to the unit vector `e_i`. Consequently the codeword of a
//! message `x ∈ GF(2)^n` is `(xA, x)` in plane form: its `ω`-plane *is* the
//! message, which is what the weight engines rely on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circulant::CirculantSupport;
use crate::gf4::Gf4Vector;
use crate::graph::BitGraph;
use crate::lane::Lane;
use crate::wdist::{gray_walk, Certification, WeightReport};
use crate::{Error, Result};

/// Largest length accepted by the exhaustive evenness check.
pub const ENUMERATION_TYPE_MAX_LEN: usize = 28;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum TypeClass {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeClass::TypeI => write!(f, "Type I"),
            TypeClass::TypeII => write!(f, "Type II"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GraphCode {
    graph: BitGraph,
    support: Option<CirculantSupport>,
}

impl GraphCode {
    /// Builds `C(Γ)` and checks self-orthogonality of every pair of generators.
    pub fn build(graph: BitGraph) -> Result<Self> {
        graph.check_simple()?;
        let code = GraphCode {
            graph,
            support: None,
        };
        if !code.generators_self_orthogonal() {
            // holds for every symmetric A with zero diagonal
            return Err(Error::NotSimple("generators are not self-orthogonal".into()));
        }
        Ok(code)
    }

    pub fn from_support(support: &CirculantSupport) -> Result<Self> {
        let mut code = GraphCode::build(support.adjacency())?;
        code.support = Some(support.clone());
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.graph.order()
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn support(&self) -> Option<&CirculantSupport> {
        self.support.as_ref()
    }

    /// True when cyclic shifts map the code onto itself.
    pub fn is_circulant(&self) -> bool {
        self.support.is_some() || self.graph.is_circulant()
    }

    /// Generator `g_i`: row `i` of `A + ωI`.
    pub fn generator(&self, i: usize) -> Gf4Vector {
        let n = self.n();
        let mut b = vec![0u64; n.div_ceil(64)];
        b[i / 64] |= 1 << (i % 64);
        Gf4Vector::from_planes(n, self.graph.row(i)[..n.div_ceil(64)].to_vec(), b)
            .expect("row width matches length")
    }

    pub fn generators(&self) -> Vec<Gf4Vector> {
        (0..self.n()).map(|i| self.generator(i)).collect()
    }

    fn generators_self_orthogonal(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, gi)| {
            gens[i..]
                .iter()
                .all(|gj| !gi.trace_inner_product(gj).expect("equal lengths"))
        })
    }

    /// `Σ_{i : x_i = 1} g_i`.
    pub fn encode(&self, x: &[bool]) -> Result<Gf4Vector> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: n,
            });
        }
        let mut acc = Gf4Vector::zeros(n);
        for (i, _) in x.iter().enumerate().filter(|(_, &bit)| bit) {
            acc = acc.add(&self.generator(i))?;
        }
        Ok(acc)
    }

    /// Encodes a message written as a `0`/`1` string, bit `i` first.
    pub fn encode_bits(&self, bits: &str) -> Result<Gf4Vector> {
        self.encode(&parse_bits(bits)?)
    }

    /// `1`-planes of the generators packed into lanes.
    pub(crate) fn lane_rows<L: Lane>(&self) -> Vec<L> {
        (0..self.n()).map(|i| self.graph.row_lane(i)).collect()
    }

    /// Type by the degree criterion: Type II iff every vertex has odd degree.
    /// For circulant codes this reduces to [`type_of_by_support`].
    pub fn type_class(&self) -> TypeClass {
        match &self.support {
            Some(s) => type_of_by_support(s),
            None => {
                let all_odd = (0..self.n()).all(|i| self.graph.degree(i) % 2 == 1);
                if all_odd {
                    TypeClass::TypeII
                } else {
                    TypeClass::TypeI
                }
            }
        }
    }

    pub fn descriptor(&self, claimed_d: Option<u32>) -> Option<CodeDescriptor> {
        self.support.as_ref().map(|s| CodeDescriptor {
            n: s.n(),
            support: s.positions().to_vec(),
            code_type: self.type_class(),
            claimed_d,
        })
    }
}

pub fn parse_bits(bits: &str) -> Result<Vec<bool>> {
    bits.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("invalid message bit {c:?}"))),
        })
        .collect()
}

/// Type II iff `n/2 + 1 ∈ S`; odd lengths are always Type I.
pub fn type_of_by_support(support: &CirculantSupport) -> TypeClass {
    let n = support.n();
    if n.is_multiple_of(2) && support.contains(n / 2 + 1) {
        TypeClass::TypeII
    } else {
        TypeClass::TypeI
    }
}

/// Type by walking all `2^n` codewords and testing evenness directly.
pub fn type_of_by_enumeration(code: &GraphCode) -> Result<TypeClass> {
    let n = code.n();
    if n > ENUMERATION_TYPE_MAX_LEN {
        return Err(Error::TooLong {
            n,
            max: ENUMERATION_TYPE_MAX_LEN,
        });
    }
    let rows: Vec<u64> = code.lane_rows();
    let mut even = true;
    gray_walk(&rows, n, 0u64, 0u64, |a, b| {
        if (a | b).count_ones() % 2 == 1 {
            even = false;
            return false;
        }
        true
    });
    Ok(if even {
        TypeClass::TypeII
    } else {
        TypeClass::TypeI
    })
}

/// Parameters `[[n, 0, d]]` of the quantum code attached to a self-dual code.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuantumCode {
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub certification: Certification,
}

impl fmt::Display for QuantumCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]", self.n, self.k, self.d)
    }
}

pub fn quantum_parameters(code: &GraphCode, report: &WeightReport) -> Result<QuantumCode> {
    if report.n != code.n() {
        return Err(Error::LengthMismatch {
            left: report.n,
            right: code.n(),
        });
    }
    Ok(QuantumCode {
        n: code.n(),
        k: 0,
        d: report.d_min,
        certification: report.certification,
    })
}

/// On-disk description of a circulant graph code.
///
/// JSON fields: `n`, `support` (1-indexed positions), `type` (`"I"`/`"II"`),
/// `claimed_d` (optional).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub n: usize,
    pub support: Vec<usize>,
    #[serde(rename = "type")]
    pub code_type: TypeClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_d: Option<u32>,
}

impl CodeDescriptor {
    /// Rebuilds the code, checking the support and the recorded type.
    pub fn to_code(&self) -> Result<GraphCode> {
        let support = CirculantSupport::new(self.n, self.support.clone())?;
        let code = GraphCode::from_support(&support)?;
        if code.type_class() != self.code_type {
            return Err(Error::Parse(format!(
                "descriptor says {} but the support gives {}",
                self.code_type,
                code.type_class()
            )));
        }
        Ok(code)
    }
}
