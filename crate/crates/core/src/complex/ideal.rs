use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{rank, RatMatrix, Rational};
use crate::monomial::Monomial;
use crate::poly::{DegreeBasis, LinearForm};

/// Column of the differential for one interior edge `ends = (i, j)`, `i < j`,
/// oriented from `i` to `j`: it maps to `+l^{r+1}` in the block of `j` and
/// `-l^{r+1}` in the block of `i`, omitting boundary endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeColumn {
    pub ends: (usize, usize),
    pub form: LinearForm,
    pub totally_interior: bool,
    /// `(block index, sign)` pairs.
    pub signs: Vec<(usize, i8)>,
}

/// `J(v)`: the distinct edge forms at an interior vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexBlock {
    pub vertex: usize,
    pub forms: Vec<LinearForm>,
}

/// `0 -> (+) J(tau) -> (+) J(v) -> 0` over interior edges and vertices, every
/// generator a power `l^{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealComplex {
    pub r: u32,
    pub exponent: u32,
    pub edges: Vec<EdgeColumn>,
    pub vertices: Vec<VertexBlock>,
}

pub fn ideal_complex(c: &SimplicialComplex, r: u32) -> IdealComplex {
    let interior = c.interior_vertices();
    let block: HashMap<usize, usize> = interior.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let pt = |v: usize| &c.vertices()[v];
    let edges: Vec<EdgeColumn> = c
        .interior_edges()
        .into_iter()
        .map(|(i, j)| {
            let mut signs = Vec::new();
            if let Some(&bi) = block.get(&i) {
                signs.push((bi, -1));
            }
            if let Some(&bj) = block.get(&j) {
                signs.push((bj, 1));
            }
            signs.sort_unstable();
            EdgeColumn {
                ends: (i, j),
                form: LinearForm::through(pt(i), pt(j)).expect("distinct vertices"),
                totally_interior: block.contains_key(&i) && block.contains_key(&j),
                signs,
            }
        })
        .collect();
    let vertices = interior
        .iter()
        .map(|&v| {
            let forms: BTreeSet<LinearForm> = c
                .neighbors(v)
                .into_iter()
                .map(|w| LinearForm::through(pt(v), pt(w)).expect("distinct vertices"))
                .collect();
            VertexBlock {
                vertex: v,
                forms: forms.into_iter().collect(),
            }
        })
        .collect();
    IdealComplex {
        r,
        exponent: r + 1,
        edges,
        vertices,
    }
}

impl IdealComplex {
    fn powers(&self) -> HashMap<&LinearForm, Vec<(Monomial, BigInt)>> {
        let mut out = HashMap::new();
        for f in self
            .edges
            .iter()
            .map(|e| &e.form)
            .chain(self.vertices.iter().flat_map(|b| b.forms.iter()))
        {
            out.entry(f).or_insert_with(|| f.power(self.exponent));
        }
        out
    }

    /// `dim J(v)_d` for the block with the given index.
    pub fn vertex_ideal_dim(&self, block: usize, d: u32) -> usize {
        if d < self.exponent {
            return 0;
        }
        let basis = DegreeBasis::full(d);
        let shifts = DegreeBasis::full(d - self.exponent);
        let powers = self.powers();
        let cols: Vec<Vec<Rational>> = self.vertices[block]
            .forms
            .iter()
            .flat_map(|f| {
                let p = &powers[f];
                shifts
                    .monos()
                    .iter()
                    .map(|mu| basis.vector_of_product(p, mu))
                    .collect::<Vec<_>>()
            })
            .collect();
        rank(&RatMatrix::from_columns(basis.len(), &cols))
    }

    /// Rank of the differential in degree `d`.
    pub fn differential_rank(&self, d: u32) -> usize {
        if d < self.exponent || self.vertices.is_empty() {
            return 0;
        }
        let basis = DegreeBasis::full(d);
        let n = basis.len();
        let shifts = DegreeBasis::full(d - self.exponent);
        let powers = self.powers();
        let rows = n * self.vertices.len();
        let mut cols = Vec::new();
        for e in &self.edges {
            if e.signs.is_empty() {
                continue;
            }
            let p = &powers[&e.form];
            for mu in shifts.monos() {
                let local = basis.vector_of_product(p, mu);
                let mut col = vec![Rational::zero(); rows];
                for &(b, s) in &e.signs {
                    for (i, x) in local.iter().enumerate() {
                        if !x.is_zero() {
                            col[b * n + i] = if s > 0 { x.clone() } else { -x };
                        }
                    }
                }
                cols.push(col);
            }
        }
        rank(&RatMatrix::from_columns(rows, &cols))
    }

    /// `dim H0(J)_d = sum_v dim J(v)_d - rank(differential_d)`.
    pub fn h0_dim(&self, d: u32) -> usize {
        if d < self.exponent {
            return 0;
        }
        let total: usize = (0..self.vertices.len())
            .map(|b| self.vertex_ideal_dim(b, d))
            .sum();
        total - self.differential_rank(d)
    }
}

pub fn h0_hilbert_oracle(c: &SimplicialComplex, r: u32, d: u32) -> usize {
    ideal_complex(c, r).h0_dim(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum H0Regularity {
    Zero,
    Degree(u32),
}

impl H0Regularity {
    pub fn degree(self) -> Option<u32> {
        match self {
            H0Regularity::Zero => None,
            H0Regularity::Degree(d) => Some(d),
        }
    }
}

/// Largest `d` with `H0(J)_d != 0`. `H0(J)` is generated in degree `r + 1`,
/// so the scan from `r + 1` stops at the first vanishing degree.
pub fn h0_regularity_oracle(c: &SimplicialComplex, r: u32) -> Result<H0Regularity> {
    let ic = ideal_complex(c, r);
    let cap = 4 * r + 2;
    for d in r + 1..=cap {
        if ic.h0_dim(d) == 0 {
            return Ok(if d == r + 1 {
                H0Regularity::Zero
            } else {
                H0Regularity::Degree(d - 1)
            });
        }
    }
    Err(Error::CapExceeded { r, degree: cap })
}
