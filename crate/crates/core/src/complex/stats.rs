use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::{slope_key, SimplicialComplex};
use crate::error::{Error, Result};

/// Edge and slope counts at one interior vertex. `_00` counts totally
/// interior edges (other endpoint interior), `_0b` partially interior ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexStats {
    pub vertex: usize,
    pub f1: usize,
    pub k: usize,
    pub f1_00: usize,
    pub k_00: usize,
    pub f1_0b: usize,
    pub k_0b: usize,
    /// `floor((r + 1) / k_0b)`, absent when `k_0b = 0`.
    pub alpha: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InteriorData {
    pub r: u32,
    pub vertices: Vec<VertexStats>,
    pub interior_edges: Vec<(usize, usize)>,
    pub totally_interior_edges: Vec<(usize, usize)>,
    pub partially_interior_edges: Vec<(usize, usize)>,
    /// Components of the interior vertices joined by totally interior edges.
    /// More than one means the first differential splits into blocks; this
    /// is reported, not acted on.
    pub interior_components: usize,
}

impl InteriorData {
    pub fn vertex(&self, v: usize) -> Option<&VertexStats> {
        self.vertices.iter().find(|s| s.vertex == v)
    }

    pub fn alpha(&self, v: usize) -> Result<u32> {
        self.vertex(v)
            .and_then(|s| s.alpha)
            .ok_or(Error::AlphaUndefined { vertex: v })
    }
}

type Slope = (BigInt, BigInt);

pub fn interior_stats(c: &SimplicialComplex, r: u32) -> Result<InteriorData> {
    let interior: BTreeSet<usize> = c.interior_vertices().into_iter().collect();
    let interior_edges = c.interior_edges();
    let (totally, partially): (Vec<_>, Vec<_>) = interior_edges
        .iter()
        .filter(|(u, v)| interior.contains(u) || interior.contains(v))
        .partition(|(u, v)| interior.contains(u) && interior.contains(v));

    let mut vertices = Vec::new();
    for &v in &interior {
        let p = &c.vertices()[v];
        let mut all: BTreeSet<Slope> = BTreeSet::new();
        let mut s00: BTreeSet<Slope> = BTreeSet::new();
        let mut s0b: BTreeSet<Slope> = BTreeSet::new();
        let (mut f1, mut f1_00, mut f1_0b) = (0, 0, 0);
        for w in c.neighbors(v) {
            let key = slope_key(p, &c.vertices()[w]);
            f1 += 1;
            all.insert(key.clone());
            if interior.contains(&w) {
                f1_00 += 1;
                s00.insert(key);
            } else {
                f1_0b += 1;
                s0b.insert(key);
            }
        }
        if s00.intersection(&s0b).next().is_some() {
            return Err(Error::SlopeClashAssumption { vertex: v });
        }
        let k_0b = s0b.len();
        vertices.push(VertexStats {
            vertex: v,
            f1,
            k: all.len(),
            f1_00,
            k_00: s00.len(),
            f1_0b,
            k_0b,
            alpha: (k_0b > 0).then(|| (r + 1) / k_0b as u32),
        });
    }
    let interior_components = components(&interior, &totally);
    Ok(InteriorData {
        interior_components,
        r,
        vertices,
        interior_edges,
        totally_interior_edges: totally,
        partially_interior_edges: partially,
    })
}

fn components(nodes: &BTreeSet<usize>, edges: &[(usize, usize)]) -> usize {
    let index: Vec<usize> = nodes.iter().copied().collect();
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (u, v) in edges {
        let (a, b) = (
            index.binary_search(u).unwrap(),
            index.binary_search(v).unwrap(),
        );
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..index.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}
