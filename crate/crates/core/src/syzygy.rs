//! Syzygies of `In Q`: its Buchberger graph with bounded faces, the closed
//! forms for second and third syzygies, an independent multigraded Betti
//! oracle, and the bottom-face regularity formula.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank, rat, RatMatrix};
use crate::monomial::{binom2_shifted, monomial_count, Monomial, MonomialIdeal};
use crate::staircase::QData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub ends: (usize, usize),
    pub lcm: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphFace {
    /// Boundary walk, counterclockwise in the `(x-exponent, y-exponent)` plane.
    pub boundary: Vec<usize>,
    pub lcm: Monomial,
}

/// Buchberger graph of a monomial ideal together with the bounded faces of
/// its straight-line drawing at the points `(deg_x, deg_y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuchGraph {
    pub nodes: Vec<Monomial>,
    pub edges: Vec<GraphEdge>,
    pub faces: Vec<GraphFace>,
}

impl BuchGraph {
    /// `V - E + F`, counting bounded faces only.
    pub fn euler_characteristic(&self) -> i64 {
        self.nodes.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn edge_lcms(&self) -> Vec<Monomial> {
        self.edges.iter().map(|e| e.lcm).collect()
    }

    pub fn face_lcms(&self) -> Vec<Monomial> {
        self.faces.iter().map(|f| f.lcm).collect()
    }
}

type Point = (i64, i64);

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    cross(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

/// Whether two segments meet anywhere other than a shared endpoint.
fn segments_conflict(a: Point, b: Point, c: Point, d: Point) -> bool {
    let shared = [a, b].iter().filter(|p| **p == c || **p == d).count();
    if shared == 2 {
        return true;
    }
    if shared == 1 {
        // collinear with overlap beyond the shared point
        let (s, p, q) = if a == c || a == d {
            (a, b, if a == c { d } else { c })
        } else {
            (b, a, if b == c { d } else { c })
        };
        return cross(s, p, q) == 0 && (p.0 - s.0) * (q.0 - s.0) + (p.1 - s.1) * (q.1 - s.1) > 0;
    }
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

/// Counterclockwise angular order of direction vectors, starting at angle 0.
fn angle_cmp(u: Point, v: Point) -> Ordering {
    let half = |p: Point| {
        if p.1 > 0 || (p.1 == 0 && p.0 > 0) {
            0
        } else {
            1
        }
    };
    half(u)
        .cmp(&half(v))
        .then_with(|| 0.cmp(&(u.0 * v.1 - u.1 * v.0)))
}

pub fn buchberger_graph(ideal: &MonomialIdeal) -> Result<BuchGraph> {
    let nodes = ideal.gens().to_vec();
    let n = nodes.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let l = nodes[i].lcm(&nodes[j]);
            if !(0..n).any(|k| k != i && k != j && nodes[k].divides(&l)) {
                edges.push(GraphEdge {
                    ends: (i, j),
                    lcm: l,
                });
            }
        }
    }
    let faces = bounded_faces(&nodes, &edges)?;
    Ok(BuchGraph {
        nodes,
        edges,
        faces,
    })
}

fn bounded_faces(nodes: &[Monomial], edges: &[GraphEdge]) -> Result<Vec<GraphFace>> {
    let pts: Vec<Point> = nodes.iter().map(|m| (m.x as i64, m.y as i64)).collect();
    let distinct: HashSet<Point> = pts.iter().copied().collect();
    if distinct.len() != pts.len() {
        return Err(Error::NonPlanar(
            "two generators share (deg_x, deg_y)".into(),
        ));
    }
    for (k, e) in edges.iter().enumerate() {
        let (a, b) = (pts[e.ends.0], pts[e.ends.1]);
        for (v, &p) in pts.iter().enumerate() {
            if v != e.ends.0 && v != e.ends.1 && on_segment(p, a, b) {
                return Err(Error::NonPlanar(format!(
                    "{} lies on edge {}",
                    nodes[v], e.lcm
                )));
            }
        }
        for f in &edges[k + 1..] {
            if segments_conflict(a, b, pts[f.ends.0], pts[f.ends.1]) {
                return Err(Error::NonPlanar(format!(
                    "edges {} and {} cross",
                    e.lcm, f.lcm
                )));
            }
        }
    }

    let n = nodes.len();
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        around[e.ends.0].push(e.ends.1);
        around[e.ends.1].push(e.ends.0);
    }
    for (v, nbrs) in around.iter_mut().enumerate() {
        let o = pts[v];
        nbrs.sort_by(|&p, &q| {
            angle_cmp(
                (pts[p].0 - o.0, pts[p].1 - o.1),
                (pts[q].0 - o.0, pts[q].1 - o.1),
            )
        });
    }

    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = Vec::new();
    let half_edges: Vec<(usize, usize)> = edges
        .iter()
        .flat_map(|e| [(e.ends.0, e.ends.1), (e.ends.1, e.ends.0)])
        .collect();
    for start in half_edges {
        if used.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut he = start;
        loop {
            used.insert(he);
            walk.push(he.0);
            let (u, v) = he;
            let nbrs = &around[v];
            let pos = nbrs.iter().position(|&w| w == u).unwrap();
            let w = nbrs[(pos + nbrs.len() - 1) % nbrs.len()];
            he = (v, w);
            if he == start {
                break;
            }
        }
        let area2: i64 = (0..walk.len())
            .map(|i| {
                let p = pts[walk[i]];
                let q = pts[walk[(i + 1) % walk.len()]];
                p.0 * q.1 - p.1 * q.0
            })
            .sum();
        if area2 > 0 {
            let lcm = walk
                .iter()
                .fold(Monomial::ONE, |acc, &v| acc.lcm(&nodes[v]));
            faces.push(GraphFace {
                boundary: walk,
                lcm,
            });
        }
    }
    faces.sort_by_key(|f| (f.lcm.z, std::cmp::Reverse(f.lcm)));
    Ok(faces)
}

/// Second syzygies (edge labels) of `In Q` from the staircase data.
pub fn syz2_closed_form(q: &QData) -> Result<Vec<Monomial>> {
    if q.is_trivial() {
        return Err(Error::TrivialIdeal);
    }
    if q.lambda_prime()[0] < q.eta_prime()[0] {
        // The pruned side is the second endpoint; mirror.
        let mut out: Vec<Monomial> = syz2_closed_form(&q.swapped())?
            .into_iter()
            .map(|m| m.swap_xy())
            .collect();
        out.sort_by(|a, b| b.cmp(a));
        return Ok(out);
    }
    let lp = q.lambda_prime();
    let ep = q.eta_prime();
    let (i0, j0) = (q.i0(), q.j0());
    let l0 = q.l0.expect("nontrivial In Q has l0");
    let mut out = BTreeSet::new();
    for i in l0 + 1..=i0 {
        out.insert(Monomial::new(i, 0, lp[(i - 1) as usize]));
    }
    out.insert(Monomial::new(l0, 0, ep[0]));
    for j in 1..=j0 {
        out.insert(Monomial::new(0, j, ep[(j - 1) as usize]));
    }
    for i in 1..=i0 {
        for j in 1..=j0 {
            let (li, li1) = (lp[i as usize], lp[(i - 1) as usize]);
            let (ej, ej1) = (ep[j as usize], ep[(j - 1) as usize]);
            if li <= ej && ej < li1 {
                out.insert(Monomial::new(i, j, ej));
            }
            if ej <= li && li < ej1 {
                out.insert(Monomial::new(i, j, li));
            }
        }
    }
    Ok(out.into_iter().rev().collect())
}

/// Third syzygies (face labels) ordered by ascending `z`-exponent. Fails if
/// two share a `z`-exponent or total degree increases along the order.
pub fn syz3_closed_form(g: &BuchGraph) -> Result<Vec<Monomial>> {
    let mut faces = g.face_lcms();
    faces.sort_by_key(|m| m.z);
    for w in faces.windows(2) {
        if w[0].z == w[1].z {
            return Err(Error::NonMonotone(format!(
                "{} and {} share a z-degree",
                w[0], w[1]
            )));
        }
        if w[0].degree() < w[1].degree() {
            return Err(Error::NonMonotone(format!(
                "degree rises from {} to {}",
                w[0], w[1]
            )));
        }
    }
    Ok(faces)
}

/// Multigraded Betti numbers `beta_{i, b}` of an ideal (so `i = 0` counts
/// minimal generators).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(usize, Monomial), usize>,
}

fn serialize_entries<S: serde::Serializer>(
    e: &BTreeMap<(usize, Monomial), usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(e.len()))?;
    for ((i, m), v) in e {
        seq.serialize_element(&serde_json::json!({
            "homological_degree": i,
            "multidegree": m.to_string(),
            "dimension": v,
        }))?;
    }
    seq.end()
}

impl BettiTable {
    /// Multidegrees in homological degree `i` with their dimensions,
    /// lex-descending.
    pub fn multidegrees(&self, i: usize) -> Vec<(Monomial, usize)> {
        let mut v: Vec<(Monomial, usize)> = self
            .entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|((_, m), d)| (*m, *d))
            .collect();
        v.sort_by_key(|e| std::cmp::Reverse(e.0));
        v
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, d)| d)
            .sum()
    }

    /// Total Betti numbers `beta_{i, j}` by ordinary degree `j`.
    pub fn graded(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((i, m), d) in &self.entries {
            *out.entry((*i, m.degree())).or_insert(0) += d;
        }
        out
    }

    /// `dim (S/I)_d` from the alternating sum of shifted free modules.
    pub fn hilbert_function(&self, d: u32) -> i64 {
        let mut hf = monomial_count(d) as i64;
        for ((i, m), dim) in &self.entries {
            let term = binom2_shifted(d as i64 - m.degree() as i64) * *dim as i64;
            if i % 2 == 0 {
                hf -= term;
            } else {
                hf += term;
            }
        }
        hf
    }
}

fn lcm_closure(gens: &[Monomial]) -> BTreeSet<Monomial> {
    let mut set: BTreeSet<Monomial> = gens.iter().copied().collect();
    let mut frontier: Vec<Monomial> = set.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let l = m.lcm(g);
                if set.insert(l) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    set
}

/// Reduced homology dimensions `(H~_{-1}, H~_0, H~_1, H~_2)` of the upper
/// Koszul complex of `ideal` at `b`.
fn upper_koszul_homology(ideal: &MonomialIdeal, b: &Monomial) -> [usize; 4] {
    let e = b.exponents();
    let face_in = |tau: &[usize]| {
        let mut ex = e;
        for &v in tau {
            if ex[v] == 0 {
                return false;
            }
            ex[v] -= 1;
        }
        ideal.contains(&Monomial::from_exponents(ex))
    };
    let by_dim: [Vec<Vec<usize>>; 4] = [
        vec![vec![]],
        vec![vec![0], vec![1], vec![2]],
        vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        vec![vec![0, 1, 2]],
    ]
    .map(|faces| faces.into_iter().filter(|t| face_in(t)).collect());
    // boundary[k] maps faces with k + 1 vertices to faces with k vertices
    let mut ranks = [0usize; 4];
    for k in 1..4 {
        let (hi, lo) = (&by_dim[k], &by_dim[k - 1]);
        if hi.is_empty() || lo.is_empty() {
            continue;
        }
        let mut m = RatMatrix::zeros(lo.len(), hi.len());
        for (c, face) in hi.iter().enumerate() {
            for drop in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(drop);
                if let Some(r) = lo.iter().position(|f| *f == sub) {
                    m.set(r, c, rat(if drop % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        ranks[k] = rank(&m);
    }
    let mut h = [0usize; 4];
    for k in 0..4 {
        let out_rank = ranks[k];
        let in_rank = if k + 1 < 4 { ranks[k + 1] } else { 0 };
        h[k] = by_dim[k].len() - out_rank - in_rank;
    }
    h
}

/// Betti numbers from reduced homology of upper Koszul complexes over the
/// lcm lattice of the generators.
pub fn betti_oracle(ideal: &MonomialIdeal) -> BettiTable {
    let mut entries = BTreeMap::new();
    for b in lcm_closure(ideal.gens()) {
        let h = upper_koszul_homology(ideal, &b);
        for (i, &dim) in h.iter().enumerate() {
            if dim > 0 {
                entries.insert((i, b), dim);
            }
        }
    }
    BettiTable { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BottomFace {
    pub regularity: u32,
    pub witness: Monomial,
    pub zeta0: u32,
}

/// `deg(x^{i0} y^{j0} z^{zeta0}) - 3 + (r + 1)` with
/// `zeta0 = min(lambda'_{i0-1}, eta'_{j0-1})`, cross-checked against the
/// socle degree of `In Q`.
pub fn regularity_from_bottom_face(q: &QData) -> Result<BottomFace> {
    if q.is_trivial() {
        return Err(Error::TrivialIdeal);
    }
    let (i0, j0) = (q.i0(), q.j0());
    let zeta0 = q.lambda_prime()[(i0 - 1) as usize].min(q.eta_prime()[(j0 - 1) as usize]);
    if !(1..=2).contains(&zeta0) {
        return Err(Error::ZetaOutOfRange(zeta0));
    }
    let witness = Monomial::new(i0, j0, zeta0);
    let regularity = witness.degree() - 3 + q.r + 1;
    let socle = q.in_q.max_socle_degree()? + q.r + 1;
    if socle != regularity {
        return Err(Error::SocleMismatch {
            closed_form: regularity,
            socle,
        });
    }
    Ok(BottomFace {
        regularity,
        witness,
        zeta0,
    })
}
