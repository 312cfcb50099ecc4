//! Planar simplicial complexes: ingestion, validation, interior structure,
//! the ideal complex `J` built on it, and brute-force oracles for `H0(J)` and
//! spline dimensions.

mod ideal;
mod normalize;
mod splines;
mod stats;

pub mod fixtures;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub use ideal::{
    h0_hilbert_oracle, h0_regularity_oracle, ideal_complex, EdgeColumn, H0Regularity, IdealComplex,
    VertexBlock,
};
pub use normalize::{normalize_one_edge, OneEdgeNormalization};
pub use splines::{
    schumaker_local, spline_dim_formula, spline_dim_naive, spline_dim_oracle, LocalResolution,
};
pub use stats::{interior_stats, InteriorData, VertexStats};

pub type Point = (Rational, Rational);

/// A connected, pure 2-dimensional simplicial complex in the plane with
/// `V - E + F = 1`. Triangles are stored counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Point>,
    triangles: Vec<[usize; 3]>,
    /// Each edge `(i, j)`, `i < j`, with the triangles containing it.
    edges: BTreeMap<(usize, usize), Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    vertices: Vec<[String; 2]>,
    triangles: Vec<[usize; 3]>,
}

#[derive(Serialize)]
struct RawComplexOut {
    vertices: Vec<[String; 2]>,
    triangles: Vec<[usize; 3]>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

/// Parses and validates the JSON complex format
/// `{"vertices": [["0", "0"], ["1/2", "3"], ...], "triangles": [[0, 1, 2], ...]}`.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let raw: RawComplex =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("complex file: {e}")))?;
    let vertices = raw
        .vertices
        .iter()
        .map(|[x, y]| Ok((parse_rational(x)?, parse_rational(y)?)))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::new(vertices, raw.triangles)
}

fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

/// Counterclockwise order of direction vectors starting from the positive
/// `x` axis.
pub(crate) fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    let half = |p: &Point| {
        if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(u)
        .cmp(&half(v))
        .then_with(|| (&v.0 * &u.1).cmp(&(&u.0 * &v.1)))
}

fn sub(p: &Point, q: &Point) -> Point {
    (&p.0 - &q.0, &p.1 - &q.1)
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<Point>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::Parse("complex has no triangles".into()));
        }
        let mut seen_pts = BTreeMap::new();
        for (i, p) in vertices.iter().enumerate() {
            if let Some(j) = seen_pts.insert(p.clone(), i) {
                return Err(Error::Parse(format!("vertices {j} and {i} coincide")));
            }
        }
        let mut seen_tris = BTreeSet::new();
        let mut oriented = Vec::with_capacity(triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            if let Some(&v) = tri.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::Parse(format!(
                    "triangle {t} uses unknown vertex {v}"
                )));
            }
            let mut key = *tri;
            key.sort_unstable();
            if key[0] == key[1] || key[1] == key[2] {
                return Err(Error::Parse(format!("triangle {t} repeats a vertex")));
            }
            if !seen_tris.insert(key) {
                return Err(Error::Parse(format!("triangle {t} is listed twice")));
            }
            let [a, b, c] = *tri;
            let o = orient(&vertices[a], &vertices[b], &vertices[c]);
            if o.is_zero() {
                return Err(Error::DegenerateTriangle(t));
            }
            oriented.push(if o.is_positive() {
                [a, b, c]
            } else {
                [a, c, b]
            });
        }

        let mut edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (t, tri) in oriented.iter().enumerate() {
            for k in 0..3 {
                let (u, v) = (tri[k], tri[(k + 1) % 3]);
                edges.entry((u.min(v), u.max(v))).or_default().push(t);
            }
        }
        if let Some((&(u, v), _)) = edges.iter().find(|(_, ts)| ts.len() > 2) {
            return Err(Error::NonManifoldEdge(u, v));
        }

        let c = SimplicialComplex {
            vertices,
            triangles: oriented,
            edges,
        };
        if !c.is_connected() {
            return Err(Error::NotConnected);
        }
        let chi = c.euler_characteristic();
        if chi != 1 {
            return Err(Error::NonzeroGenus(chi));
        }
        for v in c.interior_vertices() {
            let w = c.winding_number(v);
            if w != 1 {
                return Err(Error::Parse(format!(
                    "triangles around interior vertex {v} wind {w} times"
                )));
            }
        }
        Ok(c)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in self.edges.keys() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }

    /// Number of triangles whose wedge at `v` covers the direction just
    /// counterclockwise of the positive `x` axis.
    fn winding_number(&self, v: usize) -> usize {
        let o = &self.vertices[v];
        let on_axis = |p: &Point| p.1.is_zero() && p.0.is_positive();
        self.triangles
            .iter()
            .filter_map(|t| {
                let k = t.iter().position(|&w| w == v)?;
                let a = sub(&self.vertices[t[(k + 1) % 3]], o);
                let b = sub(&self.vertices[t[(k + 2) % 3]], o);
                let covers = on_axis(&a) || (!on_axis(&b) && angle_cmp(&b, &a) == Ordering::Less);
                covers.then_some(())
            })
            .count()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.keys().copied()
    }

    /// Triangles containing the edge `(u, v)` (either order).
    pub fn edge_triangles(&self, u: usize, v: usize) -> &[usize] {
        self.edges
            .get(&(u.min(v), u.max(v)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Edges shared by two triangles, ascending.
    pub fn interior_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .filter(|(_, ts)| ts.len() == 2)
            .map(|(e, _)| *e)
            .collect()
    }

    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .filter(|(_, ts)| ts.len() == 1)
            .map(|(e, _)| *e)
            .collect()
    }

    /// Vertices on no boundary edge, ascending.
    pub fn interior_vertices(&self) -> Vec<usize> {
        let on_boundary: BTreeSet<usize> = self
            .boundary_edges()
            .into_iter()
            .flat_map(|(u, v)| [u, v])
            .collect();
        (0..self.vertices.len())
            .filter(|v| !on_boundary.contains(v))
            .collect()
    }

    /// Other endpoints of all edges at `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawComplexOut {
            vertices: self
                .vertices
                .iter()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect(),
            triangles: self.triangles.clone(),
        }
        .serialize(s)
    }
}

/// Direction of the segment `p -> q` as a coprime integer pair with positive
/// leading entry, so parallel segments compare equal.
pub(crate) fn slope_key(p: &Point, q: &Point) -> (num_bigint::BigInt, num_bigint::BigInt) {
    use num_integer::Integer;
    let ints = crate::linalg::integerize(&[&q.0 - &p.0, &q.1 - &p.1]);
    let g = ints[0].gcd(&ints[1]);
    let (mut a, mut b) = (&ints[0] / &g, &ints[1] / &g);
    if a.is_negative() || (a.is_zero() && b.is_negative()) {
        a = -a;
        b = -b;
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| (rat(x), rat(y))).collect()
    }

    #[test]
    fn two_triangles_valid() {
        let text = r#"{"vertices": [["0","0"],["1","0"],["0","1"],["1","1"]],
                       "triangles": [[0,1,2],[1,3,2]]}"#;
        let c = parse_complex(text).unwrap();
        assert!(c.interior_vertices().is_empty());
        assert_eq!(c.interior_edges(), vec![(1, 2)]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn rationals_and_orientation() {
        let text = r#"{"vertices": [["0","0"],["0","1/2"],["-3/4","0"]], "triangles": [[0,2,1]]}"#;
        let c = parse_complex(text).unwrap();
        // (0,0), (-3/4,0), (0,1/2) is clockwise as listed
        assert_eq!(c.triangles(), &[[0, 1, 2]]);
        assert_eq!(c.vertices()[2].0, crate::linalg::ratio(-3, 4));
    }

    #[test]
    fn rejections() {
        let dup =
            r#"{"vertices": [["0","0"],["1","0"],["0","1"]], "triangles": [[0,1,2],[2,1,0]]}"#;
        assert_eq!(parse_complex(dup).unwrap_err().code(), "ParseError");
        let extra = r#"{"vertices": [], "triangles": [], "name": "x"}"#;
        assert_eq!(parse_complex(extra).unwrap_err().code(), "ParseError");
        let bad_num = r#"{"vertices": [["0","0"],["1/0","0"],["0","1"]], "triangles": [[0,1,2]]}"#;
        assert_eq!(parse_complex(bad_num).unwrap_err().code(), "ParseError");
        let flat = r#"{"vertices": [["0","0"],["1","1"],["2","2"]], "triangles": [[0,1,2]]}"#;
        assert_eq!(
            parse_complex(flat).unwrap_err(),
            Error::DegenerateTriangle(0)
        );
        assert_eq!(parse_complex("{").unwrap_err().code(), "ParseError");
    }

    #[test]
    fn disconnected_and_genus() {
        let v = pts(&[(0, 0), (1, 0), (0, 1), (5, 5), (6, 5), (5, 6)]);
        let err = SimplicialComplex::new(v, vec![[0, 1, 2], [3, 4, 5]]).unwrap_err();
        assert_eq!(err, Error::NotConnected);
        // an annulus of 8 triangles around a square hole
        let v = pts(&[
            (0, 0),
            (3, 0),
            (3, 3),
            (0, 3),
            (1, 1),
            (2, 1),
            (2, 2),
            (1, 2),
        ]);
        let t = vec![
            [0, 1, 5],
            [0, 5, 4],
            [1, 2, 6],
            [1, 6, 5],
            [2, 3, 7],
            [2, 7, 6],
            [3, 0, 4],
            [3, 4, 7],
        ];
        assert_eq!(
            SimplicialComplex::new(v, t).unwrap_err(),
            Error::NonzeroGenus(0)
        );
    }

    #[test]
    fn non_manifold_edge() {
        let v = pts(&[(0, 0), (2, 0), (1, 1), (1, -1), (1, 3)]);
        let err = SimplicialComplex::new(v, vec![[0, 1, 2], [0, 1, 3], [0, 1, 4]]).unwrap_err();
        assert_eq!(err, Error::NonManifoldEdge(0, 1));
    }

    #[test]
    fn fan_winds_once() {
        let v = pts(&[(0, 0), (2, 0), (0, 2), (-2, 0), (0, -2)]);
        let c =
            SimplicialComplex::new(v, vec![[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]]).unwrap();
        assert_eq!(c.interior_vertices(), vec![0]);
        assert_eq!(c.winding_number(0), 1);
        assert_eq!(c.neighbors(0), vec![1, 2, 3, 4]);
    }

    #[test]
    fn slope_keys() {
        use num_bigint::BigInt;
        let o = (rat(0), rat(0));
        assert_eq!(
            slope_key(&o, &(rat(-2), rat(2))),
            slope_key(&o, &(rat(3), rat(-3)))
        );
        assert_eq!(
            slope_key(&o, &(rat(0), rat(-5))),
            (BigInt::from(0), BigInt::from(1))
        );
    }
}
