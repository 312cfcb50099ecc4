//! Constructed test complexes with small integer coordinates. The JSON files
//! under `data/complexes/` are serializations of these.

use super::SimplicialComplex;
use crate::error::Result;
use crate::linalg::rat;

pub fn from_points(points: &[(i64, i64)], triangles: &[[usize; 3]]) -> Result<SimplicialComplex> {
    SimplicialComplex::new(
        points.iter().map(|&(x, y)| (rat(x), rat(y))).collect(),
        triangles.to_vec(),
    )
}

pub fn single_triangle() -> SimplicialComplex {
    from_points(&[(0, 0), (1, 0), (0, 1)], &[[0, 1, 2]]).unwrap()
}

pub fn two_triangles() -> SimplicialComplex {
    from_points(&[(0, 0), (1, 0), (0, 1), (1, 1)], &[[0, 1, 2], [1, 3, 2]]).unwrap()
}

/// One interior vertex with five neighbours, all edge slopes distinct.
pub fn star() -> SimplicialComplex {
    from_points(
        &[(0, 0), (2, 0), (1, 2), (-1, 1), (-2, -1), (1, -2)],
        &[[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1]],
    )
    .unwrap()
}

/// A square cut by both diagonals: one interior vertex with only two slopes.
pub fn square_with_diagonals() -> SimplicialComplex {
    from_points(
        &[(0, 0), (1, 1), (-1, 1), (-1, -1), (1, -1)],
        &[[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]],
    )
    .unwrap()
}

/// Extra fan directions at the first endpoint, counterclockwise between
/// `(-1, 1)` and `(0, -1)`, each with a slope not used elsewhere.
const EXTRA_DIRECTIONS: [(i64, i64); 10] = [
    (-3, 2),
    (-2, 1),
    (-3, 1),
    (-3, -1),
    (-2, -1),
    (-3, -2),
    (-1, -1),
    (-2, -3),
    (-1, -2),
    (-1, -3),
];

pub const ONE_EDGE_MAX_SLOPES: u32 = 3 + EXTRA_DIRECTIONS.len() as u32;

/// A complex whose only interior vertices are `0 = (0, 0)` and `1 = (2, 0)`,
/// joined by the single totally interior edge, with `a` distinct edge slopes
/// at vertex 0 and `b` at vertex 1 (both counting the shared edge).
///
/// The fan around vertex 1 is the point reflection of a fan of the same
/// shape around vertex 0, so `one_edge(3, 3)` is centrally symmetric.
pub fn one_edge(a: u32, b: u32) -> SimplicialComplex {
    assert!(
        (3..=ONE_EDGE_MAX_SLOPES).contains(&a) && (3..=ONE_EDGE_MAX_SLOPES).contains(&b),
        "slope counts must lie in 3..={ONE_EDGE_MAX_SLOPES}"
    );
    // vertex 0 fan: v2 (0 deg), T (90), P (135), extras, Q (270), B (315)
    let mut pts = vec![(0, 0), (2, 0), (0, 2), (2, -2)];
    let (t, bot) = (2, 3);
    let mut tris = vec![[0, 1, t], [0, bot, 1]];
    let fan = |pts: &mut Vec<(i64, i64)>,
               centre: (i64, i64),
               sign: i64,
               extra: usize,
               from: usize,
               to: usize| {
        let p = |d: (i64, i64)| (centre.0 + sign * d.0, centre.1 + sign * d.1);
        let mut chain = vec![from];
        for d in std::iter::once((-2, 2))
            .chain(EXTRA_DIRECTIONS[..extra].iter().copied())
            .chain(std::iter::once((0, -2)))
        {
            pts.push(p(d));
            chain.push(pts.len() - 1);
        }
        chain.push(to);
        let centre_idx = if sign > 0 { 0 } else { 1 };
        chain
            .windows(2)
            .map(|w| [centre_idx, w[0], w[1]])
            .collect::<Vec<_>>()
    };
    tris.extend(fan(&mut pts, (0, 0), 1, (a - 3) as usize, t, bot));
    tris.extend(fan(&mut pts, (2, 0), -1, (b - 3) as usize, bot, t));
    from_points(&pts, &tris).unwrap()
}

/// Interior vertices `(v0, v1, v2)` of [`two_edge_chain`]: the middle vertex
/// and the two ends.
pub const TWO_EDGE_CHAIN_INTERIOR: (usize, usize, usize) = (0, 1, 2);

/// Two totally interior edges `v1 - v0 - v2` on the `x` axis, with
/// `v1 = (-2, 0)` and `v2 = (2, 0)` each carrying four partially interior
/// edges in two slopes.
pub fn two_edge_chain() -> SimplicialComplex {
    let pts = [
        (0, 0),
        (-2, 0),
        (2, 0),
        (-2, 2),
        (0, 2),
        (2, 2),
        (4, 2),
        (2, -2),
        (0, -2),
        (-2, -2),
        (-4, -2),
    ];
    let tris = [
        [1, 0, 4],
        [1, 4, 3],
        [1, 3, 10],
        [1, 10, 9],
        [1, 9, 0],
        [2, 0, 8],
        [2, 8, 7],
        [2, 7, 6],
        [2, 6, 5],
        [2, 5, 0],
        [0, 5, 4],
        [0, 9, 8],
    ];
    from_points(&pts, &tris).unwrap()
}

/// Every constructed complex, with a file-friendly name.
pub fn named() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("single_triangle", single_triangle()),
        ("two_triangles", two_triangles()),
        ("star", star()),
        ("square_with_diagonals", square_with_diagonals()),
        ("one_edge_3_3", one_edge(3, 3)),
        ("one_edge_3_4", one_edge(3, 4)),
        ("two_edge_chain", two_edge_chain()),
    ]
}

pub fn all() -> Vec<SimplicialComplex> {
    named().into_iter().map(|(_, c)| c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::interior_stats;

    #[test]
    fn one_edge_family_is_valid() {
        for a in 3..=ONE_EDGE_MAX_SLOPES {
            for b in 3..=ONE_EDGE_MAX_SLOPES {
                let c = one_edge(a, b);
                assert_eq!(c.interior_vertices(), vec![0, 1]);
                let d = interior_stats(&c, 1).unwrap();
                assert_eq!(d.totally_interior_edges, vec![(0, 1)]);
                assert_eq!(d.vertex(0).unwrap().k, a as usize);
                assert_eq!(d.vertex(1).unwrap().k, b as usize);
            }
        }
    }

    #[test]
    fn symmetric_one_edge_shape() {
        let c = one_edge(3, 3);
        assert_eq!(
            (c.vertices().len(), c.edges().count(), c.triangles().len()),
            (8, 15, 8)
        );
    }

    #[test]
    fn two_edge_chain_shape() {
        let c = two_edge_chain();
        assert_eq!(
            (c.vertices().len(), c.edges().count(), c.triangles().len()),
            (11, 22, 12)
        );
        assert_eq!(c.interior_vertices(), vec![0, 1, 2]);
    }
}
