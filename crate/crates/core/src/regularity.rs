//! Regularity of `H0(J)`: the exact one-edge value by several independent
//! routes, the sandwich bounds, the `2r` check, and path bounds for general
//! complexes.

use serde::Serialize;

use crate::complex::{
    h0_regularity_oracle, interior_stats, normalize_one_edge, H0Regularity, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::staircase::{build_q, sum_initial_oracle, QData};
use crate::syzygy::{buchberger_graph, regularity_from_bottom_face, syz3_closed_form};

/// Regularity of `H0(J)` as computed by each route that was run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Routes {
    /// `deg(x^{i0} y^{j0} z^{zeta0}) - 3 + r + 1`.
    pub bottom_face: Option<u32>,
    /// Top third-syzygy degree of the Buchberger graph, `- 3 + r + 1`.
    pub buchberger_graph: Option<u32>,
    /// Socle degree of `S / In Q`, shifted by `r + 1`.
    pub socle: Option<u32>,
    /// Rank computation on the ideal complex of an actual triangulation.
    pub chain_complex: Option<u32>,
    /// Whether `In Q` recomputed from the triangulation's own slopes equals
    /// the closed form.
    pub initial_ideal_from_slopes: Option<bool>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub a: u32,
    pub b: u32,
    pub r: u32,
    /// `None` when `H0(J) = 0`.
    pub exact: Option<u32>,
    pub vanishes: bool,
    pub alpha1: u32,
    pub alpha2: u32,
    pub lower: i64,
    pub upper: i64,
    pub i0: u32,
    pub j0: u32,
    pub l0: Option<u32>,
    pub witness: Option<Monomial>,
    pub zeta0: Option<u32>,
    pub routes: Routes,
    /// `exact <= 2r`, vacuously true when the module vanishes.
    pub conjecture_holds: bool,
    pub note: Option<String>,
}

fn route_regularities(q: &QData) -> Result<(Routes, Monomial, u32)> {
    let shift = q.r + 1;
    let bf = regularity_from_bottom_face(q)?;
    let socle = q.in_q.max_socle_degree()? + shift;
    let graph = buchberger_graph(&q.in_q)?;
    let faces = syz3_closed_form(&graph)?;
    let top =
        faces.iter().map(Monomial::degree).max().ok_or_else(|| {
            Error::RouteDisagreement("Buchberger graph has no bounded face".into())
        })?;
    let graph_reg = top + shift - 3;
    let routes = Routes {
        bottom_face: Some(bf.regularity),
        buchberger_graph: Some(graph_reg),
        socle: Some(socle),
        chain_complex: None,
        initial_ideal_from_slopes: None,
        agree: bf.regularity == socle && socle == graph_reg && faces[0] == bf.witness,
    };
    if !routes.agree {
        return Err(Error::RouteDisagreement(format!(
            "bottom face {} ({}), Buchberger graph {graph_reg} ({}), socle {socle}",
            bf.regularity, bf.witness, faces[0]
        )));
    }
    Ok((routes, bf.witness, bf.zeta0))
}

/// Exact regularity for `a` and `b` distinct slopes at the two ends of the
/// single totally interior edge, with the sandwich bounds checked.
pub fn regularity_one_edge(a: u32, b: u32, r: u32) -> Result<RegularityReport> {
    let q = build_q(a, b, r)?;
    let alpha1 = (r + 1) / (a - 1);
    let alpha2 = (r + 1) / (b - 1);
    let upper = (alpha1 + alpha2 + r) as i64;
    let mut report = RegularityReport {
        a,
        b,
        r,
        exact: None,
        vanishes: true,
        alpha1,
        alpha2,
        lower: upper - 1,
        upper,
        i0: q.i0(),
        j0: q.j0(),
        l0: q.l0,
        witness: None,
        zeta0: None,
        routes: Routes {
            agree: true,
            ..Routes::default()
        },
        conjecture_holds: true,
        note: None,
    };
    if q.is_trivial() {
        report.note = Some("module vanishes; conjecture holds vacuously".into());
        return Ok(report);
    }
    let (routes, witness, zeta0) = route_regularities(&q)?;
    let exact = routes.bottom_face.expect("set by every route run");
    if (exact as i64) < report.lower || (exact as i64) > report.upper {
        return Err(Error::SandwichViolated {
            exact,
            lower: report.lower,
            upper: report.upper,
        });
    }
    report.exact = Some(exact);
    report.vanishes = false;
    report.witness = Some(witness);
    report.zeta0 = Some(zeta0);
    report.routes = routes;
    report.conjecture_holds = exact <= 2 * r;
    Ok(report)
}

/// [`regularity_one_edge`] for the slope counts read off a triangulation,
/// confirmed by the chain-complex oracle on that triangulation and by the
/// initial ideal recomputed from its actual slopes.
pub fn regularity_from_complex(c: &SimplicialComplex, r: u32) -> Result<RegularityReport> {
    let stats = interior_stats(c, r)?;
    let norm = normalize_one_edge(c)?;
    for v in [norm.v1, norm.v2] {
        let s = stats.vertex(v).expect("endpoint is interior");
        if s.k != s.k_0b + 1 {
            return Err(Error::AlphaMismatch {
                vertex: v,
                k: s.k,
                k0b_plus_one: s.k_0b + 1,
            });
        }
    }
    let mut report = regularity_one_edge(norm.a, norm.b, r)?;

    let chain = h0_regularity_oracle(c, r)?;
    report.routes.chain_complex = chain.degree();
    if chain.degree() != report.exact {
        report.routes.agree = false;
        return Err(Error::RouteDisagreement(format!(
            "closed form {:?}, chain complex {:?}",
            report.exact,
            chain.degree()
        )));
    }

    let q = build_q(norm.a, norm.b, r)?;
    let d_max = q
        .in_q
        .gens()
        .iter()
        .map(Monomial::degree)
        .max()
        .unwrap_or(0)
        + 1;
    let from_slopes = sum_initial_oracle(r, &norm.slopes1, &norm.slopes2, d_max)?;
    let same = from_slopes == q.in_q;
    report.routes.initial_ideal_from_slopes = Some(same);
    if !same {
        report.routes.agree = false;
        return Err(Error::RouteDisagreement(format!(
            "In Q from slopes {from_slopes}, closed form {}",
            q.in_q
        )));
    }
    Ok(report)
}

/// `exact <= 2r`, together with the arithmetic step
/// `floor((r+1)/2) + floor((r+1)/3) + r <= 2r` used when some endpoint has
/// at least four slopes. A vanishing module passes vacuously.
pub fn check_2r_theorem(report: &RegularityReport) -> bool {
    let r = report.r;
    let step = if (report.a, report.b) != (3, 3) {
        (r + 1) / 2 + (r + 1) / 3 + r <= 2 * r
    } else {
        true
    };
    let bound = report.exact.is_none_or(|e| e <= 2 * r);
    step && bound
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub edge: (usize, usize),
    pub lower: i64,
    pub upper: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathBounds {
    pub r: u32,
    pub edges: Vec<EdgeBound>,
    /// Maxima over the totally interior edges; absent when there are none.
    pub lower: Option<i64>,
    pub upper: Option<i64>,
    pub oracle: Option<H0Regularity>,
    /// Oracle regularity at least `lower`. A vanishing module (regularity
    /// minus infinity) fails this whenever a lower bound exists.
    pub within_lower: Option<bool>,
    /// Oracle regularity at most `upper`; vacuous for a vanishing module.
    pub within_upper: Option<bool>,
    pub contained: Option<bool>,
}

/// Per-edge bounds `floor((r+1)/(k_i-1)) + floor((r+1)/(k_j-1)) + r - 1` and
/// `alpha_i + alpha_j + r` over totally interior edges, and their maxima.
pub fn path_bounds(c: &SimplicialComplex, r: u32, run_oracle: bool) -> Result<PathBounds> {
    let stats = interior_stats(c, r)?;
    if let Some(s) = stats.vertices.iter().find(|s| s.f1_0b == 0) {
        return Err(Error::HypothesisViolated(s.vertex));
    }
    let mut edges = Vec::new();
    for &(i, j) in &stats.totally_interior_edges {
        let (si, sj) = (stats.vertex(i).unwrap(), stats.vertex(j).unwrap());
        let lower =
            ((r as usize + 1) / (si.k - 1) + (r as usize + 1) / (sj.k - 1)) as i64 + r as i64 - 1;
        let upper = (stats.alpha(i)? + stats.alpha(j)? + r) as i64;
        edges.push(EdgeBound {
            edge: (i, j),
            lower,
            upper,
        });
    }
    let lower = edges.iter().map(|e| e.lower).max();
    let upper = edges.iter().map(|e| e.upper).max();
    let (mut within_lower, mut within_upper, mut oracle) = (None, None, None);
    if run_oracle {
        let o = h0_regularity_oracle(c, r)?;
        let reg = o.degree().map(i64::from);
        within_lower = Some(match (reg, lower) {
            (_, None) => true,
            (Some(d), Some(lo)) => d >= lo,
            (None, Some(_)) => false,
        });
        within_upper = Some(match (reg, upper) {
            (None, _) => true,
            (Some(d), Some(hi)) => d <= hi,
            (Some(_), None) => false,
        });
        oracle = Some(o);
    }
    Ok(PathBounds {
        r,
        edges,
        lower,
        upper,
        oracle,
        within_lower,
        within_upper,
        contained: within_lower.zip(within_upper).map(|(l, u)| l && u),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    #[test]
    fn worked_example() {
        let rep = regularity_one_edge(3, 4, 8).unwrap();
        assert_eq!(rep.exact, Some(14));
        assert_eq!((rep.lower, rep.upper), (14, 15));
        assert_eq!((rep.alpha1, rep.alpha2), (4, 3));
        assert_eq!(rep.witness, Some(Monomial::new(4, 3, 1)));
        assert!(rep.conjecture_holds);
        assert!(check_2r_theorem(&rep));
    }

    #[test]
    fn three_three_is_2r() {
        for r in 1..=12 {
            let rep = regularity_one_edge(3, 3, r).unwrap();
            assert_eq!(rep.exact, Some(2 * r), "r = {r}");
            assert!(check_2r_theorem(&rep));
        }
        assert_eq!(regularity_one_edge(3, 3, 5).unwrap().exact, Some(10));
    }

    #[test]
    fn four_four_eight() {
        let rep = regularity_one_edge(4, 4, 8).unwrap();
        assert_eq!((rep.alpha1, rep.alpha2), (3, 3));
        assert_eq!((rep.lower, rep.upper), (13, 14));
        let e = rep.exact.unwrap() as i64;
        assert!((13..=14).contains(&e));
    }

    #[test]
    fn invalid_slope_count() {
        assert_eq!(
            regularity_one_edge(2, 3, 1).unwrap_err().code(),
            "InvalidSlopeCount"
        );
    }

    #[test]
    fn vanishing_module_reported() {
        // i0 = floor((r+1)/(a-1)) = 0 once a > r + 2
        let rep = regularity_one_edge(5, 5, 1).unwrap();
        assert!(rep.vanishes);
        assert_eq!(rep.exact, None);
        assert!(rep.conjecture_holds);
        assert!(check_2r_theorem(&rep));
    }

    #[test]
    fn from_complex_routes() {
        let rep = regularity_from_complex(&fixtures::one_edge(3, 3), 2).unwrap();
        assert_eq!(rep.exact, Some(4));
        assert_eq!(rep.routes.chain_complex, Some(4));
        assert_eq!(rep.routes.initial_ideal_from_slopes, Some(true));
        assert!(rep.routes.agree);

        let rep = regularity_from_complex(&fixtures::one_edge(4, 3), 3).unwrap();
        assert_eq!((rep.a, rep.b), (3, 4));

        assert_eq!(
            regularity_from_complex(&fixtures::two_edge_chain(), 2).unwrap_err(),
            Error::NotOneEdge(2)
        );
    }

    #[test]
    fn from_complex_3_4_8() {
        let rep = regularity_from_complex(&fixtures::one_edge(3, 4), 8).unwrap();
        assert_eq!(rep.exact, Some(14));
        assert_eq!(rep.routes.chain_complex, Some(14));
    }

    #[test]
    fn path_bounds_on_one_edge_match_sandwich() {
        for (a, b) in [(3, 3), (3, 4), (4, 5)] {
            for r in 1..=3 {
                let pb = path_bounds(&fixtures::one_edge(a, b), r, false).unwrap();
                let rep = regularity_one_edge(a.min(b), a.max(b), r).unwrap();
                assert_eq!(pb.edges.len(), 1);
                assert_eq!(pb.upper, Some(rep.upper));
                assert_eq!(pb.lower, Some(rep.lower));
            }
        }
    }

    #[test]
    fn path_bounds_hypothesis() {
        // the centre of a star has only partially interior edges, so the
        // hypothesis holds but there are no totally interior edges
        let pb = path_bounds(&fixtures::star(), 2, true).unwrap();
        assert_eq!((pb.lower, pb.upper), (None, None));
        assert_eq!(pb.contained, Some(true));

        // C^0 on the two-edge chain: H0 vanishes, below the lower bound -1
        let pb = path_bounds(&fixtures::two_edge_chain(), 0, true).unwrap();
        assert_eq!(pb.oracle, Some(H0Regularity::Zero));
        assert_eq!(
            (pb.within_lower, pb.within_upper),
            (Some(false), Some(true))
        );

        let c = fixtures::from_points(
            &[(0, 0), (4, 0), (0, 4), (-4, -4), (1, 1), (-1, 0), (0, -1)],
            &[
                [0, 4, 5],
                [0, 5, 6],
                [0, 6, 4],
                [4, 1, 2],
                [4, 2, 5],
                [5, 2, 3],
                [5, 3, 6],
                [6, 3, 1],
                [6, 1, 4],
            ],
        )
        .unwrap();
        assert_eq!(c.interior_vertices(), vec![0, 4, 5, 6]);
        assert_eq!(
            path_bounds(&c, 1, false).unwrap_err(),
            Error::HypothesisViolated(0)
        );
    }
}
