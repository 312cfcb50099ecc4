use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use spline_reg::complex::{
    fixtures, interior_stats, normalize_one_edge, parse_complex, spline_dim_formula,
    spline_dim_oracle, InteriorData, OneEdgeNormalization, SimplicialComplex,
};
use spline_reg::monomial::{Monomial, MonomialIdeal};
use spline_reg::regularity::{
    check_2r_theorem, path_bounds, regularity_from_complex, regularity_one_edge, PathBounds,
    RegularityReport,
};
use spline_reg::staircase::{build_q, colon_staircase, staircase_closed_form};
use spline_reg::syzygy::{
    betti_oracle, buchberger_graph, syz2_closed_form, syz3_closed_form, BettiTable, BuchGraph,
};
use spline_reg::Error;

use crate::output::{columns, list, opt, render};
use crate::{Cli, Command, Common};

pub enum Failure {
    Usage(String),
    Engine(Error),
    /// Rendered output plus the number of failing cells.
    Violations(String, usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Out = Result<String, Failure>;

const MAX_R: u32 = 24;
const MAX_SLOPES: u32 = 16;
const MAX_D: u32 = 40;
/// Path-bound oracle runs by default only on complexes this small.
const PATH_ORACLE_MAX_R: u32 = 4;
const PATH_ORACLE_MAX_INTERIOR: usize = 6;

fn cap(common: &Common, what: &str, value: u32, max: u32) -> Result<(), Failure> {
    if value > max && !common.unsafe_no_cap {
        return Err(Failure::Usage(format!(
            "{what} = {value} exceeds the cap {max} (pass --unsafe-no-cap to override)"
        )));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Out {
    let c = &cli.common;
    match &cli.command {
        Command::Regularity {
            a,
            b,
            r,
            oracle,
            complex,
        } => {
            cap(c, "a", *a, MAX_SLOPES)?;
            cap(c, "b", *b, MAX_SLOPES)?;
            cap(c, "r", *r, MAX_R)?;
            cmd_regularity(c, *a, *b, *r, *oracle, complex.as_deref())
        }
        Command::Analyze { file, r, d, oracle } => {
            cap(c, "r", *r, MAX_R)?;
            if let Some(d) = d {
                cap(c, "d", *d, MAX_D)?;
            }
            cmd_analyze(c, file, *r, *d, *oracle)
        }
        Command::Sweep { a, b, r, ordered } => {
            cap(c, "a", *a.end(), MAX_SLOPES)?;
            cap(c, "b", *b.end(), MAX_SLOPES)?;
            cap(c, "r", *r.end(), MAX_R)?;
            let mut cells = Vec::new();
            for a in a.clone() {
                for b in b.clone() {
                    if *ordered && a > b {
                        continue;
                    }
                    for r in r.clone() {
                        cells.push((a, b, r));
                    }
                }
            }
            if cells.is_empty() {
                return Err(Failure::Usage("sweep has no cells".into()));
            }
            cmd_sweep(c, &cells)
        }
        Command::Staircase {
            r,
            s,
            a,
            b,
            emit_graph,
        } => {
            cap(c, "r", *r, MAX_R)?;
            match (s, a, b) {
                (Some(s), _, _) => {
                    cap(c, "s", *s, MAX_SLOPES)?;
                    if *emit_graph {
                        return Err(Failure::Usage("--emit-graph needs --a and --b".into()));
                    }
                    cmd_staircase_single(c, *r, *s)
                }
                (None, Some(a), Some(b)) => {
                    cap(c, "a", *a, MAX_SLOPES)?;
                    cap(c, "b", *b, MAX_SLOPES)?;
                    cmd_staircase_pair(c, *r, *a, *b, *emit_graph)
                }
                _ => Err(Failure::Usage(
                    "staircase needs --s, or --a with --b".into(),
                )),
            }
        }
        Command::Betti { a, b, r } => {
            cap(c, "a", *a, MAX_SLOPES)?;
            cap(c, "b", *b, MAX_SLOPES)?;
            cap(c, "r", *r, MAX_R)?;
            cmd_betti(c, *a, *b, *r)
        }
    }
}

fn load(path: &Path) -> Result<SimplicialComplex, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_complex(&text)?)
}

#[derive(Serialize)]
struct RegularityOut {
    #[serde(flatten)]
    report: RegularityReport,
    theorem_2r: bool,
    /// Where the chain-complex route ran, if it did.
    oracle_complex: Option<String>,
}

fn report_table(rep: &RegularityReport) -> String {
    let rows = vec![
        ("a, b, r", format!("{}, {}, {}", rep.a, rep.b, rep.r)),
        ("exact", opt(&rep.exact)),
        ("bounds", format!("[{}, {}]", rep.lower, rep.upper)),
        ("alpha", format!("{}, {}", rep.alpha1, rep.alpha2)),
        (
            "i0, j0, l0",
            format!("{}, {}, {}", rep.i0, rep.j0, opt(&rep.l0)),
        ),
        ("witness", opt(&rep.witness)),
        ("zeta0", opt(&rep.zeta0)),
        ("bottom face", opt(&rep.routes.bottom_face)),
        ("graph", opt(&rep.routes.buchberger_graph)),
        ("socle", opt(&rep.routes.socle)),
        ("chain complex", opt(&rep.routes.chain_complex)),
        ("routes agree", rep.routes.agree.to_string()),
        ("exact <= 2r", rep.conjecture_holds.to_string()),
    ];
    let mut out: String = rows.iter().map(|(k, v)| format!("{k:<14} {v}\n")).collect();
    if let Some(n) = &rep.note {
        out.push_str(&format!("{:<14} {n}\n", "note"));
    }
    out
}

fn cmd_regularity(c: &Common, a: u32, b: u32, r: u32, oracle: bool, complex: Option<&Path>) -> Out {
    let base = regularity_one_edge(a, b, r)?;
    let (report, oracle_complex) = match (oracle, complex) {
        (false, _) => (base, None),
        (true, Some(path)) => {
            let cx = load(path)?;
            let rep = regularity_from_complex(&cx, r)?;
            if (rep.a, rep.b) != (a.min(b), a.max(b)) {
                return Err(Failure::Usage(format!(
                    "{} has slope counts ({}, {}), not ({a}, {b})",
                    path.display(),
                    rep.a,
                    rep.b
                )));
            }
            (rep, Some(path.display().to_string()))
        }
        (true, None) => {
            if a.max(b) > fixtures::ONE_EDGE_MAX_SLOPES {
                return Err(Failure::Usage(format!(
                    "--oracle without --complex needs a, b <= {}",
                    fixtures::ONE_EDGE_MAX_SLOPES
                )));
            }
            let rep = regularity_from_complex(&fixtures::one_edge(a, b), r)?;
            (rep, Some(format!("constructed one_edge({a}, {b})")))
        }
    };
    let out = RegularityOut {
        theorem_2r: check_2r_theorem(&report),
        report,
        oracle_complex,
    };
    Ok(render(c.format, "regularity", &out, || {
        report_table(&out.report)
    }))
}

#[derive(Serialize)]
struct SplineRow {
    d: u32,
    formula: i64,
    oracle: Option<usize>,
}

#[derive(Serialize)]
struct AnalyzeOut {
    vertices: usize,
    edges: usize,
    triangles: usize,
    interior: InteriorData,
    normalization: Option<OneEdgeNormalization>,
    regularity: Option<RegularityReport>,
    path_bounds: Option<PathBounds>,
    splines: Option<Vec<SplineRow>>,
}

fn analyze_table(o: &AnalyzeOut) -> String {
    let mut out = format!(
        "complex: {} vertices, {} edges, {} triangles, {} interior component(s)\n",
        o.vertices, o.edges, o.triangles, o.interior.interior_components
    );
    let rows: Vec<Vec<String>> = o
        .interior
        .vertices
        .iter()
        .map(|s| {
            vec![
                s.vertex.to_string(),
                s.f1.to_string(),
                s.k.to_string(),
                s.f1_00.to_string(),
                s.k_00.to_string(),
                s.f1_0b.to_string(),
                s.k_0b.to_string(),
                opt(&s.alpha),
            ]
        })
        .collect();
    out.push_str(&columns(
        &[
            "vertex", "f1", "k", "f1_00", "k_00", "f1_0b", "k_0b", "alpha",
        ],
        &rows,
    ));
    if let Some(rep) = &o.regularity {
        out.push('\n');
        out.push_str(&report_table(rep));
    }
    if let Some(pb) = &o.path_bounds {
        out.push_str(&format!(
            "\npath bounds: [{}, {}], oracle {}, contained {}\n",
            opt(&pb.lower),
            opt(&pb.upper),
            pb.oracle.map_or("-".to_string(), |o| o
                .degree()
                .map_or("zero".into(), |d| d.to_string())),
            opt(&pb.contained)
        ));
    }
    if let Some(rows) = &o.splines {
        let rows: Vec<Vec<String>> = rows
            .iter()
            .map(|s| vec![s.d.to_string(), s.formula.to_string(), opt(&s.oracle)])
            .collect();
        out.push('\n');
        out.push_str(&columns(&["d", "formula", "oracle"], &rows));
    }
    out
}

fn cmd_analyze(c: &Common, file: &Path, r: u32, d: Option<u32>, oracle: bool) -> Out {
    let cx = load(file)?;
    let interior = interior_stats(&cx, r)?;
    let one_edge = interior.totally_interior_edges.len() == 1 && interior.vertices.len() == 2;
    let (normalization, regularity, path) = if one_edge {
        (
            Some(normalize_one_edge(&cx)?),
            Some(regularity_from_complex(&cx, r)?),
            None,
        )
    } else {
        let feasible =
            r <= PATH_ORACLE_MAX_R && interior.vertices.len() <= PATH_ORACLE_MAX_INTERIOR;
        (None, None, Some(path_bounds(&cx, r, oracle || feasible)?))
    };
    let splines = match d {
        None => None,
        Some(top) => {
            let mut rows = Vec::new();
            for d in 0..=top {
                let formula = spline_dim_formula(&cx, r, d)?;
                let brute = oracle.then(|| spline_dim_oracle(&cx, r, d));
                if let Some(b) = brute {
                    if b as i64 != formula {
                        return Err(Error::RouteDisagreement(format!(
                            "spline dimension in degree {d}: formula {formula}, oracle {b}"
                        ))
                        .into());
                    }
                }
                rows.push(SplineRow {
                    d,
                    formula,
                    oracle: brute,
                });
            }
            Some(rows)
        }
    };
    let out = AnalyzeOut {
        vertices: cx.vertices().len(),
        edges: cx.edges().count(),
        triangles: cx.triangles().len(),
        interior,
        normalization,
        regularity,
        path_bounds: path,
        splines,
    };
    Ok(render(c.format, "analyze", &out, || analyze_table(&out)))
}

#[derive(Serialize)]
struct Cell {
    a: u32,
    b: u32,
    r: u32,
    exact: Option<u32>,
    lower: Option<i64>,
    upper: Option<i64>,
    zeta0: Option<u32>,
    conjecture_holds: bool,
    routes_agree: bool,
    theorem_2r: bool,
    error: Option<String>,
}

impl Cell {
    fn violated(&self) -> bool {
        self.error.is_some() || !self.conjecture_holds || !self.routes_agree || !self.theorem_2r
    }
}

#[derive(Serialize)]
struct Summary {
    cells: usize,
    nonvanishing: usize,
    violations: usize,
}

#[derive(Serialize)]
struct SweepOut {
    cells: Vec<Cell>,
    summary: Summary,
}

fn sweep_cell(a: u32, b: u32, r: u32) -> Cell {
    match regularity_one_edge(a, b, r) {
        Ok(rep) => Cell {
            a,
            b,
            r,
            exact: rep.exact,
            lower: Some(rep.lower),
            upper: Some(rep.upper),
            zeta0: rep.zeta0,
            conjecture_holds: rep.conjecture_holds,
            routes_agree: rep.routes.agree,
            theorem_2r: check_2r_theorem(&rep),
            error: None,
        },
        Err(e) => Cell {
            a,
            b,
            r,
            exact: None,
            lower: None,
            upper: None,
            zeta0: None,
            conjecture_holds: false,
            routes_agree: false,
            theorem_2r: false,
            error: Some(format!("{}: {e}", e.code())),
        },
    }
}

fn cmd_sweep(c: &Common, cells: &[(u32, u32, u32)]) -> Out {
    let rows: Vec<Cell> = cells
        .par_iter()
        .map(|&(a, b, r)| sweep_cell(a, b, r))
        .collect();
    let summary = Summary {
        cells: rows.len(),
        nonvanishing: rows.iter().filter(|c| c.exact.is_some()).count(),
        violations: rows.iter().filter(|c| c.violated()).count(),
    };
    let out = SweepOut {
        cells: rows,
        summary,
    };
    let text = render(c.format, "sweep", &out, || {
        let rows: Vec<Vec<String>> = out
            .cells
            .iter()
            .map(|c| {
                vec![
                    c.a.to_string(),
                    c.b.to_string(),
                    c.r.to_string(),
                    c.exact.map_or("zero".into(), |e| e.to_string()),
                    format!("[{}, {}]", opt(&c.lower), opt(&c.upper)),
                    opt(&c.zeta0),
                    c.conjecture_holds.to_string(),
                    c.routes_agree.to_string(),
                    c.error.clone().unwrap_or_default(),
                ]
            })
            .collect();
        let mut t = columns(
            &[
                "a", "b", "r", "exact", "bounds", "zeta0", "<=2r", "agree", "error",
            ],
            &rows,
        );
        t.push_str(&format!(
            "{} cells, {} nonvanishing, {} violations\n",
            out.summary.cells, out.summary.nonvanishing, out.summary.violations
        ));
        t
    });
    if out.summary.violations > 0 {
        return Err(Failure::Violations(text, out.summary.violations));
    }
    Ok(text)
}

#[derive(Serialize)]
struct SingleOut {
    r: u32,
    s: u32,
    lambda: Vec<u32>,
    initial_ideal: MonomialIdeal,
    lambda_prime: Vec<u32>,
    i0: u32,
    colon_ideal: MonomialIdeal,
}

fn cmd_staircase_single(c: &Common, r: u32, s: u32) -> Out {
    let st = staircase_closed_form(r, s)?;
    let colon = colon_staircase(&st);
    let out = SingleOut {
        r,
        s,
        initial_ideal: st.ideal(),
        lambda: st.lambda,
        lambda_prime: colon.lambda_prime.clone(),
        i0: colon.i0,
        colon_ideal: colon.ideal(),
    };
    Ok(render(c.format, "staircase", &out, || {
        format!(
            "lambda        {}\nIn(J')        {}\nlambda'       {}\ni0            {}\nIn(J') : z^{}  {}\n",
            list(&out.lambda),
            out.initial_ideal,
            list(&out.lambda_prime),
            out.i0,
            r + 1,
            out.colon_ideal
        )
    }))
}

#[derive(Serialize)]
struct EndpointOut {
    s: u32,
    lambda: Vec<u32>,
    initial_ideal: MonomialIdeal,
}

#[derive(Serialize)]
struct GraphOut {
    graph: BuchGraph,
    edges: Vec<Monomial>,
    faces: Vec<Monomial>,
    syz2_closed_form: Vec<Monomial>,
    euler_characteristic: i64,
}

#[derive(Serialize)]
struct PairOut {
    r: u32,
    a: u32,
    b: u32,
    v1: EndpointOut,
    v2: EndpointOut,
    lambda_prime: Vec<u32>,
    eta_prime: Vec<u32>,
    i0: u32,
    j0: u32,
    l0: Option<u32>,
    in_q: MonomialIdeal,
    graph: Option<GraphOut>,
}

fn cmd_staircase_pair(c: &Common, r: u32, a: u32, b: u32, emit_graph: bool) -> Out {
    let q = build_q(a, b, r)?;
    let st1 = staircase_closed_form(r, a - 1)?;
    let st2 = staircase_closed_form(r, b - 1)?;
    let graph = if emit_graph && !q.is_trivial() {
        let g = buchberger_graph(&q.in_q)?;
        let faces = syz3_closed_form(&g)?;
        let mut edges = g.edge_lcms();
        edges.sort_by(|x, y| y.cmp(x));
        Some(GraphOut {
            euler_characteristic: g.euler_characteristic(),
            syz2_closed_form: syz2_closed_form(&q)?,
            graph: g,
            edges,
            faces,
        })
    } else {
        None
    };
    let out = PairOut {
        r,
        a,
        b,
        v1: EndpointOut {
            s: a - 1,
            initial_ideal: st1.ideal(),
            lambda: st1.lambda,
        },
        v2: EndpointOut {
            s: b - 1,
            initial_ideal: st2.ideal().swap_xy(),
            lambda: st2.lambda,
        },
        lambda_prime: q.lambda_prime().to_vec(),
        eta_prime: q.eta_prime().to_vec(),
        i0: q.i0(),
        j0: q.j0(),
        l0: q.l0,
        in_q: q.in_q.clone(),
        graph,
    };
    Ok(render(c.format, "staircase", &out, || {
        let mut t = format!(
            "In(J'(v1))  {}\nIn(J'(v2))  {}\nlambda'     {}\neta'        {}\ni0, j0, l0  {}, {}, {}\nIn Q        {}\n",
            out.v1.initial_ideal,
            out.v2.initial_ideal,
            list(&out.lambda_prime),
            list(&out.eta_prime),
            out.i0,
            out.j0,
            opt(&out.l0),
            out.in_q
        );
        if let Some(g) = &out.graph {
            t.push_str(&format!(
                "edges       {}\nfaces       {}\n",
                list(&g.edges),
                list(&g.faces)
            ));
        }
        t
    }))
}

#[derive(Serialize)]
struct GradedEntry {
    homological_degree: usize,
    degree: u32,
    count: usize,
}

#[derive(Serialize)]
struct BettiOut {
    a: u32,
    b: u32,
    r: u32,
    in_q: MonomialIdeal,
    vanishes: bool,
    betti: Option<BettiTable>,
    graded: Vec<GradedEntry>,
    syz2_closed_form: Vec<Monomial>,
    syz3_closed_form: Vec<Monomial>,
    agree: bool,
}

fn cmd_betti(c: &Common, a: u32, b: u32, r: u32) -> Out {
    let q = build_q(a, b, r)?;
    let mut out = BettiOut {
        a,
        b,
        r,
        in_q: q.in_q.clone(),
        vanishes: q.is_trivial(),
        betti: None,
        graded: Vec::new(),
        syz2_closed_form: Vec::new(),
        syz3_closed_form: Vec::new(),
        agree: true,
    };
    if !q.is_trivial() {
        let table = betti_oracle(&q.in_q);
        let syz2 = syz2_closed_form(&q)?;
        let syz3 = syz3_closed_form(&buchberger_graph(&q.in_q)?)?;
        let ones = |v: &[Monomial]| {
            let mut v: Vec<(Monomial, usize)> = v.iter().map(|m| (*m, 1)).collect();
            v.sort_by_key(|e| std::cmp::Reverse(e.0));
            v
        };
        out.agree = table.multidegrees(0) == ones(q.in_q.gens())
            && table.multidegrees(1) == ones(&syz2)
            && table.multidegrees(2) == ones(&syz3)
            && table.total(3) == 0;
        out.graded = table
            .graded()
            .into_iter()
            .map(|((i, degree), count)| GradedEntry {
                homological_degree: i,
                degree,
                count,
            })
            .collect();
        out.betti = Some(table);
        out.syz2_closed_form = syz2;
        out.syz3_closed_form = syz3;
        if !out.agree {
            return Err(
                Error::RouteDisagreement("Betti oracle differs from closed forms".into()).into(),
            );
        }
    }
    Ok(render(c.format, "betti", &out, || {
        let rows: Vec<Vec<String>> = out
            .graded
            .iter()
            .map(|g| {
                vec![
                    g.homological_degree.to_string(),
                    g.degree.to_string(),
                    g.count.to_string(),
                ]
            })
            .collect();
        let mut t = format!("In Q  {}\n", out.in_q);
        t.push_str(&columns(&["i", "degree", "beta"], &rows));
        t.push_str(&format!(
            "syz2  {}\nsyz3  {}\nagree {}\n",
            list(&out.syz2_closed_form),
            list(&out.syz3_closed_form),
            out.agree
        ));
        t
    }))
}
