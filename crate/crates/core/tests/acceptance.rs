//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always print; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use spline_reg::complex::{
    fixtures, h0_regularity_oracle, spline_dim_formula, spline_dim_oracle, H0Regularity,
};
use spline_reg::linalg::{ratio, Rational};
use spline_reg::monomial::Monomial;
use spline_reg::regularity::{
    check_2r_theorem, path_bounds, regularity_from_complex, regularity_one_edge,
};
use spline_reg::staircase::{
    build_q, colon_initial_oracle, colon_staircase, initial_ideal_oracle, staircase_closed_form,
    sum_initial_oracle,
};
use spline_reg::syzygy::{betti_oracle, buchberger_graph, syz2_closed_form, syz3_closed_form};

const SEED: u64 = 0x5eed_2024;
const RANDOM_SETS: usize = 5;
/// Spline dimensions are compared in degrees `0..=SPLINE_D_MAX`.
const SPLINE_D_MAX: u32 = 10;
/// Constructed one-edge complexes checked against the 2r bound.
const COMPLEX_SLOPES: std::ops::RangeInclusive<u32> = 3..=fixtures::ONE_EDGE_MAX_SLOPES;
const COMPLEX_R: std::ops::RangeInclusive<u32> = 1..=4;

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn set(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Grid of criteria 3, 4 and 7.
fn ordered_grid() -> Vec<(u32, u32, u32)> {
    let mut cells = Vec::new();
    for a in 3..=8 {
        for b in a..=8 {
            for r in 1..=12 {
                cells.push((a, b, r));
            }
        }
    }
    cells
}

fn full_grid() -> Vec<(u32, u32, u32)> {
    let mut cells = Vec::new();
    for a in 3..=8 {
        for b in 3..=8 {
            for r in 1..=12 {
                cells.push((a, b, r));
            }
        }
    }
    cells
}

fn random_slopes(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut out = BTreeSet::new();
    while out.len() < n {
        out.insert(ratio(rng.gen_range(-30..=30), rng.gen_range(1..=12)));
    }
    out.into_iter().collect()
}

fn worked_example() -> Check {
    let (a, b, r) = (3, 4, 8);
    // as printed, except x^2 z^15 which should read x^2 z^13 followed by x z^15
    let v1 = [
        "x^9", "x^8 z", "x^7 z^3", "x^6 z^5", "x^5 z^7", "x^4 z^9", "x^3 z^11", "x^2 z^13",
        "x z^15", "z^17",
    ];
    let v2 = [
        "y^9", "y^8 z", "y^7 z^2", "y^6 z^4", "y^5 z^5", "y^4 z^7", "y^3 z^8", "y^2 z^10",
        "y z^11", "z^13",
    ];
    let in_q = ["x^4", "x^3 z^2", "y^3", "y^2 z", "y z^2", "z^4"];
    let edges = [
        "x^4 z^2",
        "x^3 z^4",
        "y^3 z",
        "y^2 z^2",
        "y z^4",
        "x^4 y^3",
        "x^4 y^2 z",
        "x^3 y z^2",
    ];
    let faces = ["x^4 y^3 z", "x^4 y^2 z^2", "x^3 y z^4"];

    let st1 = staircase_closed_form(r, a - 1).map_err(|e| e.to_string())?;
    let st2 = staircase_closed_form(r, b - 1).map_err(|e| e.to_string())?;
    ensure(strs(st1.ideal().gens()) == v1, || {
        format!("In(J'(v1)) = {}", st1.ideal())
    })?;
    ensure(strs(st2.ideal().swap_xy().gens()) == v2, || {
        format!("In(J'(v2)) = {}", st2.ideal())
    })?;
    let o1 =
        initial_ideal_oracle(r, &[ratio(0, 1), ratio(3, 7)], st1.default_degree_bound()).unwrap();
    let o2 = initial_ideal_oracle(
        r,
        &[ratio(0, 1), ratio(-1, 2), ratio(5, 3)],
        st2.default_degree_bound(),
    )
    .unwrap();
    ensure(o1 == st1.ideal() && o2 == st2.ideal(), || {
        "oracle differs from the staircases".into()
    })?;

    let q = build_q(a, b, r).unwrap();
    ensure(strs(q.in_q.gens()) == in_q, || format!("In Q = {}", q.in_q))?;
    ensure((q.i0(), q.j0()) == (4, 3), || {
        format!("i0, j0 = {}, {}", q.i0(), q.j0())
    })?;
    let g = buchberger_graph(&q.in_q).unwrap();
    let syz2: BTreeSet<String> = strs(&syz2_closed_form(&q).unwrap()).into_iter().collect();
    let syz3: BTreeSet<String> = strs(&syz3_closed_form(&g).unwrap()).into_iter().collect();
    ensure(syz2 == set(&edges), || format!("second syzygies {syz2:?}"))?;
    ensure(syz3 == set(&faces), || format!("third syzygies {syz3:?}"))?;
    let graph_edges: BTreeSet<String> = strs(&g.edge_lcms()).into_iter().collect();
    ensure(graph_edges == set(&edges), || "graph edges differ".into())?;

    let betti = betti_oracle(&q.in_q);
    let reg_betti = betti
        .graded()
        .keys()
        .map(|&(i, d)| d as i64 - (i as i64 + 1))
        .max()
        .unwrap();
    let socle = q.in_q.max_socle_degree().unwrap();
    ensure(socle == 5 && reg_betti == 5, || {
        format!("reg In Q: socle {socle}, Betti {reg_betti}")
    })?;
    let rep = regularity_one_edge(a, b, r).unwrap();
    ensure(rep.exact == Some(14), || format!("exact {:?}", rep.exact))?;
    Ok("generators, syzygies and reg In Q = 5 as printed; exact 14".into())
}

fn symmetric_2r() -> Check {
    for r in 1..=12 {
        let rep = regularity_one_edge(3, 3, r).map_err(|e| e.to_string())?;
        let want = Some(2 * r);
        ensure(
            rep.exact == want && rep.routes.bottom_face == want && rep.routes.socle == want,
            || format!("r={r}: {:?}", rep.routes),
        )?;
    }
    let c = fixtures::one_edge(3, 3);
    for r in 1..=4 {
        let rep = regularity_from_complex(&c, r).map_err(|e| e.to_string())?;
        ensure(rep.routes.chain_complex == Some(2 * r), || {
            format!("r={r}: chain complex {:?}", rep.routes.chain_complex)
        })?;
    }
    Ok("r = 1..12 by bottom face and socle, r = 1..4 by chain complex".into())
}

fn alpha(r: u32, k: u32) -> i64 {
    ((r + 1) / (k - 1)) as i64
}

fn sandwich() -> Check {
    let bad: Vec<String> = ordered_grid()
        .into_par_iter()
        .filter_map(|(a, b, r)| {
            let rep = match regularity_one_edge(a, b, r) {
                Ok(rep) => rep,
                Err(e) => return Some(format!("({a},{b},{r}): {e}")),
            };
            let exact = rep.exact? as i64;
            let lower = alpha(r, a) + alpha(r, b) + r as i64 - 1;
            (!(lower <= exact && exact <= lower + 1))
                .then(|| format!("({a},{b},{r}): {exact} not in [{lower}, {}]", lower + 1))
        })
        .collect();
    let nontrivial = ordered_grid()
        .into_iter()
        .filter(|&(a, b, r)| !build_q(a, b, r).unwrap().is_trivial())
        .count();
    ensure(bad.is_empty(), || {
        format!("{} violations, first {}", bad.len(), bad[0])
    })?;
    Ok(format!("{nontrivial} nontrivial cells, 0 violations"))
}

fn theorem_2r() -> Check {
    let grid_bad = full_grid()
        .into_par_iter()
        .filter(|&(a, b, r)| {
            !regularity_one_edge(a, b, r)
                .map(|rep| check_2r_theorem(&rep))
                .unwrap_or(false)
        })
        .count();
    ensure(grid_bad == 0, || format!("{grid_bad} grid violations"))?;
    let mut complexes = Vec::new();
    for a in COMPLEX_SLOPES {
        for b in COMPLEX_SLOPES {
            for r in COMPLEX_R {
                complexes.push((a, b, r));
            }
        }
    }
    let bad: Vec<String> = complexes
        .par_iter()
        .filter_map(
            |&(a, b, r)| match regularity_from_complex(&fixtures::one_edge(a, b), r) {
                Ok(rep) if check_2r_theorem(&rep) => None,
                Ok(rep) => Some(format!("one_edge({a},{b}) r={r}: {:?}", rep.exact)),
                Err(e) => Some(format!("one_edge({a},{b}) r={r}: {e}")),
            },
        )
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!(
        "{} grid cells, {} constructed complexes",
        full_grid().len(),
        complexes.len()
    ))
}

fn staircase_oracle() -> Check {
    let mut cases = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for s in 2..=6u32 {
        for r in 0..=12 {
            for _ in 0..RANDOM_SETS {
                cases.push((s, r, random_slopes(&mut rng, s as usize)));
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|(s, r, slopes)| {
            let st = staircase_closed_form(*r, *s).unwrap();
            let oracle = initial_ideal_oracle(*r, slopes, st.default_degree_bound()).unwrap();
            (oracle != st.ideal()).then(|| format!("s={s} r={r}: oracle {oracle}"))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} slope sets", cases.len()))
}

fn colon_and_sum() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut colon_cases = 0;
    for s in 2..=4u32 {
        for r in 0..=8 {
            let slopes = random_slopes(&mut rng, s as usize);
            let want = colon_staircase(&staircase_closed_form(r, s).unwrap());
            let d_max = want.lambda_prime[0] + want.i0;
            let got = colon_initial_oracle(r, &slopes, d_max).unwrap();
            ensure(got == want.ideal(), || {
                format!("colon s={s} r={r}: {got} vs {}", want.ideal())
            })?;
            colon_cases += 1;
        }
    }
    let mut cases = Vec::new();
    for s1 in 2..=4u32 {
        for s2 in 2..=4u32 {
            for r in 0..=8 {
                let sl1 = random_slopes(&mut rng, s1 as usize);
                let sl2 = random_slopes(&mut rng, s2 as usize);
                cases.push((s1, s2, r, sl1, sl2));
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|(s1, s2, r, sl1, sl2)| {
            let q = build_q(s1 + 1, s2 + 1, *r).unwrap();
            let d_max = if q.is_trivial() {
                1
            } else {
                q.in_q.max_socle_degree().unwrap() + 1
            };
            let got = sum_initial_oracle(*r, sl1, sl2, d_max).unwrap();
            (got != q.in_q).then(|| format!("sum s=({s1},{s2}) r={r}: {got} vs {}", q.in_q))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!(
        "{colon_cases} colon cases, {} sum cases",
        cases.len()
    ))
}

fn ones(v: &[Monomial]) -> Vec<(Monomial, usize)> {
    let mut v: Vec<(Monomial, usize)> = v.iter().map(|m| (*m, 1)).collect();
    v.sort_by(|x, y| y.0.cmp(&x.0));
    v
}

fn check_betti(a: u32, b: u32, r: u32) -> Result<bool, String> {
    let q = build_q(a, b, r).map_err(|e| e.to_string())?;
    if q.is_trivial() {
        return Ok(false);
    }
    let tag = format!("({a},{b},{r})");
    let g = buchberger_graph(&q.in_q).map_err(|e| format!("{tag}: {e}"))?;
    let betti = betti_oracle(&q.in_q);
    let syz2 = syz2_closed_form(&q).map_err(|e| format!("{tag}: {e}"))?;
    let syz3 = syz3_closed_form(&g).map_err(|e| format!("{tag}: {e}"))?;
    ensure(betti.multidegrees(0) == ones(q.in_q.gens()), || {
        format!("{tag}: generators")
    })?;
    ensure(betti.multidegrees(1) == ones(&syz2), || {
        format!("{tag}: second syzygies")
    })?;
    ensure(betti.multidegrees(2) == ones(&syz3), || {
        format!("{tag}: third syzygies")
    })?;
    ensure(betti.total(3) == 0, || format!("{tag}: nonzero beta_3"))?;
    ensure(g.euler_characteristic() == 1, || {
        format!("{tag}: V-E+F = {}", g.euler_characteristic())
    })?;
    let top = q.in_q.max_socle_degree().unwrap() + 3;
    for d in 0..=top {
        let hf = q.in_q.hilbert_function(d) as i64;
        ensure(betti.hilbert_function(d) == hf, || {
            format!("{tag}: Hilbert function at {d}")
        })?;
    }
    Ok(true)
}

fn betti_agreement() -> Check {
    let results: Vec<Result<bool, String>> = ordered_grid()
        .into_par_iter()
        .map(|(a, b, r)| check_betti(a, b, r))
        .collect();
    let bad: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    ensure(bad.is_empty(), || {
        format!("{} violations, first {}", bad.len(), bad[0])
    })?;
    let checked = results.iter().filter(|r| matches!(r, Ok(true))).count();
    Ok(format!("{checked} nontrivial cells"))
}

fn face_order() -> Check {
    let bad: Vec<String> = full_grid()
        .into_par_iter()
        .filter_map(|(a, b, r)| {
            let q = build_q(a, b, r).unwrap();
            if q.is_trivial() {
                return None;
            }
            let mut faces: Vec<Monomial> = betti_oracle(&q.in_q)
                .multidegrees(2)
                .into_iter()
                .map(|(m, _)| m)
                .collect();
            faces.sort_by_key(|m| (m.z, std::cmp::Reverse(m.degree())));
            let ok = faces
                .windows(2)
                .all(|w| w[0].z < w[1].z && w[0].degree() >= w[1].degree());
            (!ok).then(|| format!("({a},{b},{r}): {}", strs(&faces).join(", ")))
        })
        .collect();
    ensure(bad.is_empty(), || {
        format!("{} violations, first {}", bad.len(), bad[0])
    })?;
    Ok(format!("{} cells", full_grid().len()))
}

fn spline_dimensions() -> Check {
    let complexes = [
        ("single_triangle", fixtures::single_triangle()),
        ("star", fixtures::star()),
        ("one_edge_3_4", fixtures::one_edge(3, 4)),
        ("two_edge_chain", fixtures::two_edge_chain()),
        ("square_with_diagonals", fixtures::square_with_diagonals()),
    ];
    let mut cases = Vec::new();
    for (name, c) in &complexes {
        for r in 0..=3 {
            for d in 0..=SPLINE_D_MAX {
                cases.push((*name, c, r, d));
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(name, c, r, d)| {
            let formula = match spline_dim_formula(c, r, d) {
                Ok(f) => f,
                Err(e) => return Some(format!("{name} r={r} d={d}: {e}")),
            };
            let oracle = spline_dim_oracle(c, r, d) as i64;
            (formula != oracle)
                .then(|| format!("{name} r={r} d={d}: formula {formula}, oracle {oracle}"))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!(
        "{} complexes, {} (r, d) pairs",
        complexes.len(),
        cases.len()
    ))
}

fn path_containment() -> Check {
    let c = fixtures::two_edge_chain();
    let mut seen = Vec::new();
    for r in 1..=3 {
        let pb = path_bounds(&c, r, true).map_err(|e| e.to_string())?;
        ensure(pb.contained == Some(true), || {
            format!(
                "r={r}: oracle {:?} outside [{:?}, {:?}]",
                pb.oracle, pb.lower, pb.upper
            )
        })?;
        seen.push(format!(
            "r={r}: {} in [{}, {}]",
            pb.oracle
                .and_then(H0Regularity::degree)
                .map_or("zero".into(), |d| d.to_string()),
            pb.lower.unwrap(),
            pb.upper.unwrap()
        ));
    }
    // r = 0: the module vanishes, below any finite lower bound; reported only
    let zero = h0_regularity_oracle(&c, 0).map_err(|e| e.to_string())?;
    seen.push(format!("r=0 (informational): {zero:?}"));
    Ok(seen.join(", "))
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "worked example fidelity",
            limit: secs(1),
            run: worked_example,
        },
        Criterion {
            id: 2,
            name: "(3,3) closed form is 2r",
            limit: secs(30),
            run: symmetric_2r,
        },
        Criterion {
            id: 3,
            name: "regularity sandwich",
            limit: secs(120),
            run: sandwich,
        },
        Criterion {
            id: 4,
            name: "exact <= 2r",
            limit: None,
            run: theorem_2r,
        },
        Criterion {
            id: 5,
            name: "staircase vs initial-ideal oracle",
            limit: secs(120),
            run: staircase_oracle,
        },
        Criterion {
            id: 6,
            name: "colon and sum initial ideals",
            limit: None,
            run: colon_and_sum,
        },
        Criterion {
            id: 7,
            name: "syzygy-Betti agreement",
            limit: None,
            run: betti_agreement,
        },
        Criterion {
            id: 8,
            name: "third-syzygy order",
            limit: None,
            run: face_order,
        },
        Criterion {
            id: 9,
            name: "spline dimension formula",
            limit: secs(300),
            run: spline_dimensions,
        },
        Criterion {
            id: 10,
            name: "path bounds contain the oracle",
            limit: None,
            run: path_containment,
        },
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.contains(&c.id) {
            continue;
        }
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let late = c.limit.is_some_and(|l| took > l);
        let limit = c
            .limit
            .map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
        let (status, detail) = match (&result, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{:>2}] {} ({:.2}s{limit}): {detail}",
            c.id,
            c.name,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
