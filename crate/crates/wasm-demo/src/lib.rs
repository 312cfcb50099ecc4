//! Browser bindings for the demo page. Every export returns a JSON string;
//! the `*_json` functions behind them are plain Rust so they test natively.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use spline_reg::monomial::Monomial;
use spline_reg::regularity::regularity_one_edge;
use spline_reg::staircase::{build_q, colon_staircase, staircase_closed_form};
use spline_reg::syzygy::buchberger_graph;

/// Keeps the page responsive; the library itself has no such limit.
const MAX_R: u32 = 24;
const MAX_SLOPES: u32 = 16;

fn check(a: u32, b: u32, r: u32) -> Result<(), String> {
    if r > MAX_R || a > MAX_SLOPES || b > MAX_SLOPES {
        return Err(format!(
            "demo limits are r <= {MAX_R} and a, b <= {MAX_SLOPES}"
        ));
    }
    Ok(())
}

fn exps(m: &Monomial) -> [u32; 3] {
    m.exponents()
}

/// One-variable staircase `In(J')` and its colon by `z^{r+1}`.
pub fn staircase_json(r: u32, s: u32) -> Result<String, String> {
    check(s, s, r)?;
    let st = staircase_closed_form(r, s).map_err(|e| e.to_string())?;
    let colon = colon_staircase(&st);
    Ok(json!({
        "r": r,
        "s": s,
        "lambda": st.lambda,
        "generators": st.ideal().gens().iter().map(exps).collect::<Vec<_>>(),
        "lambda_prime": colon.lambda_prime,
        "i0": colon.i0,
    })
    .to_string())
}

#[derive(Serialize)]
struct Edge {
    ends: [usize; 2],
    lcm: [u32; 3],
}

/// `In Q`, its Buchberger graph and the regularity report.
pub fn graph_json(a: u32, b: u32, r: u32) -> Result<String, String> {
    check(a, b, r)?;
    let report = regularity_one_edge(a, b, r).map_err(|e| e.to_string())?;
    let q = build_q(a, b, r).map_err(|e| e.to_string())?;
    let (nodes, edges, faces) = if q.is_trivial() {
        (Vec::new(), Vec::new(), Vec::new())
    } else {
        let g = buchberger_graph(&q.in_q).map_err(|e| e.to_string())?;
        let edges: Vec<Edge> = g
            .edges
            .iter()
            .map(|e| Edge {
                ends: [e.ends.0, e.ends.1],
                lcm: exps(&e.lcm),
            })
            .collect();
        let faces: Vec<[u32; 3]> = g.face_lcms().iter().map(exps).collect();
        (g.nodes.iter().map(exps).collect(), edges, faces)
    };
    Ok(json!({
        "nodes": nodes,
        "edges": edges,
        "faces": faces,
        "in_q": q.in_q.to_string(),
        "report": report,
    })
    .to_string())
}

/// Exact regularity for `3 <= a, b <= max_slopes` at a fixed `r`, row by row.
pub fn sweep_json(max_slopes: u32, r: u32) -> Result<String, String> {
    check(max_slopes, max_slopes, r)?;
    if max_slopes < 3 {
        return Err("need at least 3 slopes".into());
    }
    let mut rows = Vec::new();
    for a in 3..=max_slopes {
        let mut row = Vec::new();
        for b in 3..=max_slopes {
            let rep = regularity_one_edge(a, b, r).map_err(|e| e.to_string())?;
            row.push(json!({
                "exact": rep.exact,
                "lower": rep.lower,
                "upper": rep.upper,
            }));
        }
        rows.push(row);
    }
    Ok(json!({ "r": r, "first": 3, "rows": rows }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn staircase(r: u32, s: u32) -> Result<String, JsError> {
    js(staircase_json(r, s))
}

#[wasm_bindgen]
pub fn graph(a: u32, b: u32, r: u32) -> Result<String, JsError> {
    js(graph_json(a, b, r))
}

#[wasm_bindgen]
pub fn sweep(max_slopes: u32, r: u32) -> Result<String, JsError> {
    js(sweep_json(max_slopes, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn staircase_payload() {
        let v = parse(staircase_json(8, 3).unwrap());
        assert_eq!(v["lambda"][0], 13);
        assert_eq!(v["generators"][0], json!([9, 0, 0]));
        assert_eq!(v["i0"], 3);
        assert!(staircase_json(2, 1).is_err());
        assert!(staircase_json(30, 3).is_err());
    }

    #[test]
    fn graph_payload() {
        let v = parse(graph_json(3, 4, 8).unwrap());
        assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
        assert_eq!(v["edges"].as_array().unwrap().len(), 8);
        assert_eq!(v["faces"].as_array().unwrap().len(), 3);
        assert_eq!(v["report"]["exact"], 14);
        let v = parse(graph_json(5, 5, 1).unwrap());
        assert!(v["nodes"].as_array().unwrap().is_empty());
        assert_eq!(v["report"]["vanishes"], true);
    }

    #[test]
    fn sweep_payload() {
        let v = parse(sweep_json(5, 4).unwrap());
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0][0]["exact"], 8);
        assert!(sweep_json(2, 4).is_err());
    }
}
