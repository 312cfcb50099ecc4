//! Exhaustive checks over 3 <= a <= b <= 8, 0 <= r <= 12.

use spline_reg::regularity::regularity_one_edge;
use spline_reg::staircase::build_q;
use spline_reg::syzygy::{
    betti_oracle, buchberger_graph, regularity_from_bottom_face, syz2_closed_form, syz3_closed_form,
};

fn cells() -> impl Iterator<Item = (u32, u32, u32)> {
    (3..=8).flat_map(|a| (a..=8).flat_map(move |b| (0..=12).map(move |r| (a, b, r))))
}

#[test]
fn bottom_face_equals_shifted_socle() {
    for (a, b, r) in cells() {
        let q = build_q(a, b, r).unwrap();
        if q.is_trivial() {
            continue;
        }
        let bf = regularity_from_bottom_face(&q).unwrap();
        assert_eq!(
            bf.regularity,
            q.in_q.max_socle_degree().unwrap() + r + 1,
            "({a},{b},{r})"
        );
    }
}

#[test]
fn syzygies_match_betti_numbers() {
    for (a, b, r) in cells() {
        let q = build_q(a, b, r).unwrap();
        if q.is_trivial() {
            continue;
        }
        let betti = betti_oracle(&q.in_q);
        let g = buchberger_graph(&q.in_q).unwrap();
        assert_eq!(g.euler_characteristic(), 1);
        let mut syz2 = syz2_closed_form(&q).unwrap();
        syz2.sort();
        let mut b1: Vec<_> = betti
            .multidegrees(1)
            .into_iter()
            .inspect(|(_, d)| assert_eq!(*d, 1))
            .map(|(m, _)| m)
            .collect();
        b1.sort();
        assert_eq!(syz2, b1, "({a},{b},{r})");
        let mut syz3 = syz3_closed_form(&g).unwrap();
        syz3.sort();
        let mut b2: Vec<_> = betti
            .multidegrees(2)
            .into_iter()
            .inspect(|(_, d)| assert_eq!(*d, 1))
            .map(|(m, _)| m)
            .collect();
        b2.sort();
        assert_eq!(syz3, b2, "({a},{b},{r})");
        for d in 0..=q.in_q.max_socle_degree().unwrap() + 2 {
            assert_eq!(betti.hilbert_function(d), q.in_q.hilbert_function(d) as i64);
        }
    }
}

#[test]
fn regularity_weakly_increases_in_r() {
    for a in 3..=8 {
        for b in a..=8 {
            let exact: Vec<Option<u32>> = (0..=12)
                .map(|r| regularity_one_edge(a, b, r).unwrap().exact)
                .collect();
            for w in exact.windows(2) {
                if let Some(lo) = w[0] {
                    assert!(w[1].is_some_and(|hi| hi >= lo), "({a},{b}): {exact:?}");
                }
            }
        }
    }
}
