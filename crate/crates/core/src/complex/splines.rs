use std::collections::{HashMap, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use super::{ideal_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{rank, RatMatrix, Rational};
use crate::monomial::{binom2_shifted, monomial_count};
use crate::poly::{binomial_row, DegreeBasis, LinearForm};

/// Graded free resolution data of `S / J(v)` for `k` distinct lines through
/// a vertex, each raised to the power `r + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalResolution {
    pub k: u32,
    pub r: u32,
    pub alpha_star: u32,
    pub a1: u32,
    pub a2: u32,
}

pub fn schumaker_local(k: u32, r: u32) -> Result<LocalResolution> {
    if k < 2 {
        return Err(Error::InvalidSlopeCount {
            got: k as usize,
            min: 2,
        });
    }
    let alpha_star = (r + 1) / (k - 1);
    Ok(LocalResolution {
        k,
        r,
        alpha_star,
        a1: (k - 1) * alpha_star + k - r - 2,
        a2: r + 1 - (k - 1) * alpha_star,
    })
}

impl LocalResolution {
    /// `C(d+2,2) - k C(d-r+1,2) + a1 C(d-r-alpha+1,2) + a2 C(d-r-alpha,2)`,
    /// binomials with negative top read as zero.
    pub fn hf(&self, d: u32) -> i64 {
        let (d, r, al) = (d as i64, self.r as i64, self.alpha_star as i64);
        binom2_shifted(d) - self.k as i64 * binom2_shifted(d - r - 1)
            + self.a1 as i64 * binom2_shifted(d - r - al - 1)
            + self.a2 as i64 * binom2_shifted(d - r - al - 2)
    }

    /// The same alternating sum with every binomial taken as the polynomial
    /// `m (m - 1) / 2`; `hf` agrees with it once all shifts are nonnegative.
    pub fn euler_polynomial(&self, d: i64) -> i64 {
        let c2 = |m: i64| m * (m - 1) / 2;
        let (r, al) = (self.r as i64, self.alpha_star as i64);
        c2(d + 2) - self.k as i64 * c2(d - r + 1)
            + self.a1 as i64 * c2(d - r - al + 1)
            + self.a2 as i64 * c2(d - r - al)
    }
}

/// `dim C^r_d` from the Euler characteristic of `S / J`: triangle terms minus
/// edge terms plus the local vertex terms plus `dim H0(J)_d`.
pub fn spline_dim_formula(c: &SimplicialComplex, r: u32, d: u32) -> Result<i64> {
    let ic = ideal_complex(c, r);
    let full = binom2_shifted(d as i64);
    let edge_term = full - binom2_shifted(d as i64 - r as i64 - 1);
    let mut total = c.triangles().len() as i64 * full - ic.edges.len() as i64 * edge_term;
    for b in &ic.vertices {
        total += schumaker_local(b.forms.len() as u32, r)?.hf(d);
    }
    Ok(total + ic.h0_dim(d) as i64)
}

/// Linear conditions on a degree-`d` form `P` equivalent to `l^{r+1} | P`.
///
/// A pivot variable `w` with `l_w != 0` is eliminated through
/// `w = (L - l_u u - l_v v) / l_w`; `P` is divisible exactly when every
/// coefficient of `L^i u^j v^k` with `i <= r` vanishes.
struct DivisibilityTest {
    rows: usize,
    /// Sparse image of each basis monomial, indexed like the basis.
    images: Vec<Vec<(usize, Rational)>>,
}

impl DivisibilityTest {
    fn new(l: &LinearForm, r: u32, basis: &DegreeBasis, d: u32) -> Self {
        let a = l.rational_coeffs();
        let w = a.iter().position(|x| !x.is_zero()).expect("nonzero form");
        let (u, v) = match w {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let top = r.min(d);
        let offsets: Vec<usize> = (0..=top)
            .scan(0usize, |acc, i| {
                let o = *acc;
                *acc += (d - i + 1) as usize;
                Some(o)
            })
            .collect();
        let rows = offsets.last().map_or(0, |o| o + (d - top + 1) as usize);
        let inv_w = a[w].recip();
        let (cu, cv) = (-&a[u] * &inv_w, -&a[v] * &inv_w);
        let images = basis
            .monos()
            .iter()
            .map(|m| {
                let e = m.exponents();
                let n = e[w];
                let mut acc: HashMap<usize, Rational> = HashMap::new();
                let row_n = binomial_row(n);
                for i in 0..=n.min(top) {
                    let coeff_l =
                        Rational::from_integer(row_n[i as usize].clone()) * inv_w.pow(i as i32);
                    let rest = n - i;
                    let row_rest = binomial_row(rest);
                    for j in 0..=rest {
                        let k = rest - j;
                        let c = &coeff_l
                            * Rational::from_integer(row_rest[j as usize].clone())
                            * cu.pow(j as i32)
                            * cv.pow(k as i32);
                        if c.is_zero() {
                            continue;
                        }
                        let ud = (j + e[u]) as usize;
                        *acc.entry(offsets[i as usize] + ud)
                            .or_insert_with(Rational::zero) += c;
                    }
                }
                let mut out: Vec<(usize, Rational)> =
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                out.sort_by_key(|(i, _)| *i);
                out
            })
            .collect();
        DivisibilityTest { rows, images }
    }

    fn apply(&self, p: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (coef, img) in p.iter().zip(&self.images) {
            if coef.is_zero() {
                continue;
            }
            for (i, c) in img {
                out[*i] += coef * c;
            }
        }
        out
    }
}

fn edge_form(c: &SimplicialComplex, (i, j): (usize, usize)) -> LinearForm {
    LinearForm::through(&c.vertices()[i], &c.vertices()[j]).expect("distinct vertices")
}

/// Brute force over one polynomial per triangle: `dim C^r_d` is the nullity
/// of the smoothness conditions `l_tau^{r+1} | f_1 - f_2` on all interior
/// edges. Sizes grow as `f2 * C(d+2, 2)` columns.
pub fn spline_dim_naive(c: &SimplicialComplex, r: u32, d: u32) -> usize {
    let basis = DegreeBasis::full(d);
    let n = basis.len();
    let cols = c.triangles().len() * n;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for e in c.interior_edges() {
        let ts = c.edge_triangles(e.0, e.1);
        let test = DivisibilityTest::new(&edge_form(c, e), r, &basis, d);
        let mut block = vec![vec![Rational::zero(); cols]; test.rows];
        for (m, img) in test.images.iter().enumerate() {
            for (i, x) in img {
                block[*i][ts[0] * n + m] += x;
                block[*i][ts[1] * n + m] -= x;
            }
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        return cols;
    }
    cols - rank(&RatMatrix::from_rows(rows))
}

/// `dim C^r_d` from a spanning forest of the dual graph. Each root triangle
/// carries a free polynomial, each tree edge a cofactor `c` with
/// `f_child = f_parent + l^{r+1} c`; only edges off the forest give
/// conditions, on the cofactors alone.
pub fn spline_dim_oracle(c: &SimplicialComplex, r: u32, d: u32) -> usize {
    let n = monomial_count(d);
    let m = if d > r { monomial_count(d - r - 1) } else { 0 };
    let ntri = c.triangles().len();

    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ntri];
    let interior = c.interior_edges();
    for (k, e) in interior.iter().enumerate() {
        let ts = c.edge_triangles(e.0, e.1);
        adj[ts[0]].push((ts[1], k));
        adj[ts[1]].push((ts[0], k));
    }
    // parent edge of each triangle, and which tree column block it owns
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; ntri];
    let mut seen = vec![false; ntri];
    let mut tree_block: HashMap<usize, usize> = HashMap::new();
    let mut roots = 0;
    for s in 0..ntri {
        if seen[s] {
            continue;
        }
        roots += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(t) = queue.pop_front() {
            for &(u, k) in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some((t, k));
                    let next = tree_block.len();
                    tree_block.insert(k, next);
                    queue.push_back(u);
                }
            }
        }
    }
    let unknowns = tree_block.len() * m;
    if m == 0 {
        return roots * n;
    }

    let path = |mut t: usize| {
        let mut out = Vec::new();
        while let Some((p, k)) = parent[t] {
            out.push(k);
            t = p;
        }
        out
    };

    let basis = DegreeBasis::full(d);
    let shifts = DegreeBasis::full(d - r - 1);
    let mut powers: HashMap<usize, Vec<_>> = HashMap::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (k, e) in interior.iter().enumerate() {
        if tree_block.contains_key(&k) {
            continue;
        }
        let ts = c.edge_triangles(e.0, e.1);
        let mut coeff: HashMap<usize, i64> = HashMap::new();
        for t in path(ts[0]) {
            *coeff.entry(t).or_default() += 1;
        }
        for t in path(ts[1]) {
            *coeff.entry(t).or_default() -= 1;
        }
        let test = DivisibilityTest::new(&edge_form(c, *e), r, &basis, d);
        let mut block = vec![vec![Rational::zero(); unknowns]; test.rows];
        for (&te, &s) in coeff.iter().filter(|(_, s)| **s != 0) {
            let p = powers
                .entry(te)
                .or_insert_with(|| edge_form(c, interior[te]).power(r + 1));
            let sign = Rational::from_integer(s.into());
            for (j, mu) in shifts.monos().iter().enumerate() {
                let image = test.apply(&basis.vector_of_product(p, mu));
                let col = tree_block[&te] * m + j;
                for (i, x) in image.into_iter().enumerate() {
                    if !x.is_zero() {
                        block[i][col] += &sign * x;
                    }
                }
            }
        }
        rows.extend(block);
    }
    let rk = if rows.is_empty() {
        0
    } else {
        rank(&RatMatrix::from_rows(rows))
    };
    roots * n + unknowns - rk
}
