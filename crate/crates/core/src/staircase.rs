//! Lex initial ideals of ideals generated by `(r+1)`-st powers of linear
//! forms in two variables, their colon by `z^{r+1}`, and the monomial ideal
//! `In Q` assembled from the two endpoints of a totally interior edge.
//!
//! Everything is expressed in `(x, z)`; the second endpoint's ideal lives in
//! `(y, z)` and is obtained with [`MonomialIdeal::swap_xy`].

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, pivot_rows, RatMatrix, Rational};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poly::{DegreeBasis, LinearForm};

/// Lex initial ideal of `<(x + c_1 z)^{r+1}, ..., (x + c_s z)^{r+1}>`:
/// generators `x^{r+1}` and `x^i z^{lambda[i]}` for `0 <= i <= r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Staircase {
    pub r: u32,
    pub s: u32,
    pub lambda: Vec<u32>,
}

impl Staircase {
    /// The ideal in `(x, z)`.
    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::minimalize(
            std::iter::once(Monomial::new(self.r + 1, 0, 0)).chain(
                self.lambda
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| Monomial::new(i as u32, 0, l)),
            ),
        )
    }

    /// Oracle degree bound: the closed form is complete by degree `lambda[0]`.
    pub fn default_degree_bound(&self) -> u32 {
        self.lambda[0] + 2
    }
}

/// `lambda_i = (r - i + 1) + floor((r - i) / (s - 1))`.
pub fn staircase_closed_form(r: u32, s: u32) -> Result<Staircase> {
    if s < 2 {
        return Err(Error::InvalidSlopeCount {
            got: s as usize,
            min: 2,
        });
    }
    let lambda = (0..=r).map(|i| (r - i + 1) + (r - i) / (s - 1)).collect();
    Ok(Staircase { r, s, lambda })
}

fn check_distinct(slopes: &[Rational]) -> Result<()> {
    if slopes.is_empty() {
        return Err(Error::InvalidSlopeCount { got: 0, min: 1 });
    }
    let mut seen = BTreeSet::new();
    for c in slopes {
        if !seen.insert(c.clone()) {
            return Err(Error::DuplicateSlope(c.to_string()));
        }
    }
    Ok(())
}

fn form_x_plus(c: &Rational) -> LinearForm {
    LinearForm::new(Rational::one(), Rational::zero(), c.clone()).expect("x + c z is nonzero")
}

/// Columns `(x + c z)^{r+1} * mu` for every slope and every `mu` of degree
/// `d - r - 1` in `(x, z)`, over the lex-descending basis of degree `d`.
fn power_columns(r: u32, slopes: &[Rational], d: u32, basis: &DegreeBasis) -> Vec<Vec<Rational>> {
    let mut cols = Vec::new();
    if d < r + 1 {
        return cols;
    }
    let shift = DegreeBasis::xz(d - r - 1);
    for c in slopes {
        let p = form_x_plus(c).power(r + 1);
        for mu in shift.monos() {
            cols.push(basis.vector_of_product(&p, mu));
        }
    }
    cols
}

/// Leading monomials of the ideal generated by `(x + c z)^{r+1}`, read off
/// degree by degree from pivot rows of the coefficient matrix, minimalized
/// over degrees `r+1 ..= d_max`.
pub fn initial_ideal_oracle(r: u32, slopes: &[Rational], d_max: u32) -> Result<MonomialIdeal> {
    check_distinct(slopes)?;
    let mut leads = Vec::new();
    for d in r + 1..=d_max {
        let basis = DegreeBasis::xz(d);
        let cols = power_columns(r, slopes, d, &basis);
        let m = RatMatrix::from_columns(basis.len(), &cols);
        leads.extend(pivot_rows(&m).into_iter().map(|i| basis.monos()[i]));
    }
    Ok(MonomialIdeal::minimalize(leads))
}

/// `In(J') : z^{r+1}` as a staircase: `x^i z^{lambda_prime[i]}` for
/// `0 <= i <= i0`, with `lambda_prime[i0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonStaircase {
    pub r: u32,
    pub s: u32,
    pub i0: u32,
    pub lambda_prime: Vec<u32>,
}

impl ColonStaircase {
    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::minimalize(
            self.lambda_prime
                .iter()
                .enumerate()
                .map(|(i, &l)| Monomial::new(i as u32, 0, l)),
        )
    }

    pub fn is_unit(&self) -> bool {
        self.i0 == 0
    }
}

pub fn colon_staircase(st: &Staircase) -> ColonStaircase {
    let shift = st.r + 1;
    let i0 = st
        .lambda
        .iter()
        .position(|&l| l <= shift)
        .expect("lambda_r = 1 never exceeds r + 1") as u32;
    let lambda_prime = st.lambda[..=i0 as usize]
        .iter()
        .map(|&l| l.saturating_sub(shift))
        .collect();
    ColonStaircase {
        r: st.r,
        s: st.s,
        i0,
        lambda_prime,
    }
}

/// The data of `In Q` for a one-edge configuration with `a` slopes at the
/// first endpoint and `b` at the second (both counting the shared edge).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QData {
    pub a: u32,
    pub b: u32,
    pub r: u32,
    /// Colon staircase at the first endpoint, in `(x, z)`.
    pub colon1: ColonStaircase,
    /// Colon staircase at the second endpoint, in `(y, z)`.
    pub colon2: ColonStaircase,
    /// Smallest `i` with `lambda'_i < eta'_0`; `None` when `In Q` is the unit ideal.
    pub l0: Option<u32>,
    pub in_q: MonomialIdeal,
}

impl QData {
    pub fn is_trivial(&self) -> bool {
        self.in_q.is_unit()
    }

    pub fn lambda_prime(&self) -> &[u32] {
        &self.colon1.lambda_prime
    }

    pub fn eta_prime(&self) -> &[u32] {
        &self.colon2.lambda_prime
    }

    pub fn i0(&self) -> u32 {
        self.colon1.i0
    }

    pub fn j0(&self) -> u32 {
        self.colon2.i0
    }

    /// The same data with the endpoints exchanged (and `x <-> y`).
    pub fn swapped(&self) -> QData {
        build_q_unchecked(self.b, self.a, self.r)
    }
}

pub fn build_q(a: u32, b: u32, r: u32) -> Result<QData> {
    for k in [a, b] {
        if k < 3 {
            return Err(Error::InvalidSlopeCount {
                got: k as usize,
                min: 3,
            });
        }
    }
    Ok(build_q_unchecked(a, b, r))
}

fn build_q_unchecked(a: u32, b: u32, r: u32) -> QData {
    let colon1 = colon_staircase(&staircase_closed_form(r, a - 1).expect("a >= 3"));
    let colon2 = colon_staircase(&staircase_closed_form(r, b - 1).expect("b >= 3"));
    let in_q = colon1.ideal().sum(&colon2.ideal().swap_xy());
    let eta0 = colon2.lambda_prime[0];
    let l0 = if in_q.is_unit() {
        None
    } else {
        colon1
            .lambda_prime
            .iter()
            .position(|&l| l < eta0)
            .map(|i| i as u32)
    };
    QData {
        a,
        b,
        r,
        colon1,
        colon2,
        l0,
        in_q,
    }
}

/// Spanning set of `(J' : z^{r+1})` in degree `e`, as coefficient vectors
/// over `DegreeBasis::xz(e)`, where `J'` is generated by `(x + c z)^{r+1}`.
fn colon_span_xz(r: u32, slopes: &[Rational], e: u32) -> Vec<Vec<Rational>> {
    let target = DegreeBasis::xz(e + r + 1);
    let source = DegreeBasis::xz(e);
    let z_power = [(Monomial::new(0, 0, r + 1), num_bigint::BigInt::one())];
    let mut cols: Vec<Vec<Rational>> = source
        .monos()
        .iter()
        .map(|mu| target.vector_of_product(&z_power, mu))
        .collect();
    cols.extend(power_columns(r, slopes, e + r + 1, &target));
    let m = RatMatrix::from_columns(target.len(), &cols);
    nullspace(&m)
        .into_iter()
        .map(|u| u[..source.len()].to_vec())
        .filter(|g| g.iter().any(|v| !v.is_zero()))
        .collect()
}

/// `In(J' : z^{r+1})` in `(x, z)` from the actual colon ideal, over degrees
/// `0 ..= d_max`.
pub fn colon_initial_oracle(r: u32, slopes: &[Rational], d_max: u32) -> Result<MonomialIdeal> {
    check_distinct(slopes)?;
    let mut leads = Vec::new();
    for e in 0..=d_max {
        let span = colon_span_xz(r, slopes, e);
        if span.is_empty() {
            continue;
        }
        let basis = DegreeBasis::xz(e);
        let m = RatMatrix::from_columns(basis.len(), &span);
        leads.extend(pivot_rows(&m).into_iter().map(|i| basis.monos()[i]));
    }
    Ok(MonomialIdeal::minimalize(leads))
}

/// Initial ideal of the non-monomial ideal `Q(v1) + Q(v2)`, computed without
/// passing through monomial colons: colon memberships are solved as linear
/// systems, both colons are spread to degree `d` by the missing variable, and
/// leading monomials are the pivot rows of the combined span.
pub fn sum_initial_oracle(
    r: u32,
    slopes1: &[Rational],
    slopes2: &[Rational],
    d_max: u32,
) -> Result<MonomialIdeal> {
    check_distinct(slopes1)?;
    check_distinct(slopes2)?;
    let mut cache1: HashMap<u32, Vec<Vec<Rational>>> = HashMap::new();
    let mut cache2: HashMap<u32, Vec<Vec<Rational>>> = HashMap::new();
    let mut leads = Vec::new();
    for d in 0..=d_max {
        let basis = DegreeBasis::full(d);
        let mut cols = Vec::new();
        for k in 0..=d {
            let e = d - k;
            let src = DegreeBasis::xz(e);
            let span1 = cache1
                .entry(e)
                .or_insert_with(|| colon_span_xz(r, slopes1, e));
            for g in span1.iter() {
                let mut v = vec![Rational::zero(); basis.len()];
                for (c, m) in g.iter().zip(src.monos()) {
                    if !c.is_zero() {
                        let t = Monomial::new(m.x, k, m.z);
                        v[basis.index_of(&t).unwrap()] = c.clone();
                    }
                }
                cols.push(v);
            }
            let span2 = cache2
                .entry(e)
                .or_insert_with(|| colon_span_xz(r, slopes2, e));
            for g in span2.iter() {
                let mut v = vec![Rational::zero(); basis.len()];
                for (c, m) in g.iter().zip(src.monos()) {
                    if !c.is_zero() {
                        // (x, z) -> (y, z), multiplied by x^k
                        let t = Monomial::new(k, m.x, m.z);
                        v[basis.index_of(&t).unwrap()] = c.clone();
                    }
                }
                cols.push(v);
            }
        }
        if cols.is_empty() {
            continue;
        }
        let m = RatMatrix::from_columns(basis.len(), &cols);
        leads.extend(pivot_rows(&m).into_iter().map(|i| basis.monos()[i]));
    }
    Ok(MonomialIdeal::minimalize(leads))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, rat};

    fn xz(i: u32, t: u32) -> Monomial {
        Monomial::new(i, 0, t)
    }

    fn slopes(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            staircase_closed_form(8, 3).unwrap().lambda,
            vec![13, 11, 10, 8, 7, 5, 4, 2, 1]
        );
        let zero = staircase_closed_form(0, 2).unwrap();
        assert_eq!(zero.lambda, vec![1]);
        assert_eq!(zero.ideal().gens(), &[xz(1, 0), xz(0, 1)]);
        let st = staircase_closed_form(8, 2).unwrap();
        assert_eq!(
            st.ideal().gens(),
            &[
                xz(9, 0),
                xz(8, 1),
                xz(7, 3),
                xz(6, 5),
                xz(5, 7),
                xz(4, 9),
                xz(3, 11),
                xz(2, 13),
                xz(1, 15),
                xz(0, 17)
            ]
        );
        assert_eq!(
            staircase_closed_form(3, 1),
            Err(Error::InvalidSlopeCount { got: 1, min: 2 })
        );
    }

    #[test]
    fn coefficient_matrix_rank_and_pivots() {
        // r = 1, d = 2, slopes {0, 1}: columns x^2 and (x + z)^2.
        let basis = DegreeBasis::xz(2);
        let cols = power_columns(1, &slopes(&[0, 1]), 2, &basis);
        assert_eq!(rank(&RatMatrix::from_columns(3, &cols)), 2);
        // r = 8, d = 9: leading monomials x^9, x^8 z.
        let basis = DegreeBasis::xz(9);
        let cols = power_columns(8, &slopes(&[0, 1]), 9, &basis);
        assert_eq!(pivot_rows(&RatMatrix::from_columns(10, &cols)), vec![0, 1]);
    }

    #[test]
    fn oracle_examples() {
        let st = staircase_closed_form(8, 3).unwrap();
        assert_eq!(
            initial_ideal_oracle(8, &slopes(&[0, 1, 2]), 15).unwrap(),
            st.ideal()
        );
        assert_eq!(
            initial_ideal_oracle(1, &slopes(&[0]), 4).unwrap().gens(),
            &[xz(2, 0)]
        );
        assert_eq!(
            initial_ideal_oracle(2, &slopes(&[0, 1, -1]), 6)
                .unwrap()
                .gens(),
            &[xz(3, 0), xz(2, 1), xz(1, 2), xz(0, 4)]
        );
        assert_eq!(
            initial_ideal_oracle(8, &slopes(&[0, 1]), 19).unwrap(),
            staircase_closed_form(8, 2).unwrap().ideal()
        );
        assert_eq!(
            initial_ideal_oracle(2, &slopes(&[1, 1]), 6),
            Err(Error::DuplicateSlope("1".into()))
        );
    }

    #[test]
    fn colon_examples() {
        let c = colon_staircase(&staircase_closed_form(8, 2).unwrap());
        assert_eq!(c.i0, 4);
        assert_eq!(
            c.ideal().gens(),
            &[xz(4, 0), xz(3, 2), xz(2, 4), xz(1, 6), xz(0, 8)]
        );
        let c = colon_staircase(&staircase_closed_form(8, 3).unwrap());
        assert_eq!(c.i0, 3);
        assert_eq!(
            c.ideal().swap_xy().gens(),
            &[
                Monomial::new(0, 3, 0),
                Monomial::new(0, 2, 1),
                Monomial::new(0, 1, 2),
                Monomial::new(0, 0, 4)
            ]
        );
        let c = colon_staircase(&staircase_closed_form(0, 2).unwrap());
        assert_eq!(c.i0, 0);
        assert_eq!(c.ideal(), MonomialIdeal::unit());
    }

    #[test]
    fn build_q_examples() {
        let q = build_q(3, 4, 8).unwrap();
        assert_eq!(
            q.in_q.gens(),
            &[
                Monomial::new(4, 0, 0),
                Monomial::new(3, 0, 2),
                Monomial::new(0, 3, 0),
                Monomial::new(0, 2, 1),
                Monomial::new(0, 1, 2),
                Monomial::new(0, 0, 4)
            ]
        );
        assert_eq!((q.i0(), q.j0(), q.l0), (4, 3, Some(3)));
        let q = build_q(3, 3, 2).unwrap();
        assert_eq!(
            q.in_q.gens(),
            &[
                Monomial::new(1, 0, 0),
                Monomial::new(0, 1, 0),
                Monomial::new(0, 0, 2)
            ]
        );
        let q = build_q(5, 5, 0).unwrap();
        assert!(q.is_trivial());
        assert_eq!(q.l0, None);
        assert!(matches!(
            build_q(2, 3, 1),
            Err(Error::InvalidSlopeCount { .. })
        ));
    }

    #[test]
    fn colon_oracle_matches_closed_form() {
        for (r, sl) in [
            (8, vec![0, 1]),
            (8, vec![0, 1, 2]),
            (3, vec![0, 2, -1]),
            (0, vec![0, 5]),
        ] {
            let st = staircase_closed_form(r, sl.len() as u32).unwrap();
            let oracle = colon_initial_oracle(r, &slopes(&sl), st.lambda[0]).unwrap();
            assert_eq!(oracle, colon_staircase(&st).ideal(), "r={r} slopes={sl:?}");
        }
    }

    #[test]
    fn sum_oracle_examples() {
        let ones = slopes(&[0, 1]);
        assert_eq!(
            sum_initial_oracle(2, &ones, &ones, 6).unwrap(),
            build_q(3, 3, 2).unwrap().in_q
        );
        assert_eq!(
            sum_initial_oracle(8, &ones, &slopes(&[0, 1, 2]), 12).unwrap(),
            build_q(3, 4, 8).unwrap().in_q
        );
        assert_eq!(
            sum_initial_oracle(0, &slopes(&[0, 3]), &slopes(&[0, -1, 5]), 3).unwrap(),
            MonomialIdeal::unit()
        );
    }

    #[test]
    fn closed_form_structure() {
        for s in 2..=6 {
            for r in 0..=12 {
                let st = staircase_closed_form(r, s).unwrap();
                assert_eq!(st.lambda[r as usize], 1);
                assert_eq!(st.lambda[0], r + 1 + r / (s - 1));
                assert!(st.lambda.windows(2).all(|w| w[0] > w[1]));
                let c = colon_staircase(&st);
                assert_eq!(c.i0, (r + 1) / s);
                assert_eq!(c.ideal(), st.ideal().colon(&Monomial::new(0, 0, r + 1)));
                assert_eq!(*c.lambda_prime.last().unwrap(), 0);
                assert!(c.lambda_prime.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn build_q_structure_and_l0_bound() {
        for a in 3..=8u32 {
            for b in a..=8u32 {
                for r in 0..=12u32 {
                    let q = build_q(a, b, r).unwrap();
                    if q.is_trivial() {
                        assert!(q.i0() == 0 || q.j0() == 0);
                        continue;
                    }
                    let l0 = q.l0.unwrap();
                    let lp = q.lambda_prime();
                    let ep = q.eta_prime();
                    let mut expected: Vec<Monomial> = (l0..=q.i0())
                        .map(|i| Monomial::new(i, 0, lp[i as usize]))
                        .chain((0..=q.j0()).map(|j| Monomial::new(0, j, ep[j as usize])))
                        .collect();
                    expected.sort_by(|x, y| y.cmp(x));
                    assert_eq!(q.in_q.gens(), expected.as_slice(), "({a},{b},{r})");
                    // l0 > r(b-a)/((a-1)(b-2)) - (a-3)/(a-1), cleared of denominators
                    let (a, b, r, l0) = (a as i64, b as i64, r as i64, l0 as i64);
                    assert!(
                        l0 * (a - 1) * (b - 2) > r * (b - a) - (a - 3) * (b - 2),
                        "l0 bound at ({a},{b},{r})"
                    );
                }
            }
        }
    }
}
