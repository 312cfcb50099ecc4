//! Homogeneous polynomials as coefficient vectors over degree-`d` monomials,
//! and the linear forms whose powers generate every ideal in this crate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::linalg::{integerize, rat, Rational};
use crate::monomial::Monomial;

/// `A x + B y + C z`, kept canonical: primitive integer coefficients with the
/// first nonzero one positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: [BigInt; 3],
}

impl LinearForm {
    /// `None` for the zero form.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Option<Self> {
        let ints = integerize(&[a, b, c]);
        let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        if g.is_zero() {
            return None;
        }
        let lead_negative = ints.iter().find(|v| !v.is_zero()).unwrap().is_negative();
        let sign = if lead_negative {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let coeffs = [0, 1, 2].map(|i| &ints[i] / &g * &sign);
        Some(LinearForm { coeffs })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Option<Self> {
        Self::new(rat(a), rat(b), rat(c))
    }

    /// The line through two affine points `(px, py)` and `(qx, qy)`,
    /// homogenized with `z` as the cone coordinate.
    pub fn through(p: &(Rational, Rational), q: &(Rational, Rational)) -> Option<Self> {
        // cross product of (px, py, 1) and (qx, qy, 1)
        let a = &p.1 - &q.1;
        let b = &q.0 - &p.0;
        let c = &p.0 * &q.1 - &p.1 * &q.0;
        Self::new(a, b, c)
    }

    pub fn coeffs(&self) -> &[BigInt; 3] {
        &self.coeffs
    }

    pub fn rational_coeffs(&self) -> [Rational; 3] {
        self.coeffs.clone().map(Rational::from_integer)
    }

    /// Composes with a coordinate change: returns `l ∘ m` where `m` maps new
    /// coordinates to old ones (row vector times matrix).
    pub fn pull_back(&self, m: &[[Rational; 3]; 3]) -> Option<Self> {
        let l = self.rational_coeffs();
        let col = |j: usize| (0..3).map(|i| &l[i] * &m[i][j]).sum::<Rational>();
        Self::new(col(0), col(1), col(2))
    }

    /// Multinomial expansion of `self^e`.
    pub fn power(&self, e: u32) -> Vec<(Monomial, BigInt)> {
        let [a, b, c] = &self.coeffs;
        let mut out = Vec::new();
        let binom = binomial_row(e);
        for i in (0..=e).rev() {
            let bi = &binom[i as usize];
            let ai = a.pow(i);
            let rest = e - i;
            let brow = binomial_row(rest);
            for j in (0..=rest).rev() {
                let k = rest - j;
                let coeff = bi * &brow[j as usize] * &ai * b.pow(j) * c.pow(k);
                if !coeff.is_zero() {
                    out.push((Monomial::new(i, j, k), coeff));
                }
            }
        }
        out
    }

    /// Evaluates at a point in homogeneous coordinates.
    pub fn eval(&self, p: &[Rational; 3]) -> Rational {
        (0..3)
            .map(|i| Rational::from_integer(self.coeffs[i].clone()) * &p[i])
            .sum()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (c, v) in self.coeffs.iter().zip(["x", "y", "z"]) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            s.push_str(v);
        }
        f.write_str(&s)
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Degree-`d` monomials of `k[x, y, z]` (or a sub-ring) with a lookup index.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    /// All monomials of degree `d`, lex-descending.
    pub fn full(d: u32) -> Self {
        Self::from_monos(Monomial::all_of_degree(d))
    }

    /// Degree-`d` monomials in `x, z` only, lex-descending (`x^d, ..., z^d`).
    pub fn xz(d: u32) -> Self {
        Self::from_monos((0..=d).map(|j| Monomial::new(d - j, 0, j)).collect())
    }

    fn from_monos(monos: Vec<Monomial>) -> Self {
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        DegreeBasis { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monos(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coefficient vector of `mu * sum(terms)`; panics if a product falls
    /// outside the basis.
    pub fn vector_of_product(&self, terms: &[(Monomial, BigInt)], mu: &Monomial) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in terms {
            let idx = self
                .index_of(&m.mul(mu))
                .expect("product lies outside the degree basis");
            v[idx] += Rational::from_integer(c.clone());
        }
        v
    }

    pub fn vector_of_sparse(&self, p: &BTreeMap<Monomial, Rational>) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p {
            v[self.index_of(m).expect("monomial outside the degree basis")] += c;
        }
        v
    }
}
