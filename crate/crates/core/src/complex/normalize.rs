use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::poly::LinearForm;

pub type Mat3 = [[Rational; 3]; 3];

/// Coordinates in which the totally interior edge `v1 v2` of a one-edge
/// complex has form `z`, `v1 = [0, 1, 0]`, `v2 = [1, 0, 0]`, the other
/// edges at `v1` are `x + c z` and those at `v2` are `y + c z`, with `0`
/// among the slopes `c` at each end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneEdgeNormalization {
    /// Vertex indices in the input complex; `v1` has the fewer slopes.
    pub v1: usize,
    pub v2: usize,
    pub a: u32,
    pub b: u32,
    /// Maps new coordinates to old; a form `l` pulls back to `l * to_old`.
    #[serde(serialize_with = "ser_mat")]
    pub to_old: Mat3,
    /// Maps old homogeneous points to new ones.
    #[serde(serialize_with = "ser_mat")]
    pub to_new: Mat3,
    /// `c` for each edge form `x + c z` at `v1`, ascending.
    #[serde(serialize_with = "ser_rats")]
    pub slopes1: Vec<Rational>,
    /// `c` for each edge form `y + c z` at `v2`, ascending.
    #[serde(serialize_with = "ser_rats")]
    pub slopes2: Vec<Rational>,
    pub epsilon_form: LinearForm,
}

fn ser_rats<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn ser_mat<S: Serializer>(m: &Mat3, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        m.iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>()),
    )
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn det3(m: &Mat3) -> Rational {
    let minor = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    (0..3).map(|j| &m[0][j] * minor(0, j)).sum()
}

/// Inverse by the adjugate; `None` when singular.
pub fn invert3(m: &Mat3) -> Option<Mat3> {
    let det = det3(m);
    if det.is_zero() {
        return None;
    }
    // cyclic index choice makes every cofactor sign +
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| cof(j, i) / &det)
    }))
}

#[cfg(test)]
fn apply(m: &Mat3, p: &[Rational; 3]) -> [Rational; 3] {
    std::array::from_fn(|i| (0..3).map(|k| &m[i][k] * &p[k]).sum())
}

fn homog(c: &SimplicialComplex, v: usize) -> [Rational; 3] {
    let (x, y) = &c.vertices()[v];
    [x.clone(), y.clone(), Rational::one()]
}

fn forms_at(c: &SimplicialComplex, v: usize) -> BTreeSet<LinearForm> {
    let p = &c.vertices()[v];
    c.neighbors(v)
        .into_iter()
        .map(|w| LinearForm::through(p, &c.vertices()[w]).expect("distinct vertices"))
        .collect()
}

pub fn normalize_one_edge(c: &SimplicialComplex) -> Result<OneEdgeNormalization> {
    let interior = c.interior_vertices();
    let totally: Vec<(usize, usize)> = c
        .interior_edges()
        .into_iter()
        .filter(|(u, v)| interior.contains(u) && interior.contains(v))
        .collect();
    if totally.len() != 1 {
        return Err(Error::NotOneEdge(totally.len()));
    }
    let (p, q) = totally[0];
    if let Some(&v) = interior.iter().find(|&&v| v != p && v != q) {
        return Err(Error::ExtraInteriorVertex(v));
    }
    let (fp, fq) = (forms_at(c, p), forms_at(c, q));
    let (v1, v2, f1, f2) = if fp.len() <= fq.len() {
        (p, q, fp, fq)
    } else {
        (q, p, fq, fp)
    };

    let eps = LinearForm::through(&c.vertices()[v1], &c.vertices()[v2]).expect("distinct vertices");
    let k = eps.coeffs().iter().position(|x| !x.is_zero()).unwrap();
    let mut e_k: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
    e_k[k] = Rational::one();
    let cols = [homog(c, v2), homog(c, v1), e_k];
    let m: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));

    // slope c of each pulled-back form; `var` is 0 for x + c z, 1 for y + c z
    let slopes =
        |forms: &BTreeSet<LinearForm>, var: usize, vertex: usize| -> Result<Vec<Rational>> {
            let mut out = Vec::new();
            for l in forms.iter().filter(|l| **l != eps) {
                let t = l.pull_back(&m).expect("invertible change of coordinates");
                let [a, b, cz] = t.rational_coeffs();
                let (lead, other) = if var == 0 { (a, b) } else { (b, a) };
                debug_assert!(other.is_zero(), "edge form must vanish at its vertex");
                if lead.is_zero() {
                    return Err(Error::SlopeClashAssumption { vertex });
                }
                out.push(cz / lead);
            }
            out.sort();
            Ok(out)
        };
    let raw1 = slopes(&f1, 0, v1)?;
    let raw2 = slopes(&f2, 1, v2)?;
    if raw1.is_empty() || raw2.is_empty() {
        return Err(Error::InvalidSlopeCount { got: 1, min: 3 });
    }

    // shear x -> x + s1 z, y -> y + s2 z so the smallest slope becomes 0
    let (s1, s2) = (-raw1[0].clone(), -raw2[0].clone());
    let shear: Mat3 = [
        [Rational::one(), Rational::zero(), s1.clone()],
        [Rational::zero(), Rational::one(), s2.clone()],
        [Rational::zero(), Rational::zero(), Rational::one()],
    ];
    let to_old = mat_mul(&m, &shear);
    let to_new = invert3(&to_old).expect("invertible change of coordinates");
    let slopes1: Vec<Rational> = raw1.into_iter().map(|x| x + &s1).collect();
    let slopes2: Vec<Rational> = raw2.into_iter().map(|x| x + &s2).collect();
    let epsilon_form = eps
        .pull_back(&to_old)
        .expect("invertible change of coordinates");
    Ok(OneEdgeNormalization {
        v1,
        v2,
        a: slopes1.len() as u32 + 1,
        b: slopes2.len() as u32 + 1,
        to_old,
        to_new,
        slopes1,
        slopes2,
        epsilon_form,
    })
}
