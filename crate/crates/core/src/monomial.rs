//! Monomials and monomial ideals in `k[x, y, z]` with `x > y > z` lex.

use std::cmp::Reverse;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `x^x y^y z^z`. The derived ordering compares `(x, y, z)` lexicographically,
/// which is exactly lex order with `x > y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0, z: 0 };

    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial { x, y, z }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }

    pub fn exponents(&self) -> [u32; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_exponents(e: [u32; 3]) -> Self {
        Monomial::new(e[0], e[1], e[2])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y && self.z <= other.z
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.x.max(other.x),
            self.y.max(other.y),
            self.z.max(other.z),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.x.min(other.x),
            self.y.min(other.y),
            self.z.min(other.z),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    /// `self / gcd(self, other)`: componentwise truncated subtraction.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.x.saturating_sub(other.x),
            self.y.saturating_sub(other.y),
            self.z.saturating_sub(other.z),
        )
    }

    pub fn swap_xy(&self) -> Monomial {
        Monomial::new(self.y, self.x, self.z)
    }

    /// All monomials of degree `d`, lex-descending (`x^d` first, `z^d` last).
    pub fn all_of_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
        for x in (0..=d).rev() {
            for y in (0..=d - x).rev() {
                out.push(Monomial::new(x, y, d - x - y));
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(3);
        for (name, e) in [("x", self.x), ("y", self.y), ("z", self.z)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Number of monomials of degree `d` in three variables, `C(d+2, 2)`.
pub fn monomial_count(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

/// `C(n + 2, 2)` for a possibly negative `n`, zero when `n < 0`.
pub fn binom2_shifted(n: i64) -> i64 {
    if n < 0 {
        0
    } else {
        (n + 1) * (n + 2) / 2
    }
}

/// Minimal monomial generators, stored lex-descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero() -> Self {
        MonomialIdeal { gens: Vec::new() }
    }

    pub fn unit() -> Self {
        MonomialIdeal {
            gens: vec![Monomial::ONE],
        }
    }

    /// The divisibility-minimal elements of `ms`.
    pub fn minimalize<I: IntoIterator<Item = Monomial>>(ms: I) -> Self {
        let mut all: Vec<Monomial> = ms.into_iter().collect();
        // Sorting by degree first means a divisor is always seen before
        // anything it divides.
        all.sort_by_key(|m| (m.degree(), Reverse(*m)));
        all.dedup();
        let mut gens: Vec<Monomial> = Vec::new();
        for m in all {
            if !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        gens.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { gens }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.contains(&Monomial::ONE)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::minimalize(self.gens.iter().chain(other.gens.iter()).copied())
    }

    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::minimalize(self.gens.iter().map(|g| g.colon(m)))
    }

    pub fn swap_xy(&self) -> MonomialIdeal {
        MonomialIdeal::minimalize(self.gens.iter().map(Monomial::swap_xy))
    }

    /// `dim (S/I)_d` by enumerating the degree-`d` monomials.
    pub fn hilbert_function(&self, d: u32) -> usize {
        Monomial::all_of_degree(d)
            .iter()
            .filter(|m| !self.contains(m))
            .count()
    }

    /// Contains a pure power of each variable.
    pub fn is_artinian(&self) -> bool {
        let has = |f: fn(&Monomial) -> bool| self.gens.iter().any(f);
        has(|m| m.y == 0 && m.z == 0)
            && has(|m| m.x == 0 && m.z == 0)
            && has(|m| m.x == 0 && m.y == 0)
    }

    /// Largest `d` with `(S/I)_d != 0`.
    pub fn max_socle_degree(&self) -> Result<u32> {
        if !self.is_artinian() {
            return Err(Error::NotArtinian);
        }
        if self.is_unit() {
            return Err(Error::TrivialIdeal);
        }
        let pure = |f: fn(&Monomial) -> Option<u32>| self.gens.iter().filter_map(f).min().unwrap();
        let bound = pure(|m| (m.y == 0 && m.z == 0).then_some(m.x))
            + pure(|m| (m.x == 0 && m.z == 0).then_some(m.y))
            + pure(|m| (m.x == 0 && m.y == 0).then_some(m.z));
        (0..=bound)
            .rev()
            .find(|&d| self.hilbert_function(d) != 0)
            .ok_or(Error::TrivialIdeal)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}
