//! Exact dense linear algebra over the rationals.
//!
//! Rank and pivot extraction run a fraction-free elimination on integer
//! rows: each column of the input is scaled to integers first (which does
//! not change the column space), then eliminated with cross-multiplication
//! and content removal, so no intermediate ever leaves `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row);
        }
        RatMatrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Appends `v` as a new last column.
    pub fn with_column(&self, v: &[Rational]) -> Self {
        assert_eq!(v.len(), self.rows);
        let mut m = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            m.set(i, self.cols, v[i].clone());
        }
        m
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Integer rows of the transpose: row `j` is column `j` scaled by the lcm
    /// of its denominators.
    fn integer_columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols)
            .map(|j| {
                let col = self.column(j);
                integerize(&col)
            })
            .collect()
    }
}

/// Scales a rational vector by the lcm of its denominators.
pub fn integerize(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    v.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

fn remove_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v /= &g;
        }
    }
}

/// Fraction-free echelon pass over integer row vectors, scanning columns
/// left to right. Returns the pivot columns in ascending order.
fn echelon_pivot_columns(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let (head, tail) = rows.split_at_mut(top + 1);
        let pivot_row = &head[top];
        let support: Vec<usize> = (c + 1..ncols)
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let mut p_mul = &pivot_row[c] / &g;
            let mut f_mul = &row[c] / &g;
            if p_mul.is_negative() {
                p_mul = -p_mul;
                f_mul = -f_mul;
            }
            row[c] = BigInt::zero();
            if !p_mul.is_one() {
                for v in row[c + 1..].iter_mut() {
                    if !v.is_zero() {
                        *v *= &p_mul;
                    }
                }
            }
            for &j in &support {
                row[j] -= &f_mul * &pivot_row[j];
            }
            remove_content(&mut row[c + 1..]);
        }
        pivots.push(c);
        top += 1;
    }
    pivots
}

/// Exact rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    // Eliminate along whichever side is shorter.
    if m.rows <= m.cols {
        let rows: Vec<Vec<BigInt>> = (0..m.rows).map(|i| integerize(m.row(i))).collect();
        echelon_pivot_columns(rows, m.cols).len()
    } else {
        echelon_pivot_columns(m.integer_columns(), m.rows).len()
    }
}

/// Rows of `m` that carry a pivot when the column space is put in echelon
/// form with rows taken in their given order; equivalently the indices `p`
/// at which the rank of the first `p + 1` rows increases.
///
/// With rows indexed by monomials in descending monomial order this is the
/// set of leading monomials of the column span.
pub fn pivot_rows(m: &RatMatrix) -> Vec<usize> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    echelon_pivot_columns(m.integer_columns(), m.rows)
}

/// Whether `v` is a rational combination of the columns of `basis`.
pub fn in_column_span(basis: &RatMatrix, v: &[Rational]) -> bool {
    assert_eq!(v.len(), basis.rows, "vector length must equal basis rows");
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    rank(&basis.with_column(v)) == rank(basis)
}

/// Basis of `{ u : m u = 0 }` from a rational reduced row echelon form.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut top = 0;
    for c in 0..m.cols {
        if top == a.len() {
            break;
        }
        let Some(p) = (top..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(top, p);
        let inv = a[top][c].recip();
        for v in a[top].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[top].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == top || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivot_cols.push(c);
        top += 1;
    }
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut u = vec![Rational::zero(); m.cols];
            u[fc] = Rational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                u[pc] = -a[r][fc].clone();
            }
            u
        })
        .collect()
}
