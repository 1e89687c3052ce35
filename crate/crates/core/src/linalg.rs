//! Dense exact rational matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Always `p/q`, including integers (`2/1`).
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// `x^n` for signed `n`; `x` must be nonzero when `n < 0`.
pub fn pow_q(x: &Q, n: i64) -> Q {
    let mut acc = Q::one();
    for _ in 0..n.unsigned_abs() {
        acc *= x;
    }
    if n < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Exact rational square root, if one exists.
pub fn sqrt_q(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_q).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Q>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        RationalMatrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Q] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Q> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Q) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![Q::zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(r)) {
                *o += a * b;
            }
        }
        out
    }

    /// Kronecker product; `self` indexes the slow coordinate.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |r, c| {
            let a = &self[(r / other.rows, c / other.cols)];
            if a.is_zero() {
                Q::zero()
            } else {
                a * &other[(r % other.rows, c % other.cols)]
            }
        })
    }

    fn row_reduce(&self, rhs: Option<&Self>) -> (Q, Option<Self>) {
        assert!(self.is_square(), "row reduction needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.cloned();
        let mut det = Q::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return (Q::zero(), None);
            };
            if piv != col {
                a.swap_rows(piv, col);
                if let Some(b) = b.as_mut() {
                    b.swap_rows(piv, col);
                }
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            let inv = p.recip();
            a.scale_row(col, &inv);
            if let Some(b) = b.as_mut() {
                b.scale_row(col, &inv);
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                a.sub_row_multiple(r, col, &f);
                if let Some(b) = b.as_mut() {
                    b.sub_row_multiple(r, col, &f);
                }
            }
        }
        (det, b)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Q) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x *= s;
        }
    }

    /// `row[r] -= f * row[src]`.
    fn sub_row_multiple(&mut self, r: usize, src: usize, f: &Q) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * f;
            if !v.is_zero() {
                self.data[r * self.cols + c] -= v;
            }
        }
    }

    pub fn determinant(&self) -> Q {
        self.row_reduce(None).0
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let id = Self::identity(self.rows);
        let (det, inv) = self.row_reduce(Some(&id));
        if det.is_zero() {
            None
        } else {
            inv
        }
    }

    /// Leading principal minors of orders `1..=n`.
    pub fn leading_minors(&self) -> Vec<Q> {
        (1..=self.rows.min(self.cols))
            .map(|m| Self::from_fn(m, m, |r, c| self[(r, c)].clone()).determinant())
            .collect()
    }

    /// Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        self.is_square() && *self == self.transpose() && self.leading_minors().iter().all(|m| m.is_positive())
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(fmt_q).collect())
            .collect()
    }
}

/// Row-major lists of `p/q` strings.
impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Q;

    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}
