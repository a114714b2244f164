//! Dense matrices over `Rat`, `UniPoly` or `RatFun`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rat::Rat;
use crate::ratfun::RatFun;

/// Commutative integral domain with exact division where it is known to be exact.
pub trait Ring: Clone + PartialEq + Zero + One + fmt::Debug {
    fn add_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn mul_r(&self, o: &Self) -> Self;
    fn neg_r(&self) -> Self;
    /// `self / o` when `o` divides `self`.
    fn div_exact(&self, o: &Self) -> Self;
}

impl Ring for Rat {
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl Ring for UniPoly {
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o)
    }
}

impl Ring for RatFun {
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rat>;

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn column(v: Vec<T>) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn row(v: Vec<T>) -> Self {
        Matrix {
            rows: 1,
            cols: v.len(),
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn col_vec(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix add shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add_r(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sub shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub_r(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg_r)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul_r(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add_r(&a.mul_r(b));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add_r(&self[(i, i)]))
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut prev = T::one();
        let mut sign = false;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return T::zero();
                };
                a.swap_rows(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)]
                        .mul_r(&a[(k, k)])
                        .sub_r(&a[(i, k)].mul_r(&a[(k, j)]));
                    a[(i, j)] = v.div_exact(&prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            d.neg_r()
        } else {
            d
        }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for c in 0..self.cols {
            self.data.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Self {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for r in (0..n).filter(|&r| r != skip_r) {
            for c in (0..n).filter(|&c| c != skip_c) {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix {
            rows: n - 1,
            cols: n - 1,
            data,
        }
    }

    /// Classical adjoint: `M * adj(M) = det(M) * Id`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.clone();
        }
        if n == 1 {
            return Self::identity(1);
        }
        Self::from_fn(n, n, |r, c| {
            let m = self.minor(c, r).det();
            if (r + c) % 2 == 1 {
                m.neg_r()
            } else {
                m
            }
        })
    }
}

impl Matrix<Rat> {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rat::rat(v)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    /// `t - s` applied entrywise to `self` viewed as constants: returns `self - t * Id` over `UniPoly`.
    pub fn minus_var(&self) -> Matrix<UniPoly> {
        assert!(self.is_square());
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            let a = UniPoly::constant(self[(r, c)].clone());
            if r == c {
                &a - &UniPoly::var()
            } else {
                a
            }
        })
    }

    /// Monic characteristic polynomial `det(t * Id - self)`.
    pub fn charpoly(&self) -> UniPoly {
        let d = self.minus_var().det();
        if self.rows % 2 == 1 {
            -d
        } else {
            d
        }
    }

    pub fn to_ratfun(&self) -> Matrix<RatFun> {
        self.map(|a| RatFun::constant(a.clone()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let inv = Rat::one() / &a[(row, col)];
            for c in col..a.cols {
                a[(row, c)] = &a[(row, c)] * &inv;
            }
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for c in col..a.cols {
                        let v = &a[(row, c)] * &f;
                        a[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self * v = b` (free variables set to zero), if any.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![Rat::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r[(i, self.cols)].clone();
        }
        Some(v)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).fold(Rat::zero(), |acc, c| acc + &self[(r, c)] * &v[c]))
            .collect()
    }
}

impl Matrix<RatFun> {
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let inv = d.inverse().ok_or(Error::Singular)?;
        Ok(self.adjugate().scale(&inv))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|v| format!("{v:?}"))
                .collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dot product of a row vector and a column vector.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot product length");
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn det_and_adjugate_rational() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), rat(18));
        let lhs = m.mul(&m.adjugate());
        assert_eq!(lhs, Matrix::identity(3).scale(&rat(18)));
    }

    #[test]
    fn det_needs_pivoting() {
        let m = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), rat(-1));
        let s = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), rat(0));
    }

    #[test]
    fn charpoly_monic() {
        let m = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(m.charpoly(), UniPoly::from_ints(&[0, 0, 1]));
        let one = Matrix::from_ints(&[&[3]]);
        assert_eq!(one.charpoly(), UniPoly::from_ints(&[-3, 1]));
    }

    #[test]
    fn kernel_and_solve() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
        let s = m.solve(&[rat(1), rat(2)]).unwrap();
        assert_eq!(m.apply(&s), vec![rat(1), rat(2)]);
        assert!(m.solve(&[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn rational_inverse() {
        let m = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            m.inverse().unwrap(),
            Matrix::from_ints(&[&[1, -1], &[0, 1]])
        );
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn ratfun_inverse() {
        let m = Matrix::from_ints(&[&[0, 1], &[0, 0]])
            .minus_var()
            .map(|p| RatFun::from_poly(p.clone()));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }
}
