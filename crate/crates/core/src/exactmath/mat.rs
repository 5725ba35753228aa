//! Dense exact matrices and Gauss-Jordan elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde::Serialize;

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of solving `A X = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Inconsistent,
    /// `particular` is one solution (free variables set to zero); the general
    /// solution adds any combination of the `nullspace` vectors to each column.
    Solved { particular: Mat, nullspace: Vec<Vec<Scalar>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanRelation {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpanComparison {
    pub relation: SpanRelation,
    pub dim_u: usize,
    pub dim_w: usize,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Build from rows; every row must have the same length. `cols` is only
    /// consulted when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Mat> {
        let n = rows.len();
        let c = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(n * c);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != c {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {c}", r.len())));
            }
            data.extend(r);
        }
        Ok(Mat { rows: n, cols: c, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| Scalar::from_int(v))).collect();
        Mat { rows: rows.len(), cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// A single column.
    pub fn column(v: Vec<Scalar>) -> Mat {
        Mat { rows: v.len(), cols: 1, data: v }
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

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() })
            })
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn checked_mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Kronecker product; `(A ⊗ B)[(i,k),(j,l)] = A[i][j] B[k][l]` with the
    /// first factor's index varying slowest.
    pub fn kron(&self, rhs: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Mat) -> Result<Mat> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!("hstack of {} and {} rows", self.rows, rhs.rows)));
        }
        Ok(Mat::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let out = Mat { rows: self.rows, cols: self.cols, data: rows.into_iter().flatten().collect() };
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical nullspace basis: one vector per free column, with a 1 in that
    /// column and zeros in every other free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots, self.cols)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        match solve(self, &Mat::identity(self.rows))? {
            SolveResult::Solved { particular, nullspace } if nullspace.is_empty() => Ok(particular),
            _ => Err(Error::DivisionByZero),
        }
    }

    /// Characteristic polynomial `det(xI - A)`, lowest degree first, monic.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        // Faddeev-LeVerrier
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Mat::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self * &m;
            let tr = (0..n).fold(Scalar::zero(), |acc, i| &acc + &am[(i, i)]);
            let c = &(-tr) * &Scalar::from_ratio(1, k as i64);
            coeffs[n - k] = c;
        }
        coeffs
    }
}

/// In-place Gauss-Jordan elimination on a list of rows of width `cols`;
/// returns the pivot columns. Rows become the reduced echelon form.
pub fn rref_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        for &j in &support {
            rows[r][j] = &rows[r][j] * &inv;
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        for other in before.iter_mut().chain(after.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for &j in &support {
                let t = &f * &pivot_row[j];
                other[j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn nullspace_from_rref(r: &Mat, pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, f)];
            }
            v
        })
        .collect()
}

/// Solve `A X = B` exactly.
pub fn solve(a: &Mat, b: &Mat) -> Result<SolveResult> {
    if a.rows != b.rows {
        return Err(Error::Shape(format!("A has {} rows but B has {}", a.rows, b.rows)));
    }
    let aug = a.hstack(b)?;
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= a.cols) {
        return Ok(SolveResult::Inconsistent);
    }
    let mut particular = Mat::zeros(a.cols, b.cols);
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            particular[(p, j)] = r[(i, a.cols + j)].clone();
        }
    }
    let left = Mat::from_fn(a.rows, a.cols, |i, j| r[(i, j)].clone());
    let nullspace = nullspace_from_rref(&left, &pivots, a.cols);
    Ok(SolveResult::Solved { particular, nullspace })
}

/// Echelon basis of the span of `vectors` (all of length `len`).
pub fn span_basis(vectors: &[Vec<Scalar>], len: usize) -> Vec<Vec<Scalar>> {
    let mut rows = vectors.to_vec();
    let rank = rref_rows(&mut rows, len).len();
    rows.truncate(rank);
    rows
}

pub fn span_rank(vectors: &[Vec<Scalar>], len: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref_rows(&mut rows, len).len()
}

/// Whether `v` lies in the row span of the echelon basis `basis`.
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let len = v.len();
    let mut rows = basis.to_vec();
    let r0 = rref_rows(&mut rows, len).len();
    rows.truncate(r0);
    rows.push(v.to_vec());
    rref_rows(&mut rows, len).len() == r0
}

/// Compare the spans of two families of equally shaped matrices by exact rank
/// tests on their vectorizations.
pub fn span_compare(u: &[Mat], w: &[Mat]) -> Result<SpanComparison> {
    let shape = u.first().or(w.first()).map(|m| (m.rows, m.cols)).unwrap_or((0, 0));
    for m in u.iter().chain(w) {
        if (m.rows, m.cols) != shape {
            return Err(Error::Shape(format!(
                "matrix {}x{} in a family of {}x{}",
                m.rows, m.cols, shape.0, shape.1
            )));
        }
    }
    let len = shape.0 * shape.1;
    let uv: Vec<Vec<Scalar>> = u.iter().map(|m| m.data.clone()).collect();
    let wv: Vec<Vec<Scalar>> = w.iter().map(|m| m.data.clone()).collect();
    let dim_u = span_rank(&uv, len);
    let dim_w = span_rank(&wv, len);
    let joint: Vec<Vec<Scalar>> = uv.into_iter().chain(wv).collect();
    let dim_joint = span_rank(&joint, len);
    let relation = match (dim_joint == dim_w, dim_joint == dim_u) {
        (true, true) => SpanRelation::Equal,
        (true, false) => SpanRelation::Subset,
        (false, true) => SpanRelation::Superset,
        (false, false) => SpanRelation::Incomparable,
    };
    Ok(SpanComparison { relation, dim_u, dim_w })
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).unwrap()
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.checked_sub(rhs).unwrap()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let r = solve(&Mat::identity(2), &Mat::column(ints(&[1, 2]))).unwrap();
        assert_eq!(
            r,
            SolveResult::Solved { particular: Mat::column(ints(&[1, 2])), nullspace: vec![] }
        );
    }

    #[test]
    fn solve_zero_system() {
        match solve(&Mat::zeros(2, 2), &Mat::zeros(2, 1)).unwrap() {
            SolveResult::Solved { nullspace, .. } => assert_eq!(nullspace.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = Mat::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(a.nullspace(), vec![ints(&[-1, 1])]);
    }

    #[test]
    fn inconsistent_system() {
        let a = Mat::from_ints(&[&[1, 1], &[2, 2]]);
        let b = Mat::column(ints(&[1, 3]));
        assert_eq!(solve(&a, &b).unwrap(), SolveResult::Inconsistent);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        assert!(solve(&Mat::identity(2), &Mat::zeros(3, 1)).is_err());
        assert!(Mat::identity(2).checked_mul(&Mat::identity(3)).is_err());
    }

    #[test]
    fn span_relations() {
        let e = |i: usize, j: usize| {
            let mut m = Mat::zeros(2, 2);
            m[(i, j)] = Scalar::one();
            m
        };
        let i2 = Mat::identity(2);
        let c = span_compare(std::slice::from_ref(&i2), &[i2.clone(), i2.scale(&Scalar::from_int(2))]).unwrap();
        assert_eq!((c.relation, c.dim_u, c.dim_w), (SpanRelation::Equal, 1, 1));
        let c = span_compare(&[e(0, 0)], &[e(0, 0), e(1, 1)]).unwrap();
        assert_eq!((c.relation, c.dim_u, c.dim_w), (SpanRelation::Subset, 1, 2));
        let c = span_compare(&[e(0, 1)], &[e(1, 0)]).unwrap();
        assert_eq!((c.relation, c.dim_u, c.dim_w), (SpanRelation::Incomparable, 1, 1));
        assert!(span_compare(&[e(0, 1)], &[Mat::identity(3)]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Mat::from_ints(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(Mat::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn charpoly_of_companion() {
        // x^2 - 3x + 2 has companion [[0,-2],[1,3]]
        let a = Mat::from_ints(&[&[0, -2], &[1, 3]]);
        assert_eq!(a.charpoly(), ints(&[2, -3, 1]));
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = Mat::from_ints(&[&[1, 2]]);
        let b = Mat::from_ints(&[&[0], &[1]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, Mat::from_ints(&[&[0, 0], &[1, 2]]));
    }
}
