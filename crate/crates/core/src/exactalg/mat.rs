use std::fmt;

use super::field::FieldSpec;
use super::scalar::Scalar;
use crate::error::{shape, Error, Result};

/// Dense row-major matrix over one exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Mat::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: Mat,
}

impl Mat {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for s in &data {
            field.ensure_same(&s.field())?;
        }
        Ok(Mat { field, rows, cols, data })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = f(r, c);
                assert_eq!(s.field(), field, "entry from a different field");
                data.push(s);
            }
        }
        Mat { field, rows, cols, data }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        Mat::from_fn(field, n, n, |r, c| Scalar::from_i64(field, (r == c) as i64))
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Mat {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat::from_fn(field, rows.len(), cols, |r, c| Scalar::from_i64(field, rows[r][c]))
    }

    /// Builds a matrix from rows of scalars. The field is taken from the
    /// entries, or supplied explicitly for empty input.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(shape("ragged rows"));
        }
        let n = rows.len();
        Mat::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        assert_eq!(s.field(), self.field, "entry from a different field");
        self.data[r * self.cols + c] = s;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Mat {
        Mat::from_fn(self.field, self.rows, 1, |r, _| self.get(r, c).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, cols.len(), |r, k| self.get(r, cols[k]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(self.field, rows.len(), self.cols, |k, c| self.get(rows[k], c).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, o: &Mat) -> Result<Mat> {
        self.field.ensure_same(&o.field)?;
        if self.cols != o.rows {
            return Err(shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let idx = r * o.cols + c;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, o: &Mat, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat> {
        self.field.ensure_same(&o.field)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| op(a, b)).collect();
        Ok(Mat { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Mat) -> Result<Mat> {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Mat) -> Result<Mat> {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let data = self.data.iter().map(|a| a * s).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|a| -a).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation `[self | o]`.
    pub fn hstack(&self, o: &Mat) -> Result<Mat> {
        self.field.ensure_same(&o.field)?;
        if self.rows != o.rows {
            return Err(shape("hstack row mismatch"));
        }
        let cols = self.cols + o.cols;
        Ok(Mat::from_fn(self.field, self.rows, cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                o.get(r, c - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, o: &Mat) -> Result<Mat> {
        self.field.ensure_same(&o.field)?;
        if self.cols != o.cols {
            return Err(shape("vstack column mismatch"));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Mat { field: self.field, rows: self.rows + o.rows, cols: self.cols, data })
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(shape("trace of a non-square matrix"));
        }
        let mut acc = Scalar::zero(self.field);
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Result<Mat> {
        if !self.is_square() {
            return Err(shape("power of a non-square matrix"));
        }
        let mut acc = Mat::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row-echelon form by Gauss–Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.data[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = &factor * m.get(row, c);
                    if !sub.is_zero() {
                        let idx = r * m.cols + c;
                        m.data[idx] = &m.data[idx] - &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { rank: pivots.len(), pivots, reduced: m }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space, one basis vector per column.
    pub fn kernel_basis(&self) -> Mat {
        let Rref { rank, pivots, reduced } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, Scalar::one(self.field));
            for (r, &p) in pivots.iter().enumerate().take(rank) {
                k.set(p, j, -reduced.get(r, f));
            }
        }
        k
    }

    /// Canonical basis of the column space: the columns of the
    /// column-reduced echelon form.
    pub fn image_basis(&self) -> Mat {
        let t = self.transpose().rref();
        let rows: Vec<usize> = (0..t.rank).collect();
        t.reduced.select_rows(&rows).transpose()
    }

    /// One solution `x` of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        self.field.ensure_same(&b.field)?;
        if b.rows != self.rows {
            return Err(shape(format!(
                "right-hand side has {} rows, matrix has {}",
                b.rows, self.rows
            )));
        }
        let aug = self.hstack(b)?;
        let Rref { pivots, reduced, .. } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, reduced.get(r, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Mat>> {
        if !self.is_square() {
            return Err(shape("inverse of a non-square matrix"));
        }
        if self.rank() < self.rows {
            return Ok(None);
        }
        self.solve(&Mat::identity(self.field, self.rows))
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(shape("determinant of a non-square matrix"));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one(self.field);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                let factor = m.get(r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = &factor * m.get(col, c);
                    let idx = r * n + c;
                    m.data[idx] = &m.data[idx] - &sub;
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial det(t·I − self), lowest coefficient first,
    /// via reduction to Hessenberg form (valid over every field).
    pub fn charpoly(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(shape("characteristic polynomial of a non-square matrix"));
        }
        let n = self.rows;
        let f = self.field;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t_inv = h.get(m, m - 1).inv()?;
            for i in m + 1..n {
                let u = h.get(i, m - 1) * &t_inv;
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = h.get(i, c) - &(&u * h.get(m, c));
                    h.data[i * n + c] = v;
                }
                for r in 0..n {
                    let v = h.get(r, m) + &(&u * h.get(r, i));
                    h.data[r * n + m] = v;
                }
            }
        }
        // p_0 = 1; p_k = (t - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<Scalar>> = vec![vec![Scalar::one(f)]];
        for k in 1..=n {
            let prev = &polys[k - 1];
            let mut p = vec![Scalar::zero(f); k + 1];
            for (d, c) in prev.iter().enumerate() {
                p[d + 1] = &p[d + 1] + c;
                p[d] = &p[d] - &(c * h.get(k - 1, k - 1));
            }
            let mut t = Scalar::one(f);
            for i in (1..k).rev() {
                t = &t * h.get(i, i - 1);
                let coef = &t * h.get(i - 1, k - 1);
                if coef.is_zero() {
                    continue;
                }
                for (d, c) in polys[i - 1].iter().enumerate() {
                    p[d] = &p[d] - &(&coef * c);
                }
            }
            polys.push(p);
        }
        Ok(polys.pop().unwrap())
    }

    /// Integer entries, if the matrix is rational with integral entries.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|s| {
                        let q = s.rational_part().ok()?;
                        if q.is_integer() {
                            q.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|r| serde_json::Value::Array(self.row(r).iter().map(Scalar::to_json).collect()))
                .collect(),
        )
    }

    /// Reads a matrix written as a list of rows. Empty matrices need explicit
    /// shape, which `rows`/`cols` supply.
    pub fn from_json(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        v: &serde_json::Value,
    ) -> Result<Mat> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("matrix must be a list of rows".into()))?;
        if rows * cols == 0 {
            return Ok(Mat::zeros(field, rows, cols));
        }
        if arr.len() != rows {
            return Err(shape(format!("expected {rows} rows, found {}", arr.len())));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in arr {
            let row = row.as_array().ok_or_else(|| Error::Parse("row must be a list".into()))?;
            if row.len() != cols {
                return Err(shape(format!("expected {cols} columns, found {}", row.len())));
            }
            for e in row {
                data.push(Scalar::from_json(field, e)?);
            }
        }
        Mat::new(field, rows, cols, data)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}; {}x{}](", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, ")")
    }
}
