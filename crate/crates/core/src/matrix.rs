//! Dense integer matrices and Smith normal form over `Z`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Empty matrix with explicit shape, for maps out of or into a zero module.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let k = i * self.cols + j;
            self.data[k] = -core::mem::take(&mut self.data[k]);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let k = i * self.cols + j;
            self.data[k] = -core::mem::take(&mut self.data[k]);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Unimodular witnesses with `p * m * q = diag`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfTransforms {
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub invariant_factors: Vec<BigInt>,
    pub transforms: Option<SnfTransforms>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The full `rows x cols` diagonal matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

struct Reducer {
    m: IntMatrix,
    t: Option<SnfTransforms>,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(t) = &mut self.t {
            t.p.swap_rows(a, b);
            t.p_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(t) = &mut self.t {
            t.q.swap_cols(a, b);
            t.q_inv.swap_rows(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.m.add_row(dst, src, c);
        if let Some(t) = &mut self.t {
            t.p.add_row(dst, src, c);
            t.p_inv.add_col(src, dst, &-c);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.m.add_col(dst, src, c);
        if let Some(t) = &mut self.t {
            t.q.add_col(dst, src, c);
            t.q_inv.add_row(src, dst, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        if let Some(t) = &mut self.t {
            t.p.negate_row(i);
            t.p_inv.negate_col(i);
        }
    }

    /// Nonzero entry of least absolute value in the block `[from.., from..]`.
    fn smallest_in_block(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.m.rows {
            for j in from..self.m.cols {
                let v = &self.m[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.m[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears column `t` below the pivot. Returns false if a nonzero
    /// remainder was left (and moved into the pivot position).
    fn clear_column(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.m.rows {
            if self.m[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = self.m[(i, t)].div_rem(&self.m[(t, t)]);
            self.add_row(i, t, &-q);
            if !r.is_zero() {
                clean = false;
            }
        }
        if !clean {
            let best = (t..self.m.rows)
                .filter(|&i| !self.m[(i, t)].is_zero())
                .min_by(|&a, &b| self.m[(a, t)].abs().cmp(&self.m[(b, t)].abs()))
                .expect("pivot column is nonzero");
            self.swap_rows(t, best);
        }
        clean
    }

    fn clear_row(&mut self, t: usize) -> bool {
        let mut clean = true;
        for j in t + 1..self.m.cols {
            if self.m[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = self.m[(t, j)].div_rem(&self.m[(t, t)]);
            self.add_col(j, t, &-q);
            if !r.is_zero() {
                clean = false;
            }
        }
        if !clean {
            let best = (t..self.m.cols)
                .filter(|&j| !self.m[(t, j)].is_zero())
                .min_by(|&a, &b| self.m[(t, a)].abs().cmp(&self.m[(t, b)].abs()))
                .expect("pivot row is nonzero");
            self.swap_cols(t, best);
        }
        clean
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut factors = Vec::new();
        let steps = self.m.rows.min(self.m.cols);
        for t in 0..steps {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if !self.clear_column(t) {
                    continue;
                }
                if !self.clear_row(t) {
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let pivot = self.m[(t, t)].clone();
                let offender = (t + 1..self.m.rows).find(|&i| {
                    (t + 1..self.m.cols).any(|j| !self.m[(i, j)].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.m[(t, t)].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.m[(t, t)].clone());
        }
        factors
    }
}

/// Smith normal form by pivoting on the entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    snf_impl(m, false)
}

/// Smith normal form together with `p`, `q` and their inverses.
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    snf_impl(m, true)
}

fn snf_impl(m: &IntMatrix, with_transforms: bool) -> SmithForm {
    let t = with_transforms.then(|| SnfTransforms {
        p: IntMatrix::identity(m.rows),
        p_inv: IntMatrix::identity(m.rows),
        q: IntMatrix::identity(m.cols),
        q_inv: IntMatrix::identity(m.cols),
    });
    let mut r = Reducer { m: m.clone(), t };
    let invariant_factors = r.run();
    SmithForm {
        rows: m.rows,
        cols: m.cols,
        invariant_factors,
        transforms: r.t,
    }
}
