//! Dense complex operators on (tensor products of) truncated Fock spaces.
//!
//! Storage is row-major. The product kernel skips exact zeros in the left
//! factor, which makes the band-structured operators of this crate cheap to
//! multiply while keeping the arithmetic of every surviving term identical to
//! the dense product.

use std::ops::{Add, Mul, Sub};

use crate::exec::{self, ExecPolicy};
use crate::qscalars::{C64, ONE, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct Op {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Op {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.data[i * n + i] = ONE;
        }
        out
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut out = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            out.data[i * n + i] = d;
        }
        out
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != ZERO)
            .map(move |(idx, &v)| (idx / self.cols, idx % self.cols, v))
    }

    pub fn matmul(&self, rhs: &Op) -> Op {
        self.matmul_with(rhs, ExecPolicy::default())
    }

    pub fn matmul_with(&self, rhs: &Op, policy: ExecPolicy) -> Op {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Op::zeros(self.rows, rhs.cols);
        let n = rhs.cols;
        exec::for_each_row(policy, &mut out.data, n, |i, out_row| {
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        });
        out
    }

    /// Product of a sequence of square operators, left to right.
    pub fn product<'a>(ops: impl IntoIterator<Item = &'a Op>, dim: usize) -> Op {
        ops.into_iter()
            .fold(Op::identity(dim), |acc, op| acc.matmul(op))
    }

    pub fn pow(&self, k: u32) -> Op {
        assert!(self.is_square());
        (0..k).fold(Op::identity(self.rows), |acc, _| acc.matmul(self))
    }

    pub fn scale(&self, s: C64) -> Op {
        Op {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: C64, other: &Op) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn kron(&self, rhs: &Op) -> Op {
        self.kron_with(rhs, ExecPolicy::default())
    }

    pub fn kron_with(&self, rhs: &Op, policy: ExecPolicy) -> Op {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Op::zeros(rows, cols);
        exec::for_each_row(policy, &mut out.data, cols, |i, out_row| {
            let (i1, i2) = (i / rhs.rows, i % rhs.rows);
            for (j1, &a) in self.row(i1).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let base = j1 * rhs.cols;
                for (j2, &b) in rhs.row(i2).iter().enumerate() {
                    out_row[base + j2] = a * b;
                }
            }
        });
        out
    }

    pub fn kron_all(ops: &[&Op]) -> Op {
        let (first, rest) = ops.split_first().expect("kron of an empty list");
        rest.iter().fold((*first).clone(), |acc, op| acc.kron(op))
    }

    pub fn commutator(a: &Op, b: &Op) -> Op {
        &a.matmul(b) - &b.matmul(a)
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.nonzeros().all(|(i, j, _)| i == j)
    }

    /// Apply `f` entrywise to the diagonal of a diagonal operator.
    pub fn map_diagonal(&self, f: impl Fn(C64) -> C64) -> Op {
        debug_assert!(self.is_diagonal());
        Op::from_diag(&self.diagonal().into_iter().map(f).collect::<Vec<_>>())
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Op) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Op {
        Op::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Restriction to the square block on `idx`.
    pub fn block(&self, idx: &[usize]) -> Op {
        self.submatrix(idx, idx)
    }

    /// Conjugate by a permutation of tensor legs. `perm[new_leg] = old_leg`.
    pub fn permute_legs(&self, dims: &[usize], perm: &[usize]) -> Op {
        assert!(self.is_square());
        let shape = Shape::new(dims);
        assert_eq!(shape.size(), self.rows);
        let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let new_shape = Shape::new(&new_dims);
        let map = |idx: usize| {
            let old = shape.decode(idx);
            let new: Vec<usize> = perm.iter().map(|&p| old[p]).collect();
            new_shape.encode(&new)
        };
        let mut out = Op::zeros(self.rows, self.cols);
        for (i, j, v) in self.nonzeros() {
            out.set(map(i), map(j), v);
        }
        out
    }

    /// Embed an operator acting on `legs` (in order) into the full tensor
    /// product with factor dimensions `dims`, acting as identity elsewhere.
    pub fn embed(&self, legs: &[usize], dims: &[usize]) -> Op {
        let sub: Vec<usize> = legs.iter().map(|&l| dims[l]).collect();
        let sub_shape = Shape::new(&sub);
        assert_eq!(sub_shape.size(), self.rows);
        let shape = Shape::new(dims);
        let others: Vec<usize> = (0..dims.len()).filter(|l| !legs.contains(l)).collect();
        let other_dims: Vec<usize> = others.iter().map(|&l| dims[l]).collect();
        let other_shape = Shape::new(&other_dims);
        let mut out = Op::zeros(shape.size(), shape.size());
        let mut full_i = vec![0; dims.len()];
        let mut full_j = vec![0; dims.len()];
        for (i, j, v) in self.nonzeros() {
            let si = sub_shape.decode(i);
            let sj = sub_shape.decode(j);
            for (pos, &l) in legs.iter().enumerate() {
                full_i[l] = si[pos];
                full_j[l] = sj[pos];
            }
            for o in 0..other_shape.size() {
                let so = other_shape.decode(o);
                for (pos, &l) in others.iter().enumerate() {
                    full_i[l] = so[pos];
                    full_j[l] = so[pos];
                }
                out.set(shape.encode(&full_i), shape.encode(&full_j), v);
            }
        }
        out
    }
}

impl Add for &Op {
    type Output = Op;
    fn add(self, rhs: &Op) -> Op {
        let mut out = self.clone();
        out.add_scaled(ONE, rhs);
        out
    }
}

impl Sub for &Op {
    type Output = Op;
    fn sub(self, rhs: &Op) -> Op {
        let mut out = self.clone();
        out.add_scaled(-ONE, rhs);
        out
    }
}

impl Mul for &Op {
    type Output = Op;
    fn mul(self, rhs: &Op) -> Op {
        self.matmul(rhs)
    }
}

/// Row-major multi-index bookkeeping for tensor products.
#[derive(Debug, Clone)]
pub struct Shape {
    dims: Vec<usize>,
}

impl Shape {
    pub fn new(dims: &[usize]) -> Self {
        Self {
            dims: dims.to_vec(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn encode(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn decode(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }

    /// Flat indices of the states whose every leg index is `<= max_index`,
    /// in increasing order.
    pub fn box_indices(&self, max_index: usize) -> Vec<usize> {
        (0..self.size())
            .filter(|&flat| self.decode(flat).iter().all(|&n| n <= max_index))
            .collect()
    }
}
