//! Exact integer linear algebra: fraction-free (Bareiss) elimination for rank
//! and determinant, and exact matrix-polynomial evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::graph::Graph;

/// Dense row-major matrix of big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        IntMatrix { rows, cols, data: values.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// `A − shift·I` for the adjacency matrix `A` of `g`.
    pub fn shifted_adjacency(g: &Graph, shift: i64) -> Self {
        let n = g.order();
        let mut m = IntMatrix::from_i64(n, n, &g.adjacency_i64());
        for i in 0..n {
            m.data[i * n + i] -= shift;
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `self · A(g)`, exploiting the 0/1 adjacency structure.
    pub fn mul_adjacency(&self, g: &Graph) -> IntMatrix {
        let n = g.order();
        assert_eq!(self.cols, n);
        let mut out = IntMatrix::zeros(self.rows, n);
        for j in 0..n {
            for k in g.neighbors(j) {
                for i in 0..self.rows {
                    let add = self.at(i, k).clone();
                    out.data[i * n + j] += add;
                }
            }
        }
        out
    }
}

/// Runs Bareiss elimination in place; returns the rank and the sign of the
/// row permutation applied.
fn bareiss(m: &mut IntMatrix) -> (usize, i32) {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            m.swap_rows(pivot_row, rank);
            sign = -sign;
        }
        let pivot = m.at(rank, col).clone();
        for i in (rank + 1)..rows {
            let factor = m.at(i, col).clone();
            for j in (col + 1)..cols {
                let num = &pivot * m.at(i, j) - &factor * m.at(rank, j);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m.data[i * cols + j] = q;
            }
            m.data[i * cols + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    (rank, sign)
}

pub(crate) fn rank(mut m: IntMatrix) -> usize {
    bareiss(&mut m).0
}

pub(crate) fn determinant(mut m: IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let (rank, sign) = bareiss(&mut m);
    if rank < n {
        return BigInt::zero();
    }
    let d = m.at(n - 1, n - 1).clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Nullity of `A − e·I`: the exact multiplicity of `e` as an eigenvalue.
pub fn certify_integer_eigenvalue(g: &Graph, e: i64) -> usize {
    g.order() - rank(IntMatrix::shifted_adjacency(g, e))
}

/// Exactly decides whether `Π (A − eᵢI) · (A² − dI)` vanishes.
pub(crate) fn annihilates(g: &Graph, integer_roots: &[i64], radicand: Option<u64>) -> bool {
    let n = g.order();
    let mut p = IntMatrix::zeros(n, n);
    for i in 0..n {
        p.data[i * n + i] = BigInt::one();
    }
    for &e in integer_roots {
        let mut next = p.mul_adjacency(g);
        for (x, y) in next.data.iter_mut().zip(&p.data) {
            *x -= y * e;
        }
        p = next;
    }
    if let Some(d) = radicand {
        let mut next = p.mul_adjacency(g).mul_adjacency(g);
        for (x, y) in next.data.iter_mut().zip(&p.data) {
            *x -= y * d;
        }
        p = next;
    }
    p.is_zero()
}

/// Number of distinct eigenvalues, computed exactly as the dimension of
/// `span{I, A, A², …}` (the degree of the minimal polynomial).
pub fn distinct_eigenvalue_count(g: &Graph) -> usize {
    let n = g.order();
    let mut power = IntMatrix::zeros(n, n);
    for i in 0..n {
        power.data[i * n + i] = BigInt::one();
    }
    let mut stacked: Vec<BigInt> = power.data.clone();
    let mut count = 1;
    loop {
        power = power.mul_adjacency(g);
        stacked.extend(power.data.iter().cloned());
        let krylov = IntMatrix { rows: count + 1, cols: n * n, data: stacked.clone() };
        if rank(krylov) == count {
            return count;
        }
        count += 1;
    }
}

/// Integer square root when `x` is a perfect square.
pub(crate) fn is_perfect_square(x: u64) -> Option<u64> {
    let r = (x as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c.checked_mul(c) == Some(x))
}
