//! Square matrices over `[0, ∞]` and the min-plus kernels shared by the
//! whole crate.

use std::fmt;

use crate::error::{Error, Result};
use crate::ext::ExtValue;

/// A dense square matrix of [`ExtValue`]s, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<ExtValue>,
}

impl Matrix {
    pub fn filled(n: usize, value: ExtValue) -> Self {
        Matrix {
            n,
            data: vec![value; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ExtValue) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<ExtValue>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Side length.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtValue {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExtValue) {
        self.data[i * self.n + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExtValue]> {
        // chunks(0) panics, so the empty matrix yields no rows explicitly
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<ExtValue>> {
        self.rows().map(<[ExtValue]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Pointwise `self ≤ other`.
    pub fn pointwise_le(&self, other: &Matrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    pub fn pointwise_min(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.min_with(b))
                .collect(),
        }
    }

    /// The submatrix on the given indices, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    pub fn with_zero_diagonal(mut self) -> Matrix {
        for i in 0..self.n {
            self.set(i, i, ExtValue::zero());
        }
        self
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Min-plus product: `(a ⊗ b)(x, y) = min_z a(x, z) + b(z, y)`.
pub fn minplus_product(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.size(), b.size());
    let n = a.size();
    Matrix::from_fn(n, |x, y| {
        (0..n)
            .map(|z| a.get(x, z) + b.get(z, y))
            .min()
            .unwrap_or_else(ExtValue::inf)
    })
}

/// All-pairs min-plus closure (Floyd–Warshall relaxation over `(min, +)`).
///
/// The diagonal is forced to zero first, so the result is the greatest
/// Lawvere metric lying pointwise below `costs`. Relaxation order is by
/// point index.
pub fn minplus_closure(costs: &Matrix) -> Matrix {
    let mut m = costs.clone().with_zero_diagonal();
    let n = m.size();
    for k in 0..n {
        for i in 0..n {
            if m.get(i, k).is_inf() {
                continue;
            }
            for j in 0..n {
                let via = m.get(i, k) + m.get(k, j);
                if &via < m.get(i, j) {
                    m.set(i, j, via);
                }
            }
        }
    }
    m
}
