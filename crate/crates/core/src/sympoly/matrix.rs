use std::fmt;

use super::{Context, MultiPoly};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Dense rectangular matrix of polynomials over one variable context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<T> {
    ctx: Context,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly<T>>,
}

impl<T: Scalar> PolyMatrix<T> {
    pub fn zeros(ctx: &Context, rows: usize, cols: usize) -> Self {
        Self {
            ctx: ctx.clone(),
            rows,
            cols,
            entries: vec![MultiPoly::zero(ctx); rows * cols],
        }
    }

    /// Build from a 0-based entry function.
    pub fn from_fn<F>(ctx: &Context, rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> MultiPoly<T>,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.context() == ctx, "matrix entries must share the context");
                entries.push(e);
            }
        }
        Self { ctx: ctx.clone(), rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<T> {
        &self.entries[i * self.cols + j]
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx || self.cols != other.rows {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::from_fn(&self.ctx, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(MultiPoly::zero(&self.ctx), |acc, k| {
                &acc + &(self.get(i, k) * other.get(k, j))
            })
        }))
    }

    /// Drop one column.
    pub fn without_column(&self, col: usize) -> Self {
        Self::from_fn(&self.ctx, self.rows, self.cols - 1, |i, j| {
            self.get(i, if j < col { j } else { j + 1 }).clone()
        })
    }

    /// First `k` columns.
    pub fn leading_columns(&self, k: usize) -> Self {
        Self::from_fn(&self.ctx, self.rows, k, |i, j| self.get(i, j).clone())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[MultiPoly<T>]) -> Result<Vec<MultiPoly<T>>> {
        if v.len() != self.cols {
            return Err(Error::ContextMismatch);
        }
        (0..self.rows)
            .map(|i| {
                v.iter().enumerate().try_fold(MultiPoly::zero(&self.ctx), |acc, (j, x)| {
                    acc.checked_add(&self.get(i, j).checked_mul(x)?)
                })
            })
            .collect()
    }

    /// Square, ones on the diagonal, zeros above it.
    pub fn is_unit_lower_triangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Equal => self.get(i, j) == &MultiPoly::one(&self.ctx),
                    std::cmp::Ordering::Greater => self.get(i, j).is_zero(),
                    std::cmp::Ordering::Less => true,
                })
            })
    }

    /// Zeros strictly below the diagonal.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }
}

impl<T: Scalar> fmt::Display for PolyMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
