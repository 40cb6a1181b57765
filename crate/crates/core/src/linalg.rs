//! Dense matrices over a finite field: products, powers, rank by Gaussian
//! elimination and the characteristic polynomial by Berkowitz's
//! division-free recurrence.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// Column-major dense matrix over `ctx`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.ctx)?;
        for row in self.to_rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_fn(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        mut entry: impl FnMut(usize, usize) -> Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(entry(i, j));
            }
        }
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds from column-major storage; `data.len()` must be `rows * cols`.
    pub fn from_column_major(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ctx: &FieldCtx, rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_fn(ctx, rows.len(), cols, |i, j| rows[i][j])
    }

    pub fn from_int_rows(ctx: &FieldCtx, rows: &[Vec<u64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ctx.elem(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows(ctx, &rows))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[j * self.rows + i] = v;
    }

    pub fn column(&self, j: usize) -> &[Elem] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.value()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.cols).all(|j| {
                self.column(j)
                    .iter()
                    .enumerate()
                    .all(|(i, &v)| v == if i == j { Elem::ONE } else { Elem::ZERO })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch);
        }
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let ctx = &self.ctx;
        let mut out = Matrix::zeros(ctx, self.rows, other.cols);
        for j in 0..other.cols {
            for k in 0..self.cols {
                let b = other.get(k, j);
                if b.is_zero() {
                    continue;
                }
                let col = self.column(k);
                let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
                for (d, &a) in dst.iter_mut().zip(col) {
                    *d = ctx.add(*d, ctx.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let ctx = &self.ctx;
        let mut out = vec![Elem::ZERO; self.rows];
        for (k, &b) in v.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (d, &a) in out.iter_mut().zip(self.column(k)) {
                *d = ctx.add(*d, ctx.mul(a, b));
            }
        }
        out
    }

    /// `self^k` by square-and-multiply; `self^0` is the identity.
    pub fn pow(&self, mut k: u128) -> Matrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Matrix::identity(&self.ctx, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Submatrix on the given row and column index ranges.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(&self.ctx, rows.len(), cols.len(), |i, j| {
            self.get(r0 + i, c0 + j)
        })
    }

    /// Entrywise image in another field, e.g. under a field embedding.
    pub fn map_into(&self, target: &FieldCtx, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            ctx: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    /// `self - lambda * I`.
    pub fn shifted(&self, lambda: Elem) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, self.ctx.sub(self.get(i, i), lambda));
        }
        m
    }

    /// Rank by Gaussian elimination, pivoting on the first nonzero entry.
    pub fn rank(&self) -> usize {
        let ctx = &self.ctx;
        let mut a: Vec<Vec<Elem>> = (0..self.rows).map(|i| self.row(i)).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = ctx.inv(a[rank][c]).expect("pivot is nonzero");
            for r in rank + 1..self.rows {
                let factor = ctx.mul(a[r][c], inv);
                if factor.is_zero() {
                    continue;
                }
                for k in c..self.cols {
                    let delta = ctx.mul(factor, a[rank][k]);
                    a[r][k] = ctx.sub(a[r][k], delta);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Characteristic polynomial `det(lambda I - A)`, low degree first and
    /// monic (length `n + 1`), by Berkowitz's algorithm.
    pub fn char_poly(&self) -> Vec<Elem> {
        assert_eq!(
            self.rows, self.cols,
            "characteristic polynomial of a non-square matrix"
        );
        let ctx = &self.ctx;
        let n = self.rows;
        // high degree first while iterating
        let mut v: Vec<Elem> = vec![Elem::ONE];
        for r in 0..n {
            // leading block is r x r; new row/column r
            let a = self.get(r, r);
            let mut t = Vec::with_capacity(r + 2);
            t.push(Elem::ONE);
            t.push(ctx.neg(a));
            // S = A[0..r, r], iterate w = A_r^k S and record -R w
            let mut w: Vec<Elem> = (0..r).map(|i| self.get(i, r)).collect();
            for k in 0..r {
                let rw = (0..r).fold(Elem::ZERO, |acc, j| {
                    ctx.add(acc, ctx.mul(self.get(r, j), w[j]))
                });
                t.push(ctx.neg(rw));
                if k + 1 < r {
                    w = (0..r)
                        .map(|i| {
                            (0..r).fold(Elem::ZERO, |acc, j| {
                                ctx.add(acc, ctx.mul(self.get(i, j), w[j]))
                            })
                        })
                        .collect();
                }
            }
            // v <- T v with T lower-triangular Toeplitz of first column t
            let next: Vec<Elem> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(Elem::ZERO, |acc, j| ctx.add(acc, ctx.mul(t[i - j], v[j])))
                })
                .collect();
            v = next;
        }
        v.reverse();
        v
    }
}

/// Roots in `ctx` of a polynomial given low degree first, repeated by
/// multiplicity and sorted by canonical integer. Found by exhaustive
/// evaluation and synthetic division.
pub fn roots_with_multiplicity(ctx: &FieldCtx, poly: &[Elem]) -> Vec<Elem> {
    let mut p: Vec<Elem> = poly.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut roots = Vec::new();
    if p.is_empty() {
        return roots;
    }
    for a in ctx.elements() {
        while p.len() > 1 && ctx.eval_poly(&p, a).is_zero() {
            // divide by (x - a), high degree first
            let d = p.len() - 1;
            let mut quotient = vec![Elem::ZERO; d];
            let mut carry = Elem::ZERO;
            for i in (1..=d).rev() {
                carry = ctx.add(ctx.mul(carry, a), p[i]);
                quotient[i - 1] = carry;
            }
            p = quotient;
            roots.push(a);
        }
    }
    roots
}
