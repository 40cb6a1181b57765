//! The matrix A(f) of coefficients of powers of a polynomial.
//!
//! Entry `(i, k)` of A(f) is the coefficient of `x^i` in `f^k mod (x^q - x)`,
//! so column `k` is the coefficient vector of the `k`-th power. Indices are
//! 0-based throughout. For the zero polynomial A is the zero matrix.
//!
//! Composition becomes matrix multiplication with the order reversed:
//! `A(g o f) = A(f) A(g)`, hence `A(f^(k)) = A(f)^k`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::linalg::Matrix;
use crate::poly::ReducedPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerMatrix {
    mat: Matrix,
}

impl PowerMatrix {
    /// Column `k` is `f^k` computed by repeated squaring in the reduced ring.
    /// Columns are filled concurrently.
    pub fn build_direct(f: &ReducedPoly) -> Self {
        let ctx = f.ctx();
        let q = ctx.q_usize();
        let mut data = vec![Elem::ZERO; q * q];
        if !f.is_zero() {
            data.par_chunks_mut(q).enumerate().for_each(|(k, col)| {
                col.copy_from_slice(f.pow(k as u64).coeffs());
            });
        }
        PowerMatrix {
            mat: Matrix::from_column_major(ctx, q, q, data),
        }
    }

    /// Entries from the closed forms obtained by Lagrange interpolation:
    /// `a_{0j} = f(0)^j` and, for `i, j >= 1`,
    /// `a_{ij} = -sum_a f(a)^j C(q-1, i) (-a)^{q-1-i}`.
    pub fn build_interpolation(f: &ReducedPoly) -> Self {
        let ctx = f.ctx();
        let q = ctx.q_usize();
        if f.is_zero() {
            return PowerMatrix {
                mat: Matrix::zeros(ctx, q, q),
            };
        }
        let binom = binomial_row_mod_p(q - 1, ctx.p());
        let values = f.value_table();
        let f0 = values[0];
        // (-a)^e for every a and 0 <= e <= q-1, with 0^0 = 1
        let neg_powers: Vec<Vec<Elem>> = ctx
            .elements()
            .map(|a| {
                let na = ctx.neg(a);
                (0..q as u64).map(|e| ctx.pow(na, e)).collect()
            })
            .collect();
        let mat = Matrix::from_fn(ctx, q, q, |i, j| match (i, j) {
            (0, 0) => Elem::ONE,
            (_, 0) => Elem::ZERO,
            (0, j) => ctx.pow(f0, j as u64),
            (i, j) => {
                let c = ctx.from_int(binom[i] as i64);
                let s = ctx.elements().fold(Elem::ZERO, |acc, a| {
                    let fj = ctx.pow(values[a.value() as usize], j as u64);
                    ctx.add(acc, ctx.mul(fj, neg_powers[a.value() as usize][q - 1 - i]))
                });
                ctx.neg(ctx.mul(c, s))
            }
        });
        PowerMatrix { mat }
    }

    /// Wraps an arbitrary `q x q` matrix (e.g. one read back from disk).
    pub fn from_matrix(mat: Matrix) -> Result<Self> {
        if mat.rows() != mat.cols() || mat.rows() != mat.ctx().q_usize() {
            return Err(Error::InvariantViolation(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                mat.ctx().q(),
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(PowerMatrix { mat })
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        PowerMatrix {
            mat: Matrix::identity(ctx, ctx.q_usize()),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.mat.ctx()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    pub fn get(&self, i: usize, k: usize) -> Elem {
        self.mat.get(i, k)
    }

    /// Column `k` as a reduced polynomial.
    pub fn column_poly(&self, k: usize) -> ReducedPoly {
        ReducedPoly::reduce(self.ctx(), self.mat.column(k))
    }

    /// `A v_g`; for `A = A(f)` this is the coefficient vector of `g o f`.
    pub fn apply_to_vector(&self, g: &ReducedPoly) -> Result<ReducedPoly> {
        if g.ctx() != self.ctx() {
            return Err(Error::CtxMismatch);
        }
        Ok(ReducedPoly::reduce(
            self.ctx(),
            &self.mat.mul_vec(g.coeffs()),
        ))
    }

    pub fn matmul(&self, other: &PowerMatrix) -> Result<PowerMatrix> {
        Ok(PowerMatrix {
            mat: self.mat.mul(&other.mat)?,
        })
    }

    pub fn pow(&self, k: u128) -> PowerMatrix {
        PowerMatrix {
            mat: self.mat.pow(k),
        }
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    /// Last row is `(0, ..., 0, 1)`: `a_{q-1,k} = 0` for `1 <= k <= q-2` and
    /// `a_{q-1,q-1} = 1`. Equivalent to `f` permuting F_q.
    pub fn hermite_last_row(&self) -> bool {
        let q = self.ctx().q_usize();
        let last = q - 1;
        (1..last).all(|k| self.get(last, k).is_zero()) && self.get(last, last) == Elem::ONE
    }

    /// `P A P` with `P` the antidiagonal permutation matrix: rows and columns
    /// both reversed.
    pub fn conjugate_by_antidiagonal(&self) -> PowerMatrix {
        let q = self.ctx().q_usize();
        let mat = Matrix::from_fn(self.ctx(), q, q, |i, k| self.get(q - 1 - i, q - 1 - k));
        PowerMatrix { mat }
    }

    /// Matrix of the compositional inverse, `A(f^(-1)) = P A(f)^T P`, that is
    /// `b_{ik} = a_{q-1-k, q-1-i}`. Column 1 of the result is the coefficient
    /// vector of `f^(-1)`.
    pub fn inverse_via_conjugation(&self) -> Result<PowerMatrix> {
        if !self.hermite_last_row() {
            return Err(Error::NotPermutation);
        }
        let q = self.ctx().q_usize();
        let mat = Matrix::from_fn(self.ctx(), q, q, |i, k| self.get(q - 1 - k, q - 1 - i));
        Ok(PowerMatrix { mat })
    }

    /// Compositional inverse read off column 1 of [`Self::inverse_via_conjugation`].
    pub fn inverse_polynomial(&self) -> Result<ReducedPoly> {
        Ok(self.inverse_via_conjugation()?.column_poly(1))
    }

    /// Whether `(P A)^2 = I`.
    pub fn involution_check(&self) -> Result<bool> {
        if !self.hermite_last_row() {
            return Err(Error::NotPermutation);
        }
        let q = self.ctx().q_usize();
        let pa = Matrix::from_fn(self.ctx(), q, q, |i, k| self.get(q - 1 - i, k));
        Ok(pa.mul(&pa)?.is_identity())
    }
}

/// The antidiagonal permutation matrix `P` with `P_{i, n-1-i} = 1`.
pub fn antidiagonal(ctx: &FieldCtx, n: usize) -> Matrix {
    Matrix::from_fn(ctx, n, n, |i, j| {
        if i + j + 1 == n {
            Elem::ONE
        } else {
            Elem::ZERO
        }
    })
}

/// `C(n, i) mod p` for `0 <= i <= n` by Pascal's rule.
pub fn binomial_row_mod_p(n: usize, p: u32) -> Vec<u32> {
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        for w in row.windows(2) {
            next.push((w[0] + w[1]) % p);
        }
        next.push(1);
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldCtx {
        FieldCtx::prime(5).unwrap()
    }

    fn poly(ctx: &FieldCtx, c: &[u64]) -> ReducedPoly {
        ReducedPoly::from_ints(ctx, c).unwrap()
    }

    const FIXTURE: [[u32; 5]; 5] = [
        [1, 1, 1, 1, 1],
        [0, 1, 2, 1, 0],
        [0, 1, 3, 2, 0],
        [0, 0, 2, 2, 0],
        [0, 0, 1, 1, 0],
    ];

    #[test]
    fn fixture_matrix_both_routes() {
        let ctx = f5();
        let f = poly(&ctx, &[1, 1, 1]);
        let expected: Vec<Vec<u32>> = FIXTURE.iter().map(|r| r.to_vec()).collect();
        assert_eq!(
            PowerMatrix::build_direct(&f).as_matrix().to_rows(),
            expected
        );
        assert_eq!(
            PowerMatrix::build_interpolation(&f).as_matrix().to_rows(),
            expected
        );
    }

    #[test]
    fn identity_and_zero() {
        for ctx in [
            FieldCtx::prime(3).unwrap(),
            f5(),
            FieldCtx::new(2, 2, None).unwrap(),
        ] {
            let x = ReducedPoly::identity(&ctx);
            assert!(PowerMatrix::build_direct(&x).is_identity());
            assert!(PowerMatrix::build_interpolation(&x).is_identity());
            let z = ReducedPoly::zero(&ctx);
            assert_eq!(PowerMatrix::build_direct(&z).rank(), 0);
            assert_eq!(PowerMatrix::build_interpolation(&z).rank(), 0);
        }
    }

    #[test]
    fn first_row_is_powers_of_constant_term() {
        let ctx = f5();
        let a = PowerMatrix::build_interpolation(&poly(&ctx, &[1, 1]));
        assert_eq!(a.as_matrix().to_rows()[0], vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn apply_to_vector_examples() {
        let ctx = f5();
        let f = poly(&ctx, &[1, 1, 1]);
        let a = PowerMatrix::build_direct(&f);
        assert_eq!(a.apply_to_vector(&ReducedPoly::identity(&ctx)).unwrap(), f);
        let sq = a.apply_to_vector(&poly(&ctx, &[0, 0, 1])).unwrap();
        assert_eq!(sq, poly(&ctx, &[1, 2, 3, 2, 1]));
        let g = poly(&ctx, &[3, 0, 4, 1]);
        let id = PowerMatrix::build_direct(&ReducedPoly::identity(&ctx));
        assert_eq!(id.apply_to_vector(&g).unwrap(), g);
    }

    #[test]
    fn powers_of_matrices() {
        let ctx = f5();
        let cube = PowerMatrix::build_direct(&poly(&ctx, &[0, 0, 0, 1]));
        assert!(cube.pow(0).is_identity());
        assert!(cube.pow(2).is_identity());
        assert!(!cube.pow(1).is_identity());
        let affine = PowerMatrix::build_direct(&poly(&ctx, &[1, 2]));
        assert!(affine.pow(4).is_identity());
        assert!(!affine.pow(2).is_identity());
    }

    #[test]
    fn ranks() {
        let ctx = f5();
        assert_eq!(PowerMatrix::build_direct(&poly(&ctx, &[1, 1, 1])).rank(), 3);
        assert_eq!(PowerMatrix::build_direct(&poly(&ctx, &[3])).rank(), 1);
        assert_eq!(
            PowerMatrix::build_direct(&ReducedPoly::identity(&ctx)).rank(),
            5
        );
    }

    #[test]
    fn hermite_examples() {
        let ctx = f5();
        assert!(PowerMatrix::build_direct(&ReducedPoly::identity(&ctx)).hermite_last_row());
        let fixture = PowerMatrix::build_direct(&poly(&ctx, &[1, 1, 1]));
        assert_eq!(fixture.as_matrix().to_rows()[4], vec![0, 0, 1, 1, 0]);
        assert!(!fixture.hermite_last_row());
        assert!(PowerMatrix::build_direct(&poly(&ctx, &[0, 0, 0, 1])).hermite_last_row());
        let f2 = FieldCtx::prime(2).unwrap();
        assert!(PowerMatrix::build_direct(&poly(&f2, &[1, 1])).hermite_last_row());
        assert!(!PowerMatrix::build_direct(&poly(&f2, &[1])).hermite_last_row());
    }

    #[test]
    fn inverse_examples() {
        let ctx = f5();
        let id = PowerMatrix::build_direct(&ReducedPoly::identity(&ctx));
        assert!(id.inverse_via_conjugation().unwrap().is_identity());
        let cube = PowerMatrix::build_direct(&poly(&ctx, &[0, 0, 0, 1]));
        assert_eq!(cube.inverse_via_conjugation().unwrap(), cube);
        let affine = PowerMatrix::build_direct(&poly(&ctx, &[1, 2]));
        let inv = affine.inverse_polynomial().unwrap();
        assert_eq!(inv, poly(&ctx, &[2, 3]));
        assert_eq!(
            poly(&ctx, &[1, 2]).compose(&inv).unwrap(),
            ReducedPoly::identity(&ctx)
        );
        let b = affine.inverse_via_conjugation().unwrap();
        assert!(affine.matmul(&b).unwrap().is_identity());
        let fixture = PowerMatrix::build_direct(&poly(&ctx, &[1, 1, 1]));
        assert_eq!(
            fixture.inverse_via_conjugation(),
            Err(Error::NotPermutation)
        );
        assert_eq!(fixture.involution_check(), Err(Error::NotPermutation));
    }

    #[test]
    fn literal_antidiagonal_conjugation() {
        // P A P equals A^{-1} for diagonal A(bx), but not for x + 1 over F_3,
        // where A is upper triangular and P A P lower triangular.
        let ctx = f5();
        let scale = PowerMatrix::build_direct(&poly(&ctx, &[0, 2]));
        assert!(scale
            .matmul(&scale.conjugate_by_antidiagonal())
            .unwrap()
            .is_identity());
        assert!(scale.involution_check().unwrap());
        let f3 = FieldCtx::prime(3).unwrap();
        let shift = PowerMatrix::build_direct(&poly(&f3, &[1, 1]));
        assert_eq!(
            shift.as_matrix().to_rows(),
            vec![vec![1, 1, 1], vec![0, 1, 2], vec![0, 0, 1]]
        );
        assert!(!shift
            .matmul(&shift.conjugate_by_antidiagonal())
            .unwrap()
            .is_identity());
        assert!(!shift.involution_check().unwrap());
        assert!(shift
            .matmul(&shift.inverse_via_conjugation().unwrap())
            .unwrap()
            .is_identity());
        let id = PowerMatrix::build_direct(&ReducedPoly::identity(&ctx));
        assert!(id.involution_check().unwrap());
    }

    #[test]
    fn antidiagonal_is_symmetric_involution() {
        let ctx = f5();
        let p = antidiagonal(&ctx, 5);
        assert!(p.mul(&p).unwrap().is_identity());
        assert_eq!(p.to_rows()[0], vec![0, 0, 0, 0, 1]);
        let a = PowerMatrix::build_direct(&poly(&ctx, &[1, 1, 1]));
        let pap = p.mul(a.as_matrix()).unwrap().mul(&p).unwrap();
        assert_eq!(&pap, a.conjugate_by_antidiagonal().as_matrix());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_row_mod_p(4, 5), vec![1, 4, 6 % 5, 4, 1]);
        // C(q-1, i) = (-1)^i mod p
        assert_eq!(binomial_row_mod_p(8, 3), vec![1, 2, 1, 2, 1, 2, 1, 2, 1]);
        assert_eq!(binomial_row_mod_p(0, 2), vec![1]);
    }
}
