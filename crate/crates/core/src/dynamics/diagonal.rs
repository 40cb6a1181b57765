//! Eigenbasis of A(f) indexed by the cycles of f.
//!
//! For a cycle `(b_0, ..., b_{L-1})` and a primitive `L`-th root of unity
//! `psi`, the function `g_j(b_t) = psi^{jt}` (zero off the cycle) satisfies
//! `g_j(f(x)) = psi^j g_j(x)`, so its coefficient vector is an eigenvector of
//! A(f) for `psi^j`. When some elements sit at distance one from a cycle,
//! `g_j` is extended to them by `g_j(d) = psi^{-j} g_j(f(d))`, and each such
//! element adds its indicator function with eigenvalue 0. The roots of unity live in F_{q^m} with `m` the order
//! of `q` modulo the lcm of the cycle lengths.

use rayon::prelude::*;

use crate::arith::{checked_lcm, multiplicative_order_mod};
use crate::error::{Error, Result};
use crate::field::{Elem, Extension, FieldCtx};
use crate::linalg::Matrix;
use crate::poly::{interpolate_on, ReducedPoly};
use crate::power_matrix::PowerMatrix;

use super::{CycleDecomposition, FunctionalGraph};

/// Where an eigenvector came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenOrigin {
    /// `g_{i,j}`: cycle index `i`, exponent `j`.
    Cycle { cycle: usize, power: usize },
    /// Indicator of an element at distance one from a cycle.
    Leaf(Elem),
    /// Standard basis vector; used for A(f_0), which is the zero matrix.
    Basis(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    pub eigenvalue: Elem,
    /// Coefficient vector over the extension field, length q.
    pub vector: Vec<Elem>,
    pub origin: EigenOrigin,
}

#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub extension: Extension,
    /// A(f) with entries embedded into the extension field.
    pub embedded: Matrix,
    pub decomposition: CycleDecomposition,
    /// The primitive `L_i`-th root chosen for each cycle.
    pub roots: Vec<Elem>,
    pub eigenpairs: Vec<EigenPair>,
    pub diagonalizable: bool,
}

impl Diagonalization {
    pub fn base(&self) -> &FieldCtx {
        self.extension.base()
    }

    pub fn field(&self) -> &FieldCtx {
        self.extension.field()
    }

    pub fn degree(&self) -> u32 {
        self.extension.degree()
    }

    /// Eigenvalues with multiplicity, sorted by canonical integer in the
    /// extension field.
    pub fn eigenvalues(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.eigenpairs.iter().map(|e| e.eigenvalue).collect();
        v.sort();
        v
    }
}

/// Degree `m` of the smallest extension holding an `L_i`-th root of unity
/// of exact order `L_i` for every cycle, and that extension.
pub fn extension_for_cycles(ctx: &FieldCtx, dec: &CycleDecomposition) -> Result<(u32, Extension)> {
    let p = ctx.p();
    if let Some(&length) = dec.lengths().iter().find(|&&l| l % p as usize == 0) {
        return Err(Error::PCharObstruction { length, p });
    }
    let l = dec
        .lengths()
        .into_iter()
        .try_fold(1u128, |acc, l| checked_lcm(acc, l as u128))
        .ok_or(Error::Overflow("lcm of cycle lengths"))?;
    let l = u64::try_from(l).map_err(|_| Error::Overflow("lcm of cycle lengths"))?;
    let m =
        multiplicative_order_mod(ctx.q() as u64, l).expect("q is coprime to every cycle length");
    let m = u32::try_from(m).map_err(|_| Error::Overflow("extension degree"))?;
    Ok((m, ctx.extension_of(m)?))
}

pub fn diagonalize(f: &ReducedPoly) -> Result<Diagonalization> {
    let ctx = f.ctx();
    let graph = FunctionalGraph::build(f);
    if let Some(a) = ctx.elements().find(|&a| graph.tail(a) >= 2) {
        return Err(Error::NotDiagonalizableInput {
            element: a.value(),
            tail: graph.tail(a),
        });
    }
    let dec = graph.cycle_decomposition();
    if f.is_zero() {
        return Ok(zero_matrix_diagonalization(f, dec));
    }
    let (_, extension) = extension_for_cycles(ctx, &dec)?;
    let big = extension.field();
    let gamma = big.multiplicative_generator();
    let group = big.q() as u64 - 1;
    let roots: Vec<Elem> = dec
        .cycles
        .iter()
        .map(|c| big.pow(gamma, group / c.len() as u64))
        .collect();

    let q = ctx.q_usize();
    let points: Vec<Elem> = ctx.elements().map(|a| extension.embed(a)).collect();

    let mut jobs: Vec<(EigenOrigin, Elem)> = Vec::with_capacity(q);
    for (i, cycle) in dec.cycles.iter().enumerate() {
        for j in 0..cycle.len() {
            jobs.push((
                EigenOrigin::Cycle { cycle: i, power: j },
                big.pow(roots[i], j as u64),
            ));
        }
    }
    jobs.extend(
        dec.leaves
            .iter()
            .map(|&d| (EigenOrigin::Leaf(d), Elem::ZERO)),
    );

    let eigenpairs: Vec<EigenPair> = jobs
        .into_par_iter()
        .map(|(origin, eigenvalue)| {
            let mut values = vec![Elem::ZERO; q];
            match origin {
                EigenOrigin::Cycle { cycle, .. } => {
                    let mut w = Elem::ONE;
                    for &b in &dec.cycles[cycle] {
                        values[b.value() as usize] = w;
                        w = big.mul(w, eigenvalue);
                    }
                    // a leaf d feeding this cycle needs g(d) = g(f(d)) / lambda
                    let inv = big.inv(eigenvalue).expect("roots of unity are nonzero");
                    for &d in &dec.leaves {
                        let image = values[graph.succ(d).value() as usize];
                        values[d.value() as usize] = big.mul(image, inv);
                    }
                }
                EigenOrigin::Leaf(d) => values[d.value() as usize] = Elem::ONE,
                EigenOrigin::Basis(_) => unreachable!("basis vectors only arise for f_0"),
            }
            EigenPair {
                eigenvalue,
                vector: interpolate_on(big, &points, &values),
                origin,
            }
        })
        .collect();

    let a = PowerMatrix::build_direct(f);
    let embedded = a.as_matrix().map_into(big, |e| extension.embed(e));
    let diag = Diagonalization {
        extension,
        embedded,
        decomposition: dec,
        roots,
        eigenpairs,
        diagonalizable: true,
    };
    if diag.eigenpairs.len() != q {
        return Err(Error::InvariantViolation(format!(
            "{} eigenvectors for a {q}x{q} matrix",
            diag.eigenpairs.len()
        )));
    }
    if !residuals_vanish(&diag) {
        return Err(Error::InvariantViolation("nonzero eigen-residual".into()));
    }
    if eigenvector_rank(&diag) != q {
        return Err(Error::InvariantViolation(
            "eigenvectors are dependent".into(),
        ));
    }
    Ok(diag)
}

/// A(f_0) = 0 is already diagonal: every basis vector has eigenvalue 0.
fn zero_matrix_diagonalization(f: &ReducedPoly, dec: CycleDecomposition) -> Diagonalization {
    let ctx = f.ctx();
    let q = ctx.q_usize();
    let extension = ctx.extension_of(1).expect("degree one always fits");
    let eigenpairs = (0..q)
        .map(|i| {
            let mut vector = vec![Elem::ZERO; q];
            vector[i] = Elem::ONE;
            EigenPair {
                eigenvalue: Elem::ZERO,
                vector,
                origin: EigenOrigin::Basis(i),
            }
        })
        .collect();
    Diagonalization {
        extension,
        embedded: Matrix::zeros(ctx, q, q),
        decomposition: dec,
        roots: Vec::new(),
        eigenpairs,
        diagonalizable: true,
    }
}

fn residuals_vanish(diag: &Diagonalization) -> bool {
    let big = diag.field();
    diag.eigenpairs.par_iter().all(|pair| {
        let av = diag.embedded.mul_vec(&pair.vector);
        av.iter()
            .zip(&pair.vector)
            .all(|(&x, &v)| x == big.mul(pair.eigenvalue, v))
    })
}

/// Rank over the extension field of the matrix whose columns are the stored
/// eigenvectors.
pub fn eigenvector_rank(diag: &Diagonalization) -> usize {
    let q = diag.base().q_usize();
    let cols = diag.eigenpairs.len();
    Matrix::from_fn(diag.field(), q, cols, |i, j| diag.eigenpairs[j].vector[i]).rank()
}

/// Every stored eigenvector has zero residual, and for every eigenvalue the
/// stored vectors span the whole eigenspace of the embedded matrix.
pub fn eigen_residual_check(diag: &Diagonalization) -> bool {
    if !residuals_vanish(diag) {
        return false;
    }
    let q = diag.base().q_usize();
    let mut distinct = diag.eigenvalues();
    distinct.dedup();
    distinct.into_iter().all(|lambda| {
        let vectors: Vec<&EigenPair> = diag
            .eigenpairs
            .iter()
            .filter(|e| e.eigenvalue == lambda)
            .collect();
        let span =
            Matrix::from_fn(diag.field(), q, vectors.len(), |i, j| vectors[j].vector[i]).rank();
        let geometric = q - diag.embedded.shifted(lambda).rank();
        span == geometric
    })
}

/// Characteristic polynomial of A(f), low degree first.
pub fn char_poly(a: &PowerMatrix) -> Vec<Elem> {
    a.as_matrix().char_poly()
}

/// Roots in F_q of the characteristic polynomial, with multiplicity.
pub fn eigenvalues_in_base(a: &PowerMatrix) -> Vec<Elem> {
    crate::linalg::roots_with_multiplicity(a.ctx(), &char_poly(a))
}
