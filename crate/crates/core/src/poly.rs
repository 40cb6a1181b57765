//! Polynomials over F_q reduced modulo `x^q - x`.
//!
//! A [`ReducedPoly`] always stores exactly `q` coefficients, `coeffs[i]`
//! being the coefficient of `x^i`, so it is the coefficient vector of the
//! function it induces on F_q.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

#[derive(Clone, PartialEq, Eq)]
pub struct ReducedPoly {
    ctx: FieldCtx,
    coeffs: Vec<Elem>,
}

impl std::fmt::Debug for ReducedPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let shown: Vec<u32> = self.coeffs.iter().map(|c| c.value()).collect();
        write!(f, "ReducedPoly({:?}, {:?})", self.ctx, shown)
    }
}

/// Index that `x^i` folds onto under `x^q = x`.
fn fold_index(i: usize, q: usize) -> usize {
    if i < q {
        i
    } else {
        1 + (i - 1) % (q - 1)
    }
}

impl ReducedPoly {
    /// Folds an arbitrary coefficient list (low degree first) into degree
    /// `< q`. The result induces the same function on F_q.
    pub fn reduce(ctx: &FieldCtx, raw: &[Elem]) -> Self {
        let q = ctx.q_usize();
        let mut coeffs = vec![Elem::ZERO; q];
        for (i, &c) in raw.iter().enumerate() {
            let j = fold_index(i, q);
            coeffs[j] = ctx.add(coeffs[j], c);
        }
        ReducedPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Like [`ReducedPoly::reduce`] but validates canonical integers first.
    pub fn from_ints(ctx: &FieldCtx, raw: &[u64]) -> Result<Self> {
        let elems = raw
            .iter()
            .map(|&v| ctx.elem(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::reduce(ctx, &elems))
    }

    /// The zero polynomial `f_0`.
    pub fn zero(ctx: &FieldCtx) -> Self {
        ReducedPoly {
            ctx: ctx.clone(),
            coeffs: vec![Elem::ZERO; ctx.q_usize()],
        }
    }

    pub fn constant(ctx: &FieldCtx, c: Elem) -> Self {
        Self::reduce(ctx, &[c])
    }

    /// `c * x^k`, folded.
    pub fn monomial(ctx: &FieldCtx, c: Elem, k: usize) -> Self {
        let mut p = Self::zero(ctx);
        let j = fold_index(k, ctx.q_usize());
        p.coeffs[j] = c;
        p
    }

    /// The identity map `x`.
    pub fn identity(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, Elem::ONE, 1)
    }

    /// `b*x + a`.
    pub fn linear(ctx: &FieldCtx, b: Elem, a: Elem) -> Self {
        Self::reduce(ctx, &[a, b])
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest index with a nonzero coefficient; `None` for `f_0`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn evaluate(&self, x: Elem) -> Elem {
        self.ctx.eval_poly(&self.coeffs, x)
    }

    /// Values at every element, indexed by canonical integer.
    pub fn value_table(&self) -> Vec<Elem> {
        self.ctx.elements().map(|a| self.evaluate(a)).collect()
    }

    /// Brute-force bijectivity test on the value table.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.ctx.q_usize()];
        self.value_table()
            .into_iter()
            .all(|v| !std::mem::replace(&mut seen[v.value() as usize], true))
    }

    /// The unique reduced polynomial taking `values[a]` at each element `a`.
    pub fn interpolate(ctx: &FieldCtx, values: &[Elem]) -> Self {
        let points: Vec<Elem> = ctx.elements().collect();
        ReducedPoly {
            ctx: ctx.clone(),
            coeffs: interpolate_on(ctx, &points, values),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    /// Product modulo `x^q - x`: full convolution, then fold.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let ctx = &self.ctx;
        let q = ctx.q_usize();
        let mut out = vec![Elem::ZERO; q];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = fold_index(i + j, q);
                out[k] = ctx.add(out[k], ctx.mul(a, b));
            }
        }
        Ok(ReducedPoly {
            ctx: ctx.clone(),
            coeffs: out,
        })
    }

    /// `f^k` modulo `x^q - x`, with `f^0 = 1` for `f != f_0` and `f_0^0 = f_0`.
    pub fn pow(&self, mut k: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut acc = Self::constant(&self.ctx, Elem::ONE);
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

    /// `self(inner(x))` modulo `x^q - x`, through interpolation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.compose_by_interpolation(inner)
    }

    pub fn compose_by_interpolation(&self, inner: &Self) -> Result<Self> {
        self.check_same(inner)?;
        let values: Vec<Elem> = inner
            .value_table()
            .into_iter()
            .map(|y| self.evaluate(y))
            .collect();
        Ok(Self::interpolate(&self.ctx, &values))
    }

    /// `sum_k b_k * inner^k`, the route through powers of `inner`. The
    /// constant term uses `inner^0 = 1` even for the zero polynomial, since
    /// `g(f_0) = g(0)`.
    pub fn compose_by_powers(&self, inner: &Self) -> Result<Self> {
        self.check_same(inner)?;
        let ctx = &self.ctx;
        let mut out = vec![Elem::ZERO; ctx.q_usize()];
        for (k, &b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let power = if k == 0 {
                Self::constant(ctx, Elem::ONE)
            } else {
                inner.pow(k as u64)
            };
            for (o, &c) in out.iter_mut().zip(power.coeffs()) {
                *o = ctx.add(*o, ctx.mul(b, c));
            }
        }
        Ok(ReducedPoly {
            ctx: ctx.clone(),
            coeffs: out,
        })
    }

    /// `k`-fold composition `f^(k)`, with `f^(0) = x`.
    pub fn iterate(&self, k: u64) -> Self {
        let table = self.value_table();
        let values: Vec<Elem> = self
            .ctx
            .elements()
            .map(|mut a| {
                for _ in 0..k {
                    a = table[a.value() as usize];
                }
                a
            })
            .collect();
        Self::interpolate(&self.ctx, &values)
    }
}

/// Interpolation over the field `target` at the `q` points `points`, which
/// must be (the image of) F_q listed in canonical order, so that
/// `points[0] = 0`. Returns `c_0..c_{q-1}` with `c_0 = g(0)` and
/// `c_i = -sum_a g(a) a^{q-1-i}` for `i >= 1`, taking `0^0 = 1`.
pub fn interpolate_on(target: &FieldCtx, points: &[Elem], values: &[Elem]) -> Vec<Elem> {
    let q = points.len();
    assert_eq!(values.len(), q, "one value per point");
    let mut coeffs = vec![Elem::ZERO; q];
    coeffs[0] = values[0];
    for (&a, &v) in points.iter().zip(values) {
        if v.is_zero() {
            continue;
        }
        // walk i = q-1 down to 1 so that the exponent q-1-i climbs from 0
        let mut term = v;
        for i in (1..q).rev() {
            coeffs[i] = target.sub(coeffs[i], term);
            term = target.mul(term, a);
        }
    }
    coeffs
}
