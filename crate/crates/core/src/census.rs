//! Value sets: size through the rank of A(f), per-value multiplicities
//! through König-Rados circulants, minimum value set detection, the
//! circular zero-gap statistic of the (1,1)-minor, and the criterion for
//! commuting with a linear map `bx + a`.

use crate::arith::binomial_mod_p;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::linalg::Matrix;
use crate::poly::ReducedPoly;
use crate::power_matrix::PowerMatrix;

/// Value-set census computed by evaluating `f` everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueCensus {
    pub ctx: FieldCtx,
    pub size: usize,
    /// `multiplicity[c] = #{a : f(a) = c}`, indexed by canonical integer.
    pub multiplicity: Vec<usize>,
}

impl ValueCensus {
    pub fn multiplicity_of(&self, c: Elem) -> usize {
        self.multiplicity[c.value() as usize]
    }

    /// Values attained, ascending.
    pub fn image(&self) -> Vec<Elem> {
        self.ctx
            .elements()
            .filter(|&c| self.multiplicity_of(c) > 0)
            .collect()
    }
}

pub fn census_brute(f: &ReducedPoly) -> ValueCensus {
    let ctx = f.ctx();
    let mut multiplicity = vec![0usize; ctx.q_usize()];
    for v in f.value_table() {
        multiplicity[v.value() as usize] += 1;
    }
    let size = multiplicity.iter().filter(|&&m| m > 0).count();
    ValueCensus {
        ctx: ctx.clone(),
        size,
        multiplicity,
    }
}

/// `|V_f|` as `rank A(f)`.
pub fn value_set_size_via_rank(f: &ReducedPoly) -> usize {
    PowerMatrix::build_direct(f).rank()
}

/// The `(q-1) x (q-1)` left circulant of
/// `h(x) = (a_0 + a_{q-1} - c) + a_1 x + ... + a_{q-2} x^{q-2}`:
/// entry `(r, j)` is `h_{(r + j) mod (q-1)}`.
pub fn circulant_matrix(f: &ReducedPoly, c: Elem) -> Matrix {
    let ctx = f.ctx();
    let n = ctx.q_usize() - 1;
    let mut h: Vec<Elem> = f.coeffs()[..n].to_vec();
    h[0] = ctx.sub(ctx.add(f.coeff(0), f.coeff(n)), c);
    Matrix::from_fn(ctx, n, n, |r, j| h[(r + j) % n])
}

/// Number of nonzero solutions of `f(x) = c`, as `q - 1 - rank C(h)`.
pub fn konig_rados_count(f: &ReducedPoly, c: Elem) -> usize {
    let n = f.ctx().q_usize() - 1;
    n - circulant_matrix(f, c).rank()
}

/// Full multiplicity of `c`: the nonzero count plus one if `f(0) = c`.
pub fn konig_rados_multiplicity(f: &ReducedPoly, c: Elem) -> usize {
    konig_rados_count(f, c) + usize::from(f.coeff(0) == c)
}

/// Membership of `c` in the value set from the circulant alone: `c = f(0)`
/// is always attained; otherwise `c` is attained iff `rank C(h) < q - 1`.
pub fn in_value_set_via_circulant(f: &ReducedPoly, c: Elem) -> bool {
    f.coeff(0) == c || circulant_matrix(f, c).rank() < f.ctx().q_usize() - 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimumValueSet {
    pub degree: usize,
    /// `floor((q-1)/d) + 1`
    pub bound: usize,
    pub rank: usize,
    pub is_minimum: bool,
    /// `rank >= bound`, which always holds.
    pub lower_bound_holds: bool,
}

pub fn minimum_value_set(f: &ReducedPoly) -> Result<MinimumValueSet> {
    let degree = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegreeZero),
    };
    let bound = (f.ctx().q_usize() - 1) / degree + 1;
    let rank = value_set_size_via_rank(f);
    Ok(MinimumValueSet {
        degree,
        bound,
        rank,
        is_minimum: rank == bound,
        lower_bound_holds: rank >= bound,
    })
}

pub fn minimum_value_set_check(f: &ReducedPoly) -> Result<bool> {
    Ok(minimum_value_set(f)?.is_minimum)
}

/// Longest circular run of zeros in each row of the (1,1)-minor of A(f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapStatistic {
    /// `l_i` for rows `1..q` of A(f); zero for rows that are all 0 or all 1.
    pub row_gaps: Vec<usize>,
    /// `L_f = max l_i`.
    pub max_gap: usize,
    /// Rows of the minor that are entirely 0 or entirely 1.
    pub degenerate_rows: usize,
}

impl GapStatistic {
    pub fn of(a: &PowerMatrix) -> Self {
        let q = a.ctx().q_usize();
        let minor = a.as_matrix().submatrix(1..q, 1..q);
        let mut degenerate_rows = 0;
        let row_gaps: Vec<usize> = (0..minor.rows())
            .map(|i| {
                let row = minor.row(i);
                if row.iter().all(|e| e.is_zero()) || row.iter().all(|&e| e == Elem::ONE) {
                    degenerate_rows += 1;
                    0
                } else {
                    circular_zero_run(&row)
                }
            })
            .collect();
        let max_gap = row_gaps.iter().copied().max().unwrap_or(0);
        GapStatistic {
            row_gaps,
            max_gap,
            degenerate_rows,
        }
    }
}

/// Longest run of consecutive zeros with the row read as a circle.
fn circular_zero_run(row: &[Elem]) -> usize {
    let n = row.len();
    if row.iter().all(|e| e.is_zero()) {
        return n;
    }
    // start right after a nonzero entry so no run wraps past the start
    let start = row.iter().position(|e| !e.is_zero()).unwrap_or(0) + 1;
    let (mut best, mut run) = (0, 0);
    for t in 0..n {
        if row[(start + t) % n].is_zero() {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

/// Outcome of checking `|V_f| >= L_f + 2` against the census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapBoundProbe {
    pub gaps: GapStatistic,
    pub value_set_size: usize,
    pub bound: usize,
    pub holds: bool,
}

/// Computes `L_f` and compares `L_f + 2` with the true value-set size. The
/// bound is reported, not enforced: it fails on some inputs, e.g.
/// `x^2 + x + 1` over F_5 (`L_f = 2`, `|V_f| = 3`).
pub fn gap_bound_probe(f: &ReducedPoly) -> GapBoundProbe {
    let gaps = GapStatistic::of(&PowerMatrix::build_direct(f));
    let value_set_size = census_brute(f).size;
    let bound = gaps.max_gap + 2;
    GapBoundProbe {
        holds: value_set_size >= bound,
        gaps,
        value_set_size,
        bound,
    }
}

/// Closed-form test of `f(bx + a) = b f(x) + a` on the coefficients of f:
///
/// * `b_0 (b - 1) = -a + sum_{t=1}^{q-1} b_t a^t`
/// * `b_s (1 - b^{s-1}) = b^{s-1} sum_{t=s+1}^{q-1} C(t, s) a^{t-s} b_t`
///   for `1 <= s <= q-1`.
///
/// The second family is the first with `b` divided out, so `b = 0` is
/// rejected.
pub fn commutes_with_linear(f: &ReducedPoly, a: Elem, b: Elem) -> Result<bool> {
    if b.is_zero() {
        return Err(Error::DegenerateLinearMap);
    }
    let ctx = f.ctx();
    let q = ctx.q_usize();
    let p = ctx.p();
    let c = f.coeffs();
    let a_pow: Vec<Elem> = (0..q as u64).map(|t| ctx.pow(a, t)).collect();

    let rhs0 = (1..q).fold(ctx.neg(a), |acc, t| ctx.add(acc, ctx.mul(c[t], a_pow[t])));
    if ctx.mul(c[0], ctx.sub(b, Elem::ONE)) != rhs0 {
        return Ok(false);
    }
    for s in 1..q {
        let bs1 = ctx.pow(b, (s - 1) as u64);
        let lhs = ctx.mul(c[s], ctx.sub(Elem::ONE, bs1));
        let sum = (s + 1..q).fold(Elem::ZERO, |acc, t| {
            let binom = ctx.from_int(binomial_mod_p(t as u64, s as u64, p) as i64);
            ctx.add(acc, ctx.mul(binom, ctx.mul(a_pow[t - s], c[t])))
        });
        if lhs != ctx.mul(bs1, sum) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Oracle: `f(b x + a) = b f(x) + a` at every point.
pub fn commutes_pointwise(f: &ReducedPoly, a: Elem, b: Elem) -> bool {
    let ctx = f.ctx();
    ctx.elements()
        .all(|x| f.evaluate(ctx.add(ctx.mul(b, x), a)) == ctx.add(ctx.mul(b, f.evaluate(x)), a))
}

/// Matrix route: compares column 1 of `A(bx+a) A(f)` and `A(f) A(bx+a)`,
/// which are the coefficient vectors of `f(bx+a)` and `b f(x) + a`.
/// `A(f_0) = 0` loses the constant `a` of `b f_0 + a`, so the zero
/// polynomial is decided directly: it commutes iff `a = 0`.
pub fn commutes_via_matrices(f: &ReducedPoly, a: Elem, b: Elem) -> bool {
    if f.is_zero() {
        return a.is_zero();
    }
    let lin = PowerMatrix::build_direct(&ReducedPoly::linear(f.ctx(), b, a));
    let af = PowerMatrix::build_direct(f);
    let left = lin.matmul(&af).expect("same field");
    let right = af.matmul(&lin).expect("same field");
    left.as_matrix().column(1) == right.as_matrix().column(1)
}
