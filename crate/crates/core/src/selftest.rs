//! Randomized self-check of every invariant on one field, with a witness
//! recorded for the first failure of each check.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::arith::checked_lcm;
use crate::census::{
    census_brute, commutes_pointwise, commutes_with_linear, gap_bound_probe, konig_rados_count,
    minimum_value_set,
};
use crate::dynamics::{
    diagonalize, eigen_residual_check, eigenvector_rank, matrix_order, sequence_period,
    sequence_period_by_iteration, FunctionalGraph,
};
use crate::error::Error;
use crate::field::{Elem, FieldCtx};
use crate::poly::ReducedPoly;
use crate::power_matrix::PowerMatrix;

/// Uniformly random reduced polynomial.
pub fn random_poly<R: Rng + ?Sized>(ctx: &FieldCtx, rng: &mut R) -> ReducedPoly {
    let coeffs: Vec<Elem> = (0..ctx.q_usize()).map(|_| random_elem(ctx, rng)).collect();
    ReducedPoly::reduce(ctx, &coeffs)
}

/// Polynomial of degree at most `d` with uniform coefficients.
pub fn random_poly_of_degree<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    d: usize,
    rng: &mut R,
) -> ReducedPoly {
    let coeffs: Vec<Elem> = (0..=d).map(|_| random_elem(ctx, rng)).collect();
    ReducedPoly::reduce(ctx, &coeffs)
}

/// Interpolant of a uniformly random bijection of the field.
pub fn random_permutation<R: Rng + ?Sized>(ctx: &FieldCtx, rng: &mut R) -> ReducedPoly {
    let mut values: Vec<Elem> = ctx.elements().collect();
    values.shuffle(rng);
    ReducedPoly::interpolate(ctx, &values)
}

pub fn random_elem<R: Rng + ?Sized>(ctx: &FieldCtx, rng: &mut R) -> Elem {
    ctx.at(rng.gen_range(0..ctx.q_usize()))
}

/// Coefficient list `a0,a1,...` with trailing zeros dropped.
pub fn witness(f: &ReducedPoly) -> String {
    let c = f.coeffs();
    let len = c.iter().rposition(|e| !e.is_zero()).map_or(1, |i| i + 1);
    c[..len]
        .iter()
        .map(|e| e.value().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub samples: usize,
    pub seed: u64,
    /// Perturb A(f) in the homomorphism check; a negative control that must
    /// make the report fail.
    pub inject_fault: bool,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            samples: 100,
            seed: 0,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub skipped: usize,
    pub failures: usize,
    pub witness: Option<String>,
    /// Outcome is informational and does not affect the verdict.
    pub report_only: bool,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.report_only || self.failures == 0
    }
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub field: String,
    pub checks: Vec<CheckOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let tag = match (c.report_only, c.failures == 0) {
                    (true, _) => "INFO",
                    (false, true) => "PASS",
                    (false, false) => "FAIL",
                };
                let mut line = format!(
                    "{tag} {:<28} cases={} skipped={} failures={}",
                    c.name, c.cases, c.skipped, c.failures
                );
                if let Some(w) = &c.witness {
                    line.push_str(&format!(" witness: {w}"));
                }
                line
            })
            .collect()
    }
}

struct Tally {
    outcome: CheckOutcome,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            outcome: CheckOutcome {
                name,
                cases: 0,
                skipped: 0,
                failures: 0,
                witness: None,
                report_only: false,
            },
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.outcome.cases += 1;
        if !ok {
            self.outcome.failures += 1;
            if self.outcome.witness.is_none() {
                self.outcome.witness = Some(witness());
            }
        }
    }

    fn skip(&mut self) {
        self.outcome.skipped += 1;
    }

    fn report_only(mut self) -> Self {
        self.outcome.report_only = true;
        self
    }

    fn done(self) -> CheckOutcome {
        self.outcome
    }
}

fn describe(ctx: &FieldCtx) -> String {
    match ctx.n() {
        1 => ctx.p().to_string(),
        n => format!("{}^{}", ctx.p(), n),
    }
}

pub fn run_selftest(ctx: &FieldCtx, cfg: &SelftestConfig) -> SelftestReport {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let n = cfg.samples.max(1);
    let checks = vec![
        field_axioms(ctx, n, &mut rng),
        interpolation_round_trip(ctx, n, &mut rng),
        build_routes_agree(ctx, n, &mut rng),
        composition_homomorphism(ctx, n, cfg.inject_fault, &mut rng),
        rank_is_value_set(ctx, n, &mut rng),
        konig_rados(ctx, n, &mut rng),
        minimum_value_set_bound(ctx, n, &mut rng),
        hermite_last_row(ctx, n, &mut rng),
        inverse_by_conjugation(ctx, n, &mut rng),
        sequence_periods(ctx, n, &mut rng),
        order_is_cycle_lcm(ctx, n, &mut rng),
        diagonalization(ctx, n, &mut rng),
        commuting_criterion(ctx, n, &mut rng),
        gap_bound(ctx, n, &mut rng),
    ];
    SelftestReport {
        field: describe(ctx),
        checks,
    }
}

fn field_axioms(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("field axioms");
    for _ in 0..n {
        let (a, b, c) = (
            random_elem(ctx, rng),
            random_elem(ctx, rng),
            random_elem(ctx, rng),
        );
        let distributive = ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c));
        let associative = ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c));
        let inverse = a.is_zero() || ctx.inv(a).map(|i| ctx.mul(a, i)) == Ok(Elem::ONE);
        let fermat = ctx.pow(a, ctx.q() as u64) == a;
        t.record(distributive && associative && inverse && fermat, || {
            format!("a={a} b={b} c={c}")
        });
    }
    t.done()
}

fn interpolation_round_trip(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("interpolation round trip");
    for _ in 0..n {
        let f = random_poly(ctx, rng);
        t.record(ReducedPoly::interpolate(ctx, &f.value_table()) == f, || {
            witness(&f)
        });
    }
    t.done()
}

fn build_routes_agree(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("A(f) build routes agree");
    for _ in 0..n {
        let f = random_poly(ctx, rng);
        let ok = PowerMatrix::build_direct(&f) == PowerMatrix::build_interpolation(&f);
        t.record(ok, || witness(&f));
    }
    t.done()
}

fn composition_homomorphism(
    ctx: &FieldCtx,
    n: usize,
    fault: bool,
    rng: &mut StdRng,
) -> CheckOutcome {
    let mut t = Tally::new("A(f)A(g) = A(g o f)");
    for _ in 0..n {
        let f = random_poly(ctx, rng);
        let g = random_poly(ctx, rng);
        let gf = g.compose(&f).expect("same field");
        // A(f_0) = 0 breaks the identity exactly in these cases
        if zero_convention_exception(&f, &g, &gf) {
            t.skip();
            continue;
        }
        let mut af = PowerMatrix::build_direct(&f).into_matrix();
        if fault {
            let bumped = ctx.add(af.get(1, 1), Elem::ONE);
            af.set(1, 1, bumped);
        }
        let ag = PowerMatrix::build_direct(&g).into_matrix();
        let ok = af.mul(&ag).expect("square") == PowerMatrix::build_direct(&gf).into_matrix();
        t.record(ok, || format!("f={} g={}", witness(&f), witness(&g)));
    }
    t.done()
}

/// Pairs where `A(f)A(g) != A(g o f)` only because A(f_0) is the zero
/// matrix: `f = 0` with `g(0) != 0`, or nonzero `f, g` with `g o f = 0`.
pub fn zero_convention_exception(f: &ReducedPoly, g: &ReducedPoly, gf: &ReducedPoly) -> bool {
    if f.is_zero() {
        !g.coeff(0).is_zero()
    } else {
        !g.is_zero() && gf.is_zero()
    }
}

fn rank_is_value_set(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("rank A(f) = |V_f|");
    for f in [
        ReducedPoly::zero(ctx),
        ReducedPoly::constant(ctx, Elem::ONE),
    ] {
        let expected = if f.is_zero() { 0 } else { 1 };
        t.record(PowerMatrix::build_direct(&f).rank() == expected, || {
            witness(&f)
        });
    }
    for _ in 0..n {
        let f = random_poly_of_degree(ctx, rng.gen_range(1..ctx.q_usize()), rng);
        // A(f_0) is the zero matrix by convention
        let expected = if f.is_zero() {
            0
        } else {
            census_brute(&f).size
        };
        t.record(PowerMatrix::build_direct(&f).rank() == expected, || {
            witness(&f)
        });
    }
    t.done()
}

fn konig_rados(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("Konig-Rados count");
    for _ in 0..n {
        let f = random_poly_of_degree(ctx, rng.gen_range(0..ctx.q_usize()), rng);
        let c = random_elem(ctx, rng);
        let brute = ctx
            .elements()
            .filter(|&x| !x.is_zero() && f.evaluate(x) == c)
            .count();
        t.record(konig_rados_count(&f, c) == brute, || {
            format!("f={} c={c}", witness(&f))
        });
    }
    t.done()
}

fn minimum_value_set_bound(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("|V_f| >= (q-1)/d + 1");
    for _ in 0..n {
        let f = random_poly_of_degree(ctx, rng.gen_range(1..ctx.q_usize()), rng);
        match minimum_value_set(&f) {
            Ok(m) => t.record(m.lower_bound_holds, || witness(&f)),
            Err(_) => t.skip(),
        }
    }
    t.done()
}

fn hermite_last_row(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("last-row permutation test");
    for i in 0..n {
        let f = if i % 2 == 0 {
            random_permutation(ctx, rng)
        } else {
            random_poly(ctx, rng)
        };
        let ok = PowerMatrix::build_direct(&f).hermite_last_row() == f.is_permutation();
        t.record(ok, || witness(&f));
    }
    t.done()
}

fn inverse_by_conjugation(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("inverse = P A^T P");
    for _ in 0..n {
        let f = random_permutation(ctx, rng);
        let a = PowerMatrix::build_direct(&f);
        let ok = match (a.inverse_via_conjugation(), a.inverse_polynomial()) {
            (Ok(inv), Ok(g)) => {
                a.matmul(&inv).map(|m| m.is_identity()).unwrap_or(false)
                    && ctx.elements().all(|x| g.evaluate(f.evaluate(x)) == x)
            }
            _ => false,
        };
        t.record(ok, || witness(&f));
    }
    t.done()
}

fn sequence_periods(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("sequence period");
    for _ in 0..n {
        let f = random_poly(ctx, rng);
        let seed = random_elem(ctx, rng);
        let ok = sequence_period(&f, seed) == sequence_period_by_iteration(&f, seed);
        t.record(ok, || format!("f={} seed={seed}", witness(&f)));
    }
    t.done()
}

fn order_is_cycle_lcm(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("order A(f) = lcm of cycles");
    for _ in 0..n {
        let f = random_permutation(ctx, rng);
        let lcm = FunctionalGraph::build(&f)
            .cycle_decomposition()
            .lengths()
            .into_iter()
            .try_fold(1u128, |acc, l| checked_lcm(acc, l as u128));
        t.record(lcm.is_some() && matrix_order(&f).ok() == lcm, || {
            witness(&f)
        });
    }
    t.done()
}

fn diagonalization(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("diagonalization");
    for _ in 0..n {
        let f = random_permutation(ctx, rng);
        match diagonalize(&f) {
            Ok(d) => {
                let q = ctx.q_usize();
                let ok = d.diagonalizable
                    && d.eigenpairs.len() == q
                    && eigenvector_rank(&d) == q
                    && eigen_residual_check(&d);
                t.record(ok, || witness(&f));
            }
            Err(Error::PCharObstruction { .. }) | Err(Error::SizeLimit { .. }) => t.skip(),
            Err(_) => t.record(false, || witness(&f)),
        }
    }
    t.done()
}

fn commuting_criterion(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("commuting with bx+a");
    for i in 0..n {
        let (a, b) = (
            random_elem(ctx, rng),
            ctx.at(rng.gen_range(1..ctx.q_usize())),
        );
        // random f rarely commutes; x + a commutes with bx + a when b = 1
        let f = if i % 2 == 0 {
            random_poly(ctx, rng)
        } else {
            ReducedPoly::linear(ctx, Elem::ONE, a)
        };
        let ok = commutes_with_linear(&f, a, b) == Ok(commutes_pointwise(&f, a, b));
        t.record(ok, || format!("f={} a={a} b={b}", witness(&f)));
    }
    t.done()
}

fn gap_bound(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> CheckOutcome {
    let mut t = Tally::new("gap bound |V_f| >= L_f + 2").report_only();
    for _ in 0..n {
        let f = random_poly_of_degree(ctx, rng.gen_range(1..ctx.q_usize()), rng);
        let probe = gap_bound_probe(&f);
        t.record(probe.holds, || {
            format!(
                "f={} L_f={} |V_f|={}",
                witness(&f),
                probe.gaps.max_gap,
                probe.value_set_size
            )
        });
    }
    t.done()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let ctx = FieldCtx::prime(5).unwrap();
        let report = run_selftest(
            &ctx,
            &SelftestConfig {
                samples: 30,
                ..Default::default()
            },
        );
        assert!(report.passed(), "{:#?}", report.lines());
    }

    #[test]
    fn injected_fault_fails_with_witness() {
        let ctx = FieldCtx::prime(5).unwrap();
        let cfg = SelftestConfig {
            samples: 10,
            seed: 3,
            inject_fault: true,
        };
        let report = run_selftest(&ctx, &cfg);
        assert!(!report.passed());
        let bad = report.checks.iter().find(|c| !c.passed()).unwrap();
        assert_eq!(bad.name, "A(f)A(g) = A(g o f)");
        assert!(bad.witness.as_deref().unwrap().starts_with("f="));
    }

    #[test]
    fn random_permutations_are_permutations() {
        let ctx = FieldCtx::new(2, 3, None).unwrap();
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(random_permutation(&ctx, &mut rng).is_permutation());
        }
    }
}
