//! Acceptance suite: one PASS/FAIL line per criterion, written straight to
//! stdout so it shows up without `--nocapture`.
//!
//! Two criteria are false as stated and are reported as FAIL with the
//! evidence; `KNOWN_FAILING` lists them. Each has a supplementary line for
//! the statement that does hold. The test fails if any other criterion fails
//! or if a known failure starts passing.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use powmat::arith::{checked_lcm, multiplicative_order_mod};
use powmat::census::{census_brute, commutes_pointwise, commutes_with_linear, konig_rados_count};
use powmat::dynamics::{char_poly, diagonalize, matrix_order, FunctionalGraph};
use powmat::linalg::roots_with_multiplicity;
use powmat::power_matrix::antidiagonal;
use powmat::selftest::{random_elem, random_permutation, random_poly, zero_convention_exception};
use powmat::{Elem, Error, FieldCtx, Matrix, PowerMatrix, ReducedPoly};

const KNOWN_FAILING: &[u32] = &[2, 5];

struct Line {
    id: u32,
    label: String,
    passed: bool,
    detail: String,
}

fn line(id: u32, label: &str, passed: bool, detail: String) -> Line {
    Line {
        id,
        label: label.to_string(),
        passed,
        detail,
    }
}

fn field(spec: (u64, u32)) -> FieldCtx {
    FieldCtx::new(spec.0, spec.1, None).unwrap()
}

fn poly(ctx: &FieldCtx, c: &[u64]) -> ReducedPoly {
    ReducedPoly::from_ints(ctx, c).unwrap()
}

/// Every coefficient vector of length `len`, reduced.
fn all_polys(ctx: &FieldCtx, len: usize) -> Vec<ReducedPoly> {
    let q = ctx.q_usize();
    let total = q.pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let coeffs: Vec<Elem> = (0..len)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    ctx.at(d)
                })
                .collect();
            ReducedPoly::reduce(ctx, &coeffs)
        })
        .collect()
}

fn permutation_polys(ctx: &FieldCtx) -> Vec<ReducedPoly> {
    fn rec(
        ctx: &FieldCtx,
        prefix: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        out: &mut Vec<ReducedPoly>,
    ) {
        let q = ctx.q_usize();
        if prefix.len() == q {
            out.push(ReducedPoly::interpolate(ctx, prefix));
            return;
        }
        for v in 0..q {
            if !used[v] {
                used[v] = true;
                prefix.push(ctx.at(v));
                rec(ctx, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(
        ctx,
        &mut Vec::new(),
        &mut vec![false; ctx.q_usize()],
        &mut out,
    );
    out
}

fn pairs_for(ctx: &FieldCtx, rng: &mut StdRng) -> Vec<(ReducedPoly, ReducedPoly)> {
    if ctx.q() <= 4 {
        let all = all_polys(ctx, ctx.q_usize());
        all.iter()
            .flat_map(|f| all.iter().map(move |g| (f.clone(), g.clone())))
            .collect()
    } else {
        (0..500)
            .map(|_| (random_poly(ctx, rng), random_poly(ctx, rng)))
            .collect()
    }
}

const SWEEP: [(u64, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

fn fixture() -> Vec<Line> {
    let ctx = FieldCtx::prime(5).unwrap();
    let f = poly(&ctx, &[1, 1, 1]);
    let expected = Matrix::from_int_rows(
        &ctx,
        &[
            vec![1, 1, 1, 1, 1],
            vec![0, 1, 2, 1, 0],
            vec![0, 1, 3, 2, 0],
            vec![0, 0, 2, 2, 0],
            vec![0, 0, 1, 1, 0],
        ],
    )
    .unwrap();
    let run = || {
        let a = PowerMatrix::build_direct(&f);
        let roots = roots_with_multiplicity(&ctx, &char_poly(&a));
        let rejected = matches!(diagonalize(&f), Err(Error::NotDiagonalizableInput { .. }));
        (a, roots, rejected)
    };
    let mut best = Duration::MAX;
    let mut result = run();
    for _ in 0..20 {
        let t = Instant::now();
        result = run();
        best = best.min(t.elapsed());
    }
    let (a, roots, rejected) = result;
    let last_row: Vec<u32> = a.as_matrix().row(4).iter().map(|e| e.value()).collect();
    let roots: Vec<u32> = roots.iter().map(|e| e.value()).collect();
    let ok_matrix = *a.as_matrix() == expected;
    let ok = ok_matrix
        && a.rank() == 3
        && last_row == [0, 0, 1, 1, 0]
        && roots == [0, 0, 0, 1, 1]
        && rejected
        && best < Duration::from_millis(1);
    vec![line(
        1,
        "F_5 fixture x^2+x+1",
        ok,
        format!(
            "matrix_exact={ok_matrix} rank={} last_row={last_row:?} roots={roots:?} rejected={rejected} time={best:?}",
            a.rank()
        ),
    )]
}

fn composition() -> Vec<Line> {
    let mut rng = StdRng::seed_from_u64(2);
    let (mut total, mut bad, mut conv, mut bad_outside, mut misclassified) = (0, 0, 0, 0, 0);
    let mut witness = None;
    for spec in SWEEP {
        let ctx = field(spec);
        for (f, g) in pairs_for(&ctx, &mut rng) {
            let gf = g.compose(&f).unwrap();
            let lhs = PowerMatrix::build_direct(&f)
                .matmul(&PowerMatrix::build_direct(&g))
                .unwrap();
            let holds = lhs == PowerMatrix::build_direct(&gf);
            let exception = zero_convention_exception(&f, &g, &gf);
            total += 1;
            if exception {
                conv += 1;
            }
            if !holds {
                bad += 1;
                if !exception {
                    bad_outside += 1;
                }
                witness.get_or_insert_with(|| {
                    format!("q={} f={:?} g={:?}", ctx.q(), ints(&f), ints(&g))
                });
            }
            if holds == exception {
                misclassified += 1;
            }
        }
    }
    vec![
        line(
            2,
            "A(f)A(g) = A(g o f), all pairs",
            bad == 0,
            format!("pairs={total} failures={bad} first={}", witness.unwrap_or_default()),
        ),
        line(
            2,
            "  supplementary: holds exactly off the A(f_0)=0 convention",
            bad_outside == 0 && misclassified == 0,
            format!("convention_pairs={conv} failures_elsewhere={bad_outside} misclassified={misclassified}"),
        ),
    ]
}

fn ints(f: &ReducedPoly) -> Vec<u32> {
    f.coeffs().iter().map(|e| e.value()).collect()
}

fn value_set_rank() -> Vec<Line> {
    let mut rng = StdRng::seed_from_u64(3);
    let (mut total, mut bad) = (0, 0);
    let mut witness = String::new();
    for spec in SWEEP {
        let ctx = field(spec);
        let mut polys = if ctx.q() <= 4 {
            all_polys(&ctx, ctx.q_usize())
        } else {
            (0..500).map(|_| random_poly(&ctx, &mut rng)).collect()
        };
        polys.push(ReducedPoly::zero(&ctx));
        polys.extend(
            ctx.elements()
                .skip(1)
                .map(|c| ReducedPoly::constant(&ctx, c)),
        );
        for f in polys {
            let rank = PowerMatrix::build_direct(&f).rank();
            let expected = if f.is_zero() {
                0
            } else {
                census_brute(&f).size
            };
            total += 1;
            if rank != expected {
                bad += 1;
                if witness.is_empty() {
                    witness = format!("q={} f={:?} rank={rank}", ctx.q(), ints(&f));
                }
            }
        }
    }
    vec![line(
        3,
        "rank A(f) = |V_f| (f_0 -> 0, constants -> 1)",
        bad == 0,
        format!("polys={total} failures={bad} {witness}"),
    )]
}

fn konig_rados() -> Vec<Line> {
    let (mut total, mut bad) = (0, 0);
    for p in [3u64, 5, 7] {
        let ctx = FieldCtx::prime(p).unwrap();
        for f in all_polys(&ctx, 4) {
            for c in ctx.elements() {
                let brute = ctx
                    .elements()
                    .filter(|&x| !x.is_zero() && f.evaluate(x) == c)
                    .count();
                total += 1;
                if konig_rados_count(&f, c) != brute {
                    bad += 1;
                }
            }
        }
    }
    vec![line(
        4,
        "Konig-Rados, degree <= 3, every c",
        bad == 0,
        format!("cases={total} failures={bad}"),
    )]
}

fn inverse() -> Vec<Line> {
    let mut rng = StdRng::seed_from_u64(5);
    let (mut total, mut pap_inverse, mut involution, mut column_one) = (0, 0, 0, 0);
    let (mut transposed_ok, mut witness) = (0, String::new());
    for spec in [(5, 1), (7, 1), (2, 3)] {
        let ctx = field(spec);
        let q = ctx.q_usize();
        let p = antidiagonal(&ctx, q);
        for _ in 0..100 {
            let f = random_permutation(&ctx, &mut rng);
            let a = PowerMatrix::build_direct(&f);
            let am = a.as_matrix();
            let pap = p.mul(am).unwrap().mul(&p).unwrap();
            let pa = p.mul(am).unwrap();
            let inv_ok = am.mul(&pap).unwrap().is_identity();
            let inv_poly = ReducedPoly::reduce(&ctx, pap.column(1));
            let col_ok = ctx
                .elements()
                .all(|x| inv_poly.evaluate(f.evaluate(x)) == x);
            let invol_ok = pa.mul(&pa).unwrap().is_identity();
            total += 1;
            pap_inverse += usize::from(inv_ok);
            involution += usize::from(invol_ok);
            column_one += usize::from(col_ok);
            if !(inv_ok && invol_ok && col_ok) && witness.is_empty() {
                witness = format!("q={q} f={:?}", ints(&f));
            }

            // P A^T P against an independently built A(f^(-1))
            let pat_p = p.mul(&transpose(am)).unwrap().mul(&p).unwrap();
            let g = ReducedPoly::reduce(&ctx, pat_p.column(1));
            let direct = PowerMatrix::build_direct(&g);
            if am.mul(&pat_p).unwrap().is_identity()
                && *direct.as_matrix() == pat_p
                && ctx.elements().all(|x| g.evaluate(f.evaluate(x)) == x)
            {
                transposed_ok += 1;
            }
        }
    }
    let all = pap_inverse == total && involution == total && column_one == total;
    vec![
        line(
            5,
            "PA(f)P = A(f)^-1, (PA(f))^2 = I, column 1 inverts",
            all,
            format!(
                "perms={total} inverse={pap_inverse} involution={involution} column1={column_one} first={witness}"
            ),
        ),
        line(
            5,
            "  supplementary: A(f^-1) = P A(f)^T P",
            transposed_ok == total,
            format!("perms={total} ok={transposed_ok}"),
        ),
    ]
}

fn transpose(m: &Matrix) -> Matrix {
    Matrix::from_fn(m.ctx(), m.cols(), m.rows(), |i, j| m.get(j, i))
}

fn lcm_of_cycles(f: &ReducedPoly) -> u128 {
    FunctionalGraph::build(f)
        .cycle_decomposition()
        .lengths()
        .into_iter()
        .fold(1, |acc, l| checked_lcm(acc, l as u128).unwrap())
}

fn periods() -> Vec<Line> {
    let ctx = FieldCtx::prime(5).unwrap();
    let affine = matrix_order(&poly(&ctx, &[1, 2])).unwrap();
    let cube = matrix_order(&poly(&ctx, &[0, 0, 0, 1])).unwrap();
    let ord3 = multiplicative_order_mod(3, 4).unwrap() as u128;
    let mut rng = StdRng::seed_from_u64(6);
    let (mut total, mut bad) = (0, 0);
    for p in [5u64, 7] {
        let ctx = FieldCtx::prime(p).unwrap();
        for _ in 0..100 {
            let f = random_permutation(&ctx, &mut rng);
            total += 1;
            if matrix_order(&f).ok() != Some(lcm_of_cycles(&f)) {
                bad += 1;
            }
        }
    }
    vec![line(
        6,
        "matrix order = lcm of cycle lengths",
        affine == 4 && cube == 2 && ord3 == 2 && bad == 0,
        format!("2x+1 -> {affine}, x^3 -> {cube} (ord_4 3 = {ord3}), random perms={total} failures={bad}"),
    )]
}

fn check_diagonalization(f: &ReducedPoly) -> bool {
    let q = f.ctx().q_usize();
    let Ok(d) = diagonalize(f) else { return false };
    let k = d.field();
    let residual_zero = d.eigenpairs.iter().all(|e| {
        let av = d.embedded.mul_vec(&e.vector);
        av.iter()
            .zip(&e.vector)
            .all(|(&x, &v)| x == k.mul(e.eigenvalue, v))
            && e.vector.iter().any(|v| !v.is_zero())
    });
    let cols: Vec<Elem> = d
        .eigenpairs
        .iter()
        .flat_map(|e| e.vector.iter().copied())
        .collect();
    let rank = Matrix::from_column_major(k, q, d.eigenpairs.len(), cols).rank();
    d.diagonalizable && d.eigenpairs.len() == q && rank == q && residual_zero
}

fn diagonalization() -> Vec<Line> {
    let ctx = FieldCtx::prime(5).unwrap();
    let d = diagonalize(&poly(&ctx, &[1, 2])).unwrap();
    let eig: Vec<u32> = d.eigenvalues().iter().map(|e| e.value()).collect();
    let affine_ok =
        d.degree() == 1 && eig == [1, 1, 2, 3, 4] && check_diagonalization(&poly(&ctx, &[1, 2]));
    let mut rng = StdRng::seed_from_u64(7);
    let (mut total, mut bad, mut max_m) = (0, 0, 1);
    for p in [5u64, 7] {
        let ctx = FieldCtx::prime(p).unwrap();
        let mut accepted = 0;
        while accepted < 50 {
            let f = random_permutation(&ctx, &mut rng);
            let lengths = FunctionalGraph::build(&f).cycle_decomposition().lengths();
            if lengths.iter().any(|&l| (l as u64).is_multiple_of(p)) {
                continue;
            }
            accepted += 1;
            total += 1;
            if !check_diagonalization(&f) {
                bad += 1;
            }
            if let Ok(d) = diagonalize(&f) {
                max_m = max_m.max(d.degree());
            }
        }
    }
    vec![line(
        7,
        "diagonalization over F_{q^m}",
        affine_ok && bad == 0,
        format!("2x+1 eigenvalues={eig:?}, random perms={total} failures={bad} largest m={max_m}"),
    )]
}

fn hermite() -> Vec<Line> {
    let mut rng = StdRng::seed_from_u64(8);
    let (mut total, mut bad) = (0, 0);
    for spec in [(3, 1), (2, 2), (5, 1), (7, 1)] {
        let ctx = field(spec);
        let polys: Vec<ReducedPoly> = if ctx.q() <= 5 {
            all_polys(&ctx, ctx.q_usize())
        } else {
            (0..2000)
                .map(|i| {
                    if i % 2 == 0 {
                        random_permutation(&ctx, &mut rng)
                    } else {
                        random_poly(&ctx, &mut rng)
                    }
                })
                .collect()
        };
        for f in polys {
            let injective = {
                let mut seen = vec![false; ctx.q_usize()];
                f.value_table()
                    .iter()
                    .all(|v| !std::mem::replace(&mut seen[v.value() as usize], true))
            };
            total += 1;
            if PowerMatrix::build_direct(&f).hermite_last_row() != injective {
                bad += 1;
            }
        }
    }
    vec![line(
        8,
        "last row test <=> injective",
        bad == 0,
        format!("polys={total} failures={bad}"),
    )]
}

fn monomorphism() -> Vec<Line> {
    let ctx = FieldCtx::prime(3).unwrap();
    let perms = permutation_polys(&ctx);
    let mats: Vec<PowerMatrix> = perms.iter().map(PowerMatrix::build_direct).collect();
    let distinct = (0..mats.len()).all(|i| (0..i).all(|j| mats[i] != mats[j]));
    let mut bad = 0;
    for (alpha, a_alpha) in perms.iter().zip(&mats) {
        for (pi, a_pi) in perms.iter().zip(&mats) {
            let composed = PowerMatrix::build_direct(&pi.compose(alpha).unwrap());
            if composed != a_alpha.matmul(a_pi).unwrap() {
                bad += 1;
            }
        }
    }
    vec![line(
        9,
        "S_3 -> GL_3(F_3) monomorphism",
        perms.len() == 6 && distinct && bad == 0,
        format!(
            "perms={} injective={distinct} product failures={bad}/36",
            perms.len()
        ),
    )]
}

fn commuting() -> Vec<Line> {
    let (mut total, mut bad) = (0, 0);
    let mut commuting_cases = 0;
    let mut check = |f: &ReducedPoly, a: Elem, b: Elem| {
        let oracle = commutes_pointwise(f, a, b);
        total += 1;
        commuting_cases += usize::from(oracle);
        if commutes_with_linear(f, a, b) != Ok(oracle) {
            bad += 1;
        }
    };
    let f3 = FieldCtx::prime(3).unwrap();
    for f in all_polys(&f3, 3) {
        for a in f3.elements() {
            for b in f3.elements().skip(1) {
                check(&f, a, b);
            }
        }
    }
    let f5 = FieldCtx::prime(5).unwrap();
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..500 {
        let f = random_poly(&f5, &mut rng);
        let a = random_elem(&f5, &mut rng);
        let b = f5.at(rng.gen_range(1..5));
        check(&f, a, b);
    }
    vec![line(
        10,
        "commuting criterion <=> pointwise",
        bad == 0,
        format!("triples={total} commuting={commuting_cases} failures={bad}"),
    )]
}

#[test]
fn acceptance_suite() {
    let lines: Vec<Line> = [
        fixture(),
        composition(),
        value_set_rank(),
        konig_rados(),
        inverse(),
        periods(),
        diagonalization(),
        hermite(),
        monomorphism(),
        commuting(),
    ]
    .into_iter()
    .flatten()
    .collect();

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for l in &lines {
        let tag = if l.passed { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "[criterion {:>2}] {tag} {} :: {}",
            l.id, l.label, l.detail
        )
        .unwrap();
    }
    out.flush().unwrap();

    // criterion-level verdict is the first line for each id
    let mut unexpected = Vec::new();
    for id in 1..=10 {
        let main = lines.iter().find(|l| l.id == id).unwrap();
        let known = KNOWN_FAILING.contains(&id);
        if main.passed == known {
            unexpected.push(id);
        }
        // supplementary lines must always pass
        for extra in lines.iter().filter(|l| l.id == id).skip(1) {
            if !extra.passed {
                unexpected.push(id);
            }
        }
    }
    assert!(
        unexpected.is_empty(),
        "unexpected outcome for criteria {unexpected:?}"
    );
}
