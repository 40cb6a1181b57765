use crate::arith::{checked_lcm, order_by_descent};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::ReducedPoly;
use crate::power_matrix::PowerMatrix;

use super::FunctionalGraph;

/// Orbit shape of `a_n = f^(n)(a_0)`: `a_{preperiod + period} = a_preperiod`
/// with both minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceAnalysis {
    pub seed: Elem,
    pub preperiod: usize,
    pub period: usize,
}

/// Period of the nonlinear congruential sequence from the functional graph.
pub fn sequence_period(f: &ReducedPoly, seed: Elem) -> SequenceAnalysis {
    sequence_period_in(&FunctionalGraph::build(f), seed)
}

pub fn sequence_period_in(graph: &FunctionalGraph, seed: Elem) -> SequenceAnalysis {
    let preperiod = graph.tail(seed);
    let mut entry = seed;
    for _ in 0..preperiod {
        entry = graph.succ(entry);
    }
    let mut period = 1;
    let mut x = graph.succ(entry);
    while x != entry {
        x = graph.succ(x);
        period += 1;
    }
    SequenceAnalysis {
        seed,
        preperiod,
        period,
    }
}

/// Same analysis by running the sequence and recording first visits.
pub fn sequence_period_by_iteration(f: &ReducedPoly, seed: Elem) -> SequenceAnalysis {
    let mut first_seen = vec![usize::MAX; f.ctx().q_usize()];
    let mut x = seed;
    let mut n = 0usize;
    loop {
        let slot = &mut first_seen[x.value() as usize];
        if *slot != usize::MAX {
            return SequenceAnalysis {
                seed,
                preperiod: *slot,
                period: n - *slot,
            };
        }
        *slot = n;
        x = f.evaluate(x);
        n += 1;
    }
}

fn lcm_of_cycles(graph: &FunctionalGraph) -> Result<u128> {
    graph
        .cycle_decomposition()
        .lengths()
        .into_iter()
        .try_fold(1u128, |acc, l| checked_lcm(acc, l as u128))
        .ok_or(Error::Overflow("lcm of cycle lengths"))
}

/// Least common multiple `K` of all cycle lengths of a permutation
/// polynomial, after checking `A(f)^K = I`.
pub fn global_period(f: &ReducedPoly) -> Result<u128> {
    let graph = FunctionalGraph::build(f);
    if !graph.is_permutation() {
        return Err(Error::NotPermutation);
    }
    let k = lcm_of_cycles(&graph)?;
    if !PowerMatrix::build_direct(f).pow(k).is_identity() {
        return Err(Error::InvariantViolation(format!(
            "A(f)^{k} is not the identity"
        )));
    }
    Ok(k)
}

/// Order of A(f) in the matrix group, by descending from the cycle-length
/// lcm through its prime factors.
pub fn matrix_order(f: &ReducedPoly) -> Result<u128> {
    let graph = FunctionalGraph::build(f);
    if !graph.is_permutation() {
        return Err(Error::NotPermutation);
    }
    let k = lcm_of_cycles(&graph)?;
    matrix_order_within(&PowerMatrix::build_direct(f), k)
}

/// Smallest `t | k` with `a^t = I`; errors unless `a^k = I`.
pub fn matrix_order_within(a: &PowerMatrix, k: u128) -> Result<u128> {
    if !a.pow(k).is_identity() {
        return Err(Error::InvariantViolation(format!(
            "A^{k} is not the identity"
        )));
    }
    Ok(order_by_descent(k, |e| a.pow(e).is_identity()))
}
