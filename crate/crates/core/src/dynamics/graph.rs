use crate::field::{Elem, FieldCtx};
use crate::poly::ReducedPoly;

/// The directed graph `a -> f(a)` on F_q with cycle membership and tail
/// lengths (distance to the cycle each orbit falls into).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalGraph {
    pub ctx: FieldCtx,
    pub successor: Vec<Elem>,
    pub tail_length: Vec<usize>,
    pub on_cycle: Vec<bool>,
}

impl FunctionalGraph {
    pub fn build(f: &ReducedPoly) -> Self {
        Self::from_successors(f.ctx(), f.value_table())
    }

    /// `successor[a]` is the image of the element with canonical integer `a`.
    pub fn from_successors(ctx: &FieldCtx, successor: Vec<Elem>) -> Self {
        let q = ctx.q_usize();
        assert_eq!(successor.len(), q);
        let succ = |x: usize| successor[x].value() as usize;
        // 0 = unseen, 1 = on the current walk, 2 = settled
        let mut state = vec![0u8; q];
        let mut tail_length = vec![0usize; q];
        let mut on_cycle = vec![false; q];
        let mut path = Vec::new();
        for start in 0..q {
            if state[start] != 0 {
                continue;
            }
            path.clear();
            let mut x = start;
            while state[x] == 0 {
                state[x] = 1;
                path.push(x);
                x = succ(x);
            }
            let cut = if state[x] == 1 {
                let pos = path.iter().position(|&y| y == x).expect("x is on the walk");
                for &y in &path[pos..] {
                    on_cycle[y] = true;
                }
                pos
            } else {
                path.len()
            };
            for idx in (0..cut).rev() {
                let y = path[idx];
                tail_length[y] = tail_length[succ(y)] + 1;
            }
            for &y in &path {
                state[y] = 2;
            }
        }
        FunctionalGraph {
            ctx: ctx.clone(),
            successor,
            tail_length,
            on_cycle,
        }
    }

    pub fn succ(&self, a: Elem) -> Elem {
        self.successor[a.value() as usize]
    }

    pub fn tail(&self, a: Elem) -> usize {
        self.tail_length[a.value() as usize]
    }

    pub fn max_tail(&self) -> usize {
        self.tail_length.iter().copied().max().unwrap_or(0)
    }

    pub fn is_permutation(&self) -> bool {
        self.on_cycle.iter().all(|&c| c)
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let q = self.ctx.q_usize();
        let mut assigned = vec![false; q];
        let mut cycles = Vec::new();
        for a in self.ctx.elements() {
            let i = a.value() as usize;
            if !self.on_cycle[i] || assigned[i] {
                continue;
            }
            // ascending scan, so `a` is the smallest element of its cycle
            let mut cycle = vec![a];
            assigned[i] = true;
            let mut x = self.succ(a);
            while x != a {
                assigned[x.value() as usize] = true;
                cycle.push(x);
                x = self.succ(x);
            }
            cycles.push(cycle);
        }
        let leaves = self.ctx.elements().filter(|&a| self.tail(a) == 1).collect();
        CycleDecomposition { cycles, leaves }
    }
}

/// Cycles `(b_0, ..., b_{L-1})` with `f(b_t) = b_{t+1 mod L}`, each starting
/// at its smallest element and listed by that element; plus the elements at
/// distance one from a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<Elem>>,
    pub leaves: Vec<Elem>,
}

impl CycleDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }
}
