//! Exact searches for undominated out-regular subsets.
//!
//! [`find_undominated_out_regular`] is a branch-and-propagate search over
//! three-valued vertex states. For every vertex `v` it tracks `lo(v)`, the
//! weight already committed into the subset, and `hi(v)`, the weight that
//! could still end up there. Each part's parameter is bracketed by
//! `max lo(v)` over the whole part (members must reach it, non-members may
//! not exceed it) and `min hi(v)` over the part's members. When the graph is
//! strongly connected every member needs positive out-weight, which raises
//! the lower bracket to the smallest positive weight.
//!
//! [`enumerate_witnesses_naive`] is the unpruned oracle: it runs the
//! polynomial checker on every pair of non-empty part subsets.
//!
//! Both use the order of the game-side support enumeration: subsets compare
//! by `(row mask, column mask)` with vertex `i` of a part at bit `i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::budget::{Budget, Meter, Outcome};
use crate::error::{Error, Result};
use crate::game::MAX_ENUMERATION_SIDE;
use crate::graph::{OutRegularWitness, Part, Verdict, VertexSet, WeightedBipartiteDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Unknown,
    In,
    Out,
}

struct Search<'g> {
    graph: &'g WeightedBipartiteDigraph,
    out: Vec<Vec<(usize, i128)>>,
    inc: Vec<Vec<(usize, i128)>>,
    order: Vec<usize>,
    positive: bool,
    state: Vec<State>,
    lo: Vec<i128>,
    hi: Vec<i128>,
    trail: Vec<usize>,
    meter: Meter,
}

/// Arc weights rescaled to integers by the common denominator. Equalities
/// and inequalities between out-weights are invariant under the scaling.
fn integer_weights(graph: &WeightedBipartiteDigraph) -> Result<Vec<Vec<(usize, i128)>>> {
    let lcm = graph
        .arcs()
        .fold(BigInt::one(), |acc, (_, _, w)| acc.lcm(w.denom()));
    let too_large = || Error::invalid("arc weights are too large for the exact search");
    (0..graph.num_vertices())
        .map(|v| {
            graph
                .out_arcs(v)
                .iter()
                .map(|(t, w)| {
                    let scaled = w.numer() * (&lcm / w.denom());
                    scaled.to_i128().map(|x| (*t, x)).ok_or_else(too_large)
                })
                .collect()
        })
        .collect()
}

/// Lexicographically least undominated out-regular subset, or `None` when
/// the graph has none.
pub fn find_undominated_out_regular(
    graph: &WeightedBipartiteDigraph,
    budget: Budget,
) -> Result<Outcome<Option<OutRegularWitness>>> {
    let n = graph.num_vertices();
    if graph.num_rows() == 0 || graph.num_cols() == 0 {
        return Ok(Outcome::Complete(None));
    }
    let out = integer_weights(graph)?;
    let mut inc = vec![Vec::new(); n];
    for (s, arcs) in out.iter().enumerate() {
        for &(t, w) in arcs {
            inc[t].push((s, w));
        }
    }
    let hi = out.iter().map(|arcs| arcs.iter().map(|(_, w)| w).sum()).collect();
    let order = (0..graph.num_rows())
        .rev()
        .chain((graph.num_rows()..n).rev())
        .collect();
    let mut search = Search {
        graph,
        out,
        inc,
        order,
        positive: graph.is_strongly_connected(),
        state: vec![State::Unknown; n],
        lo: vec![0; n],
        hi,
        trail: Vec::new(),
        meter: budget.meter(),
    };
    match search.run() {
        Step::Found(subset) => {
            let Verdict::Accepted { alpha, beta } = graph.verify(&subset)? else {
                return Err(Error::Internal("search produced a subset the checker rejects".into()));
            };
            Ok(Outcome::Complete(Some(OutRegularWitness { subset, alpha, beta })))
        }
        Step::Exhausted => Ok(Outcome::Complete(None)),
        Step::OutOfBudget => Ok(Outcome::Exhausted {
            expanded: search.meter.used() - 1,
        }),
    }
}

enum Step {
    Found(VertexSet),
    Exhausted,
    OutOfBudget,
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    lower: i128,
    upper: i128,
}

impl Search<'_> {
    fn run(&mut self) -> Step {
        if !self.meter.tick() {
            return Step::OutOfBudget;
        }
        let mark = self.trail.len();
        if !self.propagate() {
            self.undo(mark);
            return Step::Exhausted;
        }
        let Some(&v) = self.order.iter().find(|&&v| self.state[v] == State::Unknown) else {
            let members = self.state.iter().map(|&s| s == State::In).collect();
            self.undo(mark);
            return Step::Found(VertexSet::from_members(members));
        };
        for choice in [State::Out, State::In] {
            let inner = self.trail.len();
            self.assign(v, choice);
            match self.run() {
                Step::Exhausted => self.undo(inner),
                other => {
                    self.undo(mark);
                    return other;
                }
            }
        }
        self.undo(mark);
        Step::Exhausted
    }

    fn assign(&mut self, v: usize, state: State) {
        debug_assert_eq!(self.state[v], State::Unknown);
        self.state[v] = state;
        self.trail.push(v);
        for &(s, w) in &self.inc[v] {
            match state {
                State::In => self.lo[s] += w,
                State::Out => self.hi[s] -= w,
                State::Unknown => unreachable!(),
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail above mark");
            let state = std::mem::replace(&mut self.state[v], State::Unknown);
            for &(s, w) in &self.inc[v] {
                match state {
                    State::In => self.lo[s] -= w,
                    State::Out => self.hi[s] += w,
                    State::Unknown => unreachable!(),
                }
            }
        }
    }

    fn side(&self, v: usize) -> usize {
        match self.graph.part(v) {
            Part::Row => 0,
            Part::Column => 1,
        }
    }

    /// Parameter brackets per part, or `None` if a part is already
    /// infeasible.
    fn bounds(&self) -> Option<[Bounds; 2]> {
        let floor = if self.positive { 1 } else { 0 };
        let mut b = [Bounds {
            lower: floor,
            upper: i128::MAX,
        }; 2];
        let mut open = [false; 2];
        for v in 0..self.state.len() {
            let s = self.side(v);
            b[s].lower = b[s].lower.max(self.lo[v]);
            match self.state[v] {
                State::In => {
                    b[s].upper = b[s].upper.min(self.hi[v]);
                    open[s] = true;
                }
                State::Unknown => open[s] = true,
                State::Out => {}
            }
        }
        (open[0] && open[1] && b.iter().all(|x| x.lower <= x.upper)).then_some(b)
    }

    /// Applies forced assignments to a fixpoint. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let Some(bounds) = self.bounds() else {
                return false;
            };
            let mut forced: Vec<(usize, State)> = Vec::new();
            for v in 0..self.state.len() {
                let b = bounds[self.side(v)];
                if self.state[v] == State::Unknown && self.hi[v] < b.lower {
                    forced.push((v, State::Out));
                }
                for &(u, w) in &self.out[v] {
                    if self.state[u] != State::Unknown {
                        continue;
                    }
                    if self.lo[v] + w > b.upper {
                        forced.push((u, State::Out));
                    } else if self.state[v] == State::In && self.hi[v] - w < b.lower {
                        forced.push((u, State::In));
                    }
                }
            }
            if forced.is_empty() {
                return true;
            }
            for (v, state) in forced {
                match self.state[v] {
                    State::Unknown => self.assign(v, state),
                    current if current != state => return false,
                    _ => {}
                }
            }
        }
    }
}

/// Runs the checker on every pair of non-empty part subsets. Returns all
/// witnesses in `(row mask, column mask)` order.
pub fn enumerate_witnesses_naive(
    graph: &WeightedBipartiteDigraph,
    budget: Budget,
) -> Result<Outcome<Vec<OutRegularWitness>>> {
    let (rows, cols) = (graph.num_rows(), graph.num_cols());
    if rows > MAX_ENUMERATION_SIDE || cols > MAX_ENUMERATION_SIDE {
        return Err(Error::invalid(format!(
            "naive enumeration is limited to {MAX_ENUMERATION_SIDE} vertices per part"
        )));
    }
    let mut meter = budget.meter();
    let mut found = Vec::new();
    for row_mask in 1..(1u64 << rows) {
        for col_mask in 1..(1u64 << cols) {
            if !meter.tick() {
                return Ok(Outcome::Exhausted {
                    expanded: meter.used() - 1,
                });
            }
            let members = (0..rows)
                .map(|i| row_mask >> i & 1 == 1)
                .chain((0..cols).map(|j| col_mask >> j & 1 == 1))
                .collect();
            let subset = VertexSet::from_members(members);
            if let Verdict::Accepted { alpha, beta } = graph.verify(&subset)? {
                found.push(OutRegularWitness { subset, alpha, beta });
            }
        }
    }
    Ok(Outcome::Complete(found))
}

/// Whether every member of `subset` has positive out-weight into it.
pub fn members_have_positive_out_weight(graph: &WeightedBipartiteDigraph, subset: &VertexSet) -> Result<bool> {
    for v in subset.iter() {
        if graph.out_weight_into(v, subset)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
