//! Left-right planarity test (de Fraysseix–Rosenstiehl, in the formulation
//! of Brandes) on the underlying undirected simple graph.
//!
//! Both DFS phases are iterative so that graphs with long paths (the
//! planarized reduction graphs reach a few thousand vertices) do not depend
//! on the thread's stack size.

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    id: u64,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState {
    adj: Vec<Vec<(usize, usize)>>,
    source: Vec<usize>,
    target: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    ordered_adjs: Vec<Vec<usize>>,
    reference: Vec<Option<usize>>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<Option<u64>>,
    stack: Vec<ConflictPair>,
    next_id: u64,
}

/// Decides planarity of the simple undirected graph on `n` vertices spanned
/// by `edges`. Self-loops and repeated or opposite pairs are collapsed.
pub fn is_planar(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut pairs: Vec<(usize, usize)> = edges
        .into_iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    assert!(pairs.iter().all(|&(_, b)| b < n), "edge endpoint out of range");
    if n > 2 && pairs.len() > 3 * n - 6 {
        return false;
    }
    let mut state = LrState::new(n, &pairs);
    let roots = state.orient();
    state.order_adjacencies();
    roots.into_iter().all(|root| state.test(root))
}

impl LrState {
    fn new(n: usize, pairs: &[(usize, usize)]) -> Self {
        let m = pairs.len();
        let mut adj = vec![Vec::new(); n];
        for (e, &(a, b)) in pairs.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        LrState {
            adj,
            source: vec![NONE; m],
            target: vec![NONE; m],
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            ordered_adjs: vec![Vec::new(); n],
            reference: vec![None; m],
            lowpt_edge: vec![NONE; m],
            stack_bottom: vec![None; m],
            stack: Vec::new(),
            next_id: 0,
        }
    }

    /// DFS orientation; computes heights, lowpoints and nesting depths.
    fn orient(&mut self) -> Vec<usize> {
        let n = self.adj.len();
        let mut roots = Vec::new();
        let mut ind = vec![0usize; n];
        let mut resumed = vec![false; self.source.len()];
        for root in 0..n {
            if self.height[root] != NONE {
                continue;
            }
            self.height[root] = 0;
            roots.push(root);
            let mut dfs = vec![root];
            while let Some(&v) = dfs.last() {
                let parent = self.parent_edge[v];
                let mut descended = false;
                while ind[v] < self.adj[v].len() {
                    let (w, e) = self.adj[v][ind[v]];
                    if !resumed[e] {
                        if self.oriented[e] {
                            ind[v] += 1;
                            continue;
                        }
                        self.oriented[e] = true;
                        self.source[e] = v;
                        self.target[e] = w;
                        self.ordered_adjs[v].push(e);
                        self.lowpt[e] = self.height[v];
                        self.lowpt2[e] = self.height[v];
                        if self.height[w] == NONE {
                            self.parent_edge[w] = Some(e);
                            self.height[w] = self.height[v] + 1;
                            resumed[e] = true;
                            dfs.push(w);
                            descended = true;
                            break;
                        }
                        self.lowpt[e] = self.height[w];
                    }
                    self.nesting_depth[e] = 2 * self.lowpt[e];
                    if self.lowpt2[e] < self.height[v] {
                        self.nesting_depth[e] += 1;
                    }
                    if let Some(pe) = parent {
                        if self.lowpt[e] < self.lowpt[pe] {
                            self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                            self.lowpt[pe] = self.lowpt[e];
                        } else if self.lowpt[e] > self.lowpt[pe] {
                            self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
                        } else {
                            self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
                        }
                    }
                    ind[v] += 1;
                }
                if !descended {
                    dfs.pop();
                }
            }
        }
        roots
    }

    fn order_adjacencies(&mut self) {
        let depth = &self.nesting_depth;
        for adj in &mut self.ordered_adjs {
            adj.sort_by_key(|&e| depth[e]);
        }
    }

    fn top_id(&self) -> Option<u64> {
        self.stack.last().map(|p| p.id)
    }

    fn push(&mut self, left: Interval, right: Interval) {
        let id = self.next_id;
        self.next_id += 1;
        self.stack.push(ConflictPair { id, left, right });
    }

    fn conflicting(&self, interval: &Interval, edge: usize) -> bool {
        match interval.high {
            Some(high) if !interval.is_empty() => self.lowpt[high] > self.lowpt[edge],
            _ => false,
        }
    }

    fn lowest(&self, pair: &ConflictPair) -> usize {
        let low = |i: &Interval| self.lowpt[i.low.expect("non-empty interval has a low edge")];
        if pair.left.is_empty() {
            low(&pair.right)
        } else if pair.right.is_empty() {
            low(&pair.left)
        } else {
            low(&pair.left).min(low(&pair.right))
        }
    }

    fn test(&mut self, root: usize) -> bool {
        let n = self.adj.len();
        let mut ind = vec![0usize; n];
        let mut resumed = vec![false; self.source.len()];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let parent = self.parent_edge[v];
            let mut deferred = false;
            while ind[v] < self.ordered_adjs[v].len() {
                let ei = self.ordered_adjs[v][ind[v]];
                let w = self.target[ei];
                if !resumed[ei] {
                    self.stack_bottom[ei] = self.top_id();
                    if self.parent_edge[w] == Some(ei) {
                        dfs.push(v);
                        dfs.push(w);
                        resumed[ei] = true;
                        deferred = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.push(
                        Interval::default(),
                        Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    );
                }
                if self.lowpt[ei] < self.height[v] {
                    let pe = parent.expect("a return edge below the root has a parent edge");
                    if ei == self.ordered_adjs[v][0] {
                        self.lowpt_edge[pe] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, pe) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !deferred {
                if let Some(pe) = parent {
                    self.remove_back_edges(pe);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            id: 0,
            left: Interval::default(),
            right: Interval::default(),
        };
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("right interval is non-empty");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.expect("non-empty")] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("checked above");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.reference[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(low) = p.left.low {
                self.reference[low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.push(p.left, p.right);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.source[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(high) = p.left.high {
                if self.target[high] != u {
                    break;
                }
                p.left.high = self.reference[high];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low.take() {
                    self.reference[low] = p.right.low;
                }
            }
            while let Some(high) = p.right.high {
                if self.target[high] != u {
                    break;
                }
                p.right.high = self.reference[high];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low.take() {
                    self.reference[low] = p.left.low;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.reference[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
    }
}
